//! Browser bindings for the `tcodes` library.
//!
//! Each exported function has a plain Rust counterpart that returns text, so
//! the logic can be tested natively. The page in `www/` calls the exported
//! versions.

use num_bigint::BigUint;
use tcodes::asymptotics::{crossover_delta0, rate_curve_csv, Crossover, Grid};
use tcodes::qstring::random_pattern;
use tcodes::single_codes::{best_offsets, decode_q, enumerate_code_q, smallest_valid_prime, SyndromeParams};
use tcodes::zero_error::{lambda_q, zero_error_rate, ZeroErrorCodebook};
use tcodes::{ChannelModel, Error, QaryString, Result};
use wasm_bindgen::prelude::*;

/// Longest codebook the explorer will list.
const MAX_LISTED: usize = 256;

/// Rate-curve CSV for `delta` in `[0, 1]`, followed by a `crossover=` line
/// (`none` when the curves never meet).
pub fn rate_curve_text(q: usize, step: f64) -> Result<String> {
    let points = tcodes::asymptotics::rate_curve(q, &Grid::new(0.0, 1.0, step)?)?;
    let mut out = rate_curve_csv(&points);
    match crossover_delta0(q)? {
        Crossover::At(d) => out.push_str(&format!("crossover={d:.6}\n")),
        Crossover::NoCrossover => out.push_str("crossover=none\n"),
    }
    Ok(out)
}

type Decoder = Box<dyn Fn(&QaryString) -> Result<QaryString>>;

/// Picks codeword `index` (modulo the code size), sends it through the
/// disjoint channel with `t` random swaps and decodes the result.
///
/// `construction` is `syndrome` (one swap is guaranteed to be corrected) or
/// `zero_error` (any number of swaps).
pub fn simulate_text(construction: &str, q: usize, n: usize, index: u64, t: usize, seed: u64) -> Result<String> {
    let (x, decoded_with): (_, Decoder) = match construction {
        "syndrome" => {
            let p = smallest_valid_prime(q, n);
            let (s1, s2, _) = best_offsets(q, n, p)?;
            let params = SyndromeParams::with_prime(q, n, s1, s2, p)?;
            let code = enumerate_code_q(&params)?;
            let x = code.words()[(index % code.len() as u64) as usize].clone();
            (x, Box::new(move |y| decode_q(y, &params)))
        }
        "zero_error" => {
            let book = ZeroErrorCodebook::with_default_partition(q, n)?;
            let x = book.codeword(&(BigUint::from(index) % book.size()))?;
            (x, Box::new(move |y| book.decode(y)))
        }
        other => return Err(Error::InvalidParams(format!("unknown construction `{other}`"))),
    };
    let pattern = random_pattern(n, t, ChannelModel::Disjoint, seed)?;
    let y = x.apply(&pattern)?;
    let decoded = match decoded_with(&y) {
        Ok(z) => z.to_string(),
        Err(Error::Uncorrectable) => "uncorrectable".to_string(),
        Err(e) => return Err(e),
    };
    Ok(format!("x={x}\npattern={pattern}\ny={y}\ndecoded={decoded}\nrecovered={}\n", decoded == x.to_string()))
}

/// Size of the zero-error code, its growth constant, and up to
/// [`MAX_LISTED`] codewords.
pub fn codebook_text(q: usize, n: usize) -> Result<String> {
    let book = ZeroErrorCodebook::with_default_partition(q, n)?;
    let size = book.size();
    let mut out = format!(
        "size={size}\npartition={}\nlambda={:.9}\nlog2_lambda={:.9}\n",
        book.partition(),
        lambda_q(q)?,
        zero_error_rate(q)?
    );
    let shown = size.clone().min(BigUint::from(MAX_LISTED));
    let shown = u64::try_from(&shown).unwrap_or(0);
    for i in 0..shown {
        out.push_str(&book.codeword(&BigUint::from(i))?.to_string());
        out.push('\n');
    }
    Ok(out)
}

fn js(result: Result<String>) -> std::result::Result<String, JsError> {
    result.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn rate_curve(q: usize, step: f64) -> std::result::Result<String, JsError> {
    js(rate_curve_text(q, step))
}

#[wasm_bindgen]
pub fn simulate(
    construction: &str,
    q: usize,
    n: usize,
    index: u64,
    t: usize,
    seed: u64,
) -> std::result::Result<String, JsError> {
    js(simulate_text(construction, q, n, index, t, seed))
}

#[wasm_bindgen]
pub fn codebook(q: usize, n: usize) -> std::result::Result<String, JsError> {
    js(codebook_text(q, n))
}
