use std::fmt;
use std::str::FromStr;

use super::inner::{inner_code, InnerCode};
use crate::error::{Error, Result};
use crate::metric::Code;
use crate::qstring::QaryString;
use crate::{TranspositionCode, ENUMERATION_LIMIT};

/// Parameters of the binary construction: even-indexed bits form a word of
/// `inner`, and `sum_i i*(x_{2i} - x_{2i-1})` has parity `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryParams {
    n: usize,
    s: u8,
    inner: InnerCode,
}

impl BinaryParams {
    /// Uses [`inner_code`] of length `n/2`.
    pub fn new(n: usize, s: u8) -> Result<Self> {
        Self::with_inner(n, s, inner_code(n / 2))
    }

    pub fn with_inner(n: usize, s: u8, inner: InnerCode) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidParams(format!("binary construction needs a positive even length, got {n}")));
        }
        if s > 1 {
            return Err(Error::InvalidParams(format!("parity offset must be 0 or 1, got {s}")));
        }
        if inner.len() != n / 2 {
            return Err(Error::InvalidParams(format!("inner code has length {}, expected {}", inner.len(), n / 2)));
        }
        Ok(Self { n, s, inner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn inner(&self) -> InnerCode {
        self.inner
    }
}

impl fmt::Display for BinaryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.n, self.s)?;
        if let InnerCode::Repetition { .. } = self.inner {
            write!(f, ",repetition")?;
        }
        Ok(())
    }
}

/// Parses `n,s`, optionally followed by `,hamming` or `,repetition`.
impl FromStr for BinaryParams {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parse_err = || Error::Parse(text.to_string());
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(parse_err());
        }
        let n: usize = parts[0].parse().map_err(|_| parse_err())?;
        let s: u8 = parts[1].parse().map_err(|_| parse_err())?;
        let inner = match parts.get(2) {
            None | Some(&"hamming") => inner_code(n / 2),
            Some(&"repetition") => InnerCode::repetition(n / 2)?,
            Some(_) => return Err(parse_err()),
        };
        Self::with_inner(n, s, inner)
    }
}

fn even_bits(x: &[u8]) -> Vec<u8> {
    x.iter().skip(1).step_by(2).copied().collect()
}

/// `sum_i i*(x_{2i} - x_{2i-1}) mod 2`, which equals the parity of
/// `sum_i i*(x_{2i} + x_{2i-1})`.
fn weighted_parity(x: &[u8]) -> u8 {
    x.chunks(2).enumerate().fold(0, |acc, (i, pair)| acc ^ ((i + 1) as u8 & 1 & (pair[0] ^ pair[1])))
}

fn check_shape(x: &QaryString, n: usize) -> Result<()> {
    if x.q() != 2 || x.len() != n {
        return Err(Error::Mismatch(format!("binary length {n}"), format!("length {} over q={}", x.len(), x.q())));
    }
    Ok(())
}

pub fn is_codeword_binary(x: &QaryString, params: &BinaryParams) -> Result<bool> {
    check_shape(x, params.n)?;
    let s = x.symbols();
    Ok(params.inner.contains(&even_bits(s)) && weighted_parity(s) == params.s)
}

/// All codewords in lexicographic order.
pub fn enumerate_binary(params: &BinaryParams) -> Result<Code> {
    let half = params.n / 2;
    let size = params.inner.size().saturating_mul(1u128.checked_shl(half as u32).unwrap_or(u128::MAX));
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what: "binary code enumeration", size, limit: ENUMERATION_LIMIT });
    }
    let mut words = Vec::with_capacity(size as usize / 2);
    for even in params.inner.codewords() {
        for odd in 0u64..1 << half {
            let mut w = vec![0u8; params.n];
            for i in 0..half {
                w[2 * i] = (odd >> (half - 1 - i) & 1) as u8;
                w[2 * i + 1] = even[i];
            }
            if weighted_parity(&w) == params.s {
                words.push(QaryString::from_raw(2, w));
            }
        }
    }
    words.sort();
    Ok(Code::from_sorted(2, params.n, words))
}

/// The parity offset giving the larger code, with its size; ties go to 0.
pub fn best_binary_offset(n: usize, inner: InnerCode) -> Result<(u8, usize)> {
    let zero = enumerate_binary(&BinaryParams::with_inner(n, 0, inner)?)?.len();
    let one = enumerate_binary(&BinaryParams::with_inner(n, 1, inner)?)?.len();
    Ok(if one > zero { (1, one) } else { (0, zero) })
}

/// Corrects at most one adjacent transposition.
pub fn decode_binary(y: &QaryString, params: &BinaryParams) -> Result<QaryString> {
    check_shape(y, params.n)?;
    let s = y.symbols();
    let Some(flip) = params.inner.locate_error(&even_bits(s))? else {
        return if weighted_parity(s) == params.s { Ok(y.clone()) } else { Err(Error::Uncorrectable) };
    };
    // The flipped even position is 2j (1-based) with j = flip + 1. A swap at
    // 2j-1 keeps the weighted parity, a swap at 2j changes it.
    let j = flip + 1;
    let c = (weighted_parity(s) ^ params.s) as usize;
    let k = 2 * j - 1 + c;
    if k >= params.n || s[k - 1] == s[k] {
        return Err(Error::Uncorrectable);
    }
    let mut out = s.to_vec();
    out.swap(k - 1, k);
    let x = QaryString::from_raw(2, out);
    if !is_codeword_binary(&x, params)? {
        return Err(Error::Uncorrectable);
    }
    Ok(x)
}

impl TranspositionCode for BinaryParams {
    fn alphabet(&self) -> usize {
        2
    }

    fn length(&self) -> usize {
        self.n
    }

    fn contains(&self, x: &QaryString) -> Result<bool> {
        is_codeword_binary(x, self)
    }

    fn decode(&self, y: &QaryString) -> Result<QaryString> {
        decode_binary(y, self)
    }

    fn enumerate(&self) -> Result<Code> {
        enumerate_binary(self)
    }
}
