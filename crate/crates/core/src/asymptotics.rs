//! Counting formulas, ball-size bounds and asymptotic rate curves.
//!
//! Exact counts are big integers. Growth exponents are in bits per symbol and
//! use double precision, with log-gamma wherever a binomial gets large.
//!
//! Counting conventions: `A(x; r)` holds the strings obtained from `x` by `r`
//! disjoint swaps of unequal symbols. Every string reachable from `x` comes
//! from exactly one such pattern, so `P_q(n; r) = sum_x |A(x; r)|` is the
//! coefficient of `z^n u^r` in `1 / (1 - q z - q (q-1) z^2 u)`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combin::{binomial, factorial, ln_binomial, ln_sum_exp, pow};
use crate::error::{Error, Result};
use crate::metric::{ball_metric, space_size, DescendantMap};
use crate::qstring::{all_strings, check_alphabet, QaryString};
use crate::zero_error::zero_error_rate;

/// Grid step of the coarse search in [`beta_bar_upper`].
pub const BETA_BAR_GRID_STEP: f64 = 1e-4;
/// Tolerance of the golden-section refinement in [`beta_bar_upper`].
pub const BETA_BAR_TOLERANCE: f64 = 1e-9;
/// Tolerance of the bisection in [`crossover_delta0`].
pub const CROSSOVER_TOLERANCE: f64 = 1e-6;
/// Slack allowed on domain endpoints, so grids ending at `0.5` or `1.0`
/// survive rounding.
const DOMAIN_SLACK: f64 = 1e-12;

fn check_domain(name: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<f64> {
    if !(lo - DOMAIN_SLACK..=hi + DOMAIN_SLACK).contains(&value) {
        return Err(Error::OutOfDomain { name, value, domain });
    }
    Ok(value.clamp(lo, hi))
}

/// Binary entropy in bits, with `0 log 0 = 0`. Arguments outside `(0, 1)`
/// give 0.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// The `q`-ary entropy function.
pub fn entropy_q(q: usize, x: f64) -> Result<f64> {
    check_alphabet(q)?;
    let x = check_domain("x", x, 0.0, 1.0, "[0, 1]")?;
    let lq = (q as f64).log2();
    Ok((binary_entropy(x) + x * ((q - 1) as f64).log2()) / lq)
}

/// Number of strings in `Z_q^n` with exactly `r` runs.
pub fn count_strings_with_runs(q: usize, n: usize, r: usize) -> BigUint {
    if r == 0 || r > n {
        return BigUint::from((n == 0 && r == 0) as u32);
    }
    binomial(n as i64 - 1, r as i64 - 1) * BigUint::from(q) * pow(q as u64 - 1, r as u64 - 1)
}

/// `log2` of the number of strings with at most `max_runs` runs, via log-gamma.
pub fn log2_strings_with_at_most_runs(q: usize, n: usize, max_runs: usize) -> f64 {
    let ln_q = (q as f64).ln();
    let ln_q1 = ((q - 1) as f64).ln();
    let terms =
        (1..=max_runs.min(n)).map(|r| ln_binomial((n - 1) as f64, (r - 1) as f64) + ln_q + (r - 1) as f64 * ln_q1);
    ln_sum_exp(terms) / std::f64::consts::LN_2
}

/// Limit of `(1/n) log_q` of the number of strings with at most `rho n` runs.
pub fn runs_exponent(q: usize, rho: f64) -> Result<f64> {
    let rho = check_domain("rho", rho, 0.0, 1.0, "[0, 1]")?;
    if rho >= 1.0 - 1.0 / q as f64 {
        check_alphabet(q)?;
        return Ok(1.0);
    }
    entropy_q(q, rho)
}

/// Guaranteed lower bound on `|B(x; t)|` for a string with `run` runs.
pub fn ball_lower_bound(run: usize, t: usize) -> BigUint {
    if t == 0 {
        return BigUint::one();
    }
    let half = (run / 2) as i64;
    let t = t as i64;
    (0..=t).map(|u| binomial(half, u) * binomial(half - 2 * u - 1, t - u)).sum()
}

/// `sum_{s<=t} C(n-s, s)`, the number of disjoint swap patterns of size at
/// most `t` on length `n`.
pub fn ball_upper_bound(n: usize, t: usize) -> BigUint {
    (0..=t as i64).map(|s| binomial(n as i64 - s, s)).sum()
}

/// Summands `C(2(t-v), v) * |B(x; t-v)|` for `v = 0..=floor(2t/3)`, where
/// `ball_sizes[u]` is (a bound on) `|B(x; u)|` and must cover `u <= t`.
fn bbar_terms(ball_sizes: &[BigUint], t: usize) -> Vec<BigUint> {
    (0..=2 * t / 3).map(|v| binomial(2 * (t - v) as i64, v as i64) * &ball_sizes[t - v]).collect()
}

/// Upper bound on the distance ball `|B̄(x; t)|` from the exact sizes
/// `|B(x; u)|`, `u <= t`.
pub fn bbar_bound_from_ball_sizes(ball_sizes: &[BigUint], t: usize) -> Result<BigUint> {
    if ball_sizes.len() <= t {
        return Err(Error::InvalidParams(format!("need ball sizes up to radius {t}")));
    }
    Ok(bbar_terms(ball_sizes, t).into_iter().sum())
}

/// The same bound evaluated at a particular string.
pub fn bbar_upper_bound_for(x: &QaryString, t: usize) -> Result<BigUint> {
    let profile = DescendantMap::within(x, t)?.profile();
    let mut sizes = Vec::with_capacity(t + 1);
    let mut acc = BigUint::zero();
    for u in 0..=t {
        acc += profile.get(u).copied().unwrap_or(0);
        sizes.push(acc.clone());
    }
    bbar_bound_from_ball_sizes(&sizes, t)
}

/// The bound with every `|B(x; u)|` replaced by [`ball_upper_bound`]; valid
/// for every string of length `n`.
pub fn bbar_upper_bound(n: usize, t: usize) -> BigUint {
    let sizes: Vec<BigUint> = (0..=t).map(|u| ball_upper_bound(n, u)).collect();
    bbar_terms(&sizes, t).into_iter().sum()
}

/// `(floor(2t/3) + 1) * max_v C(2(t-v), v) * ball_upper_bound(n, t-v)`.
pub fn bbar_upper_bound_max_form(n: usize, t: usize) -> BigUint {
    let sizes: Vec<BigUint> = (0..=t).map(|u| ball_upper_bound(n, u)).collect();
    let terms = bbar_terms(&sizes, t);
    BigUint::from(terms.len()) * terms.into_iter().max().unwrap_or_default()
}

/// Asymptotic size envelope for optimal codes, as base-2 logarithms. These
/// are leading-order expressions, not finite-length inequalities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub log2_lower: f64,
    pub log2_upper: f64,
}

impl Envelope {
    pub fn lower(&self) -> f64 {
        self.log2_lower.exp2()
    }

    pub fn upper(&self) -> f64 {
        self.log2_upper.exp2()
    }
}

fn check_length(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParams("block length must be at least 1".into()));
    }
    Ok(n as f64)
}

/// `q^n / ((2q-1) n)` (improved to `2^n / n` for `q = 2`) and
/// `q^(n+1) / ((q-1) n)`.
pub fn cardinality_bounds_t1(q: usize, n: usize) -> Result<Envelope> {
    check_alphabet(q)?;
    let nf = check_length(n)?;
    let lq = (q as f64).log2();
    let log2_lower = if q == 2 { nf - nf.log2() } else { nf * lq - ((2 * q - 1) as f64 * nf).log2() };
    let log2_upper = (nf + 1.0) * lq - ((q - 1) as f64 * nf).log2();
    Ok(Envelope { log2_lower, log2_upper })
}

/// `(2t)! q^n / ((4t/3 + 1) n^(2t))` and `t! q^(n+t) / ((q-1)^t n^t)`. For
/// `q = 2` the lower side is `c_t 2^(n+t) / n^t` with `c_1 = 1/2`,
/// `c_2 = 1/3` and `c_t = 1/(2t+1)` beyond.
pub fn cardinality_bounds_t(q: usize, n: usize, t: usize) -> Result<Envelope> {
    check_alphabet(q)?;
    let nf = check_length(n)?;
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    let (lq, tf) = ((q as f64).log2(), t as f64);
    let log2_factorial = |m: u64| crate::combin::log2_big(&factorial(m));
    let log2_lower = if q == 2 {
        let c_t = match t {
            1 => 0.5,
            2 => 1.0 / 3.0,
            _ => 1.0 / (2.0 * tf + 1.0),
        };
        c_t.log2() + nf + tf - tf * nf.log2()
    } else {
        log2_factorial(2 * t as u64) + nf * lq - (4.0 * tf / 3.0 + 1.0).log2() - 2.0 * tf * nf.log2()
    };
    let log2_upper = log2_factorial(t as u64) + (nf + tf) * lq - tf * ((q - 1) as f64).log2() - tf * nf.log2();
    Ok(Envelope { log2_lower, log2_upper })
}

/// `P_q(n; r)` by the linear recursion
/// `P(n; r) = q P(n-1; r) + q (q-1) P(n-2; r-1)`.
pub fn total_exact_count_recursive(q: usize, n: usize, r: usize) -> BigUint {
    let (a, b) = (BigUint::from(q), BigUint::from(q * (q - 1)));
    // rows[m][s] = P(m; s) for s <= r.
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let row = (0..=r)
            .map(|s| {
                if m == 0 {
                    return BigUint::from((s == 0) as u32);
                }
                let mut v = &a * &rows[m - 1][s];
                if m >= 2 && s >= 1 {
                    v += &b * &rows[m - 2][s - 1];
                }
                v
            })
            .collect();
        rows.push(row);
    }
    rows[n][r].clone()
}

/// `P_q(n; r) = C(n-r, r) q^(n-r) (q-1)^r`.
pub fn total_exact_count(q: usize, n: usize, r: usize) -> BigUint {
    if 2 * r > n {
        return BigUint::zero();
    }
    binomial((n - r) as i64, r as i64) * pow(q as u64, (n - r) as u64) * pow(q as u64 - 1, r as u64)
}

/// `log2 P_q(n; r)` via log-gamma; `-inf` when the count is zero.
pub fn log2_total_exact_count(q: usize, n: usize, r: usize) -> f64 {
    if 2 * r > n || (q == 1 && r > 0) {
        return f64::NEG_INFINITY;
    }
    let ln =
        ln_binomial((n - r) as f64, r as f64) + (n - r) as f64 * (q as f64).ln() + r as f64 * ((q - 1) as f64).ln();
    ln / std::f64::consts::LN_2
}

/// `T_q(n; r) = sum_x |B(x; r)|`, by enumeration.
pub fn total_ball_count(q: usize, n: usize, r: usize) -> Result<BigUint> {
    space_size(q, n)?;
    let mut total = BigUint::zero();
    for x in all_strings(q, n) {
        total += DescendantMap::within(&x, r)?.len();
    }
    Ok(total)
}

/// `T̄_q(n; r) = sum_x |B̄(x; r)|`, by enumeration.
pub fn total_metric_ball_count(q: usize, n: usize, r: usize) -> Result<BigUint> {
    let size = space_size(q, n)?;
    const LIMIT: u128 = 1 << 14;
    if size > LIMIT {
        return Err(Error::TooLarge { what: "metric ball totals", size, limit: LIMIT });
    }
    let mut total = BigUint::zero();
    for x in all_strings(q, n) {
        total += ball_metric(&x, r)?.len();
    }
    Ok(total)
}

/// Growth exponent of `P_q(n; rho n)`, for `rho` in `[0, 1/2]`.
pub fn alpha(q: usize, rho: f64) -> Result<f64> {
    check_alphabet(q)?;
    let rho = check_domain("rho", rho, 0.0, 0.5, "[0, 1/2]")?;
    Ok(alpha_unchecked(q as f64, rho))
}

fn alpha_unchecked(q: f64, rho: f64) -> f64 {
    let h = if rho >= 0.5 { 0.0 } else { (1.0 - rho) * binary_entropy(rho / (1.0 - rho)) };
    h + (1.0 - rho) * q.log2() + rho * (q - 1.0).log2()
}

/// Maximiser of [`alpha`].
pub fn rho_star(q: usize) -> Result<f64> {
    check_alphabet(q)?;
    let q = q as f64;
    Ok(0.5 * (1.0 - (q / (5.0 * q - 4.0)).sqrt()))
}

/// Growth exponent of `T_q(n; rho n)`: `alpha` up to `rho_star`, then flat.
pub fn beta(q: usize, rho: f64) -> Result<f64> {
    let star = rho_star(q)?;
    if rho.is_nan() || rho < -DOMAIN_SLACK {
        return Err(Error::OutOfDomain { name: "rho", value: rho, domain: "[0, inf)" });
    }
    Ok(alpha_unchecked(q as f64, rho.clamp(0.0, star)))
}

/// Maximises a function on `[lo, hi]` by a grid of spacing `step` followed by
/// golden-section search around the best grid point.
fn maximize(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64, tol: f64) -> (f64, f64) {
    let steps = ((hi - lo) / step).ceil().max(1.0) as usize;
    let at = |i: usize| if i == steps { hi } else { lo + i as f64 * step };
    let (mut best_i, mut best) = (0, f(lo));
    for i in 1..=steps {
        let v = f(at(i));
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let (mut a, mut b) = (at(best_i.saturating_sub(1)), at((best_i + 1).min(steps)));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    if fm >= best {
        (mid, fm)
    } else {
        (at(best_i), best)
    }
}

/// Upper bound on the growth exponent of the distance-ball totals
/// `T̄_q(n; rho n)`: the maximum over `lambda` in `[rho/3, rho]` of
/// `2 lambda H((rho - lambda) / (2 lambda)) + beta(lambda)`.
pub fn beta_bar_upper(q: usize, rho: f64) -> Result<f64> {
    check_alphabet(q)?;
    let rho = check_domain("rho", rho, 0.0, 1.0, "[0, 1]")?;
    let qf = q as f64;
    let star = rho_star(q)?;
    if rho == 0.0 {
        return Ok(qf.log2());
    }
    let objective = |lambda: f64| {
        2.0 * lambda * binary_entropy((rho - lambda) / (2.0 * lambda)) + alpha_unchecked(qf, lambda.min(star))
    };
    Ok(maximize(objective, rho / 3.0, rho, BETA_BAR_GRID_STEP, BETA_BAR_TOLERANCE).1)
}

/// Gilbert-Varshamov style rate for relative distance `delta`.
pub fn gv_rate(q: usize, delta: f64) -> Result<f64> {
    Ok(2.0 * (q as f64).log2() - beta_bar_upper(q, delta)?)
}

/// `0.5 * log2(floor(q/2) * ceil(q/2))`.
pub fn half_log_rate(q: usize) -> Result<f64> {
    check_alphabet(q)?;
    Ok(0.5 * (((q / 2) * (q - q / 2)) as f64).log2())
}

/// One point of the combined lower bound on achievable rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateCurvePoint {
    pub delta: f64,
    pub r_gv: f64,
    pub r_zero_error: f64,
    pub r_half_log: f64,
    pub r_combined: f64,
}

impl RateCurvePoint {
    pub fn csv_row(&self) -> String {
        format!(
            "{:.9},{:.9},{:.9},{:.9},{:.9}",
            self.delta, self.r_gv, self.r_zero_error, self.r_half_log, self.r_combined
        )
    }
}

pub const RATE_CURVE_HEADER: &str = "delta,r_gv,r_zero_error,r_half_log,r_combined";

pub fn combined_rate(q: usize, delta: f64) -> Result<RateCurvePoint> {
    let r_gv = gv_rate(q, delta)?;
    let r_zero_error = zero_error_rate(q)?;
    let r_half_log = half_log_rate(q)?;
    Ok(RateCurvePoint { delta, r_gv, r_zero_error, r_half_log, r_combined: r_gv.max(r_zero_error).max(r_half_log) })
}

/// Evenly spaced points `start, start+step, ..., end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !end.is_finite() || end < start {
            return Err(Error::InvalidParams(format!("bad grid {start}:{end}:{step}")));
        }
        Ok(Self { start, end, step })
    }

    pub fn len(&self) -> usize {
        ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points are computed as `start + i * step` to avoid drift.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| (self.start + i as f64 * self.step).min(self.end))
    }
}

/// Parses `start:end:step`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            &[a, b, c] => Self::new(a, b, c),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

pub fn rate_curve(q: usize, grid: &Grid) -> Result<Vec<RateCurvePoint>> {
    grid.points().map(|d| combined_rate(q, d)).collect()
}

/// CSV with [`RATE_CURVE_HEADER`] and one row per point.
pub fn rate_curve_csv(points: &[RateCurvePoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(RATE_CURVE_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(out, "{}", p.csv_row());
    }
    out
}

/// A sampled value of one of the growth exponents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPoint {
    pub rho: f64,
    pub value: f64,
}

/// Where the GV rate falls to the best zero-error rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Crossover {
    At(f64),
    /// The GV rate stays above the zero-error rates on all of `[0, 1]`.
    NoCrossover,
}

pub fn crossover_delta0(q: usize) -> Result<Crossover> {
    let floor = zero_error_rate(q)?.max(half_log_rate(q)?);
    let gap = |d: f64| gv_rate(q, d).map(|r| r - floor);
    if gap(1.0)? >= 0.0 {
        return Ok(Crossover::NoCrossover);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    if gap(lo)? <= 0.0 {
        return Ok(Crossover::At(0.0));
    }
    while hi - lo > CROSSOVER_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Crossover::At(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::ball_disjoint;
    use crate::qstring::disjoint_location_sets;

    const EPS: f64 = 1e-12;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_q(3, 0.0).unwrap(), 0.0);
        for q in 2..=8 {
            assert!((entropy_q(q, 1.0 - 1.0 / q as f64).unwrap() - 1.0).abs() < EPS);
        }
        assert!((entropy_q(2, 0.5).unwrap() - 1.0).abs() < EPS);
        assert!(entropy_q(2, 1.5).is_err());
        assert!(entropy_q(2, -0.1).is_err());
    }

    #[test]
    fn run_counts() {
        for q in 2..=4 {
            assert_eq!(count_strings_with_runs(q, 7, 1), BigUint::from(q));
        }
        assert_eq!(count_strings_with_runs(2, 3, 2), BigUint::from(4u32));
        assert_eq!(count_strings_with_runs(2, 3, 4), BigUint::zero());
        assert_eq!(count_strings_with_runs(2, 3, 0), BigUint::zero());
        for q in 2..=4usize {
            for n in 1..=12usize {
                let total: BigUint = (1..=n).map(|r| count_strings_with_runs(q, n, r)).sum();
                assert_eq!(total, pow(q as u64, n as u64));
            }
        }
        // Independent oracle: tally run counts over the whole space.
        for (q, n) in [(2, 8), (3, 6)] {
            let mut tally = vec![0u32; n + 1];
            for x in all_strings(q, n) {
                tally[x.run_count().unwrap()] += 1;
            }
            for (r, &count) in tally.iter().enumerate().skip(1) {
                assert_eq!(count_strings_with_runs(q, n, r), BigUint::from(count));
            }
        }
    }

    #[test]
    fn run_exponent_at_finite_length() {
        let n = 5000;
        for q in 2..=4usize {
            for rho in [0.2, 1.0 - 1.0 / q as f64, 0.9] {
                let r = (rho * n as f64).floor() as usize;
                let empirical = log2_strings_with_at_most_runs(q, n, r) / n as f64 / (q as f64).log2();
                assert!((empirical - runs_exponent(q, rho).unwrap()).abs() <= 0.01, "q={q} rho={rho}");
            }
        }
    }

    #[test]
    fn ball_bound_values() {
        assert_eq!(ball_lower_bound(1, 0), BigUint::one());
        assert_eq!(ball_upper_bound(9, 0), BigUint::one());
        for n in 1..20 {
            assert_eq!(ball_upper_bound(n, 1), BigUint::from(n));
        }
        // With run <= 2 there is at most one boundary, and C(0, 1) kills the
        // one-swap term.
        assert_eq!(ball_lower_bound(2, 1), BigUint::zero());
        assert_eq!(ball_lower_bound(6, 1), BigUint::from(5u32));
    }

    #[test]
    fn ball_sandwich() {
        for (q, max_n, max_t) in [(2, 10, 3), (3, 6, 2)] {
            for n in 1..=max_n {
                for x in all_strings(q, n) {
                    let run = x.run_count().unwrap();
                    for t in 0..=max_t {
                        let size = BigUint::from(ball_disjoint(&x, t).unwrap().len());
                        assert!(ball_lower_bound(run, t) <= size, "{x} t={t}");
                        assert!(size <= ball_upper_bound(n, t), "{x} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn distance_ball_bound() {
        for n in 1..=8 {
            for x in all_strings(2, n) {
                for t in 1..=3 {
                    let size = BigUint::from(ball_metric(&x, t).unwrap().len());
                    let exact = bbar_upper_bound_for(&x, t).unwrap();
                    assert!(size <= exact, "{x} t={t}");
                    assert!(exact <= bbar_upper_bound(n, t));
                    assert!(bbar_upper_bound(n, t) <= bbar_upper_bound_max_form(n, t));
                }
                // t = 1 keeps only the v = 0 summand.
                let b1 = BigUint::from(ball_disjoint(&x, 1).unwrap().len());
                assert_eq!(bbar_upper_bound_for(&x, 1).unwrap(), b1);
            }
        }
    }

    #[test]
    fn envelopes() {
        let e = cardinality_bounds_t1(2, 16).unwrap();
        assert!((e.log2_lower - 12.0).abs() < EPS);
        for q in 2..=5 {
            for n in [8, 50, 1000] {
                let one = cardinality_bounds_t1(q, n).unwrap();
                let general = cardinality_bounds_t(q, n, 1).unwrap();
                assert!((one.log2_upper - general.log2_upper).abs() < 1e-9);
            }
        }
        let e3 = cardinality_bounds_t(3, 100, 1).unwrap();
        assert!((e3.log2_lower - (2.0 * 3f64.powi(100) / (7.0 / 3.0 * 1e4)).log2()).abs() < 1e-9);
        let b2 = cardinality_bounds_t(2, 64, 2).unwrap();
        assert!((b2.log2_lower - (66.0 - 12.0 - 3f64.log2())).abs() < 1e-9);
        assert!(cardinality_bounds_t(2, 0, 1).is_err());
        assert!(cardinality_bounds_t(2, 10, 0).is_err());
    }

    /// `sum_x |A(x; r)|` where `A(x; r)` is read off the disjoint patterns
    /// of size `r` whose swaps all exchange unequal symbols.
    fn effective_pattern_total(q: usize, n: usize, r: usize) -> u64 {
        let patterns: Vec<Vec<usize>> = disjoint_location_sets(n, r).into_iter().filter(|p| p.len() == r).collect();
        let mut total = 0;
        for x in all_strings(q, n) {
            let s = x.symbols();
            let mut seen = std::collections::HashSet::new();
            for p in &patterns {
                if p.iter().all(|&k| s[k - 1] != s[k]) {
                    let mut y = s.to_vec();
                    for &k in p {
                        y.swap(k - 1, k);
                    }
                    assert!(seen.insert(y), "two effective patterns gave the same string");
                }
            }
            total += seen.len() as u64;
        }
        total
    }

    #[test]
    fn exact_totals() {
        assert_eq!(total_exact_count(2, 2, 1), BigUint::from(2u32));
        assert_eq!(total_exact_count(2, 3, 1), BigUint::from(8u32));
        for q in 2..=4usize {
            for n in 0..=10usize {
                assert_eq!(total_exact_count(q, n, 0), pow(q as u64, n as u64));
                for r in 0..=n / 2 + 1 {
                    assert_eq!(total_exact_count(q, n, r), total_exact_count_recursive(q, n, r));
                }
            }
        }
        for (q, max_n) in [(2, 10), (3, 7), (4, 6)] {
            for n in 0..=max_n {
                for r in 0..=n / 2 {
                    assert_eq!(
                        total_exact_count(q, n, r),
                        BigUint::from(effective_pattern_total(q, n, r)),
                        "q={q} n={n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn total_ball_sandwich() {
        for q in 2..=3usize {
            for n in 0..=8usize {
                assert_eq!(total_ball_count(q, n, 0).unwrap(), pow(q as u64, n as u64));
                for r in 0..=n / 2 {
                    let t = total_ball_count(q, n, r).unwrap();
                    let exact: Vec<BigUint> = (0..=r).map(|s| total_exact_count(q, n, s)).collect();
                    let max = exact.iter().max().unwrap().clone();
                    let sum: BigUint = exact.iter().sum();
                    assert!(max <= t && t <= sum, "q={q} n={n} r={r}");
                    // Distinct effective patterns give distinct strings, so the
                    // upper side is attained.
                    assert_eq!(t, sum);
                }
            }
        }
        for n in 0..=8 {
            for r in 0..=4 {
                assert!(total_metric_ball_count(2, n, r).unwrap() >= total_ball_count(2, n, r).unwrap());
            }
        }
    }

    #[test]
    fn alpha_values_and_shape() {
        for q in 2..=8 {
            assert!((alpha(q, 0.0).unwrap() - (q as f64).log2()).abs() < EPS);
        }
        assert!((alpha(2, 0.5).unwrap() - 0.5).abs() < EPS);
        assert!(alpha(2, 0.6).is_err());
        for q in 2..=6 {
            let vals: Vec<f64> = (0..=500).map(|i| alpha(q, i as f64 * 1e-3).unwrap()).collect();
            for w in vals.windows(3) {
                assert!(w[0] - 2.0 * w[1] + w[2] <= 1e-12);
            }
        }
    }

    #[test]
    fn alpha_matches_finite_counts() {
        let n = 10_000;
        for q in 2..=4 {
            for rho in [0.1, 0.2, 0.3] {
                let r = (rho * n as f64).floor() as usize;
                let empirical = log2_total_exact_count(q, n, r) / n as f64;
                assert!((empirical - alpha(q, rho).unwrap()).abs() <= 0.01, "q={q} rho={rho}");
            }
        }
        assert_eq!(log2_total_exact_count(2, 10, 6), f64::NEG_INFINITY);
        let exact = crate::combin::log2_big(&total_exact_count(3, 200, 50));
        assert!((exact - log2_total_exact_count(3, 200, 50)).abs() < 1e-6);
    }

    #[test]
    fn rho_star_is_the_argmax() {
        assert!((rho_star(2).unwrap() - 0.5 * (1.0 - 1.0 / 3f64.sqrt())).abs() < EPS);
        let limit = 0.5 * (1.0 - 1.0 / 5f64.sqrt());
        assert!((rho_star(256).unwrap() - limit).abs() < 1e-3);
        for q in 2..=8 {
            let star = rho_star(q).unwrap();
            let (arg, _) = maximize(|r| alpha_unchecked(q as f64, r), 0.0, 0.5, 1e-3, 1e-12);
            assert!((arg - star).abs() < 1e-6, "q={q}");
            let top = alpha(q, star).unwrap();
            assert!(alpha(q, star - 1e-4).unwrap() < top && alpha(q, star + 1e-4).unwrap() < top);
        }
    }

    #[test]
    fn beta_shape() {
        for q in 2..=5 {
            let star = rho_star(q).unwrap();
            assert!((beta(q, 0.0).unwrap() - (q as f64).log2()).abs() < EPS);
            assert_eq!(beta(q, 0.5).unwrap(), alpha(q, star).unwrap());
            let vals: Vec<f64> = (0..=1000).map(|i| beta(q, i as f64 * 1e-3).unwrap()).collect();
            for w in vals.windows(2) {
                assert!(w[1] >= w[0] - 1e-15);
                assert!(w[1] - w[0] < 2e-2);
            }
        }
        assert!(beta(2, -0.1).is_err());
    }

    #[test]
    fn beta_bar_shape() {
        for q in 2..=5 {
            assert!((beta_bar_upper(q, 0.0).unwrap() - (q as f64).log2()).abs() < EPS);
            for i in 0..=50 {
                let rho = i as f64 / 50.0;
                assert!(beta_bar_upper(q, rho).unwrap() >= beta(q, rho).unwrap() - 1e-12);
            }
        }
        assert!(beta_bar_upper(2, 1.1).is_err());
    }

    #[test]
    fn beta_bar_against_finite_totals() {
        let n = 8;
        for rho in [0.25, 0.5] {
            let r = (rho * n as f64).floor() as usize;
            let empirical = crate::combin::log2_big(&total_metric_ball_count(2, n, r).unwrap()) / n as f64;
            assert!(empirical <= beta_bar_upper(2, rho).unwrap() + 0.15, "rho={rho}");
        }
    }

    #[test]
    fn gv_curve() {
        for q in 2..=5 {
            assert!((gv_rate(q, 0.0).unwrap() - (q as f64).log2()).abs() < EPS);
            let vals: Vec<f64> = (0..=100).map(|i| gv_rate(q, i as f64 / 100.0).unwrap()).collect();
            for w in vals.windows(2) {
                assert!(w[1] <= w[0] + 1e-9);
            }
        }
        assert_eq!(gv_rate(4, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn combined_points() {
        let p = combined_rate(4, 1.0).unwrap();
        assert_eq!(p.r_combined, p.r_zero_error);
        assert!(p.r_combined > 1.0);
        let p2 = combined_rate(2, 1.0).unwrap();
        assert!((p2.r_combined - 0.643).abs() < 1e-3);
        let p8 = combined_rate(8, 1.0).unwrap();
        assert_eq!(p8.r_combined, 2.0);
        assert_eq!(p8.r_half_log, 2.0);
    }

    #[test]
    fn crossover() {
        let Crossover::At(d4) = crossover_delta0(4).unwrap() else { panic!("q=4 must cross") };
        assert!((d4 - 0.343).abs() <= 0.005);
        let z = zero_error_rate(4).unwrap();
        assert!(gv_rate(4, d4 - 0.01).unwrap() > z && z > gv_rate(4, d4 + 0.01).unwrap());
        assert!(matches!(crossover_delta0(2).unwrap(), Crossover::At(d) if d > 0.0 && d < 1.0));
    }

    #[test]
    fn grid_and_csv() {
        let g: Grid = "0:1:0.001".parse().unwrap();
        assert_eq!(g.len(), 1001);
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts[0], 0.0);
        assert_eq!(*pts.last().unwrap(), 1.0);
        assert!("0:1".parse::<Grid>().is_err());
        assert!("1:0:0.1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        let curve = rate_curve(4, &Grid::new(0.0, 0.5, 0.25).unwrap()).unwrap();
        let csv = rate_curve_csv(&curve);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], RATE_CURVE_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0.000000000,2.000000000,"));
    }
}
