//! Acceptance checks. Each test prints one `criterion N ...: PASS|FAIL` line
//! and fails when its criterion is not met. Run with `--nocapture` to see the
//! lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use tcodes::asymptotics::{
    alpha, ball_lower_bound, ball_upper_bound, bbar_upper_bound, bbar_upper_bound_for, cardinality_bounds_t1,
    combined_rate, count_strings_with_runs, crossover_delta0, gv_rate, half_log_rate, log2_total_exact_count,
    rate_curve, rho_star, total_ball_count, total_exact_count, total_exact_count_recursive, Crossover, Grid,
};
use tcodes::metric::{
    ball_disjoint, ball_metric, corrects_t, distance, max_finite_distance, min_distance, optimal_code_search,
    DescendantMap, DistanceKind,
};
use tcodes::qstring::{all_strings, disjoint_location_sets};
use tcodes::single_codes::{
    enumerate_binary, enumerate_code_q, inner_code, smallest_valid_prime, BinaryParams, InnerCode, SyndromeParams,
};
use tcodes::zero_error::{count_d, lambda_q, zero_error_rate, AlphabetPartition, ZeroErrorCodebook};
use tcodes::{ChannelModel, Code, Distance, QaryString, TranspositionCode, TranspositionPattern};

/// Collects failed checks for one criterion.
struct Checks {
    failures: Vec<String>,
    count: u64,
}

impl Checks {
    fn new() -> Self {
        Self { failures: Vec::new(), count: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn finish(self, number: u32, title: &str, notes: &[String]) {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {number} ({title}): {verdict} [{} checks]", self.count);
        for note in notes {
            println!("    {note}");
        }
        for f in &self.failures {
            println!("    failed: {f}");
        }
        assert!(self.failures.is_empty(), "criterion {number} failed: {:?}", self.failures);
    }
}

fn s(q: usize, v: &[u8]) -> QaryString {
    QaryString::from_slice(q, v).unwrap()
}

fn disjoint(locations: &[usize]) -> TranspositionPattern {
    TranspositionPattern::disjoint(locations.to_vec()).unwrap()
}

/// Checks the decoder on the codeword itself and on every single-swap
/// corruption of it.
fn round_trips(code: &dyn TranspositionCode, w: &QaryString, checks: &mut Checks) {
    checks.check(code.decode(w).as_ref() == Ok(w), || format!("decode({w}) changed a codeword"));
    for k in 1..w.len() {
        let y = w.apply_disjoint(&disjoint(&[k])).unwrap();
        checks.check(code.decode(&y).as_ref() == Ok(w), || format!("swap {k} of {w} not undone"));
    }
}

#[test]
fn criterion_1_worked_examples() {
    let start = Instant::now();
    let mut c = Checks::new();
    let x = s(4, &[0, 1, 1, 3, 0, 0, 2, 2, 2, 1]);
    let y = x.apply_disjoint(&disjoint(&[1, 4, 9])).unwrap();
    c.check(y == s(4, &[1, 0, 1, 0, 3, 0, 2, 2, 1, 2]), || format!("disjoint example gave {y}"));
    let p = TranspositionPattern::successive(vec![3, 4, 9]).unwrap();
    let y = x.apply_successive(&p).unwrap();
    c.check(y == s(4, &[0, 1, 3, 0, 1, 0, 2, 2, 1, 2]), || format!("successive example gave {y}"));

    for (a, b, d) in
        [(&[1u8, 0, 1, 0, 0][..], &[0u8, 0, 1, 0, 1][..], 4), (&[1, 0, 1, 0, 1, 0], &[0, 0, 1, 0, 1, 1], 5)]
    {
        let got = distance(&s(2, a), &s(2, b)).unwrap();
        c.check(got == Distance::Finite(d), || format!("extremal witness of length {} has distance {got}", a.len()));
        let n = a.len();
        let max = max_finite_distance(2, n).unwrap();
        c.check(max == n - 1, || format!("largest finite distance at n={n} is {max}"));
    }

    let (x, y, z) = (s(2, &[1, 0, 0, 0]), s(2, &[0, 0, 0, 1]), s(2, &[0, 0, 1, 0]));
    let (xy, xz, zy) = (distance(&x, &y).unwrap(), distance(&x, &z).unwrap(), distance(&z, &y).unwrap());
    c.check(xy == Distance::Infinite && xz == Distance::Finite(2) && zy == Distance::Finite(1), || {
        format!("triangle triple gave {xy}, {xz}, {zy}")
    });

    let far =
        Code::new(2, 10, vec![s(2, &[1, 0, 1, 0, 0, 0, 1, 0, 1, 0]), s(2, &[0, 0, 1, 1, 0, 0, 0, 0, 1, 1])]).unwrap();
    let md = min_distance(&far, DistanceKind::Disjoint).unwrap().value;
    c.check(md == Distance::Finite(6), || format!("two-word code has distance {md}"));
    c.check(corrects_t(&far, 3, ChannelModel::Disjoint).unwrap(), || "two-word code misses t=3".into());

    let weak = Code::new(2, 3, vec![s(2, &[1, 0, 0]), s(2, &[0, 0, 1])]).unwrap();
    c.check(!corrects_t(&weak, 1, ChannelModel::Disjoint).unwrap(), || "100/001 should fail at t=1".into());

    let elapsed = start.elapsed();
    c.check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    c.finish(1, "worked examples", &[format!("runtime {elapsed:?}")]);
}

#[test]
fn criterion_2_syndrome_codes_exhaustive() {
    let mut c = Checks::new();
    let mut codes = 0;
    for (q, max_n) in [(2, 8), (3, 7), (4, 6)] {
        for n in 2..=max_n {
            let p = smallest_valid_prime(q, n);
            for s1 in 0..2 * q as u64 - 1 {
                for s2 in 0..p {
                    let params = SyndromeParams::with_prime(q, n, s1, s2, p).unwrap();
                    let code = enumerate_code_q(&params).unwrap();
                    if code.is_empty() {
                        continue;
                    }
                    codes += 1;
                    let ok = corrects_t(&code, 1, ChannelModel::Disjoint).unwrap();
                    c.check(ok, || format!("q={q} n={n} s=({s1},{s2}) has overlapping balls"));
                    for w in &code {
                        round_trips(&params, w, &mut c);
                    }
                }
            }
        }
    }
    c.finish(2, "single-swap syndrome codes", &[format!("{codes} nonempty codes")]);
}

#[test]
fn criterion_3_binary_codes_exhaustive() {
    let mut c = Checks::new();
    for n in [6, 8, 10] {
        for inner in [inner_code(n / 2), InnerCode::repetition(n / 2).unwrap()] {
            for s in 0..2 {
                let params = BinaryParams::with_inner(n, s, inner).unwrap();
                let code = enumerate_binary(&params).unwrap();
                let ok = corrects_t(&code, 1, ChannelModel::Disjoint).unwrap();
                c.check(ok, || format!("{params} has overlapping balls"));
                for w in &code {
                    round_trips(&params, w, &mut c);
                }
            }
        }
    }
    c.finish(3, "binary single-swap codes", &[]);
}

#[test]
fn criterion_4_ball_sizes() {
    let mut c = Checks::new();
    for q in 2..=4 {
        for n in 1..=8 {
            for x in all_strings(q, n) {
                let size = ball_disjoint(&x, 1).unwrap().len();
                let run = x.run_count().unwrap();
                c.check(size == run, || format!("|B({x};1)| = {size}, runs = {run}"));
            }
        }
    }
    for (q, max_n, max_t) in [(2, 12, 3), (3, 8, 2)] {
        for n in 1..=max_n {
            for x in all_strings(q, n) {
                let run = x.run_count().unwrap();
                let map = DescendantMap::within(&x, max_t).unwrap();
                for t in 0..=max_t {
                    let size = BigUint::from(map.ball(t).len());
                    let (lo, hi) = (ball_lower_bound(run, t), ball_upper_bound(n, t));
                    c.check(lo <= size && size <= hi, || format!("{x} t={t}: {lo} <= {size} <= {hi}"));
                    let metric = BigUint::from(ball_metric(&x, t).unwrap().len());
                    let (own, uniform) = (bbar_upper_bound_for(&x, t).unwrap(), bbar_upper_bound(n, t));
                    c.check(metric <= own && metric <= uniform, || format!("{x} t={t}: |ball| {metric} > {own}"));
                }
            }
        }
    }
    c.finish(4, "ball sizes", &[]);
}

/// Per-`r` totals of effective disjoint patterns, summed over `Z_q^n`.
fn effective_totals(q: usize, n: usize) -> Vec<BigUint> {
    let sets = disjoint_location_sets(n, n);
    let mut totals = vec![0u64; n / 2 + 1];
    for x in all_strings(q, n) {
        let v = x.symbols();
        for set in &sets {
            if set.iter().all(|&k| v[k - 1] != v[k]) {
                totals[set.len()] += 1;
            }
        }
    }
    totals.into_iter().map(BigUint::from).collect()
}

#[test]
fn criterion_5_counting_equivalences() {
    let mut c = Checks::new();
    for q in 2..=4 {
        for n in 1..=10 {
            let total: BigUint = (0..=n).map(|r| count_strings_with_runs(q, n, r)).sum();
            c.check(total == BigUint::from(q).pow(n as u32), || format!("run counts for q={q} n={n} sum to {total}"));
            let oracle = effective_totals(q, n);
            for (r, expected) in oracle.iter().enumerate() {
                let (closed, rec) = (total_exact_count(q, n, r), total_exact_count_recursive(q, n, r));
                c.check(closed == *expected && rec == *expected, || {
                    format!("P(q={q},n={n},r={r}): closed {closed}, recursion {rec}, oracle {expected}")
                });
            }
        }
    }
    for q in 2..=3 {
        for n in 1..=8 {
            let (mut largest, mut cumulative) = (BigUint::default(), BigUint::default());
            for r in 0..=n / 2 {
                let p = total_exact_count(q, n, r);
                cumulative += &p;
                largest = largest.max(p);
                let t = total_ball_count(q, n, r).unwrap();
                c.check(largest <= t && t <= cumulative, || {
                    format!("q={q} n={n} r={r}: {largest} <= {t} <= {cumulative}")
                });
            }
        }
    }
    let (p21, p31) = (total_exact_count(2, 2, 1), total_exact_count(2, 3, 1));
    c.check(p21 == BigUint::from(2u8) && p31 == BigUint::from(8u8), || format!("P2(2;1)={p21}, P2(3;1)={p31}"));
    c.finish(5, "counting equivalences", &[]);
}

/// Golden-section maximisation on `[lo, hi]`.
fn argmax(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-10 {
        let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(a) < f(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    (lo + hi) / 2.0
}

#[test]
fn criterion_6_exponent_numerics() {
    let mut c = Checks::new();
    let numeric = argmax(|r| alpha(2, r).unwrap(), 0.0, 0.5);
    let star = rho_star(2).unwrap();
    c.check((numeric - star).abs() <= 1e-6, || format!("rho_star {star} vs numeric argmax {numeric}"));
    let n = 10_000;
    for q in 2..=4 {
        for rho in [0.1, 0.2, 0.3] {
            let r = (rho * n as f64).floor() as usize;
            let finite = log2_total_exact_count(q, n, r) / n as f64;
            let limit = alpha(q, rho).unwrap();
            c.check((finite - limit).abs() <= 0.01, || format!("q={q} rho={rho}: {finite} vs {limit}"));
        }
        let values: Vec<f64> = (0..=500).map(|i| alpha(q, i as f64 * 1e-3).unwrap()).collect();
        for (i, w) in values.windows(3).enumerate() {
            c.check(w[0] - 2.0 * w[1] + w[2] <= 1e-12, || format!("q={q}: convexity at grid point {}", i + 1));
        }
    }
    c.finish(6, "exponent numerics", &[format!("rho_star(2) = {star:.9}, numeric {numeric:.9}")]);
}

#[test]
fn criterion_7_zero_error_code() {
    let mut c = Checks::new();
    for (q, max_n) in [(2, 12), (3, 9)] {
        for n in 1..=max_n {
            let book = ZeroErrorCodebook::with_default_partition(q, n).unwrap();
            let code = book.enumerate().unwrap();
            let md = min_distance(&code, DistanceKind::Disjoint).unwrap().value;
            c.check(md == Distance::Infinite, || format!("q={q} n={n}: minimum distance {md}"));
            // Every disjoint pattern on length n has at most n/2 swaps, so
            // this covers the whole ball of radius floor(n/2).
            let patterns: Vec<_> = disjoint_location_sets(n, n / 2).iter().map(|l| disjoint(l)).collect();
            for w in &code {
                let reached: BTreeSet<QaryString> = patterns.iter().map(|p| w.apply_disjoint(p).unwrap()).collect();
                for y in reached {
                    c.check(book.decode(&y).as_ref() == Ok(w), || format!("q={q}: {y} not decoded to {w}"));
                }
            }
        }
    }
    let d26 = ZeroErrorCodebook::with_default_partition(2, 6).unwrap().size();
    c.check(d26 == BigUint::from(6u8), || format!("|D2(6)| = {d26}"));
    for q in 2..=4 {
        let (a0, a1) = AlphabetPartition::default_for(q).unwrap().sizes();
        for n in 0..=15 {
            let listed = ZeroErrorCodebook::with_default_partition(q, n).unwrap().enumerate().unwrap().len();
            let counted = count_d(n, a0, a1);
            c.check(counted == BigUint::from(listed), || format!("q={q} n={n}: count {counted}, listed {listed}"));
        }
    }
    let (lambda, rate) = (lambda_q(2).unwrap(), zero_error_rate(2).unwrap());
    c.check((lambda - 1.561).abs() <= 1e-3, || format!("lambda_2 = {lambda}"));
    c.check((rate - 0.643).abs() <= 1e-3, || format!("log2 lambda_2 = {rate}"));
    for q in 3..=8 {
        let (r, h) = (zero_error_rate(q).unwrap(), half_log_rate(q).unwrap());
        c.check((r > h) == (q <= 4), || format!("q={q}: zero-error rate {r} vs half-log {h}"));
    }
    c.finish(7, "zero-error code", &[format!("lambda_2 = {lambda:.6}, log2 lambda_2 = {rate:.6}")]);
}

#[test]
fn criterion_8_rate_curves_for_q4() {
    let start = Instant::now();
    let mut c = Checks::new();
    let at_zero = gv_rate(4, 0.0).unwrap();
    c.check(at_zero == 2.0, || format!("gv_rate(4, 0) = {at_zero}"));
    let crossover = match crossover_delta0(4).unwrap() {
        Crossover::At(d) => d,
        Crossover::NoCrossover => f64::NAN,
    };
    c.check((crossover - 0.343).abs() <= 0.005, || format!("crossover {crossover}"));
    let curve = rate_curve(4, &Grid::new(0.0, 1.0, 0.001).unwrap()).unwrap();
    c.check(curve.len() == 1001, || format!("{} grid points", curve.len()));
    for p in &curve {
        let expected = p.r_gv.max(p.r_zero_error).max(p.r_half_log);
        c.check(p.r_combined == expected, || format!("delta={}: combined {} vs {expected}", p.delta, p.r_combined));
        c.check(combined_rate(4, p.delta).unwrap() == *p, || format!("delta={} not reproducible", p.delta));
    }
    let elapsed = start.elapsed();
    c.finish(8, "rate curves for q=4", &[format!("crossover {crossover:.6}, runtime {elapsed:?}")]);
}

#[test]
fn criterion_9_optimal_codes_against_constructions() {
    let mut c = Checks::new();
    let mut notes = Vec::new();
    for n in 2..=8 {
        let (optimal, code) = optimal_code_search(2, n, 1, ChannelModel::Disjoint).unwrap();
        c.check(corrects_t(&code, 1, ChannelModel::Disjoint).unwrap(), || {
            format!("n={n}: search result is not a code")
        });
        let p = smallest_valid_prime(2, n);
        let constructed = (0..3)
            .flat_map(|s1| (0..p).map(move |s2| (s1, s2)))
            .map(|(s1, s2)| enumerate_code_q(&SyndromeParams::with_prime(2, n, s1, s2, p).unwrap()).unwrap().len())
            .max()
            .unwrap();
        c.check(constructed <= optimal, || format!("n={n}: construction {constructed} beats optimum {optimal}"));
        let upper = cardinality_bounds_t1(2, n).unwrap().upper();
        notes.push(format!(
            "n={n}: best construction {constructed} <= optimum {optimal}; envelope upper {upper:.2} ({})",
            if optimal as f64 <= upper { "optimum below" } else { "optimum above" }
        ));
    }
    c.finish(9, "optimal codes vs construction and envelope", &notes);
}
