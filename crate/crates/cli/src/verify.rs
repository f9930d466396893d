//! Exhaustive property checks behind `tcodes verify`.
//!
//! Each suite walks every instance up to `--max-n` and records, per property,
//! how many instances were checked and whether any failed. Suites refuse to
//! start when the largest instance exceeds their cap, unless `--force` is set.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigUint;
use tcodes::asymptotics::{
    alpha, ball_lower_bound, ball_upper_bound, bbar_upper_bound, bbar_upper_bound_for, beta, beta_bar_upper,
    combined_rate, count_strings_with_runs, crossover_delta0, gv_rate, half_log_rate, log2_strings_with_at_most_runs,
    log2_total_exact_count, rho_star, runs_exponent, total_ball_count, total_exact_count, total_exact_count_recursive,
    total_metric_ball_count, Crossover, CROSSOVER_TOLERANCE,
};
use tcodes::combin::{binomial, log2_big};
use tcodes::metric::{
    ball_metric, ball_successive, corrects_t, distance_successive, max_finite_distance, min_distance, DescendantMap,
    DistanceKind,
};
use tcodes::qstring::{all_strings, disjoint_location_sets};
use tcodes::single_codes::{
    best_binary_offset, enumerate_binary, enumerate_code_q, inner_code, smallest_valid_prime, BinaryParams, InnerCode,
    SyndromeParams,
};
use tcodes::zero_error::{count_d, lambda_q, zero_error_rate, AlphabetPartition, ZeroErrorCodebook};
use tcodes::{Distance, Error, QaryString, Result, TranspositionCode, TranspositionPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Balls,
    Distances,
    #[value(name = "single_codes", alias = "single-codes")]
    SingleCodes,
    #[value(name = "zero_error", alias = "zero-error")]
    ZeroError,
    Counts,
    Bounds,
    All,
}

const BALLS_CAP: u128 = 1 << 14;
const DISTANCES_CAP: u128 = 1 << 10;
const SINGLE_CODES_CAP: u128 = 1 << 16;
const ZERO_ERROR_CAP: u128 = 1 << 21;
const COUNTS_CAP: u128 = 1 << 14;
/// Largest space on which the metric-ball totals are compared.
const METRIC_TOTALS_CAP: u128 = 1 << 10;
/// Successive-model pair checks and triangle checks stop at this length.
const SUCCESSIVE_PAIR_MAX_N: usize = 6;

#[derive(Default)]
struct Tally {
    instances: u64,
    failures: u64,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

/// Properties in the order the suites record them.
#[derive(Default)]
pub struct Report {
    rows: Vec<(String, Tally)>,
}

impl Report {
    fn push(&mut self, name: &str, tally: Tally) {
        self.rows.push((name.to_string(), tally));
    }

    fn single(&mut self, name: &str, ok: bool) {
        let mut t = Tally::default();
        t.check(ok);
        self.push(name, t);
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|(_, t)| t.failures == 0)
    }

    /// `property,instances,verdict`; the verdict is `skip` when no instance
    /// fell inside the requested range.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("property,instances,verdict\n");
        for (name, t) in &self.rows {
            let verdict = match (t.instances, t.failures) {
                (0, _) => "skip",
                (_, 0) => "pass",
                _ => "fail",
            };
            let _ = writeln!(out, "{name},{},{verdict}", t.instances);
        }
        out
    }
}

fn space(q: usize, n: usize) -> u128 {
    (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn enforce_cap(what: &'static str, size: u128, limit: u128, force: bool) -> Result<()> {
    if size <= limit {
        return Ok(());
    }
    if !force {
        return Err(Error::TooLarge { what, size, limit });
    }
    eprintln!("warning: {what}: instance size {size} exceeds the limit {limit}; running anyway");
    Ok(())
}

pub fn run(suite: Suite, q: usize, max_n: usize, force: bool) -> Result<Report> {
    QaryString::new(q, Vec::new())?;
    let mut report = Report::default();
    let suites: &[Suite] = match suite {
        Suite::All => {
            &[Suite::Balls, Suite::Distances, Suite::SingleCodes, Suite::ZeroError, Suite::Counts, Suite::Bounds]
        }
        _ => std::slice::from_ref(&suite),
    };
    // Check every cap first so a refusal happens before any work.
    for &s in suites {
        match s {
            Suite::Balls => enforce_cap("balls suite", space(q, max_n), BALLS_CAP, force)?,
            Suite::Distances => enforce_cap("distances suite", space(q, max_n), DISTANCES_CAP, force)?,
            Suite::SingleCodes => enforce_cap("single_codes suite", space(q, max_n), SINGLE_CODES_CAP, force)?,
            Suite::ZeroError => enforce_cap("zero_error suite", zero_error_cost(q, max_n)?, ZERO_ERROR_CAP, force)?,
            Suite::Counts => enforce_cap("counts suite", space(q, max_n), COUNTS_CAP, force)?,
            Suite::Bounds | Suite::All => {}
        }
    }
    for &s in suites {
        match s {
            Suite::Balls => balls(q, max_n, &mut report)?,
            Suite::Distances => distances(q, max_n, &mut report)?,
            Suite::SingleCodes => single_codes(q, max_n, &mut report)?,
            Suite::ZeroError => zero_error(q, max_n, &mut report)?,
            Suite::Counts => counts(q, max_n, &mut report)?,
            Suite::Bounds => bounds(q, &mut report)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(report)
}

fn pattern(locations: &[usize]) -> Result<TranspositionPattern> {
    TranspositionPattern::disjoint(locations.to_vec())
}

fn sorted_symbols(x: &QaryString) -> Vec<u8> {
    let mut s = x.symbols().to_vec();
    s.sort_unstable();
    s
}

fn balls(q: usize, max_n: usize, report: &mut Report) -> Result<()> {
    const MAX_T: usize = 3;
    let mut involution = Tally::default();
    let mut multiset = Tally::default();
    let mut pattern_count = Tally::default();
    let mut run_range = Tally::default();
    let mut run_relabel = Tally::default();
    let mut centre = Tally::default();
    let mut run_size = Tally::default();
    let mut oracle = Tally::default();
    let mut sandwich = Tally::default();
    let mut metric_bound = Tally::default();
    let mut containment = Tally::default();
    for n in 1..=max_n {
        let sets = disjoint_location_sets(n, MAX_T);
        for s in 0..=MAX_T {
            let found = sets.iter().filter(|l| l.len() == s).count();
            pattern_count.check(BigUint::from(found) == binomial(n as i64 - s as i64, s as i64));
        }
        let patterns = sets.iter().map(|l| pattern(l)).collect::<Result<Vec<_>>>()?;
        for x in all_strings(q, n) {
            let run = x.run_count()?;
            run_range.check((1..=n).contains(&run));
            for relabel in [|s: u8, q: usize| (s as usize + 1) % q, |s: u8, q: usize| q - 1 - s as usize] {
                let y = QaryString::new(q, x.symbols().iter().map(|&s| relabel(s, q) as u8).collect())?;
                run_relabel.check(y.run_count()? == run);
            }
            let map = DescendantMap::within(&x, MAX_T)?;
            let mut reached: Vec<BTreeSet<QaryString>> = vec![BTreeSet::new(); MAX_T + 1];
            for (locs, p) in sets.iter().zip(&patterns) {
                let y = x.apply_disjoint(p)?;
                involution.check(y.apply_disjoint(p)? == x);
                multiset.check(sorted_symbols(&y) == sorted_symbols(&x));
                for set in reached.iter_mut().skip(locs.len()) {
                    set.insert(y.clone());
                }
            }
            for (t, by_patterns) in reached.iter().enumerate() {
                let ball = map.ball(t);
                centre.check(ball.contains(&x));
                if t == 1 {
                    run_size.check(ball.len() == run);
                }
                oracle.check(&ball == by_patterns);
                let size = BigUint::from(ball.len());
                sandwich.check(ball_lower_bound(run, t) <= size && size <= ball_upper_bound(n, t));
                // The metric balls grow quickly; radius 3 stops at length 10.
                if t == 3 && n > 10 {
                    continue;
                }
                let metric = ball_metric(&x, t)?;
                let msize = BigUint::from(metric.len());
                metric_bound.check(msize <= bbar_upper_bound_for(&x, t)? && msize <= bbar_upper_bound(n, t));
                if n <= 8 {
                    let succ = ball_successive(&x, t)?;
                    containment.check(ball.is_subset(&metric) && metric.is_subset(&succ));
                }
            }
        }
    }
    report.push("pattern_involution", involution);
    report.push("pattern_preserves_symbols", multiset);
    report.push("disjoint_pattern_count", pattern_count);
    report.push("run_count_range", run_range);
    report.push("run_count_relabel_invariant", run_relabel);
    report.push("ball_contains_centre", centre);
    report.push("ball1_size_equals_run_count", run_size);
    report.push("ball_equals_pattern_oracle", oracle);
    report.push("ball_size_sandwich", sandwich);
    report.push("metric_ball_size_bound", metric_bound);
    report.push("ball_containment_chain", containment);
    Ok(())
}

/// Minimum number of adjacent swaps turning `x` into `y`: match equal symbols
/// in order and count inversions of the resulting permutation.
fn inversion_distance(x: &[u8], y: &[u8]) -> Option<usize> {
    let mut slots: HashMap<u8, std::collections::VecDeque<usize>> = HashMap::new();
    for (i, &s) in y.iter().enumerate() {
        slots.entry(s).or_default().push_back(i);
    }
    let mut perm = Vec::with_capacity(x.len());
    for s in x {
        perm.push(slots.get_mut(s)?.pop_front()?);
    }
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            inversions += usize::from(perm[i] > perm[j]);
        }
    }
    Some(inversions)
}

fn distances(q: usize, max_n: usize, report: &mut Report) -> Result<()> {
    let mut symmetry = Tally::default();
    let mut zero_iff_equal = Tally::default();
    let mut finite_within_composition = Tally::default();
    let mut successive_oracle = Tally::default();
    let mut successive_below = Tally::default();
    let mut separation = Tally::default();
    let mut successive_criterion = Tally::default();
    let mut triangle = Tally::default();
    let mut max_distance = Tally::default();
    for n in 1..=max_n {
        let xs: Vec<QaryString> = all_strings(q, n).collect();
        let maps = xs.iter().map(DescendantMap::new).collect::<Result<Vec<_>>>()?;
        let small_balls: Vec<[BTreeSet<QaryString>; 2]> = maps.iter().map(|m| [m.ball(1), m.ball(2)]).collect();
        let keys: Vec<Vec<u8>> = xs.iter().map(sorted_symbols).collect();
        let pairwise_successive = n <= SUCCESSIVE_PAIR_MAX_N;
        let succ_balls: Vec<[BTreeSet<QaryString>; 2]> = if pairwise_successive {
            xs.iter().map(|x| Ok([ball_successive(x, 1)?, ball_successive(x, 2)?])).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let mut ds_table: HashMap<(usize, usize), Distance> = HashMap::new();
        for i in 0..xs.len() {
            for j in i..xs.len() {
                let d = maps[i].distance_to(&maps[j]);
                symmetry.check(d == maps[j].distance_to(&maps[i]));
                zero_iff_equal.check((d == Distance::Finite(0)) == (i == j));
                let same = keys[i] == keys[j];
                finite_within_composition.check(same || !d.is_finite());
                if !same {
                    continue;
                }
                let ds = distance_successive(&xs[i], &xs[j])?;
                successive_oracle.check(ds.finite() == inversion_distance(xs[i].symbols(), xs[j].symbols()));
                successive_below.check(ds <= d);
                if i != j {
                    for t in 1..=2 {
                        if d > Distance::Finite(2 * t) {
                            separation.check(small_balls[i][t - 1].is_disjoint(&small_balls[j][t - 1]));
                        }
                        if pairwise_successive {
                            let disjoint = succ_balls[i][t - 1].is_disjoint(&succ_balls[j][t - 1]);
                            successive_criterion.check(disjoint == (ds > Distance::Finite(2 * t)));
                        }
                    }
                }
                if pairwise_successive {
                    ds_table.insert((i, j), ds);
                    ds_table.insert((j, i), ds);
                }
            }
        }
        if pairwise_successive {
            let mut classes: HashMap<&[u8], Vec<usize>> = HashMap::new();
            for (i, k) in keys.iter().enumerate() {
                classes.entry(k).or_default().push(i);
            }
            for members in classes.values() {
                for &a in members {
                    for &b in members {
                        for &c in members {
                            let (ab, bc, ac) = (ds_table[&(a, b)], ds_table[&(b, c)], ds_table[&(a, c)]);
                            triangle.check(ab.checked_add(bc).is_some_and(|s| ac <= s));
                        }
                    }
                }
            }
        }
        max_distance.check(max_finite_distance(q, n)? == n - 1);
    }
    report.push("distance_symmetric", symmetry);
    report.push("distance_zero_iff_equal", zero_iff_equal);
    report.push("distance_finite_only_within_composition", finite_within_composition);
    report.push("successive_distance_equals_inversions", successive_oracle);
    report.push("successive_distance_at_most_distance", successive_below);
    report.push("distance_above_2t_separates_balls", separation);
    report.push("successive_balls_disjoint_iff_above_2t", successive_criterion);
    report.push("successive_triangle_inequality", triangle);
    report.push("max_finite_distance_is_n_minus_1", max_distance);
    Ok(())
}

/// Decodes the codeword itself and every single-swap corruption of it under
/// both channel models.
fn round_trips(code: &dyn TranspositionCode, w: &QaryString, tally: &mut Tally) -> Result<()> {
    tally.check(code.decode(w).as_ref() == Ok(w));
    for k in 1..w.len() {
        let p = pattern(&[k])?;
        let s = TranspositionPattern::successive(vec![k])?;
        for y in [w.apply_disjoint(&p)?, w.apply_successive(&s)?] {
            tally.check(code.decode(&y).as_ref() == Ok(w));
        }
    }
    Ok(())
}

fn single_codes(q: usize, max_n: usize, report: &mut Report) -> Result<()> {
    let mut corrects = Tally::default();
    let mut corrects_succ = Tally::default();
    let mut decodes = Tally::default();
    let mut partition = Tally::default();
    let mut pigeonhole = Tally::default();
    for n in 2..=max_n {
        let p = smallest_valid_prime(q, n);
        let mut total = 0u128;
        let mut best = 0usize;
        for s1 in 0..2 * q as u64 - 1 {
            for s2 in 0..p {
                let params = SyndromeParams::with_prime(q, n, s1, s2, p)?;
                let code = enumerate_code_q(&params)?;
                total += code.len() as u128;
                best = best.max(code.len());
                if code.is_empty() {
                    continue;
                }
                corrects.check(corrects_t(&code, 1, tcodes::ChannelModel::Disjoint)?);
                corrects_succ.check(corrects_t(&code, 1, tcodes::ChannelModel::Successive)?);
                for w in &code {
                    round_trips(&params, w, &mut decodes)?;
                }
            }
        }
        partition.check(total == space(q, n));
        pigeonhole.check(best as u128 * (2 * q as u128 - 1) * p as u128 >= space(q, n));
    }
    report.push("syndrome_corrects_one_disjoint", corrects);
    report.push("syndrome_corrects_one_successive", corrects_succ);
    report.push("syndrome_decoder_round_trip", decodes);
    report.push("syndrome_residues_partition_space", partition);
    report.push("syndrome_best_offset_size_bound", pigeonhole);

    let mut corrects = Tally::default();
    let mut decodes = Tally::default();
    let mut size_bound = Tally::default();
    if q == 2 {
        for n in (2..=max_n).step_by(2) {
            let mut inners = vec![inner_code(n / 2)];
            if n / 2 >= 3 {
                inners.push(InnerCode::repetition(n / 2)?);
            }
            for inner in inners {
                for s in 0..2 {
                    let params = BinaryParams::with_inner(n, s, inner)?;
                    let code = enumerate_binary(&params)?;
                    corrects.check(corrects_t(&code, 1, tcodes::ChannelModel::Disjoint)?);
                    for w in &code {
                        round_trips(&params, w, &mut decodes)?;
                    }
                }
                let (_, size) = best_binary_offset(n, inner)?;
                size_bound.check(size as u128 * 2 >= inner.size() << (n / 2));
            }
        }
    }
    report.push("binary_corrects_one", corrects);
    report.push("binary_decoder_round_trip", decodes);
    report.push("binary_best_offset_size_bound", size_bound);
    Ok(())
}

/// Largest `|D_q(n)| * (number of disjoint patterns)` over `n <= max_n`.
fn zero_error_cost(q: usize, max_n: usize) -> Result<u128> {
    let (a0, a1) = AlphabetPartition::default_for(q)?.sizes();
    let cost = (1..=max_n).map(|n| count_d(n, a0, a1) * ball_upper_bound(n, n)).max().unwrap_or_default();
    Ok(u128::try_from(cost).unwrap_or(u128::MAX))
}

fn zero_error(q: usize, max_n: usize, report: &mut Report) -> Result<()> {
    let partition = AlphabetPartition::default_for(q)?;
    let binary = AlphabetPartition::default_for(2)?;
    let (a0, a1) = partition.sizes();
    let mut infinite = Tally::default();
    let mut decodes = Tally::default();
    let mut counted = Tally::default();
    let mut indicator = Tally::default();
    for n in 1..=max_n {
        let book = ZeroErrorCodebook::new(n, partition.clone());
        let code = book.enumerate()?;
        counted.check(count_d(n, a0, a1) == BigUint::from(code.len()));
        infinite.check(min_distance(&code, DistanceKind::Disjoint)?.value == Distance::Infinite);
        let patterns = disjoint_location_sets(n, n).iter().map(|l| pattern(l)).collect::<Result<Vec<_>>>()?;
        for w in &code {
            for p in &patterns {
                decodes.check(book.decode(&w.apply_disjoint(p)?).as_ref() == Ok(w));
            }
        }
        let projected: BTreeSet<Vec<u8>> = code.iter().map(|w| partition.indicator(w.symbols())).collect();
        let reference: BTreeSet<Vec<u8>> =
            ZeroErrorCodebook::new(n, binary.clone()).enumerate()?.iter().map(|w| w.symbols().to_vec()).collect();
        indicator.check(projected == reference);
    }
    report.push("zero_error_min_distance_infinite", infinite);
    report.push("zero_error_decodes_every_pattern", decodes);
    report.push("zero_error_count_matches_enumeration", counted);
    report.push("zero_error_indicator_set_is_binary_code", indicator);

    let lambda = lambda_q(q)?;
    let ab = (a0 * a1) as f64;
    let residual = lambda.powi(6) - q as f64 * lambda.powi(3) - 2.0 * ab * lambda.powi(2) - 2.0 * ab;
    report.single("lambda_is_root", residual.abs() <= 1e-9 * lambda.powi(6));
    let growth = log2_big(&count_d(600, a0, a1)) / 600.0;
    report.single("zero_error_growth_at_600", (growth - lambda.log2()).abs() <= 0.02);
    let mut comparison = Tally::default();
    for r in 3..=8 {
        comparison.check((zero_error_rate(r)? > half_log_rate(r)?) == (r <= 4));
    }
    report.push("zero_error_rate_beats_half_log_iff_q_at_most_4", comparison);
    Ok(())
}

/// `sum_x` of the number of `r`-location disjoint patterns that swap unequal
/// symbols at every location.
fn effective_pattern_total(q: usize, n: usize, r: usize) -> BigUint {
    let sets: Vec<Vec<usize>> = disjoint_location_sets(n, r).into_iter().filter(|l| l.len() == r).collect();
    let mut total = 0u64;
    for x in all_strings(q, n) {
        let s = x.symbols();
        total += sets.iter().filter(|l| l.iter().all(|&k| s[k - 1] != s[k])).count() as u64;
    }
    BigUint::from(total)
}

fn counts(q: usize, max_n: usize, report: &mut Report) -> Result<()> {
    let mut run_sum = Tally::default();
    let mut run_tally = Tally::default();
    let mut p_forms = Tally::default();
    let mut sandwich = Tally::default();
    let mut metric_above = Tally::default();
    for n in 1..=max_n {
        let mut by_runs = vec![0u64; n + 1];
        for x in all_strings(q, n) {
            by_runs[x.run_count()?] += 1;
        }
        let sum: BigUint = (0..=n).map(|r| count_strings_with_runs(q, n, r)).sum();
        run_sum.check(sum == BigUint::from(space(q, n)));
        for (r, &c) in by_runs.iter().enumerate() {
            run_tally.check(count_strings_with_runs(q, n, r) == BigUint::from(c));
        }
        let mut cumulative = BigUint::default();
        let mut largest = BigUint::default();
        for r in 0..=n / 2 {
            let closed = total_exact_count(q, n, r);
            p_forms.check(closed == total_exact_count_recursive(q, n, r) && closed == effective_pattern_total(q, n, r));
            cumulative += &closed;
            largest = largest.max(closed);
            let t = total_ball_count(q, n, r)?;
            sandwich.check(largest <= t && t <= cumulative);
            if space(q, n) <= METRIC_TOTALS_CAP && r <= 2 {
                metric_above.check(total_metric_ball_count(q, n, r)? >= t);
            }
        }
    }
    report.push("run_counts_sum_to_space", run_sum);
    report.push("run_counts_match_tally", run_tally);
    report.push("exact_totals_closed_form_recursion_oracle", p_forms);
    report.push("ball_totals_sandwich", sandwich);
    report.push("metric_ball_totals_dominate", metric_above);
    Ok(())
}

fn bounds(q: usize, report: &mut Report) -> Result<()> {
    let grid = |step: f64, end: f64| (0..=(end / step).round() as usize).map(move |i| i as f64 * step);

    let alphas = grid(1e-3, 0.5).map(|r| alpha(q, r)).collect::<Result<Vec<_>>>()?;
    let mut concave = Tally::default();
    for w in alphas.windows(3) {
        concave.check(w[0] - 2.0 * w[1] + w[2] <= 1e-12);
    }
    report.push("alpha_concave", concave);
    let argmax =
        alphas.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i as f64 * 1e-3).unwrap_or_default();
    report.single("alpha_argmax_at_rho_star", (argmax - rho_star(q)?).abs() <= 1e-3);

    let mut monotone = Tally::default();
    let betas = grid(1e-3, 0.5).map(|r| beta(q, r)).collect::<Result<Vec<_>>>()?;
    for w in betas.windows(2) {
        monotone.check(w[1] >= w[0] - 1e-12);
    }
    report.push("beta_nondecreasing", monotone);

    let mut above = Tally::default();
    let mut gv_monotone = Tally::default();
    let mut previous = f64::INFINITY;
    for rho in grid(1e-2, 1.0) {
        above.check(beta_bar_upper(q, rho)? >= beta(q, rho)? - 1e-9);
        let gv = gv_rate(q, rho)?;
        gv_monotone.check(gv <= previous + 1e-9);
        previous = gv;
    }
    report.push("beta_bar_upper_dominates_beta", above);
    report.push("gv_rate_nonincreasing", gv_monotone);
    report.single("gv_rate_at_zero_is_log2_q", gv_rate(q, 0.0)? == (q as f64).log2());

    let mut combined = Tally::default();
    for delta in grid(1e-3, 1.0) {
        let p = combined_rate(q, delta)?;
        combined.check(p.r_combined == p.r_gv.max(p.r_zero_error).max(p.r_half_log));
    }
    report.push("combined_rate_is_pointwise_max", combined);

    let mut finite_alpha = Tally::default();
    let n = 10_000;
    for rho in [0.1, 0.2, 0.3] {
        let r = (rho * n as f64).floor() as usize;
        finite_alpha.check((log2_total_exact_count(q, n, r) / n as f64 - alpha(q, rho)?).abs() <= 0.01);
    }
    report.push("alpha_matches_exact_totals_at_n_10000", finite_alpha);

    let mut finite_runs = Tally::default();
    let n = 5_000;
    let lq = (q as f64).log2();
    for rho in [0.2, 1.0 - 1.0 / q as f64, 0.9] {
        let r = (rho * n as f64).floor() as usize;
        let empirical = log2_strings_with_at_most_runs(q, n, r) / (n as f64 * lq);
        finite_runs.check((empirical - runs_exponent(q, rho)?).abs() <= 0.01);
    }
    report.push("runs_exponent_matches_counts_at_n_5000", finite_runs);

    let floor = zero_error_rate(q)?.max(half_log_rate(q)?);
    let bracket = match crossover_delta0(q)? {
        Crossover::NoCrossover => gv_rate(q, 1.0)? >= floor,
        Crossover::At(d) => {
            let lo = (d - 2.0 * CROSSOVER_TOLERANCE).max(0.0);
            let hi = (d + 2.0 * CROSSOVER_TOLERANCE).min(1.0);
            (d == 0.0 || gv_rate(q, lo)? >= floor) && gv_rate(q, hi)? <= floor
        }
    };
    report.single("crossover_brackets_gv_drop", bracket);
    Ok(())
}
