//! Exact distances, balls and error-correction predicates.
//!
//! Everything here is computed by exhaustive traversal, so the functions are
//! meant for short strings: they are the ground truth the constructions and
//! bounds are checked against.

mod search;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::qstring::{check_alphabet, ChannelModel, QaryString};
use crate::ENUMERATION_LIMIT;

pub use search::{optimal_code_search, OPTIMAL_SEARCH_LIMIT};

/// Upper limit on the number of strings a single traversal may visit.
pub const TRAVERSAL_LIMIT: u128 = 1 << 22;

/// A transposition distance, possibly infinite.
///
/// `Infinite` orders after every finite value. There is no `Add` impl;
/// use [`Distance::checked_add`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Self::Finite(d) => Some(d),
            Self::Infinite => None,
        }
    }

    /// Sum of two finite distances; `None` if either side is infinite.
    pub fn checked_add(self, other: Distance) -> Option<Distance> {
        Some(Self::Finite(self.finite()? + other.finite()?))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(d) => write!(f, "{d}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// Which distance a code-level query is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    /// Meet-in-the-middle distance for simultaneous disjoint swaps.
    Disjoint,
    /// Minimum number of successive swaps.
    Successive,
}

/// Every string reachable from `origin` by disjoint transpositions, with the
/// least number of swaps needed to reach it.
#[derive(Clone, Debug)]
pub struct DescendantMap {
    origin: QaryString,
    entries: HashMap<Vec<u8>, usize>,
}

impl DescendantMap {
    /// The full closure (any number of swaps).
    pub fn new(origin: &QaryString) -> Result<Self> {
        Self::within(origin, origin.len() / 2)
    }

    /// Descendants reachable with at most `t` swaps.
    pub fn within(origin: &QaryString, t: usize) -> Result<Self> {
        let size = disjoint_pattern_count(origin.len(), t);
        if size > TRAVERSAL_LIMIT {
            return Err(Error::TooLarge { what: "descendant enumeration", size, limit: TRAVERSAL_LIMIT });
        }
        let mut entries = HashMap::new();
        let mut work = origin.symbols().to_vec();
        collect_descendants(&mut work, 0, 0, t, &mut entries);
        Ok(Self { origin: origin.clone(), entries })
    }

    pub fn origin(&self) -> &QaryString {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, y: &[u8]) -> Option<usize> {
        self.entries.get(y).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], usize)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// `B(origin; t)` in lexicographic order.
    pub fn ball(&self, t: usize) -> BTreeSet<QaryString> {
        let q = self.origin.q();
        self.entries.iter().filter(|(_, &d)| d <= t).map(|(k, _)| QaryString::from_raw(q, k.clone())).collect()
    }

    /// Number of descendants needing exactly `r` swaps, for each `r`.
    pub fn profile(&self) -> Vec<usize> {
        let mut out = vec![0; self.origin.len() / 2 + 1];
        for &d in self.entries.values() {
            out[d] += 1;
        }
        out
    }

    /// Meet-in-the-middle distance to the origin of `other`.
    pub fn distance_to(&self, other: &DescendantMap) -> Distance {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .entries
            .iter()
            .filter_map(|(z, &a)| large.entries.get(z).map(|&b| a + b))
            .min()
            .map_or(Distance::Infinite, Distance::Finite)
    }
}

// Swaps of equal symbols never change the string, so only effective swaps are
// explored; each reachable string then corresponds to exactly one pattern.
fn collect_descendants(work: &mut Vec<u8>, from: usize, used: usize, max: usize, out: &mut HashMap<Vec<u8>, usize>) {
    out.entry(work.clone()).and_modify(|d| *d = (*d).min(used)).or_insert(used);
    if used == max {
        return;
    }
    for i in from..work.len().saturating_sub(1) {
        if work[i] != work[i + 1] {
            work.swap(i, i + 1);
            collect_descendants(work, i + 2, used + 1, max, out);
            work.swap(i, i + 1);
        }
    }
}

/// Number of disjoint patterns with at most `t` swaps on length `n`.
pub(crate) fn disjoint_pattern_count(n: usize, t: usize) -> u128 {
    let t = t.min(n / 2);
    let mut total: u128 = 0;
    for s in 0..=t {
        // C(n - s, s) patterns with exactly s swaps.
        let mut c: u128 = 1;
        let top = (n - s) as u128;
        for i in 0..s as u128 {
            c = c.saturating_mul(top - i) / (i + 1);
        }
        total = total.saturating_add(c);
    }
    total
}

/// `B(x; t)`: strings reachable by at most `t` disjoint transpositions.
pub fn ball_disjoint(x: &QaryString, t: usize) -> Result<BTreeSet<QaryString>> {
    Ok(DescendantMap::within(x, t)?.ball(t))
}

/// `B^(s)(x; t)`: strings reachable by at most `t` successive transpositions.
pub fn ball_successive(x: &QaryString, t: usize) -> Result<BTreeSet<QaryString>> {
    let depths = successive_bfs(x, Some(t), None)?;
    Ok(depths.into_keys().map(|k| QaryString::from_raw(x.q(), k)).collect())
}

/// The ball of radius `t` around `x` for the meet-in-the-middle distance,
/// `{y : d(x, y) <= t}`.
pub fn ball_metric(x: &QaryString, t: usize) -> Result<BTreeSet<QaryString>> {
    let map = DescendantMap::within(x, t)?;
    let mut out = BTreeSet::new();
    // d(x, y) <= t iff some z has d_x(z) + d_y(z) <= t, i.e. y in B(z; t - d_x(z)).
    for (z, dz) in map.iter() {
        let z = QaryString::from_raw(x.q(), z.to_vec());
        out.extend(DescendantMap::within(&z, t - dz)?.ball(t - dz));
    }
    Ok(out)
}

fn successive_bfs(x: &QaryString, max_depth: Option<usize>, target: Option<&[u8]>) -> Result<HashMap<Vec<u8>, usize>> {
    let size = arrangement_count(x.symbols());
    if max_depth.is_none() && size > TRAVERSAL_LIMIT {
        return Err(Error::TooLarge { what: "successive-swap traversal", size, limit: TRAVERSAL_LIMIT });
    }
    let mut depths = HashMap::new();
    let mut queue = VecDeque::new();
    depths.insert(x.symbols().to_vec(), 0);
    queue.push_back(x.symbols().to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = depths[&cur];
        if target == Some(cur.as_slice()) {
            break;
        }
        if max_depth == Some(d) {
            continue;
        }
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i] == cur[i + 1] {
                continue;
            }
            let mut next = cur.clone();
            next.swap(i, i + 1);
            if !depths.contains_key(&next) {
                depths.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(depths)
}

/// Number of distinct rearrangements of a multiset of symbols.
fn arrangement_count(symbols: &[u8]) -> u128 {
    let mut counts = [0u32; 256];
    for &s in symbols {
        counts[s as usize] += 1;
    }
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &c in counts.iter().filter(|&&c| c > 0) {
        for i in 1..=c as u128 {
            placed += 1;
            total = total.saturating_mul(placed) / i;
        }
    }
    total
}

/// Meet-in-the-middle distance `d(x, y)`: the least `t + s` such that `t`
/// disjoint swaps on `x` and `s` disjoint swaps on `y` produce a common string.
pub fn distance(x: &QaryString, y: &QaryString) -> Result<Distance> {
    x.same_space(y)?;
    if x == y {
        return Ok(Distance::Finite(0));
    }
    if !same_multiset(x.symbols(), y.symbols()) {
        return Ok(Distance::Infinite);
    }
    Ok(DescendantMap::new(x)?.distance_to(&DescendantMap::new(y)?))
}

/// Least number of successive swaps turning `x` into `y`.
pub fn distance_successive(x: &QaryString, y: &QaryString) -> Result<Distance> {
    x.same_space(y)?;
    if !same_multiset(x.symbols(), y.symbols()) {
        return Ok(Distance::Infinite);
    }
    let depths = successive_bfs(x, None, Some(y.symbols()))?;
    Ok(depths.get(y.symbols()).map_or(Distance::Infinite, |&d| Distance::Finite(d)))
}

fn same_multiset(a: &[u8], b: &[u8]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// A set of equal-length strings over a common alphabet, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: usize,
    n: usize,
    words: Vec<QaryString>,
}

impl Code {
    /// Builds a code, rejecting empty input, duplicates and mixed lengths.
    pub fn new(q: usize, n: usize, words: Vec<QaryString>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let code = Self::possibly_empty(q, n, words)?;
        Ok(code)
    }

    /// Like [`Code::new`] but an empty word list is accepted; constructions
    /// use this to report an empty codebook instead of failing.
    pub fn possibly_empty(q: usize, n: usize, mut words: Vec<QaryString>) -> Result<Self> {
        check_alphabet(q)?;
        for w in &words {
            if w.q() != q || w.len() != n {
                return Err(Error::Mismatch(format!("length {n} over q={q}"), format!("{w:?}")));
            }
        }
        words.sort();
        if let Some(w) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword(w[0].to_string()));
        }
        Ok(Self { q, n, words })
    }

    pub(crate) fn from_sorted(q: usize, n: usize, words: Vec<QaryString>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        Self { q, n, words }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[QaryString] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, QaryString> {
        self.words.iter()
    }

    pub fn contains(&self, x: &QaryString) -> bool {
        self.words.binary_search(x).is_ok()
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a QaryString;
    type IntoIter = std::slice::Iter<'a, QaryString>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Result of [`min_distance`]. `vacuous` is set for codes with fewer than two
/// codewords, whose minimum distance is infinite by convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub value: Distance,
    pub vacuous: bool,
}

/// Minimum pairwise distance of a code.
pub fn min_distance(code: &Code, kind: DistanceKind) -> Result<MinDistance> {
    if code.len() < 2 {
        return Ok(MinDistance { value: Distance::Infinite, vacuous: true });
    }
    // Both distances are infinite between strings with different symbol
    // multisets, so only pairs inside a composition class are compared.
    let mut classes: HashMap<Vec<u8>, Vec<&QaryString>> = HashMap::new();
    for w in code {
        let mut key = w.symbols().to_vec();
        key.sort_unstable();
        classes.entry(key).or_default().push(w);
    }
    let mut best = Distance::Infinite;
    for members in classes.values().filter(|m| m.len() > 1) {
        match kind {
            DistanceKind::Disjoint => {
                let maps = members.iter().map(|w| DescendantMap::new(w)).collect::<Result<Vec<_>>>()?;
                for i in 0..maps.len() {
                    for j in i + 1..maps.len() {
                        best = best.min(maps[i].distance_to(&maps[j]));
                    }
                }
            }
            DistanceKind::Successive => {
                for (i, w) in members.iter().enumerate() {
                    let depths = successive_bfs(w, None, None)?;
                    for v in &members[i + 1..] {
                        if let Some(&d) = depths.get(v.symbols()) {
                            best = best.min(Distance::Finite(d));
                        }
                    }
                }
            }
        }
    }
    Ok(MinDistance { value: best, vacuous: false })
}

/// Radius-`t` ball of `x` under the given channel model.
pub fn ball(x: &QaryString, t: usize, model: ChannelModel) -> Result<BTreeSet<QaryString>> {
    match model {
        ChannelModel::Disjoint => ball_disjoint(x, t),
        ChannelModel::Successive => ball_successive(x, t),
    }
}

/// Whether the radius-`t` balls around distinct codewords are pairwise disjoint.
pub fn corrects_t(code: &Code, t: usize, model: ChannelModel) -> Result<bool> {
    if t == 0 {
        return Ok(true);
    }
    let mut owner: HashMap<QaryString, usize> = HashMap::new();
    for (i, w) in code.iter().enumerate() {
        for y in ball(w, t, model)? {
            if let Some(&j) = owner.get(&y) {
                if j != i {
                    return Ok(false);
                }
            }
            owner.insert(y, i);
        }
    }
    Ok(true)
}

/// Largest finite distance between two strings of `Z_q^n`.
pub fn max_finite_distance(q: usize, n: usize) -> Result<usize> {
    let size = space_size(q, n)?;
    const LIMIT: u128 = 1 << 14;
    if size > LIMIT {
        return Err(Error::TooLarge { what: "max_finite_distance", size, limit: LIMIT });
    }
    let mut classes: HashMap<Vec<u8>, Vec<DescendantMap>> = HashMap::new();
    for x in crate::qstring::all_strings(q, n) {
        let mut key = x.symbols().to_vec();
        key.sort_unstable();
        classes.entry(key).or_default().push(DescendantMap::new(&x)?);
    }
    let mut best = 0;
    for maps in classes.values() {
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                if let Distance::Finite(d) = maps[i].distance_to(&maps[j]) {
                    best = best.max(d);
                }
            }
        }
    }
    Ok(best)
}

/// `q^n`, rejected when it exceeds [`ENUMERATION_LIMIT`].
pub(crate) fn space_size(q: usize, n: usize) -> Result<u128> {
    check_alphabet(q)?;
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what: "q^n", size, limit: ENUMERATION_LIMIT });
    }
    Ok(size)
}
