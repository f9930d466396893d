//! q-ary strings and the two transposition channels.
//!
//! Transposition locations are 1-based throughout the public API: a swap at
//! location `k` exchanges the symbols at positions `k` and `k + 1`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 256;

/// A string over `{0, .., q-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QaryString {
    q: usize,
    symbols: Vec<u8>,
}

impl QaryString {
    pub fn new(q: usize, symbols: Vec<u8>) -> Result<Self> {
        check_alphabet(q)?;
        if let Some((position, &s)) = symbols.iter().enumerate().find(|(_, &s)| s as usize >= q) {
            return Err(Error::SymbolOutOfRange { symbol: s as usize, position: position + 1, q });
        }
        Ok(Self { q, symbols })
    }

    pub fn from_slice(q: usize, symbols: &[u8]) -> Result<Self> {
        Self::new(q, symbols.to_vec())
    }

    /// Parses the comma-separated decimal form, e.g. `0,1,1,3,0`.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new(q, Vec::new());
        }
        let mut symbols = Vec::new();
        for (i, part) in text.split(',').enumerate() {
            let v: usize = part.trim().parse().map_err(|_| Error::Parse(text.to_string()))?;
            if v >= q {
                check_alphabet(q)?;
                return Err(Error::SymbolOutOfRange { symbol: v, position: i + 1, q });
            }
            symbols.push(v as u8);
        }
        Self::new(q, symbols)
    }

    pub(crate) fn from_raw(q: usize, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < q));
        Self { q, symbols }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Number of maximal blocks of identical consecutive symbols.
    pub fn run_count(&self) -> Result<usize> {
        if self.symbols.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(run_count(&self.symbols))
    }

    /// Applies simultaneous swaps at pairwise non-overlapping locations.
    pub fn apply_disjoint(&self, pattern: &TranspositionPattern) -> Result<Self> {
        if pattern.model != ChannelModel::Disjoint {
            return Err(Error::WrongModel);
        }
        pattern.validate_for(self.len())?;
        let mut out = self.symbols.clone();
        for &k in &pattern.locations {
            out.swap(k - 1, k);
        }
        Ok(Self::from_raw(self.q, out))
    }

    /// Applies swaps one after another in sequence order.
    pub fn apply_successive(&self, pattern: &TranspositionPattern) -> Result<Self> {
        if pattern.model != ChannelModel::Successive {
            return Err(Error::WrongModel);
        }
        pattern.validate_for(self.len())?;
        let mut out = self.symbols.clone();
        for &k in &pattern.locations {
            out.swap(k - 1, k);
        }
        Ok(Self::from_raw(self.q, out))
    }

    /// Applies a pattern under whichever model it is tagged with.
    pub fn apply(&self, pattern: &TranspositionPattern) -> Result<Self> {
        match pattern.model {
            ChannelModel::Disjoint => self.apply_disjoint(pattern),
            ChannelModel::Successive => self.apply_successive(pattern),
        }
    }

    pub fn same_space(&self, other: &Self) -> Result<()> {
        if self.q != other.q || self.len() != other.len() {
            return Err(Error::Mismatch(self.describe(), other.describe()));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        format!("length {} over q={}", self.len(), self.q)
    }
}

impl fmt::Display for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols)
    }
}

impl fmt::Debug for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_symbols(f, &self.symbols)?;
        write!(f, ")_{}", self.q)
    }
}

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[u8]) -> fmt::Result {
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

pub(crate) fn check_alphabet(q: usize) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(q))
    }
}

pub(crate) fn run_count(symbols: &[u8]) -> usize {
    if symbols.is_empty() {
        return 0;
    }
    1 + symbols.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Iterates over all of `Z_q^n` in lexicographic order.
pub fn all_strings(q: usize, n: usize) -> AllStrings {
    AllStrings { q, next: Some(vec![0; n]) }
}

pub struct AllStrings {
    q: usize,
    next: Option<Vec<u8>>,
}

impl Iterator for AllStrings {
    type Item = QaryString;

    fn next(&mut self) -> Option<QaryString> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if (succ[i] as usize) + 1 < self.q {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(QaryString::from_raw(self.q, current))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelModel {
    /// Swaps applied simultaneously to non-overlapping pairs.
    Disjoint,
    /// Swaps applied one after another; pairs may overlap.
    Successive,
}

impl FromStr for ChannelModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disjoint" => Ok(Self::Disjoint),
            "successive" => Ok(Self::Successive),
            other => Err(Error::InvalidParams(format!("unknown channel model `{other}`"))),
        }
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Disjoint => "disjoint",
            Self::Successive => "successive",
        })
    }
}

/// An error pattern: swap locations tagged with the channel model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranspositionPattern {
    model: ChannelModel,
    locations: Vec<usize>,
}

impl TranspositionPattern {
    /// A disjoint pattern; locations must be strictly increasing with gaps of at least 2.
    pub fn disjoint(locations: Vec<usize>) -> Result<Self> {
        for w in locations.windows(2) {
            if w[1] < w[0] + 2 {
                return Err(Error::NotDisjoint(w[0], w[1]));
            }
        }
        if locations.first() == Some(&0) {
            return Err(Error::LocationOutOfRange { location: 0, max: usize::MAX });
        }
        Ok(Self { model: ChannelModel::Disjoint, locations })
    }

    /// A successive pattern; any order, repeats allowed.
    pub fn successive(locations: Vec<usize>) -> Result<Self> {
        if locations.contains(&0) {
            return Err(Error::LocationOutOfRange { location: 0, max: usize::MAX });
        }
        Ok(Self { model: ChannelModel::Successive, locations })
    }

    pub fn new(model: ChannelModel, locations: Vec<usize>) -> Result<Self> {
        match model {
            ChannelModel::Disjoint => Self::disjoint(locations),
            ChannelModel::Successive => Self::successive(locations),
        }
    }

    pub fn empty(model: ChannelModel) -> Self {
        Self { model, locations: Vec::new() }
    }

    pub fn parse(model: ChannelModel, text: &str) -> Result<Self> {
        let text = text.trim();
        let locations = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(text.to_string())))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(model, locations)
    }

    pub fn model(&self) -> ChannelModel {
        self.model
    }

    pub fn locations(&self) -> &[usize] {
        &self.locations
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    /// Checks every location lies in `1..=n-1`.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        let max = n.saturating_sub(1);
        match self.locations.iter().find(|&&k| k == 0 || k > max) {
            Some(&location) => Err(Error::LocationOutOfRange { location, max }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for TranspositionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.locations.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

pub fn apply_disjoint(x: &QaryString, pattern: &TranspositionPattern) -> Result<QaryString> {
    x.apply_disjoint(pattern)
}

pub fn apply_successive(x: &QaryString, pattern: &TranspositionPattern) -> Result<QaryString> {
    x.apply_successive(pattern)
}

/// All disjoint location sets in `1..=n-1` with at most `max_t` elements,
/// in lexicographic order of the sorted location lists.
pub fn disjoint_location_sets(n: usize, max_t: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, max_t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == max_t {
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(n, k + 2, max_t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, max_t, &mut Vec::new(), &mut out);
    out
}

/// A uniformly random valid pattern with exactly `t` locations for strings of length `n`.
///
/// The generator is ChaCha8 seeded with `seed` via `seed_from_u64`, so the
/// output is reproducible across platforms.
pub fn random_pattern(n: usize, t: usize, model: ChannelModel, seed: u64) -> Result<TranspositionPattern> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        ChannelModel::Disjoint => {
            if 2 * t > n {
                return Err(Error::InfeasiblePattern { n, t });
            }
            // t-subsets of 1..=n-t map bijectively onto disjoint patterns by
            // shifting the j-th smallest element right by j.
            let mut picks = index::sample(&mut rng, n - t, t).into_vec();
            picks.sort_unstable();
            let locations = picks.iter().enumerate().map(|(j, &c)| c + 1 + j).collect();
            TranspositionPattern::disjoint(locations)
        }
        ChannelModel::Successive => {
            if t > 0 && n < 2 {
                return Err(Error::InfeasiblePattern { n, t });
            }
            let locations = (0..t).map(|_| rng.random_range(1..n)).collect();
            TranspositionPattern::successive(locations)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn s(q: usize, v: &[u8]) -> QaryString {
        QaryString::from_slice(q, v).unwrap()
    }

    #[test]
    fn run_count_examples() {
        assert_eq!(s(4, &[0, 3, 3, 3, 0, 0, 1, 2, 2]).run_count().unwrap(), 5);
        assert_eq!(s(2, &[1; 7]).run_count().unwrap(), 1);
        assert_eq!(s(2, &[0, 1, 0, 1]).run_count().unwrap(), 4);
        assert_eq!(s(2, &[]).run_count(), Err(Error::EmptyString));
    }

    #[test]
    fn disjoint_channel_example() {
        let x = s(4, &[0, 1, 1, 3, 0, 0, 2, 2, 2, 1]);
        let p = TranspositionPattern::disjoint(vec![1, 4, 9]).unwrap();
        assert_eq!(x.apply_disjoint(&p).unwrap(), s(4, &[1, 0, 1, 0, 3, 0, 2, 2, 1, 2]));
        assert_eq!(x.apply_disjoint(&TranspositionPattern::empty(ChannelModel::Disjoint)).unwrap(), x);
        let p = TranspositionPattern::disjoint(vec![1]).unwrap();
        assert_eq!(s(2, &[0, 1]).apply_disjoint(&p).unwrap(), s(2, &[1, 0]));
    }

    #[test]
    fn successive_channel_example() {
        let x = s(4, &[0, 1, 1, 3, 0, 0, 2, 2, 2, 1]);
        let p = TranspositionPattern::successive(vec![3, 4, 9]).unwrap();
        assert_eq!(x.apply_successive(&p).unwrap(), s(4, &[0, 1, 3, 0, 1, 0, 2, 2, 1, 2]));
        let p = TranspositionPattern::successive(vec![1, 2]).unwrap();
        assert_eq!(s(2, &[1, 0, 0]).apply_successive(&p).unwrap(), s(2, &[0, 0, 1]));
        let empty = TranspositionPattern::empty(ChannelModel::Successive);
        assert_eq!(x.apply_successive(&empty).unwrap(), x);
    }

    #[test]
    fn channel_errors() {
        assert_eq!(TranspositionPattern::disjoint(vec![2, 3]), Err(Error::NotDisjoint(2, 3)));
        assert_eq!(TranspositionPattern::disjoint(vec![4, 2]), Err(Error::NotDisjoint(4, 2)));
        let x = s(2, &[0, 1, 0]);
        let p = TranspositionPattern::disjoint(vec![3]).unwrap();
        assert_eq!(x.apply_disjoint(&p), Err(Error::LocationOutOfRange { location: 3, max: 2 }));
        let p = TranspositionPattern::successive(vec![1]).unwrap();
        assert_eq!(x.apply_disjoint(&p), Err(Error::WrongModel));
    }

    #[test]
    fn parse_and_display() {
        let x = QaryString::parse(4, "0,1, 1,3").unwrap();
        assert_eq!(x.to_string(), "0,1,1,3");
        assert!(matches!(QaryString::parse(2, "0,2"), Err(Error::SymbolOutOfRange { symbol: 2, .. })));
        assert!(matches!(QaryString::parse(2, "0,x"), Err(Error::Parse(_))));
        assert_eq!(QaryString::new(1, vec![]), Err(Error::InvalidAlphabet(1)));
    }

    #[test]
    fn all_strings_enumerates_lexicographically() {
        let v: Vec<String> = all_strings(3, 2).map(|x| x.to_string()).collect();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], "0,0");
        assert_eq!(v[1], "0,1");
        assert_eq!(v[8], "2,2");
        assert_eq!(all_strings(2, 0).count(), 1);
    }

    #[test]
    fn disjoint_pattern_counts_match_binomial() {
        // Number of disjoint patterns with exactly s locations is C(n-s, s).
        for n in 1..=8 {
            let sets = disjoint_location_sets(n, n);
            for t in 0..=n / 2 {
                let count = sets.iter().filter(|p| p.len() == t).count();
                let expected = binomial((n - t) as i64, t as i64).to_usize().unwrap();
                assert_eq!(count, expected, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn random_pattern_contract() {
        assert!(random_pattern(10, 0, ChannelModel::Disjoint, 7).unwrap().is_empty());
        assert_eq!(random_pattern(2, 1, ChannelModel::Disjoint, 99).unwrap().locations(), &[1]);
        assert_eq!(
            random_pattern(20, 6, ChannelModel::Disjoint, 5).unwrap(),
            random_pattern(20, 6, ChannelModel::Disjoint, 5).unwrap()
        );
        assert_eq!(random_pattern(5, 3, ChannelModel::Disjoint, 1), Err(Error::InfeasiblePattern { n: 5, t: 3 }));
        assert_eq!(random_pattern(1, 1, ChannelModel::Successive, 1), Err(Error::InfeasiblePattern { n: 1, t: 1 }));
        let p = random_pattern(9, 4, ChannelModel::Successive, 3).unwrap();
        assert_eq!(p.len(), 4);
        p.validate_for(9).unwrap();
    }

    #[test]
    fn random_disjoint_pattern_is_roughly_uniform() {
        // n=5, t=2 has C(3,2)=3 patterns: {1,3},{1,4},{2,4}.
        let mut counts = std::collections::HashMap::new();
        for seed in 0..3000 {
            *counts.entry(random_pattern(5, 2, ChannelModel::Disjoint, seed).unwrap().to_string()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert!(counts.values().all(|&c| (850..1150).contains(&c)), "{counts:?}");
    }

    fn string_strategy() -> impl Strategy<Value = QaryString> {
        (2usize..5, 1usize..14).prop_flat_map(|(q, n)| {
            proptest::collection::vec(0..q as u8, n).prop_map(move |v| QaryString::from_raw(q, v))
        })
    }

    proptest! {
        #[test]
        fn disjoint_application_is_an_involution(x in string_strategy(), seed in any::<u64>(), frac in 0.0f64..1.0) {
            let t = ((x.len() / 2) as f64 * frac) as usize;
            let p = random_pattern(x.len(), t, ChannelModel::Disjoint, seed).unwrap();
            let y = x.apply_disjoint(&p).unwrap();
            prop_assert_eq!(y.apply_disjoint(&p).unwrap(), x.clone());
            let mut a = x.symbols().to_vec();
            let mut b = y.symbols().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn run_count_bounds_and_relabeling(x in string_strategy(), shift in 1usize..4) {
            let r = x.run_count().unwrap();
            prop_assert!(r >= 1 && r <= x.len());
            let q = x.q();
            let relabeled: Vec<u8> = x.symbols().iter().map(|&v| ((v as usize + shift) % q) as u8).collect();
            prop_assert_eq!(QaryString::new(q, relabeled).unwrap().run_count().unwrap(), r);
        }
    }
}
