//! Block-concatenation codes that survive any pattern of disjoint
//! transpositions.
//!
//! Split the alphabet into classes `A0` and `A1`. A codeword is a
//! concatenation of the blocks `aaa`, `bbb`, `abbb`, `baaa`, `aabbbb` and
//! `bbaaaa` with `a` in `A0` and `b` in `A1`; different blocks may use
//! different symbols. The class pattern of these blocks is prefix-free, so a
//! codeword has exactly one block decomposition.
//!
//! Decoding goes through the binary class indicator: first the indicator of
//! the codeword is recovered from the indicator of the received string, then
//! the block decomposition of that indicator fixes where each block lives and
//! the symbols inside every block are recovered. Both steps use the same
//! exact search ([`unique_preimage`]) over block choices and swap placements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::metric::Code;
use crate::qstring::{check_alphabet, QaryString};
use crate::{TranspositionCode, ENUMERATION_LIMIT};

/// Class patterns of the six block shapes.
pub const BLOCK_SHAPES: [&[u8]; 6] =
    [&[0, 0, 0], &[1, 1, 1], &[0, 1, 1, 1], &[1, 0, 0, 0], &[0, 0, 1, 1, 1, 1], &[1, 1, 0, 0, 0, 0]];

/// A split of `{0..q-1}` into two nonempty classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetPartition {
    class: Vec<u8>,
}

impl AlphabetPartition {
    pub fn new(q: usize, a0: &[u8], a1: &[u8]) -> Result<Self> {
        check_alphabet(q)?;
        let mut class = vec![u8::MAX; q];
        for (c, set) in [(0u8, a0), (1u8, a1)] {
            if set.is_empty() {
                return Err(Error::InvalidParams(format!("partition class A{c} is empty")));
            }
            for &v in set {
                let slot = class
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::InvalidParams(format!("symbol {v} is outside Z_{q}")))?;
                if *slot != u8::MAX {
                    return Err(Error::InvalidParams(format!("symbol {v} appears twice in the partition")));
                }
                *slot = c;
            }
        }
        if let Some(v) = class.iter().position(|&c| c == u8::MAX) {
            return Err(Error::InvalidParams(format!("symbol {v} is in neither class")));
        }
        Ok(Self { class })
    }

    /// `A0 = {0..floor(q/2)-1}`, `A1` the rest.
    pub fn default_for(q: usize) -> Result<Self> {
        check_alphabet(q)?;
        let half = q / 2;
        let a0: Vec<u8> = (0..half as u16).map(|v| v as u8).collect();
        let a1: Vec<u8> = (half as u16..q as u16).map(|v| v as u8).collect();
        Self::new(q, &a0, &a1)
    }

    /// Parses `0,1|2,3`.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let (left, right) = text.split_once('|').ok_or_else(|| Error::Parse(text.to_string()))?;
        let side = |s: &str| -> Result<Vec<u8>> {
            s.split(',').map(|v| v.trim().parse::<u8>().map_err(|_| Error::Parse(text.to_string()))).collect()
        };
        Self::new(q, &side(left)?, &side(right)?)
    }

    pub fn q(&self) -> usize {
        self.class.len()
    }

    pub fn class_of(&self, symbol: u8) -> u8 {
        self.class[symbol as usize]
    }

    pub fn members(&self, class: u8) -> Vec<u8> {
        (0..self.q()).filter(|&v| self.class[v] == class).map(|v| v as u8).collect()
    }

    /// `(|A0|, |A1|)`.
    pub fn sizes(&self) -> (usize, usize) {
        let a1 = self.class.iter().filter(|&&c| c == 1).count();
        (self.q() - a1, a1)
    }

    /// Replaces each symbol by its class.
    pub fn indicator(&self, x: &[u8]) -> Vec<u8> {
        x.iter().map(|&v| self.class[v as usize]).collect()
    }
}

impl fmt::Display for AlphabetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |c| self.members(c).iter().map(u8::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(0), join(1))
    }
}

/// `|D(n)|` for class sizes `(a0, a1)`.
pub fn count_d(n: usize, a0: usize, a1: usize) -> BigUint {
    count_table(n, a0, a1).pop().expect("table has n+1 entries")
}

/// `|D(m)|` for `m = 0..=n`.
fn count_table(n: usize, a0: usize, a1: usize) -> Vec<BigUint> {
    let three = BigUint::from(a0 + a1);
    let mixed = BigUint::from(2 * a0 * a1);
    let mut d: Vec<BigUint> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let at = |k: usize| if m >= k { d[m - k].clone() } else { BigUint::zero() };
        let value = if m == 0 { BigUint::one() } else { &three * at(3) + &mixed * (at(4) + at(6)) };
        d.push(value);
    }
    d
}

/// Positive root of `x^6 - (a0+a1) x^3 - 2 a0 a1 x^2 - 2 a0 a1`.
pub fn lambda_for_sizes(a0: usize, a1: usize) -> f64 {
    let (s, m) = ((a0 + a1) as f64, (2 * a0 * a1) as f64);
    let poly = |x: f64| x.powi(6) - s * x.powi(3) - m * x * x - m;
    // The polynomial has one sign change, so one positive root; it is
    // negative at 1 and positive at s+1.
    let (mut lo, mut hi) = (1.0f64, s + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if poly(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Growth rate root for the default partition of `Z_q`.
pub fn lambda_q(q: usize) -> Result<f64> {
    check_alphabet(q)?;
    Ok(lambda_for_sizes(q / 2, q - q / 2))
}

/// `log2(lambda_q)`.
pub fn zero_error_rate(q: usize) -> Result<f64> {
    Ok(lambda_q(q)?.log2())
}

/// The code `D_q(n)` for a given partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroErrorCodebook {
    n: usize,
    partition: AlphabetPartition,
    blocks: Vec<Vec<u8>>,
}

impl ZeroErrorCodebook {
    pub fn new(n: usize, partition: AlphabetPartition) -> Self {
        let (a0, a1) = (partition.members(0), partition.members(1));
        let mut blocks = Vec::new();
        for shape in BLOCK_SHAPES {
            for &a in &a0 {
                for &b in &a1 {
                    blocks.push(shape.iter().map(|&c| if c == 0 { a } else { b }).collect::<Vec<u8>>());
                }
            }
        }
        blocks.sort();
        blocks.dedup();
        Self { n, partition, blocks }
    }

    pub fn with_default_partition(q: usize, n: usize) -> Result<Self> {
        Ok(Self::new(n, AlphabetPartition::default_for(q)?))
    }

    pub fn q(&self) -> usize {
        self.partition.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> &AlphabetPartition {
        &self.partition
    }

    /// Every concrete block, in lexicographic order.
    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn size(&self) -> BigUint {
        let (a0, a1) = self.partition.sizes();
        count_d(self.n, a0, a1)
    }

    /// The codeword of the given rank in lexicographic order.
    ///
    /// Concrete blocks form a prefix-free set, so codewords compare by their
    /// first block and the rank splits block by block.
    pub fn codeword(&self, index: &BigUint) -> Result<QaryString> {
        let (a0, a1) = self.partition.sizes();
        let counts = count_table(self.n, a0, a1);
        if index >= &counts[self.n] {
            return Err(Error::InvalidParams(format!("index {index} is not below the code size {}", counts[self.n])));
        }
        let mut rest = index.clone();
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let remaining = self.n - out.len();
            let mut placed = false;
            for block in self.blocks.iter().filter(|b| b.len() <= remaining) {
                let tail = &counts[remaining - block.len()];
                if &rest < tail {
                    out.extend_from_slice(block);
                    placed = true;
                    break;
                }
                rest -= tail;
            }
            debug_assert!(placed, "rank bookkeeping out of step with the counts");
            if !placed {
                return Err(Error::InvalidParams("index out of range".into()));
            }
        }
        Ok(QaryString::from_raw(self.q(), out))
    }

    fn check_shape(&self, x: &QaryString) -> Result<()> {
        if x.q() != self.q() || x.len() != self.n {
            return Err(Error::Mismatch(
                format!("length {} over q={}", self.n, self.q()),
                format!("length {} over q={}", x.len(), x.q()),
            ));
        }
        Ok(())
    }

    pub fn is_codeword(&self, x: &QaryString) -> Result<bool> {
        self.check_shape(x)?;
        let symbols = x.symbols();
        let Some(parse) = parse_blocks(&self.partition.indicator(symbols)) else {
            return Ok(false);
        };
        Ok(parse.iter().all(|&(start, shape)| {
            let block = &symbols[start..start + BLOCK_SHAPES[shape].len()];
            [0u8, 1].iter().all(|&c| {
                let mut members = block.iter().filter(|&&v| self.partition.class_of(v) == c);
                let first = members.next();
                members.all(|v| Some(v) == first)
            })
        }))
    }

    /// All codewords in lexicographic order.
    pub fn enumerate(&self) -> Result<Code> {
        let size = self.size();
        let limit = BigUint::from(ENUMERATION_LIMIT);
        if size > limit {
            return Err(Error::TooLarge {
                what: "zero-error code enumeration",
                size: size.to_u128().unwrap_or(u128::MAX),
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut words = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        self.extend(&mut prefix, &mut words);
        words.sort();
        words.dedup();
        Ok(Code::from_sorted(self.q(), self.n, words))
    }

    fn extend(&self, prefix: &mut Vec<u8>, out: &mut Vec<QaryString>) {
        if prefix.len() == self.n {
            out.push(QaryString::from_raw(self.q(), prefix.clone()));
            return;
        }
        for block in &self.blocks {
            if prefix.len() + block.len() <= self.n {
                let mark = prefix.len();
                prefix.extend_from_slice(block);
                self.extend(prefix, out);
                prefix.truncate(mark);
            }
        }
    }

    /// Recovers the codeword from any disjoint-transposition corruption.
    pub fn decode(&self, y: &QaryString) -> Result<QaryString> {
        self.check_shape(y)?;
        let symbols = y.symbols();
        let y_bits = self.partition.indicator(symbols);
        let x_bits = unique_preimage(&y_bits, |_| BLOCK_SHAPES.iter().map(|s| s.to_vec()).collect())?;
        let parse = parse_blocks(&x_bits).ok_or(Error::Uncorrectable)?;
        let starts: BTreeMap<usize, usize> = parse.into_iter().collect();
        let x = unique_preimage(symbols, |start| {
            let Some(&shape) = starts.get(&start) else {
                return Vec::new();
            };
            let pattern = BLOCK_SHAPES[shape];
            // A transposed symbol moves by one place at most.
            let window = &symbols[start.saturating_sub(1)..(start + pattern.len() + 1).min(symbols.len())];
            // An unused class gets a placeholder so the product below still
            // yields the single-class blocks.
            let options = |c: u8| -> Vec<u8> {
                if !pattern.contains(&c) {
                    return vec![0];
                }
                let mut v: Vec<u8> = window.iter().copied().filter(|&s| self.partition.class_of(s) == c).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let (a_opts, b_opts) = (options(0), options(1));
            let mut out = Vec::new();
            for &a in &a_opts {
                for &b in &b_opts {
                    out.push(pattern.iter().map(|&c| if c == 0 { a } else { b }).collect());
                }
            }
            out
        })?;
        Ok(QaryString::from_raw(self.q(), x))
    }
}

impl TranspositionCode for ZeroErrorCodebook {
    fn alphabet(&self) -> usize {
        self.q()
    }

    fn length(&self) -> usize {
        self.n
    }

    fn contains(&self, x: &QaryString) -> Result<bool> {
        self.is_codeword(x)
    }

    fn decode(&self, y: &QaryString) -> Result<QaryString> {
        ZeroErrorCodebook::decode(self, y)
    }

    fn enumerate(&self) -> Result<Code> {
        ZeroErrorCodebook::enumerate(self)
    }
}

/// All codewords of `D_q(n)` for the given partition.
pub fn enumerate_d(n: usize, partition: &AlphabetPartition) -> Result<Code> {
    ZeroErrorCodebook::new(n, partition.clone()).enumerate()
}

pub fn decode_zero_error(y: &QaryString, codebook: &ZeroErrorCodebook) -> Result<QaryString> {
    codebook.decode(y)
}

/// Splits a binary string into block shapes, as `(start, shape index)`.
pub fn parse_blocks(bits: &[u8]) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bits.len() {
        let shape = BLOCK_SHAPES.iter().position(|s| bits[pos..].starts_with(s))?;
        out.push((pos, shape));
        pos += BLOCK_SHAPES[shape].len();
    }
    Some(out)
}

#[derive(Clone)]
struct Partial {
    prefix: Vec<u8>,
    ambiguous: bool,
}

/// The unique string `x`, built from blocks offered by `candidates(start)`,
/// such that some disjoint transposition pattern turns `x` into `y`.
///
/// The search runs over `(position, carry)`, where `carry` is the symbol `x`
/// must have at `position` because a swap straddles the previous block
/// boundary. Each state remembers one prefix reaching it and whether a
/// different prefix reaches it too.
fn unique_preimage(y: &[u8], candidates: impl Fn(usize) -> Vec<Vec<u8>>) -> Result<Vec<u8>> {
    let n = y.len();
    let mut states: Vec<BTreeMap<Option<u8>, Partial>> = vec![BTreeMap::new(); n + 1];
    states[0].insert(None, Partial { prefix: Vec::new(), ambiguous: false });
    for pos in 0..n {
        if states[pos].is_empty() {
            continue;
        }
        let here = std::mem::take(&mut states[pos]);
        let blocks = candidates(pos);
        for (carry, partial) in &here {
            for block in blocks.iter().filter(|b| pos + b.len() <= n) {
                for next in block_transitions(y, pos, block, *carry) {
                    let mut prefix = partial.prefix.clone();
                    prefix.extend_from_slice(block);
                    let slot = &mut states[pos + block.len()];
                    match slot.get_mut(&next) {
                        None => {
                            slot.insert(next, Partial { prefix, ambiguous: partial.ambiguous });
                        }
                        Some(existing) => {
                            existing.ambiguous |= partial.ambiguous || existing.prefix != prefix;
                        }
                    }
                }
            }
        }
    }
    match states[n].remove(&None) {
        Some(Partial { prefix, ambiguous: false }) => Ok(prefix),
        _ => Err(Error::Uncorrectable),
    }
}

/// Ways to read `block` at `start` off `y`. Returns the carry into the next
/// block: `None` when the block ends cleanly, `Some(v)` when its last symbol
/// swaps with the next block's first symbol, which must then be `v`.
fn block_transitions(y: &[u8], start: usize, block: &[u8], carry: Option<u8>) -> Vec<Option<u8>> {
    let len = block.len();
    let mut first = 0;
    if let Some(c) = carry {
        if block[0] != c {
            return Vec::new();
        }
        first = 1;
    }
    let mut reach = vec![false; len + 1];
    reach[first] = true;
    let mut out = Vec::new();
    for j in first..len {
        if !reach[j] {
            continue;
        }
        let p = start + j;
        if y[p] == block[j] {
            reach[j + 1] = true;
        }
        if j + 1 < len {
            if y[p] == block[j + 1] && y[p + 1] == block[j] {
                reach[j + 2] = true;
            }
        } else if p + 1 < y.len() && y[p + 1] == block[j] {
            out.push(Some(y[p]));
        }
    }
    if reach[len] {
        out.push(None);
    }
    out
}
