use std::fmt;
use std::str::FromStr;

use super::{gcd, is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::metric::{space_size, Code};
use crate::qstring::{all_strings, check_alphabet, QaryString};
use crate::TranspositionCode;

/// Parameters of the two-checksum code: strings `x` with
/// `sum i*x_i = s1 (mod 2q-1)` and `sum i^2*x_i = s2 (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SyndromeParams {
    q: usize,
    n: usize,
    s1: u64,
    s2: u64,
    p: u64,
}

impl SyndromeParams {
    /// Uses the smallest odd prime `p >= max(q, n)`.
    pub fn new(q: usize, n: usize, s1: u64, s2: u64) -> Result<Self> {
        Self::with_prime(q, n, s1, s2, smallest_valid_prime(q, n))
    }

    /// `p` must be an odd prime with `p >= max(q, n)`.
    pub fn with_prime(q: usize, n: usize, s1: u64, s2: u64, p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p < q.max(n) as u64 {
            return Err(Error::InvalidParams(format!("{p} is not an odd prime >= max(q, n) = {}", q.max(n))));
        }
        Self::with_modulus(q, n, s1, s2, p)
    }

    /// Any modulus `m >= n` coprime to every integer in `2..=max(2, q-1)`;
    /// this guarantees the inverses the decoder needs.
    pub fn with_modulus(q: usize, n: usize, s1: u64, s2: u64, m: u64) -> Result<Self> {
        check_alphabet(q)?;
        if n == 0 {
            return Err(Error::InvalidParams("block length must be at least 1".into()));
        }
        if m < n as u64 {
            return Err(Error::InvalidParams(format!("modulus {m} is smaller than n = {n}")));
        }
        if let Some(k) = (2..=2.max(q as u64 - 1)).find(|&k| gcd(m, k) != 1) {
            return Err(Error::InvalidParams(format!("modulus {m} shares a factor with {k}")));
        }
        let m1 = 2 * q as u64 - 1;
        if s1 >= m1 {
            return Err(Error::InvalidParams(format!("s1 = {s1} must be below 2q-1 = {m1}")));
        }
        if s2 >= m {
            return Err(Error::InvalidParams(format!("s2 = {s2} must be below the modulus {m}")));
        }
        Ok(Self { q, n, s1, s2, p: m })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s1(&self) -> u64 {
        self.s1
    }

    pub fn s2(&self) -> u64 {
        self.s2
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `2q - 1`, the modulus of the first checksum.
    pub fn first_modulus(&self) -> u64 {
        2 * self.q as u64 - 1
    }
}

impl fmt::Display for SyndromeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.q, self.n, self.p, self.s1, self.s2)
    }
}

/// Parses `q,n,p,s1,s2`.
impl FromStr for SyndromeParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|v| v.trim().parse::<u64>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            &[q, n, p, s1, s2] => Self::with_modulus(q as usize, n as usize, s1, s2, p),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Least odd prime `p >= max(q, n)`.
pub fn smallest_valid_prime(q: usize, n: usize) -> u64 {
    let mut p = (q.max(n) as u64).max(3);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// `(sum i*x_i mod 2q-1, sum i^2*x_i mod p)` with 1-based `i`.
pub fn syndrome_residues(x: &[u8], q: usize, p: u64) -> (u64, u64) {
    let m1 = 2 * q as u64 - 1;
    let mut a = 0;
    let mut b = 0;
    for (i, &v) in x.iter().enumerate() {
        let i = i as u64 + 1;
        let v = v as u64;
        a = (a + (i % m1) * v) % m1;
        b = (b + (i * i % p) * v) % p;
    }
    (a, b)
}

fn check_shape(x: &QaryString, q: usize, n: usize) -> Result<()> {
    if x.q() != q || x.len() != n {
        return Err(Error::Mismatch(format!("length {n} over q={q}"), format!("length {} over q={}", x.len(), x.q())));
    }
    Ok(())
}

pub fn is_codeword_q(x: &QaryString, params: &SyndromeParams) -> Result<bool> {
    check_shape(x, params.q, params.n)?;
    Ok(syndrome_residues(x.symbols(), params.q, params.p) == (params.s1, params.s2))
}

/// All codewords, in lexicographic order. The result may be empty.
pub fn enumerate_code_q(params: &SyndromeParams) -> Result<Code> {
    space_size(params.q, params.n)?;
    let words = all_strings(params.q, params.n)
        .filter(|x| syndrome_residues(x.symbols(), params.q, params.p) == (params.s1, params.s2))
        .collect();
    Ok(Code::from_sorted(params.q, params.n, words))
}

/// The offsets `(s1, s2)` giving the largest code for modulus `p`, with that
/// size. Ties go to the lexicographically smallest pair.
pub fn best_offsets(q: usize, n: usize, p: u64) -> Result<(u64, u64, usize)> {
    space_size(q, n)?;
    let m1 = 2 * q as u64 - 1;
    let mut counts = vec![0usize; (m1 * p) as usize];
    for x in all_strings(q, n) {
        let (a, b) = syndrome_residues(x.symbols(), q, p);
        counts[(a * p + b) as usize] += 1;
    }
    let (idx, &best) =
        counts.iter().enumerate().max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i))).expect("at least one residue class");
    Ok((idx as u64 / p, idx as u64 % p, best))
}

/// Corrects at most one transposition.
///
/// Returns [`Error::Uncorrectable`] when `y` is not within one transposition
/// of a codeword.
pub fn decode_q(y: &QaryString, params: &SyndromeParams) -> Result<QaryString> {
    check_shape(y, params.q, params.n)?;
    let (m1, p) = (params.first_modulus(), params.p);
    let (a, b) = syndrome_residues(y.symbols(), params.q, p);
    let c1 = (params.s1 + m1 - a) % m1;
    let c2 = (params.s2 + p - b) % p;
    if c1 == 0 {
        return if c2 == 0 { Ok(y.clone()) } else { Err(Error::Uncorrectable) };
    }
    // Residues 1..q-1 stand for +1..+(q-1) and q..2q-2 for -(q-1)..-1.
    let q = params.q as i64;
    let diff = if (c1 as i64) < q { c1 as i64 } else { c1 as i64 - m1 as i64 };
    let diff_inv = mod_inverse(diff.rem_euclid(p as i64) as u64, p).ok_or(Error::Uncorrectable)?;
    let half = mod_inverse(2, p).ok_or(Error::Uncorrectable)?;
    let k = (half * ((c2 * diff_inv % p + p - 1) % p) % p) as usize;
    if k == 0 || k >= params.n {
        return Err(Error::Uncorrectable);
    }
    let s = y.symbols();
    if s[k - 1] as i64 - s[k] as i64 != diff {
        return Err(Error::Uncorrectable);
    }
    let mut out = s.to_vec();
    out.swap(k - 1, k);
    let x = QaryString::from_raw(params.q, out);
    if syndrome_residues(x.symbols(), params.q, p) != (params.s1, params.s2) {
        return Err(Error::Uncorrectable);
    }
    Ok(x)
}

impl TranspositionCode for SyndromeParams {
    fn alphabet(&self) -> usize {
        self.q
    }

    fn length(&self) -> usize {
        self.n
    }

    fn contains(&self, x: &QaryString) -> Result<bool> {
        is_codeword_q(x, self)
    }

    fn decode(&self, y: &QaryString) -> Result<QaryString> {
        decode_q(y, self)
    }

    fn enumerate(&self) -> Result<Code> {
        enumerate_code_q(self)
    }
}
