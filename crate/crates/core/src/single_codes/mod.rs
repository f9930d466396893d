//! Codes correcting a single transposition.
//!
//! [`SyndromeParams`] describes the two-checksum construction over any
//! alphabet; [`BinaryParams`] the binary construction that protects the
//! even-indexed bits with a substitution-correcting [`InnerCode`] and adds one
//! weighted parity bit to recover the parity of the swap location.

mod binary;
mod inner;
mod syndrome;

pub use binary::{best_binary_offset, decode_binary, enumerate_binary, is_codeword_binary, BinaryParams};
pub use inner::{inner_code, InnerCode};
pub use syndrome::{
    best_offsets, decode_q, enumerate_code_q, is_codeword_q, smallest_valid_prime, syndrome_residues, SyndromeParams,
};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
