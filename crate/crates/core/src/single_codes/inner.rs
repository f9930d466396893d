use crate::error::{Error, Result};

/// A binary code of minimum Hamming distance at least 3, used to protect the
/// even-indexed bits of the binary construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerCode {
    /// `{0^m, 1^m}`, `m >= 3`.
    Repetition { len: usize },
    /// Hamming code shortened to length `m >= 3`: bit `i` (1-based) has
    /// parity-check column `i` in binary, parity bits sit at powers of two.
    ShortenedHamming { len: usize },
    /// The single word `0^m`; the only option when `m < 3`.
    Singleton { len: usize },
}

/// Default inner code for length `m`.
pub fn inner_code(m: usize) -> InnerCode {
    if m >= 3 {
        InnerCode::ShortenedHamming { len: m }
    } else {
        InnerCode::Singleton { len: m }
    }
}

impl InnerCode {
    pub fn repetition(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidParams(format!("repetition code of length {len} has distance below 3")));
        }
        Ok(Self::Repetition { len })
    }

    pub fn shortened_hamming(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidParams(format!("no shortened Hamming code of length {len}")));
        }
        Ok(Self::ShortenedHamming { len })
    }

    pub fn len(&self) -> usize {
        match *self {
            Self::Repetition { len } | Self::ShortenedHamming { len } | Self::Singleton { len } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of message bits.
    pub fn dimension(&self) -> usize {
        match *self {
            Self::Repetition { .. } => 1,
            Self::ShortenedHamming { len } => len - parity_positions(len).count(),
            Self::Singleton { .. } => 0,
        }
    }

    pub fn size(&self) -> u128 {
        1u128 << self.dimension()
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        word.len() == self.len() && matches!(self.locate_error(word), Ok(None))
    }

    /// `Ok(None)` for a codeword, `Ok(Some(i))` if flipping bit `i`
    /// (0-based) gives a codeword, otherwise [`Error::Uncorrectable`].
    pub fn locate_error(&self, word: &[u8]) -> Result<Option<usize>> {
        if word.len() != self.len() {
            return Err(Error::Mismatch(format!("inner length {}", self.len()), format!("length {}", word.len())));
        }
        let weight = word.iter().filter(|&&b| b != 0).count();
        match *self {
            Self::Repetition { len } => match weight {
                0 => Ok(None),
                w if w == len => Ok(None),
                1 => Ok(word.iter().position(|&b| b != 0)),
                w if w == len - 1 => Ok(word.iter().position(|&b| b == 0)),
                _ => Err(Error::Uncorrectable),
            },
            Self::ShortenedHamming { len } => match hamming_syndrome(word) {
                0 => Ok(None),
                s if s <= len => Ok(Some(s - 1)),
                _ => Err(Error::Uncorrectable),
            },
            Self::Singleton { .. } => match weight {
                0 => Ok(None),
                1 => Ok(word.iter().position(|&b| b != 0)),
                _ => Err(Error::Uncorrectable),
            },
        }
    }

    /// Nearest codeword within Hamming distance one.
    pub fn decode(&self, word: &[u8]) -> Result<Vec<u8>> {
        let mut out = word.to_vec();
        if let Some(i) = self.locate_error(word)? {
            out[i] ^= 1;
        }
        Ok(out)
    }

    /// Systematic encoder; `message.len()` must equal [`InnerCode::dimension`].
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.dimension() {
            return Err(Error::InvalidParams(format!(
                "inner code needs {} message bits, got {}",
                self.dimension(),
                message.len()
            )));
        }
        match *self {
            Self::Repetition { len } => Ok(vec![message[0] & 1; len]),
            Self::Singleton { len } => Ok(vec![0; len]),
            Self::ShortenedHamming { len } => {
                let mut word = vec![0u8; len];
                let mut bits = message.iter();
                for (i, slot) in word.iter_mut().enumerate() {
                    if !(i + 1).is_power_of_two() {
                        *slot = bits.next().copied().unwrap_or(0) & 1;
                    }
                }
                let syndrome = hamming_syndrome(&word);
                for p in parity_positions(len) {
                    if syndrome & p != 0 {
                        word[p - 1] = 1;
                    }
                }
                Ok(word)
            }
        }
    }

    /// All codewords in lexicographic order.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let k = self.dimension();
        let mut words: Vec<Vec<u8>> = (0..1u64 << k)
            .map(|m| {
                let msg: Vec<u8> = (0..k).map(|i| (m >> (k - 1 - i) & 1) as u8).collect();
                self.encode(&msg).expect("message has the code dimension")
            })
            .collect();
        words.sort();
        words
    }
}

fn parity_positions(len: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS).map(|b| 1usize << b).take_while(move |&p| p <= len)
}

/// XOR of the 1-based indices of the set bits.
fn hamming_syndrome(word: &[u8]) -> usize {
    word.iter().enumerate().filter(|(_, &b)| b != 0).fold(0, |acc, (i, _)| acc ^ (i + 1))
}
