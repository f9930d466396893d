use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use tcodes::single_codes::{best_binary_offset, best_offsets, inner_code, BinaryParams, InnerCode, SyndromeParams};
use tcodes::zero_error::{AlphabetPartition, ZeroErrorCodebook};
use tcodes::{Code, Error, QaryString, Result, TranspositionCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Two weighted checksums, any alphabet, one transposition.
    Syndrome,
    /// Binary code over a Hamming-distance-3 inner code, one transposition.
    Binary,
    /// Block concatenations correcting every transposition pattern.
    #[value(alias = "zero_error")]
    ZeroError,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InnerKind {
    Hamming,
    Repetition,
}

/// Flags shared by every command that needs a code.
#[derive(Args, Debug)]
pub struct CodeArgs {
    #[arg(long, value_enum)]
    pub construction: Construction,
    /// Whole parameter set: `q,n,p,s1,s2` (syndrome) or `n,s` (binary).
    #[arg(long, conflicts_with_all = ["q", "n", "p", "s1", "s2", "s"])]
    pub params: Option<String>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Second checksum modulus; defaults to the least odd prime >= max(q, n).
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub s1: Option<u64>,
    #[arg(long)]
    pub s2: Option<u64>,
    /// Parity offset of the binary construction.
    #[arg(long)]
    pub s: Option<u8>,
    #[arg(long, value_enum, default_value = "hamming")]
    pub inner: InnerKind,
    /// Alphabet split for the zero-error code, e.g. `0,1|2,3`.
    #[arg(long)]
    pub partition: Option<String>,
}

pub enum BuiltCode {
    Syndrome(SyndromeParams),
    Binary(BinaryParams),
    ZeroError(ZeroErrorCodebook),
}

impl BuiltCode {
    pub fn code(&self) -> &dyn TranspositionCode {
        match self {
            Self::Syndrome(p) => p,
            Self::Binary(p) => p,
            Self::ZeroError(c) => c,
        }
    }

    pub fn q(&self) -> usize {
        self.code().alphabet()
    }

    pub fn parse_string(&self, text: &str) -> Result<QaryString> {
        let x = QaryString::parse(self.q(), text)?;
        if x.len() != self.code().length() {
            return Err(Error::InvalidParams(format!("expected {} symbols, got {}", self.code().length(), x.len())));
        }
        Ok(x)
    }

    /// Codeword at a lexicographic rank.
    pub fn codeword(&self, index: &BigUint) -> Result<QaryString> {
        if let Self::ZeroError(c) = self {
            return c.codeword(index);
        }
        let code: Code = self.code().enumerate()?;
        let i = usize::try_from(index).ok().filter(|&i| i < code.len());
        i.map(|i| code.words()[i].clone())
            .ok_or_else(|| Error::InvalidParams(format!("index {index} is not below the code size {}", code.len())))
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required for this construction")))
}

impl CodeArgs {
    pub fn build(&self) -> Result<BuiltCode> {
        match self.construction {
            Construction::Syndrome => self.syndrome().map(BuiltCode::Syndrome),
            Construction::Binary => self.binary().map(BuiltCode::Binary),
            Construction::ZeroError => self.zero_error().map(BuiltCode::ZeroError),
        }
    }

    fn syndrome(&self) -> Result<SyndromeParams> {
        if let Some(text) = &self.params {
            return text.parse();
        }
        let (q, n) = (required(self.q, "q")?, required(self.n, "n")?);
        let p = match self.p {
            Some(p) => p,
            None => tcodes::single_codes::smallest_valid_prime(q, n),
        };
        SyndromeParams::with_modulus(q, n, 0, 0, p)?;
        // With no offsets given, pick the largest code when enumeration is
        // affordable and fall back to zero otherwise.
        let (s1, s2) = match (self.s1, self.s2) {
            (None, None) => match best_offsets(q, n, p) {
                Ok((a, b, _)) => (a, b),
                Err(Error::TooLarge { .. }) => (0, 0),
                Err(e) => return Err(e),
            },
            (a, b) => (a.unwrap_or(0), b.unwrap_or(0)),
        };
        SyndromeParams::with_modulus(q, n, s1, s2, p)
    }

    fn binary(&self) -> Result<BinaryParams> {
        if let Some(text) = &self.params {
            return text.parse();
        }
        if let Some(q) = self.q.filter(|&q| q != 2) {
            return Err(Error::InvalidParams(format!("the binary construction needs q = 2, got {q}")));
        }
        let n = required(self.n, "n")?;
        let inner = match self.inner {
            InnerKind::Hamming => inner_code(n / 2),
            InnerKind::Repetition => InnerCode::repetition(n / 2)?,
        };
        let s = match self.s {
            Some(s) => s,
            None => match BinaryParams::with_inner(n, 0, inner).and_then(|_| best_binary_offset(n, inner)) {
                Ok((s, _)) => s,
                Err(Error::TooLarge { .. }) => 0,
                Err(e) => return Err(e),
            },
        };
        BinaryParams::with_inner(n, s, inner)
    }

    fn zero_error(&self) -> Result<ZeroErrorCodebook> {
        let (q, n) = (required(self.q, "q")?, required(self.n, "n")?);
        let partition = match &self.partition {
            Some(text) => AlphabetPartition::parse(q, text)?,
            None => AlphabetPartition::default_for(q)?,
        };
        Ok(ZeroErrorCodebook::new(n, partition))
    }
}
