//! The three-valued Kleene algebra: values, words, the instability order,
//! resolutions, hazard-free gates and ternary Hamming geometry.
//!
//! Words are indexed into tables with the digit encoding `0 -> 0`, `u -> 1`,
//! `1 -> 2` and position 0 as the most significant digit. Every table in the
//! crate uses this one convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of `{0, u, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Ternary {
    Zero = 0,
    Unknown = 1,
    One = 2,
}

pub use Ternary::{One, Unknown, Zero};

impl Ternary {
    pub const ALL: [Ternary; 3] = [Zero, Unknown, One];

    #[inline]
    pub fn digit(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_digit(d: usize) -> Ternary {
        match d {
            0 => Zero,
            1 => Unknown,
            2 => One,
            _ => panic!("ternary digit out of range: {d}"),
        }
    }

    #[inline]
    pub fn is_stable(self) -> bool {
        self != Unknown
    }

    #[inline]
    pub fn to_bool(self) -> Option<bool> {
        match self {
            Zero => Some(false),
            One => Some(true),
            Unknown => None,
        }
    }

    /// The stable value with the opposite polarity; `u` maps to itself.
    #[inline]
    pub fn negate(self) -> Ternary {
        match self {
            Zero => One,
            One => Zero,
            Unknown => Unknown,
        }
    }

    /// Instability order: `u` lies below both stable values, which are
    /// incomparable.
    #[inline]
    pub fn leq(self, other: Ternary) -> bool {
        self == Unknown || self == other
    }

    /// Greatest lower bound in the instability order.
    #[inline]
    pub fn merge(self, other: Ternary) -> Ternary {
        if self == other {
            self
        } else {
            Unknown
        }
    }

    /// The two digits different from `self`, in ascending digit order.
    #[inline]
    pub fn alternatives(self) -> [Ternary; 2] {
        match self {
            Zero => [Unknown, One],
            Unknown => [Zero, One],
            One => [Zero, Unknown],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Zero => '0',
            Unknown => 'u',
            One => '1',
        }
    }

    pub fn from_char(c: char) -> Result<Ternary> {
        match c {
            '0' => Ok(Zero),
            'u' | 'U' => Ok(Unknown),
            '1' => Ok(One),
            _ => Err(Error::Parse(format!("invalid ternary digit {c:?}"))),
        }
    }
}

impl From<bool> for Ternary {
    fn from(b: bool) -> Self {
        if b {
            One
        } else {
            Zero
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `3^n`, the number of ternary words of length `n`.
#[inline]
pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Fixed-length word over `{0, u, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryWord(Vec<Ternary>);

impl TernaryWord {
    pub fn new(digits: Vec<Ternary>) -> Self {
        TernaryWord(digits)
    }

    pub fn filled(n: usize, value: Ternary) -> Self {
        TernaryWord(vec![value; n])
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        TernaryWord(bits.iter().map(|&b| Ternary::from(b)).collect())
    }

    /// Inverse of [`TernaryWord::index`].
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut digits = vec![Zero; n];
        for slot in digits.iter_mut().rev() {
            *slot = Ternary::from_digit(index % 3);
            index /= 3;
        }
        TernaryWord(digits)
    }

    /// Stable word for a Boolean table index (position 0 most significant).
    pub fn from_boolean_index(n: usize, index: usize) -> Self {
        TernaryWord(
            (0..n)
                .map(|i| Ternary::from((index >> (n - 1 - i)) & 1 == 1))
                .collect(),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn digits(&self) -> &[Ternary] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Ternary {
        self.0[i]
    }

    pub fn with(&self, i: usize, value: Ternary) -> TernaryWord {
        let mut out = self.clone();
        out.0[i] = value;
        out
    }

    pub fn set(&mut self, i: usize, value: Ternary) {
        self.0[i] = value;
    }

    /// Canonical table index `sum d(x_i) * 3^(n-1-i)`.
    pub fn index(&self) -> usize {
        index_of(&self.0)
    }

    /// Boolean table index, `None` if any digit is unstable.
    pub fn boolean_index(&self) -> Option<usize> {
        self.0.iter().try_fold(0usize, |acc, d| {
            d.to_bool().map(|b| (acc << 1) | b as usize)
        })
    }

    pub fn is_stable(&self) -> bool {
        self.0.iter().all(|d| d.is_stable())
    }

    pub fn unstable_count(&self) -> usize {
        self.0.iter().filter(|d| !d.is_stable()).count()
    }

    pub fn unstable_positions(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.0[i].is_stable())
            .collect()
    }

    /// Componentwise instability order.
    pub fn leq(&self, other: &TernaryWord) -> Result<bool> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b)))
    }

    /// All fully stable words above `self`, in ascending table-index order.
    pub fn resolutions(&self) -> Vec<TernaryWord> {
        let free = self.unstable_positions();
        let mut out = Vec::with_capacity(1 << free.len());
        for mask in 0..(1usize << free.len()) {
            let mut w = self.clone();
            for (j, &pos) in free.iter().enumerate() {
                // first free position is the most significant bit of `mask`
                let bit = (mask >> (free.len() - 1 - j)) & 1 == 1;
                w.0[pos] = Ternary::from(bit);
            }
            out.push(w);
        }
        out
    }

    /// Number of positions where the digits differ; `u` is a digit like any other.
    pub fn hamming_distance(&self, other: &TernaryWord) -> Result<usize> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// The two words that differ from `self` exactly at position `i`.
    pub fn neighbors_at(&self, i: usize) -> [TernaryWord; 2] {
        let [a, b] = self.0[i].alternatives();
        [self.with(i, a), self.with(i, b)]
    }

    /// All `2n` words at distance one.
    pub fn neighbors(&self) -> Vec<TernaryWord> {
        (0..self.len()).flat_map(|i| self.neighbors_at(i)).collect()
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Ternary::from_char)
            .collect::<Result<Vec<_>>>()
            .map(TernaryWord)
    }
}

impl From<Vec<Ternary>> for TernaryWord {
    fn from(v: Vec<Ternary>) -> Self {
        TernaryWord(v)
    }
}

#[inline]
pub(crate) fn index_of(digits: &[Ternary]) -> usize {
    digits.iter().fold(0, |acc, d| acc * 3 + d.digit())
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

pub fn leq(x: &TernaryWord, y: &TernaryWord) -> Result<bool> {
    x.leq(y)
}

pub fn hamming_distance(x: &TernaryWord, y: &TernaryWord) -> Result<usize> {
    x.hamming_distance(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    And,
    Or,
    Not,
}

impl Gate {
    pub fn arity(self) -> usize {
        match self {
            Gate::Not => 1,
            Gate::And | Gate::Or => 2,
        }
    }
}

/// Hazard-free extension of a Boolean gate.
pub fn kleene_gate(gate: Gate, args: &[Ternary]) -> Result<Ternary> {
    check_len(gate.arity(), args.len())?;
    Ok(match gate {
        Gate::Not => args[0].negate(),
        Gate::And => match (args[0], args[1]) {
            (Zero, _) | (_, Zero) => Zero,
            (One, One) => One,
            _ => Unknown,
        },
        Gate::Or => match (args[0], args[1]) {
            (One, _) | (_, One) => One,
            (Zero, Zero) => Zero,
            _ => Unknown,
        },
    })
}

/// All words at distance exactly `r` from `center`, in ascending index order.
pub fn sphere(center: &TernaryWord, r: usize) -> Result<Vec<TernaryWord>> {
    shell(center, r, false)
}

/// All words at distance at most `r` from `center`, in ascending index order.
pub fn ball(center: &TernaryWord, r: usize) -> Result<Vec<TernaryWord>> {
    shell(center, r, true)
}

fn shell(center: &TernaryWord, r: usize, inclusive: bool) -> Result<Vec<TernaryWord>> {
    let n = center.len();
    if r > n {
        return Err(Error::OutOfRange {
            what: "radius",
            value: r,
            max: n,
        });
    }
    let out = (0..pow3(n))
        .map(|idx| TernaryWord::from_index(n, idx))
        .filter(|w| {
            let d = center.hamming_distance(w).expect("equal lengths");
            d == r || (inclusive && d < r)
        })
        .collect();
    Ok(out)
}
