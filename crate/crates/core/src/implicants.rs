//! Prime implicants and prime implicates as ternary words.
//!
//! A term or clause is the word with `1` for a positive literal, `0` for a
//! negative literal and `u` for an absent variable. A word is an implicant iff
//! every resolution is a 1-input, i.e. iff `f~(w) = 1`; it is prime iff no
//! stable digit can be relaxed to `u` while staying an implicant.

use std::fmt;

use crate::error::{Error, Result};
use crate::functions::{hazard_free_extension, BooleanFunction, TernaryFunction};
use crate::kernel::{pow3, Ternary, TernaryWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplicantKind {
    Implicant,
    Implicate,
}

impl ImplicantKind {
    /// Output value forced by a word of this kind.
    pub fn value(self) -> Ternary {
        match self {
            ImplicantKind::Implicant => Ternary::One,
            ImplicantKind::Implicate => Ternary::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicantSet {
    pub kind: ImplicantKind,
    /// Sorted by ascending table index.
    pub words: Vec<TernaryWord>,
}

impl ImplicantSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest literal count, 0 for an empty set.
    pub fn max_size(&self) -> usize {
        self.words.iter().map(literal_count).max().unwrap_or(0)
    }
}

pub fn literal_count(w: &TernaryWord) -> usize {
    w.len() - w.unstable_count()
}

/// Renders a term (`s̄·x0`) or clause (`s̄+x0`) with the given variable names.
pub fn render_literals(w: &TernaryWord, kind: ImplicantKind, names: &[String]) -> String {
    let literals: Vec<String> = w
        .digits()
        .iter()
        .enumerate()
        .filter_map(|(i, d)| {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
            match d {
                Ternary::One => Some(name),
                Ternary::Zero => Some(negated(&name)),
                Ternary::Unknown => None,
            }
        })
        .collect();
    if literals.is_empty() {
        return match kind {
            ImplicantKind::Implicant => "1".into(),
            ImplicantKind::Implicate => "0".into(),
        };
    }
    let sep = match kind {
        ImplicantKind::Implicant => "·",
        ImplicantKind::Implicate => "+",
    };
    literals.join(sep)
}

/// Overline on the first character of the name.
fn negated(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => format!("{c}\u{0304}{}", chars.as_str()),
        None => String::new(),
    }
}

impl fmt::Display for ImplicantSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", words.join(","))
    }
}

fn check_len(w: &TernaryWord, f: &BooleanFunction) -> Result<()> {
    if w.len() != f.n() {
        return Err(Error::LengthMismatch {
            expected: f.n(),
            found: w.len(),
        });
    }
    Ok(())
}

/// All resolutions of `w` are 1-inputs.
pub fn is_implicant(w: &TernaryWord, f: &BooleanFunction) -> Result<bool> {
    check_len(w, f)?;
    Ok(w.resolutions()
        .iter()
        .all(|r| f.eval_word(r).expect("stable")))
}

/// All resolutions of `w` are 0-inputs.
pub fn is_implicate(w: &TernaryWord, f: &BooleanFunction) -> Result<bool> {
    check_len(w, f)?;
    Ok(w.resolutions()
        .iter()
        .all(|r| !f.eval_word(r).expect("stable")))
}

pub fn prime_implicants(f: &BooleanFunction) -> Result<ImplicantSet> {
    primes_of(&hazard_free_extension(f)?, ImplicantKind::Implicant)
}

pub fn prime_implicates(f: &BooleanFunction) -> Result<ImplicantSet> {
    primes_of(&hazard_free_extension(f)?, ImplicantKind::Implicate)
}

/// Primes read off a hazard-free extension table.
pub fn primes_of(ext: &TernaryFunction, kind: ImplicantKind) -> Result<ImplicantSet> {
    let t = ext.require_table()?;
    let n = ext.n();
    let target = kind.value();
    let mut words = Vec::new();
    for idx in 0..pow3(n) {
        if t[idx] != target {
            continue;
        }
        // relax each stable digit to u; prime iff none stays an implicant
        let mut prime = true;
        let mut rest = idx;
        let mut weight = 1usize;
        for _ in 0..n {
            let d = rest % 3;
            if d != 1 {
                let relaxed = if d == 0 { idx + weight } else { idx - weight };
                if t[relaxed] == target {
                    prime = false;
                    break;
                }
            }
            rest /= 3;
            weight *= 3;
        }
        if prime {
            words.push(TernaryWord::from_index(n, idx));
        }
    }
    Ok(ImplicantSet { kind, words })
}

/// `k1`, `k2`: largest prime implicant / implicate size; `m`, `M`: their counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalSizes {
    pub k1: usize,
    pub k2: usize,
    pub m: usize,
    pub big_m: usize,
}

pub fn extremal_sizes(f: &BooleanFunction) -> Result<ExtremalSizes> {
    extremal_sizes_of(&hazard_free_extension(f)?)
}

pub fn extremal_sizes_of(ext: &TernaryFunction) -> Result<ExtremalSizes> {
    let pi = primes_of(ext, ImplicantKind::Implicant)?;
    let pc = primes_of(ext, ImplicantKind::Implicate)?;
    Ok(ExtremalSizes {
        k1: pi.max_size(),
        k2: pc.max_size(),
        m: pi.len(),
        big_m: pc.len(),
    })
}
