//! Boolean truth tables, ternary functions and hazard-free extensions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{index_of, pow3, Ternary, TernaryWord, Unknown};

/// Largest variable count for which a ternary table (`3^n` entries) is built
/// by default.
pub const DEFAULT_TABLE_LIMIT: usize = 12;

/// Largest variable count accepted for an explicit Boolean truth table.
pub const MAX_BOOLEAN_VARS: usize = 24;

/// Truth table over `2^n` inputs; entry `sum x_i * 2^(n-1-i)` holds `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n > MAX_BOOLEAN_VARS {
            return Err(Error::TooLarge {
                what: "boolean truth table",
                n,
                limit: MAX_BOOLEAN_VARS,
            });
        }
        if table.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: table.len(),
            });
        }
        Ok(BooleanFunction { n, table })
    }

    /// Builds the table by calling `f` on every input, given as bits with
    /// position 0 first.
    pub fn from_fn(n: usize, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self> {
        if n > MAX_BOOLEAN_VARS {
            return Err(Error::TooLarge {
                what: "boolean truth table",
                n,
                limit: MAX_BOOLEAN_VARS,
            });
        }
        let mut bits = vec![false; n];
        let table = (0..1usize << n)
            .map(|idx| {
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = (idx >> (n - 1 - i)) & 1 == 1;
                }
                f(&bits)
            })
            .collect();
        Ok(BooleanFunction { n, table })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::new(n, vec![value; 1 << n])
    }

    /// Builds a function on `n <= 6` variables from the integer whose bit `i`
    /// is the output on input index `i`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::TooLarge {
                what: "integer-encoded truth table",
                n,
                limit: 6,
            });
        }
        Self::new(n, (0..1usize << n).map(|i| (bits >> i) & 1 == 1).collect())
    }

    /// Inverse of [`BooleanFunction::from_bits`].
    pub fn to_bits(&self) -> Option<u64> {
        (self.n <= 6).then(|| {
            self.table
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn value(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn eval(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: bits.len(),
            });
        }
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(self.table[idx])
    }

    /// Value on a fully stable word.
    pub fn eval_word(&self, x: &TernaryWord) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        x.boolean_index()
            .map(|i| self.table[i])
            .ok_or_else(|| Error::Parse(format!("word {x} is not stable")))
    }

    pub fn is_constant(&self) -> Option<bool> {
        let first = self.table[0];
        self.table.iter().all(|&b| b == first).then_some(first)
    }

    /// True iff two inputs differing only at `i` have different outputs.
    pub fn depends_on(&self, i: usize) -> Result<bool> {
        if i >= self.n {
            return Err(Error::OutOfRange {
                what: "variable",
                value: i,
                max: self.n.saturating_sub(1),
            });
        }
        let bit = 1 << (self.n - 1 - i);
        Ok((0..self.table.len())
            .filter(|idx| idx & bit == 0)
            .any(|idx| self.table[idx] != self.table[idx | bit]))
    }

    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n).all(|i| self.depends_on(i).expect("in range"))
    }

    /// Hex rendering: bit for input index 0 is the least significant bit.
    pub fn to_hex(&self) -> String {
        let digits = hex_digits(self.n);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (0..4).fold(0u32, |acc, j| {
                let idx = 4 * d + j;
                let bit = idx < self.table.len() && self.table[idx];
                acc | ((bit as u32) << j)
            });
            out.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if n > MAX_BOOLEAN_VARS {
            return Err(Error::TooLarge {
                what: "boolean truth table",
                n,
                limit: MAX_BOOLEAN_VARS,
            });
        }
        let digits = hex_digits(n);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "expected {digits} hex digits for {n} variables, found {}",
                hex.len()
            )));
        }
        let size = 1usize << n;
        let mut table = vec![false; size];
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for j in 0..4 {
                let idx = 4 * d + j;
                let bit = (nibble >> j) & 1 == 1;
                if idx < size {
                    table[idx] = bit;
                } else if bit {
                    return Err(Error::Parse(format!(
                        "hex {hex} sets bits beyond the 2^{n} table"
                    )));
                }
            }
        }
        Ok(BooleanFunction { n, table })
    }
}

fn hex_digits(n: usize) -> usize {
    (1usize << n).div_ceil(4)
}

type Evaluator = Arc<dyn Fn(&[Ternary]) -> Ternary + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Table(Arc<Vec<Ternary>>),
    Lazy(Evaluator),
}

/// A function `{0,u,1}^n -> {0,u,1}`, held either as an explicit table of
/// `3^n` values or as a pure evaluator for `n` too large to tabulate.
#[derive(Clone)]
pub struct TernaryFunction {
    n: usize,
    repr: Repr,
    hazard_free: bool,
}

impl fmt::Debug for TernaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("TernaryFunction");
        s.field("n", &self.n)
            .field("hazard_free", &self.hazard_free);
        match &self.repr {
            Repr::Table(t) => {
                let text: String = t.iter().map(|v| v.as_char()).collect();
                s.field("table", &text)
            }
            Repr::Lazy(_) => s.field("table", &"<lazy>"),
        }
        .finish()
    }
}

impl PartialEq for TernaryFunction {
    /// Tables compare by value; lazy evaluators never compare equal.
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Table(a), Repr::Table(b)) => self.n == other.n && a == b,
            _ => false,
        }
    }
}

impl TernaryFunction {
    pub fn from_table(n: usize, values: Vec<Ternary>) -> Result<Self> {
        if values.len() != pow3(n) {
            return Err(Error::LengthMismatch {
                expected: pow3(n),
                found: values.len(),
            });
        }
        Ok(TernaryFunction {
            n,
            repr: Repr::Table(Arc::new(values)),
            hazard_free: false,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(&[Ternary]) -> Ternary + Send + Sync + 'static) -> Self {
        TernaryFunction {
            n,
            repr: Repr::Lazy(Arc::new(f)),
            hazard_free: false,
        }
    }

    pub fn constant(n: usize, value: Ternary) -> Result<Self> {
        Self::from_table(n, vec![value; pow3(n)])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether this function is known to be the hazard-free extension of a
    /// Boolean function.
    pub fn is_hazard_free_extension(&self) -> bool {
        self.hazard_free
    }

    pub fn table(&self) -> Option<&[Ternary]> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            Repr::Lazy(_) => None,
        }
    }

    pub fn require_table(&self) -> Result<&[Ternary]> {
        self.table().ok_or(Error::NotTabulated)
    }

    pub fn eval(&self, x: &TernaryWord) -> Result<Ternary> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self.eval_digits(x.digits()))
    }

    #[inline]
    pub(crate) fn eval_digits(&self, x: &[Ternary]) -> Ternary {
        match &self.repr {
            Repr::Table(t) => t[index_of(x)],
            Repr::Lazy(f) => f(x),
        }
    }

    /// Converts a lazy function to a table (no-op for tables).
    pub fn tabulate(&self, limit: usize) -> Result<TernaryFunction> {
        if let Repr::Table(_) = self.repr {
            return Ok(self.clone());
        }
        if self.n > limit {
            return Err(Error::TooLarge {
                what: "ternary table",
                n: self.n,
                limit,
            });
        }
        let values = (0..pow3(self.n))
            .map(|idx| self.eval_digits(TernaryWord::from_index(self.n, idx).digits()))
            .collect();
        Ok(TernaryFunction {
            n: self.n,
            repr: Repr::Table(Arc::new(values)),
            hazard_free: self.hazard_free,
        })
    }

    /// Fixes `x_i = a`; variables above `i` shift down by one.
    pub fn restrict(&self, i: usize, a: Ternary) -> Result<TernaryFunction> {
        if i >= self.n {
            return Err(Error::OutOfRange {
                what: "variable",
                value: i,
                max: self.n.saturating_sub(1),
            });
        }
        let n = self.n - 1;
        let hazard_free = self.hazard_free && a.is_stable();
        let repr = match &self.repr {
            Repr::Table(t) => {
                let low = pow3(n - i);
                let values = (0..pow3(n))
                    .map(|idx| {
                        let (hi, lo) = (idx / low, idx % low);
                        t[(hi * 3 + a.digit()) * low + lo]
                    })
                    .collect();
                Repr::Table(Arc::new(values))
            }
            Repr::Lazy(f) => {
                let f = Arc::clone(f);
                Repr::Lazy(Arc::new(move |x: &[Ternary]| {
                    let mut full = Vec::with_capacity(x.len() + 1);
                    full.extend_from_slice(&x[..i]);
                    full.push(a);
                    full.extend_from_slice(&x[i..]);
                    f(&full)
                }))
            }
        };
        Ok(TernaryFunction {
            n,
            repr,
            hazard_free,
        })
    }

    /// Monotone under the instability order, and stable on stable inputs.
    pub fn is_natural(&self) -> Result<bool> {
        let t = self.require_table()?;
        let order = UCountOrder::new(self.n);
        if !is_monotone(t, &order) {
            return Ok(false);
        }
        Ok((0..t.len())
            .filter(|&idx| order.ucount[idx] == 0)
            .all(|idx| t[idx].is_stable()))
    }

    /// Monotone, and `g(x) = b` whenever every word strictly above `x` maps to `b`.
    pub fn is_weakly_hazard_free(&self) -> Result<bool> {
        let t = self.require_table()?;
        let order = UCountOrder::new(self.n);
        if !is_monotone(t, &order) {
            return Ok(false);
        }
        // above[idx]: bitmask of the values taken on words >= idx, which
        // have fewer u digits and so are filled in first
        let mut above = vec![0u8; t.len()];
        for &idx in order.by_ucount.iter() {
            let mut mask = 1u8 << t[idx].digit();
            let mut strict = 0u8;
            for w in order.unstable_weights(idx) {
                strict |= above[idx - w] | above[idx + w];
            }
            mask |= strict;
            above[idx] = mask;
            if strict.count_ones() == 1 && strict != 1u8 << t[idx].digit() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Indices of `{0,u,1}^n` sorted by ascending number of `u` digits.
pub(crate) struct UCountOrder {
    n: usize,
    pub(crate) ucount: Vec<u8>,
    pub(crate) by_ucount: Vec<usize>,
}

impl UCountOrder {
    pub(crate) fn new(n: usize) -> Self {
        let size = pow3(n);
        let mut ucount = vec![0u8; size];
        for idx in 1..size {
            ucount[idx] = ucount[idx / 3] + (idx % 3 == 1) as u8;
        }
        let mut buckets = vec![Vec::new(); n + 1];
        for idx in 0..size {
            buckets[ucount[idx] as usize].push(idx);
        }
        UCountOrder {
            n,
            ucount,
            by_ucount: buckets.into_iter().flatten().collect(),
        }
    }

    /// Place values `3^j` of the `u` digits of `idx`.
    pub(crate) fn unstable_weights(&self, idx: usize) -> impl Iterator<Item = usize> {
        let n = self.n;
        let mut rest = idx;
        let mut weight = 1usize;
        (0..n).filter_map(move |_| {
            let d = rest % 3;
            let w = weight;
            rest /= 3;
            weight *= 3;
            (d == 1).then_some(w)
        })
    }
}

fn is_monotone(t: &[Ternary], order: &UCountOrder) -> bool {
    (0..t.len()).all(|idx| {
        order
            .unstable_weights(idx)
            .all(|w| t[idx].leq(t[idx - w]) && t[idx].leq(t[idx + w]))
    })
}

/// `f~(y) = b` if every resolution of `y` maps to `b`, else `u`.
///
/// Uses the merge recurrence `f~(y) = merge(f~(y[i->0]), f~(y[i->1]))` over
/// words in ascending `u`-count, `O(3^n)` total.
pub fn hazard_free_extension(f: &BooleanFunction) -> Result<TernaryFunction> {
    hazard_free_extension_with_limit(f, DEFAULT_TABLE_LIMIT)
}

pub fn hazard_free_extension_with_limit(
    f: &BooleanFunction,
    limit: usize,
) -> Result<TernaryFunction> {
    let n = f.n();
    if n > limit {
        return Err(Error::TooLarge {
            what: "hazard-free extension table",
            n,
            limit,
        });
    }
    let order = UCountOrder::new(n);
    let mut t = vec![Unknown; pow3(n)];
    for &idx in &order.by_ucount {
        t[idx] = match order.unstable_weights(idx).next() {
            None => Ternary::from(f.value(stable_to_boolean_index(idx, n))),
            Some(w) => t[idx - w].merge(t[idx + w]),
        };
    }
    let mut g = TernaryFunction::from_table(n, t)?;
    g.hazard_free = true;
    Ok(g)
}

/// Hazard-free extension evaluated on demand by enumerating the resolutions
/// of the unstable positions, with early exit.
pub fn lazy_extension(f: &BooleanFunction) -> TernaryFunction {
    let f = Arc::new(f.clone());
    let n = f.n();
    let mut g = TernaryFunction::from_fn(n, move |x| {
        let mut base = 0usize;
        let mut free = Vec::new();
        for (i, d) in x.iter().enumerate() {
            let bit = 1usize << (n - 1 - i);
            match d {
                Ternary::One => base |= bit,
                Ternary::Unknown => free.push(bit),
                Ternary::Zero => {}
            }
        }
        let first = f.value(base);
        for mask in 1..(1usize << free.len()) {
            let idx = free
                .iter()
                .enumerate()
                .filter(|(j, _)| (mask >> j) & 1 == 1)
                .fold(base, |acc, (_, b)| acc | b);
            if f.value(idx) != first {
                return Unknown;
            }
        }
        Ternary::from(first)
    });
    g.hazard_free = true;
    g
}

/// Ternary index of a stable word to its Boolean index.
#[inline]
pub(crate) fn stable_to_boolean_index(mut idx: usize, n: usize) -> usize {
    let mut out = 0usize;
    for j in 0..n {
        if idx % 3 == 2 {
            out |= 1 << j;
        }
        idx /= 3;
    }
    out
}

pub fn is_natural(g: &TernaryFunction) -> Result<bool> {
    g.is_natural()
}

pub fn is_weakly_hazard_free(g: &TernaryFunction) -> Result<bool> {
    g.is_weakly_hazard_free()
}

pub fn restrict(g: &TernaryFunction, i: usize, a: Ternary) -> Result<TernaryFunction> {
    g.restrict(i, a)
}

pub fn depends_on(f: &BooleanFunction, i: usize) -> Result<bool> {
    f.depends_on(i)
}

pub fn is_nondegenerate(f: &BooleanFunction) -> bool {
    f.is_nondegenerate()
}

/// Named function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Mux,
    And,
    Or,
    Parity,
    Maj,
    SmallDepth,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Mux,
        Family::And,
        Family::Or,
        Family::Parity,
        Family::Maj,
        Family::SmallDepth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mux => "mux",
            Family::And => "and",
            Family::Or => "or",
            Family::Parity => "parity",
            Family::Maj => "maj",
            Family::SmallDepth => "smalldepth",
        }
    }

    /// Inclusive range of the family parameter.
    pub fn parameter_range(self) -> (usize, usize) {
        match self {
            Family::Mux => (0, 4),
            Family::SmallDepth => (1, 3),
            _ => (1, 16),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let (lo, hi) = family.parameter_range();
        if n < lo || n > hi {
            return Err(Error::OutOfRange {
                what: "family parameter",
                value: n,
                max: hi,
            });
        }
        Ok(FamilySpec { family, n })
    }

    /// Number of Boolean input variables.
    pub fn variables(&self) -> usize {
        match self.family {
            Family::Mux => self.n + (1 << self.n),
            Family::SmallDepth => self.n + (1 << (self.n + 1)) - 1,
            _ => self.n,
        }
    }

    /// Display names for the variables in index order.
    pub fn variable_names(&self) -> Vec<String> {
        let n = self.n;
        match self.family {
            Family::Mux => (0..n)
                .map(|i| format!("s{i}"))
                .chain((0..1usize << n).map(|b| format!("x{b}")))
                .collect(),
            Family::SmallDepth => (0..n)
                .map(|i| format!("s{i}"))
                .chain((0..=n).flat_map(|len| {
                    (0..1usize << len).map(move |v| {
                        let bits: String = (0..len)
                            .map(|j| {
                                if (v >> (len - 1 - j)) & 1 == 1 {
                                    '1'
                                } else {
                                    '0'
                                }
                            })
                            .collect();
                        format!("y({bits})")
                    })
                }))
                .collect(),
            _ => (0..n).map(|i| format!("x{i}")).collect(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.name(), self.n)
    }
}

/// Index of the smalldepth y-variable for the bit sequence of length `len`
/// whose value (first bit most significant) is `value`, counted from the
/// first y-variable: sequences are ordered by length, then lexicographically.
#[inline]
pub fn smalldepth_y_offset(len: usize, value: usize) -> usize {
    (1 << len) - 1 + value
}

/// Truth table of a named family.
///
/// MUX_n: variables `s_0..s_{n-1}` then data bits `x_b` in ascending
/// `b = sum s_i 2^(n-1-i)`. smalldepth f_n: `s_0..s_{n-1}` then the y-variables
/// indexed by bit sequences of length `0..=n`; the data input selected by `v`
/// is `g_v = z_0 op_0 (z_1 op_1 (... op_{n-1} z_n))` with `z_j = y_(v_0..v_{j-1})`
/// and `op_j` OR when `v_j = 0`, AND otherwise.
pub fn make_family(spec: FamilySpec) -> Result<BooleanFunction> {
    let spec = FamilySpec::new(spec.family, spec.n)?;
    let n = spec.n;
    let vars = spec.variables();
    match spec.family {
        Family::Mux => BooleanFunction::from_fn(vars, |x| {
            let sel = x[..n]
                .iter()
                .fold(0usize, |acc, &b| (acc << 1) | b as usize);
            x[n + sel]
        }),
        Family::And => BooleanFunction::from_fn(vars, |x| x.iter().all(|&b| b)),
        Family::Or => BooleanFunction::from_fn(vars, |x| x.iter().any(|&b| b)),
        Family::Parity => {
            BooleanFunction::from_fn(vars, |x| x.iter().filter(|&&b| b).count() % 2 == 1)
        }
        Family::Maj => BooleanFunction::from_fn(vars, |x| 2 * x.iter().filter(|&&b| b).count() > n),
        Family::SmallDepth => BooleanFunction::from_fn(vars, |x| {
            let sel = x[..n]
                .iter()
                .fold(0usize, |acc, &b| (acc << 1) | b as usize);
            let y = |len: usize, value: usize| x[n + smalldepth_y_offset(len, value)];
            // evaluate innermost first: acc = z_n, then z_j op_j acc
            let mut acc = y(n, sel);
            for j in (0..n).rev() {
                let prefix = sel >> (n - j);
                let z = y(j, prefix);
                let v_j = (sel >> (n - 1 - j)) & 1 == 1;
                acc = if v_j { z && acc } else { z || acc };
            }
            acc
        }),
    }
}

/// Hazard-free extension of a family: a table when the variable count is
/// within [`DEFAULT_TABLE_LIMIT`], otherwise a lazy evaluator.
pub fn family_extension(spec: FamilySpec) -> Result<TernaryFunction> {
    let f = make_family(spec)?;
    if f.n() <= DEFAULT_TABLE_LIMIT {
        hazard_free_extension(&f)
    } else {
        Ok(lazy_extension(&f))
    }
}

/// A parsed function literal: `named:<family>:<n>` or `table:<n>:<hex>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionLiteral {
    pub function: BooleanFunction,
    pub family: Option<FamilySpec>,
}

impl FunctionLiteral {
    pub fn variable_names(&self) -> Vec<String> {
        match self.family {
            Some(spec) => spec.variable_names(),
            None => (0..self.function.n()).map(|i| format!("x{i}")).collect(),
        }
    }
}

impl FromStr for FunctionLiteral {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let parse_n = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid parameter {s:?}")))
        };
        match parts.as_slice() {
            ["named", family, n] => {
                let spec = FamilySpec::new(family.parse()?, parse_n(n)?)?;
                Ok(FunctionLiteral {
                    function: make_family(spec)?,
                    family: Some(spec),
                })
            }
            ["table", n, hex] => Ok(FunctionLiteral {
                function: BooleanFunction::from_hex(parse_n(n)?, hex)?,
                family: None,
            }),
            _ => Err(Error::Parse(format!(
                "malformed function literal {text:?} (expected named:<family>:<n> or table:<n>:<hex>)"
            ))),
        }
    }
}

impl fmt::Display for FunctionLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Some(spec) => write!(f, "named:{}:{}", spec.family.name(), spec.n),
            None => write!(f, "table:{}:{}", self.function.n(), self.function.to_hex()),
        }
    }
}

pub fn parse_function(text: &str) -> Result<FunctionLiteral> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{One, Zero};

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    fn family(f: Family, n: usize) -> BooleanFunction {
        make_family(FamilySpec::new(f, n).unwrap()).unwrap()
    }

    fn one_input(values: [Ternary; 3]) -> TernaryFunction {
        // table order: 0, u, 1
        TernaryFunction::from_table(1, values.to_vec()).unwrap()
    }

    /// Direct per-input oracle: all resolutions agree or the value is u.
    fn oracle(f: &BooleanFunction, x: &TernaryWord) -> Ternary {
        let outs: Vec<bool> = x
            .resolutions()
            .iter()
            .map(|r| f.eval_word(r).unwrap())
            .collect();
        if outs.iter().all(|&b| b == outs[0]) {
            Ternary::from(outs[0])
        } else {
            Unknown
        }
    }

    #[test]
    fn extension_examples() {
        let mux1 = hazard_free_extension(&family(Family::Mux, 1)).unwrap();
        assert_eq!(mux1.eval(&w("u11")).unwrap(), One);
        assert_eq!(mux1.eval(&w("u01")).unwrap(), Unknown);
        let and2 = hazard_free_extension(&family(Family::And, 2)).unwrap();
        assert_eq!(and2.eval(&w("u1")).unwrap(), Unknown);
        assert!(mux1.is_hazard_free_extension());
    }

    #[test]
    fn extension_matches_oracle_and_lazy() {
        for n in 0..=3usize {
            for bits in 0..(1u64 << (1 << n)) {
                let f = BooleanFunction::from_bits(n, bits).unwrap();
                let table = hazard_free_extension(&f).unwrap();
                let lazy = lazy_extension(&f);
                for idx in 0..pow3(n) {
                    let x = TernaryWord::from_index(n, idx);
                    let expected = oracle(&f, &x);
                    assert_eq!(table.eval(&x).unwrap(), expected);
                    assert_eq!(lazy.eval(&x).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn extension_over_limit_is_rejected() {
        let f = BooleanFunction::constant(5, true).unwrap();
        assert!(matches!(
            hazard_free_extension_with_limit(&f, 4),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn natural_examples() {
        let mux1 = hazard_free_extension(&family(Family::Mux, 1)).unwrap();
        assert!(mux1.is_natural().unwrap());
        assert!(!one_input([Zero, Unknown, Unknown]).is_natural().unwrap());
        assert!(TernaryFunction::constant(2, Zero)
            .unwrap()
            .is_natural()
            .unwrap());
        assert_eq!(
            lazy_extension(&family(Family::And, 2)).is_natural(),
            Err(Error::NotTabulated)
        );
    }

    #[test]
    fn weakly_hazard_free_examples() {
        // g(0)=0, g(1)=u, g(u)=u
        assert!(one_input([Zero, Unknown, Unknown])
            .is_weakly_hazard_free()
            .unwrap());
        // g(0)=0, g(1)=0, g(u)=u
        assert!(!one_input([Zero, Unknown, Zero])
            .is_weakly_hazard_free()
            .unwrap());
        for bits in 0..256u64 {
            let g = hazard_free_extension(&BooleanFunction::from_bits(3, bits).unwrap()).unwrap();
            assert!(g.is_weakly_hazard_free().unwrap());
            assert!(g.is_natural().unwrap());
        }
    }

    /// Brute-force natural extensions of f on n <= 2: each u-containing word
    /// ranges over {0,u,1}; keep the natural ones and compare with f~.
    #[test]
    fn extension_is_the_maximum_natural_extension() {
        for n in 1..=2usize {
            let size = pow3(n);
            let unstable: Vec<usize> = (0..size)
                .filter(|&i| !TernaryWord::from_index(n, i).is_stable())
                .collect();
            for bits in 0..(1u64 << (1 << n)) {
                let f = BooleanFunction::from_bits(n, bits).unwrap();
                let ext = hazard_free_extension(&f).unwrap();
                let base: Vec<Ternary> = (0..size)
                    .map(|i| {
                        let x = TernaryWord::from_index(n, i);
                        if x.is_stable() {
                            Ternary::from(f.eval_word(&x).unwrap())
                        } else {
                            Unknown
                        }
                    })
                    .collect();
                for choice in 0..pow3(unstable.len()) {
                    let mut t = base.clone();
                    let mut c = choice;
                    for &i in &unstable {
                        t[i] = Ternary::from_digit(c % 3);
                        c /= 3;
                    }
                    let g = TernaryFunction::from_table(n, t.clone()).unwrap();
                    if g.is_natural().unwrap() {
                        for (a, b) in t.iter().zip(ext.table().unwrap()) {
                            assert!(a.leq(*b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let mux1 = hazard_free_extension(&family(Family::Mux, 1)).unwrap();
        let s0 = mux1.restrict(0, Zero).unwrap();
        for x in ["00", "01", "0u", "10", "11", "1u", "u0", "u1", "uu"] {
            let x = w(x);
            assert_eq!(s0.eval(&x).unwrap(), x.get(0));
        }
        let su = mux1.restrict(0, Unknown).unwrap();
        assert_eq!(su.eval(&w("10")).unwrap(), Unknown);
        let c = TernaryFunction::constant(3, One).unwrap();
        assert_eq!(
            c.restrict(1, Zero).unwrap(),
            TernaryFunction::constant(2, One).unwrap()
        );
        assert!(matches!(c.restrict(3, Zero), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn lazy_restrict_agrees_with_table_restrict() {
        let f = family(Family::Mux, 1);
        let (t, l) = (hazard_free_extension(&f).unwrap(), lazy_extension(&f));
        for i in 0..3 {
            for a in Ternary::ALL {
                let rt = t.restrict(i, a).unwrap();
                let rl = l.restrict(i, a).unwrap().tabulate(4).unwrap();
                assert_eq!(rt, rl);
            }
        }
    }

    #[test]
    fn restrictions_preserve_weak_hazard_freedom() {
        for bits in 0..256u64 {
            let g = hazard_free_extension(&BooleanFunction::from_bits(3, bits).unwrap()).unwrap();
            for i in 0..3 {
                for a in Ternary::ALL {
                    let r = g.restrict(i, a).unwrap();
                    assert!(r.is_weakly_hazard_free().unwrap());
                    assert!(r
                        .restrict(0, Unknown)
                        .unwrap()
                        .is_weakly_hazard_free()
                        .unwrap());
                }
            }
        }
    }

    #[test]
    fn stable_restriction_of_extension_is_extension_of_restriction() {
        for bits in 0..256u64 {
            let f = BooleanFunction::from_bits(3, bits).unwrap();
            let g = hazard_free_extension(&f).unwrap();
            for i in 0..3 {
                for b in [false, true] {
                    let fr = BooleanFunction::from_fn(2, |x| {
                        let mut full = x.to_vec();
                        full.insert(i, b);
                        f.eval(&full).unwrap()
                    })
                    .unwrap();
                    let r = g.restrict(i, Ternary::from(b)).unwrap();
                    assert_eq!(r, hazard_free_extension(&fr).unwrap());
                    assert!(r.is_hazard_free_extension());
                }
            }
        }
    }

    #[test]
    fn depends_on_examples() {
        let and2 = family(Family::And, 2);
        assert!(and2.depends_on(0).unwrap());
        let proj = BooleanFunction::from_fn(2, |x| x[0]).unwrap();
        assert!(!proj.depends_on(1).unwrap());
        assert!(!proj.is_nondegenerate());
        assert!(family(Family::SmallDepth, 1).is_nondegenerate());
        assert!(family(Family::SmallDepth, 2).is_nondegenerate());
        assert!(and2.depends_on(2).is_err());
    }

    #[test]
    fn family_examples() {
        let mux1 = family(Family::Mux, 1);
        assert!(mux1.eval(&[true, false, true]).unwrap());
        assert!(!mux1.eval(&[false, false, true]).unwrap());

        // f_1(s, x, y, z) = MUX_1(s, x + y, x z) with x = y(), y = y(0), z = y(1)
        let f1 = family(Family::SmallDepth, 1);
        let expected = BooleanFunction::from_fn(4, |v| {
            let (s, x, y, z) = (v[0], v[1], v[2], v[3]);
            if s {
                x && z
            } else {
                x || y
            }
        })
        .unwrap();
        assert_eq!(f1, expected);

        let maj3 = hazard_free_extension(&family(Family::Maj, 3)).unwrap();
        assert_eq!(maj3.eval(&w("01u")).unwrap(), Unknown);
        assert_eq!(maj3.eval(&w("11u")).unwrap(), One);

        assert_eq!(
            FamilySpec::new(Family::SmallDepth, 2).unwrap().variables(),
            9
        );
        assert!(FamilySpec::new(Family::Mux, 5).is_err());
        assert!(FamilySpec::new(Family::SmallDepth, 0).is_err());
    }

    #[test]
    fn smalldepth_two_by_formula() {
        // f_2: variables s0 s1 y() y(0) y(1) y(00) y(01) y(10) y(11)
        let f2 = family(Family::SmallDepth, 2);
        let expected = BooleanFunction::from_fn(9, |v| {
            let (s0, s1) = (v[0], v[1]);
            let (e, y0, y1) = (v[2], v[3], v[4]);
            let (y00, y01, y10, y11) = (v[5], v[6], v[7], v[8]);
            match (s0, s1) {
                (false, false) => e || (y0 || y00),
                (false, true) => e || (y0 && y01),
                (true, false) => e && (y1 || y10),
                (true, true) => e && (y1 && y11),
            }
        })
        .unwrap();
        assert_eq!(f2, expected);
        assert_eq!(
            FamilySpec::new(Family::SmallDepth, 2)
                .unwrap()
                .variable_names()[2..5],
            ["y()", "y(0)", "y(1)"]
        );
    }

    #[test]
    fn family_extension_switches_to_lazy() {
        let big = family_extension(FamilySpec::new(Family::SmallDepth, 3).unwrap()).unwrap();
        assert!(big.table().is_none());
        assert_eq!(big.n(), 18);
        let small = family_extension(FamilySpec::new(Family::Mux, 2).unwrap()).unwrap();
        assert!(small.table().is_some());
    }

    #[test]
    fn literal_examples() {
        let and2 = family(Family::And, 2);
        let lit: FunctionLiteral = "named:and:2".parse().unwrap();
        assert_eq!(lit.function, and2);
        let lit: FunctionLiteral = "table:2:8".parse().unwrap();
        assert_eq!(lit.function, and2);
        assert_eq!(lit.to_string(), "table:2:8");
        let mux: FunctionLiteral = "named:mux:1".parse().unwrap();
        assert_eq!(mux.variable_names(), ["s0", "x0", "x1"]);

        assert!("named:xor:2".parse::<FunctionLiteral>().is_err());
        assert!("table:2:08".parse::<FunctionLiteral>().is_err());
        assert!("table:1:4".parse::<FunctionLiteral>().is_err());
        assert!("table:3:zz".parse::<FunctionLiteral>().is_err());
        assert!("foo".parse::<FunctionLiteral>().is_err());
    }

    #[test]
    fn hex_round_trip() {
        for n in 0..=4usize {
            for bits in (0..(1u64 << (1 << n))).step_by(7) {
                let f = BooleanFunction::from_bits(n, bits).unwrap();
                assert_eq!(BooleanFunction::from_hex(n, &f.to_hex()).unwrap(), f);
                assert_eq!(f.to_bits(), Some(bits));
            }
        }
        assert_eq!(family(Family::Parity, 3).to_hex(), "96");
    }
}
