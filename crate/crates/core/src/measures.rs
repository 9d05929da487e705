//! Sensitivity, block sensitivity and certificate complexity of ternary
//! functions, their Boolean counterparts, the stability variants, and
//! reconstruction of a function from its values on a Hamming ball.

use crate::error::{Error, Result};
use crate::functions::{BooleanFunction, TernaryFunction};
use crate::kernel::{pow3, sphere, Ternary, TernaryWord};

/// Largest variable count for exact block sensitivity and certificate
/// complexity (`9^n` work over all inputs).
pub const MAX_EXACT_MEASURE_VARS: usize = 8;
/// Largest variable count for [`boolean_measures`].
pub const MAX_BOOLEAN_MEASURE_VARS: usize = 12;

/// A measure maximized separately over inputs with output `0`, `u` and `1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ByValue {
    pub zero: usize,
    pub unknown: usize,
    pub one: usize,
}

impl ByValue {
    pub fn get(&self, b: Ternary) -> usize {
        match b {
            Ternary::Zero => self.zero,
            Ternary::Unknown => self.unknown,
            Ternary::One => self.one,
        }
    }

    fn raise(&mut self, b: Ternary, v: usize) {
        let slot = match b {
            Ternary::Zero => &mut self.zero,
            Ternary::Unknown => &mut self.unknown,
            Ternary::One => &mut self.one,
        };
        *slot = (*slot).max(v);
    }

    pub fn max(&self) -> usize {
        self.zero.max(self.unknown).max(self.one)
    }
}

/// Table view with positional weights, position 0 most significant.
struct View<'a> {
    n: usize,
    t: &'a [Ternary],
    weights: Vec<usize>,
}

impl<'a> View<'a> {
    fn new(g: &'a TernaryFunction) -> Result<Self> {
        let n = g.n();
        Ok(View {
            n,
            t: g.require_table()?,
            weights: (0..n).map(|i| pow3(n - 1 - i)).collect(),
        })
    }

    fn digit(&self, idx: usize, i: usize) -> usize {
        idx / self.weights[i] % 3
    }

    /// Index with position `i` changed to digit `d`.
    fn with(&self, idx: usize, i: usize, d: usize) -> usize {
        idx - self.digit(idx, i) * self.weights[i] + d * self.weights[i]
    }

    fn alternatives(&self, idx: usize, i: usize) -> [usize; 2] {
        let d = self.digit(idx, i);
        let [a, b] = Ternary::from_digit(d).alternatives();
        [self.with(idx, i, a.digit()), self.with(idx, i, b.digit())]
    }

    fn index_of(&self, x: &TernaryWord) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(x.index())
    }

    fn sensitivity(&self, idx: usize) -> usize {
        let v = self.t[idx];
        (0..self.n)
            .filter(|&i| self.alternatives(idx, i).iter().any(|&j| self.t[j] != v))
            .count()
    }
}

pub fn sensitivity_u(g: &TernaryFunction, x: &TernaryWord) -> Result<usize> {
    let view = View::new(g)?;
    Ok(view.sensitivity(view.index_of(x)?))
}

/// `s_u` maximized per output value.
pub fn sensitivity_profile(g: &TernaryFunction) -> Result<ByValue> {
    let view = View::new(g)?;
    let mut out = ByValue::default();
    for idx in 0..view.t.len() {
        out.raise(view.t[idx], view.sensitivity(idx));
    }
    Ok(out)
}

pub fn s_u(g: &TernaryFunction) -> Result<usize> {
    Ok(sensitivity_profile(g)?.max())
}

pub fn s_u_at(g: &TernaryFunction, b: Ternary) -> Result<usize> {
    Ok(sensitivity_profile(g)?.get(b))
}

/// Disjoint sensitive blocks at `x`, each with a witness input that differs
/// from `x` exactly on the block and has a different output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensitiveBlockFamily {
    pub base: TernaryWord,
    pub blocks: Vec<Vec<usize>>,
    pub witnesses: Vec<TernaryWord>,
}

impl SensitiveBlockFamily {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn require_exact(n: usize, what: &'static str) -> Result<()> {
    if n > MAX_EXACT_MEASURE_VARS {
        return Err(Error::TooLarge {
            what,
            n,
            limit: MAX_EXACT_MEASURE_VARS,
        });
    }
    Ok(())
}

/// Set bits of a position mask; bit `i` is position `i`.
fn positions(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |&i| mask >> i & 1 == 1)
}

/// First input differing from `idx` exactly on `mask` with another output.
fn block_witness(view: &View, idx: usize, mask: usize) -> Option<usize> {
    let pos: Vec<usize> = positions(mask).collect();
    let v = view.t[idx];
    (0..1usize << pos.len()).find_map(|choice| {
        let j = pos.iter().enumerate().fold(idx, |acc, (k, &i)| {
            let alt = Ternary::from_digit(view.digit(idx, i)).alternatives()[choice >> k & 1];
            view.with(acc, i, alt.digit())
        });
        (view.t[j] != v).then_some(j)
    })
}

/// Maximum number of disjoint sensitive blocks, given sensitivity of every
/// position mask. Only minimal blocks are packed; the search is exact,
/// memoized over the set of still-available positions.
fn max_packing(n: usize, sensitive: &[bool]) -> Vec<usize> {
    let full = (1usize << n) - 1;
    // contains[m]: some nonempty submask of m is sensitive
    let mut contains = vec![false; 1 << n];
    for m in 1..=full {
        contains[m] = sensitive[m] || positions(m).any(|i| contains[m & !(1 << i)]);
    }
    let minimal: Vec<usize> = (1..=full)
        .filter(|&m| sensitive[m] && positions(m).all(|i| !contains[m & !(1 << i)]))
        .collect();
    let mut memo: Vec<Option<(usize, usize)>> = vec![None; 1 << n];
    fn best(avail: usize, minimal: &[usize], memo: &mut [Option<(usize, usize)>]) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some((v, _)) = memo[avail] {
            return v;
        }
        let low = avail & avail.wrapping_neg();
        // either the lowest available position stays unused ...
        let mut top = (best(avail & !low, minimal, memo), 0);
        // ... or it is the lowest position of a chosen block
        for &b in minimal {
            if b & low != 0 && b & avail == b && b & (low - 1) == 0 {
                let v = 1 + best(avail & !b, minimal, memo);
                if v > top.0 {
                    top = (v, b);
                }
            }
        }
        memo[avail] = Some(top);
        top.0
    }
    best(full, &minimal, &mut memo);
    let mut chosen = Vec::new();
    let mut avail = full;
    while avail != 0 {
        let (_, b) = memo[avail].expect("visited");
        if b == 0 {
            avail &= avail - 1;
        } else {
            chosen.push(b);
            avail &= !b;
        }
    }
    chosen
}

fn ternary_blocks(view: &View, idx: usize) -> Vec<usize> {
    let sensitive: Vec<bool> = (0..1usize << view.n)
        .map(|m| m != 0 && block_witness(view, idx, m).is_some())
        .collect();
    max_packing(view.n, &sensitive)
}

pub fn sensitive_block_family(
    g: &TernaryFunction,
    x: &TernaryWord,
) -> Result<SensitiveBlockFamily> {
    let view = View::new(g)?;
    require_exact(view.n, "block sensitivity")?;
    let idx = view.index_of(x)?;
    let n = view.n;
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for m in ternary_blocks(&view, idx) {
        let j = block_witness(&view, idx, m).expect("sensitive block");
        blocks.push(positions(m).collect());
        witnesses.push(TernaryWord::from_index(n, j));
    }
    Ok(SensitiveBlockFamily {
        base: x.clone(),
        blocks,
        witnesses,
    })
}

pub fn block_sensitivity_u(g: &TernaryFunction, x: &TernaryWord) -> Result<usize> {
    Ok(sensitive_block_family(g, x)?.len())
}

pub fn block_sensitivity_profile(g: &TernaryFunction) -> Result<ByValue> {
    let view = View::new(g)?;
    require_exact(view.n, "block sensitivity")?;
    let mut out = ByValue::default();
    for idx in 0..view.t.len() {
        out.raise(view.t[idx], ternary_blocks(&view, idx).len());
    }
    Ok(out)
}

pub fn bs_u(g: &TernaryFunction) -> Result<usize> {
    Ok(block_sensitivity_profile(g)?.max())
}

/// Revealing `x` on `positions` forces the output `g(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub input: TernaryWord,
    pub positions: Vec<usize>,
}

/// For every partial assignment (base 4, digit 0 = unset, else value + 1,
/// position 0 most significant) the set of output digits over all
/// completions, as a bitmask.
struct ValueSets {
    n: usize,
    sets: Vec<u8>,
    /// position masks (bit `i` = position `i`) by ascending size
    by_size: Vec<usize>,
}

impl ValueSets {
    fn build(n: usize, values: &[u8], eval: impl Fn(usize) -> Ternary) -> Self {
        let size = 1usize << (2 * n);
        let mut sets = vec![0u8; size];
        for key in (0..size).rev() {
            let mut rest = key;
            let mut unset = None;
            let mut idx = 0usize;
            for i in (0..n).rev() {
                let d = rest & 3;
                rest >>= 2;
                if d == 0 {
                    unset = Some(i);
                }
                idx += d.saturating_sub(1) * pow3(n - 1 - i);
            }
            sets[key] = match unset {
                None => 1 << eval(idx).digit(),
                Some(i) => {
                    let w = 1usize << (2 * (n - 1 - i));
                    values
                        .iter()
                        .fold(0, |acc, &d| acc | sets[key + (d as usize + 1) * w])
                }
            };
        }
        let mut by_size: Vec<usize> = (0..1usize << n).collect();
        by_size.sort_by_key(|m| (m.count_ones(), *m));
        ValueSets { n, sets, by_size }
    }

    /// Smallest revealed position set forcing the output at `x`, ties to the
    /// numerically smallest mask.
    fn certificate(&self, x: &[Ternary]) -> usize {
        let n = self.n;
        *self
            .by_size
            .iter()
            .find(|&&m| {
                let key = positions(m).fold(0usize, |acc, i| {
                    acc + (x[i].digit() + 1) * (1 << (2 * (n - 1 - i)))
                });
                self.sets[key].count_ones() == 1
            })
            .expect("revealing everything certifies")
    }
}

fn ternary_value_sets(view: &View) -> ValueSets {
    ValueSets::build(view.n, &[0, 1, 2], |idx| view.t[idx])
}

pub fn certificate_u(g: &TernaryFunction, x: &TernaryWord) -> Result<Certificate> {
    let view = View::new(g)?;
    require_exact(view.n, "certificate complexity")?;
    view.index_of(x)?;
    let sets = ternary_value_sets(&view);
    let m = sets.certificate(x.digits());
    Ok(Certificate {
        input: x.clone(),
        positions: positions(m).collect(),
    })
}

pub fn certificate_complexity_u(g: &TernaryFunction, x: &TernaryWord) -> Result<usize> {
    Ok(certificate_u(g, x)?.positions.len())
}

pub fn certificate_profile(g: &TernaryFunction) -> Result<ByValue> {
    let view = View::new(g)?;
    require_exact(view.n, "certificate complexity")?;
    let sets = ternary_value_sets(&view);
    let mut out = ByValue::default();
    for idx in 0..view.t.len() {
        let x = TernaryWord::from_index(view.n, idx);
        out.raise(
            view.t[idx],
            sets.certificate(x.digits()).count_ones() as usize,
        );
    }
    Ok(out)
}

pub fn cc_u(g: &TernaryFunction) -> Result<usize> {
    Ok(certificate_profile(g)?.max())
}

pub fn cc_u_at(g: &TernaryFunction, b: Ternary) -> Result<usize> {
    Ok(certificate_profile(g)?.get(b))
}

/// Classical sensitivity, block sensitivity and certificate complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BooleanMeasures {
    pub s: usize,
    pub bs: usize,
    pub cc: usize,
}

pub fn boolean_measures(f: &BooleanFunction) -> Result<BooleanMeasures> {
    let n = f.n();
    if n > MAX_BOOLEAN_MEASURE_VARS {
        return Err(Error::TooLarge {
            what: "boolean measures",
            n,
            limit: MAX_BOOLEAN_MEASURE_VARS,
        });
    }
    let t = f.table();
    // block masks here are over boolean index bits; packing ignores the order
    let mut out = BooleanMeasures { s: 0, bs: 0, cc: 0 };
    let sets = ValueSets::build(n, &[0, 2], |idx| {
        let bidx = crate::functions::stable_to_boolean_index(idx, n);
        Ternary::from(t[bidx])
    });
    for x in 0..1usize << n {
        let v = t[x];
        let s = (0..n).filter(|&i| t[x ^ 1 << i] != v).count();
        let sensitive: Vec<bool> = (0..1usize << n).map(|m| t[x ^ m] != v).collect();
        let bs = max_packing(n, &sensitive).len();
        let word = TernaryWord::from_boolean_index(n, x);
        let cc = sets.certificate(word.digits()).count_ones() as usize;
        out.s = out.s.max(s);
        out.bs = out.bs.max(bs);
        out.cc = out.cc.max(cc);
    }
    Ok(out)
}

/// Stable inputs' positions whose change to `u` makes the output `u`.
pub fn stable_sensitivity(g: &TernaryFunction, x: &TernaryWord) -> Result<usize> {
    let view = View::new(g)?;
    let idx = view.index_of(x)?;
    stabs_at_index(&view, idx).ok_or(Error::UnstableOutput)
}

fn stabs_at_index(view: &View, idx: usize) -> Option<usize> {
    if !view.t[idx].is_stable() {
        return None;
    }
    Some(
        (0..view.n)
            .filter(|&i| {
                view.digit(idx, i) != 1 && view.t[view.with(idx, i, 1)] == Ternary::Unknown
            })
            .count(),
    )
}

/// Positions where swapping the stability of the digit (stable to `u`, `u`
/// to either stable value) swaps the stability of the output.
pub fn stability_sensitivity(g: &TernaryFunction, x: &TernaryWord) -> Result<usize> {
    let view = View::new(g)?;
    Ok(slys_at_index(&view, view.index_of(x)?))
}

fn slys_at_index(view: &View, idx: usize) -> usize {
    let stable = view.t[idx].is_stable();
    (0..view.n)
        .filter(|&i| {
            let swapped: &[usize] = if view.digit(idx, i) == 1 {
                &[0, 2]
            } else {
                &[1]
            };
            swapped
                .iter()
                .any(|&d| view.t[view.with(idx, i, d)].is_stable() != stable)
        })
        .count()
}

/// `stabs` per stable output value; the `unknown` slot is unused (0).
pub fn stable_sensitivity_profile(g: &TernaryFunction) -> Result<ByValue> {
    let view = View::new(g)?;
    let mut out = ByValue::default();
    for idx in 0..view.t.len() {
        if let Some(v) = stabs_at_index(&view, idx) {
            out.raise(view.t[idx], v);
        }
    }
    Ok(out)
}

pub fn stability_sensitivity_profile(g: &TernaryFunction) -> Result<ByValue> {
    let view = View::new(g)?;
    let mut out = ByValue::default();
    for idx in 0..view.t.len() {
        out.raise(view.t[idx], slys_at_index(&view, idx));
    }
    Ok(out)
}

pub fn stabs(g: &TernaryFunction) -> Result<usize> {
    Ok(stable_sensitivity_profile(g)?.max())
}

pub fn slys(g: &TernaryFunction) -> Result<usize> {
    Ok(stability_sensitivity_profile(g)?.max())
}

/// The strictly most frequent value.
pub fn plurality(values: &[Ternary]) -> Result<Ternary> {
    if values.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let mut counts = [0usize; 3];
    for v in values {
        counts[v.digit()] += 1;
    }
    let top = *counts.iter().max().expect("three counts");
    let mut winners = Ternary::ALL
        .into_iter()
        .filter(|v| counts[v.digit()] == top);
    let first = winners.next().expect("a maximum exists");
    match winners.next() {
        Some(_) => Err(Error::PluralityTie),
        None => Ok(first),
    }
}

/// Values of a function on the Hamming ball around `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallOracle {
    center: TernaryWord,
    radius: usize,
    /// indexed by table index; `Some` exactly on the ball
    values: Vec<Option<Ternary>>,
}

impl BallOracle {
    /// Samples `g` on the ball; the radius is clamped to `n`.
    pub fn from_function(g: &TernaryFunction, center: &TernaryWord, radius: usize) -> Result<Self> {
        let n = g.n();
        if center.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: center.len(),
            });
        }
        let radius = radius.min(n);
        let mut values = vec![None; pow3(n)];
        for r in 0..=radius {
            for y in sphere(center, r)? {
                values[y.index()] = Some(g.eval(&y)?);
            }
        }
        Ok(BallOracle {
            center: center.clone(),
            radius,
            values,
        })
    }

    pub fn center(&self) -> &TernaryWord {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn get(&self, y: &TernaryWord) -> Option<Ternary> {
        if y.len() != self.center.len() {
            return None;
        }
        self.values[y.index()]
    }
}

/// Extends the oracle sphere by sphere: each word at distance `r + 1` takes
/// the plurality of its `r + 1` neighbours at distance `r` (one differing
/// digit restored to the center's). Exact when the source function has
/// `s_u <= s` and the radius is at least `min(4s, n)`.
pub fn reconstruct_from_ball(oracle: &BallOracle, s: usize) -> Result<TernaryFunction> {
    let center = &oracle.center;
    let n = center.len();
    let needed = (4 * s).min(n);
    if oracle.radius < needed {
        return Err(Error::OutOfRange {
            what: "ball radius below min(4s, n); radius",
            value: oracle.radius,
            max: needed,
        });
    }
    let mut values = oracle.values.clone();
    for r in oracle.radius..n {
        for y in sphere(center, r + 1)? {
            let votes: Vec<Ternary> = (0..n)
                .filter(|&i| y.get(i) != center.get(i))
                .map(|i| values[y.with(i, center.get(i)).index()].expect("inner sphere filled"))
                .collect();
            values[y.index()] = Some(plurality(&votes)?);
        }
    }
    let table = values
        .into_iter()
        .map(|v| v.expect("every sphere filled"))
        .collect();
    TernaryFunction::from_table(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{hazard_free_extension, make_family, Family, FamilySpec};
    use crate::implicants::extremal_sizes_of;
    use crate::kernel::{One, Unknown, Zero};

    fn ext(f: Family, n: usize) -> TernaryFunction {
        hazard_free_extension(&make_family(FamilySpec::new(f, n).unwrap()).unwrap()).unwrap()
    }

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn sensitivity_examples() {
        let mux2 = ext(Family::Mux, 2);
        assert_eq!(sensitivity_u(&mux2, &w("uu1111")).unwrap(), 4);
        assert_eq!(s_u_at(&ext(Family::And, 3), One).unwrap(), 3);
        let c = TernaryFunction::constant(3, Zero).unwrap();
        assert_eq!(s_u(&c).unwrap(), 0);
        assert_eq!(sensitivity_profile(&c).unwrap(), ByValue::default());
    }

    #[test]
    fn block_sensitivity_examples() {
        assert_eq!(bs_u(&ext(Family::Mux, 2)).unwrap(), 4);
        assert_eq!(bs_u(&ext(Family::Parity, 2)).unwrap(), 2);
        let fam = sensitive_block_family(&ext(Family::Mux, 1), &w("u11")).unwrap();
        for (b, y) in fam.blocks.iter().zip(&fam.witnesses) {
            for i in 0..3 {
                assert_eq!(b.contains(&i), y.get(i) != fam.base.get(i));
            }
        }
    }

    /// Every family of disjoint blocks, checked by brute force (n <= 2).
    fn brute_bs(g: &TernaryFunction, x: &TernaryWord) -> usize {
        let n = g.n();
        let v = g.eval(x).unwrap();
        let sensitive = |m: usize| {
            (0..pow3(n)).any(|j| {
                let y = TernaryWord::from_index(n, j);
                (0..n).all(|i| (m >> i & 1 == 1) == (y.get(i) != x.get(i)))
                    && g.eval(&y).unwrap() != v
            })
        };
        // assign each position to one of up to n blocks or none
        let mut best = 0;
        let labels = (n + 1).pow(n as u32);
        for code in 0..labels {
            let mut blocks = vec![0usize; n];
            let mut c = code;
            for i in 0..n {
                let l = c % (n + 1);
                c /= n + 1;
                if l > 0 {
                    blocks[l - 1] |= 1 << i;
                }
            }
            let nonempty: Vec<usize> = blocks.into_iter().filter(|&m| m != 0).collect();
            if nonempty.iter().all(|&m| sensitive(m)) {
                best = best.max(nonempty.len());
            }
        }
        best
    }

    fn brute_cc(g: &TernaryFunction, x: &TernaryWord) -> usize {
        let n = g.n();
        let v = g.eval(x).unwrap();
        (0..1usize << n)
            .filter(|&m| {
                (0..pow3(n)).all(|j| {
                    let y = TernaryWord::from_index(n, j);
                    (0..n).any(|i| m >> i & 1 == 1 && y.get(i) != x.get(i))
                        || g.eval(&y).unwrap() == v
                })
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn block_and_certificate_match_brute_force() {
        for n in 0..=2usize {
            for bits in 0..(1u64 << (1 << n)) {
                let g =
                    hazard_free_extension(&BooleanFunction::from_bits(n, bits).unwrap()).unwrap();
                for j in 0..pow3(n) {
                    let x = TernaryWord::from_index(n, j);
                    assert_eq!(block_sensitivity_u(&g, &x).unwrap(), brute_bs(&g, &x));
                    assert_eq!(certificate_complexity_u(&g, &x).unwrap(), brute_cc(&g, &x));
                    assert!(block_sensitivity_u(&g, &x).unwrap() >= sensitivity_u(&g, &x).unwrap());
                }
            }
        }
        // n = 3 certificates against the direct search
        for bits in (0..256u64).step_by(5) {
            let g = hazard_free_extension(&BooleanFunction::from_bits(3, bits).unwrap()).unwrap();
            for j in 0..27 {
                let x = TernaryWord::from_index(3, j);
                assert_eq!(certificate_complexity_u(&g, &x).unwrap(), brute_cc(&g, &x));
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let maj3 = ext(Family::Maj, 3);
        assert_eq!(certificate_complexity_u(&maj3, &w("01u")).unwrap(), 3);
        assert_eq!(cc_u(&ext(Family::Mux, 2)).unwrap(), 4);
        let c = TernaryFunction::constant(2, One).unwrap();
        assert_eq!(certificate_complexity_u(&c, &w("u0")).unwrap(), 0);
        let cert = certificate_u(&maj3, &w("110")).unwrap();
        assert_eq!(cert.positions, vec![0, 1]);
    }

    #[test]
    fn per_value_equalities_with_prime_sizes() {
        for bits in 0..256u64 {
            let g = hazard_free_extension(&BooleanFunction::from_bits(3, bits).unwrap()).unwrap();
            let e = extremal_sizes_of(&g).unwrap();
            let s = sensitivity_profile(&g).unwrap();
            let c = certificate_profile(&g).unwrap();
            if e.m > 0 && e.big_m > 0 {
                assert_eq!((s.one, c.one), (e.k1, e.k1), "{bits:#x}");
                assert_eq!((s.zero, c.zero), (e.k2, e.k2), "{bits:#x}");
            }
        }
    }

    #[test]
    fn boolean_examples() {
        let f = |fam, n| make_family(FamilySpec::new(fam, n).unwrap()).unwrap();
        assert_eq!(boolean_measures(&f(Family::And, 3)).unwrap().s, 3);
        for n in 1..=5 {
            assert_eq!(boolean_measures(&f(Family::Parity, n)).unwrap().s, n);
        }
        let mux1 = boolean_measures(&f(Family::Mux, 1)).unwrap();
        assert_eq!(mux1.s, 2);
        assert!(mux1.s <= mux1.bs && mux1.bs <= mux1.cc);
    }

    #[test]
    fn stability_examples() {
        let and3 = ext(Family::And, 3);
        assert_eq!(stable_sensitivity(&and3, &w("111")).unwrap(), 3);
        assert_eq!(
            stable_sensitivity(&and3, &w("u11")),
            Err(Error::UnstableOutput)
        );
        let c = TernaryFunction::constant(2, One).unwrap();
        assert_eq!(stabs(&c).unwrap(), 0);
        for j in 0..27 {
            let x = TernaryWord::from_index(3, j);
            if let Ok(s) = stable_sensitivity(&and3, &x) {
                assert!(stability_sensitivity(&and3, &x).unwrap() >= s);
            }
        }
    }

    #[test]
    fn plurality_examples() {
        assert_eq!(plurality(&[Zero, Zero, One]).unwrap(), Zero);
        assert_eq!(
            plurality(&[Unknown, Unknown, Unknown, Zero, One]).unwrap(),
            Unknown
        );
        assert_eq!(plurality(&[Zero, One]), Err(Error::PluralityTie));
        assert_eq!(plurality(&[]), Err(Error::EmptyMultiset));
    }

    #[test]
    fn reconstruction_examples() {
        let c = TernaryFunction::constant(3, One).unwrap();
        let o = BallOracle::from_function(&c, &w("0u1"), 0).unwrap();
        assert_eq!(reconstruct_from_ball(&o, 0).unwrap(), c);
        let par2 = ext(Family::Parity, 2);
        let o = BallOracle::from_function(&par2, &w("00"), 2).unwrap();
        assert_eq!(reconstruct_from_ball(&o, 2).unwrap(), par2);
        let o = BallOracle::from_function(&par2, &w("00"), 1).unwrap();
        assert!(reconstruct_from_ball(&o, 2).is_err());
    }
}
