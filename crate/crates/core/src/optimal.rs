//! Exact optimal depth and size by memoized search over partial assignments.
//!
//! A partial assignment gives every variable one of `unset, 0, u, 1`, encoded
//! base 4. The remaining `u` budget of a state is `k` minus the number of `u`
//! entries, so within one search the assignment alone is a complete memo key.

use crate::error::{Error, Result};
use crate::functions::{hazard_free_extension, BooleanFunction};
use crate::kernel::{pow3, Ternary};
use crate::trees::{Arity, DecisionTree, Mode, Node};

/// Largest variable count for the binary search (`3^n` live states).
pub const MAX_BOOLEAN_SEARCH_VARS: usize = 10;
/// Largest variable count for the ternary searches (`4^n` states).
pub const MAX_TERNARY_SEARCH_VARS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Depth,
    Size,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalResult {
    pub value: usize,
    pub witness: DecisionTree,
}

pub fn optimal_depth(f: &BooleanFunction) -> Result<OptimalResult> {
    optimal(f, Mode::Boolean, Objective::Depth)
}

pub fn optimal_size(f: &BooleanFunction) -> Result<OptimalResult> {
    optimal(f, Mode::Boolean, Objective::Size)
}

pub fn optimal_depth_u(f: &BooleanFunction) -> Result<OptimalResult> {
    optimal(f, Mode::HazardFree, Objective::Depth)
}

pub fn optimal_size_u(f: &BooleanFunction) -> Result<OptimalResult> {
    optimal(f, Mode::HazardFree, Objective::Size)
}

pub fn optimal_depth_k(f: &BooleanFunction, k: usize) -> Result<OptimalResult> {
    optimal(f, Mode::KBit(k), Objective::Depth)
}

pub fn optimal_size_k(f: &BooleanFunction, k: usize) -> Result<OptimalResult> {
    optimal(f, Mode::KBit(k), Objective::Size)
}

/// Optimal tree for `f` in the given mode. Ties go to the smallest variable
/// index. In k-bit mode a `u` branch with no budget left is a single `u` leaf.
pub fn optimal(f: &BooleanFunction, mode: Mode, objective: Objective) -> Result<OptimalResult> {
    let n = f.n();
    let (limit, what) = match mode {
        Mode::Boolean => (MAX_BOOLEAN_SEARCH_VARS, "boolean optimal search"),
        _ => (MAX_TERNARY_SEARCH_VARS, "ternary optimal search"),
    };
    if n > limit {
        return Err(Error::TooLarge { what, n, limit });
    }
    let budget = match mode {
        Mode::KBit(k) if k > n => {
            return Err(Error::OutOfRange {
                what: "k",
                value: k,
                max: n,
            })
        }
        Mode::KBit(k) => Some(k),
        _ => None,
    };
    let ternary = match mode {
        Mode::Boolean => Vec::new(),
        _ => hazard_free_extension(f)?.require_table()?.to_vec(),
    };
    let mut search = Search {
        n,
        boolean: mode == Mode::Boolean,
        objective,
        budget,
        table: f.table(),
        ternary,
        memo: vec![UNKNOWN; 1 << (2 * n)],
        scratch: Vec::new(),
    };
    let mut rho = vec![0u8; n];
    let value = search.solve(&mut rho, 0, 0) as usize;
    let root = search.build(&mut rho, 0, 0);
    let arity = if search.boolean {
        Arity::Binary
    } else {
        Arity::Ternary
    };
    Ok(OptimalResult {
        value,
        witness: DecisionTree::new(arity, root)?,
    })
}

const LEAF: u8 = u8::MAX;

#[derive(Clone, Copy)]
struct Entry {
    value: u32,
    choice: u8,
    leaf: Ternary,
}

const UNKNOWN: Entry = Entry {
    value: u32::MAX,
    choice: LEAF,
    leaf: Ternary::Unknown,
};

struct Search<'a> {
    n: usize,
    boolean: bool,
    objective: Objective,
    budget: Option<usize>,
    table: &'a [bool],
    ternary: Vec<Ternary>,
    memo: Vec<Entry>,
    scratch: Vec<usize>,
}

// rho entries: 0 unset, 1 + digit of the assigned value
impl Search<'_> {
    fn answers(&self) -> &'static [u8] {
        if self.boolean {
            &[0, 2]
        } else {
            &[0, 1, 2]
        }
    }

    fn exhausted(&self, used_u: usize) -> bool {
        self.budget.is_some_and(|k| used_u >= k)
    }

    fn solve(&mut self, rho: &mut [u8], key: usize, used_u: usize) -> u32 {
        if self.memo[key].value != u32::MAX {
            return self.memo[key].value;
        }
        if let Some(v) = self.constant(rho, used_u) {
            let value = match self.objective {
                Objective::Depth => 0,
                Objective::Size => 1,
            };
            self.memo[key] = Entry {
                value,
                choice: LEAF,
                leaf: v,
            };
            return value;
        }
        let mut best = Entry {
            value: u32::MAX,
            choice: LEAF,
            leaf: Ternary::Unknown,
        };
        for i in 0..self.n {
            if rho[i] != 0 {
                continue;
            }
            let mut acc = 0u32;
            for &d in self.answers() {
                let child = if d == 1 && self.exhausted(used_u) {
                    // unreachable under the budget: a lone u leaf
                    match self.objective {
                        Objective::Depth => 0,
                        Objective::Size => 1,
                    }
                } else {
                    rho[i] = d + 1;
                    let child_key = key + (d as usize + 1) * (1 << (2 * i));
                    let v = self.solve(rho, child_key, used_u + (d == 1) as usize);
                    rho[i] = 0;
                    v
                };
                acc = match self.objective {
                    Objective::Depth => acc.max(child),
                    Objective::Size => acc + child,
                };
            }
            if self.objective == Objective::Depth {
                acc += 1;
            }
            if acc < best.value {
                best.value = acc;
                best.choice = i as u8;
            }
        }
        self.memo[key] = best;
        best.value
    }

    fn build(&self, rho: &mut [u8], key: usize, used_u: usize) -> Node {
        let entry = self.memo[key];
        if entry.choice == LEAF {
            return Node::Leaf(entry.leaf);
        }
        let i = entry.choice as usize;
        let children = self
            .answers()
            .iter()
            .map(|&d| {
                if d == 1 && self.exhausted(used_u) {
                    return Node::Leaf(Ternary::Unknown);
                }
                rho[i] = d + 1;
                let child_key = key + (d as usize + 1) * (1 << (2 * i));
                let node = self.build(rho, child_key, used_u + (d == 1) as usize);
                rho[i] = 0;
                node
            })
            .collect();
        Node::query(i, children)
    }

    /// The common value of all completions of `rho` allowed by the budget,
    /// or `None` once two distinct values are seen.
    fn constant(&mut self, rho: &[u8], used_u: usize) -> Option<Ternary> {
        let n = self.n;
        let mut unset = std::mem::take(&mut self.scratch);
        unset.clear();
        unset.extend((0..n).filter(|&i| rho[i] == 0));
        let result = if self.boolean {
            self.constant_boolean(rho, &unset)
        } else {
            let allowed = self.budget.map_or(n, |k| k - used_u);
            self.constant_ternary(rho, &unset, allowed)
        };
        self.scratch = unset;
        result
    }

    fn constant_boolean(&self, rho: &[u8], unset: &[usize]) -> Option<Ternary> {
        let n = self.n;
        let base: usize = (0..n)
            .filter(|&i| rho[i] == 3)
            .map(|i| 1 << (n - 1 - i))
            .sum();
        let first = self.table[base];
        for mask in 1..1usize << unset.len() {
            let idx = unset
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .fold(base, |acc, (_, &i)| acc | 1 << (n - 1 - i));
            if self.table[idx] != first {
                return None;
            }
        }
        Some(Ternary::from(first))
    }

    fn constant_ternary(&self, rho: &[u8], unset: &[usize], allowed: usize) -> Option<Ternary> {
        let n = self.n;
        let weight = |i: usize| pow3(n - 1 - i);
        let base: usize = (0..n)
            .filter(|&i| rho[i] != 0)
            .map(|i| (rho[i] as usize - 1) * weight(i))
            .sum();
        let all_u: usize = unset.iter().map(|&i| weight(i)).sum();
        if allowed >= unset.len() {
            // every completion lies above the all-u one
            let bottom = self.ternary[base + all_u];
            if bottom.is_stable() {
                return Some(bottom);
            }
            // bottom is u: constant iff every stable completion is u
            for mask in 0..1usize << unset.len() {
                let idx = unset
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (j, &i)| acc + 2 * (mask >> j & 1) * weight(i));
                if self.ternary[idx] != Ternary::Unknown {
                    return None;
                }
            }
            return Some(Ternary::Unknown);
        }
        // odometer over {0,u,1} on unset positions, skipping over-budget words
        let m = unset.len();
        let mut digits = vec![0usize; m];
        let mut first = None;
        loop {
            if digits.iter().filter(|&&d| d == 1).count() <= allowed {
                let idx = unset
                    .iter()
                    .zip(&digits)
                    .fold(base, |acc, (&i, &d)| acc + d * weight(i));
                let v = self.ternary[idx];
                match first {
                    None => first = Some(v),
                    Some(f) if f != v => return None,
                    _ => {}
                }
            }
            let mut j = 0;
            while j < m && digits[j] == 2 {
                digits[j] = 0;
                j += 1;
            }
            if j == m {
                return first;
            }
            digits[j] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{make_family, Family, FamilySpec, TernaryFunction};
    use crate::kernel::TernaryWord;

    fn family(f: Family, n: usize) -> BooleanFunction {
        make_family(FamilySpec::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn boolean_examples() {
        let mux1 = family(Family::Mux, 1);
        assert_eq!(optimal_depth(&mux1).unwrap().value, 2);
        assert_eq!(optimal_size(&mux1).unwrap().value, 4);
        assert_eq!(optimal_size(&family(Family::And, 3)).unwrap().value, 4);
        let par3 = family(Family::Parity, 3);
        assert_eq!(optimal_depth(&par3).unwrap().value, 3);
        assert_eq!(optimal_size(&par3).unwrap().value, 8);
    }

    #[test]
    fn ternary_examples() {
        let mux1 = family(Family::Mux, 1);
        assert_eq!(optimal_depth_u(&mux1).unwrap().value, 3);
        assert_eq!(optimal_size_u(&family(Family::And, 2)).unwrap().value, 7);
        assert_eq!(optimal_size_u(&family(Family::Parity, 2)).unwrap().value, 7);
        assert_eq!(optimal_depth_k(&mux1, 0).unwrap().value, 2);
        assert_eq!(
            optimal_depth_k(&family(Family::Mux, 2), 1).unwrap().value,
            4
        );
        assert_eq!(optimal_depth_k(&mux1, 1).unwrap().value, 3);
    }

    #[test]
    fn degenerate_and_limits() {
        let c = BooleanFunction::constant(0, true).unwrap();
        let r = optimal_size_u(&c).unwrap();
        assert_eq!((r.value, r.witness.to_sexpr()), (1, "1".to_string()));
        assert_eq!(optimal_depth(&c).unwrap().value, 0);
        let mux1 = family(Family::Mux, 1);
        assert!(matches!(
            optimal_depth_k(&mux1, 4),
            Err(Error::OutOfRange { .. })
        ));
        let big = BooleanFunction::constant(MAX_TERNARY_SEARCH_VARS + 1, false).unwrap();
        assert!(matches!(optimal_depth_u(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn witnesses_validate() {
        for bits in 0..256u64 {
            let f = BooleanFunction::from_bits(3, bits).unwrap();
            for (mode, obj) in [
                (Mode::Boolean, Objective::Depth),
                (Mode::Boolean, Objective::Size),
                (Mode::HazardFree, Objective::Depth),
                (Mode::HazardFree, Objective::Size),
                (Mode::KBit(1), Objective::Depth),
                (Mode::KBit(1), Objective::Size),
            ] {
                let r = optimal(&f, mode, obj).unwrap();
                r.witness.check(&f, mode).unwrap();
                let measured = match obj {
                    Objective::Depth => r.witness.depth(),
                    Objective::Size => r.witness.size(),
                };
                assert_eq!(measured, r.value, "{bits:#x} {mode:?} {obj:?}");
            }
        }
    }

    /// Unmemoized recursion over restricted ternary functions.
    fn naive(g: &TernaryFunction, obj: Objective) -> usize {
        let t = g.require_table().unwrap();
        if t.iter().all(|&v| v == t[0]) {
            return match obj {
                Objective::Depth => 0,
                Objective::Size => 1,
            };
        }
        (0..g.n())
            .map(|i| {
                let vals = Ternary::ALL.map(|a| naive(&g.restrict(i, a).unwrap(), obj));
                match obj {
                    Objective::Depth => 1 + vals.iter().max().unwrap(),
                    Objective::Size => vals.iter().sum(),
                }
            })
            .min()
            .unwrap()
    }

    #[test]
    fn ternary_search_matches_naive_recursion() {
        for n in 0..=2usize {
            for bits in 0..(1u64 << (1 << n)) {
                let f = BooleanFunction::from_bits(n, bits).unwrap();
                let g = hazard_free_extension(&f).unwrap();
                for obj in [Objective::Depth, Objective::Size] {
                    let fast = optimal(&f, Mode::HazardFree, obj).unwrap().value;
                    assert_eq!(fast, naive(&g, obj), "{n} {bits:#x} {obj:?}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_budget() {
        for bits in (0..256u64).step_by(7) {
            let f = BooleanFunction::from_bits(3, bits).unwrap();
            for obj in [Objective::Depth, Objective::Size] {
                let vals: Vec<usize> = (0..=3)
                    .map(|k| optimal(&f, Mode::KBit(k), obj).unwrap().value)
                    .collect();
                assert!(vals.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(vals[3], optimal(&f, Mode::HazardFree, obj).unwrap().value);
            }
            assert_eq!(
                optimal_depth_k(&f, 0).unwrap().value,
                optimal_depth(&f).unwrap().value
            );
        }
    }

    #[test]
    fn boolean_witness_agrees_on_stable_words() {
        let f = family(Family::Maj, 3);
        let r = optimal_size(&f).unwrap();
        for idx in 0..8 {
            let x = TernaryWord::from_boolean_index(3, idx);
            assert_eq!(r.witness.evaluate(&x).unwrap(), Ternary::from(f.value(idx)));
        }
    }
}
