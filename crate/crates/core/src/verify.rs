//! Exhaustive and sampled checking of the quantitative relations between
//! trees, prime implicants and the sensitivity measures.
//!
//! Per-function checks run over enumerated or sampled functions; family
//! checks run once on fixed instances. Failures are reported, never raised.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{
    hazard_free_from_boolean, k_hazard_free_from_boolean, mux_trees, smalldepth_tree,
};
use crate::error::{Error, Result};
use crate::functions::{
    hazard_free_extension, lazy_extension, make_family, BooleanFunction, Family, FamilySpec,
    FunctionLiteral, TernaryFunction,
};
use crate::implicants::{extremal_sizes_of, primes_of, ExtremalSizes, ImplicantKind};
use crate::kernel::{pow3, Ternary, TernaryWord};
use crate::measures::{
    block_sensitivity_profile, boolean_measures, certificate_complexity_u, certificate_profile,
    plurality, reconstruct_from_ball, sensitivity_profile, sensitivity_u,
    stability_sensitivity_profile, stable_sensitivity_profile, BallOracle, BooleanMeasures,
    ByValue, MAX_BOOLEAN_MEASURE_VARS, MAX_EXACT_MEASURE_VARS,
};
use crate::optimal::{
    optimal, Objective, OptimalResult, MAX_BOOLEAN_SEARCH_VARS, MAX_TERNARY_SEARCH_VARS,
};
use crate::trees::Mode;

/// Largest variable count for [`enumerate_functions`].
pub const MAX_ENUMERATION_VARS: usize = 4;
/// Largest variable count for [`sample_functions`].
pub const MAX_SAMPLE_VARS: usize = 6;
/// Largest variable count for per-function checks.
pub const MAX_CHECK_VARS: usize = 4;
/// Largest table size the tabulated measures are computed for.
const MAX_TABLE_VARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    Nondegenerate,
    NpnRepresentatives,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "nondegenerate" => Ok(Filter::Nondegenerate),
            "npn" | "npn_representatives" => Ok(Filter::NpnRepresentatives),
            _ => Err(Error::Parse(format!(
                "unknown filter {s:?} (expected all, nondegenerate or npn)"
            ))),
        }
    }
}

/// All functions on `n` variables in ascending truth-table order, filtered.
/// NPN representatives are the smallest table of each class.
pub fn enumerate_functions(n: usize, filter: Filter) -> Result<Vec<BooleanFunction>> {
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::TooLarge {
            what: "function enumeration",
            n,
            limit: MAX_ENUMERATION_VARS,
        });
    }
    let count = 1u64 << (1 << n);
    let all = (0..count).map(|bits| BooleanFunction::from_bits(n, bits));
    match filter {
        Filter::All => all.collect(),
        Filter::Nondegenerate => all
            .filter(|f| f.as_ref().map_or(true, |f| f.is_nondegenerate()))
            .collect(),
        Filter::NpnRepresentatives => {
            let maps = npn_input_maps(n);
            let mut seen = vec![false; count as usize];
            let mut reps = Vec::new();
            for bits in 0..count {
                if seen[bits as usize] {
                    continue;
                }
                reps.push(BooleanFunction::from_bits(n, bits)?);
                for map in &maps {
                    let image = permute_table(bits, map);
                    let mask = count - 1;
                    seen[image as usize] = true;
                    seen[(!image & mask) as usize] = true;
                }
            }
            Ok(reps)
        }
    }
}

/// Input index maps for every permutation and negation of `n` inputs.
fn npn_input_maps(n: usize) -> Vec<Vec<usize>> {
    let mut perms = vec![Vec::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..n)
                    .filter(|i| !p.contains(i))
                    .map(|i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut maps = Vec::new();
    for perm in &perms {
        for neg in 0..1usize << n {
            let map = (0..1usize << n)
                .map(|idx| {
                    let moved = (0..n).fold(0, |acc, j| acc | ((idx >> j) & 1) << perm[j]);
                    moved ^ neg
                })
                .collect();
            maps.push(map);
        }
    }
    maps
}

fn permute_table(bits: u64, map: &[usize]) -> u64 {
    map.iter()
        .enumerate()
        .fold(0, |acc, (idx, &src)| acc | ((bits >> src) & 1) << idx)
}

/// `count` uniformly random functions on `n` variables from a fixed seed.
pub fn sample_functions(n: usize, count: usize, seed: u64) -> Result<Vec<BooleanFunction>> {
    if n > MAX_SAMPLE_VARS {
        return Err(Error::TooLarge {
            what: "function sampling",
            n,
            limit: MAX_SAMPLE_VARS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if n == MAX_SAMPLE_VARS {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    };
    (0..count)
        .map(|_| BooleanFunction::from_bits(n, rng.random::<u64>() & mask))
        .collect()
}

pub fn function_id(f: &BooleanFunction) -> String {
    FunctionLiteral {
        function: f.clone(),
        family: None,
    }
    .to_string()
}

/// Every measure of one function; `None` marks a field above its limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub function: String,
    pub depth: Option<usize>,
    pub size: Option<usize>,
    pub depth_u: Option<usize>,
    pub size_u: Option<usize>,
    pub s_u: Option<ByValue>,
    pub bs_u: Option<ByValue>,
    pub cc_u: Option<ByValue>,
    pub extremal: Option<ExtremalSizes>,
    pub boolean: Option<BooleanMeasures>,
    pub stabs: Option<ByValue>,
    pub slys: Option<ByValue>,
}

pub const REPORT_COLUMNS: [&str; 27] = [
    "function", "depth", "size", "depth_u", "size_u", "s_u", "s_u_0", "s_u_u", "s_u_1", "bs_u",
    "bs_u_0", "bs_u_u", "bs_u_1", "cc_u", "cc_u_0", "cc_u_u", "cc_u_1", "k1", "k2", "m", "M", "s",
    "bs", "cc", "stabs", "slys", "skipped",
];

impl MeasureReport {
    pub fn compute(f: &BooleanFunction, function: impl Into<String>) -> Result<Self> {
        let n = f.n();
        let within = |limit: usize| n <= limit;
        let opt = |mode, obj| -> Result<Option<usize>> {
            let limit = match mode {
                Mode::Boolean => MAX_BOOLEAN_SEARCH_VARS,
                _ => MAX_TERNARY_SEARCH_VARS,
            };
            if !within(limit) {
                return Ok(None);
            }
            Ok(Some(optimal(f, mode, obj)?.value))
        };
        let ext = if within(MAX_TABLE_VARS) {
            Some(hazard_free_extension(f)?)
        } else {
            None
        };
        let exact = ext.as_ref().filter(|_| within(MAX_EXACT_MEASURE_VARS));
        Ok(MeasureReport {
            function: function.into(),
            depth: opt(Mode::Boolean, Objective::Depth)?,
            size: opt(Mode::Boolean, Objective::Size)?,
            depth_u: opt(Mode::HazardFree, Objective::Depth)?,
            size_u: opt(Mode::HazardFree, Objective::Size)?,
            s_u: ext.as_ref().map(sensitivity_profile).transpose()?,
            bs_u: exact.map(block_sensitivity_profile).transpose()?,
            cc_u: exact.map(certificate_profile).transpose()?,
            extremal: ext.as_ref().map(extremal_sizes_of).transpose()?,
            boolean: within(MAX_BOOLEAN_MEASURE_VARS)
                .then(|| boolean_measures(f))
                .transpose()?,
            stabs: ext.as_ref().map(stable_sensitivity_profile).transpose()?,
            slys: ext
                .as_ref()
                .map(stability_sensitivity_profile)
                .transpose()?,
        })
    }

    /// Whether any field was skipped for being above its limit.
    pub fn is_partial(&self) -> bool {
        self.depth.is_none()
            || self.size.is_none()
            || self.depth_u.is_none()
            || self.size_u.is_none()
            || self.s_u.is_none()
            || self.bs_u.is_none()
            || self.cc_u.is_none()
            || self.extremal.is_none()
            || self.boolean.is_none()
            || self.stabs.is_none()
    }

    pub fn tsv_header() -> String {
        REPORT_COLUMNS.join("\t")
    }

    pub fn tsv_row(&self) -> String {
        fn cell(v: Option<usize>) -> String {
            v.map_or_else(|| "skipped(limit)".to_string(), |v| v.to_string())
        }
        fn by_value(v: Option<ByValue>) -> [String; 4] {
            [
                cell(v.map(|b| b.max())),
                cell(v.map(|b| b.zero)),
                cell(v.map(|b| b.unknown)),
                cell(v.map(|b| b.one)),
            ]
        }
        let mut cells = vec![
            self.function.clone(),
            cell(self.depth),
            cell(self.size),
            cell(self.depth_u),
            cell(self.size_u),
        ];
        cells.extend(by_value(self.s_u));
        cells.extend(by_value(self.bs_u));
        cells.extend(by_value(self.cc_u));
        let e = self.extremal;
        cells.extend([
            cell(e.map(|e| e.k1)),
            cell(e.map(|e| e.k2)),
            cell(e.map(|e| e.m)),
            cell(e.map(|e| e.big_m)),
        ]);
        let b = self.boolean;
        cells.extend([
            cell(b.map(|b| b.s)),
            cell(b.map(|b| b.bs)),
            cell(b.map(|b| b.cc)),
        ]);
        cells.push(cell(self.stabs.map(|v| v.max())));
        cells.push(cell(self.slys.map(|v| v.max())));
        cells.push(if self.is_partial() { "yes" } else { "no" }.to_string());
        cells.join("\t")
    }
}

/// Lazily computed data shared by the checks of one function.
pub struct Subject<'a> {
    pub f: &'a BooleanFunction,
    ext: OnceCell<TernaryFunction>,
    size: OnceCell<OptimalResult>,
    depth: OnceCell<OptimalResult>,
    size_u: OnceCell<OptimalResult>,
    depth_u: OnceCell<OptimalResult>,
    extremal: OnceCell<ExtremalSizes>,
    s_u: OnceCell<ByValue>,
    bs_u: OnceCell<ByValue>,
    cc_u: OnceCell<ByValue>,
    boolean: OnceCell<BooleanMeasures>,
}

type CheckResult = std::result::Result<(), String>;

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

macro_rules! cached {
    ($name:ident, $ty:ty, $body:expr) => {
        pub fn $name(&self) -> std::result::Result<&$ty, String> {
            if let Some(v) = self.$name.get() {
                return Ok(v);
            }
            let v: $ty = ok($body(self))?;
            Ok(self.$name.get_or_init(|| v))
        }
    };
}

impl<'a> Subject<'a> {
    pub fn new(f: &'a BooleanFunction) -> Self {
        Subject {
            f,
            ext: OnceCell::new(),
            size: OnceCell::new(),
            depth: OnceCell::new(),
            size_u: OnceCell::new(),
            depth_u: OnceCell::new(),
            extremal: OnceCell::new(),
            s_u: OnceCell::new(),
            bs_u: OnceCell::new(),
            cc_u: OnceCell::new(),
            boolean: OnceCell::new(),
        }
    }

    cached!(ext, TernaryFunction, |s: &Self| hazard_free_extension(s.f));
    cached!(size, OptimalResult, |s: &Self| optimal(
        s.f,
        Mode::Boolean,
        Objective::Size
    ));
    cached!(depth, OptimalResult, |s: &Self| optimal(
        s.f,
        Mode::Boolean,
        Objective::Depth
    ));
    cached!(size_u, OptimalResult, |s: &Self| optimal(
        s.f,
        Mode::HazardFree,
        Objective::Size
    ));
    cached!(depth_u, OptimalResult, |s: &Self| optimal(
        s.f,
        Mode::HazardFree,
        Objective::Depth
    ));
    cached!(boolean, BooleanMeasures, |s: &Self| boolean_measures(s.f));

    pub fn extremal(&self) -> std::result::Result<&ExtremalSizes, String> {
        if let Some(v) = self.extremal.get() {
            return Ok(v);
        }
        let v = ok(extremal_sizes_of(self.ext()?))?;
        Ok(self.extremal.get_or_init(|| v))
    }

    pub fn s_u(&self) -> std::result::Result<&ByValue, String> {
        if let Some(v) = self.s_u.get() {
            return Ok(v);
        }
        let v = ok(sensitivity_profile(self.ext()?))?;
        Ok(self.s_u.get_or_init(|| v))
    }

    pub fn bs_u(&self) -> std::result::Result<&ByValue, String> {
        if let Some(v) = self.bs_u.get() {
            return Ok(v);
        }
        let v = ok(block_sensitivity_profile(self.ext()?))?;
        Ok(self.bs_u.get_or_init(|| v))
    }

    pub fn cc_u(&self) -> std::result::Result<&ByValue, String> {
        if let Some(v) = self.cc_u.get() {
            return Ok(v);
        }
        let v = ok(certificate_profile(self.ext()?))?;
        Ok(self.cc_u.get_or_init(|| v))
    }

    fn constant_skip(&self) -> Option<&'static str> {
        self.f
            .is_constant()
            .map(|_| "constant function: k1 + k2 - 1 bound does not apply")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Run on every function of a sweep.
    PerFunction,
    /// Run once on fixed family instances.
    Family,
}

pub struct TheoremCheck {
    pub id: &'static str,
    /// The relation checked, in plain notation.
    pub statement: &'static str,
    pub scope: Scope,
    /// Reason to skip, if the check does not apply.
    pub skip: fn(&Subject) -> Option<&'static str>,
    pub check: fn(&Subject) -> CheckResult,
}

impl fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremCheck")
            .field("id", &self.id)
            .finish()
    }
}

fn never(_: &Subject) -> Option<&'static str> {
    None
}

fn skip_constant(s: &Subject) -> Option<&'static str> {
    s.constant_skip()
}

fn extension_oracle(s: &Subject) -> CheckResult {
    let fast = s.ext()?;
    let direct = ok(lazy_extension(s.f).tabulate(MAX_TABLE_VARS))?;
    ensure(fast == &direct, || {
        "merge recurrence differs from resolution enumeration".into()
    })
}

fn natural(s: &Subject) -> CheckResult {
    let g = s.ext()?;
    ensure(ok(g.is_natural())?, || "extension is not natural".into())?;
    ensure(ok(g.is_weakly_hazard_free())?, || {
        "extension is not weakly hazard-free".into()
    })
}

fn strip(s: &Subject) -> CheckResult {
    let t = &s.size_u()?.witness;
    let b = ok(t.strip_u_subtrees())?;
    ok(b.check(s.f, Mode::Boolean))?;
    ensure(t.size() + 1 >= 2 * b.size(), || {
        format!("size {} < 2*{} - 1", t.size(), b.size())
    })
}

fn size_lower(s: &Subject) -> CheckResult {
    let (size, size_u) = (s.size()?.value, s.size_u()?.value);
    ensure(2 * size - 1 <= size_u, || {
        format!("size={size} size_u={size_u}")
    })
}

fn size_upper(s: &Subject) -> CheckResult {
    let (size, size_u) = (s.size()?.value, s.size_u()?.value);
    ensure(size_u < (1usize << size), || {
        format!("size={size} size_u={size_u}")
    })
}

fn product_construction(s: &Subject) -> CheckResult {
    let b = &s.size()?.witness;
    let t = ok(hazard_free_from_boolean(b, s.f))?;
    ok(t.check(s.f, Mode::HazardFree))?;
    ensure(t.size() < 1usize << b.size(), || {
        format!(
            "constructed size {} from boolean size {}",
            t.size(),
            b.size()
        )
    })
}

fn kbit_construction(s: &Subject) -> CheckResult {
    for src in [&s.size()?.witness, &s.depth()?.witness] {
        let (size, depth) = (src.size() as u128, src.depth());
        for k in 0..=2usize.min(s.f.n()) {
            let t = ok(k_hazard_free_from_boolean(src, s.f, k))?;
            ok(t.check(s.f, Mode::KBit(k))).map_err(|e| format!("k={k}: {e}"))?;
            let bound = size.saturating_pow((1u32 << (k + 1)) - 1);
            ensure(t.size_within_budget(k) as u128 <= bound, || {
                format!(
                    "k={k}: size {} > {size}^{}",
                    t.size_within_budget(k),
                    (1 << (k + 1)) - 1
                )
            })?;
            ensure(t.depth() <= (1 << k) * depth, || {
                format!("k={k}: depth {} > 2^{k}*{depth}", t.depth())
            })?;
        }
    }
    Ok(())
}

fn kbit_optimal(s: &Subject) -> CheckResult {
    let n = s.f.n();
    for obj in [Objective::Depth, Objective::Size] {
        let vals: Vec<usize> = (0..=n)
            .map(|k| ok(optimal(s.f, Mode::KBit(k), obj)).map(|r| r.value))
            .collect::<std::result::Result<_, _>>()?;
        ensure(vals.windows(2).all(|w| w[0] <= w[1]), || {
            format!("{obj:?} not monotone: {vals:?}")
        })?;
        let full = match obj {
            Objective::Depth => s.depth_u()?.value,
            Objective::Size => s.size_u()?.value,
        };
        ensure(vals[n] == full, || {
            format!("{obj:?} at k=n is {} not {full}", vals[n])
        })?;
    }
    let d0 = ok(optimal(s.f, Mode::KBit(0), Objective::Depth))?.value;
    ensure(d0 == s.depth()?.value, || {
        format!("depth_0={d0} depth={}", s.depth().unwrap().value)
    })
}

fn implicant_bound(s: &Subject) -> CheckResult {
    let e = s.extremal()?;
    let size_u = s.size_u()?.value;
    ensure(size_u >= e.m + e.big_m, || {
        format!("size_u={size_u} m={} M={}", e.m, e.big_m)
    })
}

fn sensitivity_chain(s: &Subject) -> CheckResult {
    let e = s.extremal()?;
    let (su, bs, cc) = (s.s_u()?.max(), s.bs_u()?.max(), s.cc_u()?.max());
    let chain = [e.k1.max(e.k2), su, bs, cc, e.k1 + e.k2 - 1];
    ensure(chain.windows(2).all(|w| w[0] <= w[1]), || {
        format!("k1={} k2={} s_u={su} bs_u={bs} cc_u={cc}", e.k1, e.k2)
    })
}

fn depth_certificate(s: &Subject) -> CheckResult {
    let cc = s.cc_u()?.max();
    let d = s.depth_u()?.value;
    ensure(cc <= d && d <= 4 * cc.pow(3), || {
        format!("cc_u={cc} depth_u={d}")
    })
}

fn depth_certificate_product(s: &Subject) -> CheckResult {
    let c = s.cc_u()?;
    let d = s.depth_u()?.value;
    let bound = c.unknown * (c.zero + 1) * (c.one + 1);
    ensure(d <= bound, || {
        format!("depth_u={d} cc=({},{},{})", c.zero, c.unknown, c.one)
    })
}

fn prime_sizes(s: &Subject) -> CheckResult {
    let e = s.extremal()?;
    let (sv, cv) = (s.s_u()?, s.cc_u()?);
    ensure(sv.one == e.k1 && cv.one == e.k1, || {
        format!("k1={} s_u(1)={} cc_u(1)={}", e.k1, sv.one, cv.one)
    })?;
    ensure(sv.zero == e.k2 && cv.zero == e.k2, || {
        format!("k2={} s_u(0)={} cc_u(0)={}", e.k2, sv.zero, cv.zero)
    })?;
    ensure(cv.unknown < e.k1 + e.k2, || {
        format!("cc_u(u)={} k1={} k2={}", cv.unknown, e.k1, e.k2)
    })
}

fn sensitivity_maximizers(s: &Subject) -> CheckResult {
    let g = s.ext()?;
    let prof = s.s_u()?;
    for kind in [ImplicantKind::Implicant, ImplicantKind::Implicate] {
        let target = prof.get(kind.value());
        let primes = ok(primes_of(g, kind))?;
        let hit = primes
            .words
            .iter()
            .any(|p| sensitivity_u(g, p).is_ok_and(|v| v == target));
        ensure(hit, || {
            format!("{kind:?}: maximum {target} not attained at a prime")
        })?;
    }
    let n = g.n();
    let target = prof.unknown;
    let hit = (0..pow3(n))
        .map(|i| TernaryWord::from_index(n, i))
        .any(|x| {
            x.unstable_count() == 1
                && g.eval(&x).is_ok_and(|v| v == Ternary::Unknown)
                && sensitivity_u(g, &x).is_ok_and(|v| v == target)
        });
    ensure(hit, || {
        format!("u-output maximum {target} not attained with a single u")
    })
}

fn unstable_vs_boolean(s: &Subject) -> CheckResult {
    let su = s.s_u()?.unknown;
    let b = s.boolean()?.s;
    ensure(su < 2 * b, || format!("s_u(u)={su} s={b}"))
}

fn stability_variants(s: &Subject) -> CheckResult {
    let g = s.ext()?;
    let sv = s.s_u()?;
    let st = ok(stable_sensitivity_profile(g))?;
    let sl = ok(stability_sensitivity_profile(g))?;
    for b in [Ternary::Zero, Ternary::One] {
        ensure(st.get(b) == sv.get(b) && sl.get(b) == sv.get(b), || {
            format!(
                "b={b}: stabs={} slys={} s_u={}",
                st.get(b),
                sl.get(b),
                sv.get(b)
            )
        })?;
    }
    ensure(sl.unknown <= sv.unknown, || {
        format!("slys(u)={} s_u(u)={}", sl.unknown, sv.unknown)
    })?;
    let (su, stabs, slys) = (sv.max(), st.max(), sl.max());
    ensure(su <= 2 * stabs && stabs <= slys && slys <= su, || {
        format!("s_u={su} stabs={stabs} slys={slys}")
    })
}

fn ball_reconstruction(s: &Subject) -> CheckResult {
    let g = s.ext()?;
    let n = g.n();
    let su = s.s_u()?.max();
    let radius = (4 * su).min(n);
    for c in 0..pow3(n) {
        let center = TernaryWord::from_index(n, c);
        let oracle = ok(BallOracle::from_function(g, &center, radius))?;
        let rebuilt =
            ok(reconstruct_from_ball(&oracle, su)).map_err(|e| format!("center {center}: {e}"))?;
        ensure(&rebuilt == g, || {
            format!("center {center}: reconstruction differs")
        })?;
    }
    Ok(())
}

fn family(f: Family, n: usize) -> std::result::Result<BooleanFunction, String> {
    ok(FamilySpec::new(f, n).and_then(make_family))
}

fn mux_depth(_: &Subject) -> CheckResult {
    for n in 1..=2usize {
        let d = ok(optimal(
            &family(Family::Mux, n)?,
            Mode::HazardFree,
            Objective::Depth,
        ))?
        .value;
        ensure(d == (1 << n) + n, || format!("n={n}: depth_u={d}"))?;
    }
    Ok(())
}

fn mux_kbit_depth(_: &Subject) -> CheckResult {
    let f = family(Family::Mux, 2)?;
    for k in 0..=2usize {
        let d = ok(optimal(&f, Mode::KBit(k), Objective::Depth))?.value;
        ensure(d == (1 << k) + 2, || format!("k={k}: depth={d}"))?;
    }
    Ok(())
}

fn mux_size(_: &Subject) -> CheckResult {
    for (n, expected) in [(1usize, 13usize), (2, 55)] {
        let (_, t) = ok(mux_trees(n))?;
        ok(t.check(&family(Family::Mux, n)?, Mode::HazardFree))?;
        ensure(t.size() == expected, || {
            format!("n={n}: constructed size {}", t.size())
        })?;
    }
    let s = ok(optimal(
        &family(Family::Mux, 1)?,
        Mode::HazardFree,
        Objective::Size,
    ))?
    .value;
    ensure((8..=13).contains(&s), || format!("size_u(MUX_1)={s}"))
}

fn mux_kbit_size(_: &Subject) -> CheckResult {
    let f = family(Family::Mux, 2)?;
    for k in 0..=2usize {
        let size = ok(optimal(&f, Mode::KBit(k), Objective::Size))?.value;
        let binom = [1, 2, 1][..=k].iter().sum::<usize>();
        ensure(size >= 4 * binom, || {
            format!("k={k}: size={size} < {}", 4 * binom)
        })?;
    }
    Ok(())
}

fn and_size(_: &Subject) -> CheckResult {
    for n in 1..=3usize {
        let f = family(Family::And, n)?;
        let expected = (1 << (n + 1)) - 1;
        let s = ok(optimal(&f, Mode::HazardFree, Objective::Size))?.value;
        ensure(s == expected, || format!("n={n}: size_u={s}"))?;
        let mut node = crate::trees::Node::Leaf(Ternary::One);
        for i in (0..n).rev() {
            node =
                crate::trees::Node::query(i, vec![crate::trees::Node::Leaf(Ternary::Zero), node]);
        }
        let chain = ok(crate::trees::DecisionTree::new(
            crate::trees::Arity::Binary,
            node,
        ))?;
        let t = ok(hazard_free_from_boolean(&chain, &f))?;
        ensure(t.size() == expected, || {
            format!("n={n}: constructed size {}", t.size())
        })?;
    }
    Ok(())
}

fn parity_size(_: &Subject) -> CheckResult {
    for (n, expected) in [(2usize, 7usize), (3, 15)] {
        let s = ok(optimal(
            &family(Family::Parity, n)?,
            Mode::HazardFree,
            Objective::Size,
        ))?
        .value;
        ensure(s == expected, || format!("n={n}: size_u={s}"))?;
    }
    Ok(())
}

fn smalldepth(_: &Subject) -> CheckResult {
    for n in 1..=2usize {
        let f = family(Family::SmallDepth, n)?;
        let t = ok(smalldepth_tree(n))?;
        ok(t.check(&f, Mode::HazardFree))?;
        ensure(t.depth() == 2 * n + 1, || {
            format!("n={n}: depth {}", t.depth())
        })?;
        ensure(f.is_nondegenerate(), || format!("n={n}: degenerate"))?;
    }
    Ok(())
}

fn mux_measures(_: &Subject) -> CheckResult {
    let g = ok(hazard_free_extension(&family(Family::Mux, 2)?))?;
    let s = ok(sensitivity_profile(&g))?.max();
    let bs = ok(block_sensitivity_profile(&g))?.max();
    let cc = ok(certificate_profile(&g))?.max();
    ensure(s == 4 && bs == 4 && cc == 4, || {
        format!("s_u={s} bs_u={bs} cc_u={cc}")
    })
}

fn maj_certificate(_: &Subject) -> CheckResult {
    let g = ok(hazard_free_extension(&family(Family::Maj, 3)?))?;
    let x: TernaryWord = ok("01u".parse())?;
    let cc = ok(certificate_complexity_u(&g, &x))?;
    ensure(cc == 3, || format!("cc_u at 01u = {cc}"))
}

fn plurality_majority(_: &Subject) -> CheckResult {
    // every multiset of size <= 5 with a strict-majority value
    for len in 1..=5usize {
        let g = ok(hazard_free_extension(&family(Family::Maj, len)?))?;
        for idx in 0..pow3(len) {
            let x = TernaryWord::from_index(len, idx);
            let values = x.digits();
            let majority = Ternary::ALL
                .into_iter()
                .find(|v| 2 * values.iter().filter(|d| *d == v).count() > len);
            if let Some(v) = majority {
                let p = ok(plurality(values))?;
                let m = ok(g.eval(&x))?;
                ensure(p == v && m == v, || format!("{x}: plurality {p}, maj {m}"))?;
            }
        }
    }
    Ok(())
}

/// Every registered check.
pub static CHECKS: &[TheoremCheck] = &[
    TheoremCheck { id: "extension-oracle", statement: "merge recurrence = resolution enumeration", scope: Scope::PerFunction, skip: never, check: extension_oracle },
    TheoremCheck { id: "natural", statement: "f~ is natural and weakly hazard-free", scope: Scope::PerFunction, skip: never, check: natural },
    TheoremCheck { id: "strip", statement: "stripping u-subtrees of an optimal hazard-free tree leaves a tree for f with size_u >= 2*size - 1", scope: Scope::PerFunction, skip: never, check: strip },
    TheoremCheck { id: "size-lower", statement: "2*size(f) - 1 <= size_u(f)", scope: Scope::PerFunction, skip: never, check: size_lower },
    TheoremCheck { id: "size-upper", statement: "size_u(f) <= 2^size(f) - 1", scope: Scope::PerFunction, skip: never, check: size_upper },
    TheoremCheck { id: "product-construction", statement: "product construction computes f~ with size <= 2^size(T) - 1", scope: Scope::PerFunction, skip: never, check: product_construction },
    TheoremCheck { id: "kbit-construction", statement: "k-bit tower valid with size <= s^(2^(k+1)-1) and depth <= 2^k*d, k <= 2", scope: Scope::PerFunction, skip: never, check: kbit_construction },
    TheoremCheck { id: "kbit-optimal", statement: "optimal k-bit depth and size monotone in k; k = 0 depth = depth(f); k = n gives depth_u, size_u", scope: Scope::PerFunction, skip: never, check: kbit_optimal },
    TheoremCheck { id: "implicant-bound", statement: "size_u(f) >= m + M", scope: Scope::PerFunction, skip: never, check: implicant_bound },
    TheoremCheck { id: "sensitivity-chain", statement: "max(k1,k2) <= s_u <= bs_u <= cc_u <= k1 + k2 - 1", scope: Scope::PerFunction, skip: skip_constant, check: sensitivity_chain },
    TheoremCheck { id: "depth-certificate", statement: "cc_u <= depth_u <= 4*cc_u^3", scope: Scope::PerFunction, skip: never, check: depth_certificate },
    TheoremCheck { id: "depth-certificate-product", statement: "depth_u <= cc_u(u)*(cc_u(0)+1)*(cc_u(1)+1)", scope: Scope::PerFunction, skip: never, check: depth_certificate_product },
    TheoremCheck { id: "prime-sizes", statement: "s_u(1) = cc_u(1) = k1, s_u(0) = cc_u(0) = k2, cc_u(u) <= k1 + k2 - 1", scope: Scope::PerFunction, skip: skip_constant, check: prime_sizes },
    TheoremCheck { id: "sensitivity-maximizers", statement: "s_u(1), s_u(0) attained at a prime implicant, implicate; s_u(u) at a word with one u", scope: Scope::PerFunction, skip: skip_constant, check: sensitivity_maximizers },
    TheoremCheck { id: "unstable-vs-boolean", statement: "s_u(u) <= 2*s(f) - 1", scope: Scope::PerFunction, skip: skip_constant, check: unstable_vs_boolean },
    TheoremCheck { id: "stability-variants", statement: "stabs(b) = slys(b) = s_u(b) for stable b; slys(u) <= s_u(u); s_u/2 <= stabs <= slys <= s_u", scope: Scope::PerFunction, skip: never, check: stability_variants },
    TheoremCheck { id: "ball-reconstruction", statement: "values on a ball of radius min(4*s_u, n) determine f~, from every center", scope: Scope::PerFunction, skip: never, check: ball_reconstruction },
    TheoremCheck { id: "mux-depth", statement: "depth_u(MUX_n) = 2^n + n for n = 1, 2", scope: Scope::Family, skip: never, check: mux_depth },
    TheoremCheck { id: "mux-kbit-depth", statement: "k-bit depth of MUX_2 = 2^k + 2 for k <= 2", scope: Scope::Family, skip: never, check: mux_kbit_depth },
    TheoremCheck { id: "mux-size", statement: "constructed MUX trees have size 4^(n+1) - 3^n; 8 <= size_u(MUX_1) <= 13", scope: Scope::Family, skip: never, check: mux_size },
    TheoremCheck { id: "mux-kbit-size", statement: "k-bit size of MUX_2 >= 4 * sum_{i<=k} C(2,i)", scope: Scope::Family, skip: never, check: mux_kbit_size },
    TheoremCheck { id: "and-size", statement: "size_u(AND_n) = 2^(n+1) - 1, optimal and constructed, n <= 3", scope: Scope::Family, skip: never, check: and_size },
    TheoremCheck { id: "parity-size", statement: "parity attains 2*size - 1: size_u = 7, 15 for n = 2, 3", scope: Scope::Family, skip: never, check: parity_size },
    TheoremCheck { id: "smalldepth-tree", statement: "smalldepth tree has depth 2n + 1 and is valid; the family is nondegenerate", scope: Scope::Family, skip: never, check: smalldepth },
    TheoremCheck { id: "mux-measures", statement: "s_u = bs_u = cc_u = 4 for MUX_2", scope: Scope::Family, skip: never, check: mux_measures },
    TheoremCheck { id: "maj-certificate", statement: "cc_u of MAJ_3 at 01u is 3", scope: Scope::Family, skip: never, check: maj_certificate },
    TheoremCheck { id: "plurality-majority", statement: "plurality of a strict-majority multiset equals the MAJ extension", scope: Scope::Family, skip: never, check: plurality_majority },
];

/// Checks by comma-separated ids, or all of them for `"all"`.
pub fn select_checks(list: &str) -> Result<Vec<&'static TheoremCheck>> {
    if list.trim() == "all" {
        return Ok(CHECKS.iter().collect());
    }
    list.split(',')
        .map(|id| {
            let id = id.trim();
            CHECKS
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| Error::Parse(format!("unknown check {id:?}")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub function: String,
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.outcomes.iter().filter(|o| o.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail)
    }

    pub fn is_clean(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn extend(&mut self, other: Report) {
        self.outcomes.extend(other.outcomes);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("function\tcheck\tstatus\tdetail\n");
        for o in &self.outcomes {
            let detail = o.detail.replace(['\t', '\n'], " ");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                o.function, o.check, o.status, detail
            ));
        }
        out
    }
}

fn run_one(subject: &Subject, check: &TheoremCheck, function: &str) -> Outcome {
    let (status, detail) = if let Some(reason) = (check.skip)(subject) {
        (Status::Skip, reason.to_string())
    } else {
        match (check.check)(subject) {
            Ok(()) => (Status::Pass, String::new()),
            Err(e) => (Status::Fail, e),
        }
    };
    Outcome {
        function: function.to_string(),
        check: check.id,
        status,
        detail,
    }
}

/// Runs the per-function checks over `fs` in parallel, then each selected
/// family check once. Output order follows `fs` and the check order.
pub fn run_checks(fs: &[BooleanFunction], checks: &[&TheoremCheck]) -> Report {
    let per: Vec<&TheoremCheck> = checks
        .iter()
        .copied()
        .filter(|c| c.scope == Scope::PerFunction)
        .collect();
    let mut outcomes: Vec<Outcome> = fs
        .par_iter()
        .flat_map_iter(|f| {
            let id = function_id(f);
            let subject = Subject::new(f);
            let too_large = f.n() > MAX_CHECK_VARS;
            per.iter()
                .map(|c| {
                    if too_large {
                        Outcome {
                            function: id.clone(),
                            check: c.id,
                            status: Status::Skip,
                            detail: format!("n above the per-function limit {MAX_CHECK_VARS}"),
                        }
                    } else {
                        run_one(&subject, c, &id)
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let family: Vec<&TheoremCheck> = checks
        .iter()
        .copied()
        .filter(|c| c.scope == Scope::Family)
        .collect();
    // family checks build their own instances and ignore the subject
    let dummy = BooleanFunction::constant(0, false).expect("empty function");
    outcomes.extend(
        family
            .par_iter()
            .map(|c| run_one(&Subject::new(&dummy), c, "families"))
            .collect::<Vec<_>>(),
    );
    Report { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_functions(1, Filter::All).unwrap().len(), 4);
        assert_eq!(enumerate_functions(2, Filter::All).unwrap().len(), 16);
        assert_eq!(
            enumerate_functions(2, Filter::Nondegenerate).unwrap().len(),
            10
        );
        let expected_npn = [1, 2, 4, 14, 222];
        for (n, &expected) in expected_npn.iter().enumerate() {
            assert_eq!(
                enumerate_functions(n, Filter::NpnRepresentatives)
                    .unwrap()
                    .len(),
                expected
            );
        }
        assert!(enumerate_functions(5, Filter::All).is_err());
    }

    #[test]
    fn nondegenerate_count_matches_depends_on() {
        let direct = (0..16u64)
            .map(|b| BooleanFunction::from_bits(2, b).unwrap())
            .filter(|f| (0..2).all(|i| f.depends_on(i).unwrap()))
            .count();
        assert_eq!(direct, 10);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_functions(4, 10, 7).unwrap();
        assert_eq!(a, sample_functions(4, 10, 7).unwrap());
        assert_ne!(a, sample_functions(4, 10, 8).unwrap());
    }

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        let required = [
            "and-size",
            "ball-reconstruction",
            "depth-certificate",
            "depth-certificate-product",
            "extension-oracle",
            "implicant-bound",
            "kbit-construction",
            "kbit-optimal",
            "maj-certificate",
            "mux-depth",
            "mux-kbit-depth",
            "mux-kbit-size",
            "mux-measures",
            "mux-size",
            "natural",
            "parity-size",
            "plurality-majority",
            "prime-sizes",
            "product-construction",
            "sensitivity-chain",
            "sensitivity-maximizers",
            "size-lower",
            "size-upper",
            "smalldepth-tree",
            "stability-variants",
            "strip",
            "unstable-vs-boolean",
        ];
        assert_eq!(sorted, required);
        assert!(CHECKS.iter().all(|c| !c.statement.is_empty()));
    }

    #[test]
    fn constants_pass_or_skip() {
        let fs = vec![
            BooleanFunction::constant(2, false).unwrap(),
            BooleanFunction::constant(3, true).unwrap(),
        ];
        let per: Vec<&TheoremCheck> = CHECKS
            .iter()
            .filter(|c| c.scope == Scope::PerFunction)
            .collect();
        let r = run_checks(&fs, &per);
        assert!(r.is_clean(), "{}", r.to_tsv());
        assert!(r.count(Status::Skip) > 0);
    }

    #[test]
    fn report_is_deterministic() {
        let fs = enumerate_functions(2, Filter::All).unwrap();
        let checks = select_checks("size-lower,implicant-bound").unwrap();
        let a = run_checks(&fs, &checks).to_tsv();
        assert_eq!(a, run_checks(&fs, &checks).to_tsv());
        assert!(select_checks("nope").is_err());
    }

    #[test]
    fn measure_report_row() {
        let f = make_family(FamilySpec::new(Family::Mux, 1).unwrap()).unwrap();
        let r = MeasureReport::compute(&f, "named:mux:1").unwrap();
        assert_eq!((r.depth_u, r.size, r.size_u), (Some(3), Some(4), Some(13)));
        assert_eq!(r.tsv_row().split('\t').count(), REPORT_COLUMNS.len());
        let big = BooleanFunction::constant(9, true).unwrap();
        let r = MeasureReport::compute(&big, "table").unwrap();
        assert!(r.is_partial());
        assert!(r.tsv_row().contains("skipped(limit)"));
    }
}
