//! Numeric instances of parametric solutions: instantiation, normalization,
//! equal-sums presentation, parallel grid search, and a brute-force oracle.
//!
//! The oracle shares no code with the polynomial machinery. It enumerates
//! sorted positive tuples with plain `u128` arithmetic and joins the two
//! sides on their exact `(Σ, Σ³)` signatures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::construction::{derive, Coefficient, ConstructionError, ProblemSpec, SymbolicSolution};
use crate::poly::{Assignment, PolyError, VarId};
use crate::verify::{verify_numeric, NumericTuple, Power};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("tuple fails the k={k} equation: {lhs} != {rhs}")]
    VerificationFailed { k: u32, lhs: BigInt, rhs: BigInt },
    #[error("every entry of the tuple is zero")]
    AllZeroTuple,
    #[error("equal-sums form needs m = n or n = 0")]
    UnsupportedCoefficients,
    #[error("work estimate {estimate} exceeds the ceiling {ceiling}")]
    BudgetExceeded { estimate: u128, ceiling: u128 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("power sums overflow 128-bit arithmetic")]
    Overflow,
}

/// An integer solution. Construction checks both equations, so every value
/// of this type satisfies the system for k = 1 and k = 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericSolution {
    tuple: NumericTuple,
    source: Assignment,
    normalized: bool,
    primitive_gcd: BigInt,
    degenerate: bool,
    trivially_collapsed: bool,
}

impl NumericSolution {
    /// Wraps a bare tuple, rejecting it unless both equations hold.
    pub fn from_tuple(tuple: NumericTuple) -> Result<Self, ExploreError> {
        NumericSolution::checked(tuple, Assignment::new(), false)
    }

    fn checked(tuple: NumericTuple, source: Assignment, degenerate: bool) -> Result<Self, ExploreError> {
        for k in Power::BOTH {
            let check = verify_numeric(&tuple, k);
            if !check.ok {
                return Err(ExploreError::VerificationFailed { k: k.exponent(), lhs: check.lhs, rhs: check.rhs });
            }
        }
        let trivially_collapsed = degenerate || numerically_collapsed(&tuple);
        Ok(NumericSolution {
            tuple,
            source,
            normalized: false,
            primitive_gcd: BigInt::one(),
            degenerate,
            trivially_collapsed,
        })
    }

    pub fn tuple(&self) -> &NumericTuple {
        &self.tuple
    }

    /// The assignment this solution was instantiated from (empty for bare tuples).
    pub fn source(&self) -> &Assignment {
        &self.source
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn primitive_gcd(&self) -> &BigInt {
        &self.primitive_gcd
    }

    /// `A` or `B` evaluated to zero.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    /// Some entry is zero or two entries agree up to sign.
    pub fn trivially_collapsed(&self) -> bool {
        self.trivially_collapsed
    }

    /// Largest absolute entry.
    pub fn height(&self) -> BigInt {
        self.tuple.entries().map(|e| e.abs()).max().unwrap_or_default()
    }
}

fn numerically_collapsed(t: &NumericTuple) -> bool {
    let all: Vec<BigInt> = t.entries().map(|e| e.abs()).collect();
    if all.iter().any(Zero::is_zero) {
        return true;
    }
    let mut seen = BTreeSet::new();
    !all.into_iter().all(|v| seen.insert(v))
}

/// Evaluates every entry of `sol` under `assignment`.
///
/// Concrete `m`/`n` in the solution's spec take precedence over any `m`/`n`
/// in the assignment.
pub fn instantiate(sol: &SymbolicSolution, assignment: &Assignment) -> Result<NumericSolution, ExploreError> {
    let mut values = assignment.clone();
    let mut coefficient = |c: Coefficient, v: VarId| -> Result<BigInt, ExploreError> {
        match c {
            Coefficient::Fixed(x) => {
                values.insert(v, BigInt::from(x));
                Ok(BigInt::from(x))
            }
            Coefficient::Symbolic => assignment.get(&v).cloned().ok_or(PolyError::MissingVariable(v).into()),
        }
    };
    let m = coefficient(sol.spec().m(), VarId::M)?;
    let n = coefficient(sol.spec().n(), VarId::N)?;
    if let Some(missing) = sol.parameters().into_iter().find(|v| !values.contains_key(v)) {
        return Err(PolyError::MissingVariable(missing).into());
    }

    let eval_all = |entries: &[crate::poly::Polynomial]| -> Result<Vec<BigInt>, PolyError> {
        entries.iter().map(|e| e.eval(&values)).collect()
    };
    let xs = eval_all(sol.xs())?;
    let ys = eval_all(sol.ys())?;
    let degenerate = sol.a().eval(&values)?.is_zero() || sol.b().eval(&values)?.is_zero();

    let source = sol.required_variables().into_iter().map(|v| (v, values[&v].clone())).collect();
    NumericSolution::checked(NumericTuple { m, n, xs, ys }, source, degenerate)
}

/// Divides out the gcd of all entries and fixes the global sign so the first
/// nonzero entry (left side first) is positive. Both equations are
/// homogeneous of odd degree, so the result still verifies.
pub fn normalize(s: &NumericSolution) -> Result<NumericSolution, ExploreError> {
    let g = s.tuple.entries().fold(BigInt::zero(), |g, e| g.gcd(e));
    if g.is_zero() {
        return Err(ExploreError::AllZeroTuple);
    }
    let first = s.tuple.entries().find(|e| !e.is_zero()).expect("nonzero gcd");
    let divisor = if first.is_negative() { -&g } else { g.clone() };
    let tuple = NumericTuple {
        m: s.tuple.m.clone(),
        n: s.tuple.n.clone(),
        xs: s.tuple.xs.iter().map(|e| e / &divisor).collect(),
        ys: s.tuple.ys.iter().map(|e| e / &divisor).collect(),
    };
    let mut out = NumericSolution::checked(tuple, s.source.clone(), s.degenerate)?;
    out.normalized = true;
    out.primitive_gcd = &s.primitive_gcd * g;
    Ok(out)
}

/// Positive tuples with equal sums of first and third powers, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EqualSums {
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
}

impl EqualSums {
    pub fn holds(&self, k: Power) -> bool {
        let t = NumericTuple::new(1, 1, self.lhs.clone(), self.rhs.clone());
        verify_numeric(&t, k).ok
    }

    pub fn height(&self) -> BigInt {
        self.lhs.iter().chain(&self.rhs).max().cloned().unwrap_or_default()
    }
}

/// Moves negative entries across the equation with their sign flipped and
/// drops zeros. Legal only when `m = n`, or when `n = 0` and the right side
/// vanishes.
pub fn rearrange_equal_sums(t: &NumericTuple) -> Result<EqualSums, ExploreError> {
    let n_vanishes = t.n.is_zero();
    if !n_vanishes && t.m != t.n {
        return Err(ExploreError::UnsupportedCoefficients);
    }
    let mut out = EqualSums { lhs: Vec::new(), rhs: Vec::new() };
    for x in &t.xs {
        if x.is_positive() {
            out.lhs.push(x.clone());
        } else if x.is_negative() {
            out.rhs.push(-x);
        }
    }
    if !n_vanishes {
        for y in &t.ys {
            if y.is_positive() {
                out.rhs.push(y.clone());
            } else if y.is_negative() {
                out.lhs.push(-y);
            }
        }
    }
    out.lhs.sort();
    out.rhs.sort();
    Ok(out)
}

/// Deduplication key: identifies tuples that differ only by permutation
/// within a side, a global sign flip, or (when an equal-sums form exists)
/// moving entries across.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
}

fn descending(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

pub fn canonical_key(t: &NumericTuple) -> CanonicalKey {
    if let Ok(sums) = rearrange_equal_sums(t) {
        // negation swaps the two sides of an equal-sums form
        let (a, b) = (descending(sums.lhs), descending(sums.rhs));
        let (lhs, rhs) = if a >= b { (a, b) } else { (b, a) };
        return CanonicalKey { lhs, rhs };
    }
    let signed = |flip: bool| {
        let f = |v: &[BigInt]| descending(v.iter().map(|e| if flip { -e } else { e.clone() }).collect());
        CanonicalKey { lhs: f(&t.xs), rhs: f(&t.ys) }
    };
    signed(false).max(signed(true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub spec: ProblemSpec,
    /// Range used for every parameter without an explicit entry in `ranges`.
    pub default_range: RangeInclusive<i64>,
    pub ranges: BTreeMap<VarId, RangeInclusive<i64>>,
    /// Largest admitted absolute entry after normalization.
    pub height_bound: BigInt,
    pub dedup: bool,
    pub filter_degenerate: bool,
    /// Refuse grids with more points than this.
    pub max_points: u64,
}

pub const DEFAULT_MAX_POINTS: u64 = 5_000_000;

impl SearchConfig {
    pub fn new(spec: ProblemSpec, default_range: RangeInclusive<i64>) -> SearchConfig {
        SearchConfig {
            spec,
            default_range,
            ranges: BTreeMap::new(),
            height_bound: BigInt::from(u64::MAX),
            dedup: true,
            filter_degenerate: true,
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn range_for(&self, v: VarId) -> RangeInclusive<i64> {
        self.ranges.get(&v).cloned().unwrap_or_else(|| self.default_range.clone())
    }

    pub fn validate(&self) -> Result<(), ExploreError> {
        let bad = |msg: String| Err(ExploreError::InvalidConfig(msg));
        if self.spec.m() == Coefficient::Symbolic || self.spec.n() == Coefficient::Symbolic {
            return bad("grid search needs concrete m and n".into());
        }
        if self.height_bound < BigInt::one() {
            return bad("height bound must be at least 1".into());
        }
        if self.default_range.is_empty() {
            return bad("default range is empty".into());
        }
        if let Some((v, _)) = self.ranges.iter().find(|(_, r)| r.is_empty()) {
            return bad(format!("range for {v} is empty"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub points: u64,
    pub degenerate: u64,
    pub collapsed: u64,
    pub above_height: u64,
    pub duplicates: u64,
}

impl SearchStats {
    fn merge(mut self, other: SearchStats) -> SearchStats {
        self.points += other.points;
        self.degenerate += other.degenerate;
        self.collapsed += other.collapsed;
        self.above_height += other.above_height;
        self.duplicates += other.duplicates;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Ascending height, ties broken by canonical key.
    pub solutions: Vec<NumericSolution>,
    pub stats: SearchStats,
}

struct Grid {
    vars: Vec<VarId>,
    starts: Vec<i64>,
    sizes: Vec<u64>,
    total: u64,
}

impl Grid {
    fn new(cfg: &SearchConfig, vars: Vec<VarId>) -> Result<Grid, ExploreError> {
        let mut starts = Vec::with_capacity(vars.len());
        let mut sizes = Vec::with_capacity(vars.len());
        let mut total: u128 = 1;
        for &v in &vars {
            let r = cfg.range_for(v);
            let size = (*r.end() as i128 - *r.start() as i128 + 1) as u128;
            total = total.saturating_mul(size);
            starts.push(*r.start());
            sizes.push(size as u64);
        }
        if total > cfg.max_points as u128 {
            return Err(ExploreError::BudgetExceeded { estimate: total, ceiling: cfg.max_points as u128 });
        }
        Ok(Grid { vars, starts, sizes, total: total as u64 })
    }

    /// Mixed-radix decoding; the last variable varies fastest.
    fn point(&self, mut index: u64) -> Assignment {
        let mut values = vec![0i64; self.vars.len()];
        for slot in (0..self.vars.len()).rev() {
            values[slot] = self.starts[slot] + (index % self.sizes[slot]) as i64;
            index /= self.sizes[slot];
        }
        self.vars.iter().copied().zip(values.into_iter().map(BigInt::from)).collect()
    }
}

struct Found {
    index: u64,
    height: BigInt,
    key: CanonicalKey,
    solution: NumericSolution,
}

/// Instantiates the derived solution at every grid point, keeps normalized
/// solutions within the height bound, and returns them deduplicated in
/// ascending height order. The output depends only on `cfg`.
pub fn grid_search(cfg: &SearchConfig) -> Result<SearchOutcome, ExploreError> {
    cfg.validate()?;
    let sol = derive(&cfg.spec)?;
    let grid = Grid::new(cfg, sol.parameters())?;

    let (stats, mut found) = (0..grid.total)
        .into_par_iter()
        .fold(
            || (SearchStats::default(), Vec::new()),
            |(mut stats, mut found), index| {
                stats.points += 1;
                let inst = instantiate(&sol, &grid.point(index)).expect("grid covers every parameter");
                stats.degenerate += inst.degenerate() as u64;
                stats.collapsed += inst.trivially_collapsed() as u64;
                if cfg.filter_degenerate && inst.trivially_collapsed() {
                    return (stats, found);
                }
                let Ok(solution) = normalize(&inst) else {
                    return (stats, found);
                };
                let height = solution.height();
                if height > cfg.height_bound {
                    stats.above_height += 1;
                    return (stats, found);
                }
                let key = canonical_key(solution.tuple());
                found.push(Found { index, height, key, solution });
                (stats, found)
            },
        )
        .reduce(
            || (SearchStats::default(), Vec::new()),
            |(sa, mut fa), (sb, fb)| {
                fa.extend(fb);
                (sa.merge(sb), fa)
            },
        );

    let mut stats = stats;
    if cfg.dedup {
        found.sort_by(|a, b| a.key.cmp(&b.key).then(a.index.cmp(&b.index)));
        let before = found.len();
        found.dedup_by(|later, first| later.key == first.key);
        stats.duplicates = (before - found.len()) as u64;
    }
    found.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.key.cmp(&b.key)).then(a.index.cmp(&b.index)));
    Ok(SearchOutcome { solutions: found.into_iter().map(|f| f.solution).collect(), stats })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub m: u64,
    pub n: u64,
    pub t1: usize,
    pub t2: usize,
    /// Entries range over `1..=bound`.
    pub bound: u64,
    /// Largest admitted work estimate.
    pub ceiling: u128,
}

pub const DEFAULT_ORACLE_CEILING: u128 = 20_000_000;

impl OracleConfig {
    pub fn new(m: u64, n: u64, t1: usize, t2: usize, bound: u64) -> OracleConfig {
        OracleConfig { m, n, t1, t2, bound, ceiling: DEFAULT_ORACLE_CEILING }
    }

    /// Number of sorted tuples enumerated on both sides together.
    pub fn work_estimate(&self) -> u128 {
        multisets(self.bound, self.t1).saturating_add(multisets(self.bound, self.t2))
    }
}

/// `C(bound + len - 1, len)`, saturating.
fn multisets(bound: u64, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..len as u128 {
        acc = match acc.checked_mul(bound as u128 + i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Sorted positive tuples with `m Σ a = n Σ b` and `m Σ a³ = n Σ b³`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

type Signature = (u128, u128);

/// Calls `visit` on every nondecreasing tuple of length `len` over
/// `first..=bound` that starts with `first`.
fn for_each_sorted_tuple(
    first: u64,
    bound: u64,
    len: usize,
    visit: &mut dyn FnMut(&[u64]) -> Result<(), ExploreError>,
) -> Result<(), ExploreError> {
    fn go(
        prefix: &mut Vec<u64>,
        bound: u64,
        len: usize,
        visit: &mut dyn FnMut(&[u64]) -> Result<(), ExploreError>,
    ) -> Result<(), ExploreError> {
        if prefix.len() == len {
            return visit(prefix);
        }
        let lo = *prefix.last().expect("prefix is nonempty");
        for next in lo..=bound {
            prefix.push(next);
            go(prefix, bound, len, visit)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut prefix = Vec::with_capacity(len);
    prefix.push(first);
    go(&mut prefix, bound, len, visit)
}

fn signature(tuple: &[u64], weight: u64) -> Result<Signature, ExploreError> {
    let mut linear: u128 = 0;
    let mut cubic: u128 = 0;
    for &a in tuple {
        let a = a as u128;
        linear = linear.checked_add(a).ok_or(ExploreError::Overflow)?;
        let cube = a.checked_mul(a).and_then(|s| s.checked_mul(a)).ok_or(ExploreError::Overflow)?;
        cubic = cubic.checked_add(cube).ok_or(ExploreError::Overflow)?;
    }
    let w = weight as u128;
    Ok((linear.checked_mul(w).ok_or(ExploreError::Overflow)?, cubic.checked_mul(w).ok_or(ExploreError::Overflow)?))
}

/// Exhaustive search of the box `[1, bound]` for equal-sums witnesses.
///
/// The left side's tuples are indexed by signature in a single-writer table;
/// the right side is then enumerated in parallel (split on its first entry)
/// and probed against it.
pub fn oracle_enumerate(cfg: &OracleConfig) -> Result<BTreeSet<Witness>, ExploreError> {
    if cfg.t1 == 0 || cfg.t2 == 0 || cfg.bound == 0 || cfg.m == 0 || cfg.n == 0 {
        return Err(ExploreError::InvalidConfig("oracle needs positive m, n, tuple lengths and bound".into()));
    }
    let estimate = cfg.work_estimate();
    if estimate > cfg.ceiling {
        return Err(ExploreError::BudgetExceeded { estimate, ceiling: cfg.ceiling });
    }

    let mut table: HashMap<Signature, Vec<Vec<u64>>> = HashMap::new();
    for first in 1..=cfg.bound {
        for_each_sorted_tuple(first, cfg.bound, cfg.t1, &mut |a| {
            table.entry(signature(a, cfg.m)?).or_default().push(a.to_vec());
            Ok(())
        })?;
    }
    let table = &table;

    let batches: Vec<Vec<Witness>> = (1..=cfg.bound)
        .into_par_iter()
        .map(|first| {
            let mut hits = Vec::new();
            for_each_sorted_tuple(first, cfg.bound, cfg.t2, &mut |b| {
                if let Some(lefts) = table.get(&signature(b, cfg.n)?) {
                    hits.extend(lefts.iter().map(|a| Witness { lhs: a.clone(), rhs: b.to_vec() }));
                }
                Ok(())
            })?;
            Ok(hits)
        })
        .collect::<Result<_, ExploreError>>()?;
    Ok(batches.into_iter().flatten().collect())
}
