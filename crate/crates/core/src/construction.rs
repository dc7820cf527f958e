//! Trivial templates, the tangent numerator/denominator pair, and the
//! assembled parametric solution.
//!
//! Each side of `m * sum(x^k) = n * sum(y^k)` gets two "trivial" rows whose
//! entries cancel in `±` pairs, so both rows satisfy the system for k = 1 and
//! k = 3 identically. Moving along the line `base + t * direction` keeps the
//! k = 1 equation and turns the k = 3 equation into `3t(A - tB) = 0`. Taking
//! `t = A / B` and clearing `B^3` gives the integer entries
//! `base_i * B + A * direction_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::poly::{Assignment, Polynomial, VarId, VarKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("tuple length {0} is below the minimum of 3")]
    InvalidLength(usize),
    #[error("coefficient {0} must be a positive integer")]
    NonPositiveCoefficient(&'static str),
    #[error("degenerate templates: A is zero: {a_zero}, B is zero: {b_zero}")]
    DegenerateTemplates { a_zero: bool, b_zero: bool },
    #[error("template rows must have equal length (base {base}, direction {direction})")]
    RowLengthMismatch { base: usize, direction: usize },
    #[error("template lengths {left}/{right} do not match the problem's {t1}/{t2}")]
    SpecMismatch { left: usize, right: usize, t1: usize, t2: usize },
    #[error("{0} template row is not a trivial solution")]
    NotTrivial(Side),
    #[error("variable {0} is neither fixed nor free")]
    MissingVariable(VarId),
    #[error("equal-sums form needs m = n or n = 0")]
    UnsupportedCoefficients,
}

/// How `m` or `n` enters the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Symbolic,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    t1: usize,
    t2: usize,
    m: Coefficient,
    n: Coefficient,
}

impl ProblemSpec {
    pub fn new(t1: usize, t2: usize, m: Coefficient, n: Coefficient) -> Result<Self, ConstructionError> {
        for t in [t1, t2] {
            if t < 3 {
                return Err(ConstructionError::InvalidLength(t));
            }
        }
        if m == Coefficient::Fixed(0) {
            return Err(ConstructionError::NonPositiveCoefficient("m"));
        }
        if n == Coefficient::Fixed(0) {
            return Err(ConstructionError::NonPositiveCoefficient("n"));
        }
        Ok(ProblemSpec { t1, t2, m, n })
    }

    pub fn symbolic(t1: usize, t2: usize) -> Result<Self, ConstructionError> {
        ProblemSpec::new(t1, t2, Coefficient::Symbolic, Coefficient::Symbolic)
    }

    pub fn t1(&self) -> usize {
        self.t1
    }

    pub fn t2(&self) -> usize {
        self.t2
    }

    pub fn m(&self) -> Coefficient {
        self.m
    }

    pub fn n(&self) -> Coefficient {
        self.n
    }

    pub fn m_poly(&self) -> Polynomial {
        coefficient_poly(self.m, VarId::M)
    }

    pub fn n_poly(&self) -> Polynomial {
        coefficient_poly(self.n, VarId::N)
    }

    /// Set when both coefficients are concrete and share a factor. The
    /// construction itself never relies on coprimality.
    pub fn coprime_warning(&self) -> bool {
        match (self.m, self.n) {
            (Coefficient::Fixed(m), Coefficient::Fixed(n)) => m.gcd(&n) > 1,
            _ => false,
        }
    }
}

fn coefficient_poly(c: Coefficient, symbol: VarId) -> Polynomial {
    match c {
        Coefficient::Symbolic => Polynomial::var(symbol),
        Coefficient::Fixed(v) => Polynomial::constant(v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignedEntry {
    Zero,
    Var(Sign, VarId),
}

impl SignedEntry {
    fn plus(v: VarId) -> Self {
        SignedEntry::Var(Sign::Plus, v)
    }

    fn minus(v: VarId) -> Self {
        SignedEntry::Var(Sign::Minus, v)
    }

    pub fn to_poly(self) -> Polynomial {
        match self {
            SignedEntry::Zero => Polynomial::zero(),
            SignedEntry::Var(Sign::Plus, v) => Polynomial::var(v),
            SignedEntry::Var(Sign::Minus, v) => -Polynomial::var(v),
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            SignedEntry::Zero => None,
            SignedEntry::Var(s, _) => Some(s),
        }
    }
}

impl fmt::Display for SignedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedEntry::Zero => write!(f, "0"),
            SignedEntry::Var(Sign::Plus, v) => write!(f, "{v}"),
            SignedEntry::Var(Sign::Minus, v) => write!(f, "-{v}"),
        }
    }
}

/// One side's pair of trivial rows: `base` is the starting point of the
/// line and `direction` the vector it moves along.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialPair {
    side: Side,
    base: Vec<SignedEntry>,
    direction: Vec<SignedEntry>,
    case_label: u8,
    alpha: usize,
}

/// Parity case for a row of length `t`: `t = 2a + 1` gives case 1 (a even)
/// or 2 (a odd); `t = 2a` gives case 3 (a even) or 4 (a odd).
pub fn parity_case(t: usize) -> (u8, usize) {
    let alpha = t / 2;
    let case = match (t % 2 == 1, alpha.is_multiple_of(2)) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    };
    (case, alpha)
}

/// Builds the parity-dictated templates for a row of length `t`. The left
/// side draws from `p` (base) and `r` (direction), the right from `q` and `s`.
pub fn make_templates(t: usize, side: Side) -> Result<TrivialPair, ConstructionError> {
    if t < 3 {
        return Err(ConstructionError::InvalidLength(t));
    }
    let (base_kind, dir_kind) = match side {
        Side::Left => (VarKind::P, VarKind::R),
        Side::Right => (VarKind::Q, VarKind::S),
    };
    let v = |i: usize| VarId::indexed(base_kind, i as u32);
    let w = |i: usize| VarId::indexed(dir_kind, i as u32);
    let (case_label, alpha) = parity_case(t);

    let mut base = Vec::with_capacity(t);
    for i in 1..=alpha {
        base.push(SignedEntry::plus(v(i)));
        base.push(SignedEntry::minus(v(i)));
    }
    if t % 2 == 1 {
        base.push(SignedEntry::Zero);
    }

    let full_blocks = match case_label {
        1 => (alpha - 2) / 2,
        2 => (alpha - 1) / 2,
        3 => alpha / 2,
        _ => (alpha - 3) / 2,
    };
    let mut direction = Vec::with_capacity(t);
    for j in 1..=full_blocks {
        let (a, b) = (w(2 * j - 1), w(2 * j));
        direction.extend([SignedEntry::plus(a), SignedEntry::plus(b), SignedEntry::minus(a), SignedEntry::minus(b)]);
    }
    match case_label {
        1 => direction.extend([
            SignedEntry::plus(w(alpha - 1)),
            SignedEntry::plus(w(alpha)),
            SignedEntry::minus(w(alpha - 1)),
            SignedEntry::Zero,
            SignedEntry::minus(w(alpha)),
        ]),
        2 => direction.extend([SignedEntry::plus(w(alpha)), SignedEntry::Zero, SignedEntry::minus(w(alpha))]),
        3 => {}
        _ => direction.extend([
            SignedEntry::plus(w(alpha - 2)),
            SignedEntry::plus(w(alpha - 1)),
            SignedEntry::minus(w(alpha - 2)),
            SignedEntry::plus(w(alpha)),
            SignedEntry::minus(w(alpha - 1)),
            SignedEntry::minus(w(alpha)),
        ]),
    }
    debug_assert_eq!(base.len(), t);
    debug_assert_eq!(direction.len(), t);

    Ok(TrivialPair { side, base, direction, case_label, alpha })
}

/// Sum and cube sum of a row, as polynomials.
pub(crate) fn row_power_sums(row: &[SignedEntry]) -> (Polynomial, Polynomial) {
    let polys: Vec<Polynomial> = row.iter().map(|e| e.to_poly()).collect();
    let linear = polys.iter().cloned().sum();
    let cubic = polys.iter().map(|p| p.pow(3)).sum();
    (linear, cubic)
}

impl TrivialPair {
    /// A hand-built pair. Both rows must have the same length and be trivial
    /// solutions (sum and cube sum vanish identically).
    pub fn custom(
        side: Side,
        base: Vec<SignedEntry>,
        direction: Vec<SignedEntry>,
    ) -> Result<TrivialPair, ConstructionError> {
        if base.len() != direction.len() {
            return Err(ConstructionError::RowLengthMismatch { base: base.len(), direction: direction.len() });
        }
        if base.len() < 3 {
            return Err(ConstructionError::InvalidLength(base.len()));
        }
        for row in [&base, &direction] {
            let (linear, cubic) = row_power_sums(row);
            if !linear.is_zero() || !cubic.is_zero() {
                return Err(ConstructionError::NotTrivial(side));
            }
        }
        let (case_label, alpha) = parity_case(base.len());
        Ok(TrivialPair { side, base, direction, case_label, alpha })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn base(&self) -> &[SignedEntry] {
        &self.base
    }

    pub fn direction(&self) -> &[SignedEntry] {
        &self.direction
    }

    pub fn case_label(&self) -> u8 {
        self.case_label
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn base_polys(&self) -> Vec<Polynomial> {
        self.base.iter().map(|e| e.to_poly()).collect()
    }

    pub fn direction_polys(&self) -> Vec<Polynomial> {
        self.direction.iter().map(|e| e.to_poly()).collect()
    }
}

fn check_lengths(left: &TrivialPair, right: &TrivialPair, spec: &ProblemSpec) -> Result<(), ConstructionError> {
    if left.len() != spec.t1 || right.len() != spec.t2 {
        return Err(ConstructionError::SpecMismatch { left: left.len(), right: right.len(), t1: spec.t1, t2: spec.t2 });
    }
    Ok(())
}

/// `A = m Σ x_i² X_i - n Σ y_j² Y_j` and `B = -m Σ x_i X_i² + n Σ y_j Y_j²`
/// where `x`, `y` are the base rows and `X`, `Y` the direction rows.
pub fn compute_ab(
    left: &TrivialPair,
    right: &TrivialPair,
    spec: &ProblemSpec,
) -> Result<(Polynomial, Polynomial), ConstructionError> {
    check_lengths(left, right, spec)?;
    let (m, n) = (spec.m_poly(), spec.n_poly());

    let sums = |pair: &TrivialPair| {
        let mut sq_dir = Polynomial::zero();
        let mut dir_sq = Polynomial::zero();
        for (x, d) in pair.base_polys().iter().zip(pair.direction_polys()) {
            sq_dir += &(&x.pow(2) * &d);
            dir_sq += &(x * &d.pow(2));
        }
        (sq_dir, dir_sq)
    };
    let (left_a, left_b) = sums(left);
    let (right_a, right_b) = sums(right);

    let a = &m * &left_a - &n * &right_a;
    let b = &n * &right_b - &m * &left_b;
    if a.is_zero() || b.is_zero() {
        return Err(ConstructionError::DegenerateTemplates { a_zero: a.is_zero(), b_zero: b.is_zero() });
    }
    Ok((a, b))
}

/// The assembled parametric solution `x'_i = x_i B + A X_i`, `y'_j = y_j B + A Y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSolution {
    spec: ProblemSpec,
    left: TrivialPair,
    right: TrivialPair,
    a: Polynomial,
    b: Polynomial,
    xs: Vec<Polynomial>,
    ys: Vec<Polynomial>,
}

impl SymbolicSolution {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn left(&self) -> &TrivialPair {
        &self.left
    }

    pub fn right(&self) -> &TrivialPair {
        &self.right
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn xs(&self) -> &[Polynomial] {
        &self.xs
    }

    pub fn ys(&self) -> &[Polynomial] {
        &self.ys
    }

    /// Template parameters occurring in the entries, in variable order.
    pub fn parameters(&self) -> Vec<VarId> {
        let mut vars = std::collections::BTreeSet::new();
        for e in self.xs.iter().chain(&self.ys) {
            vars.extend(e.variables().into_iter().filter(VarId::is_parameter));
        }
        vars.into_iter().collect()
    }

    /// Variables an assignment must cover to evaluate the solution:
    /// the parameters plus any symbolic `m`, `n`.
    pub fn required_variables(&self) -> Vec<VarId> {
        let mut vars = Vec::new();
        if self.spec.m == Coefficient::Symbolic {
            vars.push(VarId::M);
        }
        if self.spec.n == Coefficient::Symbolic {
            vars.push(VarId::N);
        }
        vars.extend(self.parameters());
        vars
    }

    /// Substitutes values for any subset of variables (parameters, `m`, `n`).
    pub fn substitute_values(&self, values: &Assignment) -> (Vec<Polynomial>, Vec<Polynomial>) {
        (
            self.xs.iter().map(|e| e.substitute_values(values)).collect(),
            self.ys.iter().map(|e| e.substitute_values(values)).collect(),
        )
    }
}

pub fn assemble(
    left: &TrivialPair,
    right: &TrivialPair,
    a: Polynomial,
    b: Polynomial,
    spec: &ProblemSpec,
) -> Result<SymbolicSolution, ConstructionError> {
    check_lengths(left, right, spec)?;
    if a.is_zero() || b.is_zero() {
        return Err(ConstructionError::DegenerateTemplates { a_zero: a.is_zero(), b_zero: b.is_zero() });
    }
    let entries = |pair: &TrivialPair| -> Vec<Polynomial> {
        pair.base_polys().iter().zip(pair.direction_polys()).map(|(x, d)| &(x * &b) + &(&a * &d)).collect()
    };
    let xs = entries(left);
    let ys = entries(right);
    Ok(SymbolicSolution { spec: spec.clone(), left: left.clone(), right: right.clone(), a, b, xs, ys })
}

/// Builds the templates for both sides, then `A`, `B`, and the solution.
pub fn derive(spec: &ProblemSpec) -> Result<SymbolicSolution, ConstructionError> {
    let left = make_templates(spec.t1, Side::Left)?;
    let right = make_templates(spec.t2, Side::Right)?;
    let (a, b) = compute_ab(&left, &right, spec)?;
    assemble(&left, &right, a, b, spec)
}

/// A solution with all parameters but one fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub free: VarId,
    pub m: Polynomial,
    pub n: Polynomial,
    pub xs: Vec<Polynomial>,
    pub ys: Vec<Polynomial>,
    left: TrivialPair,
    right: TrivialPair,
}

/// Fixes every parameter except `free`. `m` and `n` are substituted when
/// `fixing` mentions them and stay symbolic otherwise.
pub fn specialize(
    sol: &SymbolicSolution,
    fixing: &Assignment,
    free: VarId,
) -> Result<Specialization, ConstructionError> {
    if fixing.contains_key(&free) {
        return Err(ConstructionError::MissingVariable(free));
    }
    if let Some(missing) = sol.parameters().into_iter().find(|v| *v != free && !fixing.contains_key(v)) {
        return Err(ConstructionError::MissingVariable(missing));
    }
    let (xs, ys) = sol.substitute_values(fixing);
    Ok(Specialization {
        free,
        m: sol.spec.m_poly().substitute_values(fixing),
        n: sol.spec.n_poly().substitute_values(fixing),
        xs,
        ys,
        left: sol.left.clone(),
        right: sol.right.clone(),
    })
}

/// Two lists of polynomials with equal power sums for k = 1 and k = 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicEqualSums {
    pub lhs: Vec<Polynomial>,
    pub rhs: Vec<Polynomial>,
}

impl SymbolicEqualSums {
    /// `Σ lhs^k - Σ rhs^k`, expanded.
    pub fn residual(&self, k: u32) -> Polynomial {
        let lhs: Polynomial = self.lhs.iter().map(|p| p.pow(k)).sum();
        let rhs: Polynomial = self.rhs.iter().map(|p| p.pow(k)).sum();
        lhs - rhs
    }
}

impl Specialization {
    /// Rewrites `m Σ x'^k = n Σ y'^k` as a sum of like powers on each side.
    ///
    /// Only valid when `n = 0` (the right side drops out) or `m = n`. An
    /// entry moves across with its sign flipped when neither of its template
    /// entries carries a `+` sign, i.e. it is `-v*B`, `-A*w`, or a
    /// combination of both.
    pub fn equal_sums(&self) -> Result<SymbolicEqualSums, ConstructionError> {
        let n_vanishes = self.n.is_zero();
        if !n_vanishes && self.m != self.n {
            return Err(ConstructionError::UnsupportedCoefficients);
        }
        let moves = |pair: &TrivialPair| -> Vec<bool> {
            pair.base()
                .iter()
                .zip(pair.direction())
                .map(|(b, d)| {
                    let signs = [b.sign(), d.sign()];
                    signs.iter().any(Option::is_some) && !signs.contains(&Some(Sign::Plus))
                })
                .collect()
        };
        let mut out = SymbolicEqualSums { lhs: Vec::new(), rhs: Vec::new() };
        for (entry, moved) in self.xs.iter().zip(moves(&self.left)) {
            if moved {
                out.rhs.push(-entry);
            } else {
                out.lhs.push(entry.clone());
            }
        }
        if !n_vanishes {
            for (entry, moved) in self.ys.iter().zip(moves(&self.right)) {
                if moved {
                    out.lhs.push(-entry);
                } else {
                    out.rhs.push(entry.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Convenience for building assignments from `(variable, value)` pairs.
pub fn assignment<I, T>(pairs: I) -> Assignment
where
    I: IntoIterator<Item = (VarId, T)>,
    T: Into<BigInt>,
{
    pairs.into_iter().map(|(v, x)| (v, x.into())).collect::<BTreeMap<_, _>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn render(row: &[SignedEntry]) -> String {
        row.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    #[test]
    fn templates_for_small_lengths() {
        let t3 = make_templates(3, Side::Left).unwrap();
        assert_eq!(render(t3.base()), "p1,-p1,0");
        assert_eq!(render(t3.direction()), "r1,0,-r1");
        assert_eq!(t3.case_label(), 2);

        let t4 = make_templates(4, Side::Left).unwrap();
        assert_eq!(render(t4.base()), "p1,-p1,p2,-p2");
        assert_eq!(render(t4.direction()), "r1,r2,-r1,-r2");
        assert_eq!(t4.case_label(), 3);

        let t5 = make_templates(5, Side::Right).unwrap();
        assert_eq!(render(t5.base()), "q1,-q1,q2,-q2,0");
        assert_eq!(render(t5.direction()), "s1,s2,-s1,0,-s2");
        assert_eq!(t5.case_label(), 1);

        let t6 = make_templates(6, Side::Left).unwrap();
        assert_eq!(render(t6.direction()), "r1,r2,-r1,r3,-r2,-r3");
        assert_eq!(t6.case_label(), 4);

        let t7 = make_templates(7, Side::Left).unwrap();
        assert_eq!(render(t7.direction()), "r1,r2,-r1,-r2,r3,0,-r3");

        let t9 = make_templates(9, Side::Left).unwrap();
        assert_eq!(render(t9.direction()), "r1,r2,-r1,-r2,r3,r4,-r3,0,-r4");

        let t10 = make_templates(10, Side::Left).unwrap();
        assert_eq!(render(t10.direction()), "r1,r2,-r1,-r2,r3,r4,-r3,r5,-r4,-r5");
    }

    #[test]
    fn short_rows_rejected() {
        assert_eq!(make_templates(2, Side::Left), Err(ConstructionError::InvalidLength(2)));
        assert_eq!(ProblemSpec::symbolic(3, 1), Err(ConstructionError::InvalidLength(1)));
        assert!(ProblemSpec::new(3, 3, Coefficient::Fixed(0), Coefficient::Symbolic).is_err());
    }

    #[test]
    fn templates_are_trivial_solutions() {
        for t in 3..=12 {
            for side in [Side::Left, Side::Right] {
                let pair = make_templates(t, side).unwrap();
                assert_eq!(pair.len(), t);
                for row in [pair.base(), pair.direction()] {
                    let (linear, cubic) = row_power_sums(row);
                    assert!(linear.is_zero(), "t={t} {side}");
                    assert!(cubic.is_zero(), "t={t} {side}");
                }
            }
        }
    }

    #[test]
    fn coprime_warning() {
        let warn = ProblemSpec::new(3, 3, Coefficient::Fixed(4), Coefficient::Fixed(6)).unwrap();
        assert!(warn.coprime_warning());
        let fine = ProblemSpec::new(3, 3, Coefficient::Fixed(2), Coefficient::Fixed(3)).unwrap();
        assert!(!fine.coprime_warning());
        assert!(!ProblemSpec::symbolic(3, 3).unwrap().coprime_warning());
    }

    #[test]
    fn ab_for_three_by_three() {
        let spec = ProblemSpec::symbolic(3, 3).unwrap();
        let left = make_templates(3, Side::Left).unwrap();
        let right = make_templates(3, Side::Right).unwrap();
        let (a, b) = compute_ab(&left, &right, &spec).unwrap();
        assert_eq!(a, p("m*p1^2*r1 - n*q1^2*s1"));
        assert_eq!(b, p("-m*p1*r1^2 + n*q1*s1^2"));
    }

    #[test]
    fn ab_for_five_by_five_with_unit_m() {
        let spec = ProblemSpec::new(5, 5, Coefficient::Fixed(1), Coefficient::Symbolic).unwrap();
        let left = make_templates(5, Side::Left).unwrap();
        let right = make_templates(5, Side::Right).unwrap();
        let (a, b) = compute_ab(&left, &right, &spec).unwrap();
        assert_eq!(a, p("p1^2*r1 + p1^2*r2 - p2^2*r1 - n*q1^2*s1 - n*q1^2*s2 + n*q2^2*s1"));
        assert_eq!(b, p("-p1*r1^2 + p1*r2^2 - p2*r1^2 + n*q1*s1^2 - n*q1*s2^2 + n*q2*s1^2"));
    }

    #[test]
    fn ab_for_four_by_four_at_published_numbers() {
        let spec = ProblemSpec::symbolic(4, 4).unwrap();
        let left = make_templates(4, Side::Left).unwrap();
        let right = make_templates(4, Side::Right).unwrap();
        let (a, b) = compute_ab(&left, &right, &spec).unwrap();
        let values = assignment([
            (VarId::p(1), 2),
            (VarId::p(2), 5),
            (VarId::q(1), 1),
            (VarId::q(2), 3),
            (VarId::r(1), 6),
            (VarId::r(2), 7),
            (VarId::s(1), 4),
            (VarId::s(2), 9),
        ]);
        assert_eq!(a.substitute_values(&values), p("-273*m + 104*n"));
        assert_eq!(b.substitute_values(&values), p("91*m - 260*n"));
    }

    #[test]
    fn identical_rows_are_degenerate() {
        let spec = ProblemSpec::symbolic(3, 3).unwrap();
        let row = vec![SignedEntry::plus(VarId::p(1)), SignedEntry::minus(VarId::p(1)), SignedEntry::Zero];
        let left = TrivialPair::custom(Side::Left, row.clone(), row.clone()).unwrap();
        let right = make_templates(3, Side::Right).unwrap();
        // A picks up m*Σx³ on the left, which vanishes; the right still contributes.
        assert!(compute_ab(&left, &left.clone(), &spec).is_err());
        assert!(compute_ab(&left, &right, &spec).is_ok());
    }

    #[test]
    fn custom_rows_must_be_trivial() {
        let bad = vec![SignedEntry::plus(VarId::p(1)), SignedEntry::Zero, SignedEntry::Zero];
        let ok = vec![SignedEntry::plus(VarId::p(1)), SignedEntry::minus(VarId::p(1)), SignedEntry::Zero];
        assert_eq!(TrivialPair::custom(Side::Left, bad, ok.clone()), Err(ConstructionError::NotTrivial(Side::Left)));
        assert!(matches!(
            TrivialPair::custom(Side::Left, ok.clone(), ok[..2].to_vec()),
            Err(ConstructionError::RowLengthMismatch { .. })
        ));
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let spec = ProblemSpec::symbolic(3, 4).unwrap();
        let left = make_templates(3, Side::Left).unwrap();
        let right = make_templates(3, Side::Right).unwrap();
        assert!(matches!(compute_ab(&left, &right, &spec), Err(ConstructionError::SpecMismatch { .. })));
    }

    #[test]
    fn example_one_symbols() {
        let sol = derive(&ProblemSpec::symbolic(3, 3).unwrap()).unwrap();
        let (a, b) = (sol.a().clone(), sol.b().clone());
        let v = |x: VarId| Polynomial::var(x);
        assert_eq!(sol.xs()[0], v(VarId::p(1)) * &b + v(VarId::r(1)) * &a);
        assert_eq!(sol.xs()[1], -(v(VarId::p(1)) * &b));
        assert_eq!(sol.xs()[2], -(v(VarId::r(1)) * &a));
        assert_eq!(sol.ys()[0], v(VarId::q(1)) * &b + v(VarId::s(1)) * &a);
        assert_eq!(sol.ys()[1], -(v(VarId::q(1)) * &b));
        assert_eq!(sol.ys()[2], -(v(VarId::s(1)) * &a));
    }

    #[test]
    fn example_one_numbers() {
        let sol = derive(&ProblemSpec::symbolic(3, 3).unwrap()).unwrap();
        let values = assignment([(VarId::p(1), 4), (VarId::q(1), 1), (VarId::r(1), 2), (VarId::s(1), 3)]);
        let (xs, ys) = sol.substitute_values(&values);
        let expect = |v: &[&str]| v.iter().map(|s| p(s)).collect::<Vec<_>>();
        assert_eq!(xs, expect(&["30*n", "64*m - 36*n", "-64*m + 6*n"]));
        assert_eq!(ys, expect(&["80*m", "16*m - 9*n", "-96*m + 9*n"]));
    }

    #[test]
    fn entries_are_homogeneous_in_parameters() {
        for (t1, t2) in [(3, 3), (3, 4), (5, 6), (7, 10)] {
            let sol = derive(&ProblemSpec::symbolic(t1, t2).unwrap()).unwrap();
            for e in sol.xs().iter().chain(sol.ys()) {
                assert_eq!(e.homogeneous_degree_in(|v| v.is_parameter()), Some(4), "{t1}x{t2}: {e}");
            }
        }
    }

    #[test]
    fn specialize_remark_family() {
        let spec = ProblemSpec::new(5, 5, Coefficient::Fixed(1), Coefficient::Symbolic).unwrap();
        let sol = derive(&spec).unwrap();
        let fixing = assignment([
            (VarId::N, 0),
            (VarId::r(1), 1),
            (VarId::r(2), 3),
            (VarId::p(2), 5),
            (VarId::q(1), 7),
            (VarId::q(2), 8),
            (VarId::s(1), 3),
            (VarId::s(2), 4),
        ]);
        let spec_ = specialize(&sol, &fixing, VarId::p(1)).unwrap();
        let expect: Vec<Polynomial> =
            ["12*p1^2 - 5*p1 - 25", "4*p1^2 + 5*p1 - 75", "-4*p1^2 + 40*p1", "-40*p1 + 25", "-12*p1^2 + 75"]
                .iter()
                .map(|s| p(s))
                .collect();
        assert_eq!(spec_.xs, expect);
        assert!(spec_.n.is_zero());

        let sums = spec_.equal_sums().unwrap();
        assert_eq!(sums.lhs, expect[..3].to_vec());
        assert_eq!(sums.rhs, vec![p("40*p1 - 25"), p("12*p1^2 - 75")]);
        assert!(sums.residual(1).is_zero());
        assert!(sums.residual(3).is_zero());

        let at2 = assignment([(VarId::p(1), 2)]);
        let values: Vec<BigInt> = spec_.xs.iter().map(|e| e.eval(&at2).unwrap()).collect();
        assert_eq!(values, [13, -49, 64, -55, 27].map(BigInt::from));
    }

    #[test]
    fn specialize_errors() {
        let sol = derive(&ProblemSpec::symbolic(3, 3).unwrap()).unwrap();
        let all = assignment([(VarId::p(1), 4), (VarId::q(1), 1), (VarId::r(1), 2), (VarId::s(1), 3)]);
        assert_eq!(specialize(&sol, &all, VarId::p(1)).unwrap_err(), ConstructionError::MissingVariable(VarId::p(1)));
        let partial = assignment([(VarId::q(1), 1), (VarId::r(1), 2)]);
        assert_eq!(
            specialize(&sol, &partial, VarId::p(1)).unwrap_err(),
            ConstructionError::MissingVariable(VarId::s(1))
        );
        let rest = assignment([(VarId::q(1), 1), (VarId::r(1), 2), (VarId::s(1), 3)]);
        let sp = specialize(&sol, &rest, VarId::p(1)).unwrap();
        assert_eq!(sp.m, Polynomial::var(VarId::M));
        // m and n are distinct symbols, so no equal-sums form exists
        assert_eq!(sp.equal_sums(), Err(ConstructionError::UnsupportedCoefficients));
    }
}
