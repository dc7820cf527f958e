//! Exact certification of symbolic and numeric solutions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::construction::{ProblemSpec, Side, Sign, SymbolicSolution, TrivialPair};
use crate::poly::Polynomial;

/// The two exponents of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Power {
    Linear,
    Cubic,
}

impl Power {
    pub const BOTH: [Power; 2] = [Power::Linear, Power::Cubic];

    pub fn exponent(self) -> u32 {
        match self {
            Power::Linear => 1,
            Power::Cubic => 3,
        }
    }

    pub fn from_exponent(k: u32) -> Option<Power> {
        match k {
            1 => Some(Power::Linear),
            3 => Some(Power::Cubic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicCheck {
    pub ok: bool,
    pub residual: Polynomial,
}

/// Expands `m Σ x'^k - n Σ y'^k`; the solution holds iff this is zero.
pub fn verify_symbolic(sol: &SymbolicSolution, k: Power) -> SymbolicCheck {
    let e = k.exponent();
    let lhs: Polynomial = sol.xs().iter().map(|x| x.pow(e)).sum();
    let rhs: Polynomial = sol.ys().iter().map(|y| y.pow(e)).sum();
    let residual = &sol.spec().m_poly() * &lhs - &sol.spec().n_poly() * &rhs;
    SymbolicCheck { ok: residual.is_zero(), residual }
}

/// `entry_i = sign * entry_j` within one side (`i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SameSideCoincidence {
    pub side: Side,
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

/// `x'_i = sign * y'_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CrossSideCoincidence {
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Nontriviality {
    pub x_nonzero: Vec<bool>,
    pub y_nonzero: Vec<bool>,
    pub same_side: Vec<SameSideCoincidence>,
    pub cross_side: Vec<CrossSideCoincidence>,
}

impl Nontriviality {
    /// All entries nonzero and no `±` coincidence anywhere.
    pub fn is_nontrivial(&self) -> bool {
        self.x_nonzero.iter().chain(&self.y_nonzero).all(|&b| b)
            && self.same_side.is_empty()
            && self.cross_side.is_empty()
    }

    pub fn zero_entries(&self) -> Vec<(Side, usize)> {
        let zeros = |side, flags: &[bool]| {
            flags.iter().enumerate().filter(|(_, &nz)| !nz).map(move |(i, _)| (side, i)).collect::<Vec<_>>()
        };
        let mut out = zeros(Side::Left, &self.x_nonzero);
        out.extend(zeros(Side::Right, &self.y_nonzero));
        out
    }
}

fn coincidence(a: &Polynomial, b: &Polynomial) -> Vec<Sign> {
    let mut signs = Vec::new();
    if (a - b).is_zero() {
        signs.push(Sign::Plus);
    }
    if (a + b).is_zero() {
        signs.push(Sign::Minus);
    }
    signs
}

fn scan_side(side: Side, entries: &[Polynomial], out: &mut Vec<SameSideCoincidence>) {
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            for sign in coincidence(&entries[i], &entries[j]) {
                out.push(SameSideCoincidence { side, i, j, sign });
            }
        }
    }
}

/// Scans every pair of entries, within and across sides, for `±` equality
/// as polynomials.
pub fn check_nontriviality(sol: &SymbolicSolution) -> Nontriviality {
    let mut report = Nontriviality {
        x_nonzero: sol.xs().iter().map(|e| !e.is_zero()).collect(),
        y_nonzero: sol.ys().iter().map(|e| !e.is_zero()).collect(),
        ..Default::default()
    };
    scan_side(Side::Left, sol.xs(), &mut report.same_side);
    scan_side(Side::Right, sol.ys(), &mut report.same_side);
    for (i, x) in sol.xs().iter().enumerate() {
        for (j, y) in sol.ys().iter().enumerate() {
            for sign in coincidence(x, y) {
                report.cross_side.push(CrossSideCoincidence { i, j, sign });
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub residual_k1: Polynomial,
    pub residual_k3: Polynomial,
    pub k1_ok: bool,
    pub k3_ok: bool,
    pub nontriviality: Nontriviality,
}

impl VerificationReport {
    pub fn is_nontrivial_solution(&self) -> bool {
        self.k1_ok && self.k3_ok && self.nontriviality.is_nontrivial()
    }
}

pub fn verify_solution(sol: &SymbolicSolution) -> VerificationReport {
    let k1 = verify_symbolic(sol, Power::Linear);
    let k3 = verify_symbolic(sol, Power::Cubic);
    VerificationReport {
        k1_ok: k1.ok,
        k3_ok: k3.ok,
        residual_k1: k1.residual,
        residual_k3: k3.residual,
        nontriviality: check_nontriviality(sol),
    }
}

/// An integer instance of the system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericTuple {
    pub m: BigInt,
    pub n: BigInt,
    pub xs: Vec<BigInt>,
    pub ys: Vec<BigInt>,
}

impl NumericTuple {
    pub fn new<T: Into<BigInt>>(m: T, n: T, xs: Vec<BigInt>, ys: Vec<BigInt>) -> NumericTuple {
        NumericTuple { m: m.into(), n: n.into(), xs, ys }
    }

    pub fn from_i64(m: i64, n: i64, xs: &[i64], ys: &[i64]) -> NumericTuple {
        NumericTuple {
            m: m.into(),
            n: n.into(),
            xs: xs.iter().map(|&x| x.into()).collect(),
            ys: ys.iter().map(|&y| y.into()).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.xs.iter().chain(&self.ys)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCheck {
    pub ok: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

pub fn verify_numeric(t: &NumericTuple, k: Power) -> NumericCheck {
    let e = k.exponent() as usize;
    let power_sum = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |acc, x| acc + num_traits::pow(x.clone(), e));
    let lhs = &t.m * power_sum(&t.xs);
    let rhs = &t.n * power_sum(&t.ys);
    NumericCheck { ok: lhs == rhs, lhs, rhs }
}

/// Coefficients of `t^3, t^2, t^1, t^0` in `m Σ (x_i + t X_i)^3 - n Σ (y_j + t Y_j)^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCoefficients {
    pub c3: Polynomial,
    pub c2: Polynomial,
    pub c1: Polynomial,
    pub c0: Polynomial,
}

impl TangentCoefficients {
    /// `c3 = c0 = 0`, `c2 = -3B`, `c1 = 3A`.
    pub fn matches(&self, a: &Polynomial, b: &Polynomial) -> bool {
        let three = Polynomial::constant(3);
        self.c3.is_zero()
            && self.c0.is_zero()
            && (&self.c2 + &(&three * b)).is_zero()
            && (&self.c1 - &(&three * a)).is_zero()
    }
}

/// Polynomial in an auxiliary line parameter with ring coefficients,
/// lowest degree first.
#[derive(Debug, Clone)]
struct LinePoly(Vec<Polynomial>);

impl LinePoly {
    fn line(base: Polynomial, direction: Polynomial) -> LinePoly {
        LinePoly(vec![base, direction])
    }

    fn mul(&self, other: &LinePoly) -> LinePoly {
        let mut out = vec![Polynomial::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        LinePoly(out)
    }

    fn add_scaled(&mut self, other: &LinePoly, factor: &Polynomial) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Polynomial::zero());
        }
        for (acc, c) in self.0.iter_mut().zip(&other.0) {
            *acc += &(factor * c);
        }
    }

    fn coefficient(&self, d: usize) -> Polynomial {
        self.0.get(d).cloned().unwrap_or_default()
    }
}

fn line_power_sum(pair: &TrivialPair, k: u32) -> LinePoly {
    let mut total = LinePoly(vec![Polynomial::zero()]);
    let one = Polynomial::one();
    for (x, d) in pair.base_polys().into_iter().zip(pair.direction_polys()) {
        let line = LinePoly::line(x, d);
        let mut power = LinePoly(vec![Polynomial::one()]);
        for _ in 0..k {
            power = power.mul(&line);
        }
        total.add_scaled(&power, &one);
    }
    total
}

/// `m Σ (x_i + t X_i)^k - n Σ (y_j + t Y_j)^k` as coefficients in `t`, lowest first.
pub fn line_residual(left: &TrivialPair, right: &TrivialPair, spec: &ProblemSpec, k: u32) -> Vec<Polynomial> {
    let mut out = LinePoly(vec![Polynomial::zero()]);
    out.add_scaled(&line_power_sum(left, k), &spec.m_poly());
    out.add_scaled(&line_power_sum(right, k), &-spec.n_poly());
    out.0
}

/// Expands the cubic equation along the line through the two templates.
/// Independent of [`compute_ab`](crate::construction::compute_ab).
pub fn tangent_diagnostics(left: &TrivialPair, right: &TrivialPair, spec: &ProblemSpec) -> TangentCoefficients {
    let coeffs = LinePoly(line_residual(left, right, spec, 3));
    TangentCoefficients {
        c0: coeffs.coefficient(0),
        c1: coeffs.coefficient(1),
        c2: coeffs.coefficient(2),
        c3: coeffs.coefficient(3),
    }
}
