//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A [`Polynomial`] is a map from [`Monomial`] to a nonzero [`BigInt`]. Zero
//! coefficients and zero exponents are never stored, so structural equality
//! is polynomial equality. Terms are kept in graded-lex order and rendered
//! highest first, e.g. `m*p1^2*r1 - n*q1^2*s1` or `-64*m + 6*n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {0} is not assigned")]
    MissingVariable(VarId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid variable name `{0}`")]
    BadVariable(String),
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { found: String, offset: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

/// The families of ring variables. `M` and `N` are the equation's
/// coefficients; `P`/`R` parametrize the left templates and `Q`/`S` the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    M,
    N,
    P,
    Q,
    R,
    S,
}

impl VarKind {
    fn letter(self) -> char {
        match self {
            VarKind::M => 'm',
            VarKind::N => 'n',
            VarKind::P => 'p',
            VarKind::Q => 'q',
            VarKind::R => 'r',
            VarKind::S => 's',
        }
    }

    fn is_indexed(self) -> bool {
        !matches!(self, VarKind::M | VarKind::N)
    }
}

/// A ring variable. Ordered `m < n < p1 < p2 < … < q1 < … < r1 < … < s1 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    kind: VarKind,
    // 0 for m and n, >= 1 otherwise
    index: u32,
}

impl VarId {
    pub const M: VarId = VarId { kind: VarKind::M, index: 0 };
    pub const N: VarId = VarId { kind: VarKind::N, index: 0 };

    /// Builds an indexed parameter variable. Panics on index 0 or on `M`/`N`.
    pub fn indexed(kind: VarKind, index: u32) -> VarId {
        assert!(kind.is_indexed(), "{kind:?} carries no index");
        assert!(index >= 1, "parameter indices start at 1");
        VarId { kind, index }
    }

    pub fn p(index: u32) -> VarId {
        VarId::indexed(VarKind::P, index)
    }

    pub fn q(index: u32) -> VarId {
        VarId::indexed(VarKind::Q, index)
    }

    pub fn r(index: u32) -> VarId {
        VarId::indexed(VarKind::R, index)
    }

    pub fn s(index: u32) -> VarId {
        VarId::indexed(VarKind::S, index)
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    /// `None` for `m` and `n`.
    pub fn index(&self) -> Option<u32> {
        self.kind.is_indexed().then_some(self.index)
    }

    /// True for the template parameters, false for `m` and `n`.
    pub fn is_parameter(&self) -> bool {
        self.kind.is_indexed()
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{}{}", self.kind.letter(), i),
            None => write!(f, "{}", self.kind.letter()),
        }
    }
}

impl FromStr for VarId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::BadVariable(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            'm' => VarKind::M,
            'n' => VarKind::N,
            'p' => VarKind::P,
            'q' => VarKind::Q,
            'r' => VarKind::R,
            's' => VarKind::S,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if !kind.is_indexed() {
            return if rest.is_empty() { Ok(VarId { kind, index: 0 }) } else { Err(bad()) };
        }
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
            return Err(bad());
        }
        let index = rest.parse::<u32>().map_err(|_| bad())?;
        Ok(VarId { kind, index })
    }
}

/// A power product of variables, stored sorted by variable with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging repeats.
    pub fn from_powers<I: IntoIterator<Item = (VarId, u32)>>(powers: I) -> Monomial {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the larger exponent on
    /// the earliest variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                let ord = match x.0.cmp(&y.0) {
                    Ordering::Equal => x.1.cmp(&y.1),
                    // self carries an earlier variable that other lacks
                    Ordering::Less => Ordering::Greater,
                    Ordering::Greater => Ordering::Less,
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer values for ring variables.
pub type Assignment = BTreeMap<VarId, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Polynomial {
        Polynomial::term(1, Monomial::var(v))
    }

    pub fn term<T: Into<BigInt>>(coefficient: T, monomial: Monomial) -> Polynomial {
        let c = coefficient.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Highest total degree of any term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Total degree restricted to `vars`, if every term has the same one.
    pub fn homogeneous_degree_in(&self, vars: impl Fn(VarId) -> bool) -> Option<u32> {
        let mut degrees =
            self.terms.keys().map(|mono| mono.powers().iter().filter(|(v, _)| vars(*v)).map(|&(_, e)| e).sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.powers().iter().map(|&(v, _)| v)).collect()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value under `assignment`, which must cover every occurring variable.
    pub fn eval(&self, assignment: &Assignment) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in mono.powers() {
                let x = assignment.get(&v).ok_or(PolyError::MissingVariable(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Replaces each mapped variable by its polynomial; others pass through.
    pub fn substitute(&self, partial: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let mut powers: HashMap<(VarId, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (mono, c) in &self.terms {
            let mut kept = Vec::new();
            let mut product = Polynomial::constant(c.clone());
            for &(v, e) in mono.powers() {
                match partial.get(&v) {
                    Some(image) => {
                        let factor = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        product = &product * &*factor;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                product = &product * &Polynomial::term(1, Monomial(kept));
            }
            out += &product;
        }
        out
    }

    /// Like [`substitute`](Self::substitute) with integer images.
    pub fn substitute_values(&self, values: &Assignment) -> Polynomial {
        let partial = values.iter().map(|(v, x)| (*v, Polynomial::constant(x.clone()))).collect();
        self.substitute(&partial)
    }

    /// Non-negative gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl FromStr for Polynomial {
    type Err = ParseError;

    /// Parses sums of terms such as `12*p1^2 - 5*p1 - 25` or `-1456*m + 104*n`.
    /// Factors within a term are joined by `*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s, pos: 0 }.polynomial()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&self) -> ParseError {
        match self.src[self.pos..].chars().next() {
            Some(c) => ParseError::Unexpected { found: c.to_string(), offset: self.pos },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero();
        let mut negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            if negate {
                out -= &term;
            } else {
                out += &term;
            }
            match self.peek() {
                None => return Ok(out),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(_) => return Err(self.unexpected()),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut product = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            product = &product * &self.factor()?;
        }
        Ok(product)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                Polynomial::constant(digits.parse::<BigInt>().expect("ascii digits"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric());
                Polynomial::var(name.parse::<VarId>()?)
            }
            _ => return Err(self.unexpected()),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let e = digits.parse::<u32>().map_err(|_| self.unexpected())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}
