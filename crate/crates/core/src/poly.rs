//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] is a map from [`Monomial`] to nonzero [`Rational`]; both
//! maps are kept canonical, so structural equality is mathematical equality.
//! Terms are ordered graded-lexicographically: lower total degree first, and
//! within one degree, larger exponents on earlier variables first
//! (`x[1,1]^2`, `x[1,1]*x[1,2]`, `x[1,2]^2`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A polynomial variable: either a matrix entry `x[i,j]` or a row
/// variable `y_i`. Indices are one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKey {
    Matrix { row: u32, col: u32 },
    Row(u32),
}

impl VarKey {
    pub fn x(row: u32, col: u32) -> Self {
        VarKey::Matrix { row, col }
    }

    pub fn y(row: u32) -> Self {
        VarKey::Row(row)
    }

    pub fn row(&self) -> u32 {
        match *self {
            VarKey::Matrix { row, .. } | VarKey::Row(row) => row,
        }
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self, VarKey::Matrix { .. })
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKey::Matrix { row, col } => write!(f, "x[{row},{col}]"),
            VarKey::Row(i) => write!(f, "y{i}"),
        }
    }
}

/// A power product of variables. Exponents are positive; the empty product
/// is the monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // sorted by variable, no zero exponents
    factors: Vec<(VarKey, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarKey) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_factors(pairs: impl IntoIterator<Item = (VarKey, u32)>) -> Self {
        let mut map: BTreeMap<VarKey, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarKey) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(VarKey, u32)] {
        &self.factors
    }

    pub fn vars(&self) -> impl Iterator<Item = VarKey> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Applies `rename` to every variable, merging any collisions.
    pub fn rename(&self, mut rename: impl FnMut(VarKey) -> VarKey) -> Self {
        Monomial::from_factors(self.factors.iter().map(|&(v, e)| (rename(v), e)))
    }

    /// Divides out one power of `v`, returning the old exponent as well.
    fn derive(&self, v: VarKey) -> Option<(u32, Monomial)> {
        let idx = self.factors.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.factors[idx].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Some((e, Monomial { factors }))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &rhs.factors);
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
        Monomial { factors: out }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.factors.iter().zip(&other.factors) {
                let c = va.cmp(&vb).then(eb.cmp(&ea));
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: VarKey) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(coeff: Rational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Polynomial { terms }
    }

    /// Sums arbitrary (possibly repeated, possibly zero) terms into canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn variables(&self) -> BTreeSet<VarKey> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// The sum of the degree-`k` terms.
    pub fn homogeneous_component(&self, k: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() == k)
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rewrites every monomial through `f`; colliding images are summed.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: VarKey) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.derive(v)?;
            Some((rest, c * &Rational::from(i64::from(e))))
        }))
    }

    /// Simultaneous substitution `v ↦ assignment[v]` followed by expansion.
    pub fn evaluate(&self, assignment: &BTreeMap<VarKey, Polynomial>) -> Result<Polynomial> {
        self.substitute_with(assignment, |a, b| a * b)
    }

    /// Like [`evaluate`](Self::evaluate), but every product is formed with
    /// `mul`. Used to evaluate directly inside a quotient ring, where `mul`
    /// multiplies and then reduces.
    pub fn substitute_with<F>(
        &self,
        assignment: &BTreeMap<VarKey, Polynomial>,
        mul: F,
    ) -> Result<Polynomial>
    where
        F: Fn(&Polynomial, &Polynomial) -> Polynomial,
    {
        let mut powers: HashMap<(VarKey, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let mut acc = Polynomial::constant(coeff.clone());
            for &(v, e) in mono.factors() {
                let base = assignment.get(&v).ok_or(Error::MissingAssignment(v))?;
                let power = powers.entry((v, e)).or_insert_with(|| {
                    let mut p = base.clone();
                    for _ in 1..e {
                        p = mul(&p, base);
                    }
                    p
                });
                acc = mul(&acc, power);
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        Ok(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr_io::print_canonical(self))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<VarKey> for Polynomial {
    fn from(v: VarKey) -> Self {
        Polynomial::var(v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs.clone()
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, c) in small.terms {
            big.add_term(m, &c);
        }
        big
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + -rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + -rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(VarKey::x(i, j))
    }

    fn y(i: u32) -> Polynomial {
        Polynomial::var(VarKey::y(i))
    }

    fn c(n: i64, d: i64) -> Polynomial {
        Polynomial::constant(Rational::new(n, d).unwrap())
    }

    #[test]
    fn add_examples() {
        assert!((&x(1, 1) + &(-&x(1, 1))).is_zero());
        let s = &x(1, 1) + &x(1, 2);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(&(&c(1, 2) * &x(1, 1)) + &(&c(1, 2) * &x(1, 1)), x(1, 1));
    }

    #[test]
    fn mul_examples() {
        let s = &x(1, 1) + &x(1, 2);
        let sq = &s * &s;
        let expected = Polynomial::from_terms([
            (
                Monomial::from_factors([(VarKey::x(1, 1), 2)]),
                Rational::one(),
            ),
            (
                Monomial::from_factors([(VarKey::x(1, 1), 1), (VarKey::x(1, 2), 1)]),
                Rational::from(2),
            ),
            (
                Monomial::from_factors([(VarKey::x(1, 2), 2)]),
                Rational::one(),
            ),
        ]);
        assert_eq!(sq, expected);
        assert_eq!(&s * &Polynomial::one(), s);
        assert!((&s * &Polynomial::zero()).is_zero());
    }

    #[test]
    fn degree_examples() {
        assert_eq!((&x(1, 1) * &x(2, 2)).degree(), Degree::Finite(2));
        assert_eq!(c(5, 1).degree(), Degree::Finite(0));
        assert_eq!(Polynomial::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn homogeneous_components() {
        let p = &x(1, 1) + &(&x(1, 1) * &x(1, 2));
        assert_eq!(p.homogeneous_component(1), x(1, 1));
        assert_eq!(p.homogeneous_component(2), &x(1, 1) * &x(1, 2));
        assert!(p.homogeneous_component(3).is_zero());
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(
            (&y(1) * &y(1)).partial_derivative(VarKey::y(1)),
            &c(2, 1) * &y(1)
        );
        assert_eq!((&y(1) * &y(2)).partial_derivative(VarKey::y(2)), y(1));
        assert!(c(7, 3).partial_derivative(VarKey::y(1)).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let sq = &y(1) * &y(1);
        let a = BTreeMap::from([(VarKey::y(1), &x(1, 1) + &x(1, 2))]);
        let s = &x(1, 1) + &x(1, 2);
        assert_eq!(sq.evaluate(&a).unwrap(), &s * &s);

        let id = BTreeMap::from([(VarKey::y(1), y(1))]);
        assert_eq!(y(1).evaluate(&id).unwrap(), y(1));

        let consts = BTreeMap::from([(VarKey::y(1), c(2, 1)), (VarKey::y(2), c(3, 1))]);
        assert_eq!((&y(1) * &y(2)).evaluate(&consts).unwrap(), c(6, 1));
    }

    #[test]
    fn evaluate_missing_assignment() {
        let err = (&y(1) * &y(2))
            .evaluate(&BTreeMap::from([(VarKey::y(1), y(1))]))
            .unwrap_err();
        assert_eq!(err, Error::MissingAssignment(VarKey::y(2)));
    }

    #[test]
    fn term_order_is_graded_lex() {
        let s = &(&x(1, 1) + &x(1, 2)) + &Polynomial::one();
        let sq = &s * &s;
        let order: Vec<String> = sq.terms().map(|(m, _)| format!("{m:?}")).collect();
        let degs: Vec<u32> = sq.terms().map(|(m, _)| m.degree()).collect();
        assert!(degs.windows(2).all(|w| w[0] <= w[1]), "{order:?}");
        let quad: Vec<&Monomial> = sq
            .terms()
            .map(|(m, _)| m)
            .filter(|m| m.degree() == 2)
            .collect();
        assert_eq!(quad[0].exponent(VarKey::x(1, 1)), 2);
        assert_eq!(quad[2].exponent(VarKey::x(1, 2)), 2);
    }
}
