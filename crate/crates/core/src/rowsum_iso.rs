//! Row-sum substitution and its inverse.
//!
//! Substituting the row sums `s_i` for `y_i` and discarding inadmissible terms
//! gives an algebra isomorphism from the truncated ring of polynomials in
//! `y1..ym` of degree at most `n` onto the column-symmetric part of the
//! admissible quotient. [`expand`] is that map and [`to_rowsums`] its inverse.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix_ring::{self, RingShape};
use crate::poly::{Degree, Monomial, Polynomial, VarKey};
use crate::rational::Rational;

/// The row multiset of a matrix monomial as a monomial in `y`:
/// the exponent of `y_i` is the total exponent of row `i`.
pub fn row_multiset(mono: &Monomial) -> Monomial {
    mono.rename(|v| VarKey::y(v.row()))
}

fn row_sum_assignment(shape: RingShape) -> BTreeMap<VarKey, Polynomial> {
    (1..=shape.m())
        .map(|i| {
            let s = matrix_ring::row_sum(i, shape).expect("row index within shape");
            (VarKey::y(i), s)
        })
        .collect()
}

fn check_degree(g: &Polynomial, n: u32) -> Result<()> {
    match g.degree() {
        Degree::Finite(d) if d > n => Err(Error::DegreeExceedsN { degree: d, n }),
        _ => Ok(()),
    }
}

/// `y_i ↦ s_i` into the full (unreduced) matrix ring.
pub fn substitute_row_sums(g: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    shape.check_row_poly(g)?;
    g.evaluate(&row_sum_assignment(shape))
}

/// Drops every term of degree greater than `n`.
pub fn truncate_deg(g: &Polynomial, n: u32) -> Polynomial {
    g.filter_terms(|m| m.degree() <= n)
}

/// The isomorphism onto column-symmetric admissible polynomials:
/// `y_i ↦ s_i` followed by discarding inadmissible terms.
///
/// Inputs of degree above `n` are rejected; they are zero in the truncated
/// ring, and callers must truncate explicitly.
pub fn expand(g: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    shape.check_row_poly(g)?;
    check_degree(g, shape.n())?;
    g.substitute_with(&row_sum_assignment(shape), matrix_ring::reduced_mul)
}

/// Inverse of [`expand`]. Each admissible term `c·ω` of degree `k` with row
/// multiset `α` contributes `c·(n-k)!/n!·y^α`.
pub fn to_rowsums(h: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    if !matrix_ring::is_reduced(h, shape)? {
        return Err(Error::NotAdmissible);
    }
    if !matrix_ring::is_column_symmetric(h, shape)? {
        return Err(Error::NotColumnSymmetric);
    }
    let n = shape.n();
    Ok(Polynomial::from_terms(h.terms().map(|(mono, c)| {
        let k = mono.degree();
        let weight = Rational::factorial_ratio(n - k, n);
        (row_multiset(mono), c * &weight)
    })))
}

/// Product in the truncated ring: multiply and drop degrees above `n`.
pub fn weil_mul_rows(g: &Polynomial, h: &Polynomial, n: u32) -> Result<Polynomial> {
    check_degree(g, n)?;
    check_degree(h, n)?;
    Ok(Polynomial::from_terms(g.terms().flat_map(|(ma, ca)| {
        h.terms()
            .filter(move |(mb, _)| ma.degree() + mb.degree() <= n)
            .map(move |(mb, cb)| (ma * mb, ca * cb))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_ring::row_sum;

    fn shape(m: u32, n: u32) -> RingShape {
        RingShape::new(m, n).unwrap()
    }

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(VarKey::x(i, j))
    }

    fn y(i: u32) -> Polynomial {
        Polynomial::var(VarKey::y(i))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn substitute_row_sums_examples() {
        let s = shape(1, 3);
        assert_eq!(
            substitute_row_sums(&y(1), s).unwrap(),
            row_sum(1, s).unwrap()
        );
        let s12 = shape(1, 2);
        let sum = &x(1, 1) + &x(1, 2);
        assert_eq!(
            substitute_row_sums(&(&y(1) * &y(1)), s12).unwrap(),
            &sum * &sum
        );
        let c = Polynomial::constant(q(3, 4));
        assert_eq!(substitute_row_sums(&c, s12).unwrap(), c);
        assert_eq!(
            substitute_row_sums(&y(2), s12),
            Err(Error::RowOutOfRange { row: 2, m: 1 })
        );
    }

    #[test]
    fn truncate_examples() {
        let y1 = y(1);
        assert!(truncate_deg(&y1.pow(3), 2).is_zero());
        assert_eq!(truncate_deg(&(&y1.pow(2) + &y1.pow(3)), 2), y1.pow(2));
        let low = &y1 + &Polynomial::one();
        assert_eq!(truncate_deg(&low, 2), low);
    }

    #[test]
    fn expand_examples() {
        let s12 = shape(1, 2);
        assert_eq!(
            expand(&y(1).pow(2), s12).unwrap(),
            (&x(1, 1) * &x(1, 2)).scale(&q(2, 1))
        );
        // (x11 + x12)(x21 + x22) without column collisions
        let s22 = shape(2, 2);
        assert_eq!(
            expand(&(&y(1) * &y(2)), s22).unwrap(),
            &(&x(1, 1) * &x(2, 2)) + &(&x(1, 2) * &x(2, 1))
        );
        assert_eq!(expand(&y(1), s22).unwrap(), row_sum(1, s22).unwrap());
        assert_eq!(
            expand(&y(1).pow(3), s12),
            Err(Error::DegreeExceedsN { degree: 3, n: 2 })
        );
        assert!(matches!(
            expand(&x(1, 1), s12),
            Err(Error::VariableOutOfShape { .. })
        ));
    }

    #[test]
    fn to_rowsums_examples() {
        let s12 = shape(1, 2);
        assert_eq!(
            to_rowsums(&(&x(1, 1) * &x(1, 2)), s12).unwrap(),
            y(1).pow(2).scale(&q(1, 2))
        );
        let s22 = shape(2, 2);
        let h = &(&x(1, 1) * &x(2, 2)) + &(&x(1, 2) * &x(2, 1));
        assert_eq!(to_rowsums(&h, s22).unwrap(), &y(1) * &y(2));
        let c = Polynomial::constant(q(-5, 7));
        assert_eq!(to_rowsums(&c, s22).unwrap(), c);
    }

    #[test]
    fn to_rowsums_rejects_outside_invariant_subalgebra() {
        let s12 = shape(1, 2);
        assert_eq!(to_rowsums(&x(1, 1), s12), Err(Error::NotColumnSymmetric));
        let sum = row_sum(1, s12).unwrap();
        assert_eq!(to_rowsums(&(&sum * &sum), s12), Err(Error::NotAdmissible));
    }

    #[test]
    fn weil_mul_examples() {
        assert!(weil_mul_rows(&y(1), &y(1), 1).unwrap().is_zero());
        assert_eq!(weil_mul_rows(&y(1), &y(2), 2).unwrap(), &y(1) * &y(2));
        let s = &y(1) + &y(2);
        assert_eq!(weil_mul_rows(&s, &s, 2).unwrap(), &s * &s);
        assert_eq!(
            weil_mul_rows(&y(1).pow(2), &y(1), 1),
            Err(Error::DegreeExceedsN { degree: 2, n: 1 })
        );
    }

    #[test]
    fn row_multiset_counts_rows() {
        let m = crate::matrix_ring::omega(&[1, 2, 1], &[1, 2, 3]);
        assert_eq!(
            row_multiset(&m),
            Monomial::from_factors([(VarKey::y(1), 2), (VarKey::y(2), 1)])
        );
    }
}
