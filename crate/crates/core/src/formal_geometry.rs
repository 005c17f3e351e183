//! Closed polynomial 1-forms on `R^m` and their primitives on the
//! infinitesimal neighbourhood `x0 + D_n(m)`.
//!
//! Ambient coordinates `x1..xm` are stored as [`VarKey::Row`] variables, the
//! same sort as the displacement coordinates `y1..ym` of a primitive. A form
//! `Ω(x; v) = Σ a_i(x)·v_i` is given by its coefficients `a_i`.
//!
//! A primitive is built from a chain of first-order increments: column `j`
//! of the variable matrix is the increment `d_j`, and in the admissible
//! quotient each `d_j` squares to zero. The chain sum
//! `Σ_j Ω(x0 + d_1 + … + d_{j-1}; d_j)` is column-symmetric exactly when the
//! form is closed, and the row-sum inverse turns it into a polynomial in `y`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix_ring::{self, RingShape};
use crate::poly::{Polynomial, VarKey};
use crate::rational::Rational;
use crate::rowsum_iso;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    coeffs: Vec<Polynomial>,
}

impl OneForm {
    /// A form from its `m` coefficient polynomials in `x1..xm`.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let m = coeffs.len() as u32;
        if m == 0 {
            return Err(Error::ShapeMismatch(
                "a 1-form needs at least one coefficient".into(),
            ));
        }
        for a in &coeffs {
            for v in a.variables() {
                match v {
                    VarKey::Row(i) if (1..=m).contains(&i) => {}
                    _ => {
                        return Err(Error::ShapeMismatch(format!(
                            "coefficient uses {v}, expected ambient variables x1..x{m}"
                        )))
                    }
                }
            }
        }
        Ok(OneForm { coeffs })
    }

    pub fn dim(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// `a_i`, one-based.
    pub fn coeff(&self, i: u32) -> &Polynomial {
        &self.coeffs[i as usize - 1]
    }
}

/// A rational base point `x0 ∈ R^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoint {
    coords: Vec<Rational>,
}

impl BasePoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        BasePoint { coords }
    }

    pub fn origin(m: u32) -> Self {
        BasePoint {
            coords: vec![Rational::zero(); m as usize],
        }
    }

    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// `df` with `a_i = ∂f/∂x_i`.
pub fn exterior_derivative(f: &Polynomial, m: u32) -> Result<OneForm> {
    OneForm::new(
        (1..=m)
            .map(|i| f.partial_derivative(VarKey::Row(i)))
            .collect(),
    )
}

/// Returns the first pair `(i, j)`, `i < j`, with `∂a_i/∂x_j ≠ ∂a_j/∂x_i`.
pub fn closedness_witness(w: &OneForm) -> Option<(u32, u32)> {
    let m = w.dim();
    for i in 1..=m {
        for j in i + 1..=m {
            let dij = w.coeff(i).partial_derivative(VarKey::Row(j));
            let dji = w.coeff(j).partial_derivative(VarKey::Row(i));
            if dij != dji {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_closed(w: &OneForm) -> bool {
    closedness_witness(w).is_none()
}

fn check_dims(w: &OneForm, x0: &BasePoint, m: u32) -> Result<()> {
    if w.dim() != m || x0.dim() != m {
        return Err(Error::ShapeMismatch(format!(
            "form of dimension {} at a point of dimension {} in a ring with m = {m}",
            w.dim(),
            x0.dim()
        )));
    }
    Ok(())
}

/// The chain sum `Σ_{j=1..n} Ω(p_{j-1}; d_j)` in the admissible quotient,
/// where `d_j` is column `j` of the matrix variables and
/// `p_j = x0 + d_1 + … + d_j`.
pub fn chain_sum(w: &OneForm, x0: &BasePoint, shape: RingShape) -> Result<Polynomial> {
    let m = shape.m();
    check_dims(w, x0, m)?;
    // point[i-1] holds the i-th coordinate of the current partial point
    let mut point: Vec<Polynomial> = x0
        .coords()
        .iter()
        .map(|c| Polynomial::constant(c.clone()))
        .collect();
    let mut total = Polynomial::zero();
    for j in 1..=shape.n() {
        let assignment: BTreeMap<VarKey, Polynomial> = point
            .iter()
            .enumerate()
            .map(|(i, p)| (VarKey::Row(i as u32 + 1), p.clone()))
            .collect();
        for i in 1..=m {
            let a_at_point = w
                .coeff(i)
                .substitute_with(&assignment, matrix_ring::reduced_mul)?;
            let increment = Polynomial::var(VarKey::x(i, j));
            total = total + matrix_ring::reduced_mul(&a_at_point, &increment);
        }
        for (i, p) in point.iter_mut().enumerate() {
            *p = &*p + &Polynomial::var(VarKey::x(i as u32 + 1, j));
        }
    }
    Ok(total)
}

/// The primitive of a closed form on `x0 + D_n(m)`, as a polynomial of
/// degree at most `n` in the displacements `y = x - x0`, vanishing at `y = 0`.
pub fn primitive(w: &OneForm, x0: &BasePoint, shape: RingShape) -> Result<Polynomial> {
    check_dims(w, x0, shape.m())?;
    if let Some((i, j)) = closedness_witness(w) {
        return Err(Error::NotClosed { i, j });
    }
    let sum = chain_sum(w, x0, shape)?;
    rowsum_iso::to_rowsums(&sum, shape)
}

/// `a(x0 + y)`: shifts an ambient polynomial to displacement coordinates.
pub fn shift_to(a: &Polynomial, x0: &BasePoint) -> Result<Polynomial> {
    let assignment: BTreeMap<VarKey, Polynomial> = x0
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = VarKey::Row(i as u32 + 1);
            (v, &Polynomial::constant(c.clone()) + &Polynomial::var(v))
        })
        .collect();
    a.evaluate(&assignment)
}

/// Checks `∂f/∂y_i = a_i(x0 + y)` up to degree `n - 1` for every `i`.
pub fn verify_primitive(
    w: &OneForm,
    x0: &BasePoint,
    f: &Polynomial,
    shape: RingShape,
) -> Result<bool> {
    check_dims(w, x0, shape.m())?;
    shape.check_row_poly(f)?;
    let n = shape.n();
    if let Some(d) = f.degree().finite() {
        if d > n {
            return Err(Error::DegreeExceedsN { degree: d, n });
        }
    }
    for i in 1..=shape.m() {
        let lhs = f.partial_derivative(VarKey::Row(i));
        let rhs = rowsum_iso::truncate_deg(&shift_to(w.coeff(i), x0)?, n - 1);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: u32, n: u32) -> RingShape {
        RingShape::new(m, n).unwrap()
    }

    fn v(i: u32) -> Polynomial {
        Polynomial::var(VarKey::Row(i))
    }

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(VarKey::x(i, j))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn form(coeffs: Vec<Polynomial>) -> OneForm {
        OneForm::new(coeffs).unwrap()
    }

    #[test]
    fn exterior_derivative_examples() {
        let w = exterior_derivative(&v(1).pow(2).scale(&q(1, 2)), 1).unwrap();
        assert_eq!(w.coeffs(), &[v(1)]);
        let w = exterior_derivative(&(&v(1) * &v(2)), 2).unwrap();
        assert_eq!(w.coeffs(), &[v(2), v(1)]);
        let w = exterior_derivative(&Polynomial::constant(q(3, 1)), 2).unwrap();
        assert!(w.coeffs().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn closedness_examples() {
        let g = &(&v(1).pow(3) * &v(2)) + &v(2).pow(2);
        assert!(check_closed(&exterior_derivative(&g, 2).unwrap()));
        // ∂a1/∂x2 = 1 but ∂a2/∂x1 = 0
        let w = form(vec![v(2), Polynomial::zero()]);
        assert!(!check_closed(&w));
        assert_eq!(closedness_witness(&w), Some((1, 2)));
        assert!(check_closed(&form(vec![v(1).pow(5)])));
    }

    #[test]
    fn one_form_rejects_foreign_variables() {
        assert!(OneForm::new(vec![v(2)]).is_err());
        assert!(OneForm::new(vec![x(1, 1)]).is_err());
        assert!(OneForm::new(vec![]).is_err());
    }

    #[test]
    fn chain_sum_examples() {
        let s = shape(1, 2);
        // x dx at 0: 0·d1 + d1·d2
        let w = form(vec![v(1)]);
        assert_eq!(
            chain_sum(&w, &BasePoint::origin(1), s).unwrap(),
            &x(1, 1) * &x(1, 2)
        );
        let dx = form(vec![Polynomial::one()]);
        assert_eq!(
            chain_sum(&dx, &BasePoint::origin(1), s).unwrap(),
            &x(1, 1) + &x(1, 2)
        );
        // x dx at c: c·(d1 + d2) + d1·d2
        let c = q(3, 5);
        let got = chain_sum(&w, &BasePoint::new(vec![c.clone()]), s).unwrap();
        let expected = &(&x(1, 1) + &x(1, 2)).scale(&c) + &(&x(1, 1) * &x(1, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn chain_sum_shape_mismatch() {
        let w = form(vec![v(1)]);
        assert!(matches!(
            chain_sum(&w, &BasePoint::origin(1), shape(2, 2)),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            chain_sum(&w, &BasePoint::origin(2), shape(1, 2)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn primitive_examples() {
        let s = shape(1, 2);
        let o = BasePoint::origin(1);
        assert_eq!(
            primitive(&form(vec![v(1)]), &o, s).unwrap(),
            v(1).pow(2).scale(&q(1, 2))
        );
        assert_eq!(
            primitive(&form(vec![Polynomial::one()]), &o, s).unwrap(),
            v(1)
        );

        let w = form(vec![v(2), Polynomial::zero()]);
        assert_eq!(
            primitive(&w, &BasePoint::origin(2), shape(2, 2)),
            Err(Error::NotClosed { i: 1, j: 2 })
        );
    }

    #[test]
    fn primitive_of_exact_form_is_taylor_shift() {
        // g = x1^2 x2 - 2 x2^3 + x1 at x0 = (1/2, -1), n = 3
        let g = &(&(&v(1).pow(2) * &v(2)) - &v(2).pow(3).scale(&q(2, 1))) + &v(1);
        let x0 = BasePoint::new(vec![q(1, 2), q(-1, 1)]);
        let s = shape(2, 3);
        let w = exterior_derivative(&g, 2).unwrap();
        let f = primitive(&w, &x0, s).unwrap();
        let shifted = shift_to(&g, &x0).unwrap();
        let expected = rowsum_iso::truncate_deg(
            &(&shifted - &Polynomial::constant(shifted.constant_term())),
            3,
        );
        assert_eq!(f, expected);
        assert!(verify_primitive(&w, &x0, &f, s).unwrap());
    }

    #[test]
    fn verify_primitive_examples() {
        let s = shape(1, 2);
        let o = BasePoint::origin(1);
        let dx = form(vec![Polynomial::one()]);
        assert!(!verify_primitive(&dx, &o, &Polynomial::zero(), s).unwrap());

        // n = 1: only the linear part a_i(x0)·y_i matters
        let s1 = shape(2, 1);
        let w = form(vec![&v(1) + &v(2), &v(1) - &v(2)]);
        let x0 = BasePoint::new(vec![q(2, 1), q(1, 3)]);
        let f = &v(1).scale(&q(7, 3)) + &v(2).scale(&q(5, 3));
        assert!(verify_primitive(&w, &x0, &f, s1).unwrap());
        assert_eq!(
            verify_primitive(&w, &x0, &v(1).pow(2), s1),
            Err(Error::DegreeExceedsN { degree: 2, n: 1 })
        );
    }
}
