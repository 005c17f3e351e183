//! Random generators for the self-test suites and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formal_geometry::BasePoint;
use crate::matrix_ring::{self, Permutation, RingShape};
use crate::poly::{Monomial, Polynomial, VarKey};
use crate::rational::Rational;

/// A rational with numerator in `-bound..=bound` and denominator in `1..=bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let numer = rng.random_range(-bound..=bound);
    let denom = rng.random_range(1..=bound);
    Rational::new(numer, denom).expect("positive denominator")
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: u32) -> Permutation {
    let mut images: Vec<u32> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle of 1..=n")
}

/// `k` row indices in `1..=m`, i.e. a map `f: [k] → [m]`.
pub fn row_map<R: Rng + ?Sized>(rng: &mut R, m: u32, k: u32) -> Vec<u32> {
    (0..k).map(|_| rng.random_range(1..=m)).collect()
}

/// `k` distinct columns in `1..=n`, i.e. an injective `g: [k] → [n]`.
pub fn injective_map<R: Rng + ?Sized>(rng: &mut R, n: u32, k: u32) -> Vec<u32> {
    let mut cols: Vec<u32> = (1..=n).collect();
    cols.shuffle(rng);
    cols.truncate(k as usize);
    cols
}

pub fn admissible_monomial<R: Rng + ?Sized>(rng: &mut R, shape: RingShape, k: u32) -> Monomial {
    let rows = row_map(rng, shape.m(), k);
    let cols = injective_map(rng, shape.n(), k);
    matrix_ring::omega(&rows, &cols)
}

pub fn admissible_poly<R: Rng + ?Sized>(rng: &mut R, shape: RingShape, terms: usize) -> Polynomial {
    Polynomial::from_terms((0..terms).map(|_| {
        let k = rng.random_range(0..=shape.n());
        (
            admissible_monomial(rng, shape, k),
            nonzero_rational(rng, 100),
        )
    }))
}

/// An arbitrary matrix polynomial, usually with inadmissible terms.
pub fn matrix_poly<R: Rng + ?Sized>(
    rng: &mut R,
    shape: RingShape,
    max_deg: u32,
    terms: usize,
) -> Polynomial {
    Polynomial::from_terms((0..terms).map(|_| {
        let k = rng.random_range(0..=max_deg);
        let mono = Monomial::from_factors((0..k).map(|_| {
            let v = VarKey::x(
                rng.random_range(1..=shape.m()),
                rng.random_range(1..=shape.n()),
            );
            (v, 1)
        }));
        (mono, nonzero_rational(rng, 100))
    }))
}

/// A polynomial in `y1..ym` (or ambient `x1..xm`) of degree at most `max_deg`.
pub fn row_poly<R: Rng + ?Sized>(rng: &mut R, m: u32, max_deg: u32, terms: usize) -> Polynomial {
    Polynomial::from_terms((0..terms).map(|_| {
        let k = rng.random_range(0..=max_deg);
        let mono = Monomial::from_factors((0..k).map(|_| (VarKey::y(rng.random_range(1..=m)), 1)));
        (mono, nonzero_rational(rng, 100))
    }))
}

pub fn base_point<R: Rng + ?Sized>(rng: &mut R, m: u32) -> BasePoint {
    BasePoint::new((0..m).map(|_| rational(rng, 10)).collect())
}
