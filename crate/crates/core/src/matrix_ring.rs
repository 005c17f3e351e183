//! The polynomial ring in the `m x n` matrix variables `x[i,j]`, its quotient
//! by inadmissible monomials, and the column action of `S_n`.
//!
//! A monomial is admissible when no column contributes more than one factor
//! (so in particular it is square-free). Elements of the quotient are
//! represented by their admissible-only representatives; products in the
//! quotient are computed as multiply-then-reduce.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::poly::{Monomial, Polynomial, VarKey};
use crate::rational::{factorial, Rational};

/// Largest `n` for which [`symmetrize`] enumerates all of `S_n` by default.
pub const DEFAULT_ENUM_LIMIT: u32 = 8;

/// Dimensions of the variable matrix: `m` rows, `n` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingShape {
    m: u32,
    n: u32,
}

impl RingShape {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidShape { m, n });
        }
        Ok(RingShape { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn out_of_shape(&self, var: VarKey) -> Error {
        Error::VariableOutOfShape {
            var,
            m: self.m,
            n: self.n,
        }
    }

    /// Checks that `p` only uses matrix variables inside this shape.
    pub fn check_matrix_poly(&self, p: &Polynomial) -> Result<()> {
        for v in p.variables() {
            match v {
                VarKey::Matrix { row, col }
                    if (1..=self.m).contains(&row) && (1..=self.n).contains(&col) => {}
                _ => return Err(self.out_of_shape(v)),
            }
        }
        Ok(())
    }

    /// Checks that `p` only uses row variables `y1..ym`.
    pub fn check_row_poly(&self, p: &Polynomial) -> Result<()> {
        for v in p.variables() {
            match v {
                VarKey::Row(i) if (1..=self.m).contains(&i) => {}
                VarKey::Row(i) => return Err(Error::RowOutOfRange { row: i, m: self.m }),
                _ => return Err(self.out_of_shape(v)),
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A permutation `σ` of the columns `1..=n`, stored as its one-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// `images[j-1] = σ(j)`; must be a bijection on `1..=images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            let ok = j >= 1 && (j as usize) <= n && !seen[j as usize - 1];
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[j as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition swapping columns `a` and `b`.
    pub fn transposition(n: u32, a: u32, b: u32) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            return Err(Error::ShapeMismatch(format!(
                "transposition ({a} {b}) outside 1..={n}"
            )));
        }
        images.swap(a as usize - 1, b as usize - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, j: u32) -> u32 {
        self.images[j as usize - 1]
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different size"
        );
        Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (j, &s) in self.images.iter().enumerate() {
            images[s as usize - 1] = j as u32 + 1;
        }
        Permutation { images }
    }

    /// All `n!` permutations, in lexicographic order of their image vectors.
    pub fn all(n: u32) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n as usize)
            .map(|images| Permutation { images })
    }
}

fn column_exponents_ok(mono: &Monomial) -> bool {
    let mut used: BTreeMap<u32, u32> = BTreeMap::new();
    for &(v, e) in mono.factors() {
        if let VarKey::Matrix { col, .. } = v {
            let c = used.entry(col).or_default();
            *c += e;
            if *c > 1 {
                return false;
            }
        }
    }
    true
}

/// Whether every column of the matrix contributes at most one factor to `mono`.
pub fn is_admissible(mono: &Monomial, shape: RingShape) -> Result<bool> {
    shape.check_matrix_poly(&Polynomial::term(Rational::one(), mono.clone()))?;
    Ok(column_exponents_ok(mono))
}

/// Projection onto the admissible quotient: drops every inadmissible term.
pub fn reduce_admissible(p: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    shape.check_matrix_poly(p)?;
    Ok(p.filter_terms(column_exponents_ok))
}

/// Whether every term of `p` is admissible.
pub fn is_reduced(p: &Polynomial, shape: RingShape) -> Result<bool> {
    shape.check_matrix_poly(p)?;
    Ok(p.terms().all(|(m, _)| column_exponents_ok(m)))
}

/// Product in the admissible quotient. Inadmissible products are skipped as
/// they are formed, which is equal to reducing the full product but never
/// materializes the discarded terms. Inputs are assumed to lie in the shape.
pub fn reduced_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    Polynomial::from_terms(a.terms().flat_map(|(ma, ca)| {
        b.terms().filter_map(move |(mb, cb)| {
            let m = ma * mb;
            column_exponents_ok(&m).then(|| (m, ca * cb))
        })
    }))
}

/// `∏_l x[rows[l], cols[l]]`, the monomial presented by a pair of maps
/// `f: [k] → [m]` and `g: [k] → [n]`.
pub fn omega(rows: &[u32], cols: &[u32]) -> Monomial {
    assert_eq!(
        rows.len(),
        cols.len(),
        "omega needs maps with a common domain"
    );
    Monomial::from_factors(rows.iter().zip(cols).map(|(&i, &j)| (VarKey::x(i, j), 1)))
}

fn act_unchecked(sigma: &Permutation, p: &Polynomial) -> Polynomial {
    p.map_monomials(|m| {
        m.rename(|v| match v {
            VarKey::Matrix { row, col } => VarKey::x(row, sigma.apply(col)),
            other => other,
        })
    })
}

/// The column action: renames every `x[i,j]` to `x[i,σ(j)]`.
pub fn act(sigma: &Permutation, p: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    if sigma.len() != shape.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of {} columns acting on shape {shape}",
            sigma.len()
        )));
    }
    shape.check_matrix_poly(p)?;
    Ok(act_unchecked(sigma, p))
}

/// Averages `p` over all of `S_n`, with the default enumeration limit.
pub fn symmetrize(p: &Polynomial, shape: RingShape) -> Result<Polynomial> {
    symmetrize_with_limit(p, shape, DEFAULT_ENUM_LIMIT)
}

pub fn symmetrize_with_limit(p: &Polynomial, shape: RingShape, limit: u32) -> Result<Polynomial> {
    symmetrize_exec(p, shape, limit, Execution::default())
}

/// `(1/n!) Σ_{σ ∈ S_n} σ·p`, enumerating every permutation.
pub fn symmetrize_exec(
    p: &Polynomial,
    shape: RingShape,
    limit: u32,
    exec: Execution,
) -> Result<Polynomial> {
    let n = shape.n();
    if n > limit {
        return Err(Error::EnumerationLimitExceeded { n, limit });
    }
    shape.check_matrix_poly(p)?;
    if p.is_zero() {
        return Ok(Polynomial::zero());
    }
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let total = par::sum_map(&perms, exec, |sigma| act_unchecked(sigma, p));
    let inv = Rational::new(1, factorial(n)).expect("n! is nonzero");
    Ok(total.scale(&inv))
}

/// The row sum `s_i = x[i,1] + … + x[i,n]`.
pub fn row_sum(i: u32, shape: RingShape) -> Result<Polynomial> {
    if !(1..=shape.m()).contains(&i) {
        return Err(Error::RowOutOfRange {
            row: i,
            m: shape.m(),
        });
    }
    Ok((1..=shape.n())
        .map(|j| Polynomial::var(VarKey::x(i, j)))
        .sum())
}

/// Invariance under the adjacent transpositions `(j j+1)`, which generate `S_n`.
pub fn is_column_symmetric(p: &Polynomial, shape: RingShape) -> Result<bool> {
    shape.check_matrix_poly(p)?;
    for j in 1..shape.n() {
        let tau = Permutation::transposition(shape.n(), j, j + 1)?;
        if act_unchecked(&tau, p) != *p {
            return Ok(false);
        }
    }
    Ok(true)
}
