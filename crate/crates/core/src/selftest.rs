//! Randomized invariant suites, driven by `colsym selftest`.
//!
//! Every case draws from its own generator seeded by `(seed, suite, case)`,
//! so the report is identical whether cases run sequentially or on the
//! rayon pool.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr_io;
use crate::formal_geometry::{self, OneForm};
use crate::matrix_ring::{self, Permutation, RingShape};
use crate::par::{self, Execution};
use crate::poly::{Polynomial, VarKey};
use crate::random;
use crate::rational::Rational;
use crate::rowsum_iso;

pub const DEFAULT_SEED: u64 = 20181201;

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    /// Largest row count; every shape `m' x n'` with `m' <= m`, `n' <= n` is tested.
    pub m: u32,
    pub n: u32,
    pub seed: u64,
    /// Cases per suite per shape.
    pub cases: u32,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            m: 1,
            n: 2,
            seed: DEFAULT_SEED,
            cases: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: u32,
    pub failed: u32,
    /// The shortest failing input, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub m: u32,
    pub n: u32,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "selftest seed={} shapes up to {}x{}",
            self.seed, self.m, self.n
        )?;
        for s in &self.suites {
            let status = if s.failed == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<20} {:>5} passed {:>5} failed  {status}",
                s.name, s.passed, s.failed
            )?;
            if let Some(input) = &s.failure {
                writeln!(f, "  minimal failing input: {input}")?;
            }
        }
        let total: u32 = self.suites.iter().map(|s| s.passed + s.failed).sum();
        let failed: u32 = self.suites.iter().map(|s| s.failed).sum();
        write!(f, "total {total} cases, {failed} failed")
    }
}

type CaseFn = fn(&mut ChaCha8Rng, RingShape) -> Result<(), String>;

struct Suite {
    name: &'static str,
    /// Largest `m` the suite runs at.
    max_m: u32,
    case: CaseFn,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "ring_laws",
        max_m: u32::MAX,
        case: ring_laws,
    },
    Suite {
        name: "action_laws",
        max_m: u32::MAX,
        case: action_laws,
    },
    Suite {
        name: "symmetrize",
        max_m: u32::MAX,
        case: symmetrize_laws,
    },
    Suite {
        name: "orbit_average",
        max_m: u32::MAX,
        case: orbit_average,
    },
    Suite {
        name: "injective_sum",
        max_m: u32::MAX,
        case: injective_sum,
    },
    Suite {
        name: "roundtrip_rows",
        max_m: u32::MAX,
        case: roundtrip_rows,
    },
    Suite {
        name: "roundtrip_matrix",
        max_m: u32::MAX,
        case: roundtrip_matrix,
    },
    Suite {
        name: "weil_product",
        max_m: u32::MAX,
        case: weil_product,
    },
    Suite {
        name: "primitive",
        max_m: 3,
        case: primitive_case,
    },
    Suite {
        name: "parser",
        max_m: u32::MAX,
        case: parser_roundtrip,
    },
];

fn case_seed(seed: u64, suite: usize, case: u64) -> u64 {
    // splitmix64 finalizer over the packed triple
    let mut z = seed ^ ((suite as u64) << 48) ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run(config: &SelftestConfig, exec: Execution) -> Report {
    let shapes: Vec<RingShape> = (1..=config.m.max(1))
        .flat_map(|m| (1..=config.n.max(1)).map(move |n| RingShape::new(m, n).expect("positive")))
        .collect();
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(idx, suite)| {
            let cases: Vec<(u64, RingShape)> = shapes
                .iter()
                .filter(|s| s.m() <= suite.max_m)
                .flat_map(|&s| (0..config.cases).map(move |_| s))
                .enumerate()
                .map(|(i, s)| (i as u64, s))
                .collect();
            let outcomes = par::map_collect(&cases, exec, |&(i, shape)| {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed(config.seed, idx, i));
                (suite.case)(&mut rng, shape).map_err(|e| format!("[{shape}] {e}"))
            });
            let failures: Vec<String> = outcomes.into_iter().filter_map(Result::err).collect();
            SuiteReport {
                name: suite.name,
                passed: (cases.len() - failures.len()) as u32,
                failed: failures.len() as u32,
                failure: failures.into_iter().min_by_key(|f| (f.len(), f.clone())),
            }
        })
        .collect();
    Report {
        seed: config.seed,
        m: config.m,
        n: config.n,
        suites,
    }
}

fn check(ok: bool, what: &str, inputs: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what}: {}", inputs()))
    }
}

fn lib<T>(r: crate::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ring_laws(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let m = shape.m();
    let a = random::row_poly(rng, m, 3, 4);
    let b = random::row_poly(rng, m, 3, 4);
    let c = random::row_poly(rng, m, 2, 3);
    let show = || format!("a = {a}, b = {b}, c = {c}");
    check(&(&a * &b) * &c == &a * &(&b * &c), "associativity", show)?;
    check(
        &a * &b == &b * &a && &a + &b == &b + &a,
        "commutativity",
        show,
    )?;
    check(
        &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
        "distributivity",
        show,
    )?;
    if !a.is_zero() && !b.is_zero() {
        let (da, db) = (a.degree().finite().unwrap(), b.degree().finite().unwrap());
        check(
            (&a * &b).degree().finite() == Some(da + db),
            "degree additivity",
            show,
        )?;
    }
    let top = a.degree().finite().unwrap_or(0);
    let parts: Polynomial = (0..=top).map(|k| a.homogeneous_component(k)).sum();
    check(parts == a, "homogeneous decomposition", show)?;
    let assignment = (1..=m)
        .map(|i| (VarKey::y(i), random::row_poly(rng, m, 1, 2)))
        .collect();
    let lhs = lib((&a * &b).evaluate(&assignment))?;
    let rhs = &lib(a.evaluate(&assignment))? * &lib(b.evaluate(&assignment))?;
    check(lhs == rhs, "evaluate is multiplicative", show)
}

fn action_laws(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let p = random::matrix_poly(rng, shape, 3, 4);
    let sigma = random::permutation(rng, shape.n());
    let tau = random::permutation(rng, shape.n());
    let show = || {
        format!(
            "p = {p}, sigma = {:?}, tau = {:?}",
            sigma.images(),
            tau.images()
        )
    };
    let composed = lib(matrix_ring::act(&sigma.compose(&tau), &p, shape))?;
    let stepwise = lib(matrix_ring::act(
        &sigma,
        &lib(matrix_ring::act(&tau, &p, shape))?,
        shape,
    ))?;
    check(composed == stepwise, "act(σ∘τ) = act(σ)∘act(τ)", show)?;
    let id = Permutation::identity(shape.n());
    check(
        lib(matrix_ring::act(&id, &p, shape))? == p,
        "identity acts trivially",
        show,
    )?;
    let reduced_then_act = lib(matrix_ring::act(
        &sigma,
        &lib(matrix_ring::reduce_admissible(&p, shape))?,
        shape,
    ))?;
    let act_then_reduced = lib(matrix_ring::reduce_admissible(
        &lib(matrix_ring::act(&sigma, &p, shape))?,
        shape,
    ))?;
    check(
        reduced_then_act == act_then_reduced,
        "reduction is equivariant",
        show,
    )
}

fn symmetrize_laws(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let p = random::matrix_poly(rng, shape, 3, 3);
    let sigma = random::permutation(rng, shape.n());
    let show = || format!("p = {p}, sigma = {:?}", sigma.images());
    let sy = lib(matrix_ring::symmetrize(&p, shape))?;
    check(
        lib(matrix_ring::symmetrize(&sy, shape))? == sy,
        "idempotence",
        show,
    )?;
    check(
        lib(matrix_ring::is_column_symmetric(&sy, shape))?,
        "image is symmetric",
        show,
    )?;
    let moved = lib(matrix_ring::act(&sigma, &p, shape))?;
    check(
        lib(matrix_ring::symmetrize(&moved, shape))? == sy,
        "orbit invariance",
        show,
    )
}

fn row_sum_product(rows: &[u32], shape: RingShape) -> Result<Polynomial, String> {
    let mut acc = Polynomial::one();
    for &i in rows {
        acc = matrix_ring::reduced_mul(&acc, &lib(matrix_ring::row_sum(i, shape))?);
    }
    Ok(acc)
}

fn orbit_average(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let k = rng.random_range(0..=shape.n());
    let rows = random::row_map(rng, shape.m(), k);
    let cols = random::injective_map(rng, shape.n(), k);
    let omega = Polynomial::term(Rational::one(), matrix_ring::omega(&rows, &cols));
    let show = || format!("f = {rows:?}, g = {cols:?}");
    let lhs = lib(matrix_ring::reduce_admissible(
        &lib(matrix_ring::symmetrize(&omega, shape))?,
        shape,
    ))?;
    let weight = Rational::factorial_ratio(shape.n() - k, shape.n());
    let rhs = row_sum_product(&rows, shape)?.scale(&weight);
    check(lhs == rhs, "sy(ω) = (n-k)!/n! ∏ s", show)
}

fn injective_sum(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let k = rng.random_range(0..=shape.n());
    let rows = random::row_map(rng, shape.m(), k);
    let show = || format!("f = {rows:?}");
    let mut enumerated = Polynomial::zero();
    let mut cols = vec![0u32; k as usize];
    enumerate_injective(shape.n(), 0, &mut cols, &mut |g| {
        enumerated = &enumerated + &Polynomial::term(Rational::one(), matrix_ring::omega(&rows, g));
    });
    let full: Polynomial = rows
        .iter()
        .map(|&i| matrix_ring::row_sum(i, shape).expect("row in range"))
        .fold(Polynomial::one(), |a, b| &a * &b);
    let reduced = lib(matrix_ring::reduce_admissible(&full, shape))?;
    check(
        reduced == enumerated,
        "reduced ∏ s = Σ over injective g",
        show,
    )
}

fn enumerate_injective(n: u32, depth: usize, cols: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if depth == cols.len() {
        visit(cols);
        return;
    }
    for j in 1..=n {
        if !cols[..depth].contains(&j) {
            cols[depth] = j;
            enumerate_injective(n, depth + 1, cols, visit);
        }
    }
}

fn roundtrip_rows(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let g = random::row_poly(rng, shape.m(), shape.n(), 4);
    let show = || format!("G = {g}");
    let h = lib(rowsum_iso::expand(&g, shape))?;
    check(
        lib(rowsum_iso::to_rowsums(&h, shape))? == g,
        "to_rowsums(expand(G)) = G",
        show,
    )
}

fn roundtrip_matrix(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let base = random::admissible_poly(rng, shape, 3);
    let h = lib(matrix_ring::symmetrize(&base, shape))?;
    let show = || format!("h = sy({base})");
    let g = lib(rowsum_iso::to_rowsums(&h, shape))?;
    check(
        lib(rowsum_iso::expand(&g, shape))? == h,
        "expand(to_rowsums(h)) = h",
        show,
    )
}

fn weil_product(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let n = shape.n();
    let g = random::row_poly(rng, shape.m(), n, 3);
    let h = random::row_poly(rng, shape.m(), n, 3);
    let show = || format!("G = {g}, H = {h}");
    let lhs = lib(rowsum_iso::expand(
        &lib(rowsum_iso::weil_mul_rows(&g, &h, n))?,
        shape,
    ))?;
    let rhs = matrix_ring::reduced_mul(
        &lib(rowsum_iso::expand(&g, shape))?,
        &lib(rowsum_iso::expand(&h, shape))?,
    );
    check(lhs == rhs, "expand is multiplicative", show)
}

fn primitive_case(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let m = shape.m();
    let g = random::row_poly(rng, m, 4, 4);
    let x0 = random::base_point(rng, m);
    let show = || format!("g = {}, x0 = {:?}", expr_io::print_ambient(&g), x0.coords());
    let w = lib(formal_geometry::exterior_derivative(&g, m))?;
    let chain = lib(formal_geometry::chain_sum(&w, &x0, shape))?;
    check(
        lib(matrix_ring::is_column_symmetric(&chain, shape))?,
        "chain sum is symmetric",
        show,
    )?;
    let f = lib(formal_geometry::primitive(&w, &x0, shape))?;
    let shifted = lib(formal_geometry::shift_to(&g, &x0))?;
    let taylor = rowsum_iso::truncate_deg(
        &(&shifted - &Polynomial::constant(shifted.constant_term())),
        shape.n(),
    );
    check(f == taylor, "primitive is the Taylor shift", show)?;
    check(
        lib(formal_geometry::verify_primitive(&w, &x0, &f, shape))?,
        "verify_primitive",
        show,
    )?;
    if m >= 2 {
        // perturb into a non-closed form: add x2 to a1 only
        let mut coeffs = w.coeffs().to_vec();
        coeffs[0] = &coeffs[0] + &Polynomial::var(VarKey::Row(2));
        let bad = lib(OneForm::new(coeffs))?;
        check(
            !formal_geometry::check_closed(&bad),
            "perturbed form is not closed",
            show,
        )?;
    }
    Ok(())
}

fn parser_roundtrip(rng: &mut ChaCha8Rng, shape: RingShape) -> Result<(), String> {
    let p = if rng.random_bool(0.5) {
        random::matrix_poly(rng, shape, 3, 4)
    } else {
        random::row_poly(rng, shape.m(), 3, 4)
    };
    let text = expr_io::print_canonical(&p);
    let show = || text.clone();
    check(
        lib(expr_io::parse(&text, shape))? == p,
        "parse(print(p)) = p",
        show,
    )
}
