//! Deterministic random generators shared by the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use winfty::{DOp, HighestWeight, Poly, QuasiPoly, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small real rational.
pub fn rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 2, 3].get(rng.gen_range(0..3)).unwrap();
    Scalar::from_ratio(num, den)
}

/// Small Gaussian rational, complex in about a quarter of draws.
pub fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rational(rng);
    if rng.gen_range(0..4) == 0 {
        re + Scalar::i() * rational(rng)
    } else {
        re
    }
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| scalar(rng)).collect())
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    loop {
        let p = poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Operator with up to `max_modes` modes in `-mode_range..=mode_range` and
/// polynomial degree at most `max_deg`; optionally a central part.
pub fn dop(
    rng: &mut ChaCha8Rng,
    max_modes: usize,
    mode_range: i64,
    max_deg: usize,
    central: bool,
) -> DOp {
    let mut out = DOp::zero();
    let count = rng.gen_range(1..=max_modes);
    for _ in 0..count {
        let k = rng.gen_range(-mode_range..=mode_range);
        out = out.add(&DOp::from_mode(k, poly(rng, max_deg)));
    }
    if central && rng.gen_range(0..3) == 0 {
        out = out.add(&DOp::central_element(scalar(rng)));
    }
    out
}

/// Operator in the order-1 subalgebra: every mode polynomial a multiple of w.
pub fn dop_order1(
    rng: &mut ChaCha8Rng,
    max_modes: usize,
    mode_range: i64,
    max_deg: usize,
) -> DOp {
    let mut out = DOp::zero();
    let count = rng.gen_range(1..=max_modes);
    for _ in 0..count {
        let k = rng.gen_range(-mode_range..=mode_range);
        let f = &poly(rng, max_deg.saturating_sub(1)) * &Poly::var();
        out = out.add(&DOp::from_mode(k, f));
    }
    out
}

pub fn real_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| rational(rng)).collect())
}

/// Quasipolynomial with at most `max_terms` distinct small rational
/// exponents and multiplicities of degree at most `max_deg`.
pub fn quasipoly(rng: &mut ChaCha8Rng, max_terms: usize, max_deg: usize) -> QuasiPoly {
    let pool: [Scalar; 7] = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::from_int(-1),
        Scalar::from_int(3),
        Scalar::from_ratio(1, 2),
        Scalar::from_ratio(-1, 2),
    ];
    let mut q = QuasiPoly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let r = pool[rng.gen_range(0..pool.len())].clone();
        q.add_term(r, poly(rng, max_deg));
    }
    q
}

/// Quasipolynomial with real rational coefficients and exponents.
pub fn quasipoly_real(rng: &mut ChaCha8Rng, max_terms: usize, max_deg: usize) -> QuasiPoly {
    let pool: [Scalar; 7] = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::from_int(-1),
        Scalar::from_int(3),
        Scalar::from_ratio(1, 2),
        Scalar::from_ratio(-1, 2),
    ];
    let mut q = QuasiPoly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let r = pool[rng.gen_range(0..pool.len())].clone();
        q.add_term(r, real_poly(rng, max_deg));
    }
    q
}

/// Canonical highest weight of order n with a random quasipolynomial phi
/// built from rational exponents.
pub fn highest_weight(rng: &mut ChaCha8Rng, n: usize, c: Scalar) -> HighestWeight {
    let raw = quasipoly(rng, 4, 2);
    // kill the constant term so phi(0) = 0
    let at0 = raw.eval0();
    let phi = raw.sub(&QuasiPoly::constant(at0));
    HighestWeight::new(n, c, phi).expect("phi vanishes at 0")
}

/// Highest weight whose labels are real: real multiplicities and exponents.
pub fn highest_weight_real(rng: &mut ChaCha8Rng, n: usize, c: Scalar) -> HighestWeight {
    let raw = quasipoly_real(rng, 4, 2);
    let at0 = raw.eval0();
    let phi = raw.sub(&QuasiPoly::constant(at0));
    HighestWeight::new(n, c, phi).expect("phi vanishes at 0")
}
