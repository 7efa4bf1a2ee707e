//! Quasipolynomials: finite sums of `p_r(x) e^{rx}` with polynomial
//! multiplicities and Gaussian-rational exponents.
//!
//! This is the exact carrier for weight generating functions. Everything a
//! truncated series can only witness to finite order, a quasipolynomial
//! states exactly: derivatives, annihilators and inverse images under
//! falling-factorial derivative operators are all closed-form here.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::TruncSeries;

/// Terms keyed by exponent; every stored multiplicity is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuasiPoly {
    terms: BTreeMap<Scalar, Poly>,
}

impl QuasiPoly {
    pub fn zero() -> Self {
        QuasiPoly::default()
    }

    /// `p(x) e^{rx}`.
    pub fn term(r: Scalar, p: Poly) -> Self {
        let mut q = QuasiPoly::zero();
        q.add_term(r, p);
        q
    }

    /// `e^{rx}`.
    pub fn exponential(r: Scalar) -> Self {
        QuasiPoly::term(r, Poly::one())
    }

    /// Plain polynomial, carried at exponent 0.
    pub fn from_poly(p: Poly) -> Self {
        QuasiPoly::term(Scalar::zero(), p)
    }

    pub fn constant(c: Scalar) -> Self {
        QuasiPoly::from_poly(Poly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn multiplicity(&self, r: &Scalar) -> Poly {
        self.terms.get(r).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, r: Scalar, p: Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(r) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &p;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &QuasiPoly) -> Self {
        let mut out = self.clone();
        for (r, p) in other.terms() {
            out.add_term(r.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &QuasiPoly) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return QuasiPoly::zero();
        }
        let mut out = QuasiPoly::zero();
        for (r, p) in self.terms() {
            out.add_term(r.clone(), p.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &QuasiPoly) -> Self {
        let mut out = QuasiPoly::zero();
        for (r, p) in self.terms() {
            for (s, q) in other.terms() {
                out.add_term(r + s, p * q);
            }
        }
        out
    }

    /// Value at x = 0.
    pub fn eval0(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for p in self.terms.values() {
            acc += &p.coeff(0);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = QuasiPoly::zero();
        for (r, p) in self.terms() {
            // d/dx (p e^{rx}) = (p' + r p) e^{rx}
            out.add_term(r.clone(), &p.derivative() + &p.scale(r));
        }
        out
    }

    /// Apply the constant-coefficient operator `c(d/dx)` term by term.
    pub fn apply_diff(&self, c: &Poly) -> Self {
        let mut out = QuasiPoly::zero();
        for (r, p) in self.terms() {
            let mut acc = Poly::zero();
            let mut cur = p.clone();
            for j in 0..=c.degree() {
                let a = c.coeff(j);
                if !a.is_zero() {
                    acc = &acc + &cur.scale(&a);
                }
                if j < c.degree() {
                    cur = &cur.derivative() + &cur.scale(r);
                }
            }
            out.add_term(r.clone(), acc);
        }
        out
    }

    /// EGF coefficients to order K: c_l is the l-th derivative at 0.
    pub fn taylor(&self, order: usize) -> TruncSeries {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (r, p) in self.terms() {
            // value of the l-th derivative at 0: walk (p' + r p) iteratively.
            let mut cur = p.clone();
            for slot in coeffs.iter_mut() {
                *slot += &cur.coeff(0);
                cur = &cur.derivative() + &cur.scale(r);
            }
        }
        TruncSeries::from_coeffs(coeffs)
    }

    /// The unique power series S with `(e^x - 1) * S = self`, to order K.
    /// Requires a vanishing constant term.
    pub fn div_expm1(&self, order: usize) -> Result<TruncSeries> {
        let value0 = self.eval0();
        if !value0.is_zero() {
            return Err(Error::NonzeroConstantTerm(value0.to_string()));
        }
        let q = self.taylor(order + 1);
        let mut s = vec![Scalar::zero(); order + 1];
        // q_m = sum_{j=1..m} C(m,j) S_{m-j}  =>  solve for S_{m-1} upward.
        for m in 1..=order + 1 {
            let mut acc = q.coeff(m);
            for j in 2..=m {
                let b = s[m - j].clone();
                if b.is_zero() {
                    continue;
                }
                acc = acc - binom_scalar(m, j) * b;
            }
            s[m - 1] = acc / Scalar::from_int(m as i64);
        }
        Ok(TruncSeries::from_coeffs(s))
    }

    /// Minimal monic annihilator: the product of `(w - r)^(deg p_r + 1)`.
    pub fn min_annihilator(&self) -> Poly {
        let mut acc = Poly::one();
        for (r, p) in self.terms() {
            let factor = Poly::from_coeffs(vec![-r, Scalar::one()]);
            acc = &acc * &factor.pow(p.degree() + 1);
        }
        acc
    }
}

fn binom_scalar(n: usize, k: usize) -> Scalar {
    use num_bigint::BigInt;
    Scalar::from_rat(num_rational::BigRational::from_integer(
        num_integer::binomial(BigInt::from(n), BigInt::from(k)),
    ))
}

/// Solve `A(d/dx) q = p` for a polynomial q when `A(0) != 0`; the solution is
/// unique and found by eliminating the top coefficient first.
fn invert_diffop(a: &Poly, p: &Poly) -> Poly {
    let a0 = a.coeff(0);
    debug_assert!(!a0.is_zero());
    let a0_inv = a0.inv().expect("constant term nonzero");
    let mut q = Poly::zero();
    let mut rem = p.clone();
    while !rem.is_zero() {
        let m = rem.degree();
        let t = rem.leading() * &a0_inv;
        let mono = Poly::monomial(t, m);
        q = &q + &mono;
        // subtract A(d/dx) applied to the new monomial
        let mut der = mono;
        for (j, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                rem = &rem - &der.scale(c);
            }
            if j < a.degree() {
                der = der.derivative();
            }
        }
    }
    q
}

/// Solve `[d/dx]_{n+1} phi = f` with the canonical normalization:
/// phi(0) = 0 and, at every integer exponent 1..=n, a multiplicity with zero
/// constant term. All kernel freedom is thereby pushed to the exponent-0
/// constant, which phi(0) = 0 then fixes.
pub fn solve_falling_diffop(f: &QuasiPoly, n: usize) -> QuasiPoly {
    let falling = Poly::falling_var(n + 1);
    let mut phi = QuasiPoly::zero();
    for (r, p) in f.terms() {
        // operator on the multiplicity at exponent r: [w]_{n+1} shifted by r
        let shifted = falling.shifted(r);
        let q = if shifted.coeff(0).is_zero() {
            // r is one of the integer roots 0..=n: peel off one factor w and
            // integrate with zero constant.
            let reduced = shifted
                .divexact(&Poly::var())
                .expect("vanishing constant term");
            invert_diffop(&reduced, p).antiderivative()
        } else {
            invert_diffop(&shifted, p)
        };
        phi.add_term(r.clone(), q);
    }
    let at0 = phi.eval0();
    phi.add_term(Scalar::zero(), Poly::constant(-at0));
    phi
}

/// Canonical display: terms by descending exponent, multiplicities in x,
/// exponentials as e(r).
impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, p) in self.terms.iter().rev() {
            let rendered = p.display("x").to_string();
            let (neg, body) = match rendered.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, rendered),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if r.is_zero() {
                let needs = body.contains(" + ") || body.contains(" - ");
                if needs {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if p.is_constant() && p.coeff(0).is_one() && !neg {
                write!(f, "e({r})")?;
            } else if body == "1" {
                write!(f, "e({r})")?;
            } else {
                let needs = body.contains(" + ") || body.contains(" - ");
                if needs {
                    write!(f, "({body})*e({r})")?;
                } else {
                    write!(f, "{body}*e({r})")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
