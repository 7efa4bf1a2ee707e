//! Dense univariate polynomials over the Gaussian rationals.
//!
//! The variable is abstract; the same type carries polynomials in `w`
//! (operator symbols) and in `x` (quasipolynomial multiplicities). Rendering
//! picks the letter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients indexed by degree; the leading coefficient is nonzero unless
/// the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * v^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic product of `(v - r)` over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = &p * &Poly::from_coeffs(vec![-r, Scalar::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of callers
    /// that first check `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(v + h)` expanded exactly.
    pub fn shifted(&self, h: &Scalar) -> Self {
        if h.is_zero() || self.is_zero() {
            return self.clone();
        }
        // Horner in the shifted variable: f(v+h) = (...((a_n)(v+h) + a_{n-1})(v+h) + ...)
        let shift = Poly::from_coeffs(vec![h.clone(), Scalar::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / &Scalar::from_int((k + 1) as i64));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn conj_coeffs(&self) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead_inv = d.leading().inv()?;
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd || (dd == 0 && !rem.is_empty()) {
            if rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
                continue;
            }
            if rem.len() <= dd {
                break;
            }
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[k + i] = &rem[k + i] - &t;
            }
            quot[k] = q;
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact division; None when the remainder is nonzero.
    pub fn divexact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divisible_by(&self, d: &Poly) -> bool {
        self.is_zero() || self.divexact(d).is_some()
    }

    /// Falling factorial `[f]_l = f (f-1) ... (f-l+1)` of this polynomial.
    pub fn falling_factorial(&self, l: usize) -> Self {
        let mut acc = Poly::one();
        for j in 0..l {
            acc = &acc * &(self - &Poly::constant(Scalar::from_int(j as i64)));
        }
        acc
    }

    /// `[v]_l` in the bare variable.
    pub fn falling_var(l: usize) -> Self {
        Poly::var().falling_factorial(l)
    }

    pub fn display(&self, var: &'static str) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, var }
    }
}

/// Falling factorial `[x]_l` of a scalar.
pub fn falling_factorial(x: &Scalar, l: usize) -> Scalar {
    let mut acc = Scalar::one();
    for j in 0..l {
        acc = acc * (x - &Scalar::from_int(j as i64));
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'static str,
}

/// True when the rendered scalar needs parentheses as a factor.
fn needs_parens(c: &Scalar) -> bool {
    !c.is_real() && !c.re().is_zero()
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..=self.poly.degree()).rev() {
            let c = self.poly.coeff(k);
            if c.is_zero() {
                continue;
            }
            // Split a leading minus out of purely real or purely imaginary
            // coefficients so terms join as "a - b".
            let (neg, mag) = if c.is_real() || c.re().is_zero() {
                let negative = if c.is_real() {
                    c.re().is_negative()
                } else {
                    c.im().is_negative()
                };
                if negative {
                    (true, -&c)
                } else {
                    (false, c.clone())
                }
            } else {
                (false, c.clone())
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
            let coeff_str = if needs_parens(&mag) {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if k == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coeff_str}*")?;
                }
                if k == 1 {
                    write!(f, "{}", self.var)?;
                } else {
                    write!(f, "{}^{}", self.var, k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("w"))
    }
}
