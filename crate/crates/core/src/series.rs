//! Truncated power series in the exponential-generating-function convention.
//!
//! A `TruncSeries` of order K stores c_0 .. c_K and denotes
//! sum_{l<=K} c_l x^l / l!. Differentiation is then a plain left shift and
//! multiplication is a binomial convolution, which keeps every step exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Rat, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Scalar>,
}

fn binom(n: usize, k: usize) -> Scalar {
    Scalar::from_rat(Rat::from_integer(binomial(
        BigInt::from(n),
        BigInt::from(k),
    )))
}

impl TruncSeries {
    /// Series from EGF coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least order 0");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> Scalar {
        self.coeffs.get(l).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, other: &TruncSeries) -> Self {
        let n = self.order().min(other.order());
        TruncSeries::from_coeffs((0..=n).map(|l| self.coeff(l) + other.coeff(l)).collect())
    }

    pub fn sub(&self, other: &TruncSeries) -> Self {
        let n = self.order().min(other.order());
        TruncSeries::from_coeffs((0..=n).map(|l| self.coeff(l) - other.coeff(l)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &TruncSeries) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Scalar::zero(); n + 1];
        for (m, slot) in out.iter_mut().enumerate() {
            for j in 0..=m {
                let a = self.coeff(j);
                if a.is_zero() {
                    continue;
                }
                let b = other.coeff(m - j);
                if b.is_zero() {
                    continue;
                }
                *slot += &(binom(m, j) * a * b);
            }
        }
        TruncSeries::from_coeffs(out)
    }

    /// d/dx: shift EGF coefficients left; order drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        TruncSeries::from_coeffs(self.coeffs[1..].to_vec())
    }

    /// Multiply by e^x - 1. The factor is known to all orders, so the order
    /// is preserved.
    pub fn mul_expm1(&self) -> Self {
        let n = self.order();
        let mut out = vec![Scalar::zero(); n + 1];
        for (m, slot) in out.iter_mut().enumerate() {
            for j in 1..=m {
                let b = self.coeff(m - j);
                if b.is_zero() {
                    continue;
                }
                *slot += &(binom(m, j) * b);
            }
        }
        TruncSeries::from_coeffs(out)
    }

    /// Apply the constant-coefficient operator `c(d/dx)`; the order drops by
    /// `deg c`.
    pub fn apply_diff(&self, c: &Poly) -> Self {
        if c.is_zero() {
            return TruncSeries::zero(self.order());
        }
        let d = c.degree();
        assert!(self.order() >= d, "series too short for this operator");
        let n = self.order() - d;
        let mut out = vec![Scalar::zero(); n + 1];
        for (l, slot) in out.iter_mut().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                *slot += &(a * self.coeff(l + j));
            }
        }
        TruncSeries::from_coeffs(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (l, c) in self.coeffs.iter().enumerate() {
            if l > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A recurrence certificate: the monic operator polynomial together with the
/// order of the prefix it was verified against. It is a statement about the
/// available coefficients only, never about the full series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub poly: Poly,
    pub verified_to: usize,
}

/// Find the minimal monic `c` with `deg c <= max_deg` such that
/// `c(d/dx)` annihilates every available order of the prefix, by solving the
/// Hankel-style linear system on the EGF coefficients. Returns None when no
/// such operator exists within the bound.
///
/// The prefix must have length at least `2 * max_deg + 2` so that each
/// candidate degree is checked against at least as many windows as it has
/// unknowns.
pub fn detect_recurrence(prefix: &TruncSeries, max_deg: usize) -> Result<Option<Recurrence>> {
    let len = prefix.order() + 1;
    let need = 2 * max_deg + 2;
    if len < need {
        return Err(Error::InsufficientPrefix {
            got: len,
            need,
            bound: max_deg,
        });
    }
    for d in 0..=max_deg {
        if let Some(c) = solve_monic_annihilator(prefix, d) {
            return Ok(Some(Recurrence {
                poly: c,
                verified_to: prefix.order(),
            }));
        }
    }
    Ok(None)
}

/// Try to solve sum_j a_j c_{l+j} = 0 for all windows, with a_d = 1.
fn solve_monic_annihilator(prefix: &TruncSeries, d: usize) -> Option<Poly> {
    let rows = prefix.order() + 1 - d; // windows l = 0 .. order - d
    if d == 0 {
        return prefix.is_zero().then(Poly::one);
    }
    let mut matrix: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Scalar> = Vec::with_capacity(rows);
    for l in 0..rows {
        matrix.push((0..d).map(|j| prefix.coeff(l + j)).collect());
        rhs.push(-prefix.coeff(l + d));
    }
    let sol = solve_exact(matrix, rhs)?;
    let mut coeffs = sol;
    coeffs.push(Scalar::one());
    Some(Poly::from_coeffs(coeffs))
}

/// Exact Gaussian elimination for a possibly overdetermined system.
/// Free variables are set to zero; None when inconsistent.
pub(crate) fn solve_exact(
    mut matrix: Vec<Vec<Scalar>>,
    mut rhs: Vec<Scalar>,
) -> Option<Vec<Scalar>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut pivot_of_col = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        rhs.swap(row, p);
        let inv = matrix[row][col].inv().expect("pivot nonzero");
        for c in col..cols {
            matrix[row][c] = &matrix[row][c] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..rows {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..cols {
                    let t = &factor * &matrix[row][c];
                    matrix[r][c] = &matrix[r][c] - &t;
                }
                let t = &factor * &rhs[row];
                rhs[r] = &rhs[r] - &t;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero right-hand side.
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Scalar::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            sol[col] = rhs[*r].clone();
        }
    }
    Some(sol)
}
