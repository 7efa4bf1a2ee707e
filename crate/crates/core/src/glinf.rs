//! Windowed embeddings of the order-1 algebra into the infinite matrix
//! algebra, with central corrections, derivative-jet refinements, and
//! transport of matrix-algebra weights to highest weights.

use std::collections::BTreeMap;
use std::fmt;

use crate::dop::DOp;
use crate::error::{Error, Result};
use crate::highest_weight::HighestWeight;
use crate::poly::Poly;
use crate::quasipoly::QuasiPoly;
use crate::scalar::Scalar;
use crate::window::{act_window, Window};

/// A weight of the centrally extended matrix algebra: finitely supported
/// diagonal labels plus a central charge.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GlWeight {
    lambdas: BTreeMap<i64, Scalar>,
    c: Scalar,
}

impl GlWeight {
    pub fn new(lambdas: impl IntoIterator<Item = (i64, Scalar)>, c: Scalar) -> Self {
        let mut map = BTreeMap::new();
        for (i, v) in lambdas {
            if !v.is_zero() {
                map.insert(i, v);
            }
        }
        GlWeight { lambdas: map, c }
    }

    pub fn trivial() -> Self {
        GlWeight::default()
    }

    pub fn label(&self, i: i64) -> Scalar {
        self.lambdas.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn labels(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.lambdas.iter().map(|(&i, v)| (i, v))
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.c
    }

    /// The discrete-difference labels `n_i = lambda_i - lambda_{i+1} +
    /// delta_{i,0} c`, finitely supported.
    pub fn difference_labels(&self) -> BTreeMap<i64, Scalar> {
        let mut out = BTreeMap::new();
        let mut indices: Vec<i64> = Vec::new();
        for &i in self.lambdas.keys() {
            indices.push(i);
            indices.push(i - 1);
        }
        indices.push(0);
        indices.sort_unstable();
        indices.dedup();
        for i in indices {
            let mut v = self.label(i) - self.label(i + 1);
            if i == 0 {
                v += &self.c;
            }
            if !v.is_zero() {
                out.insert(i, v);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GlUnitaryVerdict {
    Unitary,
    NotUnitary { reason: String },
}

impl GlUnitaryVerdict {
    pub fn is_unitary(&self) -> bool {
        matches!(self, GlUnitaryVerdict::Unitary)
    }
}

impl fmt::Display for GlUnitaryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlUnitaryVerdict::Unitary => write!(f, "unitary"),
            GlUnitaryVerdict::NotUnitary { reason } => write!(f, "not unitary: {reason}"),
        }
    }
}

fn require_real_unit_interval(s: &Scalar) -> Result<()> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    let ok = s.is_real()
        && s.cmp_real(&zero) != Some(std::cmp::Ordering::Less)
        && s.cmp_real(&one) == Some(std::cmp::Ordering::Less);
    if ok {
        Ok(())
    } else {
        Err(Error::TwistOutOfRange(s.to_string()))
    }
}

/// Unitarity of the highest-weight module of the matrix algebra at twist s,
/// 0 <= s < 1. For s = 0 the standard anti-involution applies: all n_i
/// nonnegative integers and c equal to their sum. For 0 < s < 1 the signed
/// involution applies: n_i nonnegative integers away from 0, c equal to the
/// (negative) sum, and nonzero difference labels at most -c apart.
pub fn gl_unitary_check(gw: &GlWeight, s: &Scalar) -> Result<GlUnitaryVerdict> {
    require_real_unit_interval(s)?;
    let not = |reason: String| GlUnitaryVerdict::NotUnitary { reason };
    let n = gw.difference_labels();
    let c = gw.central_charge();
    let sum: Scalar = n.values().fold(Scalar::zero(), |acc, v| acc + v);
    if s.is_zero() {
        for (i, v) in &n {
            if !v.is_positive_integer() && !v.is_zero() {
                return Ok(not(format!("difference label at {i} is {v}, not a nonnegative integer")));
            }
        }
        if &sum != c {
            return Ok(not(format!(
                "central charge {c} differs from the label sum {sum}"
            )));
        }
        return Ok(GlUnitaryVerdict::Unitary);
    }
    for (i, v) in &n {
        if *i != 0 && !v.is_positive_integer() && !v.is_zero() {
            return Ok(not(format!("difference label at {i} is {v}, not a nonnegative integer")));
        }
    }
    if &sum != c {
        return Ok(not(format!(
            "central charge {c} differs from the label sum {sum}"
        )));
    }
    if !c.is_real() || c.cmp_real(&Scalar::zero()) != Some(std::cmp::Ordering::Less) {
        return Ok(not(format!("central charge {c} is not negative")));
    }
    let support: Vec<i64> = n.keys().copied().collect();
    let minus_c = -c.clone();
    for &i in &support {
        for &j in &support {
            let gap = Scalar::from_int((i - j).abs());
            if gap.cmp_real(&minus_c) == Some(std::cmp::Ordering::Greater) {
                return Ok(not(format!(
                    "difference labels at {i} and {j} are {} apart, exceeding {minus_c}",
                    (i - j).abs()
                )));
            }
        }
    }
    Ok(GlUnitaryVerdict::Unitary)
}

/// Generating-series numerator for a non-integer twist:
/// `sum_k n_k e^{(s-k)x} - c`.
pub fn series_numerator(s: &Scalar, n: &BTreeMap<i64, Scalar>, c: &Scalar) -> QuasiPoly {
    let mut q = QuasiPoly::zero();
    for (&k, v) in n {
        q.add_term(s - &Scalar::from_int(k), Poly::constant(v.clone()));
    }
    q.add_term(Scalar::zero(), Poly::constant(-c.clone()));
    q
}

/// Generating-series numerator at twist 0, with its fixed boundary terms:
/// `sum_{j>0} e^{-jx} n_j + sum_{j<0} e^{(-j+1)x} n_j + e^{2x} l0 - e^{-x} l1`.
pub fn series_numerator_integer(
    n: &BTreeMap<i64, Scalar>,
    lambda0: &Scalar,
    lambda1: &Scalar,
) -> QuasiPoly {
    let mut q = QuasiPoly::zero();
    for (&j, v) in n {
        if j > 0 {
            q.add_term(Scalar::from_int(-j), Poly::constant(v.clone()));
        } else if j < 0 {
            q.add_term(Scalar::from_int(-j + 1), Poly::constant(v.clone()));
        }
    }
    q.add_term(Scalar::from_int(2), Poly::constant(lambda0.clone()));
    q.add_term(Scalar::from_int(-1), Poly::constant(-lambda1.clone()));
    q
}

/// Transport matrix-algebra weights at twists `0 <= s_i < 1` (real, pairwise
/// distinct) to the order-1 highest weight whose exponent data is the sum of
/// the per-component generating-series numerators.
pub fn induced_highest_weight(components: &[(Scalar, GlWeight)]) -> Result<HighestWeight> {
    let mut seen: Vec<&Scalar> = Vec::new();
    let mut phi = QuasiPoly::zero();
    let mut c_total = Scalar::zero();
    for (s, gw) in components {
        require_real_unit_interval(s)?;
        if seen.contains(&s) {
            return Err(Error::TwistCollision);
        }
        seen.push(s);
        let n = gw.difference_labels();
        let numerator = if s.is_zero() {
            series_numerator_integer(&n, &gw.label(0), &gw.label(1))
        } else {
            series_numerator(s, &n, gw.central_charge())
        };
        let at0 = numerator.eval0();
        if !at0.is_zero() {
            return Err(Error::NumeratorNonvanishing(at0.to_string()));
        }
        phi = phi.add(&numerator);
        c_total += gw.central_charge();
    }
    HighestWeight::new(1, c_total, phi)
}

/// Pair a weight with a window: labels against diagonal entries plus the
/// central charge against the central coefficient.
pub fn pair_weight_window(gw: &GlWeight, w: &Window) -> Scalar {
    let mut acc = gw.central_charge() * w.central();
    for (i, v) in gw.labels() {
        acc += &(v * &w.get(i, i));
    }
    acc
}

/// Matrix window of an order-1 element at twist s: entries
/// `p(s - j)` at `(j - k, j)` for each mode `t^k p(D)`; the central part of
/// the operator is ignored and the window central coefficient is zero.
pub fn gl_embed(a: &DOp, s: &Scalar, radius: usize) -> Result<Window> {
    if !a.order_at_least(1) {
        return Err(Error::NotInOrderSubalgebra(1));
    }
    Ok(act_window(a, s, radius))
}

/// The centrally corrected embedding: window entries as `gl_embed`, central
/// coefficient `a.central - correction(zero mode)`; at integer twists the
/// result is composed with the index projection.
pub fn gl_embed_lifted(a: &DOp, s: &Scalar, radius: usize, order: usize) -> Result<Window> {
    let mut w = gl_embed(a, s, radius)?;
    let correction = central_correction(&a.mode(0), s, order)?;
    w.set_central(a.central() - &correction);
    if let Some(k) = s.as_i64() {
        w = w.project_index(k);
    }
    Ok(w)
}

/// Central correction of a zero-mode element `g(D)` (g divisible by w) at
/// twist s: with `g(w) = sum_l g_l w^{l+1}` and the exact series expansion
/// `((e^{sx} - 1)/(e^x - 1))' = sum_l c_l x^l / l!`, the correction is
/// `sum_l g_l c_l`. The series order must cover deg g.
pub fn central_correction(g: &Poly, s: &Scalar, order: usize) -> Result<Scalar> {
    if g.is_zero() {
        return Ok(Scalar::zero());
    }
    let Some(f) = g.divexact(&Poly::var()) else {
        return Err(Error::NotDivisible(
            format!("{}", g.display("w")),
            "w".into(),
        ));
    };
    if order < g.degree() {
        return Err(Error::InsufficientOrder {
            got: order,
            need: g.degree(),
        });
    }
    let numerator =
        QuasiPoly::exponential(s.clone()).sub(&QuasiPoly::constant(Scalar::one()));
    let series = numerator.div_expm1(order + 1)?.derivative();
    let mut acc = Scalar::zero();
    for (l, coeff) in f.coeffs().iter().enumerate() {
        if !coeff.is_zero() {
            acc += &(coeff * &series.coeff(l));
        }
    }
    Ok(acc)
}

/// Derivative-jet window: layers 0..=m expanding the embedding over the
/// truncated polynomial coefficients u^i. For a mode `t^k f(D) D` the layer-i
/// entry at `(j - k, j)` is `(f^(i)(s-j)(s-j) + i f^(i-1)(s-j)) / i!`.
/// Layer 0 coincides with `gl_embed`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetWindow {
    pub layers: Vec<Window>,
}

pub fn gl_embed_jets(a: &DOp, s: &Scalar, m: usize, radius: usize) -> Result<JetWindow> {
    if !a.order_at_least(1) {
        return Err(Error::NotInOrderSubalgebra(1));
    }
    let n = radius as i64;
    let margin = n - a.max_abs_mode();
    let mut layers = vec![Window::zero(radius); m + 1];
    for layer in layers.iter_mut() {
        layer.set_margin(margin);
    }
    let w = Poly::var();
    for (k, p) in a.modes() {
        let f = p.divexact(&w).expect("order checked");
        // derivatives of f, f^(0) .. f^(m)
        let mut derivs = vec![f.clone()];
        for _ in 0..m {
            derivs.push(derivs.last().unwrap().derivative());
        }
        let mut factorial = Scalar::one();
        for (i, layer) in layers.iter_mut().enumerate() {
            if i > 0 {
                factorial = factorial * Scalar::from_int(i as i64);
            }
            let inv_fact = factorial.inv().expect("factorial nonzero");
            for j in -n..=n {
                let row = j - k;
                if row.abs() > n {
                    continue;
                }
                let arg = s - &Scalar::from_int(j);
                let mut value = derivs[i].eval(&arg) * &arg;
                if i > 0 {
                    value += &(Scalar::from_int(i as i64) * derivs[i - 1].eval(&arg));
                }
                if !value.is_zero() {
                    layer.add_entry(row, j, value * &inv_fact);
                }
            }
        }
    }
    Ok(JetWindow { layers })
}
