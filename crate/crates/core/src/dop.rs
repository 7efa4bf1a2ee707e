//! The Lie algebra of regular differential operators on the circle and its
//! central extension.
//!
//! Elements are kept in the normal form `sum_k t^k f_k(D) + gamma C`, where
//! `D = t d/dt` is the Euler operator. The associative product follows the
//! rewrite `D t^k = t^k (D + k)`; the Lie bracket adds the central
//! two-cocycle evaluated against a moment functional (evaluation at 0 by
//! default).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Normal-form differential operator plus a central coefficient.
/// Stored mode polynomials are nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DOp {
    modes: BTreeMap<i64, Poly>,
    central: Scalar,
}

impl DOp {
    pub fn zero() -> Self {
        DOp::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        DOp::from_mode(0, Poly::constant(c))
    }

    pub fn one() -> Self {
        DOp::scalar(Scalar::one())
    }

    /// `t^k f(D)`.
    pub fn from_mode(k: i64, f: Poly) -> Self {
        let mut modes = BTreeMap::new();
        if !f.is_zero() {
            modes.insert(k, f);
        }
        DOp {
            modes,
            central: Scalar::zero(),
        }
    }

    /// The Euler operator `D`.
    pub fn euler() -> Self {
        DOp::from_mode(0, Poly::var())
    }

    /// `t^k`.
    pub fn t_power(k: i64) -> Self {
        DOp::from_mode(k, Poly::one())
    }

    /// `gamma C`.
    pub fn central_element(gamma: Scalar) -> Self {
        DOp {
            modes: BTreeMap::new(),
            central: gamma,
        }
    }

    /// Basis element `-t^k [D]_l`.
    pub fn falling_basis_elem(l: usize, k: i64) -> Self {
        DOp::from_mode(k, -Poly::falling_var(l))
    }

    /// Basis element `-t^k D^l`.
    pub fn power_basis_elem(l: usize, k: i64) -> Self {
        DOp::from_mode(k, -Poly::var().pow(l))
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty() && self.central.is_zero()
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.modes.iter().map(|(&k, f)| (k, f))
    }

    pub fn mode(&self, k: i64) -> Poly {
        self.modes.get(&k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn max_abs_mode(&self) -> i64 {
        self.modes.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    fn add_mode(&mut self, k: i64, f: Poly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.modes.entry(k) {
            Entry::Vacant(e) => {
                e.insert(f);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &DOp) -> Self {
        let mut out = self.clone();
        for (k, f) in other.modes() {
            out.add_mode(k, f.clone());
        }
        out.central += &other.central;
        out
    }

    pub fn sub(&self, other: &DOp) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return DOp::zero();
        }
        let mut out = DOp::zero();
        for (k, f) in self.modes() {
            out.add_mode(k, f.scale(c));
        }
        out.central = &self.central * c;
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    /// Associative product in normal form:
    /// `t^r f(D) . t^s g(D) = t^{r+s} f(D+s) g(D)`.
    /// The center is not part of the associative algebra.
    pub fn compose(&self, other: &DOp) -> Result<DOp> {
        if !self.central.is_zero() || !other.central.is_zero() {
            return Err(Error::CentralInProduct);
        }
        let mut out = DOp::zero();
        for (r, f) in self.modes() {
            for (s, g) in other.modes() {
                let shifted = f.shifted(&Scalar::from_int(s));
                out.add_mode(r + s, &shifted * g);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<DOp> {
        let mut acc = DOp::one();
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Lie bracket with the central cocycle term (moment functional:
    /// evaluation at 0). Central parts of the inputs contribute nothing.
    pub fn bracket(&self, other: &DOp) -> DOp {
        let mut out = DOp::zero();
        for (r, f) in self.modes() {
            for (s, g) in other.modes() {
                let lhs = &f.shifted(&Scalar::from_int(s)) * g;
                let rhs = f * &g.shifted(&Scalar::from_int(r));
                out.add_mode(r + s, &lhs - &rhs);
            }
        }
        out.central = self.cocycle(other);
        out
    }

    /// The two-cocycle with the default moment functional (evaluation at
    /// w = 0).
    pub fn cocycle(&self, other: &DOp) -> Scalar {
        self.cocycle_with(other, &MomentFunctional::eval_at_zero())
            .expect("evaluation functional is total")
    }

    /// The two-cocycle against an arbitrary moment functional T:
    /// for paired modes r = -s >= 0 it is
    /// `T(sum_{-r <= m <= -1} f(w+m) g(w+m+r))`, extended antisymmetrically.
    pub fn cocycle_with(&self, other: &DOp, t: &MomentFunctional) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (r, f) in self.modes() {
            let Some(g) = other.modes.get(&-r) else {
                continue;
            };
            if r > 0 {
                acc += &t.apply(&cocycle_sum(f, g, r))?;
            } else if r < 0 {
                acc -= &t.apply(&cocycle_sum(g, f, -r))?;
            }
        }
        Ok(acc)
    }

    /// Mode-j part; the central coefficient rides along in degree 0.
    pub fn graded_part(&self, j: i64) -> DOp {
        let mut out = DOp::from_mode(j, self.mode(j));
        if j == 0 {
            out.central = self.central.clone();
        }
        out
    }

    /// Membership in the order-n subalgebra: every mode polynomial divisible
    /// by `[w]_n`. The central element sits in every member.
    pub fn order_at_least(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let divisor = Poly::falling_var(n);
        self.modes.values().all(|f| f.divisible_by(&divisor))
    }

    /// The conjugate-linear anti-involution
    /// `t^k f(D) D  |->  t^{-k} conj(f)(D - k) D`, fixing C. Defined on the
    /// order-1 subalgebra.
    pub fn adjoint(&self) -> Result<DOp> {
        if !self.order_at_least(1) {
            return Err(Error::NotInOrderSubalgebra(1));
        }
        let w = Poly::var();
        let mut out = DOp::zero();
        for (k, p) in self.modes() {
            let f = p.divexact(&w).expect("order checked");
            let image = &f.conj_coeffs().shifted(&Scalar::from_int(-k)) * &w;
            out.add_mode(-k, image);
        }
        out.central = self.central.conj();
        Ok(out)
    }

    /// Natural action on a Laurent vector; the central part acts as zero.
    pub fn apply_laurent(&self, v: &LaurentVec) -> LaurentVec {
        let mut out = LaurentVec::zero(v.twist.clone());
        for (k, f) in self.modes() {
            for (&j, c) in &v.coeffs {
                let val = f.eval(&(Scalar::from_int(j) + &v.twist)) * c;
                out.add_coeff(j + k, val);
            }
        }
        out
    }
}

fn cocycle_sum(f: &Poly, g: &Poly, r: i64) -> Poly {
    let mut acc = Poly::zero();
    for m in -r..=-1 {
        let a = f.shifted(&Scalar::from_int(m));
        let b = g.shifted(&Scalar::from_int(m + r));
        acc = &acc + &(&a * &b);
    }
    acc
}

/// A linear functional on polynomials given by its moments `T(w^l)`.
#[derive(Clone, Debug)]
pub struct MomentFunctional {
    moments: Vec<Scalar>,
}

impl MomentFunctional {
    pub fn new(moments: Vec<Scalar>) -> Self {
        MomentFunctional { moments }
    }

    /// Evaluation at w = 0: moments (1, 0, 0, ...); total on all degrees.
    pub fn eval_at_zero() -> Self {
        MomentFunctional {
            moments: vec![Scalar::one()],
        }
    }

    pub fn apply(&self, p: &Poly) -> Result<Scalar> {
        if p.is_zero() {
            return Ok(Scalar::zero());
        }
        // Trailing zero moments are implied: eval_at_zero stores one moment.
        let mut acc = Scalar::zero();
        for (l, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match self.moments.get(l) {
                Some(m) => acc += &(c * m),
                None if self.moments.len() == 1 => {}
                None => {
                    return Err(Error::MissingMoment {
                        max: self.moments.len() - 1,
                        needed: l,
                    })
                }
            }
        }
        Ok(acc)
    }
}

/// Finitely supported vector `sum_j c_j t^{j+s}` for a twist s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentVec {
    twist: Scalar,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentVec {
    pub fn zero(twist: Scalar) -> Self {
        LaurentVec {
            twist,
            coeffs: BTreeMap::new(),
        }
    }

    /// `t^j` (twist 0).
    pub fn monomial(j: i64) -> Self {
        let mut v = LaurentVec::zero(Scalar::zero());
        v.add_coeff(j, Scalar::one());
        v
    }

    pub fn twist(&self) -> &Scalar {
        &self.twist
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn add_coeff(&mut self, j: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(j) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The pairing `B(f, g) = Res_t conj(f) dg` on twist-0 vectors with
    /// constants quotiented out; on monomials `B(t^k, t^l) = k delta_{k,l}`.
    pub fn residue_pairing(&self, other: &LaurentVec) -> Result<Scalar> {
        for v in [self, other] {
            if !v.twist.is_zero() {
                return Err(Error::NonzeroTwist(v.twist.to_string()));
            }
        }
        let mut acc = Scalar::zero();
        for (j, c) in self.coeffs() {
            if j == 0 {
                continue;
            }
            if let Some(d) = other.coeffs.get(&j) {
                acc += &(c.conj() * Scalar::from_int(j) * d);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in self.modes() {
            let body = render_mode(k, p);
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, body),
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
            write!(f, "{body}")?;
        }
        if !self.central.is_zero() {
            let c = &self.central;
            let rendered = c.to_string();
            let (neg, mag) = match rendered.strip_prefix('-') {
                Some(rest) if !rest.contains('+') && !rest.contains('-') => {
                    (true, rest.to_string())
                }
                _ => (false, rendered),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag == "1" {
                write!(f, "C")?;
            } else if mag.contains('+') || mag.contains('-') {
                write!(f, "({mag})*C")?;
            } else {
                write!(f, "{mag}*C")?;
            }
        }
        Ok(())
    }
}

/// Render `t^k f(D)` canonically. A leading '-' is only emitted when the
/// whole term is a single negated monomial.
fn render_mode(k: i64, p: &Poly) -> String {
    let poly = p.display("D").to_string();
    if k == 0 {
        return poly;
    }
    let t = if k == 1 {
        "t".to_string()
    } else {
        format!("t^{k}")
    };
    let single_term = !poly.contains(" + ") && !poly.contains(" - ");
    if !single_term {
        return format!("{t}*({poly})");
    }
    if poly == "1" {
        return t;
    }
    if let Some(rest) = poly.strip_prefix('-') {
        if rest == "1" {
            return format!("-{t}");
        }
        return format!("-{t}*{rest}");
    }
    format!("{t}*{poly}")
}

impl fmt::Debug for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_d() -> DOp {
        // t * D
        DOp::from_mode(1, Poly::var())
    }

    fn t_inv_d() -> DOp {
        DOp::from_mode(-1, Poly::var())
    }

    #[test]
    fn compose_normal_form() {
        // D * t = t * (D + 1)
        let dt = DOp::euler().compose(&DOp::t_power(1)).unwrap();
        let expect = DOp::from_mode(
            1,
            Poly::from_coeffs(vec![Scalar::one(), Scalar::one()]),
        );
        assert_eq!(dt, expect);
        // t * D already normal
        let td = DOp::t_power(1).compose(&DOp::euler()).unwrap();
        assert_eq!(td, t_d());
        // t^{-1} * t = 1
        let unit = DOp::t_power(-1).compose(&DOp::t_power(1)).unwrap();
        assert_eq!(unit, DOp::one());
        assert!(DOp::central_element(Scalar::one())
            .compose(&DOp::euler())
            .is_err());
    }

    #[test]
    fn bracket_examples() {
        // [tD, t^{-1}D] = -2D, central 0
        let b = t_d().bracket(&t_inv_d());
        assert_eq!(b, DOp::from_mode(0, Poly::var().scale(&Scalar::from_int(-2))));

        // [t^2 D, t^{-2} D] = -4D - C
        let a = DOp::from_mode(2, Poly::var());
        let c = DOp::from_mode(-2, Poly::var());
        let b = a.bracket(&c);
        let mut expect = DOp::from_mode(0, Poly::var().scale(&Scalar::from_int(-4)));
        expect = expect.add(&DOp::central_element(Scalar::from_int(-1)));
        assert_eq!(b, expect);

        // antisymmetry on the nose
        assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(t_d().cocycle(&t_inv_d()), Scalar::zero());
        let a = DOp::from_mode(2, Poly::var());
        let b = DOp::from_mode(-2, Poly::var());
        assert_eq!(a.cocycle(&b), Scalar::from_int(-1));
        // r + s != 0 contributes nothing
        let c = DOp::from_mode(2, Poly::var().pow(2));
        let d = DOp::from_mode(-1, Poly::var());
        assert_eq!(c.cocycle(&d), Scalar::zero());
    }

    #[test]
    fn cocycle_with_moments() {
        // With T = evaluation at 0 plus a w-moment, the value shifts.
        let a = DOp::from_mode(1, Poly::one());
        let b = DOp::from_mode(-1, Poly::one());
        // sum for r=1: f(w-1)g(w) = 1, so T(1) = moment 0.
        let t = MomentFunctional::new(vec![Scalar::from_int(7), Scalar::one()]);
        assert_eq!(a.cocycle_with(&b, &t).unwrap(), Scalar::from_int(7));
    }

    #[test]
    fn basis_elements() {
        // J-basis at (2,0): -(D^2 - D)
        let j = DOp::falling_basis_elem(2, 0);
        let expect = DOp::from_mode(
            0,
            Poly::from_coeffs(vec![
                Scalar::zero(),
                Scalar::one(),
                Scalar::from_int(-1),
            ]),
        );
        assert_eq!(j, expect);
        // [D]_0 = 1
        assert_eq!(
            DOp::falling_basis_elem(0, 3),
            DOp::from_mode(3, Poly::constant(Scalar::from_int(-1)))
        );
        // expand [D]_3 = D^3 - 3D^2 + 2D
        let j = DOp::falling_basis_elem(3, 1);
        let expect = DOp::from_mode(
            1,
            Poly::from_coeffs(vec![
                Scalar::zero(),
                Scalar::from_int(-2),
                Scalar::from_int(3),
                Scalar::from_int(-1),
            ]),
        );
        assert_eq!(j, expect);
    }

    #[test]
    fn order_membership() {
        assert!(t_d().order_at_least(1));
        assert!(!DOp::from_mode(1, Poly::var().pow(2)).order_at_least(2));
        assert!(DOp::central_element(Scalar::one()).order_at_least(5));
        assert!(DOp::t_power(2).order_at_least(0));
    }

    #[test]
    fn graded_parts() {
        let a = t_d().add(&t_inv_d()).add(&DOp::central_element(Scalar::one()));
        assert_eq!(a.graded_part(1), t_d());
        assert_eq!(
            a.graded_part(0),
            DOp::central_element(Scalar::one())
        );
        assert!(a.graded_part(3).is_zero());
    }

    #[test]
    fn adjoint_examples() {
        // t D -> t^{-1} D
        assert_eq!(t_d().adjoint().unwrap(), t_inv_d());
        // t^{-2}(D+1)D -> t^2(D+3)D
        let p = &Poly::from_coeffs(vec![Scalar::one(), Scalar::one()]) * &Poly::var();
        let a = DOp::from_mode(-2, p);
        let q = &Poly::from_coeffs(vec![Scalar::from_int(3), Scalar::one()]) * &Poly::var();
        assert_eq!(a.adjoint().unwrap(), DOp::from_mode(2, q));
        // conjugate-linearity
        let ia = t_d().scale(&Scalar::i());
        assert_eq!(ia.adjoint().unwrap(), t_inv_d().scale(&-Scalar::i()));
        // not defined outside order 1
        assert!(DOp::t_power(1).adjoint().is_err());
    }

    #[test]
    fn residue_pairing_examples() {
        let b = |k: i64, l: i64| {
            LaurentVec::monomial(k)
                .residue_pairing(&LaurentVec::monomial(l))
                .unwrap()
        };
        assert_eq!(b(2, 2), Scalar::from_int(2));
        assert_eq!(b(2, 3), Scalar::zero());
        assert_eq!(b(-1, -1), Scalar::from_int(-1));
    }

    #[test]
    fn virasoro_witness_in_order_one() {
        // The span of L_k = -t^k D is a Virasoro subalgebra of the order-1
        // algebra: [L_m, L_k] = (m - k) L_{m+k} - delta_{m,-k} (m^3 - m)/6 C.
        let ell = |k: i64| DOp::from_mode(k, -Poly::var());
        for m in -3i64..=3 {
            for k in -3i64..=3 {
                assert!(ell(m).order_at_least(1));
                let bracket = ell(m).bracket(&ell(k));
                let mut expect = ell(m + k).scale(&Scalar::from_int(m - k));
                if m == -k {
                    expect = expect.add(&DOp::central_element(Scalar::from_ratio(
                        -(m * m * m - m),
                        6,
                    )));
                }
                assert_eq!(bracket, expect, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn rendering() {
        let a = DOp::from_mode(
            2,
            Poly::from_coeffs(vec![
                Scalar::zero(),
                Scalar::from_int(-3),
                Scalar::zero(),
                Scalar::one(),
            ]),
        );
        assert_eq!(a.to_string(), "t^2*(D^3 - 3*D)");
        let b = t_d().bracket(&t_inv_d());
        assert_eq!(b.to_string(), "-2*D");
        assert_eq!(DOp::central_element(Scalar::one()).to_string(), "C");
        let mixed = DOp::from_mode(-1, Poly::var())
            .add(&DOp::central_element(Scalar::from_int(-2)));
        assert_eq!(mixed.to_string(), "t^-1*D - 2*C");
    }
}
