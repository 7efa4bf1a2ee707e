//! Finite windows of the infinite matrix algebra.
//!
//! A `Window` is the restriction of a matrix with finitely many nonzero
//! diagonals to the index square {-N..N}^2, plus a central coefficient. The
//! `margin` records the radius on which entries can be trusted after
//! truncated operations: comparisons outside it are undefined rather than
//! false, so truncation artifacts can never masquerade as algebra failures.

use std::fmt;

use crate::dop::DOp;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Window {
    radius: i64,
    margin: i64,
    entries: Vec<Scalar>,
    central: Scalar,
}

impl Window {
    pub fn zero(radius: usize) -> Self {
        let n = radius as i64;
        let side = (2 * n + 1) as usize;
        Window {
            radius: n,
            margin: n,
            entries: vec![Scalar::zero(); side * side],
            central: Scalar::zero(),
        }
    }

    /// Elementary matrix `E_{ij}` on the given window.
    pub fn unit(radius: usize, i: i64, j: i64) -> Self {
        let mut w = Window::zero(radius);
        w.set(i, j, Scalar::one());
        w
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn set_central(&mut self, c: Scalar) {
        self.central = c;
    }

    pub fn set_margin(&mut self, margin: i64) {
        self.margin = margin.min(self.radius);
    }

    pub fn in_range(&self, i: i64, j: i64) -> bool {
        i.abs() <= self.radius && j.abs() <= self.radius
    }

    fn idx(&self, i: i64, j: i64) -> usize {
        debug_assert!(self.in_range(i, j));
        let side = (2 * self.radius + 1) as usize;
        ((i + self.radius) as usize) * side + ((j + self.radius) as usize)
    }

    pub fn get(&self, i: i64, j: i64) -> Scalar {
        if self.in_range(i, j) {
            self.entries[self.idx(i, j)].clone()
        } else {
            Scalar::zero()
        }
    }

    pub fn set(&mut self, i: i64, j: i64, value: Scalar) {
        let idx = self.idx(i, j);
        self.entries[idx] = value;
    }

    pub fn add_entry(&mut self, i: i64, j: i64, value: Scalar) {
        let idx = self.idx(i, j);
        self.entries[idx] += &value;
    }

    pub fn nonzero_entries(&self) -> Vec<(i64, i64, Scalar)> {
        let mut out = Vec::new();
        for i in -self.radius..=self.radius {
            for j in -self.radius..=self.radius {
                let v = &self.entries[self.idx(i, j)];
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Window) -> Self {
        assert_eq!(self.radius, other.radius, "window size mismatch");
        let mut out = self.clone();
        for (i, e) in out.entries.iter_mut().enumerate() {
            *e += &other.entries[i];
        }
        out.margin = self.margin.min(other.margin);
        out.central = &self.central + &other.central;
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = &*e * c;
        }
        out.central = &self.central * c;
        out
    }

    /// Matrix product; trusted only up to `min(margins)`.
    pub fn mul(&self, other: &Window) -> Self {
        assert_eq!(self.radius, other.radius, "window size mismatch");
        let n = self.radius;
        let mut out = Window::zero(n as usize);
        out.margin = self.margin.min(other.margin);
        for i in -n..=n {
            for k in -n..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in -n..=n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_entry(i, j, &a * &b);
                }
            }
        }
        out
    }

    /// Lie bracket in the centrally extended matrix algebra: the commutator
    /// plus the trace cocycle as the central coefficient. Central parts of
    /// the inputs contribute nothing.
    pub fn bracket(&self, other: &Window) -> Result<Window> {
        let mut out = self.mul(other);
        let ba = other.mul(self);
        for i in -self.radius..=self.radius {
            for j in -self.radius..=self.radius {
                let t = ba.get(i, j);
                if !t.is_zero() {
                    let cur = out.get(i, j);
                    out.set(i, j, cur - t);
                }
            }
        }
        out.central = self.gl_cocycle(other)?;
        Ok(out)
    }

    /// The cocycle `tr([J, A] B)` with `J = sum_{i<=0} E_ii`. Only index
    /// pairs crossing zero contribute, so the sum is finite; pairs outside
    /// the trusted margin of either operand are reported as boundary
    /// contamination.
    pub fn gl_cocycle(&self, other: &Window) -> Result<Scalar> {
        assert_eq!(self.radius, other.radius, "window size mismatch");
        let n = self.radius;
        let trusted = self.margin.min(other.margin);
        let mut acc = Scalar::zero();
        for i in -n..=n {
            for j in -n..=n {
                let sign = if i <= 0 && j > 0 {
                    1
                } else if j <= 0 && i > 0 {
                    -1
                } else {
                    continue;
                };
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(j, i);
                if b.is_zero() {
                    continue;
                }
                if i.abs() > trusted || j.abs() > trusted {
                    return Err(Error::WindowBoundary);
                }
                acc += &(a * b).scale_int(sign);
            }
        }
        Ok(acc)
    }

    /// Zero out row `-s` and column `s`.
    pub fn project_index(&self, s: i64) -> Self {
        let mut out = self.clone();
        let n = self.radius;
        if (-s).abs() <= n {
            for j in -n..=n {
                out.set(-s, j, Scalar::zero());
            }
        }
        if s.abs() <= n {
            for i in -n..=n {
                out.set(i, s, Scalar::zero());
            }
        }
        out
    }

    /// Shift every entry by (k, k); the trusted radius shrinks by |k|.
    pub fn diagonal_shift(&self, k: i64) -> Result<Window> {
        let slack = self.radius - self.margin;
        if k.abs() > slack {
            return Err(Error::ShiftExceedsMargin {
                shift: k,
                slack,
            });
        }
        let n = self.radius;
        let mut out = Window::zero(n as usize);
        out.margin = self.margin - k.abs();
        out.central = self.central.clone();
        for i in -n..=n {
            for j in -n..=n {
                let v = self.get(i, j);
                if !v.is_zero() && out.in_range(i + k, j + k) {
                    out.set(i + k, j + k, v);
                }
            }
        }
        Ok(out)
    }

    /// The anti-involution induced on windows by the operator adjoint:
    /// `E_ij |-> ((s-i)/(s-j)) E_ji` with conjugated entries, fixing C.
    pub fn induced_adjoint(&self, s: &Scalar) -> Result<Window> {
        let n = self.radius;
        let mut out = Window::zero(n as usize);
        out.margin = self.margin;
        out.central = self.central.conj();
        for i in -n..=n {
            for j in -n..=n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let denom = s - &Scalar::from_int(j);
                if denom.is_zero() {
                    return Err(Error::AdjointScaleDivision(j));
                }
                let scale = (s - &Scalar::from_int(i)) / denom;
                out.set(j, i, scale * v.conj());
            }
        }
        Ok(out)
    }

    /// The signed-transpose anti-involution: `E_ij |-> E_ji` when i, j are on
    /// the same side of the origin (both > 0 or both <= 0), `-E_ji`
    /// otherwise; entries conjugated, C fixed.
    pub fn dagger(&self) -> Window {
        let n = self.radius;
        let mut out = Window::zero(n as usize);
        out.margin = self.margin;
        out.central = self.central.conj();
        for i in -n..=n {
            for j in -n..=n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let same_side = (i > 0 && j > 0) || (i <= 0 && j <= 0);
                let signed = if same_side { v.conj() } else { -v.conj() };
                out.set(j, i, signed);
            }
        }
        out
    }

    /// Exact equality of entries on the common trusted square.
    pub fn equal_interior_entries(&self, other: &Window) -> bool {
        let m = self.margin.min(other.margin);
        if m < 0 {
            return true;
        }
        for i in -m..=m {
            for j in -m..=m {
                if self.get(i, j) != other.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Interior entries and the central coefficient.
    pub fn equal_interior(&self, other: &Window) -> bool {
        self.central == other.central && self.equal_interior_entries(other)
    }
}

trait ScaleInt {
    fn scale_int(self, k: i64) -> Scalar;
}

impl ScaleInt for Scalar {
    fn scale_int(self, k: i64) -> Scalar {
        if k == 1 {
            self
        } else {
            self * Scalar::from_int(k)
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self.nonzero_entries();
        if entries.is_empty() {
            writeln!(f, "(zero matrix)")?;
        }
        for (i, j, v) in entries {
            writeln!(f, "({i}, {j}): {v}")?;
        }
        if !self.central.is_zero() {
            writeln!(f, "central: {}", self.central)?;
        }
        write!(f, "margin: {}", self.margin)
    }
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Matrix of the natural action on the basis `v_j = t^{-j+s}`, j in {-N..N}:
/// `t^k f(D)` sends `v_j` to `f(-j+s) v_{j-k}`. Columns whose image leaves
/// the window fall outside the recorded margin. The central part is ignored.
pub fn act_window(a: &DOp, s: &Scalar, radius: usize) -> Window {
    let mut w = Window::zero(radius);
    let n = radius as i64;
    for (k, f) in a.modes() {
        for j in -n..=n {
            let i = j - k;
            if i.abs() > n {
                continue;
            }
            let value = f.eval(&(s - &Scalar::from_int(j)));
            if !value.is_zero() {
                w.add_entry(i, j, value);
            }
        }
    }
    w.margin = n - a.max_abs_mode();
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn act_window_examples() {
        // tD sends v_j to (-j) v_{j-1}
        let a = DOp::from_mode(1, Poly::var());
        let w = act_window(&a, &Scalar::zero(), 2);
        assert_eq!(w.get(-2, -1), Scalar::one());
        assert_eq!(w.get(0, 1), Scalar::from_int(-1));
        assert_eq!(w.get(1, 2), Scalar::from_int(-2));
        assert_eq!(w.get(-1, 0), Scalar::zero());
        assert_eq!(w.margin(), 1);

        assert!(act_window(&DOp::zero(), &Scalar::zero(), 2)
            .nonzero_entries()
            .is_empty());

        // D at twist 1/2: diagonal -j + 1/2
        let w = act_window(&DOp::euler(), &Scalar::from_ratio(1, 2), 1);
        assert_eq!(w.get(-1, -1), Scalar::from_ratio(3, 2));
        assert_eq!(w.get(0, 0), Scalar::from_ratio(1, 2));
        assert_eq!(w.get(1, 1), Scalar::from_ratio(-1, 2));
        assert_eq!(w.margin(), 1);
    }

    #[test]
    fn cocycle_examples() {
        let e01 = Window::unit(3, 0, 1);
        let e10 = Window::unit(3, 1, 0);
        assert_eq!(e01.gl_cocycle(&e10).unwrap(), Scalar::one());
        assert_eq!(e10.gl_cocycle(&e01).unwrap(), Scalar::from_int(-1));
        let d = act_window(&DOp::euler(), &Scalar::zero(), 3);
        assert_eq!(d.gl_cocycle(&d).unwrap(), Scalar::zero());
    }

    #[test]
    fn cocycle_boundary_reported() {
        let mut a = Window::unit(2, 0, 1);
        a.set_margin(0);
        let b = Window::unit(2, 1, 0);
        assert_eq!(a.gl_cocycle(&b), Err(Error::WindowBoundary));
    }

    #[test]
    fn projection() {
        let a = DOp::from_mode(1, Poly::var());
        let w = act_window(&a, &Scalar::zero(), 2);
        let p = w.project_index(0);
        // drops the (0,1) entry: row 0 excluded
        assert_eq!(p.get(0, 1), Scalar::zero());
        assert_eq!(p.get(-2, -1), Scalar::one());
        let d = act_window(&DOp::euler(), &Scalar::zero(), 2).project_index(0);
        assert_eq!(d.get(0, 0), Scalar::zero());
        assert_eq!(d.get(1, 1), Scalar::from_int(-1));
    }

    #[test]
    fn shifts() {
        let mut e00 = Window::unit(2, 0, 0);
        e00.set_margin(1);
        let shifted = e00.diagonal_shift(1).unwrap();
        assert_eq!(shifted.get(1, 1), Scalar::one());
        assert_eq!(shifted.margin(), 0);
        let mut e = Window::unit(3, -1, 2);
        e.set_margin(2);
        let back = e.diagonal_shift(-1).unwrap();
        assert_eq!(back.get(-2, 1), Scalar::one());
        // shift exceeding the slack errors
        let full = Window::unit(2, 0, 0);
        assert!(full.diagonal_shift(1).is_err());
        // round trip within reduced margin
        let w = act_window(&DOp::from_mode(1, Poly::var()), &Scalar::zero(), 3);
        let rt = w
            .diagonal_shift(1)
            .unwrap()
            .diagonal_shift(-1)
            .unwrap();
        assert!(rt.equal_interior_entries(&w));
    }

    #[test]
    fn induced_adjoint_scale() {
        let w = Window::unit(2, 0, 1);
        let adj = w.induced_adjoint(&Scalar::from_ratio(1, 2)).unwrap();
        assert_eq!(adj.get(1, 0), Scalar::from_int(-1));
        // division by zero in the scale is reported
        assert!(w.induced_adjoint(&Scalar::from_int(1)).is_err());
    }

    #[test]
    fn dagger_rules() {
        assert_eq!(
            Window::unit(3, 1, 2).dagger().get(2, 1),
            Scalar::one()
        );
        assert_eq!(
            Window::unit(3, 0, 1).dagger().get(1, 0),
            Scalar::from_int(-1)
        );
        // involution
        let mut w = Window::unit(3, -1, 2);
        w.add_entry(2, 2, Scalar::i());
        assert!(w.dagger().dagger().equal_interior(&w));
    }
}
