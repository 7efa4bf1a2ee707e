//! Degree-bounded computations with parabolic subalgebras of the order-n
//! algebras.
//!
//! Negative graded pieces of a parabolic are cut out by polynomial subspaces
//! I_{-k} inside `[w]_n C[w]`. Everything here is truncated at an explicit
//! ambient degree: the results are finite certificates that carry their own
//! scope, not statements about the infinite-dimensional spaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A subspace of polynomials of degree <= `ambient`, stored as a reduced
/// echelon basis with strictly increasing pivot degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySpan {
    ambient: usize,
    rows: Vec<Poly>,
}

impl PolySpan {
    pub fn empty(ambient: usize) -> Self {
        PolySpan {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn ambient_deg(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Poly] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Codimension inside polynomials of degree <= ambient.
    pub fn codim(&self) -> usize {
        self.ambient + 1 - self.rows.len()
    }

    /// Fully reduce against the current basis; the remainder has zero
    /// coefficient at every pivot degree. Rows are kept pairwise reduced, so
    /// one pass suffices.
    fn reduce(&self, p: &Poly) -> Poly {
        let mut p = p.clone();
        for row in self.rows.iter().rev() {
            if p.is_zero() {
                break;
            }
            let c = p.coeff(row.degree());
            if !c.is_zero() {
                p = &p - &row.scale(&c);
            }
        }
        p
    }

    /// Insert a polynomial; true when it added a new pivot. Elements above
    /// the ambient degree are rejected as misuse.
    pub fn insert(&mut self, p: &Poly) -> bool {
        if p.is_zero() {
            return false;
        }
        assert!(
            p.degree() <= self.ambient,
            "element of degree {} exceeds ambient degree {}",
            p.degree(),
            self.ambient
        );
        let rem = self.reduce(p);
        if rem.is_zero() {
            return false;
        }
        let monic = rem.monic();
        // back-substitute into existing rows, keep ascending pivot order
        for row in self.rows.iter_mut() {
            let c = row.coeff(monic.degree());
            if !c.is_zero() {
                *row = &*row - &monic.scale(&c);
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|r| r.degree() > monic.degree())
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, monic);
        true
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn is_subspace_of(&self, other: &PolySpan) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

impl fmt::Display for PolySpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(zero span, ambient degree {})", self.ambient);
        }
        for row in &self.rows {
            writeln!(f, "{}", row.display("w"))?;
        }
        write!(f, "ambient degree: {}", self.ambient)
    }
}

/// The degree-<= d part of the space
/// `{ f(w-k)[w-k]_n - f(w)[w]_n | f in C[w] }`.
///
/// Generators are taken for monomials f = w^m with saturation: the loop runs
/// until monomial images can no longer land inside the ambient degree.
pub fn twisted_difference_span(n: usize, k: usize, d: usize) -> PolySpan {
    assert!(k >= 1, "twist k must be positive");
    let mut span = PolySpan::empty(d);
    let fall = Poly::falling_var(n);
    let shift = Scalar::from_int(-(k as i64));
    let fall_shifted = fall.shifted(&shift);
    // image of w^m has degree m + n - 1, so monomials beyond d + 1 - n can
    // no longer contribute; the +1 covers the degree drop of the difference.
    for m in 0..=(d + 1).saturating_sub(n) {
        let f = Poly::monomial(Scalar::one(), m);
        let image = &(&f.shifted(&shift) * &fall_shifted) - &(&f * &fall);
        if !image.is_zero() && image.degree() <= d {
            span.insert(&image);
        }
    }
    span
}

/// The span `{ [w-1]_n g(w) b(w) - [w]_n g(w+1) b(w+1) : deg g <= d }`,
/// the zero-mode image of bracketing degree-one elements against
/// `t^{-1} b(D)`. The bound `d` may be -1 for the empty set of generators.
pub fn zero_mode_bracket_span(n: usize, b: &Poly, d: i64) -> Result<PolySpan> {
    if !b.divisible_by(&Poly::falling_var(n)) {
        return Err(Error::NotDivisible(
            format!("{}", b.display("w")),
            format!("{}", Poly::falling_var(n).display("w")),
        ));
    }
    if d < 0 || b.is_zero() {
        return Ok(PolySpan::empty(0));
    }
    let ambient = n + d as usize + b.degree();
    let mut span = PolySpan::empty(ambient);
    let one = Scalar::one();
    let fall_prev = Poly::falling_var(n).shifted(&Scalar::from_int(-1));
    let fall = Poly::falling_var(n);
    let b_next = b.shifted(&one);
    for m in 0..=d as usize {
        let g = Poly::monomial(Scalar::one(), m);
        let lhs = &(&fall_prev * &g) * b;
        let rhs = &(&fall * &g.shifted(&one)) * &b_next;
        let image = &lhs - &rhs;
        if !image.is_zero() {
            span.insert(&image);
        }
    }
    Ok(span)
}

/// Depth-one piece of the minimal parabolic generated by `t^{-1} b(D)`:
/// the span of `b(w) * prod_i (G_i(w-1) - G_i(w))` over zero-mode symbols
/// `G_i in [w]_n C[w]`, saturated within degree <= d. Saturation stops when a
/// full multiplication pass adds no new echelon pivot.
pub fn minimal_parabolic_depth1(n: usize, b: &Poly, d: usize) -> Result<PolySpan> {
    if b.is_zero() {
        return Err(Error::ZeroElement("depth-one generator".into()));
    }
    if !b.divisible_by(&Poly::falling_var(n)) {
        return Err(Error::NotDivisible(
            format!("{}", b.display("w")),
            format!("{}", Poly::falling_var(n).display("w")),
        ));
    }
    if b.degree() > d {
        return Err(Error::DegreeBoundTooSmall {
            bound: d,
            degree: b.degree(),
        });
    }
    // difference symbols G(w-1) - G(w) for G = w^m [w]_n, of degree n+m-1
    let mut diffs: Vec<Poly> = Vec::new();
    let budget = d - b.degree();
    let fall = Poly::falling_var(n);
    let minus_one = Scalar::from_int(-1);
    let mut m = 0;
    while n + m <= budget + 1 {
        let g = &Poly::monomial(Scalar::one(), m) * &fall;
        let diff = &g.shifted(&minus_one) - &g;
        if !diff.is_zero() && diff.degree() <= budget {
            diffs.push(diff);
        }
        m += 1;
    }
    let mut span = PolySpan::empty(d);
    span.insert(b);
    loop {
        let mut grew = false;
        let current = span.basis().to_vec();
        for e in &current {
            for diff in &diffs {
                if e.degree() + diff.degree() > d {
                    continue;
                }
                let product = e * diff;
                if span.insert(&product) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(span)
}

/// The explicit parabolic family: for k > 1 the ideal
/// `C[w] [w-k+1]_n ... [w-1]_n [w]_n`, for k = 1 the space
/// `C [w]_n + C w[w]_n + A_{n,1}[w]_n + A_{n,1} w[w]_n`, each truncated at
/// degree d.
pub fn example_parabolic(n: usize, k: usize, d: usize) -> PolySpan {
    assert!(k >= 1, "depth k must be positive");
    let mut span = PolySpan::empty(d);
    if k > 1 {
        let mut product = Poly::one();
        for j in 0..k {
            product = &product * &Poly::falling_var(n).shifted(&Scalar::from_int(-(j as i64)));
        }
        if product.degree() > d {
            return span;
        }
        for m in 0..=(d - product.degree()) {
            span.insert(&(&Poly::monomial(Scalar::one(), m) * &product));
        }
        return span;
    }
    let fall = Poly::falling_var(n);
    let w_fall = &Poly::var() * &fall;
    if fall.degree() <= d {
        span.insert(&fall);
    }
    if w_fall.degree() <= d {
        span.insert(&w_fall);
    }
    // A_{n,1} multiples: saturate using the twisted difference span at the
    // degree budget left after multiplying by [w]_n and w[w]_n.
    for base in [&fall, &w_fall] {
        if base.degree() >= d {
            continue;
        }
        let budget = d - base.degree();
        let a_part = twisted_difference_span(n, 1, budget);
        for g in a_part.basis() {
            span.insert(&(g * base));
        }
    }
    span
}

/// One failed containment found by `closure_check`.
#[derive(Clone, Debug)]
pub struct ClosureFailure {
    pub left_mode: i64,
    pub right_mode: i64,
    pub element: Poly,
}

/// Result of the degree-bounded closure test of a parabolic family.
#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub checked: usize,
    pub failures: Vec<ClosureFailure>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify, on a degree-d basis, that the family `k -> I_{-k}` behaves like
/// the negative part of a parabolic subalgebra of the order-n algebra:
/// `[p_{-k}, p_{-l}] in p_{-k-l}` for k, l <= depth, and
/// `[g_m, p_{-k}] in p_{m-k}` for 1 <= m <= mode_bound, where nonnegative
/// target modes only require membership in the order-n algebra.
///
/// The family closure must produce `I_{-k}` at any requested ambient degree.
pub fn closure_check<F>(
    n: usize,
    family: F,
    depth: usize,
    mode_bound: usize,
    d: usize,
) -> ClosureReport
where
    F: Fn(usize, usize) -> PolySpan,
{
    let mut report = ClosureReport::default();
    let fall = Poly::falling_var(n);
    // negative-negative brackets
    for k in 1..=depth {
        let left = family(k, d);
        for l in 1..=depth {
            let right = family(l, d);
            let mut target: Option<PolySpan> = None;
            for f in left.basis() {
                for g in right.basis() {
                    // [t^{-k} f(D), t^{-l} g(D)] = t^{-k-l}(f(D-l)g(D) - f(D)g(D-k))
                    let lhs = &f.shifted(&Scalar::from_int(-(l as i64))) * g;
                    let rhs = f * &g.shifted(&Scalar::from_int(-(k as i64)));
                    let elem = &lhs - &rhs;
                    report.checked += 1;
                    if elem.is_zero() {
                        continue;
                    }
                    let need = elem.degree();
                    if target.as_ref().is_none_or(|t| t.ambient_deg() < need) {
                        target = Some(family(k + l, need.max(d)));
                    }
                    if !target.as_ref().unwrap().contains(&elem) {
                        report.failures.push(ClosureFailure {
                            left_mode: -(k as i64),
                            right_mode: -(l as i64),
                            element: elem,
                        });
                    }
                }
            }
        }
    }
    // positive modes against negative pieces
    for k in 1..=depth {
        let neg = family(k, d);
        for m in 1..=mode_bound {
            for j in 0..=d.saturating_sub(n) {
                let a = &Poly::monomial(Scalar::one(), j) * &fall;
                for f in neg.basis() {
                    // [t^m a(D), t^{-k} f(D)] = t^{m-k}(a(D-k)f(D) - a(D)f(D+m))
                    let lhs = &a.shifted(&Scalar::from_int(-(k as i64))) * f;
                    let rhs = &a * &f.shifted(&Scalar::from_int(m as i64));
                    let elem = &lhs - &rhs;
                    report.checked += 1;
                    if elem.is_zero() {
                        continue;
                    }
                    let ok = if m >= k {
                        elem.divisible_by(&fall)
                    } else {
                        family(k - m, elem.degree().max(d)).contains(&elem)
                    };
                    if !ok {
                        report.failures.push(ClosureFailure {
                            left_mode: m as i64,
                            right_mode: -(k as i64),
                            element: elem,
                        });
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monomials_times(p: &Poly, max_m: usize, d: usize) -> PolySpan {
        let mut span = PolySpan::empty(d);
        for m in 0..=max_m {
            let e = &Poly::monomial(Scalar::one(), m) * p;
            if e.degree() <= d {
                span.insert(&e);
            }
        }
        span
    }

    #[test]
    fn echelon_basics() {
        let mut span = PolySpan::empty(3);
        let w = Poly::var();
        assert!(span.insert(&w.pow(2)));
        assert!(span.insert(&(&w.pow(2) + &w)));
        assert!(!span.insert(&w.scale(&Scalar::from_int(5))));
        assert_eq!(span.dim(), 2);
        assert_eq!(span.codim(), 2);
        assert!(span.contains(&(&w.pow(2) - &w.scale(&Scalar::from_int(3)))));
        assert!(!span.contains(&Poly::one()));
        // pivots ascend and rows are reduced
        assert_eq!(span.basis()[0], Poly::var());
        assert_eq!(span.basis()[1], Poly::var().pow(2));
    }

    #[test]
    fn twisted_difference_full_for_small_n() {
        // n = 0 and n = 1 give all polynomials
        for n in [0usize, 1] {
            for k in [1usize, 2, 3] {
                let span = twisted_difference_span(n, k, 6);
                assert_eq!(span.codim(), 0, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn twisted_difference_k1_shape() {
        // A_{n,1} = C[w] [w-1]_{n-1}
        for n in [2usize, 3] {
            let d = 7;
            let span = twisted_difference_span(n, 1, d);
            let factor = Poly::falling_var(n - 1).shifted(&Scalar::from_int(-1));
            let expect = monomials_times(&factor, d - factor.degree(), d);
            assert_eq!(span, expect, "n={n}");
        }
    }

    #[test]
    fn twisted_difference_example_2_1_3() {
        let span = twisted_difference_span(2, 1, 3);
        let factor = Poly::var().shifted(&Scalar::from_int(-1));
        let expect = monomials_times(&factor, 2, 3);
        assert_eq!(span, expect);
        assert_eq!(span.dim(), 3);
    }

    #[test]
    fn twisted_difference_stability() {
        // each generator lies in the computed span
        let n = 2;
        let k = 2;
        let d = 8;
        let span = twisted_difference_span(n, k, d);
        let fall = Poly::falling_var(n);
        let shift = Scalar::from_int(-(k as i64));
        for m in 0..=d + 1 - n {
            let f = Poly::monomial(Scalar::one(), m);
            let image = &(&f.shifted(&shift) * &fall.shifted(&shift)) - &(&f * &fall);
            if !image.is_zero() && image.degree() <= d {
                assert!(span.contains(&image));
            }
        }
    }

    #[test]
    fn zero_mode_span_examples() {
        // n=1, b=w, deg g = 0: the single generator reduces to -2w
        let span = zero_mode_bracket_span(1, &Poly::var(), 0).unwrap();
        assert_eq!(span.dim(), 1);
        assert!(span.contains(&Poly::var()));

        // empty generator set
        let span = zero_mode_bracket_span(1, &Poly::var(), -1).unwrap();
        assert_eq!(span.dim(), 0);

        // n=1, b=w(w-2), deg g <= 1 is two-dimensional
        let b = &Poly::var() * &Poly::from_coeffs(vec![Scalar::from_int(-2), Scalar::one()]);
        let span = zero_mode_bracket_span(1, &b, 1).unwrap();
        assert_eq!(span.dim(), 2);

        // divisibility of b enforced
        assert!(zero_mode_bracket_span(2, &Poly::var(), 1).is_err());
    }

    #[test]
    fn minimal_parabolic_examples() {
        // n=1, b=w(w-2), d=5: everything b * C[w]_{<=3}
        let b = &Poly::var() * &Poly::from_coeffs(vec![Scalar::from_int(-2), Scalar::one()]);
        let span = minimal_parabolic_depth1(1, &b, 5).unwrap();
        let expect = monomials_times(&b, 3, 5);
        assert_eq!(span, expect);

        // degree bound admits only the generator
        for n in [1usize, 2, 3] {
            let fall = Poly::falling_var(n);
            let span = minimal_parabolic_depth1(n, &fall, n).unwrap();
            assert_eq!(span.dim(), 1);
            assert!(span.contains(&fall));
        }

        assert!(minimal_parabolic_depth1(1, &Poly::zero(), 4).is_err());
    }

    #[test]
    fn minimal_parabolic_n2_saturation() {
        // Golden data computed by exhaustive saturation: for n = 2,
        // b = [w]_2, d = 4 the span fills b * C[w]_{<=2}.
        let b = Poly::falling_var(2);
        let span = minimal_parabolic_depth1(2, &b, 4).unwrap();
        let expect = monomials_times(&b, 2, 4);
        assert_eq!(span, expect);
        assert_eq!(span.dim(), 3);
    }

    #[test]
    fn example_parabolic_shapes() {
        // k > 1: C[w] [w-1]_n [w]_n
        let d = 8;
        for n in [1usize, 2] {
            let span = example_parabolic(n, 2, d);
            let product = &Poly::falling_var(n).shifted(&Scalar::from_int(-1))
                * &Poly::falling_var(n);
            let expect = monomials_times(&product, d - product.degree(), d);
            assert_eq!(span, expect, "n={n}");
        }
        // (1,1,2): span{w, w^2}
        let span = example_parabolic(1, 1, 2);
        assert_eq!(span.dim(), 2);
        assert!(span.contains(&Poly::var()));
        assert!(span.contains(&Poly::var().pow(2)));
        // (3,1,3): only [w]_3 fits
        let span = example_parabolic(3, 1, 3);
        assert_eq!(span.dim(), 1);
        assert!(span.contains(&Poly::falling_var(3)));
    }

    #[test]
    fn codim_examples() {
        assert_eq!(twisted_difference_span(1, 1, 8).codim(), 0);
        assert_eq!(example_parabolic(1, 2, 5).codim(), 2);
    }

    #[test]
    fn closure_small() {
        let report = closure_check(1, |k, d| example_parabolic(1, k, d), 2, 2, 5);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.checked > 0);
    }
}
