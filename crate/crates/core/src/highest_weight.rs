//! Highest weights for the order-n algebras: label generating series, the
//! quasifiniteness decision, characteristic polynomials, exponents, the
//! level-one module action with its Gram form, and the unitarity classifier.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quasipoly::{solve_falling_diffop, QuasiPoly};
use crate::scalar::Scalar;
use crate::series::{detect_recurrence, Recurrence, TruncSeries};

/// A highest weight, given by the algebra order n (n = 0 is the full
/// algebra of differential operators), the central charge, and the canonical
/// quasipolynomial phi with phi(0) = 0.
///
/// Canonical means: at each integer exponent 1..=n the multiplicity has zero
/// constant term, so the kernel freedom of the defining equation is pushed
/// into the exponent-0 constant, which phi(0) = 0 then fixes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HighestWeight {
    n: usize,
    c: Scalar,
    phi: QuasiPoly,
}

/// A finite prefix of labels Delta_0 .. Delta_K for the order-n algebra,
/// stored as the truncated generating series sum x^l/l! Delta_l.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelSeq {
    pub n: usize,
    pub deltas: TruncSeries,
}

/// A depth-one vector `t^{-1} q(D) v`, with q divisible by `[w]_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Level1Vector {
    pub n: usize,
    pub q: Poly,
}

/// Result of acting with a zero-mode element on a depth-one vector:
/// the commutator part plus a scalar multiple of the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Level1Action {
    pub commutator: Level1Vector,
    pub scalar: Scalar,
}

impl Level1Action {
    /// The full image vector: commutator part plus scalar * input.
    pub fn combined(&self, input: &Level1Vector) -> Level1Vector {
        Level1Vector {
            n: input.n,
            q: &self.commutator.q + &input.q.scale(&self.scalar),
        }
    }
}

/// Exponent data of `phi + c`: distinct exponents with nonzero polynomial
/// multiplicities; the multiplicities evaluated at 0 sum to the central
/// charge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exponents {
    pub entries: Vec<(Scalar, Poly)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuasifiniteVerdict {
    /// A recurrence certificate valid on all supplied orders.
    QuasifiniteToOrder(Recurrence),
    /// No recurrence within the degree bound on the supplied prefix.
    NotDetected { bound: usize, verified_to: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UnitaryVerdict {
    Unitary,
    NotUnitary { reason: String },
}

impl UnitaryVerdict {
    pub fn is_unitary(&self) -> bool {
        matches!(self, UnitaryVerdict::Unitary)
    }
}

impl fmt::Display for UnitaryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitaryVerdict::Unitary => write!(f, "unitary"),
            UnitaryVerdict::NotUnitary { reason } => write!(f, "not unitary: {reason}"),
        }
    }
}

/// Per-exponent status in the root report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootStatus {
    Root,
    KernelExempt,
    NotRoot,
}

/// Whether each exponent of the weight is a root of `[w-1]_{n-1} a(w)`.
/// Integer exponents in 0..=n with constant multiplicity lie in the kernel
/// of the defining operator and are exempt.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootReport {
    pub entries: Vec<(Scalar, RootStatus)>,
}

impl RootReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, s)| !matches!(s, RootStatus::NotRoot))
    }
}

/// `[w-1]_{n-1}` for n >= 1 and the empty product for n = 0.
fn mandatory_prefix(n: usize) -> Poly {
    if n == 0 {
        Poly::one()
    } else {
        Poly::falling_var(n - 1).shifted(&Scalar::from_int(-1))
    }
}

impl HighestWeight {
    /// Build a weight from any representative quasipolynomial with
    /// phi(0) = 0; the stored phi is the canonical representative with the
    /// same label series.
    pub fn new(n: usize, c: Scalar, phi: QuasiPoly) -> Result<Self> {
        let at0 = phi.eval0();
        if !at0.is_zero() {
            return Err(Error::NonzeroConstantTerm(at0.to_string()));
        }
        let f = phi.apply_diff(&Poly::falling_var(n + 1));
        let canonical = solve_falling_diffop(&f, n);
        Ok(HighestWeight {
            n,
            c,
            phi: canonical,
        })
    }

    /// The weight with the given defining quasipolynomial
    /// `F = [d/dx]_{n+1} phi`; phi is reconstructed canonically.
    pub fn from_defining(f: &QuasiPoly, n: usize, c: Scalar) -> Self {
        HighestWeight {
            n,
            c,
            phi: solve_falling_diffop(f, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.c
    }

    pub fn phi(&self) -> &QuasiPoly {
        &self.phi
    }

    /// Labels to order K: `Delta(x) = [d/dx]_n (phi / (e^x - 1))`, exactly.
    pub fn labels(&self, order: usize) -> LabelSeq {
        let quotient = self
            .phi
            .div_expm1(order + self.n)
            .expect("phi(0) = 0 by construction");
        LabelSeq {
            n: self.n,
            deltas: quotient.apply_diff(&Poly::falling_var(self.n)),
        }
    }

    pub fn delta(&self, l: usize) -> Scalar {
        self.labels(l).deltas.coeff(l)
    }

    /// The defining quasipolynomial `F = [d/dx]_{n+1} phi`, exact.
    pub fn defining_quasipoly(&self) -> QuasiPoly {
        self.phi.apply_diff(&Poly::falling_var(self.n + 1))
    }

    /// The monic factor `a(w)` of the characteristic polynomial: the minimal
    /// annihilator of `[d/dx - 1]_{n-1}` applied to the defining
    /// quasipolynomial. For n = 0 the singular-vector condition collapses to
    /// `b(d/dx) phi = 0`, so `a` is the annihilator of phi itself.
    fn annihilator_part(&self) -> Poly {
        if self.n == 0 {
            return self.phi.min_annihilator();
        }
        self.defining_quasipoly()
            .apply_diff(&mandatory_prefix(self.n))
            .min_annihilator()
    }

    /// Characteristic polynomial `b(w) = [w]_n a(w)`: the minimal monic
    /// polynomial with `t^{-1} b(D) v` singular. Monic.
    pub fn characteristic_poly(&self) -> Poly {
        &Poly::falling_var(self.n) * &self.annihilator_part()
    }

    /// Exponent data of `phi + c`.
    pub fn exponents(&self) -> Exponents {
        let shifted = self.phi.add(&QuasiPoly::constant(self.c.clone()));
        Exponents {
            entries: shifted
                .terms()
                .map(|(r, p)| (r.clone(), p.clone()))
                .collect(),
        }
    }

    /// Check each exponent against the roots of `[w-1]_{n-1} a(w)`.
    pub fn exponent_root_report(&self) -> RootReport {
        let test_poly = &mandatory_prefix(self.n) * &self.annihilator_part();
        let n_scalar = self.n as i64;
        let entries = self
            .exponents()
            .entries
            .into_iter()
            .map(|(r, p)| {
                let status = if test_poly.eval(&r).is_zero() {
                    RootStatus::Root
                } else {
                    let kernel_exponent = p.is_constant()
                        && r.as_i64().is_some_and(|k| (0..=n_scalar).contains(&k));
                    if kernel_exponent {
                        RootStatus::KernelExempt
                    } else {
                        RootStatus::NotRoot
                    }
                };
                (r, status)
            })
            .collect();
        RootReport { entries }
    }

    /// Label series of the ambient full algebra through which this weight
    /// factors: the series Gamma with `[d/dx]_n Gamma = Delta`.
    pub fn lift_labels(&self, order: usize) -> Result<TruncSeries> {
        if self.n == 0 {
            return Err(Error::WrongOrder {
                expected: 1,
                got: 0,
            });
        }
        self.phi.div_expm1(order)
    }

    /// Evaluate the weight functional on `H(D) + gamma C`, where H is
    /// divisible by `[w]_n`: writing `H = sum_l h_l w^l [w]_n`, the value is
    /// `-sum_l h_l Delta_l + gamma c`.
    pub fn eval_weight(&self, h: &Poly, gamma: &Scalar) -> Result<Scalar> {
        if h.is_zero() {
            return Ok(gamma * &self.c);
        }
        let fall = Poly::falling_var(self.n);
        let Some(quotient) = h.divexact(&fall) else {
            return Err(Error::NotDivisible(
                format!("{}", h.display("w")),
                format!("{}", fall.display("w")),
            ));
        };
        let labels = self.labels(quotient.degree());
        let mut acc = gamma * &self.c;
        for (l, coeff) in quotient.coeffs().iter().enumerate() {
            if !coeff.is_zero() {
                acc -= &(coeff * &labels.deltas.coeff(l));
            }
        }
        Ok(acc)
    }

    /// Whether `t^{-1} b(D) v` is singular to the tested depth: the weight
    /// vanishes on `[w-1]_n g(w) b(w) - [w]_n g(w+1) b(w+1)` for all
    /// monomials g = w^m, m <= g_deg.
    pub fn singular_check(&self, b: &Poly, g_deg: usize) -> Result<bool> {
        let fall = Poly::falling_var(self.n);
        if !b.divisible_by(&fall) {
            return Err(Error::NotDivisible(
                format!("{}", b.display("w")),
                format!("{}", fall.display("w")),
            ));
        }
        let fall_prev = fall.shifted(&Scalar::from_int(-1));
        let one = Scalar::one();
        let b_next = b.shifted(&one);
        for m in 0..=g_deg {
            let g = Poly::monomial(Scalar::one(), m);
            let elem = &(&(&fall_prev * &g) * b) - &(&(&fall * &g.shifted(&one)) * &b_next);
            if !self.eval_weight(&elem, &Scalar::zero())?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Action of a zero-mode element `G(D)` (G divisible by `[w]_n`) on a
    /// depth-one vector `t^{-1} q(D) v`: the commutator contributes
    /// `(G(w-1) - G(w)) q(w)` and the Cartan part the scalar `lambda(G)`.
    pub fn level1_act(&self, g: &Poly, v: &Level1Vector) -> Result<Level1Action> {
        let fall = Poly::falling_var(self.n);
        if !g.divisible_by(&fall) {
            return Err(Error::NotDivisible(
                format!("{}", g.display("w")),
                format!("{}", fall.display("w")),
            ));
        }
        if v.n != self.n {
            return Err(Error::WrongOrder {
                expected: self.n,
                got: v.n,
            });
        }
        let diff = &g.shifted(&Scalar::from_int(-1)) - g;
        Ok(Level1Action {
            commutator: Level1Vector {
                n: self.n,
                q: &diff * &v.q,
            },
            scalar: self.eval_weight(g, &Scalar::zero())?,
        })
    }

    /// The zero-mode element `-1/2 (D^2 + (1-Delta_1)/(1+Delta_0) D)`; its
    /// combined depth-one action sends `t^{-1} q(D) v` to `t^{-1} w q(D) v`
    /// with no scalar residue. Defined for n = 1 and 1 + Delta_0 != 0.
    pub fn raising_operator(&self) -> Result<Poly> {
        if self.n != 1 {
            return Err(Error::WrongOrder {
                expected: 1,
                got: self.n,
            });
        }
        let labels = self.labels(1);
        let d0 = labels.deltas.coeff(0);
        let d1 = labels.deltas.coeff(1);
        let denom = Scalar::one() + &d0;
        if denom.is_zero() {
            return Err(Error::SingularWeight);
        }
        let beta = (Scalar::one() - d1) / denom;
        let p = Poly::from_coeffs(vec![Scalar::zero(), beta, Scalar::one()]);
        Ok(p.scale(&Scalar::from_ratio(-1, 2)))
    }

    /// Level-one Gram matrix on the basis `t^{-1} D^{j+1} v`, 0 <= j < d:
    /// entries are weight values of the zero-mode part of
    /// `[adjoint(t^{-1} D^{i+1}), t^{-1} D^{j+1}]`; the cocycle contributes
    /// nothing because the vectors vanish at 0. Requires n = 1.
    pub fn gram_level1(&self, d: usize) -> Result<Vec<Vec<Scalar>>> {
        if self.n != 1 {
            return Err(Error::WrongOrder {
                expected: 1,
                got: self.n,
            });
        }
        let one = Scalar::one();
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            // adjoint of t^{-1} D^{i+1} is t F(D) with F(w) = (w+1)^i w
            let f = &Poly::var().shifted(&one).pow(i) * &Poly::var();
            let f_prev = f.shifted(&Scalar::from_int(-1));
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let q = Poly::monomial(Scalar::one(), j + 1);
                let elem = &(&f_prev * &q) - &(&f * &q.shifted(&one));
                row.push(self.eval_weight(&elem, &Scalar::zero())?);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Unitarity of the irreducible module with this weight, for n = 1.
    /// Exponents are split into classes by the residue of their real part
    /// modulo 1; the verdict carries the first violated condition.
    pub fn unitary_classify(&self) -> Result<UnitaryVerdict> {
        if self.n != 1 {
            return Err(Error::WrongOrder {
                expected: 1,
                got: self.n,
            });
        }
        Ok(classify_exponents(&self.exponents()))
    }
}

/// The unitarity conditions on raw exponent data (order 1 algebra):
/// all exponents real with constant integer multiplicities; integer
/// exponents have positive multiplicities; in each non-integer residue
/// class exactly one multiplicity is negative, the negated sum m is a
/// positive integer, and the exponent spread is at most m.
pub fn classify_exponents(exps: &Exponents) -> UnitaryVerdict {
    use std::collections::BTreeMap;
    let not = |reason: String| UnitaryVerdict::NotUnitary { reason };
    for (r, p) in &exps.entries {
        if !r.is_real() {
            return not(format!("exponent {r} is not real"));
        }
        if !p.is_constant() {
            return not(format!(
                "exponent {r} has non-constant multiplicity {}",
                p.display("x")
            ));
        }
    }
    let mut classes: BTreeMap<_, Vec<(&Scalar, Scalar)>> = BTreeMap::new();
    for (r, p) in &exps.entries {
        classes.entry(r.re_fract()).or_default().push((r, p.coeff(0)));
    }
    for (alpha, members) in &classes {
        if alpha.is_integer() {
            // integer exponents: positive integer multiplicities
            for (r, m) in members {
                if !m.is_positive_integer() {
                    return not(format!(
                        "integer exponent {r} has non-positive-integer multiplicity {m}"
                    ));
                }
            }
            continue;
        }
        let mut negatives = 0usize;
        let mut total = Scalar::zero();
        for (r, m) in members {
            if !m.is_integer() {
                return not(format!("exponent {r} has non-integer multiplicity {m}"));
            }
            if m.cmp_real(&Scalar::zero()) == Some(std::cmp::Ordering::Less) {
                negatives += 1;
            }
            total += m;
        }
        if negatives != 1 {
            return not(format!(
                "residue class {alpha} has {negatives} negative multiplicities (need exactly one)"
            ));
        }
        let m_alpha = -total;
        if !m_alpha.is_positive_integer() {
            return not(format!(
                "residue class {alpha}: negated multiplicity sum {m_alpha} is not a positive integer"
            ));
        }
        let mut min = members[0].0.clone();
        let mut max = members[0].0.clone();
        for (r, _) in members {
            if r.cmp_real(&min) == Some(std::cmp::Ordering::Less) {
                min = (*r).clone();
            }
            if r.cmp_real(&max) == Some(std::cmp::Ordering::Greater) {
                max = (*r).clone();
            }
        }
        let spread = max - min;
        if spread.cmp_real(&m_alpha) == Some(std::cmp::Ordering::Greater) {
            return not(format!(
                "residue class {alpha}: exponent spread {spread} exceeds {m_alpha}"
            ));
        }
    }
    UnitaryVerdict::Unitary
}

impl LabelSeq {
    pub fn from_deltas(n: usize, deltas: Vec<Scalar>) -> Self {
        LabelSeq {
            n,
            deltas: TruncSeries::from_coeffs(deltas),
        }
    }

    /// The series whose quasipolynomiality decides quasifiniteness:
    /// `n Delta(x) + d/dx ((e^x - 1) Delta(x))`, one order shorter.
    pub fn quasifinite_series(&self) -> TruncSeries {
        let order = self.deltas.order();
        assert!(order >= 1, "need at least two labels");
        let derivative = self.deltas.mul_expm1().derivative();
        let scaled = self
            .deltas
            .truncate(order - 1)
            .scale(&Scalar::from_int(self.n as i64));
        scaled.add(&derivative)
    }

    /// Decide quasifiniteness on the available prefix: factor out the
    /// mandatory `[d/dx - 1]_{n-1}` and search for a minimal recurrence of
    /// the remainder within the degree bound.
    pub fn quasifinite_check(&self, max_deg: usize) -> Result<QuasifiniteVerdict> {
        let needed = 2 * max_deg + 2 + self.n.max(1);
        if self.deltas.order() + 1 < needed {
            return Err(Error::InsufficientPrefix {
                got: self.deltas.order() + 1,
                need: needed,
                bound: max_deg,
            });
        }
        let series = self.quasifinite_series();
        let reduced = series.apply_diff(&mandatory_prefix(self.n));
        match detect_recurrence(&reduced, max_deg)? {
            Some(rec) => Ok(QuasifiniteVerdict::QuasifiniteToOrder(rec)),
            None => Ok(QuasifiniteVerdict::NotDetected {
                bound: max_deg,
                verified_to: reduced.order(),
            }),
        }
    }
}

impl Exponents {
    pub fn multiplicity_sum_at_zero(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (_, p) in &self.entries {
            acc += &p.coeff(0);
        }
        acc
    }
}

/// Exact Hermitian check.
pub fn is_hermitian(m: &[Vec<Scalar>]) -> bool {
    let d = m.len();
    m.iter().all(|row| row.len() == d)
        && (0..d).all(|i| (0..d).all(|j| m[i][j] == m[j][i].conj()))
}

/// Leading principal minors, exact.
pub fn leading_principal_minors(m: &[Vec<Scalar>]) -> Vec<Scalar> {
    (1..=m.len()).map(|k| determinant(m, k)).collect()
}

fn determinant(m: &[Vec<Scalar>], k: usize) -> Scalar {
    let mut a: Vec<Vec<Scalar>> = (0..k).map(|i| m[i][..k].to_vec()).collect();
    let mut det = Scalar::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..k {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}
