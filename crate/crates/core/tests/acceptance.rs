//! Acceptance suite: every criterion is exact (tolerance 0) and carries its
//! stated runtime bound. Run with `--nocapture` to see one line per
//! criterion.

mod common;

use std::time::Instant;

use common::*;
use rand::Rng;
use winfty::highest_weight::{is_hermitian, leading_principal_minors};
use winfty::parabolic::{closure_check, example_parabolic, twisted_difference_span};
use winfty::window::act_window;
use winfty::{
    detect_recurrence, glinf, DOp, HighestWeight, LaurentVec, Level1Vector, Poly, QuasiPoly,
    Scalar,
};

fn report(name: &str, bound_secs: f64, start: Instant) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance {name}: PASS ({elapsed:.2}s, bound {bound_secs}s)");
    assert!(
        elapsed < bound_secs,
        "{name} exceeded its runtime bound: {elapsed:.2}s >= {bound_secs}s"
    );
}

#[test]
fn criterion_01_algebra_laws() {
    let start = Instant::now();
    let mut rng = rng(101);
    for _ in 0..200 {
        let a = dop(&mut rng, 3, 3, 4, true);
        let b = dop(&mut rng, 3, 3, 4, true);
        let c = dop(&mut rng, 3, 3, 4, true);
        assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
        let jacobi = a
            .bracket(&b.bracket(&c))
            .add(&b.bracket(&c.bracket(&a)))
            .add(&c.bracket(&a.bracket(&b)));
        assert!(jacobi.is_zero());
        let mut cocycle_sum = a.bracket(&b).cocycle(&c);
        cocycle_sum += &b.bracket(&c).cocycle(&a);
        cocycle_sum += &c.bracket(&a).cocycle(&b);
        assert!(cocycle_sum.is_zero());
    }
    report("1 (algebra laws)", 5.0, start);
}

#[test]
fn criterion_02_oracle_bracket() {
    let start = Instant::now();
    let mut rng = rng(102);
    for _ in 0..100 {
        let a = dop(&mut rng, 3, 3, 4, false);
        let b = dop(&mut rng, 3, 3, 4, false);
        let s = rational(&mut rng);
        let commutator = act_window(&a, &s, 12)
            .bracket(&act_window(&b, &s, 12))
            .unwrap();
        let image = act_window(&a.bracket(&b), &s, 12);
        assert!(commutator.equal_interior_entries(&image));
    }
    report("2 (oracle bracket)", 5.0, start);
}

#[test]
fn criterion_03_defining_series_identity() {
    let start = Instant::now();
    let mut rng = rng(103);
    for _ in 0..50 {
        let raw = quasipoly(&mut rng, 4, 2);
        let phi = raw.sub(&QuasiPoly::constant(raw.eval0()));
        for n in 0..=3usize {
            let hw = HighestWeight::new(n, Scalar::zero(), phi.clone()).unwrap();
            let labels = hw.labels(16);
            let lhs = labels.quasifinite_series().truncate(15);
            let rhs = hw.defining_quasipoly().taylor(15);
            assert_eq!(lhs, rhs);
        }
    }
    report("3 (defining series identity)", 5.0, start);
}

#[test]
fn criterion_04_characteristic_polynomial() {
    let start = Instant::now();
    let phi = QuasiPoly::exponential(Scalar::from_int(2))
        .sub(&QuasiPoly::constant(Scalar::one()));
    let hw = HighestWeight::new(1, Scalar::zero(), phi).unwrap();
    let b = hw.characteristic_poly();
    let expect = &Poly::var() * &Poly::from_coeffs(vec![Scalar::from_int(-2), Scalar::one()]);
    assert_eq!(b, expect);
    assert!(hw.singular_check(&b, 8).unwrap());
    // the only proper monic divisor divisible by [w]_1 is w itself
    assert!(!hw.singular_check(&Poly::var(), 8).unwrap());
    // and no other monic w(w - r) of the same shape with r != 2 is singular
    for r in [-2i64, -1, 0, 1, 3] {
        let candidate = &Poly::var() * &Poly::from_roots(&[Scalar::from_int(r)]);
        assert!(!hw.singular_check(&candidate, 8).unwrap());
    }
    let gram = hw.gram_level1(2).unwrap();
    let want: Vec<Vec<Scalar>> = vec![
        vec![Scalar::from_int(2), Scalar::from_int(4)],
        vec![Scalar::from_int(4), Scalar::from_int(8)],
    ];
    assert_eq!(gram, want);
    // kernel spanned by the coefficient vector of b
    let v = [b.coeff(1), b.coeff(2)];
    for row in &gram {
        let dot = &row[0] * &v[0] + &row[1] * &v[1];
        assert!(dot.is_zero());
    }
    // one-dimensional kernel: the matrix has rank 1
    assert!(!gram[0][0].is_zero());
    report("4 (characteristic polynomial)", 1.0, start);
}

#[test]
fn criterion_05_unitarity_cross_check() {
    let start = Instant::now();
    let e = |k: i64| QuasiPoly::exponential(Scalar::from_int(k));
    let one = QuasiPoly::constant(Scalar::one());

    let hw = HighestWeight::new(1, Scalar::one(), e(2).sub(&one)).unwrap();
    assert!(hw.unitary_classify().unwrap().is_unitary());
    let gram = hw.gram_level1(2).unwrap();
    assert!(is_hermitian(&gram));
    assert_eq!(gram[0][0], Scalar::from_int(2));
    assert_eq!(gram[0][1], Scalar::from_int(4));
    assert_eq!(gram[1][1], Scalar::from_int(8));
    for minor in leading_principal_minors(&gram) {
        assert!(minor.cmp_real(&Scalar::zero()) != Some(std::cmp::Ordering::Less));
    }

    let hw = HighestWeight::new(1, Scalar::one(), e(-1).sub(&one)).unwrap();
    assert!(hw.unitary_classify().unwrap().is_unitary());
    let gram = hw.gram_level1(2).unwrap();
    assert_eq!(gram[0][0], Scalar::from_int(2));
    assert_eq!(gram[0][1], Scalar::from_int(-2));
    assert_eq!(gram[1][1], Scalar::from_int(2));
    for minor in leading_principal_minors(&gram) {
        assert!(minor.cmp_real(&Scalar::zero()) != Some(std::cmp::Ordering::Less));
    }

    // exponents {(1/2, 1), (-1/2, -3), (3/2, 1)}: spread exceeds the class bound
    let phi = QuasiPoly::exponential(Scalar::from_ratio(1, 2))
        .add(&QuasiPoly::term(
            Scalar::from_ratio(-1, 2),
            Poly::constant(Scalar::from_int(-3)),
        ))
        .add(&QuasiPoly::exponential(Scalar::from_ratio(3, 2)))
        .add(&one);
    let hw = HighestWeight::new(1, Scalar::from_int(-1), phi).unwrap();
    let verdict = hw.unitary_classify().unwrap();
    assert!(!verdict.is_unitary());
    report("5 (unitarity cross-check)", 1.0, start);
}

#[test]
fn criterion_06_embedding_homomorphism() {
    let start = Instant::now();
    let mut rng = rng(106);
    let twists = [
        Scalar::zero(),
        Scalar::from_ratio(1, 2),
        Scalar::from_ratio(1, 3),
    ];
    // the s = 0 central correction vanishes identically
    for deg in 1..=4 {
        assert_eq!(
            glinf::central_correction(
                &Poly::monomial(Scalar::one(), deg),
                &Scalar::zero(),
                8
            )
            .unwrap(),
            Scalar::zero()
        );
    }
    for _ in 0..50 {
        let a = dop_order1(&mut rng, 2, 2, 3);
        let b = dop_order1(&mut rng, 2, 2, 3);
        for s in &twists {
            let wa = glinf::gl_embed_lifted(&a, s, 12, 10).unwrap();
            let wb = glinf::gl_embed_lifted(&b, s, 12, 10).unwrap();
            assert!(wa.margin() >= 10 && wb.margin() >= 10);
            let lhs = wa.bracket(&wb).unwrap();
            let rhs = glinf::gl_embed_lifted(&a.bracket(&b), s, 12, 10).unwrap();
            assert!(rhs.margin() >= 8);
            assert!(lhs.equal_interior(&rhs));
        }
    }
    report("6 (embedding homomorphism)", 10.0, start);
}

#[test]
fn criterion_07_series_consistency() {
    let start = Instant::now();
    // lambda_1 = 1, c = -1 realizes difference labels n_0 = -2, n_1 = 1
    let gw = glinf::GlWeight::new([(1, Scalar::one())], Scalar::from_int(-1));
    let n = gw.difference_labels();
    assert_eq!(n.get(&0), Some(&Scalar::from_int(-2)));
    assert_eq!(n.get(&1), Some(&Scalar::one()));
    let s = Scalar::from_ratio(1, 2);
    let hw = glinf::induced_highest_weight(&[(s.clone(), gw.clone())]).unwrap();
    let labels = hw.labels(12);
    for l in 0..=12usize {
        let d_power = DOp::from_mode(0, Poly::monomial(Scalar::one(), l + 1));
        let window = glinf::gl_embed_lifted(&d_power, &s, 12, 14).unwrap();
        let paired = -glinf::pair_weight_window(&gw, &window);
        assert_eq!(labels.deltas.coeff(l), paired, "label {l}");
    }
    assert!(glinf::gl_unitary_check(&gw, &s).unwrap().is_unitary());
    assert!(hw.unitary_classify().unwrap().is_unitary());
    report("7 (series consistency)", 2.0, start);
}

#[test]
fn criterion_08_adjoint_suite() {
    let start = Instant::now();
    let mut rng = rng(108);
    for _ in 0..100 {
        let a = dop_order1(&mut rng, 3, 3, 4);
        let b = dop_order1(&mut rng, 3, 3, 4);
        assert_eq!(a.adjoint().unwrap().adjoint().unwrap(), a);
        assert_eq!(
            a.bracket(&b).adjoint().unwrap(),
            b.adjoint().unwrap().bracket(&a.adjoint().unwrap())
        );
        assert_eq!(
            a.adjoint().unwrap().cocycle(&b.adjoint().unwrap()),
            b.cocycle(&a).conj()
        );
        let j = rng.gen_range(-10i64..=10);
        let l = rng.gen_range(-10i64..=10);
        let u = LaurentVec::monomial(j);
        let v = LaurentVec::monomial(l);
        assert_eq!(
            a.apply_laurent(&u).residue_pairing(&v).unwrap(),
            u.residue_pairing(&a.adjoint().unwrap().apply_laurent(&v))
                .unwrap()
        );
    }
    report("8 (adjoint suite)", 3.0, start);
}

#[test]
fn criterion_09_raising_operator() {
    let start = Instant::now();
    let mut rng = rng(109);
    let mut tested = 0;
    while tested < 20 {
        let hw = highest_weight(&mut rng, 1, Scalar::zero());
        let Ok(s) = hw.raising_operator() else {
            continue;
        };
        let mut v = Level1Vector {
            n: 1,
            q: Poly::var(),
        };
        for j in 0..=6usize {
            assert_eq!(v.q, Poly::monomial(Scalar::one(), j + 1));
            let action = hw.level1_act(&s, &v).unwrap();
            v = action.combined(&v);
        }
        tested += 1;
    }
    report("9 (raising operator)", 1.0, start);
}

#[test]
fn criterion_10_recurrence_detection() {
    let start = Instant::now();
    let mut rng = rng(110);
    for _ in 0..30 {
        let q = quasipoly(&mut rng, 3, 2);
        let ann = q.min_annihilator();
        let d = ann.degree();
        // prefix of length 2 * order + 4
        let series = q.taylor(2 * d + 3);
        let rec = detect_recurrence(&series, d).unwrap().unwrap();
        assert_eq!(rec.poly, ann);
    }
    // negative control: factorial coefficients admit no bounded recurrence
    let mut coeffs = Vec::new();
    let mut f: i64 = 1;
    for l in 0..=10i64 {
        if l > 0 {
            f *= l;
        }
        coeffs.push(Scalar::from_int(f));
    }
    let s = winfty::TruncSeries::from_coeffs(coeffs);
    assert_eq!(detect_recurrence(&s, 4).unwrap(), None);
    report("10 (recurrence detection)", 2.0, start);
}

#[test]
fn criterion_11_parabolic_lab() {
    let start = Instant::now();
    // A_{0,k} = A_{1,k} = C[w] up to degree 8
    for n in [0usize, 1] {
        for k in [1usize, 2, 3] {
            for d in [4usize, 8] {
                assert_eq!(twisted_difference_span(n, k, d).codim(), 0);
            }
        }
    }
    // A_{n,1} = C[w] [w-1]_{n-1} up to degree 8
    for n in [2usize, 3] {
        let d = 8;
        let span = twisted_difference_span(n, 1, d);
        let factor = Poly::falling_var(n - 1).shifted(&Scalar::from_int(-1));
        let mut expect = winfty::PolySpan::empty(d);
        for m in 0..=d - factor.degree() {
            expect.insert(&(&Poly::monomial(Scalar::one(), m) * &factor));
        }
        assert_eq!(span, expect);
    }
    // closure of the explicit parabolic family
    for n in [1usize, 2, 3] {
        let report = closure_check(n, |k, d| example_parabolic(n, k, d), 3, 3, 8);
        assert!(
            report.passed(),
            "n={n}: {} failures",
            report.failures.len()
        );
    }
    // codimension examples
    assert_eq!(twisted_difference_span(1, 1, 8).codim(), 0);
    assert_eq!(example_parabolic(1, 2, 5).codim(), 2);
    report("11 (parabolic lab)", 5.0, start);
}
