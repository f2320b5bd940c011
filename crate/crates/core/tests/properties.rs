//! Property tests for the structural invariants of each module.

mod common;

use common::datum;
use num_complex::Complex64;
use proptest::prelude::*;
use std::collections::BTreeMap;
use verlinde_kit::affine::{alcove_points, reduce_to_alcove};
use verlinde_kit::frame::OrthonormalFrame;
use verlinde_kit::irrep::build_irrep;
use verlinde_kit::kac::{character, graded_dimensions, kac_denominator, kac_numerator, kac_numerator_shifted, TorusElement};
use verlinde_kit::qseries::QSeries;
use verlinde_kit::rational::{q, qfrac};
use verlinde_kit::snf::smith_normal_form;
use verlinde_kit::spectral::{circle_flow, torus_class_census, TorusTwisting, DEFAULT_MODES};
use verlinde_kit::twisted::build_twisted_datum;
use verlinde_kit::verlinde::{duality_pairing, fuse, fusion_table, s_matrix, tensor_decompose};
use verlinde_kit::{AlgebraSpec, QVec, Weight};

const ALGEBRAS: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D3", "D4", "G2"];

fn small_algebra() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2"])
}

#[test]
fn dual_coxeter_and_casimir_normalization() {
    for name in ALGEBRAS {
        let d = datum(name);
        assert_eq!(q(d.h_dual), d.ip(&d.rho, &d.theta).unwrap() + q(1), "{name}");
        d.check_invariants().unwrap();
    }
    for name in ["A1", "A2", "A3", "B2", "C3", "G2"] {
        let fr = OrthonormalFrame::new(&datum(name)).unwrap();
        let r = fr.report();
        assert!(r.casimir < 1e-10 && r.jacobi < 1e-10 && r.antisymmetry < 1e-10, "{name}: {r:?}");
    }
}

#[test]
fn weyl_dimension_formula_matches_multiplicities() {
    for name in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"] {
        let d = datum(name);
        let l = d.rank() as u32;
        let cap: i64 = if l <= 2 { 4 } else { 2 };
        for code in 0..cap.pow(l) {
            let lam = Weight((0..l).map(|i| code / cap.pow(i) % cap).collect());
            let total: u64 = d.weight_multiplicities(&lam).unwrap().values().sum();
            assert_eq!(total, d.irrep_dimension(&lam).unwrap(), "{name} {lam}");
        }
    }
}

#[test]
fn irrep_weights_match_multiplicities() {
    for (name, lam) in [("A1", vec![3]), ("A2", vec![1, 1]), ("B2", vec![1, 1]), ("G2", vec![1, 0]), ("A3", vec![0, 1, 0])] {
        let d = datum(name);
        let fr = OrthonormalFrame::new(&d).unwrap();
        let lam = Weight(lam);
        let ir = build_irrep(&fr, &lam).unwrap();
        let r = ir.report(&fr);
        assert!(r.bracket < 1e-9 && r.anti_hermitian < 1e-10 && r.casimir < 1e-8, "{name}: {r:?}");
        let mut expected: Vec<Vec<f64>> = Vec::new();
        for (w, m) in d.weight_multiplicities(&lam).unwrap() {
            for _ in 0..m {
                expected.push(fr.weight_components(&w.to_q()));
            }
        }
        let mut got: Vec<Vec<f64>> = (0..ir.dim)
            .map(|i| (0..d.rank()).map(|t| (ir.r[t][(i, i)] / Complex64::i()).re).collect())
            .collect();
        for t in 0..d.rank() {
            let off = (0..ir.dim)
                .flat_map(|i| (0..ir.dim).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| ir.r[t][(i, j)].norm())
                .fold(0.0, f64::max);
            assert!(off < 1e-10);
        }
        let key = |v: &Vec<f64>| v.iter().map(|x| (x * 1e6).round() as i64).collect::<Vec<_>>();
        expected.sort_by_key(key);
        got.sort_by_key(key);
        for (a, b) in expected.iter().zip(&got) {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-8), "{name}: {a:?} vs {b:?}");
        }
    }
}

#[test]
fn alcove_sizes_a1() {
    let d = datum("A1");
    for k in 0..=10 {
        assert_eq!(alcove_points(&d, k).len(), (k + 1) as usize);
    }
}

#[test]
fn twisted_shift_identity_everywhere() {
    for (name, r) in [("A2", 2), ("A3", 2), ("A4", 2), ("D3", 2), ("D4", 2), ("D4", 3)] {
        let tw = build_twisted_datum(name.parse().unwrap(), r).unwrap();
        assert_eq!(tw.shift_identity_lhs(), qfrac(tw.base.h_dual, r as i64), "{name} r={r}");
    }
}

#[test]
fn fusion_ring_axioms_exhaustive() {
    for (name, kmax) in [("A1", 6), ("A2", 3)] {
        let d = datum(name);
        for k in 0..=kmax {
            let t = fusion_table(&d, k).unwrap();
            assert_eq!(t.ring_axiom_violations(), 0, "{name} k={k}");
            let dual = duality_pairing(&d, k).unwrap();
            assert!(dual.is_involution && dual.is_ring_automorphism && dual.matches_s_squared);
        }
    }
}

#[test]
fn denominator_at_identity_is_eta_power() {
    for name in ["A1", "A2", "B2"] {
        let d = datum(name);
        let n = 6;
        let den = kac_denominator(&d, &TorusElement::identity(d.rank()), n).unwrap();
        let mut expect = QSeries::one(q(n));
        for m in 1..=n {
            for _ in 0..d.spec.dim() {
                let mut f = QSeries::one(q(n));
                f.add_term(q(m), Complex64::new(-1.0, 0.0));
                expect = expect.mul(&f);
            }
        }
        assert!(den.max_difference(&expect) < 1e-9, "{name}");
    }
}

#[test]
fn characters_are_dimensions() {
    for (name, kmax) in [("A1", 3), ("A2", 1), ("B2", 1)] {
        let d = datum(name);
        for k in 0..=kmax {
            for lam in alcove_points(&d, k) {
                let ch = character(&d, k, &lam, &TorusElement::identity(d.rank()), 8).unwrap();
                let dims = graded_dimensions(&ch, 1e-6).unwrap_or_else(|| panic!("{name} k={k} {lam}"));
                assert_eq!(dims[0], d.irrep_dimension(&lam).unwrap());
            }
        }
    }
}

fn random_torus(rank: usize, seed: &[i64]) -> TorusElement {
    TorusElement::new((0..rank).map(|i| qfrac(seed[i].rem_euclid(97), 97)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dominant_conjugate_idempotent(name in small_algebra(), v in prop::collection::vec(-6i64..6, 2)) {
        let d = datum(name);
        let mu: QVec = v[..d.rank()].iter().map(|&x| q(x)).collect();
        let (dom, sign) = d.dominant_conjugate(&mu);
        let (again, s2) = d.dominant_conjugate(&dom);
        prop_assert_eq!(&again, &dom);
        prop_assert!(s2 == 1 || (s2 == 0 && sign == 0));
        let refl = d.reflect(0, &mu);
        let (dom_r, sign_r) = d.dominant_conjugate(&refl);
        prop_assert_eq!(dom_r, dom);
        prop_assert_eq!(sign_r, -sign);
    }

    #[test]
    fn weyl_group_preserves_basic_form(name in small_algebra(), a in prop::collection::vec(-5i64..5, 2), b in prop::collection::vec(-5i64..5, 2)) {
        let d = datum(name);
        let a: QVec = a[..d.rank()].iter().map(|&x| q(x)).collect();
        let b: QVec = b[..d.rank()].iter().map(|&x| q(x)).collect();
        for w in d.weyl_elements() {
            prop_assert_eq!(d.ip(&w.apply(&a), &w.apply(&b)).unwrap(), d.ip(&a, &b).unwrap());
        }
    }

    #[test]
    fn alcove_reduction_invariant_under_generators(name in small_algebra(), k in 0i64..4, v in prop::collection::vec(-9i64..9, 2)) {
        let d = datum(name);
        let kd = k + d.h_dual;
        let mu: QVec = v[..d.rank()].iter().map(|&x| q(x)).collect();
        let red = reduce_to_alcove(&d, kd, &mu).unwrap();
        for g in common::affine_generators(&d, kd, &mu) {
            let r2 = reduce_to_alcove(&d, kd, &g).unwrap();
            prop_assert_eq!(&r2.weight, &red.weight);
            prop_assert_eq!(r2.sign, -red.sign);
        }
        let theta = d.theta.to_q();
        prop_assert!(red.weight.iter().all(|x| *x >= q(0)));
        prop_assert!(d.ip(&red.weight, &theta).unwrap() <= q(kd));
    }

    #[test]
    fn tensor_dimensions_add_up(name in small_algebra(), a in prop::collection::vec(0i64..3, 2), b in prop::collection::vec(0i64..3, 2)) {
        let d = datum(name);
        let a = Weight(a[..d.rank()].to_vec());
        let b = Weight(b[..d.rank()].to_vec());
        let t = tensor_decompose(&d, &a, &b).unwrap();
        let total: u64 = t.iter().map(|(w, n)| n * d.irrep_dimension(w).unwrap()).sum();
        prop_assert_eq!(total, d.irrep_dimension(&a).unwrap() * d.irrep_dimension(&b).unwrap());
        prop_assert_eq!(t, tensor_decompose(&d, &b, &a).unwrap());
    }

    #[test]
    fn fusion_bounded_by_tensor(name in small_algebra(), k in 0i64..4, i in 0usize..20, j in 0usize..20) {
        let d = datum(name);
        let pts = alcove_points(&d, k);
        let (a, b) = (&pts[i % pts.len()], &pts[j % pts.len()]);
        let f = fuse(&d, k, a, b).unwrap();
        let t = tensor_decompose(&d, a, b).unwrap();
        for (w, n) in &f {
            prop_assert!(*n <= t.get(w).copied().unwrap_or(0));
        }
        prop_assert_eq!(&f, &fuse(&d, k, b, a).unwrap());
        let zero = Weight::zero(d.rank());
        prop_assert_eq!(fuse(&d, k, a, &zero).unwrap(), BTreeMap::from([(a.clone(), 1)]));
    }

    #[test]
    fn s_matrix_unitary_symmetric(name in small_algebra(), k in 0i64..4) {
        let r = s_matrix(&datum(name), k).unwrap().report();
        prop_assert!(r.unitarity < 1e-9 && r.symmetry < 1e-9 && r.min_first_row > 0.0);
    }

    #[test]
    fn numerator_flips_under_affine_reflection(name in prop::sample::select(vec!["A1", "A2"]), k in 0i64..3, i in 0usize..10, gen in 0usize..3, seed in prop::collection::vec(0i64..97, 2)) {
        let d = datum(name);
        let pts = alcove_points(&d, k);
        let lam = &pts[i % pts.len()];
        let kd = k + d.h_dual;
        let g = random_torus(d.rank(), &seed);
        let base = kac_numerator(&d, k, lam, &g, 5).unwrap();
        let shifted = lam.add(&d.rho).to_q();
        let gens = common::affine_generators(&d, kd, &shifted);
        let image = &gens[gen % gens.len()];
        let flipped = kac_numerator_shifted(&d, kd, image, &g, 5).unwrap();
        prop_assert_eq!(flipped.base_exponent, base.base_exponent);
        prop_assert!(flipped.max_difference(&base.scaled(Complex64::new(-1.0, 0.0))) < 1e-9);
    }

    #[test]
    fn character_weyl_invariant(name in prop::sample::select(vec!["A1", "A2"]), i in 0usize..10, seed in prop::collection::vec(0i64..97, 2)) {
        let d = datum(name);
        let pts = alcove_points(&d, 1);
        let lam = &pts[i % pts.len()];
        let g = random_torus(d.rank(), &seed);
        let ch = character(&d, 1, lam, &g, 4).unwrap();
        for w in d.weyl_elements() {
            let other = character(&d, 1, lam, &g.weyl_image(&d, w), 4).unwrap();
            prop_assert!(ch.max_difference(&other) < 1e-9);
        }
    }

    #[test]
    fn series_division_inverts_multiplication(a in prop::collection::vec(-3i32..4, 6), b in prop::collection::vec(-3i32..4, 5)) {
        let n = q(5);
        let mut sa = QSeries::zero(n);
        for (e, c) in a.iter().enumerate() {
            sa.add_term(q(e as i64), Complex64::new(*c as f64, 0.0));
        }
        let mut sb = QSeries::one(n);
        for (e, c) in b.iter().enumerate() {
            sb.add_term(q(e as i64 + 1), Complex64::new(*c as f64, 0.0));
        }
        let back = sa.mul(&sb).div(&sb).unwrap();
        prop_assert!(back.max_difference(&sa) < 1e-9);
    }

    #[test]
    fn smith_form_is_equivalent(m in prop::collection::vec(-6i64..7, 4)) {
        let a = vec![vec![m[0], m[1]], vec![m[2], m[3]]];
        let s = smith_normal_form(&a).unwrap();
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assert_eq!(s.diagonal.iter().product::<i64>(), det.abs());
        prop_assert!(s.diagonal[0] == 0 || s.diagonal[1] % s.diagonal[0] == 0);
        match TorusTwisting::new(a) {
            Ok(tw) => prop_assert_eq!(torus_class_census(&tw), det.unsigned_abs()),
            Err(_) => prop_assert_eq!(det, 0),
        }
    }

    #[test]
    fn circle_flow_is_discretization_independent(end in -3i64..4, coarse in 20usize..40) {
        let fine = circle_flow(0.0, end as f64, coarse * 7, DEFAULT_MODES).unwrap();
        let rough = circle_flow(0.0, end as f64, coarse * 2, DEFAULT_MODES).unwrap();
        prop_assert_eq!(fine.net_flow, end);
        prop_assert_eq!(rough.net_flow, end);
    }
}

#[test]
fn algebra_spec_round_trip() {
    for name in ALGEBRAS {
        let s: AlgebraSpec = name.parse().unwrap();
        assert_eq!(s.to_string(), name);
    }
    for bad in ["E6", "A0", "B1", "D2", "G3", "x"] {
        assert!(bad.parse::<AlgebraSpec>().is_err(), "{bad}");
    }
}
