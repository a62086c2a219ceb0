use proptest::prelude::*;

use suslin_core::clifford::{
    dictionary_element, lift_hyperbolic_to_spin, phi_embed, spin_act, spin_certify, translation_matrix,
};
use suslin_core::json::{elem_from_json, elem_to_json, MatrixJson};
use suslin_core::matrix::RingMat;
use suslin_core::orbits::{alt4_to_unit_vector, random_elementary_witness, unit_vector_to_alt4};
use suslin_core::ring::{dot, rational, sample_quadric_point, Poly, RingCtx, RingElem};
use suslin_core::suslin::{psi_degree_map, q_form, standard_involution, suslin_alpha, suslin_alpha_bar, UnitVector};

const Q: RingCtx = RingCtx::Rational;

fn rat() -> impl Strategy<Value = RingElem> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Q.rational(rational(p, q)))
}

fn pair(n: usize) -> impl Strategy<Value = (Vec<RingElem>, Vec<RingElem>)> {
    (prop::collection::vec(rat(), n), prop::collection::vec(rat(), n))
}

fn sized_pair() -> impl Strategy<Value = (Vec<RingElem>, Vec<RingElem>)> {
    (1usize..=4).prop_flat_map(pair)
}

fn int_matrix(size: usize) -> impl Strategy<Value = RingMat> {
    prop::collection::vec(-6i64..=6, size * size).prop_map(move |v| RingMat::from_fn(Q, size, size, |i, j| Q.int(v[i * size + j])))
}

fn unit(n: usize) -> impl Strategy<Value = UnitVector> {
    any::<u64>().prop_map(move |s| UnitVector::from_point(&sample_quadric_point(n, s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alpha_times_bar_is_q((a, b) in sized_pair()) {
        let alpha = suslin_alpha(&a, &b).unwrap().into_matrix();
        let bar = suslin_alpha_bar(&a, &b).unwrap().into_matrix();
        let q = RingMat::scalar(Q, alpha.rows(), &q_form(&a, &b).unwrap());
        prop_assert_eq!(alpha.try_matmul(&bar).unwrap(), q.clone());
        prop_assert_eq!(bar.try_matmul(&alpha).unwrap(), q);
    }

    #[test]
    fn bar_is_swapped_transpose((a, b) in sized_pair()) {
        let bar = suslin_alpha_bar(&a, &b).unwrap().into_matrix();
        prop_assert_eq!(bar, suslin_alpha(&b, &a).unwrap().into_matrix().transpose());
    }

    #[test]
    fn det_is_power_of_q((a, b) in (2usize..=4).prop_flat_map(pair)) {
        let n = a.len();
        let d = suslin_alpha(&a, &b).unwrap().into_matrix().det().unwrap();
        prop_assert_eq!(d, q_form(&a, &b).unwrap().pow(1 << (n - 2)));
    }

    #[test]
    fn clifford_relation((a, b) in sized_pair()) {
        let p = phi_embed(&a, &b).unwrap();
        let sq = p.mul(&p).unwrap();
        prop_assert_eq!(sq.matrix(), &RingMat::scalar(Q, 1 << a.len(), &q_form(&a, &b).unwrap()));
    }

    #[test]
    fn involution_reverses_products(m in int_matrix(8), n in int_matrix(8)) {
        let star = |x: &RingMat| standard_involution(x).unwrap();
        prop_assert_eq!(star(&m.try_matmul(&n).unwrap()), star(&n).try_matmul(&star(&m)).unwrap());
        prop_assert_eq!(star(&star(&m)), m);
    }

    #[test]
    fn involution_negates_vectors((a, b) in sized_pair()) {
        let p = phi_embed(&a, &b).unwrap();
        prop_assert_eq!(p.star().matrix().clone(), -p.matrix());
    }

    #[test]
    fn psi3_pfaffian_is_one(u in unit(3)) {
        prop_assert!(psi_degree_map(&u).unwrap().pfaffian().unwrap().is_one());
    }

    #[test]
    fn alt4_round_trip(u in unit(3)) {
        let rep = unit_vector_to_alt4(&u).unwrap();
        prop_assert_eq!(alt4_to_unit_vector(rep.matrix()).unwrap(), u);
    }

    #[test]
    fn dictionary_action_preserves_q(seed in any::<u64>(), u in unit(3)) {
        let h = random_elementary_witness(Q, 4, 6, seed).to_matrix();
        let g = spin_certify(&dictionary_element(&h).unwrap()).unwrap();
        let v = spin_act(&g, &u).unwrap();
        prop_assert!(dot(v.a(), v.b()).unwrap().is_one());
        prop_assert_eq!(&v, &g.so_matrix().apply(&u).unwrap());
        let gp = translation_matrix(&h).unwrap();
        let rhs = gp.try_matmul(&psi_degree_map(&u).unwrap()).unwrap().try_matmul(&gp.transpose()).unwrap();
        prop_assert_eq!(psi_degree_map(&v).unwrap(), rhs);
    }

    #[test]
    fn witness_inverse_cancels(seed in any::<u64>(), size in 2usize..=6) {
        let w = random_elementary_witness(Q, size, 5, seed);
        prop_assert!(w.then(&w.inverse()).to_matrix().is_identity());
        prop_assert!(w.to_matrix().det().unwrap().is_one());
    }

    #[test]
    fn polynomial_json_round_trip(terms in prop::collection::vec((prop::collection::vec(0u32..4, 4), -9i64..=9, 1i64..=5), 0..6)) {
        let p = Poly::from_terms(4, terms.into_iter().map(|(m, a, b)| (m, rational(a, b))));
        let c = RingCtx::Poly(2);
        let e = c.elem(p).unwrap();
        prop_assert_eq!(elem_from_json(c, &elem_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn matrix_json_round_trip(m in int_matrix(3)) {
        let back: MatrixJson = serde_json::from_str(&serde_json::to_string(&MatrixJson::from(&m)).unwrap()).unwrap();
        prop_assert_eq!(back.to_matrix().unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lift_is_multiplicative_up_to_sign(s1 in any::<u64>(), s2 in any::<u64>(), n in 2usize..=3) {
        let a = random_elementary_witness(Q, n, 4, s1).to_matrix();
        let b = random_elementary_witness(Q, n, 4, s2).to_matrix();
        let ga = lift_hyperbolic_to_spin(&a).unwrap();
        let gb = lift_hyperbolic_to_spin(&b).unwrap();
        let gab = lift_hyperbolic_to_spin(&a.try_matmul(&b).unwrap()).unwrap();
        let prod = ga.compose(&gb).unwrap();
        let (p, l) = (prod.element().matrix(), gab.element().matrix());
        prop_assert!(p == l || p == &-l);
        prop_assert_eq!(prod.so_matrix(), gab.so_matrix());
    }
}
