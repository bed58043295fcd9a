use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use weilstar::bundle::Bundle;
use weilstar::field::{FieldSpec, FiniteField, Fq};
use weilstar::group::{self, Membership, StarMatrix};
use weilstar::ring::{Involution, InvolutiveRing, MatrixRing, Poly, Subset, TruncatedPoly};
use weilstar::symplectic::WVector;

fn field(p: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::new(&FieldSpec::prime(p)).unwrap())
}

fn a3() -> TruncatedPoly {
    TruncatedPoly::new(field(3), 3, Involution::NegateX).unwrap()
}

fn m2() -> MatrixRing {
    MatrixRing::new(field(3), 2).unwrap()
}

fn bundle3() -> &'static Bundle {
    static B: OnceLock<Bundle> = OnceLock::new();
    B.get_or_init(|| Bundle::new(a3()).unwrap())
}

fn poly(ring: &TruncatedPoly, idx: usize) -> Poly {
    ring.element_at(idx % ring.size() as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_axioms_on_a3(i in 0usize..27, j in 0usize..27) {
        let r = a3();
        let (a, b) = (poly(&r, i), poly(&r, j));
        prop_assert_eq!(r.star(&r.star(&a)), a.clone());
        prop_assert_eq!(r.star(&r.mul(&a, &b)), r.mul(&r.star(&b), &r.star(&a)));
        prop_assert_eq!(r.star(&r.add(&a, &b)), r.add(&r.star(&a), &r.star(&b)));
    }

    #[test]
    fn unit_iff_constant_term(i in 0usize..27) {
        let r = a3();
        let a = poly(&r, i);
        prop_assert_eq!(r.is_unit(&a), a.constant_term() != Fq::ZERO);
    }

    #[test]
    fn trace_is_star_invariant(i in 0usize..27) {
        let r = a3();
        let a = poly(&r, i);
        prop_assert_eq!(r.trace_tr(&r.star(&a)), r.trace_tr(&a));
    }

    #[test]
    fn det_star_multiplicative_a3(s1 in any::<u64>(), s2 in any::<u64>(), k in 1i64..3) {
        let r = a3();
        let lam = StarMatrix::new(r.from_int(k), r.zero(), r.zero(), r.one());
        let g = group::mul(&r, &group::sample_element(&r, s1).unwrap(), &lam);
        let h = group::sample_element(&r, s2).unwrap();
        prop_assert_eq!(
            group::star_det(&r, &group::mul(&r, &g, &h)),
            r.mul(&group::star_det(&r, &g), &group::star_det(&r, &h))
        );
        prop_assert!(group::membership(&r, &g) != Membership::None);
    }

    #[test]
    fn det_star_multiplicative_m2(s1 in any::<u64>(), s2 in any::<u64>()) {
        let r = m2();
        let g = group::sample_element(&r, s1).unwrap();
        let h = group::sample_element(&r, s2).unwrap();
        prop_assert_eq!(group::membership(&r, &g), Membership::SlStar);
        prop_assert_eq!(
            group::star_det(&r, &group::mul(&r, &g, &h)),
            r.mul(&group::star_det(&r, &g), &group::star_det(&r, &h))
        );
    }

    #[test]
    fn normal_form_round_trip_a3(seed in any::<u64>()) {
        let r = a3();
        let g = group::sample_element(&r, seed).unwrap();
        let form = group::bruhat_normal_form(&r, &g).unwrap();
        let word = form.word();
        prop_assert_eq!(group::eval_word(&r, &word).unwrap(), g.clone());
        let ws = word.iter().filter(|x| matches!(x, group::Generator::W)).count();
        prop_assert_eq!(ws as u8, group::w_length(&r, &g).unwrap());
    }

    #[test]
    fn normal_form_round_trip_m2(seed in any::<u64>()) {
        let r = m2();
        let g = group::sample_element(&r, seed).unwrap();
        let form = group::bruhat_normal_form(&r, &g).unwrap();
        prop_assert_eq!(group::eval_word(&r, &form.word()).unwrap(), g);
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>()) {
        let r = a3();
        let g = group::sample_element(&r, seed).unwrap();
        let gi = group::inv(&r, &g).unwrap();
        prop_assert_eq!(group::mul(&r, &g, &gi), group::identity(&r));
        prop_assert_eq!(group::mul(&r, &gi, &g), group::identity(&r));
    }

    #[test]
    fn symplectic_form_preserved(seed in any::<u64>(), v in 0usize..729, w in 0usize..729) {
        let b = bundle3();
        let g = group::sample_element(b.module.ring(), seed).unwrap();
        let m = &b.module;
        prop_assert_eq!(m.b_index(m.act_index(&g, v), m.act_index(&g, w)), m.b_index(v, w));
    }

    #[test]
    fn lagrangian_action_is_an_action(s1 in any::<u64>(), s2 in any::<u64>(), l in 0usize..1000) {
        let b = bundle3();
        let r = b.module.ring();
        let l = l % b.table.len();
        let g = group::sample_element(r, s1).unwrap();
        let h = group::sample_element(r, s2).unwrap();
        let gh = group::mul(r, &g, &h);
        prop_assert_eq!(b.act(&gh, l).unwrap(), b.act(&g, b.act(&h, l).unwrap()).unwrap());
    }

    #[test]
    fn lagrangians_are_scalar_stable(l in 0usize..1000, i in 0usize..27) {
        let b = bundle3();
        let m = &b.module;
        let lag = b.table.get(l % b.table.len());
        let a = poly(m.ring(), i);
        for &v in &lag.elements {
            prop_assert!(lag.contains(m.index(&m.scale(&m.vector(v), &a))));
        }
    }

    #[test]
    fn bicharacter(v in 0usize..729, vp in 0usize..729, w in 0usize..729) {
        let m = &bundle3().module;
        let lhs = m.chi(m.add(v, vp), w);
        let rhs = m.chi(v, w) * m.chi(vp, w);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }
}

#[test]
fn bicharacter_exhaustive_m1() {
    let r = TruncatedPoly::new(field(3), 1, Involution::NegateX).unwrap();
    let b = Bundle::new(r).unwrap();
    let m = &b.module;
    for v in 0..m.size_w() {
        for vp in 0..m.size_w() {
            for w in 0..m.size_w() {
                let lhs = m.chi(m.add(v, vp), w);
                assert!((lhs - m.chi(v, w) * m.chi(vp, w)).norm() < 1e-9);
                assert!((m.chi(w, m.add(v, vp)) - m.chi(w, v) * m.chi(w, vp)).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn field_character_facts() {
    for p in [3u32, 5, 7] {
        let f = field(p);
        for a in f.elements().filter(|&a| a != Fq::ZERO) {
            let s: num_complex::Complex64 = f.elements().map(|t| f.psi(f.mul(a, t))).sum();
            assert!(s.norm() < 1e-9);
        }
        let squares = f.elements().filter(|&t| t != Fq::ZERO && f.is_square(t).unwrap()).count();
        assert_eq!(squares as u32, (p - 1) / 2);
        for s in f.elements().filter(|&a| a != Fq::ZERO) {
            for t in f.elements().filter(|&a| a != Fq::ZERO) {
                let e = |x| f.quadratic_character(x).unwrap();
                assert_eq!(e(f.mul(s, t)), e(s) * e(t));
            }
        }
    }
}

#[test]
fn unit_count_formula() {
    for (p, m) in [(3u32, 1usize), (3, 3), (5, 3), (7, 1)] {
        let r = TruncatedPoly::new(field(p), m, Involution::NegateX).unwrap();
        let units = r.enumerate(Subset::Units).unwrap().len() as u128;
        assert_eq!(units, (p as u128 - 1) * (p as u128).pow(m as u32 - 1));
        assert_eq!(units, r.unit_count());
    }
}

#[test]
fn w_vector_index_round_trip() {
    let m = &bundle3().module;
    for v in 0..m.size_w() {
        let wv: WVector = m.vector(v);
        assert_eq!(m.index(&wv), v);
    }
}
