use exact_lattice::QZ;
use kottwitz_sign::{
    lambda_t, levi_restriction, sign_induction, sign_product, twisted_sign, BasedRootDatum, CartanType, CenterClass,
    Normalization, RepChoice, SignError, TwistData,
};
use num_integer::gcd;
use proptest::prelude::*;
use unramified_weil::LocalModel;

fn identity(r: usize) -> Vec<usize> {
    (0..r).collect()
}

/// `(-1)^(rank of the split form - rank of the inner form)` for the inner form
/// of `PGL_n` with invariant `r/n`, which is `GL_m(D)` with `m = gcd(n, r)`.
fn pgl_rank_sign(n: usize, r: usize) -> i8 {
    if (n - gcd(n, r)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// For `PGL_n` the class `r/n` takes value `k r / n` on `omega_k`.
fn pgl_class(n: usize, r: usize) -> Vec<QZ> {
    (1..n).map(|k| QZ::new((k * r) as i64, n as i64)).collect()
}

#[test]
fn pgl_inner_forms_match_rank_formula() {
    for n in 2..=7 {
        let d = TwistData::split(BasedRootDatum::of_type(CartanType::A(n - 1)), LocalModel::new(n));
        for r in 0..n {
            let xi = CenterClass::new(&d, pgl_class(n, r)).unwrap();
            for norm in [Normalization::Standard, Normalization::Opposite] {
                let s = twisted_sign(&d, &xi, norm, RepChoice::First).unwrap();
                assert_eq!(s.sign, pgl_rank_sign(n, r), "n={n} r={r}");
            }
        }
    }
}

#[test]
fn split_lambda_is_rho() {
    let types = [
        CartanType::A(4),
        CartanType::B(3),
        CartanType::C(3),
        CartanType::D(5),
        CartanType::E6,
        CartanType::E7,
        CartanType::F4,
        CartanType::G2,
    ];
    for t in types {
        let datum = BasedRootDatum::of_type(t);
        let rho: Vec<i64> = datum.rho().iter().map(|x| x.to_integer().try_into().unwrap()).collect();
        let d = TwistData::split(datum, LocalModel::new(2));
        assert_eq!(lambda_t(&d, RepChoice::First), rho, "{t}");
    }
}

#[test]
fn a2_flip_with_trivial_frobenius() {
    let datum = BasedRootDatum::of_type(CartanType::A(2));
    let d = TwistData::new(datum, identity(2), vec![1, 0], LocalModel::new(3)).unwrap();
    assert_eq!(lambda_t(&d, RepChoice::First), vec![1, 0]);
    assert_eq!(lambda_t(&d, RepChoice::Last), vec![0, 1]);
    let xi = CenterClass::trivial(&d);
    let s = twisted_sign(&d, &xi, Normalization::Standard, RepChoice::First).unwrap();
    assert!(s.image.vanishes());
    assert_eq!(s.image.coinvariants_order, 1);
    assert_eq!(s.sign, 1);
    // the nontrivial classes are moved by the flip
    assert_eq!(CenterClass::new(&d, vec![QZ::new(1, 3), QZ::new(2, 3)]), Err(SignError::NotFixed));
    assert_eq!(CenterClass::all(&d).unwrap().len(), 1);
}

#[test]
fn unitary_group_with_flip() {
    let datum = BasedRootDatum::of_type(CartanType::A(2));
    let d = TwistData::new(datum, vec![1, 0], vec![1, 0], LocalModel::new(2)).unwrap();
    assert_eq!(lambda_t(&d, RepChoice::First), vec![1, 1]);
    for xi in CenterClass::all(&d).unwrap() {
        assert_eq!(twisted_sign(&d, &xi, Normalization::Standard, RepChoice::First).unwrap().sign, 1);
    }
}

#[test]
fn e6_negation_kills_coinvariants() {
    let flip = CartanType::E6.diagram_flip().unwrap();
    for gamma in [identity(6), flip.clone()] {
        let d = TwistData::new(BasedRootDatum::of_type(CartanType::E6), gamma, flip.clone(), LocalModel::new(2)).unwrap();
        let classes = CenterClass::all(&d).unwrap();
        assert!(!classes.is_empty());
        for xi in classes {
            let s = twisted_sign(&d, &xi, Normalization::Standard, RepChoice::First).unwrap();
            assert_eq!(s.image.coinvariants_order, 1);
            assert!(s.image.vanishes());
            assert_eq!(s.sign, 1);
        }
    }
}

#[test]
fn spin_group_classes() {
    // D5: X^*(Z) = Z/4 and the flip acts by -1
    let flip = CartanType::D(5).diagram_flip().unwrap();
    let d = TwistData::new(BasedRootDatum::of_type(CartanType::D(5)), identity(5), flip, LocalModel::new(4)).unwrap();
    let s = twisted_sign(&d, &CenterClass::trivial(&d), Normalization::Standard, RepChoice::First).unwrap();
    assert_eq!(s.image.coinvariants_order, 2);
    // D4 split: all four classes, Z/2 x Z/2 center
    let d = TwistData::split(BasedRootDatum::of_type(CartanType::D(4)), LocalModel::new(2));
    assert_eq!(CenterClass::all(&d).unwrap().len(), 4);
}

#[test]
fn center_image_has_order_at_most_two() {
    let types = [
        CartanType::A(1),
        CartanType::A(2),
        CartanType::A(3),
        CartanType::A(5),
        CartanType::B(3),
        CartanType::C(2),
        CartanType::D(4),
        CartanType::D(5),
        CartanType::E6,
        CartanType::E7,
        CartanType::E8,
    ];
    for t in types {
        let datum = BasedRootDatum::of_type(t);
        let r = datum.rank();
        let mut perms = vec![identity(r)];
        perms.extend(t.diagram_flip());
        for g in &perms {
            for a in &perms {
                let d = TwistData::new(datum.clone(), g.clone(), a.clone(), LocalModel::new(2)).unwrap();
                for choice in [RepChoice::First, RepChoice::Last] {
                    let s = twisted_sign(&d, &CenterClass::trivial(&d), Normalization::Standard, choice).unwrap();
                    assert!(s.image.order <= 2, "{t} {g:?} {a:?}: {:?}", s.image);
                }
            }
        }
    }
}

#[test]
fn levi_examples() {
    let flip: Vec<usize> = (0..5).rev().collect();
    let d = TwistData::new(BasedRootDatum::of_type(CartanType::A(5)), flip.clone(), identity(5), LocalModel::new(2)).unwrap();
    for nodes in [vec![1, 2, 3], vec![0, 4], vec![2], vec![0, 1, 3, 4]] {
        let l = levi_restriction(&d, &nodes, RepChoice::First).unwrap();
        assert!(l.holds(), "{l:?}");
    }
    assert_eq!(levi_restriction(&d, &[0, 1], RepChoice::First).unwrap_err(), SignError::NotStable);
    let e6 = CartanType::E6.diagram_flip().unwrap();
    let d = TwistData::new(BasedRootDatum::of_type(CartanType::E6), e6.clone(), e6, LocalModel::new(2)).unwrap();
    let l = levi_restriction(&d, &[0, 2, 3, 4, 5], RepChoice::Last).unwrap();
    assert!(l.holds(), "{l:?}");
}

#[test]
fn induction_of_anisotropic_pgl2() {
    let d = TwistData::split(BasedRootDatum::of_type(CartanType::A(1)), LocalModel::new(2));
    let xi = CenterClass::new(&d, vec![QZ::new(1, 2)]).unwrap();
    for n in 1..=4 {
        let r = sign_induction(&d, &xi, n, Normalization::Standard).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.induced, -1);
    }
}

const TYPES: [CartanType; 6] = [
    CartanType::A(1),
    CartanType::A(2),
    CartanType::A(3),
    CartanType::D(4),
    CartanType::D(5),
    CartanType::E6,
];

/// `k` copies of one type, Frobenius acting on every copy by `f`, and `a`
/// rotating the copies with the twist `w` on the way back to the first copy.
fn rotated(t: CartanType, k: usize, gamma_flip: bool, wrap_flip: bool, degree: usize) -> TwistData {
    let base = BasedRootDatum::of_type(t);
    let r = base.rank();
    let flip = t.diagram_flip().unwrap_or_else(|| identity(r));
    let f = if gamma_flip { flip.clone() } else { identity(r) };
    let w = if wrap_flip { flip } else { identity(r) };
    let mut gamma = Vec::new();
    let mut a = Vec::new();
    for c in 0..k {
        for i in 0..r {
            gamma.push(c * r + f[i]);
            a.push(if c + 1 < k { (c + 1) * r + i } else { w[i] });
        }
    }
    TwistData::new(base.power(k), gamma, a, LocalModel::new(degree)).unwrap()
}

fn twist_strategy(max_copies: usize) -> impl Strategy<Value = TwistData> {
    (0..TYPES.len(), 1..=max_copies, any::<bool>(), any::<bool>(), prop_oneof![Just(2usize), Just(4usize)])
        .prop_map(|(t, k, g, w, n)| rotated(TYPES[t], k, g, w, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sign_is_independent_of_representatives(d in twist_strategy(3), picks in proptest::collection::vec(0usize..6, 1..4)) {
        for xi in CenterClass::all(&d).unwrap() {
            let base = twisted_sign(&d, &xi, Normalization::Standard, RepChoice::First).unwrap();
            for choice in picks.iter().map(|&p| RepChoice::Index(p)).chain([RepChoice::Last]) {
                let other = twisted_sign(&d, &xi, Normalization::Standard, choice).unwrap();
                prop_assert_eq!(other.sign, base.sign);
                prop_assert_eq!(other.image.order, base.image.order);
            }
            let opp = twisted_sign(&d, &xi, Normalization::Opposite, RepChoice::First).unwrap();
            prop_assert_eq!(opp.sign, base.sign);
        }
    }

    #[test]
    fn sign_is_multiplicative(d1 in twist_strategy(2), d2 in twist_strategy(2), i in 0usize..64, j in 0usize..64) {
        let c1 = CenterClass::all(&d1).unwrap();
        let c2 = CenterClass::all(&d2).unwrap();
        let x1 = &c1[i % c1.len()];
        let x2 = &c2[j % c2.len()];
        let r = sign_product(&d1, x1, &d2, x2, Normalization::Standard).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn sign_is_invariant_under_induction(d in twist_strategy(2), n in 1usize..=3, i in 0usize..64) {
        let cls = CenterClass::all(&d).unwrap();
        let xi = &cls[i % cls.len()];
        let r = sign_induction(&d, xi, n, Normalization::Standard).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn levi_lambda_restricts(k in 1usize..=3, n in 2usize..=6, g in any::<bool>(), w in any::<bool>(), mask in 0u32..64) {
        let d = rotated(CartanType::A(n), k, g, w, 2);
        let r = n;
        // a flip-symmetric node set in every copy keeps stability under both actions
        let nodes: Vec<usize> = (0..k)
            .flat_map(|c| (0..r).filter(move |&i| mask >> i.min(r - 1 - i) & 1 == 1).map(move |i| c * r + i))
            .collect();
        let l = levi_restriction(&d, &nodes, RepChoice::Last).unwrap();
        prop_assert!(l.holds(), "{:?}", l);
    }
}
