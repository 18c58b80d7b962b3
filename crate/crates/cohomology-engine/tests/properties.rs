use cohomology_engine::cup::tensor_module;
use cohomology_engine::{
    coinflation, cup, homology_differential, Cochain, FiniteAmbient, FiniteSupportChain, HyperH1, ScalarPairing,
    TateGroup, TensorPairing,
};
use exact_lattice::{bvec, BigInt, IntMatrix};
use finite_group::{FiniteGroup, GroupAction};
use proptest::prelude::*;

fn sign_z4() -> GroupAction {
    GroupAction::from_generators(FiniteGroup::cyclic(4), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap()
}

fn swap_z2() -> GroupAction {
    GroupAction::from_generators(FiniteGroup::cyclic(2), 2, &[(1, IntMatrix::from_i64(&[&[0, 1], &[1, 0]]))]).unwrap()
}

fn s3_a2() -> GroupAction {
    let (g, perms) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    // permutation action on Z^3 restricted to the sum-zero lattice, basis e0-e1, e1-e2
    let mats: Vec<IntMatrix> = perms
        .iter()
        .map(|p| {
            let img = |v: [i64; 3]| {
                let mut w = [0i64; 3];
                for i in 0..3 {
                    w[p[i]] += v[i];
                }
                // coordinates in basis (1,-1,0), (0,1,-1)
                [w[0], w[0] + w[1]]
            };
            let c0 = img([1, -1, 0]);
            let c1 = img([0, 1, -1]);
            IntMatrix::from_i64(&[&[c0[0], c1[0]], &[c0[1], c1[1]]])
        })
        .collect();
    GroupAction::new(g, 2, mats).unwrap()
}

fn modules() -> Vec<GroupAction> {
    vec![sign_z4(), swap_z2(), s3_a2(), GroupAction::trivial(FiniteGroup::cyclic(3), 1)]
}

fn random_cochain(m: &GroupAction, degree: usize, seed: &[i64]) -> Cochain {
    let q = m.group().order();
    let r = m.rank();
    let mut k = 0usize;
    let mut vals = Vec::new();
    for _ in 0..q.pow(degree as u32) {
        let mut v = Vec::new();
        for _ in 0..r {
            v.push(BigInt::from(seed[k % seed.len()]));
            k += 1;
        }
        vals.push(v);
    }
    Cochain::from_values(degree, m.clone(), vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_zero(which in 0usize..4, degree in 0usize..3, seed in proptest::collection::vec(-7i64..8, 1..40)) {
        let m = &modules()[which];
        let x = random_cochain(m, degree, &seed);
        prop_assert!(x.differential().differential().is_zero());
    }

    #[test]
    fn leibniz_scalar(which in 0usize..4, p in 0usize..2, q in 0usize..2, s1 in proptest::collection::vec(-5i64..6, 1..20), s2 in proptest::collection::vec(-5i64..6, 1..20)) {
        let m = &modules()[which];
        let z = GroupAction::trivial(m.group().clone(), 1);
        let x = random_cochain(&z, p, &s1);
        let y = random_cochain(m, q, &s2);
        let lhs = cup(&x, &y, m, &ScalarPairing).unwrap().differential();
        let a = cup(&x.differential(), &y, m, &ScalarPairing).unwrap();
        let b = cup(&x, &y.differential(), m, &ScalarPairing).unwrap();
        let rhs = if p % 2 == 0 { a.add(&b) } else { a.sub(&b) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_tensor(p in 0usize..2, q in 0usize..2, s1 in proptest::collection::vec(-4i64..5, 1..12), s2 in proptest::collection::vec(-4i64..5, 1..12)) {
        let a = swap_z2();
        let b = GroupAction::from_generators(FiniteGroup::cyclic(2), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        let t = tensor_module(&a, &b);
        let x = random_cochain(&a, p, &s1);
        let y = random_cochain(&b, q, &s2);
        let lhs = cup(&x, &y, &t, &TensorPairing).unwrap().differential();
        let u = cup(&x.differential(), &y, &t, &TensorPairing).unwrap();
        let v = cup(&x, &y.differential(), &t, &TensorPairing).unwrap();
        let rhs = if p % 2 == 0 { u.add(&v) } else { u.sub(&v) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homology_dd_zero(seed in proptest::collection::vec((0usize..4, 0usize..4, 0usize..4, -5i64..6), 1..8)) {
        let w = FiniteAmbient { action: sign_z4() };
        let y = FiniteSupportChain::from_entries(3, 1, seed.iter().map(|&(a, b, c, v)| (vec![a, b, c], bvec(&[v]))));
        prop_assert!(homology_differential(&w, &homology_differential(&w, &y)).is_zero());
    }

    #[test]
    fn coinflation_commutes_with_differential(seed in proptest::collection::vec((0usize..4, 0usize..4, -5i64..6), 1..8)) {
        // Z/4 acting on Z through its quotient Z/2 by the sign
        let top = GroupAction::from_generators(FiniteGroup::cyclic(4), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        let bottom = GroupAction::from_generators(FiniteGroup::cyclic(2), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        let wl = FiniteAmbient { action: top };
        let wk = FiniteAmbient { action: bottom };
        let y = FiniteSupportChain::from_entries(2, 1, seed.iter().map(|&(a, b, v)| (vec![a, b], bvec(&[v]))));
        let lhs = homology_differential(&wk, &coinflation(&y, |g| g % 2));
        let rhs = coinflation(&homology_differential(&wl, &y), |g| g % 2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hyper_exactness(a in -3i64..4, b in -3i64..4, c in -3i64..4) {
        // equivariant endomorphisms of the swap module are x I + y S
        let t = swap_z2();
        let f = IntMatrix::from_i64(&[&[a, b], &[b, a]]);
        let h = HyperH1::new(&t, &t, &f).unwrap();
        prop_assert!(h.check_exactness().holds());
        let s = s3_a2();
        let g = IntMatrix::from_i64(&[&[c, 0], &[0, c]]);
        let h2 = HyperH1::new(&s, &s, &g).unwrap();
        prop_assert!(h2.check_exactness().holds());
    }
}

#[test]
fn classify_representative_on_all_tate_groups() {
    for m in modules() {
        for deg in -1..=2 {
            let h = TateGroup::new(&m, deg).unwrap();
            if let Some(elems) = h.elements(64) {
                for e in elems {
                    let r = h.representative_vec(&e);
                    assert_eq!(h.classify_vec(&r).unwrap(), e);
                }
            }
        }
    }
}

#[test]
fn periodicity_orders_match_for_cyclic() {
    for m in [sign_z4(), swap_z2(), GroupAction::trivial(FiniteGroup::cyclic(3), 1)] {
        let ord = |d| TateGroup::new(&m, d).unwrap().order();
        assert_eq!(ord(-1), ord(1));
        assert_eq!(ord(0), ord(2));
    }
}
