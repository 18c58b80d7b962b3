use exact_lattice::{IntMatrix, QZ};
use finite_group::{corestriction_cocycle, CentralExtension, Cocycle2, FiniteGroup, InducedModule};
use proptest::prelude::*;

fn z2xz4_alpha() -> Cocycle2 {
    // bilinear cocycle a1 * b2 / 2 on Z/2 x Z/4, element (a1, a2) at index 4 a1 + a2
    let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
    Cocycle2::from_fn(g, |a, b| QZ::new(((a / 4) * (b % 4)) as i64, 2)).unwrap()
}

fn unimodular(seed: &[i64]) -> IntMatrix {
    // product of elementary matrices, always invertible over Z
    let mut m = IntMatrix::identity(2);
    for (i, &s) in seed.iter().enumerate() {
        let mut e = IntMatrix::identity(2);
        if i % 2 == 0 {
            e[(0, 1)] = s.into();
        } else {
            e[(1, 0)] = s.into();
        }
        m = &m * &e;
    }
    m
}

fn pairs() -> Vec<(FiniteGroup, Vec<usize>)> {
    let mut out = Vec::new();
    let z4 = FiniteGroup::cyclic(4);
    out.push((z4.clone(), vec![0, 2]));
    out.push((z4.clone(), vec![0]));
    let z6 = FiniteGroup::cyclic(6);
    out.push((z6.clone(), vec![0, 2, 4]));
    out.push((z6, vec![0, 3]));
    let s3 = FiniteGroup::symmetric(3);
    let rot = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
    out.push((s3.clone(), s3.subgroup_generated(&[rot])));
    let refl = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    out.push((s3.clone(), s3.subgroup_generated(&[refl])));
    let d8 = FiniteGroup::dihedral(4);
    out.push((d8.clone(), d8.center()));
    out.push((d8.clone(), d8.subgroup_generated(&[1])));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_twists_give_isomorphic_extensions(f in proptest::collection::vec(0i64..2, 7)) {
        let alpha = z2xz4_alpha();
        let mut cochain = vec![QZ::zero()];
        cochain.extend(f.iter().map(|&k| QZ::new(k, 2)));
        let beta = alpha.twist(&cochain);
        let e1 = CentralExtension::with_modulus(alpha, 2).unwrap();
        let e2 = CentralExtension::with_modulus(beta, 2).unwrap();
        let iso = e1.isomorphism_to(&e2).unwrap();
        prop_assert!(e1.group().is_homomorphism(e2.group(), &iso));
    }

    #[test]
    fn corestriction_of_twisted_cocycle_is_cocycle(f in proptest::collection::vec(0i64..4, 3), pick in 0usize..2) {
        let b = FiniteGroup::cyclic(8);
        let (a, emb) = b.subgroup_as_group(&[0, 2, 4, 6]).unwrap();
        let carry = Cocycle2::from_fn(a.clone(), |x, y| {
            let (x, y) = (emb[x] / 2, emb[y] / 2);
            QZ::new(((x + y) / 4) as i64, 4)
        }).unwrap();
        let mut cochain = vec![QZ::zero()];
        cochain.extend(f.iter().map(|&k| QZ::new(k, 4)));
        let alpha = carry.twist(&cochain);
        let section = if pick == 0 { vec![0, 1] } else { vec![0, 3] };
        prop_assert!(corestriction_cocycle(&alpha, &b, &emb, &section).is_ok());
    }

    #[test]
    fn induced_roundtrip(which in 0usize..8, s0pick in 0usize..8, seed in proptest::collection::vec(-3i64..4, 3)) {
        let (g, d) = pairs()[which].clone();
        let ind = InducedModule::new(g.clone(), &d, 2, |_| IntMatrix::identity(2)).unwrap();
        let norm = g.normalizer(&d);
        let s0 = norm[s0pick % norm.len()];
        let ap = unimodular(&seed);
        prop_assert!(ind.is_twisted_equivariant(s0, &ap));
        let a = ind.reconstruct(s0, &ap);
        let dec = ind.decompose(&a).unwrap();
        prop_assert_eq!(ind.reconstruct(dec.sigma0, &dec.a_prime), a);
        prop_assert!(dec.coset.contains(&s0));
    }
}
