use exact_lattice::{BigInt, BigRational, Cyclotomic};
use finite_group::FiniteGroup;
use projective_characters::{
    canonical_tensor_extension, character_table, mackey_multiplicity_transfer, CliffordError, CycMatrix, GroupExtension,
    MatchedOrbit, ProjectiveExtension,
};

fn powers(g: &FiniteGroup, x: usize) -> Vec<usize> {
    (0..g.element_order(x)).map(|k| g.pow(x, k as i64)).collect()
}

/// Linear characters of `<x>` given as `k -> i^{k j}` on the list `powers(x)`.
fn cyclic_reps(n: usize, j: i64) -> Vec<CycMatrix> {
    (0..n as i64).map(|k| CycMatrix::single(Cyclotomic::root_of_unity(k * j, n as u64))).collect()
}

fn d8() -> FiniteGroup {
    FiniteGroup::dihedral(4)
}

fn q8() -> FiniteGroup {
    FiniteGroup::quaternion()
}

/// Standard two-dimensional integral representation of a permutation of three letters,
/// on the basis `e0 - e1, e1 - e2`.
fn standard_rep(p: &[usize]) -> CycMatrix {
    let coords = |x: [i64; 3]| [x[0], -x[2]];
    let image = |v: [i64; 3]| {
        let mut w = [0i64; 3];
        for i in 0..3 {
            w[p[i]] += v[i];
        }
        coords(w)
    };
    let c1 = image([1, -1, 0]);
    let c2 = image([0, 1, -1]);
    CycMatrix::from_i64(&[&[c1[0], c2[0]], &[c1[1], c2[1]]])
}

fn s3_with_perms() -> (FiniteGroup, Vec<Vec<usize>>) {
    FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn norm_sq_over(values: &[Cyclotomic]) -> Cyclotomic {
    let s: Cyclotomic = values.iter().map(|v| v * &v.conj()).sum();
    s.scale(&BigRational::new(BigInt::from(1), BigInt::from(values.len())))
}

#[test]
fn faithful_character_of_rotations_is_not_invariant() {
    let g = d8();
    let ext = GroupExtension::new(g.clone(), powers(&g, 1)).unwrap();
    let err = canonical_tensor_extension(&ext, &cyclic_reps(4, 1)).unwrap_err();
    assert!(matches!(err, CliffordError::NotInvariant { .. }));
}

#[test]
fn center_of_d8_gives_nontrivial_cocycle() {
    let g = d8();
    let z = g.center().into_iter().find(|&x| x != g.identity()).unwrap();
    let h = powers(&g, z);
    let ext = GroupExtension::new(g.clone(), h.clone()).unwrap();
    let x = cyclic_reps(2, 1);
    let pe = ProjectiveExtension::build(&ext, &x).unwrap();
    let alpha = pe.cocycle().unwrap();
    assert!(alpha.iter().flatten().any(|c| *c == Cyclotomic::from_i64(-1)));
    let te = canonical_tensor_extension(&ext, &x).unwrap();
    assert!(te.holds(), "{te:?}");
    assert_eq!(te.pairs.len(), 16);
    // oracle: for g1 = h g2 the value is x(h)
    for (&(g1, g2), m) in te.pairs.iter().zip(&te.mats) {
        let hh = g.mul(g1, g.inv(g2));
        let want = if hh == g.identity() { 1 } else { -1 };
        assert_eq!(m.trace(), Cyclotomic::from_i64(want));
    }
}

#[test]
fn standard_rep_of_s3_in_product_with_z2() {
    let (s3, perms) = s3_with_perms();
    let g = FiniteGroup::direct_product(&s3, &FiniteGroup::cyclic(2));
    let h: Vec<usize> = s3.elements().map(|x| 2 * x).collect();
    let ext = GroupExtension::new(g.clone(), h).unwrap();
    let x: Vec<CycMatrix> = perms.iter().map(|p| standard_rep(p)).collect();
    let te = canonical_tensor_extension(&ext, &x).unwrap();
    assert!(te.holds());
    assert_eq!(te.pairs.len(), 72);
    assert_eq!(norm_sq_over(&te.character()), Cyclotomic::one());
    // oracle: (g1, g2) -> chi(g1) chi(g2) with chi the permutation character minus one
    let chi = |p: &[usize]| (0..3).filter(|&i| p[i] == i).count() as i64 - 1;
    for (&(g1, g2), m) in te.pairs.iter().zip(&te.mats) {
        assert_eq!(m.trace(), Cyclotomic::from_i64(chi(&perms[g1 / 2]) * chi(&perms[g2 / 2])));
    }
}

/// `Q_8 < SL(2,3)` with its two-dimensional representation over `Z[i]`.
fn sl23_over_q8() -> (GroupExtension, Vec<CycMatrix>) {
    let g = FiniteGroup::sl2_3();
    let q: Vec<usize> = g.elements().filter(|&x| 4 % g.element_order(x) == 0).collect();
    assert_eq!(q.len(), 8);
    let a = *q.iter().find(|&&x| g.element_order(x) == 4).unwrap();
    let b = *q
        .iter()
        .find(|&&x| g.element_order(x) == 4 && x != a && x != g.inv(a))
        .unwrap();
    let i = Cyclotomic::root_of_unity(1, 4);
    let o = Cyclotomic::zero();
    let one = Cyclotomic::one();
    let ma = CycMatrix::from_rows(vec![vec![i.clone(), o.clone()], vec![o.clone(), -&i]]);
    let mb = CycMatrix::from_rows(vec![vec![o.clone(), one.clone()], vec![-&one, o.clone()]]);
    let mut h = Vec::new();
    let mut mats = Vec::new();
    for m in 0..4 {
        for n in 0..2 {
            h.push(g.mul(g.pow(a, m), g.pow(b, n)));
            mats.push(&ma.pow(m as usize) * &mb.pow(n as usize));
        }
    }
    let ext = GroupExtension::new(g, h).unwrap();
    (ext, mats)
}

#[test]
fn q8_inside_sl23_needs_nontrivial_intertwiners() {
    let (ext, x) = sl23_over_q8();
    assert_eq!(ext.quotient().order(), 3);
    let pe = ProjectiveExtension::build(&ext, &x).unwrap();
    let a = (0..3).find(|&a| a != ext.quotient().identity()).unwrap();
    assert!(pe.intertwiner(a).as_scalar().is_none());
    // H^2(Z/3, C^x) = 0 but the chosen normalization can leave a coboundary
    assert!(pe.cocycle().is_ok());
    let te = canonical_tensor_extension(&ext, &x).unwrap();
    assert!(te.holds());
    assert_eq!(norm_sq_over(&te.character()), Cyclotomic::one());
}

#[test]
fn rejects_non_representation() {
    let g = d8();
    let ext = GroupExtension::new(g.clone(), powers(&g, 1)).unwrap();
    let mut x = cyclic_reps(4, 2);
    x[1] = CycMatrix::single(Cyclotomic::from_i64(1));
    assert!(matches!(ProjectiveExtension::build(&ext, &x), Err(CliffordError::NotRepresentation(..))));
}

fn one_dim(values: &[i64]) -> Vec<CycMatrix> {
    values.iter().map(|&v| CycMatrix::single(Cyclotomic::from_i64(v))).collect()
}

#[test]
fn trivial_quotient_gives_identity_correspondence() {
    let (s3, perms) = s3_with_perms();
    let all: Vec<usize> = s3.elements().collect();
    let ext = GroupExtension::new(s3.clone(), all).unwrap();
    let reps = [
        one_dim(&vec![1; 6]),
        one_dim(&perms.iter().map(|p| sign(p)).collect::<Vec<_>>()),
        perms.iter().map(|p| standard_rep(p)).collect::<Vec<_>>(),
    ];
    let orbits: Vec<MatchedOrbit> = reps.iter().map(|r| MatchedOrbit { x1: r.clone(), x2: r.clone() }).collect();
    let r = mackey_multiplicity_transfer(&ext, &ext, &orbits, None).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.full.pairs.len(), 3);
    assert!(r.full.pairs.iter().all(|&(i, j)| i == j));
}

fn z4_in(g: &FiniteGroup) -> GroupExtension {
    GroupExtension::new(g.clone(), powers(g, 1)).unwrap()
}

fn all_z4_orbits() -> Vec<MatchedOrbit> {
    [0, 2, 1]
        .iter()
        .map(|&j| MatchedOrbit {
            x1: cyclic_reps(4, j),
            x2: cyclic_reps(4, j),
        })
        .collect()
}

#[test]
fn same_extension_matches_with_itself() {
    let e = z4_in(&d8());
    let r = mackey_multiplicity_transfer(&e, &e, &all_z4_orbits(), None).unwrap();
    assert!(r.holds());
    assert_eq!(r.full.pairs.len(), 5);
    assert!(r.full.pairs.iter().all(|&(i, j)| i == j));
}

#[test]
fn dihedral_and_quaternion_over_rotations() {
    let (e1, e2) = (z4_in(&d8()), z4_in(&q8()));
    let trivial = vec![e1.quotient().identity()];
    let r = mackey_multiplicity_transfer(&e1, &e2, &all_z4_orbits(), Some(&trivial)).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.full.over1.len(), 5);
    let t1 = character_table(e1.big()).unwrap();
    let t2 = character_table(e2.big()).unwrap();
    for &(i, j) in &r.full.pairs {
        assert_eq!(t1.degree(i), t2.degree(j));
    }
    let res = r.restriction.unwrap();
    assert_eq!(res.sub.pairs.len(), 4);
    assert!(res.pairs_checked > 0);

    // a single orbit only sees the characters lying over it
    let r = mackey_multiplicity_transfer(&e1, &e2, &all_z4_orbits()[2..], None).unwrap();
    assert!(r.holds());
    assert_eq!(r.full.pairs.len(), 1);
}

#[test]
fn overlapping_orbits_rejected() {
    let e = z4_in(&d8());
    let orbits = vec![
        MatchedOrbit { x1: cyclic_reps(4, 1), x2: cyclic_reps(4, 1) },
        MatchedOrbit { x1: cyclic_reps(4, 3), x2: cyclic_reps(4, 3) },
    ];
    assert!(matches!(mackey_multiplicity_transfer(&e, &e, &orbits, None), Err(CliffordError::OrbitsOverlap { orbit: 1 })));
}

#[test]
fn center_of_d8_against_q8_has_different_cocycles() {
    let g1 = d8();
    let g2 = q8();
    let z1 = g1.center().into_iter().find(|&x| x != g1.identity()).unwrap();
    let z2 = g2.center().into_iter().find(|&x| x != g2.identity()).unwrap();
    let e1 = GroupExtension::new(g1.clone(), powers(&g1, z1)).unwrap();
    let (q, proj) = g2.quotient(&powers(&g2, z2)).unwrap();
    assert_eq!(q.order(), 4);
    // identify the two Klein quotients through the first one
    let e2 = match GroupExtension::with_quotient(g2.clone(), powers(&g2, z2), e1.quotient().clone(), proj.clone()) {
        Ok(e) => e,
        Err(_) => GroupExtension::new(g2.clone(), powers(&g2, z2)).unwrap(),
    };
    let orbits = vec![MatchedOrbit {
        x1: cyclic_reps(2, 1),
        x2: cyclic_reps(2, 1),
    }];
    let r = mackey_multiplicity_transfer(&e1, &e2, &orbits, None);
    assert!(matches!(r, Err(CliffordError::AlphaMismatch { .. })), "{r:?}");
}

#[test]
fn trivial_quotient_tensor_is_x_times_dual() {
    let (s3, perms) = s3_with_perms();
    let ext = GroupExtension::new(s3.clone(), s3.elements().collect()).unwrap();
    let x: Vec<CycMatrix> = perms.iter().map(|p| standard_rep(p)).collect();
    let te = canonical_tensor_extension(&ext, &x).unwrap();
    assert!(te.holds());
    assert_eq!(te.pairs.len(), 36);
    for (&(g1, g2), m) in te.pairs.iter().zip(&te.mats) {
        assert_eq!(*m, x[g1].kron(&x[g2].inverse().unwrap().transpose()));
    }
}
