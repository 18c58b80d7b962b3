//! Small central extensions used by the test suites and the command line tool.

use exact_lattice::{Cyclotomic, QZ};
use finite_group::{CentralExtension, Cocycle2, FiniteGroup};

use crate::cycmatrix::CycMatrix;
use crate::projective::cocycle_from_extension;

fn klein() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

/// `alpha(a, b) = a_1 b_2 / 2` on `(Z/2)^2`, elements `2 a_1 + a_2`.
pub fn klein_bilinear() -> Cocycle2 {
    Cocycle2::from_fn(klein(), |a, b| QZ::new(((a / 2) * (b % 2)) as i64, 2)).unwrap()
}

/// `alpha(a, b) = (a_1 b_1 + a_1 b_2 + a_2 b_2) / 2`; the extension is the quaternion group.
pub fn klein_quaternionic() -> Cocycle2 {
    Cocycle2::from_fn(klein(), |a, b| {
        let (a1, a2, b1, b2) = ((a / 2) as i64, (a % 2) as i64, (b / 2) as i64, (b % 2) as i64);
        QZ::new(a1 * b1 + a1 * b2 + a2 * b2, 2)
    })
    .unwrap()
}

/// The Heisenberg cocycle `a_1 b_2 / n` on `(Z/n)^2`, elements `n a_1 + a_2`.
pub fn heisenberg(n: usize) -> Cocycle2 {
    let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(n), &FiniteGroup::cyclic(n));
    Cocycle2::from_fn(g, |a, b| QZ::new(((a / n) * (b % n)) as i64, n as i64)).unwrap()
}

/// `a_1 b_2 / 2` on `Z/2 x Z/4`, elements `4 a_1 + a_2`.
pub fn z2_z4_bilinear() -> Cocycle2 {
    let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
    Cocycle2::from_fn(g, |a, b| QZ::new(((a / 4) * (b % 4)) as i64, 2)).unwrap()
}

/// `SL(2,3) -> A_4`.
pub fn a4_double_cover() -> Cocycle2 {
    let sl = FiniteGroup::sl2_3();
    let z = sl.center().into_iter().find(|&x| x != sl.identity()).unwrap();
    cocycle_from_extension(&sl, z).unwrap().1
}

/// `GL(2,3) -> S_4`.
pub fn s4_double_cover() -> Cocycle2 {
    let gl = FiniteGroup::from_matrices_mod_p(&[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]], 3, false).unwrap();
    assert_eq!(gl.order(), 48);
    let z = gl.center().into_iter().find(|&x| x != gl.identity()).unwrap();
    cocycle_from_extension(&gl, z).unwrap().1
}

/// `D_16 -> D_8`.
pub fn d8_double_cover() -> Cocycle2 {
    let d16 = FiniteGroup::dihedral(8);
    let z = d16.center().into_iter().find(|&x| x != d16.identity()).unwrap();
    cocycle_from_extension(&d16, z).unwrap().1
}

/// A coboundary with values in `mu_3` on `S_3`; the extension splits.
pub fn s3_coboundary() -> Cocycle2 {
    let s3 = FiniteGroup::symmetric(3);
    let f: Vec<QZ> = s3.elements().map(|a| QZ::new(a as i64, 3)).collect();
    let mut f = f;
    f[s3.identity()] = QZ::zero();
    Cocycle2::coboundary(s3, &f)
}

/// Central extensions `mu_m x_alpha A` with `|A| <= 24`.
pub fn orthogonality_fixtures() -> Vec<(&'static str, CentralExtension)> {
    vec![
        ("(Z/2)^2 bilinear", CentralExtension::new(klein_bilinear())),
        ("(Z/2)^2 quaternionic", CentralExtension::new(klein_quaternionic())),
        ("(Z/2)^2 bilinear, mu_4", CentralExtension::with_modulus(klein_bilinear(), 4).unwrap()),
        ("(Z/2)^2 trivial", CentralExtension::with_modulus(Cocycle2::zero(klein()), 2).unwrap()),
        ("Z/2 x Z/4 bilinear", CentralExtension::new(z2_z4_bilinear())),
        ("(Z/3)^2 Heisenberg", CentralExtension::new(heisenberg(3))),
        ("S3 coboundary", CentralExtension::new(s3_coboundary())),
        ("D8 double cover", CentralExtension::new(d8_double_cover())),
        ("A4 double cover", CentralExtension::new(a4_double_cover())),
        ("S4 double cover", CentralExtension::new(s4_double_cover())),
    ]
}

pub fn pauli() -> Vec<CycMatrix> {
    let x = CycMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let z = CycMatrix::from_i64(&[&[1, 0], &[0, -1]]);
    vec![CycMatrix::identity(2), x.clone(), z.clone(), &x * &z]
}

pub fn klein_in(g: &FiniteGroup, elems: [usize; 3]) -> Vec<usize> {
    let mut v = vec![g.identity()];
    v.extend(elems);
    assert!(g.is_subgroup(&v));
    v
}

/// Section picking the `k`-th element of each nontrivial coset.
pub fn section(g: &FiniteGroup, sub: &[usize], k: usize) -> Vec<usize> {
    g.right_cosets(sub)
        .iter()
        .map(|c| if c.contains(&g.identity()) { g.identity() } else { c[k % c.len()] })
        .collect()
}

/// An `alpha`-projective representation `p` of the subgroup `emb` of `big`, with a
/// section of the right cosets.
#[derive(Clone, Debug)]
pub struct InductionFixture {
    pub name: &'static str,
    pub big: FiniteGroup,
    pub emb: Vec<usize>,
    pub section: Vec<usize>,
    pub p: Vec<CycMatrix>,
}

pub fn z2_in_z4(p1: CycMatrix, k: usize) -> InductionFixture {
    let big = FiniteGroup::cyclic(4);
    let emb = vec![0, 2];
    let d = p1.rows();
    InductionFixture {
        name: "Z/2 < Z/4",
        section: section(&big, &emb, k),
        big,
        emb,
        p: vec![CycMatrix::identity(d), p1],
    }
}

fn a4() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap().0
}

fn clock_shift() -> Vec<CycMatrix> {
    let w = Cyclotomic::root_of_unity(1, 3);
    let o = Cyclotomic::zero();
    let l = Cyclotomic::one();
    let shift = CycMatrix::from_rows(vec![vec![o.clone(), o.clone(), l.clone()], vec![l.clone(), o.clone(), o.clone()], vec![o.clone(), l.clone(), o.clone()]]);
    let clock = CycMatrix::from_rows(vec![
        vec![l.clone(), o.clone(), o.clone()],
        vec![o.clone(), w.clone(), o.clone()],
        vec![o.clone(), o.clone(), w.pow(2)],
    ]);
    // element 3 a + b of (Z/3)^2 -> shift^a clock^b
    (0..9).map(|k| &shift.pow(k / 3) * &clock.pow(k % 3)).collect()
}

/// Projective representations of subgroups for the tensor induction checks.
pub fn induction_fixtures() -> Vec<InductionFixture> {
    let i = Cyclotomic::root_of_unity(1, 4);
    let ix = CycMatrix::from_i64(&[&[0, 1], &[1, 0]]).scale(&i);
    let mut out = vec![
        z2_in_z4(CycMatrix::single(Cyclotomic::from_i64(-1)), 0),
        z2_in_z4(ix.clone(), 0),
        z2_in_z4(ix.clone(), 1),
        z2_in_z4(CycMatrix::single(i.clone()), 0),
    ];
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    out.push(InductionFixture {
        name: "A = B Klein",
        emb: vec![0, 1, 2, 3],
        section: vec![0],
        big: klein,
        p: pauli(),
    });
    let z2z4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
    for k in 0..2 {
        let emb = klein_in(&z2z4, [2, 4, 6]);
        out.push(InductionFixture {
            name: "Klein < Z/2 x Z/4",
            section: section(&z2z4, &emb, k),
            big: z2z4.clone(),
            emb,
            p: pauli(),
        });
    }
    let d8 = FiniteGroup::dihedral(4);
    let r2 = d8.pow(1, 2);
    let s = 2;
    let emb = klein_in(&d8, [r2, s, d8.mul(r2, s)]);
    for k in 0..2 {
        out.push(InductionFixture {
            name: "Klein < D8",
            section: section(&d8, &emb, k),
            big: d8.clone(),
            emb: emb.clone(),
            p: pauli(),
        });
    }
    let a = a4();
    let inv: Vec<usize> = a.elements().filter(|&x| x != a.identity() && a.element_order(x) == 2).collect();
    let emb = klein_in(&a, [inv[0], inv[1], inv[2]]);
    out.push(InductionFixture {
        name: "Klein < A4",
        section: section(&a, &emb, 1),
        big: a,
        emb,
        p: pauli(),
    });
    let s3 = FiniteGroup::symmetric(3);
    let c = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
    out.push(InductionFixture {
        name: "Z/3 < S3 with a coboundary",
        emb: vec![s3.identity(), c, s3.mul(c, c)],
        section: section(&s3, &[s3.identity(), c, s3.mul(c, c)], 0),
        big: s3,
        p: vec![
            CycMatrix::single(Cyclotomic::one()),
            CycMatrix::single(Cyclotomic::root_of_unity(1, 9)),
            CycMatrix::single(Cyclotomic::root_of_unity(5, 9)),
        ],
    });
    let h = FiniteGroup::direct_product(&FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3)), &FiniteGroup::cyclic(2));
    let emb: Vec<usize> = (0..9).map(|k| 2 * k).collect();
    out.push(InductionFixture {
        name: "Heisenberg (Z/3)^2 < (Z/3)^2 x Z/2",
        section: section(&h, &emb, 0),
        big: h,
        emb,
        p: clock_shift(),
    });
    out
}
