//! Named example cases and a seeded generator of random cases.

use std::collections::BTreeMap;

use exact_lattice::solve::kernel_basis;
use exact_lattice::{bvec, BigInt, IntMatrix, QZ};
use finite_group::{FiniteGroup, GroupAction};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use unramified_weil::{coinvariants, torsion_point, LocalModel, Parameter, Torus};

use crate::case::{build_case, ToriCase, ToriError, TorusModel};
use crate::character::ElementPair;

fn cyclic_model(n: usize, sigma: IntMatrix, a: FiniteGroup, gens: &[(usize, IntMatrix)]) -> TorusModel {
    let rank = sigma.rows();
    let comp = GroupAction::from_generators(a, rank, gens).expect("fixture action");
    TorusModel::new(LocalModel::new(n), sigma, comp).expect("fixture model")
}

/// Rank one, everything trivial.
pub fn trivial() -> ToriCase {
    let m = cyclic_model(1, IntMatrix::identity(1), FiniteGroup::trivial(), &[]);
    build_case(&m, bvec(&[0]), vec![QZ::zero()]).unwrap()
}

/// The norm-one torus: `Q = Z/2` acting on `Z` by `-1`, `A = Z/2` acting by `-1`, `z(s) = 1`.
pub fn norm_one() -> ToriCase {
    let m = cyclic_model(2, IntMatrix::from_i64(&[&[-1]]), FiniteGroup::cyclic(2), &[(1, IntMatrix::from_i64(&[&[-1]]))]);
    build_case(&m, bvec(&[1]), vec![QZ::zero()]).unwrap()
}

/// Split rank two with `A = Z/2` swapping the factors and `p = (1/2, 0)`, so
/// that `A^[phi]` is trivial.
pub fn split_swap() -> ToriCase {
    let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let m = cyclic_model(2, IntMatrix::identity(2), FiniteGroup::cyclic(2), &[(1, swap)]);
    build_case(&m, bvec(&[0, 0]), vec![QZ::new(1, 2), QZ::zero()]).unwrap()
}

/// `Q = Z/4` acting by `diag(1, -1)`, `A = Z/4` with generator `diag(1, -1)`,
/// `p = (1/4, 0)` and `z(s) = (0, 1)`.
pub fn cyclic_four() -> ToriCase {
    let d = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
    let m = cyclic_model(4, d.clone(), FiniteGroup::cyclic(4), &[(1, d)]);
    build_case(&m, bvec(&[0, 1]), vec![QZ::new(1, 4), QZ::zero()]).unwrap()
}

/// `X = Z e+ + Z e- + Z[Q]` with `Q = Z/2` and `A = (Z/2)^2` acting so that the
/// eigenlattices are glued: `a` negates `e+` and adds it to both `f_i`, `b`
/// sends `e-` to `f1 - f2 - e-`.
pub fn klein_glued_model() -> TorusModel {
    let z2 = FiniteGroup::cyclic(2);
    let g = FiniteGroup::direct_product(&z2, &z2);
    let sigma = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let a = IntMatrix::from_i64(&[&[-1, 0, 1, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let b = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 1, 1, 0], &[0, -1, 0, 1]]);
    let gens = g.generators();
    assert_eq!(gens.len(), 2);
    cyclic_model(2, sigma, g, &[(gens[0], a), (gens[1], b)])
}

/// The glued Klein four case with `z(s) = e-` and `p = (1/2, 0, 0, 0)`: the
/// cocycle `alpha_bar` is not a coboundary.
pub fn klein_glued() -> ToriCase {
    build_case(&klein_glued_model(), bvec(&[0, 1, 0, 0]), vec![QZ::new(1, 2), QZ::zero(), QZ::zero(), QZ::zero()]).unwrap()
}

/// `S_3` acting on the `A_2` root lattice, Frobenius `-1` of order 2, `z(s)` the first simple root.
pub fn s3_root_lattice() -> ToriCase {
    let (g, gens) = s3_on_a2();
    let m = cyclic_model(2, IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]), g, &gens);
    build_case(&m, bvec(&[1, 0]), vec![QZ::zero(), QZ::zero()]).unwrap()
}

/// `S_3` on `Z^2 = A_2` through the reflection representation, as generator images.
fn s3_on_a2() -> (FiniteGroup, Vec<(usize, IntMatrix)>) {
    let (g, perms) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    let reps = sum_zero_module(&g, &perms);
    let gens = g.generators().into_iter().map(|x| (x, reps[x].clone())).collect();
    (g, gens)
}

/// The sum-zero sublattice of the permutation module, basis `e_i - e_(k-1)`.
fn sum_zero_module(g: &FiniteGroup, perms: &[Vec<usize>]) -> Vec<IntMatrix> {
    let k = perms[0].len();
    g.elements()
        .map(|x| {
            let p = &perms[x];
            let cols: Vec<Vec<BigInt>> = (0..k - 1)
                .map(|i| {
                    let mut v = vec![BigInt::from(0); k - 1];
                    if p[i] < k - 1 {
                        v[p[i]] += 1;
                    }
                    if p[k - 1] < k - 1 {
                        v[p[k - 1]] -= 1;
                    }
                    v
                })
                .collect();
            IntMatrix::from_columns(&cols, k - 1)
        })
        .collect()
}

/// The permutation module on left cosets of `sub`.
fn permutation_module(g: &FiniteGroup, sub: &[usize]) -> Vec<IntMatrix> {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        let mut c: Vec<usize> = sub.iter().map(|&h| g.mul(x, h)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let k = cosets.len();
    let which = |y: usize| cosets.iter().position(|c| c.contains(&y)).unwrap();
    g.elements()
        .map(|x| {
            let mut m = IntMatrix::zeros(k, k);
            for (i, c) in cosets.iter().enumerate() {
                m[(which(g.mul(x, c[0])), i)] = BigInt::from(1);
            }
            m
        })
        .collect()
}

/// All homomorphisms `G -> {+1, -1}`.
fn sign_characters(g: &FiniteGroup) -> Vec<Vec<i64>> {
    let gens = g.generators();
    let mut out = Vec::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut val = vec![0i64; g.order()];
        val[g.identity()] = 1;
        let mut frontier = vec![g.identity()];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let v = val[x] * if mask >> k & 1 == 1 { -1 } else { 1 };
                if val[y] == 0 {
                    val[y] = v;
                    frontier.push(y);
                } else if val[y] != v {
                    ok = false;
                }
            }
        }
        if ok && g.elements().all(|a| g.elements().all(|b| val[g.mul(a, b)] == val[a] * val[b])) && !out.contains(&val) {
            out.push(val);
        }
    }
    out
}

fn scalar(r: usize, s: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(r);
    for i in 0..r {
        m[(i, i)] = BigInt::from(s);
    }
    m
}

fn finite_order_rank2() -> Vec<IntMatrix> {
    [
        [[1, 0], [0, 1]],
        [[-1, 0], [0, -1]],
        [[0, 1], [1, 0]],
        [[0, -1], [-1, 0]],
        [[1, 0], [0, -1]],
        [[0, -1], [1, -1]],
        [[0, -1], [1, 0]],
        [[1, -1], [1, 0]],
    ]
    .iter()
    .map(|m| IntMatrix::from_i64(&[&m[0], &m[1]]))
    .collect()
}

fn order_divides(m: &IntMatrix, n: usize) -> bool {
    m.pow(n as u64) == IntMatrix::identity(m.rows())
}

/// The component groups used by the generator, by name.
pub fn component_groups() -> Vec<(&'static str, FiniteGroup)> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        ("1", FiniteGroup::trivial()),
        ("Z2", z2.clone()),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("Z2xZ2", FiniteGroup::direct_product(&z2, &z2)),
        ("S3", FiniteGroup::symmetric(3)),
        ("Z6", FiniteGroup::cyclic(6)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Z2xZ4", FiniteGroup::direct_product(&z2, &FiniteGroup::cyclic(4))),
    ]
}

#[derive(Clone, Debug)]
struct Block {
    comp: Vec<IntMatrix>,
    sigma: IntMatrix,
}

fn random_block(rng: &mut ChaCha8Rng, g: &FiniteGroup, n: usize, room: usize) -> Option<Block> {
    let chars = sign_characters(g);
    let kind = rng.gen_range(0..3);
    let comp: Vec<IntMatrix> = match kind {
        0 => {
            let r = if room >= 2 && rng.gen_bool(0.5) { 2 } else { 1 };
            let chi = chars.choose(rng).unwrap();
            g.elements().map(|a| scalar(r, chi[a])).collect()
        }
        _ => {
            // a permutation module or its sum-zero part, twisted by a sign character
            let subs: Vec<Vec<usize>> = subgroups(g)
                .into_iter()
                .filter(|h| {
                    let k = g.order() / h.len();
                    (k <= room && k > 1) || (kind == 2 && k - 1 <= room && k > 2)
                })
                .collect();
            let h = subs.choose(rng)?;
            let mut mats = permutation_module(g, h);
            if kind == 2 && mats[0].rows() > 2 {
                let k = mats[0].rows();
                let perms: Vec<Vec<usize>> = mats
                    .iter()
                    .map(|m| (0..k).map(|i| (0..k).find(|&j| m[(j, i)] == BigInt::from(1)).unwrap()).collect())
                    .collect();
                mats = sum_zero_module(g, &perms);
            }
            if mats[0].rows() > room {
                return None;
            }
            let chi = chars.choose(rng).unwrap();
            g.elements().map(|a| &mats[a] * &scalar(mats[a].rows(), chi[a])).collect()
        }
    };
    let r = comp[0].rows();
    let scalar_action = comp.iter().all(|m| *m == scalar(r, 1) || *m == scalar(r, -1));
    let mut options: Vec<IntMatrix> = vec![scalar(r, 1), scalar(r, -1)];
    if scalar_action && r == 2 {
        options = finite_order_rank2();
    }
    for z in g.center() {
        options.push(comp[z].clone());
        options.push(&comp[z] * &scalar(r, -1));
    }
    let options: Vec<IntMatrix> = options.into_iter().filter(|s| order_divides(s, n)).collect();
    let sigma = options.choose(rng)?.clone();
    Some(Block { comp, sigma })
}

fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let mut h = g.subgroup_generated(&[x, y]);
            h.sort_unstable();
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

fn direct_sum(blocks: &[Block], g: &FiniteGroup) -> (Vec<IntMatrix>, IntMatrix) {
    let comp = g
        .elements()
        .map(|a| {
            let refs: Vec<&IntMatrix> = blocks.iter().map(|b| &b.comp[a]).collect();
            IntMatrix::block_diag(&refs)
        })
        .collect();
    let refs: Vec<&IntMatrix> = blocks.iter().map(|b| &b.sigma).collect();
    (comp, IntMatrix::block_diag(&refs))
}

/// Bounds for the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteBounds {
    pub max_rank: usize,
    pub max_degree: usize,
    pub max_component: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            max_rank: 4,
            max_degree: 6,
            max_component: 8,
        }
    }
}

fn random_model(rng: &mut ChaCha8Rng, name: &str, g: &FiniteGroup, bounds: &SuiteBounds) -> TorusModel {
    loop {
        let n = rng.gen_range(1..=bounds.max_degree);
        let mut blocks = Vec::new();
        let mut rank = 0;
        let target = rng.gen_range(1..=bounds.max_rank);
        let mut tries = 0;
        while rank < target && tries < 20 {
            tries += 1;
            if let Some(b) = random_block(rng, g, n, target - rank) {
                rank += b.sigma.rows();
                blocks.push(b);
            }
        }
        if blocks.is_empty() {
            continue;
        }
        let (comp, sigma) = direct_sum(&blocks, g);
        let action = GroupAction::new(g.clone(), rank, comp).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Ok(m) = TorusModel::new(LocalModel::new(n), sigma, action) {
            return m;
        }
    }
}

fn random_qz_vec(rng: &mut ChaCha8Rng, r: usize, den: i64) -> Vec<QZ> {
    (0..r).map(|_| QZ::new(rng.gen_range(0..den), den)).collect()
}

/// Frobenius norm of a dual point, which is always invariant.
fn dual_norm(torus: &Torus, u: &[QZ]) -> Vec<QZ> {
    let act = torus.action();
    act.group().elements().fold(vec![QZ::zero(); u.len()], |acc, k| {
        acc.iter().zip(act.dual_act(k, u)).map(|(x, y)| x + &y).collect()
    })
}

/// A random element of `X^Q` with small coefficients.
pub fn random_invariant(rng: &mut ChaCha8Rng, torus: &Torus) -> Vec<BigInt> {
    let r = torus.rank();
    torus
        .action()
        .invariants_basis()
        .iter()
        .fold(vec![BigInt::from(0); r], |acc, v| {
            let k = BigInt::from(rng.gen_range(-2i64..=2));
            acc.iter().zip(v).map(|(x, y)| x + &k * y).collect()
        })
}

/// A random Frobenius-invariant dual point: a norm, plus multiples of
/// rational fixed vectors, plus a lift of a random character of `(X_Q)_tor`.
pub fn random_dual_invariant(rng: &mut ChaCha8Rng, torus: &Torus) -> Vec<QZ> {
    let den = *[1i64, 2, 3, 4, 6].choose(rng).unwrap();
    let u = random_qz_vec(rng, torus.rank(), den);
    let s = dual_norm(torus, &u);
    let fixed = kernel_basis(&(&torus.sigma().transpose() - &IntMatrix::identity(torus.rank())));
    let s = fixed.iter().fold(s, |acc, v| {
        let q = QZ::new(rng.gen_range(0..den), den);
        acc.iter().zip(v).map(|(x, k)| x + &q.scale(k)).collect()
    });
    let chi: Vec<QZ> = coinvariants(torus)
        .torsion_invariants()
        .iter()
        .map(|d| {
            let d = i64::try_from(d).expect("small torsion");
            QZ::new(rng.gen_range(0..d), d)
        })
        .collect();
    let lift = torsion_point(torus, &chi).expect("torsion characters lift");
    s.iter().zip(&lift).map(|(x, y)| x + y).collect()
}

fn random_parameter(rng: &mut ChaCha8Rng, torus: &Torus) -> Vec<QZ> {
    let n = torus.model().degree() as i64;
    for _ in 0..30 {
        let den = n * rng.gen_range(1..=2);
        let p = random_qz_vec(rng, torus.rank(), den);
        if Parameter::new(torus, p.clone()).is_ok() {
            return p;
        }
    }
    vec![QZ::zero(); torus.rank()]
}

fn random_zeta(rng: &mut ChaCha8Rng, torus: &Torus) -> Vec<BigInt> {
    let r = torus.rank();
    kernel_basis(&torus.action().norm_matrix()).iter().fold(vec![BigInt::from(0); r], |acc, v| {
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        acc.iter().zip(v).map(|(x, y)| x + &k * y).collect()
    })
}

/// Shifts every `t_a` and `s_a` away from the canonical solution.
pub fn random_rechoice(rng: &mut ChaCha8Rng, case: &ToriCase) -> Result<ToriCase, ToriError> {
    let id = case.group().identity();
    let mut tx = BTreeMap::new();
    for &a in case.z_fixers() {
        if a != id {
            tx.insert(a, random_invariant(rng, case.torus()));
        }
    }
    let mut sy = BTreeMap::new();
    for &a in case.phi_fixers() {
        if a != id {
            sy.insert(a, random_dual_invariant(rng, case.torus()));
        }
    }
    case.with_shifts(&tx, &sy)
}

/// A generated case with its component group name.
#[derive(Clone, Debug)]
pub struct GeneratedCase {
    pub group: &'static str,
    pub case: ToriCase,
}

/// `size` cases from `seed`, cycling through the component groups of order at
/// most `bounds.max_component`, with random non-canonical choices of `t_a`, `s_a`.
pub fn random_suite(seed: u64, size: usize, bounds: &SuiteBounds) -> Vec<GeneratedCase> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups: Vec<(&'static str, FiniteGroup)> = component_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= bounds.max_component)
        .collect();
    (0..size)
        .map(|i| {
            let (name, g) = &groups[i % groups.len()];
            let model = if *name == "Z2xZ2" && bounds.max_rank >= 4 && bounds.max_degree >= 2 && rng.gen_bool(0.4) {
                klein_glued_model()
            } else {
                random_model(&mut rng, name, g, bounds)
            };
            let zeta = random_zeta(&mut rng, model.torus());
            let p = random_parameter(&mut rng, model.torus());
            let case = build_case(&model, zeta, p).unwrap_or_else(|e| panic!("{name}: {e}"));
            let case = random_rechoice(&mut rng, &case).unwrap_or_else(|e| panic!("{name}: {e}"));
            GeneratedCase { group: name, case }
        })
        .collect()
}

/// Element pairs covering every `(a, b)` with `a` in `A^[z]` and `b` in the
/// stabilizer, each with `samples` random `(t, s.)`.
pub fn element_pairs(rng: &mut ChaCha8Rng, case: &ToriCase, samples: usize) -> Vec<ElementPair> {
    let mut out = Vec::new();
    for &a in case.z_fixers() {
        for &b in case.embedding() {
            for k in 0..samples {
                let (t, sdot) = if k == 0 {
                    (vec![BigInt::from(0); case.rank()], vec![QZ::zero(); case.rank()])
                } else {
                    (random_invariant(rng, case.torus()), random_dual_invariant(rng, case.torus()))
                };
                out.push(ElementPair { t, a, sdot, b });
            }
        }
    }
    out
}
