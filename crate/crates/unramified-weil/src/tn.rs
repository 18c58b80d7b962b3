//! Tate-Nakayama map at finite level and the two characters it produces.

use cohomology_engine::cup::cup_map_minus1_to_1;
use cohomology_engine::{cup_tate_minus1, Cochain, TateGroup};
use exact_lattice::matrix::{vis_zero, vsub, vzero};
use exact_lattice::{solve_integer, AbHom, BigInt, FGAbelian, IntMatrix, QZ};
use num_traits::{One, ToPrimitive};

use crate::model::{Torus, WeilError};

/// `lambda -> c u lambda` for `lambda` of norm zero; `z(s^r) = sum_{k<r} s^k lambda`.
pub fn tn_iso(torus: &Torus, lambda: &[BigInt]) -> Result<Cochain, WeilError> {
    torus.check_vec(lambda)?;
    if !vis_zero(&torus.action().norm(lambda)) {
        return Err(WeilError::NormNonzero);
    }
    Ok(cup_tate_minus1(&torus.model().fundamental_cocycle(), lambda, torus.action()).expect("shapes agree"))
}

/// Finds `lambda` of norm zero and `t` with `z = tn_iso(lambda) + dt`.
///
/// Returns `(lambda, t)`; the pair comes from the canonical integer solution
/// of `lambda + (s - 1) t = z(s)`, `N lambda = 0`.
pub fn tn_inverse(torus: &Torus, z: &Cochain) -> Result<(Vec<BigInt>, Vec<BigInt>), WeilError> {
    if z.degree() != 1 || z.module() != torus.action() || !z.is_normalized() || !z.is_cocycle() {
        return Err(WeilError::NotCocycle);
    }
    let r = torus.rank();
    let id = IntMatrix::identity(r);
    let aug = torus.sigma() - &id;
    let top = IntMatrix::hstack(&[&id, &aug]);
    let bottom = IntMatrix::hstack(&[&torus.action().norm_matrix(), &IntMatrix::zeros(r, r)]);
    let sys = IntMatrix::vstack(&[&top, &bottom]);
    let mut rhs = z.at(&[torus.model().frobenius()]).clone();
    rhs.extend(vzero(r));
    let sol = solve_integer(&sys, &rhs).map_err(|_| WeilError::LiftNotFound("no norm-zero preimage"))?;
    let (lambda, t) = (sol[..r].to_vec(), sol[r..].to_vec());
    let back = tn_iso(torus, &lambda)?.add(&Cochain::constant(torus.action().clone(), t.clone()).differential());
    debug_assert_eq!(&back, z);
    Ok((lambda, t))
}

/// The Tate-Nakayama map on classes, `H^-1(Q, X) -> H^1(Q, X)`.
pub fn tn_hom(torus: &Torus) -> AbHom {
    cup_map_minus1_to_1(torus.action(), &torus.model().fundamental_cocycle())
}

/// `X_Q`, whose torsion subgroup is dual to `pi_0(T^^Q)`.
pub fn coinvariants(torus: &Torus) -> FGAbelian {
    torus.action().coinvariants()
}

/// All characters of `(X_Q)_tor`, as values on the torsion generators of the normal form.
pub fn torsion_characters(torus: &Torus, limit: usize) -> Option<Vec<Vec<QZ>>> {
    let co = coinvariants(torus);
    let inv = co.torsion_invariants().to_vec();
    let mut out = vec![Vec::new()];
    for d in &inv {
        let d = d.to_i64()?;
        let mut next = Vec::new();
        for chi in &out {
            for k in 0..d {
                let mut c: Vec<QZ> = chi.clone();
                c.push(QZ::new(k, d));
                next.push(c);
            }
        }
        if next.len() > limit {
            return None;
        }
        out = next;
    }
    Some(out)
}

/// The Galois-invariant torsion point of `T^` that restricts to `chi` on
/// `(X_Q)_tor` and vanishes on the free part of the normal form.
pub fn torsion_point(torus: &Torus, chi: &[QZ]) -> Result<Vec<QZ>, WeilError> {
    let co = coinvariants(torus);
    let inv = co.torsion_invariants();
    if chi.len() != inv.len() {
        return Err(WeilError::WrongRank {
            expected: inv.len(),
            got: chi.len(),
        });
    }
    for (c, d) in chi.iter().zip(inv) {
        if !c.scale(d).is_zero() {
            return Err(WeilError::ComplexMismatch("character value has the wrong order"));
        }
    }
    let r = torus.rank();
    Ok((0..r)
        .map(|j| {
            let mut e = vzero(r);
            e[j] = BigInt::one();
            let nf = co.normal_form(&e);
            QZ::dot(&nf[..inv.len()], chi)
        })
        .collect())
}

/// Restriction of an invariant dual point to `(X_Q)_tor`.
pub fn point_character(torus: &Torus, s: &[QZ]) -> Result<Vec<QZ>, WeilError> {
    torus.check_dual(s)?;
    if !torus.action().is_dual_invariant(s) {
        return Err(WeilError::NotInvariant);
    }
    let co = coinvariants(torus);
    let k = co.torsion_invariants().len();
    Ok((0..k)
        .map(|i| {
            let mut nf = co.zero_nf();
            nf[i] = BigInt::one();
            QZ::dot(&co.representative(&nf), s)
        })
        .collect())
}

/// `[z](s) = s(lambda_z)` for `s` in `T^^Q`.
pub fn kottwitz_character(torus: &Torus, z: &Cochain, s: &[QZ]) -> Result<QZ, WeilError> {
    torus.check_dual(s)?;
    if !torus.action().is_dual_invariant(s) {
        return Err(WeilError::NotInvariant);
    }
    let (lambda, _) = tn_inverse(torus, z)?;
    Ok(QZ::dot(&lambda, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub classes: usize,
    pub characters: usize,
    pub left_kernel_trivial: bool,
    pub right_kernel_trivial: bool,
}

impl PerfectnessReport {
    pub fn perfect(&self) -> bool {
        self.classes == self.characters && self.left_kernel_trivial && self.right_kernel_trivial
    }
}

/// Exhaustive table of `H^-1(Q, X) x Hom((X_Q)_tor, Q/Z) -> Q/Z`.
pub fn kottwitz_perfectness(torus: &Torus, limit: usize) -> Option<PerfectnessReport> {
    let h = TateGroup::new(torus.action(), -1).unwrap();
    let classes = h.elements(limit)?;
    let chars = torsion_characters(torus, limit)?;
    let points: Vec<Vec<QZ>> = chars.iter().map(|c| torsion_point(torus, c).unwrap()).collect();
    let table: Vec<Vec<QZ>> = classes
        .iter()
        .map(|c| {
            let lambda = h.representative_vec(c);
            points.iter().map(|s| QZ::dot(&lambda, s)).collect()
        })
        .collect();
    let zero = |row: &Vec<QZ>| row.iter().all(|v| v.is_zero());
    let left = table.iter().filter(|row| zero(row)).count() == 1;
    let right = (0..points.len()).filter(|&j| table.iter().all(|row| row[j].is_zero())).count() == 1;
    Some(PerfectnessReport {
        classes: classes.len(),
        characters: chars.len(),
        left_kernel_trivial: left,
        right_kernel_trivial: right,
    })
}

/// An unramified parameter, determined by `p = phi_0(s)` with `N p = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    p: Vec<QZ>,
}

impl Parameter {
    pub fn new(torus: &Torus, p: Vec<QZ>) -> Result<Self, WeilError> {
        torus.check_dual(&p)?;
        let g = torus.model().group();
        let norm = g
            .elements()
            .fold(vec![QZ::zero(); p.len()], |acc, k| add_dual(&acc, &torus.action().dual_act(k, &p)));
        if norm.iter().any(|v| !v.is_zero()) {
            return Err(WeilError::NotCocycle);
        }
        Ok(Parameter { p })
    }

    pub fn trivial(torus: &Torus) -> Self {
        Parameter {
            p: vec![QZ::zero(); torus.rank()],
        }
    }

    pub fn frobenius_value(&self) -> &[QZ] {
        &self.p
    }

    /// `phi_0(s^r) = sum_{k<r} s^k p`, indexed by group element.
    pub fn cocycle(&self, torus: &Torus) -> Vec<Vec<QZ>> {
        let n = torus.model().degree();
        let mut out = Vec::with_capacity(n);
        let mut acc = vec![QZ::zero(); self.p.len()];
        for k in 0..n {
            out.push(acc.clone());
            acc = add_dual(&acc, &torus.action().dual_act(k, &self.p));
        }
        out
    }
}

pub(crate) fn add_dual(a: &[QZ], b: &[QZ]) -> Vec<QZ> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `[phi](lambda) = p(lambda)` on `X^Q`.
pub fn langlands_character(torus: &Torus, phi: &Parameter, lambda: &[BigInt]) -> Result<QZ, WeilError> {
    torus.check_vec(lambda)?;
    if !torus.action().is_invariant(lambda) {
        return Err(WeilError::NotInvariant);
    }
    Ok(QZ::dot(lambda, &phi.p))
}

/// `(s - 1) t` helper used when normalizing cocycles.
pub fn frobenius_difference(torus: &Torus, t: &[BigInt]) -> Vec<BigInt> {
    vsub(&torus.sigma().mul_vec(t), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LocalModel;
    use exact_lattice::bvec;

    fn sign2() -> Torus {
        Torus::new(LocalModel::new(2), IntMatrix::from_i64(&[&[-1]])).unwrap()
    }

    fn rotation3() -> Torus {
        Torus::new(LocalModel::new(3), IntMatrix::from_i64(&[&[0, -1], &[1, -1]])).unwrap()
    }

    #[test]
    fn tn_iso_examples() {
        let t = sign2();
        assert!(tn_iso(&t, &bvec(&[0])).unwrap().is_zero());
        let z = tn_iso(&t, &bvec(&[1])).unwrap();
        assert_eq!(z.at(&[1]), &bvec(&[1]));
        let h1 = TateGroup::new(t.action(), 1).unwrap();
        assert_ne!(h1.classify_cochain(&z).unwrap(), bvec(&[0]));
        let triv = Torus::new(LocalModel::new(2), IntMatrix::identity(1)).unwrap();
        assert_eq!(tn_iso(&triv, &bvec(&[1])).unwrap_err(), WeilError::NormNonzero);
    }

    #[test]
    fn tn_bijective_on_rotation_lattice() {
        let t = rotation3();
        let hm = TateGroup::new(t.action(), -1).unwrap();
        let h1 = TateGroup::new(t.action(), 1).unwrap();
        assert_eq!(hm.order(), Some(BigInt::from(3)));
        assert_eq!(h1.order(), Some(BigInt::from(3)));
        assert!(tn_hom(&t).is_isomorphism());
    }

    #[test]
    fn inverse_round_trip() {
        let t = rotation3();
        let h1 = TateGroup::new(t.action(), 1).unwrap();
        for cls in h1.elements(10).unwrap() {
            let z = h1.representative_cochain(&cls);
            let (lambda, _) = tn_inverse(&t, &z).unwrap();
            assert_eq!(h1.classify_cochain(&tn_iso(&t, &lambda).unwrap()).unwrap(), cls);
        }
    }

    #[test]
    fn kottwitz_sign_example() {
        let t = sign2();
        let z = tn_iso(&t, &bvec(&[1])).unwrap();
        let chars = torsion_characters(&t, 10).unwrap();
        assert_eq!(chars.len(), 2);
        let s = torsion_point(&t, &[QZ::new(1, 2)]).unwrap();
        assert_eq!(kottwitz_character(&t, &z, &s).unwrap(), QZ::new(1, 2));
        let zero = Cochain::zero(1, t.action().clone());
        assert!(kottwitz_character(&t, &zero, &s).unwrap().is_zero());
        assert_eq!(point_character(&t, &s).unwrap(), vec![QZ::new(1, 2)]);
    }

    #[test]
    fn perfect_on_small_tori() {
        let z4 = Torus::new(LocalModel::new(4), IntMatrix::from_i64(&[&[0, -1], &[1, 0]])).unwrap();
        for t in [sign2(), rotation3(), z4] {
            let rep = kottwitz_perfectness(&t, 100).unwrap();
            assert!(rep.perfect(), "{rep:?}");
        }
    }

    #[test]
    fn langlands_examples() {
        let t = Torus::new(LocalModel::new(2), IntMatrix::identity(1)).unwrap();
        let phi = Parameter::new(&t, vec![QZ::new(1, 2)]).unwrap();
        assert_eq!(langlands_character(&t, &phi, &bvec(&[1])).unwrap(), QZ::new(1, 2));
        assert!(Parameter::new(&t, vec![QZ::new(1, 3)]).is_err());
        let triv = Parameter::trivial(&t);
        assert!(langlands_character(&t, &triv, &bvec(&[5])).unwrap().is_zero());
        // vanishes on norms
        for m in -3..4 {
            let nm = t.action().norm(&bvec(&[m]));
            assert!(langlands_character(&t, &phi, &nm).unwrap().is_zero());
        }
    }
}
