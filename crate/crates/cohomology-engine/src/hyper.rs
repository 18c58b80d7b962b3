use exact_lattice::matrix::vzero;
use exact_lattice::solve::kernel_basis;
use exact_lattice::{AbHom, BigInt, FGAbelian, IntMatrix, Subquotient};
use finite_group::GroupAction;
use num_traits::One;

use crate::cochain::{Cochain, CochainError};
use crate::tate::{differential_matrix, TateGroup};

/// `H^1(Q, T -> U)` for an equivariant map of lattices `f : T -> U`.
///
/// Cocycles are pairs `(z, c)` with `z` a normalized 1-cocycle in `T`,
/// `c` in `U` and `f(z(g)) = g c - c`; coboundaries are `(dt, f t)`.
#[derive(Clone, Debug)]
pub struct HyperH1 {
    t: GroupAction,
    u: GroupAction,
    f: IntMatrix,
    sq: Subquotient,
    z_len: usize,
}

/// A cocycle representative `(z, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCocycle {
    pub z: Cochain,
    pub c: Vec<BigInt>,
}

impl HyperH1 {
    pub fn new(t: &GroupAction, u: &GroupAction, f: &IntMatrix) -> Result<Self, CochainError> {
        if t.group() != u.group() || f.rows() != u.rank() || f.cols() != t.rank() {
            return Err(CochainError::ModuleMismatch);
        }
        if !t.is_equivariant(u, f) {
            return Err(CochainError::NotEquivariant);
        }
        let g = t.group();
        let (rt, ru) = (t.rank(), u.rank());
        let q = g.order();
        let z_len = (q - 1) * rt;
        let ambient = z_len + ru;
        let d1 = differential_matrix(t, 1);
        let mut cond = IntMatrix::zeros(d1.rows() + (q - 1) * ru, ambient);
        for i in 0..d1.rows() {
            for j in 0..d1.cols() {
                cond[(i, j)] = d1[(i, j)].clone();
            }
        }
        let id = IntMatrix::identity(ru);
        let mut block = 0;
        for h in g.elements() {
            if h == g.identity() {
                continue;
            }
            let row0 = d1.rows() + block * ru;
            let aug = u.matrix(h) - &id;
            for a in 0..ru {
                for b in 0..rt {
                    cond[(row0 + a, block * rt + b)] = f[(a, b)].clone();
                }
                for b in 0..ru {
                    cond[(row0 + a, z_len + b)] = -aug[(a, b)].clone();
                }
            }
            block += 1;
        }
        let zb = kernel_basis(&cond);
        let d0 = differential_matrix(t, 0);
        let bounds: Vec<Vec<BigInt>> = (0..rt)
            .map(|i| {
                let mut v = d0.col(i);
                let mut e = vzero(rt);
                e[i] = BigInt::one();
                v.extend(f.mul_vec(&e));
                v
            })
            .collect();
        let sq = Subquotient::new(ambient, zb, &bounds).expect("hyper coboundaries are cocycles");
        Ok(HyperH1 {
            t: t.clone(),
            u: u.clone(),
            f: f.clone(),
            sq,
            z_len,
        })
    }

    pub fn group(&self) -> &FGAbelian {
        self.sq.group()
    }

    pub fn source(&self) -> &GroupAction {
        &self.t
    }

    pub fn target(&self) -> &GroupAction {
        &self.u
    }

    pub fn map(&self) -> &IntMatrix {
        &self.f
    }

    fn flatten(&self, z: &Cochain, c: &[BigInt]) -> Vec<BigInt> {
        let mut v = z.normalized_coords();
        v.extend_from_slice(c);
        v
    }

    pub fn is_cocycle(&self, x: &HyperCocycle) -> bool {
        x.z.is_normalized() && self.sq.in_numerator(&self.flatten(&x.z, &x.c))
    }

    pub fn classify(&self, x: &HyperCocycle) -> Result<Vec<BigInt>, CochainError> {
        if x.z.degree() != 1 || !x.z.is_normalized() || x.c.len() != self.u.rank() {
            return Err(CochainError::NotCocycle);
        }
        self.sq
            .classify(&self.flatten(&x.z, &x.c))
            .map_err(|_| CochainError::NotCocycle)
    }

    pub fn representative(&self, nf: &[BigInt]) -> HyperCocycle {
        let v = self.sq.representative(nf);
        HyperCocycle {
            z: Cochain::from_normalized_coords(1, self.t.clone(), &v[..self.z_len]),
            c: v[self.z_len..].to_vec(),
        }
    }

    /// `u -> (0, u)` for `u` in `U^Q`.
    pub fn from_invariant(&self, u: &[BigInt]) -> Result<Vec<BigInt>, CochainError> {
        self.classify(&HyperCocycle {
            z: Cochain::zero(1, self.t.clone()),
            c: u.to_vec(),
        })
    }

    /// `H^0(U) -> H^1(T -> U)` on the generators of `U^Q`.
    pub fn invariant_images(&self) -> Vec<Vec<BigInt>> {
        self.u
            .invariants_basis()
            .iter()
            .map(|u| self.from_invariant(u).unwrap())
            .collect()
    }

    /// `H^1(T -> U) -> H^1(Q, T)`, `(z, c) -> z`.
    pub fn forget_map(&self, h1t: &TateGroup) -> AbHom {
        let images = self
            .group()
            .generators()
            .iter()
            .map(|g| h1t.classify_cochain(&self.representative(g).z).unwrap())
            .collect();
        AbHom::new(self.group().clone(), h1t.group().clone(), images)
    }

    /// Exactness of `H^0(U) -> H^1(T -> U) -> H^1(T) -> H^1(U)` at the middle two nodes.
    pub fn check_exactness(&self) -> ExactnessReport {
        let h1t = TateGroup::new(&self.t, 1).unwrap();
        let h1u = TateGroup::new(&self.u, 1).unwrap();
        let forget = self.forget_map(&h1t);
        let ker = forget.kernel_generators();
        let img = self.invariant_images();
        let at_hyper = self.group().same_subgroup(&ker, &img);
        let push_images = h1t
            .group()
            .generators()
            .iter()
            .map(|g| {
                let z = h1t.representative_cochain(g);
                h1u.classify_cochain(&z.map(&self.f, &self.u)).unwrap()
            })
            .collect();
        let push = AbHom::new(h1t.group().clone(), h1u.group().clone(), push_images);
        let at_h1t = h1t
            .group()
            .same_subgroup(&push.kernel_generators(), &forget.image_generators());
        ExactnessReport { at_hyper, at_h1t }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub at_hyper: bool,
    pub at_h1t: bool,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.at_hyper && self.at_h1t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use finite_group::FiniteGroup;

    fn sign(n: usize) -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(n), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap()
    }

    #[test]
    fn identity_map_gives_zero() {
        for m in [sign(2), GroupAction::trivial(FiniteGroup::cyclic(3), 2)] {
            let h = HyperH1::new(&m, &m, &IntMatrix::identity(m.rank())).unwrap();
            assert!(h.group().is_trivial());
            assert!(h.check_exactness().holds());
        }
    }

    #[test]
    fn zero_map_splits() {
        let t = sign(2);
        let u = GroupAction::trivial(FiniteGroup::cyclic(2), 1);
        let h = HyperH1::new(&t, &u, &IntMatrix::zeros(1, 1)).unwrap();
        // H^1(Z/2, sign) + Z
        assert_eq!(h.group().describe(), "Z/2 + Z");
        assert!(h.check_exactness().holds());
    }

    #[test]
    fn multiplication_by_two_on_sign() {
        let t = sign(2);
        let f = IntMatrix::from_i64(&[&[2]]);
        let h = HyperH1::new(&t, &t, &f).unwrap();
        assert!(h.group().is_finite());
        assert!(h.check_exactness().holds());
        for g in h.group().elements(64).unwrap() {
            let r = h.representative(&g);
            assert!(h.is_cocycle(&r));
            assert_eq!(h.classify(&r).unwrap(), g);
        }
    }

    #[test]
    fn non_equivariant_rejected() {
        let t = sign(2);
        let u = GroupAction::trivial(FiniteGroup::cyclic(2), 1);
        assert_eq!(HyperH1::new(&t, &u, &IntMatrix::identity(1)).unwrap_err(), CochainError::NotEquivariant);
    }
}
