use exact_lattice::solve::kernel_basis;
use exact_lattice::{BigInt, FGAbelian, IntMatrix, SolveError, Subquotient};
use finite_group::GroupAction;
use num_traits::{One, Zero};

use crate::cochain::{Cochain, CochainError};

/// A Tate cohomology group `H^n(Q, X)` for `n` in `-1..=2`, with classification maps.
///
/// Degrees `-1` and `0` use the module itself as ambient lattice; degrees 1
/// and 2 use the coordinates of normalized cochains.
#[derive(Clone, Debug)]
pub struct TateGroup {
    degree: i32,
    module: GroupAction,
    sq: Subquotient,
}

/// Matrix of `d` from normalized `n`-cochains to normalized `(n+1)`-cochains.
pub fn differential_matrix(module: &GroupAction, n: usize) -> IntMatrix {
    let q = module.group().order();
    let r = module.rank();
    let dim = (q - 1).pow(n as u32) * r;
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut coords = vec![BigInt::zero(); dim];
        coords[k] = BigInt::one();
        let c = Cochain::from_normalized_coords(n, module.clone(), &coords);
        cols.push(c.differential().normalized_coords());
    }
    let rows = (q - 1).pow(n as u32 + 1) * r;
    IntMatrix::from_columns(&cols, rows)
}

impl TateGroup {
    pub fn new(module: &GroupAction, degree: i32) -> Result<Self, CochainError> {
        let r = module.rank();
        let sq = match degree {
            -1 => {
                let z = kernel_basis(&module.norm_matrix());
                let b: Vec<Vec<BigInt>> = module
                    .group()
                    .elements()
                    .flat_map(|g| (0..r).map(move |i| (g, i)))
                    .map(|(g, i)| {
                        let mut e = vec![BigInt::zero(); r];
                        e[i] = BigInt::one();
                        module.augment(g, &e)
                    })
                    .collect();
                Subquotient::new(r, z, &b)
            }
            0 => {
                let z = module.invariants_basis();
                let nm = module.norm_matrix();
                let b: Vec<Vec<BigInt>> = (0..r).map(|i| nm.col(i)).collect();
                Subquotient::new(r, z, &b)
            }
            1 | 2 => {
                let n = degree as usize;
                let dn = differential_matrix(module, n);
                let z = kernel_basis(&dn);
                let dprev = differential_matrix(module, n - 1);
                let b: Vec<Vec<BigInt>> = (0..dprev.cols()).map(|j| dprev.col(j)).collect();
                Subquotient::new(dn.cols(), z, &b)
            }
            d => return Err(CochainError::DegreeOutOfRange(d)),
        }
        .expect("boundaries lie in cycles");
        Ok(TateGroup {
            degree,
            module: module.clone(),
            sq,
        })
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn module(&self) -> &GroupAction {
        &self.module
    }

    pub fn group(&self) -> &FGAbelian {
        self.sq.group()
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }

    /// Classifies an ambient vector: a module element in degrees -1 and 0,
    /// normalized cochain coordinates in degrees 1 and 2.
    pub fn classify_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
        self.sq.classify(x)
    }

    pub fn representative_vec(&self, nf: &[BigInt]) -> Vec<BigInt> {
        self.sq.representative(nf)
    }

    pub fn classify_cochain(&self, c: &Cochain) -> Result<Vec<BigInt>, CochainError> {
        if c.degree() as i32 != self.degree || self.degree < 1 {
            return Err(CochainError::DegreeOutOfRange(c.degree() as i32));
        }
        if !c.is_normalized() {
            return Err(CochainError::NotCocycle);
        }
        self.sq.classify(&c.normalized_coords()).map_err(|_| CochainError::NotCocycle)
    }

    pub fn representative_cochain(&self, nf: &[BigInt]) -> Cochain {
        assert!(self.degree >= 1);
        Cochain::from_normalized_coords(self.degree as usize, self.module.clone(), &self.sq.representative(nf))
    }

    /// Elements of the group in normal form, when it is finite and small.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        self.group().elements(limit)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.group().order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_lattice::bvec;
    use finite_group::FiniteGroup;

    fn sign(n: usize) -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(n), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap()
    }

    #[test]
    fn sign_module_over_z2() {
        let m = sign(2);
        assert_eq!(TateGroup::new(&m, -1).unwrap().order(), Some(BigInt::from(2)));
        assert_eq!(TateGroup::new(&m, 0).unwrap().order(), Some(BigInt::from(1)));
        assert_eq!(TateGroup::new(&m, 1).unwrap().order(), Some(BigInt::from(2)));
        assert_eq!(TateGroup::new(&m, 2).unwrap().order(), Some(BigInt::from(1)));
    }

    #[test]
    fn trivial_module() {
        for n in 2..5 {
            let m = GroupAction::trivial(FiniteGroup::cyclic(n), 1);
            assert!(TateGroup::new(&m, -1).unwrap().group().is_trivial());
            assert_eq!(TateGroup::new(&m, 0).unwrap().order(), Some(BigInt::from(n)));
            assert!(TateGroup::new(&m, 1).unwrap().group().is_trivial());
            assert_eq!(TateGroup::new(&m, 2).unwrap().order(), Some(BigInt::from(n)));
        }
        assert!(TateGroup::new(&GroupAction::trivial(FiniteGroup::cyclic(2), 1), 3).is_err());
    }

    #[test]
    fn classify_representative() {
        let m = sign(2);
        let h1 = TateGroup::new(&m, 1).unwrap();
        let g = h1.group().generators()[0].clone();
        let z = h1.representative_cochain(&g);
        assert!(z.is_cocycle());
        assert_eq!(h1.classify_cochain(&z).unwrap(), g);
        let hm1 = TateGroup::new(&m, -1).unwrap();
        assert_eq!(hm1.classify_vec(&bvec(&[3])).unwrap(), bvec(&[1]));
    }
}
