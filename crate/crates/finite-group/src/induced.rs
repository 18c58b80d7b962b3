//! Automorphisms of induced lattices.
//!
//! `Ind_D^G X` is the lattice of functions `f : G -> X` with
//! `f(d s) = d f(s)` for `d` in `D`, and `G` acts by `(g f)(s) = f(s g)`.
//! Coordinates are the values at the right-coset representatives
//! `s_1 = 1, s_2, ..., s_k`, so a vector of the induced lattice has `k` blocks.

use std::fmt;

use exact_lattice::IntMatrix;

use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducedError {
    BadShape,
    NotSubgroup,
    BadSubgroupAction,
    NotBlockStructured,
    NotEquivariant,
}

impl fmt::Display for InducedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InducedError::BadShape => write!(f, "matrix shape does not match the induced lattice"),
            InducedError::NotSubgroup => write!(f, "the given subset is not a subgroup"),
            InducedError::BadSubgroupAction => write!(f, "matrices do not define an action of the subgroup"),
            InducedError::NotBlockStructured => write!(f, "not block-structured"),
            InducedError::NotEquivariant => write!(f, "not equivariant"),
        }
    }
}

impl std::error::Error for InducedError {}

#[derive(Clone, Debug)]
pub struct InducedModule {
    gamma: FiniteGroup,
    delta: Vec<usize>,
    /// `rho[g]` for `g` in the subgroup, `None` elsewhere.
    rho: Vec<Option<IntMatrix>>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    rank: usize,
}

/// Output of the decomposition: `a(f)(s) = a'(f(s0^{-1} s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDecomposition {
    pub sigma0: usize,
    /// The right coset `D s0`, as sorted elements.
    pub coset: Vec<usize>,
    pub a_prime: IntMatrix,
    /// Block permutation: source block `j` lands in block `perm[j]`.
    pub perm: Vec<usize>,
}

impl InducedModule {
    /// `rho_of(d)` gives the matrix of `d` for every `d` in `delta`.
    pub fn new(gamma: FiniteGroup, delta: &[usize], rank: usize, rho_of: impl Fn(usize) -> IntMatrix) -> Result<Self, InducedError> {
        if !gamma.is_subgroup(delta) {
            return Err(InducedError::NotSubgroup);
        }
        let mut rho = vec![None; gamma.order()];
        for &d in delta {
            let m = rho_of(d);
            if m.rows() != rank || m.cols() != rank {
                return Err(InducedError::BadShape);
            }
            rho[d] = Some(m);
        }
        for &a in delta {
            for &b in delta {
                let lhs = rho[a].as_ref().unwrap() * rho[b].as_ref().unwrap();
                if &lhs != rho[gamma.mul(a, b)].as_ref().unwrap() {
                    return Err(InducedError::BadSubgroupAction);
                }
            }
        }
        let cosets = gamma.right_cosets(delta);
        let mut coset_of = vec![0; gamma.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let reps: Vec<usize> = cosets
            .iter()
            .map(|c| if c.contains(&gamma.identity()) { gamma.identity() } else { c[0] })
            .collect();
        Ok(InducedModule {
            gamma,
            delta: delta.to_vec(),
            rho,
            reps,
            coset_of,
            rank,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn dim(&self) -> usize {
        self.index() * self.rank
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn subgroup_matrix(&self, d: usize) -> &IntMatrix {
        self.rho[d].as_ref().expect("element outside the subgroup")
    }

    /// Writes `g = d s_j` and returns `(d, j)`.
    pub fn split(&self, g: usize) -> (usize, usize) {
        let j = self.coset_of[g];
        let d = self.gamma.mul(g, self.gamma.inv(self.reps[j]));
        (d, j)
    }

    /// Matrix of `g` acting on the induced lattice.
    pub fn gamma_matrix(&self, g: usize) -> IntMatrix {
        let k = self.index();
        let r = self.rank;
        let mut m = IntMatrix::zeros(k * r, k * r);
        for i in 0..k {
            // (g f)(s_i) = f(s_i g) = rho(d) f(s_j)
            let (d, j) = self.split(self.gamma.mul(self.reps[i], g));
            let blk = self.subgroup_matrix(d);
            for x in 0..r {
                for y in 0..r {
                    m[(i * r + x, j * r + y)] = blk[(x, y)].clone();
                }
            }
        }
        m
    }

    fn block(a: &IntMatrix, r: usize, i: usize, j: usize) -> IntMatrix {
        let mut b = IntMatrix::zeros(r, r);
        for x in 0..r {
            for y in 0..r {
                b[(x, y)] = a[(i * r + x, j * r + y)].clone();
            }
        }
        b
    }

    /// Extracts `s0` and `a'` from an equivariant block automorphism.
    pub fn decompose(&self, a: &IntMatrix) -> Result<InducedDecomposition, InducedError> {
        let k = self.index();
        let r = self.rank;
        if a.rows() != k * r || a.cols() != k * r {
            return Err(InducedError::BadShape);
        }
        // each source block must land in exactly one target block
        let mut perm = vec![usize::MAX; k];
        for j in 0..k {
            let targets: Vec<usize> = (0..k).filter(|&i| !Self::block(a, r, i, j).is_zero()).collect();
            if targets.len() != 1 {
                return Err(InducedError::NotBlockStructured);
            }
            perm[j] = targets[0];
        }
        let mut hit = vec![false; k];
        for &p in &perm {
            if hit[p] {
                return Err(InducedError::NotBlockStructured);
            }
            hit[p] = true;
        }
        // p(D s) = D s0 s, with s0 normalizing D
        let sigma0 = self.reps[perm[self.coset_of[self.gamma.identity()]]];
        let normalizes = self.delta.iter().all(|&d| self.rho[self.gamma.conjugate(sigma0, d)].is_some());
        if !normalizes {
            return Err(InducedError::NotEquivariant);
        }
        for j in 0..k {
            if perm[j] != self.coset_of[self.gamma.mul(sigma0, self.reps[j])] {
                return Err(InducedError::NotEquivariant);
            }
        }
        for g in self.gamma.elements() {
            let mg = self.gamma_matrix(g);
            if &(a * &mg) != &(&mg * a) {
                return Err(InducedError::NotEquivariant);
            }
        }
        let source = self.coset_of[self.gamma.identity()];
        let a_prime = Self::block(a, r, perm[source], source);
        let coset = {
            let mut c: Vec<usize> = self.delta.iter().map(|&d| self.gamma.mul(d, sigma0)).collect();
            c.sort_unstable();
            c
        };
        Ok(InducedDecomposition {
            sigma0,
            coset,
            a_prime,
            perm,
        })
    }

    /// The automorphism `a(f)(s) = a'(f(s0^{-1} s))`.
    pub fn reconstruct(&self, sigma0: usize, a_prime: &IntMatrix) -> IntMatrix {
        let k = self.index();
        let r = self.rank;
        let mut m = IntMatrix::zeros(k * r, k * r);
        let s0inv = self.gamma.inv(sigma0);
        for i in 0..k {
            let (d, j) = self.split(self.gamma.mul(s0inv, self.reps[i]));
            let blk = a_prime * self.subgroup_matrix(d);
            for x in 0..r {
                for y in 0..r {
                    m[(i * r + x, j * r + y)] = blk[(x, y)].clone();
                }
            }
        }
        m
    }

    /// Whether `a'` satisfies `a' rho(t) = rho(s0 t s0^{-1}) a'`, the condition
    /// for `reconstruct` to commute with the group action.
    pub fn is_twisted_equivariant(&self, sigma0: usize, a_prime: &IntMatrix) -> bool {
        self.delta.iter().all(|&t| {
            let c = self.gamma.conjugate(sigma0, t);
            match &self.rho[c] {
                Some(m) => &(a_prime * self.subgroup_matrix(t)) == &(m * a_prime),
                None => false,
            }
        })
    }
}
