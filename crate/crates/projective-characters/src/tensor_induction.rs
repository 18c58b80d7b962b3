//! Tensor induction of a projective representation of `A <= B` and the
//! cocycle it carries.
//!
//! With `b = r(b) s(b)` for the chosen coset section, `Q_b` sends the factor
//! at position `cb` to position `c` through `P_{r(s(c) b)}`. Then
//! `Q_{b1} Q_{b2} = e(beta(b1, b2)) Q_{b1 b2}` and `beta` should be the
//! corestriction of `alpha` on the nose.

use std::fmt;

use exact_lattice::{Cyclotomic, QZ};
use finite_group::{corestriction_cocycle, Cocycle2, FiniteGroup};

use crate::cycmatrix::CycMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InductionError {
    NotSubgroup,
    BadSection(String),
    Dimension,
    /// `P_{a1} P_{a2}` is not a root of unity times `P_{a1 a2}`.
    NotProjective { a1: usize, a2: usize },
    NotNormalized,
}

impl fmt::Display for InductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InductionError::NotSubgroup => write!(f, "embedding is not a subgroup"),
            InductionError::BadSection(s) => write!(f, "bad coset section: {s}"),
            InductionError::Dimension => write!(f, "matrices must be square of one common size"),
            InductionError::NotProjective { a1, a2 } => {
                write!(f, "P({a1}) P({a2}) is not a root of unity times P({a1}{a2})")
            }
            InductionError::NotNormalized => write!(f, "P at the identity must be the identity matrix"),
        }
    }
}

impl std::error::Error for InductionError {}

/// The root of unity `c` with `m = c n`, if `n` is invertible and there is one.
fn ratio(m: &CycMatrix, n: &CycMatrix) -> Option<QZ> {
    let c = (m * &n.inverse()?).as_scalar()?;
    c.as_root_of_unity()
}

/// The cocycle of a projective representation given by one matrix per element.
pub fn projective_cocycle(group: &FiniteGroup, p: &[CycMatrix]) -> Result<Cocycle2, InductionError> {
    let d = p.first().map(|m| m.rows()).ok_or(InductionError::Dimension)?;
    if p.len() != group.order() || p.iter().any(|m| !m.is_square() || m.rows() != d) {
        return Err(InductionError::Dimension);
    }
    if p[group.identity()] != CycMatrix::identity(d) {
        return Err(InductionError::NotNormalized);
    }
    let n = group.order();
    let mut values = Vec::with_capacity(n * n);
    for a1 in 0..n {
        for a2 in 0..n {
            let v = ratio(&(&p[a1] * &p[a2]), &p[group.mul(a1, a2)]).ok_or(InductionError::NotProjective { a1, a2 })?;
            values.push(v);
        }
    }
    Cocycle2::new(group.clone(), values).map_err(|_| InductionError::NotProjective { a1: 0, a2: 0 })
}

/// `A <= B` with a right coset section and the induced operators.
#[derive(Clone, Debug)]
pub struct TensorInduced {
    big: FiniteGroup,
    section: Vec<usize>,
    coset_of: Vec<usize>,
    /// `r_of[b]`, the position in `A` of `b s(b)^{-1}`.
    r_of: Vec<usize>,
    dim: usize,
    ops: Vec<CycMatrix>,
}

impl TensorInduced {
    /// `emb[i]` is the `i`-th element of `A` inside `big`, `p[i]` its matrix.
    /// `section[k]` represents the `k`-th coset of `big.right_cosets(emb)`.
    pub fn new(big: &FiniteGroup, emb: &[usize], section: &[usize], p: &[CycMatrix]) -> Result<Self, InductionError> {
        if !big.is_subgroup(emb) || emb.len() != p.len() {
            return Err(InductionError::NotSubgroup);
        }
        let cosets = big.right_cosets(emb);
        if section.len() != cosets.len() {
            return Err(InductionError::BadSection(format!("{} representatives for {} cosets", section.len(), cosets.len())));
        }
        let mut coset_of = vec![0; big.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = k;
            }
        }
        for (k, &s) in section.iter().enumerate() {
            if coset_of[s] != k {
                return Err(InductionError::BadSection(format!("representative {s} is not in coset {k}")));
            }
        }
        if section[coset_of[big.identity()]] != big.identity() {
            return Err(InductionError::BadSection("the trivial coset must be represented by the identity".into()));
        }
        let mut pos = vec![usize::MAX; big.order()];
        for (i, &a) in emb.iter().enumerate() {
            pos[a] = i;
        }
        let r_of: Vec<usize> = big
            .elements()
            .map(|b| pos[big.mul(b, big.inv(section[coset_of[b]]))])
            .collect();
        let d = p[0].rows();
        let n = cosets.len();
        let dim = d.pow(n as u32);
        let mut this = TensorInduced {
            big: big.clone(),
            section: section.to_vec(),
            coset_of,
            r_of,
            dim,
            ops: Vec::new(),
        };
        let ops = big.elements().map(|b| this.operator(b, p, d, n)).collect();
        this.ops = ops;
        Ok(this)
    }

    fn operator(&self, b: usize, p: &[CycMatrix], d: usize, n: usize) -> CycMatrix {
        let g = &self.big;
        // target coset cb and local matrix for each position c
        let moves: Vec<(usize, &CycMatrix)> = (0..n)
            .map(|c| {
                let x = g.mul(self.section[c], b);
                (self.coset_of[x], &p[self.r_of[x]])
            })
            .collect();
        let digits = |mut k: usize| -> Vec<usize> {
            // position 0 is the slowest index
            let mut v = vec![0; n];
            for c in (0..n).rev() {
                v[c] = k % d;
                k /= d;
            }
            v
        };
        let mut m = CycMatrix::zeros(self.dim, self.dim);
        for col in 0..self.dim {
            let j = digits(col);
            for row in 0..self.dim {
                let i = digits(row);
                let mut v = Cyclotomic::one();
                for (c, (cb, pm)) in moves.iter().enumerate() {
                    let e = &pm[(i[c], j[*cb])];
                    if e.is_zero() {
                        v = Cyclotomic::zero();
                        break;
                    }
                    v = &v * e;
                }
                if !v.is_zero() {
                    m[(row, col)] = v;
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operator_of(&self, b: usize) -> &CycMatrix {
        &self.ops[b]
    }

    /// The cocycle of `b -> Q_b`, read off from the matrices.
    pub fn cocycle(&self) -> Result<Cocycle2, InductionError> {
        projective_cocycle(&self.big, &self.ops)
    }
}

/// `beta` from the induced matrices next to the corestriction of `alpha`.
#[derive(Clone, Debug)]
pub struct InducedCocycleReport {
    pub alpha: Cocycle2,
    pub beta: Cocycle2,
    pub corestriction: Cocycle2,
    /// Entrywise equality.
    pub equal: bool,
    pub cohomologous: bool,
    pub dim: usize,
}

/// Builds the tensor-induced operators and compares their cocycle with the corestriction.
pub fn induced_cocycle_check(
    big: &FiniteGroup,
    emb: &[usize],
    section: &[usize],
    p: &[CycMatrix],
) -> Result<InducedCocycleReport, InductionError> {
    let (a_grp, emb_sorted) = big.subgroup_as_group(emb).map_err(|_| InductionError::NotSubgroup)?;
    if emb_sorted != emb {
        return Err(InductionError::BadSection("the identity must come first in the subgroup list".into()));
    }
    let alpha = projective_cocycle(&a_grp, p)?;
    let ti = TensorInduced::new(big, emb, section, p)?;
    let beta = ti.cocycle()?;
    let corestriction = corestriction_cocycle(&alpha, big, emb, section).map_err(|e| InductionError::BadSection(e.to_string()))?;
    Ok(InducedCocycleReport {
        equal: beta == corestriction,
        cohomologous: beta.cohomologous(&corestriction).is_some(),
        alpha,
        beta,
        corestriction,
        dim: ti.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_subgroup_gives_permutation_action() {
        let b = FiniteGroup::cyclic(3);
        let one = vec![CycMatrix::identity(2)];
        let ti = TensorInduced::new(&b, &[0], &[0, 1, 2], &one).unwrap();
        assert_eq!(ti.dim(), 8);
        // a permutation of tensor positions
        assert_eq!(ti.operator_of(1).trace(), Cyclotomic::from_i64(2));
        assert!(ti.cocycle().unwrap().values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn unnormalized_rejected() {
        let g = FiniteGroup::cyclic(2);
        let p = vec![CycMatrix::single(Cyclotomic::from_i64(-1)), CycMatrix::single(Cyclotomic::one())];
        assert_eq!(projective_cocycle(&g, &p), Err(InductionError::NotNormalized));
    }
}
