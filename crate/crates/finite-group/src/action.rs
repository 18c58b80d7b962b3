use std::fmt;

use exact_lattice::matrix::vsub;
use exact_lattice::solve::kernel_basis;
use exact_lattice::{BigInt, FGAbelian, IntMatrix, QZ};

use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionError {
    WrongCount { expected: usize, got: usize },
    WrongShape(usize),
    NotInvertible(usize),
    NotHomomorphism(usize, usize),
    Inconsistent(usize),
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::WrongCount { expected, got } => {
                write!(f, "expected {expected} action matrices, got {got}")
            }
            ActionError::WrongShape(g) => write!(f, "matrix for element {g} has the wrong shape"),
            ActionError::NotInvertible(g) => write!(f, "matrix for element {g} is not unimodular"),
            ActionError::NotHomomorphism(a, b) => {
                write!(f, "action matrices violate the relation for ({a}, {b})")
            }
            ActionError::Inconsistent(g) => {
                write!(f, "generator images do not define an action (conflict at element {g})")
            }
        }
    }
}

impl std::error::Error for ActionError {}

/// A finite group acting on `Z^r` by integer matrices, one per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    rank: usize,
    mats: Vec<IntMatrix>,
}

impl GroupAction {
    /// Takes one matrix per element and checks every relation `M_{ab} = M_a M_b`.
    pub fn new(group: FiniteGroup, rank: usize, mats: Vec<IntMatrix>) -> Result<Self, ActionError> {
        if mats.len() != group.order() {
            return Err(ActionError::WrongCount {
                expected: group.order(),
                got: mats.len(),
            });
        }
        for (g, m) in mats.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(ActionError::WrongShape(g));
            }
        }
        let act = GroupAction { group, rank, mats };
        act.validate()?;
        Ok(act)
    }

    fn validate(&self) -> Result<(), ActionError> {
        let id = IntMatrix::identity(self.rank);
        if self.mats[self.group.identity()] != id {
            return Err(ActionError::NotHomomorphism(self.group.identity(), self.group.identity()));
        }
        for a in self.group.elements() {
            for b in self.group.elements() {
                if &self.mats[a] * &self.mats[b] != self.mats[self.group.mul(a, b)] {
                    return Err(ActionError::NotHomomorphism(a, b));
                }
            }
        }
        for a in self.group.elements() {
            if &self.mats[a] * &self.mats[self.group.inv(a)] != id {
                return Err(ActionError::NotInvertible(a));
            }
        }
        Ok(())
    }

    /// Extends images of generators to the whole group and validates the result.
    pub fn from_generators(group: FiniteGroup, rank: usize, gens: &[(usize, IntMatrix)]) -> Result<Self, ActionError> {
        for (g, m) in gens {
            if m.rows() != rank || m.cols() != rank {
                return Err(ActionError::WrongShape(*g));
            }
        }
        let n = group.order();
        let mut mats: Vec<Option<IntMatrix>> = vec![None; n];
        mats[group.identity()] = Some(IntMatrix::identity(rank));
        let mut queue = vec![group.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (g, m) in gens {
                let y = group.mul(x, *g);
                let my = mats[x].as_ref().unwrap() * m;
                match &mats[y] {
                    Some(existing) if *existing != my => return Err(ActionError::Inconsistent(y)),
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        if mats.iter().any(|m| m.is_none()) {
            return Err(ActionError::Inconsistent(usize::MAX));
        }
        Self::new(group, rank, mats.into_iter().map(|m| m.unwrap()).collect())
    }

    pub fn trivial(group: FiniteGroup, rank: usize) -> Self {
        let mats = vec![IntMatrix::identity(rank); group.order()];
        GroupAction { group, rank, mats }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, g: usize) -> &IntMatrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.mats
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.mats[g].mul_vec(v)
    }

    /// Contragredient action on `Hom(X, Q/Z)`: `(g u)(x) = u(g^{-1} x)`.
    pub fn dual_act(&self, g: usize, u: &[QZ]) -> Vec<QZ> {
        let m = &self.mats[self.group.inv(g)];
        (0..self.rank).map(|j| QZ::dot(&m.col(j), u)).collect()
    }

    /// Evaluates a dual point `u` on a lattice vector `x`.
    pub fn pair(u: &[QZ], x: &[BigInt]) -> QZ {
        QZ::dot(x, u)
    }

    /// `sum_g M_g`.
    pub fn norm_matrix(&self) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.rank, self.rank);
        for m in &self.mats {
            acc = &acc + m;
        }
        acc
    }

    pub fn norm(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.norm_matrix().mul_vec(v)
    }

    /// Stack of `M_g - 1` over all `g`.
    fn augmentation_stack(&self) -> IntMatrix {
        let id = IntMatrix::identity(self.rank);
        let blocks: Vec<IntMatrix> = self.mats.iter().map(|m| m - &id).collect();
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        if refs.is_empty() {
            return IntMatrix::zeros(0, self.rank);
        }
        IntMatrix::vstack(&refs)
    }

    /// Basis of the invariant sublattice `X^G`.
    pub fn invariants_basis(&self) -> Vec<Vec<BigInt>> {
        kernel_basis(&self.augmentation_stack())
    }

    pub fn is_invariant(&self, v: &[BigInt]) -> bool {
        self.mats.iter().all(|m| m.mul_vec(v) == v)
    }

    pub fn is_dual_invariant(&self, u: &[QZ]) -> bool {
        self.group.elements().all(|g| self.dual_act(g, u) == u)
    }

    /// Coinvariants `X_G = X / I X` as a finitely generated abelian group.
    pub fn coinvariants(&self) -> FGAbelian {
        let id = IntMatrix::identity(self.rank);
        let blocks: Vec<IntMatrix> = self.mats.iter().map(|m| m - &id).collect();
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let rel = if refs.is_empty() {
            IntMatrix::zeros(self.rank, 0)
        } else {
            IntMatrix::hstack(&refs)
        };
        FGAbelian::from_relations(self.rank, &rel)
    }

    /// Restriction along an embedding `H -> G` (`emb[h]` is the image of `h`).
    pub fn restrict(&self, sub: &FiniteGroup, emb: &[usize]) -> GroupAction {
        let mats = emb.iter().map(|&g| self.mats[g].clone()).collect();
        GroupAction {
            group: sub.clone(),
            rank: self.rank,
            mats,
        }
    }

    /// Pullback along a homomorphism `f : H -> G`.
    pub fn pullback(&self, source: &FiniteGroup, f: &[usize]) -> Result<GroupAction, ActionError> {
        let mats = f.iter().map(|&g| self.mats[g].clone()).collect();
        GroupAction::new(source.clone(), self.rank, mats)
    }

    pub fn direct_sum(&self, other: &GroupAction) -> GroupAction {
        assert_eq!(self.group, other.group, "direct sum needs a common group");
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
            .collect();
        GroupAction {
            group: self.group.clone(),
            rank: self.rank + other.rank,
            mats,
        }
    }

    /// Whether the integer matrix `f : X -> Y` intertwines the two actions.
    pub fn is_equivariant(&self, target: &GroupAction, f: &IntMatrix) -> bool {
        self.group
            .elements()
            .all(|g| &target.mats[g] * f == f * &self.mats[g])
    }

    /// `(M_g - 1) v`
    pub fn augment(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        vsub(&self.act(g, v), v)
    }
}

/// The stabilizer `{a : a . c = c}` of a class under an action on classes.
///
/// `act(a, c)` must return a canonical representative (for instance a normal
/// form) so that equality tests are meaningful. The result is checked to be
/// a subgroup.
pub fn stabilizer_of_class<C: PartialEq>(group: &FiniteGroup, class: &C, act: impl Fn(usize, &C) -> C) -> Vec<usize> {
    let stab: Vec<usize> = group.elements().filter(|&a| act(a, class) == *class).collect();
    assert!(group.is_subgroup(&stab), "stabilizer is not closed; the action on classes is not an action");
    stab
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_lattice::bvec;

    #[test]
    fn sign_action_invariants() {
        let q = FiniteGroup::cyclic(2);
        let act = GroupAction::from_generators(q, 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        assert!(act.invariants_basis().is_empty());
        let co = act.coinvariants();
        assert_eq!(co.torsion_invariants(), &[BigInt::from(2)]);
        assert!(act.norm_matrix().is_zero());
    }

    #[test]
    fn inconsistent_generators_rejected() {
        let q = FiniteGroup::cyclic(2);
        let r = GroupAction::from_generators(q, 1, &[(1, IntMatrix::from_i64(&[&[2]]))]);
        assert!(r.is_err());
        let q3 = FiniteGroup::cyclic(3);
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(GroupAction::from_generators(q3, 2, &[(1, swap)]).is_err());
    }

    #[test]
    fn dual_action_is_action() {
        let s3 = FiniteGroup::symmetric(3);
        let gens = s3.generators();
        // reflection representation on the A2 root lattice
        let r1 = IntMatrix::from_i64(&[&[-1, 1], &[0, 1]]);
        let r2 = IntMatrix::from_i64(&[&[1, 0], &[1, -1]]);
        let mut found = None;
        for a in [&r1, &r2, &(&r1 * &r2), &(&r2 * &r1)] {
            for b in [&r1, &r2, &(&r1 * &r2), &(&r2 * &r1)] {
                if let Ok(act) = GroupAction::from_generators(s3.clone(), 2, &[(gens[0], a.clone()), (gens[1], b.clone())]) {
                    found = Some(act);
                }
            }
        }
        let act = found.expect("some assignment gives an action");
        let u = vec![QZ::new(1, 3), QZ::new(2, 3)];
        for g in s3.elements() {
            for h in s3.elements() {
                let lhs = act.dual_act(s3.mul(g, h), &u);
                let rhs = act.dual_act(g, &act.dual_act(h, &u));
                assert_eq!(lhs, rhs);
            }
            // pairing is invariant: (g u)(g x) = u(x)
            let x = bvec(&[2, -1]);
            assert_eq!(GroupAction::pair(&act.dual_act(g, &u), &act.act(g, &x)), GroupAction::pair(&u, &x));
        }
    }

    #[test]
    fn stabilizer_whole_group_for_fixed_point() {
        let g = FiniteGroup::cyclic(4);
        let st = stabilizer_of_class(&g, &0usize, |_, c| *c);
        assert_eq!(st.len(), 4);
        let st2 = stabilizer_of_class(&g, &1usize, |a, c| g.mul(g.mul(a, *c), g.inv(a)));
        assert_eq!(st2.len(), 4);
    }
}
