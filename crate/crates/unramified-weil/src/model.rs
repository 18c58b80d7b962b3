use std::fmt;

use cohomology_engine::{carry_cocycle, AmbientGroup, Cochain};
use exact_lattice::{BigInt, IntMatrix};
use finite_group::{ActionError, FiniteGroup, GroupAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilError {
    Action(ActionError),
    NotCommuting,
    NormNonzero,
    NotCocycle,
    NotInvariant,
    WrongRank { expected: usize, got: usize },
    ComplexMismatch(&'static str),
    LiftNotFound(&'static str),
}

impl fmt::Display for WeilError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeilError::Action(e) => write!(f, "{e}"),
            WeilError::NotCommuting => write!(f, "Galois and component actions do not commute"),
            WeilError::NormNonzero => write!(f, "element has nonzero norm"),
            WeilError::NotCocycle => write!(f, "input is not a cocycle"),
            WeilError::NotInvariant => write!(f, "dual point is not Galois invariant"),
            WeilError::WrongRank { expected, got } => write!(f, "expected a vector of length {expected}, got {got}"),
            WeilError::ComplexMismatch(what) => write!(f, "complex mismatch: {what}"),
            WeilError::LiftNotFound(what) => write!(f, "lift not found: {what}"),
        }
    }
}

impl std::error::Error for WeilError {}

impl From<ActionError> for WeilError {
    fn from(e: ActionError) -> Self {
        WeilError::Action(e)
    }
}

/// `Q = Z/n` with Frobenius `s = 1`, the Weil group `W = Z` projecting onto it
/// and the carry cocycle as fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    n: usize,
    q: FiniteGroup,
}

impl LocalModel {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        LocalModel {
            n,
            q: FiniteGroup::cyclic(n),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn frobenius(&self) -> usize {
        1 % self.n
    }

    /// `w mod n`.
    pub fn project(&self, w: i64) -> usize {
        w.rem_euclid(self.n as i64) as usize
    }

    /// The section `s^i -> i` with `0 <= i < n`.
    pub fn section(&self, tau: usize) -> i64 {
        tau as i64
    }

    pub fn fundamental_cocycle(&self) -> Cochain {
        carry_cocycle(self.n)
    }
}

/// A cocharacter lattice with Frobenius acting by `sigma`.
///
/// Points over `K` are modelled by `X` itself (valuations), points over `F`
/// by `X^Q`, and `T^` by torsion points `Hom(X, Q/Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    model: LocalModel,
    action: GroupAction,
}

impl Torus {
    pub fn new(model: LocalModel, sigma: IntMatrix) -> Result<Self, WeilError> {
        let rank = sigma.rows();
        let action = GroupAction::from_generators(model.group().clone(), rank, &[(model.frobenius(), sigma)])?;
        Ok(Torus { model, action })
    }

    pub fn from_action(model: LocalModel, action: GroupAction) -> Result<Self, WeilError> {
        if action.group() != model.group() {
            return Err(WeilError::ComplexMismatch("action is not over the model group"));
        }
        Ok(Torus { model, action })
    }

    pub fn model(&self) -> &LocalModel {
        &self.model
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    pub fn sigma(&self) -> &IntMatrix {
        self.action.matrix(self.model.frobenius())
    }

    /// Checks that an automorphism of `X` commutes with Frobenius.
    pub fn commutes_with(&self, a: &IntMatrix) -> bool {
        let s = self.sigma();
        &(s * a) == &(a * s)
    }

    fn check_len(&self, v: usize) -> Result<(), WeilError> {
        if v != self.rank() {
            return Err(WeilError::WrongRank {
                expected: self.rank(),
                got: v,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vec(&self, v: &[BigInt]) -> Result<(), WeilError> {
        self.check_len(v.len())
    }

    pub(crate) fn check_dual(&self, v: &[exact_lattice::QZ]) -> Result<(), WeilError> {
        self.check_len(v.len())
    }
}

/// `W = Z` acting on a lattice through `w -> s^(w mod n)`.
pub struct WeilAmbient<'a> {
    pub torus: &'a Torus,
}

impl AmbientGroup for WeilAmbient<'_> {
    type Elem = i64;
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inv(&self, a: &i64) -> i64 {
        -a
    }
    fn identity(&self) -> i64 {
        0
    }
    fn rank(&self) -> usize {
        self.torus.rank()
    }
    fn act(&self, g: &i64, v: &[BigInt]) -> Vec<BigInt> {
        self.torus.action().act(self.torus.model().project(*g), v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cohomology_engine::TateGroup;

    #[test]
    fn fundamental_class_generates() {
        for n in 1..6 {
            let m = LocalModel::new(n);
            let c = m.fundamental_cocycle();
            assert!(c.is_normalized() && c.is_cocycle());
            let h2 = TateGroup::new(c.module(), 2).unwrap();
            assert_eq!(h2.order(), Some(BigInt::from(n)));
            let cls = h2.classify_cochain(&c).unwrap();
            assert_eq!(h2.group().element_order(&cls), Some(BigInt::from(n)));
        }
    }

    #[test]
    fn projection_and_section() {
        let m = LocalModel::new(3);
        assert_eq!(m.project(-1), 2);
        assert_eq!(m.project(7), 1);
        for tau in 0..3 {
            assert_eq!(m.project(m.section(tau)), tau);
        }
    }

    #[test]
    fn rejects_bad_frobenius() {
        let m = LocalModel::new(3);
        assert!(Torus::new(m, IntMatrix::from_i64(&[&[-1]])).is_err());
    }
}
