//! A disconnected torus `T x| A` over the unramified model, a pure inner
//! form `z` and a parameter `phi_0`, with all the choices made once.

use std::collections::BTreeMap;
use std::fmt;

use cohomology_engine::{Cochain, CochainError, TateGroup};
use exact_lattice::matrix::{vadd, vis_zero, vsub};
use exact_lattice::{solve_integer, solve_mod_one, BigInt, BigRational, IntMatrix, QZ};
use finite_group::{ActionError, Cocycle2, CocycleError, FiniteGroup, GroupAction, GroupError};
use projective_characters::ProjectiveError;
use unramified_weil::{kottwitz_character, langlands_character, tn_iso, LocalModel, Parameter, Torus, WeilError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToriError {
    Weil(WeilError),
    Action(ActionError),
    Group(GroupError),
    Cocycle(CocycleError),
    Cochain(CochainError),
    Projective(ProjectiveError),
    /// The component action does not commute with Frobenius.
    NotCommuting(usize),
    Shape(&'static str),
    /// `a` fixes the class but the coboundary equation has no solution.
    ClassNotFixed(usize),
    /// An input element does not lie in the group it should.
    NotMember(&'static str),
    /// A shift vector is not fixed by Frobenius.
    ShiftNotInvariant(usize),
    NotANorm,
}

impl fmt::Display for ToriError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToriError::Weil(e) => write!(f, "{e}"),
            ToriError::Action(e) => write!(f, "{e}"),
            ToriError::Group(e) => write!(f, "{e}"),
            ToriError::Cocycle(e) => write!(f, "{e}"),
            ToriError::Cochain(e) => write!(f, "{e}"),
            ToriError::Projective(e) => write!(f, "{e}"),
            ToriError::NotCommuting(a) => write!(f, "component element {a} does not commute with Frobenius"),
            ToriError::Shape(what) => write!(f, "shape mismatch: {what}"),
            ToriError::ClassNotFixed(a) => write!(f, "class not fixed: element {a} passes the stabilizer test but the system is unsolvable"),
            ToriError::NotMember(what) => write!(f, "not a member of {what}"),
            ToriError::ShiftNotInvariant(a) => write!(f, "shift at element {a} is not Frobenius invariant"),
            ToriError::NotANorm => write!(f, "not a norm of delta"),
        }
    }
}

impl std::error::Error for ToriError {}

macro_rules! from_err {
    ($t:ty, $v:ident) => {
        impl From<$t> for ToriError {
            fn from(e: $t) -> Self {
                ToriError::$v(e)
            }
        }
    };
}

from_err!(WeilError, Weil);
from_err!(ActionError, Action);
from_err!(GroupError, Group);
from_err!(CocycleError, Cocycle);
from_err!(CochainError, Cochain);
from_err!(ProjectiveError, Projective);

/// `X` with Frobenius and a commuting action of the component group `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusModel {
    torus: Torus,
    component: GroupAction,
}

impl TorusModel {
    pub fn new(model: LocalModel, sigma: IntMatrix, component: GroupAction) -> Result<Self, ToriError> {
        if sigma.rows() != component.rank() || sigma.cols() != component.rank() {
            return Err(ToriError::Shape("Frobenius and component actions have different ranks"));
        }
        let torus = Torus::new(model, sigma)?;
        Self::from_torus(torus, component)
    }

    pub fn from_torus(torus: Torus, component: GroupAction) -> Result<Self, ToriError> {
        if torus.rank() != component.rank() {
            return Err(ToriError::Shape("Frobenius and component actions have different ranks"));
        }
        for a in component.group().elements() {
            if !torus.commutes_with(component.matrix(a)) {
                return Err(ToriError::NotCommuting(a));
            }
        }
        Ok(TorusModel { torus, component })
    }

    pub fn torus(&self) -> &Torus {
        &self.torus
    }

    pub fn component(&self) -> &GroupAction {
        &self.component
    }

    pub fn group(&self) -> &FiniteGroup {
        self.component.group()
    }

    pub fn rank(&self) -> usize {
        self.torus.rank()
    }

    pub fn act(&self, a: usize, x: &[BigInt]) -> Vec<BigInt> {
        self.component.act(a, x)
    }

    pub fn dual_act(&self, a: usize, u: &[QZ]) -> Vec<QZ> {
        self.component.dual_act(a, u)
    }
}

/// Everything built from `(X, z, phi_0)`: the stabilizers, the chosen `t_a`
/// and `s_a`, and the cocycles `alpha`, `beta` with their characters.
#[derive(Clone, Debug)]
pub struct ToriCase {
    model: TorusModel,
    zeta: Vec<BigInt>,
    z: Cochain,
    phi: Parameter,
    z_fixers: Vec<usize>,
    phi_fixers: Vec<usize>,
    stab: FiniteGroup,
    emb: Vec<usize>,
    pos: Vec<Option<usize>>,
    t: Vec<Option<Vec<BigInt>>>,
    s: Vec<Option<Vec<QZ>>>,
}

fn qz_sub(a: &[QZ], b: &[QZ]) -> Vec<QZ> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn qz_add(a: &[QZ], b: &[QZ]) -> Vec<QZ> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `(X, sigma, A, z(sigma), phi_0(sigma))` to a case; `zeta` must have norm zero.
pub fn build_case(model: &TorusModel, zeta: Vec<BigInt>, p: Vec<QZ>) -> Result<ToriCase, ToriError> {
    ToriCase::new(model.clone(), zeta, p)
}

impl ToriCase {
    pub fn new(model: TorusModel, zeta: Vec<BigInt>, p: Vec<QZ>) -> Result<Self, ToriError> {
        let torus = model.torus().clone();
        let z = tn_iso(&torus, &zeta)?;
        let phi = Parameter::new(&torus, p)?;
        let a_grp = model.group().clone();
        let r = model.rank();

        // A^[z]: a zeta and zeta have the same class in H^-1(Q, X)
        let h1 = TateGroup::new(torus.action(), -1)?;
        let cls = h1.classify_vec(&zeta).map_err(|_| ToriError::Weil(WeilError::NormNonzero))?;
        let aug = torus.sigma() - &IntMatrix::identity(r);
        let mut t = vec![None; a_grp.order()];
        let mut z_fixers = Vec::new();
        for a in a_grp.elements() {
            let az = model.act(a, &zeta);
            if h1.classify_vec(&az).map_err(|_| ToriError::ClassNotFixed(a))? != cls {
                continue;
            }
            let ta = if a == a_grp.identity() {
                vec![BigInt::from(0); r]
            } else {
                solve_integer(&aug, &vsub(&az, &zeta)).map_err(|_| ToriError::ClassNotFixed(a))?
            };
            t[a] = Some(ta);
            z_fixers.push(a);
        }

        // A^[phi]: the class of p is its restriction to X^Q
        let inv = torus.action().invariants_basis();
        let pv = phi.frobenius_value().to_vec();
        let sig_inv = torus.sigma().inverse_unimodular().ok_or(ToriError::Shape("Frobenius is not unimodular"))?;
        let dual_aug = &sig_inv.transpose() - &IntMatrix::identity(r);
        let mut s = vec![None; a_grp.order()];
        let mut phi_fixers = Vec::new();
        for a in a_grp.elements() {
            let ainv = a_grp.inv(a);
            if !inv.iter().all(|x| QZ::dot(&model.act(ainv, x), &pv) == QZ::dot(x, &pv)) {
                continue;
            }
            let sa = if a == a_grp.identity() {
                vec![QZ::zero(); r]
            } else {
                let rhs: Vec<BigRational> = qz_sub(&model.dual_act(a, &pv), &pv).iter().map(|q| q.value().clone()).collect();
                solve_mod_one(&dual_aug, &rhs).map_err(|_| ToriError::ClassNotFixed(a))?
            };
            s[a] = Some(sa);
            phi_fixers.push(a);
        }

        let both: Vec<usize> = z_fixers.iter().copied().filter(|a| phi_fixers.contains(a)).collect();
        let (stab, emb) = a_grp.subgroup_as_group(&both)?;
        let mut pos = vec![None; a_grp.order()];
        for (i, &a) in emb.iter().enumerate() {
            pos[a] = Some(i);
        }
        let case = ToriCase {
            model,
            zeta,
            z,
            phi,
            z_fixers,
            phi_fixers,
            stab,
            emb,
            pos,
            t,
            s,
        };
        debug_assert!(case.check_choices());
        Ok(case)
    }

    /// The same case with `t_a + x_a` and `s_a + y_a`; shifts must be Frobenius
    /// invariant and are not allowed at the identity.
    pub fn with_shifts(&self, tx: &BTreeMap<usize, Vec<BigInt>>, sy: &BTreeMap<usize, Vec<QZ>>) -> Result<ToriCase, ToriError> {
        let mut out = self.clone();
        let id = self.group().identity();
        let act = self.torus().action();
        for (&a, x) in tx {
            if a == id || self.t.get(a).map_or(true, |v| v.is_none()) {
                return Err(ToriError::NotMember("the z-stabilizer minus the identity"));
            }
            if x.len() != self.rank() || !act.is_invariant(x) {
                return Err(ToriError::ShiftNotInvariant(a));
            }
            out.t[a] = Some(vadd(self.t[a].as_ref().unwrap(), x));
        }
        for (&a, y) in sy {
            if a == id || self.s.get(a).map_or(true, |v| v.is_none()) {
                return Err(ToriError::NotMember("the phi-stabilizer minus the identity"));
            }
            if y.len() != self.rank() || !act.is_dual_invariant(y) {
                return Err(ToriError::ShiftNotInvariant(a));
            }
            out.s[a] = Some(qz_add(self.s[a].as_ref().unwrap(), y));
        }
        debug_assert!(out.check_choices());
        Ok(out)
    }

    /// `(s - 1) t_a = a zeta - zeta` and `s s_a - s_a = a p - p`.
    pub fn check_choices(&self) -> bool {
        let sigma = self.torus().sigma();
        let fr = self.torus().model().frobenius();
        let ok_t = self.z_fixers.iter().all(|&a| {
            let ta = self.t(a);
            vsub(&sigma.mul_vec(ta), ta) == vsub(&self.model.act(a, &self.zeta), &self.zeta)
        });
        let p = self.p();
        let ok_s = self.phi_fixers.iter().all(|&a| {
            let sa = self.s(a);
            qz_sub(&self.torus().action().dual_act(fr, sa), sa) == qz_sub(&self.model.dual_act(a, p), p)
        });
        ok_t && ok_s
    }

    pub fn model(&self) -> &TorusModel {
        &self.model
    }

    pub fn torus(&self) -> &Torus {
        self.model.torus()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.model.group()
    }

    pub fn rank(&self) -> usize {
        self.model.rank()
    }

    /// `z(sigma)`.
    pub fn zeta(&self) -> &[BigInt] {
        &self.zeta
    }

    pub fn z_cochain(&self) -> &Cochain {
        &self.z
    }

    pub fn parameter(&self) -> &Parameter {
        &self.phi
    }

    /// `phi_0(sigma)`.
    pub fn p(&self) -> &[QZ] {
        self.phi.frobenius_value()
    }

    /// `A^[z]`, as elements of `A`.
    pub fn z_fixers(&self) -> &[usize] {
        &self.z_fixers
    }

    /// `A^[phi]`.
    pub fn phi_fixers(&self) -> &[usize] {
        &self.phi_fixers
    }

    /// `A^[z],[phi]` as a group of its own.
    pub fn stabilizer(&self) -> &FiniteGroup {
        &self.stab
    }

    /// Stabilizer index to element of `A`.
    pub fn embedding(&self) -> &[usize] {
        &self.emb
    }

    /// Element of `A` to stabilizer index.
    pub fn stab_index(&self, a: usize) -> Option<usize> {
        self.pos.get(a).copied().flatten()
    }

    pub fn in_z_fixers(&self, a: usize) -> bool {
        self.t.get(a).is_some_and(|v| v.is_some())
    }

    /// `t_a` for `a` in `A^[z]`.
    pub fn t(&self, a: usize) -> &[BigInt] {
        self.t[a].as_ref().expect("t_a is chosen on A^[z] only")
    }

    /// `s_a` for `a` in `A^[phi]`.
    pub fn s(&self, a: usize) -> &[QZ] {
        self.s[a].as_ref().expect("s_a is chosen on A^[phi] only")
    }

    /// `[phi](x) = p(x)` on `X^Q`.
    pub fn phi_char(&self, x: &[BigInt]) -> Result<QZ, ToriError> {
        Ok(langlands_character(self.torus(), &self.phi, x)?)
    }

    /// `[z](s)` on `T^^Q`.
    pub fn z_char(&self, s: &[QZ]) -> Result<QZ, ToriError> {
        Ok(kottwitz_character(self.torus(), &self.z, s)?)
    }

    /// `alpha(a, b) = t_a + a t_b - t_ab` in `X^Q`, for `a, b` in `A^[z]`.
    pub fn alpha(&self, a: usize, b: usize) -> Vec<BigInt> {
        let ab = self.group().mul(a, b);
        vsub(&vadd(self.t(a), &self.model.act(a, self.t(b))), self.t(ab))
    }

    /// `beta(a, b) = s_a + a s_b - s_ab` in `T^^Q`, for `a, b` in `A^[phi]`.
    pub fn beta(&self, a: usize, b: usize) -> Vec<QZ> {
        let ab = self.group().mul(a, b);
        qz_sub(&qz_add(self.s(a), &self.model.dual_act(a, self.s(b))), self.s(ab))
    }

    /// `[phi] o alpha` on the stabilizer.
    pub fn alpha_bar(&self) -> Result<Cocycle2, ToriError> {
        let mut vals = Vec::with_capacity(self.stab.order() * self.stab.order());
        for i in self.stab.elements() {
            for j in self.stab.elements() {
                vals.push(self.phi_char(&self.alpha(self.emb[i], self.emb[j]))?);
            }
        }
        Ok(Cocycle2::new(self.stab.clone(), vals)?)
    }

    /// `[z] o beta` on the stabilizer.
    pub fn beta_bar(&self) -> Result<Cocycle2, ToriError> {
        let mut vals = Vec::with_capacity(self.stab.order() * self.stab.order());
        for i in self.stab.elements() {
            for j in self.stab.elements() {
                vals.push(self.z_char(&self.beta(self.emb[i], self.emb[j]))?);
            }
        }
        Ok(Cocycle2::new(self.stab.clone(), vals)?)
    }

    /// `zeta(c, a) = c t_a + t_c - (cac^-1) t_c - t_(cac^-1)`, for `a, c` in `A^[z]`.
    pub fn conjugation_defect(&self, c: usize, a: usize) -> Vec<BigInt> {
        let g = self.group();
        let cac = g.mul(g.mul(c, a), g.inv(c));
        let x = vadd(&self.model.act(c, self.t(a)), self.t(c));
        let y = vadd(&self.model.act(cac, self.t(c)), self.t(cac));
        let d = vsub(&x, &y);
        debug_assert!(self.torus().action().is_invariant(&d));
        d
    }

    /// Whether `z` is cohomologically trivial.
    pub fn z_is_trivial(&self) -> bool {
        let h1 = TateGroup::new(self.torus().action(), -1).expect("degree -1 exists");
        h1.classify_vec(&self.zeta).map(|nf| vis_zero(&nf)).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_lattice::bvec;

    fn norm_one() -> TorusModel {
        let a = FiniteGroup::cyclic(2);
        let comp = GroupAction::from_generators(a, 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        TorusModel::new(LocalModel::new(2), IntMatrix::from_i64(&[&[-1]]), comp).unwrap()
    }

    #[test]
    fn norm_one_torus_choices() {
        let case = build_case(&norm_one(), bvec(&[1]), vec![QZ::zero()]).unwrap();
        assert_eq!(case.z_fixers().len(), 2);
        // (s - 1) t = -2 t = a zeta - zeta = -2
        assert_eq!(case.t(1), bvec(&[1]).as_slice());
        assert!(case.check_choices());
        assert!(!case.z_is_trivial());
    }

    #[test]
    fn rejects_noncommuting() {
        let a = FiniteGroup::cyclic(2);
        let comp = GroupAction::from_generators(a, 2, &[(1, IntMatrix::from_i64(&[&[0, 1], &[1, 0]]))]).unwrap();
        let sigma = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(TorusModel::new(LocalModel::new(2), sigma, comp), Err(ToriError::NotCommuting(1)));
    }

    #[test]
    fn shifts_must_be_invariant() {
        let case = build_case(&norm_one(), bvec(&[1]), vec![QZ::zero()]).unwrap();
        let mut tx = BTreeMap::new();
        tx.insert(1, bvec(&[1]));
        assert_eq!(case.with_shifts(&tx, &BTreeMap::new()).unwrap_err(), ToriError::ShiftNotInvariant(1));
    }
}
