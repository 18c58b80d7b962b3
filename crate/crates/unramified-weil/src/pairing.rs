//! The elementary pairing between hyper 0-cycles on `W` and dual hyper
//! 1-cocycles, and the induced pairing on `H^1(Q, T -> U)`.

use std::ops::Range;

use cohomology_engine::{homology_differential, FiniteSupportChain, HyperCocycle, HyperH1};
use exact_lattice::matrix::{vsub, vzero};
use exact_lattice::{solve_integer, BigInt, IntMatrix, QZ};
use num_traits::{One, Zero};

use crate::chains::{chain_map_phi, psi};
use crate::model::{Torus, WeilAmbient, WeilError};
use crate::tn::{add_dual, tn_inverse};

/// Where the sign of the Langlands side lives.
pub const SIGN_CONVENTION: &str =
    "pairing = <c, lambda> - sum_w <z(w), mu_1(w)>; lifts satisfy psi(lambda) ~ z, so the Langlands edge enters negated";

/// An equivariant map `f : T -> U` of cocharacter lattices over the same local model.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    source: Torus,
    target: Torus,
    f: IntMatrix,
}

impl TwoTermComplex {
    pub fn new(source: Torus, target: Torus, f: IntMatrix) -> Result<Self, WeilError> {
        if source.model() != target.model() {
            return Err(WeilError::ComplexMismatch("different local models"));
        }
        if f.rows() != target.rank() || f.cols() != source.rank() {
            return Err(WeilError::ComplexMismatch("map has the wrong shape"));
        }
        if !source.action().is_equivariant(target.action(), &f) {
            return Err(WeilError::ComplexMismatch("map is not Frobenius equivariant"));
        }
        Ok(TwoTermComplex { source, target, f })
    }

    /// `T --(1 - a^-1)--> T` for an automorphism `a` commuting with Frobenius.
    pub fn twisted(torus: &Torus, a: &IntMatrix) -> Result<Self, WeilError> {
        if !torus.commutes_with(a) {
            return Err(WeilError::NotCommuting);
        }
        let a_inv = a
            .inverse_unimodular()
            .ok_or(WeilError::ComplexMismatch("automorphism is not unimodular"))?;
        let f = &IntMatrix::identity(torus.rank()) - &a_inv;
        Self::new(torus.clone(), torus.clone(), f)
    }

    pub fn source(&self) -> &Torus {
        &self.source
    }

    pub fn target(&self) -> &Torus {
        &self.target
    }

    pub fn map(&self) -> &IntMatrix {
        &self.f
    }

    /// `u -> u o f`, from `U^` to `T^`.
    pub fn dual_map(&self, u: &[QZ]) -> Vec<QZ> {
        (0..self.f.cols()).map(|j| QZ::dot(&self.f.col(j), u)).collect()
    }

    pub fn hyper_group(&self) -> HyperH1 {
        HyperH1::new(self.source.action(), self.target.action(), &self.f).expect("validated at construction")
    }

    /// `z` a normalized cocycle in `T` and `f(z(g)) = g c - c` for all `g`.
    pub fn is_hyper_cocycle(&self, x: &HyperCocycle) -> bool {
        let u = self.target.action();
        x.z.degree() == 1
            && x.z.module() == self.source.action()
            && x.c.len() == u.rank()
            && x.z.is_normalized()
            && x.z.is_cocycle()
            && u.group().elements().all(|g| self.f.mul_vec(x.z.at(&[g])) == u.augment(g, &x.c))
    }
}

/// A hyper 0-cycle `(lambda, mu_1)`: `lambda` in `T` with `N lambda = 0` and a
/// 1-chain `mu_1` on `W` valued in `U` with `d mu_1 = f lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCycle {
    pub lambda: Vec<BigInt>,
    pub mu1: FiniteSupportChain<i64>,
}

impl ChainCycle {
    pub fn is_valid(&self, cx: &TwoTermComplex) -> bool {
        let w = WeilAmbient { torus: cx.target() };
        self.lambda.len() == cx.source().rank()
            && self.mu1.rank() == cx.target().rank()
            && self.mu1.degree() == 1
            && cx.source().action().norm(&self.lambda).iter().all(|v| v.is_zero())
            && homology_differential(&w, &self.mu1).get(&[]) == cx.map().mul_vec(&self.lambda)
    }

    /// The hyper boundary of `(nu_1, mu_2)`: `(d nu_1, f nu_1 + d mu_2)`.
    pub fn boundary(cx: &TwoTermComplex, nu1: &FiniteSupportChain<i64>, mu2: &FiniteSupportChain<i64>) -> ChainCycle {
        let ws = WeilAmbient { torus: cx.source() };
        let wt = WeilAmbient { torus: cx.target() };
        let lambda = homology_differential(&ws, nu1).get(&[]);
        let fnu = nu1.map_values(cx.target().rank(), |v| cx.map().mul_vec(v));
        ChainCycle {
            lambda,
            mu1: fnu.add(&homology_differential(&wt, mu2)),
        }
    }

    pub fn add(&self, other: &ChainCycle) -> ChainCycle {
        ChainCycle {
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(a, b)| a + b)
                .collect(),
            mu1: self.mu1.add(&other.mu1),
        }
    }

    /// `(psi(lambda), phi(mu_1))`, a hyper 1-cocycle on `Q`.
    pub fn image(&self, cx: &TwoTermComplex) -> HyperCocycle {
        HyperCocycle {
            z: psi(cx.source(), &self.lambda),
            c: chain_map_phi(cx.target(), &self.mu1),
        }
    }
}

/// A dual hyper 1-cocycle `(z, c)` for `U^ --f^--> T^`: `z` a 1-cocycle of `Q`
/// in `U^` (values indexed by group element) and `c` in `T^` with
/// `f^(z(g)) = g c - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCocycle {
    pub z: Vec<Vec<QZ>>,
    pub c: Vec<QZ>,
}

impl DualCocycle {
    /// The cocycle with `z(s) = p`, extended by `z(s^r) = sum_{k<r} s^k p`.
    pub fn from_frobenius(cx: &TwoTermComplex, p: &[QZ], c: Vec<QZ>) -> DualCocycle {
        let u = cx.target();
        let n = u.model().degree();
        let mut z = Vec::with_capacity(n);
        let mut acc = vec![QZ::zero(); p.len()];
        for k in 0..n {
            z.push(acc.clone());
            acc = add_dual(&acc, &u.action().dual_act(k, p));
        }
        DualCocycle { z, c }
    }

    /// `(g u - u, f^ u)` for `u` in `U^`.
    pub fn coboundary(cx: &TwoTermComplex, u: &[QZ]) -> DualCocycle {
        let act = cx.target().action();
        let z = act
            .group()
            .elements()
            .map(|g| act.dual_act(g, u).iter().zip(u).map(|(a, b)| a - b).collect())
            .collect();
        DualCocycle { z, c: cx.dual_map(u) }
    }

    pub fn add(&self, other: &DualCocycle) -> DualCocycle {
        DualCocycle {
            z: self.z.iter().zip(&other.z).map(|(a, b)| add_dual(a, b)).collect(),
            c: add_dual(&self.c, &other.c),
        }
    }

    pub fn is_valid(&self, cx: &TwoTermComplex) -> bool {
        let (t, u) = (cx.source().action(), cx.target().action());
        let g = u.group();
        if self.z.len() != g.order() || self.c.len() != t.rank() || self.z.iter().any(|v| v.len() != u.rank()) {
            return false;
        }
        if self.z[g.identity()].iter().any(|v| !v.is_zero()) {
            return false;
        }
        let cocycle = g.elements().all(|a| {
            g.elements()
                .all(|b| self.z[g.mul(a, b)] == add_dual(&self.z[a], &u.dual_act(a, &self.z[b])))
        });
        let compatible = g.elements().all(|a| {
            let lhs = cx.dual_map(&self.z[a]);
            let rhs: Vec<QZ> = t.dual_act(a, &self.c).iter().zip(&self.c).map(|(x, y)| x - y).collect();
            lhs == rhs
        });
        cocycle && compatible
    }
}

/// `<c, lambda> - sum_w <z(w), mu_1(w)>`.
pub fn elementary_pairing(cx: &TwoTermComplex, dual: &DualCocycle, chain: &ChainCycle) -> Result<QZ, WeilError> {
    if !dual.is_valid(cx) {
        return Err(WeilError::ComplexMismatch("dual side is not a hyper cocycle of the dual complex"));
    }
    if !chain.is_valid(cx) {
        return Err(WeilError::ComplexMismatch("chain side is not a hyper cycle of the complex"));
    }
    let model = cx.target().model();
    let mut acc = QZ::dot(&chain.lambda, &dual.c);
    for (key, v) in chain.mu1.support() {
        acc -= &QZ::dot(v, &dual.z[model.project(key[0])]);
    }
    Ok(acc)
}

/// Default support window `[-n, n)` for chain lifts.
pub fn default_window(cx: &TwoTermComplex) -> Range<i64> {
    let n = cx.source().model().degree() as i64;
    -n..n
}

/// Lifts a hyper 1-cocycle `(z, c)` to a hyper 0-cycle whose image is
/// cohomologous to it, with `mu_1` supported in `window`.
///
/// `lambda` comes from `tn_inverse`, so `z = psi(lambda) + dt`; then
/// `mu_1` and `t''` in `T^Q` are found by integer solving of
/// `d mu_1 = f lambda` and `phi(mu_1) + f t'' = c - f t`.
pub fn lift(cx: &TwoTermComplex, x: &HyperCocycle, window: Range<i64>) -> Result<ChainCycle, WeilError> {
    if !cx.is_hyper_cocycle(x) {
        return Err(WeilError::NotCocycle);
    }
    let (lambda, t) = tn_inverse(cx.source(), &x.z)?;
    let ru = cx.target().rank();
    let inv = cx.source().action().invariants_basis();
    let positions: Vec<i64> = window.collect();
    let wt = WeilAmbient { torus: cx.target() };
    let unknowns = positions.len() * ru + inv.len();
    let mut cols = Vec::with_capacity(unknowns);
    for &w in &positions {
        for j in 0..ru {
            let mut e = vzero(ru);
            e[j] = BigInt::one();
            let mu = FiniteSupportChain::from_entries(1, ru, [(vec![w], e)]);
            let mut col = homology_differential(&wt, &mu).get(&[]);
            col.extend(chain_map_phi(cx.target(), &mu));
            cols.push(col);
        }
    }
    for b in &inv {
        let mut col = vzero(ru);
        col.extend(cx.map().mul_vec(b));
        cols.push(col);
    }
    let sys = IntMatrix::from_columns(&cols, 2 * ru);
    let mut rhs = cx.map().mul_vec(&lambda);
    rhs.extend(vsub(&x.c, &cx.map().mul_vec(&t)));
    let sol = solve_integer(&sys, &rhs).map_err(|_| WeilError::LiftNotFound("chain system unsolvable in window"))?;
    let entries = positions
        .iter()
        .enumerate()
        .map(|(k, &w)| (vec![w], sol[k * ru..(k + 1) * ru].to_vec()));
    let chain = ChainCycle {
        lambda,
        mu1: FiniteSupportChain::from_entries(1, ru, entries),
    };
    debug_assert!(chain.is_valid(cx));
    Ok(chain)
}

/// The pairing `H^1(Q, T -> U) x H^1(Q, U^ -> T^) -> Q/Z`.
pub fn hyper_pairing(cx: &TwoTermComplex, x: &HyperCocycle, dual: &DualCocycle) -> Result<QZ, WeilError> {
    hyper_pairing_in_window(cx, x, dual, default_window(cx))
}

pub fn hyper_pairing_in_window(
    cx: &TwoTermComplex,
    x: &HyperCocycle,
    dual: &DualCocycle,
    window: Range<i64>,
) -> Result<QZ, WeilError> {
    let chain = lift(cx, x, window)?;
    elementary_pairing(cx, dual, &chain)
}

/// All dual hyper cocycles whose coordinates have denominators dividing `den`.
pub fn enumerate_dual_cocycles(cx: &TwoTermComplex, den: i64, limit: usize) -> Option<Vec<DualCocycle>> {
    let (ru, rt) = (cx.target().rank(), cx.source().rank());
    let total = (den as u64).checked_pow((ru + rt) as u32)?;
    if total > (limit as u64) * 64 {
        return None;
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut k = code;
        let mut digits = Vec::with_capacity(ru + rt);
        for _ in 0..ru + rt {
            digits.push(QZ::new((k % den as u64) as i64, den));
            k /= den as u64;
        }
        let d = DualCocycle::from_frobenius(cx, &digits[..ru], digits[ru..].to_vec());
        if d.is_valid(cx) {
            out.push(d);
            if out.len() > limit {
                return None;
            }
        }
    }
    Some(out)
}

/// Hyper 1-cocycles on `Q` are also small enough to enumerate when finite.
pub fn hyper_representatives(cx: &TwoTermComplex, limit: usize) -> Option<Vec<HyperCocycle>> {
    let h = cx.hyper_group();
    let els = h.group().elements(limit)?;
    Some(els.iter().map(|e| h.representative(e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LocalModel;
    use exact_lattice::bvec;

    fn norm_one() -> TwoTermComplex {
        let t = Torus::new(LocalModel::new(2), IntMatrix::from_i64(&[&[-1]])).unwrap();
        TwoTermComplex::twisted(&t, &IntMatrix::from_i64(&[&[-1]])).unwrap()
    }

    #[test]
    fn twisted_map_and_dual() {
        let cx = norm_one();
        assert_eq!(cx.map(), &IntMatrix::from_i64(&[&[2]]));
        assert_eq!(cx.dual_map(&[QZ::new(1, 4)]), vec![QZ::new(1, 2)]);
    }

    #[test]
    fn trivial_classes_pair_to_zero() {
        let cx = norm_one();
        let zero = HyperCocycle {
            z: cohomology_engine::Cochain::zero(1, cx.source().action().clone()),
            c: bvec(&[0]),
        };
        for d in enumerate_dual_cocycles(&cx, 4, 100).unwrap() {
            assert!(hyper_pairing(&cx, &zero, &d).unwrap().is_zero());
        }
        let dz = DualCocycle::from_frobenius(&cx, &[QZ::zero()], vec![QZ::zero()]);
        for x in hyper_representatives(&cx, 100).unwrap() {
            assert!(hyper_pairing(&cx, &x, &dz).unwrap().is_zero());
        }
    }

    #[test]
    fn single_point_chain() {
        let cx = norm_one();
        // lambda = 0, mu_1 = delta_2 (x) 3; d mu_1 = 3 - 3 = 0
        let chain = ChainCycle {
            lambda: bvec(&[0]),
            mu1: FiniteSupportChain::from_entries(1, 1, [(vec![2], bvec(&[3]))]),
        };
        assert!(chain.is_valid(&cx));
        // f^ p = 2p must equal s c - c = -2c
        let d = DualCocycle::from_frobenius(&cx, &[QZ::new(1, 4)], vec![QZ::new(1, 4)]);
        assert!(d.is_valid(&cx));
        // z(s^0) = 0 and lambda = 0: the value is zero
        assert!(elementary_pairing(&cx, &d, &chain).unwrap().is_zero());
        // lambda = 1, mu_1 = delta_1 (x) -1: d mu_1 = 2 = f(1)
        let chain1 = ChainCycle {
            lambda: bvec(&[1]),
            mu1: FiniteSupportChain::from_entries(1, 1, [(vec![1], bvec(&[-1]))]),
        };
        assert!(chain1.is_valid(&cx));
        assert_eq!(elementary_pairing(&cx, &d, &chain1).unwrap(), QZ::new(1, 2));
    }

    #[test]
    fn rejects_invalid_inputs() {
        let cx = norm_one();
        let bad = DualCocycle::from_frobenius(&cx, &[QZ::new(1, 3)], vec![QZ::zero()]);
        assert!(!bad.is_valid(&cx));
        let t = Torus::new(LocalModel::new(2), IntMatrix::identity(1)).unwrap();
        let s = Torus::new(LocalModel::new(2), IntMatrix::from_i64(&[&[-1]])).unwrap();
        assert!(TwoTermComplex::new(t, s, IntMatrix::identity(1)).is_err());
    }
}
