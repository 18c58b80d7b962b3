//! Chain-level maps from finite-support chains on `W = Z` to cochains on `Q`.

use cohomology_engine::{Cochain, FiniteSupportChain};
use exact_lattice::matrix::{vadd, vsub, vzero};
use exact_lattice::BigInt;

use crate::model::Torus;

/// `psi(lambda)(s^r) = sum_{k<r} s^k lambda`, defined for every `lambda`;
/// a cocycle exactly when `N lambda = 0`.
pub fn psi(torus: &Torus, lambda: &[BigInt]) -> Cochain {
    let act = torus.action();
    Cochain::from_fn(1, act.clone(), |t| {
        (0..t[0]).fold(vzero(lambda.len()), |acc, k| vadd(&acc, &act.act(k, lambda)))
    })
}

/// The map `phi` from 1-chains on `W` to `X` (points over `K`).
///
/// Restricts `mu_1` to the kernel `nZ` through the transfer: for each coset
/// representative `s(tau) = i`, write `i + w = a + s(tau')` with `a` in `nZ`,
/// record `a (x) s^i mu_1(w)`, then send `a` to its valuation `a / n`. The
/// overall sign makes `d phi = psi d`.
pub fn chain_map_phi(torus: &Torus, mu1: &FiniteSupportChain<i64>) -> Vec<BigInt> {
    assert_eq!(mu1.degree(), 1, "phi is defined on 1-chains");
    let model = torus.model();
    let n = model.degree() as i64;
    let mut acc = vzero(torus.rank());
    for (key, v) in mu1.support() {
        let w = key[0];
        for tau in model.group().elements() {
            let i = model.section(tau);
            let rest = model.section(model.project(i + w));
            let a = i + w - rest;
            debug_assert_eq!(a % n, 0);
            let val = BigInt::from(a / n);
            let x: Vec<BigInt> = torus.action().act(tau, v).iter().map(|e| e * &val).collect();
            acc = vsub(&acc, &x);
        }
    }
    acc
}

/// Inflation of a `Q`-cochain to the value at `w` in `W`.
pub fn inflated_value<'a>(torus: &Torus, z: &'a Cochain, w: i64) -> &'a Vec<BigInt> {
    z.at(&[torus.model().project(w)])
}
