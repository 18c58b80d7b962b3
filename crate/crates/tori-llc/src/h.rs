//! The function `h` on `A^[z],[phi]` and the isomorphism
//! `x (x) a -> (x + h(a)) (x) a` between the two extensions.

use cohomology_engine::HyperCocycle;
use exact_lattice::QZ;
use finite_group::Cocycle2;
use unramified_weil::{hyper_pairing, DualCocycle, TwoTermComplex};

use crate::case::{ToriCase, ToriError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    /// `h(a)`, indexed by stabilizer index.
    pub values: Vec<QZ>,
    /// The pairing term `<(-z, t_a^-1), (-p, s_a)>`.
    pub pairing: Vec<QZ>,
    pub alpha_bar: Cocycle2,
    pub beta_bar: Cocycle2,
}

impl HTable {
    pub fn at(&self, i: usize) -> &QZ {
        &self.values[i]
    }
}

/// `<(-z, t_(a^-1)), (-p, s_a)>` in the complex `X --(1 - a^-1)--> X`.
pub fn pairing_term(case: &ToriCase, a: usize) -> Result<QZ, ToriError> {
    let g = case.group();
    let cx = TwoTermComplex::twisted(case.torus(), case.model().component().matrix(a))?;
    let x = HyperCocycle {
        z: case.z_cochain().neg(),
        c: case.t(g.inv(a)).to_vec(),
    };
    let neg_p: Vec<QZ> = case.p().iter().map(|v| -v).collect();
    let dual = DualCocycle::from_frobenius(&cx, &neg_p, case.s(a).to_vec());
    debug_assert!(cx.is_hyper_cocycle(&x));
    debug_assert!(dual.is_valid(&cx));
    Ok(hyper_pairing(&cx, &x, &dual)?)
}

/// `h(a) = alpha_bar(a^-1, a) + <(-z, t_(a^-1)), (-p, s_a)>`.
pub fn compute_h(case: &ToriCase) -> Result<HTable, ToriError> {
    let stab = case.stabilizer();
    let alpha_bar = case.alpha_bar()?;
    let beta_bar = case.beta_bar()?;
    let mut values = Vec::with_capacity(stab.order());
    let mut pairing = Vec::with_capacity(stab.order());
    for i in stab.elements() {
        let p = pairing_term(case, case.embedding()[i])?;
        values.push(&alpha_bar.at(stab.inv(i), i) + &p);
        pairing.push(p);
    }
    Ok(HTable {
        values,
        pairing,
        alpha_bar,
        beta_bar,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub a: usize,
    pub b: usize,
    /// `h(a) + h(b) - h(ab)`.
    pub lhs: QZ,
    /// `alpha_bar(a, b) - beta_bar(a, b)`.
    pub rhs: QZ,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub pairs: Vec<PairCheck>,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(PairCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.holds())
    }
}

/// Checks that `h` turns `mu x_alpha_bar A` into `mu x_beta_bar A`, i.e.
/// `h(a) + h(b) - h(ab) = alpha_bar(a, b) - beta_bar(a, b)` for all pairs.
/// Indices in the report are stabilizer indices.
pub fn verify_iso(case: &ToriCase, h: &HTable) -> IsoReport {
    iso_report(case, &h.values, &h.alpha_bar, &h.beta_bar)
}

pub(crate) fn iso_report(case: &ToriCase, h: &[QZ], alpha_bar: &Cocycle2, beta_bar: &Cocycle2) -> IsoReport {
    let stab = case.stabilizer();
    let mut pairs = Vec::with_capacity(stab.order() * stab.order());
    for a in stab.elements() {
        for b in stab.elements() {
            let lhs = &(&h[a] + &h[b]) - &h[stab.mul(a, b)];
            let rhs = &alpha_bar.at(a, b) - &beta_bar.at(a, b);
            pairs.push(PairCheck { a, b, lhs, rhs });
        }
    }
    IsoReport { pairs }
}

/// The same check with the pairing term entering with the opposite sign.
/// Used as a negative control: on inputs where this also passes the check is
/// not seeing the pairing at all.
pub fn verify_iso_flipped(case: &ToriCase, h: &HTable) -> IsoReport {
    let stab = case.stabilizer();
    let flipped: Vec<QZ> = stab
        .elements()
        .map(|i| &h.alpha_bar.at(stab.inv(i), i) - &h.pairing[i])
        .collect();
    iso_report(case, &flipped, &h.alpha_bar, &h.beta_bar)
}
