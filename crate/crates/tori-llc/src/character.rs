//! The endoscopic character identity, computed three ways: the sum over the
//! packet weighted by the characters of `S_phi`, its closed form, and the
//! transfer-factor side.

use cohomology_engine::{Cochain, HyperCocycle};
use exact_lattice::matrix::vadd;
use exact_lattice::{BigInt, BigRational, Cyclotomic, FGAbelian, QZ};
use unramified_weil::{hyper_pairing, DualCocycle, TwoTermComplex};

use crate::case::{ToriCase, ToriError};
use crate::h::HTable;
use crate::packet::{twisted_value, Extensions};

/// `Delta_I`, `Delta_II` and `Delta_IV` for tori: the adjoint quotient is trivial,
/// so these are empty and only `Delta_III` is left.
pub const TORUS_CONSTANT_TERMS: [i64; 3] = [0, 0, 0];

/// `(t t_a x| a, s. s_b x| b)` with `t` in `X^Q`, `a` in `A^[z]`, `s.` in `T^^Q`
/// and `b` in `A^[z],[phi]`. Group elements are elements of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementPair {
    pub t: Vec<BigInt>,
    pub a: usize,
    pub sdot: Vec<QZ>,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharIdentityReport {
    pub pair: ElementPair,
    /// Number of `c` in `A^[z]` with `c a c^-1 = b^-1`.
    pub conjugators: usize,
    pub representation: Cyclotomic,
    pub closed_form: Cyclotomic,
    pub endoscopic: Cyclotomic,
}

impl CharIdentityReport {
    pub fn rep_matches_closed(&self) -> bool {
        self.representation == self.closed_form
    }

    pub fn closed_matches_endoscopic(&self) -> bool {
        self.closed_form == self.endoscopic
    }

    pub fn holds(&self) -> bool {
        self.rep_matches_closed() && self.closed_matches_endoscopic()
    }

    pub fn vanishing(&self) -> bool {
        self.conjugators == 0
    }
}

fn check_pair(case: &ToriCase, pair: &ElementPair) -> Result<usize, ToriError> {
    let act = case.torus().action();
    if pair.t.len() != case.rank() || !act.is_invariant(&pair.t) {
        return Err(ToriError::NotMember("X^Q"));
    }
    if pair.sdot.len() != case.rank() || !act.is_dual_invariant(&pair.sdot) {
        return Err(ToriError::NotMember("the Frobenius invariants of the dual torus"));
    }
    if pair.a >= case.group().order() || !case.in_z_fixers(pair.a) {
        return Err(ToriError::NotMember("A^[z]"));
    }
    case.stab_index(pair.b).ok_or(ToriError::NotMember("A^[z],[phi]"))
}

/// `c t + zeta(c, a)`, the `X^Q` part of `(t_c x| c)(t t_a x| a)(t_c x| c)^-1`.
fn conjugated_part(case: &ToriCase, c: usize, pair: &ElementPair) -> Vec<BigInt> {
    vadd(&case.model().act(c, &pair.t), &case.conjugation_defect(c, pair.a))
}

/// The `c` in `A^[z]` with `c a c^-1 = b^-1`.
pub fn conjugators(case: &ToriCase, a: usize, b: usize) -> Vec<usize> {
    let g = case.group();
    let target = g.inv(b);
    case.z_fixers()
        .iter()
        .copied()
        .filter(|&c| g.conjugate(c, a) == target)
        .collect()
}

/// The representation side and the closed form.
///
/// Representation side:
/// `sum_tau chi_tau([z](s.) (x) b) |A^phi z|^-1 sum_c chi_tau(([phi](c t + zeta(c,a)) + h(a')) (x) a')`
/// over `c` in `A^[z]` with `a' = c a c^-1` in the stabilizer, `tau` in `Irr(E^phi, id)`.
///
/// Closed form: `e([z](s.) - P_b) sum_(c a c^-1 = b^-1) e([phi](c t + zeta(c, a)))`
/// where `P_b` is the pairing term of `h(b)`.
pub fn theta_value(case: &ToriCase, h: &HTable, ext: &Extensions, pair: &ElementPair) -> Result<(Cyclotomic, Cyclotomic), ToriError> {
    let bi = check_pair(case, pair)?;
    let g = case.group();
    let set = &ext.e_phi;
    let zs = case.z_char(&pair.sdot)?;

    let mut inner: Vec<(QZ, usize)> = Vec::new();
    for &c in case.z_fixers() {
        let a2 = g.conjugate(c, pair.a);
        if let Some(ai) = case.stab_index(a2) {
            let x = &case.phi_char(&conjugated_part(case, c, pair))? + &h.values[ai];
            inner.push((x, ai));
        }
    }
    let mut rep = Cyclotomic::zero();
    for j in 0..set.len() {
        let left = twisted_value(set, j, &zs, bi);
        if left.is_zero() {
            continue;
        }
        let right: Cyclotomic = inner.iter().map(|(x, ai)| twisted_value(set, j, x, *ai)).sum();
        rep = rep + &left * &right;
    }
    let rep = rep.scale(&BigRational::new(BigInt::from(1), BigInt::from(case.stabilizer().order())));

    let mut sum = Cyclotomic::zero();
    for c in conjugators(case, pair.a, pair.b) {
        sum = sum + Cyclotomic::e(&case.phi_char(&conjugated_part(case, c, pair))?);
    }
    let closed = &Cyclotomic::e(&(&zs - &h.pairing[bi])) * &sum;
    Ok((rep, closed))
}

/// The class of `(-z, delta)` in `H^1(Q, X --(1 - b^-1)--> X)`, after checking
/// that `delta` maps to `gamma` in `coker(1 - b^-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantClass {
    pub b: usize,
    pub class: Vec<BigInt>,
}

pub fn norm_image(case: &ToriCase, b: usize, delta: &[BigInt]) -> Result<Vec<BigInt>, ToriError> {
    let cx = TwoTermComplex::twisted(case.torus(), case.model().component().matrix(b))?;
    let coker = FGAbelian::from_relations(case.rank(), cx.map());
    if delta.len() != case.rank() {
        return Err(ToriError::Shape("delta has the wrong length"));
    }
    Ok(coker.normal_form(delta))
}

pub fn invariant_of(case: &ToriCase, b: usize, gamma: &[BigInt], z: &Cochain, delta: &[BigInt]) -> Result<InvariantClass, ToriError> {
    if norm_image(case, b, delta)? != gamma {
        return Err(ToriError::NotANorm);
    }
    let cx = TwoTermComplex::twisted(case.torus(), case.model().component().matrix(b))?;
    let x = HyperCocycle {
        z: z.neg(),
        c: delta.to_vec(),
    };
    if !cx.is_hyper_cocycle(&x) {
        return Err(ToriError::Cochain(cohomology_engine::CochainError::NotCocycle));
    }
    Ok(InvariantClass {
        b,
        class: cx.hyper_group().classify(&x)?,
    })
}

/// `Delta_III` at `(inv, (-p, s. + s_b))` plus the constant terms.
pub fn transfer_factor(case: &ToriCase, inv: &InvariantClass, sdot: &[QZ]) -> Result<QZ, ToriError> {
    let cx = TwoTermComplex::twisted(case.torus(), case.model().component().matrix(inv.b))?;
    let rep = cx.hyper_group().representative(&inv.class);
    let neg_p: Vec<QZ> = case.p().iter().map(|v| -v).collect();
    let c: Vec<QZ> = sdot.iter().zip(case.s(inv.b)).map(|(x, y)| x + y).collect();
    let dual = DualCocycle::from_frobenius(&cx, &neg_p, c);
    debug_assert!(dual.is_valid(&cx));
    let constant: i64 = TORUS_CONSTANT_TERMS.iter().sum();
    Ok(&QZ::new(constant, 1) + &hyper_pairing(&cx, &rep, &dual)?)
}

/// `sum_(c a c^-1 = b^-1) e(-Delta(inv(gamma, (z, delta_c)), (-p, s. + s_b)))`
/// with `delta_c = c t + zeta(c, a) + t_(b^-1)` and counting measures.
pub fn endoscopic_value(case: &ToriCase, pair: &ElementPair) -> Result<Cyclotomic, ToriError> {
    check_pair(case, pair)?;
    let g = case.group();
    let mut out = Cyclotomic::zero();
    for c in conjugators(case, pair.a, pair.b) {
        let delta = vadd(&conjugated_part(case, c, pair), case.t(g.inv(pair.b)));
        let gamma = norm_image(case, pair.b, &delta)?;
        let inv = invariant_of(case, pair.b, &gamma, case.z_cochain(), &delta)?;
        let d = transfer_factor(case, &inv, &pair.sdot)?;
        out = out + Cyclotomic::e(&-d);
    }
    Ok(out)
}

pub fn character_identity(case: &ToriCase, h: &HTable, ext: &Extensions, pair: &ElementPair) -> Result<CharIdentityReport, ToriError> {
    let (representation, closed_form) = theta_value(case, h, ext, pair)?;
    let endoscopic = endoscopic_value(case, pair)?;
    Ok(CharIdentityReport {
        pair: pair.clone(),
        conjugators: conjugators(case, pair.a, pair.b).len(),
        representation,
        closed_form,
        endoscopic,
    })
}
