//! The twisted Kottwitz sign `e(G, a, xi) = <lambda_T, xi>`.
//!
//! Frobenius acts on the Dynkin diagram through a permutation `gamma` of order
//! dividing the degree of the local model, `a` is a commuting diagram
//! automorphism. The class `xi` of the inner twist is read through
//! `Z = [T_sc -> T_ad]` as a class in `H^1(<gamma>, Hom(P/Q, Q/Z))`, recorded
//! by its value at Frobenius on the fundamental weights.

use std::collections::HashSet;
use std::fmt;

use exact_lattice::{BigInt, FGAbelian, QZ};
use num_traits::{ToPrimitive, Zero};
use unramified_weil::LocalModel;

use crate::datum::{BasedRootDatum, DatumError};

const ENUMERATION_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignError {
    Datum(DatumError),
    NotCommuting,
    FrobeniusOrder { degree: usize },
    Shape(&'static str),
    NotCentral(usize),
    NormNonzero,
    NotFixed,
    /// The pairing value does not have order dividing 2.
    NotOrderTwo(QZ),
    TooLarge,
    NotStable,
}

impl fmt::Display for SignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignError::Datum(e) => write!(f, "{e}"),
            SignError::NotCommuting => write!(f, "Frobenius and a do not commute on the diagram"),
            SignError::FrobeniusOrder { degree } => write!(f, "Frobenius permutation does not have order dividing {degree}"),
            SignError::Shape(s) => write!(f, "shape mismatch: {s}"),
            SignError::NotCentral(i) => write!(f, "xi does not vanish on simple root {i}"),
            SignError::NormNonzero => write!(f, "xi is not a cocycle: its norm is nonzero"),
            SignError::NotFixed => write!(f, "the class of xi is not fixed by a"),
            SignError::NotOrderTwo(v) => write!(f, "pairing value {v} does not have order dividing 2"),
            SignError::TooLarge => write!(f, "center too large to enumerate"),
            SignError::NotStable => write!(f, "Levi nodes are not stable under Frobenius and a"),
        }
    }
}

impl std::error::Error for SignError {}

impl From<DatumError> for SignError {
    fn from(e: DatumError) -> Self {
        SignError::Datum(e)
    }
}

/// Which Gamma-orbit is used from each `<a>`-orbit of Gamma-orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepChoice {
    First,
    Last,
    /// Taken modulo the orbit length.
    Index(usize),
}

/// Sign of the invariant map. `Standard` sends the class of the carry cocycle
/// to `1/n`; `Opposite` to `-1/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Standard,
    Opposite,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

fn orbits(perms: &[&[usize]], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orb = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < orb.len() {
            let x = orb[k];
            for p in perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// `(pi f)(omega_i) = f(omega_{pi^-1 i})` for functions given on fundamental weights.
fn act_on_values(perm: &[usize], f: &[QZ]) -> Vec<QZ> {
    let inv = inverse(perm);
    inv.iter().map(|&j| f[j].clone()).collect()
}

/// `omega_i -> omega_{pi i}` on weight coordinates.
fn act_on_weights(perm: &[usize], v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}

fn sub(a: &[QZ], b: &[QZ]) -> Vec<QZ> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A semisimple group with its Frobenius diagram action, the automorphism `a`,
/// and the unramified model whose degree bounds the order of Frobenius.
#[derive(Clone, Debug)]
pub struct TwistData {
    datum: BasedRootDatum,
    gamma: Vec<usize>,
    a: Vec<usize>,
    model: LocalModel,
}

impl TwistData {
    pub fn new(datum: BasedRootDatum, gamma: Vec<usize>, a: Vec<usize>, model: LocalModel) -> Result<Self, SignError> {
        datum.check_automorphism(&gamma)?;
        datum.check_automorphism(&a)?;
        if compose(&gamma, &a) != compose(&a, &gamma) {
            return Err(SignError::NotCommuting);
        }
        let n = model.degree();
        let mut p: Vec<usize> = (0..datum.rank()).collect();
        for _ in 0..n {
            p = compose(&gamma, &p);
        }
        if p.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(SignError::FrobeniusOrder { degree: n });
        }
        Ok(TwistData { datum, gamma, a, model })
    }

    /// Split group, `a = 1`.
    pub fn split(datum: BasedRootDatum, model: LocalModel) -> Self {
        let id: Vec<usize> = (0..datum.rank()).collect();
        Self::new(datum, id.clone(), id, model).expect("identity permutations")
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn model(&self) -> &LocalModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn gamma_orbits(&self) -> Vec<Vec<usize>> {
        orbits(&[&self.gamma], self.rank())
    }

    /// `<a>`-orbits on the set of Gamma-orbits, as lists of Gamma-orbits.
    pub fn a_orbits(&self) -> Vec<Vec<Vec<usize>>> {
        let g = self.gamma_orbits();
        let mut idx = vec![0; self.rank()];
        for (k, o) in g.iter().enumerate() {
            for &i in o {
                idx[i] = k;
            }
        }
        let on_orbits: Vec<usize> = g.iter().map(|o| idx[self.a[o[0]]]).collect();
        orbits(&[&on_orbits], g.len())
            .into_iter()
            .map(|big| {
                // follow a so that the listing order is the a-cycle
                let mut cyc = vec![big[0]];
                while cyc.len() < big.len() {
                    cyc.push(on_orbits[*cyc.last().unwrap()]);
                }
                cyc.into_iter().map(|k| g[k].clone()).collect()
            })
            .collect()
    }

    /// Direct product, with the degree the lcm of the two degrees.
    pub fn product(&self, other: &Self) -> Self {
        let r = self.rank();
        let shift = |p: &[usize]| p.iter().map(|&x| x + r).collect::<Vec<_>>();
        let gamma = [self.gamma.clone(), shift(&other.gamma)].concat();
        let a = [self.a.clone(), shift(&other.a)].concat();
        let n = num_integer::lcm(self.model.degree(), other.model.degree());
        Self::new(self.datum.product(&other.datum), gamma, a, LocalModel::new(n)).expect("product of twist data")
    }

    /// `H = G^n` with `b(g_0, .., g_{n-1}) = (g_1, .., g_{n-1}, a(g_0))` and Frobenius diagonal.
    pub fn induced(&self, n: usize) -> Self {
        let r = self.rank();
        let mut gamma = Vec::with_capacity(n * r);
        let mut b = Vec::with_capacity(n * r);
        for k in 0..n {
            for i in 0..r {
                gamma.push(k * r + self.gamma[i]);
                b.push(if k + 1 < n { (k + 1) * r + i } else { self.a[i] });
            }
        }
        Self::new(self.datum.power(n), gamma, b, self.model.clone()).expect("induced twist data")
    }
}

/// `X^*(Z) = P/Q` with the permutation actions.
struct Center {
    group: FGAbelian,
    /// Normal form of each fundamental weight.
    omega: Vec<Vec<BigInt>>,
}

impl Center {
    fn of(d: &BasedRootDatum) -> Self {
        let group = d.center_characters();
        let r = d.rank();
        let omega = (0..r)
            .map(|i| {
                let e: Vec<BigInt> = (0..r).map(|j| BigInt::from(i64::from(i == j))).collect();
                group.normal_form(&e)
            })
            .collect();
        Center { group, omega }
    }

    fn act(&self, perm: &[usize], nf: &[BigInt]) -> Vec<BigInt> {
        let rep = self.group.representative(nf);
        self.group.normal_form(&act_on_weights(perm, &rep))
    }

    fn elements(&self) -> Result<Vec<Vec<BigInt>>, SignError> {
        self.group.elements(ENUMERATION_LIMIT).ok_or(SignError::TooLarge)
    }

    /// The subgroup generated by `gens`, listed.
    fn span(&self, gens: &[Vec<BigInt>]) -> HashSet<Vec<BigInt>> {
        let mut set: HashSet<Vec<BigInt>> = HashSet::from([self.group.zero_nf()]);
        for g in gens {
            if set.contains(g) {
                continue;
            }
            let base: Vec<Vec<BigInt>> = set.iter().cloned().collect();
            let mut step = g.clone();
            while !set.contains(&step) {
                for b in &base {
                    set.insert(self.group.add_nf(b, &step));
                }
                step = self.group.add_nf(&step, g);
            }
        }
        set
    }

    /// Every homomorphism `P/Q -> Q/Z`, as values on fundamental weights.
    fn dual(&self) -> Result<Vec<Vec<QZ>>, SignError> {
        let tors = self.group.torsion_invariants().to_vec();
        let coeffs = FGAbelian::from_invariants(&tors, 0).elements(ENUMERATION_LIMIT).ok_or(SignError::TooLarge)?;
        Ok(coeffs
            .iter()
            .map(|c| {
                self.omega
                    .iter()
                    .map(|w| QZ::sum(&c.iter().zip(w).zip(&tors).map(|((ck, wk), d)| QZ::from_bigs(ck * wk, d.clone())).collect::<Vec<_>>()))
                    .collect()
            })
            .collect())
    }
}

/// The value at Frobenius of a 1-cocycle `<gamma> -> Hom(P/Q, Q/Z)`,
/// given on the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterClass {
    values: Vec<QZ>,
}

impl CenterClass {
    /// Checks that the values kill the root lattice, that the norm over the
    /// model vanishes, and that the class is fixed by `a`.
    pub fn new(data: &TwistData, values: Vec<QZ>) -> Result<Self, SignError> {
        Self::validate(data, values, &coboundaries(data)?)
    }

    fn validate(data: &TwistData, values: Vec<QZ>, boundaries: &HashSet<Vec<QZ>>) -> Result<Self, SignError> {
        let r = data.rank();
        if values.len() != r {
            return Err(SignError::Shape("one value per fundamental weight"));
        }
        for i in 0..r {
            let alpha: Vec<BigInt> = data.datum.simple_root_weights(i).into_iter().map(BigInt::from).collect();
            if !QZ::dot(&alpha, &values).is_zero() {
                return Err(SignError::NotCentral(i));
            }
        }
        let mut norm = vec![QZ::zero(); r];
        let mut cur = values.clone();
        for _ in 0..data.model.degree() {
            norm = norm.iter().zip(&cur).map(|(x, y)| x + y).collect();
            cur = act_on_values(&data.gamma, &cur);
        }
        if norm.iter().any(|x| !x.is_zero()) {
            return Err(SignError::NormNonzero);
        }
        if !boundaries.contains(&sub(&act_on_values(&data.a, &values), &values)) {
            return Err(SignError::NotFixed);
        }
        Ok(CenterClass { values })
    }

    /// Every valid value at Frobenius, one cocycle per element of `Hom(P/Q, Q/Z)`
    /// that passes the checks of `new`.
    pub fn all(data: &TwistData) -> Result<Vec<Self>, SignError> {
        let c = Center::of(&data.datum);
        let boundaries = coboundaries(data)?;
        Ok(c.dual()?.into_iter().filter_map(|v| Self::validate(data, v, &boundaries).ok()).collect())
    }

    pub fn trivial(data: &TwistData) -> Self {
        CenterClass {
            values: vec![QZ::zero(); data.rank()],
        }
    }

    pub fn values(&self) -> &[QZ] {
        &self.values
    }

    /// Difference lies in `(gamma - 1) Hom(P/Q, Q/Z)`.
    pub fn cohomologous(&self, data: &TwistData, other: &Self) -> Result<bool, SignError> {
        let boundaries = coboundaries(data)?;
        Ok(boundaries.contains(&sub(&self.values, &other.values)))
    }

    pub fn product(&self, other: &Self) -> Self {
        CenterClass {
            values: [self.values.clone(), other.values.clone()].concat(),
        }
    }

    /// The image under the diagonal embedding `G -> G^n`.
    pub fn diagonal(&self, n: usize) -> Self {
        CenterClass {
            values: (0..n).flat_map(|_| self.values.iter().cloned()).collect(),
        }
    }

    /// `xi(lambda)` for `lambda` in weight coordinates.
    pub fn evaluate(&self, lambda: &[i64]) -> QZ {
        let l: Vec<BigInt> = lambda.iter().map(|&x| BigInt::from(x)).collect();
        QZ::dot(&l, &self.values)
    }
}

fn coboundaries(data: &TwistData) -> Result<HashSet<Vec<QZ>>, SignError> {
    let c = Center::of(&data.datum);
    Ok(c.dual()?.into_iter().map(|f| sub(&act_on_values(&data.gamma, &f), &f)).collect())
}

/// `lambda_T = sum over chosen Gamma-orbits O of sum_{chi in O} omega_chi`,
/// one orbit from each `<a>`-orbit, in weight coordinates.
pub fn lambda_t(data: &TwistData, choice: RepChoice) -> Vec<i64> {
    let mut lambda = vec![0i64; data.rank()];
    for big in data.a_orbits() {
        let k = match choice {
            RepChoice::First => 0,
            RepChoice::Last => big.len() - 1,
            RepChoice::Index(i) => i % big.len(),
        };
        for &i in &big[k] {
            lambda[i] += 1;
        }
    }
    lambda
}

/// Invariant of a Gamma-invariant weight in `H_0(<a>, X^*(T)^Gamma)`: the sum of
/// its coefficients over each `<a>`-orbit of Gamma-orbits.
pub fn coinvariant_class(data: &TwistData, lambda: &[i64]) -> Vec<i64> {
    data.a_orbits()
        .iter()
        .map(|big| big.iter().map(|o| lambda[o[0]]).sum())
        .collect()
}

/// Image of `lambda` in `H^0(Gamma, X^*(Z))_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterImage {
    /// Normal form in `P/Q`.
    pub residue: Vec<BigInt>,
    pub invariants_order: usize,
    pub coinvariants_order: usize,
    /// Order of the image in the coinvariants.
    pub order: usize,
}

impl CenterImage {
    pub fn vanishes(&self) -> bool {
        self.order == 1
    }
}

pub fn center_image(data: &TwistData, lambda: &[i64]) -> Result<CenterImage, SignError> {
    let c = Center::of(&data.datum);
    let l: Vec<BigInt> = lambda.iter().map(|&x| BigInt::from(x)).collect();
    let residue = c.group.normal_form(&l);
    let invariant: Vec<Vec<BigInt>> = c.elements()?.into_iter().filter(|x| &c.act(&data.gamma, x) == x).collect();
    let gens: Vec<Vec<BigInt>> = invariant
        .iter()
        .map(|x| c.group.add_nf(x, &c.group.neg_nf(&c.act(&data.a, x))))
        .collect();
    let boundary = c.span(&gens);
    let boundary_count = boundary.len();
    let mut order = 1;
    let mut cur = residue.clone();
    while !boundary.contains(&cur) {
        cur = c.group.add_nf(&cur, &residue);
        order += 1;
    }
    Ok(CenterImage {
        residue,
        invariants_order: invariant.len(),
        coinvariants_order: invariant.len() / boundary_count,
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub lambda: Vec<i64>,
    /// `inv(lambda cup xi)` under the chosen normalization.
    pub value: QZ,
    pub sign: i8,
    pub image: CenterImage,
}

pub fn twisted_sign(data: &TwistData, xi: &CenterClass, norm: Normalization, choice: RepChoice) -> Result<SignReport, SignError> {
    let lambda = lambda_t(data, choice);
    let raw = xi.evaluate(&lambda);
    let value = match norm {
        Normalization::Standard => raw,
        Normalization::Opposite => -raw,
    };
    if !value.scale_i64(2).is_zero() {
        return Err(SignError::NotOrderTwo(value));
    }
    let image = center_image(data, &lambda)?;
    Ok(SignReport {
        sign: if value.is_zero() { 1 } else { -1 },
        lambda,
        value,
        image,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub first: i8,
    pub second: i8,
    pub product: i8,
}

impl ProductReport {
    pub fn holds(&self) -> bool {
        self.product == self.first * self.second
    }
}

pub fn sign_product(
    d1: &TwistData,
    x1: &CenterClass,
    d2: &TwistData,
    x2: &CenterClass,
    norm: Normalization,
) -> Result<ProductReport, SignError> {
    let d = d1.product(d2);
    let x = CenterClass::new(&d, x1.product(x2).values)?;
    Ok(ProductReport {
        first: twisted_sign(d1, x1, norm, RepChoice::First)?.sign,
        second: twisted_sign(d2, x2, norm, RepChoice::First)?.sign,
        product: twisted_sign(&d, &x, norm, RepChoice::First)?.sign,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    pub n: usize,
    pub base: i8,
    pub induced: i8,
    pub lambda_induced: Vec<i64>,
    /// `lambda_{T_H}` and `(lambda_T, 0, .., 0)` agree in the coinvariants.
    pub lambda_matches: bool,
}

impl InductionReport {
    pub fn holds(&self) -> bool {
        self.base == self.induced && self.lambda_matches
    }
}

pub fn sign_induction(data: &TwistData, xi: &CenterClass, n: usize, norm: Normalization) -> Result<InductionReport, SignError> {
    let h = data.induced(n);
    let xh = CenterClass::new(&h, xi.diagonal(n).values)?;
    let base = twisted_sign(data, xi, norm, RepChoice::First)?;
    let ind = twisted_sign(&h, &xh, norm, RepChoice::First)?;
    let mut padded = base.lambda.clone();
    padded.resize(h.rank(), 0);
    Ok(InductionReport {
        n,
        base: base.sign,
        induced: ind.sign,
        lambda_matches: coinvariant_class(&h, &padded) == coinvariant_class(&h, &ind.lambda),
        lambda_induced: ind.lambda,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    pub nodes: Vec<usize>,
    /// Restriction of `lambda_{T,G}` to `T_{M,sc}`.
    pub restricted: Vec<i64>,
    /// `lambda_{T,M}` computed from the Levi datum.
    pub intrinsic: Vec<i64>,
    pub coinvariant_equal: bool,
}

impl LeviReport {
    pub fn holds(&self) -> bool {
        self.coinvariant_equal
    }
}

/// Standard Levi on the simple roots in `nodes`, which must be stable under Frobenius and `a`.
pub fn levi_restriction(data: &TwistData, nodes: &[usize], choice: RepChoice) -> Result<LeviReport, SignError> {
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.iter().any(|&i| i >= data.rank()) {
        return Err(SignError::Shape("Levi node out of range"));
    }
    let pos = |i: usize| nodes.iter().position(|&x| x == i);
    let restrict = |p: &[usize]| -> Result<Vec<usize>, SignError> {
        nodes.iter().map(|&i| pos(p[i]).ok_or(SignError::NotStable)).collect()
    };
    let gamma_m = restrict(&data.gamma)?;
    let a_m = restrict(&data.a)?;
    let m = TwistData::new(data.datum.sub_datum(&nodes), gamma_m, a_m, data.model.clone())?;
    let lambda_g = lambda_t(data, choice);
    // <omega_i, alpha_j^v> = delta_ij, so restriction keeps the Levi coordinates
    let restricted: Vec<i64> = nodes.iter().map(|&i| lambda_g[i]).collect();
    let intrinsic = lambda_t(&m, choice);
    Ok(LeviReport {
        coinvariant_equal: coinvariant_class(&m, &restricted) == coinvariant_class(&m, &intrinsic),
        nodes,
        restricted,
        intrinsic,
    })
}

/// Order of `P/Q`.
pub fn center_order(data: &TwistData) -> usize {
    data.datum.center_characters().order().and_then(|o| o.to_usize()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::CartanType;

    #[test]
    fn anisotropic_pgl2() {
        let d = TwistData::split(BasedRootDatum::of_type(CartanType::A(1)), LocalModel::new(2));
        let xi = CenterClass::new(&d, vec![QZ::new(1, 2)]).unwrap();
        let r = twisted_sign(&d, &xi, Normalization::Standard, RepChoice::First).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.lambda, vec![1]);
        assert!(!r.image.vanishes());
    }

    #[test]
    fn norm_condition() {
        let d = TwistData::split(BasedRootDatum::of_type(CartanType::A(1)), LocalModel::new(1));
        assert_eq!(CenterClass::new(&d, vec![QZ::new(1, 2)]), Err(SignError::NormNonzero));
    }

    #[test]
    fn must_kill_roots() {
        let d = TwistData::split(BasedRootDatum::of_type(CartanType::A(2)), LocalModel::new(3));
        assert_eq!(CenterClass::new(&d, vec![QZ::new(1, 3), QZ::new(1, 3)]), Err(SignError::NotCentral(0)));
    }

    #[test]
    fn commuting_required() {
        let d = BasedRootDatum::of_type(CartanType::A(4)).product(&BasedRootDatum::of_type(CartanType::A(4)));
        let flip = vec![3, 2, 1, 0, 7, 6, 5, 4];
        let swap = vec![4, 5, 6, 7, 0, 1, 2, 3];
        let mixed = vec![3, 2, 1, 0, 4, 5, 6, 7];
        assert!(TwistData::new(d.clone(), flip, swap.clone(), LocalModel::new(2)).is_ok());
        assert_eq!(TwistData::new(d, mixed, swap, LocalModel::new(2)).unwrap_err(), SignError::NotCommuting);
    }
}
