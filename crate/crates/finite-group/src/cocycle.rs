use std::fmt;

use exact_lattice::{solve_mod_one, BigInt, BigRational, IntMatrix, QZ};
use num_integer::Integer;
use num_traits::One;

use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleError {
    WrongSize { expected: usize, got: usize },
    NotNormalized(usize, usize),
    NotCocycle(usize, usize, usize),
    SectionMismatch(String),
    NotSubgroup,
}

impl fmt::Display for CocycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleError::WrongSize { expected, got } => write!(f, "expected {expected} values, got {got}"),
            CocycleError::NotNormalized(a, b) => write!(f, "cocycle not normalized at ({a}, {b})"),
            CocycleError::NotCocycle(a, b, c) => write!(f, "cocycle identity fails at ({a}, {b}, {c})"),
            CocycleError::SectionMismatch(s) => write!(f, "section mismatch: {s}"),
            CocycleError::NotSubgroup => write!(f, "embedding is not a subgroup"),
        }
    }
}

impl std::error::Error for CocycleError {}

/// A normalized 2-cocycle of a finite group with values in `Q/Z` (trivial action).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: FiniteGroup,
    values: Vec<QZ>,
}

impl Cocycle2 {
    /// `values[a * |G| + b] = alpha(a, b)`; normalization and the cocycle identity are checked.
    pub fn new(group: FiniteGroup, values: Vec<QZ>) -> Result<Self, CocycleError> {
        let n = group.order();
        if values.len() != n * n {
            return Err(CocycleError::WrongSize {
                expected: n * n,
                got: values.len(),
            });
        }
        let c = Cocycle2 { group, values };
        c.validate()?;
        Ok(c)
    }

    pub fn from_fn(group: FiniteGroup, f: impl Fn(usize, usize) -> QZ) -> Result<Self, CocycleError> {
        let n = group.order();
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(group, values)
    }

    fn validate(&self) -> Result<(), CocycleError> {
        let g = &self.group;
        let e = g.identity();
        for a in g.elements() {
            if !self.at(e, a).is_zero() {
                return Err(CocycleError::NotNormalized(e, a));
            }
            if !self.at(a, e).is_zero() {
                return Err(CocycleError::NotNormalized(a, e));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for c in g.elements() {
                    // a.alpha(b,c) - alpha(ab,c) + alpha(a,bc) - alpha(a,b) = 0
                    let lhs = &(&self.at(b, c) - &self.at(ab, c)) + &(&self.at(a, g.mul(b, c)) - &self.at(a, b));
                    if !lhs.is_zero() {
                        return Err(CocycleError::NotCocycle(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(group: FiniteGroup) -> Self {
        let n = group.order();
        Cocycle2 {
            group,
            values: vec![QZ::zero(); n * n],
        }
    }

    /// `delta f (a, b) = f(a) + f(b) - f(ab)`; `f` must vanish at the identity.
    pub fn coboundary(group: FiniteGroup, f: &[QZ]) -> Self {
        assert!(f[group.identity()].is_zero(), "cochain must be normalized");
        let n = group.order();
        let values = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                &(&f[a] + &f[b]) - &f[group.mul(a, b)]
            })
            .collect();
        Cocycle2 { group, values }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn at(&self, a: usize, b: usize) -> QZ {
        self.values[a * self.group.order() + b].clone()
    }

    pub fn values(&self) -> &[QZ] {
        &self.values
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        assert_eq!(self.group, other.group);
        Cocycle2 {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Cocycle2 {
        Cocycle2 {
            group: self.group.clone(),
            values: self.values.iter().map(|a| -a).collect(),
        }
    }

    /// `alpha + delta f`
    pub fn twist(&self, f: &[QZ]) -> Cocycle2 {
        self.add(&Cocycle2::coboundary(self.group.clone(), f))
    }

    /// Least `m` with `m alpha` integral, so `alpha` takes values in `mu_m`.
    pub fn value_exponent(&self) -> BigInt {
        self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// A normalized cochain `f` with `alpha = delta f`, when one exists.
    pub fn trivializing_cochain(&self) -> Option<Vec<QZ>> {
        let n = self.group.order();
        let mut m = IntMatrix::zeros(n * n + 1, n);
        let mut rhs = Vec::with_capacity(n * n + 1);
        for a in 0..n {
            for b in 0..n {
                let r = a * n + b;
                m[(r, a)] += BigInt::one();
                m[(r, b)] += BigInt::one();
                m[(r, self.group.mul(a, b))] -= BigInt::one();
                rhs.push(self.at(a, b).value().clone());
            }
        }
        m[(n * n, self.group.identity())] = BigInt::one();
        rhs.push(BigRational::from_integer(BigInt::from(0)));
        let f = solve_mod_one(&m, &rhs).ok()?;
        debug_assert_eq!(Cocycle2::coboundary(self.group.clone(), &f), *self);
        Some(f)
    }

    pub fn is_coboundary(&self) -> bool {
        self.trivializing_cochain().is_some()
    }

    /// Like `trivializing_cochain`, but the cochain must take values in `(1/m)Z/Z`.
    /// This decides triviality in `H^2(G, Z/m)` rather than in `H^2(G, Q/Z)`.
    pub fn trivializing_cochain_mod(&self, m: &BigInt) -> Option<Vec<QZ>> {
        let n = self.group.order();
        let e = self.group.identity();
        let rows = n * n + 1;
        let mut a = IntMatrix::zeros(rows, n + rows);
        let mut rhs = Vec::with_capacity(rows);
        for x in 0..n {
            for y in 0..n {
                let r = x * n + y;
                a[(r, x)] += BigInt::one();
                a[(r, y)] += BigInt::one();
                a[(r, self.group.mul(x, y))] -= BigInt::one();
                a[(r, n + r)] = m.clone();
                let scaled = self.at(x, y).value() * BigRational::from_integer(m.clone());
                if !scaled.is_integer() {
                    return None;
                }
                rhs.push(scaled.to_integer());
            }
        }
        a[(n * n, e)] = BigInt::one();
        a[(n * n, n + n * n)] = m.clone();
        rhs.push(BigInt::from(0));
        let sol = exact_lattice::solve_integer(&a, &rhs).ok()?;
        Some(sol[..n].iter().map(|k| QZ::from_bigs(k.clone(), m.clone())).collect())
    }

    /// A cochain `f` with `other = self + delta f`, when the classes agree.
    pub fn cohomologous(&self, other: &Cocycle2) -> Option<Vec<QZ>> {
        other.add(&self.neg()).trivializing_cochain()
    }

    /// Restriction along an embedding `H -> G`.
    pub fn restrict(&self, sub: &FiniteGroup, emb: &[usize]) -> Cocycle2 {
        Cocycle2::from_fn(sub.clone(), |a, b| self.at(emb[a], emb[b])).expect("restriction of a cocycle")
    }

    /// Inflation along a surjection `G -> Q` with `proj[g]` the image of `g`.
    pub fn inflate(&self, big: &FiniteGroup, proj: &[usize]) -> Cocycle2 {
        Cocycle2::from_fn(big.clone(), |a, b| self.at(proj[a], proj[b])).expect("inflation of a cocycle")
    }

    /// `alpha(a, b) - alpha(b, a)`, which decides regularity of commuting pairs.
    pub fn commutator_pairing(&self, a: usize, b: usize) -> QZ {
        &self.at(a, b) - &self.at(b, a)
    }

    /// An element is alpha-regular when `alpha(a,b) = alpha(b,a)` for all `b` commuting with `a`.
    pub fn is_regular(&self, a: usize) -> bool {
        self.group
            .elements()
            .filter(|&b| self.group.commutes(a, b))
            .all(|b| self.commutator_pairing(a, b).is_zero())
    }

    /// The number of conjugacy classes made of alpha-regular elements.
    pub fn regular_class_count(&self) -> usize {
        self.group
            .conjugacy_classes()
            .iter()
            .filter(|c| self.is_regular(c[0]))
            .count()
    }
}

/// Transfer of a cocycle from `A <= B` to `B`.
///
/// `emb` is the embedding of `A` into `B`, `section[i]` is the chosen
/// representative of the i-th right coset `A b`. Writing `b = r(b) s(b)`, the
/// result is `beta(b1, b2) = sum_c alpha(r(s(c) b1), r(s(c b1) b2))`.
pub fn corestriction_cocycle(alpha: &Cocycle2, big: &FiniteGroup, emb: &[usize], section: &[usize]) -> Result<Cocycle2, CocycleError> {
    let a_grp = alpha.group();
    if emb.len() != a_grp.order() || !big.is_subgroup(emb) {
        return Err(CocycleError::NotSubgroup);
    }
    if !a_grp.is_homomorphism(big, emb) {
        return Err(CocycleError::NotSubgroup);
    }
    let n = big.order();
    let mut pos_in_a = vec![usize::MAX; n];
    for (i, &b) in emb.iter().enumerate() {
        pos_in_a[b] = i;
    }
    // coset index of each element of B
    let cosets = big.right_cosets(emb);
    if section.len() != cosets.len() {
        return Err(CocycleError::SectionMismatch(format!(
            "{} representatives for {} cosets",
            section.len(),
            cosets.len()
        )));
    }
    let mut coset_of = vec![0usize; n];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let mut rep = vec![usize::MAX; cosets.len()];
    for &s in section {
        let c = coset_of[s];
        if rep[c] != usize::MAX {
            return Err(CocycleError::SectionMismatch(format!("two representatives in coset {c}")));
        }
        rep[c] = s;
    }
    if rep[coset_of[big.identity()]] != big.identity() {
        return Err(CocycleError::SectionMismatch("the trivial coset must be represented by the identity".into()));
    }
    let s_of = |b: usize| rep[coset_of[b]];
    let r_of = |b: usize| pos_in_a[big.mul(b, big.inv(s_of(b)))];
    let values = (0..n * n)
        .map(|k| {
            let (b1, b2) = (k / n, k % n);
            let terms: Vec<QZ> = (0..cosets.len())
                .map(|c| {
                    let sc = rep[c];
                    let x = big.mul(sc, b1);
                    let y = big.mul(s_of(x), b2);
                    alpha.at(r_of(x), r_of(y))
                })
                .collect();
            QZ::sum(terms.iter())
        })
        .collect();
    Cocycle2::new(big.clone(), values)
}
