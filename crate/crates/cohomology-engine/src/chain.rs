//! Chains with finite support on a possibly infinite group.

use std::collections::BTreeMap;
use std::fmt::Debug;

use exact_lattice::matrix::{vadd, vneg};
use exact_lattice::BigInt;
use finite_group::{FiniteGroup, GroupAction};
use num_traits::Zero;

/// A group acting on a coefficient lattice, through which chains are evaluated.
pub trait AmbientGroup {
    type Elem: Ord + Clone + Debug;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn rank(&self) -> usize;
    fn act(&self, g: &Self::Elem, v: &[BigInt]) -> Vec<BigInt>;
}

/// A finite group acting on a lattice, viewed as an ambient group for chains.
pub struct FiniteAmbient {
    pub action: GroupAction,
}

impl AmbientGroup for FiniteAmbient {
    type Elem = usize;
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.action.group().mul(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.action.group().inv(*a)
    }
    fn identity(&self) -> usize {
        self.action.group().identity()
    }
    fn rank(&self) -> usize {
        self.action.rank()
    }
    fn act(&self, g: &usize, v: &[BigInt]) -> Vec<BigInt> {
        self.action.act(*g, v)
    }
}

impl FiniteAmbient {
    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }
}

/// A map `W^n -> X` with finite support. Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupportChain<E: Ord + Clone> {
    degree: usize,
    rank: usize,
    support: BTreeMap<Vec<E>, Vec<BigInt>>,
}

impl<E: Ord + Clone + Debug> FiniteSupportChain<E> {
    pub fn zero(degree: usize, rank: usize) -> Self {
        FiniteSupportChain {
            degree,
            rank,
            support: BTreeMap::new(),
        }
    }

    pub fn from_entries(degree: usize, rank: usize, entries: impl IntoIterator<Item = (Vec<E>, Vec<BigInt>)>) -> Self {
        let mut c = Self::zero(degree, rank);
        for (k, v) in entries {
            c.add_at(k, &v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_at(&mut self, key: Vec<E>, v: &[BigInt]) {
        assert_eq!(key.len(), self.degree, "chain key has the wrong degree");
        assert_eq!(v.len(), self.rank, "chain value has the wrong rank");
        if v.iter().all(|x| x.is_zero()) {
            return;
        }
        let slot = self.support.entry(key.clone()).or_insert_with(|| vec![BigInt::zero(); v.len()]);
        *slot = vadd(slot, v);
        if slot.iter().all(|x| x.is_zero()) {
            self.support.remove(&key);
        }
    }

    pub fn get(&self, key: &[E]) -> Vec<BigInt> {
        self.support.get(key).cloned().unwrap_or_else(|| vec![BigInt::zero(); self.rank])
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<E>, &Vec<BigInt>)> {
        self.support.iter()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (k, v) in &other.support {
            c.add_at(k.clone(), v);
        }
        c
    }

    pub fn neg(&self) -> Self {
        FiniteSupportChain {
            degree: self.degree,
            rank: self.rank,
            support: self.support.iter().map(|(k, v)| (k.clone(), vneg(v))).collect(),
        }
    }

    /// Applies a map of coefficients to every value.
    pub fn map_values(&self, rank: usize, f: impl Fn(&[BigInt]) -> Vec<BigInt>) -> Self {
        Self::from_entries(self.degree, rank, self.support.iter().map(|(k, v)| (k.clone(), f(v))))
    }
}

/// The homology differential
/// `dy(w_1..w_{n-1}) = sum_x x^{-1} y(x, w_1, ..) + sum_i (-1)^i sum_x y(.., w_i x^{-1}, x, ..) + (-1)^n sum_x y(w_1.., x)`.
///
/// Each support entry `(u_1..u_n) -> v` contributes `u_1^{-1} v` at `(u_2..u_n)`,
/// `(-1)^i v` at the key with `u_i, u_{i+1}` merged into `u_i u_{i+1}`, and
/// `(-1)^n v` at `(u_1..u_{n-1})`.
pub fn homology_differential<G: AmbientGroup>(w: &G, y: &FiniteSupportChain<G::Elem>) -> FiniteSupportChain<G::Elem> {
    let n = y.degree();
    assert!(n >= 1, "degree 0 chains have zero differential");
    let mut out = FiniteSupportChain::zero(n - 1, y.rank());
    for (u, v) in y.support() {
        out.add_at(u[1..].to_vec(), &w.act(&w.inv(&u[0]), v));
        for i in 1..n {
            let mut key = Vec::with_capacity(n - 1);
            key.extend_from_slice(&u[..i - 1]);
            key.push(w.mul(&u[i - 1], &u[i]));
            key.extend_from_slice(&u[i + 1..]);
            if i % 2 == 1 {
                out.add_at(key, &vneg(v));
            } else {
                out.add_at(key, v);
            }
        }
        if n % 2 == 1 {
            out.add_at(u[..n - 1].to_vec(), &vneg(v));
        } else {
            out.add_at(u[..n - 1].to_vec(), v);
        }
    }
    out
}

/// `coinf y(w_1..w_n) = sum over lifts of y`, computed by pushing every
/// support entry forward along the projection.
pub fn coinflation<E1, E2>(y: &FiniteSupportChain<E1>, proj: impl Fn(&E1) -> E2) -> FiniteSupportChain<E2>
where
    E1: Ord + Clone + Debug,
    E2: Ord + Clone + Debug,
{
    FiniteSupportChain::from_entries(
        y.degree(),
        y.rank(),
        y.support().map(|(k, v)| (k.iter().map(&proj).collect(), v.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_lattice::{bvec, IntMatrix};

    fn sign_ambient(n: usize) -> FiniteAmbient {
        FiniteAmbient {
            action: GroupAction::from_generators(FiniteGroup::cyclic(n), 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap(),
        }
    }

    #[test]
    fn one_point_degree_one() {
        let w = sign_ambient(4);
        let y = FiniteSupportChain::from_entries(1, 1, [(vec![1usize], bvec(&[5]))]);
        let d = homology_differential(&w, &y);
        // 1^{-1} acts by -1: -5 from the first term, -5 from the last
        assert_eq!(d.get(&[]), bvec(&[-10]));
    }

    #[test]
    fn differential_squares_to_zero() {
        let w = sign_ambient(4);
        let y = FiniteSupportChain::from_entries(
            2,
            1,
            [(vec![1usize, 2], bvec(&[3])), (vec![3, 3], bvec(&[-1])), (vec![0, 1], bvec(&[2]))],
        );
        let dd = homology_differential(&w, &homology_differential(&w, &y));
        assert!(dd.is_zero());
    }

    #[test]
    fn coinflation_sums_fibers() {
        let y = FiniteSupportChain::from_entries(1, 1, [(vec![1usize], bvec(&[2])), (vec![3], bvec(&[2]))]);
        let c = coinflation(&y, |g| g % 2);
        assert_eq!(c.get(&[1]), bvec(&[4]));
        assert_eq!(c.support_len(), 1);
        let z: FiniteSupportChain<usize> = FiniteSupportChain::zero(2, 1);
        assert!(coinflation(&z, |g| g % 2).is_zero());
    }
}
