use exact_lattice::{AbHom, BigInt};
use finite_group::GroupAction;
use num_traits::{One, Zero};

use crate::cochain::{vsum, Cochain, CochainError};
use crate::tate::TateGroup;

/// A bilinear, equivariant pairing of coefficient modules `A x B -> C`.
pub trait Pairing {
    fn pair(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt>;
}

/// `Z x X -> X`, scalar multiplication; the left module must be `Z` with trivial action.
pub struct ScalarPairing;

impl Pairing for ScalarPairing {
    fn pair(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        b.iter().map(|x| &a[0] * x).collect()
    }
}

/// `X x Y -> X (x) Y` in the Kronecker basis.
pub struct TensorPairing;

impl Pairing for TensorPairing {
    fn pair(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(x * y);
            }
        }
        out
    }
}

/// The tensor product of two lattice actions, matching `TensorPairing`.
pub fn tensor_module(a: &GroupAction, b: &GroupAction) -> GroupAction {
    let mats = a.matrices().iter().zip(b.matrices()).map(|(x, y)| x.kron(y)).collect();
    GroupAction::new(a.group().clone(), a.rank() * b.rank(), mats).expect("tensor product of actions")
}

fn unit(r: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); r];
    e[i] = BigInt::one();
    e
}

/// Checks `g . pair(a, b) = pair(g a, g b)` on basis vectors.
pub fn pairing_is_equivariant(p: &dyn Pairing, a: &GroupAction, b: &GroupAction, target: &GroupAction) -> bool {
    a.group().elements().all(|g| {
        (0..a.rank()).all(|i| {
            (0..b.rank()).all(|j| {
                let (x, y) = (unit(a.rank(), i), unit(b.rank(), j));
                let lhs = target.act(g, &p.pair(&x, &y));
                let rhs = p.pair(&a.act(g, &x), &b.act(g, &y));
                lhs.len() == target.rank() && lhs == rhs
            })
        })
    })
}

/// `(x u y)(g_1..g_{p+q}) = x(g_1..g_p) . (g_1...g_p) y(g_{p+1}..g_{p+q})`.
pub fn cup(x: &Cochain, y: &Cochain, target: &GroupAction, pairing: &dyn Pairing) -> Result<Cochain, CochainError> {
    if x.module().group() != y.module().group() || target.group() != x.module().group() {
        return Err(CochainError::ModuleMismatch);
    }
    if !pairing_is_equivariant(pairing, x.module(), y.module(), target) {
        return Err(CochainError::PairingMismatch);
    }
    let g = x.module().group().clone();
    let (p, q) = (x.degree(), y.degree());
    Ok(Cochain::from_fn(p + q, target.clone(), |t| {
        let prod = t[..p].iter().fold(g.identity(), |acc, &h| g.mul(acc, h));
        let yv = y.module().act(prod, y.at(&t[p..]));
        pairing.pair(x.at(&t[..p]), &yv)
    }))
}

/// Cup product of a `Z`-valued 2-cochain `c` with a degree -1 element `lambda`:
/// `z(r) = sum_t c(r, t) . (r t) lambda`.
pub fn cup_tate_minus1(c: &Cochain, lambda: &[BigInt], module: &GroupAction) -> Result<Cochain, CochainError> {
    if c.degree() != 2 || c.module().rank() != 1 || c.module().group() != module.group() {
        return Err(CochainError::PairingMismatch);
    }
    let g = module.group().clone();
    let r = module.rank();
    Ok(Cochain::from_fn(1, module.clone(), |t| {
        let rho = t[0];
        vsum(
            r,
            g.elements().map(|tau| {
                let k = &c.at(&[rho, tau])[0];
                module.act(g.mul(rho, tau), lambda).iter().map(|v| k * v).collect()
            }),
        )
    }))
}

/// The map `H^0 -> H^2`, `x -> c u x`, as a homomorphism of finitely generated groups.
pub fn cup_map_0_to_2(module: &GroupAction, c: &Cochain) -> AbHom {
    let h0 = TateGroup::new(module, 0).unwrap();
    let h2 = TateGroup::new(module, 2).unwrap();
    let images = h0
        .group()
        .generators()
        .iter()
        .map(|gen| {
            let x = Cochain::constant(module.clone(), h0.representative_vec(gen));
            let z = cup(c, &x, module, &ScalarPairing).unwrap();
            h2.classify_cochain(&z).expect("cup of cocycles is a cocycle")
        })
        .collect();
    AbHom::new(h0.group().clone(), h2.group().clone(), images)
}

/// The map `H^{-1} -> H^1`, `lambda -> c u lambda`.
pub fn cup_map_minus1_to_1(module: &GroupAction, c: &Cochain) -> AbHom {
    let hm = TateGroup::new(module, -1).unwrap();
    let h1 = TateGroup::new(module, 1).unwrap();
    let images = hm
        .group()
        .generators()
        .iter()
        .map(|gen| {
            let z = cup_tate_minus1(c, &hm.representative_vec(gen), module).unwrap();
            h1.classify_cochain(&z).expect("cup with a norm-zero element is a cocycle")
        })
        .collect();
    AbHom::new(hm.group().clone(), h1.group().clone(), images)
}

/// The carry cocycle `c(s^i, s^j) = floor((i + j) / n)` of `Z/n`, valued in `Z`.
pub fn carry_cocycle(n: usize) -> Cochain {
    let z = GroupAction::trivial(finite_group::FiniteGroup::cyclic(n), 1);
    Cochain::from_fn(2, z, |t| vec![BigInt::from(((t[0] + t[1]) / n) as i64)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_lattice::{bvec, IntMatrix};
    use finite_group::FiniteGroup;

    #[test]
    fn cup_with_sign_module_over_z2() {
        let q = FiniteGroup::cyclic(2);
        let x = GroupAction::from_generators(q, 1, &[(1, IntMatrix::from_i64(&[&[-1]]))]).unwrap();
        let c = carry_cocycle(2);
        let z = cup_tate_minus1(&c, &bvec(&[1]), &x).unwrap();
        assert_eq!(z.at(&[0]), &bvec(&[0]));
        assert_eq!(z.at(&[1]), &bvec(&[1]));
        assert!(z.is_cocycle());
        let h1 = TateGroup::new(&x, 1).unwrap();
        assert_ne!(h1.classify_cochain(&z).unwrap(), bvec(&[0]));
        let zero = cup_tate_minus1(&c, &bvec(&[0]), &x).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn periodicity_for_cyclic_groups() {
        for n in 2..5 {
            let q = FiniteGroup::cyclic(n);
            let perm: Vec<i64> = (0..n).map(|i| ((i + 1) % n) as i64).collect();
            let mut m = IntMatrix::zeros(n, n);
            for (i, &j) in perm.iter().enumerate() {
                m[(j as usize, i)] = BigInt::one();
            }
            let regular = GroupAction::from_generators(q.clone(), n, &[(1, m)]).unwrap();
            let triv = GroupAction::trivial(q, 2);
            for module in [regular, triv] {
                let c = carry_cocycle(n);
                assert!(cup_map_0_to_2(&module, &c).is_isomorphism());
                assert!(cup_map_minus1_to_1(&module, &c).is_isomorphism());
            }
        }
    }
}
