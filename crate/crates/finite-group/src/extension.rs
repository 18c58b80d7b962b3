use std::fmt;

use exact_lattice::{BigInt, QZ};
use num_traits::ToPrimitive;

use crate::cocycle::Cocycle2;
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionError {
    ValuesOutsideCenter { modulus: usize },
    NotCohomologous,
    CochainOutsideCenter,
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::ValuesOutsideCenter { modulus } => {
                write!(f, "cocycle values do not lie in the {modulus}-torsion of Q/Z")
            }
            ExtensionError::NotCohomologous => write!(f, "cocycles are not cohomologous"),
            ExtensionError::CochainOutsideCenter => write!(f, "trivializing cochain leaves the center"),
        }
    }
}

impl std::error::Error for ExtensionError {}

/// The central extension `mu_m x_alpha A` with multiplication
/// `(z1, a)(z2, b) = (z1 + z2 + alpha(a, b), ab)`.
///
/// The center `mu_m` is the `m`-torsion of `Q/Z`; an element `(k/m, a)` is
/// stored at index `k * |A| + a`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    base: FiniteGroup,
    alpha: Cocycle2,
    modulus: usize,
    group: FiniteGroup,
}

impl CentralExtension {
    /// Uses the exponent of the value set of `alpha` as the modulus.
    pub fn new(alpha: Cocycle2) -> Self {
        let m = alpha.value_exponent().to_usize().expect("cocycle exponent too large");
        Self::with_modulus(alpha, m).expect("exponent always works")
    }

    pub fn with_modulus(alpha: Cocycle2, modulus: usize) -> Result<Self, ExtensionError> {
        let m = BigInt::from(modulus);
        if alpha.values().iter().any(|v| !(m.clone() % v.denom()).eq(&BigInt::from(0))) {
            return Err(ExtensionError::ValuesOutsideCenter { modulus });
        }
        let base = alpha.group().clone();
        let na = base.order();
        let n = na * modulus;
        let step = |a: usize, b: usize| -> usize {
            let v = alpha.at(a, b);
            (v.numer() * (&m / v.denom())).to_usize().unwrap()
        };
        let mut table = vec![vec![0usize; n]; n];
        for x in 0..n {
            let (k1, a) = (x / na, x % na);
            for y in 0..n {
                let (k2, b) = (y / na, y % na);
                let k = (k1 + k2 + step(a, b)) % modulus;
                table[x][y] = k * na + base.mul(a, b);
            }
        }
        let group = FiniteGroup::from_table(&table).expect("central extension table is a group");
        Ok(CentralExtension {
            base,
            alpha,
            modulus,
            group,
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.alpha
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// The extension as an abstract finite group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn encode(&self, z: &QZ, a: usize) -> usize {
        let k = (z.numer() * (BigInt::from(self.modulus) / z.denom()))
            .to_usize()
            .expect("central value outside mu_m");
        k * self.base.order() + a
    }

    pub fn decode(&self, e: usize) -> (QZ, usize) {
        let na = self.base.order();
        (QZ::new((e / na) as i64, self.modulus as i64), e % na)
    }

    pub fn project(&self, e: usize) -> usize {
        e % self.base.order()
    }

    pub fn section(&self, a: usize) -> usize {
        a
    }

    pub fn central(&self, z: &QZ) -> usize {
        self.encode(z, self.base.identity())
    }

    pub fn is_central_value(&self, e: usize) -> bool {
        self.project(e) == self.base.identity()
    }

    /// Central elements in index order, i.e. `k/m` at position `k`.
    pub fn center_elements(&self) -> Vec<usize> {
        (0..self.modulus).map(|k| k * self.base.order() + self.base.identity()).collect()
    }

    /// An isomorphism to the extension built from a cohomologous cocycle with
    /// the same modulus. The map is `(z, a) -> (z - f(a), a)` where
    /// `other = alpha + delta f`, and it is checked to be a group isomorphism
    /// restricting to the identity on the center and lying over the identity of `A`.
    pub fn isomorphism_to(&self, other: &CentralExtension) -> Result<Vec<usize>, ExtensionError> {
        let m = BigInt::from(self.modulus);
        let f = other
            .alpha
            .add(&self.alpha.neg())
            .trivializing_cochain_mod(&m)
            .ok_or(ExtensionError::NotCohomologous)?;
        if other.modulus != self.modulus {
            return Err(ExtensionError::CochainOutsideCenter);
        }
        let map: Vec<usize> = self
            .group
            .elements()
            .map(|e| {
                let (z, a) = self.decode(e);
                other.encode(&(&z - &f[a]), a)
            })
            .collect();
        assert!(self.group.is_homomorphism(&other.group, &map), "coboundary map is not a homomorphism");
        let mut seen = vec![false; map.len()];
        for &x in &map {
            seen[x] = true;
        }
        assert!(seen.iter().all(|&s| s), "coboundary map is not bijective");
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_alpha() -> Cocycle2 {
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        Cocycle2::from_fn(v, |a, b| QZ::new(((a / 2) * (b % 2)) as i64, 2)).unwrap()
    }

    #[test]
    fn klein_extension_is_nonabelian_of_order_8() {
        let e = CentralExtension::new(klein_alpha());
        assert_eq!(e.group().order(), 8);
        assert!(!e.group().is_abelian());
        for z in e.center_elements() {
            assert!(e.group().elements().all(|g| e.group().commutes(z, g)));
        }
        let (z, a) = e.decode(e.encode(&QZ::new(1, 2), 3));
        assert_eq!((z, a), (QZ::new(1, 2), 3));
    }

    #[test]
    fn twisted_extensions_are_isomorphic() {
        let alpha = klein_alpha();
        let f = vec![QZ::zero(), QZ::new(1, 2), QZ::zero(), QZ::new(1, 2)];
        let beta = alpha.twist(&f);
        let e1 = CentralExtension::with_modulus(alpha, 2).unwrap();
        let e2 = CentralExtension::with_modulus(beta, 2).unwrap();
        let iso = e1.isomorphism_to(&e2).unwrap();
        for z in e1.center_elements() {
            assert_eq!(iso[z], z);
        }
        let zero = CentralExtension::with_modulus(Cocycle2::zero(e1.base().clone()), 2).unwrap();
        assert!(e1.isomorphism_to(&zero).is_err());
    }

    #[test]
    fn modulus_must_contain_values() {
        assert!(CentralExtension::with_modulus(klein_alpha(), 3).is_err());
        assert!(CentralExtension::with_modulus(klein_alpha(), 4).is_ok());
    }
}
