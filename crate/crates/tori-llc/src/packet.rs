//! The two extensions of `A^[z],[phi]` and the packet attached to `(phi, z)`.

use std::sync::Arc;

use exact_lattice::{Cyclotomic, QZ};
use finite_group::{CentralExtension, FiniteGroup};
use projective_characters::{character_table, irr_with_central_char_in, CharacterTable, ProjectiveError, ProjectiveIrrSet};

use crate::case::{ToriCase, ToriError};
use crate::h::HTable;

/// `E^z = mu x_alpha_bar A^[z],[phi]` and `E^phi = mu x_beta_bar A^[z],[phi]`
/// with their identity-central-character irreducibles.
#[derive(Clone, Debug)]
pub struct Extensions {
    pub e_z: ProjectiveIrrSet,
    pub e_phi: ProjectiveIrrSet,
}

fn identity_set<F>(ext: CentralExtension, tables: &mut F) -> Result<ProjectiveIrrSet, ToriError>
where
    F: FnMut(&FiniteGroup) -> Result<Arc<CharacterTable>, ProjectiveError>,
{
    let m = ext.modulus() as i64;
    let table = tables(ext.group())?;
    Ok(irr_with_central_char_in(&ext, &QZ::new(1, m), table)?)
}

pub fn extensions(h: &HTable) -> Result<Extensions, ToriError> {
    extensions_with(h, |g| Ok(Arc::new(character_table(g)?)))
}

/// As [`extensions`], with the character tables of the extension groups taken from `tables`.
pub fn extensions_with<F>(h: &HTable, mut tables: F) -> Result<Extensions, ToriError>
where
    F: FnMut(&FiniteGroup) -> Result<Arc<CharacterTable>, ProjectiveError>,
{
    Ok(Extensions {
        e_z: identity_set(CentralExtension::new(h.alpha_bar.clone()), &mut tables)?,
        e_phi: identity_set(CentralExtension::new(h.beta_bar.clone()), &mut tables)?,
    })
}

/// `chi(x (x) a) = e(x) chi(0 (x) a)` for an identity-central-character irreducible.
pub fn twisted_value(set: &ProjectiveIrrSet, j: usize, x: &QZ, a: usize) -> Cyclotomic {
    let e = set.extension().section(a);
    &Cyclotomic::e(x) * set.value(j, e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketElement {
    /// Member index in `Irr(E^z, id)`.
    pub index: usize,
    pub dim: usize,
    /// `a -> chi(0 (x) a)` on the stabilizer.
    pub character: Vec<Cyclotomic>,
    /// Member index in `Irr(E^phi, id)` of `rho` with `chi_rho(h(a) (x) a) = chi(0 (x) a)`.
    pub partner: Option<usize>,
    /// The central `mu_m` acts by the identity character, so `T(F)` acts by `[phi]`.
    pub isotypic: bool,
    pub generic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    pub members: Vec<PacketElement>,
    pub stabilizer_order: usize,
    pub regular_classes: usize,
    pub sum_of_squares: usize,
    pub bijective: bool,
}

impl Packet {
    pub fn holds(&self) -> bool {
        self.bijective
            && self.sum_of_squares == self.stabilizer_order
            && self.members.len() == self.regular_classes
            && self.members.iter().all(|m| m.isotypic)
    }
}

fn is_isotypic(set: &ProjectiveIrrSet, j: usize) -> bool {
    let ext = set.extension();
    let id = ext.base().identity();
    let dim = set.degrees()[j] as i64;
    (0..ext.modulus()).all(|k| {
        let z = QZ::new(k as i64, ext.modulus() as i64);
        *set.value(j, ext.encode(&z, id)) == Cyclotomic::e(&z).scale_int(&dim.into())
    })
}

pub fn packet(case: &ToriCase, h: &HTable, ext: &Extensions) -> Packet {
    let stab = case.stabilizer();
    let trivial_z = case.z_is_trivial();
    let partners: Vec<Vec<Cyclotomic>> = (0..ext.e_phi.len())
        .map(|k| stab.elements().map(|a| twisted_value(&ext.e_phi, k, &h.values[a], a)).collect())
        .collect();
    let trivial_rho = (0..ext.e_phi.len()).find(|&k| stab.elements().all(|a| *ext.e_phi.value(k, a) == Cyclotomic::one()));
    let mut members = Vec::with_capacity(ext.e_z.len());
    for j in 0..ext.e_z.len() {
        let character = ext.e_z.projective_character(j);
        let partner = partners.iter().position(|p| *p == character);
        members.push(PacketElement {
            index: j,
            dim: ext.e_z.degrees()[j],
            partner,
            isotypic: is_isotypic(&ext.e_z, j),
            generic: trivial_z && partner.is_some() && partner == trivial_rho,
            character,
        });
    }
    let mut seen: Vec<usize> = members.iter().filter_map(|m| m.partner).collect();
    seen.sort_unstable();
    seen.dedup();
    let bijective = members.iter().all(|m| m.partner.is_some()) && seen.len() == members.len() && members.len() == ext.e_phi.len();
    Packet {
        stabilizer_order: stab.order(),
        regular_classes: h.alpha_bar.regular_class_count(),
        sum_of_squares: ext.e_z.sum_of_squares(),
        bijective,
        members,
    }
}
