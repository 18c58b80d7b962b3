//! Projective characters of `A` as characters of `mu_m x_alpha A` with a
//! prescribed central character, and the twisted orthogonality relation.

use std::fmt;
use std::sync::Arc;

use exact_lattice::{BigInt, Cyclotomic, QZ};
use finite_group::{CentralExtension, Cocycle2, FiniteGroup};

use crate::table::{CharacterTable, TableError};

/// Every report of this module is about finite groups only.
pub const FINITE_MODEL_NOTE: &str = "finite-group specialization";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveError {
    NotACharacter { psi: QZ, modulus: usize },
    Table(TableError),
    NotCentral(usize),
    NotCyclicCenter,
}

impl fmt::Display for ProjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveError::NotACharacter { psi, modulus } => {
                write!(f, "{psi} is not the value of a character of mu_{modulus} on its generator")
            }
            ProjectiveError::Table(e) => write!(f, "{e}"),
            ProjectiveError::NotCentral(g) => write!(f, "element {g} is not central"),
            ProjectiveError::NotCyclicCenter => write!(f, "the given central subgroup is not cyclic"),
        }
    }
}

impl std::error::Error for ProjectiveError {}

impl From<TableError> for ProjectiveError {
    fn from(e: TableError) -> Self {
        ProjectiveError::Table(e)
    }
}

/// `psi(k/m) = k * psi_gen`.
fn psi_of(psi_gen: &QZ, z: &QZ, m: usize) -> QZ {
    let k = z.numer() * (BigInt::from(m) / z.denom());
    psi_gen.scale(&k)
}

/// The irreducibles of `E = mu_m x_alpha A` whose central character is `psi`,
/// where `psi` is recorded by its value on the generator `1/m`.
#[derive(Clone, Debug)]
pub struct ProjectiveIrrSet {
    extension: CentralExtension,
    psi: QZ,
    table: Arc<CharacterTable>,
    members: Vec<usize>,
}

/// Indices of the irreducibles of `E` with `chi(1/m) = chi(1) e(psi)`. No validity check on `psi`.
pub fn central_character_filter(ext: &CentralExtension, table: &CharacterTable, psi: &QZ) -> Vec<usize> {
    let z = ext.central(&QZ::new(1, ext.modulus() as i64));
    let id = ext.group().identity();
    let ez = Cyclotomic::e(psi);
    (0..table.num_characters())
        .filter(|&i| *table.at(i, z) == &ez * table.at(i, id))
        .collect()
}

pub fn irr_with_central_char(ext: &CentralExtension, psi: &QZ) -> Result<ProjectiveIrrSet, ProjectiveError> {
    let table = Arc::new(crate::table::character_table(ext.group())?);
    irr_with_central_char_in(ext, psi, table)
}

/// Same as [`irr_with_central_char`] with a precomputed table of `E`.
pub fn irr_with_central_char_in(ext: &CentralExtension, psi: &QZ, table: Arc<CharacterTable>) -> Result<ProjectiveIrrSet, ProjectiveError> {
    let m = ext.modulus();
    if !psi.scale_i64(m as i64).is_zero() {
        return Err(ProjectiveError::NotACharacter { psi: psi.clone(), modulus: m });
    }
    let members = central_character_filter(ext, &table, psi);
    Ok(ProjectiveIrrSet {
        extension: ext.clone(),
        psi: psi.clone(),
        table,
        members,
    })
}

impl ProjectiveIrrSet {
    pub fn extension(&self) -> &CentralExtension {
        &self.extension
    }

    pub fn base(&self) -> &FiniteGroup {
        self.extension.base()
    }

    pub fn psi(&self) -> &QZ {
        &self.psi
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.members.iter().map(|&i| self.table.degree(i)).collect()
    }

    /// `psi(z)` for a central element given as `Q/Z` value in `mu_m`.
    pub fn psi_at(&self, z: &QZ) -> QZ {
        psi_of(&self.psi, z, self.extension.modulus())
    }

    /// The pushed-out cocycle `psi o alpha` on `A`.
    pub fn cocycle(&self) -> Cocycle2 {
        let alpha = self.extension.cocycle();
        Cocycle2::from_fn(self.base().clone(), |a, b| self.psi_at(&alpha.at(a, b))).expect("push-out of a cocycle")
    }

    /// `chi_tau(e)` for an element of `E`.
    pub fn value(&self, j: usize, e: usize) -> &Cyclotomic {
        self.table.at(self.members[j], e)
    }

    /// The projective character `a -> chi_tau(s(a))`.
    pub fn projective_character(&self, j: usize) -> Vec<Cyclotomic> {
        self.base()
            .elements()
            .map(|a| self.value(j, self.extension.section(a)).clone())
            .collect()
    }

    /// Checks `f(bab^{-1}) e(psi(z)) = f(a)` where `s(b)s(a)s(b)^{-1} = z s(bab^{-1})`.
    pub fn is_alpha_class_function(&self, f: &[Cyclotomic]) -> bool {
        let e = self.extension.group();
        let a_grp = self.base();
        a_grp.elements().all(|a| {
            a_grp.elements().all(|b| {
                let x = e.conjugate(self.extension.section(b), self.extension.section(a));
                let (z, c) = self.extension.decode(x);
                c == a_grp.conjugate(b, a) && &f[c] * &Cyclotomic::e(&self.psi_at(&z)) == f[a]
            })
        })
    }

    /// Number of conjugacy classes of `A` that are regular for `psi o alpha`.
    pub fn regular_class_count(&self) -> usize {
        self.cocycle().regular_class_count()
    }

    pub fn sum_of_squares(&self) -> usize {
        self.degrees().iter().map(|d| d * d).sum()
    }
}

/// Whether `e` is `psi`-centralizing, with a witness `e'` when it is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCentral {
    pub element: usize,
    pub psi: QZ,
    pub centralizing: bool,
    pub witness: Option<usize>,
}

pub fn psi_central(set: &ProjectiveIrrSet, e: usize) -> PsiCentral {
    let ext = set.extension();
    let g = ext.group();
    let witness = g.elements().find(|&x| {
        let c = g.commutator(x, e);
        ext.is_central_value(c) && !set.psi_at(&ext.decode(c).0).is_zero()
    });
    PsiCentral {
        element: e,
        psi: set.psi.clone(),
        centralizing: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthBranch {
    /// `g ebar' g^{-1} = ebar^{-1}`; the formula is applied to `e * s(g) e' s(g)^{-1}`, central.
    Conjugate { g: usize, central: QZ },
    /// `ebar^{-1}` is not conjugate to `ebar'`.
    Vanishing,
}

#[derive(Clone, Debug)]
pub struct OrthReport {
    pub centralizing: PsiCentral,
    pub table_side: Cyclotomic,
    pub formula_side: Cyclotomic,
    pub branch: OrthBranch,
    pub agree: bool,
    pub note: &'static str,
}

impl OrthReport {
    /// The relation holds when `e` is `psi`-centralizing and both sides agree.
    pub fn holds(&self) -> bool {
        self.centralizing.centralizing && self.agree
    }
}

/// Both sides of `sum_tau chi_tau(e) chi_tau(e')` against the closed formula.
pub fn twisted_orthogonality(set: &ProjectiveIrrSet, e: usize, e2: usize) -> OrthReport {
    let ext = set.extension();
    let g = ext.group();
    let a_grp = ext.base();
    let centralizing = psi_central(set, e);
    let table_side: Cyclotomic = (0..set.len()).map(|j| set.value(j, e) * set.value(j, e2)).sum();
    let (eb, eb2) = (ext.project(e), ext.project(e2));
    let target = a_grp.inv(eb);
    let conj = if a_grp.conjugate(a_grp.identity(), eb2) == target {
        Some(a_grp.identity())
    } else {
        a_grp.conjugator(eb2, target)
    };
    let (branch, formula_side) = match conj {
        None => (OrthBranch::Vanishing, Cyclotomic::zero()),
        Some(c) => {
            let sc = ext.section(c);
            let x = g.mul(e, g.conjugate(sc, e2));
            debug_assert!(ext.is_central_value(x));
            let z = ext.decode(x).0;
            let zsize = a_grp.centralizer(eb).len() as i64;
            let val = Cyclotomic::e(&set.psi_at(&z)).scale_int(&BigInt::from(zsize));
            (OrthBranch::Conjugate { g: c, central: z }, val)
        }
    };
    let agree = table_side == formula_side;
    OrthReport {
        centralizing,
        table_side,
        formula_side,
        branch,
        agree,
        note: FINITE_MODEL_NOTE,
    }
}

/// Reads off the cocycle of an abstract central extension `1 -> <z> -> E -> A -> 1`.
///
/// `z` must be central; `A = E/<z>` is returned with the cocycle
/// `alpha(a, b) = k/m` where `s(a)s(b)s(ab)^{-1} = z^k`, `s` picking the first
/// element of each coset.
pub fn cocycle_from_extension(big: &FiniteGroup, z: usize) -> Result<(FiniteGroup, Cocycle2, Vec<usize>), ProjectiveError> {
    if !big.elements().all(|g| big.commutes(g, z)) {
        return Err(ProjectiveError::NotCentral(z));
    }
    let m = big.element_order(z);
    let zsub: Vec<usize> = (0..m).map(|k| big.pow(z, k as i64)).collect();
    let (quot, proj) = big.quotient(&zsub).map_err(|_| ProjectiveError::NotCentral(z))?;
    let cosets = big.right_cosets(&zsub);
    let section: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let power_of = |x: usize| zsub.iter().position(|&y| y == x).expect("value lies in the central subgroup");
    let alpha = Cocycle2::from_fn(quot.clone(), |a, b| {
        let x = big.mul(big.mul(section[a], section[b]), big.inv(section[quot.mul(a, b)]));
        QZ::new(power_of(x) as i64, m as i64)
    })
    .expect("extension cocycle");
    debug_assert_eq!(proj.len(), big.order());
    Ok((quot, alpha, section))
}
