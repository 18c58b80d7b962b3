//! Finitely generated abelian groups with normal forms.
//!
//! A group is presented as `Z^g / R` where the columns of `R` are relations.
//! After Smith reduction every element has a unique normal form: a vector whose
//! first entries are residues modulo the torsion invariants and whose remaining
//! entries are free integer coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;
use crate::solve::{kernel_basis, solve_integer, SolveError};

#[derive(Clone, Debug)]
pub struct FGAbelian {
    ambient: usize,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Positions in Smith coordinates that carry torsion (`d_i > 1`).
    tors_pos: Vec<usize>,
    torsion: Vec<BigInt>,
    /// Positions in Smith coordinates that are free.
    free_pos: Vec<usize>,
}

impl FGAbelian {
    /// `Z^g / (column span of relations)`.
    pub fn from_relations(ambient: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), ambient);
        let s = smith_normal_form(relations);
        let mut tors_pos = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            if !d.is_one() {
                tors_pos.push(i);
                torsion.push(d.clone());
            }
        }
        FGAbelian {
            ambient,
            u: s.u,
            u_inv: s.u_inv,
            tors_pos,
            torsion,
            free_pos: (s.diag.len()..ambient).collect(),
        }
    }

    /// `Z/d_1 + ... + Z/d_k + Z^free`, where an invariant of 0 also means a free factor.
    pub fn from_invariants(invariants: &[BigInt], free: usize) -> Self {
        let g = invariants.len() + free;
        let mut rel = IntMatrix::zeros(g, invariants.len());
        for (i, d) in invariants.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Self::from_relations(g, &rel)
    }

    pub fn trivial() -> Self {
        Self::from_relations(0, &IntMatrix::zeros(0, 0))
    }

    /// Dimension of the ambient lattice the presentation lives in.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_pos.len()
    }

    /// Length of a normal-form vector.
    pub fn nf_len(&self) -> usize {
        self.torsion.len() + self.free_pos.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_pos.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.nf_len() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
        } else {
            None
        }
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, d| a.lcm(d))
    }

    /// Normal form of an ambient vector.
    pub fn normal_form(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient, "vector not in ambient lattice");
        let y = self.u.mul_vec(x);
        let mut out = Vec::with_capacity(self.nf_len());
        for (p, d) in self.tors_pos.iter().zip(&self.torsion) {
            out.push(y[*p].mod_floor(d));
        }
        for p in &self.free_pos {
            out.push(y[*p].clone());
        }
        out
    }

    /// Reduces a normal-form-shaped vector (residues may be out of range).
    pub fn reduce(&self, nf: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(nf.len(), self.nf_len());
        let mut out = nf.to_vec();
        for (i, d) in self.torsion.iter().enumerate() {
            out[i] = out[i].mod_floor(d);
        }
        out
    }

    /// An ambient representative of a normal form.
    pub fn representative(&self, nf: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(nf.len(), self.nf_len());
        let mut y = vec![BigInt::zero(); self.ambient];
        for (i, p) in self.tors_pos.iter().enumerate() {
            y[*p] = nf[i].clone();
        }
        for (i, p) in self.free_pos.iter().enumerate() {
            y[*p] = nf[self.torsion.len() + i].clone();
        }
        self.u_inv.mul_vec(&y)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.normal_form(x).iter().all(|v| v.is_zero())
    }

    pub fn zero_nf(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.nf_len()]
    }

    pub fn add_nf(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg_nf(&self, a: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    /// The standard generators in normal-form coordinates.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        (0..self.nf_len())
            .map(|i| {
                let mut v = self.zero_nf();
                v[i] = BigInt::one();
                v
            })
            .collect()
    }

    /// Lists every element of a finite group in normal form, in mixed-radix order.
    /// Returns `None` for infinite groups or groups above `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let ord = self.order()?.to_usize()?;
        if ord > limit {
            return None;
        }
        let radices: Vec<usize> = self.torsion.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(ord);
        let mut cur = vec![0usize; radices.len()];
        for _ in 0..ord {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
            for (k, r) in radices.iter().enumerate() {
                cur[k] += 1;
                if cur[k] < *r {
                    break;
                }
                cur[k] = 0;
            }
        }
        Some(out)
    }

    /// Matrix whose columns generate the relations in normal-form coordinates.
    fn nf_relations(&self) -> IntMatrix {
        let n = self.nf_len();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Whether `x` (normal form) lies in the subgroup generated by `gens` (normal forms).
    pub fn subgroup_contains(&self, gens: &[Vec<BigInt>], x: &[BigInt]) -> bool {
        let n = self.nf_len();
        let g = IntMatrix::from_columns(gens, n);
        let m = IntMatrix::hstack(&[&g, &self.nf_relations()]);
        solve_integer(&m, x).is_ok()
    }

    /// The subgroup generated by `gens`, presented on those generators.
    pub fn subgroup(&self, gens: &[Vec<BigInt>]) -> FGAbelian {
        let k = gens.len();
        let n = self.nf_len();
        let g = IntMatrix::from_columns(gens, n);
        let m = IntMatrix::hstack(&[&g, &self.nf_relations()]);
        let ker = kernel_basis(&m);
        let rel_cols: Vec<Vec<BigInt>> = ker.iter().map(|v| v[..k].to_vec()).collect();
        FGAbelian::from_relations(k, &IntMatrix::from_columns(&rel_cols, k))
    }

    pub fn same_subgroup(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
        a.iter().all(|x| self.subgroup_contains(b, x)) && b.iter().all(|x| self.subgroup_contains(a, x))
    }

    pub fn isomorphic(&self, other: &FGAbelian) -> bool {
        self.torsion == other.torsion && self.free_rank() == other.free_rank()
    }

    /// Additive order of an element; `None` for elements of infinite order.
    pub fn element_order(&self, nf: &[BigInt]) -> Option<BigInt> {
        let t = self.torsion.len();
        if nf[t..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (x, d) in nf[..t].iter().zip(&self.torsion) {
            let g = x.gcd(d);
            ord = ord.lcm(&(d / g));
        }
        Some(ord)
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank() > 0 {
            parts.push(if self.free_rank() == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank())
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// `Z / B` for a sublattice pair `B <= Z <= Z^N`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    /// Basis of `Z`, as the columns of an `N x z` matrix.
    z_basis: IntMatrix,
    group: FGAbelian,
}

impl Subquotient {
    /// `z_basis` spans `Z`; each boundary generator must lie in `Z`.
    pub fn new(ambient: usize, z_basis: Vec<Vec<BigInt>>, boundaries: &[Vec<BigInt>]) -> Result<Self, SolveError> {
        let zb = IntMatrix::from_columns(&z_basis, ambient);
        let k = z_basis.len();
        let mut rel_cols = Vec::with_capacity(boundaries.len());
        for b in boundaries {
            rel_cols.push(solve_integer(&zb, b)?);
        }
        let rel = IntMatrix::from_columns(&rel_cols, k);
        Ok(Subquotient {
            ambient,
            z_basis: zb,
            group: FGAbelian::from_relations(k, &rel),
        })
    }

    pub fn group(&self) -> &FGAbelian {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn in_numerator(&self, x: &[BigInt]) -> bool {
        if self.z_basis.cols() == 0 {
            return x.iter().all(|v| v.is_zero());
        }
        solve_integer(&self.z_basis, x).is_ok()
    }

    /// Normal form of the class of `x`. Fails when `x` is not in `Z`.
    pub fn classify(&self, x: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
        if x.len() != self.ambient {
            return Err(SolveError::DimensionMismatch {
                expected: self.ambient,
                got: x.len(),
            });
        }
        if self.z_basis.cols() == 0 {
            return if x.iter().all(|v| v.is_zero()) {
                Ok(vec![])
            } else {
                Err(SolveError::NoSolution)
            };
        }
        let c = solve_integer(&self.z_basis, x)?;
        Ok(self.group.normal_form(&c))
    }

    /// An element of `Z` representing the class with the given normal form.
    pub fn representative(&self, nf: &[BigInt]) -> Vec<BigInt> {
        let c = self.group.representative(nf);
        if c.is_empty() {
            return vec![BigInt::zero(); self.ambient];
        }
        self.z_basis.mul_vec(&c)
    }

    pub fn is_boundary(&self, x: &[BigInt]) -> bool {
        match self.classify(x) {
            Ok(nf) => nf.iter().all(|v| v.is_zero()),
            Err(_) => false,
        }
    }
}

/// A homomorphism between finitely generated abelian groups, in normal-form coordinates.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FGAbelian,
    pub target: FGAbelian,
    /// Image of the i-th standard generator of the source.
    pub images: Vec<Vec<BigInt>>,
}

impl AbHom {
    pub fn new(source: FGAbelian, target: FGAbelian, images: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(images.len(), source.nf_len());
        let images = images.iter().map(|v| target.reduce(v)).collect();
        AbHom { source, target, images }
    }

    /// Checks that the images respect the torsion relations of the source.
    pub fn is_well_defined(&self) -> bool {
        self.source.torsion_invariants().iter().enumerate().all(|(i, d)| {
            let v: Vec<BigInt> = self.images[i].iter().map(|x| x * d).collect();
            self.target.reduce(&v).iter().all(|x| x.is_zero())
        })
    }

    pub fn apply(&self, nf: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.target.zero_nf();
        for (c, img) in nf.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(img) {
                *a += c * b;
            }
        }
        self.target.reduce(&acc)
    }

    /// Generators of the kernel, in source normal-form coordinates.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        let s = self.source.nf_len();
        let t = self.target.nf_len();
        let m = IntMatrix::from_columns(&self.images, t);
        let full = IntMatrix::hstack(&[&m, &self.target.nf_relations()]);
        kernel_basis(&full)
            .into_iter()
            .map(|v| self.source.reduce(&v[..s]))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn image_generators(&self) -> Vec<Vec<BigInt>> {
        self.images.clone()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .generators()
            .iter()
            .all(|g| self.target.subgroup_contains(&self.images, g))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Absolute value helper used by callers that print invariants.
pub fn abs_vec(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.abs()).collect()
}
