//! Exact character tables by Dixon's modular method.
//!
//! The class sums span the center of the group algebra. Their structure
//! constants are reduced modulo a prime `p = 1 mod exp(G)` with `p > 2 sqrt|G|`,
//! the common eigenvectors are found by splitting eigenspaces over `F_p`, and
//! every character value is lifted as a sum of `exp(G)`-th roots of unity from
//! the eigenvalue multiplicities of the acting element. The lifted table is
//! verified exactly before it is returned.

use std::fmt;

use exact_lattice::{BigInt, BigRational, Cyclotomic};
use finite_group::FiniteGroup;
use num_traits::{ToPrimitive, Zero};

/// Groups above this order are refused by [`character_table`].
pub const DEFAULT_MAX_ORDER: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    TooLarge { order: usize, bound: usize },
    SplitFailed(String),
    LiftFailed(String),
    VerificationFailed(String),
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::TooLarge { order, bound } => write!(f, "group of order {order} exceeds the bound {bound}"),
            TableError::SplitFailed(s) => write!(f, "eigenspace splitting failed: {s}"),
            TableError::LiftFailed(s) => write!(f, "lifting from F_p failed: {s}"),
            TableError::VerificationFailed(s) => write!(f, "table verification failed: {s}"),
        }
    }
}

impl std::error::Error for TableError {}

/// A cyclotomic integer `sum_k m_k zeta_e^k`, stored sparsely as `(k, m_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSum {
    pub level: usize,
    pub terms: Vec<(usize, i64)>,
}

impl RootSum {
    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let mut coeffs = vec![BigRational::zero(); self.level.max(1)];
        for &(k, m) in &self.terms {
            coeffs[k] += BigRational::from_integer(BigInt::from(m));
        }
        Cyclotomic::from_coeffs(self.level.max(1) as u64, &coeffs)
    }

    pub fn degree_part(&self) -> i64 {
        self.terms.iter().map(|t| t.1).sum()
    }
}

/// Accumulator in `Z[x]/(x^e - 1)`, reduced to `Q(zeta_e)` on demand.
struct GroupRingAcc {
    level: usize,
    coeffs: Vec<i64>,
}

impl GroupRingAcc {
    fn new(level: usize) -> Self {
        GroupRingAcc {
            level,
            coeffs: vec![0; level],
        }
    }

    /// Adds `w * a * conj(b)`.
    fn add_product_conj(&mut self, w: i64, a: &RootSum, b: &RootSum) {
        let e = self.level;
        for &(i, x) in &a.terms {
            for &(j, y) in &b.terms {
                self.coeffs[(i + e - j) % e] += w * x * y;
            }
        }
    }

    fn value(&self) -> Cyclotomic {
        RootSum {
            level: self.level,
            terms: self.coeffs.iter().enumerate().filter(|x| *x.1 != 0).map(|(k, &m)| (k, m)).collect(),
        }
        .to_cyclotomic()
    }
}

/// Plain data of a table, suitable for storage. Characters are rows; each
/// entry lists `(k, multiplicity)` pairs over `zeta_exponent^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    pub exponent: usize,
    pub values: Vec<Vec<Vec<(usize, i64)>>>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    exponent: usize,
    sums: Vec<Vec<RootSum>>,
    values: Vec<Vec<Cyclotomic>>,
    prime: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p = 1 mod e` with `p > 2 sqrt(order)`.
pub fn dixon_prime(order: usize, e: usize) -> u64 {
    let e = e as u64;
    let mut p = e + 1;
    loop {
        if is_prime(p) && p * p > 4 * order as u64 {
            return p;
        }
        p += e;
    }
}

fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let g = (2..p).find(|&g| factors.iter().all(|&q| powmod(g, n / q, p) != 1)).unwrap();
    powmod(g, n / e, p)
}

/// Null space over `F_p` of a `rows x cols` matrix.
fn kernel_mod_p(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = invmod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    let v = mulmod(f, a[r][j], p);
                    a[i][j] = (a[i][j] + p - v) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, TableError> {
    character_table_with_bound(g, DEFAULT_MAX_ORDER)
}

pub fn character_table_with_bound(g: &FiniteGroup, bound: usize) -> Result<CharacterTable, TableError> {
    let n = g.order();
    if n > bound {
        return Err(TableError::TooLarge { order: n, bound });
    }
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let e = g.exponent();
    let p = dixon_prime(n, e);
    let z = primitive_root_of_unity(e as u64, p);

    // a[i][j][l] = #{x in C_i : x^{-1} g_l in C_j}
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for (l, &gl) in reps.iter().enumerate() {
            for &x in &classes[i] {
                a[i][class_of[g.mul(g.inv(x), gl)]][l] += 1;
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    for mi in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // images M b for each basis vector b
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..k).map(|j| (0..k).fold(0u64, |s, l| (s + mulmod(mi[j][l], b[l], p)) % p)).collect())
                .collect();
            let d = basis.len();
            let mut found = 0;
            for lambda in 0..p {
                // (M - lambda) B, as a k x d matrix
                let mat: Vec<Vec<u64>> = (0..k)
                    .map(|j| (0..d).map(|c| (images[c][j] + p - mulmod(lambda, basis[c][j], p)) % p).collect())
                    .collect();
                let ker = kernel_mod_p(mat, d, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(
                    ker.iter()
                        .map(|c| (0..k).map(|j| (0..d).fold(0u64, |s, t| (s + mulmod(c[t], basis[t][j], p)) % p)).collect())
                        .collect(),
                );
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(TableError::SplitFailed(format!("an eigenspace of dimension {d} did not split")));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(TableError::SplitFailed("common eigenvectors are not separated".into()));
    }

    let inv_class: Vec<usize> = reps.iter().map(|&x| class_of[g.inv(x)]).collect();
    let einv = invmod(e as u64 % p, p);
    let mut sums = Vec::with_capacity(k);
    for s in &spaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(TableError::LiftFailed("eigenvector vanishes at the identity".into()));
        }
        let scale = invmod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mulmod(x, scale, p)).collect();
        let mut ssum = 0u64;
        for l in 0..k {
            let t = mulmod(mulmod(omega[l], omega[inv_class[l]], p), invmod(classes[l].len() as u64 % p, p), p);
            ssum = (ssum + t) % p;
        }
        if ssum == 0 {
            return Err(TableError::LiftFailed("degree equation degenerates".into()));
        }
        let d2 = mulmod(n as u64 % p, invmod(ssum, p), p);
        let d = (1..=p / 2)
            .find(|&d| mulmod(d, d, p) == d2)
            .ok_or_else(|| TableError::LiftFailed("degree is not a square mod p".into()))?;
        if n as u64 % d != 0 {
            return Err(TableError::LiftFailed(format!("degree {d} does not divide the order")));
        }
        let chi: Vec<u64> = (0..k)
            .map(|l| mulmod(mulmod(omega[l], d, p), invmod(classes[l].len() as u64 % p, p), p))
            .collect();
        let mut row = Vec::with_capacity(k);
        for &gl in &reps {
            let powers: Vec<u64> = (0..e).map(|j| chi[class_of[g.pow(gl, j as i64)]]).collect();
            let mut terms = Vec::new();
            for kk in 0..e {
                let mut m = 0u64;
                for (j, &cj) in powers.iter().enumerate() {
                    let zpow = powmod(z, ((e - (j * kk) % e) % e) as u64, p);
                    m = (m + mulmod(cj, zpow, p)) % p;
                }
                m = mulmod(m, einv, p);
                if m > d {
                    return Err(TableError::LiftFailed(format!("multiplicity {m} exceeds degree {d}")));
                }
                if m > 0 {
                    terms.push((kk, m as i64));
                }
            }
            row.push(RootSum { level: e, terms });
        }
        sums.push(row);
    }
    // trivial character first, then by degree
    sums.sort_by(|x, y| {
        let kx = (x[0].degree_part(), !x.iter().all(|s| s.terms == vec![(0, 1)]));
        let ky = (y[0].degree_part(), !y.iter().all(|s| s.terms == vec![(0, 1)]));
        kx.cmp(&ky).then_with(|| {
            let fx: Vec<&Vec<(usize, i64)>> = x.iter().map(|s| &s.terms).collect();
            let fy: Vec<&Vec<(usize, i64)>> = y.iter().map(|s| &s.terms).collect();
            fx.cmp(&fy)
        })
    });
    CharacterTable::assemble(g.clone(), classes, class_of, e, sums, p)
}

impl CharacterTable {
    fn assemble(
        group: FiniteGroup,
        classes: Vec<Vec<usize>>,
        class_of: Vec<usize>,
        exponent: usize,
        sums: Vec<Vec<RootSum>>,
        prime: u64,
    ) -> Result<Self, TableError> {
        let values = sums.iter().map(|r| r.iter().map(|s| s.to_cyclotomic()).collect()).collect();
        let t = CharacterTable {
            group,
            classes,
            class_of,
            exponent,
            sums,
            values,
            prime,
        };
        t.verify()?;
        Ok(t)
    }

    /// Rebuilds a table from stored data and re-verifies orthogonality.
    pub fn from_data(group: &FiniteGroup, data: &TableData) -> Result<Self, TableError> {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0usize; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let k = classes.len();
        if data.exponent != group.exponent() || data.values.len() != k || data.values.iter().any(|r| r.len() != k) {
            return Err(TableError::VerificationFailed("stored table has the wrong shape".into()));
        }
        if data.values.iter().flatten().flatten().any(|&(i, _)| i >= data.exponent) {
            return Err(TableError::VerificationFailed("root exponent out of range".into()));
        }
        let sums = data
            .values
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| RootSum {
                        level: data.exponent,
                        terms: t.clone(),
                    })
                    .collect()
            })
            .collect();
        Self::assemble(group.clone(), classes, class_of, data.exponent, sums, 0)
    }

    pub fn to_data(&self) -> TableData {
        TableData {
            exponent: self.exponent,
            values: self.sums.iter().map(|r| r.iter().map(|s| s.terms.clone()).collect()).collect(),
        }
    }

    /// Exact row and column orthogonality.
    pub fn verify(&self) -> Result<(), TableError> {
        let k = self.classes.len();
        let n = self.group.order() as i64;
        if self.sums.len() != k {
            return Err(TableError::VerificationFailed(format!("{} characters for {k} classes", self.sums.len())));
        }
        for i in 0..k {
            for j in i..k {
                let mut acc = GroupRingAcc::new(self.exponent);
                for l in 0..k {
                    acc.add_product_conj(self.classes[l].len() as i64, &self.sums[i][l], &self.sums[j][l]);
                }
                let want = if i == j { n } else { 0 };
                if acc.value() != Cyclotomic::from_i64(want) {
                    return Err(TableError::VerificationFailed(format!("rows {i} and {j}")));
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let mut acc = GroupRingAcc::new(self.exponent);
                for i in 0..k {
                    acc.add_product_conj(1, &self.sums[i][a], &self.sums[i][b]);
                }
                let want = if a == b { n / self.classes[a].len() as i64 } else { 0 };
                if acc.value() != Cyclotomic::from_i64(want) {
                    return Err(TableError::VerificationFailed(format!("columns {a} and {b}")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_characters(&self) -> usize {
        self.sums.len()
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// The prime used for the modular computation, 0 for loaded tables.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degree(&self, i: usize) -> usize {
        self.sums[i][0].degree_part() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_characters()).map(|i| self.degree(i)).collect()
    }

    pub fn value(&self, i: usize, class: usize) -> &Cyclotomic {
        &self.values[i][class]
    }

    /// `chi_i(g)` for a group element.
    pub fn at(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.values[i][self.class_of[g]]
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.values[i]
    }

    pub fn root_sum(&self, i: usize, class: usize) -> &RootSum {
        &self.sums[i][class]
    }

    /// Converts a function on elements to a function on classes, if it is a class function.
    pub fn class_function(&self, f: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        if f.len() != self.group.order() {
            return None;
        }
        let mut out = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let v = &f[c[0]];
            if c.iter().any(|&x| f[x] != *v) {
                return None;
            }
            out.push(v.clone());
        }
        Some(out)
    }

    /// `|G|^{-1} sum_g f1(g) conj(f2(g))` for functions given on classes.
    pub fn inner_product(&self, f1: &[Cyclotomic], f2: &[Cyclotomic]) -> Cyclotomic {
        let s: Cyclotomic = (0..self.classes.len())
            .map(|l| (&f1[l] * &f2[l].conj()).scale_int(&BigInt::from(self.classes[l].len())))
            .sum();
        s.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.group.order())))
    }

    /// Multiplicities of the irreducibles in a class function; `None` if some is not an integer.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Option<Vec<i64>> {
        (0..self.num_characters())
            .map(|i| self.inner_product(f, &self.values[i]).to_integer().and_then(|x| x.to_i64()))
            .collect()
    }

    /// Index of the given character (as values on classes), if irreducible.
    pub fn index_of(&self, f: &[Cyclotomic]) -> Option<usize> {
        (0..self.num_characters()).find(|&i| self.values[i] == f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let t = character_table(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(t.row(0), &[Cyclotomic::one(), Cyclotomic::one()]);
        assert_eq!(t.row(1), &[Cyclotomic::one(), Cyclotomic::from_i64(-1)]);
    }

    #[test]
    fn prime_choice() {
        // exponent 12, order 24: 13 > 2 sqrt(24)
        assert_eq!(dixon_prime(24, 12), 13);
        assert_eq!(dixon_prime(8, 2), 7);
        assert_eq!(dixon_prime(64, 8), 17);
    }

    #[test]
    fn size_bound() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(character_table_with_bound(&g, 5).unwrap_err(), TableError::TooLarge { order: 6, bound: 5 });
    }

    #[test]
    fn data_round_trip_and_corruption() {
        let g = FiniteGroup::symmetric(3);
        let t = character_table(&g).unwrap();
        let d = t.to_data();
        let t2 = CharacterTable::from_data(&g, &d).unwrap();
        assert_eq!(t2.degrees(), t.degrees());
        let mut bad = d.clone();
        bad.values[2][0] = vec![(0, 3)];
        assert!(CharacterTable::from_data(&g, &bad).is_err());
    }
}
