//! Based root data of semisimple groups, recorded through the Cartan matrix
//! `C[i][j] = <alpha_i, alpha_j^v>` and stored for the simply connected form,
//! where `X^*(T) = P` has the fundamental weights as basis.

use std::fmt;

use exact_lattice::{BigInt, BigRational, FGAbelian, IntMatrix};
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumError {
    NotSquare,
    BadDiagonal(usize),
    NotCartan(usize, usize),
    Shape(&'static str),
    Singular,
    NotAutomorphism(&'static str),
    UnknownType(String),
}

impl fmt::Display for DatumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumError::NotSquare => write!(f, "Cartan matrix must be square"),
            DatumError::BadDiagonal(i) => write!(f, "diagonal entry {i} is not 2"),
            DatumError::NotCartan(i, j) => write!(f, "entries ({i}, {j}) and ({j}, {i}) are not the pattern of a Cartan matrix"),
            DatumError::Shape(s) => write!(f, "shape mismatch: {s}"),
            DatumError::Singular => write!(f, "Cartan matrix is singular"),
            DatumError::NotAutomorphism(s) => write!(f, "not a diagram automorphism: {s}"),
            DatumError::UnknownType(s) => write!(f, "unknown Cartan type {s}"),
        }
    }
}

impl std::error::Error for DatumError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Bourbaki numbering, zero based.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[i][j] = cij;
            c[j][i] = cji;
        };
        match *self {
            CartanType::A(n) => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
            CartanType::B(n) => {
                (1..n.saturating_sub(1)).for_each(|i| link(i - 1, i, -1, -1));
                if n >= 2 {
                    // alpha_n short
                    link(n - 2, n - 1, -2, -1);
                }
            }
            CartanType::C(n) => {
                (1..n.saturating_sub(1)).for_each(|i| link(i - 1, i, -1, -1));
                if n >= 2 {
                    link(n - 2, n - 1, -1, -2);
                }
            }
            CartanType::D(n) => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                // 1-3-4-5-..., 2-4
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (3..r).for_each(|i| link(i - 1, i, -1, -1));
            }
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            CartanType::G2 => link(0, 1, -1, -3),
        }
        c
    }

    /// The nontrivial diagram automorphism of order two, where there is one.
    pub fn diagram_flip(&self) -> Option<Vec<usize>> {
        match *self {
            CartanType::A(n) if n >= 2 => Some((0..n).rev().collect()),
            CartanType::D(n) if n >= 4 => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            CartanType::E6 => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        }
    }

    /// Labels such as `A3`, `D4`, `E6`.
    pub fn parse(s: &str) -> Result<Self, DatumError> {
        let s = s.trim();
        let bad = || DatumError::UnknownType(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match (head, n) {
            ("A", n) if n >= 1 => CartanType::A(n),
            ("B", n) if n >= 2 => CartanType::B(n),
            ("C", n) if n >= 2 => CartanType::C(n),
            ("D", n) if n >= 4 => CartanType::D(n),
            ("E", 6) => CartanType::E6,
            ("E", 7) => CartanType::E7,
            ("E", 8) => CartanType::E8,
            ("F", 4) => CartanType::F4,
            ("G", 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
            CartanType::E8 => write!(f, "E8"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// Simply connected based root datum. Weights are written in the basis of
/// fundamental weights, roots in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
}

impl BasedRootDatum {
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, DatumError> {
        let r = cartan.len();
        if cartan.iter().any(|row| row.len() != r) {
            return Err(DatumError::NotSquare);
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(DatumError::BadDiagonal(i));
            }
            for j in 0..r {
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if i != j && (a > 0 || b > 0 || (a == 0) != (b == 0) || a * b > 3) {
                    return Err(DatumError::NotCartan(i, j));
                }
            }
        }
        if r > 0 && IntMatrix::from_i64(&cartan.iter().map(|v| v.as_slice()).collect::<Vec<_>>()).determinant().is_zero() {
            return Err(DatumError::Singular);
        }
        let positive = positive_roots(&cartan);
        Ok(BasedRootDatum { cartan, positive })
    }

    pub fn of_type(t: CartanType) -> Self {
        Self::from_cartan(t.cartan_matrix()).expect("standard Cartan matrix")
    }

    /// Reads the Cartan matrix off simple roots (rows, in `X^*` coordinates)
    /// and simple coroots (rows, in `X_*` coordinates) of any semisimple datum.
    pub fn from_simple_roots(roots: &[Vec<i64>], coroots: &[Vec<i64>]) -> Result<Self, DatumError> {
        if roots.len() != coroots.len() {
            return Err(DatumError::Shape("as many coroots as roots"));
        }
        let n = roots.first().map(|v| v.len()).unwrap_or(0);
        if roots.iter().chain(coroots).any(|v| v.len() != n) {
            return Err(DatumError::Shape("all vectors in one lattice"));
        }
        let cartan: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| coroots.iter().map(|c| a.iter().zip(c).map(|(x, y)| x * y).sum()).collect())
            .collect();
        Self::from_cartan(cartan)
    }

    pub fn product(&self, other: &Self) -> Self {
        let (r1, r2) = (self.rank(), other.rank());
        let mut c = vec![vec![0i64; r1 + r2]; r1 + r2];
        for i in 0..r1 {
            c[i][..r1].copy_from_slice(&self.cartan[i]);
        }
        for i in 0..r2 {
            c[r1 + i][r1..].copy_from_slice(&other.cartan[i]);
        }
        Self::from_cartan(c).expect("product of Cartan matrices")
    }

    pub fn power(&self, n: usize) -> Self {
        let mut out = Self::from_cartan(Vec::new()).unwrap();
        for _ in 0..n {
            out = out.product(self);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `alpha_i` in the basis of fundamental weights (row `i` of the Cartan matrix).
    pub fn simple_root_weights(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    /// `<omega_i, alpha_j^v>`, which is `delta_ij` by construction of the basis.
    pub fn weight_coroot_pairing(&self, i: usize, j: usize) -> i64 {
        i64::from(i == j)
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Root written in simple-root coordinates, converted to weight coordinates.
    pub fn root_in_weights(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|j| (0..self.rank()).map(|k| beta[k] * self.cartan[k][j]).sum()).collect()
    }

    /// Half the sum of the positive roots in weight coordinates.
    pub fn rho(&self) -> Vec<BigRational> {
        let r = self.rank();
        let mut s = vec![0i64; r];
        for beta in &self.positive {
            for (x, y) in s.iter_mut().zip(self.root_in_weights(beta)) {
                *x += y;
            }
        }
        s.into_iter().map(|x| BigRational::new(BigInt::from(x), BigInt::from(2))).collect()
    }

    /// `X^*(Z) = P/Q`.
    pub fn center_characters(&self) -> FGAbelian {
        let r = self.rank();
        if r == 0 {
            return FGAbelian::trivial();
        }
        let mut rel = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                rel[(j, i)] = BigInt::from(self.cartan[i][j]);
            }
        }
        FGAbelian::from_relations(r, &rel)
    }

    pub fn center_order(&self) -> usize {
        self.center_characters().order().and_then(|o| o.to_usize()).expect("finite center")
    }

    /// Checks that `perm` preserves the Cartan matrix.
    pub fn check_automorphism(&self, perm: &[usize]) -> Result<(), DatumError> {
        let r = self.rank();
        if perm.len() != r {
            return Err(DatumError::NotAutomorphism("wrong length"));
        }
        let mut seen = vec![false; r];
        for &p in perm {
            if p >= r || seen[p] {
                return Err(DatumError::NotAutomorphism("not a permutation"));
            }
            seen[p] = true;
        }
        for i in 0..r {
            for j in 0..r {
                if self.cartan[perm[i]][perm[j]] != self.cartan[i][j] {
                    return Err(DatumError::NotAutomorphism("Cartan matrix not preserved"));
                }
            }
        }
        Ok(())
    }

    /// Sub-datum on a set of nodes, with the Cartan matrix restricted.
    pub fn sub_datum(&self, nodes: &[usize]) -> Self {
        let c = nodes.iter().map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        Self::from_cartan(c).expect("principal submatrix of a Cartan matrix")
    }
}

/// Root strings: `beta + alpha_i` is a root iff `p - <beta, alpha_i^v> > 0`
/// where `p` is the largest `k` with `beta - k alpha_i` a root.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut roots = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|k| beta[k] * cartan[k][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}
