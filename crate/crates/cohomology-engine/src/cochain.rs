use std::fmt;

use exact_lattice::matrix::{vadd, vneg, vsub, vzero};
use exact_lattice::BigInt;
use finite_group::GroupAction;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CochainError {
    WrongSize { expected: usize, got: usize },
    DegreeOutOfRange(i32),
    NotCocycle,
    NotEquivariant,
    PairingMismatch,
    ModuleMismatch,
}

impl fmt::Display for CochainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CochainError::WrongSize { expected, got } => write!(f, "expected {expected} entries, got {got}"),
            CochainError::DegreeOutOfRange(d) => write!(f, "degree {d} outside the supported range -1..=2"),
            CochainError::NotCocycle => write!(f, "input is not a cocycle"),
            CochainError::NotEquivariant => write!(f, "map is not equivariant"),
            CochainError::PairingMismatch => write!(f, "coefficient pairing does not match the modules"),
            CochainError::ModuleMismatch => write!(f, "cochains live in different modules"),
        }
    }
}

impl std::error::Error for CochainError {}

/// An inhomogeneous `n`-cochain `Q^n -> X` stored as a full value table.
///
/// The tuple `(g_1, ..., g_n)` lives at index `((g_1 |Q| + g_2) |Q| + ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    module: GroupAction,
    values: Vec<Vec<BigInt>>,
}

pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub fn index_tuple(order: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for k in (0..degree).rev() {
        t[k] = idx % order;
        idx /= order;
    }
    t
}

impl Cochain {
    pub fn zero(degree: usize, module: GroupAction) -> Self {
        let n = module.group().order().pow(degree as u32);
        let r = module.rank();
        Cochain {
            degree,
            module,
            values: vec![vzero(r); n],
        }
    }

    pub fn from_fn(degree: usize, module: GroupAction, f: impl Fn(&[usize]) -> Vec<BigInt>) -> Self {
        let q = module.group().order();
        let n = q.pow(degree as u32);
        let values = (0..n)
            .map(|i| {
                let v = f(&index_tuple(q, degree, i));
                assert_eq!(v.len(), module.rank(), "cochain value has the wrong rank");
                v
            })
            .collect();
        Cochain { degree, module, values }
    }

    pub fn from_values(degree: usize, module: GroupAction, values: Vec<Vec<BigInt>>) -> Result<Self, CochainError> {
        let n = module.group().order().pow(degree as u32);
        if values.len() != n {
            return Err(CochainError::WrongSize {
                expected: n,
                got: values.len(),
            });
        }
        if values.iter().any(|v| v.len() != module.rank()) {
            return Err(CochainError::WrongSize {
                expected: module.rank(),
                got: values.iter().map(|v| v.len()).find(|&l| l != module.rank()).unwrap(),
            });
        }
        Ok(Cochain { degree, module, values })
    }

    /// A 0-cochain is just an element of the module.
    pub fn constant(module: GroupAction, m: Vec<BigInt>) -> Self {
        Cochain {
            degree: 0,
            module,
            values: vec![m],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &GroupAction {
        &self.module
    }

    pub fn at(&self, tuple: &[usize]) -> &Vec<BigInt> {
        assert_eq!(tuple.len(), self.degree);
        &self.values[tuple_index(self.module.group().order(), tuple)]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let q = self.module.group().order();
        let e = self.module.group().identity();
        (0..self.values.len()).all(|i| {
            let t = index_tuple(q, self.degree, i);
            !t.contains(&e) || self.values[i].iter().all(|x| x.is_zero())
        })
    }

    /// The inhomogeneous coboundary
    /// `dx(g_1..g_{n+1}) = g_1 x(g_2..) + sum_i (-1)^i x(.., g_i g_{i+1}, ..) + (-1)^{n+1} x(g_1..g_n)`.
    pub fn differential(&self) -> Cochain {
        let g = self.module.group().clone();
        let n = self.degree;
        Cochain::from_fn(n + 1, self.module.clone(), |t| {
            let mut acc = self.module.act(t[0], self.at(&t[1..]));
            for i in 1..=n {
                let mut s = Vec::with_capacity(n);
                s.extend_from_slice(&t[..i - 1]);
                s.push(g.mul(t[i - 1], t[i]));
                s.extend_from_slice(&t[i + 1..]);
                let v = self.at(&s);
                acc = if i % 2 == 1 { vsub(&acc, v) } else { vadd(&acc, v) };
            }
            let last = self.at(&t[..n]);
            if (n + 1) % 2 == 1 {
                vsub(&acc, last)
            } else {
                vadd(&acc, last)
            }
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().values.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            module: self.module.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| vadd(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            module: self.module.clone(),
            values: self.values.iter().map(|a| vneg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    /// Post-composition with an equivariant map of modules.
    pub fn map(&self, f: &exact_lattice::IntMatrix, target: &GroupAction) -> Cochain {
        Cochain {
            degree: self.degree,
            module: target.clone(),
            values: self.values.iter().map(|v| f.mul_vec(v)).collect(),
        }
    }

    /// Flattened coordinates on the normalized part (tuples avoiding the identity),
    /// in index order. This is the ambient lattice used by the Tate groups.
    pub fn normalized_coords(&self) -> Vec<BigInt> {
        let q = self.module.group().order();
        let e = self.module.group().identity();
        let mut out = Vec::new();
        for i in 0..self.values.len() {
            let t = index_tuple(q, self.degree, i);
            if !t.contains(&e) {
                out.extend(self.values[i].iter().cloned());
            }
        }
        out
    }

    pub fn from_normalized_coords(degree: usize, module: GroupAction, coords: &[BigInt]) -> Cochain {
        let q = module.group().order();
        let e = module.group().identity();
        let r = module.rank();
        let mut pos = 0;
        let mut values = Vec::with_capacity(q.pow(degree as u32));
        for i in 0..q.pow(degree as u32) {
            let t = index_tuple(q, degree, i);
            if t.contains(&e) {
                values.push(vzero(r));
            } else {
                values.push(coords[pos..pos + r].to_vec());
                pos += r;
            }
        }
        assert_eq!(pos, coords.len(), "coordinate vector has the wrong length");
        Cochain { degree, module, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }
}

/// Sum of a list of integer vectors of equal length.
pub(crate) fn vsum(r: usize, it: impl IntoIterator<Item = Vec<BigInt>>) -> Vec<BigInt> {
    it.into_iter().fold(vzero(r), |acc, v| vadd(&acc, &v))
}

#[allow(dead_code)]
pub(crate) fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}
