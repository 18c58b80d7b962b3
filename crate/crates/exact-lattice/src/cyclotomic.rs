//! Exact elements of cyclotomic fields `Q(zeta_N)`.
//!
//! An element is a polynomial in `zeta_N` of degree below `phi(N)` with a
//! common positive denominator. Elements at different levels are compared and
//! combined by lifting both to the least common multiple of the levels.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qz::QZ;

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d);
            p = exact_div_monic(&p, &q);
        }
    }
    let arc = Arc::new(p);
    cyclo_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let dq = q.len() - 1;
    let mut r = p.to_vec();
    let dp = r.len() - 1;
    let mut out = vec![BigInt::zero(); dp - dq + 1];
    for k in (0..=dp - dq).rev() {
        let c = r[k + dq].clone();
        if c.is_zero() {
            continue;
        }
        for (i, qi) in q.iter().enumerate() {
            r[k + i] -= &c * qi;
        }
        out[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    out
}

/// Reduces an integer polynomial modulo the monic polynomial `m`, in place.
fn reduce_mod(p: &mut Vec<BigInt>, m: &[BigInt]) {
    let dm = m.len() - 1;
    while p.len() > dm {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = p.len() - dm;
        for i in 0..dm {
            if !m[i].is_zero() {
                p[k + i] -= &top * &m[i];
            }
        }
    }
    p.resize(dm, BigInt::zero());
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    level: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_integer(BigInt::from(v))
    }

    pub fn from_integer(v: BigInt) -> Self {
        Cyclotomic {
            level: 1,
            num: vec![v],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Cyclotomic {
            level: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
        .normalized()
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let m = cyclotomic_polynomial(n);
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        reduce_mod(&mut p, &m);
        Cyclotomic {
            level: n,
            num: p,
            den: BigInt::one(),
        }
        .normalized()
    }

    /// `e(x) = exp(2 pi i x)` for `x` in `Q/Z`.
    pub fn e(x: &QZ) -> Self {
        let n = x.denom().to_u64().expect("root of unity order too large");
        let k = x.numer().to_i64().unwrap();
        Self::root_of_unity(k, n)
    }

    pub fn from_coeffs(level: u64, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let m = cyclotomic_polynomial(level);
        reduce_mod(&mut num, &m);
        Cyclotomic { level, num, den }.normalized()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Rational coefficients of `1, zeta, ..., zeta^{phi(N)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |a, c| a.gcd(c));
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        }
        self
    }

    /// Rewrites the element at a multiple `n` of its level.
    pub fn lift(&self, n: u64) -> Self {
        assert!(n % self.level == 0, "lift target must be a multiple of the level");
        if n == self.level {
            return self.clone();
        }
        let step = (n / self.level) as usize;
        let mut p = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            p[i * step] = c.clone();
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(n));
        Cyclotomic {
            level: n,
            num: p,
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.level == b.level {
            return (a.clone(), b.clone());
        }
        let l = a.level.lcm(&b.level);
        (a.lift(l), b.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.level as usize;
        if n <= 2 {
            return self.clone();
        }
        let mut p = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            let e = (n - i) % n;
            p[e] += c;
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(self.level));
        Cyclotomic {
            level: self.level,
            num: p,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// The Galois automorphism `zeta_N -> zeta_N^k`, for `k` prime to the level.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.level as i64;
        assert!(k.gcd(&n) == 1, "galois exponent must be prime to the level");
        if n <= 2 {
            return self.clone();
        }
        let mut p = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(n) as usize;
            p[e] += c;
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(self.level));
        Cyclotomic {
            level: self.level,
            num: p,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Product of all Galois conjugates, a rational number.
    pub fn norm(&self) -> BigRational {
        let n = self.level as i64;
        let mut acc = self.clone();
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational().expect("the norm is rational")
    }

    /// Multiplicative inverse, `None` for zero. Uses `x^{-1} = (prod_{k != 1} x^{sigma_k}) / N(x)`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.level as i64;
        let mut rest = Cyclotomic::one();
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                rest = &rest * &self.galois(k);
            }
        }
        let nm = (&rest * self).to_rational().expect("the norm is rational");
        Some(rest.scale(&nm.recip()))
    }

    /// If the element is a root of unity `e(x)`, returns `x`.
    pub fn as_root_of_unity(&self) -> Option<QZ> {
        let m = self.level.lcm(&2);
        (0..m as i64).find(|&k| *self == Cyclotomic::root_of_unity(k, m)).map(|k| QZ::new(k, m as i64))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            level: self.level,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .normalized()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// Numerical value as a pair of floats; only for display and diagnostics.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.level as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * i as f64 / n;
            let cf = c.to_f64().unwrap_or(f64::NAN) / den;
            re += cf * a.cos();
            im += cf * a.sin();
        }
        (re, im)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        let (a, b) = (a.normalized(), b.normalized());
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Cyclotomic {
            level: a.level,
            num,
            den: &a.den * &b.den,
        }
        .normalized()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            level: self.level,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let mut p = vec![BigInt::zero(); a.num.len() + b.num.len()];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(a.level));
        Cyclotomic {
            level: a.level,
            num: p,
            den: &a.den * &b.den,
        }
        .normalized()
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{r}")?;
            } else {
                write!(f, "{r}*E({})^{i}", self.level)?;
            }
        }
        Ok(())
    }
}
