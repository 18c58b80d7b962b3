//! `I = J^n` with `Theta(j_0, .., j_{n-1}) = (j_1, .., j_{n-1}, theta(j_0))`:
//! the trace identity for the cyclic-shift intertwiner and the twisted
//! conjugacy comparison between `I` and `J`.

use exact_lattice::Cyclotomic;
use finite_group::FiniteGroup;

use crate::cycmatrix::CycMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistError {
    Dimension,
    Empty,
    NotAutomorphism,
}

impl std::fmt::Display for TwistError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwistError::Dimension => write!(f, "all matrices must be square of one common size"),
            TwistError::Empty => write!(f, "at least one factor is required"),
            TwistError::NotAutomorphism => write!(f, "theta is not an automorphism"),
        }
    }
}

impl std::error::Error for TwistError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTrace {
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
    pub equal: bool,
}

/// `tr((Phi_0 (x) .. (x) Phi_{n-1}) o pi~_I)` against `tr(Phi_0 .. Phi_{n-1} T~)`, where
/// `pi~_I(v_0 (x) .. (x) v_{n-1}) = v_1 (x) .. (x) v_{n-1} (x) T~ v_0`.
pub fn block_twisted_trace(phis: &[CycMatrix], t: &CycMatrix) -> Result<TwistTrace, TwistError> {
    let n = phis.len();
    if n == 0 {
        return Err(TwistError::Empty);
    }
    let d = t.rows();
    if !t.is_square() || phis.iter().any(|p| !p.is_square() || p.rows() != d) {
        return Err(TwistError::Dimension);
    }
    let mut k = phis[0].clone();
    for p in &phis[1..] {
        k = k.kron(p);
    }
    let big = d.pow(n as u32);
    let high = d.pow(n as u32 - 1);
    // pi~ e_I = sum_t T~[t, i_0] e_{(i_1, .., i_{n-1}, t)}; factor 0 is the slowest index
    let mut lhs = Cyclotomic::zero();
    for col in 0..big {
        let (i0, rest) = (col / high, col % high);
        for s in 0..d {
            let c = &t[(s, i0)];
            if c.is_zero() {
                continue;
            }
            let row = rest * d + s;
            let kv = &k[(col, row)];
            if !kv.is_zero() {
                lhs = &lhs + &(kv * c);
            }
        }
    }
    let mut prod = phis[0].clone();
    for p in &phis[1..] {
        prod = &prod * p;
    }
    let rhs = (&prod * t).trace();
    Ok(TwistTrace {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// The power `J^n` with the shifted automorphism, elements encoded base `|J|`
/// with position 0 the slowest digit.
#[derive(Clone, Debug)]
pub struct ShiftedPower {
    j: FiniteGroup,
    theta: Vec<usize>,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClassReport {
    pub n: usize,
    pub j_classes: usize,
    pub i_classes: usize,
    /// `m(g^{-1} delta Theta(g)) = p_0(g)^{-1} m(delta) theta(p_0(g))` for all pairs.
    pub product_identity: bool,
    /// `m` is constant on twisted classes and bijective on them.
    pub bijection: bool,
    /// `m(i_0(delta)) = delta` and `i_0(m(delta_I)) = g^{-1} delta_I Theta(g)` with `g = (1, delta_1..delta_{n-1}, .., delta_{n-1})`.
    pub round_trip: bool,
    /// `p_0` maps twisted centralizers isomorphically, inverse `s -> Ad(g) Delta(s)`.
    pub centralizers: bool,
}

impl TwistedClassReport {
    pub fn holds(&self) -> bool {
        self.product_identity && self.bijection && self.round_trip && self.centralizers
    }
}

/// Orbits of `x -> g^{-1} x f(g)` on a group; returns the class index of each element.
fn twisted_classes(order: usize, mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize, f: impl Fn(usize) -> usize) -> (usize, Vec<usize>) {
    let mut class = vec![usize::MAX; order];
    let mut count = 0;
    for x in 0..order {
        if class[x] != usize::MAX {
            continue;
        }
        for g in 0..order {
            class[mul(mul(inv(g), x), f(g))] = count;
        }
        count += 1;
    }
    (count, class)
}

impl ShiftedPower {
    pub fn new(j: FiniteGroup, theta: Vec<usize>, n: usize) -> Result<Self, TwistError> {
        if n == 0 {
            return Err(TwistError::Empty);
        }
        let mut seen = vec![false; j.order()];
        for &t in &theta {
            if t >= j.order() || seen[t] {
                return Err(TwistError::NotAutomorphism);
            }
            seen[t] = true;
        }
        if !j.is_homomorphism(&j, &theta) {
            return Err(TwistError::NotAutomorphism);
        }
        Ok(ShiftedPower { j, theta, n })
    }

    pub fn order(&self) -> usize {
        self.j.order().pow(self.n as u32)
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        let q = self.j.order();
        let mut v = vec![0; self.n];
        let mut k = x;
        for i in (0..self.n).rev() {
            v[i] = k % q;
            k /= q;
        }
        v
    }

    pub fn encode(&self, v: &[usize]) -> usize {
        v.iter().fold(0, |acc, &d| acc * self.j.order() + d)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (a, b) = (self.decode(a), self.decode(b));
        let v: Vec<usize> = a.iter().zip(&b).map(|(&x, &y)| self.j.mul(x, y)).collect();
        self.encode(&v)
    }

    pub fn inv(&self, a: usize) -> usize {
        let v: Vec<usize> = self.decode(a).iter().map(|&x| self.j.inv(x)).collect();
        self.encode(&v)
    }

    pub fn big_theta(&self, a: usize) -> usize {
        let v = self.decode(a);
        let mut w: Vec<usize> = v[1..].to_vec();
        w.push(self.theta[v[0]]);
        self.encode(&w)
    }

    /// `m(j_0, .., j_{n-1}) = j_0 .. j_{n-1}`.
    pub fn m(&self, a: usize) -> usize {
        self.decode(a).into_iter().fold(self.j.identity(), |acc, x| self.j.mul(acc, x))
    }

    pub fn p0(&self, a: usize) -> usize {
        self.decode(a)[0]
    }

    /// `i_0(j) = (j, 1, .., 1)`.
    pub fn i0(&self, x: usize) -> usize {
        let mut v = vec![self.j.identity(); self.n];
        v[0] = x;
        self.encode(&v)
    }

    pub fn diagonal(&self, x: usize) -> usize {
        self.encode(&vec![x; self.n])
    }

    fn i_twist(&self, g: usize, d: usize) -> usize {
        self.mul(self.mul(self.inv(g), d), self.big_theta(g))
    }

    fn j_twist(&self, g: usize, d: usize) -> usize {
        let j = &self.j;
        j.mul(j.mul(j.inv(g), d), self.theta[g])
    }

    /// Checks all four statements by enumeration.
    pub fn report(&self) -> TwistedClassReport {
        let j = &self.j;
        let ord = self.order();
        let product_identity = (0..ord).all(|g| {
            (0..ord).all(|d| self.m(self.i_twist(g, d)) == self.j_twist(self.p0(g), self.m(d)))
        });
        let (jc, jclass) = twisted_classes(j.order(), |a, b| j.mul(a, b), |a| j.inv(a), |a| self.theta[a]);
        let (ic, iclass) = twisted_classes(ord, |a, b| self.mul(a, b), |a| self.inv(a), |a| self.big_theta(a));
        // class of I -> class of J through m
        let mut image = vec![usize::MAX; ic];
        let mut well_defined = true;
        for d in 0..ord {
            let c = jclass[self.m(d)];
            if image[iclass[d]] == usize::MAX {
                image[iclass[d]] = c;
            } else if image[iclass[d]] != c {
                well_defined = false;
            }
        }
        let mut hit = vec![false; jc];
        for &c in &image {
            if c != usize::MAX {
                hit[c] = true;
            }
        }
        let bijection = well_defined && ic == jc && hit.iter().all(|&h| h);
        let round_trip = j.elements().all(|x| self.m(self.i0(x)) == x)
            && (0..ord).all(|d| {
                let v = self.decode(d);
                let g: Vec<usize> = (0..self.n)
                    .map(|i| {
                        if i == 0 {
                            j.identity()
                        } else {
                            v[i..].iter().fold(j.identity(), |acc, &x| j.mul(acc, x))
                        }
                    })
                    .collect();
                self.i0(self.m(d)) == self.i_twist(self.encode(&g), d)
            });
        let centralizers = (0..ord).all(|d| self.centralizer_check(d));
        TwistedClassReport {
            n: self.n,
            j_classes: jc,
            i_classes: ic,
            product_identity,
            bijection,
            round_trip,
            centralizers,
        }
    }

    fn centralizer_check(&self, d: usize) -> bool {
        let j = &self.j;
        let ord = self.order();
        let ci: Vec<usize> = (0..ord).filter(|&g| self.i_twist(g, d) == d).collect();
        let md = self.m(d);
        let cj: Vec<usize> = j.elements().filter(|&g| self.j_twist(g, md) == md).collect();
        if ci.len() != cj.len() {
            return false;
        }
        let mut images: Vec<usize> = ci.iter().map(|&g| self.p0(g)).collect();
        images.sort_unstable();
        if images != cj {
            return false;
        }
        // g_i = (delta_0 .. delta_{i-1})^{-1}
        let v = self.decode(d);
        let gv: Vec<usize> = (0..self.n)
            .map(|i| j.inv(v[..i].iter().fold(j.identity(), |acc, &x| j.mul(acc, x))))
            .collect();
        let g = self.encode(&gv);
        cj.iter().all(|&s| {
            let back = self.mul(self.mul(g, self.diagonal(s)), self.inv(g));
            self.i_twist(back, d) == d && self.p0(back) == s
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_operator_trace_is_dimension() {
        let id = CycMatrix::identity(2);
        let r = block_twisted_trace(&[id.clone(), id.clone()], &id).unwrap();
        assert_eq!(r.lhs, Cyclotomic::from_i64(2));
        assert!(r.equal);
    }

    #[test]
    fn single_factor_is_plain_trace() {
        let a = CycMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let t = CycMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let r = block_twisted_trace(&[a], &t).unwrap();
        assert_eq!(r.rhs, Cyclotomic::from_i64(5));
        assert!(r.equal);
    }

    #[test]
    fn dimension_mismatch() {
        let a = CycMatrix::identity(2);
        let b = CycMatrix::identity(3);
        assert_eq!(block_twisted_trace(&[a, b.clone()], &b), Err(TwistError::Dimension));
    }

    #[test]
    fn cyclic_group_with_inversion() {
        let j = FiniteGroup::cyclic(3);
        let theta: Vec<usize> = j.elements().map(|x| j.inv(x)).collect();
        let sp = ShiftedPower::new(j, theta, 2).unwrap();
        let r = sp.report();
        assert!(r.holds(), "{r:?}");
        // x -> x - 2g is transitive on Z/3
        assert_eq!(r.j_classes, 1);
    }
}
