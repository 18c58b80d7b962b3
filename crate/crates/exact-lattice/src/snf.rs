use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Smith normal form `D = U * M * V` with unimodular `U`, `V`.
///
/// The inverses of `U` and `V` are tracked along the way so callers can move
/// between original and diagonal coordinates in both directions.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries `d_0 | d_1 | ...`, all positive.
    pub diag: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }
    fn row_neg(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }
    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &w.a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if w.a[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w, diag);
            };
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.row_add(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.col_add(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = w.a[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            if let Some(i) = bad {
                w.row_add(t, i, &BigInt::from(1));
                continue;
            }
            break;
        }
        if w.a[(t, t)].is_negative() {
            w.row_neg(t);
        }
        diag.push(w.a[(t, t)].clone());
    }
    finish(w, diag)
}

fn finish(w: Work, diag: Vec<BigInt>) -> Snf {
    Snf {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        diag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.diag.len() {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for k in 1..s.diag.len() {
            assert!(s.diag[k].is_multiple_of(&s.diag[k - 1]));
        }
    }

    #[test]
    fn cartan_a2() {
        let m = IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(3)]);
        check(&m);
    }

    #[test]
    fn zero_and_empty() {
        check(&IntMatrix::zeros(3, 2));
        check(&IntMatrix::zeros(0, 2));
        let s = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn needs_divisibility_fix() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
        check(&m);
    }

    proptest! {
        #[test]
        fn snf_invariants(r in 1usize..5, c in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let rows: Vec<Vec<BigInt>> = (0..r)
                .map(|i| (0..c).map(|j| BigInt::from(seed[i * 5 + j])).collect())
                .collect();
            check(&IntMatrix::from_rows(&rows));
        }
    }
}
