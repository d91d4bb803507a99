//! Smith normal form over Z with unimodular transforms on both sides.

use super::{div_round, IntMatrix};
use crate::budget;
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `u * a * v = diag(d)` with `u`, `v` unimodular. The diagonal satisfies
/// `d[i] | d[i+1]`, entries are nonnegative and zeros come last. Inverses of
/// both transforms are tracked so cokernel generators can be read off.
pub struct SmithForm {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    /// Reassembles `diag(d)` at the shape of the original matrix.
    pub fn diag_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, di) in self.d.iter().enumerate() {
            m.set(i, i, di.clone());
        }
        m
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.row_axpy(dst, src, q);
        self.u.row_axpy(dst, src, q);
        let nq = -q;
        self.u_inv.col_axpy(src, dst, &nq);
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.col_axpy(dst, src, q);
        self.v.col_axpy(dst, src, q);
        let nq = -q;
        self.v_inv.row_axpy(src, dst, &nq);
    }

    fn neg_row(&mut self, i: usize) {
        self.m.neg_row(i);
        self.u.neg_row(i);
        self.u_inv.neg_col(i);
    }
}

/// Smallest-magnitude nonzero entry of the trailing submatrix at `t`.
fn find_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows() {
        for c in t..m.cols() {
            let val = m.at(r, c);
            if val.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if m.at(br, bc).magnitude() <= val.magnitude() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

pub fn snf(a: &IntMatrix) -> Result<SmithForm> {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Work {
        m: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let n = rows.min(cols);
    let mut t = 0;
    'pivoting: while t < n {
        loop {
            budget::checkpoint()?;
            let Some((pi, pj)) = find_pivot(&w.m, t) else {
                break 'pivoting;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            // one rounded-division pass over the pivot cross
            for i in t + 1..rows {
                if !w.m.at(i, t).is_zero() {
                    let q = -div_round(w.m.at(i, t), w.m.at(t, t));
                    w.row_axpy(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !w.m.at(t, j).is_zero() {
                    let q = -div_round(w.m.at(t, j), w.m.at(t, t));
                    w.col_axpy(j, t, &q);
                }
            }
            let cross_clear = (t + 1..rows).all(|i| w.m.at(i, t).is_zero())
                && (t + 1..cols).all(|j| w.m.at(t, j).is_zero());
            if !cross_clear {
                // remainders are strictly smaller than the pivot; re-select
                continue;
            }

            // the pivot must divide the whole trailing submatrix
            let offender = (t + 1..rows).find_map(|i| {
                (t + 1..cols)
                    .find(|&j| !(w.m.at(i, j) % w.m.at(t, t)).is_zero())
                    .map(|_| i)
            });
            if let Some(i) = offender {
                let one = BigInt::from(1);
                w.row_axpy(t, i, &one);
                continue;
            }
            if w.m.at(t, t).is_negative() {
                w.neg_row(t);
            }
            break;
        }
        t += 1;
    }

    let d = (0..n).map(|i| w.m.at(i, i).clone()).collect();
    Ok(SmithForm {
        d,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_transforms(a: &IntMatrix, s: &SmithForm) {
        let prod = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.diag_matrix(a.rows(), a.cols()));
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        for pair in s.d.windows(2) {
            if pair[0].is_zero() {
                assert!(pair[1].is_zero(), "zeros must come last");
            } else {
                assert!((&pair[1] % &pair[0]).is_zero(), "divisibility chain");
            }
        }
    }

    fn diag_of(d: &[i64]) -> Vec<BigInt> {
        d.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_case() {
        let a = IntMatrix::identity(2);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, diag_of(&[1, 1]));
        check_transforms(&a, &s);
    }

    #[test]
    fn invariant_factors_2_4() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, diag_of(&[2, 4]));
        check_transforms(&a, &s);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, diag_of(&[1, 6]));
        check_transforms(&a, &s);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, diag_of(&[1, 0]));
        check_transforms(&a, &s);

        let z = IntMatrix::zero(3, 2);
        let s = snf(&z).unwrap();
        assert_eq!(s.d, diag_of(&[0, 0]));
        check_transforms(&z, &s);
    }

    #[test]
    fn larger_matrix() {
        let a = IntMatrix::from_i64_rows(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, 4, 16],
        ]);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, diag_of(&[2, 2, 156]));
        check_transforms(&a, &s);
    }
}
