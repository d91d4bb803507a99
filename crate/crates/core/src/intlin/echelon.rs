//! Column echelon form over Z by unimodular column operations.
//!
//! One elimination drives three consumers: Hermite normal form, saturated
//! kernel bases, and exact linear solves. Columns are kept sparse; pivot
//! selection takes the smallest nonzero magnitude in the working row so
//! coefficients stay small.

use super::{add_scaled, div_round, exact_div, IntMatrix, SparseMat};
use crate::budget;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

type Col = Vec<(usize, BigInt)>;

/// Result of the elimination: `a * v = h` with `v` unimodular, the pivot
/// columns of `h` first (pivot rows strictly increasing), zero columns last.
pub struct Echelon {
    rows: usize,
    cols: usize,
    h_cols: Vec<Col>,
    v_cols: Vec<Col>,
    /// rows of V^-1, tracked on demand
    v_inv_rows: Option<Vec<Col>>,
    /// pivot row of echelon column c, for c < rank
    pivots: Vec<usize>,
}

// Columns worth a parallel elimination round.
const PAR_THRESHOLD: usize = 16;

impl Echelon {
    pub fn compute(a: &SparseMat, track_v_inv: bool) -> Result<Echelon> {
        let rows = a.rows();
        let cols = a.cols();
        let mut h_cols: Vec<Col> = (0..cols).map(|c| a.col(c).to_vec()).collect();
        let mut v_cols: Vec<Col> = (0..cols).map(|c| vec![(c, BigInt::from(1))]).collect();
        let mut v_inv_rows: Option<Vec<Col>> =
            track_v_inv.then(|| (0..cols).map(|c| vec![(c, BigInt::from(1))]).collect());
        let mut pivots: Vec<usize> = Vec::new();

        let mut npiv = 0;
        loop {
            budget::checkpoint()?;
            // next working row: minimal leading row among active columns
            let Some(row) = h_cols[npiv..]
                .iter()
                .filter_map(|c| c.first().map(|(r, _)| *r))
                .min()
            else {
                break;
            };

            // reduce the columns leading at this row against each other until
            // a single one survives
            loop {
                let mut cands: Vec<usize> = (npiv..cols)
                    .filter(|&j| h_cols[j].first().map(|(r, _)| *r) == Some(row))
                    .collect();
                let pivot = *cands
                    .iter()
                    .min_by(|&&a, &&b| {
                        let ma = h_cols[a][0].1.magnitude();
                        let mb = h_cols[b][0].1.magnitude();
                        ma.cmp(mb).then(a.cmp(&b))
                    })
                    .expect("candidate set is nonempty");
                cands.retain(|&j| j != pivot);
                if cands.is_empty() {
                    // done with this row; finalize the pivot
                    if h_cols[pivot][0].1.is_negative() {
                        negate_col(&mut h_cols[pivot]);
                        negate_col(&mut v_cols[pivot]);
                        if let Some(vi) = v_inv_rows.as_mut() {
                            negate_col(&mut vi[pivot]);
                        }
                    }
                    h_cols.swap(npiv, pivot);
                    v_cols.swap(npiv, pivot);
                    if let Some(vi) = v_inv_rows.as_mut() {
                        vi.swap(npiv, pivot);
                    }
                    pivots.push(row);
                    npiv += 1;
                    break;
                }

                let piv_val = h_cols[pivot][0].1.clone();
                let piv_h = std::mem::take(&mut h_cols[pivot]);
                let piv_v = std::mem::take(&mut v_cols[pivot]);
                // quotients only depend on leading values, so one round can
                // update every candidate against the same pivot
                let quotients: Vec<(usize, BigInt)> = cands
                    .iter()
                    .map(|&j| (j, div_round(&h_cols[j][0].1, &piv_val)))
                    .collect();
                let apply = |q: &BigInt, h: &Col, v: &Col| {
                    let nq = -q;
                    (add_scaled(h, &piv_h, &nq), add_scaled(v, &piv_v, &nq))
                };
                if quotients.len() >= PAR_THRESHOLD {
                    let slots: Vec<(usize, Col, Col)> = quotients
                        .par_iter()
                        .map(|(j, q)| {
                            let (h, v) = apply(q, &h_cols[*j], &v_cols[*j]);
                            (*j, h, v)
                        })
                        .collect();
                    for (j, h, v) in slots {
                        h_cols[j] = h;
                        v_cols[j] = v;
                    }
                } else {
                    for (j, q) in &quotients {
                        let (h, v) = apply(q, &h_cols[*j], &v_cols[*j]);
                        h_cols[*j] = h;
                        v_cols[*j] = v;
                    }
                }
                if let Some(vi) = v_inv_rows.as_mut() {
                    // mirror: row[pivot] += sum_j q_j * row[j]
                    let mut acc = std::mem::take(&mut vi[pivot]);
                    for (j, q) in &quotients {
                        acc = add_scaled(&acc, &vi[*j], q);
                    }
                    vi[pivot] = acc;
                }
                h_cols[pivot] = piv_h;
                v_cols[pivot] = piv_v;
            }
        }

        Ok(Echelon {
            rows,
            cols,
            h_cols,
            v_cols,
            v_inv_rows,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of the saturated kernel lattice `{x : a*x = 0}`, as columns.
    pub fn kernel(&self) -> IntMatrix {
        let k = self.cols - self.rank();
        let mut m = IntMatrix::zero(self.cols, k);
        for (out, j) in (self.rank()..self.cols).enumerate() {
            debug_assert!(self.h_cols[j].is_empty());
            for (r, val) in &self.v_cols[j] {
                m.set(*r, out, val.clone());
            }
        }
        m
    }

    /// Image lattice basis: the pivot columns of the echelon form.
    pub fn image(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.rank());
        for c in 0..self.rank() {
            for (r, val) in &self.h_cols[c] {
                m.set(*r, c, val.clone());
            }
        }
        m
    }

    /// Solves `a * x = b` exactly; `None` when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "rhs length");
        let mut res: Vec<BigInt> = b.to_vec();
        let mut x = vec![BigInt::zero(); self.cols];
        for (c, &r) in self.pivots.iter().enumerate() {
            if res[r].is_zero() {
                continue;
            }
            let piv = &self.h_cols[c][0].1;
            let y = exact_div(&res[r], piv)?;
            for (rr, val) in &self.h_cols[c] {
                res[*rr] -= &y * val;
            }
            for (rr, val) in &self.v_cols[c] {
                x[*rr] += &y * val;
            }
        }
        res.iter().all(Zero::is_zero).then_some(x)
    }

    pub fn h_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (c, col) in self.h_cols.iter().enumerate() {
            for (r, val) in col {
                m.set(*r, c, val.clone());
            }
        }
        m
    }

    pub fn v_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.cols, self.cols);
        for (c, col) in self.v_cols.iter().enumerate() {
            for (r, val) in col {
                m.set(*r, c, val.clone());
            }
        }
        m
    }

    pub fn v_inv_dense(&self) -> Option<IntMatrix> {
        let rows = self.v_inv_rows.as_ref()?;
        let mut m = IntMatrix::zero(self.cols, self.cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, val) in row {
                m.set(r, *c, val.clone());
            }
        }
        Some(m)
    }

    /// Reduces entries to the left of each pivot into `[0, pivot)`, giving the
    /// canonical Hermite form.
    pub fn canonicalize(&mut self) {
        for c in 0..self.rank() {
            let row = self.pivots[c];
            let piv = self.h_cols[c][0].1.clone();
            for j in 0..c {
                let entry = self.h_cols[j]
                    .iter()
                    .find(|(r, _)| *r == row)
                    .map(|(_, v)| v.clone());
                if let Some(e) = entry {
                    let q = num_integer::Integer::div_floor(&e, &piv);
                    if !q.is_zero() {
                        let nq = -&q;
                        self.h_cols[j] = add_scaled(&self.h_cols[j], &self.h_cols[c], &nq);
                        self.v_cols[j] = add_scaled(&self.v_cols[j], &self.v_cols[c], &nq);
                        if let Some(vi) = self.v_inv_rows.as_mut() {
                            let mirrored = add_scaled(&vi[c], &vi[j], &q);
                            vi[c] = mirrored;
                        }
                    }
                }
            }
        }
    }
}

fn negate_col(col: &mut Col) {
    for (_, v) in col.iter_mut() {
        let t = std::mem::take(v);
        *v = -t;
    }
}

/// Column-style Hermite normal form: returns `(h, v)` with `a * v = h`,
/// `v` unimodular, pivot columns first with positive pivots and the entries
/// left of each pivot reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let mut e = Echelon::compute(&a.to_sparse(), false)?;
    e.canonicalize();
    Ok((e.h_dense(), e.v_dense()))
}

/// Basis vectors of the saturated kernel lattice of `a`.
pub fn kernel_basis(a: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    let e = Echelon::compute(&a.to_sparse(), false)?;
    let k = e.kernel();
    Ok((0..k.cols()).map(|c| k.col(c)).collect())
}

/// Solves `a * x = b` over the integers.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch("solve rhs".into()));
    }
    let e = Echelon::compute(&a.to_sparse(), false)?;
    Ok(e.solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn hnf_identity_fixed() {
        let a = IntMatrix::identity(2);
        let (h, v) = hnf(&a).unwrap();
        assert_eq!(h, a);
        assert_eq!(v, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_row_gcd() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4]]);
        let (h, v) = hnf(&a).unwrap();
        assert_eq!(h, IntMatrix::from_i64_rows(&[vec![2, 0]]));
        assert_eq!(a.mul(&v).unwrap(), h);
        assert_eq!(v.det().unwrap().magnitude(), BigInt::one().magnitude());
    }

    #[test]
    fn hnf_zero_matrix() {
        let a = IntMatrix::zero(2, 3);
        let (h, _) = hnf(&a).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = IntMatrix::from_i64_rows(&[vec![4, 6, 10], vec![2, 2, 2], vec![0, 8, 4]]);
        let (h, v) = hnf(&a).unwrap();
        assert_eq!(a.mul(&v).unwrap(), h);
        assert_eq!(v.det().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64_rows(&[vec![1, 1]])).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, -1]) || k[0] == big(&[-1, 1]));

        // primitive generator, not (4, -2)
        let k = kernel_basis(&IntMatrix::from_i64_rows(&[vec![2, 4]])).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[2, -1]) || k[0] == big(&[-2, 1]));

        assert!(kernel_basis(&IntMatrix::identity(3)).unwrap().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let e = Echelon::compute(&a.to_sparse(), false).unwrap();
        assert_eq!(e.rank(), 1);
        let k = e.kernel();
        assert_eq!(k.cols(), 2);
        for c in 0..k.cols() {
            assert!(a.mul_vec(&k.col(c)).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        assert_eq!(solve(&a, &big(&[4])).unwrap(), Some(big(&[2])));
        assert_eq!(solve(&a, &big(&[3])).unwrap(), None);

        let a = IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 2]]);
        let x = solve(&a, &big(&[3, 4])).unwrap().unwrap();
        assert_eq!(x, big(&[1, 2]));
    }

    #[test]
    fn solve_underdetermined_consistency() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 3]]);
        let x = solve(&a, &big(&[7])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), big(&[7]));
        // 2x + 3y = 1 is solvable over Z
        assert!(solve(&a, &big(&[1])).unwrap().is_some());
    }

    #[test]
    fn v_inverse_tracks() {
        let a = IntMatrix::from_i64_rows(&[vec![3, 1, 0], vec![0, 2, 5]]);
        let e = Echelon::compute(&a.to_sparse(), true).unwrap();
        let v = e.v_dense();
        let vi = e.v_inv_dense().unwrap();
        assert_eq!(v.mul(&vi).unwrap(), IntMatrix::identity(3));
        assert_eq!(vi.mul(&v).unwrap(), IntMatrix::identity(3));
    }
}
