//! Exact linear algebra over the integers.
//!
//! [`IntMatrix`] is the dense, arbitrary-precision workhorse; [`SparseMat`]
//! backs the very sparse matrices (cochain differentials) where a dense
//! layout would be wasteful. All arithmetic is exact at any magnitude.

pub mod echelon;
pub mod finab;
pub mod snf;

pub use echelon::{hnf, kernel_basis, solve, Echelon};
pub use finab::{cokernel_structure, fin_ab_kernel, CokernelStructure, FinAbGroup, FinAbMap};
pub use snf::{snf, SmithForm};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals in tests and examples.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows must be rectangular")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: Vec<Vec<BigInt>>) -> Result<Self> {
        let ncols = cols.len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        Ok(Self::from_fn(rows, ncols, |r, c| cols[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row_slice(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation, `self` on top.
    pub fn vcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vcat".into()));
        }
        Ok(Self::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        }))
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row[dst] += q * row[src]`
    pub fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = &self.entries[src * self.cols + c] * q;
            self.entries[dst * self.cols + c] += t;
        }
    }

    /// `col[dst] += q * col[src]`
    pub fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = &self.entries[r * self.cols + src] * q;
            self.entries[r * self.cols + dst] += t;
        }
    }

    pub fn neg_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            let v = std::mem::take(&mut self.entries[idx]);
            self.entries[idx] = -v;
        }
    }

    pub fn neg_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + c;
            let v = std::mem::take(&mut self.entries[idx]);
            self.entries[idx] = -v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("det of non-square".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = exact_div(&num, &prev).expect("bareiss divides exactly");
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn density(&self) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        let nz = self.entries.iter().filter(|e| !e.is_zero()).count();
        nz as f64 / self.entries.len() as f64
    }

    pub fn to_sparse(&self) -> SparseMat {
        let mut cols_data = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.at(r, c);
                if !v.is_zero() {
                    cols_data[c].push((r, v.clone()));
                }
            }
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            cols_data,
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row_slice(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// Wire format: {rows, cols, entries: [decimal strings]}. Decimal strings keep
// the format free of any fixed-width integer assumption.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IntMatrix", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        let entries: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom("entries length must equal rows*cols"));
        }
        let entries = raw
            .entries
            .iter()
            .map(|s| BigInt::from_str(s).map_err(|_| D::Error::custom("bad integer literal")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries,
        })
    }
}

/// Column-major sparse matrix; each column holds (row, value) sorted by row.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    cols_data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            cols_data: vec![Vec::new(); cols],
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut cols_data = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            debug_assert!(r < rows && c < cols);
            if !v.is_zero() {
                cols_data[c].push((r, v));
            }
        }
        for col in &mut cols_data {
            normalize_col(col);
        }
        SparseMat {
            rows,
            cols,
            cols_data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols_data[c]
    }

    pub fn take_cols(self) -> Vec<Vec<(usize, BigInt)>> {
        self.cols_data
    }

    pub fn nnz(&self) -> usize {
        self.cols_data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols_data.iter().all(Vec::is_empty)
    }

    pub fn density(&self) -> f64 {
        if self.rows * self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows * self.cols) as f64
    }

    /// Sparse matrix product `self * other`.
    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut cols_data = vec![Vec::new(); other.cols];
        for (c, out) in cols_data.iter_mut().enumerate() {
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            for (k, v) in &other.cols_data[c] {
                acc = add_scaled(&acc, &self.cols_data[*k], v);
            }
            *out = acc;
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: other.cols,
            cols_data,
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("sparse matrix-vector".into()));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols_data[c] {
                out[*r] += a * x;
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (c, col) in self.cols_data.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseMat {}x{} ({} nonzero)",
            self.rows,
            self.cols,
            self.nnz()
        )
    }
}

/// Sorts by row and merges duplicate rows, dropping zeros.
fn normalize_col(col: &mut Vec<(usize, BigInt)>) {
    col.sort_by_key(|(r, _)| *r);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
    for (r, v) in col.drain(..) {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *col = out;
}

/// Returns `a + q * b` for sorted sparse columns.
pub(crate) fn add_scaled(
    a: &[(usize, BigInt)],
    b: &[(usize, BigInt)],
    q: &BigInt,
) -> Vec<(usize, BigInt)> {
    if q.is_zero() || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, q * &b[j].1));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &a[i].1 + q * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (r, v) in &b[j..] {
        out.push((*r, q * v));
    }
    out
}

/// Quotient rounding to nearest, so the remainder magnitude is at most |b|/2.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.abs() * 2 > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Exact division; `None` when `d` is zero or does not divide.
pub(crate) fn exact_div(a: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(d);
    r.is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_identity() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let b = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn det_bareiss() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.det().unwrap(), BigInt::from(-8));
        let singular = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det().unwrap(), BigInt::zero());
        assert_eq!(IntMatrix::identity(0).det().unwrap(), BigInt::one());
        let a3 = IntMatrix::from_i64_rows(&[vec![2, 0, 1], vec![1, 3, 0], vec![0, 1, 4]]);
        // cofactor expansion by hand: 2*(12-0) - 0 + 1*(1-0) = 25
        assert_eq!(a3.det().unwrap(), BigInt::from(25));
    }

    #[test]
    fn sparse_dense_round_trip_and_product() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 0, 2], vec![0, 0, -1]]);
        let s = a.to_sparse();
        assert_eq!(s.nnz(), 3);
        assert_eq!(s.to_dense(), a);
        let b = IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1], vec![2, 0]]);
        let prod = s.mul(&b.to_sparse()).unwrap().to_dense();
        assert_eq!(prod, a.mul(&b).unwrap());
    }

    #[test]
    fn div_round_minimizes_remainder() {
        let cases = [(7, 2, 3), (-7, 2, -4), (7, -2, -4), (5, 3, 2), (4, 2, 2)];
        for (a, b, q) in cases {
            assert_eq!(
                div_round(&BigInt::from(a), &BigInt::from(b)),
                BigInt::from(q),
                "{a}/{b}"
            );
            let r = BigInt::from(a) - BigInt::from(q) * BigInt::from(b);
            assert!(r.abs() * 2 <= BigInt::from(b).abs());
        }
    }

    #[test]
    fn json_matrix_wire_format() {
        let a = IntMatrix::from_i64_rows(&[vec![1, -2], vec![0, 5]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":["1","-2","0","5"]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
