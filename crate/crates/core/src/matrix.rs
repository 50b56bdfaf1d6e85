//! Dense matrices over F_p with deterministic row reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Vector};

/// Row-major dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn new(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        field.check_vec("matrix", &data)?;
        Ok(FpMatrix { field, rows, cols, data })
    }

    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: Fp, rows: usize, cols: &[Vector]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, cols)?.transpose())
    }

    /// Reduces signed integer entries mod p.
    pub fn from_signed(field: Fp, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let data = entries.iter().map(|&x| field.reduce(x)).collect();
        Self::new(field, rows, cols, data)
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.p(), rhs.p()));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u64;
                for l in 0..self.cols {
                    acc += (self.get(i, l) * rhs.get(l, j)) as u64;
                }
                out.data[i * rhs.cols + j] = (acc % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect())
    }

    /// Reduced row echelon form: pivot on the first nonzero column, scale
    /// the pivot to 1, clear the column above and below.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv(m.get(lead, col));
            m.scale_row(lead, inv);
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        let start = r * m.cols;
                        f.axpy(&mut m.data[start..start + m.cols], f.neg(factor), &pivot_row);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in column order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u32; self.cols];
                x[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r.get(row, fc));
                }
                x
            })
            .collect()
    }

    /// Some `x` with `Ax = b`, free variables set to zero, or `None`.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        self.field.check_vec("right-hand side", b)?;
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i];
        }
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&r.matrix.row(i)[n..]);
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, ", self.p())?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()?;
        write!(f, ")")
    }
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(field: Fp, dim: usize, vs: &[Vector]) -> usize {
    FpMatrix::from_rows(field, dim, vs).map(|m| m.rank()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[u32]]) -> FpMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| r.to_vec()).collect();
        FpMatrix::from_rows(fp(p), cols, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(fp(3), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!((r.rank, r.pivots), (2, vec![0, 1]));

        let z = FpMatrix::zeros(fp(2), 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!((r.rank, r.pivots.len()), (0, 0));

        let r = mat(5, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, mat(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(fp(7), 4).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(fp(2), 1, 2).kernel_basis().len(), 2);
        // Enumeration over F_5^2 of v0 + 2 v1 = 0 with v1 = 1 gives v0 = 3.
        let brute: Vec<Vector> = fp(5)
            .all_vectors(2)
            .filter(|v| v[1] == 1 && (v[0] + 2 * v[1]) % 5 == 0)
            .collect();
        assert_eq!(brute, vec![vec![3, 1]]);
        assert_eq!(mat(5, &[&[1, 2]]).kernel_basis(), brute);
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(fp(5), 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        assert_eq!(FpMatrix::zeros(fp(5), 2, 2).solve(&[1, 0]).unwrap(), None);
        let a = mat(2, &[&[1, 1], &[0, 1]]);
        let brute: Vec<Vector> = fp(2)
            .all_vectors(2)
            .filter(|x| a.mul_vec(x).unwrap() == vec![0, 1])
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(a.solve(&[0, 1]).unwrap(), Some(vec![1, 1]));
        assert!(matches!(a.solve(&[0, 1, 1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(3, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(fp(3), 3));
        assert!(mat(5, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(FpMatrix::new(fp(3), 2, 2, vec![0, 1, 2]).is_err());
        assert!(matches!(
            FpMatrix::new(fp(3), 1, 2, vec![0, 3]),
            Err(Error::EntryOutOfRange { .. })
        ));
    }

    fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=8, 1usize..=8).prop_flat_map(
            |(p, r, c)| {
                proptest::collection::vec(0..p, r * c)
                    .prop_map(move |d| FpMatrix::new(Fp::new(p).unwrap(), r, c, d).unwrap())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let r = m.rref().matrix;
            prop_assert_eq!(r.rref().matrix, r);
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_annihilated(m in arb_matrix()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), m.cols());
            for x in &ker {
                prop_assert!(m.mul_vec(x).unwrap().iter().all(|&e| e == 0));
            }
        }
    }

    #[test]
    fn solve_agrees_with_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..400 {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let data = (0..r * c).map(|_| rng.gen_range(0..p)).collect();
            let a = FpMatrix::new(fp(p), r, c, data).unwrap();
            let b: Vector = (0..r).map(|_| rng.gen_range(0..p)).collect();
            match a.solve(&b).unwrap() {
                Some(x) => assert_eq!(a.mul_vec(&x).unwrap(), b),
                None => assert!(fp(p).all_vectors(c).all(|x| a.mul_vec(&x).unwrap() != b)),
            }
        }
    }
}
