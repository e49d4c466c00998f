//! Dense exact matrices over a finite field.
//!
//! Vectors are column vectors; a linear map `k^m → k^n` is an `n × m`
//! matrix. Tensor products use the row-major Kronecker convention: basis
//! vector `e_i ⊗ e_j` of `k^a ⊗ k^b` has index `i * b + j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `dst -= c * src`, entrywise from `start`.
#[inline]
fn axpy(field: &Field, dst: &mut [Elem], src: &[Elem], c: Elem, start: usize) {
    if c == 0 {
        return;
    }
    if field.is_prime_field() {
        let p = field.p() as u64;
        let nc = p - c as u64;
        for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
            *d = ((*d as u64 + nc * s as u64) % p) as Elem;
        }
    } else {
        for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
            if s != 0 {
                *d = field.sub(*d, field.mul(c, s));
            }
        }
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix::new(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn from_int_rows(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, &rows)
    }

    /// The matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn column_vector(field: &Field, v: &[Elem]) -> Matrix {
        Matrix::new(field, v.len(), 1, v.to_vec())
    }

    pub fn row_vector(field: &Field, v: &[Elem]) -> Matrix {
        Matrix::new(field, 1, v.len(), v.to_vec())
    }

    /// Permutation `V ⊗ W → W ⊗ V`, `v ⊗ w ↦ w ⊗ v`, for `dim V = a`, `dim W = b`.
    pub fn swap(field: &Field, a: usize, b: usize) -> Matrix {
        let mut m = Matrix::zeros(field, a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                m.set(j * a + i, i * b + j, 1);
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Elem))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "add shape");
        let f = &self.field;
        Matrix::new(
            f,
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "sub shape");
        let f = &self.field;
        Matrix::new(
            f,
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix::new(
            f,
            self.rows,
            self.cols,
            self.data.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.rows * other.cols];
        if f.is_prime_field() {
            let p = f.p() as u64;
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.get(i, k) as u64;
                    if a == 0 {
                        continue;
                    }
                    for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                        *s += a * b as u64;
                    }
                    if k % 1024 == 1023 {
                        acc.iter_mut().for_each(|s| *s %= p);
                    }
                }
                for (o, s) in out[i * other.cols..].iter_mut().zip(&acc) {
                    *o = (s % p) as Elem;
                }
            }
        } else {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in 0..other.cols {
                        let b = other.get(k, j);
                        if b != 0 {
                            let o = &mut out[i * other.cols + j];
                            *o = f.add(*o, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(Matrix::new(f, self.rows, other.cols, out))
    }

    /// Matrix product. Panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "apply length");
        self.mul(&Matrix::column_vector(&self.field, v)).data
    }

    pub fn try_kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.data[(i * other.rows + k) * c + j * other.cols + l] =
                            f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Kronecker product. Panics on field mismatch.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.try_kron(other).expect("kronecker product")
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            m.data[i * m.cols..i * m.cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * m.cols + self.cols..(i + 1) * m.cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.data[a * m.cols + b] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (b, &j) in cols.iter().enumerate() {
                m.data[i * m.cols + b] = self.get(i, j);
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                let v = self.data[r * cols + j];
                self.data[r * cols + j] = f.mul(v, inv);
            }
            let pivot_row: Vec<Elem> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor != 0 {
                    axpy(&f, &mut self.data[i * cols..(i + 1) * cols], &pivot_row, factor, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows, "solve length");
        let aug = self.hstack(&Matrix::column_vector(&self.field, b));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// Some `X` with `M X = B`, column by column in one elimination.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows, "solve rows");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(&self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    /// Indices of a maximal independent subset of the columns (leftmost first).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis (as vectors) of the column space, chosen among the columns.
    pub fn column_space(&self) -> Vec<Vec<Elem>> {
        self.independent_columns()
            .into_iter()
            .map(|j| self.column(j))
            .collect()
    }

    /// Entrywise image under a field embedding.
    pub fn base_change(&self, e: &Embedding) -> Matrix {
        assert!(self.field == *e.source(), "base change source field");
        Matrix::new(
            e.target(),
            self.rows,
            self.cols,
            self.data.iter().map(|&a| e.apply(a)).collect(),
        )
    }
}

/// Column-vector helpers.
pub mod vec {
    use crate::field::{Elem, Field};

    pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
    }

    pub fn scale(f: &Field, a: &[Elem], c: Elem) -> Vec<Elem> {
        a.iter().map(|&x| f.mul(x, c)).collect()
    }

    pub fn kron(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| f.mul(x, y)))
            .collect()
    }

    pub fn unit(n: usize, i: usize) -> Vec<Elem> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::new(f, r, c, (0..r * c).map(|_| rng.gen_range(0..f.q())).collect())
    }

    #[test]
    fn kernel_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert!(Matrix::identity(&f2, 3).kernel().is_empty());
        assert_eq!(Matrix::zeros(&f2, 2, 3).kernel().len(), 3);
        // enumerate the four vectors of F2^2 against [[1,1],[1,1]]
        let m = Matrix::from_int_rows(&f2, &[&[1, 1], &[1, 1]]);
        let brute: Vec<Vec<Elem>> = (0..4u32)
            .map(|c| vec![c & 1, c >> 1])
            .filter(|v| v != &[0, 0] && m.apply(v).iter().all(|&x| x == 0))
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(m.kernel(), brute);
    }

    #[test]
    fn solve_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(Matrix::identity(&f2, 2).solve(&[1, 0]), Some(vec![1, 0]));
        assert_eq!(Matrix::zeros(&f2, 2, 2).solve(&[1, 0]), None);
        let a = Matrix::from_int_rows(&f2, &[&[1, 1], &[0, 1]]);
        let brute: Vec<Vec<Elem>> = (0..4u32)
            .map(|c| vec![c & 1, c >> 1])
            .filter(|v| a.apply(v) == vec![0, 1])
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(a.solve(&[0, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn kron_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let k = Matrix::identity(&f3, 2).kron(&Matrix::identity(&f3, 3));
        assert_eq!(k, Matrix::identity(&f3, 6));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&f3, 2, 2, &mut rng);
        let b = random(&f3, 3, 3, &mut rng);
        assert_eq!(a.kron(&b).shape(), (6, 6));
        // direct expansion oracle: (A⊗B)(v⊗w) = Av ⊗ Bw
        let c = random(&f3, 2, 2, &mut rng);
        let d = random(&f3, 2, 2, &mut rng);
        let k = c.kron(&d);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        assert_eq!(k.get(i * 2 + r, j * 2 + s), f3.mul(c.get(i, j), d.get(r, s)));
                    }
                }
            }
        }
        let v = [1, 2];
        let w = [2, 2];
        assert_eq!(
            k.apply(&vec::kron(&f3, &v, &w)),
            vec::kron(&f3, &c.apply(&v), &d.apply(&w))
        );
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(
            a.try_kron(&Matrix::identity(&f5, 1)).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn kron_mixed_product_and_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, n).unwrap();
            for _ in 0..20 {
                let a = random(&f, 2, 3, &mut rng);
                let b = random(&f, 3, 2, &mut rng);
                let c = random(&f, 3, 2, &mut rng);
                let d = random(&f, 2, 3, &mut rng);
                assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
                let m = random(&f, 4, 6, &mut rng);
                let ker = m.kernel();
                assert_eq!(ker.len() + m.rank(), 6);
                for v in &ker {
                    assert!(m.apply(v).iter().all(|&x| x == 0));
                }
                assert_eq!(Matrix::from_columns(&f, 6, &ker).rank(), ker.len());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f7 = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 10 {
            let m = random(&f7, 4, 4, &mut rng);
            if let Some(inv) = m.inverse() {
                assert!(m.mul(&inv).is_identity());
                found += 1;
            } else {
                assert!(m.rank() < 4);
            }
        }
    }

    #[test]
    fn swap_is_the_symmetry() {
        let f = Field::new(5, 1).unwrap();
        let s = Matrix::swap(&f, 2, 3);
        let v = [1, 2];
        let w = [3, 4, 0];
        assert_eq!(s.apply(&vec::kron(&f, &v, &w)), vec::kron(&f, &w, &v));
    }
}
