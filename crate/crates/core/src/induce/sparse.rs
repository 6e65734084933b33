//! Square sparse complex matrices keyed by `(row, col)`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    /// Store an entry; exact zeros are not stored.
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        assert!(row < self.dim && col < self.dim, "index out of range");
        if v == Complex64::default() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for ((i, j), v) in other.entries() {
            rows[i].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for ((i, k), a) in self.entries() {
            for (j, b) in &rows[k] {
                *acc.entry((i, *j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| *v != Complex64::default());
        SparseMatrix {
            dim: self.dim,
            entries: acc,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: Complex64, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for ((i, j), v) in other.entries() {
            let e = out.entries.entry((i, j)).or_default();
            *e += c * v;
            if *e == Complex64::default() {
                out.entries.remove(&(i, j));
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for ((i, j), v) in self.entries() {
            out.set(i, j, c * v);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for ((i, j), v) in self.entries() {
            out.set(j, i, v.conj());
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus among entries whose row and column are both selected.
    pub fn max_abs_on(&self, rows: &[bool], cols: &[bool]) -> f64 {
        self.entries()
            .filter(|((i, j), _)| rows[*i] && cols[*j])
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(i, j)| i == j)
    }

    pub fn diagonal_values(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for ((i, j), v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }

    /// Entries of modulus at most `tol` are dropped.
    pub fn from_dense(m: &DMatrix<Complex64>, tol: f64) -> SparseMatrix {
        assert_eq!(m.nrows(), m.ncols());
        let mut out = SparseMatrix::zeros(m.nrows());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)].norm() > tol {
                    out.set(i, j, m[(i, j)]);
                }
            }
        }
        out
    }
}
