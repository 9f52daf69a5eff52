//! Dense complex matrices and the numerical kernels the rest of the crate
//! is built on.
//!
//! Matrices are square, row-major and small (`dim ≤ 16`); every routine is
//! a plain function of its inputs.

mod eig;
mod poly;

pub use eig::{expm_antihermitian, hermitian_eig, HermitianEig};
pub use poly::{poly_eval, poly_roots};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar entry type used throughout the crate.
pub type C64 = Complex64;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Unitarity tolerance used when a caller does not supply one.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-9;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// `Σ conj(a_i)·b_i`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense `d × d` complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

/// Outcome of [`is_unitary`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryCheck {
    /// Largest modulus among the entries of `M*M − I`.
    pub max_deviation: f64,
    pub passed: bool,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0 && dim <= MAX_DIM, "matrix dimension {dim} out of range");
        ComplexMatrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Builds a matrix from row-major entries, checking the length and that
    /// every entry is finite.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Size(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if data.len() != dim * dim {
            return Err(Error::dim(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::dim(format!(
                "matrix is not square: {dim} rows but a row of length {}",
                bad.len()
            )));
        }
        Self::from_vec(dim, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        let dim = cols.len();
        if cols.iter().any(|c| c.len() != dim) {
            return Err(Error::dim("columns must all have length equal to their count"));
        }
        let mut data = vec![ZERO; dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                data[i * dim + j] = z;
            }
        }
        Self::from_vec(dim, data)
    }

    /// The unnormalised Fourier matrix `(ω^{jl})` with `ω = e^{2πi/d}`.
    pub fn fourier(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            for l in 0..dim {
                // reduce the exponent first so large products stay exact
                let k = (j * l) % dim;
                m[(j, l)] = cis(2.0 * std::f64::consts::PI * k as f64 / dim as f64);
            }
        }
        m
    }

    /// `F_d / √d`, the quantum Fourier transform.
    pub fn fourier_unitary(dim: usize) -> Self {
        Self::fourier(dim).scale(C64::new(1.0 / (dim as f64).sqrt(), 0.0))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `⟨a|M|b⟩`.
    pub fn sandwich(&self, a: &[C64], b: &[C64]) -> C64 {
        inner(a, &self.apply(b))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (self.dim, other.dim);
        let mut out = Self::zeros(p * q);
        for i in 0..p {
            for j in 0..p {
                let a = self[(i, j)];
                for k in 0..q {
                    for l in 0..q {
                        out[(i * q + k, j * q + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `max_{ij} |M_ij − N_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max_{ij} |M_ij − conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| a[x * d + col].norm().total_cmp(&a[y * d + col].norm()))
                .unwrap_or(col);
            if a[pivot * d + col].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                for k in 0..d {
                    a.swap(col * d + k, pivot * d + k);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            for r in col + 1..d {
                let f = a[r * d + col] / p;
                if f == ZERO {
                    continue;
                }
                for k in col..d {
                    let v = a[col * d + k];
                    a[r * d + k] -= f * v;
                }
            }
        }
        det
    }
}

/// Checks `M*M = I` entrywise within `tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> UnitaryCheck {
    let prod = &m.adjoint() * m;
    let max_deviation = prod.max_abs_diff(&ComplexMatrix::identity(m.dim()));
    UnitaryCheck { max_deviation, passed: max_deviation <= tol }
}

/// Fails with a domain error unless `m` is unitary within `tol`.
pub fn require_unitary(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let check = is_unitary(m, tol);
    if check.passed {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "matrix is not unitary: max |U*U - I| = {:.3e} > {tol:.1e}",
            check.max_deviation
        )))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_is_unitary() {
        let check = is_unitary(&ComplexMatrix::identity(3), 1e-12);
        assert!(check.passed);
        assert_eq!(check.max_deviation, 0.0);
    }

    #[test]
    fn stretched_diagonal_is_not_unitary() {
        let m = ComplexMatrix::from_diag(&[ONE, C64::new(2.0, 0.0)]);
        let check = is_unitary(&m, 1e-12);
        assert!(!check.passed);
        assert_abs_diff_eq!(check.max_deviation, 3.0, epsilon = 1e-15);
    }

    #[test]
    fn fourier3_normalised_is_unitary() {
        // F3 F3* = 3 I entry by entry
        let f = ComplexMatrix::fourier(3);
        let prod = &f * &f.adjoint();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(3).scale(C64::new(3.0, 0.0))) < 1e-14);
        assert!(is_unitary(&ComplexMatrix::fourier_unitary(3), 1e-12).passed);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = ComplexMatrix::from_rows(vec![vec![ONE, ZERO], vec![ONE]]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
        let err = ComplexMatrix::from_rows(vec![vec![ONE, ZERO, ZERO], vec![ONE, ZERO, ZERO]]);
        assert!(err.is_err());
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let err = ComplexMatrix::from_vec(1, vec![C64::new(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn determinants() {
        assert_abs_diff_eq!((ComplexMatrix::identity(4).det() - ONE).norm(), 0.0, epsilon = 1e-15);
        let d = ComplexMatrix::from_diag(&[ONE, I, -I]);
        assert_abs_diff_eq!((d.det() - ONE).norm(), 0.0, epsilon = 1e-15);
        // det F3 = -3√3 i
        let f3 = ComplexMatrix::fourier(3).det();
        assert_abs_diff_eq!(f3.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f3.im, -3.0 * 3f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn determinant_tracks_row_swaps() {
        let swap = ComplexMatrix::from_rows(vec![vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap();
        assert_abs_diff_eq!((swap.det() + ONE).norm(), 0.0, epsilon = 1e-15);
        let singular = ComplexMatrix::from_rows(vec![vec![ONE, I], vec![I, -ONE]]).unwrap();
        assert_abs_diff_eq!(singular.det().norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn kron_of_identities() {
        let k = ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(3));
        assert_eq!(k, ComplexMatrix::identity(6));
    }
}
