//! Small dense complex matrices (2×2 and 3×3) used for Hamiltonians and
//! propagators.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Real, C};

/// Row-major complex matrix of dimension 2 or 3.
///
/// Storage is a fixed 3×3 block; for `dim == 2` only the top-left corner is
/// meaningful and the remaining entries stay zero.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMat<S: Real> {
    dim: usize,
    data: [[C<S>; 3]; 3],
}

impl<S: Real> ComplexMat<S> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "only 2x2 and 3x3 matrices are supported");
        Self { dim, data: [[C::zero(); 3]; 3] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i][i] = C::one();
        }
        m
    }

    pub fn from_rows2(rows: [[C<S>; 2]; 2]) -> Self {
        let mut m = Self::zeros(2);
        for (i, row) in rows.iter().enumerate() {
            m.data[i][..2].copy_from_slice(row);
        }
        m
    }

    pub fn from_rows3(rows: [[C<S>; 3]; 3]) -> Self {
        Self { dim: 3, data: rows }
    }

    /// Diagonal matrix with real entries.
    pub fn diag(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.data[i][i] = C::new(e, S::zero());
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.data[i][j] = self.data[j][i];
            }
        }
        m
    }

    pub fn scale(&self, k: C<S>) -> Self {
        let mut m = *self;
        for row in m.data.iter_mut().take(self.dim) {
            for x in row.iter_mut().take(self.dim) {
                *x = *x * k;
            }
        }
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> S {
        let mut best = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                best = best.max(self.data[i][j].norm());
            }
        }
        best
    }

    /// ‖self − other‖_max.
    pub fn dist_max(&self, other: &Self) -> S {
        (*self - *other).max_abs()
    }

    pub fn det(&self) -> C<S> {
        let d = &self.data;
        match self.dim {
            2 => d[0][0] * d[1][1] - d[0][1] * d[1][0],
            _ => {
                d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
                    + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0])
            }
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.dim);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Squared moduli of column `j`: the populations reached from basis state `j`.
    pub fn column_populations(&self, j: usize) -> Vec<S> {
        (0..self.dim).map(|i| self.data[i][j].norm_sqr()).collect()
    }
}

/// ‖U†U − I‖_max.
pub fn unitarity_defect<S: Real>(u: &ComplexMat<S>) -> S {
    (u.adjoint() * *u).dist_max(&ComplexMat::identity(u.dim()))
}

impl<S: Real> Index<(usize, usize)> for ComplexMat<S> {
    type Output = C<S>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<S> {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i][j]
    }
}

impl<S: Real> IndexMut<(usize, usize)> for ComplexMat<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<S> {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i][j]
    }
}

impl<S: Real> Mul for ComplexMat<S> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C::zero();
                for k in 0..n {
                    acc = acc + self.data[i][k] * rhs.data[k][j];
                }
                out.data[i][j] = acc;
            }
        }
        out
    }
}

impl<S: Real> Add for ComplexMat<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] = self.data[i][j] + rhs.data[i][j];
            }
        }
        self
    }
}

impl<S: Real> Sub for ComplexMat<S> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] = self.data[i][j] - rhs.data[i][j];
            }
        }
        self
    }
}

impl<S: Real> fmt::Debug for ComplexMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMat{}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.data[i][j];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
