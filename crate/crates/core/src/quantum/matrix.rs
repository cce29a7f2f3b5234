use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2(pub [[Complex64; 2]; 2]);

impl ComplexMatrix2 {
    pub const IDENTITY: ComplexMatrix2 = ComplexMatrix2([[ONE, ZERO], [ZERO, ONE]]);
    pub const PAULI_X: ComplexMatrix2 = ComplexMatrix2([[ZERO, ONE], [ONE, ZERO]]);
    pub const PAULI_Y: ComplexMatrix2 = ComplexMatrix2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]);
    pub const PAULI_Z: ComplexMatrix2 = ComplexMatrix2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.0[r][c]
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix2(self.0.map(|row| row.map(|z| z * s)))
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        ComplexMatrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Largest entry-wise modulus of the difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    /// Hermitian, idempotent, unit trace.
    pub fn is_rank_one_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol)
            && (*self * *self).approx_eq(self, tol)
            && (self.trace() - ONE).norm() <= tol
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexMatrix2(std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c] + rhs.0[r][c])))
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexMatrix2(std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c] - rhs.0[r][c])))
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ComplexMatrix2(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c])
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (ComplexMatrix2::PAULI_X, ComplexMatrix2::PAULI_Y, ComplexMatrix2::PAULI_Z);
        for p in [x, y, z] {
            assert!((p * p).approx_eq(&ComplexMatrix2::IDENTITY, 0.0));
            assert!(p.is_hermitian(0.0));
            assert_eq!(p.trace(), ZERO);
            assert_eq!(p.det(), -ONE);
        }
        // XY = iZ
        let iz = ComplexMatrix2(z.0.map(|row| row.map(|e| e * I)));
        assert!((x * y).approx_eq(&iz, 0.0));
    }

    #[test]
    fn projector_detection() {
        let p = (ComplexMatrix2::IDENTITY + ComplexMatrix2::PAULI_X).scale(0.5);
        assert!(p.is_rank_one_projector(1e-15));
        assert!(!ComplexMatrix2::IDENTITY.is_rank_one_projector(1e-12));
        assert!(!ComplexMatrix2::PAULI_Z.is_rank_one_projector(1e-12));
    }
}
