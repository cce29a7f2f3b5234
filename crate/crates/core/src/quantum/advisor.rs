use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::SMatrix;
use num_complex::Complex64;

use super::matrix::ComplexMatrix2;
use crate::error::{Error, Result};

/// Tolerance for Hermiticity, unit trace and positivity of an advisor state.
pub const STATE_TOL: f64 = 1e-12;

/// Three-qubit density matrix on `H_A ⊗ H_B ⊗ H_C`, basis `|abc⟩` at index
/// `4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumAdvisor {
    rho: [[Complex64; 8]; 8],
}

impl Default for QuantumAdvisor {
    fn default() -> Self {
        Self::ghz()
    }
}

impl QuantumAdvisor {
    /// `(i|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        let mut psi = [Complex64::new(0.0, 0.0); 8];
        psi[0] = Complex64::new(0.0, FRAC_1_SQRT_2);
        psi[7] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_pure(psi).expect("GHZ is normalized")
    }

    /// `I/8`.
    pub fn maximally_mixed() -> Self {
        let mut rho = [[Complex64::new(0.0, 0.0); 8]; 8];
        for (i, row) in rho.iter_mut().enumerate() {
            row[i] = Complex64::new(0.125, 0.0);
        }
        QuantumAdvisor { rho }
    }

    pub fn from_pure(psi: [Complex64; 8]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Advisor(format!("state vector has squared norm {norm}")));
        }
        let rho = std::array::from_fn(|i| std::array::from_fn(|j| psi[i] * psi[j].conj()));
        Ok(QuantumAdvisor { rho })
    }

    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn from_density(rho: [[Complex64; 8]; 8]) -> Result<Self> {
        if rho.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Advisor("non-finite entry".into()));
        }
        for i in 0..8 {
            for j in 0..8 {
                let d = (rho[i][j] - rho[j][i].conj()).norm();
                if d > STATE_TOL {
                    return Err(Error::Advisor(format!("not Hermitian at ({i}, {j}), deviation {d:e}")));
                }
            }
        }
        let tr: Complex64 = (0..8).map(|i| rho[i][i]).sum();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::Advisor(format!("trace is {tr}, expected 1")));
        }
        let m = SMatrix::<Complex64, 8, 8>::from_fn(|i, j| rho[i][j]);
        let min = m.symmetric_eigenvalues().min();
        if min < -STATE_TOL {
            return Err(Error::Advisor(format!("not positive semidefinite, eigenvalue {min:e}")));
        }
        Ok(QuantumAdvisor { rho })
    }

    pub fn density(&self) -> &[[Complex64; 8]; 8] {
        &self.rho
    }

    /// `Tr(ρ · (O_A ⊗ O_B ⊗ O_C))`.
    pub fn expectation(&self, ops: [&ComplexMatrix2; 3]) -> Complex64 {
        let [a, b, c] = ops;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..8 {
            let (ia, ib, ic) = (i >> 2, (i >> 1) & 1, i & 1);
            for j in 0..8 {
                let (ja, jb, jc) = (j >> 2, (j >> 1) & 1, j & 1);
                let k = a.get(ja, ia) * b.get(jb, ib) * c.get(jc, ic);
                acc += self.rho[i][j] * k;
            }
        }
        acc
    }
}
