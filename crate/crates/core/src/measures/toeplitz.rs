use nalgebra::DMatrix;
use serde::Serialize;

use crate::series::Approx;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToeplitzReport {
    /// Side of the matrix, `⌊N/2⌋ + 1`.
    pub size: usize,
    pub min_eigenvalue: f64,
}

impl ToeplitzReport {
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue >= -tol
    }
}

/// Smallest eigenvalue of the Hermitian Toeplitz matrix `[m_{j−k}]` built
/// from `m_0 = 1, m_1, ..., m_N` and `m_{−n} = conj(m_n)`.
pub fn toeplitz_psd_check(moments: &[Approx]) -> ToeplitzReport {
    let size = moments.len() / 2 + 1;
    let entry = |d: isize| -> Approx {
        match d {
            0 => Approx::new(1.0, 0.0),
            d if d > 0 => moments[d as usize - 1],
            d => moments[(-d) as usize - 1].conj(),
        }
    };
    let matrix = DMatrix::from_fn(size, size, |j, k| entry(j as isize - k as isize));
    let eigen = matrix.symmetric_eigen();
    let min_eigenvalue = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    ToeplitzReport { size, min_eigenvalue }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_is_rank_one() {
        let lambda = Approx::from_polar(1.0, 0.7);
        let ms: Vec<Approx> = (1..=8).map(|n| lambda.powu(n)).collect();
        let r = toeplitz_psd_check(&ms);
        assert_eq!(r.size, 5);
        assert!(r.min_eigenvalue.abs() < 1e-9);
        assert!(r.is_psd(1e-9));
    }

    #[test]
    fn haar_is_identity() {
        let r = toeplitz_psd_check(&[Approx::new(0.0, 0.0); 6]);
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn large_first_moment_fails() {
        let mut ms = vec![Approx::new(0.0, 0.0); 4];
        ms[0] = Approx::new(2.0, 0.0);
        assert!(!toeplitz_psd_check(&ms).is_psd(1e-9));
    }
}
