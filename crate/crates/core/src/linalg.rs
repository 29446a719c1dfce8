//! Small dense complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Smallest singular value of a square complex matrix (0 for the empty matrix).
pub fn smallest_singular_value(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let sv = m.clone().singular_values();
    sv.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn identity(k: usize) -> CMatrix {
    CMatrix::identity(k, k)
}

pub fn scaled_identity(k: usize, c: Complex64) -> CMatrix {
    CMatrix::from_diagonal_element(k, k, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, -0.5),
        ]));
        assert!((smallest_singular_value(&m) - 0.5).abs() < 1e-14);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank_deficient() {
        let one = Complex64::new(1.0, 0.0);
        let m = CMatrix::from_element(3, 3, one);
        assert!(smallest_singular_value(&m) < 1e-12);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-12);
    }
}
