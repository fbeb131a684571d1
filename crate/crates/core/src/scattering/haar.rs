use rand::Rng;

use super::ScatteringError;
use crate::linalg::{abs2, c64, complex_normal, CMatrix};

/// Haar-distributed `n×n` unitary.
///
/// QR factorization of a complex Ginibre matrix, with the phases of `R`'s
/// diagonal moved into `Q` so the result does not depend on the QR routine's
/// sign convention.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CMatrix, ScatteringError> {
    if n == 0 {
        return Err(ScatteringError::InvalidDimension(0));
    }
    let mut ginibre = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            ginibre.write(i, j, complex_normal(rng));
        }
    }
    let qr = ginibre.qr();
    let mut q = qr.compute_q();
    let r = qr.compute_thin_r();
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = abs2(d).sqrt();
        let phase = if modulus > 0.0 {
            d * (1.0 / modulus)
        } else {
            c64::new(1.0, 0.0)
        };
        for i in 0..n {
            let z = q[(i, j)];
            q.write(i, j, z * phase);
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_defect;
    use crate::rng::realization_stream;

    #[test]
    fn rejects_empty_dimension() {
        let mut rng = realization_stream(0, 0);
        assert!(matches!(
            haar_unitary(0, &mut rng),
            Err(ScatteringError::InvalidDimension(0))
        ));
    }

    #[test]
    fn one_by_one_is_a_phase() {
        let mut rng = realization_stream(1, 0);
        for _ in 0..20 {
            let u = haar_unitary(1, &mut rng).unwrap();
            assert!((abs2(u[(0, 0)]) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unitary_to_construction_precision() {
        let mut rng = realization_stream(2, 0);
        for n in [1, 2, 3, 8, 17, 40] {
            let u = haar_unitary(n, &mut rng).unwrap();
            assert!(unitarity_defect(&u) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn second_moment_of_entries() {
        // E|U_00|² = 1/n; Var|U_00|² = (n−1)/(n²(n+1)).
        let n = 4;
        let samples = 10_000;
        let mut rng = realization_stream(3, 0);
        let values: Vec<f64> = (0..samples)
            .map(|_| abs2(haar_unitary(n, &mut rng).unwrap()[(0, 0)]))
            .collect();
        let mean = values.iter().sum::<f64>() / samples as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
        let se = (var / samples as f64).sqrt();
        assert!((mean - 0.25).abs() < 5.0 * se, "mean {mean} se {se}");
        let exact_var = 3.0 / (16.0 * 5.0);
        assert!((var - exact_var).abs() < 0.1 * exact_var, "var {var}");
    }

    #[test]
    fn phases_of_entries_are_uniform() {
        // Left-invariance implies E[U_00] = 0 and E[U_00²] = 0.
        let mut rng = realization_stream(4, 0);
        let samples = 5000;
        let (mut m1, mut m2) = (c64::new(0.0, 0.0), c64::new(0.0, 0.0));
        for _ in 0..samples {
            let z = haar_unitary(3, &mut rng).unwrap()[(0, 0)];
            m1 += z;
            m2 += z * z;
        }
        let scale = 1.0 / samples as f64;
        assert!(abs2(m1 * scale).sqrt() < 0.03);
        assert!(abs2(m2 * scale).sqrt() < 0.03);
    }
}
