use rand::Rng;

use super::{haar_unitary, validate_ell_over_l, EnsembleSpec, ScatteringError, ScatteringMatrix};
use crate::linalg::{scale_rows_real, CMatrix};

/// `1/cosh²(x)`, written to stay accurate (and non-zero) for large `x`.
fn sech2(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    let tau = 4.0 * e / ((1.0 + e) * (1.0 + e));
    tau.max(f64::MIN_POSITIVE)
}

/// Transmission eigenvalues `τ = 1/cosh²(x)` with `x` uniform on
/// `[0, L/ℓ]`; the ensemble mean of `τ` is `(ℓ/L)·tanh(L/ℓ)`.
pub fn sample_transmission_eigenvalues<R: Rng + ?Sized>(
    spec: &EnsembleSpec,
    rng: &mut R,
) -> Result<Vec<f64>, ScatteringError> {
    validate_ell_over_l(spec.ell_over_l)?;
    if spec.n_modes == 0 {
        return Err(ScatteringError::InvalidDimension(0));
    }
    Ok(sample_eigenvalues_to_depth(spec.n_modes, 1.0 / spec.ell_over_l, rng))
}

/// `n` eigenvalues `1/cosh²(x)` with `x` uniform on `[0, depth]`.
pub fn sample_eigenvalues_to_depth<R: Rng + ?Sized>(n: usize, depth: f64, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| sech2(depth * rng.gen::<f64>())).collect()
}

/// Depth `X` for which `x ~ U[0, X]` gives mean eigenvalue exactly `ℓ/L`,
/// i.e. the root of `tanh(X)/X = ℓ/L`. Tends to `L/ℓ` for thick samples and
/// to 0 (ballistic) as `ℓ/L → 1`.
pub fn mean_matched_depth(ell_over_l: f64) -> f64 {
    if ell_over_l >= 1.0 {
        return 0.0;
    }
    let mean = |x: f64| if x < 1e-8 { 1.0 - x * x / 3.0 } else { x.tanh() / x };
    // tanh(X)/X ≤ 1/X, so the root is bracketed by [0, L/ℓ].
    let (mut lo, mut hi) = (0.0_f64, 1.0 / ell_over_l);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) > ell_over_l {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Scattering matrix in polar form,
///
/// ```text
///     S = diag(V₁, V₂) · [[−√(1−τ), √τ], [√τ, √(1−τ)]] · diag(U₁, U₂)
/// ```
///
/// with four independent Haar unitaries, so `t = V₂·diag(√τ)·U₁`.
pub fn assemble_polar<R: Rng + ?Sized>(taus: &[f64], rng: &mut R) -> Result<ScatteringMatrix, ScatteringError> {
    if taus.is_empty() {
        return Err(ScatteringError::InvalidDimension(0));
    }
    if let Some(&bad) = taus.iter().find(|&&tau| !(tau > 0.0 && tau <= 1.0)) {
        return Err(ScatteringError::InvalidParameter {
            name: "tau",
            value: bad,
            reason: "transmission eigenvalues must lie in (0, 1]",
        });
    }
    let n = taus.len();
    let u1 = haar_unitary(n, rng)?;
    let u2 = haar_unitary(n, rng)?;
    let v1 = haar_unitary(n, rng)?;
    let v2 = haar_unitary(n, rng)?;

    let sqrt_t: Vec<f64> = taus.iter().map(|t| t.sqrt()).collect();
    let sqrt_r: Vec<f64> = taus.iter().map(|t| (1.0 - t).max(0.0).sqrt()).collect();
    let neg_sqrt_r: Vec<f64> = sqrt_r.iter().map(|x| -x).collect();

    let scaled = |u: &CMatrix, d: &[f64]| {
        let mut m = u.clone();
        scale_rows_real(&mut m, d);
        m
    };
    let t = &v2 * scaled(&u1, &sqrt_t);
    let r_prime = &v1 * scaled(&u1, &neg_sqrt_r);
    let t_prime = &v1 * scaled(&u2, &sqrt_t);
    let r = &v2 * scaled(&u2, &sqrt_r);
    ScatteringMatrix::from_blocks(t, r, t_prime, r_prime)
}
