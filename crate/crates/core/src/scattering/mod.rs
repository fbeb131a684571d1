//! Random scattering matrices of a non-absorbing quasi-1D medium.
//!
//! Block convention. With `N` modes on each side, the input amplitude vector
//! is ordered `(left inputs a, right inputs b′)` and the output vector
//! `(left outputs, right outputs b)`. The full matrix is
//!
//! ```text
//!     S = [[ r′, t′ ],
//!          [ t,  r  ]]
//! ```
//!
//! so `t[(b, a)]` is the amplitude for light entering in left mode `a` to
//! leave in right mode `b`, `r′[(a′, a)]` is reflection back to the left,
//! `r[(b, b′)]` is reflection on the right side and `t′` transmission from
//! right to left. The intensity transmission coefficient is
//! `T_ab = |t[(b, a)]|²`.

mod haar;
mod polar;
mod slices;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, abs2, c64, CMatrix};
use crate::rng::{self, Stream};

pub use haar::haar_unitary;
pub use polar::{assemble_polar, mean_matched_depth, sample_eigenvalues_to_depth, sample_transmission_eigenvalues};
pub use slices::{compose_slices, SliceCalibration, SliceMedium, SliceSettings};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("matrix dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("scattering blocks have inconsistent shapes")]
    ShapeMismatch,
    #[error("slice calibration missed the target mean transmission {target} (closest achieved {achieved} after {steps} steps)")]
    Calibration { target: f64, achieved: f64, steps: u32 },
    #[error("star product is singular (multiple-reflection operator not invertible)")]
    Singular,
}

/// One disorder realization.
#[derive(Debug, Clone)]
pub struct ScatteringMatrix {
    n_modes: usize,
    t: CMatrix,
    r: CMatrix,
    t_prime: CMatrix,
    r_prime: CMatrix,
}

impl ScatteringMatrix {
    /// Builds a realization from its four `N×N` blocks. Unitarity is not
    /// enforced here; see [`ScatteringMatrix::unitarity_defect`].
    pub fn from_blocks(t: CMatrix, r: CMatrix, t_prime: CMatrix, r_prime: CMatrix) -> Result<Self, ScatteringError> {
        let n = t.nrows();
        if n == 0 {
            return Err(ScatteringError::InvalidDimension(0));
        }
        for m in [&t, &r, &t_prime, &r_prime] {
            if m.nrows() != n || m.ncols() != n {
                return Err(ScatteringError::ShapeMismatch);
            }
        }
        Ok(ScatteringMatrix {
            n_modes: n,
            t,
            r,
            t_prime,
            r_prime,
        })
    }

    /// A transparent medium: `t = t′ = I`, no reflection.
    pub fn identity(n_modes: usize) -> Result<Self, ScatteringError> {
        if n_modes == 0 {
            return Err(ScatteringError::InvalidDimension(0));
        }
        Ok(ScatteringMatrix {
            n_modes,
            t: linalg::identity(n_modes),
            r: linalg::zeros(n_modes),
            t_prime: linalg::identity(n_modes),
            r_prime: linalg::zeros(n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Left-to-right transmission block.
    pub fn t(&self) -> &CMatrix {
        &self.t
    }

    /// Reflection block on the right side.
    pub fn r(&self) -> &CMatrix {
        &self.r
    }

    /// Right-to-left transmission block.
    pub fn t_prime(&self) -> &CMatrix {
        &self.t_prime
    }

    /// Reflection block on the left (illuminated) side.
    pub fn r_prime(&self) -> &CMatrix {
        &self.r_prime
    }

    /// The full `2N×2N` matrix.
    pub fn assembled(&self) -> CMatrix {
        linalg::block2x2(&self.r_prime, &self.t_prime, &self.t, &self.r)
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(self)
    }

    /// `T_ab = |t_{ab}|²`.
    pub fn transmission_coefficient(&self, a: usize, b: usize) -> f64 {
        abs2(self.t[(b, a)])
    }

    /// `T_a = Σ_b T_ab`.
    pub fn transmitted_fraction(&self, a: usize) -> f64 {
        (0..self.n_modes).map(|b| abs2(self.t[(b, a)])).sum()
    }

    /// `R_a = Σ_a′ |r′_{a′a}|²`.
    pub fn reflected_fraction(&self, a: usize) -> f64 {
        (0..self.n_modes).map(|k| abs2(self.r_prime[(k, a)])).sum()
    }

    /// Column `a` of the full matrix: the `2N` output amplitudes for light
    /// entering in left mode `a`, reflected modes first.
    pub fn input_column(&self, a: usize) -> Vec<c64> {
        let n = self.n_modes;
        (0..n)
            .map(|k| self.r_prime[(k, a)])
            .chain((0..n).map(|b| self.t[(b, a)]))
            .collect()
    }

    /// Redheffer star product: `self` on the left, `other` on the right.
    pub fn star(&self, other: &ScatteringMatrix) -> Result<ScatteringMatrix, ScatteringError> {
        use faer::prelude::*;

        if self.n_modes != other.n_modes {
            return Err(ScatteringError::ShapeMismatch);
        }
        let n = self.n_modes;
        let id = linalg::identity(n);
        // Round trips in the gap between the two media.
        let gap_right = &id - &self.r * &other.r_prime;
        let gap_left = &id - &other.r_prime * &self.r;
        let lu_right = gap_right.partial_piv_lu();
        let lu_left = gap_left.partial_piv_lu();

        let x_t = lu_right.solve(&self.t);
        let x_r = lu_right.solve(&self.r);
        let y_tp = lu_left.solve(&other.t_prime);
        if !finite(&x_t) || !finite(&x_r) || !finite(&y_tp) {
            return Err(ScatteringError::Singular);
        }

        let t = &other.t * &x_t;
        let r_prime = &self.r_prime + &self.t_prime * (&other.r_prime * &x_t);
        let t_prime = &self.t_prime * &y_tp;
        let r = &other.r + &other.t * (&x_r * &other.t_prime);
        ScatteringMatrix::from_blocks(t, r, t_prime, r_prime)
    }
}

fn finite(m: &CMatrix) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| m[(i, j)].re.is_finite() && m[(i, j)].im.is_finite()))
}

/// `‖S†S − I‖_max` of the assembled realization.
pub fn unitarity_defect(s: &ScatteringMatrix) -> f64 {
    linalg::unitarity_defect(&s.assembled())
}

/// Cascades `slices` left to right. An empty list is the transparent medium.
pub fn compose(n_modes: usize, slices: &[ScatteringMatrix]) -> Result<ScatteringMatrix, ScatteringError> {
    let mut acc = ScatteringMatrix::identity(n_modes)?;
    for slice in slices {
        acc = acc.star(slice)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    /// Independent transmission eigenvalues with Haar mode mixing.
    IndependentTau,
    /// Star-product cascade of weakly scattering slices.
    SliceComposition,
}

impl std::str::FromStr for EnsembleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "independent-tau" | "independent" | "tau" => Ok(EnsembleKind::IndependentTau),
            "slice-composition" | "slices" | "slice" => Ok(EnsembleKind::SliceComposition),
            other => Err(format!(
                "unknown ensemble `{other}` (expected independent-tau or slice-composition)"
            )),
        }
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EnsembleKind::IndependentTau => "independent-tau",
            EnsembleKind::SliceComposition => "slice-composition",
        })
    }
}

/// Disorder and ensemble configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub n_modes: usize,
    #[serde(rename = "ell_over_L")]
    pub ell_over_l: f64,
    pub kind: EnsembleKind,
    pub realizations: u64,
    pub master_seed: u64,
}

impl EnsembleSpec {
    pub fn new(n_modes: usize, ell_over_l: f64, kind: EnsembleKind, realizations: u64, master_seed: u64) -> Self {
        EnsembleSpec {
            n_modes,
            ell_over_l,
            kind,
            realizations,
            master_seed,
        }
    }

    /// Mesoscopic conductance `g = N ℓ/L`.
    pub fn conductance(&self) -> f64 {
        self.n_modes as f64 * self.ell_over_l
    }

    pub fn validate(&self) -> Result<(), ScatteringError> {
        if self.n_modes == 0 {
            return Err(ScatteringError::InvalidDimension(0));
        }
        validate_ell_over_l(self.ell_over_l)?;
        if self.conductance() <= 1.0 {
            return Err(ScatteringError::InvalidParameter {
                name: "g",
                value: self.conductance(),
                reason: "conductance N·ℓ/L must exceed 1 (diffusive regime)",
            });
        }
        if self.realizations == 0 {
            return Err(ScatteringError::InvalidParameter {
                name: "realizations",
                value: 0.0,
                reason: "need at least one realization",
            });
        }
        Ok(())
    }
}

pub(crate) fn validate_ell_over_l(ell_over_l: f64) -> Result<(), ScatteringError> {
    if !(ell_over_l > 0.0 && ell_over_l <= 1.0) {
        return Err(ScatteringError::InvalidParameter {
            name: "ell_over_L",
            value: ell_over_l,
            reason: "must lie in (0, 1]",
        });
    }
    Ok(())
}

/// A prepared ensemble that can produce realization `i` on demand.
#[derive(Debug, Clone)]
pub enum Ensemble {
    IndependentTau { spec: EnsembleSpec, depth: f64 },
    SliceComposition { spec: EnsembleSpec, medium: SliceMedium },
}

impl Ensemble {
    /// Validates `spec` and runs any one-off preparation (slice calibration).
    pub fn prepare(spec: &EnsembleSpec) -> Result<Self, ScatteringError> {
        spec.validate()?;
        Ok(match spec.kind {
            EnsembleKind::IndependentTau => Ensemble::IndependentTau {
                spec: *spec,
                depth: mean_matched_depth(spec.ell_over_l),
            },
            EnsembleKind::SliceComposition => Ensemble::SliceComposition {
                spec: *spec,
                medium: SliceMedium::calibrate(spec)?,
            },
        })
    }

    pub fn spec(&self) -> &EnsembleSpec {
        match self {
            Ensemble::IndependentTau { spec, .. } | Ensemble::SliceComposition { spec, .. } => spec,
        }
    }

    pub fn calibration(&self) -> Option<&SliceCalibration> {
        match self {
            Ensemble::IndependentTau { .. } => None,
            Ensemble::SliceComposition { medium, .. } => Some(medium.calibration()),
        }
    }

    /// Realization `index`, drawn from its own substream.
    pub fn realize(&self, index: u64) -> ScatteringMatrix {
        let mut stream = rng::realization_stream(self.spec().master_seed, index);
        self.realize_with(&mut stream)
    }

    pub fn realize_with(&self, stream: &mut Stream) -> ScatteringMatrix {
        match self {
            Ensemble::IndependentTau { spec, depth } => {
                let taus = sample_eigenvalues_to_depth(spec.n_modes, *depth, stream);
                assemble_polar(&taus, stream).expect("sampled eigenvalues lie in (0, 1]")
            }
            Ensemble::SliceComposition { medium, .. } => medium.realize(stream),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::realization_stream;

    fn polar(n: usize, tau: f64, seed: u64) -> ScatteringMatrix {
        let mut rng = realization_stream(seed, 0);
        assemble_polar(&vec![tau; n], &mut rng).unwrap()
    }

    #[test]
    fn identity_is_unitary_and_transparent() {
        let s = ScatteringMatrix::identity(3).unwrap();
        assert_eq!(s.unitarity_defect(), 0.0);
        assert_eq!(s.transmitted_fraction(1), 1.0);
        assert_eq!(s.reflected_fraction(1), 0.0);
        assert!(matches!(
            ScatteringMatrix::identity(0),
            Err(ScatteringError::InvalidDimension(0))
        ));
    }

    #[test]
    fn scaled_transmission_shows_up_in_the_defect() {
        let one = CMatrix::from_fn(1, 1, |_, _| c64::new(1.0, 0.0));
        let zero = CMatrix::zeros(1, 1);
        let s = ScatteringMatrix::from_blocks(linalg::scale(&one, 1.1), zero.clone(), one, zero).unwrap();
        // |1.1|² − 1
        assert!((s.unitarity_defect() - 0.21).abs() < 1e-12);
    }

    #[test]
    fn star_product_of_unitaries_is_unitary() {
        let a = polar(5, 0.7, 1);
        let b = polar(5, 0.3, 2);
        let ab = a.star(&b).unwrap();
        assert!(ab.unitarity_defect() < 1e-10);
        for m in 0..5 {
            assert!((ab.transmitted_fraction(m) + ab.reflected_fraction(m) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_is_neutral_for_the_star_product() {
        let a = polar(4, 0.5, 3);
        let id = ScatteringMatrix::identity(4).unwrap();
        for s in [id.star(&a).unwrap(), a.star(&id).unwrap()] {
            let diff = &s.assembled() - &a.assembled();
            assert!(diff.norm_max() < 1e-13);
        }
    }

    #[test]
    fn star_product_is_associative() {
        let (a, b, c) = (polar(3, 0.6, 4), polar(3, 0.4, 5), polar(3, 0.8, 6));
        let left = a.star(&b).unwrap().star(&c).unwrap();
        let right = a.star(&b.star(&c).unwrap()).unwrap();
        assert!((&left.assembled() - &right.assembled()).norm_max() < 1e-12);
    }

    #[test]
    fn empty_composition_is_identity() {
        let s = compose(3, &[]).unwrap();
        assert_eq!(
            (&s.assembled() - &ScatteringMatrix::identity(3).unwrap().assembled()).norm_max(),
            0.0
        );
    }

    #[test]
    fn spec_validation() {
        let ok = EnsembleSpec::new(16, 0.25, EnsembleKind::IndependentTau, 10, 1);
        assert!(ok.validate().is_ok());
        assert_eq!(ok.conductance(), 4.0);
        let bad_l = EnsembleSpec { ell_over_l: 1.5, ..ok };
        assert!(matches!(
            bad_l.validate(),
            Err(ScatteringError::InvalidParameter { name: "ell_over_L", .. })
        ));
        let bad_g = EnsembleSpec { n_modes: 4, ..ok };
        assert!(matches!(
            bad_g.validate(),
            Err(ScatteringError::InvalidParameter { name: "g", .. })
        ));
        let zero = EnsembleSpec { realizations: 0, ..ok };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn spec_serde_uses_external_field_names() {
        let spec = EnsembleSpec::new(64, 0.25, EnsembleKind::SliceComposition, 100, 42);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"n_modes":64,"ell_over_L":0.25,"kind":"slice-composition","realizations":100,"master_seed":42}"#
        );
        assert_eq!(serde_json::from_str::<EnsembleSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn realizations_are_reproducible_per_index() {
        let spec = EnsembleSpec::new(6, 0.5, EnsembleKind::IndependentTau, 10, 9);
        let ens = Ensemble::prepare(&spec).unwrap();
        let a = ens.realize(3).assembled();
        let b = ens.realize(3).assembled();
        let c = ens.realize(4).assembled();
        assert_eq!((&a - &b).norm_max(), 0.0);
        assert!((&a - &c).norm_max() > 1e-3);
    }
}
