//! Quasi-1D medium built as a cascade of weakly reflecting slices.
//!
//! Each slice is a mode mixer followed by a uniform partial reflector with
//! per-mode transmission `τ_s`. The two outermost mixers are Haar unitaries,
//! which makes the ensemble exactly invariant under mode relabelling on both
//! sides; the interior mixers are random phase screens followed by a discrete
//! Fourier transform, which mix as well at a fraction of the cost. Mean
//! conductance and eigenvalue correlations then emerge from the multiple
//! reflections between slices.

use faer::prelude::*;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{haar_unitary, validate_ell_over_l, EnsembleSpec, ScatteringError, ScatteringMatrix};
use crate::linalg::{self, c64, frobenius2, random_phases, scale_cols, scale_rows, CMatrix};
use crate::rng::{self, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceSettings {
    /// Upper bound on the Ohmic resistance `1/τ_s − 1` of one slice; sets the
    /// number of slices.
    pub max_slice_resistance: f64,
    /// Realizations per calibration probe.
    pub probe_realizations: u32,
    /// Relative tolerance on the calibrated mean transmission.
    pub tolerance: f64,
    pub max_steps: u32,
}

impl Default for SliceSettings {
    fn default() -> Self {
        SliceSettings {
            max_slice_resistance: 1.0 / 6.0,
            probe_realizations: 200,
            tolerance: 0.02,
            max_steps: 25,
        }
    }
}

/// Outcome of the slice-strength calibration, echoed into run metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceCalibration {
    pub target: f64,
    pub achieved: f64,
    pub slices: usize,
    pub slice_transmission: f64,
    pub steps: u32,
    pub probe_realizations: u32,
}

#[derive(Debug, Clone)]
pub struct SliceMedium {
    n_modes: usize,
    slices: usize,
    slice_transmission: f64,
    calibration: SliceCalibration,
    dft: CMatrix,
}

enum Mixer {
    Haar { forward: CMatrix, backward: CMatrix },
    Phased { forward: Vec<c64>, backward: Vec<c64> },
}

impl SliceMedium {
    /// Medium with fixed slice count and per-slice transmission (no calibration).
    pub fn with_strength(n_modes: usize, slices: usize, slice_transmission: f64) -> Result<Self, ScatteringError> {
        if n_modes == 0 {
            return Err(ScatteringError::InvalidDimension(0));
        }
        if !(slice_transmission > 0.0 && slice_transmission <= 1.0) {
            return Err(ScatteringError::InvalidParameter {
                name: "slice_transmission",
                value: slice_transmission,
                reason: "must lie in (0, 1]",
            });
        }
        let ohmic = 1.0 / (1.0 + slices as f64 * (1.0 / slice_transmission - 1.0));
        Ok(SliceMedium {
            n_modes,
            slices,
            slice_transmission,
            calibration: SliceCalibration {
                target: ohmic,
                achieved: f64::NAN,
                slices,
                slice_transmission,
                steps: 0,
                probe_realizations: 0,
            },
            dft: linalg::dft(n_modes),
        })
    }

    pub fn calibrate(spec: &EnsembleSpec) -> Result<Self, ScatteringError> {
        Self::calibrate_with(spec, &SliceSettings::default())
    }

    /// Bisection on the per-slice resistance (log scale) until the mean
    /// transmission over the probe realizations is within tolerance of `ℓ/L`.
    ///
    /// The slice count is fixed up front from `max_slice_resistance`; the
    /// bracket is centred on the Ohmic estimate `(L/ℓ − 1)/M`. Every probe
    /// reuses the same calibration substreams, so the probed function is
    /// deterministic and monotone in the resistance.
    pub fn calibrate_with(spec: &EnsembleSpec, settings: &SliceSettings) -> Result<Self, ScatteringError> {
        validate_ell_over_l(spec.ell_over_l)?;
        if spec.n_modes == 0 {
            return Err(ScatteringError::InvalidDimension(0));
        }
        let target = spec.ell_over_l;
        let total_resistance = 1.0 / target - 1.0;
        if total_resistance <= 0.0 {
            let mut medium = Self::with_strength(spec.n_modes, 0, 1.0)?;
            medium.calibration = SliceCalibration {
                target,
                achieved: 1.0,
                slices: 0,
                slice_transmission: 1.0,
                steps: 0,
                probe_realizations: 0,
            };
            return Ok(medium);
        }
        let slices = ((total_resistance / settings.max_slice_resistance).ceil() as usize).max(1);
        let ohmic = total_resistance / slices as f64;
        let (mut lo, mut hi) = ((0.5 * ohmic).ln(), (2.0 * ohmic).ln());
        let mut medium = Self::with_strength(spec.n_modes, slices, 1.0 / (1.0 + ohmic))?;
        let mut best: Option<(f64, f64)> = None;

        for step in 1..=settings.max_steps {
            let mid = 0.5 * (lo + hi);
            let slice_transmission = 1.0 / (1.0 + mid.exp());
            medium.slice_transmission = slice_transmission;
            let achieved = medium.probe_mean_transmission(spec.master_seed, settings.probe_realizations);
            let miss = (achieved - target).abs();
            if !best.is_some_and(|(_, b)| miss >= (b - target).abs()) {
                best = Some((slice_transmission, achieved));
            }
            if miss <= settings.tolerance * target {
                medium.calibration = SliceCalibration {
                    target,
                    achieved,
                    slices,
                    slice_transmission,
                    steps: step,
                    probe_realizations: settings.probe_realizations,
                };
                return Ok(medium);
            }
            if achieved > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(ScatteringError::Calibration {
            target,
            achieved: best.map_or(f64::NAN, |(_, a)| a),
            steps: settings.max_steps,
        })
    }

    /// Mean of `Tr(t†t)/N` over `count` calibration realizations.
    fn probe_mean_transmission(&self, master_seed: u64, count: u32) -> f64 {
        let count = count.max(1);
        let total: f64 = (0..count)
            .map(|i| {
                let mut stream = rng::substream(master_seed, rng::CALIBRATION, u64::from(i));
                frobenius2(self.realize(&mut stream).t()) / self.n_modes as f64
            })
            .sum();
        total / f64::from(count)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn slices(&self) -> usize {
        self.slices
    }

    pub fn slice_transmission(&self) -> f64 {
        self.slice_transmission
    }

    pub fn calibration(&self) -> &SliceCalibration {
        &self.calibration
    }

    /// One realization of the cascade.
    pub fn realize<R: Rng + ?Sized>(&self, rng: &mut R) -> ScatteringMatrix {
        if self.slices == 0 {
            return ScatteringMatrix::identity(self.n_modes).expect("n_modes > 0");
        }
        let mixers = self.draw_mixers(rng);
        self.cascade(&mixers)
    }

    fn draw_mixers<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Mixer> {
        let n = self.n_modes;
        (0..=self.slices)
            .map(|k| {
                if k == 0 || k == self.slices {
                    Mixer::Haar {
                        forward: haar_unitary(n, rng).expect("n > 0"),
                        backward: haar_unitary(n, rng).expect("n > 0"),
                    }
                } else {
                    Mixer::Phased {
                        forward: random_phases(n, rng),
                        backward: random_phases(n, rng),
                    }
                }
            })
            .collect()
    }

    /// Forward/backward unitaries of a mixer as explicit matrices.
    fn mixer_matrices(&self, mixer: &Mixer) -> (CMatrix, CMatrix) {
        match mixer {
            Mixer::Haar { forward, backward } => (forward.clone(), backward.clone()),
            Mixer::Phased { forward, backward } => {
                let mut w = self.dft.clone();
                scale_cols(&mut w, forward);
                let mut w_back = self.dft.clone();
                scale_cols(&mut w_back, backward);
                (w, w_back)
            }
        }
    }

    fn cascade(&self, mixers: &[Mixer]) -> ScatteringMatrix {
        let n = self.n_modes;
        let id = linalg::identity(n);
        let tau = self.slice_transmission;
        let rho = (1.0 - tau).sqrt();
        let sigma = tau.sqrt();

        let (mut t, mut t_prime) = self.mixer_matrices(&mixers[0]);
        let mut r_prime = linalg::zeros(n);
        let mut r = linalg::zeros(n);

        for (k, mixer) in mixers.iter().enumerate() {
            if k > 0 {
                // A reflectionless mixer [[0, W′], [W, 0]] on the right.
                match mixer {
                    Mixer::Haar { forward, backward } => {
                        t = forward * &t;
                        r = forward * (&r * backward);
                        t_prime = &t_prime * backward;
                    }
                    Mixer::Phased { forward, backward } => {
                        scale_rows(&mut t, forward);
                        t = &self.dft * &t;
                        scale_rows(&mut r, forward);
                        r = &self.dft * (&r * &self.dft);
                        scale_cols(&mut r, backward);
                        t_prime = &t_prime * &self.dft;
                        scale_cols(&mut t_prime, backward);
                    }
                }
            }
            if k == mixers.len() - 1 || rho == 0.0 {
                continue;
            }
            // Uniform reflector [[−ρ, σ], [σ, ρ]] on the right.
            let x = (&id + linalg::scale(&r, rho)).partial_piv_lu().inverse();
            let xt = &x * &t;
            r_prime = &r_prime - linalg::scale(&(&t_prime * &xt), rho);
            t = linalg::scale(&xt, sigma);
            let rx = &r * &x;
            r = &linalg::scale(&id, rho) + linalg::scale(&rx, tau);
            t_prime = linalg::scale(&(&t_prime * &x), sigma);
        }
        ScatteringMatrix::from_blocks(t, r, t_prime, r_prime).expect("blocks share the mode count")
    }

    /// The same cascade assembled slice by slice with the general star product.
    #[cfg(test)]
    fn cascade_by_star_products(&self, mixers: &[Mixer]) -> ScatteringMatrix {
        let n = self.n_modes;
        let zero = linalg::zeros(n);
        let id = linalg::identity(n);
        let rho = (1.0 - self.slice_transmission).sqrt();
        let sigma = self.slice_transmission.sqrt();
        let reflector = ScatteringMatrix::from_blocks(
            linalg::scale(&id, sigma),
            linalg::scale(&id, rho),
            linalg::scale(&id, sigma),
            linalg::scale(&id, -rho),
        )
        .unwrap();
        let mut pieces = Vec::new();
        for (k, mixer) in mixers.iter().enumerate() {
            let (w, w_back) = self.mixer_matrices(mixer);
            pieces.push(ScatteringMatrix::from_blocks(w, zero.clone(), w_back, zero.clone()).unwrap());
            if k + 1 < mixers.len() {
                pieces.push(reflector.clone());
            }
        }
        super::compose(n, &pieces).unwrap()
    }
}

/// Calibrates a slice medium for `spec` and draws one realization from `rng`.
///
/// Calibration is repeated on every call; ensemble drivers should calibrate
/// once through [`super::Ensemble::prepare`].
pub fn compose_slices(spec: &EnsembleSpec, rng: &mut Stream) -> Result<ScatteringMatrix, ScatteringError> {
    let medium = SliceMedium::calibrate(spec)?;
    Ok(medium.realize(rng))
}
