//! Brute-force photon statistics for small systems.
//!
//! The oracle works directly in Fock space: `n` photons in one input mode
//! leave as `(Σ_k c_k b_k†)ⁿ/√n! |0⟩`, and the joint count distribution is read
//! off the squared amplitudes of every occupation pattern. Nothing here uses
//! the closed-form moments of [`crate::moments`].

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{abs2, c64};
use crate::scattering::ScatteringMatrix;
use crate::state::{InputState, StateKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle supports at most {max} modes per side, got {got}")]
    TooManyModes { got: usize, max: usize },
    #[error("oracle supports at most {max} photons, got {got}")]
    TooManyPhotons { got: u32, max: u32 },
    #[error("Fock space of {photons} photons in {modes} outputs has {dimension} states (limit {limit})")]
    Budget {
        photons: u32,
        modes: usize,
        dimension: f64,
        limit: f64,
    },
    #[error("thermal tail mass {tail_mass:e} at cutoff {cutoff} exceeds the bound {bound:e}")]
    Truncation { tail_mass: f64, cutoff: u32, bound: f64 },
    #[error("subset references output {index} but only {outputs} outputs exist")]
    InvalidSubset { index: usize, outputs: usize },
    #[error("input mode {index} out of range for {n_modes} modes")]
    InvalidInput { index: usize, n_modes: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Largest number of modes per side.
    pub n_modes: usize,
    /// Largest Fock input.
    pub max_photons: u32,
    /// Largest photon number kept in the thermal mixture.
    pub thermal_truncation: u32,
    /// Largest acceptable thermal tail mass.
    pub thermal_tail_bound: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            n_modes: 8,
            max_photons: 6,
            thermal_truncation: 400,
            thermal_tail_bound: 1e-12,
        }
    }
}

const DIMENSION_LIMIT: f64 = 1e6;

/// Output amplitudes for one occupied input plus the output groups whose
/// totals should be reported.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleQuery {
    pub amplitudes: Vec<c64>,
    pub subsets: Vec<Vec<usize>>,
}

impl OracleQuery {
    pub fn new(amplitudes: Vec<c64>, subsets: Vec<Vec<usize>>) -> Result<Self, OracleError> {
        let outputs = amplitudes.len();
        for &index in subsets.iter().flatten() {
            if index >= outputs {
                return Err(OracleError::InvalidSubset { index, outputs });
            }
        }
        Ok(OracleQuery { amplitudes, subsets })
    }

    /// All `2N` outputs of `s` for input `a`, ordered as
    /// [`ScatteringMatrix::input_column`], with two subsets: the transmitted
    /// outputs and the reflected outputs.
    pub fn from_scattering(s: &ScatteringMatrix, a: usize) -> Result<Self, OracleError> {
        let n = s.n_modes();
        if a >= n {
            return Err(OracleError::InvalidInput { index: a, n_modes: n });
        }
        Self::new(s.input_column(a), vec![(n..2 * n).collect(), (0..n).collect()])
    }

    pub fn outputs(&self) -> usize {
        self.amplitudes.len()
    }
}

/// Exact output count moments, in the query's output order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleMoments {
    pub means: Vec<f64>,
    /// Full count covariance; variances on the diagonal.
    pub covariance: Vec<Vec<f64>>,
    pub subset_means: Vec<f64>,
    pub subset_variances: Vec<f64>,
    /// Largest photon number included (thermal only).
    pub cutoff: Option<u32>,
    /// Input probability mass beyond the cutoff.
    pub tail_mass: f64,
    /// Bound on the truncation error of every reported moment.
    pub truncation_bound: f64,
}

impl OracleMoments {
    fn zeros(outputs: usize, subsets: usize) -> Self {
        OracleMoments {
            means: vec![0.0; outputs],
            covariance: vec![vec![0.0; outputs]; outputs],
            subset_means: vec![0.0; subsets],
            subset_variances: vec![0.0; subsets],
            cutoff: None,
            tail_mass: 0.0,
            truncation_bound: 0.0,
        }
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Visits every occupation pattern of `n` photons over `bins` outputs.
fn for_each_composition(n: u32, bins: usize, visit: &mut impl FnMut(&[u32])) {
    fn rec(rest: u32, slot: usize, occ: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if slot + 1 == occ.len() {
            occ[slot] = rest;
            visit(occ);
            return;
        }
        for m in 0..=rest {
            occ[slot] = m;
            rec(rest - m, slot + 1, occ, visit);
        }
    }
    let mut occ = vec![0; bins];
    rec(n, 0, &mut occ, visit);
}

/// Probability `n!/∏m_k! · ∏|c_k|^{2m_k}` of the occupation pattern `occ`,
/// the squared modulus of its amplitude. `ln_p[k] = ln|c_k|²`.
fn pattern_probability(n: u32, occ: &[u32], ln_p: &[f64], ln_fact: &[f64]) -> f64 {
    let mut ln_weight = ln_fact[n as usize];
    for (&m, &lp) in occ.iter().zip(ln_p) {
        if m > 0 {
            ln_weight += f64::from(m) * lp - ln_fact[m as usize];
        }
    }
    ln_weight.exp()
}

/// Raw moments `E[m_k]`, `E[m_k m_l]` of the count pattern for `n` photons
/// spread over outputs with amplitudes `c`.
fn raw_moments(n: u32, c: &[c64], ln_fact: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let k = c.len();
    let mut first = vec![0.0; k];
    let mut second = vec![vec![0.0; k]; k];
    if n == 0 {
        return (first, second);
    }
    let ln_p: Vec<f64> = c.iter().map(|&z| abs2(z).ln()).collect();
    for_each_composition(n, k, &mut |occ| {
        let p = pattern_probability(n, occ, &ln_p, ln_fact);
        if p == 0.0 {
            return;
        }
        for i in 0..k {
            if occ[i] == 0 {
                continue;
            }
            let mi = f64::from(occ[i]);
            first[i] += p * mi;
            for j in 0..k {
                second[i][j] += p * mi * f64::from(occ[j]);
            }
        }
    });
    (first, second)
}

fn ln_factorials(n: u32) -> Vec<f64> {
    (0..=n).map(ln_factorial).collect()
}

/// Subset amplitude for lumping: any amplitude with the right modulus works,
/// since the lumped bins' counts depend only on `|c|²`.
fn lumped(c: &[c64], members: &[usize]) -> c64 {
    c64::new(members.iter().map(|&k| abs2(c[k])).sum::<f64>().sqrt(), 0.0)
}

fn lumped_with_rest(c: &[c64], groups: &[&[usize]]) -> Vec<c64> {
    let mut out: Vec<c64> = groups.iter().map(|g| lumped(c, g)).collect();
    let used: f64 = out.iter().map(|z| abs2(*z)).sum();
    let total: f64 = c.iter().map(|z| abs2(*z)).sum();
    out.push(c64::new((total - used).max(0.0).sqrt(), 0.0));
    out
}

/// Raw moments of the bin counts for a thermal input with `q = μ/(1 + μ)`,
/// truncated at `cutoff` photons: every pattern with at most `cutoff` photons
/// in total, weighted by `(1 − q) qⁿ` times its multinomial probability. The
/// last bin is stepped with the ratio of consecutive weights.
fn thermal_pattern_moments(bins: &[c64], q: f64, cutoff: u32, ln_fact: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let k = bins.len();
    let ln_p: Vec<f64> = bins.iter().map(|&z| abs2(z).ln()).collect();
    let last = abs2(bins[k - 1]);
    let mut first = vec![0.0; k];
    let mut second = vec![vec![0.0; k]; k];
    let mut occ = vec![0u32; k];
    let mut visit = |occ: &mut [u32], outer: u32| {
        let mut ln_w = (1.0 - q).ln() + f64::from(outer) * q.ln() + ln_fact[outer as usize];
        for (&m, &lp) in occ[..k - 1].iter().zip(&ln_p) {
            if m > 0 {
                ln_w += f64::from(m) * lp - ln_fact[m as usize];
            }
        }
        // Σ w, Σ w r, Σ w r² over the last bin's count r.
        let mut w = ln_w.exp();
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for r in 0..=cutoff - outer {
            let x = f64::from(r);
            s0 += w;
            s1 += w * x;
            s2 += w * x * x;
            w *= q * f64::from(outer + r + 1) / (x + 1.0) * last;
        }
        for i in 0..k - 1 {
            let mi = f64::from(occ[i]);
            first[i] += mi * s0;
            second[i][k - 1] += mi * s1;
            second[k - 1][i] += mi * s1;
            for j in 0..k - 1 {
                second[i][j] += mi * f64::from(occ[j]) * s0;
            }
        }
        first[k - 1] += s1;
        second[k - 1][k - 1] += s2;
    };
    fn rec(slot: usize, used: u32, cutoff: u32, occ: &mut [u32], visit: &mut impl FnMut(&mut [u32], u32)) {
        if slot + 1 == occ.len() {
            visit(occ, used);
            return;
        }
        for m in 0..=cutoff - used {
            occ[slot] = m;
            rec(slot + 1, used + m, cutoff, occ, visit);
        }
    }
    rec(0, 0, cutoff, &mut occ, &mut visit);
    (first, second)
}

/// Exact moments for an `n`-photon Fock input, enumerating the full Fock
/// space of the outputs.
pub fn oracle_fock(query: &OracleQuery, photons: u32, config: &OracleConfig) -> Result<OracleMoments, OracleError> {
    let outputs = query.outputs();
    if outputs > 2 * config.n_modes {
        return Err(OracleError::TooManyModes {
            got: outputs.div_ceil(2),
            max: config.n_modes,
        });
    }
    if photons > config.max_photons {
        return Err(OracleError::TooManyPhotons {
            got: photons,
            max: config.max_photons,
        });
    }
    let dimension = if outputs == 0 {
        1.0
    } else {
        binomial(u64::from(photons) + outputs as u64 - 1, outputs as u64 - 1)
    };
    if dimension >= DIMENSION_LIMIT {
        return Err(OracleError::Budget {
            photons,
            modes: outputs,
            dimension,
            limit: DIMENSION_LIMIT,
        });
    }

    let ln_fact = ln_factorials(photons);
    let (first, second) = raw_moments(photons, &query.amplitudes, &ln_fact);
    let mut out = OracleMoments::zeros(outputs, query.subsets.len());
    for i in 0..outputs {
        out.means[i] = first[i];
        for j in 0..outputs {
            out.covariance[i][j] = second[i][j] - first[i] * first[j];
        }
    }
    for (s, members) in query.subsets.iter().enumerate() {
        let mean: f64 = members.iter().map(|&k| first[k]).sum();
        let second_total: f64 = members
            .iter()
            .flat_map(|&i| members.iter().map(move |&j| (i, j)))
            .map(|(i, j)| second[i][j])
            .sum();
        out.subset_means[s] = mean;
        out.subset_variances[s] = second_total - mean * mean;
    }
    Ok(out)
}

/// Exact moments for a coherent input: every output is an independent
/// Poisson source with mean `μ|c_k|²`.
pub fn oracle_coherent(query: &OracleQuery, mean: f64) -> OracleMoments {
    let outputs = query.outputs();
    let mut out = OracleMoments::zeros(outputs, query.subsets.len());
    for (k, z) in query.amplitudes.iter().enumerate() {
        let m = mean * abs2(*z);
        out.means[k] = m;
        out.covariance[k][k] = m;
    }
    for (s, members) in query.subsets.iter().enumerate() {
        let m: f64 = members.iter().map(|&k| out.means[k]).sum();
        out.subset_means[s] = m;
        out.subset_variances[s] = m;
    }
    out
}

/// Tail sums of the Bose–Einstein distribution with mean `mu` beyond `cutoff`:
/// `(Σ P(n), Σ n P(n), Σ n² P(n))` over `n > cutoff`.
pub fn thermal_tails(mu: f64, cutoff: u32) -> (f64, f64, f64) {
    if mu == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let q = mu / (1.0 + mu);
    let m = f64::from(cutoff) + 1.0;
    let mass = q.powf(m);
    // n = m + j with j geometric of mean μ.
    let first = mass * (m + mu);
    let second = mass * (m * m + 2.0 * m * mu + mu + 2.0 * mu * mu);
    (mass, first, second)
}

/// Bound on the truncation error of any count mean, variance or covariance
/// when the thermal mixture stops at `cutoff`.
pub fn thermal_moment_bound(mu: f64, cutoff: u32) -> f64 {
    let (_, tail1, tail2) = thermal_tails(mu, cutoff);
    tail2 + 2.0 * mu * tail1 + tail1 * tail1
}

/// Smallest cutoff at which both the thermal tail mass and the moment error
/// bound are below `bound`, if it does not exceed `limit`.
pub fn thermal_cutoff(mu: f64, bound: f64, limit: u32) -> Result<u32, OracleError> {
    if mu == 0.0 {
        return Ok(0);
    }
    let q = mu / (1.0 + mu);
    // q^(C+1) < bound  ⇔  C + 1 > ln(bound)/ln(q)
    let start = ((bound.ln() / q.ln()).floor().max(1.0) as u32).saturating_sub(2);
    (start..=limit)
        .find(|&c| thermal_tails(mu, c).0 < bound && thermal_moment_bound(mu, c) < bound)
        .ok_or(OracleError::Truncation {
            tail_mass: thermal_tails(mu, limit).0,
            cutoff: limit,
            bound,
        })
}

/// Moments for a thermal input as a Bose–Einstein mixture of Fock inputs,
/// truncated where the tail mass and the moment error bound both drop below
/// `config.thermal_tail_bound`.
///
/// Each reported moment only needs the joint counts of at most two groups of
/// outputs, so every photon number is evaluated on two or three lumped bins.
/// All truncated contributions are non-negative, which gives the bound
/// `Σ n²P + 2μ Σ nP + (Σ nP)²` on the error of every mean, variance and
/// covariance.
pub fn oracle_thermal(query: &OracleQuery, mean: f64, config: &OracleConfig) -> Result<OracleMoments, OracleError> {
    let outputs = query.outputs();
    if outputs > 2 * config.n_modes {
        return Err(OracleError::TooManyModes {
            got: outputs.div_ceil(2),
            max: config.n_modes,
        });
    }
    let mut out = OracleMoments::zeros(outputs, query.subsets.len());
    if mean == 0.0 {
        out.cutoff = Some(0);
        return Ok(out);
    }
    let cutoff = thermal_cutoff(mean, config.thermal_tail_bound, config.thermal_truncation)?;
    let ln_fact = ln_factorials(cutoff);
    let q = mean / (1.0 + mean);
    let c = &query.amplitudes;

    // E[m], E[m²] of a group, and E[m_i m_j] of two disjoint groups.
    let group_moments = |members: &[usize]| -> (f64, f64) {
        let bins = lumped_with_rest(c, &[members]);
        let (f, s) = thermal_pattern_moments(&bins, q, cutoff, &ln_fact);
        (f[0], s[0][0])
    };
    let joint = |i: usize, j: usize| -> f64 {
        let bins = lumped_with_rest(c, &[&[i], &[j]]);
        thermal_pattern_moments(&bins, q, cutoff, &ln_fact).1[0][1]
    };

    let singles: Vec<(f64, f64)> = (0..outputs).map(|k| group_moments(&[k])).collect();
    for i in 0..outputs {
        out.means[i] = singles[i].0;
        out.covariance[i][i] = singles[i].1 - singles[i].0 * singles[i].0;
        for j in i + 1..outputs {
            let cov = joint(i, j) - singles[i].0 * singles[j].0;
            out.covariance[i][j] = cov;
            out.covariance[j][i] = cov;
        }
    }
    for (s, members) in query.subsets.iter().enumerate() {
        let (m1, m2) = group_moments(members);
        out.subset_means[s] = m1;
        out.subset_variances[s] = m2 - m1 * m1;
    }
    out.cutoff = Some(cutoff);
    out.tail_mass = thermal_tails(mean, cutoff).0;
    out.truncation_bound = thermal_moment_bound(mean, cutoff);
    Ok(out)
}

/// Dispatches on the state kind.
pub fn oracle_moments(
    query: &OracleQuery,
    state: &InputState,
    config: &OracleConfig,
) -> Result<OracleMoments, OracleError> {
    match state.kind() {
        StateKind::Coherent => Ok(oracle_coherent(query, state.mean_photons())),
        StateKind::Thermal => oracle_thermal(query, state.mean_photons(), config),
        StateKind::Fock => oracle_fock(query, state.fock_photons().unwrap_or(0), config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{covariance_for, variance_for};

    fn real(ps: &[f64]) -> Vec<c64> {
        ps.iter().map(|p| c64::new(p.sqrt(), 0.0)).collect()
    }

    fn query(ps: &[f64]) -> OracleQuery {
        OracleQuery::new(real(ps), vec![(0..ps.len()).collect()]).unwrap()
    }

    #[test]
    fn single_photon_on_a_splitter() {
        let m = oracle_fock(&query(&[0.5, 0.5]), 1, &OracleConfig::default()).unwrap();
        assert!((m.covariance[0][1] + 0.25).abs() < 1e-15);
        assert!((m.covariance[0][0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn two_photons_on_a_splitter() {
        let m = oracle_fock(&query(&[0.5, 0.5]), 2, &OracleConfig::default()).unwrap();
        let joint = m.covariance[0][1] + m.means[0] * m.means[1];
        assert!((joint - 0.5).abs() < 1e-15);
        assert!((m.means[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn transparent_network_keeps_all_photons_in_place() {
        let m = oracle_fock(&query(&[0.0, 1.0, 0.0]), 3, &OracleConfig::default()).unwrap();
        assert_eq!(m.means, vec![0.0, 3.0, 0.0]);
        assert!(m.covariance.iter().flatten().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn complex_phases_do_not_change_counts() {
        let c = vec![
            c64::new(0.3, 0.4),
            c64::new(-0.5, 0.1),
            c64::new(0.0, (1.0f64 - 0.25 - 0.26).sqrt()),
        ];
        let ps: Vec<f64> = c.iter().map(|z| abs2(*z)).collect();
        let a = oracle_fock(&OracleQuery::new(c, vec![]).unwrap(), 4, &OracleConfig::default()).unwrap();
        let b = oracle_fock(&query(&ps), 4, &OracleConfig::default()).unwrap();
        for i in 0..3 {
            assert!((a.means[i] - b.means[i]).abs() < 1e-13);
            for j in 0..3 {
                assert!((a.covariance[i][j] - b.covariance[i][j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn multinomial_subset_variance() {
        let ps = [0.1, 0.2, 0.3, 0.15, 0.25];
        let q = OracleQuery::new(real(&ps), vec![vec![0, 2], vec![1, 3, 4], vec![]]).unwrap();
        for n in 0..=6 {
            let m = oracle_fock(&q, n, &OracleConfig::default()).unwrap();
            for (s, p) in [0.4, 0.6, 0.0].into_iter().enumerate() {
                let nf = f64::from(n);
                assert!((m.subset_variances[s] - nf * p * (1.0 - p)).abs() < 1e-12);
                assert!((m.subset_means[s] - nf * p).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn budget_limits() {
        let cfg = OracleConfig::default();
        assert!(matches!(
            oracle_fock(&query(&[1.0; 2]), 7, &cfg),
            Err(OracleError::TooManyPhotons { got: 7, max: 6 })
        ));
        assert!(matches!(
            oracle_fock(&query(&[0.05; 18]), 1, &cfg),
            Err(OracleError::TooManyModes { got: 9, max: 8 })
        ));
        let wide = OracleConfig {
            n_modes: 100,
            max_photons: 20,
            ..cfg
        };
        assert!(matches!(
            oracle_fock(&query(&[0.01; 100]), 6, &wide),
            Err(OracleError::Budget { .. })
        ));
        assert!(OracleQuery::new(real(&[1.0]), vec![vec![1]]).is_err());
    }

    #[test]
    fn coherent_is_thinned_poisson() {
        let q = OracleQuery::new(real(&[0.5, 0.5]), vec![vec![1]]).unwrap();
        let m = oracle_coherent(&q, 4.0);
        assert!((m.subset_means[0] - 2.0).abs() < 1e-14);
        assert_eq!(m.subset_means[0], m.subset_variances[0]);
        assert_eq!(m.covariance[0][1], 0.0);
        let v = oracle_coherent(&q, 0.0);
        assert!(v.means.iter().chain(v.covariance.iter().flatten()).all(|&x| x == 0.0));
    }

    #[test]
    fn thermal_tail_sums_match_direct_summation() {
        for (mu, cutoff) in [(1.0, 40u32), (2.0, 10), (0.3, 5)] {
            let q: f64 = mu / (1.0 + mu);
            let mut direct = (0.0, 0.0, 0.0);
            for n in cutoff + 1..cutoff + 4000 {
                let p = (1.0 - q) * q.powi(n as i32);
                let nf = f64::from(n);
                direct.0 += p;
                direct.1 += p * nf;
                direct.2 += p * nf * nf;
            }
            let (a, b, c) = thermal_tails(mu, cutoff);
            assert!((a - direct.0).abs() <= 1e-12 * direct.0);
            assert!((b - direct.1).abs() <= 1e-12 * direct.1);
            assert!((c - direct.2).abs() <= 1e-12 * direct.2);
        }
        assert!(thermal_tails(1.0, 40).0 < 1e-12);
        assert!((thermal_tails(1.0, 40).0 - 0.5f64.powi(41)).abs() < 1e-25);
    }

    #[test]
    fn thermal_cutoff_is_minimal() {
        for mu in [0.1, 0.5, 1.0, 2.0] {
            let c = thermal_cutoff(mu, 1e-12, 1000).unwrap();
            assert!(thermal_tails(mu, c).0 < 1e-12 && thermal_moment_bound(mu, c) < 1e-12);
            assert!(thermal_moment_bound(mu, c - 1) >= 1e-12);
        }
        assert!(matches!(
            thermal_cutoff(2.0, 1e-12, 60),
            Err(OracleError::Truncation { cutoff: 60, .. })
        ));
    }

    #[test]
    fn thermal_statistics_are_preserved_by_a_transparent_medium() {
        let q = OracleQuery::new(real(&[1.0, 0.0]), vec![vec![0]]).unwrap();
        let m = oracle_thermal(&q, 1.0, &OracleConfig::default()).unwrap();
        assert!((m.subset_variances[0] - 2.0).abs() < 1e-10);
        assert!(m.tail_mass < 1e-12);
        assert!((m.subset_variances[0] - 2.0).abs() <= m.truncation_bound + 1e-12);
    }

    #[test]
    fn thermal_splitter_agrees_with_closed_forms() {
        let ps = [0.5, 0.3, 0.2];
        let q = OracleQuery::new(real(&ps), vec![vec![0, 1]]).unwrap();
        let state = InputState::thermal(1.0).unwrap();
        let m = oracle_thermal(&q, 1.0, &OracleConfig::default()).unwrap();
        let tol = m.truncation_bound + 1e-10;
        assert!((m.covariance[0][1] - covariance_for(&state, 0.5, 0.3)).abs() < tol);
        assert!((m.covariance[2][2] - variance_for(&state, 0.2)).abs() < tol);
        assert!((m.subset_variances[0] - variance_for(&state, 0.8)).abs() < tol);
    }

    #[test]
    fn thermal_vacuum() {
        let m = oracle_thermal(&query(&[0.5, 0.5]), 0.0, &OracleConfig::default()).unwrap();
        assert!(m.means.iter().all(|&x| x == 0.0));
        assert_eq!(m.truncation_bound, 0.0);
    }
}
