//! Delete-one jackknife for smooth functions of several sample means.

/// Jackknife value and standard error of `stat(means)`, where row `i`
/// contributes `rows[i]` to the means.
///
/// The reported value is the plain plug-in estimate `stat(full means)`.
pub fn jackknife<F>(rows: &[Vec<f64>], stat: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let n = rows.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let k = rows[0].len();
    let mut totals = vec![0.0; k];
    for row in rows {
        for (t, x) in totals.iter_mut().zip(row) {
            *t += x;
        }
    }
    let full: Vec<f64> = totals.iter().map(|t| t / n as f64).collect();
    let value = stat(&full);
    if n < 2 {
        return (value, f64::NAN);
    }
    let scale = 1.0 / (n - 1) as f64;
    let mut loo = vec![0.0; k];
    let replicates: Vec<f64> = rows
        .iter()
        .map(|row| {
            for ((l, t), x) in loo.iter_mut().zip(&totals).zip(row) {
                *l = (t - x) * scale;
            }
            stat(&loo)
        })
        .collect();
    let centre = replicates.iter().sum::<f64>() / n as f64;
    let spread: f64 = replicates.iter().map(|r| (r - centre).powi(2)).sum();
    (value, ((n - 1) as f64 / n as f64 * spread).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_statistic_matches_the_usual_standard_error() {
        let xs = [1.0, 3.0, 2.0, 8.0, 5.0, 4.0];
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        let (value, se) = jackknife(&rows, |m| m[0]);
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((value - mean).abs() < 1e-15);
        assert!((se - (var / n).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn constant_ratio_has_no_spread() {
        let rows: Vec<Vec<f64>> = (1..50).map(|i| vec![2.0 * f64::from(i), f64::from(i)]).collect();
        let (value, se) = jackknife(&rows, |m| m[0] / m[1]);
        assert_eq!(value, 2.0);
        assert!(se < 1e-14);
    }

    #[test]
    fn ratio_standard_error_matches_the_delta_method() {
        // Deterministic pseudo-data; delta-method SE of x̄/ȳ as the oracle.
        let rows: Vec<Vec<f64>> = (0..2000)
            .map(|i| {
                let u = ((i * 7919) % 1000) as f64 / 1000.0;
                let v = ((i * 104729) % 997) as f64 / 997.0;
                vec![1.0 + u + 0.3 * v, 2.0 + v]
            })
            .collect();
        let n = rows.len() as f64;
        let mx = rows.iter().map(|r| r[0]).sum::<f64>() / n;
        let my = rows.iter().map(|r| r[1]).sum::<f64>() / n;
        let ratio = mx / my;
        let var_resid = rows.iter().map(|r| (r[0] - ratio * r[1]).powi(2)).sum::<f64>() / (n - 1.0);
        let delta_se = (var_resid / n).sqrt() / my;
        let (value, se) = jackknife(&rows, |m| m[0] / m[1]);
        assert!((value - ratio).abs() < 1e-15);
        assert!((se - delta_se).abs() < 0.01 * delta_se);
    }

    #[test]
    fn degenerate_sizes() {
        assert!(jackknife(&[], |m: &[f64]| m[0]).0.is_nan());
        let (v, se) = jackknife(&[vec![4.0]], |m| m[0]);
        assert_eq!(v, 4.0);
        assert!(se.is_nan());
    }
}
