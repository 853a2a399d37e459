use crate::error::{Error, Result};

use super::degrees::Ccdf;

/// Default lower end of the regression window.
pub const DEFAULT_K_MIN: u64 = 10;
/// The default upper end is the largest `k` still reached by this many vertices.
pub const DEFAULT_MIN_TAIL_COUNT: u64 = 10;
/// Density of the logarithmic grid the CCDF is evaluated on.
pub const POINTS_PER_DECADE: u32 = 10;
/// Minimum number of points a regression needs.
pub const MIN_FIT_POINTS: usize = 5;

/// Least-squares fit of `log CCDF(k) = c - gamma log k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub gamma_hat: f64,
    pub intercept: f64,
    pub k_min: u64,
    pub k_max: u64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// `[10, largest k with at least 10 vertices of degree >= k]`.
pub fn default_fit_range(ccdf: &Ccdf) -> Result<(u64, u64)> {
    let k_max = ccdf
        .points()
        .iter()
        .filter(|p| p.count >= DEFAULT_MIN_TAIL_COUNT)
        .map(|p| p.k)
        .max()
        .unwrap_or(0);
    if k_max <= DEFAULT_K_MIN {
        return Err(Error::InsufficientData(format!(
            "tail too short: fewer than {DEFAULT_MIN_TAIL_COUNT} vertices have degree above {DEFAULT_K_MIN}"
        )));
    }
    Ok((DEFAULT_K_MIN, k_max))
}

/// `k_min * 10^(j / POINTS_PER_DECADE)` rounded, up to `k_max`, without repeats.
pub fn log_grid(k_min: u64, k_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for j in 0.. {
        let k = (k_min as f64 * 10f64.powf(j as f64 / POINTS_PER_DECADE as f64)).round() as u64;
        if k > k_max {
            break;
        }
        if out.last() != Some(&k) {
            out.push(k);
        }
    }
    out
}

/// Ordinary least squares of `ln CCDF(k)` on `ln k`, with `k` running over
/// [`log_grid`]`(k_min, k_max)` so that each decade carries equal weight.
pub fn fit_tail_exponent(ccdf: &Ccdf, k_min: u64, k_max: u64) -> Result<ExponentFit> {
    if k_min == 0 || k_min >= k_max {
        return Err(Error::param(
            "k_min",
            format!("fit range must satisfy 1 <= k_min < k_max, got [{k_min}, {k_max}]"),
        ));
    }
    let pts: Vec<(f64, f64)> = log_grid(k_min, k_max)
        .into_iter()
        .map(|k| (k, ccdf.at(k)))
        .filter(|&(_, f)| f > 0.0)
        .map(|(k, f)| ((k as f64).ln(), f.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} usable CCDF points in [{k_min}, {k_max}], need at least {MIN_FIT_POINTS}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(ExponentFit {
        gamma_hat: -slope,
        intercept,
        k_min,
        k_max,
        r_squared,
        n_points: pts.len(),
    })
}

/// Fit over [`default_fit_range`].
pub fn fit_tail_exponent_default(ccdf: &Ccdf) -> Result<ExponentFit> {
    let (lo, hi) = default_fit_range(ccdf)?;
    fit_tail_exponent(ccdf, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let ccdf = Ccdf::from_values((1..=10_000u64).map(|k| (k, (k as f64).powf(-2.0))));
        let fit = fit_tail_exponent(&ccdf, 1, 10_000).unwrap();
        assert!((fit.gamma_hat - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.n_points, log_grid(1, 10_000).len());
    }

    #[test]
    fn grid_is_log_spaced() {
        assert_eq!(log_grid(10, 20), vec![10, 13, 16, 20]);
        assert_eq!(log_grid(1, 3), vec![1, 2, 3]);
        assert_eq!(log_grid(5, 4), Vec::<u64>::new());
    }

    #[test]
    fn too_few_points() {
        let ccdf = Ccdf::from_values((1..=4u64).map(|k| (k, 1.0 / k as f64)));
        assert!(matches!(
            fit_tail_exponent(&ccdf, 1, 4),
            Err(Error::InsufficientData(_))
        ));
        assert!(fit_tail_exponent(&ccdf, 5, 5).is_err());
        assert!(fit_tail_exponent(&ccdf, 0, 5).is_err());
    }

    #[test]
    fn default_range_needs_a_tail() {
        let ccdf = Ccdf::from_counts(&[0, 1000, 500, 9]);
        assert!(matches!(default_fit_range(&ccdf), Err(Error::InsufficientData(_))));
    }
}
