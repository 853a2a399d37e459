//! Component structure, degree statistics and tail-exponent fits.

mod components;
mod degrees;
mod fit;

pub use components::{component_labels, components, top_k_component_sizes, ComponentReport, UnionFind};
pub use degrees::{degree_report, Ccdf, CcdfPoint, DegreeReport};
pub use fit::{
    default_fit_range, fit_tail_exponent, fit_tail_exponent_default, log_grid, ExponentFit, DEFAULT_K_MIN,
    DEFAULT_MIN_TAIL_COUNT, MIN_FIT_POINTS, POINTS_PER_DECADE,
};

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::VertexType;

/// Giant-component fraction of a one-type Poisson(c) graph: the largest
/// root of `s = 1 - exp(-c s)`, found by fixed-point iteration from `s = 1`.
pub fn poisson_giant_fraction(c: f64) -> f64 {
    if c <= 1.0 {
        return 0.0;
    }
    let mut s = 1.0f64;
    for _ in 0..100_000 {
        let next = 1.0 - (-c * s).exp();
        if (next - s).abs() < 1e-12 {
            return next;
        }
        s = next;
    }
    s
}

/// Writes `components.csv`, `degree_hist.csv`, `degree_ccdf.csv`,
/// `cross_ccdf.csv` and `cross_means.csv` into `dir`. Each file starts with
/// the given comment lines (prefixed `# `).
pub fn write_report_csvs(
    dir: &Path,
    comments: &[String],
    comps: &ComponentReport,
    degrees: &DegreeReport,
) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let preamble: String = comments.iter().map(|c| format!("# {c}\n")).collect();
    let n: usize = comps.sizes_desc.iter().sum();

    let mut s = preamble.clone();
    s.push_str("rank,size,fraction\n");
    for (rank, size) in comps.sizes_desc.iter().enumerate() {
        let _ = writeln!(s, "{},{},{}", rank + 1, size, *size as f64 / n as f64);
    }
    write(dir, "components.csv", &s)?;

    let mut hist = preamble.clone();
    hist.push_str("type,k,count\n");
    let mut ccdf = preamble.clone();
    ccdf.push_str("type,k,count_ge,fraction_ge\n");
    for t in VertexType::BOTH {
        for (k, &c) in degrees.histograms[t.index()].iter().enumerate() {
            if c > 0 {
                let _ = writeln!(hist, "{t},{k},{c}");
            }
        }
        for p in degrees.ccdf(t).points() {
            let _ = writeln!(ccdf, "{t},{},{},{}", p.k, p.count, p.fraction);
        }
    }
    write(dir, "degree_hist.csv", &hist)?;
    write(dir, "degree_ccdf.csv", &ccdf)?;

    let mut cross = preamble.clone();
    cross.push_str("from_type,to_type,k,count_ge,fraction_ge\n");
    let mut means = preamble;
    means.push_str("from_type,to_type,mean\n");
    for from in VertexType::BOTH {
        for to in VertexType::BOTH {
            for p in degrees.cross_ccdf(from, to).points() {
                let _ = writeln!(cross, "{from},{to},{},{},{}", p.k, p.count, p.fraction);
            }
            let _ = writeln!(means, "{from},{to},{}", degrees.cross_means[from.index()][to.index()]);
        }
    }
    write(dir, "cross_ccdf.csv", &cross)?;
    write(dir, "cross_means.csv", &means)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_oracle() {
        let s = poisson_giant_fraction(1.5);
        assert!((s - (1.0 - (-1.5 * s).exp())).abs() < 1e-11);
        assert!((s - 0.5828).abs() < 1e-4);
        assert_eq!(poisson_giant_fraction(0.9), 0.0);
        assert!((poisson_giant_fraction(2.5) - 0.8926).abs() < 1e-4);
    }
}
