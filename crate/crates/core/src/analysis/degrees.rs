use std::collections::BTreeMap;

use crate::analytic::Matrix2;
use crate::graph::{TypedGraph, VertexType};

/// One point of an empirical complementary distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcdfPoint {
    pub k: u64,
    /// Number of vertices with value `>= k`.
    pub count: u64,
    /// `count` over the population size.
    pub fraction: f64,
}

/// Empirical CCDF, evaluated at every value present in the data.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ccdf {
    points: Vec<CcdfPoint>,
}

impl Ccdf {
    /// From a histogram where `hist[k]` counts vertices with value `k`.
    pub fn from_counts(hist: &[u64]) -> Self {
        let total: u64 = hist.iter().sum();
        let mut points = Vec::new();
        let mut at_least = total;
        for (k, &c) in hist.iter().enumerate() {
            if c > 0 {
                points.push(CcdfPoint {
                    k: k as u64,
                    count: at_least,
                    fraction: at_least as f64 / total as f64,
                });
            }
            at_least -= c;
        }
        Ccdf { points }
    }

    /// From precomputed `(k, fraction)` values (counts are left at zero).
    pub fn from_values(values: impl IntoIterator<Item = (u64, f64)>) -> Self {
        Ccdf {
            points: values
                .into_iter()
                .map(|(k, fraction)| CcdfPoint { k, count: 0, fraction })
                .collect(),
        }
    }

    pub fn points(&self) -> &[CcdfPoint] {
        &self.points
    }

    /// Fraction with value `>= k`, for any `k`.
    pub fn at(&self, k: u64) -> f64 {
        let idx = self.points.partition_point(|p| p.k < k);
        self.points.get(idx).map_or(0.0, |p| p.fraction)
    }
}

/// Degree statistics split by vertex type and by neighbour type.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    /// `N_i`.
    pub type_counts: [u64; 2],
    /// `hist[i][k]`: number of type-i vertices with total degree `k`.
    pub histograms: [Vec<u64>; 2],
    /// `cross_hist[i][j][k]`: number of type-i vertices with exactly `k`
    /// type-j neighbours.
    pub cross_histograms: [[Vec<u64>; 2]; 2],
    /// `N̄_{i->j}`: mean number of type-j neighbours of a type-i vertex.
    pub cross_means: Matrix2,
    /// Pearson correlation of `(D_{s->1}, D_{s->2})` over the type-i
    /// vertices; `None` when either coordinate has zero variance.
    pub correlation: [Option<f64>; 2],
    /// Joint counts of `(D_{s->1}, D_{s->2})` per type.
    pub joint: [BTreeMap<(u32, u32), u64>; 2],
}

impl DegreeReport {
    pub fn ccdf(&self, t: VertexType) -> Ccdf {
        Ccdf::from_counts(&self.histograms[t.index()])
    }

    /// CCDF of the number of type-`to` neighbours among type-`from` vertices.
    pub fn cross_ccdf(&self, from: VertexType, to: VertexType) -> Ccdf {
        Ccdf::from_counts(&self.cross_histograms[from.index()][to.index()])
    }

    pub fn max_degree(&self, t: VertexType) -> usize {
        self.histograms[t.index()].len().saturating_sub(1)
    }
}

fn bump(hist: &mut Vec<u64>, k: usize) {
    if hist.len() <= k {
        hist.resize(k + 1, 0);
    }
    hist[k] += 1;
}

pub fn degree_report(g: &TypedGraph) -> DegreeReport {
    let degrees = g.degrees();
    let mut type_counts = [0u64; 2];
    let mut histograms: [Vec<u64>; 2] = Default::default();
    let mut cross_histograms: [[Vec<u64>; 2]; 2] = Default::default();
    let mut joint: [BTreeMap<(u32, u32), u64>; 2] = Default::default();
    // per type: sums of x, y, x², y², xy with x = D_{->1}, y = D_{->2}
    let mut moments = [[0f64; 5]; 2];
    for (v, d) in degrees.iter().enumerate() {
        let i = g.vertex_type(v).index();
        type_counts[i] += 1;
        bump(&mut histograms[i], d.total as usize);
        for (hist, &k) in cross_histograms[i].iter_mut().zip(&d.to_type) {
            bump(hist, k as usize);
        }
        *joint[i].entry((d.to_type[0], d.to_type[1])).or_insert(0) += 1;
        let (x, y) = (d.to_type[0] as f64, d.to_type[1] as f64);
        let m = &mut moments[i];
        m[0] += x;
        m[1] += y;
        m[2] += x * x;
        m[3] += y * y;
        m[4] += x * y;
    }
    let mut cross_means = [[0.0; 2]; 2];
    let mut correlation = [None; 2];
    for i in 0..2 {
        let n = type_counts[i] as f64;
        if n == 0.0 {
            continue;
        }
        let [sx, sy, sxx, syy, sxy] = moments[i];
        cross_means[i] = [sx / n, sy / n];
        let vx = sxx / n - (sx / n).powi(2);
        let vy = syy / n - (sy / n).powi(2);
        let cov = sxy / n - (sx / n) * (sy / n);
        if vx > 1e-12 && vy > 1e-12 {
            correlation[i] = Some(cov / (vx * vy).sqrt());
        }
    }
    DegreeReport {
        type_counts,
        histograms,
        cross_histograms,
        cross_means,
        correlation,
        joint,
    }
}
