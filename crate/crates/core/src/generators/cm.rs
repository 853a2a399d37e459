use rand::seq::SliceRandom;
use rand::Rng;

use crate::degree_dist::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::{TypedGraph, VertexType};
use crate::rng::RngStream;

use super::sample_types;

/// Half-edge label totals `(L1, L1', L2, L2')` before pairing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LabelCounts {
    pub own1: u64,
    pub cross1: u64,
    pub own2: u64,
    pub cross2: u64,
}

/// Bookkeeping of the half-edges discarded by the pairing step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CmGenReport {
    pub erased_halfedges: u64,
    /// Vertices that lost at least one half-edge.
    pub erased_affected_vertices: u64,
    pub labels: LabelCounts,
}

impl CmGenReport {
    pub fn affected_fraction(&self, n: usize) -> f64 {
        self.erased_affected_vertices as f64 / n as f64
    }
}

/// Samples a two-type configuration model on `n` vertices.
///
/// Type-i vertices receive `F_i`-distributed half-edges, each labelled `i`
/// with probability `xi_i` and `i'` otherwise. Label-1 and label-2 half-edges
/// are matched within their own pool, label-1' half-edges with label-2'
/// ones; each pool is shuffled and paired in order. Unmatched half-edges are
/// erased and counted in the report. Self-loops and repeated edges are kept.
pub fn generate_cm(
    n: usize,
    p1: f64,
    f1: &DegreeDistribution,
    f2: &DegreeDistribution,
    xi1: f64,
    xi2: f64,
    rng: &mut RngStream,
) -> Result<(TypedGraph, CmGenReport)> {
    if n == 0 {
        return Err(Error::param("n", "graph needs at least one vertex"));
    }
    if n > u32::MAX as usize {
        return Err(Error::param("n", "vertex count exceeds u32 range"));
    }
    for (name, x) in [("p1", p1), ("xi1", xi1), ("xi2", xi2)] {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::param(name, format!("must lie in [0, 1], got {x}")));
        }
    }
    let types = sample_types(n, p1, rng);
    let samplers = [f1.sampler(), f2.sampler()];
    let degrees: Vec<u64> = types.iter().map(|t| samplers[t.index()].sample(rng)).collect();

    let xi = [xi1, xi2];
    // own[i]: label i; cross[i]: label i'
    let mut own: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut cross: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (v, (&t, &d)) in types.iter().zip(&degrees).enumerate() {
        let i = t.index();
        for _ in 0..d {
            if rng.random::<f64>() < xi[i] {
                own[i].push(v as u32);
            } else {
                cross[i].push(v as u32);
            }
        }
    }
    let labels = LabelCounts {
        own1: own[0].len() as u64,
        cross1: cross[0].len() as u64,
        own2: own[1].len() as u64,
        cross2: cross[1].len() as u64,
    };

    let mut edges = Vec::with_capacity((own[0].len() + own[1].len()) / 2 + cross[0].len().min(cross[1].len()));
    let mut erased: Vec<u32> = Vec::new();
    for t in VertexType::BOTH {
        let pool = &mut own[t.index()];
        pool.shuffle(rng);
        let mut pairs = pool.chunks_exact(2);
        edges.extend(pairs.by_ref().map(|c| (c[0], c[1])));
        erased.extend_from_slice(pairs.remainder());
    }
    let [c1, c2] = &mut cross;
    c1.shuffle(rng);
    c2.shuffle(rng);
    let matched = c1.len().min(c2.len());
    edges.extend(c1.iter().zip(c2.iter()).map(|(&u, &v)| (u, v)));
    erased.extend_from_slice(&c1[matched..]);
    erased.extend_from_slice(&c2[matched..]);

    let erased_halfedges = erased.len() as u64;
    erased.sort_unstable();
    erased.dedup();
    let report = CmGenReport {
        erased_halfedges,
        erased_affected_vertices: erased.len() as u64,
        labels,
    };
    Ok((TypedGraph::from_parts(types, edges, true), report))
}
