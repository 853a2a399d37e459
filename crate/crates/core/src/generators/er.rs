use rand::Rng;

use crate::analytic::ErParams;
use crate::error::{Error, Result};
use crate::graph::{TypedGraph, VertexType};
use crate::rng::RngStream;

use super::sample_types;

/// Samples a two-type Erdős–Rényi graph on `n` vertices.
///
/// Edges are drawn separately in the three pair classes (1-1, 2-2, 1-2)
/// with geometric skipping over the class's pairs, so the expected cost is
/// `O(n + |E|)`. The result is simple.
pub fn generate_er(n: usize, p: &ErParams, rng: &mut RngStream) -> Result<TypedGraph> {
    if n == 0 {
        return Err(Error::param("n", "graph needs at least one vertex"));
    }
    if n > u32::MAX as usize {
        return Err(Error::param("n", "vertex count exceeds u32 range"));
    }
    p.validate()?;
    let types = sample_types(n, p.p1, rng);
    let mut by_type: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (v, t) in types.iter().enumerate() {
        by_type[t.index()].push(v as u32);
    }

    let nf = n as f64;
    let prob = |rate: f64| (rate / nf).min(1.0);
    let mut edges = Vec::new();
    for t in VertexType::BOTH {
        same_class_pairs(&by_type[t.index()], prob(p.alpha(t)), rng, &mut edges);
    }
    cross_class_pairs(&by_type[0], &by_type[1], prob(p.beta), rng, &mut edges);
    Ok(TypedGraph::from_parts(types, edges, false))
}

/// Number of failures before the next success of a Bernoulli(q) sequence,
/// given `ln(1 - q)`. Returned as `f64` because it can exceed any index range.
fn geometric_skip(ln_miss: f64, rng: &mut RngStream) -> f64 {
    let r: f64 = rng.random();
    ((1.0 - r).ln() / ln_miss).floor()
}

// Pairs (members[v], members[w]) with w < v, walked in row-major order.
fn same_class_pairs(members: &[u32], q: f64, rng: &mut RngStream, edges: &mut Vec<(u32, u32)>) {
    let m = members.len();
    if q <= 0.0 || m < 2 {
        return;
    }
    if q >= 1.0 {
        for v in 1..m {
            for w in 0..v {
                edges.push((members[v], members[w]));
            }
        }
        return;
    }
    let ln_miss = (-q).ln_1p();
    let (mut v, mut w) = (1usize, -1i64);
    while v < m {
        let skip = geometric_skip(ln_miss, rng);
        // Remaining pairs are fewer than m^2 / 2; anything larger ends the walk.
        if skip >= (m as f64) * (m as f64) {
            break;
        }
        w += 1 + skip as i64;
        while v < m && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < m {
            edges.push((members[v], members[w as usize]));
        }
    }
}

// All pairs in left x right, walked as one linear index.
fn cross_class_pairs(left: &[u32], right: &[u32], q: f64, rng: &mut RngStream, edges: &mut Vec<(u32, u32)>) {
    let total = left.len() as u64 * right.len() as u64;
    if q <= 0.0 || total == 0 {
        return;
    }
    let width = right.len() as u64;
    if q >= 1.0 {
        for &u in left {
            for &v in right {
                edges.push((u, v));
            }
        }
        return;
    }
    let ln_miss = (-q).ln_1p();
    let mut idx: i128 = -1;
    loop {
        let skip = geometric_skip(ln_miss, rng);
        if skip >= total as f64 {
            break;
        }
        idx += 1 + skip as i128;
        if idx >= total as i128 {
            break;
        }
        let i = idx as u64;
        edges.push((left[(i / width) as usize], right[(i % width) as usize]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn capped_probability_gives_the_edge() {
        let p = ErParams::new(1.0, 2.0, 0.0, 0.0).unwrap();
        for seed in 0..20 {
            let g = generate_er(2, &p, &mut RngStream::from_seed(seed)).unwrap();
            assert_eq!(g.edge_count(), 1);
        }
    }

    #[test]
    fn huge_rates_give_complete_graph() {
        let p = ErParams::new(0.5, 100.0, 100.0, 100.0).unwrap();
        let g = generate_er(30, &p, &mut RngStream::from_seed(1)).unwrap();
        assert_eq!(g.edge_count(), 30 * 29 / 2);
    }

    #[test]
    fn simple_graph() {
        let p = ErParams::new(0.4, 5.0, 8.0, 6.0).unwrap();
        let g = generate_er(300, &p, &mut RngStream::from_seed(3)).unwrap();
        let mut seen = HashSet::new();
        for &(u, v) in g.edges() {
            assert_ne!(u, v);
            assert!(seen.insert((u.min(v), u.max(v))), "repeated edge {u}-{v}");
        }
    }

    #[test]
    fn zero_beta_has_no_cross_edges() {
        let p = ErParams::from_means(0.5, 1.5, 1.5, 0.0).unwrap();
        let g = generate_er(10_000, &p, &mut RngStream::from_seed(11)).unwrap();
        assert!(g.edge_count() > 0);
        assert!(g
            .edges()
            .iter()
            .all(|&(u, v)| g.vertex_type(u as usize) == g.vertex_type(v as usize)));
    }

    // Exhaustive check of pair-class edge frequencies on a tiny graph.
    #[test]
    fn pair_frequencies_match_probabilities() {
        let n = 6usize;
        let p = ErParams::new(0.5, 1.2, 3.0, 2.4).unwrap();
        let reps = 40_000;
        let mut same = [0u64; 2];
        let mut same_pairs = [0u64; 2];
        let mut cross = 0u64;
        let mut cross_pairs = 0u64;
        for r in 0..reps {
            let g = generate_er(n, &p, &mut RngStream::new(77, r)).unwrap();
            let [c1, c2] = g.type_counts();
            same_pairs[0] += (c1 * c1.saturating_sub(1) / 2) as u64;
            same_pairs[1] += (c2 * c2.saturating_sub(1) / 2) as u64;
            cross_pairs += (c1 * c2) as u64;
            for &(u, v) in g.edges() {
                let (tu, tv) = (g.vertex_type(u as usize), g.vertex_type(v as usize));
                if tu == tv {
                    same[tu.index()] += 1;
                } else {
                    cross += 1;
                }
            }
        }
        let expect = [1.2 / 6.0, 3.0 / 6.0];
        for i in 0..2 {
            let f = same[i] as f64 / same_pairs[i] as f64;
            assert!((f - expect[i]).abs() < 0.01, "class {i}: {f}");
        }
        let f = cross as f64 / cross_pairs as f64;
        assert!((f - 0.4).abs() < 0.01, "cross: {f}");
    }
}
