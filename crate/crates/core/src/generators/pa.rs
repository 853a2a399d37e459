use rand::Rng;

use crate::analytic::PaParams;
use crate::error::{Error, Result};
use crate::graph::{TypedGraph, VertexType};
use crate::rng::RngStream;

/// Degree-proportional sampling state: one list entry per edge end incident
/// to a vertex of each type, so a uniform entry is a degree-biased vertex.
#[derive(Debug, Clone)]
pub struct PaState {
    endpoints: [Vec<u32>; 2],
}

impl PaState {
    /// `L_i(t)`: total degree of the type-i vertices.
    pub fn total_degree(&self, t: VertexType) -> u64 {
        self.endpoints[t.index()].len() as u64
    }
}

/// Grows a two-type preferential attachment graph up to time `t`.
///
/// Time 1 is a type-1 vertex joined to a type-2 vertex. At each later time a
/// vertex arrives with type 1 w.p. `p1`, picks its own type w.p. `theta_i`
/// (the other type otherwise) and attaches to an existing vertex of the
/// picked type chosen proportionally to degree. The result has `t + 1`
/// vertices and `t` edges, and vertex id `s >= 1` arrived at time `s`.
pub fn generate_pa(t: u64, p: &PaParams, rng: &mut RngStream) -> Result<TypedGraph> {
    generate_pa_with_state(t, p, rng).map(|(g, _)| g)
}

pub fn generate_pa_with_state(t: u64, p: &PaParams, rng: &mut RngStream) -> Result<(TypedGraph, PaState)> {
    if t < 1 {
        return Err(Error::param("t", "final time must be >= 1"));
    }
    if t >= u32::MAX as u64 {
        return Err(Error::param("t", "final time exceeds u32 vertex range"));
    }
    p.validate()?;
    let n = t as usize + 1;
    let mut types = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(t as usize);
    types.extend([VertexType::Type1, VertexType::Type2]);
    edges.push((0u32, 1u32));
    let mut state = PaState {
        endpoints: [vec![0], vec![1]],
    };
    for e in state.endpoints.iter_mut() {
        e.reserve(t as usize);
    }

    for v in 2..n as u32 {
        let own = if rng.random::<f64>() < p.p1 {
            VertexType::Type1
        } else {
            VertexType::Type2
        };
        let target_type = if rng.random::<f64>() < p.theta(own) {
            own
        } else {
            own.complement()
        };
        let pool = &state.endpoints[target_type.index()];
        // Both seed vertices have degree 1 and degrees never decrease.
        assert!(!pool.is_empty(), "type {target_type} has zero total degree");
        let u = pool[rng.index(pool.len())];
        edges.push((v, u));
        types.push(own);
        state.endpoints[own.index()].push(v);
        state.endpoints[target_type.index()].push(u);
    }
    Ok((TypedGraph::from_parts(types, edges, false), state))
}
