//! Graph generators for the three two-type models.
//!
//! Each generator is a deterministic function of its parameters and the
//! [`RngStream`](crate::rng::RngStream) it is handed.

mod cm;
mod er;
mod pa;

pub use cm::{generate_cm, CmGenReport, LabelCounts};
pub use er::generate_er;
pub use pa::{generate_pa, generate_pa_with_state, PaState};

use rand::Rng;

use crate::graph::VertexType;
use crate::rng::RngStream;

/// i.i.d. vertex types with `P(Type1) = p1`.
fn sample_types(n: usize, p1: f64, rng: &mut RngStream) -> Vec<VertexType> {
    (0..n)
        .map(|_| {
            if rng.random::<f64>() < p1 {
                VertexType::Type1
            } else {
                VertexType::Type2
            }
        })
        .collect()
}
