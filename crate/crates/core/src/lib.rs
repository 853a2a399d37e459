//! Two-type random graph models.
//!
//! Generators, closed-form thresholds and exponents, graph analytics and a
//! seeded experiment runner for the two-type Erdős–Rényi graph, the two-type
//! configuration model and two-type preferential attachment.
//!
//! ```
//! use twotype::{analytic, generators, analysis, RngStream};
//!
//! let params = analytic::ErParams::from_means(0.5, 1.5, 1.5, 0.5).unwrap();
//! assert!((analytic::er_lambda_c(&params).unwrap() - 1.5).abs() < 1e-12);
//! let g = generators::generate_er(2_000, &params, &mut RngStream::from_seed(1)).unwrap();
//! let report = analysis::components(&g);
//! assert!(report.largest_fraction > 0.3);
//! ```

pub mod analysis;
pub mod analytic;
pub mod degree_dist;
pub mod edgelist;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod rng;
mod special;

pub use error::{Error, Result};
pub use graph::{TypedGraph, VertexDegrees, VertexType};
pub use rng::RngStream;

pub use special::{ln_gamma, ln_gamma_ratio};

/// Version string embedded in output headers.
pub const TOOL_VERSION: &str = concat!("twotype ", env!("CARGO_PKG_VERSION"));
