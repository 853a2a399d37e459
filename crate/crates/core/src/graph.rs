//! Vertex-typed (multi)graphs shared by every generator and analysis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two vertex types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    Type1,
    Type2,
}

impl VertexType {
    pub const BOTH: [VertexType; 2] = [VertexType::Type1, VertexType::Type2];

    /// The other type (`i^c`).
    pub fn complement(self) -> Self {
        match self {
            VertexType::Type1 => VertexType::Type2,
            VertexType::Type2 => VertexType::Type1,
        }
    }

    /// 0 for `Type1`, 1 for `Type2`; convenient for indexing `[_; 2]` arrays.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            VertexType::Type1 => 0,
            VertexType::Type2 => 1,
        }
    }

    /// 1 or 2, as written in files.
    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(VertexType::Type1),
            2 => Some(VertexType::Type2),
            _ => None,
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Vertex ids are dense `0..n` and assigned in creation order, so for
/// preferential attachment the id doubles as the arrival time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedGraph {
    types: Vec<VertexType>,
    edges: Vec<(u32, u32)>,
    multigraph: bool,
}

impl TypedGraph {
    /// Builds a graph, checking that every endpoint is a valid vertex id.
    pub fn new(types: Vec<VertexType>, edges: Vec<(u32, u32)>, multigraph: bool) -> Result<Self> {
        let n = types.len();
        if n > u32::MAX as usize {
            return Err(Error::param("n", "vertex count exceeds u32 range"));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
            return Err(Error::param(
                "edges",
                format!("edge ({u}, {v}) references a vertex outside 0..{n}"),
            ));
        }
        Ok(TypedGraph {
            types,
            edges,
            multigraph,
        })
    }

    /// Constructor for generators, which guarantee validity themselves.
    pub(crate) fn from_parts(types: Vec<VertexType>, edges: Vec<(u32, u32)>, multigraph: bool) -> Self {
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| (u as usize) < types.len() && (v as usize) < types.len()));
        TypedGraph {
            types,
            edges,
            multigraph,
        }
    }

    pub fn n(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[VertexType] {
        &self.types
    }

    pub fn vertex_type(&self, v: usize) -> VertexType {
        self.types[v]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    /// Number of vertices of each type.
    pub fn type_counts(&self) -> [usize; 2] {
        let mut counts = [0usize; 2];
        for t in &self.types {
            counts[t.index()] += 1;
        }
        counts
    }

    /// Total degree plus degree split by neighbour type, for every vertex.
    pub fn degrees(&self) -> Vec<VertexDegrees> {
        total_and_per_type_degrees(self)
    }
}

/// Degree of one vertex, split by the type of the neighbour.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VertexDegrees {
    pub total: u32,
    /// `to_type[j]` is the number of edge ends leading to a vertex of type `j`.
    pub to_type: [u32; 2],
}

impl VertexDegrees {
    pub fn to(&self, t: VertexType) -> u32 {
        self.to_type[t.index()]
    }
}

/// Per-vertex `(D_s, D_{s->1}, D_{s->2})`.
///
/// A self-loop adds 2 to its vertex's total degree and 2 to its own-type
/// count, so the totals always sum to `2 * |edges|`.
pub fn total_and_per_type_degrees(g: &TypedGraph) -> Vec<VertexDegrees> {
    let mut out = vec![VertexDegrees::default(); g.n()];
    for &(u, v) in &g.edges {
        let (u, v) = (u as usize, v as usize);
        let (tu, tv) = (g.types[u], g.types[v]);
        out[u].total += 1;
        out[u].to_type[tv.index()] += 1;
        out[v].total += 1;
        out[v].to_type[tu.index()] += 1;
    }
    out
}
