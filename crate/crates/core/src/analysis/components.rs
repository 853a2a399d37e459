use crate::graph::TypedGraph;

/// Disjoint-set forest with union by size and path compression.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns `true` if they were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    pub fn set_size(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    /// Component sizes, largest first; sums to `n`.
    pub sizes_desc: Vec<usize>,
    /// Largest component size over `n` (0 for the empty graph).
    pub largest_fraction: f64,
    /// Number of type-1 and type-2 vertices in the largest component.
    pub per_type_in_largest: [usize; 2],
}

impl ComponentReport {
    /// The `k` largest sizes, padded with zeros.
    pub fn top_k(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.sizes_desc.iter().copied().take(k).collect();
        out.resize(k, 0);
        out
    }
}

/// Component representative for every vertex.
pub fn component_labels(g: &TypedGraph) -> Vec<u32> {
    let mut uf = union_edges(g);
    (0..g.n() as u32).map(|v| uf.find(v)).collect()
}

fn union_edges(g: &TypedGraph) -> UnionFind {
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    uf
}

pub fn components(g: &TypedGraph) -> ComponentReport {
    let n = g.n();
    let mut uf = union_edges(g);
    let mut roots = Vec::new();
    let mut largest_root = None;
    let mut largest = 0u32;
    for v in 0..n as u32 {
        if uf.find(v) == v {
            let s = uf.set_size(v);
            roots.push(s as usize);
            if s > largest {
                largest = s;
                largest_root = Some(v);
            }
        }
    }
    roots.sort_unstable_by(|a, b| b.cmp(a));
    let mut per_type = [0usize; 2];
    if let Some(root) = largest_root {
        for v in 0..n as u32 {
            if uf.find(v) == root {
                per_type[g.vertex_type(v as usize).index()] += 1;
            }
        }
    }
    ComponentReport {
        largest_fraction: if n == 0 { 0.0 } else { largest as f64 / n as f64 },
        sizes_desc: roots,
        per_type_in_largest: per_type,
    }
}

pub fn top_k_component_sizes(g: &TypedGraph, k: usize) -> Vec<usize> {
    components(g).top_k(k)
}
