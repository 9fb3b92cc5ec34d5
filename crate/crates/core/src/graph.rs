//! Simple undirected graphs, power graphs of finite groups, all-pairs hop
//! distances and a few reference generators.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {count} vertices")]
    BadVertex { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("wheel needs at least 3 rim vertices, got {0}")]
    WheelTooSmall(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Hop distances are computed on first use and cached.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    adjacency: Vec<FixedBitSet>,
    distances: OnceLock<DistanceMatrix>,
}

impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for SimpleGraph {}

impl SimpleGraph {
    pub fn empty(vertex_count: usize) -> Self {
        Self {
            adjacency: vec![FixedBitSet::with_capacity(vertex_count); vertex_count],
            distances: OnceLock::new(),
        }
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let count = self.vertex_count();
        for w in [u, v] {
            if w >= count {
                return Err(GraphError::BadVertex { vertex: w, count });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.distances = OnceLock::new();
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Neighbor bitset of `u`.
    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, adj) in self.adjacency.iter().enumerate() {
            out.extend(adj.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|a| a.count_ones(..))
            .sum::<usize>()
            / 2
    }

    pub fn distances(&self) -> &DistanceMatrix {
        self.distances.get_or_init(|| all_pairs_distances(self))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || (0..n).all(|v| self.distances().get(0, v).is_some())
    }

    /// Edge list: header `p <vertex_count>` then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<SimpleGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |reason: String| GraphError::Parse {
                line: line_no,
                reason,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (&mut graph, fields.as_slice()) {
                (None, ["p", n]) => {
                    let n = n
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad vertex count `{n}`")))?;
                    graph = Some(SimpleGraph::empty(n));
                }
                (None, _) => return Err(parse_err("expected header `p <vertex_count>`".into())),
                (Some(g), [u, v]) => {
                    let u = u
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad vertex `{u}`")))?;
                    let v = v
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad vertex `{v}`")))?;
                    g.add_edge(u, v).map_err(|e| parse_err(e.to_string()))?;
                }
                (Some(_), _) => return Err(parse_err("expected `u v`".into())),
            }
        }
        graph.ok_or(GraphError::Parse {
            line: 0,
            reason: "missing header `p <vertex_count>`".into(),
        })
    }

    /// DOT rendering; `labels` supplies optional node labels.
    pub fn to_dot(&self, labels: Option<&dyn Fn(usize) -> String>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            match labels {
                Some(f) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", f(v).replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// All-pairs hop distances. Unreachable pairs are kept distinct from any
/// hop count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `None` when `v` is unreachable from `u`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Raw row for `u`; unreachable entries are `u32::MAX`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    pub fn diameter(&self) -> Option<u32> {
        if self.is_connected() {
            self.dist.iter().copied().max()
        } else {
            None
        }
    }
}

fn bfs_row(graph: &SimpleGraph, source: usize, row: &mut [u32]) {
    row.fill(UNREACHABLE);
    row[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = row[u] + 1;
        for v in graph.adjacency[u].ones() {
            if row[v] == UNREACHABLE {
                row[v] = next;
                queue.push_back(v);
            }
        }
    }
}

/// BFS from every source; rows are filled independently in parallel.
pub fn all_pairs_distances(graph: &SimpleGraph) -> DistanceMatrix {
    let n = graph.vertex_count();
    let mut dist = vec![UNREACHABLE; n * n];
    if n > 0 {
        dist.par_chunks_mut(n)
            .enumerate()
            .for_each(|(source, row)| bfs_row(graph, source, row));
    }
    DistanceMatrix { n, dist }
}

/// Power graph of `group`: `x ~ y` iff `x != y` and one lies in the cyclic
/// subgroup generated by the other.
pub fn power_graph(group: &FiniteGroup) -> SimpleGraph {
    let n = group.order();
    let mut graph = SimpleGraph::empty(n);
    for x in group.elements() {
        for y in group.cyclic_subgroup(x) {
            if y != x {
                graph.adjacency[x].insert(y);
                graph.adjacency[y].insert(x);
            }
        }
    }
    assert!(
        graph.is_connected(),
        "power graph of {} is disconnected",
        group.label()
    );
    graph
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.adjacency[u].insert(v);
            g.adjacency[v].insert(u);
        }
    }
    g
}

pub fn path_graph(n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

pub fn cycle_graph(n: usize) -> SimpleGraph {
    let mut g = path_graph(n);
    if n >= 3 {
        g.add_edge(0, n - 1).expect("cycle edge is valid");
    }
    g
}

pub fn star_graph(leaves: usize) -> SimpleGraph {
    SimpleGraph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
}

/// Rim `0..rim` forming a cycle plus hub `rim` adjacent to every rim vertex
/// (`rim + 1` vertices in total).
pub fn wheel_graph(rim: usize) -> Result<SimpleGraph, GraphError> {
    if rim < 3 {
        return Err(GraphError::WheelTooSmall(rim));
    }
    let mut g = cycle_graph(rim);
    g.adjacency.push(FixedBitSet::with_capacity(rim + 1));
    for a in &mut g.adjacency {
        a.grow(rim + 1);
    }
    for v in 0..rim {
        g.add_edge(v, rim)?;
    }
    Ok(g)
}

/// Random recursive tree: vertex `v >= 1` attaches to a parent drawn
/// uniformly from `0..v`. Deterministic per seed.
pub fn random_tree(n: usize, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SimpleGraph::empty(n);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.add_edge(parent, v).expect("tree edges are valid");
    }
    g
}

/// Replaces vertex `v` by an independent set (`clique = false`) or a clique
/// (`clique = true`) of `sizes[v]` copies, each copy inheriting `v`'s
/// neighbors. Copies of `v` are numbered consecutively.
pub fn blow_up(graph: &SimpleGraph, sizes: &[usize], clique: &[bool]) -> SimpleGraph {
    assert_eq!(sizes.len(), graph.vertex_count());
    assert_eq!(clique.len(), graph.vertex_count());
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        assert!(s >= 1, "blow-up sizes must be positive");
        offsets.push(total);
        total += s;
    }
    let mut g = SimpleGraph::empty(total);
    for (u, v) in graph.edges() {
        for a in offsets[u]..offsets[u] + sizes[u] {
            for b in offsets[v]..offsets[v] + sizes[v] {
                g.add_edge(a, b).expect("blow-up edges are valid");
            }
        }
    }
    for (v, &is_clique) in clique.iter().enumerate() {
        if is_clique {
            for a in offsets[v]..offsets[v] + sizes[v] {
                for b in a + 1..offsets[v] + sizes[v] {
                    g.add_edge(a, b).expect("blow-up edges are valid");
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_direct_product};

    fn nbrs(g: &SimpleGraph, u: usize) -> Vec<usize> {
        g.neighbors(u).ones().collect()
    }

    #[test]
    fn prime_cyclic_is_complete() {
        let g = power_graph(&make_cyclic(5).unwrap());
        assert_eq!(g, complete_graph(5));
    }

    #[test]
    fn z6_neighborhoods() {
        let g = power_graph(&make_cyclic(6).unwrap());
        assert_eq!(nbrs(&g, 3), vec![0, 1, 5]);
        assert_eq!(nbrs(&g, 2), vec![0, 1, 4, 5]);
        assert_eq!(g.distances().get(2, 3), Some(2));
    }

    #[test]
    fn dihedral_reflections_hang_off_identity() {
        for n in 2..9 {
            let g = power_graph(&make_dihedral(n).unwrap());
            for w in n..2 * n {
                assert_eq!(nbrs(&g, w), vec![0], "n={n} w={w}");
            }
        }
    }

    #[test]
    fn identity_is_universal() {
        let z2 = make_cyclic(2).unwrap();
        let z4 = make_cyclic(4).unwrap();
        for grp in [
            make_dihedral(6).unwrap(),
            make_cyclic(12).unwrap(),
            make_direct_product(&[z2, z4]).unwrap(),
        ] {
            let g = power_graph(&grp);
            assert_eq!(g.degree(grp.identity()), grp.order() - 1);
        }
    }

    #[test]
    fn distances_basic() {
        let k4 = complete_graph(4);
        let d = k4.distances();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.get(u, v), Some(u32::from(u != v)));
            }
        }
        assert_eq!(path_graph(3).distances().get(0, 2), Some(2));

        let split = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.distances().get(0, 2), None);
        assert!(!split.is_connected());
        assert_eq!(split.distances().diameter(), None);
    }

    #[test]
    fn generators() {
        assert_eq!(wheel_graph(3).unwrap(), complete_graph(4));
        assert_eq!(wheel_graph(2), Err(GraphError::WheelTooSmall(2)));
        let w8 = wheel_graph(8).unwrap();
        assert_eq!(w8.vertex_count(), 9);
        assert_eq!(w8.edge_count(), 16);
        assert_eq!(w8.degree(8), 8);

        let k1 = complete_graph(1);
        assert_eq!(k1.vertex_count(), 1);
        assert_eq!(k1.edge_count(), 0);

        let t = random_tree(7, 1);
        assert_eq!(t.edge_count(), 6);
        assert!(t.is_connected());
        assert_eq!(random_tree(7, 1), t);
    }

    #[test]
    fn blow_up_makes_twins() {
        let g = blow_up(&path_graph(3), &[2, 1, 3], &[true, false, false]);
        assert_eq!(g.vertex_count(), 6);
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(3, 4));
        assert!(g.has_edge(2, 5));
        assert!(g.is_connected());
    }

    #[test]
    fn edge_list_format() {
        let g = power_graph(&make_cyclic(1).unwrap());
        assert_eq!(g.to_edge_list(), "p 1\n");
        let s = path_graph(3).to_edge_list();
        assert_eq!(s, "p 3\n0 1\n1 2\n");
        assert_eq!(SimpleGraph::parse_edge_list(&s).unwrap(), path_graph(3));

        assert!(matches!(
            SimpleGraph::parse_edge_list("0 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            SimpleGraph::parse_edge_list("p 2\n0 2\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(SimpleGraph::parse_edge_list("p 2\n1 1\n").is_err());
        assert!(SimpleGraph::parse_edge_list("").is_err());
    }

    #[test]
    fn dot_format() {
        let dot = path_graph(2).to_dot(None);
        assert_eq!(dot, "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
        let named = |v: usize| format!("v{v}");
        assert!(path_graph(2)
            .to_dot(Some(&named))
            .contains("0 [label=\"v0\"]"));
    }
}
