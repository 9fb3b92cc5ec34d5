//! Twin classes: `u ≡ v` iff `N(u) = N(v)` or `N[u] = N[v]`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::report::{MdReport, Method};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwinError {
    #[error("vertex {0} is a singleton twin; the twin-class formula does not apply")]
    HasSingletonTwin(usize),
}

pub fn open_neighborhood(graph: &SimpleGraph, u: usize) -> FixedBitSet {
    graph.neighbors(u).clone()
}

pub fn closed_neighborhood(graph: &SimpleGraph, u: usize) -> FixedBitSet {
    let mut set = graph.neighbors(u).clone();
    set.insert(u);
    set
}

/// Reflexive: every vertex is its own twin.
pub fn are_twins(graph: &SimpleGraph, u: usize, v: usize) -> bool {
    u == v
        || graph.neighbors(u) == graph.neighbors(v)
        || closed_neighborhood(graph, u) == closed_neighborhood(graph, v)
}

/// Partition of the vertex set into twin classes, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_members(&self, v: usize) -> &[usize] {
        &self.classes[self.class_of[v]]
    }

    /// Ids of classes of size 1.
    pub fn singleton_ids(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].len() == 1)
            .collect()
    }

    /// Vertices that form a class on their own.
    pub fn singletons(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "classes": self.classes,
            "singletons": self.singletons(),
        })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Groups vertices sharing an open or a closed neighborhood, then verifies
/// every pair inside each class.
pub fn twin_partition(graph: &SimpleGraph) -> TwinPartition {
    let n = graph.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut by_open: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut by_closed: HashMap<Vec<usize>, usize> = HashMap::new();
    for u in 0..n {
        let open: Vec<usize> = graph.neighbors(u).ones().collect();
        let closed: Vec<usize> = closed_neighborhood(graph, u).ones().collect();
        let first_open = *by_open.entry(open).or_insert(u);
        union(&mut parent, first_open, u);
        let first_closed = *by_closed.entry(closed).or_insert(u);
        union(&mut parent, first_closed, u);
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        let id = *root_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(v);
        class_of[v] = id;
    }

    for class in &classes {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                assert!(
                    are_twins(graph, u, v),
                    "twin grouping merged non-twins {u} and {v}"
                );
            }
        }
    }

    TwinPartition { classes, class_of }
}

pub fn singleton_twins(graph: &SimpleGraph) -> Vec<usize> {
    twin_partition(graph).singletons()
}

/// Metric dimension of a graph without singleton twins: the number of
/// vertices minus the number of twin classes.
///
/// The witness basis keeps every class except its largest member.
pub fn md_formula_no_singleton(graph: &SimpleGraph) -> Result<MdReport, TwinError> {
    let partition = twin_partition(graph);
    if let Some(&v) = partition.singletons().first() {
        return Err(TwinError::HasSingletonTwin(v));
    }
    let beta = graph.vertex_count() - partition.class_count();
    let mut basis: Vec<usize> = partition
        .classes()
        .iter()
        .flat_map(|c| c[..c.len() - 1].iter().copied())
        .collect();
    basis.sort_unstable();
    Ok(MdReport {
        beta,
        witness_basis: Some(basis),
        method: Method::FormulaTwin,
        cross_check: None,
        note: Some("every minimal resolving set is a basis".into()),
    })
}
