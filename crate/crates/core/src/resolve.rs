//! Resolving sets: representations, resolving and minimality tests, exact
//! metric dimension, enumeration of minimal resolving sets and the exchange
//! property.
//!
//! The search routines work on `u64` vertex masks, so they accept graphs of
//! at most 64 vertices, further limited by [`Caps`].
//!
//! Every resolving set contains all but at most one vertex of each twin
//! class (two twins outside `W` would share a representation). The searches
//! only generate candidates of that shape: per class, either every member is
//! in `W` or exactly one member is left out.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{DistanceMatrix, SimpleGraph};
use crate::report::MdReport;
use crate::twins::{twin_partition, TwinPartition};

pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("graph is disconnected; metric dimension is only defined for connected graphs")]
    Disconnected,
    #[error("{what} is capped at {cap} vertices but the graph has {vertices}; raise the cap with --cap-oracle/--cap-enum and --unsafe-cap")]
    TooLarge {
        what: &'static str,
        vertices: usize,
        cap: usize,
    },
}

/// Vertex-count limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub oracle: usize,
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            oracle: 22,
            enumeration: 18,
        }
    }
}

/// Distances from one vertex to each landmark of an ordered set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation(pub Vec<Option<u32>>);

impl Representation {
    pub fn coords(&self) -> &[Option<u32>] {
        &self.0
    }
}

pub fn representation(dist: &DistanceMatrix, v: usize, landmarks: &[usize]) -> Representation {
    Representation(landmarks.iter().map(|&w| dist.get(v, w)).collect())
}

/// True iff all vertices have pairwise distinct representations.
/// The empty set resolves only graphs with at most one vertex.
pub fn is_resolving(dist: &DistanceMatrix, landmarks: &[usize]) -> bool {
    let mut seen = HashSet::with_capacity(dist.vertex_count());
    (0..dist.vertex_count()).all(|v| seen.insert(representation(dist, v, landmarks)))
}

/// Resolving, and no single removal stays resolving. Checking single
/// removals suffices because supersets of resolving sets resolve.
pub fn is_minimal_resolving(dist: &DistanceMatrix, landmarks: &[usize]) -> bool {
    if !is_resolving(dist, landmarks) {
        return false;
    }
    let mut set: Vec<usize> = landmarks.to_vec();
    set.sort_unstable();
    set.dedup();
    (0..set.len()).all(|i| {
        let mut smaller = set.clone();
        smaller.remove(i);
        !is_resolving(dist, &smaller)
    })
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn vec_to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Lexicographic order on the sorted member lists of two masks.
fn lex_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    mask_to_vec(a).cmp(&mask_to_vec(b))
}

/// For every vertex pair, the mask of vertices that tell them apart.
/// `W` resolves the graph iff it meets every mask.
#[derive(Debug, Clone)]
pub struct SeparatorIndex {
    n: usize,
    masks: Vec<u64>,
}

impl SeparatorIndex {
    pub fn new(dist: &DistanceMatrix) -> Self {
        let n = dist.vertex_count();
        assert!(n <= MAX_SEARCH_VERTICES);
        let mut masks = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for x in 0..n {
            let rx = dist.row(x);
            for y in x + 1..n {
                let ry = dist.row(y);
                let mask = (0..n)
                    .filter(|&z| rx[z] != ry[z])
                    .fold(0u64, |m, z| m | (1 << z));
                masks.push(mask);
            }
        }
        // tightest constraints first so failures surface early
        masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
        masks.dedup();
        Self { n, masks }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn resolves(&self, w: u64) -> bool {
        self.masks.iter().all(|&m| m & w != 0)
    }

    /// Resolving and every single removal breaks it.
    pub fn is_minimal(&self, w: u64) -> bool {
        self.resolves(w)
            && mask_to_vec(w)
                .into_iter()
                .all(|u| !self.resolves(w & !(1 << u)))
    }
}

fn check_search_size(
    graph: &SimpleGraph,
    cap: usize,
    what: &'static str,
) -> Result<(), ResolveError> {
    let vertices = graph.vertex_count();
    let cap = cap.min(MAX_SEARCH_VERTICES);
    if vertices > cap {
        return Err(ResolveError::TooLarge {
            what,
            vertices,
            cap,
        });
    }
    if !graph.is_connected() {
        return Err(ResolveError::Disconnected);
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact metric dimension with the lexicographically least basis.
///
/// Starts from the forced base (every twin class minus its largest member)
/// and ascends by the number of classes taken whole. Leaving out the
/// largest member is enough: swapping two twins is an automorphism, and it
/// yields the lexicographically smallest choice.
pub fn metric_dimension_oracle(graph: &SimpleGraph, caps: Caps) -> Result<MdReport, ResolveError> {
    check_search_size(graph, caps.oracle, "metric dimension search")?;
    let separators = SeparatorIndex::new(graph.distances());
    let partition = twin_partition(graph);
    let tops: Vec<u64> = partition
        .classes()
        .iter()
        .map(|c| 1u64 << c[c.len() - 1])
        .collect();
    let all = vec_to_mask(&(0..graph.vertex_count()).collect::<Vec<_>>());
    let base = tops.iter().fold(all, |m, t| m & !t);

    for extra in 0..=tops.len() {
        let mut candidates = Vec::new();
        for_each_combination(tops.len(), extra, |chosen| {
            candidates.push(chosen.iter().fold(base, |m, &c| m | tops[c]));
        });
        let best = candidates
            .into_par_iter()
            .filter(|&w| separators.resolves(w))
            .min_by(|&a, &b| lex_cmp(a, b));
        if let Some(w) = best {
            let basis = mask_to_vec(w);
            return Ok(MdReport::oracle(basis.len(), basis));
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// Mixed-radix decode of a candidate: per class, digit 0 keeps the whole
/// class and digit `i + 1` leaves out member `i`.
fn decode_candidate(mut index: usize, classes: &[Vec<usize>]) -> u64 {
    let mut mask = 0u64;
    for class in classes {
        let radix = class.len() + 1;
        let choice = index % radix;
        index /= radix;
        for (i, &v) in class.iter().enumerate() {
            if i + 1 != choice {
                mask |= 1 << v;
            }
        }
    }
    mask
}

/// All minimal resolving sets with at most `max_size` members, in
/// lexicographic order of their sorted member lists.
pub fn enumerate_minimal_resolving_sets(
    graph: &SimpleGraph,
    max_size: Option<usize>,
    caps: Caps,
) -> Result<Vec<Vec<usize>>, ResolveError> {
    Ok(minimal_masks(graph, max_size, caps)?
        .into_iter()
        .map(mask_to_vec)
        .collect())
}

fn minimal_masks(
    graph: &SimpleGraph,
    max_size: Option<usize>,
    caps: Caps,
) -> Result<Vec<u64>, ResolveError> {
    check_search_size(graph, caps.enumeration, "minimal resolving set enumeration")?;
    let separators = SeparatorIndex::new(graph.distances());
    let partition = twin_partition(graph);
    Ok(minimal_masks_with(&separators, &partition, max_size))
}

fn minimal_masks_with(
    separators: &SeparatorIndex,
    partition: &TwinPartition,
    max_size: Option<usize>,
) -> Vec<u64> {
    let classes = partition.classes();
    let total: usize = classes.iter().map(|c| c.len() + 1).product();
    let limit = max_size.unwrap_or(usize::MAX);
    // Vertices whose removal needs a resolvability check: members of classes
    // that are fully inside W. Removing a member of a class that already
    // misses one vertex leaves two twins outside, which never resolves.
    let mut found: Vec<u64> = (0..total)
        .into_par_iter()
        .filter_map(|index| {
            let w = decode_candidate(index, classes);
            if w.count_ones() as usize > limit || !separators.resolves(w) {
                return None;
            }
            let minimal = classes
                .iter()
                .filter(|c| c.iter().all(|&v| w & (1 << v) != 0))
                .flatten()
                .all(|&u| !separators.resolves(w & !(1 << u)));
            minimal.then_some(w)
        })
        .collect();
    found.sort_unstable_by(|&a, &b| lex_cmp(a, b));
    found
}

/// A violation of the exchange property: no `v` in `w2` makes
/// `(w1 \ {u}) ∪ {v}` a minimal resolving set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub u: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeReport {
    pub holds: bool,
    pub minimal_sets_count: usize,
    pub counterexample: Option<Counterexample>,
    /// Whether `v` was restricted to `w2 \ w1`.
    pub strict: bool,
}

impl ExchangeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "minimal_sets_count": self.minimal_sets_count,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "w1": c.w1,
                "w2": c.w2,
                "u": c.u,
            })),
            "strict": self.strict,
        })
    }
}

/// Decides the exchange property over all ordered pairs of distinct minimal
/// resolving sets `(W1, W2)` and all `u ∈ W1`. With `strict`, the
/// replacement `v` must come from `W2 \ W1`; otherwise any `v ∈ W2` counts,
/// including `v = u`.
pub fn exchange_property(
    graph: &SimpleGraph,
    strict: bool,
    caps: Caps,
) -> Result<ExchangeReport, ResolveError> {
    let sets = minimal_masks(graph, None, caps)?;
    let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let n = graph.vertex_count();

    let counterexample = sets.iter().find_map(|&w1| {
        mask_to_vec(w1).into_iter().find_map(|u| {
            let rest = w1 & !(1u64 << u);
            let mut good = 0u64;
            for v in 0..n {
                let bit = 1u64 << v;
                if rest & bit == 0 && index.contains_key(&(rest | bit)) {
                    good |= bit;
                }
            }
            if strict {
                good &= !w1;
            }
            sets.iter()
                .find(|&&w2| w2 != w1 && w2 & good == 0)
                .map(|&w2| Counterexample {
                    w1: mask_to_vec(w1),
                    w2: mask_to_vec(w2),
                    u,
                })
        })
    });

    Ok(ExchangeReport {
        holds: counterexample.is_none(),
        minimal_sets_count: sets.len(),
        counterexample,
        strict,
    })
}

/// Re-checks a counterexample from distances alone, without the search
/// machinery.
pub fn counterexample_is_valid(dist: &DistanceMatrix, ce: &Counterexample, strict: bool) -> bool {
    if ce.w1 == ce.w2
        || !ce.w1.contains(&ce.u)
        || !is_minimal_resolving(dist, &ce.w1)
        || !is_minimal_resolving(dist, &ce.w2)
    {
        return false;
    }
    ce.w2
        .iter()
        .filter(|v| !strict || !ce.w1.contains(v))
        .all(|&v| {
            let mut swapped: Vec<usize> = ce.w1.iter().copied().filter(|&x| x != ce.u).collect();
            if swapped.contains(&v) {
                // shrinks below a minimal set, cannot resolve
                return !is_resolving(dist, &swapped);
            }
            swapped.push(v);
            !is_minimal_resolving(dist, &swapped)
        })
}
