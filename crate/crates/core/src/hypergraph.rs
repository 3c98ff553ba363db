//! k-uniform hypergraphs and their structural predicates.
//!
//! Vertices are the dense ids `0..n`. Every edge is stored as a sorted vertex
//! list and the edge list itself is kept in lexicographic order, so two
//! hypergraphs compare equal exactly when their edge sets coincide and the
//! JSON form is deterministic.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the vertex count accepted by [`are_isomorphic`].
pub const ISOMORPHISM_VERTEX_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Wire form of a hypergraph: `{"k": .., "n": .., "edges": [[..], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawHypergraph {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.k, raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            k: h.k,
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Validates and normalizes an edge list into a k-uniform hypergraph.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("k = {k}, need k >= 2")));
        }
        if n < 1 {
            return Err(Error::InvalidHypergraph("n must be at least 1".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidHypergraph("at least one edge required".into()));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for mut edge in edges {
            edge.sort_unstable();
            if edge.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {edge:?} has {} vertices, expected {k}",
                    edge.len()
                )));
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {edge:?} repeats a vertex"
                )));
            }
            if edge[k - 1] >= n {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {edge:?} has a vertex outside 0..{n}"
                )));
            }
            normalized.push(edge);
        }
        normalized.sort();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(format!(
                "multiple edge {:?}",
                w[0]
            )));
        }
        Ok(Hypergraph {
            k,
            n,
            edges: normalized,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Index of `edge` (any vertex order) in the normalized edge list.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.binary_search(&sorted).ok()
    }

    /// For each vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(e);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypergraph::new(self.k, self.n, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} m={} edges=", self.k, self.n, self.m())?;
        for (i, edge) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{edge:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStats {
    pub degrees: Vec<usize>,
    pub pendent_vertices: Vec<usize>,
    pub pendent_edges: Vec<usize>,
    /// Number of vertices of degree other than one.
    pub non_pendent_count: usize,
}

/// Degrees and pendency.
///
/// A pendent edge is one with at least `k - 1` pendent vertices; the only way
/// to reach `k` is an isolated single edge, which is counted as pendent.
pub fn vertex_stats(h: &Hypergraph) -> VertexStats {
    let degrees = h.degrees();
    let pendent_vertices: Vec<usize> = (0..h.n()).filter(|&v| degrees[v] == 1).collect();
    let pendent_edges = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().filter(|&&v| degrees[v] == 1).count() + 1 >= h.k())
        .map(|(i, _)| i)
        .collect();
    let non_pendent_count = h.n() - pendent_vertices.len();
    VertexStats {
        degrees,
        pendent_vertices,
        pendent_edges,
        non_pendent_count,
    }
}

/// Number of non-pendent vertices.
pub fn non_pendent_count(h: &Hypergraph) -> usize {
    h.degrees().iter().filter(|&&d| d != 1).count()
}

pub fn is_connected(h: &Hypergraph) -> bool {
    let inc = h.incidence();
    let mut seen_vertex = vec![false; h.n()];
    let mut seen_edge = vec![false; h.m()];
    let mut queue = VecDeque::from([0usize]);
    seen_vertex[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &e in &inc[v] {
            if std::mem::replace(&mut seen_edge[e], true) {
                continue;
            }
            for &w in h.edge(e) {
                if !std::mem::replace(&mut seen_vertex[w], true) {
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    reached == h.n()
}

/// Connected and acyclic, using the edge-count criterion `m(k-1) = n-1`.
pub fn is_supertree(h: &Hypergraph) -> bool {
    h.m() * (h.k() - 1) + 1 == h.n() && is_connected(h)
}

/// Isomorphism-class key of a supertree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical form of a supertree.
///
/// The incidence graph of a supertree is a tree. Dropping the pendent
/// vertices leaves a smaller tree on the edges and the non-pendent vertices;
/// since each edge gets back `k` minus its number of non-pendent neighbours,
/// that reduced tree determines the supertree up to isomorphism. Its
/// AHU encoding, minimized over every choice of root, is the key. Edge nodes
/// are written `[..]` and vertex nodes `(..)`.
pub fn canonical_key(h: &Hypergraph) -> Result<CanonicalKey> {
    if !is_supertree(h) {
        return Err(Error::NotSupertree);
    }
    let degrees = h.degrees();
    let m = h.m();
    let mut node_of_vertex = vec![usize::MAX; h.n()];
    let mut next = m;
    for v in 0..h.n() {
        if degrees[v] >= 2 {
            node_of_vertex[v] = next;
            next += 1;
        }
    }
    let mut adj = vec![Vec::new(); next];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            let node = node_of_vertex[v];
            if node != usize::MAX {
                adj[e].push(node);
                adj[node].push(e);
            }
        }
    }
    let best = (0..next)
        .map(|root| ahu_encode(&adj, m, root, usize::MAX))
        .min()
        .expect("at least one edge node");
    Ok(CanonicalKey(format!("{}:{best}", h.k())))
}

fn ahu_encode(adj: &[Vec<usize>], edge_nodes: usize, node: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[node]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| ahu_encode(adj, edge_nodes, c, node))
        .collect();
    children.sort_unstable();
    let (open, close) = if node < edge_nodes { ('[', ']') } else { ('(', ')') };
    let mut out = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    out.push(open);
    for c in children {
        out.push_str(&c);
    }
    out.push(close);
    out
}

pub fn are_isomorphic(h1: &Hypergraph, h2: &Hypergraph) -> Result<bool> {
    Ok(find_isomorphism(h1, h2, ISOMORPHISM_VERTEX_LIMIT)?.is_some())
}

/// Exhaustive backtracking search for a vertex bijection `f` with
/// `f(E(h1)) = E(h2)`. Returns `f` as a lookup table.
pub fn find_isomorphism(
    h1: &Hypergraph,
    h2: &Hypergraph,
    vertex_limit: usize,
) -> Result<Option<Vec<usize>>> {
    let n = h1.n().max(h2.n());
    if n > vertex_limit {
        return Err(Error::IsomorphismLimit {
            n,
            limit: vertex_limit,
        });
    }
    if h1.k() != h2.k() || h1.n() != h2.n() || h1.m() != h2.m() {
        return Ok(None);
    }
    let inv1 = vertex_invariants(h1);
    let inv2 = vertex_invariants(h2);
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }

    let search = IsoSearch {
        h1,
        h2,
        inc1: h1.incidence(),
        inc2: h2.incidence(),
        edges2: h2.edges().iter().cloned().collect(),
        order: traversal_order(h1),
        inv1,
        inv2,
    };
    let mut map = vec![usize::MAX; h1.n()];
    let mut used = vec![false; h2.n()];
    Ok(search.extend(0, &mut map, &mut used).then_some(map))
}

/// Per-vertex invariant: degree plus the degree profile of every incident edge.
fn vertex_invariants(h: &Hypergraph) -> Vec<(usize, Vec<Vec<usize>>)> {
    let deg = h.degrees();
    let inc = h.incidence();
    (0..h.n())
        .map(|v| {
            let mut profile: Vec<Vec<usize>> = inc[v]
                .iter()
                .map(|&e| {
                    let mut d: Vec<usize> = h.edge(e).iter().map(|&w| deg[w]).collect();
                    d.sort_unstable();
                    d
                })
                .collect();
            profile.sort();
            (deg[v], profile)
        })
        .collect()
}

/// Breadth-first vertex order so each vertex after the first in its
/// component shares an edge with an earlier one.
fn traversal_order(h: &Hypergraph) -> Vec<usize> {
    let inc = h.incidence();
    let deg = h.degrees();
    let mut starts: Vec<usize> = (0..h.n()).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &inc[v] {
                for &w in h.edge(e) {
                    if !std::mem::replace(&mut seen[w], true) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

struct IsoSearch<'a> {
    h1: &'a Hypergraph,
    h2: &'a Hypergraph,
    inc1: Vec<Vec<usize>>,
    inc2: Vec<Vec<usize>>,
    edges2: HashSet<Vec<usize>>,
    order: Vec<usize>,
    inv1: Vec<(usize, Vec<Vec<usize>>)>,
    inv2: Vec<(usize, Vec<Vec<usize>>)>,
}

impl IsoSearch<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.h2.n() {
            if used[w] || self.inv1[v] != self.inv2[w] {
                continue;
            }
            map[v] = w;
            if self.compatible(v, w, map) {
                used[w] = true;
                if self.extend(depth + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = usize::MAX;
        }
        false
    }

    /// Every edge through `v` must still fit inside some edge through `w`;
    /// fully mapped edges must land exactly on an edge of the target.
    fn compatible(&self, v: usize, w: usize, map: &[usize]) -> bool {
        for &e in &self.inc1[v] {
            let image: Vec<usize> = self
                .h1
                .edge(e)
                .iter()
                .filter_map(|&x| (map[x] != usize::MAX).then_some(map[x]))
                .collect();
            if image.len() == self.h1.k() {
                let mut sorted = image;
                sorted.sort_unstable();
                if !self.edges2.contains(&sorted) {
                    return false;
                }
            } else if !self.inc2[w]
                .iter()
                .any(|&f| image.iter().all(|x| self.h2.edge(f).contains(x)))
            {
                return false;
            }
        }
        true
    }
}
