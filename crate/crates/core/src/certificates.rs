//! Weighted incidence matrices and α-normality.
//!
//! A weighted incidence matrix `B` puts a positive weight on every incident
//! (vertex, edge) pair. Comparing the vertex sums `Σ_e B(v,e)` with 1 and the
//! edge products `Π_v B(v,e)` with α places a hypergraph below, at, or above
//! the threshold radius `α^(-1/k)`:
//!
//! * strictly α-subnormal ⇒ `ρ < α^(-1/k)`;
//! * strictly and consistently α-supernormal ⇒ `ρ > α^(-1/k)`.
//!
//! On a supertree the incidence graph is a tree, so fixing every constraint
//! except the sum at one root vertex leaves exactly one candidate `B` per α.
//! [`propagate`] builds it leaf to root and [`alpha_normal_radius`] bisects
//! on α until the root constraint is met too.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructors::broom;
use crate::error::{Error, Result};
use crate::hypergraph::{find_isomorphism, is_supertree, Hypergraph, ISOMORPHISM_VERTEX_LIMIT};

/// Absolute slack tolerance used by [`classify`] unless told otherwise.
pub const DEFAULT_CERT_TOL: f64 = 1e-9;

const BISECTION_MAX_ITER: usize = 200;
const BISECTION_ALPHA_TOL: f64 = 1e-14;

/// Positive weights on exactly the incident pairs of its host.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedIncidence {
    host: Hypergraph,
    entries: BTreeMap<(usize, usize), f64>,
}

impl WeightedIncidence {
    /// `entries` maps `(vertex, edge index)` to a weight.
    pub fn new(host: Hypergraph, entries: BTreeMap<(usize, usize), f64>) -> Result<Self> {
        for (&(v, e), &w) in &entries {
            if e >= host.m() || !host.edge(e).contains(&v) {
                return Err(Error::IncidenceMismatch(format!(
                    "entry ({v}, {e}) is not an incident pair"
                )));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::IncidenceMismatch(format!(
                    "entry ({v}, {e}) has non-positive weight {w}"
                )));
            }
        }
        let incident_pairs = host.m() * host.k();
        if entries.len() != incident_pairs {
            return Err(Error::IncidenceMismatch(format!(
                "{} entries for {incident_pairs} incident pairs",
                entries.len()
            )));
        }
        Ok(WeightedIncidence { host, entries })
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    /// `B(v, e)`, zero off the incidence.
    pub fn get(&self, v: usize, e: usize) -> f64 {
        self.entries.get(&(v, e)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(v, e), &w)| (v, e, w))
    }

    /// `Σ_e B(v, e)` for every vertex.
    pub fn vertex_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.host.n()];
        for (&(v, _), &w) in &self.entries {
            sums[v] += w;
        }
        sums
    }

    /// `Π_v B(v, e)` for every edge.
    pub fn edge_products(&self) -> Vec<f64> {
        let mut prods = vec![1.0; self.host.m()];
        for (&(_, e), &w) in &self.entries {
            prods[e] *= w;
        }
        prods
    }

    /// Whether every cycle `v0 e1 v1 ... v_l = v0` has
    /// `Π B(v_i, e_i) / B(v_{i-1}, e_i) = 1`.
    ///
    /// Equivalent to writing `ln B(v, e) = φ(v) + ψ(e)` on the incidence
    /// graph; potentials are fixed along a spanning forest and every
    /// remaining incidence is checked against them.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let h = &self.host;
        let inc = h.incidence();
        let mut phi: Vec<Option<f64>> = vec![None; h.n()];
        let mut psi: Vec<Option<f64>> = vec![None; h.m()];
        for start in 0..h.n() {
            if phi[start].is_some() {
                continue;
            }
            phi[start] = Some(0.0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let pv = phi[v].expect("queued vertices carry a potential");
                for &e in &inc[v] {
                    if psi[e].is_some() {
                        continue;
                    }
                    let pe = self.get(v, e).ln() - pv;
                    psi[e] = Some(pe);
                    for &w in h.edge(e) {
                        if phi[w].is_none() {
                            phi[w] = Some(self.get(w, e).ln() - pe);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        self.entries.iter().all(|(&(v, e), &w)| {
            let fitted = phi[v].unwrap_or(0.0) + psi[e].unwrap_or(0.0);
            (w.ln() - fitted).abs() <= tol
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateClass {
    Normal,
    StrictlySubnormal,
    StrictlySupernormal,
    Neither,
}

impl fmt::Display for CertificateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateClass::Normal => "normal",
            CertificateClass::StrictlySubnormal => "strictly-subnormal",
            CertificateClass::StrictlySupernormal => "strictly-supernormal",
            CertificateClass::Neither => "neither",
        })
    }
}

/// What a verdict says about `ρ` relative to `α^(-1/k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusBound {
    Below(f64),
    Above(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateVerdict {
    pub alpha: f64,
    pub class: CertificateClass,
    /// `1 - Σ_e B(v, e)` per vertex.
    pub vertex_slacks: Vec<f64>,
    /// `Π_v B(v, e) - α` per edge.
    pub edge_slacks: Vec<f64>,
    pub consistent: bool,
}

impl CertificateVerdict {
    pub fn min_slack(&self) -> f64 {
        self.all_slacks().fold(f64::INFINITY, f64::min)
    }

    pub fn max_slack(&self) -> f64 {
        self.all_slacks().fold(f64::NEG_INFINITY, f64::max)
    }

    fn all_slacks(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertex_slacks.iter().chain(&self.edge_slacks).copied()
    }

    /// Radius bound implied for a k-uniform host, if any.
    pub fn implication(&self, k: usize) -> Option<RadiusBound> {
        let threshold = self.alpha.powf(-1.0 / k as f64);
        match self.class {
            CertificateClass::StrictlySubnormal => Some(RadiusBound::Below(threshold)),
            CertificateClass::StrictlySupernormal if self.consistent => {
                Some(RadiusBound::Above(threshold))
            }
            _ => None,
        }
    }
}

/// Classifies `b` at `alpha`. Slacks within `tol` of zero count as tight;
/// strictness needs at least one slack beyond `tol`.
pub fn classify(
    h: &Hypergraph,
    b: &WeightedIncidence,
    alpha: f64,
    tol: f64,
) -> Result<CertificateVerdict> {
    if b.host() != h {
        return Err(Error::IncidenceMismatch(
            "certificate belongs to a different hypergraph".into(),
        ));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let vertex_slacks: Vec<f64> = b.vertex_sums().iter().map(|s| 1.0 - s).collect();
    let edge_slacks: Vec<f64> = b.edge_products().iter().map(|p| p - alpha).collect();
    let all = || vertex_slacks.iter().chain(&edge_slacks);
    let class = if all().all(|s| s.abs() <= tol) {
        CertificateClass::Normal
    } else if all().all(|&s| s >= -tol) {
        CertificateClass::StrictlySubnormal
    } else if all().all(|&s| s <= tol) {
        CertificateClass::StrictlySupernormal
    } else {
        CertificateClass::Neither
    };
    Ok(CertificateVerdict {
        alpha,
        class,
        vertex_slacks,
        edge_slacks,
        consistent: b.is_consistent(1e-9),
    })
}

/// The certificate on `T(1, 1, m-3)` used to compare it with the powers of
/// `S(2, m-3)` and `F_{m+1}`.
///
/// Pendent vertices carry 1. With `e0` the central edge, `e1`/`e2` the
/// pendent edges at `u1`/`u2` and the rest at `u3`:
/// `B(u1,e1) = B(u2,e2) = α`, `B(u1,e0) = B(u2,e0) = 1-α`,
/// `B(u3,e_i) = α`, `B(u3,e0) = 1-(m-3)α`. Every vertex sum is 1 and every
/// pendent edge product is α; only `e0` can be off.
pub fn t11m3_certificate(m: usize, k: usize, alpha: f64) -> Result<WeightedIncidence> {
    if m < 4 {
        return Err(Error::InvalidParameter(format!("need m >= 4, got {m}")));
    }
    let bound = 1.0 / (m - 3) as f64;
    if !(alpha > 0.0 && alpha < bound) {
        return Err(Error::Positivity { alpha, bound });
    }
    let host = broom(1, 1, m - 3, k)?;
    let deg = host.degrees();
    let mut entries = BTreeMap::new();
    for (e, edge) in host.edges().iter().enumerate() {
        for &v in edge {
            let w = match (v, e == 0) {
                _ if deg[v] == 1 => 1.0,
                (0 | 1, true) => 1.0 - alpha,
                (2, true) => 1.0 - (m - 3) as f64 * alpha,
                _ => alpha,
            };
            entries.insert((v, e), w);
        }
    }
    WeightedIncidence::new(host, entries)
}

/// Outcome of leaf-to-root propagation at one α.
#[derive(Clone, Debug, PartialEq)]
pub enum Propagation {
    /// All weights positive. `root_excess = Σ_{e∋root} B(root, e) - 1`;
    /// every other constraint holds with equality.
    Feasible {
        certificate: WeightedIncidence,
        root: usize,
        root_excess: f64,
    },
    /// A forced weight `B(vertex, edge)` came out non-positive: α is too large.
    Infeasible { vertex: usize, edge: usize },
}

/// Vertex the propagation is rooted at: the lowest non-pendent vertex lying
/// in an edge with another non-pendent vertex, else the lowest vertex of
/// maximum degree.
pub fn propagation_root(h: &Hypergraph) -> usize {
    let deg = h.degrees();
    for edge in h.edges() {
        let inner: Vec<usize> = edge.iter().copied().filter(|&v| deg[v] >= 2).collect();
        if inner.len() >= 2 {
            return inner[0];
        }
    }
    let max = deg.iter().copied().max().unwrap_or(0);
    deg.iter().position(|&d| d == max).unwrap_or(0)
}

/// Builds the unique `B` meeting every vertex-sum constraint except the
/// root's and every edge-product constraint at `alpha`.
///
/// Edges are resolved in decreasing depth. In an edge with parent vertex `p`
/// each other vertex `v` already knows the total `s(v)` of its deeper edges,
/// so `B(v, e) = 1 - s(v)` and then `B(p, e) = α / Π_{v≠p} B(v, e)`.
pub fn propagate(h: &Hypergraph, alpha: f64) -> Result<Propagation> {
    if !is_supertree(h) {
        return Err(Error::NotSupertree);
    }
    let root = propagation_root(h);
    let inc = h.incidence();

    let mut parent_vertex = vec![usize::MAX; h.m()];
    let mut order = Vec::with_capacity(h.m());
    let mut seen_vertex = vec![false; h.n()];
    seen_vertex[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in &inc[v] {
            if parent_vertex[e] != usize::MAX {
                continue;
            }
            parent_vertex[e] = v;
            order.push(e);
            for &w in h.edge(e) {
                if !std::mem::replace(&mut seen_vertex[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }

    // total weight each vertex has collected from the edges below it
    let mut below = vec![0.0; h.n()];
    let mut entries = BTreeMap::new();
    for &e in order.iter().rev() {
        let p = parent_vertex[e];
        let mut prod = 1.0;
        for &v in h.edge(e) {
            if v == p {
                continue;
            }
            let w = 1.0 - below[v];
            if !(w > 0.0) {
                return Ok(Propagation::Infeasible { vertex: v, edge: e });
            }
            entries.insert((v, e), w);
            prod *= w;
        }
        let w = alpha / prod;
        entries.insert((p, e), w);
        below[p] += w;
    }
    let root_excess = below[root] - 1.0;
    Ok(Propagation::Feasible {
        certificate: WeightedIncidence::new(h.clone(), entries)?,
        root,
        root_excess,
    })
}

/// Spectral radius of a supertree as the `α^(-1/k)` at which the propagated
/// certificate becomes α-normal.
///
/// A negative root excess means the certificate is strictly subnormal, so
/// `ρ < α^(-1/k)` and α must grow; a positive excess or an infeasible
/// propagation means α must shrink. The bracket `[1/(Δm), 1]` holds every
/// supertree with `m` edges and maximum degree `Δ`. The final certificate is
/// checked to be normal within `tol`.
pub fn alpha_normal_radius(h: &Hypergraph, tol: f64) -> Result<f64> {
    if !is_supertree(h) {
        return Err(Error::NotSupertree);
    }
    let k = h.k() as f64;
    let excess = |alpha: f64| -> Result<f64> {
        Ok(match propagate(h, alpha)? {
            Propagation::Feasible { root_excess, .. } => root_excess,
            Propagation::Infeasible { .. } => f64::INFINITY,
        })
    };
    let max_degree = h.degrees().into_iter().max().unwrap_or(1);
    let mut lo = 1.0 / (max_degree * h.m()) as f64;
    let mut hi = 1.0;

    let at_hi = excess(hi)?;
    if at_hi == 0.0 {
        return Ok(1.0);
    }
    if at_hi < 0.0 {
        return Err(Error::BracketFailure {
            alpha: hi,
            reason: "certificate still subnormal at the upper end".into(),
        });
    }
    let at_lo = excess(lo)?;
    if at_lo == 0.0 {
        return Ok(lo.powf(-1.0 / k));
    }
    if at_lo > 0.0 {
        return Err(Error::BracketFailure {
            alpha: lo,
            reason: "certificate not subnormal at the lower end".into(),
        });
    }

    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_ALPHA_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f = excess(mid)?;
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = 0.5 * (lo + hi);
    match propagate(h, alpha)? {
        Propagation::Feasible { certificate, .. } => {
            let verdict = classify(h, &certificate, alpha, tol)?;
            if verdict.class != CertificateClass::Normal {
                return Err(Error::BracketFailure {
                    alpha,
                    reason: format!("limit certificate is {}, not normal", verdict.class),
                });
            }
        }
        Propagation::Infeasible { .. } => {
            return Err(Error::BracketFailure {
                alpha,
                reason: "limit certificate is infeasible".into(),
            })
        }
    }
    Ok(alpha.powf(-1.0 / k))
}

/// Carries `b` onto an isomorphic copy `target` of its host.
pub fn transport_certificate(b: &WeightedIncidence, target: &Hypergraph) -> Result<WeightedIncidence> {
    if b.host() == target {
        return Ok(b.clone());
    }
    let f = find_isomorphism(b.host(), target, ISOMORPHISM_VERTEX_LIMIT)?.ok_or_else(|| {
        Error::IncidenceMismatch("certificate host is not isomorphic to the hypergraph".into())
    })?;
    let mut entries = BTreeMap::new();
    for (v, e, w) in b.entries() {
        let mut image: Vec<usize> = b.host().edge(e).iter().map(|&u| f[u]).collect();
        image.sort_unstable();
        let idx = target.edge_index(&image).expect("isomorphism maps edges to edges");
        entries.insert((f[v], idx), w);
    }
    WeightedIncidence::new(target.clone(), entries)
}

/// One `B` entry in the certificate file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub v: usize,
    pub e: usize,
    pub w: f64,
}

/// Certificate file: the hypergraph object plus `"alpha"` and `"B"`.
/// Edge indices in `B` refer to the `edges` list as written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    pub alpha: f64,
    #[serde(rename = "B")]
    pub b: Vec<WeightEntry>,
}

impl CertificateFile {
    pub fn from_certificate(b: &WeightedIncidence, alpha: f64) -> Self {
        let host = b.host();
        CertificateFile {
            k: host.k(),
            n: host.n(),
            edges: host.edges().to_vec(),
            alpha,
            b: b.entries().map(|(v, e, w)| WeightEntry { v, e, w }).collect(),
        }
    }

    /// Validates the file and re-indexes `B` onto the normalized edge order.
    pub fn into_certificate(self) -> Result<(WeightedIncidence, f64)> {
        let host = Hypergraph::new(self.k, self.n, self.edges.clone())?;
        let mut entries = BTreeMap::new();
        for WeightEntry { v, e, w } in self.b {
            let edge = self.edges.get(e).ok_or_else(|| {
                Error::IncidenceMismatch(format!("edge index {e} out of range"))
            })?;
            let mut edge = edge.clone();
            edge.sort_unstable();
            let idx = host.edge_index(&edge).expect("edge present after normalization");
            if entries.insert((v, idx), w).is_some() {
                return Err(Error::IncidenceMismatch(format!("duplicate entry ({v}, {e})")));
            }
        }
        Ok((WeightedIncidence::new(host, entries)?, self.alpha))
    }
}
