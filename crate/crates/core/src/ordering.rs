//! Exhaustive enumeration of k-uniform supertrees and verification of the
//! orderings of their spectral radii.
//!
//! Every supertree with `m` edges arises from one with `m - 1` edges by
//! attaching a new edge at a single existing vertex, so growing edge by edge
//! and deduplicating by [`canonical_key`] yields one representative per
//! isomorphism class.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificates::{
    alpha_normal_radius, classify, t11m3_certificate, CertificateClass, DEFAULT_CERT_TOL,
};
use crate::constructors::{
    attach_edge, broom, double_star, f_tree, hyperstar, hypertree_base, move_edges, path,
    random_supertree, tree_power,
};
use crate::error::{Error, Result};
use crate::hypergraph::{canonical_key, is_supertree, non_pendent_count, CanonicalKey, Hypergraph};
use crate::spectral::{
    double_star_power_radius, f_tree_power_radius, power_formula_radius, power_iteration,
    DEFAULT_MAX_ITER, DEFAULT_TOL, TIE_TOL,
};

pub const DEFAULT_ENUM_LIMIT: usize = 7;

/// Solver and enumeration knobs shared by the ranking and verification
/// routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub max_iter: usize,
    /// Slack tolerance for certificate classification.
    pub cert_tol: f64,
    pub enum_limit: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            cert_tol: DEFAULT_CERT_TOL,
            enum_limit: DEFAULT_ENUM_LIMIT,
        }
    }
}

impl Settings {
    fn radius(&self, h: &Hypergraph) -> Result<f64> {
        power_iteration(h, self.tol, self.max_iter).map(|p| p.rho)
    }
}

/// One representative per isomorphism class of k-uniform supertrees with
/// `m` edges, ordered by canonical key.
pub fn enumerate_supertrees(m: usize, k: usize, limit: usize) -> Result<Vec<Hypergraph>> {
    Ok(enumerate_classes(m, k, limit)?.into_values().collect())
}

/// Same as [`enumerate_supertrees`], keyed by canonical key.
pub fn enumerate_classes(
    m: usize,
    k: usize,
    limit: usize,
) -> Result<BTreeMap<CanonicalKey, Hypergraph>> {
    if m == 0 {
        return Err(Error::InvalidParameter("need m >= 1".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
    }
    if m > limit {
        return Err(Error::EnumerationLimit { m, limit });
    }
    let seed = hyperstar(1, k)?;
    let mut level = BTreeMap::from([(canonical_key(&seed)?, seed)]);
    for _ in 1..m {
        let mut next = BTreeMap::new();
        for h in level.values() {
            for v in 0..h.n() {
                let grown = attach_edge(h, v)?;
                next.entry(canonical_key(&grown)?).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Power,
    Alpha,
    Formula,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Method::Power => "power",
            Method::Alpha => "alpha",
            Method::Formula => "formula",
        })
    }
}

/// Radius of `h` by `method`. `Formula` applies only to powers of ordinary
/// trees and falls back to power iteration otherwise; the returned tag says
/// which method produced the value.
pub fn radius_by(h: &Hypergraph, method: Method, settings: &Settings) -> Result<(f64, Method)> {
    match method {
        Method::Power => Ok((settings.radius(h)?, Method::Power)),
        Method::Alpha => Ok((alpha_normal_radius(h, settings.cert_tol)?, Method::Alpha)),
        Method::Formula => match hypertree_base(h) {
            Some(tree) => Ok((power_formula_radius(&tree, h.k())?, Method::Formula)),
            None => Ok((settings.radius(h)?, Method::Power)),
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportEntry {
    pub rank: usize,
    pub key: CanonicalKey,
    pub hypergraph: Hypergraph,
    pub rho: f64,
    pub method: Method,
    /// Within [`TIE_TOL`] of a neighbouring entry.
    pub tied: bool,
}

/// Supertree classes ranked by spectral radius, largest first.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectraReport {
    pub k: usize,
    pub m: usize,
    pub entries: Vec<ReportEntry>,
    /// Seconds since the Unix epoch. Not part of the serialized forms.
    pub generated_at: u64,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    k: usize,
    m: usize,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    key: String,
    edges: Vec<Vec<usize>>,
    rho: f64,
    method: Method,
    rank: usize,
}

#[derive(Serialize)]
struct EntryCsv<'a> {
    rank: usize,
    key: &'a str,
    rho: f64,
    method: Method,
}

impl SpectraReport {
    pub fn entry(&self, key: &CanonicalKey) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| &e.key == key)
    }

    pub fn to_json(&self) -> String {
        let json = ReportJson {
            k: self.k,
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    key: e.key.to_string(),
                    edges: e.hypergraph.edges().to_vec(),
                    rho: e.rho,
                    method: e.method,
                    rank: e.rank,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("report serializes")
    }

    /// `rank,key,rho,method`, one row per class.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            writer
                .serialize(EntryCsv {
                    rank: e.rank,
                    key: e.key.as_str(),
                    rho: e.rho,
                    method: e.method,
                })
                .expect("csv row");
        }
        String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("utf-8 csv")
    }

    /// Fixed-width table with 9 significant digits.
    pub fn to_table(&self) -> String {
        let mut out = format!("k={} m={} classes={}\n", self.k, self.m, self.entries.len());
        out.push_str("rank  rho          method   N2  key\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{:<5} {:<12} {:<8} {:<3} {}{}\n",
                e.rank,
                format_sig(e.rho, 9),
                e.method,
                non_pendent_count(&e.hypergraph),
                e.key,
                if e.tied { "  (tie)" } else { "" }
            ));
        }
        out
    }
}

/// Formats `value` with `digits` significant digits.
pub fn format_sig(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

/// Ranks every supertree class with `m` edges by radius. Radii are computed
/// in parallel; the ordering is by radius, then canonical key.
pub fn rank_spectra(m: usize, k: usize, method: Method, settings: &Settings) -> Result<SpectraReport> {
    let classes: Vec<(CanonicalKey, Hypergraph)> =
        enumerate_classes(m, k, settings.enum_limit)?.into_iter().collect();
    let radii: Vec<(f64, Method)> = classes
        .par_iter()
        .map(|(_, h)| radius_by(h, method, settings))
        .collect::<Result<_>>()?;
    let mut entries: Vec<ReportEntry> = classes
        .into_iter()
        .zip(radii)
        .map(|((key, hypergraph), (rho, method))| ReportEntry {
            rank: 0,
            key,
            hypergraph,
            rho,
            method,
            tied: false,
        })
        .collect();
    entries.sort_by(|a, b| b.rho.total_cmp(&a.rho).then_with(|| a.key.cmp(&b.key)));
    for i in 0..entries.len() {
        entries[i].rank = i + 1;
        if i + 1 < entries.len() && entries[i].rho - entries[i + 1].rho <= TIE_TOL {
            entries[i].tied = true;
            entries[i + 1].tied = true;
        }
    }
    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(SpectraReport {
        k,
        m,
        entries,
        generated_at,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedRadius {
    pub label: String,
    pub rho: f64,
}

/// Outcome of a successful verification: the radii that were compared and
/// a line per check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub claim: String,
    pub radii: Vec<NamedRadius>,
    pub notes: Vec<String>,
}

impl VerificationRecord {
    fn new(claim: impl Into<String>) -> Self {
        VerificationRecord {
            claim: claim.into(),
            radii: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn radius(&mut self, label: impl Into<String>, rho: f64) {
        self.radii.push(NamedRadius {
            label: label.into(),
            rho,
        });
    }

    pub fn rho_of(&self, label: &str) -> Option<f64> {
        self.radii.iter().find(|r| r.label == label).map(|r| r.rho)
    }
}

impl fmt::Display for VerificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.claim)?;
        for r in &self.radii {
            writeln!(f, "  {:<28} {}", r.label, format_sig(r.rho, 9))?;
        }
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        Ok(())
    }
}

/// Named classes expected at the top of the ranking for `m >= 5` edges.
pub fn expected_leaders(m: usize, k: usize) -> Result<Vec<(String, Hypergraph)>> {
    if m < 5 {
        return Err(Error::Precondition(format!(
            "the top-four ordering needs m >= 5, got {m}"
        )));
    }
    let mut out = vec![
        (format!("S^{k}_{}", m + 1), hyperstar(m, k)?),
        (format!("S^{k}(1,{})", m - 2), tree_power(&double_star(1, m - 2)?, k)?),
        (format!("S^{k}(2,{})", m - 3), tree_power(&double_star(2, m - 3)?, k)?),
    ];
    if k == 2 {
        out.push((format!("F_{}", m + 1), f_tree(m + 1)?.to_hypergraph()));
    } else {
        out.push((format!("T(1,1,{})", m - 3), broom(1, 1, m - 3, k)?));
    }
    Ok(out)
}

/// Checks that the first `expected.len()` entries of `ranked` are exactly
/// `expected` in order, each strictly above the next entry.
pub fn check_leading_order(
    ranked: &[ReportEntry],
    expected: &[(String, Hypergraph)],
    record: &mut VerificationRecord,
) -> Result<()> {
    for (i, (label, h)) in expected.iter().enumerate() {
        let key = canonical_key(h)?;
        let entry = ranked.get(i).ok_or_else(|| {
            Error::Counterexample(format!("only {} classes, expected {label} at rank {}", ranked.len(), i + 1))
        })?;
        if entry.key != key {
            let expected_rho = ranked.iter().find(|e| e.key == key).map(|e| e.rho);
            return Err(Error::Counterexample(format!(
                "rank {} is {} (rho {}), expected {label} (rho {:?})",
                i + 1,
                entry.hypergraph,
                entry.rho,
                expected_rho
            )));
        }
        record.radius(label.clone(), entry.rho);
        if let Some(next) = ranked.get(i + 1) {
            if entry.rho - next.rho <= TIE_TOL {
                return Err(Error::Counterexample(format!(
                    "{label} (rho {}) not strictly above rank {} {} (rho {})",
                    entry.rho,
                    i + 2,
                    next.hypergraph,
                    next.rho
                )));
            }
        }
    }
    if let Some(next) = ranked.get(expected.len()) {
        record.radius("next", next.rho);
    }
    Ok(())
}

/// Largest three radii among supertrees with `m >= 5` edges: hyperstar,
/// `S^k(1, m-2)`, `S^k(2, m-3)`, with every other class strictly below.
pub fn verify_top_three(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    let report = rank_spectra(m, k, Method::Power, settings)?;
    verify_top_three_in(&report)
}

pub fn verify_top_three_in(report: &SpectraReport) -> Result<VerificationRecord> {
    let (m, k) = (report.m, report.k);
    let mut expected = expected_leaders(m, k)?;
    expected.truncate(3);
    let mut record = VerificationRecord::new(format!(
        "top three k={k} m={m}: S^k_(m+1) > S^k(1,m-2) > S^k(2,m-3) > every other supertree"
    ));
    check_leading_order(&report.entries, &expected, &mut record)?;
    Ok(record)
}

/// Largest four radii for `m >= 5`: the top three followed by
/// `T(1, 1, m-3)` (or `F_{m+1}` when `k = 2`).
pub fn verify_top_four(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    let report = rank_spectra(m, k, Method::Power, settings)?;
    verify_top_four_in(&report)
}

pub fn verify_top_four_in(report: &SpectraReport) -> Result<VerificationRecord> {
    let (m, k) = (report.m, report.k);
    let expected = expected_leaders(m, k)?;
    let fourth = expected[3].0.clone();
    let mut record = VerificationRecord::new(format!(
        "top four k={k} m={m}: S^k_(m+1) > S^k(1,m-2) > S^k(2,m-3) > {fourth} > every other supertree"
    ));
    check_leading_order(&report.entries, &expected, &mut record)?;
    Ok(record)
}

/// At `m = 4`, `S(2, 1)` and `S(1, 2)` coincide and `F_5 = P_5`, so the
/// ordering collapses: `S_5 > S(1,2) > P_5` for `k = 2` and
/// `S^k_5 > S^k(1,2) > T(1,1,1) > P_5^k` for `k >= 3`.
pub fn verify_collapsed_order(k: usize, settings: &Settings) -> Result<VerificationRecord> {
    verify_collapsed_order_in(&rank_spectra(4, k, Method::Power, settings)?)
}

pub fn verify_collapsed_order_in(report: &SpectraReport) -> Result<VerificationRecord> {
    let k = report.k;
    if report.m != 4 {
        return Err(Error::Precondition(format!("collapsed ordering is for m = 4, got {}", report.m)));
    }
    let mut expected = vec![
        (format!("S^{k}_5"), hyperstar(4, k)?),
        (format!("S^{k}(1,2)"), tree_power(&double_star(1, 2)?, k)?),
    ];
    if k >= 3 {
        expected.push(("T(1,1,1)".to_string(), broom(1, 1, 1, k)?));
    }
    expected.push((format!("P^{k}_5"), tree_power(&path(5)?, k)?));
    let mut record = VerificationRecord::new(format!("collapsed ordering k={k} m=4"));
    check_leading_order(&report.entries, &expected, &mut record)?;
    if report.entries.len() != expected.len() {
        return Err(Error::Counterexample(format!(
            "{} classes at m=4, expected {}",
            report.entries.len(),
            expected.len()
        )));
    }
    Ok(record)
}

/// Among powers of ordinary trees with `m >= 5` edges:
/// `S_{m+1} > S(1,m-2) > S(2,m-3) > F_{m+1} > every other tree`, after
/// raising to the k-th power.
pub fn verify_hofmeister(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    verify_hofmeister_in(&rank_spectra(m, k, Method::Power, settings)?)
}

pub fn verify_hofmeister_in(report: &SpectraReport) -> Result<VerificationRecord> {
    let (m, k) = (report.m, report.k);
    let hypertrees: Vec<ReportEntry> = report
        .entries
        .iter()
        .filter(|e| hypertree_base(&e.hypergraph).is_some())
        .cloned()
        .collect();
    let mut expected = expected_leaders(m, k)?;
    expected[3] = (format!("F^{k}_{}", m + 1), tree_power(&f_tree(m + 1)?, k)?);
    let mut record = VerificationRecord::new(format!(
        "tree ordering k={k} m={m}: S > S(1,m-2) > S(2,m-3) > F > every other tree power"
    ));
    check_leading_order(&hypertrees, &expected, &mut record)?;
    Ok(record)
}

/// For every `1 <= t1 <= t2 <= t3` with `t1 + t2 + t3 = m - 1`:
/// `ρ(T(1,1,m-3)) >= ρ(T(t1,t2,t3))`, with equality exactly when `t2 = 1`.
pub fn verify_partition_lemma(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    if m < 4 || k < 3 {
        return Err(Error::Precondition(format!("need m >= 4 and k >= 3, got m={m}, k={k}")));
    }
    let reference = settings.radius(&broom(1, 1, m - 3, k)?)?;
    let mut record = VerificationRecord::new(format!(
        "partition ordering k={k} m={m}: T(1,1,m-3) dominates every T(t1,t2,t3)"
    ));
    for t1 in 1..m {
        for t2 in t1..m {
            if t1 + 2 * t2 > m - 1 {
                break;
            }
            let t3 = m - 1 - t1 - t2;
            let rho = settings.radius(&broom(t1, t2, t3, k)?)?;
            let gap = reference - rho;
            let ok = if t2 == 1 { gap.abs() <= TIE_TOL } else { gap > TIE_TOL };
            if !ok {
                return Err(Error::Counterexample(format!(
                    "T(1,1,{}) = {reference} vs T({t1},{t2},{t3}) = {rho}",
                    m - 3
                )));
            }
            record.radius(format!("T({t1},{t2},{t3})"), rho);
        }
    }
    Ok(record)
}

/// `ρ(F^k_{m+1}) < ρ(T(1,1,m-3)) < ρ(S^k(2,m-3))`, numerically and through
/// the two explicit certificates on `T(1,1,m-3)`.
pub fn verify_sandwich(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    if m < 4 || k < 3 {
        return Err(Error::Precondition(format!("need m >= 4 and k >= 3, got m={m}, k={k}")));
    }
    let lower = f_tree_power_radius(m, k)?;
    let upper = double_star_power_radius(m, k)?;
    let middle = settings.radius(&broom(1, 1, m - 3, k)?)?;
    let mut record = VerificationRecord::new(format!(
        "sandwich k={k} m={m}: F^k_(m+1) < T(1,1,m-3) < S^k(2,m-3)"
    ));
    record.radius(format!("F^{k}_{}", m + 1), lower);
    record.radius(format!("T(1,1,{})", m - 3), middle);
    record.radius(format!("S^{k}(2,{})", m - 3), upper);
    if !(lower + TIE_TOL < middle && middle + TIE_TOL < upper) {
        return Err(Error::Counterexample(format!(
            "not strictly ordered: {lower} < {middle} < {upper}"
        )));
    }

    for (alpha, want, label) in [
        (
            double_star_power_radius(m, 2)?.powi(-2),
            CertificateClass::StrictlySubnormal,
            "upper certificate",
        ),
        (
            f_tree_power_radius(m, 2)?.powi(-2),
            CertificateClass::StrictlySupernormal,
            "lower certificate",
        ),
    ] {
        let cert = t11m3_certificate(m, k, alpha)?;
        let verdict = classify(cert.host(), &cert, alpha, settings.cert_tol)?;
        if verdict.class != want || !verdict.consistent {
            return Err(Error::Counterexample(format!(
                "{label} at alpha={alpha} is {} (consistent: {}), expected {want}",
                verdict.class, verdict.consistent
            )));
        }
        record.notes.push(format!(
            "{label}: alpha={alpha:.12} {} e0 slack={:.6e} bound rho {} {}",
            verdict.class,
            verdict.edge_slacks[0],
            if want == CertificateClass::StrictlySubnormal { "<" } else { ">" },
            format_sig(alpha.powf(-1.0 / k as f64), 9),
        ));
    }
    Ok(record)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub tree: Hypergraph,
    pub n2_before: usize,
    pub n2_after: usize,
    pub rho_before: f64,
    pub rho_after: f64,
}

/// A supertree on the same vertices with one fewer non-pendent vertex and a
/// strictly larger radius.
///
/// Candidates come from edges holding two or more non-pendent vertices: take
/// `u` of largest eigenvector weight among them and move every other edge
/// of another non-pendent `v` in that edge onto `u`, which leaves `v`
/// pendent. Candidates are tried in increasing `x_v`.
pub fn reduce_non_pendent(t: &Hypergraph, settings: &Settings) -> Result<Reduction> {
    if !is_supertree(t) {
        return Err(Error::NotSupertree);
    }
    let n2 = non_pendent_count(t);
    if n2 < 2 {
        return Err(Error::Precondition(format!("need N2 >= 2, got {n2}")));
    }
    let pair = power_iteration(t, settings.tol, settings.max_iter)?;
    let x = &pair.x;
    let deg = t.degrees();
    let inc = t.incidence();

    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for (e, edge) in t.edges().iter().enumerate() {
        let inner: Vec<usize> = edge.iter().copied().filter(|&v| deg[v] >= 2).collect();
        if inner.len() < 2 {
            continue;
        }
        let u = *inner
            .iter()
            .max_by(|&&a, &&b| x[a].total_cmp(&x[b]).then(b.cmp(&a)))
            .expect("non-empty");
        for &v in inner.iter().filter(|&&v| v != u) {
            candidates.push((e, u, v));
        }
    }
    candidates.sort_by(|a, b| x[a.2].total_cmp(&x[b.2]).then(a.cmp(b)));

    for (e, u, v) in candidates {
        let moves: Vec<(usize, usize)> = inc[v].iter().filter(|&&f| f != e).map(|&f| (f, v)).collect();
        let Ok(outcome) = move_edges(t, u, &moves) else {
            continue;
        };
        let moved = outcome.hypergraph;
        if !is_supertree(&moved) || non_pendent_count(&moved) + 1 != n2 {
            continue;
        }
        let rho_after = settings.radius(&moved)?;
        if rho_after > pair.rho {
            return Ok(Reduction {
                tree: moved,
                n2_before: n2,
                n2_after: n2 - 1,
                rho_before: pair.rho,
                rho_after,
            });
        }
    }
    Err(Error::SearchExhausted(format!("{t}")))
}

/// [`reduce_non_pendent`] on every class with `N2 >= 2`.
pub fn verify_reductions(m: usize, k: usize, settings: &Settings) -> Result<VerificationRecord> {
    let mut record = VerificationRecord::new(format!(
        "N2 reduction k={k} m={m}: every supertree with N2 >= 2 has a neighbour with N2 - 1 and larger radius"
    ));
    let mut count = 0;
    for h in enumerate_supertrees(m, k, settings.enum_limit)? {
        if non_pendent_count(&h) < 2 {
            continue;
        }
        let r = reduce_non_pendent(&h, settings)?;
        count += 1;
        record.notes.push(format!(
            "N2 {} -> {}: rho {} -> {}",
            r.n2_before,
            r.n2_after,
            format_sig(r.rho_before, 9),
            format_sig(r.rho_after, 9)
        ));
    }
    record.notes.push(format!("{count} classes reduced"));
    Ok(record)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MovingEdgesConfig {
    pub trials: usize,
    pub seed: u64,
    pub k: usize,
    /// Random supertrees have between 2 and this many edges.
    pub max_edges: usize,
}

impl Default for MovingEdgesConfig {
    fn default() -> Self {
        MovingEdgesConfig {
            trials: 50,
            seed: DEFAULT_SEED,
            k: 3,
            max_edges: 6,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_140_528;

/// One random edge move that satisfied the eigenvector hypothesis.
#[derive(Clone, Debug, PartialEq)]
pub struct MoveTrial {
    pub before: Hypergraph,
    pub after: Hypergraph,
    pub target: usize,
    pub moves: Vec<(usize, usize)>,
    pub rho_before: f64,
    pub rho_after: f64,
}

/// Draws one move: a random edge `e*`, a random `u` in it, and a non-empty
/// set of non-pendent `v_i` in `e*` with `x_{v_i} <= x_u`; each `v_i` gives
/// up a non-empty random subset of its other edges. Since `u` and every
/// `v_i` share `e*`, the result is again a supertree.
fn draw_move(g: &Hypergraph, x: &[f64], rng: &mut ChaCha8Rng) -> Option<(usize, Vec<(usize, usize)>)> {
    let deg = g.degrees();
    let inc = g.incidence();
    let star = rng.gen_range(0..g.m());
    let edge = g.edge(star);
    let u = *edge.choose(rng)?;
    let sources: Vec<usize> = edge
        .iter()
        .copied()
        .filter(|&v| v != u && deg[v] >= 2 && x[v] <= x[u])
        .collect();
    if sources.is_empty() {
        return None;
    }
    let mut chosen: Vec<usize> = sources.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if chosen.is_empty() {
        chosen.push(*sources.choose(rng)?);
    }
    let mut moves = Vec::new();
    for v in chosen {
        let others: Vec<usize> = inc[v].iter().copied().filter(|&f| f != star).collect();
        let mut picked: Vec<usize> = others.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if picked.is_empty() {
            picked.push(*others.choose(rng)?);
        }
        moves.extend(picked.into_iter().map(|f| (f, v)));
    }
    Some((u, moves))
}

/// Seeded random moves satisfying `x_u >= max x_{v_i}`; each must not lower
/// the radius by more than the solver tolerance.
pub fn run_moving_edge_trials(
    config: &MovingEdgesConfig,
    settings: &Settings,
) -> Result<Vec<MoveTrial>> {
    if config.max_edges < 2 {
        return Err(Error::InvalidParameter("max_edges must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trials = Vec::with_capacity(config.trials);
    while trials.len() < config.trials {
        let m = rng.gen_range(2..=config.max_edges);
        let g = random_supertree(m, config.k, &mut rng)?;
        let pair = power_iteration(&g, settings.tol, settings.max_iter)?;
        let Some((u, moves)) = draw_move(&g, &pair.x, &mut rng) else {
            continue;
        };
        let after = move_edges(&g, u, &moves)?.hypergraph;
        if !is_supertree(&after) {
            return Err(Error::Counterexample(format!(
                "moving {moves:?} to {u} in {g} left a non-supertree"
            )));
        }
        let rho_after = settings.radius(&after)?;
        if rho_after < pair.rho - settings.tol * pair.rho {
            return Err(Error::Counterexample(format!(
                "moving {moves:?} to {u} in {g}: rho {} -> {rho_after}",
                pair.rho
            )));
        }
        trials.push(MoveTrial {
            before: g,
            after,
            target: u,
            moves,
            rho_before: pair.rho,
            rho_after,
        });
    }
    Ok(trials)
}

pub fn verify_moving_edges(config: &MovingEdgesConfig, settings: &Settings) -> Result<VerificationRecord> {
    let trials = run_moving_edge_trials(config, settings)?;
    let mut record = VerificationRecord::new(format!(
        "moving edges: {} seeded trials (seed {}, k={}, m<={}) never lower the radius",
        config.trials, config.seed, config.k, config.max_edges
    ));
    let min_increase = trials
        .iter()
        .map(|t| t.rho_after - t.rho_before)
        .fold(f64::INFINITY, f64::min);
    for (i, t) in trials.iter().enumerate() {
        record.notes.push(format!(
            "trial {i}: m={} r={} rho {} -> {}",
            t.before.m(),
            t.moves.len(),
            format_sig(t.rho_before, 9),
            format_sig(t.rho_after, 9)
        ));
    }
    record.radius("min increase", min_increase);
    Ok(record)
}
