//! Spectral radius of the adjacency tensor.
//!
//! The adjacency tensor puts weight `1/(k-1)!` on every ordering of every
//! edge, so `(Ax)_i` collapses to a sum over the edges through `i` of the
//! product of the other `k - 1` coordinates. Nothing dense is ever built.
//!
//! The radius comes from a shifted power method on `A + I`: for a connected
//! hypergraph the tensor is weakly irreducible, the principal eigenvector is
//! positive, and every positive iterate `x` brackets the radius between the
//! smallest and largest ratio `(Ax)_i / x_i^(k-1)`.

use crate::constructors::OrdinaryTree;
use crate::error::{Error, Result};
use crate::hypergraph::{is_connected, Hypergraph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Radii closer than this are treated as tied when ranking.
pub const TIE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPair {
    pub rho: f64,
    /// Principal eigenvector, normalized so that `sum x_i^k = 1`.
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub bracket: Bracket,
}

/// Collatz-Wielandt bounds `min_i (Ax)_i / x_i^(k-1) <= rho <= max_i ...`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub low: f64,
    pub high: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.low + self.high)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.low <= value && value <= self.high
    }
}

/// `(Ax)_i = sum over edges e containing i of prod_{j in e, j != i} x_j`.
pub fn tensor_apply(h: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: x.len(),
        });
    }
    let mut out = vec![0.0; h.n()];
    apply_into(h, x, &mut out);
    Ok(out)
}

fn apply_into(h: &Hypergraph, x: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for edge in h.edges() {
        for (pos, &i) in edge.iter().enumerate() {
            let prod: f64 = edge
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &j)| x[j])
                .product();
            out[i] += prod;
        }
    }
}

/// `max_i |(Ax)_i - rho * x_i^(k-1)|`.
pub fn eigen_residual(h: &Hypergraph, rho: f64, x: &[f64]) -> Result<f64> {
    let ax = tensor_apply(h, x)?;
    Ok(residual_of(&ax, x, rho, h.k()))
}

fn residual_of(ax: &[f64], x: &[f64], rho: f64, k: usize) -> f64 {
    ax.iter()
        .zip(x)
        .map(|(&a, &xi)| (a - rho * xi.powi(k as i32 - 1)).abs())
        .fold(0.0, f64::max)
}

/// Stepwise shifted power method, exposed so callers can inspect each
/// bracket. Start vector is uniform with unit k-norm.
pub struct PowerIteration<'a> {
    h: &'a Hypergraph,
    x: Vec<f64>,
    ax: Vec<f64>,
    evaluations: usize,
}

impl<'a> PowerIteration<'a> {
    pub fn new(h: &'a Hypergraph) -> Result<Self> {
        if !is_connected(h) {
            return Err(Error::Disconnected);
        }
        let n = h.n();
        let start = (n as f64).powf(-1.0 / h.k() as f64);
        Ok(PowerIteration {
            h,
            x: vec![start; n],
            ax: vec![0.0; n],
            evaluations: 0,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Applies the tensor to the current iterate and returns its bracket.
    pub fn evaluate(&mut self) -> Bracket {
        apply_into(self.h, &self.x, &mut self.ax);
        self.evaluations += 1;
        let km1 = self.h.k() as i32 - 1;
        let (mut low, mut high) = (f64::INFINITY, f64::NEG_INFINITY);
        for (&a, &xi) in self.ax.iter().zip(&self.x) {
            let ratio = a / xi.powi(km1);
            low = low.min(ratio);
            high = high.max(ratio);
        }
        Bracket { low, high }
    }

    /// Residual of the current iterate against `rho`; valid after [`Self::evaluate`].
    pub fn residual(&self, rho: f64) -> f64 {
        residual_of(&self.ax, &self.x, rho, self.h.k())
    }

    /// `x <- (Ax + x^(k-1))^(1/(k-1))`, renormalized. Uses the `Ax` from the
    /// last [`Self::evaluate`].
    pub fn advance(&mut self) {
        let k = self.h.k();
        let km1 = k as i32 - 1;
        let root = 1.0 / (k - 1) as f64;
        for (xi, &a) in self.x.iter_mut().zip(&self.ax) {
            let y = a + xi.powi(km1);
            *xi = if k == 2 { y } else { y.powf(root) };
        }
        let norm = self
            .x
            .iter()
            .map(|v| v.powi(k as i32))
            .sum::<f64>()
            .powf(1.0 / k as f64);
        self.x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Principal eigenpair by the shifted power method.
///
/// Stops once the bracket width is within `tol` relative to its upper end and
/// the eigen-residual at the bracket midpoint is within `tol`.
pub fn power_iteration(h: &Hypergraph, tol: f64, max_iter: usize) -> Result<PrincipalPair> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let mut it = PowerIteration::new(h)?;
    let mut bracket = Bracket {
        low: 0.0,
        high: f64::INFINITY,
    };
    for _ in 0..max_iter.max(1) {
        bracket = it.evaluate();
        let rho = bracket.midpoint();
        let residual = it.residual(rho);
        if bracket.width() <= tol * bracket.high && residual <= tol {
            return Ok(PrincipalPair {
                rho,
                x: it.x().to_vec(),
                residual,
                iterations: it.evaluations(),
                bracket,
            });
        }
        it.advance();
    }
    Err(Error::NonConvergence {
        iterations: it.evaluations(),
        low: bracket.low,
        high: bracket.high,
    })
}

/// [`power_iteration`] with default tolerance and iteration budget.
pub fn spectral_radius(h: &Hypergraph) -> Result<f64> {
    power_iteration(h, DEFAULT_TOL, DEFAULT_MAX_ITER).map(|p| p.rho)
}

/// Largest adjacency eigenvalue of an ordinary tree (the k = 2 case).
pub fn graph_spectral_radius(tree: &OrdinaryTree) -> Result<f64> {
    spectral_radius(&tree.to_hypergraph())
}

/// Radius of the k-th power of `tree`: `rho(T)^(2/k)`.
pub fn power_formula_radius(tree: &OrdinaryTree, k: usize) -> Result<f64> {
    check_k(k)?;
    Ok(graph_spectral_radius(tree)?.powf(2.0 / k as f64))
}

/// Radius of the k-th power of `S(2, m-3)` (m edges), from the largest root
/// of `rho^4 - m rho^2 + 2(m-3) = 0`.
pub fn double_star_power_radius(m: usize, k: usize) -> Result<f64> {
    check_quartic_args(m, k)?;
    let m = m as f64;
    let rho_sq = 0.5 * (m + (m * m - 8.0 * (m - 3.0)).sqrt());
    Ok(rho_sq.powf(1.0 / k as f64))
}

/// Radius of the k-th power of `F_{m+1}` (m edges), from the largest root
/// of `rho^4 - (m-1) rho^2 + (m-4) = 0`.
pub fn f_tree_power_radius(m: usize, k: usize) -> Result<f64> {
    check_quartic_args(m, k)?;
    let m = m as f64;
    let rho_sq = 0.5 * ((m - 1.0) + ((m - 1.0).powi(2) - 4.0 * (m - 4.0)).sqrt());
    Ok(rho_sq.powf(1.0 / k as f64))
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
    }
    Ok(())
}

fn check_quartic_args(m: usize, k: usize) -> Result<()> {
    check_k(k)?;
    if m < 4 {
        return Err(Error::InvalidParameter(format!("need m >= 4, got {m}")));
    }
    Ok(())
}
