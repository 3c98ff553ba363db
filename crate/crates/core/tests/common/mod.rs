//! Oracles shared by the integration tests. Nothing here calls the solvers
//! under test.
#![allow(dead_code)]

use nalgebra::DMatrix;
use supertree::constructors::OrdinaryTree;
use supertree::hypergraph::{are_isomorphic, Hypergraph};

/// Every labeled k-uniform supertree on `m(k-1)+1` vertices. Edges are
/// chosen in increasing order; an edge survives only if it joins `k`
/// distinct union-find components, which is exactly Berge acyclicity.
pub fn labeled_supertrees(m: usize, k: usize) -> Vec<Hypergraph> {
    let n = m * (k - 1) + 1;
    let mut subsets = Vec::new();
    let mut cur = Vec::new();
    k_subsets(n, k, 0, &mut cur, &mut subsets);

    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn rec(
        subsets: &[Vec<usize>],
        start: usize,
        m: usize,
        k: usize,
        n: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Hypergraph>,
    ) {
        if chosen.len() == m {
            let edges = chosen.iter().map(|&i| subsets[i].clone()).collect();
            out.push(Hypergraph::new(k, n, edges).unwrap());
            return;
        }
        for i in start..subsets.len() {
            let mut roots: Vec<usize> = subsets[i].iter().map(|&v| find(parent, v)).collect();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() < k {
                continue;
            }
            let saved = parent.clone();
            for &r in &roots[1..] {
                parent[r] = roots[0];
            }
            chosen.push(i);
            rec(subsets, i + 1, m, k, n, parent, chosen, out);
            chosen.pop();
            *parent = saved;
        }
    }
    let mut out = Vec::new();
    rec(&subsets, 0, m, k, n, &mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

pub fn k_subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for v in start..n {
        cur.push(v);
        k_subsets(n, k, v + 1, cur, out);
        cur.pop();
    }
}

/// Number of labeled k-uniform hypertrees: `n^(m-1) (n-1)! / (m! ((k-1)!)^m)`.
pub fn labeled_count(m: usize, k: usize) -> u128 {
    let n = (m * (k - 1) + 1) as u128;
    let fact = |x: u128| (1..=x).product::<u128>();
    n.pow(m as u32 - 1) * fact(n - 1) / (fact(m as u128) * fact(k as u128 - 1).pow(m as u32))
}

pub fn isomorphism_classes(graphs: Vec<Hypergraph>) -> Vec<Hypergraph> {
    let mut reps: Vec<Hypergraph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| are_isomorphic(r, &g).unwrap()) {
            reps.push(g);
        }
    }
    reps
}

/// Largest adjacency eigenvalue of an ordinary tree by dense symmetric
/// eigendecomposition.
pub fn dense_tree_radius(tree: &OrdinaryTree) -> f64 {
    let n = tree.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in tree.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a.symmetric_eigenvalues().max()
}

/// `(Ax)_i` straight from the tensor definition: a sum over every ordered
/// tuple `(i_2, ..., i_k)` with entry `1/(k-1)!` when `{i, i_2, ..., i_k}`
/// is an edge.
pub fn tensor_apply_by_definition(h: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let (n, k) = (h.n(), h.k());
    let entry = 1.0 / (1..k).map(|j| j as f64).product::<f64>();
    let mut out = vec![0.0; n];
    let mut tuple = vec![0usize; k - 1];
    for i in 0..n {
        loop {
            let mut set: Vec<usize> = tuple.iter().copied().chain([i]).collect();
            set.sort_unstable();
            let distinct = set.windows(2).all(|w| w[0] != w[1]);
            if distinct && h.edge_index(&set).is_some() {
                out[i] += entry * tuple.iter().map(|&j| x[j]).product::<f64>();
            }
            let mut pos = 0;
            while pos < k - 1 {
                tuple[pos] += 1;
                if tuple[pos] < n {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
            if pos == k - 1 {
                break;
            }
        }
    }
    out
}
