//! Builders for the supertree families, ordinary trees, and the edge-moving
//! transformation.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// An ordinary (2-uniform) tree on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OrdinaryTree {
    /// Validates that `edges` form a spanning tree on `0..n`. Edge order is
    /// kept; [`tree_power`] numbers fresh vertices in this order.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("tree needs n >= 2, got {n}")));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidParameter(format!(
                "tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidParameter(format!("bad tree edge ({a}, {b})")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) closes a cycle"
                )));
            }
            parent[ra] = rb;
            normalized.push((a.min(b), a.max(b)));
        }
        Ok(OrdinaryTree {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// The tree as a 2-uniform hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            2,
            self.n,
            self.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
        )
        .expect("a valid tree is a valid 2-uniform hypergraph")
    }
}

/// Star `S_n`: center 0, leaves `1..n`.
pub fn star(n: usize) -> Result<OrdinaryTree> {
    OrdinaryTree::new(n, (1..n).map(|v| (0, v)).collect())
}

/// Path `P_n`: `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<OrdinaryTree> {
    OrdinaryTree::new(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Double star `S(a, b)`: the edge `0 - 1` with `a` leaves on 0 and `b` leaves on 1.
pub fn double_star(a: usize, b: usize) -> Result<OrdinaryTree> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(format!(
            "double star needs a, b >= 1, got ({a}, {b})"
        )));
    }
    let mut edges = vec![(0, 1)];
    edges.extend((0..a).map(|i| (0, 2 + i)));
    edges.extend((0..b).map(|i| (1, 2 + a + i)));
    OrdinaryTree::new(a + b + 2, edges)
}

/// `F_n`: the center of `P_5` coalesced with the center of `S_{n-4}`.
///
/// Labels: center 0, path `2 - 1 - 0 - 3 - 4`, star leaves `5..n`.
pub fn f_tree(n: usize) -> Result<OrdinaryTree> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!("F_n needs n >= 5, got {n}")));
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 3), (3, 4)];
    edges.extend((5..n).map(|v| (0, v)));
    OrdinaryTree::new(n, edges)
}

/// The k-th power of an ordinary tree: each edge is padded with `k - 2`
/// fresh vertices, numbered after the tree's vertices edge by edge.
pub fn tree_power(tree: &OrdinaryTree, k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
    }
    let mut next = tree.n();
    let mut edges = Vec::with_capacity(tree.edges().len());
    for &(a, b) in tree.edges() {
        let mut edge = vec![a, b];
        edge.extend(next..next + k - 2);
        next += k - 2;
        edges.push(edge);
    }
    Hypergraph::new(k, next, edges)
}

/// Hyperstar with `m` edges: the k-th power of `S_{m+1}`.
pub fn hyperstar(m: usize, k: usize) -> Result<Hypergraph> {
    if m == 0 {
        return Err(Error::InvalidParameter("hyperstar needs m >= 1".into()));
    }
    tree_power(&star(m + 1)?, k)
}

/// `T(t1, t2, t3)`: a central edge holding `u1 = 0`, `u2 = 1`, `u3 = 2`
/// (plus `k - 3` pendent vertices), with `t_i` pendent edges hanging at `u_i`.
///
/// After normalization the central edge is edge 0, followed by the pendent
/// edges at `u1`, then `u2`, then `u3`.
pub fn broom(t1: usize, t2: usize, t3: usize, k: usize) -> Result<Hypergraph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "T(t1,t2,t3) needs k >= 3, got {k}"
        )));
    }
    if !(1 <= t1 && t1 <= t2 && t2 <= t3) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t1 <= t2 <= t3, got ({t1}, {t2}, {t3})"
        )));
    }
    let mut edges = vec![(0..k).collect::<Vec<_>>()];
    let mut next = k;
    for (u, t) in [(0, t1), (1, t2), (2, t3)] {
        for _ in 0..t {
            let mut edge = vec![u];
            edge.extend(next..next + k - 1);
            next += k - 1;
            edges.push(edge);
        }
    }
    Hypergraph::new(k, next, edges)
}

/// If `h` is the power of an ordinary tree (every edge holds at most two
/// non-pendent vertices), returns that tree.
pub fn hypertree_base(h: &Hypergraph) -> Option<OrdinaryTree> {
    if !crate::hypergraph::is_supertree(h) {
        return None;
    }
    if h.m() == 1 {
        return path(2).ok();
    }
    let deg = h.degrees();
    let mut id = vec![usize::MAX; h.n()];
    let mut next = 0;
    for v in 0..h.n() {
        if deg[v] >= 2 {
            id[v] = next;
            next += 1;
        }
    }
    let mut edges = Vec::with_capacity(h.m());
    for edge in h.edges() {
        let inner: Vec<usize> = edge.iter().filter(|&&v| deg[v] >= 2).map(|&v| id[v]).collect();
        match inner.as_slice() {
            [a, b] => edges.push((*a, *b)),
            [a] => {
                edges.push((*a, next));
                next += 1;
            }
            _ => return None,
        }
    }
    OrdinaryTree::new(next, edges).ok()
}

/// Result of [`move_edges`]. `dangling` lists the source vertices left
/// without any edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveOutcome {
    pub hypergraph: Hypergraph,
    pub dangling: Vec<usize>,
}

/// Moves each edge `e_i` (by index) from `v_i` to `u`, replacing it with
/// `(e_i \ {v_i}) ∪ {u}`. The vertex set is unchanged; edge indices of the
/// result follow its own normalized order.
pub fn move_edges(g: &Hypergraph, u: usize, moves: &[(usize, usize)]) -> Result<MoveOutcome> {
    if u >= g.n() {
        return Err(Error::InvalidMove(format!("vertex {u} out of range")));
    }
    let mut moved = HashSet::new();
    for &(e, v) in moves {
        if e >= g.m() {
            return Err(Error::InvalidMove(format!("edge index {e} out of range")));
        }
        if !moved.insert(e) {
            return Err(Error::InvalidMove(format!("edge {e} moved twice")));
        }
        let edge = g.edge(e);
        if !edge.contains(&v) {
            return Err(Error::InvalidMove(format!("vertex {v} not in edge {edge:?}")));
        }
        if edge.contains(&u) {
            return Err(Error::InvalidMove(format!("target {u} already in edge {edge:?}")));
        }
    }
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(g.m());
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if !moved.contains(&e) {
            seen.insert(edge.clone());
            edges.push(edge.clone());
        }
    }
    for &(e, v) in moves {
        let mut edge: Vec<usize> = g.edge(e).iter().map(|&w| if w == v { u } else { w }).collect();
        edge.sort_unstable();
        if !seen.insert(edge.clone()) {
            return Err(Error::MultipleEdge(edge));
        }
        edges.push(edge);
    }
    let hypergraph = Hypergraph::new(g.k(), g.n(), edges)?;
    let deg = hypergraph.degrees();
    let mut dangling: Vec<usize> = moves.iter().map(|&(_, v)| v).filter(|&v| deg[v] == 0).collect();
    dangling.sort_unstable();
    dangling.dedup();
    Ok(MoveOutcome {
        hypergraph,
        dangling,
    })
}

/// Random recursive tree: vertex `v` attaches to a uniform earlier vertex.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<OrdinaryTree> {
    OrdinaryTree::new(n, (1..n).map(|v| (rng.gen_range(0..v), v)).collect())
}

/// Supertree grown by uniform edge attachment: each new edge meets the
/// current hypergraph in one uniformly chosen vertex.
pub fn random_supertree<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<Hypergraph> {
    if m == 0 || k < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 1, k >= 2, got m={m}, k={k}")));
    }
    let mut edges = vec![(0..k).collect::<Vec<_>>()];
    let mut n = k;
    for _ in 1..m {
        let mut edge = vec![rng.gen_range(0..n)];
        edge.extend(n..n + k - 1);
        n += k - 1;
        edges.push(edge);
    }
    Hypergraph::new(k, n, edges)
}

/// Attaches one new edge at vertex `at`.
pub fn attach_edge(h: &Hypergraph, at: usize) -> Result<Hypergraph> {
    let k = h.k();
    let n = h.n();
    let mut edges = h.edges().to_vec();
    let mut edge = vec![at];
    edge.extend(n..n + k - 1);
    edges.push(edge);
    Hypergraph::new(k, n + k - 1, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{are_isomorphic, canonical_key, is_supertree, vertex_stats};

    #[test]
    fn hyperstar_shapes() {
        let single = hyperstar(1, 4).unwrap();
        assert_eq!(single.m(), 1);
        assert_eq!(single.n(), 4);
        let h = hyperstar(3, 3).unwrap();
        assert_eq!(h.n(), 7);
        assert_eq!(h.degrees()[0], 3);
        assert!(is_supertree(&h));
    }

    #[test]
    fn double_star_shapes() {
        let s11 = double_star(1, 1).unwrap();
        assert!(are_isomorphic(&s11.to_hypergraph(), &path(4).unwrap().to_hypergraph()).unwrap());
        let s22 = double_star(2, 2).unwrap();
        assert_eq!(s22.n(), 6);
        assert_eq!(s22.degrees().iter().filter(|&&d| d == 3).count(), 2);
        let a = double_star(1, 2).unwrap().to_hypergraph();
        let b = double_star(2, 1).unwrap().to_hypergraph();
        assert!(are_isomorphic(&a, &b).unwrap());
        assert!(double_star(0, 2).is_err());
    }

    #[test]
    fn power_counts() {
        let single = tree_power(&path(2).unwrap(), 5).unwrap();
        assert_eq!((single.m(), single.n()), (1, 5));
        let h = tree_power(&double_star(1, 2).unwrap(), 3).unwrap();
        assert_eq!((h.n(), h.m()), (9, 4));
        // fresh vertices follow the tree's own, edge by edge
        assert_eq!(h.edge_index(&[0, 1, 5]), Some(0));
        let deg = h.degrees();
        assert!(h.edges().iter().all(|e| e.iter().filter(|&&v| deg[v] >= 2).count() <= 2));
        let same = tree_power(&path(5).unwrap(), 2).unwrap();
        assert_eq!(same, path(5).unwrap().to_hypergraph());
    }

    #[test]
    fn f_tree_shapes() {
        assert!(are_isomorphic(
            &f_tree(5).unwrap().to_hypergraph(),
            &path(5).unwrap().to_hypergraph()
        )
        .unwrap());
        let f6 = f_tree(6).unwrap();
        let deg = f6.degrees();
        assert_eq!(deg.iter().max(), Some(&3));
        assert_eq!(deg.iter().filter(|&&d| d == 3).count(), 1);
        for n in 5..12 {
            assert_eq!(f_tree(n).unwrap().edges().len(), n - 1);
        }
        assert!(f_tree(4).is_err());
    }

    #[test]
    fn broom_shapes() {
        let b = broom(1, 1, 1, 3).unwrap();
        assert_eq!((b.m(), b.n()), (4, 9));
        assert_eq!(vertex_stats(&b).non_pendent_count, 3);
        let b = broom(1, 1, 2, 3).unwrap();
        assert_eq!(b.m(), 5);
        let deg = b.degrees();
        assert_eq!(&deg[..3], &[2, 2, 3]);
        assert_eq!(b.edge(0), &[0, 1, 2]);
        for k in 3..6 {
            let b = broom(1, 1, 4, k).unwrap();
            assert!(is_supertree(&b));
            assert_eq!(b.n(), 7 * (k - 1) + 1);
            // the central edge carries three non-pendent vertices: not a hypertree
            assert!(hypertree_base(&b).is_none());
        }
        assert!(broom(1, 1, 1, 2).is_err());
        assert!(broom(2, 1, 1, 3).is_err());
    }

    #[test]
    fn hypertree_base_recovers_tree() {
        let t = double_star(2, 3).unwrap();
        let h = tree_power(&t, 4).unwrap();
        let base = hypertree_base(&h).unwrap();
        assert!(are_isomorphic(&base.to_hypergraph(), &t.to_hypergraph()).unwrap());
        let single = hypertree_base(&hyperstar(1, 3).unwrap()).unwrap();
        assert_eq!(single.n(), 2);
    }

    #[test]
    fn identity_move() {
        let b = broom(1, 2, 3, 3).unwrap();
        let out = move_edges(&b, 0, &[]).unwrap();
        assert_eq!(out.hypergraph, b);
        assert!(out.dangling.is_empty());
    }

    #[test]
    fn moving_pendent_edges_of_t111_onto_u3() {
        let b = broom(1, 1, 1, 3).unwrap();
        let e1 = b.edge_index(&[0, 3, 4]).unwrap();
        let e2 = b.edge_index(&[1, 5, 6]).unwrap();
        let out = move_edges(&b, 2, &[(e1, 0), (e2, 1)]).unwrap();
        assert_eq!(out.hypergraph.degrees()[2], 4);
        // u3 now carries every edge: the hyperstar with four edges
        assert_eq!(
            canonical_key(&out.hypergraph).unwrap(),
            canonical_key(&hyperstar(4, 3).unwrap()).unwrap()
        );
    }

    #[test]
    fn move_turns_t222_into_t114() {
        let b = broom(2, 2, 2, 3).unwrap();
        let e1 = b.edge_index(&[0, 3, 4]).unwrap();
        let e2 = b.edge_index(&[1, 7, 8]).unwrap();
        let out = move_edges(&b, 2, &[(e1, 0), (e2, 1)]).unwrap();
        assert!(is_supertree(&out.hypergraph));
        assert_eq!(
            canonical_key(&out.hypergraph).unwrap(),
            canonical_key(&broom(1, 1, 4, 3).unwrap()).unwrap()
        );
    }

    #[test]
    fn move_errors() {
        let h = Hypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let moved = move_edges(&h, 0, &[(1, 1)]).unwrap();
        assert_eq!(moved.hypergraph.edges(), &[vec![0, 1], vec![0, 2]]);
        let p = path(3).unwrap().to_hypergraph();
        assert!(matches!(move_edges(&p, 0, &[(0, 0)]), Err(Error::InvalidMove(_))));
        assert!(matches!(move_edges(&p, 2, &[(1, 2)]), Err(Error::InvalidMove(_))));
        // path 0-1-2-3: moving {2,3} from 3 to 1 duplicates {1,2}
        let p4 = path(4).unwrap().to_hypergraph();
        let e = p4.edge_index(&[2, 3]).unwrap();
        assert_eq!(move_edges(&p4, 1, &[(e, 3)]), Err(Error::MultipleEdge(vec![1, 2])));
    }

    #[test]
    fn dangling_vertices_are_reported() {
        let p = path(3).unwrap().to_hypergraph();
        // move {0,1} from 0 to 2: {1,2} twice
        assert!(move_edges(&p, 2, &[(0, 0)]).is_err());
        let h = Hypergraph::new(2, 4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let out = move_edges(&h, 2, &[(0, 0)]).unwrap();
        assert_eq!(out.dangling, vec![0]);
    }
}
