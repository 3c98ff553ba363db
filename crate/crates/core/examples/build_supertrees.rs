//! Builds the named supertree families and compares them up to isomorphism.

use supertree::constructors::{broom, double_star, hyperstar, path, tree_power};
use supertree::hypergraph::{are_isomorphic, canonical_key, is_supertree, vertex_stats};
use supertree::Result;

fn main() -> Result<()> {
    let k = 3;
    let family = [
        ("hyperstar S^3_6", hyperstar(5, k)?),
        ("S^3(1,3)", tree_power(&double_star(1, 3)?, k)?),
        ("S^3(2,2)", tree_power(&double_star(2, 2)?, k)?),
        ("T(1,1,2)", broom(1, 1, 2, k)?),
        ("P^3_6", tree_power(&path(6)?, k)?),
    ];
    for (name, h) in &family {
        let stats = vertex_stats(h);
        println!(
            "{name:<16} n={:<3} m={} supertree={} N2={} key={}",
            h.n(),
            h.m(),
            is_supertree(h),
            stats.non_pendent_count,
            canonical_key(h)?
        );
    }

    // relabeling does not change the class
    let t = broom(1, 1, 2, k)?;
    let reversed: Vec<usize> = (0..t.n()).rev().collect();
    let u = t.relabel(&reversed)?;
    println!("relabeled broom isomorphic: {}", are_isomorphic(&t, &u)?);
    println!("same key: {}", canonical_key(&t)? == canonical_key(&u)?);
    Ok(())
}
