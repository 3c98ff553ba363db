//! Power iteration on the adjacency tensor against the closed forms for
//! powers of trees.

use supertree::constructors::{double_star, f_tree, hyperstar, tree_power};
use supertree::spectral::{
    double_star_power_radius, f_tree_power_radius, power_iteration, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use supertree::Result;

fn main() -> Result<()> {
    let k = 3;
    for m in 4..=8 {
        let star = power_iteration(&hyperstar(m, k)?, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let ds = power_iteration(
            &tree_power(&double_star(2, m - 3)?, k)?,
            DEFAULT_TOL,
            DEFAULT_MAX_ITER,
        )?;
        let f = power_iteration(&tree_power(&f_tree(m + 1)?, k)?, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        println!(
            "m={m} star {:.9} (m^(1/k) {:.9})  S(2,m-3) {:.9} vs {:.9}  F {:.9} vs {:.9}  [{} iterations]",
            star.rho,
            (m as f64).powf(1.0 / k as f64),
            ds.rho,
            double_star_power_radius(m, k)?,
            f.rho,
            f_tree_power_radius(m, k)?,
            ds.iterations,
        );
    }
    Ok(())
}
