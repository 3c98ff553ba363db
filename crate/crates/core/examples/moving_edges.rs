//! Moves edges towards the vertex of largest eigenvector weight and watches
//! the radius grow, until only the hyperstar is left.

use supertree::constructors::path;
use supertree::constructors::tree_power;
use supertree::hypergraph::non_pendent_count;
use supertree::ordering::{reduce_non_pendent, run_moving_edge_trials, MovingEdgesConfig, Settings};
use supertree::spectral::spectral_radius;
use supertree::Result;

fn main() -> Result<()> {
    let s = Settings::default();
    let mut t = tree_power(&path(7)?, 3)?;
    println!("N2={} rho={:.9}", non_pendent_count(&t), spectral_radius(&t)?);
    while non_pendent_count(&t) >= 2 {
        let step = reduce_non_pendent(&t, &s)?;
        println!("N2={} rho={:.9}", step.n2_after, step.rho_after);
        t = step.tree;
    }

    let trials = run_moving_edge_trials(&MovingEdgesConfig { trials: 10, ..Default::default() }, &s)?;
    for t in &trials {
        println!(
            "moved {:?} onto {}: {:.9} -> {:.9}",
            t.moves, t.target, t.rho_before, t.rho_after
        );
    }
    Ok(())
}
