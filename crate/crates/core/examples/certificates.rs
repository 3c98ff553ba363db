//! Bounds the radius of T(1,1,m-3) from both sides with explicit weighted
//! incidence matrices, then pins it down by bisection on alpha.

use supertree::certificates::{alpha_normal_radius, classify, t11m3_certificate, DEFAULT_CERT_TOL};
use supertree::constructors::broom;
use supertree::spectral::{double_star_power_radius, f_tree_power_radius, spectral_radius};
use supertree::Result;

fn main() -> Result<()> {
    let (m, k) = (6, 3);
    let host = broom(1, 1, m - 3, k)?;
    for alpha in [
        double_star_power_radius(m, 2)?.powi(-2),
        f_tree_power_radius(m, 2)?.powi(-2),
    ] {
        let b = t11m3_certificate(m, k, alpha)?;
        let verdict = classify(&host, &b, alpha, DEFAULT_CERT_TOL)?;
        println!(
            "alpha={alpha:.9} {} slacks [{:.3e}, {:.3e}] implies {:?}",
            verdict.class,
            verdict.min_slack(),
            verdict.max_slack(),
            verdict.implication(k)
        );
    }
    println!("alpha-normal radius {:.12}", alpha_normal_radius(&host, DEFAULT_CERT_TOL)?);
    println!("power iteration     {:.12}", spectral_radius(&host)?);
    Ok(())
}
