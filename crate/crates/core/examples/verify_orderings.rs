//! Runs the exhaustive ordering checks at small sizes.

use supertree::ordering::{
    verify_collapsed_order, verify_hofmeister, verify_partition_lemma, verify_sandwich,
    verify_top_four, verify_top_three, Settings,
};
use supertree::Result;

fn main() -> Result<()> {
    let s = Settings::default();
    print!("{}", verify_collapsed_order(3, &s)?);
    print!("{}", verify_top_three(5, 3, &s)?);
    print!("{}", verify_top_four(6, 3, &s)?);
    print!("{}", verify_hofmeister(6, 2, &s)?);
    print!("{}", verify_partition_lemma(7, 3, &s)?);
    print!("{}", verify_sandwich(7, 3, &s)?);
    Ok(())
}
