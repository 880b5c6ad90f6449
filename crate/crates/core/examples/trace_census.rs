//! Enumerate every curve over F_7 and compare the count per trace with Schoof's formula.

use frobscan::census::{formula_n, Census};
use frobscan::gf::make_field;
use std::sync::Arc;

fn main() -> frobscan::Result<()> {
    let census = Census::run(Arc::new(make_field(7, 1)?))?;
    println!("{} classes", census.records().len());
    for t in census.trace_range() {
        let n = census.empirical_n(t);
        let formula = formula_n(&census, t)?;
        println!(
            "t = {t:3}  N = {n:2}  formula {formula:2}  {}",
            if n == formula { "ok" } else { "differ" }
        );
    }
    Ok(())
}
