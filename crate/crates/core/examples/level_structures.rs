//! Level structure masses over F_7 against degree times the weighted class number.

use frobscan::census::{eligibility, level_formula, Census, LevelStructure};
use frobscan::gf::make_field;
use std::sync::Arc;

fn main() -> frobscan::Result<()> {
    let census = Census::run(Arc::new(make_field(7, 1)?))?;
    for level in ["igusa:1", "gamma:3", "gamma1:5"] {
        let level = LevelStructure::parse(level)?;
        println!("{level:?}");
        for t in census.trace_range() {
            if !eligibility(level, 7, 1, 1, t)?.eligible {
                continue;
            }
            let mass = census.level_mass(level, t)?;
            let formula = level_formula(level, 7, 1, 1, t)?;
            println!("  t = {t:3}  mass {mass:>4}  formula {formula:>4}");
        }
    }
    Ok(())
}
