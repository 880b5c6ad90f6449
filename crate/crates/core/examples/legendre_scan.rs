//! Frobenius traces along the Legendre family over F_7 up to degree 3, with the bounds.

use frobscan::surface::{Family, ScanReport};

fn main() -> frobscan::Result<()> {
    let fam = Family::legendre(7)?;
    let report = ScanReport::run(&fam, 3)?;
    println!("{fam}");
    println!(
        "j-map degree {} (separable {})",
        report.j_degree, report.j_separable_degree
    );
    for level in &report.levels {
        let c = level.counts;
        println!(
            "k = {}: {} ordinary, {} supersingular, {} bad",
            level.k, c.ordinary, c.supersingular, c.bad
        );
    }
    let violated = report
        .pointwise_bounds()?
        .into_iter()
        .filter(|b| !b.check.holds())
        .count();
    println!("{violated} pointwise bound violations");
    for t in [-4, 0, 4] {
        let c = report.pi_b_t(t)?;
        println!("t = {t:2}: {} closed points, bound {}", c.count, c.bound);
    }
    Ok(())
}
