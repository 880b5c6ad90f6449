//! Orders of the rational points on y^2 = x^3 + x + 3 over F_31.

use frobscan::ellcurve::WeierstrassCurve;
use frobscan::gf::make_field;
use std::sync::Arc;

fn main() -> frobscan::Result<()> {
    let e = WeierstrassCurve::from_ints(Arc::new(make_field(31, 1)?), 1, 3)?;
    let n = e.count_points()?;
    println!("#E = {n}, j = {}", e.field().display(e.j_invariant()));
    for (d, c) in e.point_order_census(n)? {
        if c > 0 {
            println!("order {d:3}: {c} points");
        }
    }
    for m in [2, 3, 4] {
        println!("#E[{m}](F_31) = {}", e.torsion_count(m)?);
    }
    Ok(())
}
