//! Frobenius angles of the Legendre family over F_5 up to degree 6 against sin^2.

use frobscan::surface::{satotate_histogram, Family};

fn main() -> frobscan::Result<()> {
    let fam = Family::legendre(5)?;
    let h = satotate_histogram(&fam, 6, 12)?;
    println!("{} closed points", h.total);
    for bin in &h.bins {
        let bar = "#".repeat((bin.frequency * 200.0).round() as usize);
        println!(
            "[{:.3}, {:.3}]  {:5}  obs {:.4}  ref {:.4}  {bar}",
            bin.lo, bin.hi, bin.count, bin.frequency, bin.reference_mass
        );
    }
    Ok(())
}
