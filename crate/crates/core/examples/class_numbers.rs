//! Reduced forms and the divisor-sum class number for a few discriminants.

use frobscan::classnum::{
    class_number_h, kronecker_class_number, reduced_forms, weighted_kronecker_class_number,
    Discriminant,
};

fn main() -> frobscan::Result<()> {
    for d in [-3, -4, -15, -23, -48, -72, -100] {
        let disc = Discriminant::new(d)?;
        let forms: Vec<String> = reduced_forms(disc, true)
            .iter()
            .map(|f| f.to_string())
            .collect();
        println!(
            "D = {d:5}  h = {}  H = {}  H_w = {}  primitive: {}",
            class_number_h(disc),
            kronecker_class_number(disc),
            weighted_kronecker_class_number(disc),
            forms.join(" ")
        );
    }
    Ok(())
}
