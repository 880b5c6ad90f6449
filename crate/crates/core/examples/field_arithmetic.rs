//! Arithmetic in F_{5^3}: the modulus, a generator, Frobenius orbits and square roots.

use frobscan::gf::make_field;

fn main() -> frobscan::Result<()> {
    let f = make_field(5, 3)?;
    println!("{f}, modulus coefficients (low to high) {:?}", f.modulus());

    let g = f.primitive_element();
    println!("primitive element {}", f.display(g));

    let x = f.element(&[1, 2, 3])?;
    let y = f.inv(x)?;
    println!("({})^-1 = {}", f.display(x), f.display(y));
    println!("check: {}", f.display(f.mul(x, y)));

    let orbit: Vec<String> = (0..3)
        .map(|i| f.display(f.frobenius(x, i)).to_string())
        .collect();
    println!("Frobenius orbit of x: {}", orbit.join(", "));

    let squares = f
        .elements()
        .filter(|&a| !a.is_zero() && f.is_square(a))
        .count();
    println!("{squares} nonzero squares out of {}", f.cardinality() - 1);
    if let Some(r) = f.sqrt(x) {
        println!("sqrt(x) = {}", f.display(r));
    } else {
        println!("x is not a square");
    }
    Ok(())
}
