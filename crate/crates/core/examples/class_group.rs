//! Class groups from reduced binary quadratic forms.

use adelic_orbit::numberfield::{NumberField, Principality};

fn main() -> adelic_orbit::Result<()> {
    for d in [-1, -5, -23, -47] {
        let k = NumberField::imag_quadratic(d)?;
        let g = k.class_group();
        let forms: Vec<String> = g.classes.iter().map(|c| c.to_string()).collect();
        println!("D = {}: h = {}  [{}]", k.discriminant(), g.order(), forms.join(", "));
        for row in &g.table {
            println!("    {row:?}");
        }
    }

    let k = NumberField::imag_quadratic(-5)?;
    let p2 = k.prime_by_label("P2")?;
    let p3 = k.prime_by_label("P3_1")?;
    let ideal = k.ideal_mul(&k.prime_power(&p2, 1), &k.prime_power(&p3, 1));
    println!("[P2] = {}", k.ideal_class(&k.prime_power(&p2, 1))?);
    match k.is_principal(&ideal)? {
        Principality::Principal(g) => println!("P2·P3_1 = {ideal} = ({g})"),
        Principality::NotPrincipal { class } => println!("P2·P3_1 = {ideal} lies in {class}"),
    }
    let p2sq = k.prime_power(&p2, 2);
    if let Principality::Principal(g) = k.is_principal(&p2sq)? {
        println!("P2^2 = ({g})");
    }
    Ok(())
}
