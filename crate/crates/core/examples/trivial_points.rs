//! Points with trivial stabilizer and a prescribed quasi-orbit.

use adelic_orbit::adelic::DEFAULT_REFINEMENT_CAP;
use adelic_orbit::dynamics::{essential_freeness_witness, quasi_orbit, stabilizer, trivial_stabilizer_point};
use adelic_orbit::numberfield::NumberField;
use adelic_orbit::primesets::PrimeSetExpr;

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::rational();
    for text in ["empty", "all", r#"(finite "P2" "P3")"#, "(res 5 (1 4))"] {
        let a: PrimeSetExpr = text.parse()?;
        let w = trivial_stabilizer_point(&k, &a)?;
        let s = stabilizer(&k, &w, DEFAULT_REFINEMENT_CAP)?;
        println!("A = {a}: Z = {}, stabilizer {}", quasi_orbit(&w), s.tag());
        println!("    {w}");
    }
    let witness = essential_freeness_witness(&NumberField::imag_quadratic(-5)?)?;
    println!("witness over Q(√−5): {}", witness.to_json());
    Ok(())
}
