//! Prime sets, their normal forms, and the power-cofinite topology.

use std::collections::BTreeSet;

use adelic_orbit::numberfield::{NumberField, PrimeRef};
use adelic_orbit::primesets::{PointClosure, PowerCofiniteOpen, PrimeSetExpr};

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-5)?;
    let a: PrimeSetExpr = "(union (res 4 (1) split) (finite \"P2\"))".parse()?;
    let b: PrimeSetExpr = "(complement (res 4 (3)))".parse()?;
    println!("A = {a}");
    println!("A canonical: {}", a.canonical(&k)?);
    println!("A ⊆ B: {}", a.is_subset(&k, &b)?);
    println!("B \\ A = {}", b.clone().minus(a.clone()).canonical(&k)?);
    println!("|A| = {:?}", a.cardinality(&k)?);

    let (a1, a2) = a.split_infinite(&k)?;
    println!("A splits into {a1} and {a2}");

    let closure = PointClosure::of(r#"(finite "P2")"#.parse()?);
    println!("{{P2}}‾ contains A: {}", closure.contains(&k, &a)?);

    let open = PowerCofiniteOpen::new([BTreeSet::from([PrimeRef::unique(2)]), BTreeSet::from([PrimeRef::split(3, 1)])]);
    let gens: Vec<Vec<String>> = open.generators().iter().map(|g| g.iter().map(|p| p.to_string()).collect()).collect();
    println!("open set generated by {gens:?} contains A: {}", open.contains_point(&k, &a));
    Ok(())
}
