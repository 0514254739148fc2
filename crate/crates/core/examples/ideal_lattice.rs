//! Primitive ideals I_A and ideals attached to open sets.

use std::collections::BTreeSet;

use adelic_orbit::dynamics::lattice::{ideal_leq, ideal_of_open, is_maximal, primitive_ideal};
use adelic_orbit::numberfield::{NumberField, PrimeRef};
use adelic_orbit::primesets::{PowerCofiniteOpen, PrimeSetExpr};

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::rational();
    let sets = ["empty", r#"(finite "P2")"#, "(res 4 (1))", r#"(union (res 4 (1)) (finite "P2"))"#, "all"];
    let ideals = sets
        .iter()
        .map(|s| primitive_ideal(&k, &s.parse::<PrimeSetExpr>()?))
        .collect::<adelic_orbit::Result<Vec<_>>>()?;
    for i in &ideals {
        let below: Vec<String> = ideals
            .iter()
            .filter(|j| ideal_leq(&k, i, j).unwrap())
            .map(|j| j.label().to_string())
            .collect();
        println!("I_{} ≤ {:?}  maximal: {}", i.label(), below, is_maximal(&k, i)?);
    }

    let u = ideal_of_open(PowerCofiniteOpen::new([BTreeSet::from([PrimeRef::unique(2)])]));
    let v = ideal_of_open(PowerCofiniteOpen::new([BTreeSet::from([PrimeRef::unique(3)])]));
    println!("I(U) ∧ I(V) = {}", u.meet(&v).to_json());
    println!("I(U) ∨ I(V) = {}", u.join(&v).to_json());
    let a: PrimeSetExpr = r#"(finite "P2" "P5")"#.parse()?;
    println!("I_{a} ⊇ I(U): {}", u.contains_point(&k, &a));
    Ok(())
}
