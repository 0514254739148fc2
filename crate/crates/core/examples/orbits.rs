//! The action of K⋊K* on Ω_A, quasi-orbits and orbit closures.

use adelic_orbit::adelic::{OmegaPoint, SuperIdeal, Valuation};
use adelic_orbit::dynamics::{act, orbit_closure_contains, quasi_orbit, GroupElement};
use adelic_orbit::numberfield::NumberField;
use adelic_orbit::primesets::PrimeSetExpr;

fn point_with_zero_set(k: &NumberField, z: &str) -> adelic_orbit::Result<OmegaPoint> {
    let z: PrimeSetExpr = z.parse()?;
    let a = SuperIdeal::new(k, vec![(z.clone(), Valuation::Infinite), (z.complement(), Valuation::Finite(0))])?;
    Ok(OmegaPoint::new(adelic_orbit::adelic::AdeleSketch::global(k.element("0")?), a))
}

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-5)?;
    let w = OmegaPoint::exact(&k, k.element("0")?, &k.element("1")?)?;
    let g = GroupElement::new(k.element("1/2")?, k.element("1+w")?)?;
    let gw = act(&k, &g, &w)?;
    println!("{g} · {w} = {gw}");

    let points = [
        ("Z = ∅", point_with_zero_set(&k, "empty")?),
        ("Z = {P2}", point_with_zero_set(&k, r#"(finite "P2")"#)?),
        ("Z = res 4 (1)", point_with_zero_set(&k, "(res 4 (1))")?),
        ("Z = All", point_with_zero_set(&k, "all")?),
    ];
    for (name, p) in &points {
        println!("{name}: quasi-orbit {}", quasi_orbit(p));
    }
    for (n1, p1) in &points {
        let row: Vec<&str> = points
            .iter()
            .map(|(_, p2)| if orbit_closure_contains(&k, p1, p2).unwrap() { "1" } else { "." })
            .collect();
        println!("{n1:>14}: {}", row.join(" "));
    }
    Ok(())
}
