//! Moving a point into a basic neighborhood with an explicit group element.

use adelic_orbit::adelic::OmegaPoint;
use adelic_orbit::dynamics::{act, approximate_into, BasicNeighborhood};
use adelic_orbit::numberfield::{NumberField, PrimeRef};

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-5)?;
    let base = OmegaPoint::exact(&k, k.element("0")?, &k.element("1")?)?;
    let target = OmegaPoint::exact(&k, k.element("0")?, &k.element("1+w")?)?;
    let v = BasicNeighborhood::new(&k, target, vec![(PrimeRef::unique(2), 1)], vec![], vec![])?;
    let res = approximate_into(&k, &base, &v, 10_000)?;
    println!("g = {}", res.g);
    if let Some(q) = res.cofactor {
        println!("cofactor prime {q}");
    }
    for c in &res.checks {
        println!("  {}", c.to_json());
    }
    println!("lands in V: {}", v.contains(&k, &act(&k, &res.g, &base)?)?);

    let q = NumberField::rational();
    let base = OmegaPoint::exact(&q, q.element("1/3")?, &q.element("1")?)?;
    let target = OmegaPoint::exact(&q, q.element("5")?, &q.element("4")?)?;
    let v = BasicNeighborhood::new(
        &q,
        target,
        vec![(PrimeRef::unique(2), 2)],
        vec![],
        vec![(PrimeRef::unique(2), 3), (PrimeRef::unique(7), 2)],
    )?;
    let res = approximate_into(&q, &base, &v, 10_000)?;
    println!("over Q: g = {}, in V: {}", res.g, v.contains(&q, &act(&q, &res.g, &base)?)?);
    Ok(())
}
