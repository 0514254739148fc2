//! Points of Ω_A: adele sketches, superideals, and local comparisons.

use adelic_orbit::adelic::{local_sub, points_equivalent, AdeleSketch, LocalValue, OmegaPoint, SuperIdeal, Valuation};
use adelic_orbit::adelic::DEFAULT_REFINEMENT_CAP;
use adelic_orbit::numberfield::{NumberField, PrimeRef};
use adelic_orbit::primesets::PrimeSetExpr;

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-1)?;
    let x = AdeleSketch::global(k.element("1/2")?);
    let y = AdeleSketch::global(k.element("9/2")?);
    for p in [PrimeRef::unique(2), PrimeRef::unique(3), PrimeRef::split(5, 2)] {
        let p = k.prime(&p)?;
        println!("v_{}(x - y) {:?}", p.label(), local_sub(&k, &x, &y, &p));
    }

    let res: PrimeSetExpr = "(res 4 (1))".parse()?;
    let a = SuperIdeal::new(&k, vec![(res.clone(), Valuation::Infinite), (res.clone().complement(), Valuation::Finite(0))])?;
    println!("a = {a}, Z(a) = {}", a.zero_set());

    let generic = AdeleSketch::new(&k, k.element("0")?, vec![(res, LocalValue::generic(0, true))])?;
    let w1 = OmegaPoint::new(generic, a.clone());
    let w2 = OmegaPoint::new(AdeleSketch::global(k.element("2")?), a);
    println!("w1 = {w1}");
    println!("w1 ~ w2: {:?}", points_equivalent(&k, &w1, &w2, DEFAULT_REFINEMENT_CAP)?);

    let p = OmegaPoint::exact(&k, k.element("1/3")?, &k.element("3")?)?;
    let q = OmegaPoint::exact(&k, k.element("10/3")?, &k.element("3")?)?;
    println!("ω(1/3, 3) ~ ω(10/3, 3): {:?}", points_equivalent(&k, &p, &q, DEFAULT_REFINEMENT_CAP)?);
    println!("{}", q.to_json());
    Ok(())
}
