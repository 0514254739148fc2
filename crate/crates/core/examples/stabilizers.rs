//! Stabilizers of the basic points ω_{r,a}.

use adelic_orbit::adelic::{OmegaPoint, DEFAULT_REFINEMENT_CAP};
use adelic_orbit::dynamics::{stabilizer, GroupElement};
use adelic_orbit::numberfield::NumberField;

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-1)?;
    let cases = [("0", "1"), ("1/2+w", "3"), ("0", "0"), ("2+w", "0")];
    for (r, a) in cases {
        let w = OmegaPoint::exact(&k, k.element(r)?, &k.element(a)?)?;
        let s = stabilizer(&k, &w, DEFAULT_REFINEMENT_CAP)?;
        println!("ω_{{{r},{a}}}: {} {}", s.tag(), s.form());
    }

    let w = OmegaPoint::exact(&k, k.element("1/2+w")?, &k.element("3")?)?;
    let s = stabilizer(&k, &w, DEFAULT_REFINEMENT_CAP)?;
    for (x, u) in [("0", "w"), ("3/2+1/2*w", "w"), ("3", "1"), ("1", "1")] {
        let h = GroupElement::new(k.element(x)?, k.element(u)?)?;
        println!("  {h} ∈ Stab: {:?}", s.contains(&k, &h)?);
    }
    println!("{}", s.to_json());
    Ok(())
}
