//! Elements, norms and prime factorization in Q(√−5).

use adelic_orbit::numberfield::NumberField;

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-5)?;
    let x = k.element("1+w")?;
    let y = k.element("3-2w")?;
    println!("w^2 = {}", k.mul(&k.omega(), &k.omega()));
    println!("({x})({y}) = {}", k.mul(&x, &y));
    println!("N({x}) = {}, Tr({x}) = {}", k.norm(&x), k.trace(&x));
    println!("1/({x}) = {}", k.inv(&x)?);

    for p in [2, 3, 5, 7, 11] {
        let s = k.factor_rational_prime(p)?;
        let labels: Vec<String> = s.primes.iter().map(|q| q.label()).collect();
        println!("{p}: {:?} -> {}", s.kind, labels.join(", "));
    }

    let z = k.element("6")?;
    let support = k.element_support(&z)?;
    let parts: Vec<String> = support.iter().map(|(p, e)| format!("{}^{e}", p.label())).collect();
    println!("(6) = {}", parts.join(" "));
    Ok(())
}
