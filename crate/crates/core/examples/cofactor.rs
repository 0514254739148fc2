//! Making a product of prime powers principal with one extra prime.

use adelic_orbit::numberfield::NumberField;
use adelic_orbit::primesets::PrimeSetExpr;

fn main() -> adelic_orbit::Result<()> {
    let k = NumberField::imag_quadratic(-5)?;
    let p2 = k.prime_by_label("P2")?;
    let c = k.principal_cofactor(std::slice::from_ref(&p2), &[1], &PrimeSetExpr::Empty, 10_000)?;
    println!("(k) = P2 · {} with k = {}", c.q.label(), c.k);

    let avoid: PrimeSetExpr = r#"(finite "P3_1" "P3_2")"#.parse()?;
    let c = k.principal_cofactor(&[p2], &[-1], &avoid, 10_000)?;
    println!("(k) = P2^-1 · {} with k = {}", c.q.label(), c.k);

    let k23 = NumberField::imag_quadratic(-23)?;
    let p2 = k23.prime_by_label("P2_0")?;
    let c = k23.principal_cofactor(&[p2], &[2], &PrimeSetExpr::Empty, 10_000)?;
    println!("Q(√−23): (k) = P2_0^2 · {} with k = {}", c.q.label(), c.k);
    Ok(())
}
