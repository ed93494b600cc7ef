//! Ideal arithmetic, colengths and Frobenius powers and roots.

use jumpseries::monomial::{ideal_leq, quotient_length};
use jumpseries::{parse_ideal, MonomialIdeal};

fn main() -> jumpseries::Result<()> {
    let a = parse_ideal("x^2, x*y, y^3")?;
    let m = MonomialIdeal::maximal(2);
    println!("a = {a}");
    println!("colength {}", a.colength()?);
    println!("standard monomials {:?}", a.standard_monomials()?.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("a^2 = {}", a.power(2)?);
    println!("a ∩ m^2 = {}", a.intersection(&m.power(2)?)?);
    println!("a + (y^2) = {}", a.sum(&parse_ideal("y^2")?)?);
    println!("a ⊆ m: {}", ideal_leq(&a, &m)?);
    println!("λ(m/a) = {}", quotient_length(&m, &a)?);
    let f = a.frobenius_power(3)?;
    println!("a^[3] = {f}");
    println!("(a^[3])^[1/3] = {}", f.frobenius_root(3)?);
    Ok(())
}
