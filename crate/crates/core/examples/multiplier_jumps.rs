//! Multiplier ideals, the log canonical threshold and jumping numbers.

use jumpseries::rational::{format_rational, frac, int};
use jumpseries::{jumping_numbers, lct, multiplier_ideal, multiplier_left_limit, parse_ideal, MultiplierFiltration};

fn main() -> jumpseries::Result<()> {
    let a = parse_ideal("x^2, y^3")?;
    println!("lct = {}", format_rational(&lct(&a)?));
    println!("J(a^(5/6)) = {}", multiplier_ideal(&a, &frac(5, 6))?);
    println!("J(a^(5/6 - ε)) = {}", multiplier_left_limit(&a, &frac(5, 6))?);
    let f = MultiplierFiltration::new(&a)?;
    for j in jumping_numbers(&f, &int(3))?.jumps {
        println!("{:>4}  mult {}  ideal {}", format_rational(&j.c), j.multiplicity, j.ideal);
    }
    Ok(())
}
