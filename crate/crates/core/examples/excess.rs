//! Excess of jumping numbers in the plane from Tor₂ lengths.

use jumpseries::rational::{format_rational, int};
use jumpseries::tor::excess;
use jumpseries::{jumping_numbers, parse_ideal, MultiplierFiltration};

fn main() -> jumpseries::Result<()> {
    for s in ["x, y", "x^2, y^3", "x^3, y^4"] {
        let a = parse_ideal(s)?;
        let f = MultiplierFiltration::new(&a)?;
        print!("({s}):");
        for j in jumping_numbers(&f, &int(2))?.jumps {
            let r = excess(&f, &a, &j.c, 2)?;
            print!("  ρ({}) = {}", format_rational(&j.c), format_rational(&r.rho));
        }
        println!();
    }
    Ok(())
}
