//! Test ideals in positive characteristic, compared with multiplier ideals.

use jumpseries::rational::{format_rational, int};
use jumpseries::{jumping_numbers, parse_ideal, test_ideal, CharP, Filtration, MultiplierFiltration, TestFiltration};

fn main() -> jumpseries::Result<()> {
    let a = parse_ideal("x^2, x*y^2, y^5")?;
    let m = MultiplierFiltration::new(&a)?;
    for p in [2, 3, 5] {
        let t = TestFiltration::new(&a, CharP::new(p)?)?;
        let jumps = jumping_numbers(&t, &int(2))?;
        let cs: Vec<String> = jumps.jumps.iter().map(|j| format!("{}×{}", format_rational(&j.c), j.multiplicity)).collect();
        println!("p = {p}: F-jumps up to 2: {}", cs.join(" "));
        let same = jumps.jumps.iter().all(|j| m.eval(&j.c).map(|i| i == j.ideal).unwrap_or(false));
        println!("        equal to multiplier ideals at those points: {same}");
    }
    println!("τ(a^(3/2)) in char 7 = {}", test_ideal(&a, &jumpseries::rational::frac(3, 2), CharP::new(7)?)?);
    Ok(())
}
