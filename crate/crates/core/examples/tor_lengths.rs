//! Taylor complexes and lengths of Tor between monomial quotients.

use jumpseries::tor::{kodiyalam_fit, taylor_complex, tor_lengths, tor_lengths_with, verify_lemma_41, Resolve};
use jumpseries::{parse_ideal, MonomialIdeal};

fn main() -> jumpseries::Result<()> {
    let a = parse_ideal("x^2, y^2")?;
    let m = MonomialIdeal::maximal(2);
    let t = taylor_complex(&parse_ideal("x^2, x*y, y^3")?)?;
    println!("Taylor ranks of (x^2, xy, y^3): {:?}, d² = 0: {}", t.ranks(), t.check_d_squared());
    for j in 1..=4 {
        let row = tor_lengths(&a, j, &m, 2)?;
        let other = tor_lengths_with(&a, j, &m, 2, Resolve::Argument)?;
        println!("j = {j}: Tor = {:?} (resolving m: {:?}), λ(Im φ) = {}", row.tor, other.tor, row.image_phi);
    }
    let r = verify_lemma_41(&a, 2, &m.power(2)?)?;
    println!("λ(J/a²J) = {} = {} - {} + ({} - 1)·{}", r.lhs, r.colength_power, r.image_phi, r.beta1, r.colength_j);
    let fit = kodiyalam_fit(&a, &m.power(2)?, 2, 1, 6)?;
    println!("λTor_2(A/a^j, A/m^2) for j = 1..6: {:?}, linear: {}", fit.values, fit.differences_vanish);
    Ok(())
}
