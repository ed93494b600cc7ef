//! h-polynomials of the shifted filtrations and their tail series.

use jumpseries::rational::{format_rational, frac, int};
use jumpseries::{h_polynomial, h_polynomial_left, multiplicity, parse_ideal, tail_series, MultiplierFiltration};

fn main() -> jumpseries::Result<()> {
    let f = MultiplierFiltration::new(&parse_ideal("x^2, y^3")?)?;
    for c in [frac(5, 6), int(1), frac(7, 6)] {
        let h = h_polynomial(&f, &c)?;
        let hl = h_polynomial_left(&f, &c)?;
        println!(
            "c = {:>3}: h = {h}, h(c-) = {hl}, h(1) = {}, m(c) = {}",
            format_rational(&c),
            h.at_one(),
            multiplicity(&f, &c)?
        );
        println!("         Σ_j m(c+j) T^j = {}", tail_series(&f, &c)?);
    }
    Ok(())
}
