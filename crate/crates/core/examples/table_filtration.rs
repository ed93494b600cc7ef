//! A filtration given by a table up to its Skoda bound, extended by
//! multiplication with the base ideal.

use jumpseries::rational::{format_rational, frac, int};
use jumpseries::{
    jumping_numbers, make_table_filtration, parse_ideal, poincare_bruteforce, poincare_closed_form, MonomialIdeal,
};

fn main() -> jumpseries::Result<()> {
    let m = MonomialIdeal::maximal(2);
    let f = make_table_filtration(
        m.clone(),
        vec![(frac(1, 2), m.clone()), (int(1), parse_ideal("x, y^2")?), (frac(3, 2), parse_ideal("x^2, x*y, y^3")?)],
        int(2),
    )?;
    for j in jumping_numbers(&f, &int(4))?.jumps {
        println!("{:>4}  mult {}  ideal {}", format_rational(&j.c), j.multiplicity, j.ideal);
    }
    let form = poincare_closed_form(&f)?;
    println!("P(T) = {}", form.render());
    println!("matches enumeration to T^8: {}", form.expand(&int(8)) == poincare_bruteforce(&f, &int(8))?);
    match make_table_filtration(m.clone(), vec![(int(1), parse_ideal("x^3, y^3")?)], int(1)) {
        Ok(_) => println!("unexpected: accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
