//! Closed-form Poincaré series, their rendering and expansion against
//! direct enumeration.

use jumpseries::rational::int;
use jumpseries::{parse_ideal, poincare_bruteforce, poincare_closed_form, MultiplierFiltration, PoincareForm};

fn main() -> jumpseries::Result<()> {
    for s in ["x, y", "x^2, y^3", "x^2, x*y, y^3", "x, y, z"] {
        let a = parse_ideal(s)?;
        let f = MultiplierFiltration::new(&a)?;
        let form = poincare_closed_form(&f)?;
        let order = int(6);
        let brute = poincare_bruteforce(&f, &order)?;
        println!("({s})");
        println!("  P(T) = {}", form.render());
        println!("  up to T^6: {}", form.expand(&order));
        println!("  matches enumeration: {}", form.expand(&order) == brute);
        println!("  parses back: {}", PoincareForm::parse(&form.render())? == form);
    }
    Ok(())
}
