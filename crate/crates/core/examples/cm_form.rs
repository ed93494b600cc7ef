//! The Poincaré series rebuilt from multiplicities and the image lengths of
//! the second Taylor differential.

use jumpseries::rational::format_rational;
use jumpseries::tor::{cm_poincare_form, pure_power_reduction};
use jumpseries::{parse_ideal, MultiplierFiltration};

fn main() -> jumpseries::Result<()> {
    for s in ["x^2, y^3", "x^2, x*y^2, y^4", "x^2, y^2, z^2"] {
        let a = parse_ideal(s)?;
        let q = pure_power_reduction(&a)?;
        let f = MultiplierFiltration::new(&a)?;
        let cm = cm_poincare_form(&f, &q)?;
        println!("({s}) over ({q}):");
        for (c, cls) in &cm.classes {
            let alphas: Vec<String> = cls.alphas.iter().map(|x| x.to_string()).collect();
            let p: Vec<String> = cls.correction.iter().map(|x| x.to_string()).collect();
            println!(
                "  c = {:>4}: m = {:?}, α = [{}], p = [{}], series {}",
                format_rational(c),
                cls.leading,
                alphas.join(", "),
                p.join(", "),
                cls.series
            );
        }
    }
    Ok(())
}
