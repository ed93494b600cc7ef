//! Every verification suite on one ideal.

use jumpseries::parse_ideal;
use jumpseries::verify::{run_suite, Suite, SuiteParams};

fn main() -> jumpseries::Result<()> {
    let mut params = SuiteParams::new(parse_ideal("x^2, y^2")?);
    params.characteristic = Some(3);
    for suite in Suite::ALL {
        let mut p = params.clone();
        if matches!(suite, Suite::Skoda | Suite::Rationality | Suite::CmForm | Suite::Excess) {
            p.characteristic = None;
        }
        let report = run_suite(suite, &p)?;
        println!("{}", report.to_string().lines().last().unwrap());
    }
    Ok(())
}
