//! Evaluate the univariate basis families and print their energy tables
//! next to the quadrature reference.
//!
//! cargo run --example basis_tables

use trispline::basis::{BasisFamily, FamilyTag, UnivariateBasis};
use trispline::tables::{phi_closed, tau_closed, verify_tables, EnergyWeights, PhiTable};

fn main() -> trispline::Result<()> {
    for tag in FamilyTag::ALL {
        let fam = BasisFamily::with_default_beta(tag);
        let basis = UnivariateBasis::new(fam)?;
        let mid = basis.funcs(0.5 * fam.beta);
        println!("{fam}: basis at beta/2 = {mid:.6?}");
        let phi = phi_closed(fam, 2)?;
        println!(
            "  phi^2 row 1 = {:.6?}",
            [0, 1, 2, 3].map(|l| phi.get(1, l))
        );
        match tau_closed(fam, 1) {
            Ok(t) => println!("  tau^(0,1)_111 = {:.6}", t.get(0, (1, 1))),
            Err(e) => println!("  {e}"),
        }
    }

    let theta = EnergyWeights::new(vec![1.0, 1.0])?;
    let phi = PhiTable::closed_combined(BasisFamily::cubic(), &theta)?;
    println!(
        "cubic, theta = (1, 1): phi_11 = {}, phi_12 = {}",
        phi.get(1, 1),
        phi.get(1, 2)
    );

    let lines = verify_tables(
        BasisFamily::trigonometric(std::f64::consts::FRAC_PI_2)?,
        1e-12,
    )?;
    let worst = lines.iter().map(|l| l.diff).fold(0.0, f64::max);
    println!(
        "trig beta = pi/2: {} entries, largest closed/quadrature difference {worst:.2e}",
        lines.len()
    );
    Ok(())
}
