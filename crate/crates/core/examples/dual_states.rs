//! Dual states: the dual displacement exp(zA† − z*B)|0⟩ against the dual
//! series, the harmonious states of kps-e, and duals whose series diverge.

use nlcs::fock::fidelity;
use nlcs::states::{cs_dual_displacement, cs_series, StateOptions};
use nlcs::{Error, RhoFamily};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let z = Complex64::new(0.6, 0.3);
    for id in ["kps-c", "bg", "kps-e", "kps-da"] {
        let family = RhoFamily::named(id)?;
        let series = cs_series(&family.dual(), z, &StateOptions::default())?;
        let disp = cs_dual_displacement(&family, z, &StateOptions::fixed(series.dim()))?;
        println!(
            "{:<12} dim {:>3}  fidelity(dual displacement, dual series) = {:.15}",
            series.family().id(),
            series.dim(),
            fidelity(series.vector(), disp.vector())?
        );
    }

    let harmonious = cs_series(&RhoFamily::named("kps-e")?.dual(), z, &StateOptions::default())?;
    let ratio = harmonious.vector().amp(3) / harmonious.vector().amp(2);
    println!("\nkps-e dual: successive amplitude ratio {ratio:.12} equals z");

    let ps = RhoFamily::with("ps", &[("q", 0.8)])?;
    match cs_series(&ps.dual(), z, &StateOptions::default()) {
        Err(Error::Domain(msg)) => println!("\nps dual, automatic dimension: {msg}"),
        other => println!("\nunexpected: {other:?}"),
    }
    let forced = cs_series(&ps.dual(), Complex64::new(0.3, 0.0), &StateOptions::forced(12))?;
    println!("ps dual forced to dim 12: tail estimate {:.3e}", forced.tail_mass());
    Ok(())
}
