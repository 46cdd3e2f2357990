//! Builds the same coherent state by the series, the generalized displacement
//! and the T operator, and compares them by fidelity.
//!
//! ```text
//! cargo run --example three_routes -- bg 0.8 0.3
//! ```

use nlcs::fock::fidelity;
use nlcs::states::{cs_displacement, cs_series, t_apply, Direction, StateOptions};
use nlcs::RhoFamily;
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map(String::as_str).unwrap_or("kps-g");
    let re: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.9);
    let im: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.2);
    let family = RhoFamily::named(id)?;
    let z = Complex64::new(re, im);

    let series = cs_series(&family, z, &StateOptions::default())?;
    let fixed = StateOptions::fixed(series.dim());
    let displaced = cs_displacement(&family, z, &fixed)?;
    let canonical = cs_series(&RhoFamily::named("canonical")?, z, &StateOptions::forced(series.dim()))?;
    let via_t = t_apply(&family, Direction::Forward, &canonical)?;

    println!("{family} at z = {z}, dim {}, tail {:.1e}", series.dim(), series.tail_mass());
    println!("  fidelity(series, displacement) = {:.16}", fidelity(series.vector(), displaced.vector())?);
    println!("  fidelity(series, T route)      = {:.16}", fidelity(series.vector(), via_t.vector())?);
    println!("  first amplitudes:");
    for n in 0..6 {
        let (a, b, c) = (series.vector().amp(n), displaced.vector().amp(n), via_t.vector().amp(n));
        println!("    {n}: {a:.8}  {b:.8}  {c:.8}");
    }
    Ok(())
}
