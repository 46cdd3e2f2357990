//! Tabulates ρ(n), f(n), e(n) and the dual nonlinearity for a few families.

use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    let families = [
        RhoFamily::named("kps-e")?,
        RhoFamily::with("bg", &[("kappa", 1.5)])?,
        RhoFamily::with("ps", &[("q", 0.8)])?,
        RhoFamily::named("kps-dc")?,
    ];
    for family in &families {
        let dual = family.dual();
        println!("{family}");
        println!("  {:>3} {:>14} {:>12} {:>12} {:>12}", "n", "ln rho", "f", "e", "f_dual");
        for n in 1..=8 {
            println!(
                "  {n:>3} {:>14.6} {:>12.6} {:>12.6} {:>12.6}",
                family.ln_rho(n)?,
                family.f(n)?,
                family.e(n)?,
                dual.f(n)?
            );
        }
    }

    // e_n never needs ρ itself: at n = 10⁴ the moment is far beyond f64 range
    let kps_f = RhoFamily::named("kps-f")?;
    println!("\nkps-f: ln rho(10000) = {:.3}, e(10000) = {:e}", kps_f.ln_rho(10_000)?, kps_f.e(10_000)?);
    Ok(())
}
