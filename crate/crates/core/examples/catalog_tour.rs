//! Walks the family catalog and classifies each family by its convergence
//! region.
//!
//! ```text
//! cargo run --example catalog_tour
//! ```

use nlcs::deformation::{catalog, radius_of_convergence, Radius};
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    println!("{:<10} {:<7} {:<28} {:<22} H", "id", "region", "rho(n)", "f(n)");
    for entry in catalog() {
        println!("{:<10} {:<7?} {:<28} {:<22} {}", entry.id, entry.region, entry.rho, entry.f, entry.h);
    }

    println!("\nnumerical radius estimates (lim e_n), default parameters:");
    for entry in catalog() {
        let family = RhoFamily::named(entry.id)?;
        for f in [family.clone(), family.dual()] {
            let label = match radius_of_convergence(&f)? {
                Radius::Infinite => "whole plane".to_string(),
                Radius::Finite(0.0) => "series diverges for z != 0".to_string(),
                Radius::Finite(r) => format!("|z|^2 < {r:.6}"),
                Radius::Indeterminate => "indeterminate".to_string(),
            };
            println!("  {:<16} {label}", f.id());
        }
    }
    Ok(())
}
