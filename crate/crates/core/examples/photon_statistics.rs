//! Mandel Q along a radial sweep: Poissonian canonical states against the
//! sub-Poissonian kps-e family.

use nlcs::cli::sweep_rows;
use nlcs::states::StateOptions;
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    for id in ["canonical", "kps-e", "kps-c"] {
        let family = RhoFamily::named(id)?;
        println!("{id}");
        println!("  {:>6} {:>12} {:>10} {:>14}", "|z|", "Q", "<n>", "N(|z|^2)");
        for row in sweep_rows(&family, 2.0, 8, &StateOptions::default())? {
            println!("  {:>6.3} {:>12.6} {:>10.5} {:>14.6}", row.abs_z, row.mandel_q, row.mean_n, row.normalization);
        }
    }
    Ok(())
}
