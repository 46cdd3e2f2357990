//! Algebraic identities: the h4 relations for several families and the su(1,1)
//! ladder of the Barut–Girardello / Gilmore–Perelomov pair.

use nlcs::analysis::{h4_check, su11_check};
use nlcs::deformation::{build_a, build_a_dag};
use nlcs::fock::commutator;
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    for family in [
        RhoFamily::named("canonical")?,
        RhoFamily::with("bg", &[("kappa", 2.0)])?,
        RhoFamily::with("ll-action", &[("alpha", 0.5), ("m", 1.0)])?,
        RhoFamily::with("ps", &[("q", 0.7)])?,
    ] {
        println!("{}", h4_check(&family, 50)?);
    }
    println!("{}", su11_check(1.5, 50)?);

    let bg = RhoFamily::with("bg", &[("kappa", 1.5)])?;
    let c = commutator(&build_a(&bg, 8)?, &build_a_dag(&bg, 8)?)?;
    let diag: Vec<f64> = (0..6).map(|n| c.entry(n, n).re).collect();
    println!("[A, A†] diagonal for kappa = 3/2: {diag:?}  (2(n + kappa))");
    Ok(())
}
