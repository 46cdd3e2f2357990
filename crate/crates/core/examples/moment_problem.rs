//! Resolution of identity through the moment condition ∫ xⁿ W(x) dx = ρ(n),
//! with built-in weights and a user-supplied one.

use nlcs::analysis::{moment_check, moment_check_builtin, DecayClass, WeightSpec};
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    for id in ["canonical", "kps-da", "kps-db", "kps-e"] {
        println!("{}", moment_check_builtin(&RhoFamily::named(id)?, 15, 1e-8)?);
    }

    // ρ(n) = (n+1)! has the weight x·e^{−x}
    let kps_a = RhoFamily::with("kps-a", &[("p", 1.0)])?;
    let weight = WeightSpec::new("x exp(-x)", f64::INFINITY, DecayClass::Exponential, |x| x * (-x).exp())?;
    println!("{}", moment_check(&kps_a, &weight, 15, 1e-8)?);

    let wrong = WeightSpec::new("exp(-x)", f64::INFINITY, DecayClass::Exponential, |x| (-x).exp())?;
    println!("{}", moment_check(&kps_a, &wrong, 5, 1e-8)?);
    Ok(())
}
