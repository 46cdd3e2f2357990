//! A user-supplied moment table, here ρ(n) = (2n)!/n!, run through the same
//! machinery as the catalogued families.

use nlcs::analysis::suite::{run_suite, Suite, SuiteConfig};
use nlcs::states::{cs_series, StateOptions};
use nlcs::RhoFamily;
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let mut rho = vec![1.0f64];
    for n in 1..60 {
        let prev = rho[n - 1];
        rho.push(prev * (2 * n * (2 * n - 1)) as f64 / n as f64);
    }
    let family = RhoFamily::table(rho)?;
    println!("f(1..5) = {:?}", (1..=5).map(|n| family.f(n)).collect::<nlcs::Result<Vec<_>>>()?);

    let state = cs_series(&family, Complex64::new(1.5, 0.0), &StateOptions::default())?;
    println!("state at z = 1.5 uses dim {} (table holds 60 levels)", state.dim());

    let cfg = SuiteConfig::default();
    for report in run_suite(&family, Suite::Eigen, &cfg)? {
        println!("{report}");
    }
    Ok(())
}
