//! Runs a named verification suite for one family and prints one line per
//! check.
//!
//! ```text
//! cargo run --example verify_family -- gp routes
//! ```

use nlcs::analysis::suite::{run_suite, Suite, SuiteConfig};
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family = RhoFamily::named(args.first().map(String::as_str).unwrap_or("bg"))?;
    let suite: Suite = args.get(1).map(String::as_str).unwrap_or("all").parse()?;
    let reports = run_suite(&family, suite, &SuiteConfig::default())?;
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.acceptable()).count();
    println!("{} checks, {failed} failed", reports.len());
    Ok(())
}
