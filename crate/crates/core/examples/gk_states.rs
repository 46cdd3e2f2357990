//! Gazeau–Klauder states: temporal stability, the action identity with the
//! normal-ordered Hamiltonian, and its failure with ½(AA† + A†A).

use nlcs::analysis::{action_identity, action_identity_with, temporal_stability, HamiltonianChoice};
use nlcs::states::{evolve, gk_state, StateOptions};
use nlcs::RhoFamily;

fn main() -> nlcs::Result<()> {
    let opts = StateOptions::default();
    let bg = RhoFamily::with("bg", &[("kappa", 2.0)])?;
    let state = gk_state(&bg, 0.8, 1.3, &opts)?;
    let later = evolve(&state, 2.7)?;
    println!("{bg}: evolved label {:?}", later.label());
    println!("{}", temporal_stability(&bg, 0.8, 1.3, 2.7, &opts)?);

    let kps_f = RhoFamily::named("kps-f")?;
    for j in [0.1, 0.5, 1.0] {
        let normal = action_identity(&kps_f, j, 0.0, &opts)?;
        let manko = action_identity_with(&kps_f, j, 0.0, &opts, HamiltonianChoice::Manko)?;
        println!("kps-f J = {j}: |<A†A> - J| = {:.2e}, |<(AA†+A†A)/2> - J| = {:.4}", normal.residual, manko.residual);
    }
    Ok(())
}
