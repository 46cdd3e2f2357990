//! Truncated Fock-space kernels: ladder operators, the matrix exponential and
//! its action on a vector, checked on the canonical displacement operator.

use nlcs::fock::{annihilator, creator, exponential_action, fidelity, matrix_exponential};
use nlcs::FockVector;
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let dim = 40;
    let z = Complex64::new(0.5, -0.25);
    let a = annihilator(dim)?;
    let generator = creator(dim)?.scale(z).sub(&a.scale(z.conj()))?;
    let vacuum = FockVector::basis(dim, 0)?;

    let dense = matrix_exponential(&generator)?.apply(&vacuum)?;
    let action = exponential_action(&generator, &vacuum)?;

    let mut closed = Vec::with_capacity(dim);
    let mut term = Complex64::new((-z.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..dim {
        closed.push(term);
        term = term * z / ((n + 1) as f64).sqrt();
    }
    let closed = FockVector::new(closed)?;

    println!("dim {dim}, z = {z}");
    println!("  ‖dense − closed form‖  = {:.2e}", dense.sub(&closed)?.norm());
    println!("  ‖action − closed form‖ = {:.2e}", action.sub(&closed)?.norm());
    println!("  fidelity(dense, action) = {:.16}", fidelity(&dense, &action)?);
    Ok(())
}
