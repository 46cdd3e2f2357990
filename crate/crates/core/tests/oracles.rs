//! Family values checked against oracles that avoid the log-gamma route:
//! integer factorials and products of half-integers.

use nlcs::deformation::{build_a, build_b, hamiltonian, manko_hamiltonian};
use nlcs::states::{cs_series, gk_state, StateOptions};
use nlcs::RhoFamily;
use num_complex::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[test]
fn ml_with_integer_alpha_is_a_factorial_ratio() {
    // α = 2, β = 1: ρ(n) = (2n)!
    let ml = RhoFamily::with("ml", &[("alpha", 2.0), ("beta", 1.0)]).unwrap();
    for n in 0..=40 {
        assert!(rel(ml.ln_rho(n).unwrap().exp(), factorial(2 * n)) < 1e-12, "n={n}");
    }
    for n in 1..=40 {
        let k = (2 * n) as f64;
        assert!(rel(ml.e(n).unwrap(), k * (k - 1.0)) < 1e-12);
    }
}

#[test]
fn kps_d_half_integer_alpha_by_products() {
    // Γ(n+3/2)/Γ(3/2) = Π_{k=1}^{n} (k + 1/2)
    let d = RhoFamily::with("kps-d", &[("alpha", 0.5)]).unwrap();
    let mut prod = 1.0;
    for n in 0..=60 {
        if n > 0 {
            prod *= n as f64 + 0.5;
        }
        assert!(rel(d.ln_rho(n).unwrap().exp(), prod / (n as f64 + 1.0)) < 1e-12, "n={n}");
    }
}

#[test]
fn kps_dc_by_half_integer_products() {
    // (π/4)(n!)²/Γ(n+3/2)², Γ(n+3/2) = (√π/2) Π_{k=1}^{n} (k + 1/2)
    let dc = RhoFamily::named("kps-dc").unwrap();
    let mut ratio = 1.0f64;
    for n in 0..=60 {
        if n > 0 {
            ratio *= n as f64 / (n as f64 + 0.5);
        }
        assert!(rel(dc.ln_rho(n).unwrap().exp(), ratio * ratio) < 1e-12, "n={n}");
    }
}

#[test]
fn bg_and_gp_are_mutual_duals() {
    for kappa in [0.5, 1.0, 2.5] {
        let bg = RhoFamily::with("bg", &[("kappa", kappa)]).unwrap();
        let gp = RhoFamily::with("gp", &[("kappa", kappa)]).unwrap();
        for n in 0..=80 {
            let a = gp.ln_rho(n).unwrap();
            let b = bg.dual().ln_rho(n).unwrap();
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "κ={kappa} n={n}");
        }
    }
}

#[test]
fn ps_amplitudes_match_gaussian_q_weights() {
    let q: f64 = 0.7;
    let ps = RhoFamily::with("ps", &[("q", q)]).unwrap();
    let z = Complex64::new(1.3, 0.0);
    let s = cs_series(&ps, z, &StateOptions::fixed(30)).unwrap();
    let raw: Vec<f64> = (0..30)
        .map(|n: usize| q.powf((n * n.saturating_sub(1)) as f64 / 2.0) * 1.3f64.powi(n as i32) / factorial(n).sqrt())
        .collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    for n in 0..30 {
        assert!((s.vector().amp(n).re - raw[n] / norm).abs() < 1e-14);
    }
}

#[test]
fn ladder_and_hamiltonians_from_matrices() {
    let kps_g = RhoFamily::named("kps-g").unwrap();
    let dim = 20;
    let a = build_a(&kps_g, dim).unwrap();
    let h = hamiltonian(&kps_g, dim).unwrap();
    let ata = a.adjoint().compose(&a).unwrap();
    for n in 0..dim {
        let x = n as f64;
        assert!((ata.entry(n, n).re - x * (x + 1.0 / 3.0)).abs() <= 1e-12 * x.max(1.0) * x.max(1.0));
        assert!((h.entry(n, n).re - ata.entry(n, n).re).abs() <= 4.0 * f64::EPSILON * h.entry(n, n).re.max(1.0));
    }
    let m = manko_hamiltonian(&kps_g, dim).unwrap();
    for n in 0..dim - 1 {
        let x = n as f64;
        let expect = 0.5 * (x * (x + 1.0 / 3.0) + (x + 1.0) * (x + 4.0 / 3.0));
        assert!((m.entry(n, n).re - expect).abs() <= 1e-12 * expect.max(1.0));
    }
    let b = build_b(&kps_g, dim).unwrap();
    let bda = b.adjoint().compose(&a).unwrap();
    for n in 0..dim {
        assert!((bda.entry(n, n).re - n as f64).abs() <= 1e-13 * (n as f64).max(1.0));
    }
}

#[test]
fn gk_state_at_zero_angle_is_the_real_label_state() {
    let kps_c = RhoFamily::named("kps-c").unwrap();
    for x in [0.2, 0.9, 1.7] {
        let g = gk_state(&kps_c, x * x, 0.0, &StateOptions::default()).unwrap();
        let s = cs_series(&kps_c, Complex64::new(x, 0.0), &StateOptions::fixed(g.dim())).unwrap();
        assert!(g.vector().sub(s.vector()).unwrap().norm() < 1e-15);
    }
}
