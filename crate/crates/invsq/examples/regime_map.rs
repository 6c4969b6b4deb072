//! Sweep the coupling at several angular momenta and print how the
//! effective strength, the exterior order, and the regime change.
//!
//! Run with: cargo run --example regime_map

use invsq::coupling::{bound_state_allowed, flux_limit, make_params, FluxLimit};

fn main() {
    println!("{:>3} {:>8} {:>10} {:>12} {:>15} {:>7}", "ell", "gamma", "gamma_eff", "order", "regime", "bound?");
    for ell in 0u32..=2 {
        let lower = f64::from(ell * (ell + 1));
        let upper = (f64::from(ell) + 0.5).powi(2);
        // Probe below, inside, at the top edge of, and above the window.
        let probes = [
            0.5 * (lower + upper).max(0.02),
            upper,
            upper + 0.1,
            lower + 2.0,
        ];
        for gamma in probes {
            let p = make_params(ell, gamma).expect("positive coupling");
            println!(
                "{:>3} {:>8.4} {:>10.4} {:>12.6} {:>15} {:>7}",
                ell,
                gamma,
                p.gamma_eff,
                p.order.value(),
                format!("{:?}", p.regime),
                if bound_state_allowed(&p) { "yes" } else { "no" },
            );
        }
        println!();
    }

    println!("probability flux carried to the origin, by exterior order:");
    for nu in [0.1, 0.3, 0.49, 0.5, 0.7] {
        let flux = match flux_limit(nu) {
            FluxLimit::Zero => "zero".to_string(),
            FluxLimit::Finite(f) => format!("finite ({f:.4})"),
            FluxLimit::Divergent => "divergent".to_string(),
        };
        println!("  nu = {nu:<5} -> {flux}");
    }
}
