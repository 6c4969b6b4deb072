//! Cross-check the analytic finite-well matching against direct Numerov
//! shooting, and show that the dimensionless eigenvalue does not depend
//! on the well radius.
//!
//! Run with: cargo run --example numerov_crosscheck

use invsq::oracle::numerov_bound_state;
use invsq::wellmatch::{finite_r0_match, gamma_prime_limit};

fn main() -> invsq::Result<()> {
    println!("analytic matching vs shooting, x = sqrt(-E) * r0:");
    println!(
        "{:>6} {:>8} {:>14} {:>14} {:>10}",
        "nu", "excess", "matching", "numerov", "rel gap"
    );
    for nu in [0.1, 0.25, 0.4] {
        let gamma = 0.25 - nu * nu;
        let limit = gamma_prime_limit(nu)?.gamma_prime;
        for delta in [0.2, 0.05] {
            let x = finite_r0_match(gamma, limit + delta, 1e-12)?;
            let shot = numerov_bound_state(gamma, limit + delta, 1.0, 0.5 * x, 2.0 * x)?;
            let gap = ((shot.kappa - x) / x).abs();
            println!("{nu:>6} {delta:>8} {x:>14.8e} {:>14.8e} {gap:>10.1e}", shot.kappa);
        }
    }

    println!("\nsame strength, three well radii: kappa scales, x does not");
    let nu = 0.25;
    let limit = gamma_prime_limit(nu)?.gamma_prime;
    let x_ref = finite_r0_match(0.25 - nu * nu, limit + 0.05, 1e-12)?;
    println!("{:>6} {:>14} {:>14}", "r0", "kappa", "kappa * r0");
    for r0 in [0.5, 1.0, 2.0] {
        let shot =
            numerov_bound_state(0.25 - nu * nu, limit + 0.05, r0, 0.5 * x_ref, 2.0 * x_ref)?;
        println!("{r0:>6} {:>14.8e} {:>14.8e}", shot.kappa, shot.kappa * r0);
    }
    Ok(())
}
