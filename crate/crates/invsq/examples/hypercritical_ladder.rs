//! Above the critical coupling: the geometric tower of levels, the
//! log-periodic zeros of the profile, and the phase relation that keeps
//! the tower mutually orthogonal.
//!
//! Run with: cargo run --example hypercritical_ladder

use invsq::coupling::make_params;
use invsq::hypercritical::{chi_hyper, ladder, orthogonality_phase_check, zero_table};

fn main() -> invsq::Result<()> {
    let params = make_params(0, 0.35)?;
    let mu = params.order.value();
    println!(
        "gamma = 0.35 is hypercritical: imaginary order mu = {mu:.6}, regime {:?}",
        params.regime
    );

    let tower = ladder(mu, 1.0, -2, 2)?;
    println!("\nlevel tower anchored at |E_0| = 1 (each rung e^(2 pi / mu) deeper):");
    for (offset, energy) in tower.energies.iter().enumerate() {
        let n = tower.n_min + offset as i32;
        println!("  n = {n:>2}: E = {energy:+.6e}");
    }

    println!("\nnear-origin zeros of the profile vs the phase-law prediction (mu = 1):");
    println!("{:>5} {:>15} {:>15} {:>12}", "m", "predicted", "computed", "rel gap");
    for row in zero_table(1.0, 1e-6, 5e-2)? {
        println!(
            "{:>5} {:>15.8e} {:>15.8e} {:>12.2e}",
            row.index, row.rho_predicted, row.rho_computed, row.relative_gap
        );
    }

    println!("\nprofile samples showing the log-periodic sign changes (mu = 1):");
    for rho in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
        println!("  chi({rho:.0e}) = {:+.6e}", chi_hyper(1.0, rho)?);
    }

    println!("\nphase defect between rungs (zero means orthogonal):");
    for (n, m) in [(0, 1), (-3, 4), (2, -2)] {
        let defect = orthogonality_phase_check(mu, n, m)?;
        println!("  levels ({n:>2}, {m:>2}): {defect:.2e}");
    }
    Ok(())
}
