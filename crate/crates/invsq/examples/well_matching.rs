//! The square-well regularization: interior strength needed to hold a
//! threshold state as the well shrinks, its polynomial fits, and the
//! finite-radius eigenvalue sinking toward threshold.
//!
//! Run with: cargo run --example well_matching

use invsq::wellmatch::{finite_r0_match, fit_curve, gamma_prime_limit};

fn main() -> invsq::Result<()> {
    println!("zero-size-well limit of the interior strength:");
    println!("{:>6} {:>14} {:>10}", "nu", "gamma_prime", "iters");
    for nu in [0.0, 0.125, 0.25, 0.375, 0.5] {
        let r = gamma_prime_limit(nu)?;
        println!("{:>6} {:>14.8} {:>10}", nu, r.gamma_prime, r.iterations);
    }

    for degree in [1, 2] {
        let fit = fit_curve(degree, 101)?;
        println!(
            "\ndegree-{degree} fit in (1/2 - nu): coefficients {:?}, max deviation {:.3e}",
            fit.coefficients, fit.max_abs_deviation
        );
    }

    println!("\neigenvalue x = kappa * r0 as the excess strength shrinks (nu = 0.25):");
    let limit = gamma_prime_limit(0.25)?.gamma_prime;
    println!("{:>9} {:>14}", "excess", "x");
    let mut delta = 0.4;
    while delta > 0.01 {
        let x = finite_r0_match(0.25 - 0.0625, limit + delta, 1e-12)?;
        println!("{delta:>9.4} {x:>14.8e}");
        delta *= 0.5;
    }
    println!("the bound level exists only above the limit and detaches continuously");
    Ok(())
}
