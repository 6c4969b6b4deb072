//! Command-line front end.
//!
//! Every subcommand prints one machine-readable result to stdout: JSON for
//! single objects, CSV for tables. Exit codes: 0 on success, 1 when the
//! computation itself rejects the inputs (the error is still JSON, on
//! stdout), 2 for usage errors (clap's message goes to stderr). Output for
//! a given argument vector is byte-identical across runs.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{ArgGroup, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::boundstate::{chi, energy_balance, BoundState};
use crate::continuum::{
    coefficient_ratio, orthogonality_defect, ContinuumState, DEFAULT_EPS_LIST,
};
use crate::coupling::{make_params, Regime};
use crate::error::{Error, Result};
use crate::hypercritical::{ladder, zero_table};
use crate::oracle::numerov_bound_state;
use crate::specialfn::{bessel_i, bessel_j, bessel_k, bessel_k_imag, bessel_y, Order};
use crate::verify;
use crate::wellmatch::{fig1_table, fit_curve, gamma_prime_limit};

#[derive(Parser)]
#[command(
    name = "invsq",
    version,
    about = "Spectral toolkit for the attractive inverse-square radial problem"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the coupling: effective strength, order, and regime.
    Regime {
        /// Angular momentum quantum number.
        #[arg(long)]
        ell: u32,
        /// Bare coupling strength of the inverse-square attraction.
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Evaluate a bound-state profile or its closed-form cross-checks.
    #[command(group(ArgGroup::new("output").required(true)))]
    Boundstate {
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        /// Decay constant kappa = sqrt(-E).
        #[arg(long, allow_negative_numbers = true)]
        kappa: f64,
        /// Evaluate the profile at this scaled radius rho = kappa * r.
        #[arg(long, group = "output", allow_negative_numbers = true)]
        rho: Option<f64>,
        /// Print the closed-form normalization/boundary/balance checks.
        #[arg(long, group = "output")]
        checks: bool,
    },
    /// Interior strength that a vanishing square well must carry to keep a
    /// threshold state, as a function of the exterior order.
    #[command(group(ArgGroup::new("input").required(true)))]
    GammaPrime {
        /// Exterior order nu in [0, 1/2].
        #[arg(long, group = "input", allow_negative_numbers = true)]
        nu: Option<f64>,
        /// Coupling strength in (0, 1/4]; converted to the order first.
        #[arg(long, group = "input", allow_negative_numbers = true)]
        gamma: Option<f64>,
    },
    /// Tabulate the strength curve against 1/2 - nu as CSV.
    Fig1 {
        /// Number of rows in the table.
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// Output path, or '-' for stdout.
        #[arg(long)]
        out: String,
    },
    /// Fit the strength curve with a low-degree polynomial.
    Fit {
        /// Polynomial degree, 1 or 2.
        #[arg(long)]
        degree: usize,
        /// Number of grid points the fit samples.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Coefficient ratio that makes a continuum state orthogonal to the
    /// threshold bound state, optionally with the measured residual overlap.
    Continuum {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// Bound-state decay constant.
        #[arg(long, allow_negative_numbers = true)]
        k0: f64,
        /// Continuum wavenumber.
        #[arg(long, allow_negative_numbers = true)]
        k1: f64,
        /// Also measure the regularized overlap of the orthogonalized state.
        #[arg(long)]
        defect: bool,
    },
    /// Geometric tower of strong-coupling levels, or the near-origin zeros
    /// of the profile as CSV (with --zeros).
    Spectrum {
        /// Imaginary order mu = sqrt(gamma_eff - 1/4).
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        /// Magnitude of the reference level n = 0.
        #[arg(long, required_unless_present = "zeros", conflicts_with = "zeros", allow_negative_numbers = true)]
        e0: Option<f64>,
        #[arg(long, required_unless_present = "zeros", conflicts_with = "zeros", allow_negative_numbers = true)]
        n_min: Option<i32>,
        #[arg(long, required_unless_present = "zeros", conflicts_with = "zeros", allow_negative_numbers = true)]
        n_max: Option<i32>,
        /// Tabulate profile zeros against the phase-law prediction.
        #[arg(long)]
        zeros: bool,
        #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
        rho_min: f64,
        #[arg(long, default_value_t = 1e-2, allow_negative_numbers = true)]
        rho_max: f64,
    },
    /// Brute-force reference solvers.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Run the full cross-check suite; exits nonzero if any criterion fails.
    Verify,
    /// Direct access to the special-function evaluators.
    #[command(hide = true)]
    Specialfn {
        #[command(subcommand)]
        which: SpecialfnCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Shoot for the ground state of the finite-well interior matched to
    /// the inverse-square exterior.
    Numerov {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma_prime: f64,
        /// Well radius.
        #[arg(long, allow_negative_numbers = true)]
        r0: f64,
        /// Bracket for x = kappa * r0.
        #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
        x_lo: f64,
        #[arg(long, default_value_t = 5.9, allow_negative_numbers = true)]
        x_hi: f64,
    },
}

#[derive(Subcommand)]
enum SpecialfnCmd {
    /// Evaluate one kernel: name is j, y, i, k, or k-imag.
    Eval {
        #[arg(long)]
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        order: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
}

/// Regime classification as printed by `regime`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeReport {
    pub gamma_eff: f64,
    /// Real order below the critical coupling, imaginary order above it.
    pub nu_or_mu: f64,
    pub regime: Regime,
}

/// Single profile sample as printed by `boundstate --rho`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChiSample {
    pub chi: f64,
}

/// Ratio plus branch label as printed by `continuum`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContinuumReport {
    pub ratio: f64,
    /// "power" away from the critical order, "logarithmic" at it.
    pub branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error_kind: &'a str,
    message: String,
}

/// Parse `argv` and run one subcommand; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };

    if let Cmd::Verify = cli.cmd {
        return run_verify();
    }

    match dispatch(cli.cmd) {
        Ok(stdout) => {
            print!("{stdout}");
            0
        }
        Err(err) => {
            let body = ErrorBody {
                error_kind: err.kind(),
                message: err.to_string(),
            };
            println!("{}", serde_json::to_string(&body).expect("error serializes"));
            1
        }
    }
}

fn run_verify() -> i32 {
    let outcomes = verify::run_all();
    for o in &outcomes {
        println!("{}", o.report_line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed == 0 {
        println!("all {} criteria passed", outcomes.len());
        0
    } else {
        println!("{failed} of {} criteria failed", outcomes.len());
        1
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    match serde_json::to_string(value) {
        Ok(s) => Ok(s + "\n"),
        Err(e) => Err(Error::Domain(format!("serialization failed: {e}"))),
    }
}

fn dispatch(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Regime { ell, gamma } => {
            let params = make_params(ell, gamma)?;
            json_line(&RegimeReport {
                gamma_eff: params.gamma_eff,
                nu_or_mu: params.order.value(),
                regime: params.regime,
            })
        }
        Cmd::Boundstate {
            ell,
            gamma,
            kappa,
            rho,
            checks,
        } => {
            let params = make_params(ell, gamma)?;
            let state = BoundState::new(params, kappa)?;
            if let Some(rho) = rho {
                json_line(&ChiSample {
                    chi: chi(&state, rho)?,
                })
            } else {
                debug_assert!(checks);
                json_line(&energy_balance(state.nu(), kappa)?)
            }
        }
        Cmd::GammaPrime { nu, gamma } => {
            let nu = match (nu, gamma) {
                (Some(nu), None) => nu,
                (None, Some(gamma)) => {
                    if !(gamma > 0.0 && gamma <= 0.25) {
                        return Err(Error::Domain(format!(
                            "gamma-prime: gamma must lie in (0, 1/4], got {gamma}"
                        )));
                    }
                    (0.25 - gamma).sqrt()
                }
                _ => unreachable!("clap group enforces exactly one input"),
            };
            json_line(&gamma_prime_limit(nu)?)
        }
        Cmd::Fig1 { points, out } => {
            let rows = fig1_table(points)?;
            let mut csv = String::from("half_minus_nu,gamma,gamma_prime,gamma_prime_linear_fit\n");
            for row in rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    g10(row.half_minus_nu),
                    g10(row.gamma),
                    g10(row.gamma_prime),
                    g10(row.gamma_prime_linear_fit)
                );
            }
            if out == "-" {
                Ok(csv)
            } else {
                std::fs::write(&out, csv)
                    .map_err(|e| Error::Domain(format!("cannot write {out}: {e}")))?;
                Ok(String::new())
            }
        }
        Cmd::Fit { degree, grid } => json_line(&fit_curve(degree, grid)?),
        Cmd::Continuum {
            nu,
            k0,
            k1,
            defect,
        } => {
            let ratio = coefficient_ratio(nu, k0, k1)?;
            let branch = if nu == 0.0 { "logarithmic" } else { "power" };
            let measured = if defect {
                let state = ContinuumState::orthogonalized(nu, k0, k1)?;
                Some(orthogonality_defect(nu, k0, &state, &DEFAULT_EPS_LIST)?)
            } else {
                None
            };
            json_line(&ContinuumReport {
                ratio,
                branch: branch.to_string(),
                defect: measured,
            })
        }
        Cmd::Spectrum {
            mu,
            e0,
            n_min,
            n_max,
            zeros,
            rho_min,
            rho_max,
        } => {
            if zeros {
                let rows = zero_table(mu, rho_min, rho_max)?;
                let mut csv = String::from("index,rho_predicted,rho_computed,relative_gap\n");
                for row in rows {
                    let _ = writeln!(
                        csv,
                        "{},{},{},{}",
                        row.index,
                        g10(row.rho_predicted),
                        g10(row.rho_computed),
                        g10(row.relative_gap)
                    );
                }
                Ok(csv)
            } else {
                let (e0, n_min, n_max) = (
                    e0.expect("clap requires e0"),
                    n_min.expect("clap requires n_min"),
                    n_max.expect("clap requires n_max"),
                );
                json_line(&ladder(mu, e0, n_min, n_max)?)
            }
        }
        Cmd::Oracle {
            which:
                OracleCmd::Numerov {
                    gamma,
                    gamma_prime,
                    r0,
                    x_lo,
                    x_hi,
                },
        } => json_line(&numerov_bound_state(gamma, gamma_prime, r0, x_lo, x_hi)?),
        Cmd::Verify => unreachable!("verify is handled before dispatch"),
        Cmd::Specialfn {
            which: SpecialfnCmd::Eval { name, order, x },
        } => {
            let result = match name.as_str() {
                "j" => bessel_j(Order::real(order)?, x)?,
                "y" => bessel_y(Order::real(order)?, x)?,
                "i" => bessel_i(Order::real(order)?, x)?,
                "k" => bessel_k(Order::real(order)?, x)?,
                "k-imag" => bessel_k_imag(Order::imaginary(order)?, x)?,
                other => {
                    return Err(Error::Domain(format!(
                        "specialfn eval: unknown kernel name {other:?}, \
                         expected j, y, i, k, or k-imag"
                    )))
                }
            };
            json_line(&result)
        }
    }
}

/// Shortest decimal with 10 significant digits, matching C's %.10g.
fn g10(x: f64) -> String {
    if x == 0.0 {
        return String::from("0");
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific form has e");
    let e: i32 = exp.parse().expect("exponent parses");
    if e < -4 || e >= 10 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{}{:02}", if e < 0 { "-" } else { "+" }, e.abs())
    } else {
        let decimals = (9 - e).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}
