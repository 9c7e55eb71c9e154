//! Command-line front door: single checks, witness transfers, fuzz
//! campaigns and the built-in worked example, all emitting one JSON
//! report on stdout. Diagnostics go to stderr only.
//!
//! Exit codes are a stable contract:
//!   0  verified
//!   1  input or parse error
//!   2  property false (e.g. the matrix is not gnsD)
//!   3  internal contradiction (a theorem-guaranteed check failed,
//!      which signals an implementation bug, never bad input)

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gnsd_core::constrained::{
    directed_quad_transfer, power_gsd_equiv, quad_transfer, triple_transfer, worked_example,
};
use gnsd_core::drazin::{drazin_index, drazin_inverse, spectral_idempotent};
use gnsd_core::format::{
    certificate_to_value, matrix_from_json_str, matrix_to_value, refutation_to_value,
    witness_to_value, worked_example_to_value,
};
use gnsd_core::gnsd::{gnsd_check, gnsd_check_poly, gnsd_check_spectral};
use gnsd_core::instances::random_int_matrix;
use gnsd_core::instances::{
    gen_constrained_triple, gen_directed_quad, gen_equiv_quad, gen_matrix, gen_transfer_pair,
    GenConfig, GenError, SplitMix64, Structure,
};
use gnsd_core::jacobson::{block_embed, power_transfer, transfer_witness, TransferError};
use gnsd_core::RatMatrix;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_FALSE: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gnsd",
    version,
    about = "Exact Drazin / gnsD checks and witness transfers over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Drazin inverse, index and spectral idempotent of a matrix file.
    Drazin {
        /// Matrix in the shared JSON format.
        file: PathBuf,
    },
    /// Decide generalized n-strongly Drazin invertibility three ways.
    Gnsd {
        /// Matrix in the shared JSON format.
        file: PathBuf,
        /// The power n of the defining condition.
        #[arg(long)]
        n: usize,
    },
    /// Build and verify the witness-transfer certificate for (a, b).
    Transfer {
        /// Left factor a.
        file_a: PathBuf,
        /// Right factor b.
        file_b: PathBuf,
        /// The power n of the defining condition.
        #[arg(long)]
        n: usize,
    },
    /// Run generated instances against a verifier and summarize.
    Fuzz {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        /// Base seed; per-trial seeds are derived from it.
        #[arg(long, env = "DRAZIN_SEED", default_value_t = 0)]
        seed: u64,
        /// Bound on numerators/denominators of generated entries.
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        #[arg(long, value_enum)]
        target: FuzzTarget,
    },
    /// Re-check the built-in worked example and report every claim.
    PaperExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzTarget {
    /// Witness transfer certificates on generated gnsD pairs.
    Thm23,
    /// Telescoping power transfer on generated gnsD pairs.
    Cor24,
    /// Rectangular block embedding on random pairs.
    Cor25,
    /// Equivalence transfer on constrained quadruples.
    Thm32,
    /// Equivalence transfer on constrained triples.
    Cor33,
    /// Directed transfer on constrained quadruples.
    Thm34,
    /// Agreement of gnsD(A, n) with gsD(A^n) on mixed matrices.
    Lemma31,
    /// Tri-oracle agreement on mixed matrices.
    Oracles,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::from(EXIT_OK);
            }
            eprintln!("{err}");
            return ExitCode::from(EXIT_INPUT);
        }
    };

    let (report, code) = match cli.command {
        Command::Drazin { file } => cmd_drazin(&file),
        Command::Gnsd { file, n } => cmd_gnsd(&file, n),
        Command::Transfer { file_a, file_b, n } => cmd_transfer(&file_a, &file_b, n),
        Command::Fuzz {
            dim,
            n,
            trials,
            seed,
            entry_bound,
            target,
        } => cmd_fuzz(dim, n, trials, seed, entry_bound, target),
        Command::PaperExample => cmd_paper_example(),
    };

    if let Some(report) = report {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        );
    }
    ExitCode::from(code)
}

fn load_square_matrix(path: &Path) -> Result<RatMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let matrix = matrix_from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if !matrix.is_square() || matrix.rows() == 0 {
        return Err(format!(
            "{}: expected a nonempty square matrix, got {}x{}",
            path.display(),
            matrix.rows(),
            matrix.cols()
        ));
    }
    Ok(matrix)
}

fn input_error(message: &str) -> (Option<Value>, u8) {
    eprintln!("error: {message}");
    (None, EXIT_INPUT)
}

fn cmd_drazin(file: &Path) -> (Option<Value>, u8) {
    let input = match load_square_matrix(file) {
        Ok(m) => m,
        Err(e) => return input_error(&e),
    };
    let index = drazin_index(&input);
    let inverse = drazin_inverse(&input);
    let idempotent = spectral_idempotent(&input);

    let product = &(&inverse * &input) * &inverse;
    let axioms = json!({
        "inverse_product": product == inverse,
        "commutation": &input * &inverse == &inverse * &input,
        "power_identity": &input.pow(index + 1) * &inverse == input.pow(index),
        "defect_nilpotent": (&input - &(&(&input * &input) * &inverse)).is_nilpotent(),
    });
    let all = axioms
        .as_object()
        .expect("axioms object")
        .values()
        .all(|v| v == &Value::Bool(true));

    let report = json!({
        "kind": "drazin",
        "input": matrix_to_value(&input),
        "index": index,
        "drazin_inverse": matrix_to_value(&inverse),
        "spectral_idempotent": matrix_to_value(&idempotent),
        "axioms": axioms,
        "all_axioms": all,
    });
    // The axioms are theorems of the construction; any failure is a bug.
    let code = if all { EXIT_OK } else { EXIT_CONTRADICTION };
    (Some(report), code)
}

fn cmd_gnsd(file: &Path, n: usize) -> (Option<Value>, u8) {
    if n < 1 {
        return input_error("n must be at least 1");
    }
    let input = match load_square_matrix(file) {
        Ok(m) => m,
        Err(e) => return input_error(&e),
    };
    let witness_result = gnsd_check(&input, n);
    let by_witness = witness_result.is_ok();
    let by_spectral = gnsd_check_spectral(&input, n);
    let by_poly = gnsd_check_poly(&input, n);
    let agree = by_witness == by_spectral && by_spectral == by_poly;

    let report = json!({
        "kind": "gnsd_check",
        "input": matrix_to_value(&input),
        "n": n,
        "checkers": {
            "witness": by_witness,
            "spectral": by_spectral,
            "poly": by_poly,
        },
        "checkers_agree": agree,
        "gnsd": by_witness,
        "witness": witness_result.as_ref().map(witness_to_value).ok(),
        "refutation": witness_result.as_ref().err().map(refutation_to_value),
    });
    let code = if !agree {
        eprintln!("error: checker disagreement (implementation bug)");
        EXIT_CONTRADICTION
    } else if by_witness {
        EXIT_OK
    } else {
        EXIT_FALSE
    };
    (Some(report), code)
}

fn cmd_transfer(file_a: &Path, file_b: &Path, n: usize) -> (Option<Value>, u8) {
    if n < 1 {
        return input_error("n must be at least 1");
    }
    let a = match load_square_matrix(file_a) {
        Ok(m) => m,
        Err(e) => return input_error(&e),
    };
    let b = match load_square_matrix(file_b) {
        Ok(m) => m,
        Err(e) => return input_error(&e),
    };
    if a.dim() != b.dim() {
        return input_error(&format!(
            "matrices must have equal dimension, got {} and {}",
            a.dim(),
            b.dim()
        ));
    }
    match transfer_witness(&a, &b, n) {
        Ok(certificate) => (Some(certificate_to_value(&certificate)), EXIT_OK),
        Err(TransferError::NotGnsd(refutation)) => {
            eprintln!("I - ab is not gnsD for n = {n}");
            let report = json!({
                "kind": "transfer_refused",
                "n": n,
                "a": matrix_to_value(&a),
                "b": matrix_to_value(&b),
                "refutation": refutation_to_value(&refutation),
            });
            (Some(report), EXIT_FALSE)
        }
        Err(TransferError::Contradiction(certificate)) => {
            eprintln!("a theorem-guaranteed verdict failed (implementation bug)");
            (Some(certificate_to_value(&certificate)), EXIT_CONTRADICTION)
        }
        Err(TransferError::Shape(e)) => input_error(&e.to_string()),
    }
}

fn cmd_paper_example() -> (Option<Value>, u8) {
    let report = worked_example();
    let code = if report.all_pass() {
        EXIT_OK
    } else {
        eprintln!("worked-example regression failed");
        EXIT_CONTRADICTION
    };
    (Some(worked_example_to_value(&report)), code)
}

/// Outcome of one fuzz trial.
enum Trial {
    Pass,
    Fail,
    Exhausted,
}

fn cmd_fuzz(
    dim: usize,
    n: usize,
    trials: usize,
    seed: u64,
    entry_bound: i64,
    target: FuzzTarget,
) -> (Option<Value>, u8) {
    if dim < 1 || n < 1 || trials < 1 || entry_bound < 1 {
        return input_error("dim, n, trials and entry-bound must all be at least 1");
    }
    let needs_dim_two = matches!(
        target,
        FuzzTarget::Cor25 | FuzzTarget::Thm32 | FuzzTarget::Cor33 | FuzzTarget::Thm34
    );
    if needs_dim_two && dim < 2 {
        return input_error("this target needs --dim at least 2");
    }

    let mut passes = 0usize;
    let mut failures = 0usize;
    let mut exhausted = 0usize;
    let mut first_failing_seed: Option<u64> = None;
    let mut converse_held = 0usize;
    let mut converse_failed = 0usize;

    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial as u64);
        let cfg = GenConfig::new(trial_seed, dim, n).with_bound(entry_bound);
        let outcome = match target {
            FuzzTarget::Thm23 => {
                let (a, b) = gen_transfer_pair(&cfg);
                match transfer_witness(&a, &b, n) {
                    Ok(_) => Trial::Pass,
                    Err(_) => Trial::Fail,
                }
            }
            FuzzTarget::Cor24 => {
                let (a, b) = gen_transfer_pair(&cfg);
                let m = 1 + trial % 3;
                match power_transfer(&a, &b, m, n) {
                    Ok(report) if report.holds() => Trial::Pass,
                    _ => Trial::Fail,
                }
            }
            FuzzTarget::Cor25 => {
                let k = 1 + trial % (dim - 1);
                let l = dim - k;
                let mut rng = SplitMix64::new(trial_seed);
                let a = random_int_matrix(&mut rng, k, l, entry_bound);
                let b = random_int_matrix(&mut rng, l, k, entry_bound);
                match block_embed(&a, &b, n) {
                    Ok(report) if report.holds() => Trial::Pass,
                    _ => Trial::Fail,
                }
            }
            FuzzTarget::Thm32 => match gen_equiv_quad(&cfg) {
                Err(GenError::Exhausted { .. }) => Trial::Exhausted,
                Ok((a, b, c, d)) => match quad_transfer(&a, &b, &c, &d, n) {
                    Ok(report) if report.holds() => Trial::Pass,
                    _ => Trial::Fail,
                },
            },
            FuzzTarget::Cor33 => {
                let (a, b, c) = gen_constrained_triple(&cfg);
                match triple_transfer(&a, &b, &c, n) {
                    Ok(report) if report.holds() => Trial::Pass,
                    _ => Trial::Fail,
                }
            }
            FuzzTarget::Thm34 => match gen_directed_quad(&cfg) {
                Err(GenError::Exhausted { .. }) => Trial::Exhausted,
                Ok((a, b, c, d)) => match directed_quad_transfer(&a, &b, &c, &d, n) {
                    Ok(report) => {
                        if report.converse_observed() {
                            converse_held += 1;
                        } else {
                            converse_failed += 1;
                        }
                        if report.holds() {
                            Trial::Pass
                        } else {
                            Trial::Fail
                        }
                    }
                    Err(_) => Trial::Fail,
                },
            },
            FuzzTarget::Lemma31 => {
                let m = gen_matrix(&cfg.with_structure(mixed_structure(trial)));
                if power_gsd_equiv(&m, n) {
                    Trial::Pass
                } else {
                    Trial::Fail
                }
            }
            FuzzTarget::Oracles => {
                let m = gen_matrix(&cfg.with_structure(mixed_structure(trial)));
                let by_witness = gnsd_check(&m, n).is_ok();
                if by_witness == gnsd_check_spectral(&m, n) && by_witness == gnsd_check_poly(&m, n)
                {
                    Trial::Pass
                } else {
                    Trial::Fail
                }
            }
        };
        match outcome {
            Trial::Pass => passes += 1,
            Trial::Exhausted => exhausted += 1,
            Trial::Fail => {
                failures += 1;
                first_failing_seed = Some(match first_failing_seed {
                    None => trial_seed,
                    Some(existing) => existing.min(trial_seed),
                });
            }
        }
    }

    let mut summary = Map::new();
    summary.insert("kind".into(), json!("fuzz_summary"));
    summary.insert("target".into(), json!(target_name(target)));
    summary.insert("dim".into(), json!(dim));
    summary.insert("n".into(), json!(n));
    summary.insert("trials".into(), json!(trials));
    summary.insert("seed".into(), json!(seed));
    summary.insert("entry_bound".into(), json!(entry_bound));
    summary.insert("passes".into(), json!(passes));
    summary.insert("failures".into(), json!(failures));
    summary.insert("generation_exhausted".into(), json!(exhausted));
    summary.insert("first_failing_seed".into(), json!(first_failing_seed));
    if target == FuzzTarget::Thm34 {
        // The reverse direction is observational data, not a claim.
        summary.insert("converse_held".into(), json!(converse_held));
        summary.insert("converse_failed".into(), json!(converse_failed));
    }

    let code = if failures == 0 { EXIT_OK } else { EXIT_FALSE };
    (Some(Value::Object(summary)), code)
}

fn mixed_structure(trial: usize) -> Structure {
    match trial % 3 {
        0 => Structure::GnsdTrue,
        1 => Structure::GnsdFalse,
        _ => Structure::Unconstrained,
    }
}

fn target_name(target: FuzzTarget) -> &'static str {
    match target {
        FuzzTarget::Thm23 => "thm23",
        FuzzTarget::Cor24 => "cor24",
        FuzzTarget::Cor25 => "cor25",
        FuzzTarget::Thm32 => "thm32",
        FuzzTarget::Cor33 => "cor33",
        FuzzTarget::Thm34 => "thm34",
        FuzzTarget::Lemma31 => "lemma31",
        FuzzTarget::Oracles => "oracles",
    }
}
