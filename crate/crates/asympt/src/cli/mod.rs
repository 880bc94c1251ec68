//! Command-line interface: coefficient tables, expansions, oracles, and
//! verification runs with machine-readable output.
//!
//! Exit codes: 0 success (and verification pass), 1 verification fail,
//! 2 argument error, 3 unsupported combination, 4 numeric convergence
//! failure.

pub mod specstr;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::expansion::{self, Expansion};
use crate::families::{bkn_poisson, CoeffTable, FamilySpec};
use crate::oracle::{self, OracleMethod};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "asympt",
    version,
    about = "Asymptotic expansions of E[phi(U_x)] for convolution families, \
             with exact coefficients and brute-force verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Latex,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact coefficient table c_kn (mu_n = sum_k c_kn x^(n-k+1))
    Coeffs {
        /// Family spec, e.g. poisson, binomial:p=1/3, nb:p=1/2, gamma
        #[arg(long)]
        family: String,
        /// Number of retained orders; the table covers 2 <= n <= 2M-1
        #[arg(long = "M")]
        m: usize,
        /// Compute via the Poisson-only recursion instead of the mgf
        /// machinery (Poisson family only; the table is identical)
        #[arg(long)]
        poisson_recursion: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Write to a file instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build and render the expansion S_M(x)
    Expand {
        #[arg(long)]
        family: String,
        /// Phi spec, e.g. power:r=-1/2,a=0, log:beta=1, xlogx
        #[arg(long)]
        phi: String,
        #[arg(long = "M")]
        m: usize,
        /// Collect into descending powers of x (pure-power phi only)
        #[arg(long)]
        collect: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the expansion against the brute-force oracle on a grid
    /// and fit the error decay slope
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        phi: String,
        #[arg(long = "M")]
        m: usize,
        /// Mean grid: start:end:xK (geometric) or comma-separated values
        #[arg(long)]
        grid: String,
        /// Relative accuracy target per row
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write the CSV rows to a file (the summary line stays on stdout)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the brute-force expectation oracle at one point
    Oracle {
        #[arg(long)]
        family: String,
        #[arg(long)]
        phi: String,
        /// Mean (Poisson and gamma families)
        #[arg(long)]
        x: Option<f64>,
        /// Convolution parameter (binomial and negative binomial)
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

/// Parses `argv` and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            output.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug)]
struct CmdOutput {
    stdout: String,
    exit: i32,
}

fn ok(stdout: String) -> Result<CmdOutput> {
    Ok(CmdOutput { stdout, exit: 0 })
}

fn write_or_pass(output: &Option<PathBuf>, content: String) -> Result<String> {
    match output {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(content),
    }
}

fn execute(cli: Cli) -> Result<CmdOutput> {
    match cli.command {
        Command::Coeffs {
            family,
            m,
            poisson_recursion,
            format,
            output,
        } => {
            let family = specstr::parse_family(&family)?;
            if !(1..=30).contains(&m) {
                return Err(Error::Parameter(format!("M must be in 1..=30, got {m}")));
            }
            let table = if poisson_recursion {
                if family != FamilySpec::Poisson {
                    return Err(Error::Parameter(
                        "--poisson-recursion applies to the poisson family only".into(),
                    ));
                }
                bkn_poisson(m)
            } else {
                family.ckn_table(m)?
            };
            let text = render_table(&family, &table, format)?;
            ok(write_or_pass(&output, text)?)
        }

        Command::Expand {
            family,
            phi,
            m,
            collect,
            format,
            output,
        } => {
            let family = specstr::parse_family(&family)?;
            let phi = specstr::parse_phi(&phi)?;
            let e = Expansion::build(family, phi, m)?;
            let text = if collect {
                let c = e.collect_powers()?;
                match format {
                    OutputFormat::Text => c.to_text() + "\n",
                    OutputFormat::Latex => c.to_latex() + "\n",
                    OutputFormat::Json => c.to_json() + "\n",
                    OutputFormat::Csv => {
                        return Err(Error::Parameter(
                            "expand does not emit CSV; use text, latex, or json".into(),
                        ))
                    }
                }
            } else {
                match format {
                    OutputFormat::Text => e.to_text() + "\n",
                    OutputFormat::Latex => e.to_latex() + "\n",
                    OutputFormat::Json => expansion::to_json(&e) + "\n",
                    OutputFormat::Csv => {
                        return Err(Error::Parameter(
                            "expand does not emit CSV; use text, latex, or json".into(),
                        ))
                    }
                }
            };
            ok(write_or_pass(&output, text)?)
        }

        Command::Verify {
            family,
            phi,
            m,
            grid,
            tol,
            output,
        } => {
            let family = specstr::parse_family(&family)?;
            let phi = specstr::parse_phi(&phi)?;
            let xs = specstr::parse_grid(&grid)?;
            let rows = verify::error_table(&family, &phi, m, &xs, tol)?;
            let slope = verify::decay_slope(&rows)?;
            let pass = slope <= -(m as f64) + 0.3;
            let csv = verify::rows_to_csv(&rows);
            let mut stdout = write_or_pass(&output, csv)?;
            stdout.push_str(&format!("slope={slope} pass={pass}\n"));
            Ok(CmdOutput {
                stdout,
                exit: if pass { 0 } else { 1 },
            })
        }

        Command::Oracle {
            family,
            phi,
            x,
            n,
            tol,
        } => {
            let family = specstr::parse_family(&family)?;
            let phi = specstr::parse_phi(&phi)?;
            let result = match &family {
                FamilySpec::Poisson | FamilySpec::Gamma => {
                    let x = x.ok_or_else(|| {
                        Error::Parameter(format!("family {family} needs --x <mean>"))
                    })?;
                    if n.is_some() {
                        return Err(Error::Parameter(
                            "--n applies to the discrete families; use --x here".into(),
                        ));
                    }
                    match family {
                        FamilySpec::Poisson => oracle::expect_poisson(&phi, x, tol)?,
                        _ => oracle::expect_gamma(&phi, x, tol)?,
                    }
                }
                FamilySpec::Binomial { p } | FamilySpec::NegBinomial { p } => {
                    let n = n.ok_or_else(|| {
                        Error::Parameter(format!("family {family} needs --n <index>"))
                    })?;
                    if x.is_some() {
                        return Err(Error::Parameter(
                            "--x applies to the continuous families; use --n here".into(),
                        ));
                    }
                    let p = p.to_f64();
                    match family {
                        FamilySpec::Binomial { .. } => oracle::expect_binomial(&phi, n, p)?,
                        _ => oracle::expect_negbinomial(&phi, n, p, tol)?,
                    }
                }
                FamilySpec::CustomIid { .. } => {
                    return Err(Error::Unsupported(
                        "no brute-force oracle for custom families".into(),
                    ))
                }
            };
            let method = match result.method {
                OracleMethod::Sum => "sum",
                OracleMethod::Quadrature => "quadrature",
            };
            ok(format!(
                "value = {}\nterms_used = {}\ntail_bound = {}\nmethod = {}\n",
                result.value, result.terms_used, result.tail_bound, method
            ))
        }
    }
}

fn render_table(family: &FamilySpec, table: &CoeffTable, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (n, k, v) in table.iter() {
                if !v.is_zero() {
                    out.push_str(&format!("c[{k},{n}] = {v}\n"));
                }
            }
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,k,value\n");
            for (n, k, v) in table.iter() {
                if !v.is_zero() {
                    out.push_str(&format!("{n},{k},{v}\n"));
                }
            }
            Ok(out)
        }
        OutputFormat::Json => {
            use serde_json::json;
            let entries: Vec<serde_json::Value> = table
                .iter()
                .filter(|(_, _, v)| !v.is_zero())
                .map(|(n, k, v)| {
                    json!({
                        "n": n,
                        "k": k,
                        "value": [v.numer().to_string(), v.denom().to_string()],
                    })
                })
                .collect();
            let doc = json!({
                "family": family.to_string(),
                "M": table.m(),
                "entries": entries,
            });
            Ok(serde_json::to_string(&doc).expect("table serialization cannot fail") + "\n")
        }
        OutputFormat::Latex => Err(Error::Parameter(
            "coeffs does not emit LaTeX; use text, csv, or json".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> Result<CmdOutput> {
        let mut argv = vec!["asympt"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).expect("test arguments must parse");
        execute(cli)
    }

    #[test]
    fn coeffs_poisson_includes_known_entries() {
        let out = run_cmd(&["coeffs", "--family", "poisson", "--M", "3"]).unwrap();
        assert!(out.stdout.contains("c[3,4] = 3"), "{}", out.stdout);
        assert!(out.stdout.contains("c[4,4] = 1"), "{}", out.stdout);
        // the recursion route prints the identical table
        let rec = run_cmd(&[
            "coeffs",
            "--family",
            "poisson",
            "--M",
            "3",
            "--poisson-recursion",
        ])
        .unwrap();
        assert_eq!(out.stdout, rec.stdout);
    }

    #[test]
    fn coeffs_nb_c22() {
        let out = run_cmd(&["coeffs", "--family", "nb:p=1/2", "--M", "3"]).unwrap();
        assert!(out.stdout.contains("c[2,2] = 2"), "{}", out.stdout);
    }

    #[test]
    fn coeffs_validates_m_and_flags() {
        assert!(run_cmd(&["coeffs", "--family", "poisson", "--M", "31"]).is_err());
        assert!(run_cmd(&["coeffs", "--family", "poisson", "--M", "0"]).is_err());
        assert!(run_cmd(&[
            "coeffs",
            "--family",
            "gamma",
            "--M",
            "3",
            "--poisson-recursion"
        ])
        .is_err());
    }

    #[test]
    fn expand_poisson_sqrt_collected() {
        let out = run_cmd(&[
            "expand",
            "--family",
            "poisson",
            "--phi",
            "power:r=-1/2,a=0",
            "--M",
            "3",
            "--collect",
        ])
        .unwrap();
        assert_eq!(out.stdout, "x^(1/2) * (1 - 1/8 * x^-1 - 7/128 * x^-2)\n");
    }

    #[test]
    fn expand_m1_is_phi() {
        let out = run_cmd(&["expand", "--family", "gamma", "--phi", "xlogx", "--M", "1"]).unwrap();
        assert_eq!(out.stdout, "x*log(x)\n");
    }

    #[test]
    fn expand_collect_unsupported_is_exit_3() {
        let err = run_cmd(&[
            "expand",
            "--family",
            "binomial:p=1/2",
            "--phi",
            "log:beta=1",
            "--M",
            "3",
            "--collect",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn oracle_poisson_identity() {
        let out = run_cmd(&[
            "oracle",
            "--family",
            "poisson",
            "--phi",
            "power:r=-1,a=0",
            "--x",
            "7",
            "--tol",
            "1e-14",
        ])
        .unwrap();
        let value: f64 = out
            .stdout
            .lines()
            .next()
            .unwrap()
            .strip_prefix("value = ")
            .unwrap()
            .parse()
            .unwrap();
        assert!((value - 7.0).abs() < 1e-10, "{}", out.stdout);
        assert!(out.stdout.contains("method = sum"));
    }

    #[test]
    fn oracle_binomial_mean() {
        let out = run_cmd(&[
            "oracle",
            "--family",
            "binomial:p=1/2",
            "--phi",
            "power:r=-1,a=0",
            "--n",
            "10",
        ])
        .unwrap();
        assert!(out.stdout.starts_with("value = 5"), "{}", out.stdout);
    }

    #[test]
    fn oracle_argument_mismatches() {
        // discrete family with --x
        let e = run_cmd(&[
            "oracle",
            "--family",
            "binomial:p=1/2",
            "--phi",
            "xlogx",
            "--x",
            "5",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        // continuous family with --n
        let e = run_cmd(&[
            "oracle", "--family", "poisson", "--phi", "xlogx", "--n", "5",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn verify_two_point_grid_is_insufficient() {
        let e = run_cmd(&[
            "verify",
            "--family",
            "poisson",
            "--phi",
            "log:beta=1",
            "--M",
            "2",
            "--grid",
            "100:200:x2",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
