use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use wacert::brauer::evaluate_point;
use wacert::chatelet::{certify_local_solvability, verify_params, verify_solvability_certificate, SearchBounds};
use wacert::fibration::{build_section, etale_over_branch, example_quartics, PlaneMap};
use wacert::nf::{is_principal_prime, QuadraticField};
use wacert::pipeline::{
    assemble_construction, bunyakovsky_scan, canonical_json, parse_params, table_rows, verify_construction,
    verify_example, verify_table_row, ConstructOptions, ConstructionCertificate,
};
use wacert::symbols::{hilbert_odd, hilbert_rational, RationalPlace};

/// Certificates for Chatelet-surface counterexamples to weak approximation.
#[derive(Parser)]
#[command(name = "wacert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Choose (or accept) parameters over K and emit a full certificate.
    Construct {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        field: i64,
        /// a,b,c,e
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long)]
        radius: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run every check for (17, 137, 5, -31) over Q and the fibration.
    VerifyExample,
    /// Check rows of the quadratic-field table.
    VerifyTable {
        /// 1-based row index
        #[arg(long)]
        row: Option<usize>,
    },
    /// Hilbert symbol (s, t)_v.
    Hilbert {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        field: i64,
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Local solvability certificate.
    Solvable {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        field: i64,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Invariant of the quaternion class at the ramified place for one x.
    BrauerEval {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        field: i64,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Etale certificate of the plane map over the branch locus.
    EtaleCheck,
    /// Prime values of (-delta/c) n^2 + c for 1 <= n <= nmax.
    Scan {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        field: i64,
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        nmax: u64,
    },
    /// Re-verify a certificate file written by construct.
    VerifyCert { path: PathBuf },
}

enum Failure {
    /// A mathematical check failed; the report was printed.
    Check,
    Input(String),
}

type Outcome = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn field(delta0: i64) -> Result<QuadraticField, Failure> {
    QuadraticField::new(delta0).map_err(input)
}

fn emit<T: Serialize>(value: &T, holds: bool) -> Outcome {
    print!("{}", canonical_json(value));
    if holds {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { field: d, params, radius, out } => {
            let k = field(d)?;
            let params = params.map(|s| parse_params(k, &s).map(|p| p.map(|x| x.to_string()))).transpose().map_err(input)?;
            let opts = ConstructOptions { params, c_e: None, radius };
            let cert = match assemble_construction(k, &opts) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return Err(Failure::Check);
                }
            };
            let text = canonical_json(&cert);
            match out {
                Some(path) => fs::write(&path, text).map_err(input)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::VerifyExample => {
            let report = verify_example().map_err(input)?;
            let holds = report.all_hold;
            emit(&report, holds)
        }
        Command::VerifyTable { row } => {
            let rows = table_rows();
            let selected: Vec<_> = match row {
                Some(i) if (1..=rows.len()).contains(&i) => vec![rows[i - 1].clone()],
                Some(i) => return Err(Failure::Input(format!("row {i} out of range 1..={}", rows.len()))),
                None => rows,
            };
            let reports = selected
                .iter()
                .map(|r| verify_table_row(r, SearchBounds::default()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(input)?;
            let holds = reports.iter().all(|r| r.passes);
            emit(&reports, holds)
        }
        Command::Hilbert { field: d, s, t, v } => {
            let k = field(d)?;
            let s = k.parse_element(&s).map_err(input)?;
            let t = k.parse_element(&t).map_err(input)?;
            if s.is_zero() || t.is_zero() {
                return Err(Failure::Input("Hilbert symbol of zero".into()));
            }
            let value = match (k.is_rational(), s.as_rational(), t.as_rational()) {
                (true, Some(s), Some(t)) => {
                    let place = RationalPlace::parse(&v).map_err(input)?;
                    hilbert_rational(s, t, &place)
                }
                _ => {
                    let pi = is_principal_prime(&k.parse_element(&v).map_err(input)?).map_err(input)?;
                    hilbert_odd(&s, &t, &pi).map_err(input)?
                }
            };
            println!("{value}");
            Ok(())
        }
        Command::Solvable { field: d, params } => {
            let k = field(d)?;
            let [a, b, c, e] = parse_params(k, &params).map_err(input)?;
            let p = match verify_params(k, &a, &b, &c, &e) {
                Ok(p) => p,
                Err(err) => {
                    eprintln!("{err}");
                    return Err(Failure::Check);
                }
            };
            match certify_local_solvability(&p) {
                Ok(cert) => {
                    let holds = verify_solvability_certificate(&cert).is_ok();
                    emit(&cert, holds)
                }
                Err(err) => {
                    eprintln!("{err}");
                    Err(Failure::Check)
                }
            }
        }
        Command::BrauerEval { field: d, params, x } => {
            let k = field(d)?;
            let [a, b, c, e] = parse_params(k, &params).map_err(input)?;
            let x = k.parse_element(&x).map_err(input)?;
            let p = verify_params(k, &a, &b, &c, &e).map_err(|err| {
                eprintln!("{err}");
                Failure::Check
            })?;
            let ev = evaluate_point(&p, &x).map_err(input)?;
            emit(&ev, true)
        }
        Command::EtaleCheck => {
            let (p_inf, p_0) = example_quartics();
            let section = build_section(&p_inf, &p_0).map_err(input)?;
            let cert = etale_over_branch(&PlaneMap::standard(), &section).map_err(input)?;
            let holds = cert.etale;
            emit(&cert, holds)
        }
        Command::Scan { field: d, delta, c, nmax } => {
            let k = field(d)?;
            let c = k.parse_element(&c).map_err(input)?;
            let report = bunyakovsky_scan(k, delta, &c, nmax).map_err(input)?;
            emit(&report, true)
        }
        Command::VerifyCert { path } => {
            let text = fs::read_to_string(&path).map_err(input)?;
            let cert: ConstructionCertificate = serde_json::from_str(&text).map_err(input)?;
            match verify_construction(&cert) {
                Ok(()) => {
                    println!("ok");
                    Ok(())
                }
                Err(e) => {
                    eprintln!("{e}");
                    Err(Failure::Check)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
