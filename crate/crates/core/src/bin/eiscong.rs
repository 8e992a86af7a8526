use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eiscong::cli;
use eiscong::congruence::Operator;
use eiscong::klingen::HalfIntegralMatrix;
use eiscong::report::parse_matrix;

#[derive(Parser)]
#[command(name = "eiscong", version, about = "Klingen Eisenstein congruences and Fontaine-Laffaille extensions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

fn matrix(s: &str) -> Result<HalfIntegralMatrix, String> {
    parse_matrix(s)
}

/// `"T(2);T1(3^2)"`
fn operators(s: &str) -> Result<Vec<Operator>, String> {
    s.split(';').map(|o| o.parse::<Operator>().map_err(|e| e.to_string())).collect()
}

#[derive(Subcommand)]
enum Cmd {
    /// Victor-Miller basis of M_k or S_k
    Basis {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        prec: Option<usize>,
        #[arg(long)]
        cuspidal: bool,
    },
    /// Matrix and characteristic polynomial of T(p)
    Hecke {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        prec: Option<usize>,
        /// act on M_k instead of S_k
        #[arg(long)]
        full: bool,
    },
    /// L_alg(k-1, chi_T)
    Lvalue {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_parser = matrix)]
        t: HalfIntegralMatrix,
        #[arg(long = "ell")]
        ells: Vec<u64>,
    },
    /// Look up a(T) in a coefficient table, optionally rescaled to a(n; phi) on singular T
    KlingenCoeff {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        weight: u32,
        #[arg(long, value_parser = matrix)]
        t: HalfIntegralMatrix,
        #[arg(long)]
        rescale: bool,
        #[arg(long = "ell")]
        ells: Vec<u64>,
    },
    /// Eigenvalue congruence; systems are JSONL files or klingen:K
    CheckCongruence {
        a: String,
        b: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 1)]
        power: i64,
    },
    /// Congruence depth over an operator set such as "T(2);T1(2^2)"
    Depth {
        a: String,
        b: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        ops: Option<String>,
    },
    /// Index of the Eisenstein ideal and the principality criterion
    EisensteinIdeal {
        systems: Vec<String>,
        #[arg(long)]
        eisenstein: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value = "T(2);T(3)")]
        ops: String,
        #[arg(long, default_value_t = 1)]
        residue_degree: u32,
    },
    /// Ext^1 dimensions and the Hom-tensor adjunction
    FlExt {
        #[arg(long)]
        ell: u64,
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        interval: Option<Vec<i64>>,
        #[arg(long)]
        table: bool,
        /// two objects: M<n> or JSON files
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        pair: Option<Vec<String>>,
    },
    /// End-to-end check driven by a config file
    VerifyExample { config: PathBuf },
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Basis { weight, prec, cuspidal } => cli::basis(weight, prec, cuspidal),
        Cmd::Hecke { weight, p, prec, full } => cli::hecke(weight, p, prec, !full),
        Cmd::Lvalue { weight, t, ells } => cli::lvalue(weight, t, &ells),
        Cmd::KlingenCoeff { table, weight, t, rescale, ells } => cli::klingen_coeff(&table, weight, t, rescale, &ells),
        Cmd::CheckCongruence { a, b, ell, power } => cli::check_congruence(&a, &b, ell, power),
        Cmd::Depth { a, b, ell, ops } => match ops.as_deref().map(operators).transpose() {
            Ok(ops) => cli::depth(&a, &b, ell, ops.as_deref()),
            Err(e) => return usage(&e),
        },
        Cmd::EisensteinIdeal { systems, eisenstein, ell, ops, residue_degree } => match operators(&ops) {
            Ok(ops) => cli::eisenstein_ideal_cmd(&systems, &eisenstein, ell, &ops, residue_degree),
            Err(e) => return usage(&e),
        },
        Cmd::FlExt { ell, interval, table, pair } => {
            let interval = interval.map(|v| (v[0], v[1]));
            match (table, pair) {
                (true, _) => {
                    let (a, b) = interval.unwrap_or((-2, 2));
                    cli::fl_table(ell, a, b)
                }
                (false, Some(p)) => cli::fl_pair(&p[0], &p[1], ell, interval),
                (false, None) => return usage("fl-ext needs --table or --pair"),
            }
        }
        Cmd::VerifyExample { config } => cli::verify_example_cmd(&config),
    };
    match result {
        Ok(report) => {
            println!("{}", report.to_json());
            eprintln!("{}: {:?}", report.command, report.status);
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => usage(&e.to_string()),
    }
}
