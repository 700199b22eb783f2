//! Command-line driver: run check suites over parameter grids, export
//! spectra, and dump dense operators.
//!
//! Exit codes: 0 = all checks passed, 1 = at least one check failed,
//! 2 = usage or configuration error.

use clap::{Parser, Subcommand, ValueEnum};
use qvir::lattice::LatticeContext;
use qvir::suite::{build_named_operator, run_suite, spectrum_rows, SuiteConfig, SuiteKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qvir", about = "q-deformed Virasoro verification workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity-check suite and write a JSON report.
    Verify {
        /// Which suite to run.
        #[arg(long, value_parser = parse_suite)]
        suite: SuiteKind,
        /// Lattice half-sizes, comma separated.
        #[arg(long = "D", value_delimiter = ',', default_values_t = vec![2i64, 3, 4, 5, 6])]
        d: Vec<i64>,
        /// Fock level cap.
        #[arg(long, default_value_t = 6)]
        cap: i64,
        /// Tolerance for operator-identity checks.
        #[arg(long = "tol-op", default_value_t = 1e-10)]
        tol_op: f64,
        /// Tolerance for spectrum checks.
        #[arg(long = "tol-spec", default_value_t = 1e-9)]
        tol_spec: f64,
        /// Report destination.
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the dense spectrum of a tower hamiltonian against the
    /// partition formula.
    Spectrum {
        /// Operator name: A1, A3, A5 or A7.
        #[arg(long)]
        op: String,
        #[arg(long = "D")]
        d: i64,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump a named operator as a dense CSV matrix (row-major, "re,im" pairs).
    Dump {
        /// Operator spec: D<n>, e<j>, psi<k>, Gamma<i>, H<2k-1>, A<2k-1>.
        #[arg(long)]
        op: String,
        /// Power α for deformed generators D_n(q^α).
        #[arg(long, default_value_t = 1)]
        power: i64,
        #[arg(long = "D")]
        d: i64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

fn parse_suite(s: &str) -> Result<SuiteKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, d, cap, tol_op, tol_spec, out } => {
            let cfg = SuiteConfig {
                suite,
                d_list: d,
                level_cap: cap,
                tol_operator: tol_op,
                tol_spectrum: tol_spec,
            };
            let result = match run_suite(&cfg) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            if let Err(e) = std::fs::write(&out, result.to_json()) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(1);
            }
            println!(
                "suite={} checks={} passed={} failed={} recorded={} wall={:.2}s -> {}",
                result.suite,
                result.summary.total,
                result.summary.passed,
                result.summary.failed,
                result.recorded.len(),
                result.wall_time_s,
                out.display()
            );
            for c in result.checks.iter().filter(|c| !c.pass) {
                println!("FAIL {} {:?} residual={:.3e} tol={:.1e}", c.name, c.params, c.residual, c.tol);
            }
            if result.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Spectrum { op, d, format, out } => {
            let n = match op.as_str() {
                "A1" => 1,
                "A3" => 2,
                "A5" => 3,
                "A7" => 4,
                other => return usage_error(&format!("unknown spectrum operator {other} (expected A1, A3, A5 or A7)")),
            };
            if !(2..=10).contains(&d) {
                return usage_error(&format!("D = {d} outside 2..=10"));
            }
            let rows = match spectrum_rows(d, n) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            let tol_spec = 1e-9;
            let worst = rows
                .iter()
                .map(|r| (r.eigenvalue - r.formula_value).abs())
                .fold(0.0f64, f64::max);
            let body = match format {
                ExportFormat::Csv => {
                    let mut s = String::from("eigenvalue,multiplicity,formula_value,partition,spin\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{:.16e},{},{:.16e},\"{}\",{}\n",
                            r.eigenvalue, r.multiplicity, r.formula_value, r.partition, r.spin
                        ));
                    }
                    s
                }
                ExportFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
            };
            if let Err(e) = std::fs::write(&out, body) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(1);
            }
            println!("{} rows -> {} (max |eig − formula| = {worst:.3e})", rows.len(), out.display());
            if worst <= tol_spec {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: spectrum disagrees with the partition formula");
                ExitCode::from(1)
            }
        }
        Command::Dump { op, power, d, out } => {
            if !(2..=10).contains(&d) {
                return usage_error(&format!("D = {d} outside 2..=10"));
            }
            let ctx = match LatticeContext::new(d) {
                Ok(c) => c,
                Err(e) => return usage_error(&e.to_string()),
            };
            let operator = match build_named_operator(&ctx, &op, power) {
                Ok(o) => o,
                Err(e) => return usage_error(&e),
            };
            let dense = match operator.to_dense() {
                Ok(m) => m,
                Err(e) => return usage_error(&e.to_string()),
            };
            let mut body = String::new();
            for row in 0..dense.dim {
                let mut fields = Vec::with_capacity(2 * dense.dim);
                for col in 0..dense.dim {
                    let z = dense.entries[(row, col)];
                    fields.push(format!("{:.16e}", z.re));
                    fields.push(format!("{:.16e}", z.im));
                }
                body.push_str(&fields.join(","));
                body.push('\n');
            }
            if let Err(e) = std::fs::write(&out, body) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(1);
            }
            println!("{}×{} matrix -> {}", dense.dim, dense.dim, out.display());
            ExitCode::SUCCESS
        }
    }
}
