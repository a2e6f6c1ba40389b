//! `spread`: constructions, spectra, series coefficients, scans and the
//! verification suite from the command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use spread_core::report::write_atomic;
use spread_core::series::compare_coefficients;
use spread_core::verify::DEFAULT_SEED;
use spread_core::walks::{walk_table, walk_table_csv};
use spread_core::{
    build_family, eigenvalues_sym, exhaustive_max_spread, families, verify_suite, FamilyKind,
    Graph, GraphClass, SeriesFamily,
};

#[derive(Parser)]
#[command(
    name = "spread",
    version,
    about = "Spectral spread of outerplanar and planar graphs"
)]
struct Cli {
    /// Write the output here (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and extreme eigenvectors of a graph file (edge list or JSON).
    Spectrum { graphfile: PathBuf },
    /// Build a family member and print it as an edge list.
    Family {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: Option<usize>,
        /// Print `{"n":…,"edges":…}` instead of an edge list.
        #[arg(long)]
        json: bool,
    },
    /// Spread of every member of a one-path family.
    Scan {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Derived expansion coefficients against the published ones.
    Coeffs {
        #[arg(long)]
        family: SeriesFamily,
        #[arg(long)]
        order: usize,
    },
    /// Linear fits of path walk totals, as CSV.
    Walks {
        #[arg(long)]
        kmax: u32,
    },
    /// Exhaustive maximum spread over a graph class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: GraphClass,
    },
    /// Run every acceptance check and emit the JSON report.
    Verify {
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Input and precondition errors exit with 2, everything else with 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    use spread_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::NoConvergence(_) | E::Series(_)) => 1,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes())
            .with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{nl}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.context("writing to standard output"),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Spectrum { graphfile } => {
            let text = std::fs::read_to_string(&graphfile)
                .map_err(spread_core::Error::from)
                .with_context(|| format!("reading {}", graphfile.display()))?;
            let g = Graph::parse(&text)?;
            emit(out, &eigenvalues_sym(&g)?.to_json())?;
        }
        Command::Family { kind, n, ell, json } => {
            let g = build_family(kind, n, ell)?;
            emit(out, &if json { g.to_json() } else { g.to_edge_list() })?;
        }
        Command::Scan { kind, n, csv } => {
            let rep = families::scan_argmax(kind, n)?;
            emit(out, &if csv { rep.to_csv() } else { rep.to_json() })?;
        }
        Command::Coeffs { family, order } => {
            let cmp = compare_coefficients(family, order)?;
            let line = format!("c1..c{order} exact match: {}", cmp.exact_match(order));
            emit(None, &line)?;
            emit(out, &cmp.to_json())?;
            if !cmp.exact_match(order) {
                return Ok(1);
            }
        }
        Command::Walks { kmax } => {
            emit(out, &walk_table_csv(&walk_table(kmax)?))?;
        }
        Command::Enumerate { n, class } => {
            emit(out, &exhaustive_max_spread(n, class)?.to_json())?;
        }
        Command::Verify { fast, seed } => {
            let rep = verify_suite(fast, seed)?;
            for c in &rep.checks {
                eprintln!("{} {:?} {}", c.id, c.status, c.name);
            }
            emit(out, &rep.to_json())?;
            if rep.any_failed() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
