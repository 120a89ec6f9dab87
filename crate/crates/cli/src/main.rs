//! `cmlab`: verify, build and classify matrix factorizations, compute Ext
//! dimensions, fundamental cycles and group checks.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{failure_json, Failure};

#[derive(Parser, Debug)]
#[command(name = "cmlab", version, about = "Exact computations with matrix factorizations")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Singularity {
    Ainf,
    Dinf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check φψ = ψφ = u·f·I for a factorization file.
    Verify {
        /// Expected ring as "vars; f", e.g. "x,y,z; x*y".
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        mf: PathBuf,
    },
    /// Emit a catalog member as a factorization file.
    Catalog {
        /// Family id such as ainf:3 or dinf-gamma:2.
        id: Option<String>,
        /// Print the family table.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a gluing matrix to canonical blocks.
    Normform {
        #[arg(long, value_enum)]
        singularity: Singularity,
        /// Laurent matrix file; for ainf a two-element array (θ₁, θ₂).
        #[arg(long)]
        input: PathBuf,
        /// Certificate precision; defaults to the automatic policy.
        #[arg(long, env = "CMLAB_PREC")]
        prec: Option<i64>,
        /// Write certificate.json and one .mf file per non-free block here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// dim Ext^i(source, target) via the stable category.
    Ext {
        #[arg(long = "i")]
        index: u32,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, env = "CMLAB_TRUNC", default_value_t = cmlab::ext::DEFAULT_TRUNCATION)]
        trunc: u32,
        /// Raise the truncation order until two consecutive orders agree.
        #[arg(long)]
        auto_raise: bool,
        #[arg(long, default_value_t = cmlab::ext::DEFAULT_MAX_TRUNCATION)]
        max_trunc: u32,
    },
    /// Intersection matrix, fundamental cycle, Z² and edim of a dual graph.
    Cycle {
        /// E6, E7, E8, An:n, Dn:n or a graph file.
        #[arg(long)]
        graph: String,
    },
    /// Checks on a finite subgroup of GL₂.
    Group {
        /// cyclic-sl:n, cyclic-gl:n:m, binary-dihedral:n,
        /// binary-tetrahedral, binary-octahedral, binary-icosahedral, swap.
        #[arg(long)]
        name: String,
        #[arg(long, value_delimiter = ',', default_value = "order,small,det,gorenstein")]
        check: Vec<String>,
        /// Give up when the closure exceeds this many elements.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Write a Singular script computing Ext between factorization files.
    ExportSingular {
        /// Ring as "vars; f"; taken from the modules when omitted.
        #[arg(long)]
        ring: Option<String>,
        /// Module files, named M, N, K, ... in order unless --names is given.
        #[arg(long = "module")]
        modules: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
        /// Queries as i:source:target, e.g. 2:M:M.
        #[arg(long = "query")]
        queries: Vec<String>,
        /// Define the residue field k.
        #[arg(long)]
        residue_field: bool,
        /// The built-in session over xyz = 0.
        #[arg(long)]
        session: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    let start = Instant::now();
    let echo = argv[1..].to_vec();
    match commands::run(&cli.command) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.render_json(&echo, start.elapsed().as_millis()));
            } else {
                print!("{}", report.render_human());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                print!("{}", failure_json(&echo, &f));
            }
            match &f {
                Failure::Domain { name, message } => eprintln!("error: {name}: {message}"),
                Failure::Parse(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.status() as u8)
        }
    }
}
