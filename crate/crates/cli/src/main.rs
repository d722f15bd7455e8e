mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "coble", version, about = "Lattice and root-graph checks for Coble surfaces")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Root graphs given as `builtin:NAME` or a path to a graph file.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Lattices given as named sums (`A5+A5+A1+A1`, `U(2)+E8`) or `file:PATH`.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Built-in graphs, blow-up models and the classification table.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Kodaira fibres and extremal fibrations.
    #[command(subcommand)]
    Fiber(FiberCmd),
}

#[derive(Subcommand)]
pub enum GraphCmd {
    /// Size, span signature and determinant.
    Info { source: String },
    /// Automorphism group order and generators.
    Aut { source: String },
    /// Connected parabolic subdiagrams, or maximal ones of a given rank.
    Parabolics {
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        rank: Option<usize>,
        source: String,
    },
    /// Every connected parabolic extends to one of the target rank.
    Vinberg {
        #[arg(long)]
        rank: Option<usize>,
        source: String,
    },
    /// Graphviz rendering.
    Dot { source: String },
}

#[derive(Subcommand)]
pub enum LatticeCmd {
    Det { spec: String },
    /// Discriminant group and its forms.
    Disc { spec: String },
    /// The form `q` on `L/2L`.
    Mod2 { spec: String },
    /// Overlattice generated by glue vectors in `L*`.
    Overlattice {
        spec: String,
        /// Glue vectors such as `1/2,0,1/2,0`; repeat for several.
        #[arg(long = "glue", required = true)]
        glue: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum CatalogCmd {
    /// The graph in text format.
    Build { name: String },
    /// The blow-up model.
    Model { name: String },
    /// All consistency checks for one entry.
    Check { name: String },
    /// The classification table.
    Table,
}

#[derive(Subcommand)]
pub enum FiberCmd {
    /// Whether a fibre configuration is extremal in the given characteristic.
    Lookup(LookupArgs),
    /// Fibre configurations for a parabolic type such as `~A4+~A4`.
    Candidates {
        diagram: String,
        #[arg(long = "char")]
        char_class: Option<String>,
    },
}

#[derive(Args)]
pub struct LookupArgs {
    #[arg(long = "char", required = true)]
    pub char_class: String,
    #[arg(required = true, num_args = 1..)]
    pub fibers: Vec<String>,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = args[1..].join(" ");
    match commands::run(&cli.command, &echo) {
        Ok(report) => {
            let out = if cli.json { report.to_json() } else { report.to_text() };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
