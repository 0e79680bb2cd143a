use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

// Writes to stdout, ignoring errors such as a closed pipe.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

mod commands;
mod output;

#[derive(Parser)]
#[command(name = "gammatri", version, about = "Exact F-, H- and Γ-triangles of simplicial complexes and cluster types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Model,
    Formula,
    LocalSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Tables,
    Series,
    Crosscheck,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Closed,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Lucas,
    Pell,
}

#[derive(Subcommand)]
enum Command {
    /// F-, H- and Γ-triangles of a complex with a facet, or of the sphere of a subdivision
    Triangles {
        /// Complex JSON ({vertices, facets}) or subdivision JSON ({complex, index_set, sigma})
        file: PathBuf,
        /// Vertices of the distinguished facet (required for a bare complex)
        #[arg(long, value_delimiter = ',')]
        facet: Vec<String>,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Γ-triangle of a finite cluster type
    Cluster {
        /// Family letter: A, B, C, D, E, F, H or I2
        #[arg(long = "type")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Edge label of I2(m)
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Classify a Coxeter diagram file and print its Γ-triangle
    Diagram {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Local h- and γ-polynomials of a subdivision file
    Local {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Coefficients of a generating series
    Series {
        /// One of g, gA, gB, gD, GA, GB, GD
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 24)]
        order: usize,
        #[arg(long, value_enum, default_value = "closed")]
        route: RouteArg,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// u_n of the Lucas or Pell family
    Family {
        #[arg(value_enum)]
        name: FamilyArg,
        n: usize,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Run a verification suite; exits with status 1 if any check fails
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 24)]
        order: usize,
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long, value_enum, default_value = "human")]
        out: Out,
    },
    /// Write a cluster model (type A or I2) as subdivision JSON
    Export {
        #[arg(long = "type")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        m: Option<u32>,
        /// Output path; standard output when absent
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Triangles { file, facet, out } => commands::triangles(&file, &facet, out),
        Command::Cluster { kind, rank, m, method, out } => commands::cluster(&kind, rank, m, method, out),
        Command::Diagram { file, out } => commands::diagram(&file, out),
        Command::Local { file, out } => commands::local(&file, out),
        Command::Series { name, order, route, out } => commands::series(&name, order, route, out),
        Command::Family { name, n, out } => commands::family(name, n, out),
        Command::Verify { suite, order, max_rank, out } => commands::verify(suite, order, max_rank, out),
        Command::Export { kind, rank, m, output } => commands::export(&kind, rank, m, output.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
