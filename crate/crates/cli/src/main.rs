use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kirwan_core::cli::{run, Command, Format, ProblemDocument};

#[derive(Parser)]
#[command(name = "kirwan", version, about = "Kirwan-map kernels and reduced cohomology, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List fixed points with moment values and long/short sides.
    Classify(Args),
    /// Minimal-covering generators of both kernels and a Groebner basis.
    Generators(Args),
    /// Graded dimensions of the reduced cohomology ring.
    Betti(Args),
    /// Closed-form families for products of spheres.
    Families(Args),
    /// Cross-check every construction against the vanishing-ideal oracle.
    Certify(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Problem document (TOML); `-` reads stdin.
    document: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Override the document's truncation degree.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Attach oracle certificates to the report.
    #[arg(long)]
    certify: bool,
    /// Include normalized and polygon-space families.
    #[arg(long)]
    hk_families: bool,
    /// Include the (iii)''' family.
    #[arg(long)]
    debug_families: bool,
    /// Fixed-point limit per side for oracle computations.
    #[arg(long)]
    max_oracle_points: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn read_document(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Classify(a) => (Command::Classify, a),
        Cmd::Generators(a) => (Command::Generators, a),
        Cmd::Betti(a) => (Command::Betti, a),
        Cmd::Families(a) => (Command::Families, a),
        Cmd::Certify(a) => (Command::Certify, a),
    };
    let text = match read_document(&args.document) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.document.display());
            return ExitCode::from(1);
        }
    };
    let mut doc = match ProblemDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}: {e}", args.document.display());
            return ExitCode::from(1);
        }
    };
    if args.max_degree.is_some() {
        doc.max_degree = args.max_degree;
    }
    doc.options.certify |= args.certify;
    doc.options.hk_families |= args.hk_families;
    doc.options.debug_families |= args.debug_families;
    if let Some(n) = args.max_oracle_points {
        doc.options.max_oracle_points = n;
    }
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let outcome = run(command, &doc, format);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
