use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Outcome, Report};

#[derive(Parser)]
#[command(name = "cubical", version, about = "Checks for cube complexes, cubical presentations and their diagrams")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Compact, global = true)]
    format: Format,
    /// Worker threads for per-hyperplane and per-relator work.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Compact,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex file.
    Validate { complex: PathBuf },
    /// Flag test on every vertex link.
    Npc { complex: PathBuf },
    Hyperplanes { complex: PathBuf },
    /// Carrier of one hyperplane as a complex.
    Carrier {
        complex: PathBuf,
        #[arg(long)]
        hyperplane: usize,
    },
    /// Convex hull of named cells.
    Hull {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cells: Vec<String>,
    },
    /// Collapse to a point, or replay a certificate with --verify.
    Collapse {
        complex: PathBuf,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Components of the complement of each hyperplane carrier.
    Separate {
        complex: PathBuf,
        #[arg(long)]
        hyperplane: Option<usize>,
    },
    /// Local isometry test for a map file.
    MapCheck { map: PathBuf },
    Fiber { left: PathBuf, right: PathBuf },
    Symmetric { presentation: PathBuf },
    Minimal { presentation: PathBuf },
    Pieces { presentation: PathBuf },
    PieceBound { presentation: PathBuf },
    CheckCn {
        presentation: PathBuf,
        #[arg(long)]
        n: usize,
        /// Search step limit.
        #[arg(long)]
        budget: Option<usize>,
    },
    #[command(subcommand)]
    Diagram(DiagramCommand),
    #[command(subcommand)]
    Artin(ArtinCommand),
}

#[derive(Args)]
struct DiagramInput {
    presentation: PathBuf,
    diagram: PathBuf,
}

#[derive(Subcommand)]
enum DiagramCommand {
    Validate(DiagramInput),
    Reduce(DiagramInput),
    Features(DiagramInput),
    Dichotomy(DiagramInput),
}

#[derive(Subcommand)]
enum ArtinCommand {
    /// Rose and relator balls.
    Build {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    Profile {
        graph: PathBuf,
        /// Defaults to the largest finite label.
        #[arg(long)]
        radius: Option<usize>,
    },
    Certify {
        graph: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

fn dispatch(cli: &Cli) -> Report {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Validate { complex } => commands::validate(complex),
        Command::Npc { complex } => commands::npc(complex),
        Command::Hyperplanes { complex } => commands::hyperplanes(complex),
        Command::Carrier { complex, hyperplane } => commands::carrier(complex, *hyperplane),
        Command::Hull { complex, cells } => commands::hull(complex, cells),
        Command::Collapse { complex, verify } => commands::collapse(complex, verify.as_deref()),
        Command::Separate { complex, hyperplane } => commands::separate(complex, *hyperplane, jobs),
        Command::MapCheck { map } => commands::map_check(map),
        Command::Fiber { left, right } => commands::fiber(left, right),
        Command::Symmetric { presentation } => commands::symmetric(presentation),
        Command::Minimal { presentation } => commands::minimal(presentation),
        Command::Pieces { presentation } => commands::pieces(presentation),
        Command::PieceBound { presentation } => commands::piece_bound(presentation),
        Command::CheckCn { presentation, n, budget } => commands::check_cn(presentation, *n, *budget),
        Command::Diagram(d) => match d {
            DiagramCommand::Validate(i) => commands::diagram_validate(&i.presentation, &i.diagram),
            DiagramCommand::Reduce(i) => commands::diagram_reduce(&i.presentation, &i.diagram),
            DiagramCommand::Features(i) => commands::diagram_features(&i.presentation, &i.diagram),
            DiagramCommand::Dichotomy(i) => commands::diagram_dichotomy(&i.presentation, &i.diagram),
        },
        Command::Artin(a) => match a {
            ArtinCommand::Build { graph, radius } => commands::artin_build(graph, *radius),
            ArtinCommand::Profile { graph, radius } => commands::artin_profile(graph, *radius),
            ArtinCommand::Certify { graph, n } => commands::artin_certify(graph, *n),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if help { 0 } else { Outcome::InputError.code() });
        }
    };
    let report = dispatch(&cli);
    let mut text = match cli.format {
        Format::Compact => serde_json::to_string(&report.body),
        Format::Pretty => serde_json::to_string_pretty(&report.body),
    }
    .expect("reports serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {}", path.display(), e);
                return ExitCode::from(Outcome::InputError.code());
            }
        }
        None => print!("{}", text),
    }
    ExitCode::from(report.outcome.code())
}
