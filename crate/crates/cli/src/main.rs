//! `strebel`: command-line front end for the Strebel differential toolkit.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use strebel::exactnum::DEFAULT_PRECISION;
use strebel::periods::DEFAULT_TOLERANCE;

use config::{Failure, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "strebel", version, about = "Strebel differentials with four double poles on the sphere")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "STREBEL_PRECISION_BITS", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Numeric tolerance; must be at least 2^(16 - precision).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Cross-ratio of the fourth pole, e.g. `2`, `1/2+3/4*i`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Accessory parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero pattern of the family member at exact (lambda, mu).
    Classify(FamilyArgs),
    /// The mu giving two double zeros at a real rational lambda.
    MuOfLambda {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Divisor and cone angles of the family member at exact (lambda, mu).
    Divisor(FamilyArgs),
    /// Pullback of a differential along a rational map.
    Pullback {
        /// Catalog map name or map JSON (inline or a file).
        #[arg(long)]
        map: String,
        /// `q0`, `q0p`, or differential JSON (inline or a file).
        #[arg(long, default_value = "q0")]
        diff: String,
    },
    /// Belyi maps: passports, minimal degrees and the catalogued examples.
    #[command(subcommand)]
    Belyi(BelyiCommand),
    /// Ribbon graphs: enumeration, automorphisms and dessins.
    #[command(subcommand)]
    Ribbon(RibbonCommand),
    /// Periods between the zeros of the family member at numeric (lambda, mu).
    Periods(FamilyArgs),
    /// Solve for the mu making all periods real.
    FindMu {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Lengths of the three edge classes of the critical graph.
    EdgeLengths {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest imaginary part of a period accepted as Strebel.
        #[arg(long, default_value_t = 1e-3)]
        max_residual: f64,
    },
    /// Trace the horizontal trajectory through a point.
    Trace {
        /// `q0`, `q0p`; omit to use `--lambda` and `--mu`.
        #[arg(long)]
        map: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Write an SVG plot to this file.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
    /// Minimal degree of a Belyi map for cone angles 2 pi (a, b, c).
    MinDegree { a: String, b: String, c: String },
    /// Run the reproduction checks.
    ReproducePaper {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum BelyiCommand {
    /// Ramification passport over 0, 1 and infinity.
    Passport {
        /// Catalog map name or map JSON (inline or a file).
        #[arg(long)]
        map: String,
    },
    /// Same as the top-level `min-degree`.
    MinDegree { a: String, b: String, c: String },
    /// Check the degree-8 map and its pullback.
    VerifyDeg8,
    /// Build and check the three degree-12 maps from the sextic.
    Example43,
}

#[derive(Subcommand, Debug)]
enum RibbonCommand {
    /// Isomorphism classes of ribbon graphs with given vertex degrees.
    Enumerate {
        #[arg(long)]
        degrees: String,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long)]
        faces: usize,
        /// Keep only graphs without loops.
        #[arg(long)]
        loopless: bool,
        /// Boundary lengths to test metric feasibility against, e.g. `1,1,1,1`.
        #[arg(long)]
        feasible: Option<String>,
    },
    /// Automorphism group of a graph given as JSON (inline or a file).
    Aut {
        graph: String,
        /// Edge labels, one per edge, to report the induced label action.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Dessin realising the metric K4 graph with edge lengths (a, a, b, b, c, c).
    Dessin { a: String, b: String, c: String },
}

fn dispatch(cli: Cli) -> config::Outcome<(commands::Report, Format)> {
    let format = if cli.json { Format::Json } else { cli.format };
    let cfg = RunConfig::new(cli.precision, cli.tol, DEFAULT_TOLERANCE, format)?;
    use commands as c;
    let report = match cli.command {
        Command::Classify(f) => c::classify(&cfg, &f),
        Command::MuOfLambda { lambda } => c::mu_of_lambda(&lambda),
        Command::Divisor(f) => c::divisor(&f),
        Command::Pullback { map, diff } => c::pullback(&map, &diff),
        Command::Belyi(BelyiCommand::Passport { map }) => c::passport(&cfg, &map),
        Command::Belyi(BelyiCommand::MinDegree { a, b, c: cc }) | Command::MinDegree { a, b, c: cc } => {
            c::min_degree(&a, &b, &cc)
        }
        Command::Belyi(BelyiCommand::VerifyDeg8) => c::verify(&[4]),
        Command::Belyi(BelyiCommand::Example43) => c::example43(&cfg),
        Command::Ribbon(RibbonCommand::Enumerate { degrees, genus, faces, loopless, feasible }) => {
            c::enumerate(&degrees, genus, faces, loopless, feasible.as_deref())
        }
        Command::Ribbon(RibbonCommand::Aut { graph, labels }) => c::aut(&graph, labels.as_deref()),
        Command::Ribbon(RibbonCommand::Dessin { a, b, c: cc }) => c::dessin(&a, &b, &cc),
        Command::Periods(f) => c::periods(&cfg, &f),
        Command::FindMu { lambda } => c::find_mu(&cfg, &lambda),
        Command::EdgeLengths { family, max_residual } => c::edge_lengths(&cfg, &family, max_residual),
        Command::Trace { map, lambda, mu, start, svg } => {
            c::trace(&cfg, map.as_deref(), lambda.as_deref(), mu.as_deref(), &start, svg.as_deref())
        }
        Command::ReproducePaper { suite } => c::reproduce(&suite),
    }?;
    if cfg.format == Format::Svg && report.svg.is_none() {
        return Err(Failure::Usage("this command has no SVG output".into()));
    }
    Ok((report, cfg.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code())
        }
        Err(f) => {
            let diag = serde_json::json!({ "error": { "kind": f.kind(), "message": f.to_string() } });
            eprintln!("{diag}");
            ExitCode::from(f.exit_code())
        }
    }
}
