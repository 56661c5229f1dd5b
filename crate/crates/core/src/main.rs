use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hkcone::fixtures::{run_example_suite, run_table_suite, VerificationReport};
use hkcone::format::format_rat;
use hkcone::input::{load_model, parse_class, parse_gram, parse_int_list, parse_rat, int_matrix};
use hkcone::lattice::{pair, ClassVector, QuadLattice};
use hkcone::model::HKModel;
use hkcone::mukai::{moduli_dimension, mukai_pair, mukai_vector_from_chern, period_lattice, MukaiVector};
use hkcone::rays::{ample_certify, classify_ray, cone_membership, effective_divisor_position, enumerate_ray_candidates};
use hkcone::Int;

#[derive(Parser)]
#[command(name = "hkcone", version, about = "Exact cone-of-curves computations on K3^[n] and Kummer models")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a model from a JSON file and print its lattices.
    Model {
        #[arg(long)]
        model: PathBuf,
    },
    /// Pair two classes (curve classes unless --divisor).
    Pair {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        divisor: bool,
    },
    /// Smallest multiple of a curve class lying in the divisor lattice.
    Saturate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Full invariant report for a curve class.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// All negative curve classes with (R,R) >= floor and 0 < R.g <= max-degree.
    Enumerate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_degree: u64,
        /// Defaults to -c_X.
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<String>,
    },
    /// Test a divisor against every candidate ray up to a degree bound.
    Ample {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 20)]
        max_degree: u64,
    },
    /// Decide membership of a curve class in the cone up to a degree bound.
    ConeMember {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 20)]
        max_degree: u64,
    },
    /// Place a divisor class relative to the effective cone bounds.
    Position {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Mukai lattice computations on a surface.
    Mukai {
        #[command(subcommand)]
        op: MukaiCommand,
    },
    /// Recompute the fixture ledger.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(clap::Args)]
struct SurfaceArgs {
    /// Gram matrix of the surface Picard lattice, e.g. "[[4]]".
    #[arg(long)]
    surface: String,
    /// Comma-separated basis labels (default f, or f1,f2,...).
    #[arg(long)]
    labels: Option<String>,
}

#[derive(Subcommand)]
enum MukaiCommand {
    /// Mukai pairing <v,w>.
    Pair {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Mukai vector of a sheaf from rank and Chern classes.
    Vector {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        rank: String,
        /// Coordinates of c1.
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
    },
    /// Dimension <v,v> + 2 of the moduli space.
    Dim {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Period lattice v-perp / Zv of an isotropic vector.
    Period {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tables,
    Examples,
    All,
}

type CliResult = Result<ExitCode, Box<dyn Error>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(format: Format, text: impl std::fmt::Display, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn curve(model: &HKModel, text: &str) -> Result<ClassVector, Box<dyn Error>> {
    let slot = model.dtype().slot_labels().map(|(_, c)| c);
    Ok(parse_class(model.curves(), text, slot)?)
}

fn divisor(model: &HKModel, text: &str) -> Result<ClassVector, Box<dyn Error>> {
    let slot = model.dtype().slot_labels().map(|(d, _)| d);
    Ok(parse_class(model.divisors(), text, slot)?)
}

fn run(cli: &Cli) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Model { model } => {
            let m = load_model(model)?;
            let text = format!(
                "type: {}\nc_X: {} [{}]\nN1 labels: {}\nN1 gram: {}\nN_1 labels: {}\nN_1 gram: {}\ng: {} ((g,g) = {})",
                m.dtype(),
                format_rat(m.c()),
                m.c_status(),
                m.divisors().labels().join(", "),
                m.divisors().gram(),
                m.curves().labels().join(", "),
                m.curves().gram(),
                m.polarization(),
                format_rat(&m.polarization().square()),
            );
            let value = json!({
                "type": m.dtype().to_string(),
                "c": format_rat(m.c()),
                "c_status": m.c_status().to_string(),
                "divisor_labels": m.divisors().labels(),
                "divisor_gram": m.divisors().gram().to_string(),
                "curve_labels": m.curves().labels(),
                "curve_gram": m.curves().gram().to_string(),
                "g": m.polarization().to_string(),
            });
            emit(fmt, text, value);
        }
        Command::Pair { model, x, y, divisor: on_divisors } => {
            let m = load_model(model)?;
            let parse = if *on_divisors { divisor } else { curve };
            let p = pair(&parse(&m, x)?, &parse(&m, y)?)?;
            emit(fmt, format_rat(&p), json!({ "pairing": format_rat(&p) }));
        }
        Command::Saturate { model, class } => {
            let m = load_model(model)?;
            let r = curve(&m, class)?;
            let (t, rho) = m.saturate(&r)?;
            let div = m.divisibility(&rho)?;
            let text = format!(
                "t = {t}\nrho = {rho}\n(rho,rho) = {}\ndivisibility = {div}",
                format_rat(&rho.square())
            );
            let value = json!({
                "t": t.to_string(),
                "rho": rho.to_string(),
                "rho_square": format_rat(&rho.square()),
                "divisibility": div.to_string(),
            });
            emit(fmt, text, value);
        }
        Command::Classify { model, class } => {
            let m = load_model(model)?;
            let report = classify_ray(&m, &curve(&m, class)?)?;
            emit(fmt, &report, report.to_json());
        }
        Command::Enumerate { model, max_degree, floor } => {
            let m = load_model(model)?;
            let floor = match floor {
                Some(f) => parse_rat(f).ok_or_else(|| format!("bad rational `{f}`"))?,
                None => -m.c().clone(),
            };
            let rays = enumerate_ray_candidates(&m, *max_degree, &floor)?;
            let text = rays.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            let value = json!({
                "max_degree": max_degree,
                "floor": format_rat(&floor),
                "c_status": m.c_status().to_string(),
                "rays": rays.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            let text = if text.is_empty() { "(none)".to_string() } else { text };
            emit(fmt, text, value);
        }
        Command::Ample { model, h, max_degree } => {
            let m = load_model(model)?;
            let verdict = ample_certify(&m, &divisor(&m, h)?, *max_degree)?;
            emit(fmt, &verdict, verdict.to_json());
        }
        Command::ConeMember { model, class, max_degree } => {
            let m = load_model(model)?;
            let verdict = cone_membership(&m, &curve(&m, class)?, *max_degree)?;
            emit(fmt, &verdict, verdict.to_json());
        }
        Command::Position { model, class } => {
            let m = load_model(model)?;
            let pos = effective_divisor_position(&m, &divisor(&m, class)?)?;
            emit(fmt, pos, json!({ "position": pos }));
        }
        Command::Mukai { op } => mukai(fmt, op)?,
        Command::Verify { suite } => {
            let report = match suite {
                Suite::Tables => run_table_suite(),
                Suite::Examples => run_example_suite(),
                Suite::All => VerificationReport::merge("all", vec![run_table_suite(), run_example_suite()]),
            };
            emit(fmt, &report, report.to_json());
            return Ok(ExitCode::from(if report.passed() { 0 } else { 1 }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn surface_lattice(args: &SurfaceArgs) -> Result<Arc<QuadLattice>, Box<dyn Error>> {
    let rows = parse_gram(&args.surface)?;
    let labels: Vec<String> = match &args.labels {
        Some(l) => l.split(',').map(|s| s.trim().to_string()).collect(),
        None if rows.len() == 1 => vec!["f".to_string()],
        None => (1..=rows.len()).map(|i| format!("f{i}")).collect(),
    };
    Ok(QuadLattice::new("S", labels, int_matrix(&rows), true)?)
}

/// `"r,d1,...,dk,s"`.
fn mukai_vector(surface: &Arc<QuadLattice>, text: &str) -> Result<MukaiVector, Box<dyn Error>> {
    let xs = parse_int_list(text)?;
    if xs.len() != surface.rank() + 2 {
        return Err(format!("Mukai vector needs {} entries, got {}", surface.rank() + 2, xs.len()).into());
    }
    let d = ClassVector::from_bigints(surface, &xs[1..xs.len() - 1])?;
    Ok(MukaiVector::new(xs[0].clone(), d, xs[xs.len() - 1].clone())?)
}

fn mukai(fmt: Format, op: &MukaiCommand) -> Result<(), Box<dyn Error>> {
    match op {
        MukaiCommand::Pair { surface, v, w } => {
            let s = surface_lattice(surface)?;
            let p = mukai_pair(&mukai_vector(&s, v)?, &mukai_vector(&s, w)?)?;
            emit(fmt, &p, json!({ "pairing": p.to_string() }));
        }
        MukaiCommand::Vector { surface, rank, c1, c2 } => {
            let s = surface_lattice(surface)?;
            let r: Int = rank.trim().parse().map_err(|_| format!("bad rank `{rank}`"))?;
            let c2: Int = c2.trim().parse().map_err(|_| format!("bad c2 `{c2}`"))?;
            let c1 = ClassVector::from_bigints(&s, &parse_int_list(c1)?)?;
            let v = mukai_vector_from_chern(r, c1, c2)?;
            let text = format!("v = {v}\nchi = {}\n<v,v> = {}", v.euler_char(), mukai_pair(&v, &v)?);
            let value = json!({
                "r": v.r.to_string(),
                "c1": v.d.to_string(),
                "s": v.s.to_string(),
                "chi": v.euler_char().to_string(),
                "square": mukai_pair(&v, &v)?.to_string(),
            });
            emit(fmt, text, value);
        }
        MukaiCommand::Dim { surface, v } => {
            let s = surface_lattice(surface)?;
            let d = moduli_dimension(&mukai_vector(&s, v)?)?;
            emit(fmt, &d, json!({ "dimension": d.to_string() }));
        }
        MukaiCommand::Period { surface, v } => {
            let s = surface_lattice(surface)?;
            let p = period_lattice(&mukai_vector(&s, v)?)?;
            // Period lattices are integral.
            let det = hkcone::linalg::determinant(&p.gram().map(|x| x.to_integer()));
            let text = format!("labels: {}\ngram: {}\ndet: {det}", p.labels().join(", "), p.gram());
            let value = json!({
                "labels": p.labels(),
                "gram": p.gram().to_string(),
                "det": det.to_string(),
            });
            emit(fmt, text, value);
        }
    }
    Ok(())
}
