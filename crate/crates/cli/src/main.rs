//! `polyverse`: build polynomial constructions from interchange files and run
//! the seeded law-checking suites.
//!
//! Exit codes: 0 when every check passes, 1 on any law failure, 2 on an input
//! or parse error, 3 when every instance exceeded the enumeration cap.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyverse::cell::{hcomp, vcomp, PolyMorphism};
use polyverse::finset::{with_enumeration_cap, FinFamily, FinMap, FinSet, DEFAULT_ENUMERATION_CAP};
use polyverse::interchange::Interchange;
use polyverse::internalcat::{equivalence_table, internal_full_subcat, InternalCategory};
use polyverse::naturalmodel::{mk_bool_universe, mk_skewed_universe, Universe};
use polyverse::poly::{compose, extend, slice_reduce_morphism, Polynomial};
use polyverse::suite::{generate_random, run_model_suite, run_suite, InstanceGenConfig, Report, KINDS, SUITES};
use polyverse::Label;

#[derive(Parser)]
#[command(name = "polyverse", version, about = "Polynomials over finite sets and their coherence laws")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Opts {
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random instances per suite.
    #[arg(long, global = true, default_value_t = 20)]
    count: usize,
    /// Largest size of a randomly drawn set.
    #[arg(long, global = true, default_value_t = 3)]
    max_size: usize,
    /// Largest set any enumeration may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Opts {
    fn config(&self) -> InstanceGenConfig {
        InstanceGenConfig { seed: self.seed, count: self.count, max_size: self.max_size, cap: self.cap }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Constructions on polynomials.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Morphisms of polynomials (2-cells).
    #[command(subcommand)]
    Cell(CellCommand),
    /// Pentagon and triangle checks.
    #[command(subcommand)]
    Coherence(CoherenceCommand),
    /// Internal full subcategories.
    #[command(subcommand)]
    Internal(InternalCommand),
    /// Universes and the structure they carry.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Run a named suite.
    Run {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Check this universe instead of the built-in and random ones.
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Print a seeded random instance as interchange JSON.
    Generate {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(KINDS))]
        kind: String,
    },
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Composite `outer · inner`.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Extension of a polynomial at a family over its source.
    Extend { poly: PathBuf, family: PathBuf },
}

#[derive(Subcommand)]
enum CellCommand {
    /// Validate a morphism and report whether it is cartesian.
    Check { morphism: PathBuf },
    /// Composite `second ∘ first`, vertical unless `--horizontal`.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        horizontal: bool,
    },
}

#[derive(Subcommand)]
enum CoherenceCommand {
    /// Pentagon, triangle and local codiscreteness on random instances.
    Run,
}

#[derive(Subcommand)]
enum InternalCommand {
    /// The internal full subcategory of a map `B → A`.
    Cat { map: PathBuf },
    /// Compare the four characterisations of adjustments between two
    /// parallel cartesian morphisms, componentwise over `I × J`.
    CheckEquiv { phi: PathBuf, psi: PathBuf },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Every universe suite on one universe.
    Check { universe: PathBuf },
    /// The pseudomonad (and, with `--algebra`, pseudoalgebra) laws.
    Pseudomonad {
        universe: PathBuf,
        #[arg(long)]
        algebra: bool,
    },
    /// The type isomorphisms.
    Isos { universe: PathBuf },
    /// Print a built-in universe.
    Builtin {
        #[arg(value_enum)]
        which: Builtin,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Bool,
    Skewed,
}

enum Output {
    Reports(Vec<Report>),
    Value(Value, i32),
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load<T: Interchange>(path: &Path) -> anyhow::Result<T> {
    let text = read_input(path)?;
    T::from_json_str(&text).with_context(|| format!("in {}", path.display()))
}

fn category_json(cat: &InternalCategory) -> Value {
    json!({
        "obj": cat.obj.to_json(),
        "mor": cat.mor.to_json(),
        "dom": cat.dom.to_json(),
        "cod": cat.cod.to_json(),
        "ident": cat.ident.to_json(),
        "comp": cat.comp.to_json(),
    })
}

/// Pairs of 1 ⇸ 1 components, reducing general morphisms along the slice.
fn components(
    phi: &PolyMorphism,
    psi: &PolyMorphism,
) -> anyhow::Result<Vec<(Option<Label>, PolyMorphism, PolyMorphism)>> {
    let unit = FinSet::unit();
    if phi.src().i() == &unit && phi.src().j() == &unit {
        return Ok(vec![(None, phi.clone(), psi.clone())]);
    }
    let (rphi, rpsi) = (slice_reduce_morphism(phi), slice_reduce_morphism(psi));
    let mut pairs = Vec::new();
    for z in rphi.src().base().iter() {
        pairs.push((Some(z.clone()), rphi.component(z)?, rpsi.component(z)?));
    }
    Ok(pairs)
}

fn check_equiv(phi: &PolyMorphism, psi: &PolyMorphism) -> anyhow::Result<Output> {
    let mut all_agree = true;
    let mut table = Vec::new();
    for (z, phi, psi) in components(phi, psi)? {
        let rows = equivalence_table(&phi, &psi)?;
        let agree = rows.iter().all(|(_, v)| v.iter().all(|&b| b == v[0]));
        all_agree &= agree;
        let valid = rows.iter().filter(|(_, v)| v[3]).count();
        let rows: Vec<Value> = rows
            .iter()
            .map(|(alpha, v)| {
                json!({
                    "alpha": alpha.to_json()["map"],
                    "natural": v[0],
                    "fibrewise-natural": v[1],
                    "commutes": v[2],
                    "adjustment": v[3],
                })
            })
            .collect();
        table.push(
            json!({ "component": z, "candidates": rows.len(), "adjustments": valid, "agree": agree, "rows": rows }),
        );
    }
    let value = json!({ "agree": all_agree, "components": table });
    Ok(Output::Value(value, if all_agree { 0 } else { 1 }))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let cfg = cli.opts.config();
    let model = |names: &[&str], path: &Path| -> anyhow::Result<Output> {
        let u: Universe = load(path)?;
        let reports = names.iter().map(|n| run_model_suite(n, &u, &cfg)).collect::<Result<_, _>>()?;
        Ok(Output::Reports(reports))
    };
    Ok(match &cli.command {
        Command::Poly(PolyCommand::Compose { outer, inner }) => {
            let (g, f): (Polynomial, Polynomial) = (load(outer)?, load(inner)?);
            Output::Value(compose(&g, &f)?.poly.to_json(), 0)
        }
        Command::Poly(PolyCommand::Extend { poly, family }) => {
            let (p, x): (Polynomial, FinFamily) = (load(poly)?, load(family)?);
            Output::Value(extend(&p, &x)?.to_json(), 0)
        }
        Command::Cell(CellCommand::Check { morphism }) => {
            let phi: PolyMorphism = load(morphism)?;
            let value = json!({ "valid": true, "cartesian": phi.is_cartesian(), "vertex": phi.vertex().len() });
            Output::Value(value, 0)
        }
        Command::Cell(CellCommand::Compose { first, second, horizontal }) => {
            let (phi, psi): (PolyMorphism, PolyMorphism) = (load(first)?, load(second)?);
            let composite = if *horizontal { hcomp(&psi, &phi)? } else { vcomp(&psi, &phi)? };
            Output::Value(composite.to_json(), 0)
        }
        Command::Coherence(CoherenceCommand::Run) => Output::Reports(vec![run_suite("coherence", &cfg)?]),
        Command::Internal(InternalCommand::Cat { map }) => {
            let f: FinMap = load(map)?;
            let cat = internal_full_subcat(&f)?;
            cat.check_laws()?;
            Output::Value(category_json(&cat), 0)
        }
        Command::Internal(InternalCommand::CheckEquiv { phi, psi }) => check_equiv(&load(phi)?, &load(psi)?)?,
        Command::Model(ModelCommand::Check { universe }) => {
            model(&["pseudomonad", "pseudoalgebra", "type-isos"], universe)?
        }
        Command::Model(ModelCommand::Pseudomonad { universe, algebra }) => {
            let names: &[&str] = if *algebra { &["pseudomonad", "pseudoalgebra"] } else { &["pseudomonad"] };
            model(names, universe)?
        }
        Command::Model(ModelCommand::Isos { universe }) => model(&["type-isos"], universe)?,
        Command::Model(ModelCommand::Builtin { which }) => {
            let u = match which {
                Builtin::Bool => mk_bool_universe(),
                Builtin::Skewed => mk_skewed_universe(),
            };
            Output::Value(u.to_json(), 0)
        }
        Command::Run { suite, universe: Some(path) } => model(&[suite.as_str()], path)?,
        Command::Run { suite, universe: None } => Output::Reports(vec![run_suite(suite, &cfg)?]),
        Command::Generate { kind } => Output::Value(generate_random(kind, &cfg)?, 0),
    })
}

/// Failure beats cap exhaustion, which counts only when it is everywhere.
fn combined_exit(reports: &[Report]) -> i32 {
    let codes: Vec<i32> = reports.iter().map(Report::exit_code).collect();
    if codes.contains(&1) {
        1
    } else if !codes.is_empty() && codes.iter().all(|&c| c == 3) {
        3
    } else {
        0
    }
}

fn error_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<polyverse::Error>() {
        Some(e) if e.is_cap_exceeded() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_enumeration_cap(cli.opts.cap, || run(&cli));
    let (text, code) = match result {
        Ok(Output::Reports(reports)) => {
            let text: String = reports
                .iter()
                .map(|r| match cli.opts.format {
                    Format::Json => r.to_json_lines(),
                    Format::Text => r.to_text(),
                })
                .collect();
            (text, combined_exit(&reports))
        }
        Ok(Output::Value(value, code)) => {
            let text = match cli.opts.format {
                Format::Json => value.to_string(),
                Format::Text => serde_json::to_string_pretty(&value).expect("values serialize"),
            };
            (text + "\n", code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            (String::new(), error_code(&err))
        }
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
