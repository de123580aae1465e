use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use realcat::balls::ball_poset_dot;
use realcat::cat::EnrichedCategory;
use realcat::error::Error;
use realcat::grid::ValueGrid;
use realcat::io::{self, CategoryDoc, WeightDoc};
use realcat::presheaf::DEFAULT_BOUND;
use realcat::suites::{self, SuiteConfig};
use realcat::tnorm::TNorm;
use realcat::value::Mode;

#[derive(Parser)]
#[command(name = "realcat", version, about = "Finite categories enriched in [0,1] over a continuous t-norm")]
struct Cli {
    /// T-norm: godel, product, lukasiewicz or ordinal[(lo,hi,inner),...].
    /// Overrides the t-norm of loaded files.
    #[arg(long, global = true)]
    tnorm: Option<String>,
    /// Value grid: `1/n` or an explicit list `{0, 1/3, 1}`.
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated candidates before giving up with exit code 3.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: u128,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the category axioms.
    Check { file: String },
    /// Classify a weight on a category.
    Classify { category: String, weight: String },
    /// Run a named law suite: tnorm, kan, kz, module, filters.
    Laws { suite: String },
    /// Emit the grid-radius formal-ball poset as DOT.
    Balls { category: String },
    /// Emit the Cauchy completion with the embedding of the original elements.
    Complete { category: String },
}

enum Failure {
    Semantic(Json),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidTNorm(_)
        | Error::InvalidGrid(_)
        | Error::Shape(_)
        | Error::OutOfRange(_)
        | Error::ModeMismatch => 2,
        Error::BoundExceeded { .. } | Error::CapExceeded(_) => 3,
        _ => 1,
    }
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Json) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

impl Cli {
    fn tnorm_override(&self) -> Result<Option<TNorm>, Error> {
        self.tnorm.as_deref().map(str::parse).transpose()
    }

    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }

    fn load(&self, path: &str) -> Result<EnrichedCategory, Error> {
        let mut doc = CategoryDoc::parse(&read(path)?)?;
        if let Some(t) = &self.tnorm {
            doc.tnorm = t.clone();
        }
        let mut x = doc.build()?;
        if let Some(g) = &self.grid {
            let grid = io::parse_grid_arg(g, x.tnorm())?;
            x = x.with_grid(grid)?;
        }
        io::convert_mode(&x, self.mode())
    }

    fn grid_for(&self, x: &EnrichedCategory) -> Result<ValueGrid, Error> {
        match &self.grid {
            Some(g) => io::parse_grid_arg(g, x.tnorm()),
            None => x.value_grid(),
        }
    }

    fn run(&self) -> Result<(), Failure> {
        match &self.command {
            Command::Check { file } => {
                let text = read(file)?;
                let doc = CategoryDoc::parse(&text)?;
                match doc.build() {
                    Ok(x) => {
                        print_json(&json!({"ok": true, "n": x.n(), "tnorm": x.tnorm().to_string()}));
                        Ok(())
                    }
                    Err(Error::NotACategory(v)) => Err(Failure::Semantic(json!({
                        "ok": false,
                        "message": v.to_string(),
                        "violation": v,
                    }))),
                    Err(e) => Err(e.into()),
                }
            }
            Command::Classify { category, weight } => {
                let x = self.load(category)?;
                let mut doc = WeightDoc::parse(&read(weight)?)?;
                if x.mode() == Mode::Float {
                    doc.values = doc.values.iter().map(|v| v.to_float()).collect();
                }
                let phi = doc.build(&x)?;
                let report = x.classify(&phi, self.bound, self.seed)?;
                let mut out = serde_json::to_value(&report).expect("serializable");
                out["seed"] = json!(self.seed);
                print_json(&out);
                Ok(())
            }
            Command::Laws { suite } => {
                let tnorm = self.tnorm_override()?.unwrap_or(TNorm::Lukasiewicz);
                let grid = self.grid.as_deref().map(|g| io::parse_grid_arg(g, &tnorm)).transpose()?;
                let cfg = SuiteConfig { tnorm, grid, seed: self.seed, bound: self.bound };
                let report = suites::run_suite(suite, &cfg)?;
                let out = serde_json::to_value(&report).expect("serializable");
                if report.pass {
                    print_json(&out);
                    Ok(())
                } else {
                    Err(Failure::Semantic(out))
                }
            }
            Command::Balls { category } => {
                let x = self.load(category)?;
                if x.mode() == Mode::Float {
                    return Err(Error::Unsupported("ball radii come from an exact grid; use --mode exact".into()).into());
                }
                let grid = self.grid_for(&x)?;
                emit(&ball_poset_dot(&x, &grid)?);
                Ok(())
            }
            Command::Complete { category } => {
                let x = self.load(category)?;
                let (c, embedding) = x.cauchy_completion(self.bound)?;
                let mut out = io::category_to_json(&c);
                out["embedding"] = json!(embedding);
                out["seed"] = json!(self.seed);
                print_json(&out);
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic(report)) => {
            print_json(&report);
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
