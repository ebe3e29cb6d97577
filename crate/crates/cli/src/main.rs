use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use endomatroid::corpus::{list_examples, run_example};
use endomatroid::document::{parse_matrix_document, AnyModule, MatrixDocument};
use endomatroid::matroid::{format_subset, k_subsets};
use endomatroid::report;
use endomatroid::scalars::Val;
use endomatroid::{with_module, Error, Result};

/// Matroids, valuations and flocks of modules over endomorphism rings.
#[derive(Debug, Parser)]
#[command(name = "endomatroid", version)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel enumeration (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The matroid on the coordinates.
    Matroid(Input),
    /// Valuations of the matroid.
    #[command(subcommand)]
    Valuation(ValuationCmd),
    /// The module realizing the dual matroid.
    Dual(Input),
    /// The saturation of the module.
    Saturate(Input),
    /// The orthogonal complement.
    Perp(Input),
    /// Slices of the linear flock.
    #[command(subcommand)]
    Flock(FlockCmd),
    /// Point sampling on the group.
    #[command(subcommand)]
    Sample(SampleCmd),
    /// The bundled examples.
    #[command(subcommand)]
    Examples(ExamplesCmd),
    /// Run every invariant check on a module.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
}

#[derive(Debug, Args)]
struct Input {
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ValuationCmd {
    /// `B ↦ v(det A_B)`.
    Lindstrom(Input),
}

#[derive(Debug, Subcommand)]
enum FlockCmd {
    /// The subspace at one point, e.g. `--alpha 0,0,0,1`.
    Slice {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i64>,
    },
    /// Verify the flock axioms on the box of the given radius.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
}

#[derive(Debug, Subcommand)]
enum SampleCmd {
    /// Check that the complement's equations vanish on sampled points.
    Verify {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesCmd {
    List,
    Run { id: String },
}

/// What a command produced: a JSON value, its human rendering and whether
/// every check passed.
struct Outcome {
    json: serde_json::Value,
    human: String,
    ok: bool,
}

impl Outcome {
    fn new(value: &impl Serialize, human: String, ok: bool) -> Self {
        Outcome {
            json: serde_json::to_value(value).expect("reports serialize"),
            human,
            ok,
        }
    }
}

fn load(path: &Path) -> Result<(MatrixDocument, AnyModule)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_document(&bytes)
}

fn module_outcome(m: &AnyModule, base: usize) -> Outcome {
    let doc = report::module_document(m, base);
    let human = with_module!(m, n => n.format());
    Outcome::new(&doc, human, true)
}

fn run(cli: Cli) -> Result<Outcome> {
    Ok(match cli.command {
        Command::Matroid(Input { file }) => {
            let (doc, m) = load(&file)?;
            let mj = report::matroid(&m, doc.index_base)?;
            let human = format!(
                "rank {} on {} elements, {} bases\n{}",
                mj.r,
                mj.n,
                mj.bases.len(),
                mj.bases
                    .iter()
                    .map(|b| format!("{{{}}}", b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Outcome::new(&mj, human, true)
        }
        Command::Valuation(ValuationCmd::Lindstrom(Input { file })) => {
            let (doc, m) = load(&file)?;
            let vm = report::lindstrom(&m)?;
            let mut human = String::from("basis\tmu\tnormalized\n");
            let norm = vm.normalized();
            for b in k_subsets(vm.ground_size(), vm.rank()) {
                let show = |v: Val| v.to_string();
                human.push_str(&format!(
                    "{}\t{}\t{}\n",
                    format_subset(b, doc.index_base),
                    show(vm.mu(b)),
                    show(norm.mu(b))
                ));
            }
            Outcome::new(&vm.to_json(doc.index_base), human, true)
        }
        Command::Dual(Input { file }) => {
            let (doc, m) = load(&file)?;
            module_outcome(&report::dual(&m)?, doc.index_base)
        }
        Command::Saturate(Input { file }) => {
            let (doc, m) = load(&file)?;
            module_outcome(&report::saturate(&m)?, doc.index_base)
        }
        Command::Perp(Input { file }) => {
            let (doc, m) = load(&file)?;
            module_outcome(&report::perp(&m)?, doc.index_base)
        }
        Command::Flock(FlockCmd::Slice { file, alpha }) => {
            let (_, m) = load(&file)?;
            let s = report::flock_slice(&m, &alpha)?;
            let human = format!("dimension {}\n{}", s.cols, s.render()?);
            Outcome::new(&s, human, true)
        }
        Command::Flock(FlockCmd::Check { file, radius }) => {
            let (_, m) = load(&file)?;
            let r = report::flock_check(&m, radius)?;
            let human = format!(
                "{} points, {} slices: {}\n{}",
                r.points,
                r.slices_computed,
                if r.ok() { "ok" } else { "VIOLATED" },
                r.violations.join("\n")
            );
            let ok = r.ok();
            Outcome::new(&r, human, ok)
        }
        Command::Sample(SampleCmd::Verify { module, count, seed }) => {
            let (_, m) = load(&module)?;
            let r = report::sample_verify(&m, count, seed)?;
            let human = format!(
                "{} points (seed {}): equations {}",
                r.count,
                r.seed,
                if r.annihilated { "vanish" } else { "do not vanish" }
            );
            let ok = r.annihilated;
            Outcome::new(&r, human, ok)
        }
        Command::Examples(ExamplesCmd::List) => {
            let ids = list_examples();
            Outcome::new(&ids, ids.join("\n"), true)
        }
        Command::Examples(ExamplesCmd::Run { id }) => {
            let r = run_example(&id)?;
            let ok = r.ok();
            Outcome::new(&r, r.render(), ok)
        }
        Command::Check { file, radius } => {
            let (_, m) = load(&file)?;
            let r = report::check(&m, radius)?;
            let ok = r.ok();
            Outcome::new(&r, r.render(), ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let text = if json {
                serde_json::to_string_pretty(&out.json).expect("values serialize")
            } else {
                out.human.trim_end().to_string()
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
