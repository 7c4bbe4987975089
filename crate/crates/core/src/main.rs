use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clonoid::closure::{clonoid_slice, member, GeneratorFamily};
use clonoid::constructions::boolean;
use clonoid::terms::{self, NuWitness};
use clonoid::text;
use clonoid::verify::{run_verification, SUITES};
use clonoid::{
    bp_member, classify_boolean, cube_term_blocker, pol_slice, Algebra, Budget, Error,
    FiniteFunction, FunctionSet, Signature,
};

/// Clonoid workbench: closures, membership, polymorphisms, term detection
/// and classification of two-element target algebras.
///
/// Artifact arguments are a file path or inline text with ';' separating
/// lines. Algebra arguments also accept a Boolean algebra name such as
/// meet, not-0 or maj.
#[derive(Parser)]
#[command(name = "clonoid", version)]
struct Cli {
    /// Maximum number of elements any computed set may hold.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_MAX_SET_SIZE)]
    budget: usize,
    /// Largest near-unanimity arity searched by `classify`.
    #[arg(long, global = true, default_value_t = 5)]
    nu_cap: usize,
    /// Seed for randomized verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TermKind {
    Malcev,
    Majority,
    Nu,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an algebra on {0,1} by the number of clonoids it admits.
    Classify { algebra: String },
    /// Enumerate the functions of one arity preserving every relation pair.
    Pol {
        pairs: String,
        #[arg(long)]
        arity: usize,
    },
    /// Enumerate one arity slice of the clonoid generated by functions.
    Generate {
        generators: String,
        algebra: String,
        #[arg(long)]
        arity: usize,
    },
    /// Decide whether a function lies in a generated clonoid.
    Member {
        function: String,
        generators: String,
        algebra: String,
        /// Decide via minors of arity |A|^(n-1), given an n-ary
        /// near-unanimity term of the algebra.
        #[arg(long)]
        nu_arity: Option<usize>,
    },
    /// Search for a cube term blocker.
    Blocker { algebra: String },
    /// Enumerate term operations of a given kind.
    Terms {
        algebra: String,
        #[arg(long, value_enum)]
        kind: TermKind,
        /// Arity for `--kind nu`.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Run a named verification suite with optional key=value parameters.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        params: Vec<String>,
    },
}

fn read_artifact(arg: &str) -> Result<String, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.replace(';', "\n"))
    }
}

fn read_algebra(arg: &str) -> Result<Algebra, Error> {
    if !Path::new(arg).is_file() {
        if let Some(b) = boolean::by_name(arg) {
            return Ok(b);
        }
    }
    text::parse_algebra(&read_artifact(arg)?)
}

fn read_family(arg: &str) -> Result<GeneratorFamily, Error> {
    let fns = text::parse_functions(&read_artifact(arg)?)?;
    let first = &fns[0].function;
    let (s, t) = (first.source_size(), first.target_size());
    GeneratorFamily::new(s, t, fns.into_iter().map(|n| n.function).collect())
}

fn read_function(arg: &str) -> Result<FiniteFunction, Error> {
    let mut fns = text::parse_functions(&read_artifact(arg)?)?;
    if fns.len() != 1 {
        return Err(Error::Input(format!(
            "expected exactly one function, found {}",
            fns.len()
        )));
    }
    Ok(fns.remove(0).function)
}

fn table(f: &FiniteFunction) -> String {
    f.table_string()
}

fn set_json(s: &FunctionSet) -> Value {
    let sig = s.signature();
    json!({
        "source": sig.source_size,
        "target": sig.target_size,
        "arity": sig.arity,
        "size": s.len(),
        "members": s.iter().map(table).collect::<Vec<_>>(),
    })
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let budget = Budget::new(cli.budget)?;
    match &cli.command {
        Command::Classify { algebra } => {
            let b = read_algebra(algebra)?;
            let r = classify_boolean(&b, cli.nu_cap, budget)?;
            let mut lines = vec![format!("verdict {}", r.verdict.as_str())];
            let nu = match &r.witness_nu {
                Some(NuWitness::Found(f)) => {
                    lines.push(format!("nu {} {}", f.arity(), table(f)));
                    json!({"arity": f.arity(), "table": table(f)})
                }
                Some(NuWitness::BeyondCap(cap)) => {
                    lines.push(format!("nu beyond arity {cap}"));
                    json!({"beyond_cap": cap})
                }
                None => Value::Null,
            };
            if let Some(f) = &r.witness_majority {
                lines.push(format!("majority {}", table(f)));
            }
            if let Some(f) = &r.witness_malcev {
                lines.push(format!("malcev {}", table(f)));
            }
            if let Some(c) = r.containing_maximal_clone {
                lines.push(format!("maximal-clone {c}"));
            }
            lines.push(format!(
                "blocker {}",
                r.blocker
                    .as_ref()
                    .map_or("none".to_string(), |v| v.to_string())
            ));
            lines.push(format!("idempotent {}", r.idempotent));
            if let Some(agrees) = r.idempotent_cross_check {
                lines.push(format!(
                    "blocker-check {}",
                    if agrees { "agrees" } else { "disagrees" }
                ));
            }
            let json = json!({
                "verdict": r.verdict,
                "majority": r.witness_majority.as_ref().map(table),
                "malcev": r.witness_malcev.as_ref().map(table),
                "near_unanimity": nu,
                "maximal_clone": r.containing_maximal_clone.map(|c| c.id()),
                "blocker": r.blocker.as_ref().map(|v| v.elements().to_vec()),
                "idempotent": r.idempotent,
                "blocker_check": r.idempotent_cross_check,
            });
            Ok(Output::ok(lines.join("\n"), json))
        }
        Command::Pol { pairs, arity } => {
            let pairs = text::parse_pairs(&read_artifact(pairs)?)?;
            let sig = Signature::new(pairs[0].source_size(), pairs[0].target_size(), *arity)?;
            let s = pol_slice(&pairs, sig, budget)?;
            Ok(Output::ok(text::format_set(&s), set_json(&s)))
        }
        Command::Generate {
            generators,
            algebra,
            arity,
        } => {
            let family = read_family(generators)?;
            let b = read_algebra(algebra)?;
            let s = clonoid_slice(&family, &b, *arity, budget)?;
            Ok(Output::ok(text::format_set(&s), set_json(&s)))
        }
        Command::Member {
            function,
            generators,
            algebra,
            nu_arity,
        } => {
            let f = read_function(function)?;
            let family = read_family(generators)?;
            let b = read_algebra(algebra)?;
            let found = match nu_arity {
                None => member(&f, &family, &b, budget)?,
                Some(n) => {
                    let r = family.source_size().pow(n.saturating_sub(1) as u32);
                    let slice = clonoid_slice(&family, &b, r, budget)?;
                    bp_member(&f, &slice, *n)?
                }
            };
            Ok(Output::ok(found.to_string(), json!({ "member": found })))
        }
        Command::Blocker { algebra } => {
            let b = read_algebra(algebra)?;
            let v = cube_term_blocker(&b);
            let text = format!(
                "blocker {}",
                v.as_ref().map_or("none".to_string(), |v| v.to_string())
            );
            Ok(Output::ok(
                text,
                json!({ "blocker": v.map(|v| v.elements().to_vec()) }),
            ))
        }
        Command::Terms {
            algebra,
            kind,
            arity,
        } => {
            let b = read_algebra(algebra)?;
            let s = match (kind, arity) {
                (TermKind::Malcev, _) => terms::malcev_terms(&b, budget)?,
                (TermKind::Majority, _) => terms::majority_terms(&b, budget)?,
                (TermKind::Nu, Some(n)) => terms::nu_terms(&b, *n, budget)?,
                (TermKind::Nu, None) => return Err(Error::Input("--kind nu needs --arity".into())),
            };
            Ok(Output::ok(text::format_set(&s), set_json(&s)))
        }
        Command::Verify { suite, params } => {
            let mut pairs = params
                .iter()
                .map(|p| {
                    p.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| Error::Input(format!("parameter '{p}' is not key=value")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(seed) = cli.seed {
                if suite == "thm-2.1" && !pairs.iter().any(|(k, _)| k == "seed") {
                    pairs.push(("seed".into(), seed.to_string()));
                }
            }
            let report = run_verification(suite, &pairs, budget)?;
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Output {
                text: report.to_text().trim_end().to_string(),
                json,
                code: report.exit_code() as u8,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json value")
                ),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.format == Format::Json {
                let kind = if e.is_budget() { "budget" } else { "input" };
                println!("{}", json!({ "error": kind, "message": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}
