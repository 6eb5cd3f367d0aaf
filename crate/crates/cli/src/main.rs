//! `pseudoknot` command-line tool.

mod input;
mod render;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudoknot::moves::{family, find_flype_sites, scramble_with, shadow_flype_pd, FlypeSite, INSERT_BIAS};
use pseudoknot::{compute_i, jones, wereset, DecoratedChordDiagram, KnotTable, ResolvedPD, Sign};
use serde_json::json;
use thiserror::Error;

use input::{Diagram, InputFormat};

#[derive(Debug, Error)]
enum CliError {
    /// Bad input, arguments or files. Exit code 2.
    #[error("{0}")]
    User(String),
    /// A library invariant failed. Exit code 1.
    #[error("internal error: {0}")]
    Internal(String),
}

fn user(e: impl std::fmt::Display) -> CliError {
    CliError::User(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    /// Brace notation for were-sets; text elsewhere.
    Paper,
}

#[derive(Parser, Debug)]
#[command(name = "pseudoknot", version, about = "Pseudoknot invariants: were-sets, chord-diagram invariant, flypes")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Input format; detected from the first token by default.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    /// Knot table file replacing the bundled table.
    #[arg(long, global = true, env = "PSEUDOKNOT_TABLE")]
    table: Option<PathBuf>,
    /// Worker threads for were-set enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The decorated chord diagram invariant.
    I { input: PathBuf },
    /// Knot types of all resolutions with their probabilities.
    Wereset { input: PathBuf },
    /// Fix every precrossing, in increasing id order.
    Resolve {
        input: PathBuf,
        /// One `+` or `-` per precrossing.
        #[arg(long)]
        choices: String,
    },
    /// Jones polynomial and table lookup of a diagram without precrossings.
    Jones { input: PathBuf },
    /// Shadow flype of a PD code at a site read from a JSON file.
    Flype {
        input: PathBuf,
        #[arg(long)]
        site: PathBuf,
    },
    /// Valid flype sites of a PD code.
    Sites { input: PathBuf },
    /// Writes a counterexample pair and a manifest to a directory.
    Family {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Applies seeded random Reidemeister and pseudo-Reidemeister moves.
    Scramble {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        steps: usize,
        /// Probability that a step inserts crossings.
        #[arg(long, default_value_t = INSERT_BIAS)]
        bias: f64,
    },
    /// SVG drawing of the Gauss diagram or, with `--invariant`, of its invariant.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        invariant: bool,
    },
    /// Validates an input and summarizes it.
    Check { input: PathBuf },
    /// Prints the knot table in use.
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::User(_) => 2,
                CliError::Internal(_) => 1,
            })
        }
    }
}

fn load_table(cfg: &Config) -> Result<KnotTable, CliError> {
    match &cfg.table {
        None => Ok(KnotTable::bundled()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| user(format!("{}: {e}", p.display())))?;
            KnotTable::from_text(&text).map_err(|e| user(format!("{}: {e}", p.display())))
        }
    }
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
}

fn chord_rows(c: &DecoratedChordDiagram) -> Vec<[i64; 3]> {
    c.chords().into_iter().map(|(a, b, d)| [a as i64, b as i64, d]).collect()
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = &cli.config;
    let load = |p: &PathBuf| Diagram::load(p, cfg.input_format);
    let json = cfg.format == OutputFormat::Json;
    match &cli.command {
        Command::I { input } => {
            let c = compute_i(&load(input)?.to_gauss());
            let canonical = c.canonical_form().to_hex();
            if json {
                return Ok(json_line(json!({
                    "canonical": canonical,
                    "positions": c.positions(),
                    "chords": chord_rows(&c),
                })));
            }
            if c.is_empty() {
                return Ok("empty\n".into());
            }
            let mut out = format!("canonical {canonical}\n");
            for (a, b, d) in c.chords() {
                out.push_str(&format!("{a} {b} {d}\n"));
            }
            Ok(out)
        }
        Command::Wereset { input } => {
            let d = load(input)?.require_pd("wereset")?;
            let w = wereset(&d, &load_table(cfg)?, cfg.workers as usize).map_err(user)?;
            Ok(match cfg.format {
                OutputFormat::Json => json_line(serde_json::to_value(&w).map_err(internal)?),
                OutputFormat::Paper => format!("{}\n", w.brace_notation()),
                OutputFormat::Text => w.to_string(),
            })
        }
        Command::Resolve { input, choices } => {
            let d = load(input)?;
            let ids = d.precrossing_ids();
            let signs: Vec<Sign> = choices
                .chars()
                .map(|c| Sign::from_char(c).ok_or_else(|| user(format!("invalid choice {c:?}, expected + or -"))))
                .collect::<Result<_, _>>()?;
            if signs.len() != ids.len() {
                return Err(user(format!("{} choices for {} precrossings", signs.len(), ids.len())));
            }
            let choice: BTreeMap<u32, Sign> = ids.into_iter().zip(signs).collect();
            let text = match d {
                Diagram::Pd(pd) => pd.resolve(&choice).map_err(user)?.to_string(),
                Diagram::Gauss(g) => g.resolve(&choice).map_err(user)?.to_string(),
            };
            Ok(if json { json_line(json!({ "diagram": text })) } else { format!("{text}\n") })
        }
        Command::Jones { input } => {
            let d = load(input)?.require_pd("jones")?;
            let r = ResolvedPD::try_from(d).map_err(user)?;
            let j = jones(&r).map_err(internal)?;
            let class = load_table(cfg)?.lookup(&j);
            let name = match &class {
                pseudoknot::Classification::Known(k) => k.to_string(),
                pseudoknot::Classification::Unknown(_) => "unknown".to_string(),
            };
            if json {
                return Ok(json_line(json!({
                    "jones": j.display("t"),
                    "compact": j.to_compact(),
                    "writhe": r.writhe(),
                    "knot": name,
                })));
            }
            Ok(format!("{}\n{name}\n", j.display("t")))
        }
        Command::Flype { input, site } => {
            let d = load(input)?.require_pd("flype")?;
            let text = fs::read_to_string(site).map_err(|e| user(format!("{}: {e}", site.display())))?;
            let site: FlypeSite = serde_json::from_str(&text).map_err(|e| user(format!("flype site: {e}")))?;
            let e = shadow_flype_pd(&d, &site).map_err(user)?;
            Ok(if json { json_line(json!({ "diagram": e.to_string() })) } else { format!("{e}\n") })
        }
        Command::Sites { input } => {
            let d = load(input)?.require_pd("sites")?;
            let sites = find_flype_sites(&d).map_err(user)?;
            if json {
                return Ok(json_line(serde_json::to_value(&sites).map_err(internal)?));
            }
            Ok(sites.iter().map(|s| format!("{}\n", serde_json::to_string(s).expect("site serializes"))).collect())
        }
        Command::Family { m, n, out } => {
            let f = family(*m, *n).map_err(user)?;
            fs::create_dir_all(out).map_err(|e| user(format!("{}: {e}", out.display())))?;
            let manifest = json!({
                "m": m,
                "n": n,
                "first": "first.pd",
                "second": "second.pd",
                "site": f.site,
            });
            let write = |name: &str, body: String| {
                fs::write(out.join(name), body).map_err(|e| user(format!("{}: {e}", out.join(name).display())))
            };
            write("first.pd", format!("{}\n", f.first))?;
            write("second.pd", format!("{}\n", f.second))?;
            write("manifest.json", json_line(manifest.clone()))?;
            Ok(if json { json_line(manifest) } else { format!("wrote {}\n", out.display()) })
        }
        Command::Scramble { input, seed, steps, bias } => {
            if !(0.0..=1.0).contains(bias) {
                return Err(user("bias must lie in [0, 1]"));
            }
            let g = load(input)?.to_gauss();
            let s = scramble_with(&g, *seed, *steps, *bias);
            if json {
                return Ok(json_line(json!({ "diagram": s.diagram.to_string(), "moves": s.applied })));
            }
            Ok(format!("{}\n", s.diagram))
        }
        Command::Render { input, out, invariant } => {
            let g = load(input)?.to_gauss();
            let svg = if *invariant { render::chord_svg(&compute_i(&g)) } else { render::gauss_svg(&g) };
            fs::write(out, svg).map_err(|e| user(format!("{}: {e}", out.display())))?;
            Ok(String::new())
        }
        Command::Check { input } => {
            let d = load(input)?;
            let g = d.to_gauss();
            let pres = g.precrossing_ids().len();
            let summary = json!({
                "format": d.format_name(),
                "classical": g.crossing_ids().len() - pres,
                "precrossings": pres,
                "shadow": g.tokens().iter().all(|t| t.is_pre()),
                "invariant": compute_i(&g).canonical_form().to_hex(),
                "even": g.prechord_diagram().evenness_check(),
            });
            if json {
                return Ok(json_line(summary));
            }
            let obj = summary.as_object().expect("summary is an object");
            Ok(obj.iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
        }
        Command::Table => {
            let t = load_table(cfg)?;
            if json {
                let rows: Vec<_> = t
                    .entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name.to_string(),
                            "crossing_number": e.crossing_number,
                            "amphichiral": e.amphichiral,
                            "jones": e.jones.display("t"),
                        })
                    })
                    .collect();
                return Ok(json_line(json!(rows)));
            }
            Ok(t.to_text())
        }
    }
}
