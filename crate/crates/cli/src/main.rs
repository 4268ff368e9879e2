//! `gdr` — seeded experiments on finite stand-ins for the generic digraph:
//! generate and certify extension-property digraphs, apply switching and
//! rotation transforms, classify maps against the reduct lattice, emit the
//! canonical-behaviour verdict tables, and run the verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gdr_core::behavior::{
    classify_behavior, classify_two_orbit, enumerate_behaviors, enumerate_two_orbit_behaviors,
};
use gdr_core::ep::{check_k_ep_over, extend_to_ep, random_digraph};
use gdr_core::lattice::classify_map;
use gdr_core::verify::{run_suite, VerifyConfig};
use gdr_core::{Digraph, Transform};

#[derive(Parser)]
#[command(name = "gdr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the primary artifact here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random digraph, optionally extended to satisfy the
    /// level-k extension property over the original vertices.
    Gen {
        #[arg(long)]
        n: usize,
        /// Extension-property level; omit for a plain random digraph.
        /// Level 3 enumerates triples cubically — expect a noticeably
        /// larger output.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply a transform specification to a digraph file.
    Transform {
        /// Digraph JSON file.
        input: PathBuf,
        /// Transform JSON file.
        spec: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify a vertex bijection between two digraphs against the reduct
    /// lattice.
    Classify {
        /// Source digraph JSON file.
        g: PathBuf,
        /// Target digraph JSON file.
        h: PathBuf,
        /// Map file: a JSON array of target indices.
        map: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the frozen behaviour verdict tables.
    Behaviors {
        #[arg(long, value_enum, default_value = "noconst")]
        mode: BehaviorMode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named verification suite (see `--help` for the list).
    Verify {
        /// One of: rot-orbits, psw-census, psw-preservation,
        /// rot-preservation, reverse-preservation,
        /// graph-parity-preservation, preservation, detection,
        /// edge-deletion, lattice-axioms, classification, behaviors, ep,
        /// back-and-forth, all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BehaviorMode {
    Noconst,
    Twoorbit,
}

fn write_artifact(output: &OutputArgs, content: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn load_digraph(path: &Path) -> Result<Digraph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Digraph::from_json(&text).with_context(|| format!("invalid digraph file {}", path.display()))
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { n, k, seed, output } => {
            let base = random_digraph(n, seed);
            let (digraph, report) = match k {
                Some(level) => {
                    let extended = extend_to_ep(&base, level, seed);
                    let scope: Vec<usize> = (0..n).collect();
                    let report = check_k_ep_over(&extended, level, &scope);
                    (extended, Some(report))
                }
                None => (base, None),
            };
            write_artifact(&output, &digraph.to_json())?;
            let pass = match &report {
                Some(r) => r.pass,
                None => true,
            };
            match output.format {
                Format::Json => {
                    if let Some(report) = &report {
                        eprintln!("{}", serde_json::to_string(report)?);
                    }
                }
                Format::Text => match &report {
                    Some(report) => eprintln!(
                        "extension property level {}: {} ({} vertices, {} edges)",
                        report.k,
                        if report.pass { "pass" } else { "FAIL" },
                        digraph.vertex_count(),
                        digraph.edge_count()
                    ),
                    None => eprintln!(
                        "random digraph: {} vertices, {} edges",
                        digraph.vertex_count(),
                        digraph.edge_count()
                    ),
                },
            }
            Ok(pass)
        }
        Command::Transform {
            input,
            spec,
            output,
        } => {
            let g = load_digraph(&input)?;
            let text = fs::read_to_string(&spec)
                .with_context(|| format!("cannot read {}", spec.display()))?;
            let transform = Transform::from_json(&text)
                .with_context(|| format!("invalid transform file {}", spec.display()))?;
            let result = transform.apply(&g)?;
            write_artifact(&output, &result.to_json())?;
            Ok(true)
        }
        Command::Classify { g, h, map, output } => {
            let g = load_digraph(&g)?;
            let h = load_digraph(&h)?;
            let map_text = fs::read_to_string(&map)
                .with_context(|| format!("cannot read {}", map.display()))?;
            let f: Vec<usize> = serde_json::from_str(&map_text)
                .with_context(|| format!("invalid map file {}", map.display()))?;
            let classification = classify_map(&g, &h, &f)?;
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&classification)? + "\n",
                Format::Text => {
                    let mut s = format!("node: {}\n", classification.node);
                    s.push_str(&format!("preserved: {:?}\n", classification.preserved));
                    for (rel, tuple) in &classification.excluded_by {
                        s.push_str(&format!("excluded by {rel:?} at {tuple:?}\n"));
                    }
                    s
                }
            };
            write_artifact(&output, &content)?;
            Ok(true)
        }
        Command::Behaviors { mode, output } => {
            let content = match (mode, output.format) {
                (BehaviorMode::Noconst, Format::Text) => {
                    let mut s = String::from("| behavior | case | verdict |\n|---|---|---|\n");
                    for b in enumerate_behaviors() {
                        let v = classify_behavior(&b);
                        s.push_str(&format!("| {b} | {} | {} |\n", v.case, v.kind));
                    }
                    s
                }
                (BehaviorMode::Noconst, Format::Json) => {
                    let rows: Vec<serde_json::Value> = enumerate_behaviors()
                        .into_iter()
                        .map(|b| {
                            let v = classify_behavior(&b);
                            serde_json::json!({
                                "behavior": b,
                                "case": v.case,
                                "verdict": format!("{}", v.kind),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
                (BehaviorMode::Twoorbit, Format::Text) => {
                    let mut s = String::from(
                        "| on X | on Y | between | case | verdict |\n|---|---|---|---|---|\n",
                    );
                    for b in enumerate_two_orbit_behaviors() {
                        let v = classify_two_orbit(&b);
                        s.push_str(&format!(
                            "| {:?} | {:?} | {} | {} | {} |\n",
                            b.on_x, b.on_y, b.between, v.case, v.kind
                        ));
                    }
                    s
                }
                (BehaviorMode::Twoorbit, Format::Json) => {
                    let rows: Vec<serde_json::Value> = enumerate_two_orbit_behaviors()
                        .into_iter()
                        .map(|b| {
                            let v = classify_two_orbit(&b);
                            serde_json::json!({
                                "on_x": format!("{:?}", b.on_x),
                                "on_y": format!("{:?}", b.on_y),
                                "between": b.between,
                                "case": v.case,
                                "verdict": format!("{}", v.kind),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
            };
            write_artifact(&output, &content)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            seed,
            trials,
            n,
            k,
            output,
        } => {
            if trials == 0 || n == 0 {
                bail!("--trials and --n must be at least 1");
            }
            let cfg = VerifyConfig {
                seed,
                trials,
                n,
                k,
                mode: Default::default(),
            };
            let reports = run_suite(&suite, &cfg)?;
            let pass = reports.iter().all(|r| r.pass);
            let content = match output.format {
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for report in &reports {
                        s.push_str(&report.to_text());
                    }
                    s
                }
            };
            write_artifact(&output, &content)?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
