//! Command dispatch for the `segchi` binary.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use segchi_core::graph::{chromatic_number, export_dimacs, is_critical, is_triangle_free};
use segchi_core::verify::{
    verify_disjoint_probes, verify_general_position, verify_lemma_property, verify_probe_axioms, LEMMA_MAX_SEGMENTS,
};
use segchi_core::{augment_tilde, build, intersection_graph, sizes, Chromatic, Construction, Rational, Rect};

use crate::budget::Deadline;
use crate::family::{emit_family, parse_family};
use crate::svg::{render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_ASSERTION: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "segchi", version, about = "Triangle-free segment families with large chromatic number")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Axioms,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print s_i, p_i and s_i + p_i for i = 1..=K.
    Sizes { k: usize },
    /// Build the level-K family and write it as JSON.
    Build {
        #[arg(short = 'k')]
        k: usize,
        /// Enclosing rectangle; values may be fractions such as 1/3.
        #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], allow_hyphen_values = true)]
        rect: Option<Vec<String>>,
        /// Add one diagonal per probe (the critical family).
        #[arg(long)]
        tilde: bool,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Re-check a family file from its raw coordinates.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "axioms")]
        level: Level,
    },
    /// Write the intersection graph in DIMACS edge format.
    Graph {
        file: PathBuf,
        #[arg(long)]
        dimacs: PathBuf,
    },
    /// Compute the chromatic number of the intersection graph.
    Chi {
        file: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(long)]
        assert_eq: Option<usize>,
    },
    /// Check that deleting any segment leaves a K-colourable graph.
    Critical {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 120.0)]
        budget: f64,
    },
    /// Draw the family as SVG.
    Render {
        file: PathBuf,
        #[arg(short = 'o')]
        output: PathBuf,
        #[arg(long)]
        show_probes: bool,
        #[arg(long)]
        show_roots: bool,
        #[arg(long, default_value_t = 1.0)]
        stroke_scale: f64,
    },
}

fn read_family(path: &Path) -> Result<Construction> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Sizes { k } => {
            let table = sizes(k)?;
            println!("k s_k p_k s_k+p_k");
            for i in 1..=k {
                println!("{i} {} {} {}", table.s[i - 1], table.p[i - 1], table.tilde(i));
            }
            Ok(EXIT_OK)
        }
        Command::Build { k, rect, tilde, output } => {
            let rect = match rect {
                None => Rect::unit(),
                Some(values) => {
                    let v: Vec<Rational> = values
                        .iter()
                        .map(|t| t.parse::<Rational>().with_context(|| format!("bad coordinate {t:?}")))
                        .collect::<Result<_>>()?;
                    Rect::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())?
                }
            };
            let mut family = build(k, &rect)?;
            if tilde {
                family = augment_tilde(&family)?;
            }
            write(&output, &emit_family(&family))?;
            eprintln!(
                "wrote {} segments, {} probes to {}",
                family.segments.len(),
                family.probes.len(),
                output.display()
            );
            Ok(EXIT_OK)
        }
        Command::Verify { file, level } => {
            let family = read_family(&file)?;
            let mut report = verify_probe_axioms(&family);
            report.extend(verify_disjoint_probes(&family));
            report.extend(verify_general_position(&family.segments));
            if level == Level::Full {
                let g = intersection_graph(&family.segments);
                match is_triangle_free(&g) {
                    Ok(()) => report.push("graph.triangle-free", true, format!("vertices={}", g.vertex_count())),
                    Err(t) => report.push("graph.triangle-free", false, format!("triangle={t:?}")),
                }
                if !family.tilde && family.segments.len() <= LEMMA_MAX_SEGMENTS {
                    report.extend(verify_lemma_property(&family)?);
                } else {
                    eprintln!("lemma property skipped (tilde family or more than {LEMMA_MAX_SEGMENTS} segments)");
                }
            }
            print!("{report}");
            Ok(if report.overall() { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Graph { file, dimacs } => {
            let family = read_family(&file)?;
            let g = intersection_graph(&family.segments);
            write(&dimacs, &export_dimacs(&g))?;
            Ok(EXIT_OK)
        }
        Command::Chi { file, budget, assert_eq } => {
            let family = read_family(&file)?;
            let g = intersection_graph(&family.segments);
            match chromatic_number(&g, Deadline::from_secs(budget))? {
                Chromatic::Exact { chi, .. } => {
                    println!("chi = {chi}");
                    match assert_eq {
                        Some(want) if want != chi => {
                            eprintln!("assertion failed: expected chi = {want}");
                            Ok(EXIT_ASSERTION)
                        }
                        _ => Ok(EXIT_OK),
                    }
                }
                Chromatic::Bracket { lower, upper } => {
                    println!("chi in [{lower}, {upper}] (budget exhausted)");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Critical { file, k, budget } => {
            let family = read_family(&file)?;
            let g = intersection_graph(&family.segments);
            let report = is_critical(&g, k, Deadline::from_secs(budget))?;
            for (v, verdict) in report.deletions.iter().enumerate() {
                println!("DELETE {v} {verdict:?}");
            }
            match report.critical() {
                Some(true) => {
                    println!("critical: every deletion is {k}-colourable");
                    Ok(EXIT_OK)
                }
                Some(false) => {
                    println!("not critical");
                    Ok(EXIT_VERIFICATION)
                }
                None => {
                    println!("undecided (budget exhausted)");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Render { file, output, show_probes, show_roots, stroke_scale } => {
            if !(stroke_scale.is_finite() && stroke_scale > 0.0) {
                bail!("stroke scale must be positive");
            }
            let family = read_family(&file)?;
            let options = RenderOptions { show_probes, show_roots, stroke_scale };
            write(&output, &render_svg(&family, &options))?;
            Ok(EXIT_OK)
        }
    }
}
