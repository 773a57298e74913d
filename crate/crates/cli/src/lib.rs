//! Command-line front end: instance files in, trees, answers and expressions out.

pub mod error;
pub mod format;
pub mod tree;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use invmod::oracles::{self, OracleCaps};
use invmod::solvers;
use invmod::switch_cograph::{find_forbidden_witness, random_switch_cograph};
use invmod::{binary_imdt, imd_tree, imd_tree_with_pivot, modular_decomposition, VertexSet};

pub use error::CliError;
use format::{parse_instance, set_line, Instance};

#[derive(Parser, Debug)]
#[command(name = "invmod", version, about = "Involution modular decomposition and switch-cograph solvers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Clique,
    Mis,
    Chromatic,
    CliqueCover,
    VertexCover,
    MaxCut,
    Separator,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleProblem {
    Clique,
    Mis,
    Chromatic,
    CliqueCover,
    VertexCover,
    MaxCut,
    Separator,
    Modules,
    Umodules,
    InvolutionModules,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Strong-module tree of a graph or 2-structure.
    DecomposeModular {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Involution-module tree; `--binary` gives the rooted binary tree of a switch cograph.
    DecomposeInvolution {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        pivot: Option<usize>,
        #[arg(long, conflicts_with = "pivot")]
        binary: bool,
    },
    /// Decide whether a graph is a switch cograph.
    Recognize {
        file: PathBuf,
        /// Print an induced forbidden subgraph when the answer is no.
        #[arg(long)]
        witness: bool,
    },
    /// Solve an optimization problem on a switch cograph.
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        file: PathBuf,
    },
    /// Clique-width expression with at most 4 labels.
    CwdExpr { file: PathBuf },
    /// Random switch cograph.
    Gen {
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        antitwin_prob: f64,
    },
    /// Exhaustive answer for small instances.
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        file: PathBuf,
    },
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_instance(&text)
}

fn value_lines(value: usize, sets: &[(&str, &VertexSet)]) -> String {
    let mut s = format!("value {value}\n");
    for (tag, set) in sets {
        s.push_str(&set_line(tag, set));
        s.push('\n');
    }
    s
}

fn family_lines(fam: &[VertexSet]) -> String {
    fam.iter().map(|s| set_line("", s) + "\n").collect()
}

fn render(j: &tree::TreeJson, format: Format, name: &str) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(j).expect("tree serializes") + "\n",
        Format::Dot => tree::to_dot(j, name),
    }
}

fn execute(cmd: Cmd) -> Result<String, CliError> {
    let caps = OracleCaps::default();
    Ok(match cmd {
        Cmd::DecomposeModular { file, format } => {
            let inst = read_instance(&file)?;
            let (ts, _) = inst.structure();
            render(&tree::md_to_json(&modular_decomposition(ts)?), format, "md")
        }
        Cmd::DecomposeInvolution { file, format, pivot, binary } => {
            let inst = read_instance(&file)?;
            if binary {
                let g = inst.into_graph()?;
                return Ok(render(&tree::binary_to_json(&binary_imdt(&g)?), format, "bimdt"));
            }
            let (ts, inv) = inst.structure();
            let t = match pivot {
                Some(p) => imd_tree_with_pivot(ts, &inv, p)?,
                None => imd_tree(ts, &inv)?,
            };
            render(&tree::imd_to_json(&t), format, "imd")
        }
        Cmd::Recognize { file, witness } => {
            let g = read_instance(&file)?.into_graph()?;
            match find_forbidden_witness(&g) {
                None => "switch-cograph: yes\n".to_string(),
                Some(w) if witness => format!("switch-cograph: no\nwitness: {w}\n"),
                Some(_) => "switch-cograph: no\n".to_string(),
            }
        }
        Cmd::Solve { problem, file } => {
            let g = read_instance(&file)?.into_graph()?;
            match problem {
                Problem::Clique => value_lines(solvers::max_clique(&g)?, &[]),
                Problem::Mis => value_lines(solvers::max_independent_set(&g)?, &[]),
                Problem::Chromatic => value_lines(solvers::chromatic_number(&g)?, &[]),
                Problem::CliqueCover => value_lines(solvers::clique_cover_number(&g)?, &[]),
                Problem::VertexCover => {
                    let c = solvers::min_vertex_cover(&g)?;
                    value_lines(c.len(), &[("cover", &c)])
                }
                Problem::MaxCut => {
                    let (v, side) = solvers::max_cut(&g)?;
                    value_lines(v, &[("side", &side)])
                }
                Problem::Separator => {
                    let s = solvers::vertex_separator(&g)?;
                    value_lines(s.value, &[("x1", &s.x1), ("x2", &s.x2)])
                }
            }
        }
        Cmd::CwdExpr { file } => {
            let g = read_instance(&file)?.into_graph()?;
            format!("{}\n", solvers::clique_width_expression(&g)?)
        }
        Cmd::Gen { n, seed, antitwin_prob } => {
            if !(0.0..=1.0).contains(&antitwin_prob) {
                return Err(CliError::Usage(format!("--antitwin-prob {antitwin_prob} is not in [0, 1]")));
            }
            format::write_graph(&random_switch_cograph(n, seed, antitwin_prob)?)
        }
        Cmd::Oracle { problem, file } => {
            let inst = read_instance(&file)?;
            let (ts, inv) = inst.structure();
            match problem {
                OracleProblem::Modules => family_lines(&oracles::brute_modules(ts, caps.family)?),
                OracleProblem::Umodules => family_lines(&oracles::brute_umodules(ts, caps.family)?),
                OracleProblem::InvolutionModules => {
                    family_lines(&oracles::brute_involution_modules(ts, &inv, caps.family)?)
                }
                _ => {
                    let g = inst.clone().into_graph()?;
                    oracle_graph(problem, &g, &caps)?
                }
            }
        }
    })
}

fn oracle_graph(problem: OracleProblem, g: &invmod::Graph, caps: &OracleCaps) -> Result<String, CliError> {
    Ok(match problem {
        OracleProblem::Clique => {
            let (v, s) = oracles::brute_max_clique(g, caps)?;
            value_lines(v, &[("clique", &s)])
        }
        OracleProblem::Mis => {
            let (v, s) = oracles::brute_mis(g, caps)?;
            value_lines(v, &[("set", &s)])
        }
        OracleProblem::Chromatic => value_lines(oracles::brute_chromatic(g, caps)?, &[]),
        OracleProblem::CliqueCover => value_lines(oracles::brute_clique_cover(g, caps)?, &[]),
        OracleProblem::VertexCover => {
            let (v, s) = oracles::brute_vertex_cover(g, caps)?;
            value_lines(v, &[("cover", &s)])
        }
        OracleProblem::MaxCut => {
            let (v, s) = oracles::brute_max_cut(g, caps)?;
            value_lines(v, &[("side", &s)])
        }
        OracleProblem::Separator => {
            let (v, x1, x2) = oracles::brute_vertex_separator(g, caps)?;
            value_lines(v, &[("x1", &x1), ("x2", &x2)])
        }
        OracleProblem::Modules | OracleProblem::Umodules | OracleProblem::InvolutionModules => {
            unreachable!("family problems are handled by the caller")
        }
    })
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "error: usage {first}");
            return 1;
        }
    };
    let result = execute(cli.cmd).and_then(|s| {
        out.write_all(s.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {} {}", e.code(), e);
            e.exit_code()
        }
    }
}
