//! The `flame` command line.
//!
//! Subcommands: `lambda`, `grow`, `peel`, `minflame`, `decompose`,
//! `verify`, `gen`. Input is a file path or `-` for standard input. Exit
//! codes: 0 success, 1 domain errors (cyclic input to `minflame`, failed
//! checks, infeasible generation), 2 usage and parse errors. All output is
//! deterministic; errors go to the error stream only.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::connectivity::{lambda_all, max_disjoint_paths, tight_sets};
use crate::decompose::{decompose_digraph, FlameMethod};
use crate::dot::{decomposition_dot, flame_dot};
use crate::flame::{grow_maximal_flame, peel_maximal_flame};
use crate::gammoid::min_weight_maximal_flame_dag;
use crate::graph::{Digraph, EdgeSet, RootedDigraph, SubgraphView, VertexSet};
use crate::invariants;
use crate::oracle::{
    check_dag_equivalence, check_decomposition, check_greedoid, check_lambda,
    check_matroid_axioms_all, random_digraph, CheckReport, GenParams,
};

#[derive(Parser)]
#[command(
    name = "flame",
    version,
    about = "Rooted edge-connectivity: maximal flames, tight sets, minimum-weight flames and branching decompositions"
)]
struct Cli {
    /// Enable the expensive structural assertions inside the algorithms.
    #[arg(long, global = true)]
    debug_assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print λ(r,v) with the minimal and maximal tight sets per vertex.
    Lambda {
        /// Input graph file, `-` for standard input.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a maximal flame by greedoid augmentation from the empty set.
    Grow {
        input: String,
        /// Emit a DOT rendering instead of the text report.
        #[arg(long)]
        dot: bool,
    },
    /// Build a maximal flame by deleting redundant edges.
    Peel {
        input: String,
        #[arg(long)]
        dot: bool,
    },
    /// Minimum-weight maximal flame of an acyclic digraph.
    Minflame {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Decompose into branchings B_1..B_m whose prefixes are flames.
    Decompose {
        input: String,
        /// Start from the grown flame instead of the peeled one.
        #[arg(long)]
        grow: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Run one of the brute-force structure checks against the input.
    Verify {
        input: String,
        #[arg(long, value_enum)]
        check: CheckKind,
    },
    /// Print a seeded random graph in the text format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        acyclic: bool,
        /// Allow parallel edges.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Lambda,
    Greedoid,
    Matroid,
    DagEquivalence,
    Decomposition,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn domain(err: impl std::fmt::Display) -> Self {
        Failure {
            code: 1,
            message: err.to_string(),
        }
    }

    fn usage(err: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: err.to_string(),
        }
    }
}

/// Runs the CLI against explicit argument and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    if cli.debug_assert {
        invariants::set_enabled(true);
    }
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_graph(path: &str) -> Result<RootedDigraph, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?
    };
    RootedDigraph::parse(&text).map_err(Failure::usage)
}

fn format_vertex_set(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Lambda { input, json } => {
            let d = read_graph(&input)?;
            #[derive(Serialize)]
            struct Row {
                v: usize,
                lambda: usize,
                t_min: Vec<usize>,
                m_max: Vec<usize>,
            }
            let rows: Vec<Row> = d
                .non_root_vertices()
                .map(|v| {
                    let t = tight_sets(&d, v);
                    Row {
                        v,
                        lambda: t.lambda,
                        t_min: t.t_min.into_iter().collect(),
                        m_max: t.m_max.into_iter().collect(),
                    }
                })
                .collect();
            if json {
                let text = serde_json::to_string(&rows).expect("rows serialize");
                write_out(out, &format!("{text}\n"))
            } else {
                let mut text = String::new();
                for row in rows {
                    text.push_str(&format!(
                        "{} {} {} {}\n",
                        row.v,
                        row.lambda,
                        format_vertex_set(&row.t_min.iter().copied().collect()),
                        format_vertex_set(&row.m_max.iter().copied().collect()),
                    ));
                }
                write_out(out, &text)
            }
        }
        Command::Grow { input, dot } => {
            let d = read_graph(&input)?;
            let f = grow_maximal_flame(&d);
            flame_output(&d, &f, dot, out)
        }
        Command::Peel { input, dot } => {
            let d = read_graph(&input)?;
            let f = peel_maximal_flame(&d);
            flame_output(&d, &f, dot, out)
        }
        Command::Minflame { input, json } => {
            let d = read_graph(&input)?;
            let (f, weight) = min_weight_maximal_flame_dag(&d, d.weights())
                .map_err(Failure::domain)?;
            if json {
                #[derive(Serialize)]
                struct MinFlame {
                    edges: Vec<usize>,
                    weight: String,
                }
                let doc = MinFlame {
                    edges: f.into_iter().collect(),
                    weight: weight.to_string(),
                };
                let text = serde_json::to_string(&doc).expect("serializes");
                write_out(out, &format!("{text}\n"))
            } else {
                write_out(
                    out,
                    &format!("edges{}\nweight {weight}\n", format_id_list(&f)),
                )
            }
        }
        Command::Decompose {
            input,
            grow,
            json,
            dot,
        } => {
            let d = read_graph(&input)?;
            let method = if grow {
                FlameMethod::Grow
            } else {
                FlameMethod::Peel
            };
            let (f, dec) = decompose_digraph(&d, method).map_err(Failure::domain)?;
            if dot {
                return write_out(out, &decomposition_dot(&d, &dec));
            }
            if json {
                #[derive(Serialize)]
                struct Doc {
                    flame: Vec<usize>,
                    branchings: Vec<Vec<usize>>,
                }
                let doc = Doc {
                    flame: f.into_iter().collect(),
                    branchings: dec
                        .branchings
                        .iter()
                        .map(|b| b.edges.iter().copied().collect())
                        .collect(),
                };
                let text = serde_json::to_string(&doc).expect("serializes");
                return write_out(out, &format!("{text}\n"));
            }
            let mut text = format!("m {}\n", dec.depth());
            for (i, b) in dec.branchings.iter().enumerate() {
                text.push_str(&format!(
                    "B{} edges{} heads {}\n",
                    i + 1,
                    format_id_list(&b.edges),
                    format_vertex_set(&b.heads),
                ));
            }
            write_out(out, &text)
        }
        Command::Verify { input, check } => {
            let d = read_graph(&input)?;
            let report: CheckReport = match check {
                CheckKind::Lambda => check_lambda(&d),
                CheckKind::Greedoid => check_greedoid(&d),
                CheckKind::Matroid => check_matroid_axioms_all(&d),
                CheckKind::DagEquivalence => check_dag_equivalence(&d),
                CheckKind::Decomposition => check_decomposition(&d),
            }
            .map_err(Failure::domain)?;
            write_out(out, &format!("{report}\n"))?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::domain(format!("check {} failed", report.property)))
            }
        }
        Command::Gen {
            n,
            m,
            seed,
            acyclic,
            parallel,
        } => {
            let params = GenParams {
                n,
                m,
                seed,
                acyclic,
                allow_parallel: parallel,
            };
            let d = random_digraph(&params).map_err(Failure::domain)?;
            write_out(out, &d.to_text())
        }
    }
}

fn format_id_list(set: &EdgeSet) -> String {
    set.iter().fold(String::new(), |mut acc, e| {
        acc.push_str(&format!(" {e}"));
        acc
    })
}

fn flame_output(
    d: &RootedDigraph,
    f: &EdgeSet,
    dot: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if dot {
        return write_out(out, &flame_dot(d, f));
    }
    let sum: usize = lambda_all(d).values().sum();
    let view = SubgraphView::from_set(d, f);
    let mut text = format!("edges{}\nsize {}\nsum_lambda {sum}\n", format_id_list(f), f.len());
    for v in d.non_root_vertices() {
        text.push_str(&format!(
            "v {v} rho {} lambda {}\n",
            view.in_degree(v),
            max_disjoint_paths(&view, v).value,
        ));
    }
    write_out(out, &text)
}
