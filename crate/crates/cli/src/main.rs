//! `operad-wb`: enumeration, census and check runner over pruned n-trees.
//!
//! Output is one JSON object per line unless a flag asks for DOT, CSV or a
//! bare f-vector. Exit codes: 1 for failed checks, 2 for bad arguments or
//! input, 3 when a resource limit is hit.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use operad_wb_core::catops::{build_rh, symmetrise, GeneratedPoset, TableOperad, TerminalOperad};
use operad_wb_core::cells::{cell_complex, fm_stratum_census};
use operad_wb_core::checks::{run_suite, CheckConfig, Suite};
use operad_wb_core::freeops::{c_n, free_symmetric, s, FreeOperad, SetCollection};
use operad_wb_core::json::{CollectionJson, NOrderJson, NodeJson, TableOperadJson, TreeJson};
use operad_wb_core::milgram::MilgramPoset;
use operad_wb_core::ordinals::enumerate_total_orders;
use operad_wb_core::planar::{enumerate_dominated, enumerate_reduced};
use operad_wb_core::sc::{sc_symmetrise, ColouredCollection, FreeScOperad};
use operad_wb_core::trees::{enumerate_pruned_trees, PrunedTree};
use operad_wb_core::{Error, Limits};

const DEFAULT_MAX_N: usize = 3;
const DEFAULT_MAX_K: usize = 6;

#[derive(Parser)]
#[command(name = "operad-wb", version, about = "Pruned n-trees, n-ordinals and symmetrisation of n-operads")]
struct Cli {
    /// Cap on generated posets and diagrams (overrides OPERAD_WB_MAX_OBJECTS).
    #[arg(long, global = true)]
    max_objects: Option<usize>,
    /// Allow n above 3 and k above 6.
    #[arg(long, global = true)]
    unbounded: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Size {
    /// Dimension of the trees.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Number of tips or leaves.
    #[arg(long, default_value_t = 3)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// Pruned n-trees with k tips.
    Trees,
    /// Total n-orders on k labels.
    Orders,
    /// Reduced planar trees with k labelled leaves.
    Reduced,
    /// Reduced planar trees dominated by --tree.
    Dominated,
}

#[derive(Subcommand)]
enum Command {
    /// List trees, orders or planar trees.
    Enumerate {
        what: What,
        #[command(flatten)]
        size: Size,
        /// Tree in the `[levels],[fibers...]` form, for `dominated`.
        #[arg(long)]
        tree: Option<String>,
    },
    /// The poset of total n-orders under domination.
    Milgram {
        #[command(flatten)]
        size: Size,
        /// Write the Hasse diagram to a file, `-` for standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print sizes, orbits and the order complex instead of elements.
        #[arg(long)]
        stats: bool,
    },
    /// The category of reduced planar trees.
    Rh {
        #[command(flatten)]
        size: Size,
        /// Print the generating arrows as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Cells dominated by one tree.
    Cells {
        #[command(flatten)]
        size: Size,
        /// Tree in the `[levels],[fibers...]` form; defaults to the k-tip tree
        /// with all tips at level 0.
        #[arg(long)]
        tree: Option<String>,
        /// Print only the f-vector, comma separated.
        #[arg(long)]
        fvector: bool,
        /// Print the cells and their generating arrows as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Strata of the configuration space compactification by root and dimension.
    Census {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        csv: bool,
    },
    /// Symmetrise a free or tabulated operad in arity k.
    Symmetrise {
        #[command(flatten)]
        size: Size,
        /// Generating collection as JSON; one point per reduced tree if absent.
        #[arg(long, conflicts_with_all = ["table", "terminal"])]
        collection: Option<PathBuf>,
        /// An operad given by composition tables, as JSON.
        #[arg(long, conflicts_with = "terminal")]
        table: Option<PathBuf>,
        /// The operad with one operation in every arity.
        #[arg(long)]
        terminal: bool,
        /// Compare with the free symmetric operad (free operads only).
        #[arg(long)]
        oracle: bool,
    },
    /// Swiss-cheese variants.
    Sc {
        #[command(subcommand)]
        command: ScCommand,
    },
    /// Run a named check suite.
    Check {
        /// roundtrip, finality, sym-free, euler, tamarkin-search or sc-restriction.
        suite: String,
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Include the expensive variants.
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand)]
enum ScCommand {
    /// Symmetrise a free Swiss-cheese operad in arity (k, l).
    Symmetrise {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Colour 1 leaves.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Colour 2 leaves.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Coloured collection as JSON; one point per coloured tree if absent.
        #[arg(long)]
        collection: Option<PathBuf>,
    },
}

enum Failure {
    Checks,
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn line(out: &mut Out, v: Value) -> io::Result<()> {
    writeln!(out, "{}", v)
}

fn bounds(cli: &Cli, n: usize, k: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    if !cli.unbounded && n > DEFAULT_MAX_N {
        return Err(Error::ResourceLimit {
            what: "n without --unbounded",
            requested: n,
            limit: DEFAULT_MAX_N,
        }
        .into());
    }
    if !cli.unbounded && k > DEFAULT_MAX_K {
        return Err(Error::ResourceLimit {
            what: "k without --unbounded",
            requested: k,
            limit: DEFAULT_MAX_K,
        }
        .into());
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn tree_value(t: &PrunedTree) -> Value {
    json!({
        "tree": t.to_string(),
        "json": TreeJson::from(t),
        "dimension": t.dimension(),
    })
}

fn poset_stats(p: &GeneratedPoset) -> Value {
    let all: Vec<usize> = (0..p.objects().len()).collect();
    json!({
        "n": p.degree(),
        "k": p.arity(),
        "objects": p.objects().len(),
        "generators": p.generators().len(),
        "corollas": p.corollas().len(),
        "connected": p.is_connected(&all),
        "f_vector": p.order_complex_f_vector(&all),
        "euler": p.order_complex_euler(&all),
    })
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    if let Some(m) = cli.max_objects {
        Limits::install(Limits {
            max_objects: m,
            ..Limits::default()
        });
    }
    match &cli.command {
        Command::Enumerate { what, size, tree } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let count = match what {
                What::Trees => {
                    let trees = enumerate_pruned_trees(n, k)?;
                    for t in &trees {
                        line(out, tree_value(t))?;
                    }
                    trees.len()
                }
                What::Orders => {
                    let orders = enumerate_total_orders(n, k)?;
                    for x in &orders {
                        line(out, json!({"order": x.to_string(), "json": NOrderJson::from(x)}))?;
                    }
                    orders.len()
                }
                What::Reduced | What::Dominated => {
                    let taus = match what {
                        What::Dominated => {
                            let text = tree
                                .as_deref()
                                .ok_or_else(|| Failure::Usage("`dominated` needs --tree".into()))?;
                            let t = PrunedTree::parse(n, text)?;
                            bounds(cli, n, t.tips())?;
                            enumerate_dominated(&t)?
                        }
                        _ => enumerate_reduced(n, k)?,
                    };
                    for tau in &taus {
                        line(
                            out,
                            json!({"tree": tau.to_string(), "dimension": tau.dimension(), "json": NodeJson::from(tau)}),
                        )?;
                    }
                    taus.len()
                }
            };
            let k = match (what, tree) {
                (What::Dominated, Some(t)) => PrunedTree::parse(n, t)?.tips(),
                _ => k,
            };
            line(out, json!({"n": n, "k": k, "count": count}))?;
        }
        Command::Milgram { size, dot, stats } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let p = MilgramPoset::build(n, k)?;
            if let Some(path) = dot {
                let text = p.to_dot();
                if path.as_os_str() == "-" {
                    write!(out, "{}", text)?;
                } else {
                    fs::write(path, text)?;
                }
            }
            if *stats {
                line(
                    out,
                    json!({
                        "n": n,
                        "k": k,
                        "elements": p.elements().len(),
                        "covers": p.covers().len(),
                        "orbits": p.orbits().len(),
                        "partial_order": p.is_partial_order(),
                        "f_vector": p.order_complex_f_vector(),
                        "euler": p.order_complex_euler(),
                    }),
                )?;
            } else if dot.is_none() {
                for x in p.elements() {
                    let dim = PrunedTree::from_total_order(x)?.0.dimension();
                    line(out, json!({"order": x.to_string(), "dimension": dim}))?;
                }
            }
        }
        Command::Rh { size, dot } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let p = build_rh(n, k)?;
            if *dot {
                write!(out, "{}", p.to_dot())?;
            } else {
                line(out, poset_stats(&p))?;
            }
        }
        Command::Cells {
            size,
            tree,
            fvector,
            dot,
        } => {
            let Size { n, k } = *size;
            let t = match tree {
                Some(text) => PrunedTree::parse(n, text)?,
                None => PrunedTree::m_tree(n, 0, k)?,
            };
            bounds(cli, n, t.tips())?;
            let c = cell_complex(&t)?;
            if *fvector {
                let f: Vec<String> = c.f_vector.iter().map(usize::to_string).collect();
                writeln!(out, "{}", f.join(","))?;
            } else if *dot {
                let cells = c.cells.iter().map(|(tau, _)| tau.clone()).collect();
                let p = GeneratedPoset::from_objects(n, t.tips(), 0, cells, false)?;
                write!(out, "{}", p.to_dot())?;
            } else {
                line(
                    out,
                    json!({
                        "tree": t.to_string(),
                        "cells": c.cells.len(),
                        "f_vector": c.f_vector,
                        "euler_c": c.euler_c,
                        "dimension": c.dimension(),
                        "top_cells": c.top_cells.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    }),
                )?;
            }
        }
        Command::Census { size, csv } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let c = fm_stratum_census(n, k)?;
            if *csv {
                write!(out, "{}", c.to_csv())?;
            } else {
                for r in &c.rows {
                    line(out, json!({"n": n, "k": k, "tree": r.tree.to_string(), "dim": r.dim, "count": r.count}))?;
                }
                line(out, json!({"n": n, "k": k, "total": c.total, "by_dimension": c.by_dimension}))?;
            }
        }
        Command::Symmetrise {
            size,
            collection,
            table,
            terminal,
            oracle,
        } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let mut v = if *terminal {
                let s = symmetrise(&TerminalOperad { degree: n }, k)?;
                json!({"operad": "terminal", "classes": s.class_count(), "corolla_classes": s.corolla_class_count(), "comparison_bijective": s.comparison_bijective()})
            } else if let Some(path) = table {
                let a = TableOperad::try_from(read_json::<TableOperadJson>(path)?)?;
                if a.degree != n {
                    return Err(Failure::Usage(format!("the table has degree {}, not {}", a.degree, n)));
                }
                let s = symmetrise(&a, k)?;
                json!({"operad": "table", "classes": s.class_count(), "corolla_classes": s.corolla_class_count(), "comparison_bijective": s.comparison_bijective()})
            } else {
                let x = match collection {
                    Some(path) => SetCollection::try_from(read_json::<CollectionJson>(path)?)?,
                    None => SetCollection::one_point(n, k)?,
                };
                if x.degree() != n {
                    return Err(Failure::Usage(format!("the collection has degree {}, not {}", x.degree(), n)));
                }
                let sym = symmetrise(&FreeOperad { collection: x.clone() }, k)?;
                let mut v = json!({"operad": "free", "classes": sym.class_count(), "corolla_classes": sym.corolla_class_count(), "comparison_bijective": sym.comparison_bijective()});
                if *oracle {
                    let expected = free_symmetric(&s(&c_n(&x)), k)?.len();
                    v["free_symmetric"] = json!(expected);
                    v["agrees"] = json!(expected == sym.class_count());
                }
                v
            };
            v["n"] = json!(n);
            v["k"] = json!(k);
            line(out, v)?;
        }
        Command::Sc {
            command: ScCommand::Symmetrise { n, k, l, collection },
        } => {
            let (n, k, l) = (*n, *k, *l);
            bounds(cli, n, k + l)?;
            let x = match collection {
                Some(path) => ColouredCollection::try_from(read_json::<CollectionJson>(path)?)?,
                None => ColouredCollection::one_point(n, k + l)?,
            };
            if x.degree() != n {
                return Err(Failure::Usage(format!("the collection has degree {}, not {}", x.degree(), n)));
            }
            let s = sc_symmetrise(&FreeScOperad { collection: x }, k, l)?;
            line(
                out,
                json!({
                    "n": n,
                    "k": k,
                    "l": l,
                    "objects": s.poset().objects().len(),
                    "classes": s.class_count(),
                    "corolla_classes": s.corolla_class_count(),
                    "comparison_bijective": s.comparison_bijective(),
                }),
            )?;
        }
        Command::Check { suite, size, seed, slow } => {
            let Size { n, k } = *size;
            bounds(cli, n, k)?;
            let suite: Suite = suite.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let cfg = CheckConfig {
                seed: *seed,
                slow: *slow,
                ..CheckConfig::new(n, k)
            };
            let report = run_suite(suite, &cfg)?;
            for c in &report.cases {
                line(out, serde_json::to_value(c).map_err(Error::from)?)?;
            }
            let passed = report.passed();
            line(
                out,
                json!({"suite": report.suite, "n": n, "k": k, "cases": report.cases.len(), "passed": passed}),
            )?;
            if !passed {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(Failure::Core(e @ Error::ResourceLimit { .. })) => {
            eprintln!("error: {}", e);
            3
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}", e);
            2
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            eprintln!("error: {}", e);
            2
        }
    };
    if let Err(e) = flushed {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {}", e);
        }
    }
    ExitCode::from(code)
}
