use std::{fs, path::PathBuf, process::ExitCode, sync::Arc};

use anyhow::{bail, Context};
use cacti::{
  chain::{betti_numbers, boundary_tree},
  correlator::act,
  harness::{SuiteConfig, Status, SUITES},
  hochschild::CochainJson,
  operad::compose,
  run_suite, Cochain, Cohomology, DecoratedTree, FrobeniusAlgebra, RibbonGraph, SuiteReport,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Thread count for the verification suites; defaults to all cores.
const THREADS_ENV: &str = "CACTI_THREADS";

#[derive(Parser)]
#[command(name = "cacti", version, about = "Cellular chains of normalized cacti acting on Hochschild cochains")]
struct Cli {
  /// Machine-readable JSON output.
  #[arg(long, global = true)]
  json:    bool,
  #[command(subcommand)]
  command: Command,
}

#[derive(Subcommand)]
enum Command {
  /// List the cells of K'(n) (or K(n) with --spineless) up to a degree.
  Enumerate {
    #[arg(long)]
    lobes:      usize,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    spineless:  bool,
  },
  /// Cellular boundary of a tree.
  Boundary {
    #[arg(long)]
    tree: DecoratedTree,
  },
  /// Operadic composition `left ∘_slot right`.
  Compose {
    #[arg(long)]
    left:  DecoratedTree,
    #[arg(long)]
    slot:  usize,
    #[arg(long)]
    right: DecoratedTree,
  },
  /// Action of a tree on Hochschild cochains.
  Act {
    #[arg(long)]
    tree:     DecoratedTree,
    /// Cochain JSON file (one cochain or an array, one per lobe).
    #[arg(long)]
    cochains: PathBuf,
    #[arg(long)]
    algebra:  Option<String>,
  },
  /// Value η(a_0, act(t)(f)(a_1, ..)) on basis elements.
  Correlate {
    #[arg(long)]
    tree:    DecoratedTree,
    /// JSON `{"cochains": [...], "inputs": [a_0, a_1, ..]}` with basis indices.
    #[arg(long)]
    inputs:  PathBuf,
    #[arg(long)]
    algebra: Option<String>,
  },
  /// Hochschild cohomology HH^n(A, A).
  Hh {
    #[arg(long, default_value = "dual")]
    algebra: String,
    #[arg(long)]
    degree:  usize,
  },
  /// Connes' operator on a cochain.
  HhDelta {
    #[arg(long)]
    cochains: PathBuf,
    #[arg(long)]
    algebra:  Option<String>,
  },
  /// Betti numbers of the cellular chains.
  Homology {
    #[arg(long)]
    lobes:     usize,
    #[arg(long)]
    spineless: bool,
  },
  /// Run verification suites.
  Verify(VerifyArgs),
  /// Ribbon graph utilities.
  #[command(subcommand)]
  Graph(GraphCommand),
}

#[derive(Args)]
struct VerifyArgs {
  #[arg(long, conflicts_with = "all", required_unless_present = "all")]
  suite:      Option<String>,
  #[arg(long)]
  all:        bool,
  #[arg(long)]
  lobes:      Option<usize>,
  #[arg(long)]
  max_degree: Option<usize>,
  /// Algebra name or @file.json; repeatable.
  #[arg(long)]
  algebra:    Vec<String>,
  #[arg(long)]
  seed:       Option<u64>,
  #[arg(long)]
  trials:     Option<usize>,
  #[arg(long)]
  max_arity:  Option<usize>,
}

#[derive(Subcommand)]
enum GraphCommand {
  /// Boundary cycles of a graph file.
  Cycles { file: PathBuf },
  Genus { file: PathBuf },
  /// Contract the edge containing a flag.
  Contract {
    file: PathBuf,
    #[arg(long)]
    flag: usize,
  },
  /// Dual decorated tree of a marked treelike graph.
  Dual { file: PathBuf },
  /// Cactus ribbon graph of a tree.
  Cactus {
    #[arg(long)]
    tree: DecoratedTree,
  },
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  match run(&cli) {
    Ok(true) => ExitCode::SUCCESS,
    Ok(false) => ExitCode::from(1),
    Err(e) => {
      eprintln!("error: {e:#}");
      ExitCode::from(2)
    },
  }
}

fn print(json: bool, value: serde_json::Value, text: impl FnOnce() -> String) {
  if json {
    println!("{value}");
  } else {
    println!("{}", text());
  }
}

fn algebra(spec: &str) -> anyhow::Result<Arc<FrobeniusAlgebra>> { Ok(Arc::new(FrobeniusAlgebra::resolve(spec)?)) }

/// Reads one cochain or an array of them; all share one algebra.
fn read_cochains(value: &serde_json::Value, alg: Option<&str>) -> anyhow::Result<Vec<Cochain>> {
  let items: Vec<CochainJson> = match value {
    serde_json::Value::Array(_) => serde_json::from_value(value.clone())?,
    _ => vec![serde_json::from_value(value.clone())?],
  };
  let Some(first) = items.first() else { bail!("no cochains given") };
  let a = algebra(alg.unwrap_or(&first.algebra))?;
  items.iter().map(|j| Ok(Cochain::from_json(&a, j)?)).collect()
}

fn read_json(path: &PathBuf) -> anyhow::Result<serde_json::Value> {
  let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
  serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &PathBuf) -> anyhow::Result<RibbonGraph> {
  let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
  Ok(text.parse()?)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
  let json = cli.json;
  match &cli.command {
    Command::Enumerate { lobes, max_degree, spineless } => {
      let d = max_degree.unwrap_or(2 * lobes);
      let cells = if *spineless { cacti::enumerate_spineless(*lobes, d) } else { cacti::enumerate_cells(*lobes, d) };
      print(json, json!(cells.iter().map(ToString::to_string).collect::<Vec<_>>()), || cells.iter().map(|t| format!("{} {t}", t.degree())).collect::<Vec<_>>().join("\n"));
    },
    Command::Boundary { tree } => {
      tree.validate()?;
      let b = boundary_tree(tree);
      let terms = b.to_json()["terms"].clone();
      print(json, json!({ "terms": terms }), || chain_text(&b));
    },
    Command::Compose { left, slot, right } => {
      let c = compose(left, *slot, right)?;
      print(json, c.to_json(), || chain_text(&c));
    },
    Command::Act { tree, cochains, algebra } => {
      let fs = read_cochains(&read_json(cochains)?, algebra.as_deref())?;
      let out = act(tree, &fs)?;
      print(json, serde_json::to_value(out.to_json())?, || serde_json::to_string_pretty(&out.to_json()).expect("cochain serializes"));
    },
    Command::Correlate { tree, inputs, algebra } => {
      let v = read_json(inputs)?;
      let fs = read_cochains(&v["cochains"], algebra.as_deref())?;
      let idx: Vec<usize> = serde_json::from_value(v["inputs"].clone()).context("`inputs` must list basis indices")?;
      let value = correlation(tree, &fs, &idx)?;
      print(json, json!(value.to_string()), || value.to_string());
    },
    Command::Hh { algebra: spec, degree } => {
      let a = algebra(spec)?;
      let h = Cohomology::compute(&a, *degree);
      let reps: Vec<_> = h.representatives.iter().map(Cochain::to_json).collect();
      print(json, json!({ "algebra": a.name(), "degree": degree, "dim": h.dim(), "representatives": reps }), || {
        let mut s = format!("HH^{degree}({}) has dimension {}", a.name(), h.dim());
        for r in &reps {
          s.push('\n');
          s.push_str(&serde_json::to_string(r).expect("cochain serializes"));
        }
        s
      });
    },
    Command::HhDelta { cochains, algebra } => {
      let fs = read_cochains(&read_json(cochains)?, algebra.as_deref())?;
      let [f] = fs.as_slice() else { bail!("hh-delta takes exactly one cochain") };
      let out = f.cdelta()?;
      print(json, serde_json::to_value(out.to_json())?, || serde_json::to_string_pretty(&out.to_json()).expect("cochain serializes"));
    },
    Command::Homology { lobes, spineless } => {
      let b = betti_numbers(*lobes, *spineless);
      print(json, json!({ "lobes": lobes, "spineless": spineless, "betti": b }), || format!("{b:?}"));
    },
    Command::Verify(args) => return verify(args, json),
    Command::Graph(g) => graph(g, json)?,
  }
  Ok(true)
}

fn chain_text(c: &cacti::chain::ChainElement) -> String {
  if c.is_zero() {
    return "0".into();
  }
  c.terms().iter().map(|(t, k)| format!("{k:+} {t}")).collect::<Vec<_>>().join("\n")
}

fn correlation(tree: &DecoratedTree, fs: &[Cochain], idx: &[usize]) -> anyhow::Result<cacti::Q> {
  let out = act(tree, fs)?;
  let Some((&a0, rest)) = idx.split_first() else { bail!("need at least the input a_0") };
  if rest.len() != out.arity() {
    bail!("the action has arity {}, got {} inputs after a_0", out.arity(), rest.len());
  }
  let a = out.algebra();
  if idx.iter().any(|&i| i >= a.dim()) {
    bail!("basis index out of range for dimension {}", a.dim());
  }
  let value = out.at(rest);
  Ok((0..a.dim()).map(|j| a.eta(a0, j) * &value[j]).sum())
}

fn verify(args: &VerifyArgs, json: bool) -> anyhow::Result<bool> {
  if let Ok(n) = std::env::var(THREADS_ENV) {
    let n: usize = n.parse().with_context(|| format!("{THREADS_ENV} must be a number"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
  }
  let suites: Vec<&str> = match &args.suite {
    Some(s) => vec![s.as_str()],
    None => SUITES.to_vec(),
  };
  let mut reports: Vec<SuiteReport> = Vec::new();
  for s in suites {
    let mut c = SuiteConfig::default_for(s)?;
    if let Some(n) = args.lobes {
      c.n = n;
    }
    if let Some(d) = args.max_degree {
      c.max_degree = d;
    }
    if !args.algebra.is_empty() {
      c.algebras = args.algebra.clone();
    }
    if let Some(seed) = args.seed {
      c.seed = seed;
    }
    if let Some(t) = args.trials {
      c.trials = t;
    }
    if let Some(a) = args.max_arity {
      c.max_arity = a;
    }
    let r = run_suite(s, &c)?;
    if !json {
      println!("suite {} ({} ms)", r.suite, r.wall_ms);
      for ch in &r.checks {
        match (&ch.status, &ch.witness) {
          (Status::Pass, _) => println!("  PASS {} [{}]", ch.name, ch.instances),
          (Status::Fail, w) => println!("  FAIL {} [{}]: {}", ch.name, ch.instances, w.as_deref().unwrap_or("")),
        }
      }
    }
    reports.push(r);
  }
  let ok = reports.iter().all(SuiteReport::ok);
  if json {
    println!("{}", json!({ "ok": ok, "reports": reports }));
  }
  Ok(ok)
}

fn graph(cmd: &GraphCommand, json: bool) -> anyhow::Result<()> {
  match cmd {
    GraphCommand::Cycles { file } => {
      let g = read_graph(file)?;
      print(json, json!(g.cycles()), || g.cycles().iter().enumerate().map(|(i, c)| format!("c{i}: {c:?}")).collect::<Vec<_>>().join("\n"));
    },
    GraphCommand::Genus { file } => {
      let g = read_graph(file)?.genus()?;
      print(json, json!(g), || g.to_string());
    },
    GraphCommand::Contract { file, flag } => {
      let g = read_graph(file)?.contract_edge(*flag)?;
      print(json, json!(g.to_string()), || g.to_string());
    },
    GraphCommand::Dual { file } => {
      let t = read_graph(file)?.dual_tree()?;
      print(json, json!(t.to_string()), || t.to_string());
    },
    GraphCommand::Cactus { tree } => {
      let g = RibbonGraph::cactus(tree)?;
      print(json, json!(g.to_string()), || g.to_string());
    },
  }
  Ok(())
}
