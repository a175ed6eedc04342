//! Verification suites: each one runs an invariant battery over exhaustive
//! small cases plus seeded random instances and reports the first failure.

use std::{sync::Arc, time::Instant};

use itertools::Itertools;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{
  chain::{betti_numbers, boundary_tree, ChainElement},
  correlator::{act, check_chain_map, check_operadicity},
  error::{CactiError, Result},
  frobenius::FrobeniusAlgebra,
  hochschild::{Cochain, Cohomology},
  operad::{block_permutation, compose, compose_chains, inner_permutation, relabel_chain},
  rational::Q,
  tree::{enumerate_cells, enumerate_spineless, DecoratedTree},
};

pub const SUITES: [&str; 8] = ["d2", "euler", "homology", "operad", "frobenius", "hochschild", "action", "bv"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
  /// Number of lobes (labels).
  pub n:          usize,
  pub max_degree: usize,
  pub algebras:   Vec<String>,
  pub seed:       u64,
  pub trials:     usize,
  /// Largest cochain arity fed to the action and Hochschild checks.
  pub max_arity:  usize,
}

impl SuiteConfig {
  /// Defaults of each suite, sized so that `verify --all` stays short.
  pub fn default_for(suite: &str) -> Result<Self> {
    let algs = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
    let base = Self { n: 2, max_degree: 3, algebras: algs(&["dual", "z2"]), seed: 0, trials: 50, max_arity: 2 };
    Ok(match suite {
      "d2" => Self { n: 3, max_degree: 4, ..base },
      "euler" | "homology" => Self { n: 3, ..base },
      "operad" => Self { max_degree: 1, trials: 100, ..base },
      "frobenius" => Self { algebras: algs(&FrobeniusAlgebra::BUILTINS), ..base },
      "hochschild" => Self { algebras: algs(&FrobeniusAlgebra::BUILTINS), max_arity: 4, ..base },
      "action" => Self { max_degree: 1, ..base },
      "bv" => base,
      other => return Err(CactiError::UnknownSuite(other.to_string())),
    })
  }

  fn validate(&self) -> Result<Vec<Arc<FrobeniusAlgebra>>> {
    if self.n == 0 {
      return Err(CactiError::Config("need at least one lobe".into()));
    }
    if self.algebras.is_empty() {
      return Err(CactiError::Config("no algebra given".into()));
    }
    self.algebras.iter().map(|a| FrobeniusAlgebra::resolve(a).map(Arc::new)).collect()
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
  Pass,
  Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
  pub name:      String,
  pub status:    Status,
  pub instances: usize,
  /// First failing instance, in the textual tree/cochain grammar.
  #[serde(skip_serializing_if = "Option::is_none")]
  pub witness:   Option<String>,
  #[serde(skip_serializing_if = "Option::is_none")]
  pub detail:    Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
  pub suite:   String,
  pub config:  SuiteConfig,
  pub checks:  Vec<CheckResult>,
  pub passed:  usize,
  pub failed:  usize,
  pub wall_ms: u128,
}

impl SuiteReport {
  pub fn ok(&self) -> bool { self.failed == 0 }
}

/// One instance of a check: a description (the witness if it fails) and a
/// thunk deciding it.
type Case<'a> = (String, Box<dyn Fn() -> Result<bool> + Send + Sync + 'a>);

fn run_cases(name: impl Into<String>, cases: Vec<Case<'_>>) -> CheckResult {
  let instances = cases.len();
  let first_bad = cases.par_iter().position_first(|(_, f)| !matches!(f(), Ok(true)));
  let witness = first_bad.map(|i| {
    let (desc, f) = &cases[i];
    match f() {
      Err(e) => format!("{desc} (error: {e})"),
      _ => desc.clone(),
    }
  });
  CheckResult { name: name.into(), status: if witness.is_some() { Status::Fail } else { Status::Pass }, instances, witness, detail: None }
}

fn single(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String, detail: serde_json::Value) -> CheckResult {
  CheckResult {
    name:      name.into(),
    status:    if ok { Status::Pass } else { Status::Fail },
    instances: 1,
    witness:   (!ok).then(witness),
    detail:    Some(detail),
  }
}

/// Per-instance generator, so a witness can be replayed from its seed.
fn rng_for(seed: u64, instance: usize) -> ChaCha8Rng { ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(instance as u64)) }

fn cells_upto(n: usize, max_degree: usize) -> Vec<DecoratedTree> { (1..=n).flat_map(|k| enumerate_cells(k, max_degree)).collect() }

fn arity_tuples(len: usize, max: usize) -> Vec<Vec<usize>> { (0..len).map(|_| 0..=max).multi_cartesian_product().collect() }

fn random_cochains(a: &Arc<FrobeniusAlgebra>, ars: &[usize], rng: &mut ChaCha8Rng) -> Vec<Cochain> { ars.iter().map(|&n| Cochain::random(a, n, rng)).collect() }

fn sign(odd: bool) -> Q { if odd { -Q::from_integer(1.into()) } else { Q::from_integer(1.into()) } }

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
  let start = Instant::now();
  let algebras = config.validate()?;
  let checks = match name {
    "d2" => suite_d2(config),
    "euler" => suite_euler(config),
    "homology" => suite_homology(config),
    "operad" => suite_operad(config),
    "frobenius" => suite_frobenius(config),
    "hochschild" => suite_hochschild(config, &algebras),
    "action" => suite_action(config, &algebras),
    "bv" => suite_bv(config, &algebras),
    other => return Err(CactiError::UnknownSuite(other.to_string())),
  };
  let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
  Ok(SuiteReport { suite: name.to_string(), config: config.clone(), passed: checks.len() - failed, failed, checks, wall_ms: start.elapsed().as_millis() })
}

fn suite_d2(config: &SuiteConfig) -> Vec<CheckResult> {
  let cells = cells_upto(config.n, config.max_degree);
  let cases = cells.iter().map(|t| -> Case { (t.to_string(), Box::new(move || Ok(boundary_tree(t).boundary().is_zero()))) }).collect();
  vec![run_cases("boundary of boundary vanishes", cases)]
}

fn counts(cells: &[DecoratedTree]) -> Vec<usize> {
  let top = cells.iter().map(DecoratedTree::degree).max().unwrap_or(0);
  (0..=top).map(|d| cells.iter().filter(|t| t.degree() == d).count()).collect()
}

fn euler(counts: &[usize]) -> i64 { counts.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum() }

fn suite_euler(config: &SuiteConfig) -> Vec<CheckResult> {
  let mut out = Vec::new();
  for k in 1..=config.n {
    let framed = counts(&enumerate_cells(k, 2 * k));
    let chi = euler(&framed);
    out.push(single(format!("Euler characteristic of K'({k}) is 0"), chi == 0, || format!("counts {framed:?}"), serde_json::json!({ "counts": framed, "euler": chi })));
    let spineless = counts(&enumerate_spineless(k, 2 * k));
    match k {
      1 => out.push(single("K'(1) has one 0-cell and one 1-cell", framed == [1, 1], || format!("counts {framed:?}"), serde_json::json!(framed))),
      2 => out.push(single("K(2) has two 0-cells and two 1-cells", spineless == [2, 2], || format!("counts {spineless:?}"), serde_json::json!(spineless))),
      _ => {},
    }
  }
  out
}

/// Coefficients of `(1+t)^a Π_{j<k} (1 + j t)`.
fn poincare(k: usize, circles: usize) -> Vec<usize> {
  let mut p = vec![1usize];
  let factors = std::iter::repeat_n(1, circles).chain(1..k);
  for j in factors {
    let mut next = vec![0; p.len() + 1];
    for (d, c) in p.iter().enumerate() {
      next[d] += c;
      next[d + 1] += c * j;
    }
    p = next;
  }
  p
}

fn suite_homology(config: &SuiteConfig) -> Vec<CheckResult> {
  let mut out = Vec::new();
  for k in 1..=config.n {
    for (spineless, circles, name) in [(false, k, "K'"), (true, 0, "K")] {
      let betti = betti_numbers(k, spineless);
      let want = poincare(k, circles);
      out.push(single(format!("Betti numbers of {name}({k}) are {want:?}"), betti == want, || format!("got {betti:?}"), serde_json::json!(betti)));
    }
  }
  out
}

fn suite_frobenius(config: &SuiteConfig) -> Vec<CheckResult> {
  let mut out = Vec::new();
  for name in &config.algebras {
    let a = FrobeniusAlgebra::resolve(name);
    let err = a.as_ref().err().map(ToString::to_string);
    out.push(single(format!("{name}: Frobenius axioms"), a.is_ok(), || err.unwrap_or_default(), serde_json::json!(name)));
    if let Ok(a) = a {
      out.push(single(format!("{name}: snake identity"), a.snake_holds(), || name.clone(), serde_json::json!(name)));
    }
  }
  out
}

fn suite_hochschild(config: &SuiteConfig, algebras: &[Arc<FrobeniusAlgebra>]) -> Vec<CheckResult> {
  let mut out = Vec::new();
  for a in algebras {
    // four-dimensional algebras are capped one arity lower
    let max = if a.dim() >= 4 { config.max_arity.min(3) } else { config.max_arity };
    let name = a.name();
    let seeds = 0..config.trials;
    let per_arity = |lo: usize| -> Vec<(usize, usize)> { (lo..=max).cartesian_product(seeds.clone()).collect() };
    let desc = |what: &str, ar: &str, s: usize| format!("{name} {what} arity {ar} seed {}", config.seed.wrapping_add(s as u64));
    let draw = move |ar: &[usize], s: usize| random_cochains(a, ar, &mut rng_for(config.seed, s));
    out.push(run_cases(
      format!("{name}: hdiff squares to zero"),
      per_arity(0).into_iter().map(|(n, s)| -> Case { (desc("d^2", &n.to_string(), s), Box::new(move || Ok(draw(&[n], s)[0].hdiff().hdiff().is_zero()))) }).collect(),
    ));
    out.push(run_cases(
      format!("{name}: Connes delta squares to zero"),
      per_arity(2)
        .into_iter()
        .map(|(n, s)| -> Case { (desc("delta^2", &n.to_string(), s), Box::new(move || Ok(draw(&[n], s)[0].cdelta()?.cdelta()?.is_zero()))) })
        .collect(),
    ));
    out.push(run_cases(
      format!("{name}: delta anticommutes with hdiff"),
      per_arity(1)
        .into_iter()
        .map(|(n, s)| -> Case {
          (
            desc("delta d + d delta", &n.to_string(), s),
            Box::new(move || {
              let f = &draw(&[n], s)[0];
              Ok(f.hdiff().cdelta()?.add(&f.cdelta()?.hdiff())?.is_zero())
            }),
          )
        })
        .collect(),
    ));
    let pairs: Vec<(usize, usize, usize)> = (0..=max).cartesian_product(0..=max).filter(|(p, q)| p + q <= max).cartesian_product(seeds.clone()).map(|((p, q), s)| (p, q, s)).collect();
    out.push(run_cases(
      format!("{name}: cup product is a derivation of hdiff"),
      pairs
        .into_iter()
        .map(|(p, q, s)| -> Case {
          (
            desc("Leibniz", &format!("({p},{q})"), s),
            Box::new(move || {
              let fs = draw(&[p, q], s);
              let (f, g) = (&fs[0], &fs[1]);
              let lhs = f.cup(g)?.hdiff();
              let mut rhs = f.hdiff().cup(g)?;
              rhs.add_assign_scaled(&f.cup(&g.hdiff())?, &sign(p % 2 == 1));
              Ok(lhs == rhs)
            }),
          )
        })
        .collect(),
    ));
  }
  out
}

fn suite_action(config: &SuiteConfig, algebras: &[Arc<FrobeniusAlgebra>]) -> Vec<CheckResult> {
  let mut out = Vec::new();
  let cells = cells_upto(config.n, config.max_degree);
  let max = config.max_arity;
  for a in algebras {
    let name = a.name();
    let draw = move |ar: &[usize], s: usize| random_cochains(a, ar, &mut rng_for(config.seed, s));
    let unary: Vec<(usize, usize)> = (1..=max + 1).cartesian_product(0..config.trials.min(5)).collect();
    out.push(run_cases(
      format!("{name}: t0 acts as the identity"),
      unary
        .iter()
        .map(|&(n, s)| -> Case { (format!("{} arity {n} seed {s}", DecoratedTree::t0()), Box::new(move || Ok(act(&DecoratedTree::t0(), &draw(&[n], s))? == draw(&[n], s)[0]))) })
        .collect(),
    ));
    out.push(run_cases(
      format!("{name}: O' acts as Connes' delta"),
      unary
        .iter()
        .map(|&(n, s)| -> Case {
          (format!("{} arity {n} seed {s}", DecoratedTree::o_prime()), Box::new(move || Ok(act(&DecoratedTree::o_prime(), &draw(&[n], s))? == draw(&[n], s)[0].cdelta()?)))
        })
        .collect(),
    ));
    let pairs: Vec<Vec<usize>> = arity_tuples(2, max);
    out.push(run_cases(
      format!("{name}: the product tree acts as the cup product"),
      pairs
        .iter()
        .enumerate()
        .map(|(s, ar)| -> Case {
          (format!("{} arities {ar:?} seed {s}", DecoratedTree::product(2)), Box::new(move || {
            let fs = draw(ar, s);
            Ok(act(&DecoratedTree::product(2), &fs)? == fs[0].cup(&fs[1])?)
          }))
        })
        .collect(),
    ));
    let mut brace_cases: Vec<Case> = Vec::new();
    for k in 0..=2u32 {
      for i in 0..=k as usize {
        for ar in arity_tuples(k as usize + 1, max + 1).into_iter().filter(|ar| ar[0] >= 1) {
          let s = brace_cases.len();
          let t = DecoratedTree::brace_cell(k, i);
          brace_cases.push((format!("{t} arities {ar:?} seed {s}"), Box::new(move || {
            let fs = draw(&ar, s);
            match (act(&t, &fs), fs[0].cyclic_brace(&fs[1..], i)) {
              (Ok(x), Ok(y)) => Ok(x == y),
              (Err(_), Err(_)) => Ok(true),
              _ => Ok(false),
            }
          })));
        }
      }
    }
    out.push(run_cases(format!("{name}: spined brace cells act as cyclic braces"), brace_cases));
    let mut cm: Vec<Case> = Vec::new();
    for t in &cells {
      for ar in arity_tuples(t.arity(), max) {
        let s = cm.len();
        cm.push((format!("{t} arities {ar:?} seed {s}"), Box::new(move || check_chain_map(t, &draw(&ar, s)))));
      }
    }
    out.push(run_cases(format!("{name}: the action is a chain map"), cm));
    let mut op: Vec<Case> = Vec::new();
    for t in &cells {
      for tp in &cells {
        for i in 1..=t.arity() {
          for ar in arity_tuples(t.arity() + tp.arity() - 1, max) {
            let s = op.len();
            op.push((format!("{t} o{i} {tp} arities {ar:?} seed {s}"), Box::new(move || check_operadicity(t, i, tp, &draw(&ar, s)))));
          }
        }
      }
    }
    out.push(run_cases(format!("{name}: the action is operadic"), op));
  }
  out
}

fn suite_bv(config: &SuiteConfig, algebras: &[Arc<FrobeniusAlgebra>]) -> Vec<CheckResult> {
  let mut out = Vec::new();
  let top = config.max_degree;
  for a in algebras {
    let name = a.name();
    let hh: Vec<Cohomology> = (0..=top).into_par_iter().map(|k| Cohomology::compute(a, k)).collect();
    let dims: Vec<usize> = hh.iter().map(Cohomology::dim).collect();
    let reps: Vec<(usize, usize)> = (0..=top).flat_map(|k| (0..dims[k]).map(move |j| (k, j))).collect();
    let hh = &hh;
    let rep = move |(k, j): (usize, usize)| &hh[k].representatives[j];
    out.push(run_cases(
      format!("{name}: delta squares to zero on HH"),
      reps
        .iter()
        .map(|&x| -> Case {
          (format!("HH^{} class {}", x.0, x.1), Box::new(move || Ok(rep(x).bv_delta().and_then(|d| d.bv_delta()).is_none_or(|dd| hh[x.0 - 2].is_coboundary(&dd)))))
        })
        .collect(),
    ));
    let pairs: Vec<((usize, usize), (usize, usize))> = reps.iter().copied().cartesian_product(reps.iter().copied()).filter(|(x, y)| x.0 + y.0 <= top && x.0 + y.0 >= 1).collect();
    out.push(run_cases(
      format!("{name}: the bracket induced by delta is the Gerstenhaber bracket"),
      pairs
        .iter()
        .map(|&(x, y)| -> Case {
          (format!("HH^{} class {} with HH^{} class {}", x.0, x.1, y.0, y.1), Box::new(move || {
            let br = Cochain::bv_bracket(rep(x), rep(y))?.expect("positive degree");
            Ok(hh[x.0 + y.0 - 1].is_coboundary(&br.sub(&rep(x).bracket(rep(y))?)?))
          }))
        })
        .collect(),
    ));
    let triples: Vec<[(usize, usize); 3]> =
      reps.iter().copied().cartesian_product(reps.iter().copied()).cartesian_product(reps.iter().copied()).map(|((x, y), z)| [x, y, z]).filter(|t| t.iter().map(|x| x.0).sum::<usize>() <= top).collect();
    out.push(run_cases(
      format!("{name}: seven-term BV identity"),
      triples
        .iter()
        .map(|&[x, y, z]| -> Case {
          (format!("HH classes {x:?} {y:?} {z:?}"), Box::new(move || {
            Ok(match Cochain::bv_seven_term(rep(x), rep(y), rep(z))? {
              Some(d) => hh[x.0 + y.0 + z.0 - 1].is_coboundary(&d),
              None => true,
            })
          }))
        })
        .collect(),
    ));
    if let Some(c) = out.last_mut() {
      c.detail = Some(serde_json::json!({ "hh_dims": dims }));
    }
  }
  out
}

/// Associativity of `∘` on basis cells, both sequential and parallel.
pub fn check_associativity(a: &DecoratedTree, i: usize, b: &DecoratedTree, c: &DecoratedTree) -> Result<bool> {
  let (sa, sb, sc) = (ChainElement::from_tree(a.clone()), ChainElement::from_tree(b.clone()), ChainElement::from_tree(c.clone()));
  let m = b.arity();
  let ab = compose_chains(&sa, i, &sb)?;
  for j in 1..=m {
    let lhs = compose_chains(&ab, i + j - 1, &sc)?;
    if lhs != compose_chains(&sa, i, &compose_chains(&sb, j, &sc)?)? {
      return Ok(false);
    }
  }
  for j in (i + 1)..=a.arity() {
    let lhs = compose_chains(&ab, j + m - 1, &sc)?;
    let rhs = compose_chains(&compose_chains(&sa, j, &sc)?, i, &sb)?;
    let s = if (b.degree() * c.degree()).is_multiple_of(2) { 1 } else { -1 };
    if lhs != rhs.scale(&s.into()) {
      return Ok(false);
    }
  }
  Ok(true)
}

/// Equivariance of `∘_i` under relabelling either factor.
pub fn check_equivariance(a: &DecoratedTree, i: usize, b: &DecoratedTree, sigma: &[u32], tau: &[u32]) -> Result<bool> {
  let c = compose(a, i, b)?;
  let outer = compose(&a.relabel(sigma)?, sigma[i - 1] as usize, b)? == relabel_chain(&c, &block_permutation(sigma, i, b.arity()))?;
  let inner = compose(a, i, &b.relabel(tau)?)? == relabel_chain(&c, &inner_permutation(a.arity(), i, tau))?;
  Ok(outer && inner)
}

fn suite_operad(config: &SuiteConfig) -> Vec<CheckResult> {
  let cells = cells_upto(config.n, config.max_degree);
  let t0 = DecoratedTree::t0();
  let mut out = Vec::new();
  let unit: Vec<Case> = cells
    .iter()
    .map(|t| -> Case {
      let t0 = t0.clone();
      (t.to_string(), Box::new(move || {
        let me = ChainElement::from_tree(t.clone());
        Ok(compose(&t0, 1, t)? == me && (1..=t.arity()).map(|i| compose(t, i, &t0)).collect::<Result<Vec<_>>>()?.iter().all(|c| *c == me))
      }))
    })
    .collect();
  out.push(run_cases("t0 is a two-sided unit", unit));
  let mut assoc: Vec<Case> = Vec::new();
  for (a, b, c) in cells.iter().cartesian_product(&cells).cartesian_product(&cells).map(|((a, b), c)| (a, b, c)) {
    for i in 1..=a.arity() {
      assoc.push((format!("({a} o{i} {b}) with {c}"), Box::new(move || check_associativity(a, i, b, c))));
    }
  }
  out.push(run_cases("composition is associative", assoc));
  let mut equi: Vec<Case> = Vec::new();
  for (a, b) in cells.iter().cartesian_product(&cells) {
    for i in 1..=a.arity() {
      for sigma in (1..=a.arity() as u32).permutations(a.arity()) {
        for tau in (1..=b.arity() as u32).permutations(b.arity()) {
          let sigma = sigma.clone();
          equi.push((format!("{a} o{i} {b} sigma {sigma:?} tau {tau:?}"), Box::new(move || check_equivariance(a, i, b, &sigma, &tau))));
        }
      }
    }
  }
  out.push(run_cases("composition is equivariant", equi));
  // random instances one lobe and one degree beyond the exhaustive range
  let pool = cells_upto(config.n + 1, config.max_degree + 1);
  let pool = &pool;
  let random: Vec<Case> = (0..config.trials)
    .map(|s| -> Case {
      let mut rng = rng_for(config.seed, s);
      let mut pick = || loop {
        let t = pool.choose(&mut rng).expect("nonempty pool");
        if t.arity() <= config.n + 1 {
          break t.clone();
        }
      };
      let (a, b, c) = (pick(), pick(), pick());
      let i = rng.gen_range(1..=a.arity());
      let mut sigma: Vec<u32> = (1..=a.arity() as u32).collect();
      sigma.shuffle(&mut rng);
      let mut tau: Vec<u32> = (1..=b.arity() as u32).collect();
      tau.shuffle(&mut rng);
      (format!("seed {s}: ({a} o{i} {b}) with {c}, sigma {sigma:?}, tau {tau:?}"), Box::new(move || Ok(check_associativity(&a, i, &b, &c)? && check_equivariance(&a, i, &b, &sigma, &tau)?)))
    })
    .collect();
  out.push(run_cases("random larger instances", random));
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn poincare_polynomials() {
    assert_eq!(poincare(2, 2), vec![1, 3, 3, 1]);
    assert_eq!(poincare(2, 0), vec![1, 1]);
    assert_eq!(poincare(1, 1), vec![1, 1]);
    assert_eq!(poincare(3, 3), vec![1, 6, 14, 16, 9, 2]);
  }

  #[test]
  fn unknown_suite_and_bad_config() {
    let c = SuiteConfig::default_for("d2").unwrap();
    assert!(matches!(run_suite("nope", &c), Err(CactiError::UnknownSuite(_))));
    assert!(matches!(SuiteConfig::default_for("nope"), Err(CactiError::UnknownSuite(_))));
    let bad = SuiteConfig { n: 0, ..c };
    assert!(matches!(run_suite("d2", &bad), Err(CactiError::Config(_))));
  }

  #[test]
  fn small_suites_pass() {
    let c = SuiteConfig { n: 2, max_degree: 3, ..SuiteConfig::default_for("d2").unwrap() };
    let r = run_suite("d2", &c).unwrap();
    assert!(r.ok(), "{r:?}");
    let h = run_suite("homology", &SuiteConfig { n: 2, ..SuiteConfig::default_for("homology").unwrap() }).unwrap();
    assert!(h.ok());
    assert_eq!(h.checks[2].detail, Some(serde_json::json!([1, 3, 3, 1])));
  }
}
