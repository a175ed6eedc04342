//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;

use cacti::harness::{run_suite, CheckResult, Status, SuiteConfig};

fn config(suite: &str, f: impl FnOnce(&mut SuiteConfig)) -> SuiteConfig {
  let mut c = SuiteConfig::default_for(suite).expect("known suite");
  f(&mut c);
  c
}

fn algs(xs: &[&str]) -> Vec<String> { xs.iter().map(|s| s.to_string()).collect() }

fn checks(suite: &str, c: &SuiteConfig) -> Vec<CheckResult> { run_suite(suite, c).expect("valid config").checks }

fn report(k: usize, what: &str, checks: &[&CheckResult]) -> bool {
  let bad: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
  let instances: usize = checks.iter().map(|c| c.instances).sum();
  if bad.is_empty() {
    println!("criterion {k:>2}: PASS  {what} ({} checks, {instances} instances)", checks.len());
  } else {
    println!("criterion {k:>2}: FAIL  {what}");
    for c in bad {
      println!("    {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
    }
  }
  checks.iter().all(|c| c.status == Status::Pass) && !checks.is_empty()
}

fn all(v: &[CheckResult]) -> Vec<&CheckResult> { v.iter().collect() }

fn main() -> ExitCode {
  let mut ok = true;

  let d2 = checks("d2", &config("d2", |c| (c.n, c.max_degree) = (3, 4)));
  ok &= report(1, "boundary squares to zero, n <= 3, degree <= 4", &all(&d2));

  let euler = checks("euler", &config("euler", |c| c.n = 3));
  ok &= report(2, "cell counts of K'(1), K(2) and Euler characteristics", &all(&euler));

  let homology = checks("homology", &config("homology", |c| c.n = 2));
  ok &= report(3, "Betti numbers of K'(1), K'(2), K(2)", &all(&homology));

  let frob = checks("frobenius", &config("frobenius", |c| c.algebras = algs(&["dual", "z2", "z3", "m2"])));
  ok &= report(4, "builtin Frobenius algebras and the snake identity", &all(&frob));

  let hh = checks(
    "hochschild",
    &config("hochschild", |c| {
      c.algebras = algs(&["dual", "z2", "z3", "m2"]);
      (c.max_arity, c.trials) = (4, 50);
    }),
  );
  ok &= report(5, "Hochschild identities on random cochains", &all(&hh));

  let action = checks(
    "action",
    &config("action", |c| {
      c.algebras = algs(&["dual", "z2"]);
      (c.n, c.max_degree, c.max_arity) = (2, 1, 2);
    }),
  );
  let pick = |needle: &str| action.iter().filter(|c| c.name.contains(needle)).collect::<Vec<_>>();
  let named: Vec<_> = ["identity", "Connes", "cup product", "cyclic braces"].iter().flat_map(|n| pick(n)).collect();
  ok &= report(6, "named actions t0, O', product, cyclic braces", &named);
  ok &= report(7, "operadicity of the action", &pick("operadic"));
  ok &= report(8, "the action is a chain map", &pick("chain map"));

  let bv = checks(
    "bv",
    &config("bv", |c| {
      c.algebras = algs(&["dual", "z2"]);
      c.max_degree = 3;
    }),
  );
  ok &= report(9, "BV identities on HH* up to degree 3", &all(&bv));

  let operad = checks(
    "operad",
    &config("operad", |c| {
      (c.n, c.max_degree, c.trials) = (2, 1, 100);
    }),
  );
  ok &= report(10, "operad axioms on chains", &all(&operad));

  if ok {
    ExitCode::SUCCESS
  } else {
    ExitCode::FAILURE
  }
}
