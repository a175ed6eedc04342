//! Correlators of realized trees and the induced action of cells on
//! normalized Hochschild cochains.
//!
//! Every internal edge carries the Casimir element. A white vertex `v` with
//! cochain `f` contributes `η(s_0, f(s_1, .., s_k))` where `s_0..s_k` are its
//! slots read counterclockwise from the start flag; a black vertex contributes
//! `η(1, s_1 ⋯ s_m)`. The root flag carries `a_0`, free tails carry
//! `a_1..a_N` in planar order and spines carry the unit.

use std::{collections::BTreeMap, sync::Arc};

use itertools::Itertools;
use num_traits::Zero;

use crate::{
  chain::ChainElement,
  error::{CactiError, Result},
  frobenius::FrobeniusAlgebra,
  hochschild::{digits, Cochain, DualTensor},
  planar::{Kind, PlanarTree, RealizedTree, ROOT},
  rational::Q,
  tree::DecoratedTree,
};

struct Network<'a> {
  tree:   &'a PlanarTree,
  alg:    &'a FrobeniusAlgebra,
  fs:     &'a BTreeMap<u32, &'a Cochain>,
  inputs: BTreeMap<usize, Vec<Q>>,
}

impl Network<'_> {
  /// Element sitting in the slot of `v` that faces `u` (a neighbour of `v`),
  /// i.e. what the subtree beyond `u` feeds into `v`.
  fn incoming(&self, u: usize, v: usize) -> Vec<Q> {
    match self.tree.kind[u] {
      Kind::Tail => self.inputs[&u].clone(),
      Kind::Spine => self.alg.unit().to_vec(),
      _ => {
        // an internal edge: contract the subtree's covector with the Casimir
        let cov = self.covector(u, v);
        let d = self.alg.dim();
        (0..d).map(|y| (0..d).filter(|&x| !cov[x].is_zero()).map(|x| &cov[x] * self.alg.eta_inv(x, y)).sum()).collect()
      },
    }
  }

  /// Value of the subtree at `v` (away from `parent`) as a function of the
  /// basis element placed in `v`'s slot facing `parent`.
  fn covector(&self, v: usize, parent: usize) -> Vec<Q> {
    let d = self.alg.dim();
    match self.tree.kind[v] {
      Kind::Black => {
        let rot = self.tree.rotated(v, parent);
        let rest: Vec<Vec<Q>> = rot[1..].iter().map(|&u| self.incoming(u, v)).collect();
        let mut prod = self.alg.unit().to_vec();
        for r in &rest {
          prod = self.alg.mul(&prod, r);
        }
        // η(1, e_x · prod) = η(e_x, prod)
        (0..d).map(|x| (0..d).filter(|&j| !prod[j].is_zero()).map(|j| self.alg.eta(x, j) * &prod[j]).sum()).collect()
      },
      Kind::White(label) => {
        let f = self.fs[&label];
        let start = self.tree.start[v].expect("white start");
        let rot = self.tree.rotated(v, start);
        let k = rot.iter().position(|&u| u == parent).unwrap();
        let slots: Vec<Option<Vec<Q>>> = rot.iter().map(|&u| if u == parent { None } else { Some(self.incoming(u, v)) }).collect();
        (0..d)
          .map(|x| {
            let mut e = vec![Q::zero(); d];
            e[x] = Q::from_integer(1.into());
            let full: Vec<Vec<Q>> = slots.iter().enumerate().map(|(i, s)| if i == k { e.clone() } else { s.clone().unwrap() }).collect();
            let out = f.eval(&full[1..]);
            self.alg.pair(&full[0], &out)
          })
          .collect()
      },
      _ => unreachable!("covector at a leaf"),
    }
  }
}

/// Unsigned correlator tensor `(a_0, a_1, .., a_N) ↦ value` of a realized tree.
/// Every white vertex must have exactly `arity + 1` slots.
pub fn correlator_tensor(r: &RealizedTree, fs: &BTreeMap<u32, &Cochain>) -> Result<DualTensor> {
  let t = &r.tree;
  let alg = fs.values().next().map(|f| f.algebra().clone()).ok_or(CactiError::ZeroArity)?;
  for (v, k) in t.kind.iter().enumerate() {
    if let Kind::White(l) = k {
      let f = fs.get(l).ok_or(CactiError::InvalidSlot { slot: *l as usize, arity: fs.len() })?;
      if !crate::hochschild::same_algebra(f.algebra(), &alg) {
        return Err(CactiError::AlgebraMismatch);
      }
      if t.nbrs[v].len() != f.arity() + 1 {
        return Err(CactiError::ArityMismatch { expected: f.arity() + 1, got: t.nbrs[v].len() });
      }
    }
  }
  let tails = r.tails();
  let d = alg.dim();
  let n = tails.len();
  let mut out = DualTensor::zero(&alg, n + 1);
  let stride = d.pow(n as u32);
  for idx in 0..stride {
    let a = digits(idx, d, n);
    let inputs = tails
      .iter()
      .zip(&a)
      .map(|(&tl, &i)| {
        let mut e = vec![Q::zero(); d];
        e[i] = Q::from_integer(1.into());
        (tl, e)
      })
      .collect();
    let net = Network { tree: t, alg: &alg, fs, inputs };
    let cov = net.covector(t.base(), ROOT);
    for (a0, v) in cov.into_iter().enumerate() {
      out.data_mut()[a0 * stride + idx] = v;
    }
  }
  Ok(out)
}

/// Evaluates a single correlator on explicit inputs `a_0..a_N` (basis indices).
pub fn correlate(r: &RealizedTree, fs: &BTreeMap<u32, &Cochain>, inputs: &[usize], sign: i8) -> Result<Q> {
  let tensor = correlator_tensor(r, fs)?;
  if inputs.len() != r.tails().len() + 1 {
    return Err(CactiError::ArityMismatch { expected: r.tails().len() + 1, got: inputs.len() });
  }
  let v = tensor.at(inputs).clone();
  Ok(if sign < 0 { -v } else { v })
}

/// All tail plans compatible with the cochain arities: each white vertex gets
/// `arity + 1 - val - dec` tails spread over its `val + dec` gaps. Empty if
/// some vertex would need a negative number of tails.
pub fn tail_plans(t: &DecoratedTree, arities: &BTreeMap<u32, usize>) -> Vec<Vec<(u32, usize)>> {
  let mut per_vertex = Vec::new();
  for w in t.whites() {
    let gaps = w.val() + usize::from(w.dec);
    let Some(k) = (arities[&w.label] + 1).checked_sub(gaps) else { return Vec::new() };
    let opts: Vec<Vec<(u32, usize)>> = (0..gaps).combinations_with_replacement(k).map(|gs| gs.into_iter().map(|g| (w.label, g)).collect()).collect();
    per_vertex.push(opts);
  }
  per_vertex.into_iter().multi_cartesian_product().map(|parts| parts.concat()).collect()
}

/// Realization with tail identities matching their planar order.
pub fn realize_planar(t: &DecoratedTree, plan: &[(u32, usize)]) -> Result<RealizedTree> {
  let mut r = RealizedTree::realize(t, plan)?;
  r.ids = r.tails().into_iter().enumerate().map(|(k, tl)| (tl, k)).collect();
  Ok(r)
}

/// Sign attached to a realized tree in the action.
pub type SignFn<'a> = &'a dyn Fn(&RealizedTree, &BTreeMap<u32, usize>) -> i8;

/// Action of a cell on cochains `fs[0]` (label 1), `fs[1]` (label 2), ...
pub fn act_with(t: &DecoratedTree, fs: &[Cochain], sign: SignFn) -> Result<Cochain> {
  if fs.len() != t.arity() {
    return Err(CactiError::ArityMismatch { expected: t.arity(), got: fs.len() });
  }
  let alg: Arc<FrobeniusAlgebra> = fs[0].algebra().clone();
  let total: usize = fs.iter().map(Cochain::arity).sum();
  let n = total.checked_sub(t.degree()).ok_or(CactiError::ArityMismatch { expected: t.degree(), got: total })?;
  let map: BTreeMap<u32, &Cochain> = fs.iter().enumerate().map(|(i, f)| (i as u32 + 1, f)).collect();
  let arities: BTreeMap<u32, usize> = map.iter().map(|(&l, f)| (l, f.arity())).collect();
  let d = alg.dim();
  let mut acc = DualTensor::zero(&alg, n + 1);
  for plan in tail_plans(t, &arities) {
    let r = realize_planar(t, &plan)?;
    let s = sign(&r, &arities);
    let tensor = correlator_tensor(&r, &map)?;
    for (a, b) in acc.data_mut().iter_mut().zip(tensor.data()) {
      if !b.is_zero() {
        if s > 0 {
          *a += b;
        } else {
          *a -= b;
        }
      }
    }
  }
  debug_assert_eq!(acc.data().len(), d.pow(n as u32 + 1));
  Ok(acc.undualize())
}

/// Action of a cell on cochains `fs[0]` (label 1), `fs[1]` (label 2), ...
/// with the orientation signs of its realizations.
pub fn act(t: &DecoratedTree, fs: &[Cochain]) -> Result<Cochain> { act_with(t, fs, &|r, ar| r.orientation_sign(ar)) }

/// Linear extension of [`act`] to chains. Terms whose cells cannot absorb the
/// given arities contribute nothing.
pub fn act_chain(c: &ChainElement, fs: &[Cochain]) -> Result<Cochain> {
  if fs.len() != c.n {
    return Err(CactiError::ArityMismatch { expected: c.n, got: fs.len() });
  }
  let alg = fs.first().ok_or(CactiError::ZeroArity)?.algebra().clone();
  let total: usize = fs.iter().map(Cochain::arity).sum();
  let n = total.checked_sub(c.degree).ok_or(CactiError::ArityMismatch { expected: c.degree, got: total })?;
  let mut out = Cochain::zero(&alg, n);
  for (t, k) in c.terms() {
    out.add_assign_scaled(&act(t, fs)?, &Q::from_integer(k.clone()));
  }
  Ok(out)
}

/// `act` with "not enough inputs" read as the zero operation.
fn act_or_zero(t: &DecoratedTree, fs: &[Cochain]) -> Result<Option<Cochain>> {
  match act(t, fs) {
    Ok(c) => Ok(Some(c)),
    Err(CactiError::ArityMismatch { .. }) if fs.len() == t.arity() => Ok(None),
    Err(e) => Err(e),
  }
}

/// `act(t ∘_i t')(f) = (-1)^{deg t' · Σ_{j<i}|f_j|} act(t)(f_1, .., act(t')(f_i, ..), ..)`.
/// Returns `true` when the two sides agree; vacuous when the left side has
/// no inputs to spare.
pub fn check_operadicity(t: &DecoratedTree, i: usize, tp: &DecoratedTree, fs: &[Cochain]) -> Result<bool> {
  let m = tp.arity();
  let composite = crate::operad::compose(t, i, tp)?;
  let Ok(lhs) = act_chain(&composite, fs) else { return Ok(true) };
  let inner = act_or_zero(tp, &fs[i - 1..i - 1 + m])?;
  let rhs = match inner {
    None => None,
    Some(g) => {
      let mut args: Vec<Cochain> = fs[..i - 1].to_vec();
      args.push(g);
      args.extend_from_slice(&fs[i - 1 + m..]);
      act_or_zero(t, &args)?
    },
  };
  let before: usize = fs[..i - 1].iter().map(Cochain::arity).sum();
  Ok(match rhs {
    None => lhs.is_zero(),
    Some(r) if tp.degree() * before % 2 == 1 => lhs == r.scale(&-Q::from_integer(1.into())),
    Some(r) => lhs == r,
  })
}

/// `hdiff(act(t)f) = act(∂t)f + Σ_i (-1)^{deg t + Σ_{j<i}|f_j|} act(t)(.., ∂f_i, ..)`.
/// When `act(t)f` has no output the left side is zero.
pub fn check_chain_map(t: &DecoratedTree, fs: &[Cochain]) -> Result<bool> {
  let k = t.degree();
  let total: usize = fs.iter().map(Cochain::arity).sum();
  if total + 1 < k {
    return Ok(true);
  }
  let alg = fs.first().ok_or(CactiError::ZeroArity)?.algebra().clone();
  let lhs = match act_or_zero(t, fs)? {
    Some(x) => x.hdiff(),
    None => Cochain::zero(&alg, 0),
  };
  let mut rhs = Cochain::zero(&alg, total + 1 - k);
  if k > 0 {
    for (s, c) in crate::chain::boundary_tree(t).terms() {
      rhs.add_assign_scaled(&act(s, fs)?, &Q::from_integer(c.clone()));
    }
  }
  let mut before = 0;
  for i in 0..fs.len() {
    let mut gs = fs.to_vec();
    gs[i] = fs[i].hdiff();
    if let Some(v) = act_or_zero(t, &gs)? {
      let s = if (k + before).is_multiple_of(2) { 1 } else { -1 };
      rhs.add_assign_scaled(&v, &Q::from_integer(s.into()));
    }
    before += fs[i].arity();
  }
  Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
  use super::*;
  use rand::SeedableRng;

  #[test]
  fn brace_cells_act_by_cyclic_braces() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for name in ["dual", "z2", "z3"] {
      let a = Arc::new(FrobeniusAlgebra::builtin(name).unwrap());
      for n in 0..=2u32 {
        for i in 0..=n as usize {
          for far in 1..=3usize {
            for gar in (0..n).map(|_| 0..=2usize).multi_cartesian_product() {
              let f = Cochain::random(&a, far, &mut rng);
              let gs: Vec<Cochain> = gar.iter().map(|&m| Cochain::random(&a, m, &mut rng)).collect();
              let mut fs = vec![f.clone()];
              fs.extend(gs.iter().cloned());
              let (Ok(x), Ok(y)) = (act(&DecoratedTree::brace_cell(n, i), &fs), f.cyclic_brace(&gs, i)) else { continue };
              assert_eq!(x, y, "{name} n={n} i={i} |f|={far} |g|={gar:?}");
            }
          }
        }
      }
    }
  }

  #[test]
  fn chain_map_and_operadicity_on_small_cells() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let cells: Vec<DecoratedTree> = (1..=2).flat_map(|n| crate::tree::enumerate_cells(n, 2)).collect();
    for name in ["dual"] {
      let a = Arc::new(FrobeniusAlgebra::builtin(name).unwrap());
      for t in &cells {
        for ar in (0..t.arity()).map(|_| 0..=2usize).multi_cartesian_product() {
          let fs: Vec<Cochain> = ar.iter().map(|&n| Cochain::random(&a, n, &mut rng)).collect();
          assert!(check_chain_map(t, &fs).unwrap(), "{name} {t} {ar:?}");
        }
      }
      for t in cells.iter().filter(|t| t.degree() <= 1) {
        for tp in cells.iter().filter(|tp| tp.degree() <= 1) {
          for i in 1..=t.arity() {
            for ar in (0..t.arity() + tp.arity() - 1).map(|_| 0..=2usize).multi_cartesian_product() {
              let fs: Vec<Cochain> = ar.iter().map(|&n| Cochain::random(&a, n, &mut rng)).collect();
              assert!(check_operadicity(t, i, tp, &fs).unwrap(), "{name} {t} ∘{i} {tp} {ar:?}");
            }
          }
        }
      }
    }
  }
}
