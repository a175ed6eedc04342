//! The chain-level operad on decorated trees: partial composition by
//! substituting a tree into a white vertex, relabelling, and full composition.
//!
//! To compose `t' ` into vertex `v` of `t`, the flags of `v` are read from its
//! start flag. The first one (the marked black vertex, or the spine) receives
//! the base black of `t'`; the remaining branches are distributed over the
//! gaps of the outer perimeter of `t'` in planar order. Local zeros stay where
//! they are, so re-reading the result from the root moves marks as needed.

use std::{
  collections::{BTreeMap, HashMap},
  sync::RwLock,
};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{
  chain::ChainElement,
  error::{CactiError, Result},
  linalg::Matrix,
  planar::{Kind, PlanarTree, RealizedTree, ROOT},
  rational::Q,
  tree::DecoratedTree,
};

/// One term of a composition: which perimeter gap of `t'` receives each
/// branch of the substituted vertex, the resulting cell and its orientation
/// relative to the product cell `t × t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grafting {
  pub gaps: Vec<usize>,
  pub tree: DecoratedTree,
  pub sign: i8,
}

/// Perimeter gaps of a planar tree in planar order: `(white, anchor)` means
/// the slot right after `anchor` in the white's neighbour list read from its
/// parent.
fn perimeter(p: &PlanarTree) -> Vec<(usize, usize)> {
  fn walk(p: &PlanarTree, w: usize, parent: usize, out: &mut Vec<(usize, usize)>) {
    out.push((w, parent));
    for c in p.children(w, parent) {
      if p.kind[c] == Kind::Black {
        for x in p.children(c, w) {
          walk(p, x, c, out);
        }
      }
      out.push((w, c));
    }
  }
  let mut out = Vec::new();
  let base = p.base();
  for w in p.children(base, ROOT) {
    walk(p, w, base, &mut out);
  }
  out
}

/// Copies `q` (without its root node) into `p`, returning the id map.
fn splice(p: &mut PlanarTree, q: &PlanarTree, shift: u32) -> Vec<usize> {
  let ids: Vec<usize> = (0..q.kind.len())
    .map(|v| {
      if v == ROOT {
        return usize::MAX;
      }
      let kind = match q.kind[v] {
        Kind::White(l) => Kind::White(l + shift),
        k => k,
      };
      p.add(kind)
    })
    .collect();
  for v in 1..q.kind.len() {
    p.nbrs[ids[v]] = q.nbrs[v].iter().filter(|&&x| x != ROOT).map(|&x| ids[x]).collect();
    p.start[ids[v]] = q.start[v].map(|x| ids[x]);
  }
  ids
}

/// Affine coordinates of a white vertex from the lengths of the pieces of
/// its perimeter (`piece(e)` is the piece following neighbour `e`): angles
/// `1..val` then the distance from the preceding flag to the spine.
fn white_coords(list: &[usize], spine: Option<usize>, piece: &dyn Fn(usize) -> Q) -> Vec<Q> {
  let mut angles = Vec::new();
  let mut cur = Q::zero();
  let mut u = None;
  for (k, &e) in list.iter().enumerate() {
    if Some(e) == spine {
      u = Some(cur.clone());
      cur += piece(e);
    } else {
      if k > 0 {
        angles.push(std::mem::take(&mut cur));
      }
      cur = piece(e);
    }
  }
  angles.push(cur);
  angles.remove(0);
  angles.extend(u);
  angles
}

/// Free coordinate directions of a white vertex as piece perturbations, in
/// the order of [`white_coords`].
fn white_directions(list: &[usize], spine: Option<usize>) -> Vec<Vec<(usize, i64)>> {
  // last piece of each angle
  let mut last = Vec::new();
  for &e in list {
    if Some(e) == spine {
      *last.last_mut().expect("spine after a flag") = e;
    } else {
      last.push(e);
    }
  }
  let mut dirs: Vec<Vec<(usize, i64)>> = (1..last.len()).map(|a| vec![(last[a], 1), (last[0], -1)]).collect();
  if let Some(sp) = spine {
    let k = list.iter().position(|&e| e == sp).unwrap();
    dirs.push(vec![(list[k - 1], 1), (sp, -1)]);
  }
  dirs
}

struct Surgery<'a> {
  p:       &'a PlanarTree,
  q:       &'a PlanarTree,
  ids:     &'a [usize],
  v:       usize,
  start:   usize,
  bq:      usize,
  gaps:    &'a [(usize, usize)],
  lobes:   usize,
}

impl Surgery<'_> {
  fn spine_of(t: &PlanarTree, list: &[usize]) -> Option<usize> { list.iter().copied().find(|&x| t.kind[x] == Kind::Spine) }

  /// Coordinates of the product cell `t × t'` at the point of the grafted
  /// tree `r` whose pieces are `piece`.
  fn source_coords(&self, r: &PlanarTree, piece: &dyn Fn(usize, usize) -> Q) -> Vec<Q> {
    let bq = self.bq;
    let merged = self.p.kind[self.start] != Kind::Spine;
    // neighbour lists of t' vertices inside r, with the base black restored
    let rlist = |w: usize| -> Vec<usize> { r.nbrs[w].iter().map(|&x| if merged && x == self.start { bq } else { x }).collect() };
    let rpiece = |w: usize, e: usize| -> Q { piece(w, if merged && e == bq { self.start } else { e }) };
    let qnb = |w: usize| -> Vec<usize> { self.q_nbrs(w) };
    // pieces of t' vertices: sums of r pieces up to the next original neighbour
    let qpiece = |w: usize, e: usize| -> Q {
      let l = rlist(w);
      let orig = qnb(w);
      let k = l.iter().position(|&x| x == e).expect("neighbour kept");
      let mut acc = Q::zero();
      for i in 0..l.len() {
        let x = l[(k + i) % l.len()];
        if i > 0 && orig.contains(&x) {
          break;
        }
        acc += rpiece(w, x);
      }
      acc
    };
    // perimeter positions of the branches
    let mut pos: BTreeMap<usize, Q> = BTreeMap::new();
    let mut cum = Q::zero();
    for &(w, anchor) in self.gaps {
      let l = rlist(w);
      let orig = qnb(w);
      let k = l.iter().position(|&x| x == anchor).unwrap();
      for i in 0..l.len() {
        let x = l[(k + i) % l.len()];
        if i > 0 && orig.contains(&x) {
          break;
        }
        if i > 0 {
          pos.insert(x, cum.clone());
        }
        cum += rpiece(w, x);
      }
    }
    let m = Q::from_integer(self.lobes.into());
    let at = |x: usize| -> Q { if x == self.start { Q::zero() } else { pos[&x].clone() } };
    let vpiece = |e: usize| -> Q {
      let l = &self.p.nbrs[self.v];
      let k = l.iter().position(|&x| x == e).unwrap();
      let next = l[(k + 1) % l.len()];
      let end = if next == self.start { m.clone() } else { at(next) };
      (end - at(e)) / &m
    };
    let mut out = Vec::new();
    for (x, par) in self.p.preorder() {
      if !matches!(self.p.kind[x], Kind::White(_)) {
        continue;
      }
      let list: Vec<usize> = self.p.rotated(x, par);
      let spine = Self::spine_of(self.p, &list);
      if x == self.v {
        out.extend(white_coords(&list, spine, &vpiece));
      } else {
        out.extend(white_coords(&list, spine, &|e| piece(x, e)));
      }
    }
    for (x, par) in self.q.preorder() {
      if !matches!(self.q.kind[x], Kind::White(_)) {
        continue;
      }
      let w = self.ids[x];
      let list: Vec<usize> = self.q.rotated(x, par).into_iter().map(|y| self.ids[y]).collect();
      let spine = Self::spine_of(self.q, &self.q.rotated(x, par)).map(|y| self.ids[y]);
      out.extend(white_coords(&list, spine, &|e| qpiece(w, e)));
    }
    out
  }

  fn q_nbrs(&self, w: usize) -> Vec<usize> {
    let x = self.ids.iter().position(|&y| y == w).expect("vertex of t'");
    self.q.nbrs[x].iter().map(|&y| if y == ROOT { usize::MAX } else { self.ids[y] }).collect()
  }

  /// Orientation sign of the grafted cell `r` against `t × t'`.
  fn sign(&self, r: &PlanarTree) -> i8 {
    let pre: Vec<(usize, usize, Vec<usize>)> = r
      .preorder()
      .into_iter()
      .filter(|&(x, _)| matches!(r.kind[x], Kind::White(_)))
      .map(|(x, par)| (x, par, r.rotated(x, par)))
      .collect();
    let mut base: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    for (x, _, list) in &pre {
      for &e in list {
        base.insert((*x, e), Q::from_integer(1.into()) / Q::from_integer((list.len() as i64).into()));
      }
    }
    let eval = |pieces: &BTreeMap<(usize, usize), Q>| self.source_coords(r, &|w, e| pieces[&(w, e)].clone());
    let origin = eval(&base);
    let mut cols = Vec::new();
    for (x, _, list) in &pre {
      let spine = Self::spine_of(r, list);
      for dir in white_directions(list, spine) {
        let mut moved = base.clone();
        for (e, c) in dir {
          *moved.get_mut(&(*x, e)).unwrap() += Q::from_integer(c.into());
        }
        cols.push(eval(&moved).iter().zip(&origin).map(|(a, b)| a - b).collect::<Vec<Q>>());
      }
    }
    let det = Matrix::from_columns(origin.len(), &cols).det();
    assert!(!det.is_zero(), "degenerate grafting");
    if det.is_positive() { 1 } else { -1 }
  }
}

/// Identifies the base black `bq` of the inserted tree with the start of
/// `v`: merged into the marked black vertex, or left in place of the spine
/// (a lone child turns it back into a spine). False when the result is
/// degenerate.
fn contract_base(r: &mut PlanarTree, v: usize, start: usize, bq: usize) -> bool {
  let tops: Vec<usize> = r.nbrs[bq].clone();
  if r.kind[start] == Kind::Spine {
    if tops.len() == 1 {
      if r.start[tops[0]] != Some(bq) {
        return false;
      }
      r.kind[bq] = Kind::Spine;
    }
    return true;
  }
  let at = r.nbrs[start].iter().position(|&x| x == v).expect("start is a neighbour");
  r.nbrs[start].splice(at..=at, tops.iter().copied());
  for &w in &tops {
    for x in r.nbrs[w].iter_mut() {
      if *x == bq {
        *x = start;
      }
    }
    if r.start[w] == Some(bq) {
      r.start[w] = Some(start);
    }
  }
  r.nbrs[bq].clear();
  true
}

/// All terms of `t ∘_i t'`, with labels of `t'` shifted to
/// `i..i+m-1` and labels of `t` above `i` moved up by `m - 1`.
pub fn graftings(t: &DecoratedTree, i: usize, tp: &DecoratedTree) -> Result<Vec<Grafting>> {
  let n = t.arity();
  if i == 0 || i > n {
    return Err(CactiError::InvalidSlot { slot: i, arity: n });
  }
  let m = tp.arity() as u32;
  let label = i as u32;
  let mut p = PlanarTree::from_decorated(t);
  let v = p.white_of(label).expect("label present");
  for k in p.kind.iter_mut() {
    if let Kind::White(l) = k {
      if *l > label {
        *l += m - 1;
      }
    }
  }
  let q = PlanarTree::from_decorated(tp);
  let gaps = perimeter(&q);
  let ids = splice(&mut p, &q, label - 1);
  let gaps: Vec<(usize, usize)> = gaps.into_iter().map(|(w, a)| (ids[w], ids[a])).collect();
  let bq = ids[q.base()];
  let start = p.start[v].expect("white start");
  let surgery = Surgery { p: &p, q: &q, ids: &ids, v, start, bq, gaps: &gaps, lobes: tp.arity() };
  let branches: Vec<usize> = p.rotated(v, start).into_iter().skip(1).collect();
  let mut out = Vec::new();
  for choice in (0..gaps.len()).combinations_with_replacement(branches.len()) {
    let mut r = p.clone();
    for (&g, &b) in choice.iter().zip(&branches) {
      let (w, anchor) = gaps[g];
      for x in r.nbrs[b].iter_mut() {
        if *x == v {
          *x = w;
        }
      }
      // later branches in the same gap go after earlier ones
      let mut at = r.nbrs[w].iter().position(|&x| x == anchor).unwrap() + 1;
      while at < r.nbrs[w].len() && branches.contains(&r.nbrs[w][at]) {
        at += 1;
      }
      r.nbrs[w].insert(at, b);
    }
    if !contract_base(&mut r, v, start, bq) {
      continue;
    }
    r.nbrs[v].clear();
    if let Some(tree) = r.to_decorated()? {
      let sign = surgery.sign(&r);
      out.push(Grafting { gaps: choice, tree, sign });
    }
  }
  Ok(out)
}

/// `t ∘_i t'` as a chain.
pub fn compose(t: &DecoratedTree, i: usize, tp: &DecoratedTree) -> Result<ChainElement> {
  let mut out = ChainElement::zero(t.arity() + tp.arity() - 1, t.degree() + tp.degree());
  for g in graftings(t, i, tp)? {
    out.add_term(g.tree, BigInt::from(g.sign))?;
  }
  Ok(out)
}

/// Bilinear extension of [`compose`].
pub fn compose_chains(a: &ChainElement, i: usize, b: &ChainElement) -> Result<ChainElement> {
  let mut out = ChainElement::zero(a.n + b.n - 1, a.degree + b.degree);
  if i == 0 || i > a.n {
    return Err(CactiError::InvalidSlot { slot: i, arity: a.n });
  }
  for (s, x) in a.terms() {
    for (u, y) in b.terms() {
      out.add_scaled(&compose(s, i, u)?, &(x * y))?;
    }
  }
  Ok(out)
}

/// Relabels by `label ↦ sigma[label - 1]`; the shape is untouched.
pub fn relabel(t: &DecoratedTree, sigma: &[u32]) -> Result<DecoratedTree> { t.relabel(sigma) }

/// Relabels every term of a chain. Orientations do not depend on labels.
pub fn relabel_chain(c: &ChainElement, sigma: &[u32]) -> Result<ChainElement> {
  let mut out = ChainElement::zero(c.n, c.degree);
  for (t, k) in c.terms() {
    out.add_term(t.relabel(sigma)?, k.clone())?;
  }
  Ok(out)
}

/// The permutation `σ ∘_i id_m`: relabels `t ∘_i t'` into
/// `(σ·t) ∘_{σ(i)} t'` where `t'` has `m` labels.
pub fn block_permutation(sigma: &[u32], i: usize, m: usize) -> Vec<u32> {
  let si = sigma[i - 1] as usize;
  let outer = |l: usize| {
    let s = sigma[l - 1] as usize;
    if s < si { s } else { s + m - 1 }
  };
  let n = sigma.len();
  (1..n + m)
    .map(|l| match l {
      l if l < i => outer(l),
      l if l < i + m => si + l - i,
      l => outer(l - m + 1),
    } as u32)
    .collect()
}

/// The permutation `id_n ∘_i τ`: relabels `t ∘_i t'` into `t ∘_i (τ·t')`.
pub fn inner_permutation(n: usize, i: usize, tau: &[u32]) -> Vec<u32> {
  let m = tau.len();
  (1..n + m).map(|l| if l >= i && l < i + m { (i - 1) as u32 + tau[l - i] } else { l as u32 }).collect()
}

/// Full composition `γ(t; a_1, .., a_n)`, inserting from the highest slot down
/// so that lower slots keep their labels.
pub fn gamma(t: &DecoratedTree, args: &[DecoratedTree]) -> Result<ChainElement> {
  if args.len() != t.arity() {
    return Err(CactiError::ArityMismatch { expected: t.arity(), got: args.len() });
  }
  let mut acc = ChainElement::from_tree(t.clone());
  for (i, a) in args.iter().enumerate().rev() {
    acc = compose_chains(&acc, i + 1, &ChainElement::from_tree(a.clone()))?;
  }
  Ok(acc)
}

/// Substitutes the realization `rp` into vertex `i` of `r`: the root edge of
/// `rp` goes to the start flag of the vertex, its tails in planar order take
/// the remaining slots of the vertex in order from the start. `None` when the
/// tail count does not match the slots or the result is degenerate.
pub fn foliage_substitute(r: &RealizedTree, i: usize, rp: &RealizedTree) -> Option<RealizedTree> {
  let label = u32::try_from(i).ok()?;
  let mut p = r.tree.clone();
  let v = p.white_of(label)?;
  let m = rp.tree.kind.iter().filter(|k| matches!(k, Kind::White(_))).count() as u32;
  for k in p.kind.iter_mut() {
    if let Kind::White(l) = k {
      if *l > label {
        *l += m - 1;
      }
    }
  }
  let start = p.start[v]?;
  let slots: Vec<usize> = p.rotated(v, start).into_iter().skip(1).collect();
  let tails = rp.tree.tails();
  if tails.len() != slots.len() {
    return None;
  }
  let ids = splice(&mut p, &rp.tree, label - 1);
  for (&tl, &b) in tails.iter().zip(&slots) {
    let tl = ids[tl];
    let w = p.nbrs[tl][0];
    for x in p.nbrs[w].iter_mut() {
      if *x == tl {
        *x = b;
      }
    }
    for x in p.nbrs[b].iter_mut() {
      if *x == v {
        *x = w;
      }
    }
    p.nbrs[tl].clear();
  }
  if !contract_base(&mut p, v, start, ids[rp.tree.base()]) {
    return None;
  }
  p.nbrs[v].clear();
  p.to_decorated().ok()??;
  let ids = p.tails().into_iter().enumerate().map(|(k, tl)| (tl, k)).collect();
  Some(RealizedTree { tree: p, ids })
}

/// Memo of partial compositions, safe to share between threads.
#[derive(Debug, Default)]
pub struct CompositionTable {
  memo: RwLock<HashMap<(DecoratedTree, usize, DecoratedTree), ChainElement>>,
}

impl CompositionTable {
  pub fn new() -> Self { Self::default() }

  pub fn compose(&self, t: &DecoratedTree, i: usize, tp: &DecoratedTree) -> Result<ChainElement> {
    let key = (t.clone(), i, tp.clone());
    if let Some(c) = self.memo.read().expect("memo lock").get(&key) {
      return Ok(c.clone());
    }
    let c = compose(t, i, tp)?;
    self.memo.write().expect("memo lock").insert(key, c.clone());
    Ok(c)
  }

  pub fn len(&self) -> usize { self.memo.read().expect("memo lock").len() }

  pub fn is_empty(&self) -> bool { self.len() == 0 }
}

#[cfg(test)]
mod tests {
  use num_traits::One;

  use super::*;
  use crate::tree::enumerate_cells;

  fn tree(s: &str) -> DecoratedTree { DecoratedTree::parse(s).unwrap() }

  fn small(max_deg: usize) -> Vec<DecoratedTree> { (1..=2).flat_map(|n| enumerate_cells(n, max_deg)).collect() }

  #[test]
  fn unit_and_named_compositions() {
    let t0 = DecoratedTree::t0();
    assert_eq!(compose(&t0, 1, &t0).unwrap(), ChainElement::from_tree(t0.clone()));
    let o = DecoratedTree::o_prime();
    assert!(compose(&o, 1, &o).unwrap().is_zero());
    let prod = DecoratedTree::product(2);
    for i in 1..=2 {
      assert_eq!(compose(&prod, i, &prod).unwrap(), ChainElement::from_tree(DecoratedTree::product(3)));
    }
    // Δ of a brace: three cells, the spine walking around the perimeter
    let brace = tree("root(w<1;0;0>(b(w<2;0;0>())))");
    let c = compose(&o, 1, &brace).unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(c.coeff(&tree("root(w<2;0;1>(b(w<1;1;0>())))")), -BigInt::one());
    assert!(matches!(compose(&o, 2, &o), Err(CactiError::InvalidSlot { slot: 2, arity: 1 })));
  }

  #[test]
  fn gamma_examples() {
    let t0 = DecoratedTree::t0();
    let prod = DecoratedTree::product(2);
    let brace = tree("root(w<1;0;0>(b(w<2;0;0>())))");
    assert_eq!(gamma(&t0, std::slice::from_ref(&brace)).unwrap(), ChainElement::from_tree(brace));
    assert_eq!(gamma(&prod, &[t0.clone(), t0.clone()]).unwrap(), ChainElement::from_tree(prod.clone()));
    let g = gamma(&prod, &[DecoratedTree::o_prime(), t0]).unwrap();
    assert_eq!((g.degree, g.len()), (1, 1));
    assert_eq!(g.coeff(&tree("root(w<1;1;0>()w<2;0;0>())")), BigInt::one());
  }

  #[test]
  fn units_on_both_sides() {
    let t0 = DecoratedTree::t0();
    for t in small(3) {
      assert_eq!(compose(&t0, 1, &t).unwrap(), ChainElement::from_tree(t.clone()), "{t}");
      for i in 1..=t.arity() {
        assert_eq!(compose(&t, i, &t0).unwrap(), ChainElement::from_tree(t.clone()), "{t} slot {i}");
      }
    }
  }

  #[test]
  fn boundary_is_a_derivation() {
    let cells = small(2);
    for a in &cells {
      for b in cells.iter().filter(|b| a.arity() + b.arity() <= 3) {
        for i in 1..=a.arity() {
          let lhs = compose(a, i, b).unwrap().boundary();
          let left = compose_chains(&ChainElement::from_tree(a.clone()).boundary(), i, &ChainElement::from_tree(b.clone())).unwrap();
          let right = compose_chains(&ChainElement::from_tree(a.clone()), i, &ChainElement::from_tree(b.clone()).boundary()).unwrap();
          let s = if a.degree() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
          let mut rhs: BTreeMap<DecoratedTree, BigInt> = left.terms().clone();
          for (t, c) in right.terms() {
            *rhs.entry(t.clone()).or_default() += c * &s;
          }
          rhs.retain(|_, c| !c.is_zero());
          assert_eq!(lhs.terms(), &rhs, "{a} ∘{i} {b}");
        }
      }
    }
  }

  #[test]
  fn associativity() {
    let ones: Vec<DecoratedTree> = enumerate_cells(1, 1);
    let cells = small(1);
    for a in &cells {
      for b in &cells {
        for c in &ones {
          let (sa, sb, sc) = (ChainElement::from_tree(a.clone()), ChainElement::from_tree(b.clone()), ChainElement::from_tree(c.clone()));
          let m = b.arity();
          for i in 1..=a.arity() {
            let ab = compose_chains(&sa, i, &sb).unwrap();
            for j in 1..=m {
              let lhs = compose_chains(&ab, i + j - 1, &sc).unwrap();
              let rhs = compose_chains(&sa, i, &compose_chains(&sb, j, &sc).unwrap()).unwrap();
              assert_eq!(lhs, rhs, "({a} ∘{i} {b}) ∘ {c}");
            }
            for j in (1..=a.arity()).filter(|&j| j > i) {
              let lhs = compose_chains(&ab, j + m - 1, &sc).unwrap();
              let rhs = compose_chains(&compose_chains(&sa, j, &sc).unwrap(), i, &sb).unwrap();
              let s = if b.degree() * c.degree() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
              assert_eq!(lhs, rhs.scale(&s), "parallel {a} {i} {b} {j} {c}");
            }
          }
        }
      }
    }
  }

  #[test]
  fn equivariance() {
    let cells = small(1);
    for a in &cells {
      for b in &cells {
        let (n, m) = (a.arity(), b.arity());
        for i in 1..=n {
          let c = compose(a, i, b).unwrap();
          for sigma in (1..=n as u32).permutations(n) {
            let lhs = compose(&a.relabel(&sigma).unwrap(), sigma[i - 1] as usize, b).unwrap();
            assert_eq!(lhs, relabel_chain(&c, &block_permutation(&sigma, i, m)).unwrap(), "{a} {i} {b} {sigma:?}");
          }
          for tau in (1..=m as u32).permutations(m) {
            let lhs = compose(a, i, &b.relabel(&tau).unwrap()).unwrap();
            assert_eq!(lhs, relabel_chain(&c, &inner_permutation(n, i, &tau)).unwrap(), "{a} {i} {b} {tau:?}");
          }
        }
      }
    }
  }

  #[test]
  fn memo_matches_recomputation() {
    let table = CompositionTable::new();
    let brace = tree("root(w<1;0;0>(b(w<2;0;0>())))");
    let o = DecoratedTree::o_prime();
    let first = table.compose(&brace, 2, &o).unwrap();
    assert_eq!(table.compose(&brace, 2, &o).unwrap(), first);
    assert_eq!(first, compose(&brace, 2, &o).unwrap());
    assert_eq!(table.len(), 1);
  }

  #[test]
  fn foliage() {
    let t0 = DecoratedTree::t0();
    let r = RealizedTree::realize(&t0, &[(1, 0)]).unwrap();
    let rp = RealizedTree::realize(&tree("root(w<1;0;0>(b(w<2;0;0>())))"), &[(1, 1), (2, 0)]).unwrap();
    assert!(foliage_substitute(&r, 1, &rp).is_none());
    let rp = RealizedTree::realize(&tree("root(w<1;0;0>(b(w<2;0;0>())))"), &[(2, 0)]).unwrap();
    let s = foliage_substitute(&r, 1, &rp).unwrap();
    assert_eq!(s.tree.to_decorated().unwrap(), Some(tree("root(w<1;0;0>(b(w<2;0;0>())))")));
    assert_eq!(s.tails().len(), 1);
  }
}
