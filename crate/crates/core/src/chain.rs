//! Cellular chains on spine-decorated trees and their boundary.
//!
//! A cell is a product of one simplex per white vertex (the arc lengths of
//! its lobe) and one interval per spined vertex (the spine position inside
//! the marked arc). Angle collapses are the simplex faces, spine flips the
//! interval ends. Factors are ordered by planar preorder of their white
//! vertices, each simplex followed by its interval. Collapsing angle `a` of a
//! vertex is the face opposite the `a`-th simplex coordinate; when the collapse
//! reorders the white vertices the simplex factors pick up the Koszul sign of
//! that reordering.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{
  error::{CactiError, Result},
  linalg::Matrix,
  rational::Q,
  tree::{enumerate_cells, enumerate_spineless, DecoratedTree, White},
};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainElement {
  pub n:      usize,
  pub degree: usize,
  terms:      BTreeMap<DecoratedTree, BigInt>,
}

impl ChainElement {
  pub fn zero(n: usize, degree: usize) -> Self { Self { n, degree, terms: BTreeMap::new() } }

  pub fn from_tree(t: DecoratedTree) -> Self {
    let mut c = Self::zero(t.arity(), t.degree());
    c.terms.insert(t, BigInt::one());
    c
  }

  pub fn terms(&self) -> &BTreeMap<DecoratedTree, BigInt> { &self.terms }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  pub fn len(&self) -> usize { self.terms.len() }

  pub fn is_empty(&self) -> bool { self.terms.is_empty() }

  pub fn coeff(&self, t: &DecoratedTree) -> BigInt { self.terms.get(t).cloned().unwrap_or_default() }

  /// Adds `c * t`, dropping the term if it cancels.
  pub fn add_term(&mut self, t: DecoratedTree, c: BigInt) -> Result<()> {
    if c.is_zero() {
      return Ok(());
    }
    if t.degree() != self.degree {
      return Err(CactiError::MixedDegree(self.degree, t.degree()));
    }
    if t.arity() != self.n {
      return Err(CactiError::ArityMismatch { expected: self.n, got: t.arity() });
    }
    let e = self.terms.entry(t).or_default();
    *e += c;
    if e.is_zero() {
      self.terms.retain(|_, v| !v.is_zero());
    }
    Ok(())
  }

  pub fn add_scaled(&mut self, other: &ChainElement, s: &BigInt) -> Result<()> {
    if other.is_zero() {
      return Ok(());
    }
    if other.degree != self.degree {
      return Err(CactiError::MixedDegree(self.degree, other.degree));
    }
    for (t, c) in &other.terms {
      self.add_term(t.clone(), c * s)?;
    }
    Ok(())
  }

  pub fn add(&self, other: &ChainElement) -> Result<Self> {
    let mut out = self.clone();
    out.add_scaled(other, &BigInt::one())?;
    Ok(out)
  }

  pub fn scale(&self, s: &BigInt) -> Self {
    if s.is_zero() {
      return Self::zero(self.n, self.degree);
    }
    Self { n: self.n, degree: self.degree, terms: self.terms.iter().map(|(t, c)| (t.clone(), c * s)).collect() }
  }

  pub fn neg(&self) -> Self { self.scale(&-BigInt::one()) }

  pub fn boundary(&self) -> Self {
    let mut out = Self::zero(self.n, self.degree.saturating_sub(1));
    if self.degree == 0 {
      return out;
    }
    for (t, c) in &self.terms {
      out.add_scaled(&boundary_tree(t), c).expect("boundary keeps the degree");
    }
    out
  }

  pub fn to_json(&self) -> serde_json::Value {
    let json = ChainJson {
      n:      self.n,
      degree: self.degree,
      terms:  self.terms.iter().map(|(t, c)| TermJson { coeff: c.to_string(), tree: t.clone() }).collect(),
    };
    serde_json::to_value(json).expect("chain serializes")
  }

  pub fn from_json(v: &serde_json::Value) -> Result<Self> {
    let json: ChainJson = serde_json::from_value(v.clone()).map_err(|e| CactiError::Config(e.to_string()))?;
    let mut c = Self::zero(json.n, json.degree);
    for term in json.terms {
      let k: BigInt = term.coeff.parse().map_err(|_| CactiError::Config(format!("bad coefficient `{}`", term.coeff)))?;
      c.add_term(term.tree, k)?;
    }
    Ok(c)
  }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
  n:      usize,
  degree: usize,
  terms:  Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
  coeff: String,
  tree:  DecoratedTree,
}

/// Runs `f` on the sibling list holding the white vertex `label` and its index.
fn locate<R>(list: &mut Vec<White>, label: u32, f: &mut dyn FnMut(&mut Vec<White>, usize) -> R) -> Option<R> {
  if let Some(i) = list.iter().position(|w| w.label == label) {
    return Some(f(list, i));
  }
  for w in list.iter_mut() {
    for b in &mut w.children {
      if let Some(r) = locate(&mut b.children, label, f) {
        return Some(r);
      }
    }
  }
  None
}

fn white_mut(list: &mut [White], label: u32) -> Option<&mut White> {
  for w in list.iter_mut() {
    if w.label == label {
      return Some(w);
    }
    for b in &mut w.children {
      if let Some(x) = white_mut(&mut b.children, label) {
        return Some(x);
      }
    }
  }
  None
}

/// Collapses angle `a` (between flags `a` and `a + 1 mod val`) at vertex `label`.
pub fn collapse_angle(t: &DecoratedTree, label: u32, a: usize) -> Result<DecoratedTree> {
  let w = t.white(label).ok_or(CactiError::InvalidSlot { slot: label as usize, arity: t.arity() })?;
  let val = w.val();
  if val == 1 || a >= val {
    return Err(CactiError::InvalidAngle { pos: a, angles: if val == 1 { 0 } else { val } });
  }
  if w.dec && w.mark == a {
    return Err(CactiError::InvalidTree(format!("angle {a} of vertex {label} carries the spine")));
  }
  let k = val - 1;
  let mut out = t.clone();
  locate(&mut out.roots, label, &mut |list, i| {
    let w = &mut list[i];
    let mark = w.mark;
    w.mark = match (w.dec, a) {
      (true, _) => if mark > a { mark - 1 } else { mark },
      (false, 0) => mark.saturating_sub(1),
      (false, a) if a == k => if mark == k { 0 } else { mark },
      (false, _) => if mark > a { mark - 1 } else { mark },
    };
    if a == 0 {
      let b = w.children.remove(0);
      list.splice(i..i, b.children);
    } else if a == k {
      let b = w.children.pop().expect("k >= 1");
      list.splice(i + 1..i + 1, b.children);
    } else {
      let b = w.children.remove(a);
      w.children[a - 1].children.extend(b.children);
    }
  })
  .expect("label located");
  Ok(out)
}

/// Collapses the angle between the edge at `flag` of vertex `label` and its
/// cyclic predecessor.
pub fn angle_collapse(t: &DecoratedTree, label: u32, flag: usize) -> Result<DecoratedTree> {
  let w = t.white(label).ok_or(CactiError::InvalidSlot { slot: label as usize, arity: t.arity() })?;
  let val = w.val();
  if flag >= val {
    return Err(CactiError::InvalidAngle { pos: flag, angles: val });
  }
  collapse_angle(t, label, (flag + val - 1) % val)
}

/// The two ends of the spine arc: mark on the following flag minus mark on
/// the preceding flag.
pub fn spine_flip(t: &DecoratedTree, label: u32) -> Result<ChainElement> {
  let w = t.white(label).ok_or(CactiError::InvalidSlot { slot: label as usize, arity: t.arity() })?;
  if !w.dec {
    return Err(CactiError::NotSpined(label));
  }
  let mut out = ChainElement::zero(t.arity(), t.degree() - 1);
  let val = w.val();
  if val == 1 {
    return Ok(out);
  }
  let a = w.mark;
  for (m, s) in [((a + 1) % val, 1), (a, -1)] {
    let mut u = t.clone();
    let x = white_mut(&mut u.roots, label).expect("label located");
    x.dec = false;
    x.mark = m;
    out.add_term(u, BigInt::from(s))?;
  }
  Ok(out)
}

pub fn boundary_tree(t: &DecoratedTree) -> ChainElement {
  let mut out = ChainElement::zero(t.arity(), t.degree().saturating_sub(1));
  if t.degree() == 0 {
    return out;
  }
  let mut offset = 0;
  for w in t.whites() {
    let val = w.val();
    for a in 0..val {
      if val == 1 || (w.dec && w.mark == a) {
        continue;
      }
      let face = collapse_angle(t, w.label, a).expect("valid angle");
      let s = offset + a + koszul(t, &face);
      out.add_term(face, sign(s)).expect("face degree");
    }
    offset += val - 1;
    if w.dec {
      let flip = spine_flip(t, w.label).expect("spined vertex");
      out.add_scaled(&flip, &sign(offset)).expect("face degree");
      offset += 1;
    }
  }
  out
}

/// Parity of reordering the factors of the white vertices from the preorder
/// of `t` to the preorder of `face`.
fn koszul(t: &DecoratedTree, face: &DecoratedTree) -> usize {
  let dim: BTreeMap<u32, usize> = face.whites().iter().map(|w| (w.label, w.children.len() + usize::from(w.dec))).collect();
  let pos: BTreeMap<u32, usize> = face.whites().iter().enumerate().map(|(i, w)| (w.label, i)).collect();
  let order: Vec<u32> = t.whites().iter().map(|w| w.label).collect();
  let mut s = 0;
  for (i, x) in order.iter().enumerate() {
    for y in &order[i + 1..] {
      if pos[x] > pos[y] {
        s += dim[x] * dim[y];
      }
    }
  }
  s
}

fn sign(pos: usize) -> BigInt { if pos.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() } }

/// Boundary matrix from degree-`k` cells to degree-`k - 1` cells.
pub fn boundary_matrix(upper: &[DecoratedTree], lower: &[DecoratedTree]) -> Matrix {
  let index: BTreeMap<&DecoratedTree, usize> = lower.iter().enumerate().map(|(i, t)| (t, i)).collect();
  let mut m = Matrix::zeros(lower.len(), upper.len());
  for (j, t) in upper.iter().enumerate() {
    for (s, c) in boundary_tree(t).terms() {
      m[(index[s], j)] = Q::from_integer(c.clone());
    }
  }
  m
}

/// Rational Betti numbers of the cell complex on `n` labels (all cells, or
/// only the spineless ones).
pub fn betti_numbers(n: usize, spineless: bool) -> Vec<usize> {
  let top = 2 * n;
  let cells = if spineless { enumerate_spineless(n, top) } else { enumerate_cells(n, top) };
  let mut by_degree: Vec<Vec<DecoratedTree>> = vec![Vec::new(); top + 2];
  for t in cells {
    let d = t.degree();
    by_degree[d].push(t);
  }
  let ranks: Vec<usize> = (0..=top + 1).map(|k| if k == 0 { 0 } else { boundary_matrix(&by_degree[k], &by_degree[k - 1]).rank() }).collect();
  let mut betti: Vec<usize> = (0..=top).map(|k| by_degree[k].len() - ranks[k] - ranks[k + 1]).collect();
  while betti.len() > 1 && betti.last() == Some(&0) && by_degree[betti.len() - 1].is_empty() {
    betti.pop();
  }
  betti
}

/// Largest absolute coefficient, handy for reports.
pub fn max_coeff(c: &ChainElement) -> BigInt { c.terms.values().map(BigInt::abs).max().unwrap_or_default() }
