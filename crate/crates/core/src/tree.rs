//! Spine-decorated planar planted bipartite labelled trees.
//!
//! A tree is a black root holding an ordered list of white vertices. Every
//! white vertex has flags `0..val`: flag 0 is the outgoing edge, flag `i` the
//! edge to its `i`-th black child. Angle `i` sits between flag `i` and flag
//! `(i + 1) mod val`. With `dec = 0` the mark is a flag, with `dec = 1` it is an
//! angle (the position of the spine).
//!
//! Text form: `root( W* )`, `W := w<label;dec;mark>( B* )`, `B := b( W* )`.

use std::{collections::BTreeSet, fmt, str::FromStr};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{CactiError, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct White {
  pub label:    u32,
  pub dec:      bool,
  pub mark:     usize,
  pub children: Vec<Black>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Black {
  pub children: Vec<White>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DecoratedTree {
  pub roots: Vec<White>,
}

impl White {
  pub fn leaf(label: u32) -> Self { Self { label, dec: false, mark: 0, children: Vec::new() } }

  pub fn val(&self) -> usize { self.children.len() + 1 }

  fn visit<'a>(&'a self, out: &mut Vec<&'a White>) {
    out.push(self);
    for b in &self.children {
      for w in &b.children {
        w.visit(out);
      }
    }
  }

  fn visit_mut(&mut self, f: &mut impl FnMut(&mut White)) {
    f(self);
    for b in &mut self.children {
      for w in &mut b.children {
        w.visit_mut(f);
      }
    }
  }

  fn write(&self, s: &mut String) {
    s.push_str(&format!("w<{};{};{}>(", self.label, u8::from(self.dec), self.mark));
    for b in &self.children {
      s.push_str("b(");
      for w in &b.children {
        w.write(s);
      }
      s.push(')');
    }
    s.push(')');
  }
}

impl DecoratedTree {
  /// The one-lobe point cell `root(w<1;0;0>())`.
  pub fn t0() -> Self { Self { roots: vec![White::leaf(1)] } }

  /// The one-lobe spine cell `root(w<1;1;0>())`.
  pub fn o_prime() -> Self { Self { roots: vec![White { dec: true, ..White::leaf(1) }] } }

  /// `n` lobes at the base point, labels `1..n` in planar order.
  pub fn product(n: u32) -> Self { Self { roots: (1..=n).map(White::leaf).collect() } }

  /// One spined vertex labelled 1 carrying lobes `2..n+1` on separate black
  /// children, spine in angle `i` (between lobes `i` and `i+1`, angle 0 right
  /// after the outgoing flag).
  pub fn brace_cell(n: u32, i: usize) -> Self {
    let children = (2..=n + 1).map(|l| Black { children: vec![White::leaf(l)] }).collect();
    Self { roots: vec![White { label: 1, dec: true, mark: i, children }] }
  }

  /// White vertices in planar preorder.
  pub fn whites(&self) -> Vec<&White> {
    let mut out = Vec::new();
    for w in &self.roots {
      w.visit(&mut out);
    }
    out
  }

  pub fn for_each_white_mut(&mut self, mut f: impl FnMut(&mut White)) {
    for w in &mut self.roots {
      w.visit_mut(&mut f);
    }
  }

  /// Number of labels.
  pub fn arity(&self) -> usize { self.whites().len() }

  /// Non-root black vertices (white edges) plus spined vertices.
  pub fn degree(&self) -> usize {
    self.whites().iter().map(|w| w.children.len() + usize::from(w.dec)).sum()
  }

  pub fn white(&self, label: u32) -> Option<&White> { self.whites().into_iter().find(|w| w.label == label) }

  pub fn is_spineless(&self) -> bool { self.whites().iter().all(|w| !w.dec && w.mark == 0) }

  pub fn validate(&self) -> Result<()> {
    if self.roots.is_empty() {
      return Err(CactiError::InvalidTree("root has no white vertex".into()));
    }
    let ws = self.whites();
    let labels: BTreeSet<u32> = ws.iter().map(|w| w.label).collect();
    if labels.len() != ws.len() {
      return Err(CactiError::InvalidTree("duplicate label".into()));
    }
    if labels.iter().copied().ne(1..=ws.len() as u32) {
      return Err(CactiError::InvalidTree(format!("labels must be 1..{}", ws.len())));
    }
    for w in ws {
      if w.mark >= w.val() {
        return Err(CactiError::InvalidTree(format!("mark {} out of range at vertex {} of valence {}", w.mark, w.label, w.val())));
      }
      if w.children.iter().any(|b| b.children.is_empty()) {
        return Err(CactiError::InvalidTree(format!("black leaf below vertex {}", w.label)));
      }
    }
    Ok(())
  }

  /// Applies `label ↦ sigma[label - 1]`.
  pub fn relabel(&self, sigma: &[u32]) -> Result<Self> {
    if sigma.len() != self.arity() {
      return Err(CactiError::ArityMismatch { expected: self.arity(), got: sigma.len() });
    }
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if sorted.iter().copied().ne(1..=sigma.len() as u32) {
      return Err(CactiError::InvalidTree("relabelling is not a permutation".into()));
    }
    let mut t = self.clone();
    t.for_each_white_mut(|w| w.label = sigma[w.label as usize - 1]);
    Ok(t)
  }

  pub fn serialize(&self) -> String {
    let mut s = String::from("root(");
    for w in &self.roots {
      w.write(&mut s);
    }
    s.push(')');
    s
  }

  pub fn parse(text: &str) -> Result<Self> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.keyword("root")?;
    p.expect(b'(')?;
    let roots = p.whites()?;
    p.expect(b')')?;
    p.skip_ws();
    if p.pos != p.src.len() {
      return Err(p.err("trailing input"));
    }
    let t = Self { roots };
    t.validate()?;
    Ok(t)
  }
}

impl fmt::Display for DecoratedTree {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(&self.serialize()) }
}

impl FromStr for DecoratedTree {
  type Err = CactiError;

  fn from_str(s: &str) -> Result<Self> { Self::parse(s) }
}

impl TryFrom<String> for DecoratedTree {
  type Error = CactiError;

  fn try_from(s: String) -> Result<Self> { Self::parse(&s) }
}

impl From<DecoratedTree> for String {
  fn from(t: DecoratedTree) -> String { t.serialize() }
}

struct Parser<'a> {
  src: &'a [u8],
  pos: usize,
}

impl Parser<'_> {
  fn err(&self, msg: &str) -> CactiError { CactiError::Parse { pos: self.pos, msg: msg.into() } }

  fn skip_ws(&mut self) {
    while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
      self.pos += 1;
    }
  }

  fn peek(&mut self) -> Option<u8> {
    self.skip_ws();
    self.src.get(self.pos).copied()
  }

  fn expect(&mut self, c: u8) -> Result<()> {
    if self.peek() == Some(c) {
      self.pos += 1;
      Ok(())
    } else {
      Err(self.err(&format!("expected `{}`", c as char)))
    }
  }

  fn keyword(&mut self, kw: &str) -> Result<()> {
    self.skip_ws();
    if self.src[self.pos..].starts_with(kw.as_bytes()) {
      self.pos += kw.len();
      Ok(())
    } else {
      Err(self.err(&format!("expected `{kw}`")))
    }
  }

  fn number(&mut self) -> Result<usize> {
    self.skip_ws();
    let start = self.pos;
    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
      self.pos += 1;
    }
    if start == self.pos {
      return Err(self.err("expected a number"));
    }
    std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| CactiError::Parse { pos: start, msg: "number too large".into() })
  }

  fn whites(&mut self) -> Result<Vec<White>> {
    let mut out = Vec::new();
    while self.peek() == Some(b'w') {
      out.push(self.white()?);
    }
    Ok(out)
  }

  fn white(&mut self) -> Result<White> {
    self.expect(b'w')?;
    self.expect(b'<')?;
    let label = u32::try_from(self.number()?).map_err(|_| self.err("label too large"))?;
    self.expect(b';')?;
    let dec = match self.number()? {
      0 => false,
      1 => true,
      _ => return Err(self.err("decoration must be 0 or 1")),
    };
    self.expect(b';')?;
    let mark = self.number()?;
    self.expect(b'>')?;
    self.expect(b'(')?;
    let mut children = Vec::new();
    while self.peek() == Some(b'b') {
      self.expect(b'b')?;
      self.expect(b'(')?;
      children.push(Black { children: self.whites()? });
      self.expect(b')')?;
    }
    self.expect(b')')?;
    Ok(White { label, dec, mark, children })
  }
}

/// Unlabelled planar shapes, memoized by white-vertex count.
struct Shapes {
  whites: Vec<Vec<White>>,
  forests: Vec<Vec<Vec<White>>>,
  blacks: Vec<Vec<Vec<Black>>>,
}

impl Shapes {
  fn new(n: usize) -> Self {
    let mut s = Shapes { whites: vec![Vec::new(); n + 1], forests: vec![Vec::new(); n + 1], blacks: vec![Vec::new(); n + 1] };
    s.forests[0] = vec![Vec::new()];
    s.blacks[0] = vec![Vec::new()];
    for k in 1..=n {
      // a white subtree with k whites: a root plus k-1 whites in black children
      s.whites[k] = s.blacks[k - 1].iter().map(|bs| White { label: 0, dec: false, mark: 0, children: bs.clone() }).collect();
      // forests (possibly empty sequences of whites) with k whites
      let mut forests = Vec::new();
      for first in 1..=k {
        for w in &s.whites[first] {
          for rest in &s.forests[k - first] {
            let mut f = vec![w.clone()];
            f.extend(rest.iter().cloned());
            forests.push(f);
          }
        }
      }
      s.forests[k] = forests;
      // sequences of black vertices (each with a nonempty forest) with k whites
      let mut blacks = Vec::new();
      for first in 1..=k {
        for f in &s.forests[first] {
          for rest in &s.blacks[k - first] {
            let mut bs = vec![Black { children: f.clone() }];
            bs.extend(rest.iter().cloned());
            blacks.push(bs);
          }
        }
      }
      s.blacks[k] = blacks;
    }
    s
  }
}

/// All decorated trees on labels `1..n` of degree at most `max_degree`,
/// sorted by degree, then by serialized form.
pub fn enumerate_cells(n: usize, max_degree: usize) -> Vec<DecoratedTree> {
  enumerate_filtered(n, max_degree, false)
}

/// The spineless sub-enumeration (`dec = 0`, `mark = 0` everywhere).
pub fn enumerate_spineless(n: usize, max_degree: usize) -> Vec<DecoratedTree> { enumerate_filtered(n, max_degree, true) }

fn enumerate_filtered(n: usize, max_degree: usize, spineless: bool) -> Vec<DecoratedTree> {
  if n == 0 {
    return Vec::new();
  }
  let shapes = Shapes::new(n);
  let mut out: Vec<(usize, String, DecoratedTree)> = Vec::new();
  for forest in &shapes.forests[n] {
    let shape = DecoratedTree { roots: forest.clone() };
    let base_degree = shape.degree();
    if base_degree > max_degree {
      continue;
    }
    let vals: Vec<usize> = shape.whites().iter().map(|w| w.val()).collect();
    for perm in (1..=n as u32).permutations(n) {
      // per-vertex decorations: (dec, mark)
      let choices = vals.iter().map(|&v| {
        let mut c: Vec<(bool, usize)> = (0..v).map(|m| (false, m)).collect();
        c.extend((0..v).map(|m| (true, m)));
        if spineless {
          c.truncate(1);
        }
        c
      });
      for decs in choices.multi_cartesian_product() {
        let extra = decs.iter().filter(|(d, _)| *d).count();
        if base_degree + extra > max_degree {
          continue;
        }
        let mut t = shape.clone();
        let mut k = 0;
        t.for_each_white_mut(|w| {
          w.label = perm[k];
          w.dec = decs[k].0;
          w.mark = decs[k].1;
          k += 1;
        });
        let s = t.serialize();
        out.push((base_degree + extra, s, t));
      }
    }
  }
  out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
  out.dedup_by(|a, b| a.1 == b.1);
  out.into_iter().map(|(_, _, t)| t).collect()
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn parse_examples() {
    let t0 = DecoratedTree::parse("root(w<1;0;0>())").unwrap();
    assert_eq!(t0, DecoratedTree::t0());
    assert_eq!(DecoratedTree::parse("root(w<1;1;0>())").unwrap(), DecoratedTree::o_prime());
    let s = DecoratedTree::parse(" root( w<1;0;0>( b( w<2;0;0>() ) ) ) ").unwrap();
    assert_eq!(s.serialize(), "root(w<1;0;0>(b(w<2;0;0>())))");
    assert_eq!(s.degree(), 1);
  }

  #[test]
  fn parse_errors_carry_position() {
    assert!(matches!(DecoratedTree::parse("root(w<1;0;0>()"), Err(CactiError::Parse { pos: 15, .. })));
    assert!(matches!(DecoratedTree::parse("root(w<1;2;0>())"), Err(CactiError::Parse { .. })));
    assert!(matches!(DecoratedTree::parse("root(w<1;0;1>())"), Err(CactiError::InvalidTree(_))));
    assert!(matches!(DecoratedTree::parse("root(w<1;0;0>()w<1;0;0>())"), Err(CactiError::InvalidTree(_))));
    assert!(matches!(DecoratedTree::parse("root(w<1;0;0>(b()))"), Err(CactiError::InvalidTree(_))));
  }

  #[test]
  fn degrees() {
    assert_eq!(DecoratedTree::t0().degree(), 0);
    assert_eq!(DecoratedTree::o_prime().degree(), 1);
    assert_eq!(DecoratedTree::product(3).degree(), 0);
    assert_eq!(DecoratedTree::parse("root(w<1;1;1>(b(w<2;0;0>())))").unwrap().degree(), 2);
  }

  #[test]
  fn small_enumerations() {
    assert_eq!(enumerate_cells(1, 0).len(), 1);
    let k1 = enumerate_cells(1, 5);
    assert_eq!(k1, vec![DecoratedTree::t0(), DecoratedTree::o_prime()]);
    let k2 = enumerate_spineless(2, 5);
    let counts = k2.iter().counts_by(DecoratedTree::degree);
    assert_eq!((counts[&0], counts[&1]), (2, 2));
    assert_eq!(k2.len(), 4);
  }

  #[test]
  fn euler_characteristic_vanishes() {
    for n in 1..=3 {
      let chi: i64 = enumerate_cells(n, 2 * n).iter().map(|t| if t.degree() % 2 == 0 { 1 } else { -1 }).sum();
      assert_eq!(chi, 0, "n = {n}");
    }
  }

  #[test]
  fn serialize_round_trip_and_order() {
    let cells = enumerate_cells(3, 6);
    for t in &cells {
      assert_eq!(&DecoratedTree::parse(&t.serialize()).unwrap(), t);
    }
    let unique: BTreeSet<String> = cells.iter().map(DecoratedTree::serialize).collect();
    assert_eq!(unique.len(), cells.len());
    assert!(cells.windows(2).all(|w| (w[0].degree(), w[0].serialize()) < (w[1].degree(), w[1].serialize())));
  }

  #[test]
  fn relabel_is_an_action() {
    let t = DecoratedTree::parse("root(w<1;0;0>(b(w<2;0;0>()w<3;0;0>())))").unwrap();
    let s = [2, 3, 1];
    let u = [3, 1, 2];
    // (u ∘ s)(l) = u[s[l]]
    let us: Vec<u32> = s.iter().map(|&x| u[x as usize - 1]).collect();
    assert_eq!(t.relabel(&s).unwrap().relabel(&u).unwrap(), t.relabel(&us).unwrap());
    assert_eq!(t.relabel(&[1, 2, 3]).unwrap(), t);
    assert!(t.relabel(&[1, 2]).is_err());
  }
}
