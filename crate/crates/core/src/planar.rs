//! Explicit planar trees with cyclic neighbour lists. This is the workspace
//! for surgery (angle collapse, substitution) and for realizations carrying a
//! new root vertex, spine leaves and free tails.
//!
//! Every node stores its neighbours in counterclockwise order. Children of a
//! node are the neighbours following its parent. Node 0 is the new root
//! vertex; its single neighbour is the old black root.

use std::collections::BTreeMap;

use crate::{
  error::{CactiError, Result},
  tree::{Black, DecoratedTree, White},
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
  Root,
  Black,
  White(u32),
  Tail,
  Spine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarTree {
  pub kind:  Vec<Kind>,
  pub nbrs:  Vec<Vec<usize>>,
  /// For white vertices: the neighbour at the start flag (the spine leaf when
  /// spined, the marked flag's neighbour otherwise).
  pub start: Vec<Option<usize>>,
}

pub const ROOT: usize = 0;

impl PlanarTree {
  pub fn new() -> Self { Self { kind: vec![Kind::Root], nbrs: vec![Vec::new()], start: vec![None] } }

  pub fn add(&mut self, kind: Kind) -> usize {
    self.kind.push(kind);
    self.nbrs.push(Vec::new());
    self.start.push(None);
    self.kind.len() - 1
  }

  pub fn base(&self) -> usize { self.nbrs[ROOT][0] }

  pub fn from_decorated(t: &DecoratedTree) -> Self {
    let mut p = Self::new();
    let br = p.add(Kind::Black);
    p.nbrs[ROOT].push(br);
    p.nbrs[br].push(ROOT);
    for w in &t.roots {
      let id = p.add_white(w, br);
      p.nbrs[br].push(id);
    }
    p
  }

  fn add_white(&mut self, w: &White, parent: usize) -> usize {
    let id = self.add(Kind::White(w.label));
    let mut list = vec![parent];
    for b in &w.children {
      let bid = self.add(Kind::Black);
      self.nbrs[bid].push(id);
      for c in &b.children {
        let cid = self.add_white(c, bid);
        self.nbrs[bid].push(cid);
      }
      list.push(bid);
    }
    if w.dec {
      let s = self.add(Kind::Spine);
      self.nbrs[s].push(id);
      list.insert(w.mark + 1, s);
      self.start[id] = Some(s);
    } else {
      self.start[id] = Some(list[w.mark]);
    }
    self.nbrs[id] = list;
    id
  }

  /// Neighbours of `v` after `parent`, in counterclockwise order.
  pub fn children(&self, v: usize, parent: usize) -> Vec<usize> {
    let l = &self.nbrs[v];
    let k = l.iter().position(|&x| x == parent).expect("parent is a neighbour");
    (1..l.len()).map(|i| l[(k + i) % l.len()]).collect()
  }

  /// Neighbours of `v` starting at `first`.
  pub fn rotated(&self, v: usize, first: usize) -> Vec<usize> {
    let l = &self.nbrs[v];
    let k = l.iter().position(|&x| x == first).expect("neighbour");
    (0..l.len()).map(|i| l[(k + i) % l.len()]).collect()
  }

  /// Nodes in planar preorder from the new root, with parents.
  pub fn preorder(&self) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(self.base(), ROOT)];
    while let Some((v, p)) = stack.pop() {
      out.push((v, p));
      for c in self.children(v, p).into_iter().rev() {
        stack.push((c, v));
      }
    }
    out
  }

  pub fn parents(&self) -> BTreeMap<usize, usize> { self.preorder().into_iter().collect() }

  pub fn white_of(&self, label: u32) -> Option<usize> { self.kind.iter().position(|k| *k == Kind::White(label)) }

  /// Reads the decorated tree back, ignoring free tails. Returns `None` when
  /// a non-root black vertex has no white child or a white vertex carries
  /// more than one spine (lower-dimensional configurations).
  pub fn to_decorated(&self) -> Result<Option<DecoratedTree>> {
    let base = self.base();
    let mut roots = Vec::new();
    for c in self.children(base, ROOT) {
      match self.kind[c] {
        Kind::White(_) => match self.read_white(c, base)? {
          Some(w) => roots.push(w),
          None => return Ok(None),
        },
        _ => return Err(CactiError::InvalidTree("black root has a non-white child".into())),
      }
    }
    Ok(Some(DecoratedTree { roots }))
  }

  fn read_white(&self, w: usize, parent: usize) -> Result<Option<White>> {
    let Kind::White(label) = self.kind[w] else { unreachable!() };
    let rot = self.rotated(w, parent);
    let mut flags = Vec::new();
    let mut spine_after = None;
    let mut children = Vec::new();
    for &x in &rot {
      match self.kind[x] {
        Kind::Tail => {},
        Kind::Spine => {
          if spine_after.is_some() {
            return Ok(None);
          }
          spine_after = Some(flags.len() - 1);
        },
        Kind::Black | Kind::Root => {
          if x != parent {
            let mut ws = Vec::new();
            for c in self.children(x, w) {
              match self.kind[c] {
                Kind::White(_) => match self.read_white(c, x)? {
                  Some(cw) => ws.push(cw),
                  None => return Ok(None),
                },
                _ => return Err(CactiError::InvalidTree("black vertex with a non-white child".into())),
              }
            }
            if ws.is_empty() {
              return Ok(None);
            }
            children.push(Black { children: ws });
          }
          flags.push(x);
        },
        Kind::White(_) => return Err(CactiError::InvalidTree("adjacent white vertices".into())),
      }
    }
    let start = self.start[w].ok_or_else(|| CactiError::InvalidTree(format!("vertex {label} has no start flag")))?;
    let (dec, mark) = match spine_after {
      Some(a) => {
        if start != rot[rot.iter().position(|&x| self.kind[x] == Kind::Spine).unwrap()] {
          return Ok(None);
        }
        (true, a)
      },
      None => match flags.iter().position(|&x| x == start) {
        Some(m) => (false, m),
        None => return Ok(None),
      },
    };
    Ok(Some(White { label, dec, mark, children }))
  }

  /// Collapses the angle at white `w` between the black neighbours `bm` and
  /// `b` (`bm` the cyclic predecessor of `b`). The merged vertex keeps id
  /// `bm`; its cyclic order is `w`, then `bm`'s flags after `w`, then `b`'s
  /// flags after `w`.
  pub fn collapse(&mut self, w: usize, bm: usize, b: usize) {
    let x = self.children(bm, w);
    let y = self.children(b, w);
    self.nbrs[w].retain(|&v| v != b);
    for &c in &y {
      for v in self.nbrs[c].iter_mut() {
        if *v == b {
          *v = bm;
        }
      }
      if self.start[c] == Some(b) {
        self.start[c] = Some(bm);
      }
    }
    let mut merged = vec![w];
    merged.extend(x);
    merged.extend(y);
    self.nbrs[bm] = merged;
    self.nbrs[b].clear();
    if self.start[w] == Some(b) {
      self.start[w] = Some(bm);
    }
  }

  /// Black or root neighbours of white `w` in cyclic order (its flags).
  pub fn flag_nodes(&self, w: usize) -> Vec<usize> {
    self.nbrs[w].iter().copied().filter(|&x| matches!(self.kind[x], Kind::Black | Kind::Root)).collect()
  }

  /// Free tails in planar preorder.
  pub fn tails(&self) -> Vec<usize> { self.preorder().into_iter().filter(|&(v, _)| self.kind[v] == Kind::Tail).map(|(v, _)| v).collect() }
}

impl Default for PlanarTree {
  fn default() -> Self { Self::new() }
}

/// A realization: the planar tree with explicit root, spines and free tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedTree {
  pub tree:  PlanarTree,
  /// Insertion identity of each tail node (used by the blocked order).
  pub ids:   BTreeMap<usize, usize>,
}

impl RealizedTree {
  /// Inserts free tails. `plan` lists `(label, gap)` in insertion order; gap
  /// `g` at a vertex is the slot after the `g`-th entry of its neighbour list
  /// read from the parent (spines included), so there are `val + dec` gaps.
  /// Tails inserted later into the same gap go after earlier ones.
  pub fn realize(t: &DecoratedTree, plan: &[(u32, usize)]) -> Result<Self> {
    let mut tree = PlanarTree::from_decorated(t);
    let parents = tree.parents();
    let mut ids = BTreeMap::new();
    let mut placed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, &(label, gap)) in plan.iter().enumerate() {
      let w = tree.white_of(label).ok_or(CactiError::InvalidSlot { slot: label as usize, arity: t.arity() })?;
      let p = parents[&w];
      let base_rot: Vec<usize> = tree.rotated(w, p).into_iter().filter(|&x| tree.kind[x] != Kind::Tail).collect();
      if gap >= base_rot.len() {
        return Err(CactiError::InvalidAngle { pos: gap, angles: base_rot.len() });
      }
      let n_before = *placed.get(&(w, gap)).unwrap_or(&0);
      let anchor = base_rot[gap];
      let rot = tree.rotated(w, p);
      let at = rot.iter().position(|&x| x == anchor).unwrap() + 1 + n_before;
      let tail = tree.add(Kind::Tail);
      tree.nbrs[tail].push(w);
      let mut new_rot = rot;
      new_rot.insert(at, tail);
      tree.nbrs[w] = new_rot;
      placed.insert((w, gap), n_before + 1);
      ids.insert(tail, k);
    }
    Ok(Self { tree, ids })
  }

  pub fn tails(&self) -> Vec<usize> { self.tree.tails() }

  /// Sign of the permutation from the planar order of weight edges (white
  /// edges, root edge, tails, spines) to the blocked order: root edge, then
  /// per white vertex in preorder its child edges, its tails (by insertion),
  /// its spine.
  pub fn weight_sign(&self) -> i8 {
    let t = &self.tree;
    // weight edges named by their far node (child side)
    let mut planar = vec![t.base()];
    let mut blocked = vec![t.base()];
    for (v, p) in t.preorder() {
      if let Kind::White(_) = t.kind[v] {
        let ch = t.children(v, p);
        for &c in &ch {
          planar.push(c);
        }
        blocked.extend(ch.iter().copied().filter(|&c| t.kind[c] == Kind::Black));
        let mut tails: Vec<usize> = ch.iter().copied().filter(|&c| t.kind[c] == Kind::Tail).collect();
        tails.sort_by_key(|c| self.ids[c]);
        blocked.extend(tails);
        blocked.extend(ch.iter().copied().filter(|&c| t.kind[c] == Kind::Spine));
      }
    }
    permutation_sign(&planar, &blocked)
  }
}

impl RealizedTree {
  /// Sign with which this realization enters the action of its cell on
  /// cochains of the given arities. Weight edges (non-root black edges,
  /// tails, spines) are read in planar order and moved into blocks, one per
  /// white vertex in preorder, each block listing the vertex's black
  /// children (read from the parent), then its tails and its spine (read
  /// from the start flag). On top of that parity:
  /// - a tail and a spine or black edge owned by different vertices that
  ///   swap order count once more;
  /// - at a spined vertex, a tail and a black child count once more when
  ///   reading from the spine reverses their order relative to the parent;
  /// - a vertex with `b` black children contributes `b(b-1)/2`;
  /// - a vertex marked at flag `m` with an `n`-ary cochain contributes `n m`,
  ///   plus `b - 1` for every own tail met before the marked flag;
  /// - cell factors and cochains are Koszul-reordered from (factors in
  ///   planar order, cochains by label) to per-vertex (factors, cochain).
  pub fn orientation_sign(&self, arities: &BTreeMap<u32, usize>) -> i8 {
    let t = &self.tree;
    let pre = t.preorder();
    let planar: Vec<usize> = pre.iter().map(|&(v, _)| v).filter(|&v| !matches!(t.kind[v], Kind::White(_))).collect();
    let mut blocked = vec![t.base()];
    let mut parity = 0usize;
    for &(v, p) in &pre {
      let Kind::White(label) = t.kind[v] else { continue };
      let start = t.start[v].expect("white start");
      let rot: Vec<usize> = t.rotated(v, start).into_iter().filter(|&x| x != p).collect();
      let from_parent = t.children(v, p);
      for kind in [Kind::Black, Kind::Tail, Kind::Spine] {
        let src = if kind == Kind::Black { &from_parent } else { &rot };
        blocked.extend(src.iter().copied().filter(|&x| t.kind[x] == kind));
      }
      let nb = from_parent.iter().filter(|&&x| t.kind[x] == Kind::Black).count();
      parity += nb * nb.saturating_sub(1) / 2;
      if t.kind[start] == Kind::Spine {
        let before = from_parent.iter().take_while(|&&x| x != start).filter(|&&x| t.kind[x] == Kind::Black).count();
        parity += before * nb.saturating_sub(1);
        let by_parent = |x: usize| from_parent.iter().position(|&y| y == x);
        let by_start = |x: usize| rot.iter().position(|&y| y == x);
        for &a in from_parent.iter().filter(|&&x| t.kind[x] == Kind::Tail) {
          for &b in from_parent.iter().filter(|&&x| t.kind[x] == Kind::Black) {
            if (by_parent(a) < by_parent(b)) != (by_start(a) < by_start(b)) {
              parity += 1;
            }
          }
        }
      } else {
        let flags: Vec<usize> = t.rotated(v, p).into_iter().filter(|&x| matches!(t.kind[x], Kind::Black | Kind::Root)).collect();
        let mark = flags.iter().position(|&x| x == start).expect("mark on a flag");
        parity += arities[&label] * mark;
        if start != p {
          let before = from_parent.iter().take_while(|&&x| x != start).filter(|&&x| t.kind[x] == Kind::Tail).count();
          parity += before * nb.saturating_sub(1);
        }
      }
    }
    let at_planar: BTreeMap<usize, usize> = planar.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let at_blocked: BTreeMap<usize, usize> = blocked.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let owner: BTreeMap<usize, usize> = pre.iter().copied().filter(|&(v, _)| matches!(t.kind[v], Kind::Tail | Kind::Spine) || (t.kind[v] == Kind::Black && v != t.base())).collect();
    for (&sp, &ws) in owner.iter().filter(|(&v, _)| matches!(t.kind[v], Kind::Spine | Kind::Black)) {
      for (&tl, &wt) in owner.iter().filter(|(&v, _)| t.kind[v] == Kind::Tail) {
        if wt != ws && (at_planar[&tl] < at_planar[&sp]) != (at_blocked[&tl] < at_blocked[&sp]) {
          parity += 1;
        }
      }
    }
    // Koszul reordering; factors are named by node id, cochains by !label
    let mut src: Vec<(usize, usize)> = Vec::new();
    let mut tgt: Vec<(usize, usize)> = Vec::new();
    for &(v, p) in &pre {
      match t.kind[v] {
        Kind::Black if v != t.base() => src.push((v, 1)),
        Kind::Spine => src.push((v, 1)),
        Kind::White(label) => {
          tgt.extend(t.children(v, p).into_iter().filter(|&c| matches!(t.kind[c], Kind::Black | Kind::Spine)).map(|c| (c, 1)));
          tgt.push((!(label as usize), arities[&label]));
        },
        _ => {},
      }
    }
    src.extend(arities.iter().map(|(&l, &n)| (!(l as usize), n)));
    let pos: Vec<usize> = tgt.iter().map(|x| src.iter().position(|y| y.0 == x.0).expect("same items")).collect();
    for i in 0..pos.len() {
      for j in i + 1..pos.len() {
        if pos[i] > pos[j] {
          parity += tgt[i].1 * tgt[j].1;
        }
      }
    }
    permutation_sign(&planar, &blocked) * if parity.is_multiple_of(2) { 1 } else { -1 }
  }
}

/// Sign of the permutation carrying sequence `a` to sequence `b` (same items).
pub fn permutation_sign<T: PartialEq>(a: &[T], b: &[T]) -> i8 {
  let idx: Vec<usize> = b.iter().map(|x| a.iter().position(|y| y == x).expect("same items")).collect();
  let mut inv = 0usize;
  for i in 0..idx.len() {
    for j in i + 1..idx.len() {
      if idx[i] > idx[j] {
        inv += 1;
      }
    }
  }
  if inv.is_multiple_of(2) { 1 } else { -1 }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn tree(s: &str) -> DecoratedTree { DecoratedTree::parse(s).unwrap() }

  #[test]
  fn round_trip_through_planar() {
    for t in crate::tree::enumerate_cells(3, 5) {
      let p = PlanarTree::from_decorated(&t);
      assert_eq!(p.to_decorated().unwrap(), Some(t));
    }
  }

  #[test]
  fn realize_and_erase() {
    let t = tree("root(w<1;1;1>(b(w<2;0;0>())))");
    let r = RealizedTree::realize(&t, &[(1, 0), (1, 2), (2, 0), (1, 2)]).unwrap();
    assert_eq!(r.tails().len(), 4);
    assert_eq!(r.tree.to_decorated().unwrap(), Some(t.clone()));
    assert!(matches!(RealizedTree::realize(&t, &[(1, 4)]), Err(CactiError::InvalidAngle { pos: 4, angles: 3 })));
  }

  #[test]
  fn weight_sign_examples() {
    let t0 = DecoratedTree::t0();
    assert_eq!(RealizedTree::realize(&t0, &[(1, 0)]).unwrap().weight_sign(), 1);
    let a = RealizedTree::realize(&t0, &[(1, 0), (1, 0)]).unwrap().weight_sign();
    // second insertion order: the later tail goes in front
    let mut b = RealizedTree::realize(&t0, &[(1, 0), (1, 0)]).unwrap();
    let ts = b.tails();
    b.ids.insert(ts[0], 1);
    b.ids.insert(ts[1], 0);
    assert_eq!(a, -b.weight_sign());
    let o = DecoratedTree::o_prime();
    assert_eq!(RealizedTree::realize(&o, &[(1, 0)]).unwrap().weight_sign(), 1);
    assert_eq!(RealizedTree::realize(&o, &[(1, 1)]).unwrap().weight_sign(), -1);
  }
}
