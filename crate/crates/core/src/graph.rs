//! Ribbon graphs: flags with an involution, a vertex map and cyclic orders.
//!
//! Cycles are the orbits of `N ∘ ı` where `N` is the cyclic successor at a
//! vertex. They are numbered by their smallest flag and listed starting there.
//! A cactus is a marked treelike ribbon graph; [`RibbonGraph::dual_tree`] and
//! [`RibbonGraph::cactus`] translate between those and decorated trees.
//!
//! Text form, one item per line (`#` starts a comment):
//!
//! ```text
//! v <id>: <flag> <flag> ...   vertex with its flags in cyclic order
//! e <flag> <flag>             edge
//! root <flag>                 mk(c0); c0 is the cycle through the flag
//! mark <flag>                 marks the cycle through the flag
//! label <flag> <n>            labels the cycle through the flag
//! ```

use std::{collections::BTreeMap, fmt, str::FromStr};

use itertools::Itertools;

use crate::{
  error::{CactiError, Result},
  tree::{Black, DecoratedTree, White},
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
  inv:      Vec<usize>,
  attach:   Vec<usize>,
  next:     Vec<usize>,
  nv:       usize,
  cycles:   Vec<Vec<usize>>,
  cycle_of: Vec<usize>,
  marking:  Option<Vec<usize>>,
  c0:       Option<usize>,
  labels:   Option<Vec<u32>>,
}

fn malformed(msg: impl Into<String>) -> CactiError { CactiError::MalformedGraph(msg.into()) }

impl RibbonGraph {
  /// Unmarked graph from the involution, the vertex of each flag and the
  /// cyclic successor of each flag at its vertex.
  pub fn new(inv: Vec<usize>, attach: Vec<usize>, next: Vec<usize>) -> Result<Self> {
    let nf = inv.len();
    if attach.len() != nf || next.len() != nf {
      return Err(malformed("flag maps have different lengths"));
    }
    for (f, &g) in inv.iter().enumerate() {
      if g >= nf || g == f || inv[g] != f {
        return Err(malformed(format!("involution is not fixed-point free at flag {f}")));
      }
    }
    let nv = attach.iter().max().map_or(1, |&v| v + 1);
    let mut seen = vec![false; nf];
    let mut fibers = vec![0usize; nv];
    for &v in &attach {
      fibers[v] += 1;
    }
    if let Some(v) = fibers.iter().position(|&k| k == 0).filter(|_| nf > 0) {
      return Err(malformed(format!("vertex {v} has no flags")));
    }
    for f in 0..nf {
      if next[f] >= nf || attach[next[f]] != attach[f] {
        return Err(malformed(format!("successor of flag {f} leaves its vertex")));
      }
      if seen[next[f]] {
        return Err(malformed(format!("flag {} has two predecessors", next[f])));
      }
      seen[next[f]] = true;
    }
    // one orbit per fiber
    for v in 0..nv {
      let Some(f0) = attach.iter().position(|&w| w == v) else { continue };
      let mut f = f0;
      let mut len = 0;
      loop {
        len += 1;
        f = next[f];
        if f == f0 {
          break;
        }
      }
      if len != fibers[v] {
        return Err(malformed(format!("cyclic order at vertex {v} is not a single cycle")));
      }
    }
    let mut g = Self { inv, attach, next, nv, cycles: Vec::new(), cycle_of: vec![0; nf], marking: None, c0: None, labels: None };
    if !g.is_connected() {
      return Err(CactiError::Disconnected);
    }
    let mut done = vec![false; nf];
    for f0 in 0..nf {
      if done[f0] {
        continue;
      }
      let id = g.cycles.len();
      let mut cyc = Vec::new();
      let mut f = f0;
      while !done[f] {
        done[f] = true;
        g.cycle_of[f] = id;
        cyc.push(f);
        f = g.next[g.inv[f]];
      }
      g.cycles.push(cyc);
    }
    Ok(g)
  }

  fn is_connected(&self) -> bool {
    let mut adj = vec![Vec::new(); self.nv];
    for (f, &g) in self.inv.iter().enumerate() {
      adj[self.attach[f]].push(self.attach[g]);
    }
    let mut seen = vec![false; self.nv];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
      for &w in &adj[v] {
        if !seen[w] {
          seen[w] = true;
          stack.push(w);
        }
      }
    }
    seen.into_iter().all(|s| s)
  }

  /// Adds the marking: `root` is `mk(c0)` and fixes `c0`, `marks` mark the
  /// other cycles, one flag each.
  pub fn with_marking(mut self, root: usize, marks: &[usize]) -> Result<Self> {
    let mut mk: Vec<Option<usize>> = vec![None; self.cycles.len()];
    for &f in std::iter::once(&root).chain(marks) {
      let c = *self.cycle_of.get(f).ok_or_else(|| malformed(format!("no flag {f}")))?;
      if mk[c].replace(f).is_some() {
        return Err(malformed(format!("cycle {c} is marked twice")));
      }
    }
    let mk: Vec<usize> = mk.into_iter().enumerate().map(|(c, f)| f.ok_or_else(|| malformed(format!("cycle {c} is unmarked")))).try_collect()?;
    for v in 0..self.nv {
      if self.valence(v) == 2 && !mk.iter().any(|&f| self.attach[f] == v) {
        return Err(malformed(format!("vertex {v} of valence two is not marked")));
      }
    }
    self.c0 = Some(self.cycle_of[root]);
    self.marking = Some(mk);
    Ok(self)
  }

  /// Labels indexed by cycle id; the distinguished cycle (if any) gets 0.
  pub fn with_labels(mut self, labels: Vec<u32>) -> Result<Self> {
    if labels.len() != self.cycles.len() {
      return Err(malformed(format!("{} labels for {} cycles", labels.len(), self.cycles.len())));
    }
    if labels.iter().all_unique() && self.c0.is_none_or(|c| labels[c] == 0) {
      self.labels = Some(labels);
      Ok(self)
    } else {
      Err(malformed("labels must be distinct with 0 on the distinguished cycle"))
    }
  }

  pub fn num_flags(&self) -> usize { self.inv.len() }

  pub fn num_vertices(&self) -> usize { self.nv }

  pub fn num_edges(&self) -> usize { self.inv.len() / 2 }

  pub fn inv(&self, f: usize) -> usize { self.inv[f] }

  pub fn attach(&self, f: usize) -> usize { self.attach[f] }

  pub fn next(&self, f: usize) -> usize { self.next[f] }

  pub fn prev(&self, f: usize) -> usize { self.next.iter().position(|&g| g == f).expect("permutation") }

  pub fn valence(&self, v: usize) -> usize { self.attach.iter().filter(|&&w| w == v).count() }

  /// Flags at `v` in cyclic order starting from `from`.
  pub fn around(&self, from: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut f = self.next[from];
    while f != from {
      out.push(f);
      f = self.next[f];
    }
    out
  }

  /// Orbits of `N ∘ ı`, numbered and started at their smallest flag.
  pub fn cycles(&self) -> &[Vec<usize>] { &self.cycles }

  pub fn cycle_of(&self, f: usize) -> usize { self.cycle_of[f] }

  pub fn marking(&self) -> Option<&[usize]> { self.marking.as_deref() }

  pub fn distinguished_cycle(&self) -> Option<usize> { self.c0 }

  pub fn labels(&self) -> Option<&[u32]> { self.labels.as_deref() }

  /// Genus of the thickened surface, from `2 - 2g = |V| - |E| + #cycles`.
  pub fn genus(&self) -> Result<usize> {
    let chi = self.nv as i64 - self.num_edges() as i64 + self.cycles.len() as i64;
    if chi > 2 || chi % 2 != 0 {
      return Err(CactiError::NonIntegralGenus(format!("|V| - |E| + #cycles = {chi}")));
    }
    Ok(((2 - chi) / 2) as usize)
  }

  /// Genus zero and every edge traversed by the distinguished cycle.
  pub fn is_treelike(&self) -> bool {
    let Some(c0) = self.c0 else { return false };
    self.genus() == Ok(0) && (0..self.num_flags()).all(|f| self.cycle_of[f] == c0 || self.cycle_of[self.inv[f]] == c0)
  }

  /// Position of each flag of cycle `c` in its linear order from `mk(c)`.
  fn linear_order(&self, c: usize, mk: &[usize]) -> BTreeMap<usize, usize> {
    let cyc = &self.cycles[c];
    let at = cyc.iter().position(|&f| f == mk[c]).expect("mark on its cycle");
    cyc.iter().cycle().skip(at).take(cyc.len()).enumerate().map(|(i, &f)| (f, i)).collect()
  }

  /// Marked treelike graph with at most one vertex of valence two, located
  /// at `∂(mk(c0))`, whose cycle orders are reversed by `ı` relative to `c0`.
  pub fn is_spineless(&self) -> bool {
    let (Some(mk), Some(c0)) = (&self.marking, self.c0) else { return false };
    if !self.is_treelike() {
      return false;
    }
    let root = self.attach[mk[c0]];
    if (0..self.nv).any(|v| v != root && self.valence(v) == 2) {
      return false;
    }
    let order0 = self.linear_order(c0, mk);
    (0..self.cycles.len()).filter(|&c| c != c0).all(|c| {
      let order = self.linear_order(c, mk);
      order.iter().tuple_combinations().all(|((&f, &i), (&g, &j))| (i < j) == (order0[&self.inv[g]] < order0[&self.inv[f]]))
    })
  }

  /// Contracts the edge through flag `f`. The marking of a cycle that loses
  /// its marked flag moves to the image of the next flag of that cycle.
  pub fn contract_edge(&self, f: usize) -> Result<Self> {
    if f >= self.num_flags() {
      return Err(malformed(format!("no flag {f}")));
    }
    let g = self.inv[f];
    let (v, w) = (self.attach[f], self.attach[g]);
    if v == w {
      return Err(CactiError::LoopContraction);
    }
    let gone = |x: usize| x == f || x == g;
    let succ = |x: usize| {
      let mut y = self.next[x];
      while gone(y) {
        y = self.next[self.inv[y]];
      }
      y
    };
    let keep: Vec<usize> = (0..self.num_flags()).filter(|&x| !gone(x)).collect();
    let new_id: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let merged = |u: usize| if u == w { v } else { u };
    let verts: Vec<usize> = (0..self.nv).filter(|&u| u != w).collect();
    let vid = |u: usize| verts.iter().position(|&x| x == merged(u)).expect("vertex");
    let inv = keep.iter().map(|&x| new_id[&self.inv[x]]).collect();
    let attach = keep.iter().map(|&x| vid(self.attach[x])).collect();
    let next = keep.iter().map(|&x| new_id[&succ(x)]).collect();
    let mut out = if keep.is_empty() {
      Self { inv: Vec::new(), attach: Vec::new(), next: Vec::new(), nv: 1, cycles: Vec::new(), cycle_of: Vec::new(), marking: None, c0: None, labels: None }
    } else {
      Self::new(inv, attach, next)?
    };
    // transport cycle data through any surviving flag
    let image = |c: usize, start: usize| -> Option<usize> {
      let cyc = &self.cycles[c];
      let at = cyc.iter().position(|&x| x == start).expect("flag on cycle");
      cyc.iter().cycle().skip(at).take(cyc.len()).find(|&&x| !gone(x)).map(|x| new_id[x])
    };
    let old_of_new: Vec<Option<usize>> = (0..out.cycles.len()).map(|nc| (0..self.cycles.len()).find(|&c| image(c, self.cycles[c][0]).is_some_and(|x| out.cycle_of[x] == nc))).collect();
    if let (Some(mk), Some(c0)) = (&self.marking, self.c0) {
      let Some(root) = image(c0, mk[c0]) else { return Ok(out) };
      let marks: Vec<usize> = (0..self.cycles.len()).filter(|&c| c != c0).filter_map(|c| image(c, mk[c])).collect();
      out = out.with_marking(root, &marks)?;
    }
    if let Some(labels) = &self.labels {
      let l: Option<Vec<u32>> = old_of_new.iter().map(|c| c.map(|c| labels[c])).collect();
      if let Some(l) = l {
        out = out.with_labels(l)?;
      }
    }
    Ok(out)
  }

  /// Black/white tree of a marked, labelled treelike graph: black vertices are
  /// the vertices of the graph, white vertices the cycles other than `c0`.
  /// Vertices of valence two that mark a cycle become spines.
  pub fn dual_tree(&self) -> Result<DecoratedTree> {
    let (Some(mk), Some(c0), Some(labels)) = (&self.marking, self.c0, &self.labels) else {
      return Err(CactiError::NotTreelike("marking and labels are required".into()));
    };
    if !self.is_treelike() {
      return Err(CactiError::NotTreelike("genus > 0 or an edge avoids c0".into()));
    }
    let root_flag = mk[c0];
    let roots = self.black_children(root_flag, true, mk, c0, labels)?;
    let t = DecoratedTree { roots };
    t.validate()?;
    Ok(t)
  }

  /// White vertices hanging off the black vertex of the `c0`-flag `from`,
  /// in cyclic order after `from` (including it when `inclusive`).
  fn black_children(&self, from: usize, inclusive: bool, mk: &[usize], c0: usize, labels: &[u32]) -> Result<Vec<White>> {
    let flags: Vec<usize> = self.around(from).into_iter().filter(|&x| self.cycle_of[x] == c0).skip(usize::from(!inclusive)).collect();
    flags.into_iter().map(|x| self.white(self.next[x], mk, c0, labels)).collect()
  }

  fn white(&self, entry: usize, mk: &[usize], c0: usize, labels: &[u32]) -> Result<White> {
    let c = self.cycle_of[entry];
    if c == c0 {
      return Err(CactiError::NotTreelike(format!("flag {entry} follows a c0 flag inside c0")));
    }
    let cyc = &self.cycles[c];
    let at = cyc.iter().position(|&x| x == entry).expect("flag on cycle");
    let seq: Vec<usize> = cyc.iter().cycle().skip(at).take(cyc.len()).copied().collect();
    let mut w = White::leaf(labels[c]);
    let mut mark = None;
    for (j, &s) in seq.iter().enumerate() {
      let spine = j > 0 && self.valence(self.attach[s]) == 2;
      if spine {
        if mk[c] != s {
          return Err(malformed(format!("valence two vertex at flag {s} does not carry the mark")));
        }
        w.dec = true;
        mark = Some(w.children.len());
        continue;
      }
      if mk[c] == s {
        mark = Some(w.children.len() + usize::from(j > 0));
      }
      if j > 0 {
        let children = self.black_children(self.prev(s), false, mk, c0, labels)?;
        w.children.push(Black { children });
      }
    }
    w.mark = mark.expect("cycle is marked");
    Ok(w)
  }

  /// Cactus realizing `t`: one vertex per black vertex and spine, one cycle per
  /// white vertex, labelled by the white labels with `c0` labelled 0.
  pub fn cactus(t: &DecoratedTree) -> Result<Self> {
    t.validate()?;
    // per vertex: (lobe end flag, lobe start flag) entries in cyclic order
    let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut inv = Vec::new();
    let mut marks: Vec<(u32, usize)> = Vec::new();
    let mut root = None;
    fn lobe(w: &White, parent: usize, at: &mut Vec<Vec<(usize, usize)>>, inv: &mut Vec<usize>, marks: &mut Vec<(u32, usize)>) -> usize {
      // vertices around the lobe starting at the parent
      let mut seq = vec![parent];
      let mut kids = Vec::new();
      for b in &w.children {
        at.push(Vec::new());
        seq.push(at.len() - 1);
        kids.push((at.len() - 1, b));
      }
      let spine = w.dec.then(|| {
        at.push(Vec::new());
        let pos = w.mark + 1;
        seq.insert(pos, at.len() - 1);
        pos
      });
      let k = seq.len();
      let base = inv.len();
      for j in 0..k {
        inv.push(base + 2 * j + 1);
        inv.push(base + 2 * j);
      }
      let s = |j: usize| base + 2 * j;
      let t = |j: usize| base + 2 * j + 1;
      for (j, &u) in seq.iter().enumerate() {
        at[u].push((t((j + k - 1) % k), s(j)));
      }
      marks.push((w.label, s(spine.unwrap_or(w.mark))));
      for (u, b) in kids {
        for c in &b.children {
          lobe(c, u, at, inv, marks);
        }
      }
      t(k - 1)
    }
    for w in &t.roots {
      let end = lobe(w, 0, &mut at, &mut inv, &mut marks);
      root.get_or_insert(end);
    }
    let nf = inv.len();
    let mut attach = vec![0; nf];
    let mut next = vec![0; nf];
    for (v, entries) in at.iter().enumerate() {
      let flags: Vec<usize> = entries.iter().flat_map(|&(a, b)| [a, b]).collect();
      for (i, &f) in flags.iter().enumerate() {
        attach[f] = v;
        next[f] = flags[(i + 1) % flags.len()];
      }
    }
    let g = Self::new(inv, attach, next)?;
    let root = root.expect("validated tree has a lobe");
    let g = g.with_marking(root, &marks.iter().map(|&(_, f)| f).collect_vec())?;
    let mut labels = vec![0; g.cycles.len()];
    for &(l, f) in &marks {
      labels[g.cycle_of[f]] = l;
    }
    g.with_labels(labels)
  }
}

impl fmt::Display for RibbonGraph {
  fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    for v in 0..self.nv {
      let Some(f) = self.attach.iter().position(|&w| w == v) else {
        writeln!(out, "v {v}:")?;
        continue;
      };
      writeln!(out, "v {v}: {}", self.around(f).iter().join(" "))?;
    }
    for f in (0..self.num_flags()).filter(|&f| f < self.inv[f]) {
      writeln!(out, "e {f} {}", self.inv[f])?;
    }
    if let (Some(mk), Some(c0)) = (&self.marking, self.c0) {
      writeln!(out, "root {}", mk[c0])?;
      for (_, &f) in mk.iter().enumerate().filter(|&(c, _)| c != c0) {
        writeln!(out, "mark {f}")?;
      }
    }
    if let Some(labels) = &self.labels {
      for (c, l) in labels.iter().enumerate() {
        writeln!(out, "label {} {l}", self.cycles[c][0])?;
      }
    }
    Ok(())
  }
}

impl FromStr for RibbonGraph {
  type Err = CactiError;

  fn from_str(text: &str) -> Result<Self> {
    let mut verts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut root = None;
    let mut marks = Vec::new();
    let mut labels = Vec::new();
    let mut pos = 0;
    for line in text.lines() {
      let start = pos;
      pos += line.len() + 1;
      let line = line.split('#').next().unwrap_or("").trim();
      if line.is_empty() {
        continue;
      }
      let err = |msg: &str| CactiError::Parse { pos: start, msg: format!("{msg}: `{line}`") };
      let nums = |s: &str| -> Result<Vec<usize>> { s.split_whitespace().map(|x| x.parse::<usize>().map_err(|_| err("expected a number"))).collect() };
      let (head, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing arguments"))?;
      match head {
        "v" => {
          let (id, flags) = rest.split_once(':').ok_or_else(|| err("expected `v <id>: <flags>`"))?;
          let id = id.trim().parse().map_err(|_| err("bad vertex id"))?;
          if verts.insert(id, nums(flags)?).is_some() {
            return Err(err("duplicate vertex"));
          }
        },
        "e" => match nums(rest)?[..] {
          [a, b] => edges.push((a, b)),
          _ => return Err(err("expected two flags")),
        },
        "root" => match nums(rest)?[..] {
          [f] if root.is_none() => root = Some(f),
          _ => return Err(err("expected one root flag")),
        },
        "mark" => match nums(rest)?[..] {
          [f] => marks.push(f),
          _ => return Err(err("expected one flag")),
        },
        "label" => match nums(rest)?[..] {
          [f, l] => labels.push((f, l as u32)),
          _ => return Err(err("expected a flag and a label")),
        },
        _ => return Err(err("unknown item")),
      }
    }
    let nf = verts.values().map(Vec::len).sum::<usize>();
    if verts.keys().copied().ne(0..verts.len()) {
      return Err(malformed("vertex ids must be 0..V"));
    }
    let mut attach = vec![usize::MAX; nf];
    let mut next = vec![usize::MAX; nf];
    for (&v, flags) in &verts {
      for (i, &f) in flags.iter().enumerate() {
        if f >= nf || attach[f] != usize::MAX {
          return Err(malformed(format!("flag {f} is out of range or listed twice")));
        }
        attach[f] = v;
        next[f] = flags[(i + 1) % flags.len()];
      }
    }
    let mut inv = vec![usize::MAX; nf];
    for (a, b) in edges {
      if a >= nf || b >= nf || inv[a] != usize::MAX || inv[b] != usize::MAX || a == b {
        return Err(malformed(format!("bad edge {a} {b}")));
      }
      inv[a] = b;
      inv[b] = a;
    }
    if let Some(f) = inv.iter().position(|&x| x == usize::MAX) {
      return Err(malformed(format!("flag {f} is on no edge")));
    }
    let mut g = Self::new(inv, attach, next)?;
    if let Some(r) = root {
      g = g.with_marking(r, &marks)?;
    } else if !marks.is_empty() {
      return Err(malformed("marks need a root"));
    }
    if !labels.is_empty() {
      let mut l: Vec<Option<u32>> = vec![None; g.cycles.len()];
      for (f, n) in labels {
        let c = *g.cycle_of.get(f).ok_or_else(|| malformed(format!("no flag {f}")))?;
        l[c] = Some(n);
      }
      let l: Vec<u32> = l.into_iter().enumerate().map(|(c, x)| x.ok_or_else(|| malformed(format!("cycle {c} has no label")))).try_collect()?;
      g = g.with_labels(l)?;
    }
    Ok(g)
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::tree::{enumerate_cells, enumerate_spineless};

  fn loop_graph() -> RibbonGraph { RibbonGraph::new(vec![1, 0], vec![0, 0], vec![1, 0]).unwrap() }

  fn interval() -> RibbonGraph { RibbonGraph::new(vec![1, 0], vec![0, 1], vec![0, 1]).unwrap() }

  #[test]
  fn cycles_of_small_graphs() {
    assert_eq!(loop_graph().cycles(), &[vec![0], vec![1]]);
    assert_eq!(interval().cycles(), &[vec![0, 1]]);
    assert_eq!(loop_graph().genus(), Ok(0));
    assert_eq!(interval().genus(), Ok(0));
  }

  #[test]
  fn interleaved_loops_have_genus_one() {
    // flags f1=0, f2=1, f1*=2, f2*=3 in cyclic order
    let g = RibbonGraph::new(vec![2, 3, 0, 1], vec![0; 4], vec![1, 2, 3, 0]).unwrap();
    assert_eq!(g.cycles().len(), 1);
    assert_eq!(g.genus(), Ok(1));
  }

  #[test]
  fn planar_trees_have_one_cycle() {
    // path of two edges: 0-1 at vertices 0,1 and 2-3 at vertices 1,2
    let g = RibbonGraph::new(vec![1, 0, 3, 2], vec![0, 1, 1, 2], vec![0, 2, 1, 3]).unwrap();
    assert_eq!(g.cycles().len(), 1);
    assert_eq!(g.genus(), Ok(0));
    let h = g.contract_edge(2).unwrap();
    assert_eq!((h.num_vertices(), h.num_edges()), (2, 1));
    assert_eq!(h.cycles(), &[vec![0, 1]]);
    let p = interval().contract_edge(0).unwrap();
    assert_eq!((p.num_vertices(), p.num_edges()), (1, 0));
  }

  #[test]
  fn structural_errors() {
    assert!(matches!(RibbonGraph::new(vec![0, 1], vec![0, 0], vec![1, 0]), Err(CactiError::MalformedGraph(_))));
    assert!(matches!(RibbonGraph::new(vec![1, 0, 3, 2], vec![0, 0, 1, 1], vec![1, 0, 3, 2]), Err(CactiError::Disconnected)));
    assert!(matches!(RibbonGraph::new(vec![1, 0], vec![0, 0], vec![0, 1]), Err(CactiError::MalformedGraph(_))));
    assert_eq!(loop_graph().contract_edge(0), Err(CactiError::LoopContraction));
  }

  #[test]
  fn marking_moves_to_the_next_flag() {
    let t = DecoratedTree::parse("root(w<1;0;1>(b(w<2;0;0>())))").unwrap();
    let g = RibbonGraph::cactus(&t).unwrap();
    let mk = g.marking().unwrap().to_vec();
    let c1 = g.cycle_of(mk[g.cycle_of(0)]);
    let f = mk[c1];
    let h = g.contract_edge(f).unwrap();
    let cyc = &g.cycles()[c1];
    let moved = cyc[(cyc.iter().position(|&x| x == f).unwrap() + 1) % cyc.len()];
    let renumber = |x: usize| x - usize::from(x > f) - usize::from(x > g.inv(f));
    assert!(h.marking().unwrap().contains(&renumber(moved)));
  }

  #[test]
  fn dual_tree_examples() {
    for s in ["root(w<1;0;0>())", "root(w<1;0;0>()w<2;0;0>())", "root(w<1;0;0>(b(w<2;0;0>())))", "root(w<1;1;0>())"] {
      let t = DecoratedTree::parse(s).unwrap();
      assert_eq!(RibbonGraph::cactus(&t).unwrap().dual_tree().unwrap(), t);
    }
    let one = RibbonGraph::cactus(&DecoratedTree::t0()).unwrap();
    assert_eq!((one.num_vertices(), one.num_edges(), one.cycles().len()), (1, 1, 2));
  }

  #[test]
  fn cacti_round_trip() {
    for n in 1..=4 {
      for t in enumerate_cells(n, 2 * n) {
        let g = RibbonGraph::cactus(&t).unwrap();
        assert_eq!(g.cycles().len(), n + 1);
        assert!(g.is_treelike(), "{t}");
        assert_eq!(g.dual_tree().unwrap(), t);
        let h: RibbonGraph = g.to_string().parse().unwrap();
        assert_eq!(h, g);
        assert_eq!(g.cycles().iter().map(Vec::len).sum::<usize>(), g.num_flags());
      }
    }
  }

  #[test]
  fn contraction_keeps_the_genus() {
    for t in enumerate_cells(3, 6) {
      let g = RibbonGraph::cactus(&t).unwrap();
      for f in 0..g.num_flags() {
        if g.attach(f) != g.attach(g.inv(f)) {
          assert_eq!(g.contract_edge(f).unwrap().genus(), Ok(0));
        }
      }
    }
  }

  #[test]
  fn spineless_graphs_are_the_spineless_trees() {
    for n in 1..=4 {
      let spineless = enumerate_spineless(n, 2 * n);
      for t in enumerate_cells(n, 2 * n) {
        assert_eq!(RibbonGraph::cactus(&t).unwrap().is_spineless(), spineless.contains(&t), "{t}");
      }
    }
  }
}
