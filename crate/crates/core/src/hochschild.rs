//! Normalized Hochschild cochains of a Frobenius algebra as dense coefficient
//! tensors, with the Hochschild differential, cup product, braces, the
//! Gerstenhaber bracket, Connes' operator and the cohomology quotient.
//!
//! A cochain of arity `n` stores `f[i_1..i_n][j]`, meaning
//! `f(e_{i_1}, ..., e_{i_n}) = Σ_j f[i_1..i_n][j] e_j`, flattened in
//! row-major order with the output index last.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{
  error::{CactiError, Result},
  frobenius::FrobeniusAlgebra,
  linalg::{Matrix, Quotient},
  rational::{format_q, parse_q, q_frac, Q},
};

#[derive(Clone, Debug)]
pub struct Cochain {
  alg:   Arc<FrobeniusAlgebra>,
  arity: usize,
  data:  Vec<Q>,
}

impl PartialEq for Cochain {
  fn eq(&self, other: &Self) -> bool {
    same_algebra(&self.alg, &other.alg) && self.arity == other.arity && self.data == other.data
  }
}

impl Eq for Cochain {}

pub fn same_algebra(a: &Arc<FrobeniusAlgebra>, b: &Arc<FrobeniusAlgebra>) -> bool { Arc::ptr_eq(a, b) || a == b }

/// Decodes a flat index into `len` base-`d` digits, most significant first.
pub fn digits(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
  let mut out = vec![0; len];
  for slot in out.iter_mut().rev() {
    *slot = idx % d;
    idx /= d;
  }
  out
}

pub fn encode(ds: &[usize], d: usize) -> usize { ds.iter().fold(0, |acc, &x| acc * d + x) }

fn sign(neg: bool) -> Q { if neg { -Q::one() } else { Q::one() } }

impl Cochain {
  pub fn zero(alg: &Arc<FrobeniusAlgebra>, arity: usize) -> Self {
    let d = alg.dim();
    Self { alg: alg.clone(), arity, data: vec![Q::zero(); d.pow(arity as u32 + 1)] }
  }

  /// Builds a cochain from its values on basis tuples, then projects it onto
  /// the normalized subspace.
  pub fn from_fn(alg: &Arc<FrobeniusAlgebra>, arity: usize, mut f: impl FnMut(&[usize]) -> Vec<Q>) -> Self {
    let mut c = Self::from_fn_raw(alg, arity, &mut f);
    c.normalize();
    c
  }

  /// Like [`Cochain::from_fn`] without normalization.
  pub fn from_fn_raw(alg: &Arc<FrobeniusAlgebra>, arity: usize, mut f: impl FnMut(&[usize]) -> Vec<Q>) -> Self {
    let d = alg.dim();
    let mut data = Vec::with_capacity(d.pow(arity as u32 + 1));
    for idx in 0..d.pow(arity as u32) {
      let v = f(&digits(idx, d, arity));
      assert_eq!(v.len(), d);
      data.extend(v);
    }
    Self { alg: alg.clone(), arity, data }
  }

  pub fn from_data(alg: &Arc<FrobeniusAlgebra>, arity: usize, data: Vec<Q>) -> Result<Self> {
    if data.len() != alg.dim().pow(arity as u32 + 1) {
      return Err(CactiError::Shape(format!("cochain of arity {arity} needs {} entries", alg.dim().pow(arity as u32 + 1))));
    }
    Ok(Self { alg: alg.clone(), arity, data })
  }

  /// An element of `A` viewed as a 0-cochain.
  pub fn constant(alg: &Arc<FrobeniusAlgebra>, a: Vec<Q>) -> Self {
    assert_eq!(a.len(), alg.dim());
    Self { alg: alg.clone(), arity: 0, data: a }
  }

  pub fn algebra(&self) -> &Arc<FrobeniusAlgebra> { &self.alg }

  pub fn arity(&self) -> usize { self.arity }

  pub fn data(&self) -> &[Q] { &self.data }

  pub fn dim(&self) -> usize { self.alg.dim() }

  pub fn is_zero(&self) -> bool { self.data.iter().all(Zero::is_zero) }

  /// Output vector on a tuple of basis inputs.
  pub fn at(&self, inputs: &[usize]) -> &[Q] {
    let d = self.dim();
    let base = encode(inputs, d) * d;
    &self.data[base..base + d]
  }

  fn at_mut(&mut self, inputs: &[usize]) -> &mut [Q] {
    let d = self.dim();
    let base = encode(inputs, d) * d;
    &mut self.data[base..base + d]
  }

  /// Evaluates on arbitrary (coordinate-vector) arguments.
  pub fn eval(&self, args: &[Vec<Q>]) -> Vec<Q> {
    assert_eq!(args.len(), self.arity);
    let d = self.dim();
    let mut out = vec![Q::zero(); d];
    for idx in 0..d.pow(self.arity as u32) {
      let ds = digits(idx, d, self.arity);
      let mut coeff = Q::one();
      for (slot, &i) in ds.iter().enumerate() {
        if args[slot][i].is_zero() {
          coeff = Q::zero();
          break;
        }
        coeff *= &args[slot][i];
      }
      if coeff.is_zero() {
        continue;
      }
      for (o, v) in out.iter_mut().zip(self.at(&ds)) {
        if !v.is_zero() {
          *o += &coeff * v;
        }
      }
    }
    out
  }

  /// Unit-killing projection `P` on `A`: `P(a) = a - λ(a) 1` with
  /// `λ(a) = η(a, w) / η(1, w)` for the first basis vector `w` with `η(1, w) ≠ 0`.
  pub fn unit_projection(alg: &FrobeniusAlgebra) -> Matrix {
    let d = alg.dim();
    let counit = alg.counit();
    let w = counit.iter().position(|c| !c.is_zero()).expect("nondegenerate pairing");
    let denom = counit[w].clone();
    // P[m][i]: coefficient of e_m in P(e_i)
    let mut p = Matrix::identity(d);
    for i in 0..d {
      let lambda = alg.eta(i, w) / &denom;
      for m in 0..d {
        let v = &alg.unit()[m] * &lambda;
        p[(m, i)] -= v;
      }
    }
    p
  }

  /// Replaces `f` by `f ∘ P^{⊗n}`.
  pub fn normalize(&mut self) {
    if self.arity == 0 {
      return;
    }
    let d = self.dim();
    let p = Self::unit_projection(&self.alg);
    for slot in 0..self.arity {
      let old = self.data.clone();
      for idx in 0..d.pow(self.arity as u32) {
        let mut ds = digits(idx, d, self.arity);
        let i = ds[slot];
        let mut acc = vec![Q::zero(); d];
        for m in 0..d {
          let c = &p[(m, i)];
          if c.is_zero() {
            continue;
          }
          ds[slot] = m;
          let base = encode(&ds, d) * d;
          for (a, v) in acc.iter_mut().zip(&old[base..base + d]) {
            if !v.is_zero() {
              *a += c * v;
            }
          }
        }
        ds[slot] = i;
        self.at_mut(&ds).clone_from_slice(&acc);
      }
    }
  }

  pub fn is_normalized(&self) -> bool {
    let d = self.dim();
    let u = self.alg.unit().to_vec();
    (0..self.arity).all(|slot| {
      (0..d.pow(self.arity as u32 - 1)).all(|idx| {
        let rest = digits(idx, d, self.arity - 1);
        let mut acc = vec![Q::zero(); d];
        for (k, uk) in u.iter().enumerate() {
          if uk.is_zero() {
            continue;
          }
          let mut ds = rest.clone();
          ds.insert(slot, k);
          for (a, v) in acc.iter_mut().zip(self.at(&ds)) {
            *a += uk * v;
          }
        }
        acc.iter().all(Zero::is_zero)
      })
    })
  }

  /// A normalized cochain with small random rational entries.
  pub fn random(alg: &Arc<FrobeniusAlgebra>, arity: usize, rng: &mut impl Rng) -> Self {
    Self::from_fn(alg, arity, |_| {
      (0..alg.dim())
        .map(|_| {
          let n: i64 = rng.gen_range(-3..=3);
          let den: i64 = *[1, 1, 1, 2].get(rng.gen_range(0..4)).unwrap();
          q_frac(n, den)
        })
        .collect()
    })
  }

  fn check_alg(&self, other: &Cochain) -> Result<()> {
    if same_algebra(&self.alg, &other.alg) { Ok(()) } else { Err(CactiError::AlgebraMismatch) }
  }

  pub fn add(&self, other: &Cochain) -> Result<Cochain> {
    self.check_alg(other)?;
    if self.arity != other.arity {
      return Err(CactiError::ArityMismatch { expected: self.arity, got: other.arity });
    }
    Ok(Cochain { alg: self.alg.clone(), arity: self.arity, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
  }

  pub fn sub(&self, other: &Cochain) -> Result<Cochain> { self.add(&other.scale(&-Q::one())) }

  pub fn scale(&self, c: &Q) -> Cochain {
    Cochain { alg: self.alg.clone(), arity: self.arity, data: self.data.iter().map(|a| a * c).collect() }
  }

  pub fn add_assign_scaled(&mut self, other: &Cochain, c: &Q) {
    assert_eq!(self.arity, other.arity);
    if c.is_zero() {
      return;
    }
    for (a, b) in self.data.iter_mut().zip(&other.data) {
      if !b.is_zero() {
        *a += b * c;
      }
    }
  }

  /// Normalized Hochschild coboundary.
  pub fn hdiff(&self) -> Cochain {
    let n = self.arity;
    let d = self.dim();
    let alg = &*self.alg;
    let mut out = Cochain::zero(&self.alg, n + 1);
    for idx in 0..d.pow(n as u32 + 1) {
      let a = digits(idx, d, n + 1);
      let mut acc = vec![Q::zero(); d];
      // a_1 f(a_2, ..., a_{n+1})
      let first = self.at(&a[1..]);
      for (j, v) in first.iter().enumerate() {
        if v.is_zero() {
          continue;
        }
        for (k, c) in alg.mul_basis(a[0], j).iter().enumerate() {
          if !c.is_zero() {
            acc[k] += v * c;
          }
        }
      }
      // Σ (-1)^i f(.., a_i a_{i+1}, ..)
      for i in 0..n {
        let s = sign((i + 1) % 2 == 1);
        let prod = alg.mul_basis(a[i], a[i + 1]);
        let mut args: Vec<usize> = a[..i].to_vec();
        args.push(0);
        args.extend_from_slice(&a[i + 2..]);
        for (m, c) in prod.iter().enumerate() {
          if c.is_zero() {
            continue;
          }
          args[i] = m;
          let cs = &s * c;
          for (o, v) in acc.iter_mut().zip(self.at(&args)) {
            if !v.is_zero() {
              *o += &cs * v;
            }
          }
        }
      }
      // (-1)^{n+1} f(a_1..a_n) a_{n+1}
      let s = sign((n + 1) % 2 == 1);
      let last = self.at(&a[..n]);
      for (j, v) in last.iter().enumerate() {
        if v.is_zero() {
          continue;
        }
        for (k, c) in alg.mul_basis(j, a[n]).iter().enumerate() {
          if !c.is_zero() {
            acc[k] += &s * v * c;
          }
        }
      }
      out.at_mut(&a).clone_from_slice(&acc);
    }
    out
  }

  /// Cup product `(f ∪ g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})`.
  pub fn cup(&self, g: &Cochain) -> Result<Cochain> {
    self.check_alg(g)?;
    let (p, r) = (self.arity, g.arity);
    let alg = &*self.alg;
    Ok(Cochain::from_fn_raw(&self.alg, p + r, |a| alg.mul(self.at(&a[..p]), g.at(&a[p..]))))
  }

  /// Brace operation `f{g_1, ..., g_k}`: sum over order-preserving insertions
  /// of the `g_l` into the slots of `f`, with sign `Σ_l (|g_l| - 1) i_l`
  /// where `i_l` counts the inputs preceding `g_l`.
  pub fn brace(&self, gs: &[Cochain]) -> Result<Cochain> {
    for g in gs {
      self.check_alg(g)?;
    }
    let n = self.arity;
    let k = gs.len();
    let total = (n + gs.iter().map(|g| g.arity).sum::<usize>()).checked_sub(k).ok_or(CactiError::ZeroArity)?;
    let mut out = Cochain::zero(&self.alg, total);
    if k > n {
      return Ok(out);
    }
    let d = self.dim();
    for (sg, layout) in brace_layouts(n, gs) {
      for idx in 0..d.pow(total as u32) {
        let a = digits(idx, d, total);
        let acc = self.eval_layout(gs, &layout, &a);
        for (o, v) in out.at_mut(&a).iter_mut().zip(acc) {
          if !v.is_zero() {
            *o += &sg * v;
          }
        }
      }
    }
    Ok(out)
  }

  /// `f` with the `g`s plugged in along `layout`, on basis inputs `a`.
  fn eval_layout(&self, gs: &[Cochain], layout: &[Slot], a: &[usize]) -> Vec<Q> {
    let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::with_capacity(layout.len()), Q::one())];
    for slot in layout {
      let mut next = Vec::new();
      match *slot {
        Slot::Inner { g, at } => {
          let g = &gs[g];
          for (m, c) in g.at(&a[at..at + g.arity]).iter().enumerate() {
            if c.is_zero() {
              continue;
            }
            for (args, coeff) in &partial {
              let mut args2 = args.clone();
              args2.push(m);
              next.push((args2, coeff * c));
            }
          }
        },
        Slot::Input(at) => {
          for (args, coeff) in &partial {
            let mut args2 = args.clone();
            args2.push(a[at]);
            next.push((args2, coeff.clone()));
          }
        },
      }
      partial = next;
      if partial.is_empty() {
        break;
      }
    }
    let mut acc = vec![Q::zero(); self.dim()];
    for (args, coeff) in partial {
      for (o, v) in acc.iter_mut().zip(self.at(&args)) {
        if !v.is_zero() {
          *o += &coeff * v;
        }
      }
    }
    acc
  }

  /// Cyclic brace `f{' g_{i+1}, .., g_n, g_1, .., g_i}`: `f` reads its
  /// arguments cyclically starting from the marked angle, `a_0` sits between
  /// `g_n` and `g_1`, and the output is paired with the unit:
  /// `η(a_0, F(a_1..a_N)) = Σ ± η(1, f(.., g_{i+1}(..), .., a_0, .., g_i(..), ..))`.
  /// Each term carries the brace sign of its layout, the sign `(-1)^{pN}`
  /// of rotating `a_0` to position `p`, and a global orientation sign.
  pub fn cyclic_brace(&self, gs: &[Cochain], i: usize) -> Result<Cochain> {
    for g in gs {
      self.check_alg(g)?;
    }
    let k = gs.len();
    if i > k {
      return Err(CactiError::InvalidAngle { pos: i, angles: k + 1 });
    }
    let n = self.arity;
    let slots = (n + gs.iter().map(|g| g.arity).sum::<usize>()).checked_sub(k).filter(|&s| s > 0).ok_or(CactiError::ZeroArity)?;
    if k > n {
      return Ok(Cochain::zero(&self.alg, slots - 1));
    }
    let d = self.dim();
    let order: Vec<Cochain> = gs[i..].iter().chain(&gs[..i]).cloned().collect();
    let mut dual = DualTensor::zero(&self.alg, slots);
    let big_n = slots - 1;
    // orientation of the cell relative to the formula: every g_l passes f
    // and the earlier g's, and the cyclic reorder is Koszul in shifted degrees
    let m: Vec<usize> = gs.iter().map(|g| g.arity).collect();
    let mut e = k * (k + 1) / 2;
    for l in 0..k {
      e += (n + l + 1 + m[..l].iter().sum::<usize>()) * m[l];
    }
    for a in 0..i {
      for b in i..k {
        e += (m[a] + 1) * (m[b] + 1);
      }
    }
    let counit = self.alg.counit();
    for (sg, layout) in brace_layouts(n, &order) {
      // a_0 must be a direct input with exactly g_{i+1}..g_n in front of it
      for (pos, slot) in layout.iter().enumerate() {
        let Slot::Input(p) = *slot else { continue };
        let before = layout[..pos].iter().filter(|s| matches!(s, Slot::Inner { .. })).count();
        if before != k - i {
          continue;
        }
        let s = if (p * big_n + e).is_multiple_of(2) { sg.clone() } else { -sg.clone() };
        for idx in 0..d.pow(slots as u32) {
          let a = digits(idx, d, slots);
          // rotated list: position q holds a_{(q - p) mod slots}
          let rot: Vec<usize> = (0..slots).map(|q| a[(q + slots - p) % slots]).collect();
          let val = self.eval_layout(&order, &layout, &rot);
          let v: Q = counit.iter().zip(&val).filter(|(c, x)| !c.is_zero() && !x.is_zero()).map(|(c, x)| c * x).sum();
          if !v.is_zero() {
            dual.data[idx] += &s * v;
          }
        }
      }
    }
    Ok(dual.undualize())
  }

  /// Gerstenhaber pre-Lie product `f ∘ g = f{g}`.
  pub fn circ(&self, g: &Cochain) -> Result<Cochain> { self.brace(std::slice::from_ref(g)) }

  /// Gerstenhaber bracket `[f, g] = f{g} - (-1)^{(|f|-1)(|g|-1)} g{f}`.
  pub fn bracket(&self, g: &Cochain) -> Result<Cochain> {
    let fg = self.circ(g)?;
    let gf = g.circ(self)?;
    let odd = (self.arity + 1) * (g.arity + 1) % 2 == 1;
    if odd { fg.add(&gf) } else { fg.sub(&gf) }
  }

  /// Connes' operator: `η(a_0, Δf(a_1..a_{n-1})) = η(1, f∘N(a_0..a_{n-1}))`
  /// with `N = Σ_k t^k` and `t(a_1..a_n) = (-1)^{n-1}(a_n, a_1, .., a_{n-1})`.
  pub fn cdelta(&self) -> Result<Cochain> {
    let n = self.arity;
    if n == 0 {
      return Err(CactiError::ZeroArity);
    }
    let d = self.dim();
    let counit = self.alg.counit();
    let mut dual = DualTensor { alg: self.alg.clone(), slots: n, data: vec![Q::zero(); d.pow(n as u32)] };
    for idx in 0..d.pow(n as u32) {
      let a = digits(idx, d, n);
      let mut acc = Q::zero();
      for k in 0..n {
        // t^k(a_0..a_{n-1}) = (-1)^{k(n-1)} (a_{n-k}, .., a_{n-1}, a_0, .., a_{n-k-1})
        let rotated: Vec<usize> = (0..n).map(|p| a[(p + n - k) % n]).collect();
        let val = self.at(&rotated);
        let s: Q = counit.iter().zip(val).filter(|(c, v)| !c.is_zero() && !v.is_zero()).map(|(c, v)| c * v).sum();
        if (k * (n - 1)) % 2 == 1 {
          acc -= s;
        } else {
          acc += s;
        }
      }
      dual.data[idx] = acc;
    }
    Ok(dual.undualize())
  }

  /// Connes' operator; `None` on arity 0 where it vanishes.
  pub fn bv_delta(&self) -> Option<Cochain> { self.cdelta().ok() }

  /// Failure of `Δ` to be a second-order operator for the cup product:
  /// `Δ(abc) - Δ(ab)c - (-1)^{|a|} aΔ(bc) - (-1)^{(|a|+1)|b|} bΔ(ac)
  ///  + Δ(a)bc + (-1)^{|a|} aΔ(b)c + (-1)^{|a|+|b|} abΔ(c)`.
  /// Vanishes in cohomology for closed `a, b, c`. `None` in total degree 0.
  pub fn bv_seven_term(a: &Cochain, b: &Cochain, c: &Cochain) -> Result<Option<Cochain>> {
    let (p, q) = (a.arity, b.arity);
    let Some(top) = a.cup(b)?.cup(c)?.bv_delta() else { return Ok(None) };
    let sg = |e: usize| if e.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let ab = a.cup(b)?;
    let terms = [
      ab.bv_delta().map(|x| x.cup(c)).transpose()?.map(|x| (x, -Q::one())),
      b.cup(c)?.bv_delta().map(|x| a.cup(&x)).transpose()?.map(|x| (x, -sg(p))),
      a.cup(c)?.bv_delta().map(|x| b.cup(&x)).transpose()?.map(|x| (x, -sg((p + 1) * q))),
      a.bv_delta().map(|x| x.cup(b)?.cup(c)).transpose()?.map(|x| (x, Q::one())),
      b.bv_delta().map(|x| a.cup(&x)?.cup(c)).transpose()?.map(|x| (x, sg(p))),
      c.bv_delta().map(|x| ab.cup(&x)).transpose()?.map(|x| (x, sg(p + q))),
    ];
    let mut out = top;
    for (t, s) in terms.into_iter().flatten() {
      out.add_assign_scaled(&t, &s);
    }
    Ok(Some(out))
  }

  /// Bracket induced by `Δ`: `(-1)^{|a|} (Δ(ab) - Δ(a)b - (-1)^{|a|} aΔ(b))`.
  /// `None` in total degree 0.
  pub fn bv_bracket(a: &Cochain, b: &Cochain) -> Result<Option<Cochain>> {
    let Some(mut out) = a.cup(b)?.bv_delta() else { return Ok(None) };
    if let Some(x) = a.bv_delta() {
      out.add_assign_scaled(&x.cup(b)?, &-Q::one());
    }
    if let Some(x) = b.bv_delta() {
      let s = if a.arity.is_multiple_of(2) { -Q::one() } else { Q::one() };
      out.add_assign_scaled(&a.cup(&x)?, &s);
    }
    Ok(Some(if a.arity.is_multiple_of(2) { out } else { out.scale(&-Q::one()) }))
  }

  /// `f̃(a_0, .., a_n) = η(a_0, f(a_1, .., a_n))`.
  pub fn dualize(&self) -> DualTensor {
    let d = self.dim();
    let n = self.arity;
    let mut data = vec![Q::zero(); d.pow(n as u32 + 1)];
    for i0 in 0..d {
      for idx in 0..d.pow(n as u32) {
        let val = &self.data[idx * d..idx * d + d];
        let s: Q = (0..d).filter(|&j| !val[j].is_zero()).map(|j| self.alg.eta(i0, j) * &val[j]).sum();
        data[i0 * d.pow(n as u32) + idx] = s;
      }
    }
    DualTensor { alg: self.alg.clone(), slots: n + 1, data }
  }

  pub fn to_json(&self) -> CochainJson {
    let d = self.dim();
    CochainJson {
      algebra: self.alg.name().to_string(),
      arity:   self.arity,
      coeffs:  (0..d.pow(self.arity as u32)).map(|i| self.data[i * d..i * d + d].iter().map(format_q).collect()).collect(),
    }
  }

  pub fn from_json(alg: &Arc<FrobeniusAlgebra>, j: &CochainJson) -> Result<Cochain> {
    let d = alg.dim();
    if j.coeffs.len() != d.pow(j.arity as u32) || j.coeffs.iter().any(|r| r.len() != d) {
      return Err(CactiError::Shape(format!("cochain of arity {} over dim {d} has wrong coefficient shape", j.arity)));
    }
    let data = j.coeffs.iter().flatten().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>()?;
    Cochain::from_data(alg, j.arity, data)
  }

  /// Coordinates on the normalized subspace (see [`NormalizedCoords`]).
  pub fn coords(&self) -> Vec<Q> { NormalizedCoords::new(&self.alg, self.arity).extract(self) }
}

/// Element of `A^{*⊗k}`; the image of an arity `k-1` cochain under the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTensor {
  alg:   Arc<FrobeniusAlgebra>,
  slots: usize,
  data:  Vec<Q>,
}

impl DualTensor {
  pub fn zero(alg: &Arc<FrobeniusAlgebra>, slots: usize) -> Self {
    Self { alg: alg.clone(), slots, data: vec![Q::zero(); alg.dim().pow(slots as u32)] }
  }

  pub fn from_data(alg: &Arc<FrobeniusAlgebra>, slots: usize, data: Vec<Q>) -> Self {
    assert_eq!(data.len(), alg.dim().pow(slots as u32));
    Self { alg: alg.clone(), slots, data }
  }

  pub fn slots(&self) -> usize { self.slots }

  pub fn data(&self) -> &[Q] { &self.data }

  pub fn data_mut(&mut self) -> &mut [Q] { &mut self.data }

  pub fn at(&self, idx: &[usize]) -> &Q { &self.data[encode(idx, self.alg.dim())] }

  /// Inverse of [`Cochain::dualize`], using `η^{ij}`.
  pub fn undualize(&self) -> Cochain {
    assert!(self.slots >= 1);
    let d = self.alg.dim();
    let n = self.slots - 1;
    let stride = d.pow(n as u32);
    let mut out = Cochain::zero(&self.alg, n);
    for idx in 0..stride {
      for j in 0..d {
        let s: Q = (0..d)
          .filter(|&i0| !self.data[i0 * stride + idx].is_zero())
          .map(|i0| self.alg.eta_inv(j, i0) * &self.data[i0 * stride + idx])
          .sum();
        out.data[idx * d + j] = s;
      }
    }
    out
  }
}

/// Cochain JSON: `{"algebra":"dual","arity":1,"coeffs":[["0","0"],["0","1"]]}`;
/// row `r` lists the output coordinates of `f` on the `r`-th basis tuple.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CochainJson {
  pub algebra: String,
  pub arity:   usize,
  pub coeffs:  Vec<Vec<String>>,
}

/// Coordinates on normalized cochains of a fixed arity: the values on tuples
/// avoiding one basis index `i0` with nonzero unit coordinate. The missing
/// values are recovered from `f(.., 1, ..) = 0`.
#[derive(Clone, Debug)]
pub struct NormalizedCoords {
  alg:     Arc<FrobeniusAlgebra>,
  arity:   usize,
  skip:    usize,
  allowed: Vec<usize>,
}

impl NormalizedCoords {
  pub fn new(alg: &Arc<FrobeniusAlgebra>, arity: usize) -> Self {
    let skip = alg.unit().iter().position(|u| !u.is_zero()).expect("unit is nonzero");
    let allowed = (0..alg.dim()).filter(|&i| i != skip).collect();
    Self { alg: alg.clone(), arity, skip, allowed }
  }

  pub fn len(&self) -> usize { self.allowed.len().pow(self.arity as u32) * self.alg.dim() }

  pub fn is_empty(&self) -> bool { self.len() == 0 }

  fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
    let m = self.allowed.len();
    (0..m.pow(self.arity as u32)).map(move |idx| digits(idx, m.max(1), self.arity).into_iter().map(|x| self.allowed[x]).collect())
  }

  pub fn extract(&self, f: &Cochain) -> Vec<Q> {
    assert_eq!(f.arity, self.arity);
    self.tuples().flat_map(|t| f.at(&t).to_vec()).collect()
  }

  pub fn build(&self, coords: &[Q]) -> Cochain {
    assert_eq!(coords.len(), self.len());
    let d = self.alg.dim();
    let mut f = Cochain::zero(&self.alg, self.arity);
    for (t, chunk) in self.tuples().zip(coords.chunks(d)) {
      f.at_mut(&t).clone_from_slice(chunk);
    }
    // fill tuples containing `skip`, slot by slot: u_skip f(.., e_skip, ..) = -Σ_{s≠skip} u_s f(.., e_s, ..)
    let u = self.alg.unit().to_vec();
    let inv = u[self.skip].recip();
    for slot in 0..self.arity {
      for idx in 0..d.pow(self.arity as u32) {
        let ds = digits(idx, d, self.arity);
        if ds[slot] != self.skip || ds[slot + 1..].contains(&self.skip) {
          continue;
        }
        let mut acc = vec![Q::zero(); d];
        for &s in &self.allowed {
          if u[s].is_zero() {
            continue;
          }
          let mut t = ds.clone();
          t[slot] = s;
          for (a, v) in acc.iter_mut().zip(f.at(&t)) {
            *a -= &u[s] * v;
          }
        }
        for a in acc.iter_mut() {
          *a *= &inv;
        }
        f.at_mut(&ds).clone_from_slice(&acc);
      }
    }
    f
  }

  pub fn basis(&self) -> Vec<Cochain> {
    (0..self.len())
      .map(|k| {
        let mut c = vec![Q::zero(); self.len()];
        c[k] = Q::one();
        self.build(&c)
      })
      .collect()
  }
}

/// `HH^n(A, A)` computed on normalized cochains.
#[derive(Clone, Debug)]
pub struct Cohomology {
  pub arity:           usize,
  pub coords:          NormalizedCoords,
  pub quotient:        Quotient,
  pub representatives: Vec<Cochain>,
}

impl Cohomology {
  pub fn compute(alg: &Arc<FrobeniusAlgebra>, n: usize) -> Self {
    let here = NormalizedCoords::new(alg, n);
    let up = NormalizedCoords::new(alg, n + 1);
    let d_here = differential_matrix(&here, &up);
    let cycles = d_here.kernel();
    let boundaries: Vec<Vec<Q>> = if n == 0 {
      Vec::new()
    } else {
      let down = NormalizedCoords::new(alg, n - 1);
      down.basis().iter().map(|b| here.extract(&b.hdiff())).collect()
    };
    let quotient = Quotient::new(here.len(), &cycles, &boundaries);
    let representatives = quotient.representatives.iter().map(|z| here.build(z)).collect();
    Self { arity: n, coords: here, quotient, representatives }
  }

  pub fn dim(&self) -> usize { self.quotient.dim() }

  /// Coset coordinates of a cocycle; `None` if `f` is not closed.
  pub fn reduce(&self, f: &Cochain) -> Option<Vec<Q>> {
    if f.arity != self.arity {
      return None;
    }
    self.quotient.reduce(&self.coords.extract(f))
  }

  pub fn is_coboundary(&self, f: &Cochain) -> bool { self.quotient.is_boundary(&self.coords.extract(f)) }
}

fn differential_matrix(from: &NormalizedCoords, to: &NormalizedCoords) -> Matrix {
  let cols: Vec<Vec<Q>> = from.basis().iter().map(|b| to.extract(&b.hdiff())).collect();
  Matrix::from_columns(to.len(), &cols)
}

/// Strictly increasing sequences of length `k` in `0..n`.
pub fn increasing_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
  fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
      out.push(cur.clone());
      return;
    }
    for i in start..n {
      if n - i < k - cur.len() {
        break;
      }
      cur.push(i);
      rec(i + 1, n, k, cur, out);
      cur.pop();
    }
  }
  let mut out = Vec::new();
  rec(0, n, k, &mut Vec::new(), &mut out);
  out
}

#[derive(Clone, Copy, Debug)]
enum Slot {
  /// Direct input at this position of the flattened argument list.
  Input(usize),
  /// Output of `gs[g]` applied to the inputs starting at `at`.
  Inner { g: usize, at: usize },
}

/// Order-preserving insertions of `gs` into `n` slots, with brace signs.
fn brace_layouts(n: usize, gs: &[Cochain]) -> Vec<(Q, Vec<Slot>)> {
  let k = gs.len();
  if k > n {
    return Vec::new();
  }
  increasing_sequences(n, k)
    .into_iter()
    .map(|positions| {
      let mut s = 0usize;
      let mut offset = 0usize;
      let mut layout = Vec::with_capacity(n);
      let mut gi = 0;
      for slot in 0..n {
        if gi < k && positions[gi] == slot {
          s += (gs[gi].arity + 1) * offset; // (|g|-1) ≡ (|g|+1) mod 2
          layout.push(Slot::Inner { g: gi, at: offset });
          offset += gs[gi].arity;
          gi += 1;
        } else {
          layout.push(Slot::Input(offset));
          offset += 1;
        }
      }
      (sign(s % 2 == 1), layout)
    })
    .collect()
}

#[cfg(test)]
mod tests {
  use rand::SeedableRng;
  use rand_chacha::ChaCha8Rng;

  use super::*;
  use crate::rational::q;

  fn alg(name: &str) -> Arc<FrobeniusAlgebra> { Arc::new(FrobeniusAlgebra::builtin(name).unwrap()) }

  /// f(x) = x, f(1) = 0 over the dual numbers.
  fn dual_derivation(a: &Arc<FrobeniusAlgebra>) -> Cochain {
    Cochain::from_fn(a, 1, |i| if i[0] == 1 { vec![q(0), q(1)] } else { vec![q(0), q(0)] })
  }

  #[test]
  fn dualize_example() {
    let a = alg("dual");
    let x = Cochain::constant(&a, vec![q(0), q(1)]);
    let t = x.dualize();
    assert_eq!(t.at(&[0]), &q(1));
    assert_eq!(t.at(&[1]), &q(0));
  }

  #[test]
  fn dualize_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in FrobeniusAlgebra::BUILTINS {
      let a = alg(name);
      for n in 0..=2 {
        let f = Cochain::random(&a, n, &mut rng);
        assert_eq!(f.dualize().undualize(), f);
      }
    }
  }

  #[test]
  fn hdiff_of_central_element_vanishes() {
    let a = alg("dual");
    assert!(Cochain::constant(&a, vec![q(0), q(1)]).hdiff().is_zero());
    assert!(Cochain::constant(&a, vec![q(1), q(0)]).hdiff().is_zero());
  }

  #[test]
  fn hdiff_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["dual", "z2", "z3", "m2"] {
      let a = alg(name);
      for n in 0..=2 {
        let f = Cochain::random(&a, n, &mut rng);
        let df = f.hdiff();
        assert!(df.is_normalized());
        assert!(df.hdiff().is_zero(), "{name} arity {n}");
      }
    }
  }

  #[test]
  fn cup_over_dual() {
    let a = alg("dual");
    let x = Cochain::constant(&a, vec![q(0), q(1)]);
    assert!(x.cup(&x).unwrap().is_zero());
    let one = Cochain::constant(&a, vec![q(1), q(0)]);
    assert_eq!(one.cup(&x).unwrap(), x);
  }

  #[test]
  fn brace_with_identity_derivation() {
    let a = alg("dual");
    let f = dual_derivation(&a);
    assert_eq!(f.circ(&f).unwrap(), f);
  }

  #[test]
  fn connes_delta_of_derivation_is_unit() {
    let a = alg("dual");
    let f = dual_derivation(&a);
    let df = f.cdelta().unwrap();
    assert_eq!(df, Cochain::constant(&a, vec![q(1), q(0)]));
    assert!(matches!(Cochain::constant(&a, vec![q(1), q(0)]).cdelta(), Err(CactiError::ZeroArity)));
  }

  #[test]
  fn normalized_coordinates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["dual", "z3", "m2"] {
      let a = alg(name);
      for n in 0..=2 {
        let f = Cochain::random(&a, n, &mut rng);
        let nc = NormalizedCoords::new(&a, n);
        assert_eq!(nc.build(&nc.extract(&f)), f);
      }
    }
  }

  #[test]
  fn cohomology_dimensions() {
    let dual = alg("dual");
    assert_eq!(Cohomology::compute(&dual, 0).dim(), 2);
    assert_eq!(Cohomology::compute(&dual, 1).dim(), 1);
    let m2 = alg("m2");
    assert_eq!(Cohomology::compute(&m2, 0).dim(), 1);
    assert_eq!(Cohomology::compute(&m2, 1).dim(), 0);
  }

  #[test]
  fn json_round_trip() {
    let a = alg("z3");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = Cochain::random(&a, 2, &mut rng);
    assert_eq!(Cochain::from_json(&a, &f.to_json()).unwrap(), f);
  }

  #[test]
  fn bv_identities_hold_in_cohomology() {
    let a = alg("dual");
    let hh: Vec<Cohomology> = (0..=3).map(|n| Cohomology::compute(&a, n)).collect();
    for p in 0..=3 {
      for x in &hh[p].representatives {
        if let Some(dx) = x.bv_delta() {
          assert!(dx.bv_delta().is_none_or(|ddx| ddx.is_zero()));
        }
        for q in 0..=3 - p {
          for y in &hh[q].representatives {
            if p + q > 0 {
              let br = Cochain::bv_bracket(x, y).unwrap().unwrap();
              assert!(hh[p + q - 1].is_coboundary(&br.sub(&x.bracket(y).unwrap()).unwrap()));
            }
            for r in 0..=3 - p - q {
              for z in &hh[r].representatives {
                if let Some(d) = Cochain::bv_seven_term(x, y, z).unwrap() {
                  assert!(hh[p + q + r - 1].is_coboundary(&d), "{p} {q} {r}");
                }
              }
            }
          }
        }
      }
    }
  }
}
