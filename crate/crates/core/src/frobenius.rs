//! Finite-dimensional Frobenius algebras over `Q`.
//!
//! An algebra is given by structure constants `e_i e_j = Σ_k c[i][j][k] e_k`,
//! unit coordinates and a pairing matrix `η[i][j] = η(e_i, e_j)`. Every axiom
//! (associativity, unit, symmetry, invariance, nondegeneracy) is checked
//! exhaustively over basis tuples at construction.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{
  error::{CactiError, Result},
  linalg::Matrix,
  rational::{format_q, parse_q, q, Q},
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
  name:    String,
  dim:     usize,
  mul:     Vec<Q>,
  unit:    Vec<Q>,
  eta:     Vec<Q>,
  eta_inv: Vec<Q>,
}

impl FrobeniusAlgebra {
  /// Validates the axioms and inverts the pairing.
  pub fn new(name: impl Into<String>, dim: usize, mul: Vec<Q>, unit: Vec<Q>, eta: Vec<Q>) -> Result<Self> {
    if dim == 0 {
      return Err(CactiError::Shape("dimension must be positive".into()));
    }
    if mul.len() != dim * dim * dim || unit.len() != dim || eta.len() != dim * dim {
      return Err(CactiError::Shape(format!(
        "dim {dim}: got {} structure constants, {} unit coordinates, {} pairing entries",
        mul.len(),
        unit.len(),
        eta.len()
      )));
    }
    let mut alg = Self { name: name.into(), dim, mul, unit, eta, eta_inv: Vec::new() };
    alg.check_axioms()?;
    let eta_m = Matrix::from_rows((0..dim).map(|i| alg.eta[i * dim..(i + 1) * dim].to_vec()).collect());
    let mut inv = Vec::with_capacity(dim * dim);
    let cols: Vec<Vec<Q>> = (0..dim)
      .map(|j| {
        let mut e = vec![Q::zero(); dim];
        e[j] = Q::one();
        eta_m.solve(&e).expect("pairing checked nondegenerate")
      })
      .collect();
    for i in 0..dim {
      for col in &cols {
        inv.push(col[i].clone());
      }
    }
    alg.eta_inv = inv;
    Ok(alg)
  }

  fn check_axioms(&self) -> Result<()> {
    let d = self.dim;
    let basis = |i: usize| {
      let mut v = vec![Q::zero(); d];
      v[i] = Q::one();
      v
    };
    for i in 0..d {
      for j in 0..d {
        for k in 0..d {
          let l = self.mul(&self.mul(&basis(i), &basis(j)), &basis(k));
          let r = self.mul(&basis(i), &self.mul(&basis(j), &basis(k)));
          if l != r {
            return Err(CactiError::Axiom { axiom: "associativity", witness: vec![i, j, k] });
          }
        }
      }
    }
    for i in 0..d {
      if self.mul(&self.unit, &basis(i)) != basis(i) {
        return Err(CactiError::Axiom { axiom: "left unit", witness: vec![i] });
      }
      if self.mul(&basis(i), &self.unit) != basis(i) {
        return Err(CactiError::Axiom { axiom: "right unit", witness: vec![i] });
      }
    }
    for i in 0..d {
      for j in 0..d {
        if self.eta[i * d + j] != self.eta[j * d + i] {
          return Err(CactiError::Axiom { axiom: "symmetry", witness: vec![i, j] });
        }
      }
    }
    for i in 0..d {
      for j in 0..d {
        for k in 0..d {
          let l = self.pair(&self.mul(&basis(i), &basis(j)), &basis(k));
          let r = self.pair(&basis(i), &self.mul(&basis(j), &basis(k)));
          if l != r {
            return Err(CactiError::Axiom { axiom: "invariance", witness: vec![i, j, k] });
          }
        }
      }
    }
    let eta_m = Matrix::from_rows((0..d).map(|i| self.eta[i * d..(i + 1) * d].to_vec()).collect());
    if eta_m.rank() < d {
      return Err(CactiError::Axiom { axiom: "nondegeneracy", witness: vec![] });
    }
    Ok(())
  }

  pub fn builtin(name: &str) -> Result<Self> {
    match name {
      "dual" => {
        // basis {1, x}, x^2 = 0, η(1,x) = 1
        let mut mul = vec![q(0); 8];
        set3(&mut mul, 2, 0, 0, 0, q(1));
        set3(&mut mul, 2, 0, 1, 1, q(1));
        set3(&mut mul, 2, 1, 0, 1, q(1));
        Self::new("dual", 2, mul, vec![q(1), q(0)], vec![q(0), q(1), q(1), q(0)])
      },
      "z2" => Self::cyclic_group("z2", 2),
      "z3" => Self::cyclic_group("z3", 3),
      "m2" => {
        // E_{ab} at index 2a + b; E_{ab} E_{cd} = δ_{bc} E_{ad}; η = trace form
        let mut mul = vec![q(0); 64];
        let mut eta = vec![q(0); 16];
        for a in 0..2 {
          for b in 0..2 {
            for c in 0..2 {
              for dd in 0..2 {
                if b == c {
                  set3(&mut mul, 4, 2 * a + b, 2 * c + dd, 2 * a + dd, q(1));
                }
                if b == c && a == dd {
                  eta[(2 * a + b) * 4 + (2 * c + dd)] = q(1);
                }
              }
            }
          }
        }
        Self::new("m2", 4, mul, vec![q(1), q(0), q(0), q(1)], eta)
      },
      other => Err(CactiError::UnknownAlgebra(other.to_string())),
    }
  }

  fn cyclic_group(name: &str, n: usize) -> Result<Self> {
    let mut mul = vec![q(0); n * n * n];
    let mut eta = vec![q(0); n * n];
    for a in 0..n {
      for b in 0..n {
        set3(&mut mul, n, a, b, (a + b) % n, q(1));
        if (a + b) % n == 0 {
          eta[a * n + b] = q(1);
        }
      }
    }
    let mut unit = vec![q(0); n];
    unit[0] = q(1);
    Self::new(name, n, mul, unit, eta)
  }

  pub const BUILTINS: [&'static str; 4] = ["dual", "z2", "z3", "m2"];

  pub fn name(&self) -> &str { &self.name }

  pub fn dim(&self) -> usize { self.dim }

  pub fn unit(&self) -> &[Q] { &self.unit }

  /// Coordinates of `e_i e_j`.
  pub fn mul_basis(&self, i: usize, j: usize) -> &[Q] {
    let d = self.dim;
    &self.mul[(i * d + j) * d..(i * d + j + 1) * d]
  }

  pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
    let d = self.dim;
    let mut out = vec![Q::zero(); d];
    for (i, x) in a.iter().enumerate() {
      if x.is_zero() {
        continue;
      }
      for (j, y) in b.iter().enumerate() {
        if y.is_zero() {
          continue;
        }
        let xy = x * y;
        for (k, c) in self.mul_basis(i, j).iter().enumerate() {
          if !c.is_zero() {
            out[k] += &xy * c;
          }
        }
      }
    }
    out
  }

  pub fn eta(&self, i: usize, j: usize) -> &Q { &self.eta[i * self.dim + j] }

  /// Entry `η^{ij}` of the inverse pairing.
  pub fn eta_inv(&self, i: usize, j: usize) -> &Q { &self.eta_inv[i * self.dim + j] }

  pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
    let d = self.dim;
    let mut s = Q::zero();
    for (i, x) in a.iter().enumerate() {
      if x.is_zero() {
        continue;
      }
      for (j, y) in b.iter().enumerate() {
        let e = &self.eta[i * d + j];
        if !y.is_zero() && !e.is_zero() {
          s += x * y * e;
        }
      }
    }
    s
  }

  /// The Casimir two-tensor `C = Σ e_i η^{ij} ⊗ e_j` as a `dim × dim` coefficient matrix.
  pub fn casimir(&self) -> Vec<Vec<Q>> {
    (0..self.dim).map(|i| self.eta_inv[i * self.dim..(i + 1) * self.dim].to_vec()).collect()
  }

  /// Snake identity `(η ⊗ id)(v ⊗ C) = v` on every basis vector, both legs.
  pub fn snake_holds(&self) -> bool {
    let c = self.casimir();
    let d = self.dim;
    (0..d).all(|v| {
      (0..d).all(|j| {
        let left: Q = (0..d).map(|i| self.eta(v, i) * &c[i][j]).sum();
        let right: Q = (0..d).map(|i| &c[j][i] * self.eta(i, v)).sum();
        let want = if v == j { Q::one() } else { Q::zero() };
        left == want && right == want
      })
    })
  }

  /// `η(1, e_i)`: the counit.
  pub fn counit(&self) -> Vec<Q> {
    (0..self.dim).map(|i| self.pair(&self.unit, &basis_vec(self.dim, i))).collect()
  }

  /// Same algebra written in the basis `f_a = Σ_i p[a][i] e_i`.
  pub fn change_basis(&self, p: &[Vec<Q>]) -> Result<Self> {
    let d = self.dim;
    let pm = Matrix::from_rows(p.to_vec());
    if pm.rows != d || pm.cols != d || pm.rank() < d {
      return Err(CactiError::Shape("basis change must be an invertible dim x dim matrix".into()));
    }
    // coordinates in the new basis: solve v = Σ_a c_a f_a, i.e. pm^T c = v
    let mut pt = Matrix::zeros(d, d);
    for a in 0..d {
      for i in 0..d {
        pt[(i, a)] = p[a][i].clone();
      }
    }
    let to_new = |v: &[Q]| pt.solve(v).expect("invertible");
    let mut mul = vec![Q::zero(); d * d * d];
    let mut eta = vec![Q::zero(); d * d];
    for a in 0..d {
      for b in 0..d {
        let prod = to_new(&self.mul(&p[a], &p[b]));
        for (k, c) in prod.into_iter().enumerate() {
          mul[(a * d + b) * d + k] = c;
        }
        eta[a * d + b] = self.pair(&p[a], &p[b]);
      }
    }
    Self::new(format!("{}'", self.name), d, mul, to_new(&self.unit), eta)
  }

  pub fn to_json(&self) -> AlgebraJson {
    let d = self.dim;
    AlgebraJson {
      name: Some(self.name.clone()),
      dim:  d,
      unit: self.unit.iter().map(format_q).collect(),
      mul:  (0..d)
        .map(|i| (0..d).map(|j| self.mul_basis(i, j).iter().map(format_q).collect()).collect())
        .collect(),
      eta:  (0..d).map(|i| (0..d).map(|j| format_q(self.eta(i, j))).collect()).collect(),
    }
  }

  pub fn from_json(j: &AlgebraJson) -> Result<Self> {
    let d = j.dim;
    let parse_all = |v: &[String]| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>();
    let unit = parse_all(&j.unit)?;
    let mut mul = Vec::with_capacity(d * d * d);
    if j.mul.len() != d {
      return Err(CactiError::Shape("mul must be dim x dim x dim".into()));
    }
    for row in &j.mul {
      if row.len() != d {
        return Err(CactiError::Shape("mul must be dim x dim x dim".into()));
      }
      for entry in row {
        mul.extend(parse_all(entry)?);
      }
    }
    let mut eta = Vec::with_capacity(d * d);
    for row in &j.eta {
      eta.extend(parse_all(row)?);
    }
    Self::new(j.name.clone().unwrap_or_else(|| "custom".into()), d, mul, unit, eta)
  }

  /// Resolves `dual|z2|z3|m2|@path.json`.
  pub fn resolve(spec: &str) -> Result<Self> {
    if let Some(path) = spec.strip_prefix('@') {
      let text = std::fs::read_to_string(path).map_err(|e| CactiError::Io(e.to_string()))?;
      let j: AlgebraJson =
        serde_json::from_str(&text).map_err(|e| CactiError::Parse { pos: 0, msg: e.to_string() })?;
      Self::from_json(&j)
    } else {
      Self::builtin(spec)
    }
  }
}

/// Algebra JSON: `{"dim":2,"unit":[...],"mul":[[[...]]],"eta":[[...]]}` with
/// rationals written as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub name: Option<String>,
  pub dim:  usize,
  pub unit: Vec<String>,
  pub mul:  Vec<Vec<Vec<String>>>,
  pub eta:  Vec<Vec<String>>,
}

pub fn basis_vec(d: usize, i: usize) -> Vec<Q> {
  let mut v = vec![Q::zero(); d];
  v[i] = Q::one();
  v
}

fn set3(mul: &mut [Q], d: usize, i: usize, j: usize, k: usize, v: Q) { mul[(i * d + j) * d + k] = v; }

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn builtins_validate() {
    for name in FrobeniusAlgebra::BUILTINS {
      let a = FrobeniusAlgebra::builtin(name).unwrap();
      assert_eq!(a.name(), name);
    }
    assert!(matches!(FrobeniusAlgebra::builtin("z5"), Err(CactiError::UnknownAlgebra(_))));
  }

  #[test]
  fn dual_casimir() {
    let a = FrobeniusAlgebra::builtin("dual").unwrap();
    // 1⊗x + x⊗1
    assert_eq!(a.casimir(), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
  }

  #[test]
  fn z2_casimir() {
    let a = FrobeniusAlgebra::builtin("z2").unwrap();
    assert_eq!(a.casimir(), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
  }

  #[test]
  fn m2_casimir_is_sum_eij_eji() {
    let a = FrobeniusAlgebra::builtin("m2").unwrap();
    let c = a.casimir();
    // brute force: C[(ab),(cd)] = 1 iff (cd) = (ba)
    for x in 0..4 {
      for y in 0..4 {
        let (ai, bi) = (x / 2, x % 2);
        let expect = if y == 2 * bi + ai { q(1) } else { q(0) };
        assert_eq!(c[x][y], expect);
      }
    }
  }

  #[test]
  fn dual_with_identity_pairing_fails_invariance() {
    let good = FrobeniusAlgebra::builtin("dual").unwrap();
    let mut mul = Vec::new();
    for i in 0..2 {
      for j in 0..2 {
        mul.extend_from_slice(good.mul_basis(i, j));
      }
    }
    let err = FrobeniusAlgebra::new("bad", 2, mul, vec![q(1), q(0)], vec![q(1), q(0), q(0), q(1)]).unwrap_err();
    assert!(matches!(err, CactiError::Axiom { axiom: "invariance", .. }));
  }

  #[test]
  fn non_associative_rejected() {
    // e1 e1 = e0 ... but make (e1 e1) e1 != e1 (e1 e1)
    let mut mul = vec![q(0); 8];
    set3(&mut mul, 2, 0, 0, 0, q(1));
    set3(&mut mul, 2, 0, 1, 1, q(1));
    set3(&mut mul, 2, 1, 0, 1, q(1));
    set3(&mut mul, 2, 1, 1, 0, q(1));
    set3(&mut mul, 2, 1, 1, 1, q(1));
    let mut mul_bad = mul.clone();
    set3(&mut mul_bad, 2, 1, 0, 0, q(1));
    let e = FrobeniusAlgebra::new("nonassoc", 2, mul_bad, vec![q(1), q(0)], vec![q(1), q(0), q(0), q(1)]);
    assert!(matches!(e, Err(CactiError::Axiom { .. })));
  }

  #[test]
  fn snake_identity() {
    for name in FrobeniusAlgebra::BUILTINS {
      let a = FrobeniusAlgebra::builtin(name).unwrap();
      let d = a.dim();
      assert!(a.snake_holds());
      // Σ_{ij} η(v, e_i) η^{ij} e_j = v for every basis v
      for v in 0..d {
        for j in 0..d {
          let s: Q = (0..d).map(|i| a.eta(v, i) * a.eta_inv(i, j)).sum();
          assert_eq!(s, if v == j { q(1) } else { q(0) });
        }
      }
    }
  }

  #[test]
  fn json_round_trip_and_basis_change() {
    let a = FrobeniusAlgebra::builtin("m2").unwrap();
    let b = FrobeniusAlgebra::from_json(&a.to_json()).unwrap();
    assert_eq!(a, b);
    let p = vec![vec![q(1), q(1)], vec![q(0), q(2)]];
    let z2 = FrobeniusAlgebra::builtin("z2").unwrap();
    let z2b = z2.change_basis(&p).unwrap();
    assert_eq!(z2b.dim(), 2);
  }
}
