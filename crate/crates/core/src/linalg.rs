//! Dense exact linear algebra over `Q`: row reduction, rank, kernels, solving,
//! and quotient coordinates `ker / im` used by the cohomology computations.

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
  pub rows: usize,
  pub cols: usize,
  data:     Vec<Q>,
}

impl Matrix {
  pub fn zeros(rows: usize, cols: usize) -> Self {
    Self { rows, cols, data: vec![Q::zero(); rows * cols] }
  }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = Q::one();
    }
    m
  }

  pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
    Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
  }

  /// Builds a matrix whose columns are the given vectors.
  pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
    let mut m = Self::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
      assert_eq!(col.len(), rows);
      for (i, x) in col.iter().enumerate() {
        m[(i, j)] = x.clone();
      }
    }
    m
  }

  pub fn row(&self, i: usize) -> &[Q] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<Q> { (0..self.rows).map(|i| self[(i, j)].clone()).collect() }

  pub fn mul(&self, other: &Matrix) -> Matrix {
    assert_eq!(self.cols, other.rows);
    let mut out = Matrix::zeros(self.rows, other.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(i, k)];
        if a.is_zero() {
          continue;
        }
        for j in 0..other.cols {
          let b = &other[(k, j)];
          if !b.is_zero() {
            out[(i, j)] += a * b;
          }
        }
      }
    }
    out
  }

  pub fn apply(&self, v: &[Q]) -> Vec<Q> {
    assert_eq!(v.len(), self.cols);
    (0..self.rows)
      .map(|i| {
        self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
      })
      .collect()
  }

  /// Reduced row echelon form in place; returns pivot columns.
  pub fn rref(&mut self) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..self.cols {
      if r == self.rows {
        break;
      }
      let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else { continue };
      if p != r {
        for j in 0..self.cols {
          self.data.swap(p * self.cols + j, r * self.cols + j);
        }
      }
      let inv = self[(r, c)].recip();
      for j in c..self.cols {
        let v = &self[(r, j)] * &inv;
        self[(r, j)] = v;
      }
      for i in 0..self.rows {
        if i == r || self[(i, c)].is_zero() {
          continue;
        }
        let f = self[(i, c)].clone();
        for j in c..self.cols {
          if self[(r, j)].is_zero() {
            continue;
          }
          let v = &f * &self[(r, j)];
          self[(i, j)] -= v;
        }
      }
      pivots.push(c);
      r += 1;
    }
    pivots
  }

  pub fn rank(&self) -> usize { self.clone().rref().len() }

  /// Determinant of a square matrix.
  pub fn det(&self) -> Q {
    assert_eq!(self.rows, self.cols, "square matrix");
    let mut m = self.clone();
    let mut det = Q::one();
    for c in 0..m.cols {
      let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else { return Q::zero() };
      if p != c {
        for j in 0..m.cols {
          m.data.swap(p * m.cols + j, c * m.cols + j);
        }
        det = -det;
      }
      let piv = m[(c, c)].clone();
      for i in c + 1..m.rows {
        if m[(i, c)].is_zero() {
          continue;
        }
        let f = &m[(i, c)] / &piv;
        for j in c..m.cols {
          let v = &f * &m[(c, j)];
          m[(i, j)] -= v;
        }
      }
      det *= piv;
    }
    det
  }

  /// Basis of the null space `{x : self * x = 0}`.
  pub fn kernel(&self) -> Vec<Vec<Q>> {
    let mut m = self.clone();
    let pivots = m.rref();
    let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
    free
      .iter()
      .map(|&fc| {
        let mut v = vec![Q::zero(); self.cols];
        v[fc] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
          v[pc] = -m[(r, fc)].clone();
        }
        v
      })
      .collect()
  }

  /// Some solution of `self * x = b`, or `None` if inconsistent.
  pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(b.len(), self.rows);
    let mut aug = Matrix::zeros(self.rows, self.cols + 1);
    for i in 0..self.rows {
      for j in 0..self.cols {
        aug[(i, j)] = self[(i, j)].clone();
      }
      aug[(i, self.cols)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&self.cols) {
      return None;
    }
    let mut x = vec![Q::zero(); self.cols];
    for (r, &pc) in pivots.iter().enumerate() {
      x[pc] = aug[(r, self.cols)].clone();
    }
    Some(x)
  }
}

impl std::ops::Index<(usize, usize)> for Matrix {
  type Output = Q;

  fn index(&self, (i, j): (usize, usize)) -> &Q { &self.data[i * self.cols + j] }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
  fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q { &mut self.data[i * self.cols + j] }
}

/// Extracts a maximal linearly independent subfamily (in order).
pub fn independent_subset(dim: usize, vectors: &[Vec<Q>]) -> Vec<usize> {
  let mut kept: Vec<usize> = Vec::new();
  let mut basis: Vec<Vec<Q>> = Vec::new();
  for (k, v) in vectors.iter().enumerate() {
    let mut trial = basis.clone();
    trial.push(v.clone());
    if Matrix::from_columns(dim, &trial).rank() == trial.len() {
      basis.push(v.clone());
      kept.push(k);
    }
  }
  kept
}

/// Quotient `Z / B` of a subspace `Z` by a subspace `B ⊆ Z` of an ambient
/// coordinate space. Stores a basis of `B`, coset representatives completing it
/// to a basis of `Z`, and reduces cocycles to coset coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
  pub ambient:         usize,
  pub boundary_basis:  Vec<Vec<Q>>,
  pub representatives: Vec<Vec<Q>>,
  solver:              Matrix,
}

impl Quotient {
  pub fn new(ambient: usize, cycles: &[Vec<Q>], boundaries: &[Vec<Q>]) -> Self {
    let b_idx = independent_subset(ambient, boundaries);
    let boundary_basis: Vec<Vec<Q>> = b_idx.iter().map(|&i| boundaries[i].clone()).collect();
    let mut all = boundary_basis.clone();
    let mut representatives = Vec::new();
    for z in cycles {
      let mut trial = all.clone();
      trial.push(z.clone());
      if Matrix::from_columns(ambient, &trial).rank() == trial.len() {
        all.push(z.clone());
        representatives.push(z.clone());
      }
    }
    let solver = Matrix::from_columns(ambient, &all);
    Self { ambient, boundary_basis, representatives, solver }
  }

  pub fn dim(&self) -> usize { self.representatives.len() }

  /// Coset coordinates of a cycle, or `None` if `z` does not lie in `Z`.
  pub fn reduce(&self, z: &[Q]) -> Option<Vec<Q>> {
    let x = self.solver.solve(z)?;
    Some(x[self.boundary_basis.len()..].to_vec())
  }

  pub fn is_boundary(&self, z: &[Q]) -> bool {
    self.reduce(z).is_some_and(|c| c.iter().all(Zero::is_zero))
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::rational::q;

  fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
  }

  #[test]
  fn rank_and_kernel() {
    let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    assert_eq!(a.rank(), 2);
    let k = a.kernel();
    assert_eq!(k.len(), 1);
    assert!(a.apply(&k[0]).iter().all(Zero::is_zero));
  }

  #[test]
  fn solve_consistent_and_not() {
    let a = m(&[&[1, 1], &[1, -1]]);
    assert_eq!(a.solve(&[q(2), q(0)]).unwrap(), vec![q(1), q(1)]);
    let s = m(&[&[1, 1], &[2, 2]]);
    assert!(s.solve(&[q(1), q(3)]).is_none());
  }

  #[test]
  fn quotient_coordinates() {
    // Z = span(e0, e1), B = span(e0 + e1)
    let z = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
    let b = vec![vec![q(1), q(1), q(0)]];
    let quo = Quotient::new(3, &z, &b);
    assert_eq!(quo.dim(), 1);
    assert!(quo.is_boundary(&[q(2), q(2), q(0)]));
    let c0 = quo.reduce(&[q(1), q(0), q(0)]).unwrap();
    let c1 = quo.reduce(&[q(0), q(1), q(0)]).unwrap();
    assert_eq!(c0[0].clone() + c1[0].clone(), q(0));
    assert!(quo.reduce(&[q(0), q(0), q(1)]).is_none());
  }
}
