use cacti::{
  chain::{betti_numbers, boundary_tree},
  correlator::act,
  enumerate_cells, enumerate_spineless, Cochain, Cohomology, DecoratedTree, FrobeniusAlgebra,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn counts(cells: &[DecoratedTree]) -> Vec<usize> {
  let top = cells.iter().map(DecoratedTree::degree).max().unwrap_or(0);
  (0..=top).map(|d| cells.iter().filter(|t| t.degree() == d).count()).collect()
}

#[test]
fn cell_counts() {
  assert_eq!(counts(&enumerate_cells(1, 2)), [1, 1]);
  assert_eq!(counts(&enumerate_cells(2, 4)), [2, 8, 10, 4]);
  assert_eq!(counts(&enumerate_cells(3, 6)), [6, 54, 168, 240, 162, 42]);
  assert_eq!(counts(&enumerate_spineless(2, 4)), [2, 2]);
}

#[test]
fn betti_numbers_match_the_framed_little_discs() {
  assert_eq!(betti_numbers(1, false), [1, 1]);
  assert_eq!(betti_numbers(2, false), [1, 3, 3, 1]);
  assert_eq!(betti_numbers(2, true), [1, 1]);
  assert_eq!(betti_numbers(3, true), [1, 3, 2]);
}

#[test]
fn boundary_of_o_prime_vanishes() {
  let o: DecoratedTree = "root(w<1;1;0>())".parse().unwrap();
  assert!(boundary_tree(&o).is_zero());
  assert_eq!(o, DecoratedTree::o_prime());
}

#[test]
fn boundary_of_the_two_lobe_edge() {
  // the 1-cell joining the two products of two lobes
  let t: DecoratedTree = "root(w<1;0;0>(b(w<2;0;0>())))".parse().unwrap();
  let b = boundary_tree(&t);
  assert_eq!(b.len(), 2);
  assert_eq!(b.coeff(&"root(w<1;0;0>()w<2;0;0>())".parse().unwrap()), (-1).into());
  assert_eq!(b.coeff(&"root(w<2;0;0>()w<1;0;0>())".parse().unwrap()), 1.into());
}

#[test]
fn hochschild_cohomology_dimensions() {
  let dual = Arc::new(FrobeniusAlgebra::builtin("dual").unwrap());
  let dims: Vec<usize> = (0..4).map(|n| Cohomology::compute(&dual, n).dim()).collect();
  assert_eq!(dims, [2, 1, 1, 1]);
  let z2 = Arc::new(FrobeniusAlgebra::builtin("z2").unwrap());
  let dims: Vec<usize> = (0..3).map(|n| Cohomology::compute(&z2, n).dim()).collect();
  assert_eq!(dims, [2, 0, 0]);
}

#[test]
fn o_prime_acts_as_connes_delta() {
  let a = Arc::new(FrobeniusAlgebra::builtin("z3").unwrap());
  let mut rng = ChaCha8Rng::seed_from_u64(7);
  for n in 1..=3 {
    let f = Cochain::random(&a, n, &mut rng);
    assert_eq!(act(&DecoratedTree::o_prime(), std::slice::from_ref(&f)).unwrap(), f.cdelta().unwrap());
  }
}
