use std::sync::Arc;

use cacti::{chain::boundary_tree, enumerate_cells, Cochain, DecoratedTree, FrobeniusAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cells() -> &'static [DecoratedTree] {
  static CELLS: std::sync::OnceLock<Vec<DecoratedTree>> = std::sync::OnceLock::new();
  CELLS.get_or_init(|| (1..=3).flat_map(|n| enumerate_cells(n, 6)).collect())
}

fn cell() -> impl Strategy<Value = DecoratedTree> { (0..cells().len()).prop_map(|i| cells()[i].clone()) }

proptest! {
  #[test]
  fn tree_text_round_trips(t in cell()) {
    let back: DecoratedTree = t.to_string().parse().unwrap();
    prop_assert_eq!(back, t);
  }

  #[test]
  fn boundary_lowers_degree(t in cell()) {
    let b = boundary_tree(&t);
    for s in b.terms().keys() {
      prop_assert!(s.validate().is_ok());
      prop_assert_eq!(s.degree() + 1, t.degree());
      prop_assert_eq!(s.arity(), t.arity());
    }
    prop_assert!(b.boundary().is_zero());
  }

  #[test]
  fn relabelling_is_invertible(t in cell(), seed in any::<u64>()) {
    use rand::seq::SliceRandom;
    let mut sigma: Vec<u32> = (1..=t.arity() as u32).collect();
    sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
      inv[s as usize - 1] = i as u32 + 1;
    }
    prop_assert_eq!(t.relabel(&sigma).unwrap().relabel(&inv).unwrap(), t);
  }

  #[test]
  fn cochain_json_round_trips_and_hdiff_squares_to_zero(alg in 0..4usize, arity in 0..4usize, seed in any::<u64>()) {
    let a = Arc::new(FrobeniusAlgebra::builtin(FrobeniusAlgebra::BUILTINS[alg]).unwrap());
    let arity = if alg == 3 { arity.min(2) } else { arity };
    let f = Cochain::random(&a, arity, &mut ChaCha8Rng::seed_from_u64(seed));
    prop_assert_eq!(&Cochain::from_json(&a, &f.to_json()).unwrap(), &f);
    prop_assert!(f.hdiff().hdiff().is_zero());
  }
}
