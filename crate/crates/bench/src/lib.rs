//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use cacti::{Cochain, FrobeniusAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn algebra(name: &str) -> Arc<FrobeniusAlgebra> { Arc::new(FrobeniusAlgebra::builtin(name).expect("builtin algebra")) }

/// Seeded random cochains of the given arities.
pub fn cochains(a: &Arc<FrobeniusAlgebra>, arities: &[usize], seed: u64) -> Vec<Cochain> {
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  arities.iter().map(|&n| Cochain::random(a, n, &mut rng)).collect()
}
