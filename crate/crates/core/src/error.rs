use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CactiError {
  #[error("parse error at byte {pos}: {msg}")]
  Parse { pos: usize, msg: String },
  #[error("invalid tree: {0}")]
  InvalidTree(String),
  #[error("malformed graph: {0}")]
  MalformedGraph(String),
  #[error("graph is disconnected")]
  Disconnected,
  #[error("non-integral genus (flags/edges/cycles inconsistent): {0}")]
  NonIntegralGenus(String),
  #[error("cannot contract a loop edge")]
  LoopContraction,
  #[error("graph is not treelike: {0}")]
  NotTreelike(String),
  #[error("Frobenius axiom `{axiom}` fails at basis indices {witness:?}")]
  Axiom { axiom: &'static str, witness: Vec<usize> },
  #[error("shape mismatch: {0}")]
  Shape(String),
  #[error("unknown algebra `{0}`")]
  UnknownAlgebra(String),
  #[error("algebra mismatch")]
  AlgebraMismatch,
  #[error("mixed degrees in chain: {0} vs {1}")]
  MixedDegree(usize, usize),
  #[error("invalid slot {slot} for a tree with {arity} labels")]
  InvalidSlot { slot: usize, arity: usize },
  #[error("arity mismatch: expected {expected}, got {got}")]
  ArityMismatch { expected: usize, got: usize },
  #[error("invalid angle position {pos} at a vertex with {angles} angles")]
  InvalidAngle { pos: usize, angles: usize },
  #[error("vertex with label {0} carries no spine")]
  NotSpined(u32),
  #[error("operator needs arity >= 1")]
  ZeroArity,
  #[error("unknown suite `{0}`")]
  UnknownSuite(String),
  #[error("invalid configuration: {0}")]
  Config(String),
  #[error("io: {0}")]
  Io(String),
}

pub type Result<T> = std::result::Result<T, CactiError>;
