//! Codes on t-partite regular hypergraphs.
//!
//! A hypergraph code has one coordinate per hyperedge and asks that, at every
//! vertex, the bits on the incident edges form a codeword of a short local
//! code. The crate builds such codes over dense GF(2) algebra, evaluates the
//! weight-spectrum exponents of random ensembles and the decoding radii of
//! threshold decoders, and checks them against exhaustive and Monte-Carlo
//! computations on small instances.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with 64-bit seeds.

pub mod bounds;
pub mod code;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod hypergraphs;
pub mod local_codes;
pub mod simulator;

pub use bounds::{ExponentCurve, LogEnumerator, RadiusReport};
pub use code::{CodeSource, HypergraphCode, Manifest};
pub use decoders::{
    bh_decode, branching_decode, subprocedure, DecodeOutcome, DecoderConfig, DecoderKind, OddFinish, TieRule,
};
pub use error::{Error, Result};
pub use gf2::{random_parity_matrix, BitMatrix, BitVector};
pub use hypergraphs::{
    homogeneity_exact, path_hypergraph, random_hypergraph, second_eigenvalue, Graph, Homogeneity, Hypergraph,
};
pub use local_codes::{make_named_code, Kappa, LocalCode};
pub use simulator::{Ensemble, TrialReport};
