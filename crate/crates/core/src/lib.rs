//! Codes over the non-unital ring `E = {0, a, b, c}`: self-orthogonal,
//! quasi self-dual (QSD) and Type IV codes built from strongly regular
//! graphs and doubly regular tournaments.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring_e`]: the ring, the residue map `α`, the map `φ` into `F4`, and vectors over `E`;
//! * [`gf2`]: packed binary vectors and matrices;
//! * [`binary_code`]: binary linear codes and minimum distance engines;
//! * [`e_code`]: left `E`-modules with residue/torsion, QSD and Type IV tests;
//! * [`assoc_schemes`]: SRG/DRT generators, verifiers and graph6 ingestion;
//! * [`constructions`]: the `(xI | yM)`, pure and bordered constructions;
//! * [`theorem_sweep`]: exhaustive comparison of the `C(M)` rules against the codes;
//! * [`reproduce`]: expected-vs-computed tables and JSON reports;
//! * [`request`]: construction requests from flags or JSON;
//! * [`verify`]: the self-check suites.

pub mod assoc_schemes;
pub mod binary_code;
pub mod constructions;
pub mod e_code;
pub mod error;
pub mod gf2;
pub mod reproduce;
pub mod request;
pub mod ring_e;
pub mod search;
pub mod theorem_sweep;
pub mod verify;

pub use assoc_schemes::{SchemeKind, SchemeMatrix, SchemeParams};
pub use binary_code::{BinaryCode, DistanceMethod, WeightDistribution};
pub use e_code::{ECode, EWeightEnumerator};
pub use error::{Error, ParseError, Result};
pub use gf2::{BitMatrix, BitVector};
pub use ring_e::{EVector, F4Element, RingElement};
pub use search::SearchConfig;
