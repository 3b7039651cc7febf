//! Exact computations in the Hecke algebras `H_n` at `q = e^{2πi/(N+K)}` and
//! in the purified skein category of `SU(N)` at level `K`.

pub mod category;
pub mod diagrams;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod perm;
pub mod scalar;
pub mod trace;
pub mod verify;

pub use diagrams::YoungDiagram;
pub use error::{Error, Result};
pub use hecke::{BraidWord, HeckeElement};
pub use scalar::{Params, Scalar};
