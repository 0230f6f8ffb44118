//! List decoding of Reed–Solomon and folded Reed–Solomon codes over Galois
//! rings `GR(p^a, ell)`, with the ring, polynomial and linear-algebra layers
//! they need.

pub mod bounds;
pub mod error;
pub mod frs;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod rs;

pub use error::{Error, Result};
pub use linalg::RingMatrix;
pub use poly::{LinearFactorFamily, LinearFactorization, PrimaryComponent, RingPoly};
pub use ring::{build_ring, ResidueElement, RingDescriptor, RingElement, RingParams};
