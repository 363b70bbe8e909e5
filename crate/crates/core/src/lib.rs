//! Ideal-type hyperplane arrangements of Weyl arrangements: root posets,
//! ideal enumeration, intersection lattices, freeness certificates, and
//! Poincare polynomials of ideal complements.

pub mod arrangement;
pub mod bits;
pub mod error;
pub mod freecert;
pub mod ideals;
pub mod idealtype;
pub mod linalg;
pub mod poincare;
pub mod poly;
pub mod rootsys;

pub use arrangement::{Arrangement, Lattice};
pub use bits::Mask;
pub use error::{Error, Result};
pub use ideals::{Ideal, IdealFilter};
pub use poly::Poly;
pub use rootsys::{CartanType, Family, RootSystem};
