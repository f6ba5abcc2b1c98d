//! Exact computation in incidence algebras `I(X, R)` of finite preorders:
//! convolution and inversion, the cocycle description of multiplicative
//! automorphisms and additive derivations, brute-force derivation spaces and
//! reduced incidence algebras.
//!
//! Algorithms are generic over [`Ring`]; the aliases below fix the common
//! coefficient rings.

pub mod automorph;
pub mod cocycle;
pub mod derivation;
pub mod error;
pub mod incalg;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poset;
pub mod reduced;
pub mod ring;
pub mod table;

pub use error::{Error, Result};
pub use incalg::IncFunction;
pub use io::{DynFunction, DynTable};
pub use poset::{Preorder, QuotientPoset};
pub use ring::{Rational, Ring, RingElem, RingSpec, Zmod};

/// Functions over the rationals.
pub type QFunction = IncFunction<Rational>;
/// Functions over `ℤ/n`.
pub type ZmodFunction = IncFunction<Zmod>;
/// Multiplicative cocycles over the rationals.
pub type QMultCocycle = cocycle::MultCocycle<Rational>;
/// Additive cocycles over the rationals.
pub type QAddCocycle = cocycle::AddCocycle<Rational>;
