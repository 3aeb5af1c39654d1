//! Exact invariants of finite polynomial map germs `f: (Q^n, 0) -> (Q^n, 0)`:
//! local multiplicity, characteristic polynomials of a function relative to
//! the germ, Łojasiewicz exponents, Newton polygons, and checks of their
//! behaviour along deformation families.

pub mod charpoly;
pub mod deformation;
pub mod error;
pub mod germ;
pub mod lojexp;
pub mod poly;
pub mod stdbasis;

pub use error::{GermError, Result};
