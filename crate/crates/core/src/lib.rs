//! Exact symbolic engine for graded enriched characteristic cycles,
//! relative conormal cycles, relative polar curves and the local
//! intersection numbers built from them.
//!
//! Everything is computed over ℚ with Gröbner bases. Germs at a point are
//! handled by saturation, or by truncating with powers of the maximal ideal
//! when the ideal is zero-dimensional, so no local orders are needed.

pub mod error;
pub mod ideal;
pub mod poly;
pub mod cycle;
pub mod enriched;
pub mod conormal;
pub mod problem;
pub mod gecc;
pub mod bundled;
pub mod polar;

pub use error::{Error, Result};
pub use ideal::{Ideal, KrullDim, Membership, MonomialOrder, VectorDim};
pub use poly::{parse_poly, Monomial, Polynomial, RationalPoint, VarContext};
