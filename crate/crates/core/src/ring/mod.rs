//! Scalars and polynomials: ℤ[q], ℚ(q), Laurent polynomials in `z_1..z_N`.

pub mod eta;
pub mod frac;
pub mod laurent;
pub mod qpoly;
pub mod ratfunc;

pub use eta::{eta_expand, EtaSeries};
pub use laurent::{Exponent, LaurentPoly};
pub use qpoly::QPoly;
pub use ratfunc::{qm, RatFuncQ};
