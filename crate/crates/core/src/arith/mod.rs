//! Exact scalars: Gaussian rationals and polynomials in `u` over them.

mod gaussian;
mod upoly;

pub use gaussian::GaussianRational;
pub use upoly::UPoly;
