mod element;
pub mod pbw;
pub mod so;

pub use element::{add, bracket_basis, casimir_omega, commutator, embed_shift, multiply, normal_form, opp, Element};
pub use pbw::Monomial;
pub use so::{Generator, MAX_RANK};
