//! Central elements: the `C_n(u)` family and the Pfaffians.

mod casimir;
mod iwasawa;
mod pfaffian;

use rayon::prelude::*;
use serde_json::json;

use crate::report::Verification;
use crate::uea::{Element, Generator};

pub use casimir::{build_c, monic_degree_check};
pub use iwasawa::IwasawaGens;
pub use pfaffian::{build_pf, build_pf_full, commutes_with_last_generator, iwasawa_pf_check};

/// Result of a centrality test: the first generator (in PBW order) that fails
/// to commute, together with the commutator.
#[derive(Clone, Debug)]
pub struct Centrality {
    pub witness: Option<(Generator, Element)>,
}

impl Centrality {
    pub fn is_central(&self) -> bool {
        self.witness.is_none()
    }

    pub fn to_verification(&self) -> Verification {
        match &self.witness {
            None => Verification::pass(),
            Some((g, r)) => Verification::fail(json!({ "generator": [g.j(), g.i()], "residual": r.to_json() }), r.len()),
        }
    }
}

/// Commutes `x` with every generator of its rank.
pub fn is_central(x: &Element) -> Centrality {
    let gens: Vec<Generator> = Generator::all(x.rank()).collect();
    let witness = gens
        .par_iter()
        .map(|&g| (g, x.ad(g)))
        .find_first(|(_, r)| !r.is_zero());
    Centrality { witness }
}
