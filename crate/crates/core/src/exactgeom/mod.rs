//! Exact rational geometry: the LP solver and the polytope oracles built
//! on top of it.

pub mod lp;
pub mod polytope;

/// Exact rational scalar used everywhere in the geometry layer.
pub type Rat = num_rational::BigRational;

pub use lp::{lp_solve, Constraint, LpError, LpVerdict, Relation};
pub use polytope::{format_rat, parse_rat, GeomError, RationalPolytope};

/// Convenience constructor for small integer rationals.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(v.into())
}
