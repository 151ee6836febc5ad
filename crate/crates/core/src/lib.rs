//! Hilbert functions and alpha-invariants of ideals of generic fat points.
//!
//! The library answers four kinds of question about r generic points of
//! projective d-space with multiplicities m = (m1, ..., mr):
//!
//! - `hilbert`: dim I(m, d)_t, the dimension of the degree-t forms with
//!   multiplicity at least m_i at the i-th point;
//! - `alpha`: the least t where that dimension becomes positive;
//! - `h0-of-class`: the section count of an arbitrary divisor class
//!   (t; m1, ..., mr) on the blowup at the points;
//! - `effective-test`: whether such a class is effective.
//!
//! Two independent engines answer them:
//!
//! - [`oracle`] interpolates directly: random points over a prime field,
//!   Hasse-derivative vanishing conditions, exact rank. Slow but
//!   assumption-free; it is the ground truth.
//! - [`shgh`] implements the standard conjectural answer for the plane
//!   (d = 2): reduce the class to standard form by quadratic Cremona
//!   transforms ([`cremona`]) and read off the Riemann-Roch count
//!   ([`lattice`]). Fast, and expected — but not known — to agree with
//!   the oracle everywhere; the sweep tooling in the companion CLI crate
//!   exists to look for disagreements.
//!
//! [`reductions`] carries the transforms that shuttle between the four
//! question forms, so each engine only needs to answer one of them.

pub mod cremona;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod reductions;
pub mod shgh;

mod textform;

pub use cremona::{CremonaStep, CremonaTrace, StandardBasis};
pub use error::{Error, Result};
pub use lattice::{BlowupContext, DivisorClass};
pub use reductions::{AlphaValue, MultiplicitySequence};
pub use shgh::{ConsistencyCheck, ConsistencyReport, DimensionReport};
