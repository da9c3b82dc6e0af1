//! Exact linear algebra over the rationals: matrices, subspaces in
//! canonical form, and finite unions of subspaces.
//!
//! Floating point is banned throughout the crate — every verdict
//! downstream is a chain of exact rank and membership decisions, so this
//! module is the trusted base everything else reduces to.

mod arrangement;
mod matrix;
mod subspace;

pub use arrangement::{combinations, Arrangement, DimVector};
pub use matrix::{RatMatrix, RowReduction};
pub use subspace::Subspace;

/// Arbitrary-precision rational scalar used everywhere in the crate.
pub type Rat = num_rational::BigRational;

/// Parses an exact rational from the textual forms used in files and
/// reports: an optional sign, an integer, or `numer/denom`.
pub fn parse_rat(token: &str) -> Option<Rat> {
    let t = token.trim();
    if t.is_empty() {
        return None;
    }
    t.parse::<Rat>().ok()
}

/// Componentwise sum of two equal-length vectors.
pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference of two equal-length vectors.
pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Componentwise negation.
pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}
