//! Monomials, polynomial rings and sparse homogeneous polynomials.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{Homogeneity, PolyRing, Polynomial, Ring};

pub(crate) use polynomial::same_ring;

impl PolyRing {
    /// Convenience wrapper around [`parse_polynomial`].
    pub fn parse(self: &Ring, text: &str) -> crate::Result<Polynomial> {
        parse_polynomial(text, self)
    }
}
