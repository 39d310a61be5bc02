//! Exact arithmetic for multivariate polynomials over prime fields.

mod field;
mod monomial;
mod order;
mod poly;

pub(crate) use field::is_prime;
pub use field::PrimeField;
pub use monomial::{monomials_of_degree, Monomial};
pub use order::{MonomialOrder, OrderKey, OrderKind};
pub(crate) use poly::same_ring;
pub use poly::{Polynomial, Ring, RingRef};
