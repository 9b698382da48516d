//! Exact commutative algebra over a prime field: polynomials, Groebner
//! bases, ideal dimension, minimal primes of monomial ideals.

pub mod field;
pub mod monomial;
pub mod poly;
pub mod parse;
pub mod ideal;

pub use field::PrimeField;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use ideal::{GroebnerBasis, Ideal};
