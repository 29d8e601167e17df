//! Invertible polynomials, their diagonal symmetry groups and the
//! Berglund-Hubsch-Henningson transpose duality.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`] parses polynomials and computes exponent matrices, weights
//!   and the atomic (Fermat/chain/loop) decomposition.
//! * [`symmetry`] models finite diagonal symmetry groups, the dual group and
//!   the subgroup lattice.
//! * [`monodromy`] computes Milnor algebras, spectra and monodromy
//!   characteristic polynomials.
//! * [`orbifold`] builds orbifold E-functions and Hodge data for pairs `(f, G)`.
//! * [`burnside`] implements Burnside-ring valued Euler characteristics.
//! * [`coxeter`] builds Dynkin graphs and Coxeter elements.
//! * [`duality`] ships the singularity dataset and the verification drivers.
//!
//! All arithmetic is exact.

pub mod burnside;
pub mod coxeter;
pub mod duality;
pub mod exec;
pub mod intpoly;
pub mod linalg;
pub mod monodromy;
pub mod orbifold;
pub mod polycore;
pub mod symmetry;

/// Exact rational number used throughout the crate.
pub type Q = num_rational::Ratio<i64>;

pub use exec::Exec;
pub use polycore::{parse_polynomial, InvertiblePolynomial, PolyError};
pub use symmetry::{GroupElement, Subgroup};

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> i64 {
    values
        .into_iter()
        .fold(1i64, |acc, v| num_integer::lcm(acc, *v.denom()))
}
