//! Exact computational checks for Weil-module spectra of GL_n(F_q), the
//! Kubert V-function finite-monodromy criterion, hypergeometric point-count
//! trace functions, and the associated group-theoretic audits.
//!
//! Everything is table-driven and exact: finite fields are log/exp tables,
//! roots of unity are reduced fractions in Q/Z, and sums of roots of unity
//! are cyclotomic integers with integer coefficients. No floating point is
//! load-bearing anywhere.

pub mod cycint;
pub mod field;
pub mod groupcheck;
pub mod kubert;
pub mod qmodz;
pub mod sheaf;
pub mod traces;
pub mod trinomial;
pub mod weil;

pub use cycint::CycInt;
pub use field::{FieldTable, FqElem};
pub use qmodz::QmodZ;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field F_{p}^{e} has {order} elements, over the ceiling {ceiling}")]
    FieldTooLarge { p: u64, e: u32, order: u64, ceiling: u64 },
    #[error("extension degree must be >= 1")]
    BadDegree,
    #[error("F_{sub_p}^{sub_e} is not a subfield of F_{sup_p}^{sup_e}")]
    NotASubfield { sub_p: u64, sub_e: u32, sup_p: u64, sup_e: u32 },
    #[error(
        "the canonical moduli of F_{p}^{sub_e} and F_{p}^{sup_e} are tower-incompatible: \
         the generator-to-stride-power map is not additive"
    )]
    NoCanonicalEmbedding { p: u64, sub_e: u32, sup_e: u32 },
    #[error("operation undefined at zero")]
    ZeroArgument,
    #[error("character exponent denominator {den} does not divide #K - 1 = {units}")]
    BadCharacterOrder { den: i64, units: u64 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
