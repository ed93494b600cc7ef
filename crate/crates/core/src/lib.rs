//! Jumping numbers, multiplicities and rational Poincaré series of
//! multiplier-ideal and test-ideal filtrations of monomial ideals.
//!
//! Everything is exact: exponents are machine integers with overflow checks,
//! thresholds and series coefficients are arbitrary-precision rationals and
//! integers. The main entry points are
//!
//! * [`MonomialIdeal`] and the ideal arithmetic in [`monomial`],
//! * [`NewtonPolyhedron`] for facets, integral closures and candidate jumps,
//! * the [`Filtration`] trait with [`MultiplierFiltration`],
//!   [`TestFiltration`] and [`TableFiltration`],
//! * [`jumping_numbers`], [`h_polynomial`] and [`poincare_closed_form`],
//! * the Taylor-complex Tor machinery in [`tor`].

pub mod cli;
pub mod filtration;
pub mod hull;
mod linalg;
pub mod monomial;
pub mod multiplier;
pub mod newton;
pub mod output;
pub mod parse;
pub mod rational;
pub mod series;
pub mod test_ideal;
pub mod tor;
pub mod verify;

pub use filtration::{
    h_polynomial, h_polynomial_left, jumping_numbers, make_table_filtration, multiplicity, poincare_bruteforce,
    poincare_closed_form, tail_series, Filtration, HPolynomial, Jump, JumpTable, TableFiltration,
};
pub use multiplier::{lct, multiplier_filtration, multiplier_ideal, multiplier_left_limit, MultiplierFiltration};
pub use series::{PoincareForm, TruncatedSeries, UniRational};
pub use test_ideal::{test_filtration, test_ideal, test_left_limit, CharP, TestFiltration};
pub use monomial::{Characteristic, ExponentVector, MonomialIdeal};
pub use newton::{Facet, NewtonPolyhedron};
pub use rational::Rational;
pub use tor::{
    cm_poincare_form, excess, taylor_complex, tor_lengths, verify_lemma_41, verify_lemma_42, CmForm, ExcessReport,
    LabeledComplex, TorRow,
};
pub use parse::parse_ideal;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("zero ideal has no Newton polyhedron")]
    ZeroIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("test ideal chain did not stabilize by e = {cap}: colengths {chain:?}")]
    Stabilization { cap: u32, chain: Vec<u64> },
    #[error("sequence did not stabilize: {0}")]
    NoStabilization(String),
    #[error("{0} is not a reduction given by pure powers of the variables")]
    NoParameterReduction(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
