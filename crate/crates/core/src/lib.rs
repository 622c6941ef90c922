//! Exact computational toolkit for graded barcodes, persistence modules and
//! action-filtered Z/2 complexes.
//!
//! Everything is computed over exact rationals: matchings, interleavings and
//! barcodes involve strict inequalities, and all comparisons here are
//! decidable. The core types are generic over any ordered exact field scalar
//! (see [`scalar::Scalar`]); the aliases below fix the default
//! arbitrary-precision rational instantiation.

pub mod barcode;
pub mod bottleneck;
pub mod complex;
pub mod demo;
pub mod error;
pub mod gf2;
pub mod interleave;
pub mod io;
pub mod matching;
pub mod module;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// The default exact scalar: arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

pub type Bar = barcode::Bar<Rational>;
pub type Endpoint = barcode::Endpoint<Rational>;
pub type Barcode = barcode::GradedBarcode<Rational>;
pub type Matching = matching::MatchingCertificate<Rational>;
pub type Module = module::PersistenceModule<Rational>;
pub type Interleaving = interleave::InterleavingCertificate<Rational>;
pub type Complex = complex::FilteredComplex<Rational>;
pub type Map = complex::FilteredMap<Rational>;
pub type TwistSpec = demo::TwistComplexSpec<Rational>;
pub type Simplicial = demo::SimplicialFunction<Rational>;

/// Convenience constructor for the default rational scalar.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
