pub mod abelian;
pub mod brace;
pub mod error;
pub mod iso;
pub mod perm;
pub mod series;
pub mod subset;

pub use brace::{validate, Chirality, FiniteBrace, GroupDefect, ValidationReport, Violation};
pub use error::{BraceError, Result};
pub use iso::{canonical_form, is_isomorphic, CanonicalForm};
pub use perm::Perm;
pub use series::{chain, product_span, socle, SeriesChain, SeriesKind};
pub use subset::{BraceSubset, Certification};
pub mod catalog;
pub mod engel;
pub mod group;
pub mod subbrace;
pub mod ybe;

pub use engel::{FreePoly, ModP, Scalar};

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
/// The prime field of order 2^61 - 1.
pub type Fp61 = engel::ModP<{ engel::P61 }>;
pub type QPoly = FreePoly<Rational>;
pub type Fp61Poly = FreePoly<Fp61>;
