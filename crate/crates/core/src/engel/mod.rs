//! Exact computation in the free algebra `F<a,b>` modulo `a² = 0`, `b³ = 0`,
//! with an identity adjoined: the words `W_n`, the elements `w_n`, `z_n`,
//! `v_n`, alternation filtrations, the grading by products of `ab` and `ab²`,
//! coefficient spaces of polynomial matrices, and word periodicity.

use thiserror::Error;

pub mod coeff_space;
pub mod elements;
pub mod filtration;
pub mod grading;
pub mod monomial;
pub mod periodicity;
pub mod poly;
pub mod scalar;
pub mod word;

pub use coeff_space::{coeff_space, podslowa_check, CoeffSpace, PodslowaOutcome, PolyMatrix, XPoly};
pub use elements::{
    compute_v, compute_v_inverse, compute_w, compute_wbar, compute_z, compute_z_inverse, engel_witness,
    EngelWitness, WitnessMethod,
};
pub use filtration::{
    alternation_part, mul_high_alternation, t_membership, z_w_certificate, CertificateMethod, TMembership, ZwCertificate,
};
pub use grading::{s_grading, SDegree, SGrading};
pub use monomial::Monomial;
pub use periodicity::{distinct_subwords, periodic_decomposition, PeriodicDecomposition};
pub use poly::FreePoly;
pub use scalar::{ModP, Scalar, P61};
pub use word::{word_bar, word_w, Letter, LetterCounts, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngelError {
    #[error("{what}_{n} is beyond the feasibility bound {bound}")]
    TooLarge { what: &'static str, n: usize, bound: usize },
    #[error("{what}_{n} is undefined; the index starts at {min}")]
    IndexTooSmall { what: &'static str, n: usize, min: usize },
    #[error("malformed matrix entries: {0}")]
    MalformedEntries(String),
    #[error("polynomial has a nonzero constant term")]
    HasConstant,
    #[error("parse error: {0}")]
    Parse(String),
}
