//! Exact expansion of polynomial sets generated by `F(xt - R(t))`.
//!
//! The crate builds the monic set `{P_n}` from the coefficient sequences of
//! `F` and `R`, extracts three-term (and higher-order) recurrences, checks the
//! identities those sets must satisfy, and classifies the result as one of the
//! monomial, rescaled ultraspherical, Chebyshev (first kind) or Hermite
//! families. Every quantity is an exact rational; no check has a tolerance.
//!
//! With the default `parallel` feature the independent inner loops (series
//! coefficients, per-index identity checks, batches of specs) run on rayon.
//! Without it the same code paths run sequentially and give identical results.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod families;
pub mod genfun;
pub mod par;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod series;

pub use classify::{
    classify, run_certificate, scan_perturbations, CertificateBundle, Check, CheckStatus,
    Classification, ClassifyError, Knob, ScanRow, Verdict, Witness,
};
pub use families::{
    check_orthogonality, family_alpha, family_omega, family_omega_or_fallback, family_polys,
    reference_polys, verify_rescaling, FamilyError, FamilyKind, FamilyParams,
    OrthogonalityReason, OrthogonalityVerdict,
};
pub use genfun::{expand, is_symmetric, verify_gf7, GenFunError, GenFunSpec, IdentityReport, PolySeq};
pub use poly::Poly;
pub use rational::Rational;
pub use recurrence::{
    extract_general, extract_ttrr, minimal_order, DerivedSequences, GeneralRecurrence,
    Recurrence, RecurrenceError,
};
pub use series::{series_compose_outer, series_mul, SeriesError, TruncSeries};
