//! Closed-form monic families that arise from `F(xt - T_1 t^2 / 2)`.
//!
//! With `lambda_1 = 4 alpha_2/alpha_1 - 3 alpha_3/alpha_2` and
//! `lambda_2 = 3 alpha_3/alpha_2 - 2 alpha_2/alpha_1`, the coefficients obey
//! `alpha_n = (lambda_2 (n-1) + lambda_1)/n * alpha_{n-1}` and the generated set is
//!
//! * ultraspherical with `lambda = lambda_1/lambda_2` when both are nonzero,
//! * Chebyshev of the first kind when `lambda_1 = 0`,
//! * Hermite when `lambda_2 = 0`,
//!
//! each rescaled by `P_n(x) = k^n Q_n(x/k)`. Only `k^2` is ever formed, so
//! everything stays rational.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::genfun::{is_symmetric, PolySeq};
use crate::poly::Poly;
use crate::rational::{frac, int, is_negative_integer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("closed-form omega_{0} has a zero denominator")]
    SingularIndex(usize),
    #[error("omega is only defined for n >= 1")]
    IndexZero,
    #[error("{0} sequence is not symmetric")]
    ParityViolation(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Monomial,
    Ultraspherical,
    Chebyshev1,
    Hermite,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Monomial => "monomial",
            FamilyKind::Ultraspherical => "ultraspherical",
            FamilyKind::Chebyshev1 => "chebyshev1",
            FamilyKind::Hermite => "hermite",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [Self::Monomial, Self::Ultraspherical, Self::Chebyshev1, Self::Hermite]
            .into_iter()
            .find(|k| k.label() == s)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Parameters of a rescaled family. Construct through the checked constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub kind: FamilyKind,
    pub lambda1: Rational,
    pub lambda2: Rational,
    /// `T_1 = R_2`
    pub t1: Rational,
    /// `lambda_1 / lambda_2`, ultraspherical only.
    pub lambda: Option<Rational>,
    /// `k^2`: `2 T_1 / lambda_2` (ultraspherical, Chebyshev) or `T_1 / lambda_1` (Hermite).
    pub scale_sq: Rational,
}

fn invalid<T>(msg: &str) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidParams(msg.to_owned()))
}

impl FamilyParams {
    pub fn monomial() -> Self {
        FamilyParams {
            kind: FamilyKind::Monomial,
            lambda1: Rational::zero(),
            lambda2: Rational::zero(),
            t1: Rational::zero(),
            lambda: None,
            scale_sq: Rational::one(),
        }
    }

    pub fn ultraspherical(lambda1: Rational, lambda2: Rational, t1: Rational) -> Result<Self, FamilyError> {
        if lambda1.is_zero() || lambda2.is_zero() {
            return invalid("ultraspherical needs lambda1 != 0 and lambda2 != 0");
        }
        if t1.is_zero() {
            return invalid("T1 must be nonzero");
        }
        let lambda = &lambda1 / &lambda2;
        if is_negative_integer(&lambda) {
            return invalid("lambda = lambda1/lambda2 is a negative integer");
        }
        let scale_sq = int(2) * &t1 / &lambda2;
        Ok(FamilyParams {
            kind: FamilyKind::Ultraspherical,
            lambda1,
            lambda2,
            t1,
            lambda: Some(lambda),
            scale_sq,
        })
    }

    pub fn chebyshev1(lambda2: Rational, t1: Rational) -> Result<Self, FamilyError> {
        if lambda2.is_zero() {
            return invalid("chebyshev1 needs lambda2 != 0");
        }
        if t1.is_zero() {
            return invalid("T1 must be nonzero");
        }
        let scale_sq = int(2) * &t1 / &lambda2;
        Ok(FamilyParams {
            kind: FamilyKind::Chebyshev1,
            lambda1: Rational::zero(),
            lambda2,
            t1,
            lambda: None,
            scale_sq,
        })
    }

    pub fn hermite(lambda1: Rational, t1: Rational) -> Result<Self, FamilyError> {
        if lambda1.is_zero() {
            return invalid("hermite needs lambda1 != 0");
        }
        if t1.is_zero() {
            return invalid("T1 must be nonzero");
        }
        let scale_sq = &t1 / &lambda1;
        Ok(FamilyParams {
            kind: FamilyKind::Hermite,
            lambda1,
            lambda2: Rational::zero(),
            t1,
            lambda: None,
            scale_sq,
        })
    }

    /// Picks the family from which of `lambda1`, `lambda2` vanish.
    pub fn from_lambdas(lambda1: Rational, lambda2: Rational, t1: Rational) -> Result<Self, FamilyError> {
        match (lambda1.is_zero(), lambda2.is_zero()) {
            (false, false) => Self::ultraspherical(lambda1, lambda2, t1),
            (true, false) => Self::chebyshev1(lambda2, t1),
            (false, true) => Self::hermite(lambda1, t1),
            (true, true) => invalid("lambda1 and lambda2 both vanish"),
        }
    }

    /// Same family and lambdas with `T_1` chosen so that `scale_sq = 1`.
    pub fn unit_scale(&self) -> FamilyParams {
        let mut p = self.clone();
        p.t1 = match self.kind {
            FamilyKind::Monomial => Rational::zero(),
            FamilyKind::Hermite => self.lambda1.clone(),
            FamilyKind::Ultraspherical | FamilyKind::Chebyshev1 => &self.lambda2 / int(2),
        };
        p.scale_sq = Rational::one();
        p
    }
}

/// `alpha_0 = 1`, `alpha_1` as given, then `alpha_n = (lambda_2 (n-1) + lambda_1)/n * alpha_{n-1}`.
pub fn alpha_from_lambdas(
    lambda1: &Rational,
    lambda2: &Rational,
    alpha1: &Rational,
    n_max: usize,
) -> Result<Vec<Rational>, FamilyError> {
    if alpha1.is_zero() {
        return invalid("alpha1 must be nonzero");
    }
    let mut alpha = vec![Rational::one()];
    if n_max >= 1 {
        alpha.push(alpha1.clone());
    }
    for n in 2..=n_max {
        let factor = (lambda2 * int(n as i64 - 1) + lambda1) / int(n as i64);
        let next = &alpha[n - 1] * factor;
        alpha.push(next);
    }
    Ok(alpha)
}

/// Generating coefficients of the family with `alpha_1 = 1`; all ones for monomials.
pub fn family_alpha(params: &FamilyParams, n_max: usize) -> Result<Vec<Rational>, FamilyError> {
    match params.kind {
        FamilyKind::Monomial => Ok(vec![Rational::one(); n_max + 1]),
        _ => alpha_from_lambdas(&params.lambda1, &params.lambda2, &Rational::one(), n_max),
    }
}

/// `omega_n = (T_1/2) n (lambda_2 (n-1) + 2 lambda_1) / ((lambda_2 n + lambda_1)(lambda_2 (n-1) + lambda_1))`.
pub fn family_omega(params: &FamilyParams, n: usize) -> Result<Rational, FamilyError> {
    if n == 0 {
        return Err(FamilyError::IndexZero);
    }
    if params.kind == FamilyKind::Monomial {
        return Ok(Rational::zero());
    }
    let (l1, l2) = (&params.lambda1, &params.lambda2);
    let n_r = int(n as i64);
    let nm1 = int(n as i64 - 1);
    let den = (l2 * &n_r + l1) * (l2 * &nm1 + l1);
    if den.is_zero() {
        return Err(FamilyError::SingularIndex(n));
    }
    let num = &n_r * (l2 * &nm1 + int(2) * l1);
    Ok(&params.t1 / int(2) * num / den)
}

/// `a_n = (T_1/2) alpha_n / alpha_{n+1}` with `alpha_1 = 1`.
fn family_a(params: &FamilyParams, n: usize) -> Rational {
    if n == 0 {
        return &params.t1 / int(2);
    }
    let ratio = (&params.lambda2 * int(n as i64) + &params.lambda1) / int(n as i64 + 1);
    &params.t1 / int(2) / ratio
}

/// `family_omega`, falling back to `omega_n = n a_n - (n-1) a_{n-1}` where the
/// closed form is singular (Chebyshev at `n = 1`).
pub fn family_omega_or_fallback(params: &FamilyParams, n: usize) -> Result<Rational, FamilyError> {
    match family_omega(params, n) {
        Err(FamilyError::SingularIndex(_)) => {
            let mut w = int(n as i64) * family_a(params, n);
            if n >= 2 {
                w -= int(n as i64 - 1) * family_a(params, n - 1);
            }
            Ok(w)
        }
        other => other,
    }
}

fn symmetric_replay(n_max: usize, omega: impl Fn(usize) -> Result<Rational, FamilyError>) -> Result<PolySeq, FamilyError> {
    let mut polys = vec![Poly::one()];
    for n in 0..n_max {
        let mut next = polys[n].shift_up();
        if n >= 1 {
            next.add_scaled(&polys[n - 1], &-omega(n)?);
        }
        polys.push(next);
    }
    Ok(PolySeq::new(polys).expect("replay yields monic polynomials"))
}

/// The rescaled monic family, built from `beta_n = 0` and the closed-form `omega_n`.
pub fn family_polys(params: &FamilyParams, n_max: usize) -> Result<PolySeq, FamilyError> {
    if params.kind == FamilyKind::Monomial {
        return Ok(PolySeq::monomials(n_max));
    }
    symmetric_replay(n_max, |n| family_omega_or_fallback(params, n))
}

/// Classical monic family at unit scale, from the textbook recurrences:
/// ultraspherical `omega_n = n(n + 2 lambda - 1) / (4 (n + lambda)(n + lambda - 1))`,
/// Chebyshev `omega_1 = 1/2, omega_n = 1/4`, Hermite `omega_n = n`.
pub fn reference_polys(params: &FamilyParams, n_max: usize) -> Result<PolySeq, FamilyError> {
    match params.kind {
        FamilyKind::Monomial => Ok(PolySeq::monomials(n_max)),
        FamilyKind::Hermite => symmetric_replay(n_max, |n| Ok(int(n as i64))),
        FamilyKind::Chebyshev1 => {
            symmetric_replay(n_max, |n| Ok(if n == 1 { frac(1, 2) } else { frac(1, 4) }))
        }
        FamilyKind::Ultraspherical => {
            let lambda = params
                .lambda
                .clone()
                .ok_or_else(|| FamilyError::InvalidParams("missing lambda".into()))?;
            symmetric_replay(n_max, |n| {
                let n = int(n as i64);
                let num = &n * (&n + int(2) * &lambda - int(1));
                let den = int(4) * (&n + &lambda) * (&n + &lambda - int(1));
                if den.is_zero() {
                    return Err(FamilyError::InvalidParams("lambda makes the recurrence singular".into()));
                }
                Ok(num / den)
            })
        }
    }
}

/// True iff `ps` is the unit-scale reference family rescaled by `params.scale_sq`.
///
/// Compares `P_n[x^{n-2j}]` against `scale_sq^j * Q_n[x^{n-2j}]`.
pub fn verify_rescaling(ps: &PolySeq, params: &FamilyParams) -> Result<bool, FamilyError> {
    if !is_symmetric(ps) {
        return Err(FamilyError::ParityViolation("given"));
    }
    let reference = reference_polys(params, ps.order())?;
    if !is_symmetric(&reference) {
        return Err(FamilyError::ParityViolation("reference"));
    }
    for (n, (p, q)) in ps.polys().iter().zip(reference.polys()).enumerate() {
        let mut scale = Rational::one();
        for j in 0..=n / 2 {
            if p.coeff(n - 2 * j) != &scale * q.coeff(n - 2 * j) {
                return Ok(false);
            }
            scale *= &params.scale_sq;
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthogonalityReason {
    /// `lambda_2/T_1 > 0` and `lambda > -1/2`
    UltrasphericalConditionsMet,
    /// `lambda_2/T_1 > 0`
    ChebyshevConditionMet,
    /// `lambda_1/T_1 > 0`
    HermiteConditionMet,
    Lambda2OverT1NotPositive,
    LambdaNotAboveMinusHalf,
    Lambda1OverT1NotPositive,
    /// all `omega_n` vanish
    MonomialDegenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    pub reason: OrthogonalityReason,
}

/// Sufficient conditions for positive `omega_n`; failing them is not a proof
/// of non-orthogonality.
pub fn check_orthogonality(params: &FamilyParams) -> OrthogonalityVerdict {
    use OrthogonalityReason::*;
    let verdict = |orthogonal, reason| OrthogonalityVerdict { orthogonal, reason };
    let ratio_positive = |num: &Rational| !params.t1.is_zero() && (num / &params.t1).is_positive();
    match params.kind {
        FamilyKind::Monomial => verdict(false, MonomialDegenerate),
        FamilyKind::Ultraspherical => {
            if !ratio_positive(&params.lambda2) {
                verdict(false, Lambda2OverT1NotPositive)
            } else if params.lambda.as_ref().is_none_or(|l| l <= &frac(-1, 2)) {
                verdict(false, LambdaNotAboveMinusHalf)
            } else {
                verdict(true, UltrasphericalConditionsMet)
            }
        }
        FamilyKind::Chebyshev1 => {
            if ratio_positive(&params.lambda2) {
                verdict(true, ChebyshevConditionMet)
            } else {
                verdict(false, Lambda2OverT1NotPositive)
            }
        }
        FamilyKind::Hermite => {
            if ratio_positive(&params.lambda1) {
                verdict(true, HermiteConditionMet)
            } else {
                verdict(false, Lambda1OverT1NotPositive)
            }
        }
    }
}
