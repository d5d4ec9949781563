//! Case analysis for `F(xt - R(t))`: monomials when `R_2 = 0`, otherwise one of
//! the rescaled ultraspherical, Chebyshev or Hermite families, or a concrete
//! reason why neither applies.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::families::{verify_rescaling, FamilyError, FamilyKind, FamilyParams};
use crate::genfun::{expand, verify_gf7, GenFunError, GenFunSpec, PolySeq};
use crate::par;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::recurrence::identities::{check_gf10, check_gf11, check_gf12, check_gf9, check_solricati};
use crate::recurrence::{extract_ttrr, DerivedSequences, IdentityCheck, Recurrence};

/// Below this order the `k = 2, n = 5` instance of the `T_k` relations does not fit.
pub const MIN_ORDER: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("order {have} is too small, classification needs order >= {need}")]
    OrderTooSmall { have: usize, need: usize },
    #[error("alpha_{0} is zero; P_{0} cannot be made monic")]
    ZeroAlpha(usize),
    #[error("invalid spec: {0}")]
    Spec(GenFunError),
    #[error("knob index {0} is out of range")]
    KnobOutOfRange(usize),
}

impl From<GenFunError> for ClassifyError {
    fn from(e: GenFunError) -> Self {
        match e {
            GenFunError::ZeroAlpha(n) => ClassifyError::ZeroAlpha(n),
            other => ClassifyError::Spec(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Monomial,
    Ultraspherical,
    Chebyshev1,
    Hermite,
    NotTtrr,
    OutsideHypotheses,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Monomial => "monomial",
            Verdict::Ultraspherical => "ultraspherical",
            Verdict::Chebyshev1 => "chebyshev1",
            Verdict::Hermite => "hermite",
            Verdict::NotTtrr => "not_ttrr",
            Verdict::OutsideHypotheses => "outside_hypotheses",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        use Verdict::*;
        [Monomial, Ultraspherical, Chebyshev1, Hermite, NotTtrr, OutsideHypotheses]
            .into_iter()
            .find(|v| v.label() == s)
    }

    pub fn is_family(self) -> bool {
        matches!(self, Verdict::Ultraspherical | Verdict::Chebyshev1 | Verdict::Hermite)
    }
}

impl From<FamilyKind> for Verdict {
    fn from(k: FamilyKind) -> Self {
        match k {
            FamilyKind::Monomial => Verdict::Monomial,
            FamilyKind::Ultraspherical => Verdict::Ultraspherical,
            FamilyKind::Chebyshev1 => Verdict::Chebyshev1,
            FamilyKind::Hermite => Verdict::Hermite,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// differential identity in `x`, holds for every generated set
    Gf7,
    /// `beta_n = 0`
    Gf9,
    /// `omega_n = n a_n - (n-1) a_{n-1}`
    Gf10,
    /// second-order relation in `1/a_n` with `T_2`
    Gf11,
    /// `T_k`, `T_{k+1}` relations for `k >= 2`
    Gf12,
    /// symmetric set and vanishing odd `R_n`
    Symmetry,
    /// `(n+1)/a_n` affine in `n`
    Solricati,
    /// `R_n = 0` for every provided `n >= 3`
    RQuadratic,
    /// `alpha_n = (lambda_2 (n-1) + lambda_1)/n alpha_{n-1}`
    Alphan,
    /// agreement with the unit-scale reference family under `scale_sq`
    Rescale,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Gf7,
        Check::Gf9,
        Check::Gf10,
        Check::Gf11,
        Check::Gf12,
        Check::Symmetry,
        Check::Solricati,
        Check::RQuadratic,
        Check::Alphan,
        Check::Rescale,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::Gf7 => "gf7",
            Check::Gf9 => "gf9",
            Check::Gf10 => "gf10",
            Check::Gf11 => "gf11",
            Check::Gf12 => "gf12",
            Check::Symmetry => "symmetry",
            Check::Solricati => "solricati",
            Check::RQuadratic => "r_quadratic",
            Check::Alphan => "alphan",
            Check::Rescale => "rescale",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not_applicable",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [CheckStatus::Pass, CheckStatus::Fail, CheckStatus::NotApplicable]
            .into_iter()
            .find(|c| c.label() == s)
    }
}

/// Why a check failed (or was skipped).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub residual: Option<Poly>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateBundle {
    /// Largest `n` at which the three-term recurrence was fitted exactly.
    pub ttrr_valid_to: usize,
    pub ttrr_holds: bool,
    pub checks: BTreeMap<Check, CheckStatus>,
    pub witnesses: BTreeMap<Check, Witness>,
}

impl CertificateBundle {
    pub fn status(&self, check: Check) -> CheckStatus {
        self.checks[&check]
    }

    pub fn passed(&self, check: Check) -> bool {
        self.status(check) == CheckStatus::Pass
    }

    /// No check failed.
    pub fn is_green(&self) -> bool {
        self.checks.values().all(|s| *s != CheckStatus::Fail)
    }

    pub fn failed(&self) -> Vec<Check> {
        self.checks
            .iter()
            .filter(|(_, s)| **s == CheckStatus::Fail)
            .map(|(c, _)| *c)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub params: Option<FamilyParams>,
    pub certificate: Option<CertificateBundle>,
    pub recurrence: Option<Recurrence>,
    pub polys: Option<PolySeq>,
    /// Truncation order the verdict rests on.
    pub depth: usize,
    pub diagnostics: Vec<String>,
}

type Outcome = (CheckStatus, Option<Witness>);

fn pass() -> Outcome {
    (CheckStatus::Pass, None)
}

fn not_applicable(detail: impl Into<String>) -> Outcome {
    (CheckStatus::NotApplicable, Some(Witness { detail: detail.into(), ..Witness::default() }))
}

fn fail(n: Option<usize>, k: Option<usize>, residual: Option<Poly>, detail: impl Into<String>) -> Outcome {
    (CheckStatus::Fail, Some(Witness { n, k, residual, detail: detail.into() }))
}

fn from_identity(check: IdentityCheck) -> Outcome {
    match check {
        IdentityCheck::Holds { .. } => pass(),
        IdentityCheck::NotApplicable(why) => not_applicable(why),
        IdentityCheck::Violated { at, lhs, rhs } => {
            fail(Some(at.n), at.k, None, format!("lhs {lhs} != rhs {rhs}"))
        }
    }
}

fn ttrr_broken(rec: &Recurrence) -> Option<Outcome> {
    rec.failure.as_ref().map(|f| {
        fail(
            Some(f.n),
            None,
            Some(f.residual.clone()),
            format!("three-term recurrence fails at n = {}", f.n),
        )
    })
}

fn evaluate(
    check: Check,
    spec: &GenFunSpec,
    ps: &PolySeq,
    rec: &Recurrence,
    derived: Option<&DerivedSequences>,
    hint: Option<&FamilyParams>,
) -> Outcome {
    let needs_derived = |f: &dyn Fn(&DerivedSequences) -> IdentityCheck| {
        if let Some(broken) = ttrr_broken(rec) {
            return broken;
        }
        match derived {
            Some(d) => from_identity(f(d)),
            None => not_applicable("needs alpha_1 R_2 != 0"),
        }
    };
    match check {
        Check::Gf7 => match verify_gf7(spec, ps, spec.order()) {
            Ok(report) => match report.first_failure() {
                None => pass(),
                Some((n, r)) => fail(Some(*n), None, Some(r.clone()), "nonzero residual"),
            },
            Err(e) => fail(None, None, None, e.to_string()),
        },
        Check::Gf9 => match ttrr_broken(rec) {
            Some(broken) => broken,
            None => from_identity(check_gf9(rec)),
        },
        Check::Gf10 => needs_derived(&|d| check_gf10(rec, d)),
        Check::Gf11 => needs_derived(&|d| check_gf11(d)),
        Check::Gf12 => needs_derived(&|d| check_gf12(d)),
        Check::Solricati => needs_derived(&|d| check_solricati(d)),
        Check::Symmetry => {
            if let Some(n) = ps.polys().iter().enumerate().position(|(n, p)| !p.has_parity(n)) {
                return fail(Some(n), None, Some(ps.get(n).clone()), "P_n has mixed parity");
            }
            let odd = (3..=spec.order()).step_by(2).find(|&n| !spec.r_n(n).unwrap().is_zero());
            match odd {
                Some(n) => fail(Some(n), None, None, format!("R_{n} != 0")),
                None => pass(),
            }
        }
        Check::RQuadratic => {
            match (3..=spec.order()).find(|&n| !spec.r_n(n).unwrap().is_zero()) {
                Some(n) => fail(Some(n), None, None, format!("R_{n} = {}", spec.r_n(n).unwrap())),
                None => pass(),
            }
        }
        Check::Alphan => match hint {
            Some(p) if p.kind != FamilyKind::Monomial => {
                let alpha = spec.alpha();
                let bad = (2..=spec.order()).find(|&n| {
                    let factor = (&p.lambda2 * int(n as i64 - 1) + &p.lambda1) / int(n as i64);
                    alpha[n] != &alpha[n - 1] * factor
                });
                match bad {
                    Some(n) => fail(Some(n), None, None, format!("alpha_{n} = {} breaks the product law", alpha[n])),
                    None => pass(),
                }
            }
            _ => not_applicable("no family parameters"),
        },
        Check::Rescale => match hint {
            Some(p) => match verify_rescaling(ps, p) {
                Ok(true) => pass(),
                Ok(false) => fail(None, None, None, format!("does not match rescaled {}", p.kind)),
                Err(e @ FamilyError::ParityViolation(_)) => fail(None, None, None, e.to_string()),
                Err(e) => fail(None, None, None, e.to_string()),
            },
            None => not_applicable("no family parameters"),
        },
    }
}

fn certify(spec: &GenFunSpec, ps: &PolySeq, rec: &Recurrence, hint: Option<&FamilyParams>) -> CertificateBundle {
    let derived = DerivedSequences::new(spec, rec);
    let outcomes = par::map(&Check::ALL, |&c| (c, evaluate(c, spec, ps, rec, derived.as_ref(), hint)));
    let mut checks = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (c, (status, witness)) in outcomes {
        checks.insert(c, status);
        if let Some(w) = witness {
            witnesses.insert(c, w);
        }
    }
    CertificateBundle {
        ttrr_valid_to: rec.valid_to,
        ttrr_holds: rec.holds(),
        checks,
        witnesses,
    }
}

/// Evaluates every check; failures are recorded in the bundle, not returned.
pub fn run_certificate(spec: &GenFunSpec, hint: Option<&FamilyParams>) -> Result<CertificateBundle, ClassifyError> {
    let ps = expand(spec)?;
    let rec = extract_ttrr(&ps).map_err(|_| ClassifyError::OrderTooSmall { have: spec.order(), need: 2 })?;
    Ok(certify(spec, &ps, &rec, hint))
}

/// `lambda_1 = 4 alpha_2/alpha_1 - 3 alpha_3/alpha_2`, `lambda_2 = 3 alpha_3/alpha_2 - 2 alpha_2/alpha_1`.
pub fn recover_lambdas(alpha: &[Rational]) -> (Rational, Rational) {
    let r21 = &alpha[2] / &alpha[1];
    let r32 = &alpha[3] / &alpha[2];
    let lambda1 = int(4) * &r21 - int(3) * &r32;
    let lambda2 = int(3) * &r32 - int(2) * &r21;
    (lambda1, lambda2)
}

pub fn classify(spec: &GenFunSpec) -> Result<Classification, ClassifyError> {
    let order = spec.order();
    if order < MIN_ORDER {
        return Err(ClassifyError::OrderTooSmall { have: order, need: MIN_ORDER });
    }
    let r2 = spec.r_n(2).expect("order >= 2").clone();
    let alpha1_zero = spec.alpha_n(1).is_zero();
    let outside = |diagnostics: Vec<String>| Classification {
        verdict: Verdict::OutsideHypotheses,
        params: None,
        certificate: None,
        recurrence: None,
        polys: None,
        depth: order,
        diagnostics,
    };
    if alpha1_zero && !r2.is_zero() {
        return Ok(outside(vec!["alpha_1 = 0 with R_2 != 0: alpha_1 R_2 != 0 is required".into()]));
    }
    if r2.is_zero() {
        if let Some(n) = (1..=order).find(|&n| spec.alpha_n(n).is_zero()) {
            return Ok(outside(vec![format!("R_2 = 0 but alpha_{n} = 0: every alpha_n must be nonzero")]));
        }
    }

    let ps = expand(spec)?;
    let rec = extract_ttrr(&ps).expect("order >= MIN_ORDER");
    let mut result = Classification {
        verdict: Verdict::NotTtrr,
        params: None,
        certificate: None,
        recurrence: Some(rec.clone()),
        polys: Some(ps.clone()),
        depth: order,
        diagnostics: Vec::new(),
    };

    if let Some(f) = &rec.failure {
        result.certificate = Some(certify(spec, &ps, &rec, None));
        result.diagnostics.push(format!("three-term recurrence fails at n = {}", f.n));
        return Ok(result);
    }

    let params = if r2.is_zero() {
        FamilyParams::monomial()
    } else {
        if let Some(n) = (3..=order).find(|&n| !spec.r_n(n).unwrap().is_zero()) {
            result.verdict = Verdict::OutsideHypotheses;
            result.certificate = Some(certify(spec, &ps, &rec, None));
            result.diagnostics.push(format!(
                "recurrence holds to n = {} but R_{n} != 0; deeper truncation should expose a failure",
                rec.valid_to
            ));
            return Ok(result);
        }
        let (lambda1, lambda2) = recover_lambdas(spec.alpha());
        match FamilyParams::from_lambdas(lambda1, lambda2, r2.clone()) {
            Ok(p) => p,
            Err(e) => {
                result.verdict = Verdict::OutsideHypotheses;
                result.certificate = Some(certify(spec, &ps, &rec, None));
                result.diagnostics.push(e.to_string());
                return Ok(result);
            }
        }
    };

    let certificate = certify(spec, &ps, &rec, Some(&params));
    if params.kind == FamilyKind::Monomial {
        if let Some(n) = (3..=order).find(|&n| !spec.r_n(n).unwrap().is_zero()) {
            result.verdict = Verdict::OutsideHypotheses;
            result.diagnostics.push(format!(
                "R_2 = 0 and the recurrence holds to n = {}, yet R_{n} != 0; possibly a truncation artifact",
                rec.valid_to
            ));
            result.certificate = Some(certificate);
            return Ok(result);
        }
    }
    if certificate.is_green() {
        result.verdict = params.kind.into();
    } else {
        result.verdict = Verdict::OutsideHypotheses;
        let failed: Vec<&str> = certificate.failed().into_iter().map(Check::label).collect();
        result.diagnostics.push(format!("certificate checks failed: {}", failed.join(", ")));
    }
    result.params = Some(params);
    result.certificate = Some(certificate);
    Ok(result)
}

/// Which coefficient a scan perturbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Knob {
    /// Sets `R_n` to the scanned value.
    R(usize),
    /// Multiplies `alpha_n` by the scanned value.
    AlphaScale(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub value: Rational,
    pub outcome: Result<Verdict, ClassifyError>,
    /// First index where the three-term recurrence fails, if it does.
    pub first_failure_n: Option<usize>,
}

fn perturb(base: &GenFunSpec, knob: Knob, value: &Rational) -> Result<GenFunSpec, GenFunError> {
    match knob {
        Knob::R(n) => base.with_r(n, value.clone()),
        Knob::AlphaScale(n) => base.with_alpha(n, base.alpha_n(n) * value),
    }
}

/// Classifies `base` with one coefficient perturbed, once per value.
pub fn scan_perturbations(base: &GenFunSpec, knob: Knob, values: &[Rational]) -> Result<Vec<ScanRow>, ClassifyError> {
    let in_range = match knob {
        Knob::R(n) => (1..=base.order()).contains(&n),
        Knob::AlphaScale(n) => n <= base.order(),
    };
    if !in_range {
        let (Knob::R(n) | Knob::AlphaScale(n)) = knob;
        return Err(ClassifyError::KnobOutOfRange(n));
    }
    Ok(par::map(values, |v| {
        let cls = perturb(base, knob, v).map_err(ClassifyError::from).and_then(|s| classify(&s));
        let first_failure_n = cls
            .as_ref()
            .ok()
            .and_then(|c| c.recurrence.as_ref())
            .and_then(|r| r.failure.as_ref())
            .map(|f| f.n);
        ScanRow { value: v.clone(), outcome: cls.map(|c| c.verdict), first_failure_n }
    }))
}
