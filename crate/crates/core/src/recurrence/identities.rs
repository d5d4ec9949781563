//! Exact identities linking the recurrence coefficients to `alpha` and `R`.
//!
//! With `T_k = R_{2k}`, `a_n = (T_1/2) alpha_n / alpha_{n+1}` and
//! `c_n = (alpha_n / alpha_{n-1}) omega_n`, a set generated by `F(xt - R(t))`
//! that satisfies a three-term recurrence has
//!
//! * `beta_n = 0`,
//! * `omega_n = n a_n - (n-1) a_{n-1}`,
//! * a second-order relation between `1/a_n` terms involving `T_2` (`n >= 3`),
//! * a family of relations indexed by `k >= 2` tying `T_k`, `T_{k+1}`, `a` and `c`,
//! * and, once `T_2 = 0`, `(n+1)/a_n` is affine in `n`.
//!
//! Instances that would read past the truncation are skipped, never padded.

use num_traits::{One, Zero};

use crate::genfun::GenFunSpec;
use crate::par;
use crate::rational::{int, Rational};
use crate::recurrence::Recurrence;

/// Where an identity instance lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityIndex {
    pub n: usize,
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    /// Every in-range instance holds; `instances` may be zero.
    Holds { instances: usize },
    Violated { at: IdentityIndex, lhs: Rational, rhs: Rational },
    NotApplicable(&'static str),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds { .. })
    }

    fn from_instances(results: Vec<(IdentityIndex, Rational, Rational)>) -> Self {
        let instances = results.len();
        match results.into_iter().find(|(_, l, r)| l != r) {
            Some((at, lhs, rhs)) => IdentityCheck::Violated { at, lhs, rhs },
            None => IdentityCheck::Holds { instances },
        }
    }
}

/// `T_k`, `a_n` and `c_n` computed from a spec and its recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSequences {
    t: Vec<Rational>,
    /// `a_0..=a_{N-1}`
    a: Vec<Rational>,
    /// `c_1..=c_{valid_to}`
    c: Vec<Rational>,
    valid_to: usize,
}

impl DerivedSequences {
    /// `None` unless `alpha_1 R_2 != 0` and every `alpha_n` in range is nonzero.
    pub fn new(spec: &GenFunSpec, rec: &Recurrence) -> Option<Self> {
        let order = spec.order();
        let t1 = spec.t_k(1)?.clone();
        if t1.is_zero() || spec.alpha().iter().any(Zero::is_zero) {
            return None;
        }
        let t = (1..=order / 2).map(|k| spec.t_k(k).unwrap().clone()).collect();
        let half_t1 = &t1 / int(2);
        let alpha = spec.alpha();
        let a = (0..order).map(|n| &half_t1 * &alpha[n] / &alpha[n + 1]).collect();
        let valid_to = rec.valid_to.min(order);
        let c = (1..=valid_to)
            .map(|n| &alpha[n] / &alpha[n - 1] * rec.omega(n).unwrap())
            .collect();
        Some(DerivedSequences { t, a, c, valid_to })
    }

    /// `T_k = R_{2k}` for `k >= 1`, when provided.
    pub fn t(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.t.get(i))
    }

    pub fn a(&self, n: usize) -> Option<&Rational> {
        self.a.get(n)
    }

    pub fn c(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.c.get(i))
    }

    pub fn a_values(&self) -> &[Rational] {
        &self.a
    }

    /// `c_1..=c_{valid_to}`
    pub fn c_values(&self) -> &[Rational] {
        &self.c
    }

    /// Largest `n` at which both `a_n` and `omega_n` are known.
    fn top(&self) -> usize {
        self.valid_to.min(self.a.len().saturating_sub(1))
    }

    fn t1(&self) -> &Rational {
        &self.t[0]
    }
}

/// `beta_n = 0` for every fitted `n`.
pub fn check_gf9(rec: &Recurrence) -> IdentityCheck {
    IdentityCheck::from_instances(
        rec.betas
            .iter()
            .enumerate()
            .map(|(n, b)| (IdentityIndex { n, k: None }, b.clone(), Rational::zero()))
            .collect(),
    )
}

/// `omega_n = n a_n - (n-1) a_{n-1}`, `1 <= n <= valid_to`.
pub fn check_gf10(rec: &Recurrence, d: &DerivedSequences) -> IdentityCheck {
    let results = par::map_range(1..d.top() + 1, |n| {
        let rhs = int(n as i64) * &d.a[n] - int(n as i64 - 1) * &d.a[n - 1];
        (IdentityIndex { n, k: None }, rec.omega(n).unwrap().clone(), rhs)
    });
    IdentityCheck::from_instances(results)
}

/// `(4 T_2 / T_1^3)(1 - (n-3)/(n-2) a_{n-3}/a_n)
///   = (n+1)/a_n - 2n/a_{n-1} + (n-1)/a_{n-2}` for `n >= 3`.
pub fn check_gf11(d: &DerivedSequences) -> IdentityCheck {
    let Some(t2) = d.t(2) else {
        return IdentityCheck::NotApplicable("T_2 = R_4 is beyond the truncation");
    };
    let t1 = d.t1();
    let factor = int(4) * t2 / (t1 * t1 * t1);
    let results = par::map_range(3..d.top() + 1, |n| {
        let nn = n as i64;
        let a = &d.a;
        let lhs = &factor * (Rational::one() - Rational::new((nn - 3).into(), (nn - 2).into()) * &a[n - 3] / &a[n]);
        let rhs = int(nn + 1) / &a[n] - int(2 * nn) / &a[n - 1] + int(nn - 1) / &a[n - 2];
        (IdentityIndex { n, k: None }, lhs, rhs)
    });
    IdentityCheck::from_instances(results)
}

/// For `k >= 2`, `n >= 2k + 1`:
///
/// ```text
/// (2/T_1)(a_n - (n-2k-1)/(n-2k) a_{n-2k-1}) T_{k+1}
///   + ((n+2)/n c_n - (n-2k+1)/(n-2k+2) c_{n-2k+1}) T_k
///   = sum_{l=1}^{k} T_l T_{k-l+1} / (n - 2k + 2l)
/// ```
///
/// Only `(k, n)` with `T_{k+1}` provided and `n <= valid_to` are checked.
pub fn check_gf12(d: &DerivedSequences) -> IdentityCheck {
    let top = d.top();
    let pairs: Vec<(usize, usize)> = (2..)
        .take_while(|&k| d.t(k + 1).is_some())
        .flat_map(|k| (2 * k + 1..=top).map(move |n| (k, n)))
        .collect();
    if pairs.is_empty() {
        return IdentityCheck::NotApplicable("no (k, n) instance fits inside the truncation");
    }
    let two_over_t1 = int(2) / d.t1();
    let results = par::map(&pairs, |&(k, n)| {
        let (ki, ni) = (k as i64, n as i64);
        let tk = d.t(k).unwrap();
        let tk1 = d.t(k + 1).unwrap();
        let a_part = &d.a[n] - Rational::new((ni - 2 * ki - 1).into(), (ni - 2 * ki).into()) * &d.a[n - 2 * k - 1];
        let c_part = Rational::new((ni + 2).into(), ni.into()) * d.c(n).unwrap()
            - Rational::new((ni - 2 * ki + 1).into(), (ni - 2 * ki + 2).into()) * d.c(n - 2 * k + 1).unwrap();
        let lhs = &two_over_t1 * a_part * tk1 + c_part * tk;
        let rhs = (1..=k).fold(Rational::zero(), |acc, l| {
            acc + d.t(l).unwrap() * d.t(k - l + 1).unwrap() / int(ni - 2 * ki + 2 * l as i64)
        });
        (IdentityIndex { n, k: Some(k) }, lhs, rhs)
    });
    IdentityCheck::from_instances(results)
}

/// `(n+1)/a_n = (3/a_2 - 2/a_1) n + (4/a_1 - 3/a_2)` for `1 <= n <= valid_to`.
pub fn check_solricati(d: &DerivedSequences) -> IdentityCheck {
    let top = d.top();
    if top < 2 {
        return IdentityCheck::NotApplicable("needs a_1 and a_2");
    }
    let inv1 = d.a[1].recip();
    let inv2 = d.a[2].recip();
    let slope = int(3) * &inv2 - int(2) * &inv1;
    let intercept = int(4) * &inv1 - int(3) * &inv2;
    let results = par::map_range(1..top + 1, |n| {
        let lhs = int(n as i64 + 1) / &d.a[n];
        let rhs = &slope * int(n as i64) + &intercept;
        (IdentityIndex { n, k: None }, lhs, rhs)
    });
    IdentityCheck::from_instances(results)
}
