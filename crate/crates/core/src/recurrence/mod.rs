//! Recurrence extraction for monic polynomial sequences.
//!
//! Coefficients are read off by descending degree: with `Q = x P_n - P_{n+1}`
//! of degree at most `n`, the coefficient of `x^n` gives `beta_n`, the next one
//! (after subtracting `beta_n P_n`) gives `omega_n`, and whatever is left is the
//! failure certificate.

pub mod identities;

pub use identities::{DerivedSequences, IdentityCheck, IdentityIndex};

use num_traits::Zero;
use thiserror::Error;

use crate::genfun::PolySeq;
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("sequence of order {have} is too short, need order >= {need}")]
    OrderTooSmall { have: usize, need: usize },
}

/// First index where the fitted recurrence leaves a nonzero remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub residual: Poly,
}

/// `x P_n = P_{n+1} + beta_n P_n + omega_n P_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// `beta_0..=beta_{valid_to}`
    pub betas: Vec<Rational>,
    /// `omega_1..=omega_{valid_to}`
    pub omegas: Vec<Rational>,
    pub valid_to: usize,
    pub failure: Option<Failure>,
}

impl Recurrence {
    pub fn beta(&self, n: usize) -> Option<&Rational> {
        self.betas.get(n)
    }

    /// `omega_n` for `1 <= n <= valid_to`.
    pub fn omega(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.omegas.get(i))
    }

    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// Rebuilds `P_0..=P_{upto}` from the coefficients, `upto <= valid_to + 1`.
    pub fn replay(&self, upto: usize) -> Vec<Poly> {
        assert!(upto <= self.valid_to + 1, "replay beyond the fitted range");
        let mut polys = vec![Poly::one()];
        for n in 0..upto {
            let mut next = polys[n].shift_up();
            next.add_scaled(&polys[n], &-&self.betas[n]);
            if n >= 1 {
                next.add_scaled(&polys[n - 1], &-&self.omegas[n - 1]);
            }
            polys.push(next);
        }
        polys
    }
}

/// `x P_n = P_{n+1} + sum_{l=0}^{d} gamma_n^l P_{n-l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralRecurrence {
    pub d: usize,
    /// Row `n` holds `gamma_n^0..=gamma_n^{min(d, n)}` for `n <= valid_to`.
    pub gammas: Vec<Vec<Rational>>,
    pub valid_to: usize,
    pub failure: Option<Failure>,
}

impl GeneralRecurrence {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Fits row `n`: returns the `gamma`s and the remainder.
fn fit_row(ps: &PolySeq, n: usize, d: usize) -> (Vec<Rational>, Poly) {
    let mut q = &ps.get(n).shift_up() - ps.get(n + 1);
    let mut gammas = Vec::with_capacity(d.min(n) + 1);
    for l in 0..=d.min(n) {
        let g = q.coeff(n - l);
        q.add_scaled(ps.get(n - l), &-&g);
        gammas.push(g);
    }
    (gammas, q)
}

fn fit(ps: &PolySeq, d: usize) -> (Vec<Vec<Rational>>, Option<Failure>) {
    let mut rows = Vec::new();
    for n in 0..ps.order() {
        let (gammas, rem) = fit_row(ps, n, d);
        if !rem.is_zero() {
            return (rows, Some(Failure { n, residual: rem }));
        }
        rows.push(gammas);
    }
    (rows, None)
}

pub fn extract_ttrr(ps: &PolySeq) -> Result<Recurrence, RecurrenceError> {
    if ps.order() < 2 {
        return Err(RecurrenceError::OrderTooSmall { have: ps.order(), need: 2 });
    }
    let (rows, failure) = fit(ps, 1);
    let valid_to = rows.len().saturating_sub(1);
    let mut betas = Vec::with_capacity(rows.len());
    let mut omegas = Vec::with_capacity(rows.len());
    for (n, row) in rows.into_iter().enumerate() {
        let mut row = row.into_iter();
        betas.push(row.next().unwrap_or_else(Rational::zero));
        if n >= 1 {
            omegas.push(row.next().unwrap_or_else(Rational::zero));
        }
    }
    Ok(Recurrence { betas, omegas, valid_to, failure })
}

pub fn extract_general(ps: &PolySeq, d: usize) -> Result<GeneralRecurrence, RecurrenceError> {
    if ps.order() < d + 1 {
        return Err(RecurrenceError::OrderTooSmall { have: ps.order(), need: d + 1 });
    }
    let (gammas, failure) = fit(ps, d);
    let valid_to = gammas.len().saturating_sub(1);
    Ok(GeneralRecurrence { d, gammas, valid_to, failure })
}

/// Smallest `1 <= d <= d_max` whose recurrence fits the whole sequence.
///
/// A sequence that fits with `d = 0` (e.g. the monomials) is reported as `d = 1`
/// with vanishing `omega`s.
pub fn minimal_order(ps: &PolySeq, d_max: usize) -> Option<usize> {
    (1..=d_max.min(ps.order().saturating_sub(1))).find(|&d| {
        extract_general(ps, d).is_ok_and(|g| g.holds())
    })
}
