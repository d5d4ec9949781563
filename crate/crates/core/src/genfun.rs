//! Polynomial sets generated by `F(xt - R(t)) = sum_n alpha_n P_n(x) t^n`.
//!
//! `R` is stored in the convention `R(t) = sum_{n>=1} R_n t^n / n`: the value at
//! position `n` is `R_n`, so the `t^2` coefficient of `R` is `R_2 / 2`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::par;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::series::{series_compose_outer, TruncSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenFunError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("alpha has {have} entries, order {order} needs {need}")]
    AlphaLength { have: usize, need: usize, order: usize },
    #[error("R has {have} entries, order {order} needs {need}")]
    RLength { have: usize, need: usize, order: usize },
    #[error("alpha_0 must be 1, got {0}")]
    AlphaZeroNotOne(Rational),
    #[error("R_1 must be 0, got {0}")]
    ROneNonzero(Rational),
    #[error("alpha_{0} is zero; P_{0} cannot be made monic")]
    ZeroAlpha(usize),
    #[error("n_max = {n_max} exceeds the spec order {order}")]
    OrderExceeded { n_max: usize, order: usize },
    #[error("P_{n} has degree {degree:?} or is not monic")]
    NotMonic { n: usize, degree: Option<usize> },
}

/// Truncated description of `F` and `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFunSpec {
    alpha: Vec<Rational>,
    r: Vec<Rational>,
}

impl GenFunSpec {
    /// `alpha` holds `alpha_0..=alpha_N`, `r` holds `R_1..=R_N`.
    pub fn new(alpha: Vec<Rational>, r: Vec<Rational>, order: usize) -> Result<Self, GenFunError> {
        if order == 0 {
            return Err(GenFunError::ZeroOrder);
        }
        if alpha.len() != order + 1 {
            return Err(GenFunError::AlphaLength { have: alpha.len(), need: order + 1, order });
        }
        if r.len() != order {
            return Err(GenFunError::RLength { have: r.len(), need: order, order });
        }
        if !alpha[0].is_one() {
            return Err(GenFunError::AlphaZeroNotOne(alpha[0].clone()));
        }
        if !r[0].is_zero() {
            return Err(GenFunError::ROneNonzero(r[0].clone()));
        }
        Ok(GenFunSpec { alpha, r })
    }

    /// `R(t) = r2 t^2 / 2`, all other `R_n` zero.
    pub fn quadratic(alpha: Vec<Rational>, r2: Rational) -> Result<Self, GenFunError> {
        let order = alpha.len().saturating_sub(1);
        let mut r = vec![Rational::zero(); order];
        if order >= 2 {
            r[1] = r2;
        }
        Self::new(alpha, r, order)
    }

    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn alpha_n(&self, n: usize) -> &Rational {
        &self.alpha[n]
    }

    /// `R_1..=R_N`
    pub fn r_coeffs(&self) -> &[Rational] {
        &self.r
    }

    /// `R_n` for `1 <= n <= N`, `None` beyond the truncation.
    pub fn r_n(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.r.get(i))
    }

    /// `T_k = R_{2k}` when provided.
    pub fn t_k(&self, k: usize) -> Option<&Rational> {
        self.r_n(2 * k)
    }

    /// Same spec truncated to a smaller order.
    pub fn truncated(&self, order: usize) -> Result<Self, GenFunError> {
        if order > self.order() {
            return Err(GenFunError::OrderExceeded { n_max: order, order: self.order() });
        }
        Self::new(self.alpha[..=order].to_vec(), self.r[..order].to_vec(), order)
    }

    pub fn with_alpha(&self, n: usize, value: Rational) -> Result<Self, GenFunError> {
        let mut alpha = self.alpha.clone();
        alpha[n] = value;
        Self::new(alpha, self.r.clone(), self.order())
    }

    pub fn with_r(&self, n: usize, value: Rational) -> Result<Self, GenFunError> {
        let mut r = self.r.clone();
        r[n - 1] = value;
        Self::new(self.alpha.clone(), r, self.order())
    }

    /// `u(x, t) = x t - R(t)` truncated at `t^N`.
    pub fn inner_series(&self) -> TruncSeries {
        let order = self.order();
        let mut coeffs = vec![Poly::zero(); order + 1];
        for n in 1..=order {
            let rn = &self.r[n - 1];
            let c = Poly::constant(-(rn / int(n as i64)));
            coeffs[n] = if n == 1 { &Poly::x() + &c } else { c };
        }
        TruncSeries::new(coeffs, order)
    }
}

/// `P_0..=P_N`, entry `n` monic of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySeq {
    polys: Vec<Poly>,
}

impl PolySeq {
    pub fn new(polys: Vec<Poly>) -> Result<Self, GenFunError> {
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) || !p.is_monic() {
                return Err(GenFunError::NotMonic { n, degree: p.degree() });
            }
        }
        if polys.is_empty() {
            return Err(GenFunError::ZeroOrder);
        }
        Ok(PolySeq { polys })
    }

    pub fn monomials(order: usize) -> Self {
        PolySeq {
            polys: (0..=order).map(|n| Poly::monomial(Rational::one(), n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn truncated(&self, order: usize) -> PolySeq {
        PolySeq { polys: self.polys[..=order.min(self.order())].to_vec() }
    }
}

/// Expands `F(xt - R(t))` and divides the `t^n` coefficient by `alpha_n`.
pub fn expand(spec: &GenFunSpec) -> Result<PolySeq, GenFunError> {
    if let Some(n) = (1..=spec.order()).find(|&n| spec.alpha[n].is_zero()) {
        return Err(GenFunError::ZeroAlpha(n));
    }
    let w = series_compose_outer(&spec.alpha, &spec.inner_series(), spec.order())
        .expect("inner series has zero constant term and matching order");
    let polys = w
        .into_coeffs()
        .into_iter()
        .zip(&spec.alpha)
        .map(|(c, a)| c.scale(&a.recip()))
        .collect();
    Ok(PolySeq { polys })
}

/// Residuals of `alpha_n x P'_n - sum_{k=1}^n R_{k+1} alpha_{n-k} P'_{n-k} - n alpha_n P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// `(n, residual)` for `1 <= n <= n_max`.
    pub residuals: Vec<(usize, Poly)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn first_failure(&self) -> Option<&(usize, Poly)> {
        self.residuals.iter().find(|(_, r)| !r.is_zero())
    }
}

/// Checks the first-order differential identity satisfied by every set
/// generated by `F(xt - R(t))`, for `1 <= n <= n_max`.
///
/// The `k = n` term carries `P'_0 = 0`, so `R_{n+1}` is never read; this lets
/// `n_max` reach the spec order without assuming anything past the truncation.
pub fn verify_gf7(spec: &GenFunSpec, ps: &PolySeq, n_max: usize) -> Result<IdentityReport, GenFunError> {
    let limit = spec.order().min(ps.order());
    if n_max > limit {
        return Err(GenFunError::OrderExceeded { n_max, order: limit });
    }
    let derivs: Vec<Poly> = par::map(ps.polys(), Poly::derivative);
    let residuals = par::map_range(1..n_max + 1, |n| {
        let an = &spec.alpha[n];
        let mut res = derivs[n].shift_up().scale(an);
        for k in 1..n {
            let rk1 = spec.r_n(k + 1).expect("k + 1 <= n <= order");
            if rk1.is_zero() {
                continue;
            }
            res.add_scaled(&derivs[n - k], &-(rk1 * &spec.alpha[n - k]));
        }
        res.add_scaled(ps.get(n), &-(an * int(n as i64)));
        (n, res)
    });
    Ok(IdentityReport { residuals })
}

/// `P_n(-x) = (-1)^n P_n(x)` for every entry.
pub fn is_symmetric(ps: &PolySeq) -> bool {
    ps.polys().iter().enumerate().all(|(n, p)| p.has_parity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn factorial_alpha(order: usize) -> Vec<Rational> {
        let mut a = vec![Rational::one()];
        for n in 1..=order {
            let prev = a[n - 1].clone();
            a.push(prev / int(n as i64));
        }
        a
    }

    /// Monic Hermite via `H_{n+1} = x H_n - n H_{n-1}`, independent of expansion.
    fn hermite_oracle(order: usize) -> Vec<Poly> {
        let mut h = vec![Poly::one(), Poly::x()];
        for n in 1..order {
            let next = &h[n].shift_up() - &h[n - 1].scale(&int(n as i64));
            h.push(next);
        }
        h.truncate(order + 1);
        h
    }

    #[test]
    fn spec_validation() {
        let ok = GenFunSpec::new(vec![int(1), int(1)], vec![int(0)], 1);
        assert!(ok.is_ok());
        assert_eq!(
            GenFunSpec::new(vec![int(2), int(1)], vec![int(0)], 1),
            Err(GenFunError::AlphaZeroNotOne(int(2)))
        );
        assert_eq!(
            GenFunSpec::new(vec![int(1), int(1)], vec![int(1)], 1),
            Err(GenFunError::ROneNonzero(int(1)))
        );
        assert!(matches!(
            GenFunSpec::new(vec![int(1)], vec![], 1),
            Err(GenFunError::AlphaLength { .. })
        ));
        assert_eq!(GenFunSpec::new(vec![int(1)], vec![], 0), Err(GenFunError::ZeroOrder));
    }

    #[test]
    fn hermite_expansion() {
        let spec = GenFunSpec::quadratic(factorial_alpha(3), int(1)).unwrap();
        let ps = expand(&spec).unwrap();
        assert_eq!(ps.get(3), &Poly::from_ints(&[0, -3, 0, 1]));
        assert_eq!(ps.polys(), hermite_oracle(3).as_slice());
    }

    #[test]
    fn r_zero_gives_monomials() {
        let alpha = vec![int(1), frac(2, 3), int(-5), frac(1, 7), int(3), frac(-9, 2)];
        let spec = GenFunSpec::new(alpha, vec![int(0); 5], 5).unwrap();
        assert_eq!(expand(&spec).unwrap(), PolySeq::monomials(5));
    }

    #[test]
    fn chebyshev_second_degree() {
        // alpha_n = 2^{n-1}/n
        let alpha = vec![int(1), int(1), int(1)];
        let spec = GenFunSpec::quadratic(alpha, int(1)).unwrap();
        let ps = expand(&spec).unwrap();
        assert_eq!(ps.get(2), &Poly::new(vec![frac(-1, 2), int(0), int(1)]));
    }

    #[test]
    fn zero_alpha_is_reported() {
        let spec = GenFunSpec::quadratic(vec![int(1), int(1), int(0), int(1)], int(1)).unwrap();
        assert_eq!(expand(&spec), Err(GenFunError::ZeroAlpha(2)));
    }

    #[test]
    fn gf7_on_hermite() {
        let spec = GenFunSpec::quadratic(factorial_alpha(3), int(1)).unwrap();
        let ps = expand(&spec).unwrap();
        let report = verify_gf7(&spec, &ps, 3).unwrap();
        assert_eq!(report.residuals.len(), 3);
        assert!(report.passed());
    }

    #[test]
    fn gf7_detects_a_wrong_polynomial() {
        let spec = GenFunSpec::quadratic(factorial_alpha(3), int(1)).unwrap();
        let mut polys = expand(&spec).unwrap().polys().to_vec();
        polys[2] = Poly::from_ints(&[0, 0, 1]);
        let ps = PolySeq::new(polys).unwrap();
        let report = verify_gf7(&spec, &ps, 3).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().0, 2);
    }

    #[test]
    fn gf7_order_exceeded() {
        let spec = GenFunSpec::quadratic(factorial_alpha(3), int(1)).unwrap();
        let ps = expand(&spec).unwrap();
        assert_eq!(
            verify_gf7(&spec, &ps, 4),
            Err(GenFunError::OrderExceeded { n_max: 4, order: 3 })
        );
    }

    #[test]
    fn symmetry() {
        assert!(is_symmetric(&PolySeq::monomials(4)));
        let spec = GenFunSpec::quadratic(factorial_alpha(6), int(1)).unwrap();
        assert!(is_symmetric(&expand(&spec).unwrap()));
        let mixed = PolySeq::new(vec![Poly::one(), Poly::x(), Poly::from_ints(&[0, 1, 1])]).unwrap();
        assert!(!is_symmetric(&mixed));
    }

    #[test]
    fn polyseq_rejects_non_monic() {
        assert!(PolySeq::new(vec![Poly::one(), Poly::from_ints(&[0, 2])]).is_err());
        assert!(PolySeq::new(vec![Poly::one(), Poly::from_ints(&[0, 0, 1])]).is_err());
    }
}
