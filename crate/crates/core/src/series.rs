//! Truncated power series in `t` whose coefficients are polynomials in `x`.

use num_traits::Zero;
use thiserror::Error;

use crate::par;
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("inner series has a nonzero constant term in t: {0}")]
    NonzeroConstantTerm(Poly),
    #[error("series is truncated at order {have}, operation needs order {need}")]
    OrderTooLow { have: usize, need: usize },
    #[error("coefficient sequence has {have} entries, order {order} needs {need}")]
    ShortCoefficients { have: usize, need: usize, order: usize },
}

/// `sum_{n=0}^{order} coeffs[n](x) t^n`, holding exactly `order + 1` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    /// Pads with zero coefficients or truncates so the result has `order + 1` terms.
    pub fn new(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// Scalar series `sum c_n t^n`.
    pub fn from_scalars(cs: &[Rational], order: usize) -> Self {
        Self::new(cs.iter().cloned().map(Poly::constant).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Result<TruncSeries, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderTooLow { have: self.order(), need: order });
        }
        Ok(TruncSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn add(&self, other: &TruncSeries, order: usize) -> Result<TruncSeries, SeriesError> {
        check_order(self, order)?;
        check_order(other, order)?;
        Ok(TruncSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect(),
        })
    }

    /// Adds a scalar to the `t^0` coefficient.
    fn add_constant(&mut self, c: &Rational) {
        if !c.is_zero() {
            self.coeffs[0].add_scaled(&Poly::one(), c);
        }
    }
}

fn check_order(s: &TruncSeries, order: usize) -> Result<(), SeriesError> {
    if s.order() < order {
        Err(SeriesError::OrderTooLow { have: s.order(), need: order })
    } else {
        Ok(())
    }
}

/// Cauchy product of `a` and `b` truncated at `t^order`.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries, order: usize) -> Result<TruncSeries, SeriesError> {
    check_order(a, order)?;
    check_order(b, order)?;
    Ok(mul_unchecked(a, b, order))
}

fn mul_unchecked(a: &TruncSeries, b: &TruncSeries, order: usize) -> TruncSeries {
    // each output coefficient is independent
    let coeffs = par::map_range(0..order + 1, |n| {
        let mut acc = Poly::zero();
        for i in 0..=n {
            let (p, q) = (&a.coeffs[i], &b.coeffs[n - i]);
            if p.is_zero() || q.is_zero() {
                continue;
            }
            acc = &acc + &(p * q);
        }
        acc
    });
    TruncSeries { coeffs }
}

/// `F(u) = sum_k alpha_k u^k` truncated at `t^order`, by Horner's scheme in `u`.
///
/// `u` must vanish at `t = 0`. The Horner partial `S_k = alpha_k + u S_{k+1}`
/// is only ever needed to order `order - k`, since it ends up multiplied by
/// `u^k`; each step is truncated accordingly.
pub fn series_compose_outer(
    alpha: &[Rational],
    u: &TruncSeries,
    order: usize,
) -> Result<TruncSeries, SeriesError> {
    check_order(u, order)?;
    if alpha.len() < order + 1 {
        return Err(SeriesError::ShortCoefficients { have: alpha.len(), need: order + 1, order });
    }
    if !u.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstantTerm(u.coeffs[0].clone()));
    }
    let mut acc = TruncSeries::constant(Poly::constant(alpha[order].clone()), 0);
    for k in (0..order).rev() {
        let m = order - k;
        // acc holds S_{k+1} to order m - 1; u * S_{k+1} to order m only needs that.
        let widened = TruncSeries::new(acc.coeffs, m);
        let mut next = mul_unchecked(u, &widened, m);
        next.add_constant(&alpha[k]);
        acc = next;
    }
    Ok(acc)
}
