//! Truncated formal power series with exact big-integer coefficients.
//!
//! A series of order `N` stores the coefficients of `x^0 ..= x^N`. Binary
//! operations truncate to the smaller order of their operands, so a result
//! never claims more precision than its inputs carry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit (must be +1 or -1)")]
    NonUnitConstantTerm(BigInt),
    #[error("inner series of a composition must have zero constant term, found {0}")]
    InnerConstantTermNonzero(BigInt),
    #[error("cannot dilate a series of order {source_order} by {stride} up to order {requested}")]
    InsufficientSourceOrder {
        source_order: usize,
        stride: usize,
        requested: usize,
    },
    #[error("dilation stride must be positive")]
    ZeroStride,
    #[error("coefficient x^{index} requested from a series of order {order}")]
    OrderExceeded { index: usize, order: usize },
}

/// Coefficients `c_0 ..= c_N` of a formal power series, truncated at order `N`.
///
/// Values are immutable; every operation returns a new series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, zero-padding or truncating `coeffs`.
    pub fn new<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new([1], order)
    }

    /// `x^power` truncated at `order` (the zero series if `power > order`).
    pub fn monomial(power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// The coefficient extraction operator `[x^n]`.
    pub fn coeff(&self, n: usize) -> Result<&BigInt, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OrderExceeded {
            index: n,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order`. Requests above the current order
    /// return the series unchanged.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = self.coeffs[..=order]
            .iter()
            .zip(&other.coeffs[..=order])
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = self.coeffs[..=order]
            .iter()
            .zip(&other.coeffs[..=order])
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, factor: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Schoolbook Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        // Dilated kernels are mostly zeros; skipping them keeps those products cheap.
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse, defined when the constant term is `±1`.
    ///
    /// Uses the convolution recurrence `r_n = -c_0 * sum_{i=1..n} s_i r_{n-i}`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstantTerm(c0.clone()));
        }
        let negate = c0.is_negative();
        let order = self.order();
        let mut r: Vec<BigInt> = Vec::with_capacity(order + 1);
        r.push(c0.clone());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                let s = &self.coeffs[i];
                if !s.is_zero() {
                    acc += s * &r[n - i];
                }
            }
            // r_n = -(acc) / c0, and 1/c0 = c0 for units
            r.push(if negate { acc } else { -acc });
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `self^exponent` by binary exponentiation; `s^0` is the unit series.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `outer(inner(x))`, truncated at the smaller order.
    ///
    /// Horner evaluation. Since `inner` has valuation at least one, the partial
    /// result at depth `i` is multiplied by `inner` another `i` times, so only
    /// its first `N - i` coefficients can matter and the rest are dropped.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTermNonzero(inner.coeffs[0].clone()));
        }
        let order = self.order().min(inner.order());
        // inner / x
        let reduced = TruncatedSeries {
            coeffs: if order == 0 {
                vec![BigInt::zero()]
            } else {
                inner.coeffs[1..=order].to_vec()
            },
        };
        let mut acc = TruncatedSeries::new([self.coeffs[order].clone()], 0);
        for i in (0..order).rev() {
            // acc has order N-i-1 here; lift it to order N-i.
            let lifted = acc.mul(&reduced.truncate(order - i - 1)).shift(1);
            let mut coeffs = lifted.coeffs;
            coeffs[0] += &self.coeffs[i];
            acc = TruncatedSeries { coeffs };
        }
        Ok(acc)
    }

    /// `s(x^stride)` truncated at `order`.
    pub fn substitute_power(&self, stride: usize, order: usize) -> Result<Self, SeriesError> {
        if stride == 0 {
            return Err(SeriesError::ZeroStride);
        }
        if order > stride * self.order() {
            return Err(SeriesError::InsufficientSourceOrder {
                source_order: self.order(),
                stride,
                requested: order,
            });
        }
        let mut out = Self::zero(order);
        for (k, c) in self.coeffs.iter().enumerate().take(order / stride + 1) {
            out.coeffs[k * stride] = c.clone();
        }
        Ok(out)
    }

    /// Multiplies by `x^j`; the order grows by `j`.
    pub fn shift(&self, j: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Prefix sums of the coefficients, i.e. multiplication by `1/(1-x)`.
    pub fn partial_sum(&self) -> Self {
        let mut running = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                running += c;
                running.clone()
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl<'a> Add for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl<'a> Sub for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<'a> Mul for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<'a> Neg for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().copied(), order)
    }

    fn catalan(order: usize) -> TruncatedSeries {
        s(&[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796], order)
    }

    fn schroeder(order: usize) -> TruncatedSeries {
        s(&[1, 2, 6, 22, 90, 394, 1806, 8558, 41586], order)
    }

    #[test]
    fn construction_pads_and_truncates() {
        assert_eq!(s(&[5], 2).coeffs(), &[5.into(), 0.into(), 0.into()]);
        assert_eq!(s(&[1, 2, 3, 4], 2).coeffs(), &[1.into(), 2.into(), 3.into()]);
        assert_eq!(s(&[0, 1], 3), TruncatedSeries::monomial(1, 3));
        assert_eq!(TruncatedSeries::new(Vec::<i64>::new(), 1), TruncatedSeries::zero(1));
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(&[1, 1], 1).add(&s(&[1, -1], 1)), s(&[2], 1));
        assert_eq!(catalan(3).add(&schroeder(3)), s(&[2, 3, 8, 27], 3));
        let a = s(&[3, -4, 7], 2);
        assert_eq!(&a + &TruncatedSeries::zero(2), a);
        assert_eq!(s(&[1, 2, 3], 2).add(&s(&[1], 0)).order(), 0);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1, 1], 2).mul(&s(&[1, 1], 2)), s(&[1, 2, 1], 2));
        assert_eq!(catalan(3).mul(&catalan(3)), s(&[1, 2, 5, 14], 3));
        let a = s(&[3, -4, 7], 2);
        assert_eq!(&a * &TruncatedSeries::one(2), a);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(s(&[1, -1], 5).reciprocal().unwrap(), s(&[1, 1, 1, 1, 1, 1], 5));
        let cs = catalan(5).add(&schroeder(5));
        let denom = TruncatedSeries::one(5).sub(&cs.shift(1).truncate(5));
        assert_eq!(denom.reciprocal().unwrap(), s(&[1, 2, 7, 28, 120, 538], 5));
        assert_eq!(
            s(&[2, 1], 3).reciprocal(),
            Err(SeriesError::NonUnitConstantTerm(2.into()))
        );
        assert!(matches!(
            s(&[0, 1], 3).reciprocal(),
            Err(SeriesError::NonUnitConstantTerm(_))
        ));
    }

    #[test]
    fn reciprocal_with_negative_unit() {
        let a = s(&[-1, 3, 0, 5], 3);
        let r = a.reciprocal().unwrap();
        assert_eq!(a.mul(&r), TruncatedSeries::one(3));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(s(&[4, 5, 6], 2).pow(0), TruncatedSeries::one(2));
        assert_eq!(catalan(2).pow(3), s(&[1, 3, 9], 2));
        assert_eq!(s(&[1, 1], 2).pow(2), s(&[1, 2, 1], 2));
    }

    #[test]
    fn compose_examples() {
        let outer = s(&[1, 1, 1], 4);
        let inner = TruncatedSeries::monomial(2, 4);
        assert_eq!(outer.compose(&inner).unwrap(), s(&[1, 0, 1, 0, 1], 4));

        // C(x/(1-x)^2) / (1-x) = S(x)
        let n = 8;
        let inner: Vec<i64> = (0..=n as i64).collect();
        let composed = catalan(n).compose(&s(&inner, n)).unwrap();
        let geometric = s(&[1, -1], n).reciprocal().unwrap();
        assert_eq!(composed.mul(&geometric), schroeder(n));

        assert_eq!(
            outer.compose(&s(&[1, 1], 4)),
            Err(SeriesError::InnerConstantTermNonzero(1.into()))
        );
    }

    #[test]
    fn compose_at_order_zero() {
        let c = s(&[7], 0).compose(&s(&[0], 0)).unwrap();
        assert_eq!(c, s(&[7], 0));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(s(&[1, 2, 7], 2).substitute_power(2, 4).unwrap(), s(&[1, 0, 2, 0, 7], 4));
        assert_eq!(
            schroeder(2).substitute_power(3, 6).unwrap(),
            s(&[1, 0, 0, 2, 0, 0, 6], 6)
        );
        let a = s(&[3, 1, 4, 1, 5], 4);
        assert_eq!(a.substitute_power(1, 4).unwrap(), a);
        assert_eq!(
            s(&[1, 2, 7], 2).substitute_power(2, 5),
            Err(SeriesError::InsufficientSourceOrder {
                source_order: 2,
                stride: 2,
                requested: 5
            })
        );
        assert_eq!(a.substitute_power(0, 2), Err(SeriesError::ZeroStride));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s(&[1, 1], 1).shift(1), s(&[0, 1, 1], 2));
        assert_eq!(s(&[1, 2, 7], 2).shift(1), s(&[0, 1, 2, 7], 3));
        let a = s(&[9, 8], 1);
        assert_eq!(a.shift(0), a);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(s(&[1, 1, 1], 2).partial_sum(), s(&[1, 2, 3], 2));
        assert_eq!(TruncatedSeries::zero(4).partial_sum(), TruncatedSeries::zero(4));
        assert_eq!(s(&[1, 2, 4, 9], 3).partial_sum(), s(&[1, 3, 7, 16], 3));
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(s(&[1, 5], 1).coeff(1).unwrap(), &BigInt::from(5));
        assert_eq!(catalan(10).coeff(5).unwrap(), &BigInt::from(42));
        assert_eq!(
            s(&[1], 3).coeff(7),
            Err(SeriesError::OrderExceeded { index: 7, order: 3 })
        );
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -2, 0, 1], 3).to_string(), "1 - 2*x + x^3 + O(x^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
    }
}
