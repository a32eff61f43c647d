//! The four kernel series and the path-count formulas built on them.
//!
//! * `C(x)`: Catalan numbers, from `x*C^2 - C + 1 = 0`.
//! * `S(x)`: large Schroeder numbers, from `x*S^2 - (1-x)*S + 1 = 0`.
//! * `F*(x) = 1 / (1 - x*(C + S))`: diagonal path counts in the lattice without
//!   diagonal steps on `y = x`.
//! * `F(x) = 1 / (1 - x*(C + S + 1)) = S / (1 - x*C*S)`: the same with diagonal
//!   steps allowed on `y = x`.
//!
//! Points are `(x, y)` with `x` the number of east steps. Below the diagonal
//! both Catalan-Schroeder lattices look like the Catalan lattice; above it they
//! look like the transposed Schroeder lattice.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("kernel order {order} is too small, need at least {needed}")]
    OrderExceeded { needed: usize, order: usize },
    #[error("point ({n}, {k}) is outside the domain of this formula")]
    Domain { n: i64, k: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which Catalan-Schroeder lattice: diagonal steps from points on `y = x`
/// are allowed in `Cs` and forbidden in `CsStar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeVariant {
    Cs,
    CsStar,
}

impl LatticeVariant {
    pub fn name(self) -> &'static str {
        match self {
            LatticeVariant::Cs => "CS",
            LatticeVariant::CsStar => "CS*",
        }
    }
}

/// Family of the triangular lattices (domain `y <= x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Catalan,
    Schroeder,
}

/// Catalan numbers `C_0 ..= C_order` via `C_{n+1} = sum_{i=0..n} C_i C_{n-i}`.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
    c.push(BigInt::from(1));
    for n in 0..order {
        c.push(symmetric_convolution(&c, n));
    }
    TruncatedSeries::new(c, order)
}

/// Large Schroeder numbers via `S_{n+1} = S_n + sum_{i=0..n} S_i S_{n-i}`.
pub fn schroeder_series(order: usize) -> TruncatedSeries {
    let mut s: Vec<BigInt> = Vec::with_capacity(order + 1);
    s.push(BigInt::from(1));
    for n in 0..order {
        let next = &s[n] + symmetric_convolution(&s, n);
        s.push(next);
    }
    TruncatedSeries::new(s, order)
}

/// `sum_{i=0..n} a_i a_{n-i}`, using the symmetry of the terms.
fn symmetric_convolution(a: &[BigInt], n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..(n + 1) / 2 {
        acc += &a[i] * &a[n - i];
    }
    acc <<= 1;
    if n % 2 == 0 {
        acc += &a[n / 2] * &a[n / 2];
    }
    acc
}

/// `1 / (1 - x*(C + S))`.
fn f_star_from(catalan: &TruncatedSeries, schroeder: &TruncatedSeries) -> TruncatedSeries {
    let order = catalan.order().min(schroeder.order());
    let step = catalan.add(schroeder);
    one_minus_x_times(&step, order)
        .reciprocal()
        .expect("constant term is 1")
}

/// `1 / (1 - x*(C + S + 1))`.
fn f_from_sum(catalan: &TruncatedSeries, schroeder: &TruncatedSeries) -> TruncatedSeries {
    let order = catalan.order().min(schroeder.order());
    let step = catalan.add(schroeder).add(&TruncatedSeries::one(order));
    one_minus_x_times(&step, order)
        .reciprocal()
        .expect("constant term is 1")
}

/// `S / (1 - x*C*S)`.
fn f_from_quotient(catalan: &TruncatedSeries, schroeder: &TruncatedSeries) -> TruncatedSeries {
    let order = catalan.order().min(schroeder.order());
    let denom = one_minus_x_times(&catalan.mul(schroeder), order)
        .reciprocal()
        .expect("constant term is 1");
    schroeder.mul(&denom)
}

/// `1 - x*s` at the given order.
fn one_minus_x_times(s: &TruncatedSeries, order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order).sub(&s.shift(1).truncate(order))
}

/// Diagonal path counts `f*_n` of the lattice without diagonal steps on `y = x`.
pub fn f_star_series(order: usize) -> TruncatedSeries {
    f_star_from(&catalan_series(order), &schroeder_series(order))
}

/// Diagonal path counts `f_n` of the lattice with diagonal steps on `y = x`.
///
/// Both closed forms are evaluated; a disagreement is a bug and panics.
pub fn f_series(order: usize) -> TruncatedSeries {
    let c = catalan_series(order);
    let s = schroeder_series(order);
    let f = f_from_sum(&c, &s);
    assert_eq!(f, f_from_quotient(&c, &s), "closed forms of F disagree");
    f
}

/// Which closed form to use for `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FForm {
    /// `1 / (1 - x*(C + S + 1))`
    Sum,
    /// `S / (1 - x*C*S)`
    Quotient,
}

pub fn f_series_form(order: usize, form: FForm) -> TruncatedSeries {
    let c = catalan_series(order);
    let s = schroeder_series(order);
    match form {
        FForm::Sum => f_from_sum(&c, &s),
        FForm::Quotient => f_from_quotient(&c, &s),
    }
}

/// `x*C^2 - C + 1`, which vanishes for the Catalan series.
pub fn catalan_residual(c: &TruncatedSeries) -> TruncatedSeries {
    let n = c.order();
    let sq = c.mul(c).shift(1).truncate(n);
    sq.sub(c).add(&TruncatedSeries::one(n))
}

/// `x*S^2 - (1-x)*S + 1`, which vanishes for the Schroeder series.
pub fn schroeder_residual(s: &TruncatedSeries) -> TruncatedSeries {
    let n = s.order();
    let sq = s.mul(s).shift(1).truncate(n);
    let one_minus_x = TruncatedSeries::new([1, -1], n);
    sq.sub(&one_minus_x.mul(s)).add(&TruncatedSeries::one(n))
}

/// `C(x/(1-x)^2) / (1-x)` at the order of `c`.
pub fn schroeder_via_catalan(c: &TruncatedSeries) -> TruncatedSeries {
    let n = c.order();
    // x/(1-x)^2 = sum k x^k
    let inner = TruncatedSeries::new((0..=n).map(|k| k as u64), n);
    let geometric = TruncatedSeries::new([1, -1], n)
        .reciprocal()
        .expect("constant term is 1");
    c.compose(&inner).expect("inner has zero constant term").mul(&geometric)
}

/// The kernels `C`, `S`, `F`, `F*` at a common order, built once and shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSet {
    order: usize,
    catalan: TruncatedSeries,
    schroeder: TruncatedSeries,
    f: TruncatedSeries,
    f_star: TruncatedSeries,
}

impl KernelSet {
    pub fn new(order: usize) -> Self {
        let catalan = catalan_series(order);
        let schroeder = schroeder_series(order);
        let f = f_from_sum(&catalan, &schroeder);
        debug_assert_eq!(f, f_from_quotient(&catalan, &schroeder));
        let f_star = f_star_from(&catalan, &schroeder);
        KernelSet {
            order,
            catalan,
            schroeder,
            f,
            f_star,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn catalan(&self) -> &TruncatedSeries {
        &self.catalan
    }

    pub fn schroeder(&self) -> &TruncatedSeries {
        &self.schroeder
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn f_star(&self) -> &TruncatedSeries {
        &self.f_star
    }

    /// `F` or `F*` depending on the lattice.
    pub fn diagonal(&self, variant: LatticeVariant) -> &TruncatedSeries {
        match variant {
            LatticeVariant::Cs => &self.f,
            LatticeVariant::CsStar => &self.f_star,
        }
    }

    fn family(&self, family: Family) -> &TruncatedSeries {
        match family {
            Family::Catalan => &self.catalan,
            Family::Schroeder => &self.schroeder,
        }
    }

    fn require(&self, needed: usize) -> Result<(), KernelError> {
        if needed > self.order {
            Err(KernelError::OrderExceeded {
                needed,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    /// `[t^index] base * factor^exponent`, working at order `index` only.
    fn product_coeff(
        &self,
        base: &TruncatedSeries,
        factor: &TruncatedSeries,
        exponent: usize,
        index: usize,
    ) -> Result<BigInt, KernelError> {
        self.require(index)?;
        let exponent = u32::try_from(exponent).expect("exponent fits in u32");
        let power = factor.truncate(index).pow(exponent);
        let coeff = base
            .coeffs()
            .iter()
            .take(index + 1)
            .zip(power.coeffs().iter().rev())
            .map(|(a, b)| a * b)
            .sum();
        Ok(coeff)
    }

    /// Number of paths from the origin to `(x, y)` in a Catalan-Schroeder lattice.
    ///
    /// For `x >= y` this is `[t^y] F * C^(x-y)`, for `x <= y` it is
    /// `[t^x] F * S^(y-x)`, with `F*` in place of `F` for [`LatticeVariant::CsStar`].
    pub fn point_count(&self, variant: LatticeVariant, x: usize, y: usize) -> Result<BigInt, KernelError> {
        let base = self.diagonal(variant);
        if x >= y {
            self.product_coeff(base, &self.catalan, x - y, y)
        } else {
            self.product_coeff(base, &self.schroeder, y - x, x)
        }
    }

    /// Paths from the origin to `(n, k)`, `n >= k`, in the triangular lattice
    /// of the given family: `[x^k] C^(n-k+1)` or `[x^k] S^(n-k+1)`.
    pub fn lattice_count(&self, family: Family, n: i64, k: i64) -> Result<BigInt, KernelError> {
        if k < 0 || k > n {
            return Err(KernelError::Domain { n, k });
        }
        let one = TruncatedSeries::one(self.order);
        self.product_coeff(&one, self.family(family), (n - k + 1) as usize, k as usize)
    }

    pub fn catalan_lattice_count(&self, n: i64, k: i64) -> Result<BigInt, KernelError> {
        self.lattice_count(Family::Catalan, n, k)
    }

    pub fn schroeder_lattice_count(&self, n: i64, k: i64) -> Result<BigInt, KernelError> {
        self.lattice_count(Family::Schroeder, n, k)
    }

    /// Paths from the origin to `(n, k)` in the triangular lattice that meet
    /// `y = x` only at their endpoints.
    ///
    /// `[x^(n-1)]` of the family series when `n = k >= 1`, otherwise
    /// `[x^k]` of its `(n-k)`-th power.
    pub fn subdiagonal_count(&self, family: Family, n: i64, k: i64) -> Result<BigInt, KernelError> {
        if k < 0 || k > n || n == 0 {
            return Err(KernelError::Domain { n, k });
        }
        let series = self.family(family);
        if n == k {
            let index = (n - 1) as usize;
            self.require(index)?;
            Ok(series.coeffs()[index].clone())
        } else {
            let one = TruncatedSeries::one(self.order);
            self.product_coeff(&one, series, (n - k) as usize, k as usize)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// (2n)! / (n! (n+1)!) by the multiplicative binomial formula.
    fn catalan_closed_form(n: u64) -> BigInt {
        let mut b = BigInt::from(1);
        for i in 0..n {
            b = b * (2 * n - i) / (i + 1);
        }
        b / (n + 1)
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_series(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(catalan_series(5).coeffs(), ints(&[1, 1, 2, 5, 14, 42]).as_slice());
        assert_eq!(catalan_series(10).coeff(10).unwrap(), &BigInt::from(16796));
    }

    #[test]
    fn catalan_matches_binomial_closed_form() {
        let c = catalan_series(120);
        for n in 0..=120 {
            assert_eq!(c.coeffs()[n], catalan_closed_form(n as u64), "n = {n}");
        }
    }

    #[test]
    fn schroeder_examples() {
        assert_eq!(schroeder_series(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(
            schroeder_series(5).coeffs(),
            ints(&[1, 2, 6, 22, 90, 394]).as_slice()
        );
        assert_eq!(schroeder_via_catalan(&catalan_series(40)), schroeder_series(40));
    }

    #[test]
    fn kernel_residuals_vanish() {
        assert!(catalan_residual(&catalan_series(60)).is_zero());
        assert!(schroeder_residual(&schroeder_series(60)).is_zero());
        // perturbed series must not satisfy the equation
        let bumped = catalan_series(6).add(&TruncatedSeries::monomial(4, 6));
        assert!(!catalan_residual(&bumped).is_zero());
    }

    #[test]
    fn f_star_examples() {
        assert_eq!(f_star_series(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(f_star_series(3).coeffs(), ints(&[1, 2, 7, 28]).as_slice());
        let f5 = f_star_series(5);
        assert_eq!(&f5.coeffs()[4..], ints(&[120, 538]).as_slice());
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_series(1).coeffs(), ints(&[1, 3]).as_slice());
        assert_eq!(f_series(4).coeffs(), ints(&[1, 3, 12, 53, 246]).as_slice());
        assert_eq!(f_series_form(200, FForm::Sum), f_series_form(200, FForm::Quotient));
    }

    #[test]
    fn point_count_examples() {
        let k = KernelSet::new(10);
        assert_eq!(k.point_count(LatticeVariant::Cs, 2, 1).unwrap(), 4.into());
        assert_eq!(k.point_count(LatticeVariant::Cs, 1, 2).unwrap(), 5.into());
        assert_eq!(k.point_count(LatticeVariant::CsStar, 1, 2).unwrap(), 4.into());
        assert_eq!(k.point_count(LatticeVariant::CsStar, 2, 1).unwrap(), 3.into());
        for n in 0..=10 {
            for v in [LatticeVariant::Cs, LatticeVariant::CsStar] {
                assert_eq!(&k.point_count(v, n, n).unwrap(), k.diagonal(v).coeff(n).unwrap());
            }
        }
    }

    #[test]
    fn point_count_needs_order_of_smaller_coordinate() {
        let k = KernelSet::new(3);
        assert!(k.point_count(LatticeVariant::Cs, 50, 3).is_ok());
        assert_eq!(
            k.point_count(LatticeVariant::Cs, 4, 9),
            Err(KernelError::OrderExceeded { needed: 4, order: 3 })
        );
    }

    #[test]
    fn subdiagonal_counts() {
        let k = KernelSet::new(10);
        for n in 0..6 {
            assert_eq!(k.catalan_lattice_count(n, 0).unwrap(), 1.into());
            assert_eq!(k.schroeder_lattice_count(n, 0).unwrap(), 1.into());
        }
        assert_eq!(k.catalan_lattice_count(2, 1).unwrap(), 2.into());
        assert_eq!(k.catalan_lattice_count(3, 3).unwrap(), 5.into());
        assert_eq!(k.schroeder_lattice_count(2, 1).unwrap(), 4.into());
        assert_eq!(k.schroeder_lattice_count(3, 3).unwrap(), 22.into());
        assert_eq!(k.subdiagonal_count(Family::Catalan, 2, 2).unwrap(), 1.into());
        assert_eq!(k.subdiagonal_count(Family::Schroeder, 2, 2).unwrap(), 2.into());
        assert_eq!(k.subdiagonal_count(Family::Catalan, 3, 1).unwrap(), 2.into());
    }

    #[test]
    fn subdiagonal_domain_errors() {
        let k = KernelSet::new(5);
        assert_eq!(k.catalan_lattice_count(1, 2), Err(KernelError::Domain { n: 1, k: 2 }));
        assert_eq!(k.schroeder_lattice_count(3, -1), Err(KernelError::Domain { n: 3, k: -1 }));
        assert_eq!(
            k.subdiagonal_count(Family::Catalan, 0, 0),
            Err(KernelError::Domain { n: 0, k: 0 })
        );
        assert!(matches!(
            k.catalan_lattice_count(20, 9),
            Err(KernelError::OrderExceeded { .. })
        ));
    }
}
