//! Registry of the OEIS sequences A026769-A026790 (plus the Catalan and
//! Schroeder baselines A000108 and A006318).
//!
//! Each sequence carries two independent definitions: a generating-function
//! [`Expr`] evaluated over a [`KernelSet`], and a [`Targets`] description of
//! which lattice points it counts, evaluated by the DP oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::kernel::{KernelError, KernelSet, LatticeVariant};
use crate::oracle::LatticeRule;
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown sequence {0}")]
    UnknownSequence(String),
    #[error("{0} is not a triangle")]
    WrongKind(SequenceId),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An OEIS A-number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequenceId(u32);

impl SequenceId {
    pub const fn new(number: u32) -> Self {
        SequenceId(number)
    }

    pub fn number(self) -> u32 {
        self.0
    }

    /// Name of the b-file on oeis.org, e.g. `b026770.txt`.
    pub fn bfile_name(self) -> String {
        format!("b{:06}.txt", self.0)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:06}", self.0)
    }
}

impl FromStr for SequenceId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix('A')
            .or_else(|| s.strip_prefix('a'))
            .ok_or_else(|| CatalogError::UnknownSequence(s.to_string()))?;
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CatalogError::UnknownSequence(s.to_string()));
        }
        digits
            .parse()
            .map(SequenceId)
            .map_err(|_| CatalogError::UnknownSequence(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// `T(n, k)`, `0 <= k <= n`, read by rows.
    Triangle,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Catalan,
    Schroeder,
    F,
    FStar,
}

/// A generating function over the kernel series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    One,
    Kernel(Kernel),
    /// Multiplication by `x^j`.
    Shift(Box<Expr>, usize),
    /// Substitution `x -> x^m`.
    Dilate(Box<Expr>, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Reciprocal(Box<Expr>),
    Pow(Box<Expr>, u32),
    PartialSum(Box<Expr>),
}

impl Expr {
    pub fn kernel(k: Kernel) -> Expr {
        Expr::Kernel(k)
    }

    pub fn shift(self, j: usize) -> Expr {
        Expr::Shift(Box::new(self), j)
    }

    pub fn dilate(self, m: usize) -> Expr {
        Expr::Dilate(Box::new(self), m)
    }

    pub fn plus(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }

    pub fn minus(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }

    pub fn recip(self) -> Expr {
        Expr::Reciprocal(Box::new(self))
    }

    pub fn pow(self, m: u32) -> Expr {
        Expr::Pow(Box::new(self), m)
    }

    pub fn partial_sum(self) -> Expr {
        Expr::PartialSum(Box::new(self))
    }

    /// Largest substitution stride anywhere in the expression.
    pub fn max_stride(&self) -> usize {
        match self {
            Expr::One | Expr::Kernel(_) => 1,
            Expr::Dilate(e, m) => m * e.max_stride(),
            Expr::Shift(e, _) | Expr::Reciprocal(e) | Expr::Pow(e, _) | Expr::PartialSum(e) => {
                e.max_stride()
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_stride().max(b.max_stride()),
        }
    }

    /// Evaluates the expression as a series of the given order.
    pub fn eval(&self, kernels: &KernelSet, order: usize) -> Result<TruncatedSeries, CatalogError> {
        Ok(match self {
            Expr::One => TruncatedSeries::one(order),
            Expr::Kernel(k) => {
                if order > kernels.order() {
                    return Err(KernelError::OrderExceeded {
                        needed: order,
                        order: kernels.order(),
                    }
                    .into());
                }
                let s = match k {
                    Kernel::Catalan => kernels.catalan(),
                    Kernel::Schroeder => kernels.schroeder(),
                    Kernel::F => kernels.f(),
                    Kernel::FStar => kernels.f_star(),
                };
                s.truncate(order)
            }
            Expr::Shift(e, j) => {
                if *j > order {
                    TruncatedSeries::zero(order)
                } else {
                    e.eval(kernels, order - j)?.shift(*j)
                }
            }
            Expr::Dilate(e, m) => {
                let inner = order.div_ceil((*m).max(1));
                e.eval(kernels, inner)?.substitute_power(*m, order)?
            }
            Expr::Add(a, b) => a.eval(kernels, order)?.add(&b.eval(kernels, order)?),
            Expr::Sub(a, b) => a.eval(kernels, order)?.sub(&b.eval(kernels, order)?),
            Expr::Mul(a, b) => a.eval(kernels, order)?.mul(&b.eval(kernels, order)?),
            Expr::Reciprocal(e) => e.eval(kernels, order)?.reciprocal()?,
            Expr::Pow(e, m) => e.eval(kernels, order)?.pow(*m),
            Expr::PartialSum(e) => e.eval(kernels, order)?.partial_sum(),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::One => f.write_str("1"),
            Expr::Kernel(Kernel::Catalan) => f.write_str("C"),
            Expr::Kernel(Kernel::Schroeder) => f.write_str("S"),
            Expr::Kernel(Kernel::F) => f.write_str("F"),
            Expr::Kernel(Kernel::FStar) => f.write_str("F*"),
            Expr::Shift(e, 1) => write!(f, "x·{e}"),
            Expr::Shift(e, j) => write!(f, "x^{j}·{e}"),
            Expr::Dilate(e, m) => write!(f, "{e}[x^{m}]"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}·{b}"),
            Expr::Reciprocal(e) => write!(f, "1/({e})"),
            Expr::Pow(e, m) => write!(f, "{e}^{m}"),
            Expr::PartialSum(e) => write!(f, "({e})/(1-x)"),
        }
    }
}

/// The lattice points a sequence term counts, as a function of its index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Targets {
    /// Entry `T(n, k)` counts paths to `(k, n - k)`.
    Triangle,
    /// The single point `(n + dx, n + dy)`.
    Point { dx: i64, dy: i64 },
    /// `(floor(n/2), ceil(n/2))`.
    HalfSplit,
    /// All of `(i, n - i)`, `0 <= i <= n`.
    Antidiagonal,
    /// `(i, n - i)` for `0 <= i <= floor(n/2)`.
    HalfAntidiagonal,
    /// Every point with `x + y <= n`.
    AntidiagonalPrefix,
    /// `(i, n - 2i)` for `0 <= i <= floor(n/2)`.
    SlopeTwo,
}

impl Targets {
    /// Points counted by term `n` (for triangles, `n` is the linear index).
    pub fn points(self, n: i64) -> Vec<(i64, i64)> {
        match self {
            Targets::Triangle => {
                let (row, k) = triangle_position(n as u64);
                vec![(k as i64, (row - k) as i64)]
            }
            Targets::Point { dx, dy } => vec![(n + dx, n + dy)],
            Targets::HalfSplit => vec![(n / 2, n - n / 2)],
            Targets::Antidiagonal => (0..=n).map(|i| (i, n - i)).collect(),
            Targets::HalfAntidiagonal => (0..=n / 2).map(|i| (i, n - i)).collect(),
            Targets::AntidiagonalPrefix => (0..=n)
                .flat_map(|m| (0..=m).map(move |i| (i, m - i)))
                .collect(),
            Targets::SlopeTwo => (0..=n / 2).map(|i| (i, n - 2 * i)).collect(),
        }
    }
}

/// Row and column of linear index `i` in a triangle read by rows.
pub fn triangle_position(i: u64) -> (u64, u64) {
    let mut row = ((((8 * i + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    // correct any floating-point drift
    while row * (row + 1) / 2 > i {
        row -= 1;
    }
    while (row + 1) * (row + 2) / 2 <= i {
        row += 1;
    }
    (row, i - row * (row + 1) / 2)
}

/// A registered sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDescriptor {
    pub id: SequenceId,
    pub kind: SequenceKind,
    /// `None` for the baselines, which live on the triangular lattices.
    pub variant: Option<LatticeVariant>,
    /// Lattice used by the oracle.
    pub rule: LatticeRule,
    /// Generating function; `None` for triangles, which use point counts.
    pub recipe: Option<Expr>,
    pub targets: Targets,
    /// OEIS index of the first term.
    pub lead_offset: i64,
}

const BASELINES: [u32; 2] = [108, 6318];
const FIRST: u32 = 26769;
const LAST: u32 = 26790;

/// All registered ids in ascending order.
pub fn all_ids() -> Vec<SequenceId> {
    BASELINES
        .iter()
        .copied()
        .chain(FIRST..=LAST)
        .map(SequenceId)
        .collect()
}

fn k(kernel: Kernel) -> Expr {
    Expr::kernel(kernel)
}

/// `1/(1 - x^a * K(x^m))`
fn geometric_of(kernel: Kernel, shift: usize, stride: usize) -> Expr {
    Expr::One.minus(k(kernel).dilate(stride).shift(shift)).recip()
}

/// `1/(1 - x*S(x^m)) + 1/(1 - x^(m-1)*C(x^m)) - 1`
fn two_sided_sum(stride: usize) -> Expr {
    geometric_of(Kernel::Schroeder, 1, stride)
        .plus(geometric_of(Kernel::Catalan, stride - 1, stride))
        .minus(Expr::One)
}

/// Generating function of A026786 with the diagonal kernel left undilated,
/// `F(x) * (1 + x*S(x^2))`. Kept for comparison only; it does not count the
/// intended points.
pub fn undilated_half_split_recipe() -> Expr {
    k(Kernel::F).times(Expr::One.plus(k(Kernel::Schroeder).dilate(2).shift(1)))
}

/// Looks up a sequence by id.
pub fn descriptor(id: SequenceId) -> Result<SequenceDescriptor, CatalogError> {
    use LatticeVariant::{Cs, CsStar};

    let linear = |variant: Option<LatticeVariant>, rule, recipe, targets, lead_offset| SequenceDescriptor {
        id,
        kind: SequenceKind::Linear,
        variant,
        rule,
        recipe: Some(recipe),
        targets,
        lead_offset,
    };

    match id.0 {
        108 => return Ok(linear(None, LatticeRule::CATALAN, k(Kernel::Catalan), Targets::Point { dx: 0, dy: 0 }, 0)),
        6318 => {
            return Ok(linear(None, LatticeRule::SCHROEDER, k(Kernel::Schroeder), Targets::Point { dx: 0, dy: 0 }, 0))
        }
        FIRST..=LAST => {}
        _ => return Err(CatalogError::UnknownSequence(id.to_string())),
    }

    // A026769..A026779 live on the lattice without diagonal steps on y = x,
    // A026780..A026790 repeat the same list with them.
    let (variant, slot) = if id.0 <= 26779 {
        (CsStar, id.0 - 26769)
    } else {
        (Cs, id.0 - 26780)
    };
    let rule = match variant {
        Cs => LatticeRule::CS,
        CsStar => LatticeRule::CS_STAR,
    };
    let diag = match variant {
        Cs => Kernel::F,
        CsStar => Kernel::FStar,
    };
    let s = || k(Kernel::Schroeder);
    let v = Some(variant);

    Ok(match slot {
        0 => SequenceDescriptor {
            id,
            kind: SequenceKind::Triangle,
            variant: v,
            rule,
            recipe: None,
            targets: Targets::Triangle,
            lead_offset: 0,
        },
        1 => linear(v, rule, k(diag), Targets::Point { dx: 0, dy: 0 }, 0),
        2 => linear(v, rule, k(diag).times(s().pow(2)).shift(1), Targets::Point { dx: -1, dy: 1 }, 1),
        3 => linear(v, rule, k(diag).times(s().pow(4)).shift(2), Targets::Point { dx: -2, dy: 2 }, 2),
        4 => linear(v, rule, k(diag).times(s()).shift(1), Targets::Point { dx: -1, dy: 0 }, 1),
        5 => linear(v, rule, k(diag).times(s().pow(3)).shift(2), Targets::Point { dx: -2, dy: 1 }, 2),
        6 => linear(
            v,
            rule,
            k(diag).dilate(2).times(Expr::One.plus(s().dilate(2).shift(1))),
            Targets::HalfSplit,
            0,
        ),
        7 => linear(v, rule, k(diag).dilate(2).times(two_sided_sum(2)), Targets::Antidiagonal, 0),
        8 => linear(
            v,
            rule,
            k(diag).dilate(2).times(geometric_of(Kernel::Schroeder, 1, 2)),
            Targets::HalfAntidiagonal,
            0,
        ),
        9 => linear(
            v,
            rule,
            k(diag).dilate(2).times(two_sided_sum(2)).partial_sum(),
            Targets::AntidiagonalPrefix,
            0,
        ),
        10 => linear(v, rule, k(diag).dilate(3).times(two_sided_sum(3)), Targets::SlopeTwo, 0),
        _ => unreachable!("slot within 0..=10"),
    })
}

impl SequenceDescriptor {
    /// Kernel order needed to produce `count` terms.
    pub fn required_order(&self, count: usize) -> usize {
        match &self.recipe {
            Some(recipe) => self.lead_offset.max(0) as usize + count + 3 * recipe.max_stride(),
            None => {
                let (row, _) = triangle_position(count.saturating_sub(1) as u64);
                row as usize / 2 + 1
            }
        }
    }

    /// First `count` terms from the generating function.
    pub fn terms(&self, kernels: &KernelSet, count: usize) -> Result<Vec<BigInt>, CatalogError> {
        match &self.recipe {
            Some(recipe) => terms_from_recipe(recipe, self.lead_offset, kernels, count),
            None => {
                let variant = self.variant.expect("triangles live on a Catalan-Schroeder lattice");
                (0..count as u64)
                    .map(|i| {
                        let (row, k) = triangle_position(i);
                        Ok(kernels.point_count(variant, k as usize, (row - k) as usize)?)
                    })
                    .collect()
            }
        }
    }

    /// Row `n` of a triangle: `T(n, k)` for `k = 0..=n`.
    pub fn triangle_row(&self, kernels: &KernelSet, n: usize) -> Result<Vec<BigInt>, CatalogError> {
        if self.kind != SequenceKind::Triangle {
            return Err(CatalogError::WrongKind(self.id));
        }
        let variant = self.variant.expect("triangles live on a Catalan-Schroeder lattice");
        (0..=n)
            .map(|k| Ok(kernels.point_count(variant, k, n - k)?))
            .collect()
    }

    /// First `count` terms counted directly on the lattice by the DP oracle.
    pub fn oracle_terms(&self, count: usize) -> Vec<BigInt> {
        let start = self.lead_offset;
        let indices: Vec<i64> = (start..start + count as i64).collect();
        let point_sets: Vec<Vec<(i64, i64)>> = indices.iter().map(|&n| self.targets.points(n)).collect();
        let (mut max_x, mut max_y) = (0i64, 0i64);
        for &(x, y) in point_sets.iter().flatten() {
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let grid = self.rule.grid_counts(max_x as usize, max_y as usize);
        point_sets
            .iter()
            .map(|points| {
                let total: BigUint = points.iter().map(|&(x, y)| grid.get(x, y)).sum();
                BigInt::from(total)
            })
            .collect()
    }
}

/// Coefficients `lead_offset ..` of a recipe, `count` of them.
pub fn terms_from_recipe(
    recipe: &Expr,
    lead_offset: i64,
    kernels: &KernelSet,
    count: usize,
) -> Result<Vec<BigInt>, CatalogError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let start = lead_offset.max(0) as usize;
    let order = start + count - 1;
    let series = recipe.eval(kernels, order)?;
    Ok(series.coeffs()[start..].to_vec())
}

/// Convenience: first `count` terms of `id`, building kernels of sufficient order.
pub fn terms(id: SequenceId, count: usize) -> Result<Vec<BigInt>, CatalogError> {
    let d = descriptor(id)?;
    let kernels = KernelSet::new(d.required_order(count));
    d.terms(&kernels, count)
}

/// Convenience: row `n` of the triangle `id`.
pub fn triangle_row(id: SequenceId, n: usize) -> Result<Vec<BigInt>, CatalogError> {
    let d = descriptor(id)?;
    let kernels = KernelSet::new(n / 2 + 1);
    d.triangle_row(&kernels, n)
}

/// Largest kernel order any registered sequence needs for `count` terms.
pub fn shared_order(ids: &[SequenceId], count: usize) -> Result<usize, CatalogError> {
    ids.iter().try_fold(0, |acc, &id| Ok(acc.max(descriptor(id)?.required_order(count))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u32) -> SequenceId {
        SequenceId::new(n)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_and_display_ids() {
        assert_eq!("A026770".parse::<SequenceId>().unwrap(), id(26770));
        assert_eq!(id(108).to_string(), "A000108");
        assert_eq!(id(26770).bfile_name(), "b026770.txt");
        assert!("26770".parse::<SequenceId>().is_err());
        assert!("A26770".parse::<SequenceId>().is_err());
    }

    #[test]
    fn descriptor_examples() {
        let d = descriptor(id(26770)).unwrap();
        assert_eq!(d.kind, SequenceKind::Linear);
        assert_eq!(d.variant, Some(LatticeVariant::CsStar));
        assert_eq!(d.recipe, Some(Expr::kernel(Kernel::FStar)));
        let t = descriptor(id(26769)).unwrap();
        assert_eq!(t.kind, SequenceKind::Triangle);
        assert_eq!(t.variant, Some(LatticeVariant::CsStar));
        assert_eq!(
            descriptor(id(0)),
            Err(CatalogError::UnknownSequence("A000000".into()))
        );
        assert_eq!(descriptor(id(26781)).unwrap().variant, Some(LatticeVariant::Cs));
    }

    #[test]
    fn all_ids_examples() {
        let ids = all_ids();
        assert_eq!(ids.len(), 24);
        assert!(ids.contains(&id(26769)) && ids.contains(&id(26790)));
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert!(ids.iter().all(|&i| descriptor(i).is_ok()));
    }

    #[test]
    fn term_examples() {
        assert_eq!(terms(id(26770), 6).unwrap(), ints(&[1, 2, 7, 28, 120, 538]));
        assert_eq!(terms(id(26781), 5).unwrap(), ints(&[1, 3, 12, 53, 246]));
        assert_eq!(terms(id(26776), 4).unwrap(), ints(&[1, 2, 4, 9]));
        assert_eq!(terms(id(26779), 4).unwrap(), ints(&[1, 1, 2, 3]));
        assert_eq!(terms(id(26775), 5).unwrap(), ints(&[1, 1, 2, 4, 7]));
        assert_eq!(terms(id(26778), 4).unwrap(), ints(&[1, 3, 7, 16]));
        assert_eq!(terms(id(26769), 6).unwrap(), ints(&[1, 1, 1, 1, 2, 1]));
    }

    #[test]
    fn triangle_rows() {
        assert_eq!(triangle_row(id(26769), 0).unwrap(), ints(&[1]));
        assert_eq!(triangle_row(id(26769), 3).unwrap(), ints(&[1, 4, 3, 1]));
        assert_eq!(triangle_row(id(26780), 3).unwrap(), ints(&[1, 5, 4, 1]));
        assert_eq!(triangle_row(id(26780), 2).unwrap(), ints(&[1, 3, 1]));
        assert_eq!(
            triangle_row(id(26770), 2),
            Err(CatalogError::WrongKind(id(26770)))
        );
    }

    #[test]
    fn shifted_recipes_start_at_lead_offset() {
        let kernels = KernelSet::new(20);
        for i in all_ids() {
            let d = descriptor(i).unwrap();
            if let Some(recipe) = &d.recipe {
                let s = recipe.eval(&kernels, 10).unwrap();
                assert_eq!(s.valuation(), Some(d.lead_offset as usize), "{i}");
            }
        }
    }

    #[test]
    fn triangle_positions() {
        let expected = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0)];
        for (i, &p) in expected.iter().enumerate() {
            assert_eq!(triangle_position(i as u64), p);
        }
        for row in [10u64, 1000, 1_000_000] {
            let start = row * (row + 1) / 2;
            assert_eq!(triangle_position(start), (row, 0));
            assert_eq!(triangle_position(start + row), (row, row));
        }
    }

    #[test]
    fn recipe_display() {
        let d = descriptor(id(26771)).unwrap();
        assert_eq!(d.recipe.unwrap().to_string(), "x·F*·S^2");
    }
}
