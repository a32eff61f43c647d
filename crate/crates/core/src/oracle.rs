//! Brute-force path counting by dynamic programming over the step rules.
//!
//! Nothing here uses a generating function. Counts come only from the allowed
//! steps `E = (1,0)`, `N = (0,1)` and `D = (1,1)`, so the formulas in
//! [`crate::kernel`] can be checked against an independent computation.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("diagonal-avoiding counts need the lower-triangle domain and n >= k >= 0, got ({n}, {k})")]
    Domain { n: i64, k: i64 },
}

/// Where a diagonal step `D` may start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalPolicy {
    Never,
    /// From points with `y > x`.
    StrictlyAbove,
    /// From points with `y >= x`.
    AboveOrOn,
    /// From points with `y < x`.
    StrictlyBelow,
    /// From points with `y <= x`.
    BelowOrOn,
    /// Whenever the target point is inside the domain.
    EverywhereInDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    FullQuadrant,
    /// `0 <= y <= x`
    LowerTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionFilter {
    None,
    /// Paths may meet `y = x` only at their two endpoints.
    AvoidDiagonalInterior,
}

/// Step rules of a directed lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeRule {
    pub diagonal: DiagonalPolicy,
    pub domain: Domain,
    pub filter: RegionFilter,
}

impl LatticeRule {
    /// Catalan lattice: E and N steps, `y <= x`.
    pub const CATALAN: LatticeRule = LatticeRule::new(DiagonalPolicy::Never, Domain::LowerTriangle);
    /// Schroeder lattice: E, N and D steps, `y <= x`.
    pub const SCHROEDER: LatticeRule =
        LatticeRule::new(DiagonalPolicy::EverywhereInDomain, Domain::LowerTriangle);
    /// Catalan-Schroeder lattice with diagonal steps allowed on `y = x`.
    pub const CS: LatticeRule = LatticeRule::new(DiagonalPolicy::AboveOrOn, Domain::FullQuadrant);
    /// Catalan-Schroeder lattice with diagonal steps forbidden on `y = x`.
    pub const CS_STAR: LatticeRule = LatticeRule::new(DiagonalPolicy::StrictlyAbove, Domain::FullQuadrant);
    /// Plain E/N paths in the quadrant; counts are binomial coefficients.
    pub const QUADRANT: LatticeRule = LatticeRule::new(DiagonalPolicy::Never, Domain::FullQuadrant);

    pub const fn new(diagonal: DiagonalPolicy, domain: Domain) -> Self {
        LatticeRule {
            diagonal,
            domain,
            filter: RegionFilter::None,
        }
    }

    pub const fn with_filter(self, filter: RegionFilter) -> Self {
        LatticeRule { filter, ..self }
    }

    /// The same lattice reflected in `y = x` (only the D region moves; the
    /// domain must be the full quadrant for this to be a true reflection).
    pub const fn mirrored(self) -> Self {
        let diagonal = match self.diagonal {
            DiagonalPolicy::StrictlyAbove => DiagonalPolicy::StrictlyBelow,
            DiagonalPolicy::AboveOrOn => DiagonalPolicy::BelowOrOn,
            DiagonalPolicy::StrictlyBelow => DiagonalPolicy::StrictlyAbove,
            DiagonalPolicy::BelowOrOn => DiagonalPolicy::AboveOrOn,
            other => other,
        };
        LatticeRule { diagonal, ..self }
    }

    pub fn in_domain(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && match self.domain {
                Domain::FullQuadrant => true,
                Domain::LowerTriangle => y <= x,
            }
    }

    /// Whether `D` may be taken from `(x, y)`, ignoring the region filter.
    pub fn diagonal_step_allowed(&self, x: i64, y: i64) -> bool {
        match self.diagonal {
            DiagonalPolicy::Never => false,
            DiagonalPolicy::StrictlyAbove => y > x,
            DiagonalPolicy::AboveOrOn => y >= x,
            DiagonalPolicy::StrictlyBelow => y < x,
            DiagonalPolicy::BelowOrOn => y <= x,
            DiagonalPolicy::EverywhereInDomain => self.in_domain(x + 1, y + 1),
        }
    }

    /// Full DP table over `0..=max_x` by `0..=max_y`.
    pub fn grid_counts(&self, max_x: usize, max_y: usize) -> GridCounts {
        GridCounts::compute(*self, max_x, max_y)
    }

    /// Number of admissible paths to `(x, y)`; zero outside the domain.
    pub fn count(&self, x: i64, y: i64) -> BigUint {
        if !self.in_domain(x, y) {
            return BigUint::zero();
        }
        self.grid_counts(x as usize, y as usize).get(x, y).clone()
    }

    /// Paths to `(n, k)` that touch `y = x` only at their endpoints.
    pub fn count_avoiding_diagonal(&self, n: i64, k: i64) -> Result<BigUint, OracleError> {
        if self.domain != Domain::LowerTriangle || k < 0 || k > n {
            return Err(OracleError::Domain { n, k });
        }
        Ok(self
            .with_filter(RegionFilter::AvoidDiagonalInterior)
            .count(n, k))
    }
}

/// Exact path counts from the origin to every point of a rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCounts {
    rule: LatticeRule,
    width: usize,
    height: usize,
    // column-major: counts[x * height + y]
    counts: Vec<BigUint>,
}

impl GridCounts {
    fn compute(rule: LatticeRule, max_x: usize, max_y: usize) -> Self {
        let width = max_x + 1;
        let height = max_y + 1;
        let avoid = rule.filter == RegionFilter::AvoidDiagonalInterior;
        let mut counts = vec![BigUint::zero(); width * height];
        // out[i] is what a state passes on to its successors; a diagonal state
        // under the avoidance filter keeps its arrival count but passes on nothing.
        let mut out = vec![false; width * height];
        for x in 0..width {
            for y in 0..height {
                let (xi, yi) = (x as i64, y as i64);
                if !rule.in_domain(xi, yi) {
                    continue;
                }
                let idx = x * height + y;
                let mut value = if x == 0 && y == 0 { BigUint::one() } else { BigUint::zero() };
                if x > 0 && out[idx - height] {
                    value += &counts[idx - height];
                }
                if y > 0 && out[idx - 1] {
                    value += &counts[idx - 1];
                }
                if x > 0 && y > 0 && out[idx - height - 1] {
                    let (fx, fy) = (xi - 1, yi - 1);
                    // a D step leaving the diagonal runs along it
                    if rule.diagonal_step_allowed(fx, fy) && !(avoid && fx == fy) {
                        value += &counts[idx - height - 1];
                    }
                }
                counts[idx] = value;
                out[idx] = !(avoid && x == y && x > 0);
            }
        }
        GridCounts {
            rule,
            width,
            height,
            counts,
        }
    }

    pub fn rule(&self) -> LatticeRule {
        self.rule
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Count at `(x, y)`; zero for points outside the table or the domain.
    pub fn get(&self, x: i64, y: i64) -> &BigUint {
        static ZERO: BigUint = BigUint::ZERO;
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return &ZERO;
        }
        &self.counts[x as usize * self.height + y as usize]
    }
}
