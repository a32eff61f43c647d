//! The verification suite behind `seqlat verify`: every generating-function
//! identity and formula is checked against the DP oracle, and optionally
//! against OEIS b-files.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::catalog::{self, CatalogError, SequenceDescriptor, SequenceId, SequenceKind};
use crate::kernel::{self, Family, KernelSet, LatticeVariant};
use crate::oeis::{self, OeisClient, OeisError};
use crate::oracle::LatticeRule;

/// Number of b-file terms compared per sequence (fewer if the file is shorter).
pub const OEIS_COMPARE_TERMS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Which generating function to use for A026786.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HalfSplitForm {
    /// `F(x^2) * (1 + x*S(x^2))`
    #[default]
    Dilated,
    /// `F(x) * (1 + x*S(x^2))`
    Undilated,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub ids: Vec<SequenceId>,
    pub max_order: usize,
    pub with_oeis: bool,
    pub a026786_form: HalfSplitForm,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    /// Some b-file could be neither downloaded nor read from the cache.
    pub fetch_failed: bool,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Descriptor for `id`, honoring the A026786 override.
pub fn descriptor_for(id: SequenceId, form: HalfSplitForm) -> Result<SequenceDescriptor, CatalogError> {
    let mut d = catalog::descriptor(id)?;
    if id.number() == 26786 && form == HalfSplitForm::Undilated {
        d.recipe = Some(catalog::undilated_half_split_recipe());
    }
    Ok(d)
}

pub fn run(options: &VerifyOptions, client: Option<&OeisClient>) -> VerifyReport {
    let n = options.max_order;
    let mut report = VerifyReport::default();

    let count = n + 1;
    let mut order = n;
    for &id in &options.ids {
        if let Ok(d) = catalog::descriptor(id) {
            order = order.max(d.required_order(triangle_or_linear_count(&d, count)));
            if options.with_oeis {
                order = order.max(d.required_order(OEIS_COMPARE_TERMS));
            }
        }
    }
    let kernels = KernelSet::new(order);

    report.checks.extend(kernel_checks(&kernels, n));
    report.checks.push(baseline_check(&kernels, n));
    report.checks.push(subdiagonal_check(&kernels, n));
    for variant in [LatticeVariant::Cs, LatticeVariant::CsStar] {
        report.checks.push(point_count_check(&kernels, variant, n));
    }

    let per_id: Vec<(Vec<CheckResult>, bool)> = options
        .ids
        .par_iter()
        .map(|&id| sequence_checks(id, options, &kernels, client))
        .collect();
    for (checks, fetch_failed) in per_id {
        report.checks.extend(checks);
        report.fetch_failed |= fetch_failed;
    }
    report
}

fn triangle_or_linear_count(d: &SequenceDescriptor, count: usize) -> usize {
    match d.kind {
        // rows 0..count-1
        SequenceKind::Triangle => count * (count + 1) / 2,
        SequenceKind::Linear => count,
    }
}

fn kernel_checks(kernels: &KernelSet, n: usize) -> Vec<CheckResult> {
    let c = kernels.catalan().truncate(n);
    let s = kernels.schroeder().truncate(n);
    let zero = |name: &str, residual: crate::TruncatedSeries| {
        CheckResult::new(
            name,
            match residual.valuation() {
                None => Ok(format!("exact through x^{n}")),
                Some(k) => Err(format!("residual nonzero at x^{k}")),
            },
        )
    };
    let f_sum = kernel::f_series_form(n, kernel::FForm::Sum);
    let f_quot = kernel::f_series_form(n, kernel::FForm::Quotient);
    vec![
        zero("x·C² − C + 1 = 0", kernel::catalan_residual(&c)),
        zero("x·S² − (1−x)·S + 1 = 0", kernel::schroeder_residual(&s)),
        CheckResult::new(
            "F: 1/(1−x(C+S+1)) = S/(1−xCS)",
            first_difference(f_sum.coeffs(), f_quot.coeffs()),
        ),
        CheckResult::new(
            "S = C(x/(1−x)²)/(1−x)",
            first_difference(kernel::schroeder_via_catalan(&c).coeffs(), s.coeffs()),
        ),
    ]
}

fn first_difference(a: &[BigInt], b: &[BigInt]) -> Result<String, String> {
    if a.len() != b.len() {
        return Err(format!("lengths differ: {} vs {}", a.len(), b.len()));
    }
    match a.iter().zip(b).position(|(x, y)| x != y) {
        None => Ok(format!("{} coefficients agree", a.len())),
        Some(i) => Err(format!("differ at x^{i}: {} vs {}", a[i], b[i])),
    }
}

fn baseline_check(kernels: &KernelSet, n: usize) -> CheckResult {
    let outcome = (|| {
        let cat = LatticeRule::CATALAN.grid_counts(n, n);
        let sch = LatticeRule::SCHROEDER.grid_counts(n, n);
        let quad = LatticeRule::QUADRANT.grid_counts(n, n);
        for i in 0..=n {
            let ii = i as i64;
            if BigInt::from(cat.get(ii, ii).clone()) != kernels.catalan().coeffs()[i] {
                return Err(format!("Catalan lattice diagonal differs at n={i}"));
            }
            if BigInt::from(sch.get(ii, ii).clone()) != kernels.schroeder().coeffs()[i] {
                return Err(format!("Schroeder lattice diagonal differs at n={i}"));
            }
            for j in 0..=n {
                if *quad.get(ii, j as i64) != binomial((i + j) as u64, i as u64) {
                    return Err(format!("quadrant count differs from binomial at ({i},{j})"));
                }
            }
        }
        Ok(format!("diagonals and binomials through {n}"))
    })();
    CheckResult::new("oracle baselines", outcome)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn subdiagonal_check(kernels: &KernelSet, n: usize) -> CheckResult {
    let outcome = (|| {
        for (family, rule) in [
            (Family::Catalan, LatticeRule::CATALAN),
            (Family::Schroeder, LatticeRule::SCHROEDER),
        ] {
            let all = rule.grid_counts(n, n);
            let avoiding = rule
                .with_filter(crate::oracle::RegionFilter::AvoidDiagonalInterior)
                .grid_counts(n, n);
            for a in 0..=n as i64 {
                for b in 0..=a {
                    let formula = kernels.lattice_count(family, a, b).map_err(|e| e.to_string())?;
                    if formula != BigInt::from(all.get(a, b).clone()) {
                        return Err(format!("{family:?} path count differs at ({a},{b})"));
                    }
                    if a == 0 {
                        continue;
                    }
                    let formula = kernels.subdiagonal_count(family, a, b).map_err(|e| e.to_string())?;
                    if formula != BigInt::from(avoiding.get(a, b).clone()) {
                        return Err(format!("{family:?} subdiagonal count differs at ({a},{b})"));
                    }
                }
            }
        }
        Ok(format!("all 0 ≤ k ≤ n ≤ {n}"))
    })();
    CheckResult::new("triangular lattice formulas vs oracle", outcome)
}

fn point_count_check(kernels: &KernelSet, variant: LatticeVariant, n: usize) -> CheckResult {
    let rule = match variant {
        LatticeVariant::Cs => LatticeRule::CS,
        LatticeVariant::CsStar => LatticeRule::CS_STAR,
    };
    let outcome = (|| {
        let grid = rule.grid_counts(n, n);
        for x in 0..=n {
            for y in 0..=n - x {
                let formula = kernels.point_count(variant, x, y).map_err(|e| e.to_string())?;
                if formula != BigInt::from(grid.get(x as i64, y as i64).clone()) {
                    return Err(format!("differs at ({x},{y})"));
                }
            }
        }
        Ok(format!("all x + y ≤ {n}"))
    })();
    CheckResult::new(format!("point counts vs oracle on {}", variant.name()), outcome)
}

fn sequence_checks(
    id: SequenceId,
    options: &VerifyOptions,
    kernels: &KernelSet,
    client: Option<&OeisClient>,
) -> (Vec<CheckResult>, bool) {
    let d = match descriptor_for(id, options.a026786_form) {
        Ok(d) => d,
        Err(e) => return (vec![CheckResult::new(id.to_string(), Err(e.to_string()))], false),
    };
    let mut checks = Vec::new();
    let count = triangle_or_linear_count(&d, options.max_order + 1);
    let outcome = d
        .terms(kernels, count)
        .map_err(|e| e.to_string())
        .and_then(|gf| {
            first_difference(&gf, &d.oracle_terms(count))
                .map(|_| format!("{count} terms agree"))
                .map_err(|e| format!("{e} (index offset {})", d.lead_offset))
        });
    checks.push(CheckResult::new(format!("{id} generating function vs oracle"), outcome));

    let mut fetch_failed = false;
    if options.with_oeis {
        let outcome = match client {
            None => Err("no OEIS client configured".to_string()),
            Some(client) => match oeis_check(&d, kernels, client) {
                Ok(outcome) => outcome,
                Err(e) => {
                    fetch_failed |= matches!(e, OeisError::FetchFailed { .. });
                    Err(e.to_string())
                }
            },
        };
        checks.push(CheckResult::new(format!("{id} vs OEIS b-file"), outcome));
    }
    (checks, fetch_failed)
}

/// Outer error: the b-file could not be obtained or aligned. Inner result:
/// the comparison outcome.
fn oeis_check(
    d: &SequenceDescriptor,
    kernels: &KernelSet,
    client: &OeisClient,
) -> Result<Result<String, String>, OeisError> {
    let record = client.fetch_bfile(d.id)?;
    let available = match record.first_index() {
        Some(first) if d.lead_offset >= first => {
            record.entries.len().saturating_sub((d.lead_offset - first) as usize)
        }
        _ => 0,
    };
    let count = available.clamp(1, OEIS_COMPARE_TERMS);
    let computed = match d.terms(kernels, count) {
        Ok(terms) => terms,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let diff = oeis::compare(d.id, &computed, &record, d.lead_offset)?;
    Ok(match diff.first_mismatch {
        None => Ok(format!(
            "{} terms match from index {} ({:?})",
            diff.compared, diff.offset_used, record.source
        )),
        Some((index, expected, actual)) => Err(format!(
            "mismatch at index {index}: b-file {expected}, computed {actual}"
        )),
    })
}
