//! Closed-form Chebyshev distance of the second member and the greatest
//! Chebyshev approximation.
//!
//! For each row `i` the distance contribution is
//!
//! ```text
//! delta_i = min_j max_k kernel(a_ij, b_i, a_kj, b_k)
//! ```
//!
//! with `kernel = sigma_gg(a_ij, ..)` for the product t-norm and
//! `kernel = sigma_l(1 - a_ij, ..)` for Lukasiewicz. The distance is the
//! largest `delta_i`, and `F(min(b + delta, 1))` is the greatest consistent
//! second member at that distance.

use serde::Serialize;

use crate::algebra::{sigma_gg_raw, sigma_l_raw, TNormKind, UnitValue};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::system::{apply_f, greatest_potential_solution, SystemInstance, UnitMatrix, UnitVector};

/// How the distance in a report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaMethod {
    ClosedForm,
    Bisection,
}

impl DeltaMethod {
    pub fn label(self) -> &'static str {
        match self {
            DeltaMethod::ClosedForm => "closed-form",
            DeltaMethod::Bisection => "bisection",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebyshevReport {
    /// Chebyshev distance from `b` to the set of consistent second members.
    pub delta: UnitValue,
    pub row_deltas: UnitVector,
    /// `F(b̄(delta))`, the greatest Chebyshev approximation of `b`.
    pub greatest_approx: UnitVector,
    /// Greatest solution of `A □ x = greatest_approx`.
    pub greatest_solution: UnitVector,
    pub kind: TNormKind,
    pub method: DeltaMethod,
}

impl ChebyshevReport {
    /// Re-checks the report against the instance it was computed from.
    pub fn validate(&self, inst: &SystemInstance, tol: f64) -> Result<()> {
        let fail = |msg: String| Err(Error::ReportInvariant(msg));
        if self.row_deltas.len() != inst.rows() || self.greatest_approx.len() != inst.rows() {
            return fail("report vectors do not match the instance".into());
        }
        if self.delta != self.row_deltas.max() {
            return fail(format!("delta {} is not the largest row delta", self.delta));
        }
        let b = inst.rhs();
        let lower = b.shifted_down(self.delta);
        let upper = b.shifted_up(self.delta);
        if !lower.le_within(&self.greatest_approx, tol) || !self.greatest_approx.le_within(&upper, tol) {
            return fail("approximation leaves the [b - delta, b + delta] box".into());
        }
        let gap = (b.distance(&self.greatest_approx)? - self.delta.get()).abs();
        if gap > tol {
            return fail(format!("distance to approximation differs from delta by {gap:e}"));
        }
        let repaired = inst.with_rhs(self.greatest_approx.clone())?;
        let verdict = repaired.check_consistency(tol)?;
        if !verdict.consistent {
            return fail(format!("repaired system has residual {:e}", verdict.residual));
        }
        Ok(())
    }
}

fn require_row(b: &UnitVector, a: &UnitMatrix, i: usize) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            what: "second member length vs matrix rows",
            expected: a.rows(),
            found: b.len(),
        });
    }
    if i >= a.rows() {
        return Err(Error::RowIndex { index: i, rows: a.rows() });
    }
    Ok(())
}

/// Inner `max_k` values for each column `j` of row `i`, in column order.
fn column_values_raw(kind: TNormKind, a: &UnitMatrix, b: &UnitVector, i: usize) -> Result<Vec<f64>> {
    let bi = b.get(i).get();
    let n = a.rows();
    let column = |j: usize, kernel: fn(f64, f64, f64, f64) -> f64, u: f64| {
        (0..n).map(|k| kernel(u, bi, a.at(k, j), b.get(k).get())).fold(0.0, f64::max)
    };
    let values = match kind {
        TNormKind::Product => (0..a.cols()).map(|j| column(j, sigma_gg_raw, a.at(i, j))).collect(),
        TNormKind::Lukasiewicz => (0..a.cols()).map(|j| column(j, sigma_l_raw, 1.0 - a.at(i, j))).collect(),
        TNormKind::Minimum => return Err(Error::UnsupportedKind(kind)),
    };
    Ok(values)
}

/// Per-column diagnostics for row `i`: the values whose minimum is `delta_i`.
pub fn column_values(kind: TNormKind, a: &UnitMatrix, b: &UnitVector, i: usize) -> Result<Vec<UnitValue>> {
    require_row(b, a, i)?;
    Ok(column_values_raw(kind, a, b, i)?.into_iter().map(UnitValue::saturating).collect())
}

fn row_delta_raw(kind: TNormKind, a: &UnitMatrix, b: &UnitVector, i: usize) -> Result<f64> {
    Ok(column_values_raw(kind, a, b, i)?.into_iter().fold(1.0, f64::min))
}

/// `delta_i` for a max-product system.
pub fn row_delta_product(a: &UnitMatrix, b: &UnitVector, i: usize) -> Result<UnitValue> {
    require_row(b, a, i)?;
    row_delta_raw(TNormKind::Product, a, b, i).map(UnitValue::saturating)
}

/// `delta_i` for a max-Lukasiewicz system.
pub fn row_delta_lukasiewicz(a: &UnitMatrix, b: &UnitVector, i: usize) -> Result<UnitValue> {
    require_row(b, a, i)?;
    row_delta_raw(TNormKind::Lukasiewicz, a, b, i).map(UnitValue::saturating)
}

fn closed_form_cost(inst: &SystemInstance) -> usize {
    inst.rows() * inst.rows() * inst.cols()
}

pub fn row_deltas(inst: &SystemInstance) -> Result<UnitVector> {
    row_deltas_with(inst, Execution::auto(closed_form_cost(inst)))
}

pub fn row_deltas_with(inst: &SystemInstance, exec: Execution) -> Result<UnitVector> {
    if inst.kind() == TNormKind::Minimum {
        return Err(Error::UnsupportedKind(TNormKind::Minimum));
    }
    let deltas = exec.map_indices(inst.rows(), |i| row_delta_raw(inst.kind(), inst.matrix(), inst.rhs(), i));
    let deltas = deltas.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(UnitVector::from_raw(deltas))
}

/// Chebyshev distance for product and Lukasiewicz systems.
///
/// The minimum t-norm has no closed form here and yields
/// [`Error::UnsupportedKind`]; use [`crate::oracle::delta_by_bisection`].
pub fn chebyshev_distance(inst: &SystemInstance) -> Result<UnitValue> {
    Ok(row_deltas(inst)?.max())
}

pub fn chebyshev_distance_with(inst: &SystemInstance, exec: Execution) -> Result<UnitValue> {
    Ok(row_deltas_with(inst, exec)?.max())
}

/// Distances for many instances at once, fanned out per instance.
pub fn batch_distances(instances: &[SystemInstance], exec: Execution) -> Vec<Result<UnitValue>> {
    exec.map_slice(instances, |inst| chebyshev_distance_with(inst, Execution::Sequential))
}

pub fn greatest_chebyshev_approximation(inst: &SystemInstance) -> Result<ChebyshevReport> {
    let deltas = row_deltas(inst)?;
    approximation_from_row_deltas(inst, deltas, DeltaMethod::ClosedForm)
}

/// Assembles a report from externally supplied row distances (for instance
/// the bisection oracle, which also covers the minimum t-norm).
pub fn approximation_from_row_deltas(
    inst: &SystemInstance,
    row_deltas: UnitVector,
    method: DeltaMethod,
) -> Result<ChebyshevReport> {
    if row_deltas.len() != inst.rows() {
        return Err(Error::DimensionMismatch {
            what: "row delta count vs matrix rows",
            expected: inst.rows(),
            found: row_deltas.len(),
        });
    }
    let delta = row_deltas.max();
    let upper = inst.rhs().shifted_up(delta);
    let greatest_approx = apply_f(inst.matrix(), inst.kind(), &upper)?;
    let repaired = inst.with_rhs(greatest_approx.clone())?;
    let greatest_solution = greatest_potential_solution(&repaired);
    Ok(ChebyshevReport {
        delta,
        row_deltas,
        greatest_approx,
        greatest_solution,
        kind: inst.kind(),
        method,
    })
}
