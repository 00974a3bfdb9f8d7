//! Dense unit matrices and vectors, max-T / min-I compositions, the
//! potential greatest solution and the consistency operator `F`.
//!
//! Conventions: `A` is `n x m`, the unknown `x` has `m` entries and the
//! second member `b` has `n` entries.

use serde::Serialize;

use crate::algebra::{positive, TNormKind, UnitValue};
use crate::error::{Error, Result};

/// Default tolerance for deciding consistency from the composition residual.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Row-major dense matrix with entries in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UnitValue>,
}

impl UnitMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<UnitValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("matrix"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix entry count",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(UnitMatrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(|r| r.as_ref().len()).ok_or(Error::Empty("matrix"))?;
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    what: "row length",
                    expected: m,
                    found: row.len(),
                });
            }
            for &v in row {
                data.push(UnitValue::new(v)?);
            }
        }
        UnitMatrix::new(n, m, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> UnitValue {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j].get()
    }

    pub fn row(&self, i: usize) -> &[UnitValue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[UnitValue] {
        &self.data
    }

    /// Logical transpose; no data is copied.
    pub fn t(&self) -> Transposed<'_> {
        Transposed(self)
    }
}

/// Index-swapped view of a [`UnitMatrix`].
#[derive(Clone, Copy, Debug)]
pub struct Transposed<'a>(&'a UnitMatrix);

impl Transposed<'_> {
    pub fn rows(&self) -> usize {
        self.0.cols
    }

    pub fn cols(&self) -> usize {
        self.0.rows
    }

    pub fn get(&self, i: usize, j: usize) -> UnitValue {
        self.0.get(j, i)
    }
}

/// Column vector with entries in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct UnitVector(Vec<UnitValue>);

impl UnitVector {
    pub fn new(entries: Vec<UnitValue>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector"));
        }
        Ok(UnitVector(entries))
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let entries = values.iter().map(|&v| UnitValue::new(v)).collect::<Result<Vec<_>>>()?;
        UnitVector::new(entries)
    }

    pub fn filled(len: usize, value: UnitValue) -> Result<Self> {
        UnitVector::new(vec![value; len])
    }

    /// Wraps raw values already known to be in `[0, 1]` up to rounding.
    pub(crate) fn from_raw(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<UnitValue> = values.into_iter().map(UnitValue::saturating).collect();
        debug_assert!(!v.is_empty());
        UnitVector(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> UnitValue {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[UnitValue] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|v| v.get()).collect()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.0.iter().map(|v| v.get())
    }

    /// Largest entry.
    pub fn max(&self) -> UnitValue {
        self.0.iter().copied().max().unwrap_or(UnitValue::ZERO)
    }

    /// `[(b_i - delta)+]`
    pub fn shifted_down(&self, delta: UnitValue) -> UnitVector {
        UnitVector::from_raw(self.iter().map(|b| positive(b - delta.get())))
    }

    /// `[min(b_i + delta, 1)]`
    pub fn shifted_up(&self, delta: UnitValue) -> UnitVector {
        UnitVector::from_raw(self.iter().map(|b| (b + delta.get()).min(1.0)))
    }

    /// Chebyshev (sup) distance `max_i |a_i - b_i|`.
    pub fn distance(&self, other: &UnitVector) -> Result<f64> {
        check_len("vector length", self.len(), other.len())?;
        Ok(self.iter().zip(other.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// Componentwise `self <= other + tol`.
    pub fn le_within(&self, other: &UnitVector, tol: f64) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| a <= b + tol)
    }
}

impl std::ops::Index<usize> for UnitVector {
    type Output = UnitValue;

    fn index(&self, i: usize) -> &UnitValue {
        &self.0[i]
    }
}

fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { what, expected, found })
    }
}

/// A system `A □ x = b` of max-T equations.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemInstance {
    a: UnitMatrix,
    b: UnitVector,
    kind: TNormKind,
}

impl SystemInstance {
    pub fn new(a: UnitMatrix, b: UnitVector, kind: TNormKind) -> Result<Self> {
        check_len("second member length vs matrix rows", a.rows(), b.len())?;
        Ok(SystemInstance { a, b, kind })
    }

    pub fn matrix(&self) -> &UnitMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &UnitVector {
        &self.b
    }

    pub fn kind(&self) -> TNormKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// Same matrix and t-norm, different second member.
    pub fn with_rhs(&self, b: UnitVector) -> Result<SystemInstance> {
        SystemInstance::new(self.a.clone(), b, self.kind)
    }

    pub fn with_kind(&self, kind: TNormKind) -> SystemInstance {
        SystemInstance { kind, ..self.clone() }
    }

    pub fn greatest_potential_solution(&self) -> UnitVector {
        greatest_potential_solution(self)
    }

    pub fn check_consistency(&self, tol: f64) -> Result<ConsistencyVerdict> {
        check_consistency(self, tol)
    }
}

/// `(A □_T^max x)_i = max_j T(a_ij, x_j)`
pub fn max_t_compose(kind: TNormKind, a: &UnitMatrix, x: &UnitVector) -> Result<UnitVector> {
    check_len("matrix columns vs vector length", a.cols(), x.len())?;
    Ok(max_t_compose_unchecked(kind, a, x))
}

fn max_t_compose_unchecked(kind: TNormKind, a: &UnitMatrix, x: &UnitVector) -> UnitVector {
    UnitVector::from_raw((0..a.rows()).map(|i| {
        a.row(i)
            .iter()
            .zip(x.iter())
            .map(|(aij, xj)| kind.t(aij.get(), xj))
            .fold(0.0, f64::max)
    }))
}

/// `(Aᵗ □_I^min c)_j = min_k I_T(a_kj, c_k)`, taking the transpose as a view.
pub fn min_impl_compose(kind: TNormKind, at: Transposed<'_>, c: &UnitVector) -> Result<UnitVector> {
    check_len("transposed matrix columns vs vector length", at.cols(), c.len())?;
    Ok(min_impl_compose_unchecked(kind, at.0, c))
}

fn min_impl_compose_unchecked(kind: TNormKind, a: &UnitMatrix, c: &UnitVector) -> UnitVector {
    UnitVector::from_raw((0..a.cols()).map(|j| {
        (0..a.rows())
            .map(|k| kind.implies(a.at(k, j), c.get(k).get()))
            .fold(1.0, f64::min)
    }))
}

/// `e = Aᵗ □_I^min b`; the greatest solution whenever the system is consistent.
pub fn greatest_potential_solution(inst: &SystemInstance) -> UnitVector {
    min_impl_compose_unchecked(inst.kind, &inst.a, &inst.b)
}

/// `F(c) = A □_T^max (Aᵗ □_I^min c)`.
///
/// `F(c) <= c`, `F` is idempotent and increasing, and `F(c) = c` exactly when
/// `A □ x = c` has a solution.
pub fn apply_f(a: &UnitMatrix, kind: TNormKind, c: &UnitVector) -> Result<UnitVector> {
    check_len("matrix rows vs vector length", a.rows(), c.len())?;
    let e = min_impl_compose_unchecked(kind, a, c);
    Ok(max_t_compose_unchecked(kind, a, &e))
}

/// Raw-slice variant of `F` for hot loops: writes `F(c)` into `out` using
/// `beta` (length `m`) as scratch.
pub(crate) fn apply_f_into(a: &UnitMatrix, kind: TNormKind, c: &[f64], beta: &mut [f64], out: &mut [f64]) {
    for (j, slot) in beta.iter_mut().enumerate() {
        *slot = (0..a.rows()).map(|k| kind.implies(a.at(k, j), c[k])).fold(1.0, f64::min);
    }
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = a
            .row(i)
            .iter()
            .zip(beta.iter())
            .map(|(aij, &bj)| kind.t(aij.get(), bj))
            .fold(0.0, f64::max);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyVerdict {
    pub consistent: bool,
    /// Potential greatest solution `Aᵗ □_I^min b`.
    pub e: UnitVector,
    /// `‖A □ e - b‖∞`
    pub residual: f64,
}

pub fn check_consistency(inst: &SystemInstance, tol: f64) -> Result<ConsistencyVerdict> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidConfig(format!("tolerance must be >= 0, got {tol}")));
    }
    let e = greatest_potential_solution(inst);
    let image = max_t_compose_unchecked(inst.kind, &inst.a, &e);
    let residual = image.distance(&inst.b)?;
    Ok(ConsistencyVerdict {
        consistent: residual <= tol,
        e,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consistency_example() -> UnitMatrix {
        UnitMatrix::from_rows(&[[0.31, 0.49, 0.76], [0.34, 0.9, 0.15], [0.94, 0.47, 0.05]]).unwrap()
    }

    fn vec(v: &[f64]) -> UnitVector {
        UnitVector::from_slice(v).unwrap()
    }

    fn assert_close(got: &UnitVector, want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {:?}, want {:?}", got, want);
        }
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert_eq!(UnitMatrix::from_rows::<[f64; 0]>(&[]), Err(Error::Empty("matrix")));
        assert!(matches!(
            UnitMatrix::from_rows(&[vec![0.1, 0.2], vec![0.3]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(UnitVector::from_slice(&[]), Err(Error::Empty("vector")));
        assert!(UnitMatrix::from_rows(&[[0.5, 1.2]]).is_err());
    }

    #[test]
    fn instance_requires_matching_rows() {
        let a = consistency_example();
        let err = SystemInstance::new(a, vec(&[0.1, 0.2]), TNormKind::Product).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 2, .. }));
    }

    #[test]
    fn max_t_compose_examples() {
        let a = consistency_example();
        let b = [0.73, 0.84, 0.61];
        let got = max_t_compose(TNormKind::Product, &a, &vec(&[0.65, 0.93, 0.96])).unwrap();
        assert_close(&got, &b, 0.005);
        let got = max_t_compose(TNormKind::Lukasiewicz, &a, &vec(&[0.67, 0.94, 0.97])).unwrap();
        assert_close(&got, &b, 0.005);
        for kind in TNormKind::ALL {
            let got = max_t_compose(kind, &a, &vec(&[0.0; 3])).unwrap();
            assert_close(&got, &[0.0; 3], 0.0);
        }
        assert!(max_t_compose(TNormKind::Product, &a, &vec(&[0.1, 0.2])).is_err());
    }

    #[test]
    fn min_impl_compose_examples() {
        let a = consistency_example();
        let b = vec(&[0.73, 0.84, 0.61]);
        let e = min_impl_compose(TNormKind::Product, a.t(), &b).unwrap();
        assert_close(&e, &[0.65, 0.93, 0.96], 0.005);
        let e = min_impl_compose(TNormKind::Lukasiewicz, a.t(), &b).unwrap();
        assert_close(&e, &[0.67, 0.94, 0.97], 0.005);
        for kind in TNormKind::ALL {
            let e = min_impl_compose(kind, a.t(), &vec(&[1.0; 3])).unwrap();
            assert_close(&e, &[1.0; 3], 0.0);
        }
        assert!(min_impl_compose(TNormKind::Product, a.t(), &vec(&[1.0])).is_err());
    }

    #[test]
    fn transposed_view_swaps_indices() {
        let a = UnitMatrix::from_rows(&[[0.1, 0.2, 0.3], [0.4, 0.5, 0.6]]).unwrap();
        let at = a.t();
        assert_eq!((at.rows(), at.cols()), (3, 2));
        assert_eq!(at.get(2, 1).get(), 0.6);
    }

    #[test]
    fn potential_solution_of_example() {
        let a = consistency_example();
        let b = vec(&[0.73, 0.84, 0.61]);
        let inst = SystemInstance::new(a.clone(), b.clone(), TNormKind::Product).unwrap();
        assert_close(&inst.greatest_potential_solution(), &[0.65, 0.93, 0.96], 0.005);
        let inst = inst.with_kind(TNormKind::Lukasiewicz);
        assert_close(&inst.greatest_potential_solution(), &[0.67, 0.94, 0.97], 0.005);
        let ones = SystemInstance::new(a, vec(&[1.0; 3]), TNormKind::Product).unwrap();
        assert_close(&ones.greatest_potential_solution(), &[1.0; 3], 0.0);
    }

    #[test]
    fn f_fixes_the_continued_example() {
        let a = consistency_example();
        let c = vec(&[0.74, 0.66, 0.62]);
        for kind in [TNormKind::Product, TNormKind::Lukasiewicz] {
            let fc = apply_f(&a, kind, &c).unwrap();
            assert_close(&fc, &[0.74, 0.66, 0.62], 0.01);
        }
        for kind in TNormKind::ALL {
            let fc = apply_f(&a, kind, &vec(&[0.0; 3])).unwrap();
            assert_close(&fc, &[0.0; 3], 0.0);
        }
    }

    #[test]
    fn consistency_of_examples() {
        let inst =
            SystemInstance::new(consistency_example(), vec(&[0.73, 0.84, 0.61]), TNormKind::Product).unwrap();
        assert!(inst.check_consistency(1e-2).unwrap().consistent);
        assert!(inst.with_kind(TNormKind::Lukasiewicz).check_consistency(1e-2).unwrap().consistent);

        let pedrycz = UnitMatrix::from_rows(&[
            [1.0, 0.4, 0.5, 0.7],
            [0.7, 0.5, 0.3, 0.5],
            [0.2, 1.0, 1.0, 0.6],
            [0.4, 0.5, 0.5, 0.8],
        ])
        .unwrap();
        let inst = SystemInstance::new(pedrycz, vec(&[0.4, 1.0, 0.2, 0.0]), TNormKind::Product).unwrap();
        let verdict = inst.check_consistency(1e-9).unwrap();
        assert!(!verdict.consistent);
        assert!(verdict.residual > 0.1);
    }

    #[test]
    fn negative_tolerance_is_rejected() {
        let inst = SystemInstance::new(consistency_example(), vec(&[0.5; 3]), TNormKind::Minimum).unwrap();
        assert!(matches!(inst.check_consistency(-1.0), Err(Error::InvalidConfig(_))));
        assert!(inst.check_consistency(f64::NAN).is_err());
    }

    #[test]
    fn forward_composed_rhs_is_consistent() {
        let a = consistency_example();
        let x = vec(&[0.2, 0.8, 0.55]);
        for kind in TNormKind::ALL {
            let b = max_t_compose(kind, &a, &x).unwrap();
            let inst = SystemInstance::new(a.clone(), b, kind).unwrap();
            let verdict = inst.check_consistency(1e-12).unwrap();
            assert!(verdict.consistent, "{kind}: residual {}", verdict.residual);
            assert!(x.le_within(&verdict.e, 1e-12));
        }
    }
}
