//! Independent numeric ground truth for the closed forms.
//!
//! * bisection on the monotone feasibility predicate
//!   `b̲(d) <= F(b̄(d))`, whose least solution is the Chebyshev distance for
//!   every continuous t-norm (including the minimum),
//! * brute-force grid search over candidate second members on tiny systems,
//! * brute-force scans of the two scalar inequalities behind `sigma_gg` and
//!   `sigma_l`,
//! * seeded random instance generators.
//!
//! Nothing here calls the closed-form kernels.
//!
//! Randomness uses `ChaCha8Rng::seed_from_u64`, so every instance is a pure
//! function of `(n, m, kind, seed, mode)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{TNormKind, UnitValue};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::system::{apply_f_into, max_t_compose, SystemInstance, UnitMatrix, UnitVector};

/// Largest row count accepted by [`delta_by_grid`].
pub const GRID_MAX_ROWS: usize = 3;
/// Finest step accepted by [`delta_by_grid`].
pub const GRID_MIN_STEP: f64 = 1e-2;
/// Fixed-point tolerance used to decide grid membership in the consistent set.
pub const GRID_MEMBERSHIP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub bisection_tolerance: f64,
    /// Step of the candidate second-member grid.
    pub grid_step: f64,
    /// Step of the scalar `delta` scans.
    pub scan_step: f64,
    pub max_iterations: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            bisection_tolerance: 1e-12,
            grid_step: 1e-2,
            scan_step: 1e-4,
            max_iterations: 64,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be > 0, got {v}")))
            }
        };
        positive("bisection_tolerance", self.bisection_tolerance)?;
        positive("grid_step", self.grid_step)?;
        positive("scan_step", self.scan_step)?;
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

/// `b̲(d) <= F(b̄(d))` componentwise, evaluated without tolerance.
pub fn feasible(inst: &SystemInstance, delta: f64) -> bool {
    let shifted = shifted_image(inst, delta);
    inst.rhs().iter().zip(shifted).all(|(b, f)| (b - delta).max(0.0) <= f)
}

/// Row `i` of the feasibility predicate.
pub fn feasible_row(inst: &SystemInstance, i: usize, delta: f64) -> bool {
    let shifted = shifted_image(inst, delta);
    (inst.rhs().get(i).get() - delta).max(0.0) <= shifted[i]
}

fn shifted_image(inst: &SystemInstance, delta: f64) -> Vec<f64> {
    let upper: Vec<f64> = inst.rhs().iter().map(|b| (b + delta).min(1.0)).collect();
    let mut beta = vec![0.0; inst.cols()];
    let mut out = vec![0.0; inst.rows()];
    apply_f_into(inst.matrix(), inst.kind(), &upper, &mut beta, &mut out);
    out
}

/// Least `d` in `[0, 1]` with `pred(d)`, for a predicate that is monotone
/// (false then true) and holds at 1. Returns the upper bracket.
fn bisect_least(cfg: &OracleConfig, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..cfg.max_iterations {
        if hi - lo <= cfg.bisection_tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Chebyshev distance as the least `d` with `b̲(d) <= F(b̄(d))`.
/// Works for every t-norm kind.
pub fn delta_by_bisection(inst: &SystemInstance, cfg: &OracleConfig) -> Result<UnitValue> {
    cfg.validate()?;
    Ok(UnitValue::saturating(bisect_least(cfg, |d| feasible(inst, d))))
}

/// Per-row least `d` with `b̲(d)_i <= F(b̄(d))_i`; their maximum equals
/// [`delta_by_bisection`] up to the tolerance.
pub fn row_deltas_by_bisection(inst: &SystemInstance, cfg: &OracleConfig) -> Result<UnitVector> {
    cfg.validate()?;
    let exec = Execution::auto(inst.rows() * inst.rows() * inst.cols() * cfg.max_iterations);
    let rows = exec.map_indices(inst.rows(), |i| bisect_least(cfg, |d| feasible_row(inst, i, d)));
    Ok(UnitVector::from_raw(rows))
}

fn grid_levels(step: f64) -> Vec<f64> {
    let count = (1.0 / step - 1e-9).ceil() as usize;
    (0..=count).map(|k| (k as f64 * step).min(1.0)).collect()
}

fn check_grid_guard(inst: &SystemInstance, cfg: &OracleConfig) -> Result<()> {
    cfg.validate()?;
    if inst.rows() > GRID_MAX_ROWS || cfg.grid_step < GRID_MIN_STEP - 1e-15 {
        return Err(Error::InstanceTooLarge {
            rows: inst.rows(),
            step: cfg.grid_step,
            max_rows: GRID_MAX_ROWS,
            min_step: GRID_MIN_STEP,
        });
    }
    Ok(())
}

/// Visits the projection `F(c)` of every grid point `c` in
/// `{0, step, .., 1}^n`, keeping those verified to be fixed points of `F`
/// (within [`GRID_MEMBERSHIP_TOLERANCE`]). Work is split by first coordinate.
/// `F` of the grid point just above `b̄(delta)` is within one step of the
/// distance.
fn scan_grid<T, F>(inst: &SystemInstance, step: f64, exec: Execution, visit: F) -> Vec<T>
where
    T: Send + Default,
    F: Fn(&mut T, &[f64]) + Sync + Send,
{
    let levels = grid_levels(step);
    let n = inst.rows();
    exec.map_indices(levels.len(), |first| {
        let mut acc = T::default();
        let mut idx = vec![0usize; n];
        idx[0] = first;
        let mut c = vec![0.0; n];
        let mut beta = vec![0.0; inst.cols()];
        let mut fc = vec![0.0; n];
        let mut ffc = vec![0.0; n];
        loop {
            for (slot, &k) in c.iter_mut().zip(&idx) {
                *slot = levels[k];
            }
            apply_f_into(inst.matrix(), inst.kind(), &c, &mut beta, &mut fc);
            apply_f_into(inst.matrix(), inst.kind(), &fc, &mut beta, &mut ffc);
            let gap = fc.iter().zip(&ffc).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if gap <= GRID_MEMBERSHIP_TOLERANCE {
                visit(&mut acc, &fc);
            }
            // odometer over coordinates 1..n
            let mut pos = 1;
            while pos < n {
                idx[pos] += 1;
                if idx[pos] < levels.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos >= n {
                break;
            }
        }
        acc
    })
}

struct MinDistance(f64);

impl Default for MinDistance {
    fn default() -> Self {
        MinDistance(f64::INFINITY)
    }
}

/// Brute-force Chebyshev distance over the consistent second members
/// `F(c)`, `c` on the grid. An upper bound on the true distance, within one
/// grid step of it.
pub fn delta_by_grid(inst: &SystemInstance, cfg: &OracleConfig) -> Result<UnitValue> {
    delta_by_grid_with(inst, cfg, Execution::default())
}

pub fn delta_by_grid_with(inst: &SystemInstance, cfg: &OracleConfig, exec: Execution) -> Result<UnitValue> {
    check_grid_guard(inst, cfg)?;
    let b = inst.rhs();
    let partial = scan_grid(inst, cfg.grid_step, exec, |best: &mut MinDistance, c: &[f64]| {
        let d = b.iter().zip(c).map(|(bi, ci)| (bi - ci).abs()).fold(0.0, f64::max);
        best.0 = best.0.min(d);
    });
    // the zero vector is always a member, so the minimum is finite
    let best = partial.into_iter().map(|m| m.0).fold(f64::INFINITY, f64::min);
    Ok(UnitValue::saturating(best))
}

/// Consistent second members `F(c)`, `c` on the grid, with
/// `‖b - F(c)‖∞ <= radius`. May contain duplicates.
pub fn grid_members_within(inst: &SystemInstance, radius: f64, cfg: &OracleConfig) -> Result<Vec<UnitVector>> {
    check_grid_guard(inst, cfg)?;
    let b = inst.rhs();
    let partial = scan_grid(inst, cfg.grid_step, Execution::default(), |acc: &mut Vec<UnitVector>, c: &[f64]| {
        let d = b.iter().zip(c).map(|(bi, ci)| (bi - ci).abs()).fold(0.0, f64::max);
        if d <= radius {
            acc.push(UnitVector::from_raw(c.iter().copied()));
        }
    });
    Ok(partial.into_iter().flatten().collect())
}

fn goguen(y: f64, z: f64) -> f64 {
    if y <= z {
        1.0
    } else {
        z / y
    }
}

fn lukasiewicz_implication(y: f64, z: f64) -> f64 {
    (1.0 - y + z).min(1.0)
}

/// `(x - d)+ <= u * (y ->GG min(z + d, 1))`
pub fn product_row_inequality(u: f64, x: f64, y: f64, z: f64, delta: f64) -> bool {
    (x - delta).max(0.0) <= u * goguen(y, (z + delta).min(1.0))
}

/// `(x - d)+ <= max(0, (y ->L min(z + d, 1)) - u)`
pub fn lukasiewicz_row_inequality(u: f64, x: f64, y: f64, z: f64, delta: f64) -> bool {
    (x - delta).max(0.0) <= (lukasiewicz_implication(y, (z + delta).min(1.0)) - u).max(0.0)
}

fn scan_least(step: f64, pred: impl Fn(f64) -> bool) -> f64 {
    let count = (1.0 / step - 1e-9).ceil() as usize;
    (0..=count)
        .map(|k| (k as f64 * step).min(1.0))
        .find(|&d| pred(d))
        .unwrap_or(1.0)
}

/// First grid `d` satisfying the product row inequality.
pub fn scan_sigma_gg(u: f64, x: f64, y: f64, z: f64, step: f64) -> f64 {
    scan_least(step, |d| product_row_inequality(u, x, y, z, d))
}

/// First grid `d` satisfying the Lukasiewicz row inequality.
pub fn scan_sigma_l(u: f64, x: f64, y: f64, z: f64, step: f64) -> f64 {
    scan_least(step, |d| lukasiewicz_row_inequality(u, x, y, z, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceMode {
    /// `A` and `b` uniform.
    Arbitrary,
    /// `A` and `x` uniform, `b = A □ x`.
    Consistent,
}

pub fn random_instance(n: usize, m: usize, kind: TNormKind, seed: u64, mode: InstanceMode) -> Result<SystemInstance> {
    if n == 0 || m == 0 {
        return Err(Error::Empty("matrix"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |len: usize| -> Vec<UnitValue> { (0..len).map(|_| UnitValue::saturating(rng.gen::<f64>())).collect() };
    let a = UnitMatrix::new(n, m, draw(n * m))?;
    let b = match mode {
        InstanceMode::Arbitrary => UnitVector::new(draw(n))?,
        InstanceMode::Consistent => {
            let x = UnitVector::new(draw(m))?;
            max_t_compose(kind, &a, &x)?
        }
    };
    SystemInstance::new(a, b, kind)
}

/// `count` instances with `n, m` drawn uniformly from `1..=max_dim`; instance
/// `k` is generated from seed `seed + k`.
pub fn random_batch(
    count: usize,
    max_dim: usize,
    kind: TNormKind,
    seed: u64,
    mode: InstanceMode,
) -> Result<Vec<SystemInstance>> {
    if max_dim == 0 {
        return Err(Error::Empty("matrix"));
    }
    (0..count as u64)
        .map(|k| {
            let mut dims = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k) ^ 0x9e37_79b9_7f4a_7c15);
            let n = dims.gen_range(1..=max_dim);
            let m = dims.gen_range(1..=max_dim);
            random_instance(n, m, kind, seed.wrapping_add(k), mode)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pedrycz(kind: TNormKind) -> SystemInstance {
        let a = UnitMatrix::from_rows(&[
            [1.0, 0.4, 0.5, 0.7],
            [0.7, 0.5, 0.3, 0.5],
            [0.2, 1.0, 1.0, 0.6],
            [0.4, 0.5, 0.5, 0.8],
        ])
        .unwrap();
        SystemInstance::new(a, UnitVector::from_slice(&[0.4, 1.0, 0.2, 0.0]).unwrap(), kind).unwrap()
    }

    fn one_by_one(a: f64, b: f64, kind: TNormKind) -> SystemInstance {
        SystemInstance::new(
            UnitMatrix::from_rows(&[[a]]).unwrap(),
            UnitVector::from_slice(&[b]).unwrap(),
            kind,
        )
        .unwrap()
    }

    #[test]
    fn bisection_reproduces_worked_examples() {
        let cfg = OracleConfig::default();
        let d = delta_by_bisection(&pedrycz(TNormKind::Product), &cfg).unwrap();
        assert!((d.get() - 0.42).abs() <= 0.005);
        let d = delta_by_bisection(&pedrycz(TNormKind::Lukasiewicz), &cfg).unwrap();
        assert!((d.get() - 0.45).abs() <= 0.005);
    }

    #[test]
    fn bisection_is_zero_on_constructed_consistent_instances() {
        let cfg = OracleConfig::default();
        for kind in TNormKind::ALL {
            let inst = random_instance(4, 4, kind, 7, InstanceMode::Consistent).unwrap();
            assert!(delta_by_bisection(&inst, &cfg).unwrap().get() <= cfg.bisection_tolerance);
        }
    }

    #[test]
    fn row_bisection_max_matches_global() {
        let cfg = OracleConfig::default();
        for kind in TNormKind::ALL {
            let inst = pedrycz(kind);
            let rows = row_deltas_by_bisection(&inst, &cfg).unwrap();
            let global = delta_by_bisection(&inst, &cfg).unwrap();
            assert!((rows.max().get() - global.get()).abs() <= 1e-11);
        }
    }

    #[test]
    fn grid_on_scalar_instances() {
        let cfg = OracleConfig::default();
        let d = delta_by_grid(&one_by_one(0.5, 0.8, TNormKind::Product), &cfg).unwrap();
        assert!((d.get() - 0.3).abs() <= 1e-12);
        for kind in TNormKind::ALL {
            let d = delta_by_grid(&one_by_one(1.0, 0.8, kind), &cfg).unwrap();
            assert!(d.get() <= 1e-12, "{kind}: {d}");
        }
    }

    #[test]
    fn grid_on_consistency_example() {
        let a = UnitMatrix::from_rows(&[[0.31, 0.49, 0.76], [0.34, 0.9, 0.15], [0.94, 0.47, 0.05]]).unwrap();
        let b = UnitVector::from_slice(&[0.73, 0.84, 0.61]).unwrap();
        let inst = SystemInstance::new(a, b, TNormKind::Product).unwrap();
        let cfg = OracleConfig::default();
        assert!(delta_by_grid(&inst, &cfg).unwrap().get() <= 3.0 * cfg.grid_step);
    }

    #[test]
    fn grid_guard() {
        let cfg = OracleConfig::default();
        assert!(matches!(
            delta_by_grid(&pedrycz(TNormKind::Product), &cfg),
            Err(Error::InstanceTooLarge { rows: 4, .. })
        ));
        let fine = OracleConfig { grid_step: 1e-3, ..cfg };
        assert!(delta_by_grid(&one_by_one(0.5, 0.5, TNormKind::Product), &fine).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = OracleConfig { max_iterations: 0, ..OracleConfig::default() };
        assert!(delta_by_bisection(&pedrycz(TNormKind::Product), &bad).is_err());
        let bad = OracleConfig { grid_step: 0.0, ..OracleConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_instance(3, 3, TNormKind::Product, 42, InstanceMode::Arbitrary).unwrap();
        let b = random_instance(3, 3, TNormKind::Product, 42, InstanceMode::Arbitrary).unwrap();
        assert_eq!(a, b);
        let c = random_instance(3, 3, TNormKind::Product, 43, InstanceMode::Arbitrary).unwrap();
        assert_ne!(a, c);
        let consistent = random_instance(3, 3, TNormKind::Product, 42, InstanceMode::Consistent).unwrap();
        assert!(consistent.check_consistency(1e-9).unwrap().consistent);
        assert_eq!(
            random_batch(5, 4, TNormKind::Lukasiewicz, 9, InstanceMode::Arbitrary).unwrap(),
            random_batch(5, 4, TNormKind::Lukasiewicz, 9, InstanceMode::Arbitrary).unwrap()
        );
    }

    #[test]
    fn scalar_scans_hit_known_points() {
        assert!((scan_sigma_gg(0.2, 0.4, 0.3, 0.6, 1e-4) - 0.2).abs() <= 1e-4);
        assert_eq!(scan_sigma_gg(0.5, 0.4, 0.3, 0.6, 1e-4), 0.0);
        assert!((scan_sigma_l(0.6, 0.4, 0.6, 0.3, 1e-4) - 0.15).abs() <= 1e-4 + 1e-12);
        assert!((scan_sigma_l(0.9, 0.8, 0.5, 0.2, 1e-4) - 0.7).abs() <= 1e-4 + 1e-12);
    }
}
