//! Real solutions of small square polynomial systems by multistart damped
//! Newton, and real root isolation for univariate polynomials.
//!
//! Multistart is a heuristic: an empty or trivial-only result means no other
//! real solution was found, not that none exists.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Ring};
use crate::system::PolySystem;

/// Environment variable prefix for solver defaults, e.g. `AMBARZUMIAN_STARTS`.
pub const ENV_PREFIX: &str = "AMBARZUMIAN_";

const MAX_BACKTRACKS: usize = 40;
const ESCAPE_RADIUS: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Start box: one `[lo, hi]` per unknown, or a single interval applied to all.
    pub bounds: Vec<[f64; 2]>,
    pub starts: usize,
    pub max_iter: usize,
    pub step_tol: f64,
    pub residual_tol: f64,
    pub dedup_radius: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            bounds: vec![[-10.0, 10.0]],
            starts: 20_000,
            max_iter: 100,
            step_tol: 1e-13,
            residual_tol: 1e-9,
            dedup_radius: 1e-6,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.bounds.is_empty() {
            return bad("bounds must not be empty");
        }
        if self.bounds.iter().any(|[lo, hi]| lo.is_nan() || hi.is_nan() || lo >= hi) {
            return bad("every bound interval must satisfy lo < hi");
        }
        if self.starts == 0 {
            return bad("starts must be at least 1");
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1");
        }
        for (name, v) in [
            ("step_tol", self.step_tol),
            ("residual_tol", self.residual_tol),
            ("dedup_radius", self.dedup_radius),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn bound(&self, i: usize) -> Result<[f64; 2]> {
        match self.bounds.len() {
            1 => Ok(self.bounds[0]),
            _ => self.bounds.get(i).copied().ok_or_else(|| {
                Error::InvalidConfig(format!("no bound interval for unknown {}", i + 1))
            }),
        }
    }

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidConfig(format!("bad value `{value}` for `{key}`"));
        match key.trim() {
            "bounds" | "box" => self.bounds = parse_bounds(value)?,
            "starts" => self.starts = value.trim().parse().map_err(|_| bad())?,
            "max_iter" => self.max_iter = value.trim().parse().map_err(|_| bad())?,
            "step_tol" => self.step_tol = value.trim().parse().map_err(|_| bad())?,
            "residual_tol" => self.residual_tol = value.trim().parse().map_err(|_| bad())?,
            "dedup_radius" => self.dedup_radius = value.trim().parse().map_err(|_| bad())?,
            "seed" => self.seed = value.trim().parse().map_err(|_| bad())?,
            other => return Err(Error::InvalidConfig(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Plain-text `key=value` lines; `#` starts a comment.
    pub fn parse_key_values(text: &str, base: Self) -> Result<Self> {
        let mut cfg = base;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key=value", lineno + 1))
            })?;
            cfg.set(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Overrides from `AMBARZUMIAN_<KEY>` variables, e.g. `AMBARZUMIAN_STARTS=40000`.
    pub fn with_env_overrides(mut self, vars: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        for (k, v) in vars {
            if let Some(key) = k.strip_prefix(ENV_PREFIX) {
                self.set(&key.to_ascii_lowercase(), &v)?;
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_key_values(&self) -> String {
        format!(
            "bounds={}\nstarts={}\nmax_iter={}\nstep_tol={:e}\nresidual_tol={:e}\ndedup_radius={:e}\nseed={}\n",
            fmt_bounds(&self.bounds),
            self.starts,
            self.max_iter,
            self.step_tol,
            self.residual_tol,
            self.dedup_radius,
            self.seed
        )
    }
}

/// `lo,hi` or `lo,hi;lo,hi;...`.
pub fn parse_bounds(text: &str) -> Result<Vec<[f64; 2]>> {
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [lo, hi] => Ok([
                    lo.parse().map_err(|_| Error::Parse(format!("bad bound `{lo}`")))?,
                    hi.parse().map_err(|_| Error::Parse(format!("bad bound `{hi}`")))?,
                ]),
                _ => Err(Error::Parse(format!("bad interval `{pair}`"))),
            }
        })
        .collect()
}

fn fmt_bounds(bounds: &[[f64; 2]]) -> String {
    bounds
        .iter()
        .map(|[lo, hi]| format!("{lo},{hi}"))
        .collect::<Vec<_>>()
        .join(";")
}

impl FromStr for SolverConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_key_values(s, Self::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub variables: Vec<String>,
    pub point: Vec<f64>,
    /// Max-norm of the equation values, re-evaluated on the symbolic system.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl Solution {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| self.point[i])
    }

    pub fn as_map(&self) -> HashMap<String, f64> {
        self.variables
            .iter()
            .cloned()
            .zip(self.point.iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceReason {
    SingularJacobian,
    MaxIterations,
    Stagnated,
    Escaped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub reason: DivergenceReason,
    pub iterations: usize,
    pub last_point: Vec<f64>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} after {} iterations", self.reason, self.iterations)
    }
}

/// Flat term lists for fast evaluation of a system and its Jacobian.
struct CompiledSystem {
    dim: usize,
    equations: Vec<CompiledPoly>,
    // row-major, dim x dim
    jacobian: Vec<CompiledPoly>,
}

struct CompiledPoly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl CompiledPoly {
    fn new(p: &MultiPoly<f64>) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(m, c)| (*c, m.exponents().to_vec()))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (e, xi) in exps.iter().zip(x) {
                match e {
                    0 => {}
                    1 => t *= xi,
                    k => t *= xi.powi(*k as i32),
                }
            }
            acc += t;
        }
        acc
    }
}

impl CompiledSystem {
    fn new(system: &PolySystem<f64>) -> Result<Self> {
        let dim = system.dim();
        let equations = system.equations().iter().map(CompiledPoly::new).collect();
        let mut jacobian = Vec::with_capacity(dim * dim);
        for eq in system.equations() {
            for var in system.unknowns() {
                jacobian.push(CompiledPoly::new(&eq.partial_derivative(var)?));
            }
        }
        Ok(Self {
            dim,
            equations,
            jacobian,
        })
    }

    fn residual(&self, x: &[f64]) -> (DVector<f64>, f64) {
        let r = DVector::from_iterator(self.dim, self.equations.iter().map(|e| e.eval(x)));
        let norm = r.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        (r, if norm.is_nan() { f64::INFINITY } else { norm })
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_iterator(self.dim, self.dim, self.jacobian.iter().map(|e| e.eval(x)))
    }

    fn newton(
        &self,
        start: &[f64],
        config: &SolverConfig,
    ) -> std::result::Result<(Vec<f64>, f64, usize), Divergence> {
        let mut x = start.to_vec();
        let (mut r, mut rn) = self.residual(&x);
        let diverge = |reason, iterations, x: &[f64]| Divergence {
            reason,
            iterations,
            last_point: x.to_vec(),
        };
        for iter in 0..config.max_iter {
            if rn == 0.0 {
                return Ok((x, rn, iter));
            }
            let jac = self.jacobian(&x);
            let step = match jac.lu().solve(&(-&r)) {
                Some(s) if s.iter().all(|v| v.is_finite()) => s,
                _ => return Err(diverge(DivergenceReason::SingularJacobian, iter, &x)),
            };
            // halve the step until the residual no longer increases
            let mut t = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_BACKTRACKS {
                let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a + t * s).collect();
                let (rc, rcn) = self.residual(&cand);
                if rcn <= rn {
                    accepted = Some((cand, rc, rcn));
                    break;
                }
                t *= 0.5;
            }
            let Some((cand, rc, rcn)) = accepted else {
                if rn <= config.residual_tol {
                    return Ok((x, rn, iter));
                }
                return Err(diverge(DivergenceReason::Stagnated, iter, &x));
            };
            let step_norm = t * step.norm();
            x = cand;
            r = rc;
            rn = rcn;
            if x.iter().any(|v| v.is_nan() || v.abs() >= ESCAPE_RADIUS) {
                return Err(diverge(DivergenceReason::Escaped, iter + 1, &x));
            }
            if step_norm <= config.step_tol {
                return Ok((x, rn, iter + 1));
            }
        }
        Err(diverge(DivergenceReason::MaxIterations, config.max_iter, &x))
    }
}

fn finish<R: Ring>(
    system: &PolySystem<R>,
    point: Vec<f64>,
    iterations: usize,
    config: &SolverConfig,
) -> Solution {
    let residual = system
        .equations()
        .iter()
        .map(|e| e.evaluate_slice(&point).abs())
        .fold(0.0, f64::max);
    Solution {
        variables: system.unknowns().to_vec(),
        converged: residual <= config.residual_tol,
        point,
        residual,
        iterations,
    }
}

/// Damped Newton from `start`. A singular Jacobian, escape to infinity, or
/// running out of iterations yields a [`Divergence`]. Otherwise the returned
/// [`Solution`] has `converged` set iff its residual is within tolerance.
pub fn newton_polish<R: Ring>(
    system: &PolySystem<R>,
    start: &[f64],
    config: &SolverConfig,
) -> Result<std::result::Result<Solution, Divergence>> {
    config.validate()?;
    if start.len() != system.dim() {
        return Err(Error::InvalidConfig(format!(
            "start has {} coordinates for {} unknowns",
            start.len(),
            system.dim()
        )));
    }
    let float = system.to_float();
    let compiled = CompiledSystem::new(&float)?;
    Ok(compiled
        .newton(start, config)
        .map(|(x, _, it)| finish(system, x, it, config)))
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut acc = 0.0;
    while i > 0 {
        acc += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    acc
}

/// Start `index` of the shifted Halton sequence in the configured box.
/// Depends only on `(index, seed)`, never on evaluation order.
pub fn start_point(index: usize, dim: usize, config: &SolverConfig) -> Result<Vec<f64>> {
    if dim > PRIMES.len() {
        return Err(Error::InvalidConfig(format!(
            "at most {} unknowns supported",
            PRIMES.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..dim)
        .map(|d| {
            let shift: f64 = rng.random();
            let u = (radical_inverse(index as u64 + 1, PRIMES[d]) + shift).fract();
            let [lo, hi] = config.bound(d)?;
            Ok(lo + (hi - lo) * u)
        })
        .collect()
}

/// All real solutions found from the trivial point (when the system has one)
/// plus `config.starts` low-discrepancy starts. Converged solutions within
/// `dedup_radius` are merged; output is sorted lexicographically by point.
pub fn multistart_solve<R: Ring>(system: &PolySystem<R>, config: &SolverConfig) -> Result<Vec<Solution>> {
    config.validate()?;
    let dim = system.dim();
    let float = system.to_float();
    let compiled = CompiledSystem::new(&float)?;

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(config.starts + 1);
    if let Some(t) = system.trivial_point() {
        starts.push(t.to_vec());
    }
    // per-dimension shifts derived once; identical to start_point
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shifts: Vec<f64> = (0..dim).map(|_| rng.random()).collect();
    if dim > PRIMES.len() {
        return Err(Error::InvalidConfig(format!(
            "at most {} unknowns supported",
            PRIMES.len()
        )));
    }
    let bounds = (0..dim).map(|d| config.bound(d)).collect::<Result<Vec<_>>>()?;
    for i in 0..config.starts {
        starts.push(
            (0..dim)
                .map(|d| {
                    let u = (radical_inverse(i as u64 + 1, PRIMES[d]) + shifts[d]).fract();
                    bounds[d][0] + (bounds[d][1] - bounds[d][0]) * u
                })
                .collect(),
        );
    }

    let results: Vec<Option<Solution>> = starts
        .par_iter()
        .map(|s| match compiled.newton(s, config) {
            Ok((x, _, it)) => {
                let sol = finish(system, x, it, config);
                sol.converged.then_some(sol)
            }
            Err(_) => None,
        })
        .collect();

    let mut merged = merge(results.into_iter().flatten(), config.dedup_radius);
    merged.sort_by(|a, b| lex_cmp(&a.point, &b.point));
    // a second pass catches representatives that drifted into each other
    let mut merged = merge(merged.into_iter(), config.dedup_radius);
    merged.sort_by(|a, b| lex_cmp(&a.point, &b.point));
    Ok(merged)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn merge(solutions: impl Iterator<Item = Solution>, radius: f64) -> Vec<Solution> {
    let mut clusters: Vec<Solution> = Vec::new();
    for s in solutions {
        match clusters
            .iter_mut()
            .find(|c| distance(&c.point, &s.point) <= radius)
        {
            Some(c) => {
                if s.residual < c.residual {
                    *c = s;
                }
            }
            None => clusters.push(s),
        }
    }
    clusters
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Running error bound for Horner evaluation at `x`.
fn horner_bound(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    let magnitude = coeffs.iter().fold(0.0, |acc, c| acc * ax + c.abs());
    8.0 * coeffs.len() as f64 * f64::EPSILON * magnitude
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (deg - i) as f64)
        .collect()
}

/// Distinct real roots of `coeffs[0] x^d + ... + coeffs[d]`, ascending.
///
/// Roots of the derivative split the Cauchy-bound interval into monotone
/// pieces. Each piece with a sign change is bisected; a critical point where
/// the polynomial vanishes to rounding is a multiple root. Roots are then
/// polished by bracketed Newton.
pub fn real_roots_univariate(coeffs: &[f64]) -> Result<Vec<f64>> {
    let first = coeffs
        .iter()
        .position(|c| *c != 0.0)
        .ok_or(Error::ZeroPolynomial)?;
    let coeffs = &coeffs[first..];
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Parse("coefficients must be finite".into()));
    }
    Ok(roots_rec(coeffs))
}

fn roots_rec(coeffs: &[f64]) -> Vec<f64> {
    match coeffs.len() {
        0 | 1 => return Vec::new(),
        2 => return vec![-coeffs[1] / coeffs[0]],
        _ => {}
    }
    let lead = coeffs[0];
    let bound = 1.0 + coeffs[1..].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut knots = vec![-bound];
    knots.extend(roots_rec(&derivative(coeffs)).into_iter().filter(|c| c.abs() < bound));
    knots.push(bound);

    let is_root = |x: f64| horner(coeffs, x).abs() <= horner_bound(coeffs, x);
    let mut roots = Vec::new();
    for (k, &x) in knots.iter().enumerate() {
        if k > 0 && k + 1 < knots.len() && is_root(x) {
            roots.push(x);
        }
    }
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        if is_root(a) || is_root(b) {
            continue;
        }
        let (fa, fb) = (horner(coeffs, a), horner(coeffs, b));
        if fa.signum() != fb.signum() {
            roots.push(bisect(coeffs, a, b, fa));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs().max(1.0));
    roots
}

fn bisect(coeffs: &[f64], mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = horner(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    // bracketed Newton polish
    let d = derivative(coeffs);
    let mut x = 0.5 * (a + b);
    for _ in 0..3 {
        let (f, df) = (horner(coeffs, x), horner(&d, x));
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if !(next >= a && next <= b) || horner(coeffs, next).abs() > f.abs() {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QuadExtRational;
    use crate::system::{build_root_subst_system, CaseSpec, Formulation};
    use proptest::prelude::*;

    fn univariate(terms: &[(f64, u32)]) -> PolySystem<f64> {
        let p = MultiPoly::from_terms(&["x"], terms.iter().map(|&(c, e)| (c, vec![e]))).unwrap();
        PolySystem::new(Formulation::RootSubstitution, vec!["x".into()], vec![p], None).unwrap()
    }

    #[test]
    fn newton_on_quadratic() {
        let sys = univariate(&[(1.0, 2), (-1.0, 0)]);
        let sol = newton_polish(&sys, &[0.7], &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert!(sol.converged);
        assert!((sol.point[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn newton_fixed_point_and_singular_start() {
        let sys = univariate(&[(1.0, 2), (-1.0, 0)]);
        let sol = newton_polish(&sys, &[1.0], &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert!(sol.iterations <= 1);
        assert!(sol.residual <= 1e-12);
        let div = newton_polish(&sys, &[0.0], &SolverConfig::default())
            .unwrap()
            .unwrap_err();
        assert_eq!(div.reason, DivergenceReason::SingularJacobian);
    }

    #[test]
    fn newton_max_iter_is_divergence() {
        let sys = univariate(&[(1.0, 2), (1.0, 0)]);
        let cfg = SolverConfig {
            max_iter: 5,
            ..SolverConfig::default()
        };
        assert!(newton_polish(&sys, &[0.3], &cfg).unwrap().is_err());
    }

    #[test]
    fn counterexample_polish() {
        let case = CaseSpec::new(5, 3, &[1, 3, 4]).unwrap();
        let sys = build_root_subst_system::<QuadExtRational>(&case).unwrap();
        let sol = newton_polish(&sys, &[-1.1, 0.5, 0.7], &SolverConfig::default())
            .unwrap()
            .unwrap();
        let expected = [-1.11542462377894, 0.527281667822498, 0.702345226288011];
        for (a, e) in sol.point.iter().zip(expected) {
            assert!((a - e).abs() < 1e-10, "{a} vs {e}");
        }
    }

    #[test]
    fn no_real_solutions() {
        let sys = univariate(&[(1.0, 2), (1.0, 0)]);
        let cfg = SolverConfig {
            starts: 500,
            ..SolverConfig::default()
        };
        assert!(multistart_solve(&sys, &cfg).unwrap().is_empty());
    }

    #[test]
    fn multistart_finds_both_roots_sorted() {
        let sys = univariate(&[(1.0, 2), (-1.0, 0)]);
        let cfg = SolverConfig {
            starts: 200,
            ..SolverConfig::default()
        };
        let sols = multistart_solve(&sys, &cfg).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0].point[0] + 1.0).abs() < 1e-12);
        assert!((sols[1].point[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn start_points_match_and_stay_in_box() {
        let cfg = SolverConfig {
            bounds: vec![[-1.0, 1.0], [2.0, 3.0]],
            seed: 9,
            ..SolverConfig::default()
        };
        for i in [0, 1, 17, 4096] {
            let p = start_point(i, 2, &cfg).unwrap();
            assert!((-1.0..1.0).contains(&p[0]));
            assert!((2.0..3.0).contains(&p[1]));
        }
        assert!(start_point(0, 3, &cfg).is_err());
    }

    #[test]
    fn config_key_values() {
        let cfg: SolverConfig = "starts=123\nseed = 7 # comment\nbox=-2,2\n".parse().unwrap();
        assert_eq!(cfg.starts, 123);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.bounds, vec![[-2.0, 2.0]]);
        let round: SolverConfig = cfg.to_key_values().parse().unwrap();
        assert_eq!(round, cfg);
        assert!("starts=0".parse::<SolverConfig>().is_err());
        assert!("nope=1".parse::<SolverConfig>().is_err());
        assert!("box=3,1".parse::<SolverConfig>().is_err());
        let env = vec![("AMBARZUMIAN_STARTS".to_string(), "99".to_string()), ("PATH".into(), "/bin".into())];
        assert_eq!(SolverConfig::default().with_env_overrides(env).unwrap().starts, 99);
    }

    #[test]
    fn univariate_roots() {
        let r = real_roots_univariate(&[1.0, 0.0, -3.0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 3f64.sqrt()).abs() < 1e-12);
        assert!((r[1] - 3f64.sqrt()).abs() < 1e-12);
        let r = real_roots_univariate(&[3.0, -12.0, 15.0, 0.0, -19.0, 18.0, -6.0]).unwrap();
        assert!(r.iter().any(|x| (x + 1.11542462377894).abs() < 1e-9), "{r:?}");
        let r = real_roots_univariate(&[16.0, -16.0, 24.0, -4.0, -11.0, -6.0, 6.0]).unwrap();
        assert!(r.iter().any(|x| (x - 0.702345226288011).abs() < 1e-9), "{r:?}");
        assert_eq!(real_roots_univariate(&[0.0]), Err(Error::ZeroPolynomial));
        assert!(real_roots_univariate(&[5.0]).unwrap().is_empty());
        // leading zeros are stripped
        assert_eq!(real_roots_univariate(&[0.0, 2.0, -4.0]).unwrap(), vec![2.0]);
    }

    #[test]
    fn double_root() {
        // (x - 1)^2 (x + 2)
        let r = real_roots_univariate(&[1.0, 0.0, -3.0, 2.0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-10);
        assert!((r[1] - 1.0).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn recovers_integer_roots(roots in prop::collection::vec(-5i32..=5, 1..6)) {
            let mut coeffs = vec![1.0];
            for k in &roots {
                let mut next = vec![0.0; coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] -= c * *k as f64;
                }
                coeffs = next;
            }
            let mut expected: Vec<f64> = roots.iter().map(|&k| k as f64).collect();
            expected.sort_by(f64::total_cmp);
            expected.dedup();
            let found = real_roots_univariate(&coeffs).unwrap();
            prop_assert_eq!(found.len(), expected.len(), "{:?} vs {:?}", found, expected);
            for (f, e) in found.iter().zip(&expected) {
                prop_assert!((f - e).abs() < 1e-10, "{} vs {}", f, e);
            }
        }
    }
}
