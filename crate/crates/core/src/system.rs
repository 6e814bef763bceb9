//! Symbolic characteristic polynomial of `S_{n,m}`, eigenvalue-position
//! cases, and the two polynomial-system formulations of a case.
//!
//! Variable names: `b1..bm` for the unknown diagonal entries, `r<i>` for the
//! free root at ordered position `i` (coefficient matching only), and `L` for
//! the spectral variable. Polynomials list their variables in that order.
//!
//! Both formulations only enforce that each fixed value is *some* eigenvalue.
//! Whether it sits at the required ordered position is checked afterwards on
//! the rebuilt matrix (see [`crate::classify::verify_candidate`]).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::free_eigenvalue;
use crate::poly::{MultiPoly, QuadExtRational, Ring, SQRT3};

pub const SPECTRAL_VAR: &str = "L";

pub fn b_var(k: usize) -> String {
    format!("b{k}")
}

pub fn root_var(position: usize) -> String {
    format!("r{position}")
}

/// Coefficient rings that can hold the free eigenvalues used as fixed values.
pub trait FreeValueRing: Ring {
    fn free_value(n: usize, position: usize) -> Result<Self>;
}

impl FreeValueRing for f64 {
    fn free_value(n: usize, position: usize) -> Result<Self> {
        free_eigenvalue(n, position)
    }
}

impl FreeValueRing for QuadExtRational {
    /// Exact only for values in `{0, +-1, +-sqrt3}` (all of `F_1`, `F_2`, `F_5`).
    fn free_value(n: usize, position: usize) -> Result<Self> {
        let x = free_eigenvalue(n, position)?;
        const TABLE: [(f64, i64, i64); 5] = [
            (-SQRT3, 0, -1),
            (-1.0, -1, 0),
            (0.0, 0, 0),
            (1.0, 1, 0),
            (SQRT3, 0, 1),
        ];
        TABLE
            .iter()
            .find(|(v, _, _)| (v - x).abs() < 1e-12)
            .map(|&(_, p, q)| QuadExtRational::from_ints(p, q))
            .ok_or(Error::NotRepresentable { n, position })
    }
}

/// Which ordered eigenvalues of `F_n` the perturbed matrix must share.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    n: usize,
    m: usize,
    positions: Vec<usize>,
    values: Vec<f64>,
}

impl CaseSpec {
    pub fn new(n: usize, m: usize, positions: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if m == 0 || m > n {
            return Err(Error::InvalidUnknownCount { n, m });
        }
        if positions.len() != m {
            return Err(Error::InvalidCase(format!(
                "{} fixed positions given but m = {m}",
                positions.len()
            )));
        }
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::InvalidCase(format!("position {p} outside 1..={n}")));
        }
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCase("repeated position".into()));
        }
        let values = positions
            .iter()
            .map(|&p| free_eigenvalue(n, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            m,
            positions,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Fixed ordered positions, ascending, 1-based.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Values `lambda_i` of `F_n` at [`Self::positions`].
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn fixed(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.positions.iter().copied().zip(self.values.iter().copied())
    }

    /// Ordered positions not fixed by the case.
    pub fn free_positions(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|p| !self.positions.contains(p))
            .collect()
    }

    /// Image under `i -> n + 1 - i`, realized on matrices by `b -> -b`.
    pub fn mirror(&self) -> Self {
        let positions: Vec<usize> = self.positions.iter().map(|p| self.n + 1 - p).collect();
        Self::new(self.n, self.m, &positions).expect("mirror of a valid case is valid")
    }

    pub fn is_consecutive(&self) -> bool {
        self.positions.windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn label(&self) -> String {
        format!("{{{}}}", self.positions.iter().join(","))
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} fix {}",
            self.n,
            self.m,
            self.positions.iter().join(",")
        )
    }
}

impl FromStr for CaseSpec {
    type Err = Error;

    /// Parses `n=5 m=3 fix 1,3,4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `n=<n> m=<m> fix <i,j,...>`, got `{s}`"));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let [n_tok, m_tok, "fix", list] = tokens.as_slice() else {
            return Err(bad());
        };
        let n = n_tok
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let m = m_tok
            .strip_prefix("m=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let positions = parse_positions(list)?;
        Self::new(n, m, &positions)
    }
}

pub fn parse_positions(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad position `{t}`")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// One equation `det(S - lambda_i I) = 0` per fixed value.
    RootSubstitution,
    /// Coefficients of `det(S - L I)` matched against `(-1)^n prod (L - r_i)`.
    CoefficientMatch,
}

/// Square polynomial system in named unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem<R: Ring> {
    pub formulation: Formulation,
    unknowns: Vec<String>,
    equations: Vec<MultiPoly<R>>,
    trivial_point: Option<Vec<f64>>,
}

impl<R: Ring> PolySystem<R> {
    pub fn new(
        formulation: Formulation,
        unknowns: Vec<String>,
        equations: Vec<MultiPoly<R>>,
        trivial_point: Option<Vec<f64>>,
    ) -> Result<Self> {
        if unknowns.len() != equations.len() {
            return Err(Error::InvalidCase(format!(
                "system is not square: {} equations in {} unknowns",
                equations.len(),
                unknowns.len()
            )));
        }
        let equations = equations
            .into_iter()
            .map(|e| e.with_vars(&unknowns))
            .collect::<Result<Vec<_>>>()?;
        if let Some(t) = &trivial_point {
            if t.len() != unknowns.len() {
                return Err(Error::InvalidCase("trivial point has wrong length".into()));
            }
        }
        Ok(Self {
            formulation,
            unknowns,
            equations,
            trivial_point,
        })
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn equations(&self) -> &[MultiPoly<R>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.unknowns.len()
    }

    /// `b = 0` with free roots at the remaining free eigenvalues.
    pub fn trivial_point(&self) -> Option<&[f64]> {
        self.trivial_point.as_deref()
    }

    pub fn residuals(&self, point: &[f64]) -> Vec<f64> {
        self.equations
            .iter()
            .map(|e| e.evaluate_slice(point))
            .collect()
    }

    pub fn max_residual(&self, point: &[f64]) -> f64 {
        self.residuals(point)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> PolySystem<f64> {
        PolySystem {
            formulation: self.formulation,
            unknowns: self.unknowns.clone(),
            equations: self.equations.iter().map(MultiPoly::to_float).collect(),
            trivial_point: self.trivial_point.clone(),
        }
    }
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if m == 0 || m > n {
        return Err(Error::InvalidUnknownCount { n, m });
    }
    Ok(())
}

fn charpoly_vars(m: usize, extra: &[String]) -> Vec<String> {
    (1..=m)
        .map(b_var)
        .chain(extra.iter().cloned())
        .chain(std::iter::once(SPECTRAL_VAR.to_string()))
        .collect()
}

/// `det(S_{n,m} - L I)` over variables `b1..bm, L`, built from the
/// leading-minor recurrence `D_k = (d_k - L) D_{k-1} - D_{k-2}`.
pub fn symbolic_charpoly<R: Ring>(n: usize, m: usize) -> Result<MultiPoly<R>> {
    check_nm(n, m)?;
    let vars = charpoly_vars(m, &[]);
    let lam = MultiPoly::<R>::var(&vars, SPECTRAL_VAR)?;
    let shifted = |k: usize| -> Result<MultiPoly<R>> {
        if k <= m {
            Ok(&MultiPoly::var(&vars, &b_var(k))? - &lam)
        } else {
            Ok(-&lam)
        }
    };
    let mut prev = MultiPoly::constant(&vars, R::one());
    let mut cur = shifted(1)?;
    for k in 2..=n {
        let next = &(&shifted(k)? * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The grouped factorization of `det(S_{5,3} - L I)`:
/// `(L^2 - 1)((b1-L)(b2-L)(b3-L) - (b1-L) - (b3-L)) + L((b1-L)(b2-L) - 1)`.
pub fn grouped_charpoly_5_3<R: Ring>() -> MultiPoly<R> {
    let vars = charpoly_vars(3, &[]);
    let v = |name: &str| MultiPoly::<R>::var(&vars, name).expect("known variable");
    let one = MultiPoly::constant(&vars, R::one());
    let lam = v(SPECTRAL_VAR);
    let d1 = &v("b1") - &lam;
    let d2 = &v("b2") - &lam;
    let d3 = &v("b3") - &lam;
    let cubic = &(&(&(&d1 * &d2) * &d3) - &d1) - &d3;
    let quad = &(&d1 * &d2) - &one;
    &(&(&lam.pow(2) - &one) * &cubic) + &(&lam * &quad)
}

/// One equation per fixed value: the characteristic polynomial with `L`
/// replaced by that value. Unknowns `b1..bm`.
pub fn build_root_subst_system<R: FreeValueRing>(case: &CaseSpec) -> Result<PolySystem<R>> {
    let charpoly = symbolic_charpoly::<R>(case.n, case.m)?;
    let equations = case
        .positions
        .iter()
        .map(|&p| charpoly.substitute(SPECTRAL_VAR, &R::free_value(case.n, p)?))
        .collect::<Result<Vec<_>>>()?;
    let unknowns: Vec<String> = (1..=case.m).map(b_var).collect();
    PolySystem::new(
        Formulation::RootSubstitution,
        unknowns,
        equations,
        Some(vec![0.0; case.m]),
    )
}

/// Coefficient matching against `(-1)^n prod_i (L - r_i)`, where `r_i` is the
/// fixed value at fixed positions and a free unknown `r<i>` elsewhere.
/// Equations run from the `L^{n-1}` coefficient down to the constant term.
/// Unknowns `b1..bm` followed by the free roots.
pub fn build_coeff_match_system<R: FreeValueRing>(case: &CaseSpec) -> Result<PolySystem<R>> {
    let free = case.free_positions();
    let root_names: Vec<String> = free.iter().map(|&p| root_var(p)).collect();
    let vars = charpoly_vars(case.m, &root_names);
    let charpoly = symbolic_charpoly::<R>(case.n, case.m)?.with_vars(&vars)?;
    let lam = MultiPoly::<R>::var(&vars, SPECTRAL_VAR)?;

    let sign = if case.n.is_multiple_of(2) { R::one() } else { -R::one() };
    let mut target = MultiPoly::constant(&vars, sign);
    for p in 1..=case.n {
        let root = if case.positions.contains(&p) {
            MultiPoly::constant(&vars, R::free_value(case.n, p)?)
        } else {
            MultiPoly::var(&vars, &root_var(p))?
        };
        target = &target * &(&lam - &root);
    }
    let coeffs = (&charpoly - &target).coefficients_in(SPECTRAL_VAR)?;
    debug_assert!(coeffs.len() <= case.n || coeffs[case.n].is_zero());
    let unknowns: Vec<String> = (1..=case.m).map(b_var).chain(root_names).collect();
    let equations = (0..case.n)
        .rev()
        .map(|k| {
            coeffs
                .get(k)
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(&unknowns))
        })
        .collect();
    let trivial = std::iter::repeat_n(0.0, case.m)
        .chain(free.iter().map(|&p| free_eigenvalue(case.n, p).expect("valid position")))
        .collect();
    PolySystem::new(Formulation::CoefficientMatch, unknowns, equations, Some(trivial))
}

/// Root-substitution system, exact in `Q(sqrt 3)` when every fixed value is
/// representable there and in floating point otherwise.
pub fn root_subst_system_f64(case: &CaseSpec) -> Result<PolySystem<f64>> {
    match build_root_subst_system::<QuadExtRational>(case) {
        Ok(s) => Ok(s.to_float()),
        Err(Error::NotRepresentable { .. }) => build_root_subst_system::<f64>(case),
        Err(e) => Err(e),
    }
}

/// Coefficient-match counterpart of [`root_subst_system_f64`].
pub fn coeff_match_system_f64(case: &CaseSpec) -> Result<PolySystem<f64>> {
    match build_coeff_match_system::<QuadExtRational>(case) {
        Ok(s) => Ok(s.to_float()),
        Err(Error::NotRepresentable { .. }) => build_coeff_match_system::<f64>(case),
        Err(e) => Err(e),
    }
}

/// All `C(n, m)` position subsets in lexicographic order.
pub fn enumerate_cases(n: usize, m: usize) -> Result<Vec<CaseSpec>> {
    check_nm(n, m)?;
    (1..=n)
        .combinations(m)
        .map(|positions| CaseSpec::new(n, m, &positions))
        .collect()
}

/// Orbit of cases under the negation involution `i -> n + 1 - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryClass {
    /// Lexicographically smallest position set in the class.
    pub representative: CaseSpec,
    /// Representative first, then its mirror when distinct and present.
    pub members: Vec<CaseSpec>,
}

impl SymmetryClass {
    pub fn is_self_mirror(&self) -> bool {
        self.members.len() == 1
    }
}

pub fn symmetry_classes(cases: &[CaseSpec]) -> Vec<SymmetryClass> {
    let mut classes: Vec<SymmetryClass> = Vec::new();
    let mut seen = vec![false; cases.len()];
    for i in 0..cases.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mirror = cases[i].mirror();
        let partner = (0..cases.len()).find(|&j| !seen[j] && cases[j] == mirror);
        let mut members = vec![cases[i].clone()];
        if let Some(j) = partner {
            seen[j] = true;
            members.push(cases[j].clone());
        }
        members.sort_by(|a, b| a.positions.cmp(&b.positions));
        members.dedup();
        classes.push(SymmetryClass {
            representative: members[0].clone(),
            members,
        });
    }
    classes.sort_by(|a, b| a.representative.positions.cmp(&b.representative.positions));
    classes
}

/// Exactly evaluates every equation at `b = 0`, free roots at their free
/// eigenvalues. Only available when the case is representable in `Q(sqrt 3)`.
pub fn exact_trivial_residuals(system: &PolySystem<QuadExtRational>, case: &CaseSpec) -> Result<Vec<QuadExtRational>> {
    let mut point = std::collections::HashMap::new();
    for name in system.unknowns() {
        let value = match name.strip_prefix('r') {
            Some(p) => {
                let pos: usize = p.parse().map_err(|_| Error::UnknownVariable(name.clone()))?;
                QuadExtRational::free_value(case.n, pos)?
            }
            None => QuadExtRational::zero(),
        };
        point.insert(name.clone(), value);
    }
    system
        .equations()
        .iter()
        .map(|e| e.evaluate_exact(&point))
        .collect()
}
