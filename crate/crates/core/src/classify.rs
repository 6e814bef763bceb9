//! Rigid/flexible classification of eigenvalue-position cases.
//!
//! A case is flexible when some real `b` with `max |b_k| > NONTRIVIAL_THRESHOLD`
//! makes `S_{n,m}` share the fixed eigenvalues *at their ordered positions*.
//! The polynomial systems only encode spectrum membership, so every solver
//! output goes through [`verify_candidate`] on the rebuilt matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{eigenvalues, schrodinger_matrix};
use crate::poly::SQRT3;
use crate::solver::{multistart_solve, newton_polish, real_roots_univariate, Solution, SolverConfig};
use crate::system::{
    coeff_match_system_f64, enumerate_cases, root_subst_system_f64, symmetry_classes, CaseSpec,
    PolySystem,
};

pub const NONTRIVIAL_THRESHOLD: f64 = 1e-6;
/// Ordered-position tolerance on raw solver output.
pub const RAW_POSITION_TOL: f64 = 1e-6;
/// Ordered-position tolerance after polishing a witness.
pub const POLISHED_POSITION_TOL: f64 = 1e-9;

/// Counterexample triple for fixed positions {1,3,4} of `F_5`, as printed.
pub const REFERENCE_WITNESS: [f64; 3] = [-1.11542462377894, 0.527281667822498, 0.702345226288011];
/// Ordered spectrum of `S_{5,3}` at [`REFERENCE_WITNESS`], as printed.
pub const REFERENCE_SPECTRUM: [f64; 5] = [-SQRT3, -1.25874960534751, 0.0, 1.0, 2.10500268324796];
pub const REFERENCE_B1: f64 = -1.11542462377894;

/// Certificate sextics, highest degree first.
pub const SEXTIC_B1: [f64; 7] = [3.0, -12.0, 15.0, 0.0, -19.0, 18.0, -6.0];
pub const SEXTIC_B2: [f64; 7] = [1.0, -4.0, 9.0, -16.0, 19.0, -18.0, 6.0];
pub const SEXTIC_B3: [f64; 7] = [16.0, -16.0, 24.0, -4.0, -11.0, -6.0, 6.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Only the trivial solution was found.
    Rigid,
    /// A verified nontrivial witness exists.
    Flexible,
    /// The solver did not recover the trivial solution; no conclusion.
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Rigid => "rigid",
            Self::Flexible => "flexible",
            Self::Inconclusive => "inconclusive",
        }
    }

    /// Wording of the original works/fails labels.
    pub fn verdict_label(&self) -> &'static str {
        match self {
            Self::Rigid => "works",
            Self::Flexible => "fails",
            Self::Inconclusive => "?",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SystemChoice {
    #[default]
    Subst,
    Coeff,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionCheck {
    pub position: usize,
    pub expected: f64,
    pub actual: f64,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub b: Vec<f64>,
    /// Full ordered spectrum of the rebuilt `S_{n,m}`; empty if it could not be computed.
    pub spectrum: Vec<f64>,
    pub checks: Vec<PositionCheck>,
    /// `(position, eigenvalue)` at positions the case leaves free.
    pub free: Vec<(usize, f64)>,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Rebuild `S_{n,m}` from `b` and check each fixed ordered eigenvalue to `tol`.
pub fn verify_candidate(b: &[f64], case: &CaseSpec, tol: f64) -> Result<VerificationRecord> {
    if b.len() != case.m() {
        return Err(Error::InvalidCase(format!(
            "candidate has {} entries, case has m = {}",
            b.len(),
            case.m()
        )));
    }
    let spectrum = schrodinger_matrix(case.n(), b)
        .and_then(|j| eigenvalues(&j))
        .map(|s| s.into_vec())
        .unwrap_or_default();
    let checks: Vec<PositionCheck> = case
        .fixed()
        .map(|(position, expected)| {
            let actual = spectrum.get(position - 1).copied().unwrap_or(f64::NAN);
            let deviation = (actual - expected).abs();
            PositionCheck {
                position,
                expected,
                actual,
                deviation,
                pass: deviation <= tol,
            }
        })
        .collect();
    let free = case
        .free_positions()
        .into_iter()
        .filter_map(|p| spectrum.get(p - 1).map(|v| (p, *v)))
        .collect();
    let max_deviation = checks
        .iter()
        .map(|c| if c.deviation.is_nan() { f64::INFINITY } else { c.deviation })
        .fold(0.0, f64::max);
    Ok(VerificationRecord {
        b: b.to_vec(),
        passed: !spectrum.is_empty() && checks.iter().all(|c| c.pass),
        spectrum,
        checks,
        free,
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub b: Vec<f64>,
    pub spectrum: Vec<f64>,
    /// Max-norm residual of the root-substitution equations at `b`.
    pub residual: f64,
    pub max_deviation: f64,
    pub nontrivial: bool,
}

impl Witness {
    fn from_record(rec: &VerificationRecord, residual: f64) -> Self {
        Self {
            b: rec.b.clone(),
            spectrum: rec.spectrum.clone(),
            residual,
            max_deviation: rec.max_deviation,
            nontrivial: is_nontrivial(&rec.b),
        }
    }
}

pub fn is_nontrivial(b: &[f64]) -> bool {
    b.iter().any(|v| v.abs() > NONTRIVIAL_THRESHOLD)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulationOutcome {
    pub solutions_found: usize,
    /// Real solutions whose rebuilt matrix puts the fixed values at the
    /// required ordered positions.
    pub witnesses: Vec<Witness>,
    /// Real solutions sharing the fixed values only as spectrum members.
    pub rejected: Vec<Witness>,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    /// Largest root-substitution residual at a projected coefficient-match solution.
    pub max_projected_residual: f64,
    /// Projected `b` vectors with no root-substitution solution within the dedup radius.
    pub unmatched_projections: usize,
    pub classifications_agree: bool,
    pub witness_sets_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: CaseSpec,
    pub classification: Classification,
    /// Verified solutions, trivial included.
    pub witnesses: Vec<Witness>,
    /// Per-position checks of the first nontrivial witness, else the trivial one.
    pub checks: Vec<PositionCheck>,
    pub subst: Option<FormulationOutcome>,
    pub coeff: Option<FormulationOutcome>,
    pub cross_check: Option<CrossCheck>,
    pub note: String,
}

impl CaseReport {
    pub fn nontrivial_witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.nontrivial)
    }
}

fn solve_formulation(
    case: &CaseSpec,
    system: &PolySystem<f64>,
    subst: &PolySystem<f64>,
    config: &SolverConfig,
) -> Result<(FormulationOutcome, Vec<Solution>)> {
    let solutions = multistart_solve(system, config)?;
    let mut witnesses: Vec<Witness> = Vec::new();
    let mut rejected: Vec<Witness> = Vec::new();
    for sol in &solutions {
        let b = &sol.point[..case.m()];
        // coefficient-match solutions differing only in free-root order
        // project to the same b
        if witnesses
            .iter()
            .chain(&rejected)
            .any(|w| dist(&w.b, b) <= config.dedup_radius)
        {
            continue;
        }
        let rec = verify_candidate(b, case, RAW_POSITION_TOL)?;
        let w = Witness::from_record(&rec, subst.max_residual(b));
        if rec.passed {
            witnesses.push(w);
        } else {
            rejected.push(w);
        }
    }
    let has_trivial = witnesses.iter().any(|w| !w.nontrivial);
    let classification = if witnesses.iter().any(|w| w.nontrivial) {
        Classification::Flexible
    } else if has_trivial {
        Classification::Rigid
    } else {
        Classification::Inconclusive
    };
    Ok((
        FormulationOutcome {
            solutions_found: solutions.len(),
            witnesses,
            rejected,
            classification,
        },
        solutions,
    ))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn same_witness_sets(a: &[Witness], b: &[Witness], radius: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|w| b.iter().any(|v| dist(&w.b, &v.b) <= radius))
        && b.iter().all(|w| a.iter().any(|v| dist(&w.b, &v.b) <= radius))
}

/// Classify one case. The root-substitution system is primary; with
/// [`SystemChoice::Both`] the coefficient-match system is solved too and its
/// solutions are projected onto `b` and checked against the primary.
pub fn classify_case(case: &CaseSpec, config: &SolverConfig, choice: SystemChoice) -> Result<CaseReport> {
    config.validate()?;
    let subst_sys = root_subst_system_f64(case)?;

    let subst = match choice {
        SystemChoice::Subst | SystemChoice::Both => {
            Some(solve_formulation(case, &subst_sys, &subst_sys, config)?)
        }
        SystemChoice::Coeff => None,
    };
    let coeff = match choice {
        SystemChoice::Coeff | SystemChoice::Both => {
            let sys = coeff_match_system_f64(case)?;
            Some(solve_formulation(case, &sys, &subst_sys, config)?)
        }
        SystemChoice::Subst => None,
    };

    let cross_check = match (&subst, &coeff) {
        (Some((s, s_sols)), Some((c, c_sols))) => {
            let mut max_res: f64 = 0.0;
            let mut unmatched = 0;
            for sol in c_sols {
                let b = &sol.point[..case.m()];
                max_res = max_res.max(subst_sys.max_residual(b));
                if !s_sols.iter().any(|t| dist(&t.point, b) <= config.dedup_radius) {
                    unmatched += 1;
                }
            }
            Some(CrossCheck {
                max_projected_residual: max_res,
                unmatched_projections: unmatched,
                classifications_agree: s.classification == c.classification,
                witness_sets_agree: same_witness_sets(&s.witnesses, &c.witnesses, config.dedup_radius),
            })
        }
        _ => None,
    };

    let primary = subst
        .as_ref()
        .or(coeff.as_ref())
        .map(|(o, _)| o.clone())
        .expect("at least one formulation solved");
    let checks = primary
        .witnesses
        .iter()
        .find(|w| w.nontrivial)
        .or_else(|| primary.witnesses.first())
        .map(|w| verify_candidate(&w.b, case, RAW_POSITION_TOL).map(|r| r.checks))
        .transpose()?
        .unwrap_or_default();
    let note = match primary.classification {
        Classification::Rigid => "no nontrivial real solution found".to_string(),
        Classification::Flexible => format!(
            "{} nontrivial verified witness(es) found",
            primary.witnesses.iter().filter(|w| w.nontrivial).count()
        ),
        Classification::Inconclusive => "solver did not recover the trivial solution".to_string(),
    };

    Ok(CaseReport {
        case: case.clone(),
        classification: primary.classification,
        witnesses: primary.witnesses,
        checks,
        subst: subst.map(|(o, _)| o),
        coeff: coeff.map(|(o, _)| o),
        cross_check,
        note,
    })
}

/// Report for the mirror case, obtained by negating every witness and
/// re-verifying it on the rebuilt matrix.
pub fn mirror_report(report: &CaseReport) -> Result<CaseReport> {
    let case = report.case.mirror();
    let mirror_witnesses = |ws: &[Witness]| -> Result<Vec<Witness>> {
        let subst = root_subst_system_f64(&case)?;
        ws.iter()
            .map(|w| {
                let b: Vec<f64> = w.b.iter().map(|v| -v).collect();
                let rec = verify_candidate(&b, &case, RAW_POSITION_TOL)?;
                Ok(Witness::from_record(&rec, subst.max_residual(&b)))
            })
            .collect()
    };
    let map_outcome = |o: &FormulationOutcome| -> Result<FormulationOutcome> {
        Ok(FormulationOutcome {
            solutions_found: o.solutions_found,
            witnesses: mirror_witnesses(&o.witnesses)?,
            rejected: mirror_witnesses(&o.rejected)?,
            classification: o.classification,
        })
    };
    let witnesses = mirror_witnesses(&report.witnesses)?;
    let checks = witnesses
        .iter()
        .find(|w| w.nontrivial)
        .or_else(|| witnesses.first())
        .map(|w| verify_candidate(&w.b, &case, RAW_POSITION_TOL).map(|r| r.checks))
        .transpose()?
        .unwrap_or_default();
    let subst = report.subst.as_ref().map(map_outcome).transpose()?;
    let coeff = report.coeff.as_ref().map(map_outcome).transpose()?;
    Ok(CaseReport {
        note: format!("mirror of {}; {}", report.case.label(), report.note),
        case,
        classification: report.classification,
        witnesses,
        checks,
        subst,
        coeff,
        cross_check: report.cross_check.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub classification: Classification,
    pub consecutive: bool,
    pub report: CaseReport,
    pub mirror: Option<CaseReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub m: usize,
    pub system: SystemChoice,
    pub config: SolverConfig,
    pub classes: Vec<ClassReport>,
}

impl SweepReport {
    /// Classes whose fixed positions are consecutive (the consecutive-eigenvalue question).
    pub fn consecutive_classes(&self) -> impl Iterator<Item = &ClassReport> {
        self.classes.iter().filter(|c| c.consecutive)
    }

    pub fn class(&self, positions: &[usize]) -> Option<&ClassReport> {
        self.classes
            .iter()
            .find(|c| c.members.iter().any(|m| m == positions))
    }

    /// Every case report, representatives and mirrors, in position order.
    pub fn all_case_reports(&self) -> Vec<&CaseReport> {
        let mut out: Vec<&CaseReport> = self
            .classes
            .iter()
            .flat_map(|c| std::iter::once(&c.report).chain(c.mirror.as_ref()))
            .collect();
        out.sort_by(|a, b| a.case.positions().cmp(b.case.positions()));
        out
    }
}

/// Classify one representative per symmetry class and carry the result to
/// its mirror.
pub fn sweep(n: usize, m: usize, config: &SolverConfig, choice: SystemChoice) -> Result<SweepReport> {
    config.validate()?;
    let classes = symmetry_classes(&enumerate_cases(n, m)?);
    let classes = classes
        .into_iter()
        .map(|class| {
            let report = classify_case(&class.representative, config, choice)?;
            let mirror = if class.is_self_mirror() {
                None
            } else {
                Some(mirror_report(&report)?)
            };
            Ok(ClassReport {
                representative: class.representative.positions().to_vec(),
                members: class.members.iter().map(|c| c.positions().to_vec()).collect(),
                classification: report.classification,
                consecutive: class.representative.is_consecutive(),
                report,
                mirror,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        n,
        m,
        system: choice,
        config: config.clone(),
        classes,
    })
}

/// The three hand-derived equations for fixed values `1`, `0`, `-sqrt3`:
/// `b1 b2 - (b1 + b2)`, `b1 b2 b3 - (b1 + b3)`, and
/// `2 b1 b2 b3 + sqrt3 b1 b2 + 2 sqrt3 b2 b3 + 2 sqrt3 b1 b3 + b1 + 3 b2 + 4 b3`.
pub fn case4_equation_residuals(b: [f64; 3]) -> [f64; 3] {
    let [b1, b2, b3] = b;
    [
        b1 * b2 - (b1 + b2),
        b1 * b2 * b3 - (b1 + b3),
        2.0 * b1 * b2 * b3
            + SQRT3 * b1 * b2
            + 2.0 * SQRT3 * b2 * b3
            + 2.0 * SQRT3 * b1 * b3
            + b1
            + 3.0 * b2
            + 4.0 * b3,
    ]
}

/// Closed form of `b1` in nested radicals.
pub fn nested_radical_b1() -> f64 {
    let cube = (91.0 + 51.0 * SQRT3 - (11844.0 + 6834.0 * SQRT3).sqrt()).cbrt();
    let den = 3.0 + 3.0 * SQRT3;
    (SQRT3 - 1.0) / den - (10.0 + 6.0 * SQRT3) / (den * cube) - cube / den
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: value.abs() <= tolerance,
            value,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateTolerances {
    /// Printed spectrum vs computed spectrum of the printed triple.
    pub spectrum: f64,
    /// Polished triple vs printed triple.
    pub witness: f64,
    /// Ordered-position check of the polished witness.
    pub position: f64,
    /// Hand-equation and sextic residuals.
    pub residual: f64,
    /// Nested radical vs printed `b1`.
    pub radical: f64,
}

impl Default for CertificateTolerances {
    fn default() -> Self {
        Self {
            spectrum: 1e-6,
            witness: 1e-6,
            position: POLISHED_POSITION_TOL,
            residual: 1e-9,
            radical: 1e-10,
        }
    }
}

impl CertificateTolerances {
    pub fn uniform(tol: f64) -> Self {
        Self {
            spectrum: tol,
            witness: tol,
            position: tol,
            residual: tol,
            radical: tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub printed: Vec<f64>,
    pub polished: Vec<f64>,
    pub polished_spectrum: Vec<f64>,
    pub sextic_real_roots: Vec<Vec<f64>>,
    pub nested_radical_b1: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// [`certificate_checks_with`] at default tolerances and solver settings.
pub fn certificate_checks() -> Result<CertificateReport> {
    certificate_checks_with(&SolverConfig::default(), CertificateTolerances::default())
}

/// Polish the printed counterexample on the {1,3,4} root-substitution system
/// and run every numeric certificate against it.
pub fn certificate_checks_with(config: &SolverConfig, tol: CertificateTolerances) -> Result<CertificateReport> {
    let case = CaseSpec::new(5, 3, &[1, 3, 4])?;
    let system = root_subst_system_f64(&case)?;
    let mut checks = Vec::new();

    let printed_rec = verify_candidate(&REFERENCE_WITNESS, &case, tol.spectrum)?;
    for (i, (got, want)) in printed_rec.spectrum.iter().zip(REFERENCE_SPECTRUM).enumerate() {
        checks.push(Check::at_most(
            format!("printed spectrum lambda_{}", i + 1),
            got - want,
            tol.spectrum,
        ));
    }

    let polished = match newton_polish(&system, &REFERENCE_WITNESS, config)? {
        Ok(sol) => sol.point,
        Err(div) => {
            checks.push(Check {
                name: format!("newton polish ({div})"),
                value: f64::INFINITY,
                tolerance: 0.0,
                pass: false,
            });
            REFERENCE_WITNESS.to_vec()
        }
    };
    for (i, (p, w)) in polished.iter().zip(REFERENCE_WITNESS).enumerate() {
        checks.push(Check::at_most(format!("polished b{} vs printed", i + 1), p - w, tol.witness));
    }
    let rec = verify_candidate(&polished, &case, tol.position)?;
    for c in &rec.checks {
        checks.push(Check::at_most(
            format!("ordered position {}", c.position),
            c.actual - c.expected,
            tol.position,
        ));
    }
    for ((position, value), want) in rec.free.iter().zip([REFERENCE_SPECTRUM[1], REFERENCE_SPECTRUM[4]]) {
        checks.push(Check::at_most(
            format!("free position {position} vs printed"),
            value - want,
            tol.spectrum,
        ));
    }

    let b = [polished[0], polished[1], polished[2]];
    for (name, r) in ["b1*b2 = b1 + b2", "b1*b2*b3 = b1 + b3", "lambda = -sqrt3 equation"]
        .iter()
        .zip(case4_equation_residuals(b))
    {
        checks.push(Check::at_most(*name, r, tol.residual));
    }

    let sextics = [SEXTIC_B1, SEXTIC_B2, SEXTIC_B3];
    let mut sextic_real_roots = Vec::new();
    for (i, sextic) in sextics.iter().enumerate() {
        checks.push(Check::at_most(
            format!("sextic for b{} at polished b{}", i + 1, i + 1),
            horner(sextic, b[i]),
            tol.residual,
        ));
        let roots = real_roots_univariate(sextic)?;
        let nearest = roots
            .iter()
            .map(|r| (r - b[i]).abs())
            .fold(f64::INFINITY, f64::min);
        checks.push(Check::at_most(
            format!("b{} among isolated real roots of its sextic", i + 1),
            nearest,
            tol.residual,
        ));
        sextic_real_roots.push(roots);
    }

    let radical = nested_radical_b1();
    checks.push(Check::at_most("nested radical b1 vs printed", radical - REFERENCE_B1, tol.radical));

    Ok(CertificateReport {
        printed: REFERENCE_WITNESS.to_vec(),
        polished_spectrum: rec.spectrum,
        polished,
        sextic_real_roots,
        nested_radical_b1: radical,
        passed: checks.iter().all(|c| c.pass),
        checks,
    })
}
