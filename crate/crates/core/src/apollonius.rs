//! Apollonius problems on families of n + 2 cycles.
//!
//! For a configuration `X = {X_1, .., X_{n+2}}` the lifts span a hyperplane
//! of ℝ^{n+3}; its orthogonal generator `P` has a homogeneous center whose
//! affine image `P_X` is the common point of
//!
//! * the lines through the centers of each Apollonius pair `A_i, A_i'`
//!   (solutions tangent to `X \ {X_i}`),
//! * the lines through the centers of each second-level pair `B_i, B_i'`
//!   (the other solutions of `A \ {A_i}` and `A' \ {A_i'}`),
//!
//! and the center of the sphere `P'` tangent to every hyperplane that
//! touches both members of some pair.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cycles::{project, tangency_residual, tangency_residual_lie, Cycle};
use crate::error::{Error, Result};
use crate::lie::{
    euclid_norm, form, intersect_pencil, orthogonal_complement, projective_equal, LieVec,
    PencilIntersection,
};
use crate::tolerance::Tolerances;

/// One real solution of an Apollonius problem.
///
/// `cycle` is `None` for the point sphere at infinity `[0 : .. : 0 : 1]`,
/// which is tangent to every hyperplane and so appears whenever a subset
/// consists of hyperplanes only.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub lift: LieVec,
    pub cycle: Option<Cycle>,
}

impl Solution {
    fn from_lift(lift: LieVec, tol: &Tolerances) -> Result<Solution> {
        let lift = lift.normalized();
        match project(&lift, tol) {
            Ok(cycle) => Ok(Solution {
                lift,
                cycle: Some(cycle),
            }),
            Err(Error::DegenerateVector) => Ok(Solution { lift, cycle: None }),
            Err(e) => Err(e),
        }
    }

    pub fn from_cycle(cycle: Cycle) -> Solution {
        Solution {
            lift: cycle.lift(),
            cycle: Some(cycle),
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        self.cycle.is_none()
    }

    /// `(|r|, r)`, with hyperplanes and the point at infinity last.
    fn order_key(&self) -> (f64, f64) {
        match self.cycle.as_ref().and_then(Cycle::signed_radius) {
            Some(r) => (r.abs(), r),
            None => (f64::INFINITY, 0.0),
        }
    }
}

fn sort_canonical(solutions: &mut [Solution]) {
    solutions.sort_by(|a, b| {
        a.order_key()
            .partial_cmp(&b.order_key())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

fn common_dim(cycles: &[Cycle]) -> Result<usize> {
    let n = cycles
        .first()
        .ok_or_else(|| Error::InvalidArgument("no cycles given".into()))?
        .dim();
    for c in cycles {
        if c.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: c.dim(),
            });
        }
    }
    Ok(n)
}

/// Solves on lifts directly: complement of the family intersected with the
/// quadric. The family must have exactly two-dimensional complement.
pub fn apollonius_lifts(lifts: &[LieVec], tol: &Tolerances) -> Result<PencilIntersection> {
    let n = lifts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no cycles given".into()))?
        .dim();
    let basis = orthogonal_complement(n, lifts, tol.rank_cutoff)?;
    if basis.len() != 2 {
        return Err(Error::RankDeficient {
            complement_dim: basis.len(),
        });
    }
    intersect_pencil(&basis[0], &basis[1], tol)
}

/// All oriented cycles tangent to each of the `n + 1` given cycles in ℝⁿ,
/// in canonical order (smaller `|signed radius|` first).
pub fn solve_apollonius(cycles: &[Cycle], tol: &Tolerances) -> Result<Vec<Solution>> {
    let n = common_dim(cycles)?;
    if cycles.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "an Apollonius problem in dimension {n} needs {} cycles, got {}",
            n + 1,
            cycles.len()
        )));
    }
    let lifts: Vec<LieVec> = cycles.iter().map(Cycle::lift).collect();
    let hit = apollonius_lifts(&lifts, tol)?;
    let mut out = hit
        .roots
        .into_iter()
        .map(|r| Solution::from_lift(r, tol))
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut out);
    Ok(out)
}

/// Diagnostics for the subset `X \ {X_omitted}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetDiagnostic {
    pub omitted: usize,
    pub complement_dim: usize,
    pub discriminant: Option<f64>,
    pub solutions: usize,
}

/// The checked hypotheses of the concurrency theorems.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// Numerical rank of the n + 2 lifts.
    pub rank: usize,
    pub subsets: Vec<SubsetDiagnostic>,
    /// Rank n + 2 and exactly two distinct solutions for every subset.
    pub generic: bool,
}

impl Certificate {
    pub fn first_failure(&self) -> Option<&SubsetDiagnostic> {
        self.subsets.iter().find(|s| s.solutions != 2)
    }
}

/// An ordered family of n + 2 cycles in ℝⁿ.
#[derive(Debug, Clone)]
pub struct Configuration {
    dim: usize,
    cycles: Vec<Cycle>,
    label: String,
    certificate: OnceLock<Certificate>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.cycles == other.cycles && self.label == other.label
    }
}

impl Configuration {
    pub fn new(cycles: Vec<Cycle>, label: impl Into<String>) -> Result<Configuration> {
        let dim = common_dim(&cycles)?;
        if cycles.len() != dim + 2 {
            return Err(Error::InvalidArgument(format!(
                "a configuration in dimension {dim} needs {} cycles, got {}",
                dim + 2,
                cycles.len()
            )));
        }
        for c in &cycles {
            c.validate()?;
        }
        Ok(Configuration {
            dim,
            cycles,
            label: label.into(),
            certificate: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lifts(&self) -> Vec<LieVec> {
        self.cycles.iter().map(Cycle::lift).collect()
    }

    fn lifts_without(&self, omitted: usize) -> Vec<LieVec> {
        self.cycles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != omitted)
            .map(|(_, c)| c.lift())
            .collect()
    }

    /// Genericity certificate under default tolerances, computed once.
    pub fn certificate(&self) -> &Certificate {
        self.certificate
            .get_or_init(|| self.certificate_with(&Tolerances::default()))
    }

    pub fn certificate_with(&self, tol: &Tolerances) -> Certificate {
        let nullity = orthogonal_complement(self.dim, &self.lifts(), tol.rank_cutoff)
            .map(|b| b.len())
            .unwrap_or(self.dim + 3);
        let rank = self.dim + 3 - nullity;
        let subsets: Vec<SubsetDiagnostic> = (0..self.cycles.len())
            .map(|i| {
                let lifts = self.lifts_without(i);
                let complement_dim = orthogonal_complement(self.dim, &lifts, tol.rank_cutoff)
                    .map(|b| b.len())
                    .unwrap_or(0);
                let (discriminant, solutions) = match apollonius_lifts(&lifts, tol) {
                    Ok(hit) => (Some(hit.discriminant), hit.roots.len()),
                    Err(_) => (None, 0),
                };
                SubsetDiagnostic {
                    omitted: i,
                    complement_dim,
                    discriminant,
                    solutions,
                }
            })
            .collect();
        let generic = rank == self.dim + 2 && subsets.iter().all(|s| s.solutions == 2);
        Certificate {
            rank,
            subsets,
            generic,
        }
    }

    /// Largest distance between two cycle centers plus the largest
    /// `|radius|`, floored at 1. Hyperplanes do not contribute.
    pub fn scene_scale(&self) -> f64 {
        let centers: Vec<&[f64]> = self.cycles.iter().filter_map(Cycle::center).collect();
        let mut spread: f64 = 0.0;
        for (i, a) in centers.iter().enumerate() {
            for b in &centers[i + 1..] {
                spread = spread.max(distance(a, b));
            }
        }
        let radius = self
            .cycles
            .iter()
            .filter_map(Cycle::signed_radius)
            .fold(0.0_f64, |m, r| m.max(r.abs()));
        (spread + radius).max(1.0)
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Generator of the one-dimensional complement of the configuration's lifts.
pub fn compute_p(config: &Configuration, tol: &Tolerances) -> Result<LieVec> {
    let basis = orthogonal_complement(config.dim, &config.lifts(), tol.rank_cutoff)?;
    if basis.len() != 1 {
        return Err(Error::DegenerateConfiguration {
            nullity: basis.len(),
        });
    }
    Ok(basis.into_iter().next().expect("one basis vector"))
}

/// Affine point `(p_2, .., p_{n+1}) / p_{n+2}`.
pub fn p_x_point(p: &LieVec, tol: &Tolerances) -> Result<Vec<f64>> {
    let v = p.v_coord();
    if v.abs() <= tol.classify * p.norm() {
        return Err(Error::AtInfinity);
    }
    Ok(p.center_coords().iter().map(|c| c / v).collect())
}

/// The two solutions tangent to every cycle except `X_omitted`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApolloniusPair {
    pub omitted_index: usize,
    pub a: Solution,
    pub a_prime: Solution,
}

/// One pair per omitted cycle, in canonical order within each pair.
pub fn apollonius_pairs(config: &Configuration, tol: &Tolerances) -> Result<Vec<ApolloniusPair>> {
    (0..config.cycles.len())
        .map(|i| {
            let not_generic = |reason: String| Error::NotGeneric { subset: i, reason };
            let hit = match apollonius_lifts(&config.lifts_without(i), tol) {
                Ok(hit) => hit,
                Err(Error::RankDeficient { complement_dim }) => {
                    return Err(not_generic(format!(
                        "complement has dimension {complement_dim}"
                    )))
                }
                Err(Error::DegeneratePencil) => {
                    return Err(not_generic("infinitely many solutions".into()))
                }
                Err(e) => return Err(e),
            };
            if hit.roots.len() != 2 {
                return Err(not_generic(format!(
                    "{} distinct solution(s)",
                    hit.roots.len()
                )));
            }
            let mut sols = hit
                .roots
                .into_iter()
                .map(|r| Solution::from_lift(r, tol))
                .collect::<Result<Vec<_>>>()?;
            sort_canonical(&mut sols);
            let a_prime = sols.pop().expect("two solutions");
            let a = sols.pop().expect("two solutions");
            Ok(ApolloniusPair {
                omitted_index: i,
                a,
                a_prime,
            })
        })
        .collect()
}

/// A line `base + t direction` with unit direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Line {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

impl Line {
    pub fn through(p: &[f64], q: &[f64]) -> Option<Line> {
        let d: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
        let len = euclid_norm(&d);
        if len == 0.0 {
            return None;
        }
        Some(Line {
            base: p.to_vec(),
            direction: d.iter().map(|x| x / len).collect(),
        })
    }

    pub fn distance_to(&self, point: &[f64]) -> f64 {
        let rel: Vec<f64> = point.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let t: f64 = rel.iter().zip(&self.direction).map(|(a, b)| a * b).sum();
        let perp: Vec<f64> = rel
            .iter()
            .zip(&self.direction)
            .map(|(a, d)| a - t * d)
            .collect();
        euclid_norm(&perp)
    }

    /// Same line up to orientation of the direction, within `tol * scale`.
    pub fn coincides_with(&self, other: &Line, tol: f64, scale: f64) -> bool {
        let dot: f64 = self
            .direction
            .iter()
            .zip(&other.direction)
            .map(|(a, b)| a * b)
            .sum();
        (1.0 - dot.abs()) <= tol && self.distance_to(&other.base) <= tol * scale
    }
}

/// Line through the centers of two spheres or point spheres.
pub fn line_through_centers(a: &Cycle, b: &Cycle, tol: &Tolerances) -> Result<Line> {
    let (ca, cb) = match (a.center(), b.center()) {
        (Some(ca), Some(cb)) => (ca, cb),
        _ => return Err(Error::CenterAtInfinity),
    };
    let scale = crate::cycles::cycle_scale([a, b]);
    if distance(ca, cb) <= tol.coincident * scale {
        return Err(Error::CoincidentCenters);
    }
    Line::through(ca, cb).ok_or(Error::CoincidentCenters)
}

fn line_through_solutions(a: &Solution, b: &Solution, tol: &Tolerances) -> Result<Line> {
    match (&a.cycle, &b.cycle) {
        (Some(ca), Some(cb)) => line_through_centers(ca, cb, tol),
        _ => Err(Error::CenterAtInfinity),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineResidual {
    pub label: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedLine {
    pub label: String,
    pub reason: String,
}

/// Distances of a family of lines from the claimed common point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcurrencyReport {
    pub point: Vec<f64>,
    pub line_count: usize,
    pub max_distance: f64,
    pub tol: f64,
    pub scene_scale: f64,
    pub pass: bool,
    pub per_line: Vec<LineResidual>,
    pub skipped: Vec<SkippedLine>,
}

impl ConcurrencyReport {
    fn build(
        point: Vec<f64>,
        lines: Vec<(String, Result<Line>)>,
        tol: f64,
        scene_scale: f64,
    ) -> ConcurrencyReport {
        let mut per_line = Vec::new();
        let mut skipped = Vec::new();
        for (label, line) in lines {
            match line {
                Ok(line) => per_line.push(LineResidual {
                    label,
                    distance: line.distance_to(&point),
                }),
                Err(e) => skipped.push(SkippedLine {
                    label,
                    reason: e.code().to_string(),
                }),
            }
        }
        let max_distance = per_line.iter().fold(0.0_f64, |m, l| m.max(l.distance));
        ConcurrencyReport {
            point,
            line_count: per_line.len(),
            max_distance,
            tol,
            scene_scale,
            pass: max_distance <= tol * scene_scale,
            per_line,
            skipped,
        }
    }
}

/// Checks that every defined line through an Apollonius pair's centers
/// passes through `P_X`.
pub fn verify_first_level(
    config: &Configuration,
    tol: f64,
    tols: &Tolerances,
) -> Result<ConcurrencyReport> {
    let p = compute_p(config, tols)?;
    let point = p_x_point(&p, tols)?;
    let pairs = apollonius_pairs(config, tols)?;
    let lines = pairs
        .iter()
        .map(|pair| {
            let k = pair.omitted_index + 1;
            (
                format!("A{k}A{k}'"),
                line_through_solutions(&pair.a, &pair.a_prime, tols),
            )
        })
        .collect();
    Ok(ConcurrencyReport::build(
        point,
        lines,
        tol,
        config.scene_scale(),
    ))
}

/// Which member of each Apollonius pair is designated `A_i`.
///
/// `signs[i] == false` keeps the canonical order (`A_i` = the solution with
/// smaller `|radius|`). A global flip gives the same lines, so the
/// canonical form has `signs[0] == false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeAssignment {
    signs: Vec<bool>,
}

impl PrimeAssignment {
    pub fn new(mut signs: Vec<bool>) -> PrimeAssignment {
        if signs.first() == Some(&true) {
            signs.iter_mut().for_each(|s| *s = !*s);
        }
        PrimeAssignment { signs }
    }

    pub fn canonical(len: usize) -> PrimeAssignment {
        PrimeAssignment {
            signs: vec![false; len],
        }
    }

    /// All `2^(len-1)` assignments modulo the global flip.
    pub fn enumerate(len: usize) -> Vec<PrimeAssignment> {
        if len == 0 {
            return vec![PrimeAssignment { signs: Vec::new() }];
        }
        (0..1u64 << (len - 1))
            .map(|mask| PrimeAssignment {
                signs: (0..len)
                    .map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1)
                    .collect(),
            })
            .collect()
    }

    pub fn signs(&self) -> &[bool] {
        &self.signs
    }
}

/// Result of the second-level construction for one index.
#[derive(Debug, Clone, PartialEq)]
pub enum SecondLevel {
    Defined {
        b: Solution,
        b_prime: Solution,
    },
    /// `B_i = B_i'`, excluded by the theorem's hypothesis.
    Coincident {
        b: Solution,
    },
    /// `A \ {A_i}` (or its primed twin) does not have a two-dimensional
    /// complement, or its pencil lies on the quadric.
    RankDeficient {
        primed: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondLevelPair {
    pub index: usize,
    pub outcome: SecondLevel,
}

impl SecondLevelPair {
    pub fn defined(&self) -> bool {
        matches!(self.outcome, SecondLevel::Defined { .. })
    }
}

enum Other {
    Found(Solution),
    RankDeficient,
}

/// Solves the family and removes the solution equal to `omitted`.
fn other_solution(
    family: &[LieVec],
    omitted: &LieVec,
    index: usize,
    tol: &Tolerances,
) -> Result<Other> {
    let hit = match apollonius_lifts(family, tol) {
        Ok(hit) => hit,
        Err(Error::RankDeficient { .. }) | Err(Error::DegeneratePencil) => {
            return Ok(Other::RankDeficient)
        }
        Err(e) => return Err(e),
    };
    let (matching, rest): (Vec<LieVec>, Vec<LieVec>) = hit
        .roots
        .into_iter()
        .partition(|r| projective_equal(r, omitted, tol.projective));
    match (matching.len(), rest.len()) {
        (1, 1) => Ok(Other::Found(Solution::from_lift(
            rest.into_iter().next().unwrap(),
            tol,
        )?)),
        // double root at X_i: the second solution is X_i itself
        (1, 0) => Ok(Other::Found(Solution::from_lift(
            matching.into_iter().next().unwrap(),
            tol,
        )?)),
        _ => Err(Error::SecondLevelDegenerate { index }),
    }
}

fn two_step_from_pairs(
    config: &Configuration,
    pairs: &[ApolloniusPair],
    assign: &PrimeAssignment,
    tol: &Tolerances,
) -> Result<Vec<SecondLevelPair>> {
    if assign.signs.len() != pairs.len() {
        return Err(Error::InvalidArgument(format!(
            "assignment has {} entries for {} pairs",
            assign.signs.len(),
            pairs.len()
        )));
    }
    let (set_a, set_a_prime): (Vec<&Solution>, Vec<&Solution>) = pairs
        .iter()
        .zip(&assign.signs)
        .map(|(pair, &swap)| {
            if swap {
                (&pair.a_prime, &pair.a)
            } else {
                (&pair.a, &pair.a_prime)
            }
        })
        .unzip();
    let without = |set: &[&Solution], i: usize| -> Vec<LieVec> {
        set.iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| s.lift.clone())
            .collect()
    };

    let mut out = Vec::with_capacity(pairs.len());
    for (i, x_i) in config.cycles.iter().enumerate() {
        let x_lift = x_i.lift();
        let outcome = match (
            other_solution(&without(&set_a, i), &x_lift, i, tol)?,
            other_solution(&without(&set_a_prime, i), &x_lift, i, tol)?,
        ) {
            (Other::RankDeficient, _) => SecondLevel::RankDeficient { primed: false },
            (_, Other::RankDeficient) => SecondLevel::RankDeficient { primed: true },
            (Other::Found(b), Other::Found(b_prime)) => {
                if projective_equal(&b.lift, &b_prime.lift, tol.projective) {
                    SecondLevel::Coincident { b }
                } else {
                    SecondLevel::Defined { b, b_prime }
                }
            }
        };
        out.push(SecondLevelPair { index: i, outcome });
    }
    Ok(out)
}

/// For each `i`, the solutions `B_i` of `A \ {A_i}` and `B_i'` of
/// `A' \ {A_i'}` other than `X_i`.
pub fn two_step_pairs(
    config: &Configuration,
    assign: &PrimeAssignment,
    tol: &Tolerances,
) -> Result<Vec<SecondLevelPair>> {
    let pairs = apollonius_pairs(config, tol)?;
    two_step_from_pairs(config, &pairs, assign, tol)
}

/// Concurrency of the second-level lines over every prime assignment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondLevelReport {
    pub point: Vec<f64>,
    pub assignments: Vec<(PrimeAssignment, ConcurrencyReport)>,
    pub defined_lines: usize,
    pub distinct_lines: usize,
    /// `n 2^n`, the count stated for the construction; reported for
    /// comparison only.
    pub expected_lines: usize,
    pub max_distance: f64,
    pub tol: f64,
    pub scene_scale: f64,
    pub pass: bool,
}

pub fn verify_second_level(
    config: &Configuration,
    tol: f64,
    tols: &Tolerances,
) -> Result<SecondLevelReport> {
    let p = compute_p(config, tols)?;
    let point = p_x_point(&p, tols)?;
    let pairs = apollonius_pairs(config, tols)?;
    let scale = config.scene_scale();

    let mut assignments = Vec::new();
    let mut distinct: Vec<Line> = Vec::new();
    for assign in PrimeAssignment::enumerate(pairs.len()) {
        let second = two_step_from_pairs(config, &pairs, &assign, tols)?;
        let lines: Vec<(String, Result<Line>)> = second
            .iter()
            .map(|s| {
                let k = s.index + 1;
                let label = format!("B{k}B{k}'");
                let line = match &s.outcome {
                    SecondLevel::Defined { b, b_prime } => line_through_solutions(b, b_prime, tols),
                    SecondLevel::Coincident { .. } => Err(Error::CoincidentCenters),
                    SecondLevel::RankDeficient { .. } => {
                        Err(Error::RankDeficient { complement_dim: 0 })
                    }
                };
                (label, line)
            })
            .collect();
        for line in lines.iter().filter_map(|(_, l)| l.as_ref().ok()) {
            if !distinct.iter().any(|d| d.coincides_with(line, 1e-7, scale)) {
                distinct.push(line.clone());
            }
        }
        let report = ConcurrencyReport::build(point.clone(), lines, tol, scale);
        assignments.push((assign, report));
    }
    let defined_lines = assignments.iter().map(|(_, r)| r.line_count).sum();
    let max_distance = assignments
        .iter()
        .fold(0.0_f64, |m, (_, r)| m.max(r.max_distance));
    let n = config.dim;
    Ok(SecondLevelReport {
        point,
        pass: assignments.iter().all(|(_, r)| r.pass),
        assignments,
        defined_lines,
        distinct_lines: distinct.len(),
        expected_lines: n << n,
        max_distance,
        tol,
        scene_scale: scale,
    })
}

/// `P'`: `P` with its last coordinate shifted by `(P|P) / (2 p_{n+2})`, which
/// places it on the quadric without moving its homogeneous center.
pub fn inscribed_lift(p: &LieVec, tol: &Tolerances) -> Result<LieVec> {
    let p = p.normalized();
    let v = p.v_coord();
    if v.abs() <= tol.classify {
        return Err(Error::AtInfinity);
    }
    let pp = form(p.coords(), p.coords());
    let mut coords = p.into_coords();
    let last = coords.len() - 1;
    coords[last] -= pp / (2.0 * v);
    LieVec::new(coords)
}

/// The sphere centered at `P_X` tangent to every common tangent hyperplane
/// of every Apollonius pair.
pub fn inscribed_sphere(config: &Configuration, tol: &Tolerances) -> Result<Cycle> {
    let p = compute_p(config, tol)?;
    project(&inscribed_lift(&p, tol)?, tol)
}

/// Per-sample acceptance threshold for tangency of a sampled hyperplane.
const SAMPLE_TANGENCY: f64 = 1e-9;
/// Attempts per sample before giving up.
const SAMPLE_BUDGET: usize = 64;

/// Seeded sample of oriented hyperplanes tangent to both members of a pair.
///
/// Hyperplanes are exactly the cycles tangent to the point at infinity, so
/// the candidates form the complement of `{A, A', ∞}`. Each sample
/// intersects a random pencil in that space with the quadric.
pub fn sample_tangent_hyperplanes(
    pair: &ApolloniusPair,
    k: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<Cycle>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    let n = pair.a.lift.dim();
    let mut infinity = vec![0.0; n + 3];
    infinity[n + 2] = 1.0;
    let infinity = LieVec::new(infinity)?;
    let basis = orthogonal_complement(
        n,
        &[pair.a.lift.clone(), pair.a_prime.lift.clone(), infinity],
        tol.rank_cutoff,
    )?;
    if basis.len() < 2 {
        return Err(Error::EmptyTangentSet { budget: 0 });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_member = |rng: &mut ChaCha8Rng| -> Option<LieVec> {
        let weights: Vec<f64> = basis.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        let coords: Vec<f64> = (0..n + 3)
            .map(|j| {
                basis
                    .iter()
                    .zip(&weights)
                    .map(|(b, w)| b.coords()[j] * w)
                    .sum()
            })
            .collect();
        LieVec::new(coords).ok()
    };

    let mut samples = Vec::with_capacity(k);
    for _ in 0..k {
        let mut found = None;
        for _ in 0..SAMPLE_BUDGET {
            let (Some(u), Some(v)) = (random_member(&mut rng), random_member(&mut rng)) else {
                continue;
            };
            let Ok(hit) = intersect_pencil(&u, &v, tol) else {
                continue;
            };
            if hit.roots.is_empty() {
                continue;
            }
            let pick = rng.random_range(0..hit.roots.len());
            let Ok(candidate) = project(&hit.roots[pick], tol) else {
                continue;
            };
            if !matches!(candidate, Cycle::Hyperplane { .. }) {
                continue;
            }
            let touches = |s: &Solution| {
                tangency_residual_lie(&candidate, &s.lift)
                    .map(|r| r.abs() <= SAMPLE_TANGENCY)
                    .unwrap_or(false)
            };
            if touches(&pair.a) && touches(&pair.a_prime) {
                found = Some(candidate);
                break;
            }
        }
        match found {
            Some(h) => samples.push(h),
            None => {
                return Err(Error::EmptyTangentSet {
                    budget: SAMPLE_BUDGET,
                })
            }
        }
    }
    Ok(samples)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTangency {
    pub omitted_index: usize,
    pub samples: usize,
    /// No real common tangent hyperplane was found; the claim holds vacuously.
    pub empty: bool,
    pub max_residual: f64,
}

/// Tangency of `P'` against sampled common tangent hyperplanes of each pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub point: Vec<f64>,
    pub sphere_center: Vec<f64>,
    pub sphere_radius: f64,
    pub center_offset: f64,
    pub center_tol: f64,
    pub per_pair: Vec<PairTangency>,
    pub max_residual: f64,
    pub tol: f64,
    pub scene_scale: f64,
    pub seed: u64,
    pub pass: bool,
}

/// Relative bound on `|center(P') - P_X|`.
pub const INSCRIBED_CENTER_TOL: f64 = 1e-10;

pub fn verify_inscribed(
    config: &Configuration,
    k: usize,
    seed: u64,
    tol: f64,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    let p = compute_p(config, tols)?;
    let point = p_x_point(&p, tols)?;
    let sphere = project(&inscribed_lift(&p, tols)?, tols)?;
    let pairs = apollonius_pairs(config, tols)?;
    let scale = config.scene_scale();

    let sphere_center = sphere.center().ok_or(Error::AtInfinity)?.to_vec();
    let sphere_radius = sphere.signed_radius().unwrap_or(0.0);
    let center_offset = distance(&sphere_center, &point);

    let mut per_pair = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let pair_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ pair.omitted_index as u64;
        let entry = match sample_tangent_hyperplanes(pair, k, pair_seed, tols) {
            Ok(hs) => {
                let max_residual = hs
                    .iter()
                    .map(|h| tangency_residual(h, &sphere).map(f64::abs))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0_f64, f64::max);
                PairTangency {
                    omitted_index: pair.omitted_index,
                    samples: hs.len(),
                    empty: false,
                    max_residual,
                }
            }
            Err(Error::EmptyTangentSet { .. }) => PairTangency {
                omitted_index: pair.omitted_index,
                samples: 0,
                empty: true,
                max_residual: 0.0,
            },
            Err(e) => return Err(e),
        };
        per_pair.push(entry);
    }
    let max_residual = per_pair.iter().fold(0.0_f64, |m, p| m.max(p.max_residual));
    let center_tol = INSCRIBED_CENTER_TOL;
    Ok(VerificationReport {
        pass: max_residual <= tol && center_offset <= center_tol * scale,
        point,
        sphere_center,
        sphere_radius,
        center_offset,
        center_tol,
        per_pair,
        max_residual,
        tol,
        scene_scale: scale,
        seed,
    })
}
