//! Classical configurations as special cases of the concurrency theorems,
//! plus a seeded generator of generic configurations.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::apollonius::{
    apollonius_pairs, compute_p, distance, inscribed_sphere, p_x_point, solve_apollonius,
    two_step_pairs, verify_first_level, verify_inscribed, Configuration, Line, PrimeAssignment,
    SecondLevel, Solution,
};
use crate::cycles::{euclidean_tangency_oracle, Cycle, Orientation};
use crate::error::{Error, Result};
use crate::lie::{form, projective_equal};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioName {
    Circumcenter,
    Incenter,
    OuterApollonius,
    Mixtilinear,
    SoddyLine,
    Gasket,
    Morita3d,
    Olympiad,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 8] = [
        ScenarioName::Circumcenter,
        ScenarioName::Incenter,
        ScenarioName::OuterApollonius,
        ScenarioName::Mixtilinear,
        ScenarioName::SoddyLine,
        ScenarioName::Gasket,
        ScenarioName::Morita3d,
        ScenarioName::Olympiad,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Circumcenter => "circumcenter",
            ScenarioName::Incenter => "incenter",
            ScenarioName::OuterApollonius => "outer_apollonius",
            ScenarioName::Mixtilinear => "mixtilinear",
            ScenarioName::SoddyLine => "soddy_line",
            ScenarioName::Gasket => "gasket",
            ScenarioName::Morita3d => "morita3d",
            ScenarioName::Olympiad => "olympiad",
        }
    }
}

impl std::str::FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scenario {s:?}")))
    }
}

/// Optional inputs; each scenario reads the fields it needs and falls back
/// to built-in defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[[f64; 2]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circle_center: Option<[f64; 2]>,
    /// Magnitude; the scenario picks the orientation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circle_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    /// Radius of the circle around the incenter searched for the duality check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: ScenarioName,
    #[serde(default)]
    pub params: ScenarioParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl ScenarioSpec {
    pub fn new(name: ScenarioName) -> ScenarioSpec {
        ScenarioSpec {
            name,
            params: ScenarioParams::default(),
            dim: None,
        }
    }
}

/// One checked geometric fact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fact {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub name: ScenarioName,
    pub configuration: Configuration,
    pub point: Option<Vec<f64>>,
    pub facts: Vec<Fact>,
    pub notes: Vec<String>,
    pub pass: bool,
}

struct Facts {
    tol: f64,
    scale: f64,
    facts: Vec<Fact>,
    notes: Vec<String>,
}

impl Facts {
    fn new(tol: f64, scale: f64) -> Facts {
        Facts {
            tol,
            scale,
            facts: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// A length compared against `tol * scale`.
    fn length(&mut self, name: impl Into<String>, residual: f64) {
        let tol = self.tol * self.scale;
        self.push(name, residual, tol);
    }

    fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.facts.push(Fact {
            name: name.into(),
            residual,
            tol,
            pass: residual <= tol,
        });
    }

    fn report(
        self,
        name: ScenarioName,
        configuration: Configuration,
        point: Option<Vec<f64>>,
    ) -> ScenarioReport {
        ScenarioReport {
            name,
            configuration,
            point,
            pass: self.facts.iter().all(|f| f.pass),
            facts: self.facts,
            notes: self.notes,
        }
    }
}

type P2 = [f64; 2];

const DEFAULT_TRIANGLE: [P2; 3] = [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]];
const SCALENE_TRIANGLE: [P2; 3] = [[0.0, 0.0], [6.0, 0.0], [1.0, 4.0]];
const ACUTE_TRIANGLE: [P2; 3] = [[0.0, 0.0], [5.0, 0.0], [1.5, 3.5]];

fn cross2(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm2(a: P2) -> f64 {
    a[0].hypot(a[1])
}

fn to_p2(v: &[f64]) -> P2 {
    [v[0], v[1]]
}

fn check_triangle(t: [P2; 3]) -> Result<[P2; 3]> {
    let scale = t
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0_f64, |m, x| m.max(x.abs()));
    if t.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParams(
            "triangle has non-finite vertices".into(),
        ));
    }
    let area2 = cross2(sub2(t[1], t[0]), sub2(t[2], t[0]));
    if area2.abs() <= 1e-9 * scale * scale {
        return Err(Error::InvalidParams("triangle is degenerate".into()));
    }
    Ok(t)
}

/// Line through `p` and `q`, oriented so its normal points at `toward`.
fn inward_side(p: P2, q: P2, toward: P2) -> Result<Cycle> {
    let d = sub2(q, p);
    let mut normal = [-d[1], d[0]];
    if normal[0] * (toward[0] - p[0]) + normal[1] * (toward[1] - p[1]) < 0.0 {
        normal = [-normal[0], -normal[1]];
    }
    let offset = normal[0] * p[0] + normal[1] * p[1];
    Cycle::hyperplane(normal.to_vec(), offset, Orientation::Positive)
}

/// Sides `BA, AC, CB` of triangle `ABC`, oriented inward.
fn inward_sides(t: [P2; 3]) -> Result<[Cycle; 3]> {
    let [a, b, c] = t;
    Ok([
        inward_side(b, a, c)?,
        inward_side(a, c, b)?,
        inward_side(c, b, a)?,
    ])
}

fn side_lengths(t: [P2; 3]) -> [f64; 3] {
    let [a, b, c] = t;
    [norm2(sub2(b, c)), norm2(sub2(c, a)), norm2(sub2(a, b))]
}

pub fn incenter(t: [P2; 3]) -> P2 {
    let [la, lb, lc] = side_lengths(t);
    let s = la + lb + lc;
    [
        (la * t[0][0] + lb * t[1][0] + lc * t[2][0]) / s,
        (la * t[0][1] + lb * t[1][1] + lc * t[2][1]) / s,
    ]
}

pub fn inradius(t: [P2; 3]) -> f64 {
    let area = cross2(sub2(t[1], t[0]), sub2(t[2], t[0])).abs() / 2.0;
    let [la, lb, lc] = side_lengths(t);
    area / ((la + lb + lc) / 2.0)
}

pub fn circumcenter(t: [P2; 3]) -> P2 {
    let [a, b, c] = t;
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    let (a2, b2, c2) = (
        a[0] * a[0] + a[1] * a[1],
        b[0] * b[0] + b[1] * b[1],
        c[0] * c[0] + c[1] * c[1],
    );
    [
        (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d,
        (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d,
    ]
}

/// Smallest distance from `p` to the three side lines.
fn depth_inside(t: [P2; 3], p: P2) -> f64 {
    let [a, b, c] = t;
    let sign = cross2(sub2(b, a), sub2(c, a)).signum();
    [(a, b), (b, c), (c, a)]
        .iter()
        .map(|&(u, v)| sign * cross2(sub2(v, u), sub2(p, u)) / norm2(sub2(v, u)))
        .fold(f64::INFINITY, f64::min)
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidParams(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

fn sphere(center: Vec<f64>, radius: f64) -> Result<Cycle> {
    Cycle::sphere(center, radius)
}

fn center_of(c: &Cycle) -> Result<Vec<f64>> {
    c.center()
        .map(<[f64]>::to_vec)
        .ok_or(Error::CenterAtInfinity)
}

fn solution_center(s: &Solution) -> Result<Vec<f64>> {
    s.cycle
        .as_ref()
        .ok_or(Error::CenterAtInfinity)
        .and_then(center_of)
}

fn solution_cycle(s: &Solution) -> Result<Cycle> {
    s.cycle.clone().ok_or(Error::CenterAtInfinity)
}

fn expect_dim(spec: &ScenarioSpec, dim: usize) -> Result<()> {
    match spec.dim {
        Some(d) if d != dim => Err(Error::InvalidParams(format!(
            "scenario {} is defined in dimension {dim}, not {d}",
            spec.name.as_str()
        ))),
        _ => Ok(()),
    }
}

/// Centers of `n + 1` mutually externally tangent spheres with the given
/// radii, placed one coordinate axis at a time so that the k-th center lies
/// in the span of the first k - 1 axes.
pub fn kissing_centers(radii: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = radii.len().saturating_sub(1);
    if n < 1 {
        return Err(Error::InvalidParams("need at least two radii".into()));
    }
    for &r in radii {
        positive("radius", r)?;
    }
    let mut centers: Vec<Vec<f64>> = vec![vec![0.0; n]];
    for k in 1..=n {
        let d = |j: usize| radii[j] + radii[k];
        let mut x = vec![0.0; n];
        // x . c_j = (|c_j|^2 + d_0^2 - d_j^2) / 2, triangular in the axes
        for j in 1..k {
            let cj = &centers[j];
            let cj2: f64 = cj.iter().map(|v| v * v).sum();
            let rhs = (cj2 + d(0) * d(0) - d(j) * d(j)) / 2.0;
            let known: f64 = (0..j - 1).map(|l| cj[l] * x[l]).sum();
            x[j - 1] = (rhs - known) / cj[j - 1];
        }
        let used: f64 = x[..k - 1].iter().map(|v| v * v).sum();
        let h2 = d(0) * d(0) - used;
        if h2 <= 0.0 {
            return Err(Error::InvalidParams(
                "radii admit no mutually tangent placement".into(),
            ));
        }
        x[k - 1] = h2.sqrt();
        centers.push(x);
    }
    Ok(centers)
}

fn kissing_spheres(radii: &[f64]) -> Result<Vec<Cycle>> {
    kissing_centers(radii)?
        .into_iter()
        .zip(radii)
        .map(|(c, &r)| sphere(c, r))
        .collect()
}

/// Inner and outer Apollonius spheres of positively oriented kissing spheres,
/// both returned with positive orientation.
fn soddy_spheres(kissing: &[Cycle], tol: &Tolerances) -> Result<(Cycle, Cycle)> {
    let sols = solve_apollonius(kissing, tol)?;
    if sols.len() != 2 || sols.iter().any(|s| s.cycle.is_none()) {
        return Err(Error::InvalidParams(
            "kissing spheres have no pair of finite Apollonius spheres".into(),
        ));
    }
    let inner = solution_cycle(&sols[0])?;
    let outer = solution_cycle(&sols[1])?;
    match (inner, outer) {
        (i @ Cycle::Sphere { .. }, o @ Cycle::Sphere { .. }) => {
            let i = if i.signed_radius().unwrap_or(0.0) < 0.0 {
                i.reversed()
            } else {
                i
            };
            let o = if o.signed_radius().unwrap_or(0.0) < 0.0 {
                o.reversed()
            } else {
                o
            };
            Ok((i, o))
        }
        _ => Err(Error::InvalidParams(
            "an Apollonius solution of the kissing spheres is not a sphere".into(),
        )),
    }
}

fn soddy_line_of(inner: &Cycle, outer: &Cycle) -> Result<Line> {
    Line::through(&center_of(inner)?, &center_of(outer)?).ok_or(Error::CoincidentCenters)
}

fn seeded_radii(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(0.6..1.4)).collect()
}

/// Builds the configuration for a scenario.
pub fn build_scenario(spec: &ScenarioSpec) -> Result<Configuration> {
    build_with(spec, &Tolerances::default())
}

fn build_with(spec: &ScenarioSpec, tol: &Tolerances) -> Result<Configuration> {
    let p = &spec.params;
    let label = spec.name.as_str();
    match spec.name {
        ScenarioName::Incenter => {
            expect_dim(spec, 2)?;
            let t = check_triangle(p.triangle.unwrap_or(DEFAULT_TRIANGLE))?;
            let center = p.circle_center.unwrap_or([1.5, 1.2]);
            let r = positive("circle_radius", p.circle_radius.unwrap_or(0.3))?;
            if depth_inside(t, center) <= r {
                return Err(Error::InvalidParams(
                    "circle is not strictly inside the triangle".into(),
                ));
            }
            let [ba, ac, cb] = inward_sides(t)?;
            Configuration::new(vec![ba, ac, cb, sphere(center.to_vec(), r)?], label)
        }
        ScenarioName::Circumcenter => {
            expect_dim(spec, 2)?;
            let t = check_triangle(p.triangle.unwrap_or(DEFAULT_TRIANGLE))?;
            let center = p.circle_center.unwrap_or([1.0, 1.0]);
            let r = positive("circle_radius", p.circle_radius.unwrap_or(0.5))?;
            let mut cycles = t
                .iter()
                .map(|v| Cycle::point(v.to_vec()))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(sphere(center.to_vec(), r)?);
            Configuration::new(cycles, label)
        }
        ScenarioName::OuterApollonius => {
            expect_dim(spec, 2)?;
            let t = check_triangle(p.triangle.unwrap_or(SCALENE_TRIANGLE))?;
            let i = incenter(t);
            let center = p.circle_center.unwrap_or([i[0] + 0.4, i[1] + 0.25]);
            let r = positive("circle_radius", p.circle_radius.unwrap_or(0.3))?;
            outer_apollonius_config(t, center, r)
        }
        ScenarioName::Mixtilinear => {
            expect_dim(spec, 2)?;
            let t = check_triangle(p.triangle.unwrap_or(ACUTE_TRIANGLE))?;
            let o = circumcenter(t);
            let omega = sphere(o.to_vec(), norm2(sub2(t[0], o)))?;
            let [ba, ac, cb] = inward_sides(t)?;
            Configuration::new(vec![omega, cb, ba, ac], label)
        }
        ScenarioName::Gasket => {
            expect_dim(spec, 2)?;
            let radii = p.radii.clone().unwrap_or_else(|| vec![1.0, 2.0, 3.0]);
            if radii.len() != 3 {
                return Err(Error::InvalidParams("gasket needs three radii".into()));
            }
            let omegas = kissing_spheres(&radii)?;
            let (inner, _) = soddy_spheres(&omegas, tol)?;
            let mut cycles = omegas;
            cycles.push(inner);
            Configuration::new(cycles, label)
        }
        ScenarioName::Morita3d => {
            expect_dim(spec, 3)?;
            let radii = p.radii.clone().unwrap_or_else(|| vec![1.0; 4]);
            if radii.len() != 4 {
                return Err(Error::InvalidParams("morita3d needs four radii".into()));
            }
            let spheres = kissing_spheres(&radii)?;
            let (_, outer) = soddy_spheres(&spheres, tol)?;
            let mut cycles = spheres;
            cycles.push(outer.reversed());
            Configuration::new(cycles, label)
        }
        ScenarioName::SoddyLine => {
            let (kissing, _, _) = soddy_line_parts(spec, tol)?;
            let (inner, _) = soddy_spheres(&kissing, tol)?;
            let mut cycles = kissing;
            cycles.push(inner);
            Configuration::new(cycles, label)
        }
        ScenarioName::Olympiad => {
            expect_dim(spec, 2)?;
            Ok(olympiad_parts(p.seed.unwrap_or(0), tol)?.configuration)
        }
    }
}

fn soddy_line_parts(spec: &ScenarioSpec, tol: &Tolerances) -> Result<(Vec<Cycle>, Cycle, Cycle)> {
    let radii = match (&spec.params.radii, spec.dim) {
        (Some(r), Some(d)) if r.len() != d + 1 => {
            return Err(Error::InvalidParams(format!(
                "dimension {d} needs {} radii, got {}",
                d + 1,
                r.len()
            )))
        }
        (Some(r), _) => r.clone(),
        (None, d) => seeded_radii(d.unwrap_or(2) + 1, spec.params.seed.unwrap_or(0)),
    };
    if radii.len() < 3 {
        return Err(Error::InvalidParams(
            "soddy_line needs dimension >= 2".into(),
        ));
    }
    let kissing = kissing_spheres(&radii)?;
    let (inner, outer) = soddy_spheres(&kissing, tol)?;
    Ok((kissing, inner, outer))
}

fn outer_apollonius_config(t: [P2; 3], center: P2, r: f64) -> Result<Configuration> {
    if depth_inside(t, center) <= r {
        return Err(Error::InvalidParams(
            "circle is not strictly inside the triangle".into(),
        ));
    }
    let [ba, ac, cb] = inward_sides(t)?;
    // ω is oriented against the tangent circles so they touch it externally
    let omega = sphere(center.to_vec(), -r)?;
    Configuration::new(vec![ba, ac, cb, omega], "outer_apollonius")
}

struct Olympiad {
    configuration: Configuration,
    /// ω1 .. ω6, all positively oriented.
    circles: Vec<Cycle>,
}

fn other_than(sols: Vec<Solution>, known: &Cycle, tol: &Tolerances) -> Result<Cycle> {
    let known = known.lift();
    let mut rest = sols
        .into_iter()
        .filter(|s| !projective_equal(&s.lift, &known, tol.projective));
    match (rest.next(), rest.next()) {
        (Some(s), None) => solution_cycle(&s),
        _ => Err(Error::InvalidParams(
            "tangent circle chain does not close up".into(),
        )),
    }
}

fn olympiad_parts(seed: u64, tol: &Tolerances) -> Result<Olympiad> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r1 = rng.random_range(0.2..0.45);
    let r2 = rng.random_range(0.2..0.45);
    let theta = rng.random_range(0.0..2.0 * PI);
    let side = if rng.random_bool(0.5) { 1.0 } else { -1.0 };

    let c1 = [(1.0 - r1) * theta.cos(), (1.0 - r1) * theta.sin()];
    // |c2| = 1 - r2 and |c2 - c1| = r1 + r2
    let (d, a, b) = (1.0 - r1, 1.0 - r2, r1 + r2);
    let along = (d * d + a * a - b * b) / (2.0 * d);
    let across = (a * a - along * along).sqrt();
    let u = [c1[0] / d, c1[1] / d];
    let c2 = [
        along * u[0] - side * across * u[1],
        along * u[1] + side * across * u[0],
    ];

    let big = sphere(vec![0.0, 0.0], 1.0)?;
    let w1 = sphere(c1.to_vec(), r1)?;
    let w2 = sphere(c2.to_vec(), r2)?;
    let pair = solve_apollonius(&[big.clone(), w1.reversed(), w2.reversed()], tol)?;
    if pair.len() != 2 {
        return Err(Error::InvalidParams("no circles in the gaps".into()));
    }
    let w3 = solution_cycle(&pair[0])?;
    let w4 = solution_cycle(&pair[1])?;
    let w5 = other_than(
        solve_apollonius(&[big.clone(), w1.reversed(), w3.reversed()], tol)?,
        &w2,
        tol,
    )?;
    let w6 = other_than(
        solve_apollonius(&[big.clone(), w2.reversed(), w3.reversed()], tol)?,
        &w1,
        tol,
    )?;
    let configuration = Configuration::new(
        vec![big, w1.reversed(), w2.reversed(), w3.reversed()],
        "olympiad",
    )?;
    Ok(Olympiad {
        configuration,
        circles: vec![w1, w2, w3, w4, w5, w6],
    })
}

fn intersect_lines_2d(a: &Line, b: &Line) -> Option<P2> {
    let denom = cross2(to_p2(&a.direction), to_p2(&b.direction));
    if denom.abs() < 1e-14 {
        return None;
    }
    let t = cross2(sub2(to_p2(&b.base), to_p2(&a.base)), to_p2(&b.direction)) / denom;
    Some([
        a.base[0] + t * a.direction[0],
        a.base[1] + t * a.direction[1],
    ])
}

/// `B_i` and `B_i'` under the canonical assignment.
fn second_level_centers(
    config: &Configuration,
    index: usize,
    tol: &Tolerances,
) -> Result<(Solution, Solution)> {
    let pairs = two_step_pairs(
        config,
        &PrimeAssignment::canonical(config.cycles().len()),
        tol,
    )?;
    match &pairs[index].outcome {
        SecondLevel::Defined { b, b_prime } => Ok((b.clone(), b_prime.clone())),
        other => Err(Error::InvalidParams(format!(
            "second-level pair {index} is not defined: {other:?}"
        ))),
    }
}

/// Runs the theorem machinery on a scenario and checks its named facts.
pub fn verify_scenario(spec: &ScenarioSpec, tol: f64) -> Result<ScenarioReport> {
    verify_scenario_with(spec, tol, &Tolerances::default())
}

pub fn verify_scenario_with(
    spec: &ScenarioSpec,
    tol: f64,
    tols: &Tolerances,
) -> Result<ScenarioReport> {
    let config = build_with(spec, tols)?;
    let scale = config.scene_scale();
    let mut facts = Facts::new(tol, scale);
    let p = compute_p(&config, tols)?;
    let point = p_x_point(&p, tols)?;
    let px = to_p2(&point);

    match spec.name {
        ScenarioName::Circumcenter => {
            let t = spec.params.triangle.unwrap_or(DEFAULT_TRIANGLE);
            facts.length("P_X = circumcenter", distance(&point, &circumcenter(t)));
            let first = verify_first_level(&config, tol, tols)?;
            facts.length("first-level lines through P_X", first.max_distance);
            for s in &first.skipped {
                facts
                    .notes
                    .push(format!("line {} skipped: {}", s.label, s.reason));
            }
        }
        ScenarioName::Incenter => {
            let t = spec.params.triangle.unwrap_or(DEFAULT_TRIANGLE);
            facts.length("P_X = incenter", distance(&point, &incenter(t)));
            let s = inscribed_sphere(&config, tols)?;
            facts.length(
                "inscribed sphere center = incenter",
                distance(&center_of(&s)?, &incenter(t)),
            );
            facts.length(
                "inscribed sphere radius = inradius",
                (s.signed_radius().unwrap_or(0.0) - inradius(t)).abs(),
            );
            let first = verify_first_level(&config, tol, tols)?;
            facts.length("angle bisectors through P_X", first.max_distance);
        }
        ScenarioName::OuterApollonius => {
            let t = spec.params.triangle.unwrap_or(SCALENE_TRIANGLE);
            let i = incenter(t);
            facts.length("P_X = incenter", distance(&point, &i));
            let (b, b_prime) = second_level_centers(&config, 3, tols)?;
            let (o1, o2) = (solution_center(&b)?, solution_center(&b_prime)?);
            let line = Line::through(&o1, &o2).ok_or(Error::CoincidentCenters)?;
            facts.length("I on line O1O2", line.distance_to(&i));
            let omega_r = config.cycles()[3].signed_radius().unwrap_or(0.0).abs();
            for (name, s) in [("O1", &b), ("O2", &b_prime)] {
                let r = solution_cycle(s)?.signed_radius().unwrap_or(0.0).abs();
                if r <= omega_r {
                    facts
                        .notes
                        .push(format!("{name} is not larger than the inner circle"));
                }
            }
            facts.notes.push(
                "outer circle = solution other than the inner circle, larger |radius|".into(),
            );

            let r = spec.params.circle_radius.unwrap_or(0.3);
            let probe = spec.params.probe_radius.unwrap_or(0.35 * inradius(t));
            let residual = duality_residual(t, i, r, probe, tols)?;
            facts.length("P, I, O1, O2 collinear", residual);
        }
        ScenarioName::Mixtilinear => {
            let t = spec.params.triangle.unwrap_or(ACUTE_TRIANGLE);
            let i = incenter(t);
            let o = circumcenter(t);
            facts.length("P_X = incenter", distance(&point, &i));
            let cycles = config.cycles();
            let omega = &cycles[0];
            // Ap(Ω, BA, AC) = {A, ω_A} and cyclically
            for (k, (l1, l2)) in [(2, 3), (1, 2), (3, 1)].into_iter().enumerate() {
                let sols = solve_apollonius(
                    &[omega.clone(), cycles[l1].clone(), cycles[l2].clone()],
                    tols,
                )?;
                if sols.len() != 2 {
                    return Err(Error::InvalidParams("mixtilinear pair missing".into()));
                }
                let vertex = solution_cycle(&sols[0])?;
                let vertex_ok = matches!(vertex, Cycle::PointSphere { .. });
                facts.push(
                    format!("vertex {} recovered as a point sphere", k + 1),
                    if vertex_ok { 0.0 } else { 1.0 },
                    0.0,
                );
                facts.length(
                    format!("point solution {} at the vertex", k + 1),
                    distance(&center_of(&vertex)?, &t[k]),
                );
                let mix = solution_cycle(&sols[1])?;
                let touches = euclidean_tangency_oracle(&mix, omega, 1e-9 * scale);
                let inside = mix.signed_radius().unwrap_or(0.0).abs()
                    < omega.signed_radius().unwrap_or(0.0).abs();
                facts.push(
                    format!("mixtilinear circle {} internally tangent", k + 1),
                    if touches && inside { 0.0 } else { 1.0 },
                    0.0,
                );
            }
            let (b, b_prime) = second_level_centers(&config, 0, tols)?;
            let b_cycle = solution_cycle(&b)?;
            facts.push(
                "B_1 = -Ω",
                if b_cycle.same_as(&omega.reversed(), tols.projective) {
                    0.0
                } else {
                    1.0
                },
                0.0,
            );
            let s = solution_center(&b_prime)?;
            let line = Line::through(&s, &o).ok_or(Error::CoincidentCenters)?;
            facts.length("I on line SO", line.distance_to(&i));
        }
        ScenarioName::Gasket => {
            let omegas = config.cycles()[..3].to_vec();
            let (inner, outer) = soddy_spheres(&omegas, tols)?;
            let soddy = soddy_line_of(&inner, &outer)?;

            let first = verify_first_level(&config, tol, tols)?;
            facts.length("S1 family: lines concurrent", first.max_distance);
            facts.length(
                "S1 family: point on Soddy line",
                soddy.distance_to(&first.point),
            );

            let mut second = omegas.clone();
            second.push(outer.reversed());
            let second = Configuration::new(second, "gasket S2")?;
            let first2 = verify_first_level(&second, tol, tols)?;
            facts.length("S2 family: lines concurrent", first2.max_distance);
            facts.length(
                "S2 family: point on Soddy line",
                soddy.distance_to(&first2.point),
            );

            // Ap(Ω2, Ω3, S1) = {-Ω1, -ω1}
            let pairs = apollonius_pairs(&config, tols)?;
            let minus = omegas[0].reversed().lift();
            let hit = [&pairs[0].a, &pairs[0].a_prime]
                .iter()
                .any(|s| projective_equal(&s.lift, &minus, tols.projective));
            facts.push("-Ω1 solves (Ω2, Ω3, S1)", if hit { 0.0 } else { 1.0 }, 0.0);
        }
        ScenarioName::Morita3d => {
            let report = verify_inscribed(&config, 16, spec.params.seed.unwrap_or(0), tol, tols)?;
            facts.push(
                "inscribed sphere tangent to sampled cones",
                report.max_residual,
                tol,
            );
            facts.length("inscribed sphere centered at P_X", report.center_offset);
            let empty = report.per_pair.iter().filter(|p| p.empty).count();
            if empty > 0 {
                facts
                    .notes
                    .push(format!("{empty} pair(s) with no tangent plane"));
            }
            let cycles = config.cycles();
            let sols = solve_apollonius(
                &cycles[..3]
                    .iter()
                    .chain(&cycles[4..])
                    .cloned()
                    .collect::<Vec<_>>(),
                tols,
            )?;
            let minus = cycles[3].reversed().lift();
            let hit = sols
                .iter()
                .any(|s| projective_equal(&s.lift, &minus, tols.projective));
            facts.push(
                "-S_O4 solves (S_O1, S_O2, S_O3, S)",
                if hit { 0.0 } else { 1.0 },
                0.0,
            );
            let (inner, outer) = soddy_spheres(&cycles[..4], tols)?;
            facts.length(
                "P_X on the Soddy line",
                soddy_line_of(&inner, &outer)?.distance_to(&point),
            );
        }
        ScenarioName::SoddyLine => {
            let (_, inner, outer) = soddy_line_parts(spec, tols)?;
            let soddy = soddy_line_of(&inner, &outer)?;
            let first = verify_first_level(&config, tol, tols)?;
            facts.length("first-level lines concurrent", first.max_distance);
            facts.length("P_X on the Soddy line", soddy.distance_to(&point));
        }
        ScenarioName::Olympiad => {
            let parts = olympiad_parts(spec.params.seed.unwrap_or(0), tols)?;
            let centers = parts
                .circles
                .iter()
                .map(center_of)
                .collect::<Result<Vec<_>>>()?;
            let line = |a: usize, b: usize| {
                Line::through(&centers[a], &centers[b]).ok_or(Error::CoincidentCenters)
            };
            let lines = [line(0, 5)?, line(1, 4)?, line(2, 3)?];
            match intersect_lines_2d(&lines[0], &lines[1]) {
                Some(x) => facts.length("O3O4 through O1O6 ∩ O2O5", lines[2].distance_to(&x)),
                None => facts.notes.push("O1O6 and O2O5 are parallel".into()),
            }
            for (name, l) in ["O1O6", "O2O5", "O3O4"].iter().zip(&lines) {
                facts.length(format!("P_X on {name}"), l.distance_to(&px));
            }
        }
    }
    Ok(facts.report(spec.name, config, Some(point)))
}

/// Moves ω's center around a circle about `I` until it lies on line `I O1`,
/// then reports how far `O2` (and the center itself) are from that line.
fn duality_residual(t: [P2; 3], i: P2, r: f64, probe: f64, tol: &Tolerances) -> Result<f64> {
    let centers_at = |theta: f64| -> Option<(P2, P2, P2)> {
        let p = [i[0] + probe * theta.cos(), i[1] + probe * theta.sin()];
        let config = outer_apollonius_config(t, p, r).ok()?;
        let (b, b_prime) = second_level_centers(&config, 3, tol).ok()?;
        Some((
            p,
            to_p2(&solution_center(&b).ok()?),
            to_p2(&solution_center(&b_prime).ok()?),
        ))
    };
    let f = |theta: f64| {
        centers_at(theta).map(|(p, o1, _)| {
            let u = sub2(o1, i);
            cross2(u, sub2(p, i)) / norm2(u)
        })
    };

    const STEPS: usize = 72;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=STEPS {
        let theta = 2.0 * PI * k as f64 / STEPS as f64;
        let Some(value) = f(theta) else {
            prev = None;
            continue;
        };
        if let Some((t0, v0)) = prev {
            if v0.signum() != value.signum() {
                let (mut lo, mut hi, mut flo) = (t0, theta, v0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let Some(fm) = f(mid) else { break };
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                let theta = 0.5 * (lo + hi);
                if let Some((p, o1, o2)) = centers_at(theta) {
                    let line = Line::through(&i, &o1).ok_or(Error::CoincidentCenters)?;
                    let on_p = line.distance_to(&p);
                    // a sign change across a pole is not a root
                    if on_p <= 1e-6 * probe {
                        return Ok(on_p.max(line.distance_to(&o2)));
                    }
                }
            }
        }
        prev = Some((theta, value));
    }
    Err(Error::InvalidParams(
        "no center on the probe circle is collinear with I and O1".into(),
    ))
}

/// A generic configuration together with the number of rejected draws.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomConfiguration {
    pub configuration: Configuration,
    pub rejections: usize,
}

pub const DEFAULT_ATTEMPTS: usize = 10_000;
/// Lower bounds on `|(P|P)| / |P|^2` and `|p_{n+2}| / |P|`.
const MIN_NORM_P: f64 = 1e-4;
const MIN_V_P: f64 = 1e-4;

pub fn random_configuration(n: usize, seed: u64) -> Result<RandomConfiguration> {
    random_configuration_with(n, seed, DEFAULT_ATTEMPTS, &Tolerances::default())
}

/// Rejection-samples `n + 2` spheres with centers in `[-1, 1]^n` and
/// signed radii in `±[0.1, 0.4]`.
pub fn random_configuration_with(
    n: usize,
    seed: u64,
    attempts: usize,
    tol: &Tolerances,
) -> Result<RandomConfiguration> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "random configurations need n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejections in 0..attempts {
        let cycles = (0..n + 2)
            .map(|_| {
                let center: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let r: f64 = rng.random_range(0.1..0.4);
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                sphere(center, sign * r)
            })
            .collect::<Result<Vec<_>>>()?;
        let config = Configuration::new(cycles, format!("random n={n} seed={seed}"))?;
        if acceptable(&config, tol) {
            return Ok(RandomConfiguration {
                configuration: config,
                rejections,
            });
        }
    }
    Err(Error::GenerationExhausted { attempts })
}

fn acceptable(config: &Configuration, tol: &Tolerances) -> bool {
    if !config.certificate_with(tol).generic {
        return false;
    }
    let Ok(p) = compute_p(config, tol) else {
        return false;
    };
    let p = p.normalized();
    form(p.coords(), p.coords()).abs() > MIN_NORM_P && p.v_coord().abs() > MIN_V_P
}
