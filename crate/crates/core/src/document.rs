//! JSON documents: configurations in, reports out.

use serde::{Deserialize, Serialize};

use crate::apollonius::{
    ConcurrencyReport, Configuration, SecondLevelReport, SkippedLine, Solution, VerificationReport,
};
use crate::cycles::{Cycle, Orientation};
use crate::error::{Error, Result};
use crate::lie::euclid_norm;
use crate::scenarios::ScenarioReport;
use crate::tolerance::Tolerances;

pub const TOOL_VERSION: &str = concat!("apollonius ", env!("CARGO_PKG_VERSION"));

/// Wire form of a cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CycleRecord {
    Sphere {
        center: Vec<f64>,
        radius: f64,
    },
    Hyperplane {
        normal: Vec<f64>,
        offset: f64,
        orientation: i64,
    },
    Point {
        coords: Vec<f64>,
    },
}

impl From<&Cycle> for CycleRecord {
    fn from(c: &Cycle) -> Self {
        match c {
            Cycle::Sphere { center, radius } => CycleRecord::Sphere {
                center: center.clone(),
                radius: *radius,
            },
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            } => CycleRecord::Hyperplane {
                normal: unit_normal.clone(),
                offset: *offset,
                orientation: i64::from(*orientation),
            },
            Cycle::PointSphere { coords } => CycleRecord::Point {
                coords: coords.clone(),
            },
        }
    }
}

impl From<Orientation> for i64 {
    fn from(o: Orientation) -> i64 {
        match o {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

impl CycleRecord {
    /// Converts to a cycle. Records coming out of [`parse_config`] are
    /// already normalized, so this does not alter their bits.
    pub fn to_cycle(&self) -> Result<Cycle> {
        let cycle = match self {
            CycleRecord::Sphere { center, radius } => Cycle::sphere(center.clone(), *radius)?,
            CycleRecord::Point { coords } => Cycle::point(coords.clone())?,
            CycleRecord::Hyperplane {
                normal,
                offset,
                orientation,
            } => {
                let orientation = match orientation {
                    1 => Orientation::Positive,
                    -1 => Orientation::Negative,
                    o => {
                        return Err(Error::InvalidCycle(format!(
                            "orientation must be 1 or -1, got {o}"
                        )))
                    }
                };
                if (euclid_norm(normal) - 1.0).abs() <= 4.0 * f64::EPSILON {
                    let c = Cycle::Hyperplane {
                        unit_normal: normal.clone(),
                        offset: *offset,
                        orientation,
                    };
                    c.validate()?;
                    c
                } else {
                    Cycle::hyperplane(normal.clone(), *offset, orientation)?
                }
            }
        };
        Ok(cycle)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub dimension: usize,
    pub cycles: Vec<CycleRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ConfigDocument {
    pub fn from_cycles(dimension: usize, cycles: &[Cycle], label: Option<String>) -> Self {
        ConfigDocument {
            dimension,
            cycles: cycles.iter().map(CycleRecord::from).collect(),
            label,
        }
    }

    pub fn from_configuration(config: &Configuration) -> Self {
        let label = Some(config.label().to_string()).filter(|l| !l.is_empty());
        Self::from_cycles(config.dim(), config.cycles(), label)
    }

    pub fn to_cycles(&self) -> Result<Vec<Cycle>> {
        self.cycles.iter().map(CycleRecord::to_cycle).collect()
    }

    /// Requires exactly `dimension + 2` cycles.
    pub fn to_configuration(&self) -> Result<Configuration> {
        Configuration::new(self.to_cycles()?, self.label.clone().unwrap_or_default())
    }
}

/// A parsed document plus notes about anything that was normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub document: ConfigDocument,
    pub diagnostics: Vec<String>,
}

fn invalid(path: String, message: impl Into<String>) -> Error {
    Error::Validation {
        path,
        message: message.into(),
    }
}

/// Strict parse and validation of a configuration document.
pub fn parse_config(text: &str) -> Result<Parsed> {
    let mut document: ConfigDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = document.dimension;
    if n == 0 {
        return Err(invalid("dimension".into(), "must be at least 1"));
    }
    let mut diagnostics = Vec::new();
    for (i, record) in document.cycles.iter_mut().enumerate() {
        let path = |field: &str| format!("cycles[{i}].{field}");
        let check_len = |field: &str, v: &[f64]| {
            if v.len() == n {
                Ok(())
            } else {
                Err(invalid(
                    path(field),
                    format!("expected {n} coordinates, got {}", v.len()),
                ))
            }
        };
        match record {
            CycleRecord::Sphere { center, radius } => {
                check_len("center", center)?;
                if *radius == 0.0 {
                    return Err(invalid(
                        path("radius"),
                        "radius 0 is not a sphere; use {\"type\":\"point\",\"coords\":[...]}",
                    ));
                }
            }
            CycleRecord::Point { coords } => check_len("coords", coords)?,
            CycleRecord::Hyperplane {
                normal,
                offset,
                orientation,
            } => {
                check_len("normal", normal)?;
                if *orientation != 1 && *orientation != -1 {
                    return Err(invalid(path("orientation"), "must be 1 or -1"));
                }
                let len = euclid_norm(normal);
                if len == 0.0 {
                    return Err(invalid(path("normal"), "normal is zero"));
                }
                if (len - 1.0).abs() > 4.0 * f64::EPSILON {
                    normal.iter_mut().for_each(|x| *x /= len);
                    *offset /= len;
                    diagnostics.push(format!(
                        "{}: normal of length {len} normalized (offset rescaled)",
                        path("normal")
                    ));
                }
            }
        }
        record
            .to_cycle()
            .map_err(|e| invalid(format!("cycles[{i}]"), e.to_string()))?;
    }
    Ok(Parsed {
        document,
        diagnostics,
    })
}

pub fn serialize(doc: &ConfigDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

/// A solution as reported by `solve`; `cycle` is null for the point at infinity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub lift: Vec<f64>,
    pub cycle: Option<CycleRecord>,
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        SolutionRecord {
            lift: s.lift.coords().to_vec(),
            cycle: s.cycle.as_ref().map(CycleRecord::from),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    FirstLevel,
    TwoStep,
    Inscribed,
    Scenario,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Residual {
    fn new(label: impl Into<String>, value: f64, tol: f64) -> Residual {
        Residual {
            label: label.into(),
            value,
            tol,
            pass: value <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportTolerances {
    /// Pass/fail threshold as given by the caller.
    pub check: f64,
    /// Lengths are compared against `check * scene_scale`.
    pub scene_scale: f64,
    pub engine: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub theorem: Theorem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub pass: bool,
    pub point: Option<Vec<f64>>,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub tolerances: ReportTolerances,
    pub tool_version: String,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configuration: Option<ConfigDocument>,
}

impl ReportDocument {
    fn base(theorem: Theorem, check: f64, scene_scale: f64, engine: &Tolerances) -> Self {
        ReportDocument {
            theorem,
            scenario: None,
            pass: true,
            point: None,
            residuals: Vec::new(),
            skipped: Vec::new(),
            notes: Vec::new(),
            tolerances: ReportTolerances {
                check,
                scene_scale,
                engine: *engine,
            },
            tool_version: TOOL_VERSION.to_string(),
            seed: None,
            configuration: None,
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.residuals.iter().all(|r| r.pass);
        self
    }

    pub fn first_level(r: &ConcurrencyReport, engine: &Tolerances) -> Self {
        let mut doc = Self::base(Theorem::FirstLevel, r.tol, r.scene_scale, engine);
        doc.point = Some(r.point.clone());
        let limit = r.tol * r.scene_scale;
        doc.residuals = r
            .per_line
            .iter()
            .map(|l| Residual::new(&l.label, l.distance, limit))
            .collect();
        doc.skipped = r.skipped.clone();
        doc.finish()
    }

    pub fn two_step(r: &SecondLevelReport, engine: &Tolerances) -> Self {
        let mut doc = Self::base(Theorem::TwoStep, r.tol, r.scene_scale, engine);
        doc.point = Some(r.point.clone());
        let limit = r.tol * r.scene_scale;
        for (assign, report) in &r.assignments {
            let tag: String = assign
                .signs()
                .iter()
                .map(|&s| if s { '1' } else { '0' })
                .collect();
            for l in &report.per_line {
                doc.residuals.push(Residual::new(
                    format!("{tag}:{}", l.label),
                    l.distance,
                    limit,
                ));
            }
            for s in &report.skipped {
                doc.skipped.push(SkippedLine {
                    label: format!("{tag}:{}", s.label),
                    reason: s.reason.clone(),
                });
            }
        }
        doc.notes.push(format!(
            "{} defined lines, {} distinct, n 2^n = {}",
            r.defined_lines, r.distinct_lines, r.expected_lines
        ));
        doc.finish()
    }

    pub fn inscribed(r: &VerificationReport, engine: &Tolerances) -> Self {
        let mut doc = Self::base(Theorem::Inscribed, r.tol, r.scene_scale, engine);
        doc.point = Some(r.point.clone());
        doc.seed = Some(r.seed);
        for p in &r.per_pair {
            let label = format!("T{}", p.omitted_index + 1);
            if p.empty {
                doc.notes
                    .push(format!("{label}: no real tangent hyperplane"));
            } else {
                doc.residuals.push(Residual::new(
                    format!("{label} ({} samples)", p.samples),
                    p.max_residual,
                    r.tol,
                ));
            }
        }
        doc.residuals.push(Residual::new(
            "center offset",
            r.center_offset,
            r.center_tol * r.scene_scale,
        ));
        doc.notes.push(format!(
            "inscribed sphere: center {:?}, radius {}",
            r.sphere_center, r.sphere_radius
        ));
        doc.finish()
    }

    pub fn scenario(
        r: &ScenarioReport,
        check: f64,
        seed: Option<u64>,
        engine: &Tolerances,
    ) -> Self {
        let scale = r.configuration.scene_scale();
        let mut doc = Self::base(Theorem::Scenario, check, scale, engine);
        doc.scenario = Some(r.name.as_str().to_string());
        doc.point = r.point.clone();
        doc.seed = seed;
        doc.residuals = r
            .facts
            .iter()
            .map(|f| Residual::new(&f.name, f.residual, f.tol))
            .collect();
        doc.notes = r.notes.clone();
        doc.configuration = Some(ConfigDocument::from_configuration(&r.configuration));
        doc.finish()
    }
}
