//! Oriented spheres, hyperplanes and point spheres in ℝⁿ, and their Lie
//! coordinates.
//!
//! Orientation convention: a sphere with positive signed radius carries the
//! outward normal. A hyperplane `normal · x = offset` with orientation `o`
//! lifts to `(o, normal, 0, -offset)`, so `o` multiplies the radius slot.
//! Two cycles are in oriented contact iff
//!
//! * sphere/sphere: `|m1 - m2| = |r1 - r2|`,
//! * sphere/hyperplane: `normal · m - offset = o r`,
//! * hyperplane/hyperplane: `o1 normal1 = o2 normal2` (parallel, touching at
//!   infinity),
//!
//! with point spheres treated as spheres of radius zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{euclid_norm, form, is_on_quadric, projective_equal, quadric_residual, LieVec};
use crate::tolerance::Tolerances;

/// Orientation flag of a hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Orientation {
        if s < 0.0 {
            Orientation::Negative
        } else {
            Orientation::Positive
        }
    }

    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// An oriented cycle in ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub enum Cycle {
    /// Sphere with a nonzero signed radius; the sign is the orientation.
    Sphere {
        center: Vec<f64>,
        radius: f64,
    },
    /// Hyperplane `{x : unit_normal · x = offset}`.
    Hyperplane {
        unit_normal: Vec<f64>,
        offset: f64,
        orientation: Orientation,
    },
    PointSphere {
        coords: Vec<f64>,
    },
}

fn check_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn check_dim(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::InvalidCycle("dimension must be positive".into()));
    }
    Ok(())
}

impl Cycle {
    pub fn sphere(center: Vec<f64>, radius: f64) -> Result<Cycle> {
        check_dim(center.len())?;
        check_finite(&center)?;
        check_finite(&[radius])?;
        if radius == 0.0 {
            return Err(Error::InvalidCycle(
                "sphere radius must be nonzero; use a point sphere".into(),
            ));
        }
        Ok(Cycle::Sphere { center, radius })
    }

    pub fn point(coords: Vec<f64>) -> Result<Cycle> {
        check_dim(coords.len())?;
        check_finite(&coords)?;
        Ok(Cycle::PointSphere { coords })
    }

    /// Oriented hyperplane `normal · x = offset`. A non-unit normal is
    /// rescaled together with the offset.
    pub fn hyperplane(normal: Vec<f64>, offset: f64, orientation: Orientation) -> Result<Cycle> {
        check_dim(normal.len())?;
        check_finite(&normal)?;
        check_finite(&[offset])?;
        let len = euclid_norm(&normal);
        if len == 0.0 {
            return Err(Error::InvalidCycle("hyperplane normal is zero".into()));
        }
        Ok(Cycle::Hyperplane {
            unit_normal: normal.iter().map(|x| x / len).collect(),
            offset: offset / len,
            orientation,
        })
    }

    /// Re-checks the invariants of a value built directly from its fields.
    pub fn validate(&self) -> Result<()> {
        match self {
            Cycle::Sphere { center, radius } => Cycle::sphere(center.clone(), *radius).map(|_| ()),
            Cycle::PointSphere { coords } => Cycle::point(coords.clone()).map(|_| ()),
            Cycle::Hyperplane {
                unit_normal,
                offset,
                ..
            } => {
                check_dim(unit_normal.len())?;
                check_finite(unit_normal)?;
                check_finite(&[*offset])?;
                if (euclid_norm(unit_normal) - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidCycle("hyperplane normal is not unit".into()));
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Cycle::Sphere { center, .. } => center.len(),
            Cycle::Hyperplane { unit_normal, .. } => unit_normal.len(),
            Cycle::PointSphere { coords } => coords.len(),
        }
    }

    /// Affine center; `None` for hyperplanes.
    pub fn center(&self) -> Option<&[f64]> {
        match self {
            Cycle::Sphere { center, .. } => Some(center),
            Cycle::PointSphere { coords } => Some(coords),
            Cycle::Hyperplane { .. } => None,
        }
    }

    /// Signed radius; zero for point spheres, `None` for hyperplanes.
    pub fn signed_radius(&self) -> Option<f64> {
        match self {
            Cycle::Sphere { radius, .. } => Some(*radius),
            Cycle::PointSphere { .. } => Some(0.0),
            Cycle::Hyperplane { .. } => None,
        }
    }

    /// The same point set with the opposite orientation.
    pub fn reversed(&self) -> Cycle {
        match self {
            Cycle::Sphere { center, radius } => Cycle::Sphere {
                center: center.clone(),
                radius: -radius,
            },
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            } => Cycle::Hyperplane {
                unit_normal: unit_normal.clone(),
                offset: *offset,
                orientation: orientation.flipped(),
            },
            Cycle::PointSphere { .. } => self.clone(),
        }
    }

    /// Lie coordinates with `v = 1` for spheres and points and `|c| = 1`
    /// for hyperplanes.
    pub fn lift(&self) -> LieVec {
        let coords = match self {
            Cycle::Sphere { center, radius } => {
                let m2: f64 = center.iter().map(|x| x * x).sum();
                let mut x = Vec::with_capacity(center.len() + 3);
                x.push(*radius);
                x.extend_from_slice(center);
                x.push(1.0);
                x.push((radius * radius - m2) / 2.0);
                x
            }
            Cycle::PointSphere { coords } => {
                let m2: f64 = coords.iter().map(|x| x * x).sum();
                let mut x = Vec::with_capacity(coords.len() + 3);
                x.push(0.0);
                x.extend_from_slice(coords);
                x.push(1.0);
                x.push(-m2 / 2.0);
                x
            }
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            } => {
                let mut x = Vec::with_capacity(unit_normal.len() + 3);
                x.push(orientation.sign());
                x.extend_from_slice(unit_normal);
                x.push(0.0);
                x.push(-offset);
                x
            }
        };
        LieVec::new(coords).expect("a valid cycle lifts to a nonzero finite vector")
    }

    /// Same oriented cycle, compared through projective equality of lifts.
    pub fn same_as(&self, other: &Cycle, tol: f64) -> bool {
        self.dim() == other.dim() && projective_equal(&self.lift(), &other.lift(), tol)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cycle::Sphere { center, radius } => write!(f, "sphere{center:?} r={radius}"),
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            } => write!(
                f,
                "hyperplane n={unit_normal:?} d={offset} o={}",
                orientation.sign()
            ),
            Cycle::PointSphere { coords } => write!(f, "point{coords:?}"),
        }
    }
}

/// Recovers the oriented cycle represented by a vector on the Lie quadric.
pub fn project(x: &LieVec, tol: &Tolerances) -> Result<Cycle> {
    if !is_on_quadric(x, tol.quadric) {
        return Err(Error::NotACycle {
            residual: quadric_residual(x),
        });
    }
    let scale = x.norm();
    let v = x.v_coord();
    if v.abs() > tol.classify * scale {
        let center: Vec<f64> = x.center_coords().iter().map(|c| c / v).collect();
        if x.radius_coord().abs() <= tol.classify * scale {
            return Cycle::point(center);
        }
        return Cycle::sphere(center, x.radius_coord() / v);
    }
    let c = x.center_coords();
    let c_len = euclid_norm(c);
    if c_len <= tol.classify * scale {
        return Err(Error::DegenerateVector);
    }
    Ok(Cycle::Hyperplane {
        unit_normal: c.iter().map(|ci| ci / c_len).collect(),
        offset: -x.w_coord() / c_len,
        orientation: Orientation::from_sign(x.radius_coord()),
    })
}

/// Homogeneous center `[c_1 : .. : c_n : v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousCenter {
    pub coords: Vec<f64>,
}

impl HomogeneousCenter {
    /// Affine point `c / v`, or `None` for a point at infinity.
    pub fn affine(&self, tol: f64) -> Option<Vec<f64>> {
        let (v, c) = self.coords.split_last().expect("nonempty");
        if v.abs() <= tol * euclid_norm(&self.coords) {
            return None;
        }
        Some(c.iter().map(|ci| ci / v).collect())
    }

    pub fn is_at_infinity(&self, tol: f64) -> bool {
        self.affine(tol).is_none()
    }
}

/// Relative size under which every entry of a homogeneous center counts as zero.
const CENTER_ZERO: f64 = 1e-12;

pub fn homogeneous_center(x: &LieVec) -> Result<HomogeneousCenter> {
    let n = x.dim();
    let coords = x.coords()[1..=n + 1].to_vec();
    if euclid_norm(&coords) <= CENTER_ZERO * x.norm() {
        return Err(Error::DegenerateVector);
    }
    Ok(HomogeneousCenter { coords })
}

/// `(lift a | lift b) / (|lift a| |lift b|)`; zero iff the cycles are in
/// oriented contact.
pub fn tangency_residual(a: &Cycle, b: &Cycle) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (x, y) = (a.lift(), b.lift());
    Ok(form(x.coords(), y.coords()) / (x.norm() * y.norm()))
}

/// Residual of a cycle against an arbitrary Lie vector, normalized the same way.
pub fn tangency_residual_lie(a: &Cycle, y: &LieVec) -> Result<f64> {
    if a.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: y.dim(),
        });
    }
    let x = a.lift();
    Ok(form(x.coords(), y.coords()) / (x.norm() * y.norm()))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Length scale of a set of cycles: `max(1, |centers|, |radii|, |offsets|)`.
pub fn cycle_scale<'a>(cycles: impl IntoIterator<Item = &'a Cycle>) -> f64 {
    let mut scale: f64 = 1.0;
    for c in cycles {
        match c {
            Cycle::Sphere { center, radius } => {
                scale = scale.max(euclid_norm(center)).max(radius.abs())
            }
            Cycle::PointSphere { coords } => scale = scale.max(euclid_norm(coords)),
            Cycle::Hyperplane { offset, .. } => scale = scale.max(offset.abs()),
        }
    }
    scale
}

/// Oriented contact decided from Euclidean data alone, without Lie coordinates.
pub fn euclidean_tangency_oracle(a: &Cycle, b: &Cycle, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let scale = cycle_scale([a, b]);
    match (a, b) {
        (
            Cycle::Hyperplane {
                unit_normal: n1,
                orientation: o1,
                ..
            },
            Cycle::Hyperplane {
                unit_normal: n2,
                orientation: o2,
                ..
            },
        ) => {
            let gap: Vec<f64> = n1
                .iter()
                .zip(n2)
                .map(|(x, y)| o1.sign() * x - o2.sign() * y)
                .collect();
            euclid_norm(&gap) <= tol
        }
        (
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            },
            round,
        )
        | (
            round,
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            },
        ) => {
            let m = round.center().expect("not a hyperplane");
            let r = round.signed_radius().expect("not a hyperplane");
            let signed_distance = dot(unit_normal, m) - offset;
            (signed_distance - orientation.sign() * r).abs() <= tol * scale
        }
        _ => {
            let (m1, r1) = (a.center().unwrap(), a.signed_radius().unwrap());
            let (m2, r2) = (b.center().unwrap(), b.signed_radius().unwrap());
            (dist(m1, m2) - (r1 - r2).abs()).abs() <= tol * scale
        }
    }
}
