//! Linear algebra over the signature-(n+1, 2) form on ℝ^{n+3}.
//!
//! A cycle in ℝⁿ is the projective class of a vector `(r, c_1, .., c_n, v, w)`
//! on the Lie quadric `(X|X) = 0`, where
//!
//! ```text
//! (X|Y) = -x_1 y_1 + x_2 y_2 + .. + x_{n+1} y_{n+1} + x_{n+2} y_{n+3} + x_{n+3} y_{n+2}
//! ```
//!
//! Vectors are stored unnormalized. Every predicate here is invariant under
//! nonzero rescaling of its arguments.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Homogeneous coordinates of a projective point of P(ℝ^{n+1,2}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LieVec {
    coords: Vec<f64>,
}

impl LieVec {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 4 {
            return Err(Error::InvalidLength(coords.len()));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if coords.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(LieVec { coords })
    }

    /// Ambient Euclidean dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 3
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        euclid_norm(&self.coords)
    }

    pub fn scaled(&self, factor: f64) -> Result<LieVec> {
        LieVec::new(self.coords.iter().map(|x| x * factor).collect())
    }

    /// Representative with unit Euclidean norm.
    pub fn normalized(&self) -> LieVec {
        let norm = self.norm();
        LieVec {
            coords: self.coords.iter().map(|x| x / norm).collect(),
        }
    }

    /// `(r, c_1..c_n, v)` for `x_1`, `x_2..x_{n+1}`, `x_{n+2}`.
    pub fn radius_coord(&self) -> f64 {
        self.coords[0]
    }

    pub fn center_coords(&self) -> &[f64] {
        &self.coords[1..=self.dim()]
    }

    pub fn v_coord(&self) -> f64 {
        self.coords[self.dim() + 1]
    }

    pub fn w_coord(&self) -> f64 {
        self.coords[self.dim() + 2]
    }
}

impl TryFrom<Vec<f64>> for LieVec {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        LieVec::new(coords)
    }
}

impl From<LieVec> for Vec<f64> {
    fn from(v: LieVec) -> Self {
        v.coords
    }
}

pub(crate) fn euclid_norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// The form on raw slices of equal length `n + 3`.
pub(crate) fn form(x: &[f64], y: &[f64]) -> f64 {
    let m = x.len();
    let mut acc = -x[0] * y[0];
    for i in 1..m - 2 {
        acc += x[i] * y[i];
    }
    acc + x[m - 2] * y[m - 1] + x[m - 1] * y[m - 2]
}

/// `G x`, where `G` is the Gram matrix of the form. `(x|y) = (G x) · y`.
pub(crate) fn gram_apply(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let mut out = x.to_vec();
    out[0] = -x[0];
    out[m - 2] = x[m - 1];
    out[m - 1] = x[m - 2];
    out
}

fn check_dims(x: &LieVec, y: &LieVec) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// The bilinear form `(X|Y)`.
pub fn lie_form(x: &LieVec, y: &LieVec) -> Result<f64> {
    check_dims(x, y)?;
    Ok(form(&x.coords, &y.coords))
}

/// `|(X|X)| <= tol * |X|^2`.
pub fn is_on_quadric(x: &LieVec, tol: f64) -> bool {
    quadric_residual(x) <= tol
}

/// Scale-free distance of `X` from the quadric, `|(X|X)| / |X|^2`.
pub fn quadric_residual(x: &LieVec) -> f64 {
    let n2: f64 = x.coords.iter().map(|c| c * c).sum();
    form(&x.coords, &x.coords).abs() / n2
}

/// True iff every 2x2 minor of `[X; Y]` is at most `tol * |X| * |Y|`.
pub fn projective_equal(x: &LieVec, y: &LieVec, tol: f64) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    largest_minor(&x.coords, &y.coords) <= tol * x.norm() * y.norm()
}

fn largest_minor(x: &[f64], y: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            worst = worst.max((x[i] * y[j] - x[j] * y[i]).abs());
        }
    }
    worst
}

/// Orthonormal (Euclidean) basis of `{Y : (v_i|Y) = 0 for all i}` in ℝ^{dim+3}.
///
/// The rank of the constraint system is decided by singular values relative
/// to the largest one.
pub fn orthogonal_complement(dim: usize, vs: &[LieVec], rank_cutoff: f64) -> Result<Vec<LieVec>> {
    let m = dim + 3;
    if m < 4 {
        return Err(Error::InvalidLength(m));
    }
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.dim(),
            });
        }
    }
    if vs.is_empty() {
        return Ok((0..m)
            .map(|i| {
                let mut e = vec![0.0; m];
                e[i] = 1.0;
                LieVec { coords: e }
            })
            .collect());
    }

    // Pad with zero rows so the SVD returns a full right singular basis.
    let rows = vs.len().max(m);
    let mut a = DMatrix::<f64>::zeros(rows, m);
    for (r, v) in vs.iter().enumerate() {
        let g = gram_apply(&v.coords);
        let norm = euclid_norm(&g);
        for (c, value) in g.iter().enumerate() {
            a[(r, c)] = value / norm;
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sigma_max = svd.singular_values.max();
    let cutoff = rank_cutoff * sigma_max;

    let mut basis = Vec::new();
    for (k, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= cutoff {
            let coords: Vec<f64> = v_t.row(k).iter().copied().collect();
            basis.push(LieVec { coords });
        }
    }
    Ok(basis)
}

/// Real roots of a pencil `{sU + tV}` on the quadric, with the discriminant
/// of the homogeneous quadratic in an orthonormal basis of the pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilIntersection {
    pub roots: Vec<LieVec>,
    /// `(U|V)^2 - (U|U)(V|V)` for Euclidean-orthonormal `U`, `V` spanning the
    /// pencil. Invariant under the choice of such a basis.
    pub discriminant: f64,
}

/// Intersects the projective line through `U` and `V` with the Lie quadric.
pub fn intersect_pencil(u: &LieVec, v: &LieVec, tol: &Tolerances) -> Result<PencilIntersection> {
    check_dims(u, v)?;
    if projective_equal(u, v, tol.projective) {
        return Err(Error::DependentGenerators);
    }
    // Euclidean Gram-Schmidt: same pencil, well-scaled coefficients.
    let e1: Vec<f64> = u.normalized().coords;
    let along: f64 = v.coords.iter().zip(&e1).map(|(a, b)| a * b).sum();
    let mut e2: Vec<f64> = v
        .coords
        .iter()
        .zip(&e1)
        .map(|(a, b)| a - along * b)
        .collect();
    let e2_norm = euclid_norm(&e2);
    e2.iter_mut().for_each(|x| *x /= e2_norm);

    let a = form(&e1, &e1);
    let b = form(&e1, &e2);
    let c = form(&e2, &e2);
    if a.abs().max(b.abs()).max(c.abs()) <= tol.quadric {
        return Err(Error::DegeneratePencil);
    }
    let disc = b * b - a * c;

    let combine = |s: f64, t: f64| -> LieVec {
        let coords: Vec<f64> = e1.iter().zip(&e2).map(|(x, y)| s * x + t * y).collect();
        LieVec { coords }.normalized()
    };

    let roots = if disc > tol.discriminant {
        // a s^2 + 2b st + c t^2 = 0 has roots s/t = q/a and s/t = c/q,
        // written homogeneously so a vanishing a or c needs no special case.
        let q = -(b + b.signum() * disc.sqrt());
        vec![combine(q, a), combine(c, q)]
    } else if disc >= -tol.discriminant {
        if a.abs() >= c.abs() {
            vec![combine(-b, a)]
        } else {
            vec![combine(c, -b)]
        }
    } else {
        Vec::new()
    };
    Ok(PencilIntersection {
        roots,
        discriminant: disc,
    })
}

/// Real projective points of the pencil through `U` and `V` lying on the
/// quadric: two, one (double root) or none.
pub fn quadric_pencil_intersect(u: &LieVec, v: &LieVec, tol: &Tolerances) -> Result<Vec<LieVec>> {
    intersect_pencil(u, v, tol).map(|p| p.roots)
}

/// `X = X_perp + alpha P` with `(X_perp|P) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Raw coordinates of the orthogonal part; may be the zero vector.
    pub perp_coords: Vec<f64>,
    pub alpha: f64,
}

impl Decomposition {
    /// The orthogonal part as a projective point, `None` when it vanishes.
    pub fn perp_part(&self) -> Option<LieVec> {
        LieVec::new(self.perp_coords.clone()).ok()
    }

    pub fn is_degenerate_perp(&self) -> bool {
        self.perp_coords.iter().all(|&x| x == 0.0)
    }
}

fn check_axis(p: &LieVec, tol: f64) -> Result<f64> {
    let pp = form(&p.coords, &p.coords);
    let n2: f64 = p.coords.iter().map(|c| c * c).sum();
    if pp.abs() <= tol * n2 {
        return Err(Error::IsotropicAxis);
    }
    Ok(pp)
}

pub fn decompose(x: &LieVec, p: &LieVec, tol: f64) -> Result<Decomposition> {
    check_dims(x, p)?;
    let pp = check_axis(p, tol)?;
    let alpha = form(&x.coords, &p.coords) / pp;
    let perp_coords = x
        .coords
        .iter()
        .zip(&p.coords)
        .map(|(xi, pi)| xi - alpha * pi)
        .collect();
    Ok(Decomposition { perp_coords, alpha })
}

/// Reflection in the hyperplane `<P>^⊥`: `X - 2 (X|P)/(P|P) P`.
pub fn reflect(x: &LieVec, p: &LieVec, tol: f64) -> Result<LieVec> {
    check_dims(x, p)?;
    let pp = check_axis(p, tol)?;
    let k = 2.0 * form(&x.coords, &p.coords) / pp;
    LieVec::new(
        x.coords
            .iter()
            .zip(&p.coords)
            .map(|(xi, pi)| xi - k * pi)
            .collect(),
    )
}
