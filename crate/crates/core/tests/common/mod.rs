//! Independent oracles shared by the integration tests. Nothing here goes
//! through Lie coordinates.
#![allow(dead_code)]

use apollonius::{Cycle, Orientation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type P2 = [f64; 2];

/// Circles `(center, signed radius)` in oriented contact with all three
/// inputs, found directly from `|m - m_i|^2 = (r - r_i)^2`.
///
/// Subtracting the first equation from the others leaves two linear
/// equations, so `m = m0 + r m1`; the first equation is then a quadratic in
/// `r`. Returns `None` when that reduction is ill-conditioned.
pub fn brute_force_circles(input: &[(P2, f64); 3]) -> Option<Vec<(P2, f64)>> {
    let [(m1, r1), (m2, r2), (m3, r3)] = *input;
    // 2 (m_i - m_1) . m - 2 (r_i - r_1) r = |m_i|^2 - |m_1|^2 - r_i^2 + r_1^2
    let row = |mi: P2, ri: f64| {
        (
            [2.0 * (mi[0] - m1[0]), 2.0 * (mi[1] - m1[1])],
            -2.0 * (ri - r1),
            (mi[0] * mi[0] + mi[1] * mi[1]) - (m1[0] * m1[0] + m1[1] * m1[1]) - ri * ri + r1 * r1,
        )
    };
    let (a2, b2, c2) = row(m2, r2);
    let (a3, b3, c3) = row(m3, r3);
    let det = a2[0] * a3[1] - a2[1] * a3[0];
    if det.abs() < 1e-6 {
        return None;
    }
    let solve = |rhs2: f64, rhs3: f64| {
        [
            (rhs2 * a3[1] - a2[1] * rhs3) / det,
            (a2[0] * rhs3 - rhs2 * a3[0]) / det,
        ]
    };
    // m = m0 + r * k
    let m0 = solve(c2, c3);
    let k = solve(-b2, -b3);
    let d0 = [m0[0] - m1[0], m0[1] - m1[1]];
    // |d0 + r k|^2 = (r - r1)^2
    let qa = k[0] * k[0] + k[1] * k[1] - 1.0;
    let qb = 2.0 * (d0[0] * k[0] + d0[1] * k[1]) + 2.0 * r1;
    let qc = d0[0] * d0[0] + d0[1] * d0[1] - r1 * r1;
    if qa.abs() < 1e-3 {
        return None;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    let scale = qb * qb + (4.0 * qa * qc).abs();
    if disc.abs() < 1e-6 * scale {
        return None;
    }
    if disc < 0.0 {
        return Some(Vec::new());
    }
    let s = disc.sqrt();
    let mut out: Vec<(P2, f64)> = [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)]
        .into_iter()
        .map(|r| ([m0[0] + r * k[0], m0[1] + r * k[1]], r))
        .collect();
    out.sort_by(|a, b| (a.1.abs(), a.1).partial_cmp(&(b.1.abs(), b.1)).unwrap());
    Some(out)
}

/// Descartes: curvatures of the two circles tangent to three mutually
/// tangent circles of curvatures `k`.
pub fn descartes(k: [f64; 3]) -> (f64, f64) {
    let s = k[0] + k[1] + k[2];
    let q = 2.0 * (k[0] * k[1] + k[1] * k[2] + k[2] * k[0]).sqrt();
    (s + q, s - q)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// How far two cycles are from oriented contact, in length units (or in
/// normal mismatch for two hyperplanes).
pub fn euclid_defect(a: &Cycle, b: &Cycle) -> f64 {
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
            norm(&gap)
        }
        (
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            },
            other,
        )
        | (
            other,
            Cycle::Hyperplane {
                unit_normal,
                offset,
                orientation,
            },
        ) => {
            let (m, r) = round(other);
            (dot(unit_normal, &m) - offset - orientation.sign() * r).abs()
        }
        _ => {
            let (m1, r1) = round(a);
            let (m2, r2) = round(b);
            let d: Vec<f64> = m1.iter().zip(&m2).map(|(x, y)| x - y).collect();
            (norm(&d) - (r1 - r2).abs()).abs()
        }
    }
}

fn round(c: &Cycle) -> (Vec<f64>, f64) {
    match c {
        Cycle::Sphere { center, radius } => (center.clone(), *radius),
        Cycle::PointSphere { coords } => (coords.clone(), 0.0),
        Cycle::Hyperplane { .. } => unreachable!(),
    }
}

pub fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let l = norm(&v);
        if l > 0.1 && l <= 1.0 {
            return v.iter().map(|x| x / l).collect();
        }
    }
}

fn signed_radius(rng: &mut ChaCha8Rng) -> f64 {
    let r = rng.random_range(0.1..2.0);
    if rng.random_bool(0.5) {
        r
    } else {
        -r
    }
}

fn orientation(rng: &mut ChaCha8Rng) -> Orientation {
    if rng.random_bool(0.5) {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

fn point_in_box(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-2.0..2.0)).collect()
}

pub fn random_cycle(rng: &mut ChaCha8Rng, n: usize) -> Cycle {
    match rng.random_range(0..10) {
        0..7 => Cycle::sphere(point_in_box(rng, n), signed_radius(rng)).unwrap(),
        7 | 8 => Cycle::hyperplane(
            unit_vector(rng, n),
            rng.random_range(-2.0..2.0),
            orientation(rng),
        )
        .unwrap(),
        _ => Cycle::point(point_in_box(rng, n)).unwrap(),
    }
}

fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

/// A random cycle in oriented contact with `a`, built from Euclidean data.
pub fn tangent_partner(rng: &mut ChaCha8Rng, a: &Cycle) -> Cycle {
    let n = a.dim();
    let u = unit_vector(rng, n);
    let kind = rng.random_range(0..10);
    match a {
        Cycle::Hyperplane {
            unit_normal,
            offset,
            orientation: o,
        } => {
            // a point on the plane
            let t = point_in_box(rng, n);
            let q = axpy(*offset - dot(&t, unit_normal), unit_normal, &t);
            match kind {
                0..6 => {
                    let r = signed_radius(rng);
                    Cycle::sphere(axpy(o.sign() * r, unit_normal, &q), r).unwrap()
                }
                6..8 => {
                    let o2 = orientation(rng);
                    let normal: Vec<f64> = unit_normal
                        .iter()
                        .map(|x| x * o.sign() * o2.sign())
                        .collect();
                    Cycle::hyperplane(normal, rng.random_range(-2.0..2.0), o2).unwrap()
                }
                _ => Cycle::point(q).unwrap(),
            }
        }
        _ => {
            let (m, r) = round(a);
            match kind {
                0..6 => {
                    let r2 = signed_radius(rng);
                    Cycle::sphere(axpy((r - r2).abs(), &u, &m), r2).unwrap()
                }
                6..8 => {
                    let o = orientation(rng);
                    Cycle::hyperplane(u.clone(), dot(&u, &m) - o.sign() * r, o).unwrap()
                }
                _ => Cycle::point(axpy(r.abs(), &u, &m)).unwrap(),
            }
        }
    }
}

/// Moves a cycle by roughly `delta`: center or offset shift, radius change,
/// or normal rotation.
pub fn perturb(rng: &mut ChaCha8Rng, c: &Cycle, delta: f64) -> Cycle {
    let n = c.dim();
    let u = unit_vector(rng, n);
    match c {
        Cycle::Sphere { center, radius } => {
            if rng.random_bool(0.5) {
                Cycle::sphere(axpy(delta, &u, center), *radius).unwrap()
            } else {
                let r = radius + if rng.random_bool(0.5) { delta } else { -delta };
                Cycle::sphere(center.clone(), if r == 0.0 { delta } else { r }).unwrap()
            }
        }
        Cycle::PointSphere { coords } => Cycle::point(axpy(delta, &u, coords)).unwrap(),
        Cycle::Hyperplane {
            unit_normal,
            offset,
            orientation,
        } => {
            if rng.random_bool(0.5) {
                Cycle::hyperplane(unit_normal.clone(), offset + delta, *orientation).unwrap()
            } else {
                Cycle::hyperplane(axpy(delta, &u, unit_normal), *offset, *orientation).unwrap()
            }
        }
    }
}
