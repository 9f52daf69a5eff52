use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{cis, poly_eval, poly_roots, C64, ONE, ZERO};

/// Boundary samples per region polyline.
pub const DEFAULT_POLYLINE_SAMPLES: usize = 4096;
/// Distance (in unit-scale coordinates) within which a point counts as on
/// the polyline.
pub const DEFAULT_REGION_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    /// Regions are closed: boundary points belong to them.
    pub fn contained(self) -> bool {
        self != Membership::Outside
    }

    /// Membership in a union of regions.
    pub fn union(items: impl IntoIterator<Item = Membership>) -> Membership {
        let mut out = Membership::Outside;
        for m in items {
            match m {
                Membership::Inside => return Membership::Inside,
                Membership::Boundary => out = Membership::Boundary,
                Membership::Outside => {}
            }
        }
        out
    }
}

/// `(d−1)e^{it} + e^{−i(d−1)t}`: a circle of radius 1 rolling inside one of
/// radius `d`, with cusps at `d·ω_d^k`.
pub fn hypocycloid_point(d: usize, t: f64) -> C64 {
    assert!(d >= 2, "hypocycloid needs d >= 2");
    let m = (d - 1) as f64;
    cis(t) * m + cis(-m * t)
}

/// Membership of `tau` in `T₃`, the trace set of `SU(3)`.
///
/// `tau ∈ T₃` iff every root of `λ³ − τλ² + τ̄λ − 1` is unimodular. Roots
/// closer than `√tol` are merged into their centroid first: a double root
/// on the boundary comes out of the root finder split by about `√ε`, which
/// would otherwise push it off the circle by more than `tol`. An `m`-fold
/// cluster is then polished by Newton's method on the `(m−1)`-th
/// derivative, where it is a simple root. Merged clusters mean the point
/// sits on the boundary.
pub fn in_t3(tau: C64, tol: f64) -> Result<Membership> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let roots = poly_roots(&[ONE, -tau, tau.conj(), -ONE])?;
    let radius = tol.sqrt();
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for z in roots {
        match clusters.iter_mut().find(|(c, n)| (*c / *n as f64 - z).norm() <= radius) {
            Some((c, n)) => {
                *c += z;
                *n += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    let coeffs = [ONE, -tau, tau.conj(), -ONE];
    let delta = clusters
        .iter()
        .map(|&(c, n)| {
            let z = if n > 1 { polish(&coeffs, c / n as f64, n - 1) } else { c };
            (z.norm() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    Ok(if delta > tol {
        Membership::Outside
    } else if clusters.iter().any(|&(_, n)| n > 1) {
        Membership::Boundary
    } else {
        Membership::Inside
    })
}

/// Coefficients (highest first) of the derivative.
fn derivative(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    coeffs[..n].iter().enumerate().map(|(i, c)| c * (n - i) as f64).collect()
}

fn polish(coeffs: &[C64], start: C64, order: usize) -> C64 {
    let mut p = coeffs.to_vec();
    for _ in 0..order {
        p = derivative(&p);
    }
    let dp = derivative(&p);
    let mut z = start;
    for _ in 0..8 {
        let slope = poly_eval(&dp, z);
        if slope == ZERO {
            break;
        }
        z -= poly_eval(&p, z) / slope;
    }
    z
}

/// A copy of `T_d` scaled by `scale` and rotated by the unit complex
/// `rotation`, with its boundary sampled as a closed polyline.
#[derive(Clone, Debug)]
pub struct TraceRegion {
    d: usize,
    scale: f64,
    rotation: C64,
    unit: Vec<C64>,
    boundary: Vec<C64>,
}

impl TraceRegion {
    pub fn new(d: usize, scale: f64, rotation: C64, samples: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::dim(format!("trace region needs d >= 2, got {d}")));
        }
        if samples < 3 {
            return Err(Error::domain("polyline needs at least 3 samples"));
        }
        if !(scale > 0.0) || (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("scale must be positive and rotation unimodular"));
        }
        let ts = (0..=samples).map(|i| 2.0 * PI * (i % samples) as f64 / samples as f64);
        let unit: Vec<C64> = ts.map(|t| hypocycloid_point(d, t)).collect();
        let boundary = unit.iter().map(|&z| z * rotation * scale).collect();
        Ok(TraceRegion { d, scale, rotation, unit, boundary })
    }

    /// `T_d` itself.
    pub fn full(d: usize, samples: usize) -> Result<Self> {
        Self::new(d, 1.0, ONE, samples)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn rotation(&self) -> C64 {
        self.rotation
    }

    /// Closed polyline: the last point repeats the first.
    pub fn boundary(&self) -> &[C64] {
        &self.boundary
    }

    /// Curve parameter of each boundary sample.
    pub fn parameters(&self) -> Vec<f64> {
        let n = self.unit.len() - 1;
        (0..=n).map(|i| 2.0 * PI * i as f64 / n as f64).collect()
    }

    /// Distance from `z` to the unit-scale polyline.
    fn unit_distance(&self, z: C64) -> f64 {
        self.unit
            .windows(2)
            .map(|s| segment_distance(z, s[0], s[1]))
            .fold(f64::INFINITY, f64::min)
    }

    fn winding(&self, z: C64) -> f64 {
        self.unit
            .windows(2)
            .map(|s| {
                let (a, b) = (s[0] - z, s[1] - z);
                (a.re * b.im - a.im * b.re).atan2(a.re * b.re + a.im * b.im)
            })
            .sum::<f64>()
            / (2.0 * PI)
    }
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Polyline membership of `tau` in `region`.
///
/// `tau` is mapped back to unit scale by dividing out `rotation·scale`;
/// within `tol` of the polyline the answer is `Boundary`, otherwise the
/// winding number decides. The hypocycloid's arcs bow towards the centre, so
/// the polygon slightly over-covers the true region.
pub fn in_trace_region(region: &TraceRegion, tau: C64, tol: f64) -> Membership {
    let z = tau / (region.rotation * region.scale);
    if region.unit_distance(z) <= tol {
        Membership::Boundary
    } else if region.winding(z).abs() > 0.5 {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

/// Rotations generating the chaotic trace set `CT_d` from `T_d`, as angles.
pub fn ct_rotations(d: usize) -> Result<Vec<f64>> {
    match d {
        3 => Ok(vec![PI / 18.0, -PI / 18.0]),
        5 => Ok(vec![0.0, PI, PI / 25.0, -PI / 25.0, 2.0 * PI / 25.0, -2.0 * PI / 25.0]),
        _ => Err(Error::Unsupported(format!("chaotic trace regions are tabulated for d = 3, 5 only, got {d}"))),
    }
}

/// The copies `(1/√d)·α·T_d` whose union is `CT_d`.
pub fn ct_region(d: usize, samples: usize) -> Result<Vec<TraceRegion>> {
    if samples < 64 {
        return Err(Error::domain(format!("need at least 64 boundary samples, got {samples}")));
    }
    let scale = 1.0 / (d as f64).sqrt();
    ct_rotations(d)?.into_iter().map(|a| TraceRegion::new(d, scale, cis(a), samples)).collect()
}
