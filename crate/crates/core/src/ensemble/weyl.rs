use std::f64::consts::{LN_2, PI};

use crate::chaos::{ct_rotations, in_t3, Membership};
use crate::error::{Error, Result};
use crate::exec::Backend;
use crate::matcore::{cis, C64};
use crate::maxent::hdyn_of_theta;

/// Catalan's constant `Σ (−1)ⁿ/(2n+1)²`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015;

/// Default number of 1-D quadrature points.
pub const DEFAULT_WEYL_POINTS: usize = 2048;

/// Composite midpoint rule for `∫_a^b f` with `n` cells.
pub fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

/// Haar average over `U(2)` of a class function depending only on the
/// eigenphase difference `φ`: `(1/4π) ∫₀^{2π} f(φ)|e^{iφ} − 1|² dφ`.
pub fn weyl_average_d2(f: impl Fn(f64) -> f64, quad_points: usize) -> f64 {
    midpoint(|phi| f(phi) * (2.0 - 2.0 * phi.cos()), 0.0, 2.0 * PI, quad_points) / (4.0 * PI)
}

/// Volume of the chaotic qubit unitaries, `|1 + e^{iφ}| ≤ √2`.
pub fn weyl_volume_d2(quad_points: usize) -> f64 {
    weyl_average_d2(|phi| f64::from((cis(phi) + 1.0).norm() <= 2f64.sqrt()), quad_points)
}

/// Haar mean of the closed-form qubit `H^dyn`.
pub fn weyl_mean_hdyn_d2(quad_points: usize) -> f64 {
    weyl_average_d2(|phi| hdyn_of_theta(phi.min(2.0 * PI - phi)), quad_points)
}

/// `1/2 + 1/π`.
pub fn m_c2_exact() -> f64 {
    0.5 + 1.0 / PI
}

/// `(3/2) ln 2 + (2C − π − 1)/(2π)`.
pub fn mean_hdyn_d2_exact() -> f64 {
    1.5 * LN_2 + (2.0 * CATALAN - PI - 1.0) / (2.0 * PI)
}

/// Density of `tr U` on the plane for Haar-random `U ∈ SU(3)`, in polar
/// coordinates `τ = re^{iθ}`:
/// `(3√3/2π²) √(4 + (2r/3)³ cos 3θ − 3(1 + r²/9)²)`, zero where the radicand
/// is negative (outside `T₃`).
pub fn trace_density_d3(tau: C64) -> f64 {
    let r = tau.norm();
    let theta = tau.arg();
    let radicand = 4.0 + (2.0 * r / 3.0).powi(3) * (3.0 * theta).cos() - 3.0 * (1.0 + r * r / 9.0).powi(2);
    if radicand <= 0.0 {
        0.0
    } else {
        3.0 * 3f64.sqrt() / (2.0 * PI * PI) * radicand.sqrt()
    }
}

/// Polar midpoint grid on the disc of radius 3 containing `T₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolarGrid {
    pub r_points: usize,
    pub theta_points: usize,
}

impl Default for PolarGrid {
    fn default() -> Self {
        PolarGrid { r_points: 1024, theta_points: 2048 }
    }
}

impl PolarGrid {
    fn check(&self) -> Result<()> {
        if self.r_points < 256 || self.theta_points < 256 {
            return Err(Error::domain(format!(
                "grid needs at least 256 points per axis, got {}x{}",
                self.r_points, self.theta_points
            )));
        }
        Ok(())
    }

    /// `∫ f(τ) ρ(τ) dA` over the disc `|τ| ≤ r_max`. Rows of constant `θ` are
    /// the parallel work items; they are summed in order.
    fn integrate<F>(&self, r_max: f64, backend: Backend, f: F) -> Vec<f64>
    where
        F: Fn(C64) -> f64 + Sync + Send,
    {
        let hr = r_max / self.r_points as f64;
        let ht = 2.0 * PI / self.theta_points as f64;
        backend.map(self.theta_points, |j| {
            let theta = (j as f64 + 0.5) * ht;
            let w = cis(theta);
            let mut acc = 0.0;
            for i in 0..self.r_points {
                let r = (i as f64 + 0.5) * hr;
                let tau = w * r;
                let rho = trace_density_d3(tau);
                if rho > 0.0 {
                    acc += f(tau) * rho * r;
                }
            }
            acc * hr * ht
        })
    }
}

/// `∫_{T₃} ρ`, which should be 1.
pub fn t3_normalization(grid: &PolarGrid, backend: Backend) -> Result<f64> {
    grid.check()?;
    Ok(grid.integrate(3.0, backend, |_| 1.0).iter().sum())
}

fn lobe_membership(tau: C64, rotation: f64) -> Membership {
    // the grid never lands on a cusp, so the root finder cannot fail here
    in_t3(tau * 3f64.sqrt() * cis(-rotation), 1e-9).unwrap_or(Membership::Outside)
}

/// `m(C₃) = ∫_{CT₃} ρ`, the Haar volume of the chaotic qutrit unitaries.
pub fn m_c3_quadrature(grid: &PolarGrid, backend: Backend) -> Result<f64> {
    grid.check()?;
    let rots = ct_rotations(3)?;
    // CT₃ lies inside |τ| ≤ √3
    let rows = grid.integrate(3f64.sqrt(), backend, |tau| {
        f64::from(rots.iter().any(|&a| lobe_membership(tau, a).contained()))
    });
    Ok(rows.iter().sum())
}

/// `∫ ρ` over each of the two lobes of `CT₃` separately.
pub fn m_c3_lobes(grid: &PolarGrid, backend: Backend) -> Result<[f64; 2]> {
    grid.check()?;
    let rots = ct_rotations(3)?;
    let mut out = [0.0; 2];
    for (k, &a) in rots.iter().enumerate() {
        let rows = grid.integrate(3f64.sqrt(), backend, |tau| f64::from(lobe_membership(tau, a).contained()));
        out[k] = rows.iter().sum();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weyl_normalisation() {
        assert_abs_diff_eq!(weyl_average_d2(|_| 1.0, DEFAULT_WEYL_POINTS), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn chaotic_volume_d2() {
        assert_abs_diff_eq!(m_c2_exact(), 0.818_309_886_183_790_7, epsilon = 1e-15);
        assert_abs_diff_eq!(weyl_volume_d2(DEFAULT_WEYL_POINTS), m_c2_exact(), epsilon = 1e-6);
    }

    #[test]
    fn mean_hdyn_d2() {
        assert_abs_diff_eq!(mean_hdyn_d2_exact(), 0.672127, epsilon = 1e-6);
        assert_abs_diff_eq!(weyl_mean_hdyn_d2(DEFAULT_WEYL_POINTS), mean_hdyn_d2_exact(), epsilon = 1e-5);
    }

    #[test]
    fn catalan_series() {
        // alternating series: truncation error is below the first omitted term
        let s: f64 = (0..2_000_000).map(|n| (-1f64).powi(n) / ((2 * n + 1) as f64).powi(2)).sum();
        assert_abs_diff_eq!(s, CATALAN, epsilon = 1e-12);
    }

    #[test]
    fn antiderivative_identities() {
        let n = 400_000;
        let h = PI / 2.0;
        let a = midpoint(|p| p.cos() * (1.0 - p.cos()).ln(), 0.0, h, n);
        assert_abs_diff_eq!(a, -(1.0 + PI / 2.0), epsilon = 1e-4);
        let b = midpoint(|p| (1.0 + p.cos()).ln(), 0.0, h, n);
        assert_abs_diff_eq!(b, -PI / 2.0 * LN_2 + 2.0 * CATALAN, epsilon = 1e-6);
        let c = midpoint(|p| (1.0 - p.cos()).ln(), 0.0, h, n);
        assert_abs_diff_eq!(c, -PI / 2.0 * LN_2 - 2.0 * CATALAN, epsilon = 1e-4);
        let d = midpoint(|p| p.cos().powi(2) * ((1.0 + p.cos()) / (1.0 - p.cos())).ln(), 0.0, h, n);
        assert_abs_diff_eq!(d, 1.0 + 2.0 * CATALAN, epsilon = 1e-4);
    }

    #[test]
    fn density_examples() {
        assert_eq!(trace_density_d3(C64::new(3.0, 0.0)), 0.0);
        assert_eq!(trace_density_d3(C64::new(4.0, 0.0)), 0.0);
        assert!(trace_density_d3(C64::new(0.0, 0.0)) > 0.0);
    }

    #[test]
    fn density_support_is_t3() {
        // radicand = −(1/27)(|τ|⁴ − 8 Re τ³ + 18|τ|² − 27)
        for i in 0..60 {
            for j in 0..60 {
                let tau = C64::new(-3.0 + 0.1 * i as f64 + 0.013, -3.0 + 0.1 * j as f64 + 0.007);
                let n2 = tau.norm_sqr();
                let disc = n2 * n2 - 8.0 * tau.powi(3).re + 18.0 * n2 - 27.0;
                let rho = trace_density_d3(tau);
                assert!(rho >= 0.0);
                if disc.abs() > 1e-9 {
                    assert_eq!(rho > 0.0, disc < 0.0, "tau = {tau}");
                }
            }
        }
    }

    #[test]
    fn grid_size_is_checked() {
        let g = PolarGrid { r_points: 100, theta_points: 2048 };
        assert!(t3_normalization(&g, Backend::Sequential).is_err());
    }
}
