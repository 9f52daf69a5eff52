use super::{cis, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_ITERS: usize = 500;
const STEP_TOL: f64 = 1e-13;
const MAX_DEGREE: usize = 8;

/// Evaluates a polynomial given highest-degree coefficient first (Horner).
pub fn poly_eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().fold(ZERO, |acc, &c| acc * z + c)
}

/// All roots of `c[0] z^n + c[1] z^{n-1} + … + c[n]` by Durand–Kerner
/// (Weierstrass) simultaneous iteration.
///
/// Starting points are the `n`-th roots of unity scaled by `1 + max|c_k/c_0|`
/// and rotated by a fixed 0.4 rad so that real polynomials do not trap the
/// iterates on the real axis. Iteration stops once every correction is below
/// `1e-13`; if the cap of 500 sweeps is reached the iterate is still accepted
/// when each root satisfies `|p(z)| ≤ 1e-10 (1 + |z|)^n`, which is the case
/// for clustered roots whose corrections stall at rounding level.
pub fn poly_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let lead = *coeffs
        .first()
        .ok_or_else(|| Error::domain("polynomial has no coefficients"))?;
    if lead == ZERO {
        return Err(Error::domain("leading coefficient is zero"));
    }
    let n = coeffs.len() - 1;
    if n > MAX_DEGREE {
        return Err(Error::Size(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[1]]);
    }
    let radius = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<C64> = (0..n)
        .map(|k| cis(2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4) * radius)
        .collect();

    let residual_ok = |roots: &[C64]| {
        roots
            .iter()
            .all(|&z| poly_eval(&monic, z).norm() <= 1e-10 * (1.0 + z.norm()).powi(n as i32))
    };

    for _ in 0..MAX_ITERS {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = ONE;
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom == ZERO {
                // coincident iterates: nudge apart and keep going
                roots[i] += C64::new(1e-12, 1e-12) * radius;
                max_step = f64::INFINITY;
                continue;
            }
            let step = poly_eval(&monic, zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < STEP_TOL {
            return Ok(roots);
        }
    }
    if residual_ok(&roots) {
        Ok(roots)
    } else {
        Err(Error::Numerical {
            reason: format!("Durand-Kerner did not converge in {MAX_ITERS} iterations"),
            best_iterate: roots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::I;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn contains(roots: &[C64], z: C64, tol: f64) -> bool {
        roots.iter().any(|r| (r - z).norm() < tol)
    }

    #[test]
    fn square_roots_of_one() {
        let r = poly_roots(&[ONE, ZERO, -ONE]).unwrap();
        assert!(contains(&r, ONE, 1e-12) && contains(&r, -ONE, 1e-12));
    }

    #[test]
    fn real_polynomial_with_complex_roots() {
        // λ² + 1 traps a purely real start; the rotated start must escape
        let r = poly_roots(&[ONE, ZERO, ONE]).unwrap();
        assert!(contains(&r, I, 1e-12) && contains(&r, -I, 1e-12));
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = poly_roots(&[ONE, ZERO, ZERO, -ONE]).unwrap();
        for k in 0..3 {
            assert!(contains(&r, cis(2.0 * std::f64::consts::PI * k as f64 / 3.0), 1e-12));
        }
    }

    #[test]
    fn fourier3_characteristic_polynomial_has_unimodular_roots() {
        // F₃/√3 has trace i and determinant −i; dividing by the cube root i of
        // the determinant gives τ = 1, so λ³ − λ² + λ − 1
        let coeffs = [ONE, -ONE, ONE, -ONE];
        let r = poly_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-9, "root {z} not unimodular");
            assert!(poly_eval(&coeffs, *z).norm() < 1e-12);
        }
        assert!(contains(&r, ONE, 1e-12) && contains(&r, I, 1e-12) && contains(&r, -I, 1e-12));
    }

    #[test]
    fn unadjusted_fourier_trace_leaves_the_circle() {
        // τ = i√3 is tr F₃ without the 1/√3 normalisation; it lies outside
        // the SU(3) trace region so not every root is unimodular
        let s3 = 3f64.sqrt();
        let coeffs = [ONE, c(0.0, -s3), c(0.0, -s3), -ONE];
        let r = poly_roots(&coeffs).unwrap();
        for z in &r {
            assert!(poly_eval(&coeffs, *z).norm() < 1e-12);
        }
        assert!(r.iter().any(|z| (z.norm() - 1.0).abs() > 0.1));
    }

    #[test]
    fn triple_root_is_accepted_by_residual() {
        // (λ − 1)³
        let coeffs = [ONE, c(-3.0, 0.0), c(3.0, 0.0), -ONE];
        let r = poly_roots(&coeffs).unwrap();
        for z in &r {
            assert!((z - ONE).norm() < 1e-4);
        }
        let mean: C64 = r.iter().sum::<C64>() / 3.0;
        assert!((mean - ONE).norm() < 1e-5);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(poly_roots(&[]).is_err());
        assert!(poly_roots(&[ZERO, ONE]).is_err());
        assert!(matches!(poly_roots(&[ONE; 10]), Err(Error::Size(_))));
    }

    #[test]
    fn linear_and_constant() {
        assert!(poly_roots(&[c(2.0, 0.0)]).unwrap().is_empty());
        let r = poly_roots(&[c(2.0, 0.0), c(-4.0, 2.0)]).unwrap();
        assert!((r[0] - c(2.0, -1.0)).norm() < 1e-15);
    }
}
