use super::{cis, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Spectral decomposition `H = V diag(λ) V*`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `h_pq` with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation, so the
/// accumulated transformation stays unitary to rounding error.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let dev = h.hermitian_deviation();
    if dev > tol {
        return Err(Error::domain(format!(
            "matrix is not Hermitian: max |H - H*| = {dev:.3e} > {tol:.1e}"
        )));
    }
    let d = h.dim();
    // symmetrise so rounding in the input cannot leak into the rotations
    let mut a = h.clone();
    for i in 0..d {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..d {
            let m = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = m;
            a[(j, i)] = m.conj();
        }
    }
    let mut v = ComplexMatrix::identity(d);
    let scale = a.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(d);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..d {
            eigenvectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let d = a.dim();
    let phase = apq / mag; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A <- A J
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    // A <- J* A
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
}

/// `e^A` for anti-Hermitian `A`, computed as `V diag(e^{iλ}) V*` from the
/// spectral decomposition of the Hermitian matrix `-iA`.
pub fn expm_antihermitian(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let d = a.dim();
    let mut dev = 0.0_f64;
    for i in 0..d {
        for j in i..d {
            dev = dev.max((a[(i, j)] + a[(j, i)].conj()).norm());
        }
    }
    if dev > tol {
        return Err(Error::domain(format!(
            "matrix is not anti-Hermitian: max |A + A*| = {dev:.3e} > {tol:.1e}"
        )));
    }
    let h = a.scale(C64::new(0.0, -1.0));
    // hermitian_eig re-checks with the same tolerance; the check above already passed
    let eig = hermitian_eig(&h, tol.max(dev))?;
    Ok(spectral_unitary(&eig))
}

/// `V diag(e^{iλ}) V*`.
pub(crate) fn spectral_unitary(eig: &HermitianEig) -> ComplexMatrix {
    let v = &eig.eigenvectors;
    let d = v.dim();
    let phases: Vec<C64> = eig.eigenvalues.iter().map(|&l| cis(l)).collect();
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = ZERO;
            for k in 0..d {
                acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{is_unitary, I, ONE};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect(),
        )
        .unwrap()
    }

    fn reconstruct(e: &HermitianEig) -> ComplexMatrix {
        let lam: Vec<C64> = e.eigenvalues.iter().map(|&l| C64::new(l, 0.0)).collect();
        let v = &e.eigenvectors;
        &(v * &ComplexMatrix::from_diag(&lam)) * &v.adjoint()
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let e = hermitian_eig(&real(&[&[3.0, 0.0], &[0.0, 1.0]]), 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&h, 1e-12).unwrap();
        assert_abs_diff_eq!(e.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.eigenvalues[1], 1.0, epsilon = 1e-14);
        assert!(reconstruct(&e).max_abs_diff(&h) < 1e-13);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_rows(vec![
            vec![C64::new(2.0, 0.0), C64::new(1.0, -1.0), C64::new(0.0, 0.5)],
            vec![C64::new(1.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.3, 0.2)],
            vec![C64::new(0.0, -0.5), C64::new(0.3, -0.2), C64::new(0.5, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eig(&h, 1e-12).unwrap();
        assert!(reconstruct(&e).max_abs_diff(&h) < 1e-13);
        assert!(is_unitary(&e.eigenvectors, 1e-13).passed);
        let sum: f64 = e.eigenvalues.iter().sum();
        assert_abs_diff_eq!(sum, h.trace().re, epsilon = 1e-13);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn non_hermitian_is_a_domain_error() {
        let m = ComplexMatrix::from_rows(vec![vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
        assert!(matches!(hermitian_eig(&m, 1e-9), Err(Error::Domain(_))));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let u = expm_antihermitian(&ComplexMatrix::zeros(3), 1e-12).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn exp_of_real_antisymmetric_is_rotation() {
        let a = real(&[&[0.0, PI / 2.0], &[-PI / 2.0, 0.0]]);
        let u = expm_antihermitian(&a, 1e-12).unwrap();
        // exp([[0, t], [-t, 0]]) = [[cos t, sin t], [-sin t, cos t]] at t = π/2
        let want = real(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert!(u.max_abs_diff(&want) < 1e-10, "{u:?}");
    }

    #[test]
    fn exp_of_diagonal_phases() {
        let thetas = [0.3, -1.2, 2.5];
        let a = ComplexMatrix::from_diag(&thetas.map(|t| I * t));
        let u = expm_antihermitian(&a, 1e-12).unwrap();
        let want = ComplexMatrix::from_diag(&thetas.map(cis));
        assert!(u.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn exp_rejects_hermitian_input() {
        let a = real(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(expm_antihermitian(&a, 1e-9), Err(Error::Domain(_))));
    }
}
