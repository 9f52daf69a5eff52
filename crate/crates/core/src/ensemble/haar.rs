use crate::matcore::{ComplexMatrix, C64, ONE, ZERO};
use crate::rng::Stream;

/// Reproducible stream of Haar-distributed unitaries.
///
/// Each sample is a Ginibre matrix (i.i.d. standard complex Gaussian
/// entries, filled row by row) orthonormalised by Householder QR, with the
/// columns of `Q` multiplied by the phases of `R`'s diagonal so that the
/// result is exactly Haar rather than biased by the QR sign convention.
pub struct HaarSampler {
    dim: usize,
    seed: u64,
    rng: Stream,
}

impl HaarSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self::with_stream(dim, seed, 0)
    }

    /// Substream `stream` of `seed`; distinct streams are independent.
    pub fn with_stream(dim: usize, seed: u64, stream: u64) -> Self {
        HaarSampler { dim, seed, rng: Stream::new(seed, stream) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample(&mut self) -> ComplexMatrix {
        let d = self.dim;
        let entries = (0..d * d).map(|_| self.rng.complex_normal()).collect();
        let ginibre = ComplexMatrix::from_vec(d, entries).expect("finite gaussian entries");
        let (q, r_diag) = householder_qr(&ginibre);
        let mut u = q;
        for (j, r) in r_diag.iter().enumerate() {
            let phase = if r.norm() > 0.0 { r / r.norm() } else { ONE };
            for i in 0..d {
                u[(i, j)] *= phase;
            }
        }
        u
    }
}

impl Iterator for HaarSampler {
    type Item = ComplexMatrix;
    fn next(&mut self) -> Option<ComplexMatrix> {
        Some(self.sample())
    }
}

/// One Haar unitary from `(dim, seed)`, stream 0.
pub fn haar_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    HaarSampler::new(dim, seed).sample()
}

/// Householder QR; returns the explicit `Q` and the diagonal of `R`.
pub(crate) fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, Vec<C64>) {
    let d = a.dim();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(d);
    let mut diag = Vec::with_capacity(d);
    for k in 0..d {
        let xnorm = (k..d).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            diag.push(ZERO);
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v: Vec<C64> = (k..d).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            diag.push(r[(k, k)]);
            continue;
        }
        // R <- (I − 2 v v*/|v|²) R on rows k..d
        for j in k..d {
            let s: C64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * r[(k + t, j)]).sum();
            let f = s * (2.0 / vnorm2);
            for (t, vt) in v.iter().enumerate() {
                r[(k + t, j)] -= vt * f;
            }
        }
        // Q <- Q (I − 2 v v*/|v|²) on columns k..d
        for i in 0..d {
            let s: C64 = v.iter().enumerate().map(|(t, vt)| q[(i, k + t)] * vt).sum();
            let f = s * (2.0 / vnorm2);
            for (t, vt) in v.iter().enumerate() {
                q[(i, k + t)] -= f * vt.conj();
            }
        }
        diag.push(r[(k, k)]);
    }
    (q, diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::is_unitary;

    #[test]
    fn qr_reconstructs() {
        let mut rng = Stream::new(5, 0);
        let a = ComplexMatrix::from_vec(4, (0..16).map(|_| rng.complex_normal()).collect()).unwrap();
        let (q, diag) = householder_qr(&a);
        assert!(is_unitary(&q, 1e-13).passed);
        // R = Q* A is upper triangular with the reported diagonal
        let r = &q.adjoint() * &a;
        for i in 0..4 {
            assert!((r[(i, i)] - diag[i]).norm() < 1e-12);
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn samples_are_unitary_and_reproducible() {
        for d in 1..=6 {
            let mut a = HaarSampler::new(d, 42);
            let mut b = HaarSampler::new(d, 42);
            for _ in 0..20 {
                let u = a.sample();
                assert!(is_unitary(&u, 1e-9).passed);
                assert_eq!(u, b.sample());
            }
        }
        assert_ne!(haar_unitary(3, 1), haar_unitary(3, 2));
        assert_ne!(HaarSampler::with_stream(3, 1, 1).sample(), haar_unitary(3, 1));
    }

    #[test]
    fn one_dimensional_samples_are_phases() {
        let mut s = HaarSampler::new(1, 9);
        let n = 20_000;
        let mut mean = C64::new(0.0, 0.0);
        for _ in 0..n {
            let z = s.sample()[(0, 0)];
            assert!((z.norm() - 1.0).abs() < 1e-14);
            mean += z;
        }
        // uniform phase has zero mean
        assert!((mean / n as f64).norm() < 0.03);
    }
}
