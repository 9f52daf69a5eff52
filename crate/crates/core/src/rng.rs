//! Seeded random streams.
//!
//! All randomness goes through [`Stream`], a ChaCha8 generator addressed by a
//! `(seed, stream)` pair. ChaCha8 is a counter-based cipher with a fixed,
//! platform-independent output sequence, so a given pair always yields the
//! same draws. Uniforms take the top 53 bits of `next_u64`; normals come
//! from Box–Muller on two such uniforms.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matcore::C64;

pub struct Stream {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl Stream {
    /// Independent substream `stream` of the generator keyed by `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Stream { inner, spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`, safe to take the logarithm of.
    fn uniform_open0(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Standard normal variate.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open0();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Standard complex Gaussian: real and imaginary parts i.i.d. `N(0, 1/2)`.
    pub fn complex_normal(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.normal() * s, self.normal() * s)
    }

    /// Integer in `0..n` by multiply-shift; the bias is at most `n / 2^64`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.inner.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map({
            let mut s = Stream::new(7, 0);
            move |_| s.next_u64()
        }).collect();
        let b: Vec<u64> = (0..4).map({
            let mut s = Stream::new(7, 0);
            move |_| s.next_u64()
        }).collect();
        let mut other = Stream::new(7, 1);
        assert_eq!(a, b);
        assert_ne!(a[0], other.next_u64());
    }

    #[test]
    fn normal_moments() {
        let mut s = Stream::new(1, 0);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| s.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.01);
    }

    #[test]
    fn uniform_range() {
        let mut s = Stream::new(3, 9);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
            assert!(s.below(5) < 5);
        }
    }
}
