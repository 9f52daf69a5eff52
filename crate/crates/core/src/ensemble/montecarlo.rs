use serde::Serialize;

use super::HaarSampler;
use crate::chaos::{classify, ChaosStatus, ClassifyOptions};
use crate::entropy::entropy_rate;
use crate::error::{Error, Result};
use crate::exec::{chunk_sizes, Backend};
use crate::matcore::ComplexMatrix;
use crate::maxent::{hdyn_closed_form_d2, pvm_dynamical_entropy, MaxEntOptions};
use crate::measure::RankOnePOVM;

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
    pub worker_count: usize,
}

/// Running count, mean and sum of squared deviations (Welford).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Pairwise combination of two disjoint accumulators (Chan et al.).
    pub fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

/// Monte Carlo settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    /// Number of substreams. Worker `w` draws `chunk_sizes(samples, workers)[w]`
    /// samples from substream `w` of `seed`.
    pub workers: usize,
    pub backend: Backend,
}

impl McOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        McOptions { samples, seed, workers: 8, backend: Backend::default() }
    }
}

/// Mean of `stat` over Haar-random unitaries of dimension `dim`.
///
/// The result depends on `(dim, samples, seed, workers)` only: workers
/// reduce in index order whatever the backend.
pub fn mc_estimate<F>(dim: usize, opts: &McOptions, stat: F) -> Result<McEstimate>
where
    F: Fn(&ComplexMatrix) -> Result<f64> + Sync + Send,
{
    if opts.samples < 2 {
        return Err(Error::domain("need at least 2 samples for a standard error"));
    }
    if opts.workers == 0 {
        return Err(Error::domain("worker count must be positive"));
    }
    let sizes = chunk_sizes(opts.samples, opts.workers);
    let parts = opts.backend.map(sizes.len(), |w| -> Result<Moments> {
        let mut sampler = HaarSampler::with_stream(dim, opts.seed, w as u64);
        let mut m = Moments::default();
        for _ in 0..sizes[w] {
            m.push(stat(&sampler.sample())?);
        }
        Ok(m)
    });
    let mut total = Moments::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(McEstimate {
        mean: total.mean,
        std_error: (total.variance() / total.n as f64).sqrt(),
        samples: total.n,
        seed: opts.seed,
        worker_count: opts.workers,
    })
}

/// Haar fraction of chaotic unitaries, using the exact tests (`d = 2, 3`).
pub fn mc_chaotic_volume(d: usize, opts: &McOptions) -> Result<McEstimate> {
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!(
            "no exact chaoticity test in d = {d}; volume estimates need d = 2 or 3"
        )));
    }
    let copts = ClassifyOptions::default();
    mc_estimate(d, opts, |u| Ok(f64::from(classify(u, &copts)?.status == ChaosStatus::Chaotic)))
}

/// Haar mean of the closed-form qubit `H^dyn`.
pub fn mc_mean_hdyn_d2(opts: &McOptions) -> Result<McEstimate> {
    mc_estimate(2, opts, hdyn_closed_form_d2)
}

/// Haar mean of the entropy rate in the computational basis.
pub fn mc_mean_fixed_pvm(d: usize, opts: &McOptions) -> Result<McEstimate> {
    if !(1..=8).contains(&d) {
        return Err(Error::Size(format!("fixed-basis mean supports d ≤ 8, got {d}")));
    }
    let pvm = RankOnePOVM::computational(d);
    mc_estimate(d, opts, |u| entropy_rate(u, &pvm))
}

/// Haar mean of the optimizer's `H^dyn`. Each sample runs the multistart
/// sequentially; the samples themselves are spread over the workers.
pub fn mc_mean_maxent(d: usize, opts: &McOptions, maxent: &MaxEntOptions) -> Result<McEstimate> {
    let inner = MaxEntOptions { backend: Backend::Sequential, ..*maxent };
    mc_estimate(d, opts, |u| Ok(pvm_dynamical_entropy(u, &inner)?.value))
}
