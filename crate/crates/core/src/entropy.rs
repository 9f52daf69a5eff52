//! Entropy functionals of the outcome chain. All values are in nats.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{inner, ComplexMatrix};
use crate::measure::{
    born_probabilities, transition_matrix, RankOnePOVM, State, TransitionMatrix,
};
use crate::rng::Stream;

/// Arguments below this are treated as zero by [`eta`].
const ETA_FLOOR: f64 = 1e-300;

/// Largest number of strings [`block_entropies`] will enumerate at one length.
pub const MAX_ENUMERATED_STRINGS: u64 = 10_000_000;

/// Shannon function `η(x) = −x ln x`, `η(0) = 0`.
pub fn shannon_eta(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::domain(format!("η is undefined at {x}")));
    }
    Ok(eta(x))
}

/// Unchecked `η`; non-positive and subnormal-scale arguments map to 0.
#[inline]
pub(crate) fn eta(x: f64) -> f64 {
    if x <= ETA_FLOOR {
        0.0
    } else {
        -x * x.ln()
    }
}

/// Rate, measurement and dynamical parts of the entropy of `(U, Π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    /// `H(U, Π)`.
    pub rate: f64,
    /// `H(I, Π)`.
    pub measurement: f64,
    /// `rate − measurement`.
    pub dynamical: f64,
}

/// Entropy of a row-stochastic chain started from its uniform stationary
/// distribution: `(1/k) Σ_jl η(p_jl)`.
pub fn chain_entropy(t: &TransitionMatrix) -> f64 {
    t.entries().iter().map(|&p| eta(p)).sum::<f64>() / t.outcomes() as f64
}

/// Entropy rate `H(U, Π)` of the outcome chain.
pub fn entropy_rate(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<f64> {
    Ok(chain_entropy(&transition_matrix(u, povm)?))
}

/// `H_meas(Π) = H(I, Π)`; zero exactly for PVMs.
pub fn measurement_entropy(povm: &RankOnePOVM) -> f64 {
    let id = ComplexMatrix::identity(povm.dim());
    chain_entropy(&transition_matrix(&id, povm).expect("identity is unitary"))
}

pub fn dynamical_entropy(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<EntropyReport> {
    let rate = entropy_rate(u, povm)?;
    let measurement = measurement_entropy(povm);
    Ok(EntropyReport { rate, measurement, dynamical: rate - measurement })
}

/// Shannon entropy of the outcome distribution of `Π` on the state `ρ`.
pub fn state_entropy(rho: &State, povm: &RankOnePOVM) -> Result<f64> {
    Ok(born_probabilities(povm, rho)?.into_iter().map(eta).sum())
}

/// The entropy rate written as the mean outcome entropy of the evolved
/// post-measurement states: `(1/k) Σ_j H(U|φ_j⟩, Π)`.
pub fn entropy_rate_as_mean(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<f64> {
    // validates dimensions and unitarity
    transition_matrix(u, povm)?;
    let k = povm.outcomes();
    let mut total = 0.0;
    for phi in povm.vectors() {
        let evolved = State::pure(&u.apply(phi))?;
        total += state_entropy(&evolved, povm)?;
    }
    Ok(total / k as f64)
}

/// Block entropies `H_1, …, H_n` of the chain started at `ρ*`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEntropySeries {
    pub values: Vec<f64>,
    /// `H_{m+1} − H_m`.
    pub differences: Vec<f64>,
}

/// Exhaustive block entropies `H_n = Σ η(P_{i₁…i_n}(ρ*))` for
/// `n = 1..=n_max`, summing over every outcome string.
pub fn block_entropies(
    u: &ComplexMatrix,
    povm: &RankOnePOVM,
    n_max: usize,
) -> Result<BlockEntropySeries> {
    let k = povm.outcomes();
    let strings = (k as u64).checked_pow(n_max as u32).unwrap_or(u64::MAX);
    if strings > MAX_ENUMERATED_STRINGS {
        return Err(Error::Size(format!(
            "{k}^{n_max} outcome strings exceed the enumeration limit {MAX_ENUMERATED_STRINGS}"
        )));
    }
    if n_max == 0 {
        return Ok(BlockEntropySeries { values: Vec::new(), differences: Vec::new() });
    }
    let t = transition_matrix(u, povm)?;
    let p0 = born_probabilities(povm, &State::maximally_mixed(povm.dim()))?;
    let mut values = vec![0.0; n_max];

    // depth-first over the string tree; each node adds η(P) at its length
    fn walk(t: &TransitionMatrix, last: usize, prob: f64, depth: usize, values: &mut [f64]) {
        values[depth] += eta(prob);
        if depth + 1 == values.len() || prob == 0.0 {
            return;
        }
        for next in 0..t.outcomes() {
            walk(t, next, prob * t.get(last, next), depth + 1, values);
        }
    }
    for (first, &p) in p0.iter().enumerate() {
        walk(&t, first, p, 0, &mut values);
    }
    let differences = values.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(BlockEntropySeries { values, differences })
}

/// Plug-in estimate of the entropy rate from one simulated trajectory.
///
/// The first outcome is uniform (the Born distribution of `ρ*`); each
/// following outcome is drawn from the transition row of the previous one.
/// Returns the empirical conditional entropy `−Σ (n_jl/N) ln(n_jl/n_j)` of
/// consecutive pairs, without bias correction.
pub fn empirical_entropy_rate(
    u: &ComplexMatrix,
    povm: &RankOnePOVM,
    steps: usize,
    seed: u64,
) -> Result<f64> {
    if steps < 10_000 {
        return Err(Error::domain(format!("at least 10^4 steps are required, got {steps}")));
    }
    let t = transition_matrix(u, povm)?;
    let k = t.outcomes();
    let cumulative: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            t.row(j)
                .iter()
                .scan(0.0, |acc, &p| {
                    *acc += p;
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    let mut rng = Stream::new(seed, 0);
    let mut counts = vec![0u64; k * k];
    let mut state = rng.below(k);
    for _ in 0..steps {
        let row = &cumulative[state];
        // scale by the row total so rounding in the last partial sum cannot
        // push the draw past the end
        let x = rng.uniform() * row[k - 1];
        let next = row.iter().position(|&c| x < c).unwrap_or(k - 1);
        counts[state * k + next] += 1;
        state = next;
    }
    let n = steps as f64;
    let mut h = 0.0;
    for j in 0..k {
        let row = &counts[j * k..(j + 1) * k];
        let total: u64 = row.iter().sum();
        if total == 0 {
            continue;
        }
        for &c in row.iter().filter(|&&c| c > 0) {
            h -= (c as f64 / n) * (c as f64 / total as f64).ln();
        }
    }
    Ok(h)
}

/// `ln(k/d) + (d/k²) Σ_jl η(|⟨φ_j|U|φ_l⟩|²)`, the same rate computed from the
/// raw overlaps instead of the transition matrix.
pub fn entropy_rate_from_overlaps(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<f64> {
    transition_matrix(u, povm)?;
    let (k, d) = (povm.outcomes() as f64, povm.dim() as f64);
    let images: Vec<_> = povm.vectors().iter().map(|v| u.apply(v)).collect();
    let mut s = 0.0;
    for phi in povm.vectors() {
        for img in &images {
            s += eta(inner(phi, img).norm_sqr());
        }
    }
    Ok((k / d).ln() + d / (k * k) * s)
}
