use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matcore::{cis, ComplexMatrix, C64, I, ONE};

/// Benchmark complex Hadamard matrices: every Hadamard matrix of order
/// 3, 4 or 5 is equivalent to one of these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Benchmark {
    F3,
    /// The one-parameter family `F₄⁽¹⁾(φ)`.
    F4(f64),
    F5,
}

impl Benchmark {
    pub fn label(&self) -> String {
        match self {
            Benchmark::F3 => "F3".into(),
            Benchmark::F4(phi) => format!("F4({phi})"),
            Benchmark::F5 => "F5".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Benchmark::F3 => 3,
            Benchmark::F4(_) => 4,
            Benchmark::F5 => 5,
        }
    }

    /// Unnormalised matrix with unimodular entries.
    pub fn matrix(&self) -> ComplexMatrix {
        match *self {
            Benchmark::F3 => ComplexMatrix::fourier(3),
            Benchmark::F5 => ComplexMatrix::fourier(5),
            Benchmark::F4(phi) => {
                let w = I * cis(phi);
                let rows = vec![
                    vec![ONE, ONE, ONE, ONE],
                    vec![ONE, w, -ONE, -w],
                    vec![ONE, -ONE, ONE, -ONE],
                    vec![ONE, -w, -ONE, w],
                ];
                ComplexMatrix::from_rows(rows).expect("4x4 rows")
            }
        }
    }
}

/// Spiral-similarity multiplier for one `(F, σ)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaFactor {
    pub hadamard_id: String,
    /// `sigma[j]` is the image of `j` (0-based).
    pub sigma: Vec<usize>,
    /// Principal `d`-th root of `(det F)^{-1} sgn(σ) Π_j F_{j,σ(j)}`.
    pub value: C64,
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn permutation_sign(p: &[usize]) -> f64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Principal `n`-th root: modulus root times `e^{i·arg/n}`, `arg ∈ (−π, π]`.
pub fn principal_root(z: C64, n: usize) -> C64 {
    let (r, arg) = z.to_polar();
    C64::from_polar(r.powf(1.0 / n as f64), arg / n as f64)
}

/// `α_{F,σ}` for every `σ ∈ S_d`.
pub fn alpha_factors(benchmark: Benchmark) -> Vec<AlphaFactor> {
    let f = benchmark.matrix();
    let d = f.dim();
    let inv_det = f.det().inv();
    permutations(d)
        .into_iter()
        .map(|sigma| {
            let prod: C64 = (0..d).map(|j| f[(j, sigma[j])]).product();
            let value = principal_root(inv_det * prod * permutation_sign(&sigma), d);
            AlphaFactor { hadamard_id: benchmark.label(), sigma, value }
        })
        .collect()
}

/// Distinct rotation angles of `√d·α`, reduced modulo `2π/d` into
/// `(−π/d, π/d]` (each `T_d` is invariant under multiplication by `ω_d`),
/// de-duplicated within `tol` and sorted.
pub fn distinct_rotations(factors: &[AlphaFactor], d: usize, tol: f64) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::dim("d must be positive"));
    }
    let period = 2.0 * PI / d as f64;
    let mut out: Vec<f64> = Vec::new();
    for a in factors {
        let mut t = a.value.arg().rem_euclid(period);
        if t > period / 2.0 + tol {
            t -= period;
        }
        if !out.iter().any(|&u| (u - t).abs() <= tol) {
            out.push(t);
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}
