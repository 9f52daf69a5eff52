//! The measurement model: normalised rank-1 POVMs, density operators, Born
//! probabilities and the outcome Markov chain.
//!
//! A normalised rank-1 POVM with `k` outcomes on `C^d` has effects
//! `Π_j = (d/k)|φ_j⟩⟨φ_j|` with unit vectors `φ_j` and
//! `Σ_j |φ_j⟩⟨φ_j| = (k/d) I`. With a Lüders instrument the post-measurement
//! state after outcome `j` is `|φ_j⟩⟨φ_j|`, and the outcomes of repeated
//! measurement interleaved with `U` form a Markov chain with transition
//! matrix `p_jl = (d/k)|⟨φ_j|U|φ_l⟩|²`. The uniform distribution, which is
//! the Born distribution of `ρ* = I/d`, is stationary for every such chain.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matcore::{
    cis, hermitian_eig, inner, norm, require_unitary, ComplexMatrix, C64, DEFAULT_UNITARY_TOL,
    ZERO,
};

const UNIT_NORM_TOL: f64 = 1e-9;
const RESOLUTION_TOL: f64 = 1e-8;
const STATE_TOL: f64 = 1e-9;

/// Normalised rank-1 POVM. The PVM case is `k = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOnePOVM {
    dim: usize,
    vectors: Vec<Vec<C64>>,
}

impl RankOnePOVM {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of outcomes `k`.
    pub fn outcomes(&self) -> usize {
        self.vectors.len()
    }

    /// Effect weight `d/k`.
    pub fn weight(&self) -> f64 {
        self.dim as f64 / self.vectors.len() as f64
    }

    pub fn is_pvm(&self) -> bool {
        self.vectors.len() == self.dim
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &[C64] {
        &self.vectors[j]
    }

    /// Computational-basis PVM on `C^dim`.
    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|j| {
                let mut v = vec![ZERO; dim];
                v[j] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        RankOnePOVM { dim, vectors }
    }

    /// For a PVM, the unitary whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Option<ComplexMatrix> {
        self.is_pvm().then(|| ComplexMatrix::from_columns(&self.vectors).expect("square basis"))
    }
}

/// Validates a candidate set of `k ≥ d` vectors as a normalised rank-1 POVM.
pub fn validate_povm(vectors: Vec<Vec<C64>>, dim: usize) -> Result<RankOnePOVM> {
    let k = vectors.len();
    if dim == 0 {
        return Err(Error::dim("POVM dimension must be positive"));
    }
    if k < dim {
        return Err(Error::Construction {
            reason: format!("{k} vectors cannot resolve the identity on C^{dim}"),
            deviation: 1.0,
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::dim(format!("POVM vector of length {} in dimension {dim}", v.len())));
    }
    if vectors.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::domain("POVM vector has non-finite entries"));
    }
    let worst_norm = vectors.iter().map(|v| (norm(v) - 1.0).abs()).fold(0.0, f64::max);
    if worst_norm > UNIT_NORM_TOL {
        return Err(Error::Construction {
            reason: "POVM vectors must have unit norm".into(),
            deviation: worst_norm,
        });
    }
    // Σ |φ_j⟩⟨φ_j| = (k/d) I
    let target = k as f64 / dim as f64;
    let mut worst = 0.0_f64;
    for a in 0..dim {
        for b in 0..dim {
            let s: C64 = vectors.iter().map(|v| v[a] * v[b].conj()).sum();
            let want = if a == b { target } else { 0.0 };
            worst = worst.max((s - want).norm());
        }
    }
    if worst > RESOLUTION_TOL {
        return Err(Error::Construction {
            reason: format!("vectors do not resolve (k/d) I = {target:.6} I"),
            deviation: worst,
        });
    }
    if k == dim {
        let mut worst_overlap = 0.0_f64;
        for j in 0..k {
            for l in j + 1..k {
                worst_overlap = worst_overlap.max(inner(&vectors[j], &vectors[l]).norm());
            }
        }
        if worst_overlap > UNIT_NORM_TOL {
            return Err(Error::Construction {
                reason: "PVM vectors must be pairwise orthogonal".into(),
                deviation: worst_overlap,
            });
        }
    }
    Ok(RankOnePOVM { dim, vectors: vectors.into_iter().map(dephase).collect() })
}

/// Multiplies `v` by the phase that makes its first non-negligible component
/// real and non-negative.
fn dephase(mut v: Vec<C64>) -> Vec<C64> {
    if let Some(z) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let phase = z.conj() / z.norm();
        for x in &mut v {
            *x *= phase;
        }
    }
    v
}

/// The PVM whose `j`-th vector is column `j` of `v`.
pub fn pvm_from_unitary(v: &ComplexMatrix) -> Result<RankOnePOVM> {
    require_unitary(v, DEFAULT_UNITARY_TOL)?;
    let cols = (0..v.dim()).map(|j| v.column(j)).collect();
    validate_povm(cols, v.dim())
}

/// SIC-POVM for `d = 2` (tetrahedron) or `d = 3` (Weyl–Heisenberg orbit of
/// `(0, 1, −1)/√2`).
///
/// The tetrahedron is oriented with one vertex at the south pole `|1⟩` and
/// the other three at height `1/3` and azimuths `0, 2π/3, 4π/3`.
pub fn sic_povm(dim: usize) -> Result<RankOnePOVM> {
    let vectors = match dim {
        2 => {
            let mut vs = vec![vec![ZERO, C64::new(1.0, 0.0)]];
            let (a, b) = ((2.0_f64 / 3.0).sqrt(), (1.0_f64 / 3.0).sqrt());
            for m in 0..3 {
                vs.push(vec![C64::new(a, 0.0), cis(2.0 * PI * m as f64 / 3.0) * b]);
            }
            vs
        }
        3 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let fiducial = [ZERO, C64::new(h, 0.0), C64::new(-h, 0.0)];
            let omega = |e: usize| cis(2.0 * PI * (e % 3) as f64 / 3.0);
            let mut vs = Vec::with_capacity(9);
            // X^a Z^b with Z|j⟩ = ω^j |j⟩ and X|j⟩ = |j+1⟩
            for a in 0..3 {
                for b in 0..3 {
                    let mut v = vec![ZERO; 3];
                    for (j, &f) in fiducial.iter().enumerate() {
                        v[(j + a) % 3] = f * omega(b * j);
                    }
                    vs.push(v);
                }
            }
            vs
        }
        _ => return Err(Error::Unsupported(format!("no SIC-POVM catalogued for d = {dim}"))),
    };
    let expected = 1.0 / (dim as f64 + 1.0);
    let mut worst = 0.0_f64;
    for j in 0..vectors.len() {
        for l in j + 1..vectors.len() {
            worst = worst.max((inner(&vectors[j], &vectors[l]).norm_sqr() - expected).abs());
        }
    }
    if worst > 1e-12 {
        return Err(Error::Construction {
            reason: format!("SIC overlap self-check failed in d = {dim}"),
            deviation: worst,
        });
    }
    validate_povm(vectors, dim)
}

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    matrix: ComplexMatrix,
}

impl State {
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.hermitian_deviation();
        if herm > STATE_TOL {
            return Err(Error::Construction { reason: "state is not Hermitian".into(), deviation: herm });
        }
        let tr = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if tr > STATE_TOL {
            return Err(Error::Construction { reason: "state trace is not 1".into(), deviation: tr });
        }
        let eig = hermitian_eig(&matrix, STATE_TOL)?;
        let min = eig.eigenvalues[0];
        if min < -STATE_TOL {
            return Err(Error::Construction {
                reason: "state has a negative eigenvalue".into(),
                deviation: -min,
            });
        }
        Ok(State { matrix })
    }

    /// `ρ* = I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        State { matrix: ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)) }
    }

    /// `|ψ⟩⟨ψ|` for a normalised copy of `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = norm(psi);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("cannot build a pure state from a zero vector"));
        }
        let d = psi.len();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = psi[i] * psi[j].conj() / (n * n);
            }
        }
        Ok(State { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// `p_j = (d/k)⟨φ_j|ρ|φ_j⟩`.
pub fn born_probabilities(povm: &RankOnePOVM, rho: &State) -> Result<Vec<f64>> {
    if povm.dim() != rho.dim() {
        return Err(Error::dim(format!("POVM in C^{} but state in C^{}", povm.dim(), rho.dim())));
    }
    let w = povm.weight();
    Ok(povm.vectors().iter().map(|v| w * rho.matrix().sandwich(v, v).re).collect())
}

/// Row-stochastic matrix of the outcome chain, `k × k`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    k: usize,
    p: Vec<f64>,
}

impl TransitionMatrix {
    pub fn outcomes(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.p[from * self.k + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.p[from * self.k..(from + 1) * self.k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.p
    }

    /// Largest `|Σ_l p_jl − 1|` over rows.
    pub fn row_sum_deviation(&self) -> f64 {
        (0..self.k).map(|j| (self.row(j).iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Largest `|Σ_j p_jl − 1|` over columns.
    pub fn column_sum_deviation(&self) -> f64 {
        (0..self.k)
            .map(|l| ((0..self.k).map(|j| self.get(j, l)).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `p_jl = (d/k)|⟨φ_j|U|φ_l⟩|²`.
pub fn transition_matrix(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<TransitionMatrix> {
    check_dims(u, povm)?;
    require_unitary(u, DEFAULT_UNITARY_TOL)?;
    Ok(transition_matrix_unchecked(u, povm))
}

pub(crate) fn check_dims(u: &ComplexMatrix, povm: &RankOnePOVM) -> Result<()> {
    if u.dim() != povm.dim() {
        return Err(Error::dim(format!(
            "unitary is {0}x{0} but the POVM acts on C^{1}",
            u.dim(),
            povm.dim()
        )));
    }
    Ok(())
}

pub(crate) fn transition_matrix_unchecked(u: &ComplexMatrix, povm: &RankOnePOVM) -> TransitionMatrix {
    let k = povm.outcomes();
    let w = povm.weight();
    let images: Vec<Vec<C64>> = povm.vectors().iter().map(|v| u.apply(v)).collect();
    let mut p = Vec::with_capacity(k * k);
    for j in 0..k {
        let phi = povm.vector(j);
        for img in &images {
            p.push(w * inner(phi, img).norm_sqr());
        }
    }
    TransitionMatrix { k, p }
}

/// Probability of observing the outcome string `symbols` (0-based) when the
/// chain starts in `rho`: `p_{i₁}(ρ) · Π_m p_{i_m i_{m+1}}`.
pub fn wigner_string_probability(
    u: &ComplexMatrix,
    povm: &RankOnePOVM,
    rho: &State,
    symbols: &[usize],
) -> Result<f64> {
    let k = povm.outcomes();
    let (&first, _) = symbols
        .split_first()
        .ok_or_else(|| Error::domain("outcome string must be non-empty"))?;
    if let Some(&bad) = symbols.iter().find(|&&s| s >= k) {
        return Err(Error::domain(format!("outcome {bad} out of range for {k} outcomes")));
    }
    let p0 = born_probabilities(povm, rho)?;
    let t = transition_matrix(u, povm)?;
    Ok(symbols.windows(2).fold(p0[first], |acc, w| acc * t.get(w[0], w[1])))
}
