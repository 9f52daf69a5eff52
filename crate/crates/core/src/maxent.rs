//! PVM-dynamical entropy: the largest entropy rate over orthonormal bases.
//!
//! Fixing the computational basis, the maximisation runs over `V ∈ U(d)` of
//!
//! ```text
//! f_U(V) = (1/d) Σ_jl η(|(V* U V)_jl|²)
//! ```
//!
//! i.e. the entropy rate of `U` measured in the basis given by the columns
//! of `V`. For qubits the maximum has a closed form in the eigenphase gap;
//! in general we run a multistart gradient ascent on the group.

use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::Serialize;

use crate::ensemble::HaarSampler;
use crate::entropy::eta;
use crate::error::{Error, Result};
use crate::exec::Backend;
use crate::matcore::{
    cis, expm_antihermitian, require_unitary, ComplexMatrix, C64, DEFAULT_UNITARY_TOL, I, ONE,
    ZERO,
};

/// `ln d − value` below which a result certifies chaoticity.
pub const CERTIFICATION_TOL: f64 = 1e-6;

const MAX_OPT_DIM: usize = 8;
const FD_STEP: f64 = 1e-5;
const MAX_HALVINGS: usize = 40;
const ARMIJO: f64 = 1e-4;
/// Starts run in batches of this size; the search stops after the first
/// batch that reaches `ln d` to within [`EARLY_EXIT_GAP`].
const START_BATCH: usize = 8;
const EARLY_EXIT_GAP: f64 = 1e-9;

/// Eigenphase gap data of a qubit unitary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Dim2Spectrum {
    /// Angular distance between the two eigenphases, in `[0, π]`.
    pub theta: f64,
    /// `sin²(θ/2)`.
    pub c: f64,
}

fn require_dim2(u: &ComplexMatrix) -> Result<()> {
    if u.dim() != 2 {
        return Err(Error::dim(format!("expected a 2x2 unitary, got {0}x{0}", u.dim())));
    }
    require_unitary(u, DEFAULT_UNITARY_TOL)
}

/// Eigenvalues of a 2×2 matrix from `λ² − (tr U)λ + det U`, in closed form.
fn eigenvalues_2x2(u: &ComplexMatrix) -> (C64, C64) {
    let tr = u.trace();
    let disc = (tr * tr - u.det() * 4.0).sqrt();
    ((tr + disc) * 0.5, (tr - disc) * 0.5)
}

pub fn dim2_spectrum(u: &ComplexMatrix) -> Result<Dim2Spectrum> {
    require_dim2(u)?;
    // |λ₁ − λ₂| = 2 sin(θ/2) and |λ₁ + λ₂| = 2 cos(θ/2) for unimodular λ
    let tr = u.trace();
    let gap = (tr * tr - u.det() * 4.0).norm().sqrt();
    let theta = 2.0 * gap.atan2(tr.norm());
    let half = (theta / 2.0).sin();
    Ok(Dim2Spectrum { theta, c: half * half })
}

/// `H^dyn` of a qubit unitary as a function of its eigenphase gap `θ`.
pub fn hdyn_of_theta(theta: f64) -> f64 {
    if theta >= FRAC_PI_2 {
        LN_2
    } else {
        let (s, c) = (theta / 2.0).sin_cos();
        eta(c * c) + eta(s * s)
    }
}

/// Closed-form PVM-dynamical entropy of a qubit unitary.
pub fn hdyn_closed_form_d2(u: &ComplexMatrix) -> Result<f64> {
    Ok(hdyn_of_theta(dim2_spectrum(u)?.theta))
}

/// `h_c(p) = η(4p(1−p)c) + η(1 − 4p(1−p)c)`, the qubit objective along the
/// family of bases with weight `p` on the first eigenvector.
pub fn qubit_profile(c: f64, p: f64) -> f64 {
    let x = 4.0 * p * (1.0 - p) * c;
    eta(x) + eta(1.0 - x)
}

/// A basis attaining [`hdyn_closed_form_d2`]: columns
/// `|x⟩ = √r|e₀⟩ + e^{iτ}√(1−r)|e₁⟩` and its orthogonal complement, where
/// `|e₀⟩, |e₁⟩` is an eigenbasis of `U`. `r = 1/2` for `θ ≤ π/2`; otherwise
/// `r = (1 + √(1 − 1/(2c)))/2`, the `+` branch of the two maximisers.
pub fn maximizing_basis_d2(u: &ComplexMatrix, tau: f64) -> Result<ComplexMatrix> {
    let spec = dim2_spectrum(u)?;
    let r = maximizing_weight_d2(&spec);
    let (e0, e1) = eigenbasis_2x2(u);
    let (a, b) = (r.sqrt(), (1.0 - r).sqrt());
    let ph = cis(tau);
    let x: Vec<C64> = (0..2).map(|i| e0[i] * a + ph * e1[i] * b).collect();
    let x_perp: Vec<C64> = (0..2).map(|i| e0[i] * b - ph * e1[i] * a).collect();
    ComplexMatrix::from_columns(&[x, x_perp])
}

/// The weight `r` used by [`maximizing_basis_d2`].
pub fn maximizing_weight_d2(spec: &Dim2Spectrum) -> f64 {
    if spec.theta <= FRAC_PI_2 {
        0.5
    } else {
        // clamp: at θ = π/2 rounding can push 1 − 1/(2c) slightly negative
        let inner = (1.0 - 1.0 / (2.0 * spec.c)).max(0.0);
        0.5 * (1.0 + inner.sqrt())
    }
}

/// Orthonormal eigenvectors of a 2×2 normal matrix.
fn eigenbasis_2x2(u: &ComplexMatrix) -> (Vec<C64>, Vec<C64>) {
    let (l1, l2) = eigenvalues_2x2(u);
    if (l1 - l2).norm() < 1e-12 {
        return (vec![ONE, ZERO], vec![ZERO, ONE]);
    }
    let (a, b, c, d) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let cand1 = [b, l1 - a];
    let cand2 = [l1 - d, c];
    let n1 = (cand1[0].norm_sqr() + cand1[1].norm_sqr()).sqrt();
    let n2 = (cand2[0].norm_sqr() + cand2[1].norm_sqr()).sqrt();
    let (v, n) = if n1 >= n2 { (cand1, n1) } else { (cand2, n2) };
    let e0 = vec![v[0] / n, v[1] / n];
    let e1 = vec![-e0[1].conj(), e0[0].conj()];
    (e0, e1)
}

/// `f_U(V) = (1/d) Σ_jl η(|(V*UV)_jl|²)`.
pub fn objective(u: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let w = &(&v.adjoint() * u) * v;
    entropy_of_entries(&w)
}

fn entropy_of_entries(w: &ComplexMatrix) -> f64 {
    w.as_slice().iter().map(|z| eta(z.norm_sqr())).sum::<f64>() / w.dim() as f64
}

/// Optimizer settings for [`pvm_dynamical_entropy`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxEntOptions {
    /// Number of starting bases: the identity plus `starts − 1` Haar samples.
    pub starts: usize,
    /// Stop a start when the predicted improvement of a step drops below this.
    pub tol: f64,
    pub seed: u64,
    pub max_iters: usize,
    pub backend: Backend,
}

impl Default for MaxEntOptions {
    fn default() -> Self {
        MaxEntOptions { starts: 32, tol: 1e-10, seed: 0, max_iters: 2000, backend: Backend::default() }
    }
}

/// Best basis found by the multistart ascent.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxEntResult {
    pub value: f64,
    /// Columns form the maximising orthonormal basis.
    pub basis: ComplexMatrix,
    pub certified_chaotic: bool,
    pub starts_used: usize,
    /// Starts that stopped on the tolerance rather than the iteration cap.
    pub converged_starts: usize,
}

/// One gradient-ascent run.
#[derive(Clone, Debug)]
pub struct Ascent {
    pub value: f64,
    pub basis: ComplexMatrix,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after every accepted step, starting with the initial value.
    pub history: Vec<f64>,
}

/// Off-diagonal tangent directions of `U(d)` at the identity and their
/// exponentials at `±FD_STEP`.
///
/// The diagonal directions `i E_jj` are left out: they only rephase the
/// rows and columns of `V*UV`, so the objective's derivative along them is
/// identically zero.
struct Tangent {
    dirs: Vec<ComplexMatrix>,
    plus: Vec<ComplexMatrix>,
    minus: Vec<ComplexMatrix>,
}

impl Tangent {
    fn new(d: usize) -> Self {
        let mut dirs = Vec::with_capacity(d * (d - 1));
        for j in 0..d {
            for l in j + 1..d {
                let mut re = ComplexMatrix::zeros(d);
                re[(j, l)] = ONE;
                re[(l, j)] = -ONE;
                dirs.push(re);
                let mut im = ComplexMatrix::zeros(d);
                im[(j, l)] = I;
                im[(l, j)] = I;
                dirs.push(im);
            }
        }
        let exp = |b: &ComplexMatrix, t: f64| {
            expm_antihermitian(&b.scale(C64::new(t, 0.0)), 1e-12).expect("anti-Hermitian direction")
        };
        let plus = dirs.iter().map(|b| exp(b, FD_STEP)).collect();
        let minus = dirs.iter().map(|b| exp(b, -FD_STEP)).collect();
        Tangent { dirs, plus, minus }
    }

    /// Central-difference gradient of `f` at `V`, given `W = V*UV`.
    fn gradient(&self, w: &ComplexMatrix) -> Vec<f64> {
        self.dirs
            .iter()
            .enumerate()
            .map(|(k, _)| {
                // V e^{±hB} turns W into e^{∓hB} W e^{±hB}
                let fwd = entropy_of_entries(&(&(&self.minus[k] * w) * &self.plus[k]));
                let bwd = entropy_of_entries(&(&(&self.plus[k] * w) * &self.minus[k]));
                (fwd - bwd) / (2.0 * FD_STEP)
            })
            .collect()
    }

    fn combine(&self, g: &[f64]) -> ComplexMatrix {
        let d = self.dirs[0].dim();
        let mut a = ComplexMatrix::zeros(d);
        for (b, &gk) in self.dirs.iter().zip(g) {
            for (x, y) in (0..d * d).map(|i| (i / d, i % d)).map(|(i, j)| ((i, j), b[(i, j)])) {
                if y != ZERO {
                    a[x] += y * gk;
                }
            }
        }
        a
    }
}

/// Gradient ascent from `start` with backtracking line search and the
/// retraction `V ← V exp(tA)`.
pub fn ascend_from(u: &ComplexMatrix, start: &ComplexMatrix, tol: f64, max_iters: usize) -> Result<Ascent> {
    require_unitary(u, DEFAULT_UNITARY_TOL)?;
    require_unitary(start, DEFAULT_UNITARY_TOL)?;
    let d = u.dim();
    if start.dim() != d {
        return Err(Error::dim("start basis and unitary differ in dimension"));
    }
    if d == 1 {
        return Ok(Ascent { value: 0.0, basis: start.clone(), iterations: 0, converged: true, history: vec![0.0] });
    }
    Ok(ascend(u, start.clone(), &Tangent::new(d), tol, max_iters))
}

fn ascend(u: &ComplexMatrix, mut v: ComplexMatrix, tangent: &Tangent, tol: f64, max_iters: usize) -> Ascent {
    let d = u.dim();
    let ceiling = (d as f64).ln();
    let mut w = &(&v.adjoint() * u) * &v;
    let mut value = entropy_of_entries(&w);
    let mut history = vec![value];
    let mut step = 1.0_f64;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < max_iters {
        if value >= ceiling - 1e-14 {
            converged = true;
            break;
        }
        let g = tangent.gradient(&w);
        let g2: f64 = g.iter().map(|x| x * x).sum();
        if g2 == 0.0 {
            converged = true;
            break;
        }
        let a = tangent.combine(&g);
        // try a larger step than last time, then halve
        let mut t = (step * 2.0).min(16.0);
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            if t * g2 < tol {
                break;
            }
            let r = expm_antihermitian(&a.scale(C64::new(t, 0.0)), 1e-9)
                .expect("combination of anti-Hermitian directions");
            let cand = &v * &r;
            let cw = &(&cand.adjoint() * u) * &cand;
            let cv = entropy_of_entries(&cw);
            if cv >= value + ARMIJO * t * g2 {
                accepted = Some((cand, cw, cv, t));
                break;
            }
            t *= 0.5;
        }
        iterations += 1;
        match accepted {
            Some((cand, cw, cv, t)) => {
                debug_assert!(cv >= value);
                let predicted = t * g2;
                v = cand;
                w = cw;
                value = cv;
                step = t;
                history.push(value);
                if predicted < tol {
                    converged = true;
                    break;
                }
            }
            None => {
                converged = true;
                break;
            }
        }
    }
    Ascent { value, basis: v, iterations, converged, history }
}

/// Multistart estimate of `H^dyn(U) = max_V f_U(V)`.
///
/// Start 0 is the identity; start `i ≥ 1` is a Haar sample drawn from seed
/// `seed + i`. Starts are processed in batches of eight and the search ends
/// early once a batch attains `ln d` (no basis can exceed it). The result
/// depends only on `(U, starts, tol, seed, max_iters)`, not on the backend.
pub fn pvm_dynamical_entropy(u: &ComplexMatrix, opts: &MaxEntOptions) -> Result<MaxEntResult> {
    require_unitary(u, DEFAULT_UNITARY_TOL)?;
    let d = u.dim();
    if d > MAX_OPT_DIM {
        return Err(Error::Size(format!("optimizer supports d ≤ {MAX_OPT_DIM}, got {d}")));
    }
    if opts.starts == 0 {
        return Err(Error::domain("at least one start is required"));
    }
    let ceiling = (d as f64).ln();
    if d == 1 {
        return Ok(MaxEntResult {
            value: 0.0,
            basis: ComplexMatrix::identity(1),
            certified_chaotic: true,
            starts_used: 1,
            converged_starts: 1,
        });
    }
    let tangent = Tangent::new(d);
    let start_basis = |i: usize| {
        if i == 0 {
            ComplexMatrix::identity(d)
        } else {
            HaarSampler::new(d, opts.seed.wrapping_add(i as u64)).sample()
        }
    };

    let mut best: Option<Ascent> = None;
    let mut used = 0;
    let mut converged = 0;
    while used < opts.starts {
        let batch = START_BATCH.min(opts.starts - used);
        let runs = opts.backend.map(batch, |b| {
            ascend(u, start_basis(used + b), &tangent, opts.tol, opts.max_iters)
        });
        used += batch;
        for run in runs {
            converged += usize::from(run.converged);
            // strict comparison keeps the earliest start on ties
            if best.as_ref().is_none_or(|b| run.value > b.value) {
                best = Some(run);
            }
        }
        if best.as_ref().is_some_and(|b| b.value >= ceiling - EARLY_EXIT_GAP) {
            break;
        }
    }
    let best = best.expect("at least one start");
    Ok(MaxEntResult {
        value: best.value,
        certified_chaotic: ceiling - best.value <= CERTIFICATION_TOL,
        basis: best.basis,
        starts_used: used,
        converged_starts: converged,
    })
}
