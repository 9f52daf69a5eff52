//! Chaoticity of unitaries: `U` is chaotic when `H^dyn(U) = ln d`, i.e. when
//! `√d·U` is a complex Hadamard matrix in some orthonormal basis.
//!
//! Exact tests exist for qubits (`|tr U| ≤ √2`) and qutrits (trace of
//! `U/β` in two rotated, shrunken deltoids). For `d = 5` the trace gives a
//! necessary condition; in every dimension `|tr U| ≤ √d` is necessary. What
//! the trace tests cannot settle is handed to the optimizer, whose
//! certificate is one-sided.

mod alpha;
mod region;

pub use alpha::{
    alpha_factors, distinct_rotations, permutation_sign, permutations, principal_root,
    AlphaFactor, Benchmark,
};
pub use region::{
    ct_region, ct_rotations, hypocycloid_point, in_t3, in_trace_region, Membership, TraceRegion,
    DEFAULT_POLYLINE_SAMPLES, DEFAULT_REGION_TOL,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{cis, require_unitary, ComplexMatrix, C64, DEFAULT_UNITARY_TOL};
use crate::maxent::{pvm_dynamical_entropy, MaxEntOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChaosStatus {
    Chaotic,
    NotChaotic,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChaosMethod {
    ExactD2,
    ExactD3,
    TraceNecessary,
    NecessaryD5,
    OptimizerCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChaosVerdict {
    pub status: ChaosStatus,
    pub method: ChaosMethod,
    /// `|tr U|` for trace-based methods, the optimizer value otherwise.
    pub detail: f64,
    /// The decision was taken on the boundary of a closed region.
    #[serde(skip)]
    pub boundary: bool,
}

impl ChaosVerdict {
    fn new(status: ChaosStatus, method: ChaosMethod, detail: f64) -> Self {
        ChaosVerdict { status, method, detail, boundary: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Slack for trace comparisons and for `T₃` root unimodularity.
    pub trace_tol: f64,
    /// Slack for polyline membership (`d = 5`).
    pub region_tol: f64,
    pub polyline_samples: usize,
    pub maxent: MaxEntOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            trace_tol: 1e-9,
            region_tol: DEFAULT_REGION_TOL,
            polyline_samples: DEFAULT_POLYLINE_SAMPLES,
            maxent: MaxEntOptions::default(),
        }
    }
}

/// Membership of `tau` in `CT₃ = (1/√3)(αT₃ ∪ ᾱT₃)`, `α = e^{iπ/18}`.
pub fn ct3_membership(tau: C64, tol: f64) -> Result<Membership> {
    let s3 = 3f64.sqrt();
    let mut lobes = Vec::with_capacity(2);
    for a in ct_rotations(3)? {
        lobes.push(in_t3(tau * s3 * cis(-a), tol)?);
    }
    Ok(Membership::union(lobes))
}

/// Exact qutrit test against `CT₃` using `β`, a chosen cube root of `det U`.
pub fn exact_d3_with_root(u: &ComplexMatrix, beta: C64, tol: f64) -> Result<Membership> {
    ct3_membership(u.trace() / beta, tol)
}

pub fn classify(u: &ComplexMatrix, opts: &ClassifyOptions) -> Result<ChaosVerdict> {
    require_unitary(u, DEFAULT_UNITARY_TOL)?;
    let d = u.dim();
    if d > 8 {
        return Err(Error::Size(format!("classification supports d ≤ 8, got {d}")));
    }
    let tr = u.trace().norm();
    let sqrt_d = (d as f64).sqrt();
    use ChaosMethod::*;
    use ChaosStatus::*;

    match d {
        2 => {
            let status = if tr <= sqrt_d + opts.trace_tol { Chaotic } else { NotChaotic };
            let mut v = ChaosVerdict::new(status, ExactD2, tr);
            v.boundary = (tr - sqrt_d).abs() <= opts.trace_tol;
            return Ok(v);
        }
        3 => {
            let beta = principal_root(u.det(), 3);
            let m = exact_d3_with_root(u, beta, opts.trace_tol)?;
            let status = if m.contained() { Chaotic } else { NotChaotic };
            let mut v = ChaosVerdict::new(status, ExactD3, tr);
            v.boundary = m == Membership::Boundary;
            return Ok(v);
        }
        _ => {}
    }
    if tr > sqrt_d + opts.trace_tol {
        return Ok(ChaosVerdict::new(NotChaotic, TraceNecessary, tr));
    }
    if d == 5 {
        let tau = u.trace() / principal_root(u.det(), 5);
        let regions = ct_region(5, opts.polyline_samples)?;
        let m = Membership::union(regions.iter().map(|r| in_trace_region(r, tau, opts.region_tol)));
        if !m.contained() {
            return Ok(ChaosVerdict::new(NotChaotic, NecessaryD5, tr));
        }
    }
    let r = pvm_dynamical_entropy(u, &opts.maxent)?;
    let status = if r.certified_chaotic { Chaotic } else { Undetermined };
    Ok(ChaosVerdict::new(status, OptimizerCertificate, r.value))
}

/// How far `basis` is from exhibiting `U` as a rescaled Hadamard matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HadamardDefect {
    /// `max_jl | |⟨e_j|U|e_l⟩| − 1/√d |`.
    pub max_deviation: f64,
    /// `d√d − Σ_jl |⟨e_j|U|e_l⟩|`, nonnegative.
    pub sum_deficit: f64,
}

pub fn hadamard_defect(u: &ComplexMatrix, basis: &ComplexMatrix) -> Result<HadamardDefect> {
    if u.dim() != basis.dim() {
        return Err(Error::dim(format!(
            "dimension mismatch: unitary is {0}x{0}, basis is {1}x{1}",
            u.dim(),
            basis.dim()
        )));
    }
    require_unitary(u, DEFAULT_UNITARY_TOL)?;
    require_unitary(basis, DEFAULT_UNITARY_TOL)?;
    let d = u.dim() as f64;
    let w = &(&basis.adjoint() * u) * basis;
    let target = 1.0 / d.sqrt();
    let max_deviation = w.as_slice().iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max);
    let sum: f64 = w.as_slice().iter().map(|z| z.norm()).sum();
    Ok(HadamardDefect { max_deviation, sum_deficit: d * d.sqrt() - sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ONE;
    use std::f64::consts::PI;

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn qubit_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_rows(vec![
            vec![C64::new(s, 0.0), C64::new(s, 0.0)],
            vec![C64::new(s, 0.0), C64::new(-s, 0.0)],
        ])
        .unwrap();
        let v = classify(&h, &opts()).unwrap();
        assert_eq!((v.status, v.method), (ChaosStatus::Chaotic, ChaosMethod::ExactD2));
        let t = ComplexMatrix::from_diag(&[ONE, cis(PI / 4.0)]);
        let v = classify(&t, &opts()).unwrap();
        assert_eq!(v.status, ChaosStatus::NotChaotic);
        assert!((v.detail - 2.0 * (PI / 8.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn fourier3_is_exactly_chaotic() {
        let v = classify(&ComplexMatrix::fourier_unitary(3), &opts()).unwrap();
        assert_eq!((v.status, v.method), (ChaosStatus::Chaotic, ChaosMethod::ExactD3));
    }

    #[test]
    fn identity3_is_not_chaotic() {
        let v = classify(&ComplexMatrix::identity(3), &opts()).unwrap();
        assert_eq!(v.status, ChaosStatus::NotChaotic);
    }

    #[test]
    fn cube_root_branch_does_not_matter() {
        for seed in 0..50 {
            let u = crate::ensemble::haar_unitary(3, seed);
            let beta = principal_root(u.det(), 3);
            let verdicts: Vec<bool> = (0..3)
                .map(|k| {
                    let b = beta * cis(2.0 * PI * k as f64 / 3.0);
                    exact_d3_with_root(&u, b, 1e-9).unwrap().contained()
                })
                .collect();
            assert!(verdicts.iter().all(|&x| x == verdicts[0]), "seed {seed}");
        }
    }

    #[test]
    fn large_trace_is_not_chaotic() {
        let v = classify(&ComplexMatrix::identity(4), &opts()).unwrap();
        assert_eq!((v.status, v.method), (ChaosStatus::NotChaotic, ChaosMethod::TraceNecessary));
        assert_eq!(v.detail, 4.0);
    }

    #[test]
    fn fourier4_and_5_are_certified() {
        for d in [4, 5] {
            let v = classify(&ComplexMatrix::fourier_unitary(d), &opts()).unwrap();
            assert_eq!((v.status, v.method), (ChaosStatus::Chaotic, ChaosMethod::OptimizerCertificate));
        }
    }

    #[test]
    fn defect_examples() {
        let d = hadamard_defect(&ComplexMatrix::fourier_unitary(2), &ComplexMatrix::identity(2)).unwrap();
        assert!(d.max_deviation < 1e-15 && d.sum_deficit.abs() < 1e-14);
        let d = hadamard_defect(&ComplexMatrix::identity(3), &ComplexMatrix::identity(3)).unwrap();
        // off-diagonal zeros miss 1/√3 by more than the diagonal ones miss it
        assert!((d.max_deviation - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let d = hadamard_defect(&ComplexMatrix::identity(6), &ComplexMatrix::identity(6)).unwrap();
        assert!((d.max_deviation - (1.0 - 1.0 / 6f64.sqrt())).abs() < 1e-15);
        assert!(hadamard_defect(&ComplexMatrix::identity(3), &ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn optimizer_basis_for_pauli_z_is_hadamard() {
        let z = ComplexMatrix::from_diag(&[ONE, -ONE]);
        let r = pvm_dynamical_entropy(&z, &MaxEntOptions::default()).unwrap();
        let d = hadamard_defect(&z, &r.basis).unwrap();
        assert!(d.max_deviation <= 1e-5, "{d:?}");
    }
}
