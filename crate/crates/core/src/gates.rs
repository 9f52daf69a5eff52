//! Standard quantum gates and the chaoticity each is known to have.
//!
//! Multi-qubit gates act on the computational basis ordered `|q₁q₂…⟩` with
//! the first qubit most significant; controls come first.

use std::f64::consts::PI;

use serde::Serialize;

use crate::chaos::{classify, ChaosVerdict, ClassifyOptions};
use crate::error::{Error, Result};
use crate::matcore::{is_unitary, require_unitary, ComplexMatrix, C64, DEFAULT_UNITARY_TOL, I, ONE, ZERO};

/// Chaoticity asserted for a gate in the literature, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    Chaotic,
    NotChaotic,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateEntry {
    pub name: String,
    pub dim: usize,
    pub matrix: ComplexMatrix,
    pub claim: Claim,
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rows(r: Vec<Vec<C64>>) -> ComplexMatrix {
    ComplexMatrix::from_rows(r).expect("gate rows are square")
}

/// Permutation matrix sending basis state `j` to `perm[j]`.
fn permutation(perm: &[usize]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(perm.len());
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = ONE;
    }
    m
}

/// Identity on the first `dim − 2` basis states, `block` on the last two.
fn controlled_block(dim: usize, block: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(dim);
    for i in 0..2 {
        for j in 0..2 {
            m[(dim - 2 + i, dim - 2 + j)] = block[(i, j)];
        }
    }
    m
}

fn sqrt_not_block() -> ComplexMatrix {
    rows(vec![vec![c(0.5, 0.5), c(0.5, -0.5)], vec![c(0.5, -0.5), c(0.5, 0.5)]])
}

/// The 4×4 gate applying `u2` to the target when the control is `|1⟩`.
pub fn controlled_u(u2: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u2.dim() != 2 {
        return Err(Error::dim(format!("controlled-U needs a 2x2 unitary, got {0}x{0}", u2.dim())));
    }
    require_unitary(u2, DEFAULT_UNITARY_TOL)?;
    Ok(controlled_block(4, u2))
}

fn param(params: &[f64], n: usize, name: &str) -> Result<()> {
    if params.len() != n {
        return Err(Error::domain(format!("{name} takes {n} parameter(s), got {}", params.len())));
    }
    if params.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain(format!("{name} parameters must be finite")));
    }
    Ok(())
}

/// Builds a named gate. `DEUTSCH` takes `[θ]`, `FOURIER` takes `[d]`,
/// `CONTROLLED_U` takes the 2×2 matrix as eight reals `re, im` row by row;
/// every other gate takes none.
pub fn gate(name: &str, params: &[f64]) -> Result<GateEntry> {
    use Claim::*;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let upper = name.to_ascii_uppercase();
    let fixed = |n: usize| param(params, n, &upper);
    let (matrix, claim) = match upper.as_str() {
        "H" => {
            fixed(0)?;
            (rows(vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]), Chaotic)
        }
        "X" => (fixed(0).map(|_| permutation(&[1, 0]))?, Chaotic),
        "Y" => {
            fixed(0)?;
            (rows(vec![vec![ZERO, -I], vec![I, ZERO]]), Chaotic)
        }
        "Z" => (fixed(0).map(|_| ComplexMatrix::from_diag(&[ONE, -ONE]))?, Chaotic),
        "S" => (fixed(0).map(|_| ComplexMatrix::from_diag(&[ONE, I]))?, Chaotic),
        "T" => (fixed(0).map(|_| ComplexMatrix::from_diag(&[ONE, c(s, s)]))?, NotChaotic),
        "SQRT_NOT" => (fixed(0).map(|_| sqrt_not_block())?, Chaotic),
        "CNOT" => (fixed(0).map(|_| permutation(&[0, 1, 3, 2]))?, Chaotic),
        "CSIGN" => (fixed(0).map(|_| ComplexMatrix::from_diag(&[ONE, ONE, ONE, -ONE]))?, Chaotic),
        "SWAP" => (fixed(0).map(|_| permutation(&[0, 2, 1, 3]))?, Chaotic),
        "ISWAP" => {
            fixed(0)?;
            let mut m = ComplexMatrix::zeros(4);
            m[(0, 0)] = ONE;
            m[(1, 2)] = I;
            m[(2, 1)] = I;
            m[(3, 3)] = ONE;
            (m, Chaotic)
        }
        "SQRT_CNOT" => (fixed(0).map(|_| controlled_block(4, &sqrt_not_block()))?, NotChaotic),
        "SQRT_SWAP" => {
            fixed(0)?;
            let mut m = ComplexMatrix::identity(4);
            m[(1, 1)] = c(0.5, 0.5);
            m[(1, 2)] = c(0.5, -0.5);
            m[(2, 1)] = c(0.5, -0.5);
            m[(2, 2)] = c(0.5, 0.5);
            (m, NotChaotic)
        }
        "TOFFOLI" => (fixed(0).map(|_| permutation(&[0, 1, 2, 3, 4, 5, 7, 6]))?, NotChaotic),
        "FREDKIN" => (fixed(0).map(|_| permutation(&[0, 1, 2, 3, 4, 6, 5, 7]))?, NotChaotic),
        "DEUTSCH" => {
            fixed(1)?;
            let (sn, cs) = params[0].sin_cos();
            let block = rows(vec![vec![I * cs, c(sn, 0.0)], vec![c(sn, 0.0), I * cs]]);
            (controlled_block(8, &block), NotChaotic)
        }
        "CONTROLLED_U" => {
            fixed(8)?;
            let entries: Vec<C64> = params.chunks(2).map(|p| c(p[0], p[1])).collect();
            let u2 = rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]);
            (controlled_u(&u2)?, None)
        }
        "FOURIER" => {
            fixed(1)?;
            let d = params[0];
            if d.fract() != 0.0 || !(1.0..=16.0).contains(&d) {
                return Err(Error::domain(format!("FOURIER dimension must be an integer in 1..=16, got {d}")));
            }
            (ComplexMatrix::fourier_unitary(d as usize), Chaotic)
        }
        _ => return Err(Error::domain(format!("unknown gate '{name}'"))),
    };
    debug_assert!(is_unitary(&matrix, 1e-12).passed, "{upper}");
    Ok(GateEntry { name: upper, dim: matrix.dim(), matrix, claim: claim })
}

/// Parses `NAME` or `NAME:p1,p2,...` and builds the gate.
pub fn gate_from_spec(spec: &str) -> Result<GateEntry> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad gate parameter '{p}'"))))
        .collect::<Result<Vec<_>>>()?;
    gate(name.trim(), &params)
}

/// Every named gate that carries a claim, with Deutsch at `θ = π/4` and
/// Fourier in `d = 3, 4, 5`.
pub fn catalogue() -> Vec<GateEntry> {
    let plain = [
        "H", "X", "Y", "Z", "S", "T", "SQRT_NOT", "CNOT", "CSIGN", "SWAP", "ISWAP", "SQRT_CNOT",
        "SQRT_SWAP", "TOFFOLI", "FREDKIN",
    ];
    let mut out: Vec<GateEntry> = plain.iter().map(|n| gate(n, &[]).expect("catalogue gate")).collect();
    out.push(gate("DEUTSCH", &[PI / 4.0]).expect("catalogue gate"));
    for d in [3.0, 4.0, 5.0] {
        out.push(gate("FOURIER", &[d]).expect("catalogue gate"));
    }
    out
}

pub fn classify_catalogue(opts: &ClassifyOptions) -> Result<Vec<(GateEntry, ChaosVerdict)>> {
    catalogue()
        .into_iter()
        .map(|g| {
            let v = classify(&g.matrix, opts)?;
            Ok((g, v))
        })
        .collect()
}

/// Whether the claimed and computed verdicts agree; `true` when no claim.
pub fn agrees(claim: Claim, verdict: &ChaosVerdict) -> bool {
    use crate::chaos::ChaosStatus;
    match claim {
        Claim::None => true,
        Claim::Chaotic => verdict.status == ChaosStatus::Chaotic,
        Claim::NotChaotic => verdict.status == ChaosStatus::NotChaotic,
    }
}

/// The published rule for controlled-U gates: chaotic iff `u2` is NOT up
/// to conjugation and phase, i.e. its eigenphases are antipodal.
pub fn controlled_u_rule(u2: &ComplexMatrix) -> Result<Claim> {
    let spec = crate::maxent::dim2_spectrum(u2)?;
    Ok(if (spec.theta - PI).abs() <= 1e-9 { Claim::Chaotic } else { Claim::NotChaotic })
}

/// Classification of the 4×4 controlled-`u2` gate.
pub fn controlled_u_chaotic_test(u2: &ComplexMatrix, opts: &ClassifyOptions) -> Result<ChaosVerdict> {
    classify(&controlled_u(u2)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::ChaosStatus;
    use crate::matcore::cis;

    #[test]
    fn all_gates_are_unitary() {
        for g in catalogue() {
            assert!(is_unitary(&g.matrix, 1e-12).passed, "{}", g.name);
        }
        assert!(is_unitary(&gate("DEUTSCH", &[0.37]).unwrap().matrix, 1e-12).passed);
    }

    #[test]
    fn examples() {
        let z = gate("Z", &[]).unwrap();
        assert_eq!(z.matrix, ComplexMatrix::from_diag(&[ONE, -ONE]));
        assert_eq!(z.claim, Claim::Chaotic);
        assert_eq!(gate("SQRT_SWAP", &[]).unwrap().claim, Claim::NotChaotic);
        let f = gate("FOURIER", &[3.0]).unwrap();
        assert_eq!(f.matrix, ComplexMatrix::fourier_unitary(3));
        assert_eq!(f.claim, Claim::Chaotic);
    }

    #[test]
    fn sqrt_gates_square_to_parents() {
        let sq = gate("SQRT_NOT", &[]).unwrap().matrix;
        assert!((&sq * &sq).max_abs_diff(&gate("X", &[]).unwrap().matrix) < 1e-15);
        let sq = gate("SQRT_SWAP", &[]).unwrap().matrix;
        assert!((&sq * &sq).max_abs_diff(&gate("SWAP", &[]).unwrap().matrix) < 1e-15);
        let sq = gate("SQRT_CNOT", &[]).unwrap().matrix;
        assert!((&sq * &sq).max_abs_diff(&gate("CNOT", &[]).unwrap().matrix) < 1e-15);
    }

    #[test]
    fn bad_input() {
        assert!(gate("NOPE", &[]).is_err());
        assert!(gate("DEUTSCH", &[]).is_err());
        assert!(gate("H", &[1.0]).is_err());
        assert!(gate("FOURIER", &[2.5]).is_err());
        assert!(gate("CONTROLLED_U", &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0]).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(gate_from_spec("fourier:4").unwrap().dim, 4);
        assert_eq!(gate_from_spec("DEUTSCH: 0.5").unwrap().dim, 8);
        assert!(gate_from_spec("DEUTSCH:x").is_err());
    }

    #[test]
    fn controlled_not_and_t() {
        let x = gate("X", &[]).unwrap().matrix;
        let opts = ClassifyOptions::default();
        assert_eq!(controlled_u(&x).unwrap(), gate("CNOT", &[]).unwrap().matrix);
        assert_eq!(controlled_u_chaotic_test(&x, &opts).unwrap().status, ChaosStatus::Chaotic);
        let t = gate("T", &[]).unwrap().matrix;
        let v = controlled_u_chaotic_test(&t, &opts).unwrap();
        assert_eq!(v.status, ChaosStatus::NotChaotic);
        assert!((v.detail - (C64::new(3.0, 0.0) + cis(PI / 4.0)).norm()).abs() < 1e-12);
        assert_eq!(controlled_u_rule(&x).unwrap(), Claim::Chaotic);
        assert_eq!(controlled_u_rule(&t).unwrap(), Claim::NotChaotic);
    }
}
