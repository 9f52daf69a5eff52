//! Dynamical entropy of finite-dimensional unitaries under repeated rank-1
//! measurements.
//!
//! A unitary `U` interleaved with a normalised rank-1 POVM `Π` produces a
//! stationary Markov chain over the measurement outcomes. The crate computes
//! the entropy rate of that chain, its split into measurement and dynamical
//! parts, the maximum over orthonormal bases (the PVM-dynamical entropy), and
//! decides whether a unitary is *chaotic*, i.e. reaches the maximum `ln d`.
//!
//! Modules, bottom-up:
//!
//! * [`matcore`]: dense complex matrices, Jacobi eigensolver, exponential of
//!   anti-Hermitian matrices, Durand–Kerner root finder.
//! * [`measure`]: POVMs, states, Born probabilities, transition matrices,
//!   SIC-POVMs for `d = 2, 3`.
//! * [`entropy`]: entropy rate, block entropies, trajectory estimator.
//! * [`maxent`]: closed form for qubits and a multistart ascent on `U(d)`.
//! * [`chaos`]: exact chaoticity tests for `d = 2, 3`, trace regions bounded
//!   by hypocycloids, necessary conditions in higher dimension.
//! * [`ensemble`]: Haar sampling, Weyl-formula quadrature, Monte Carlo.
//! * [`gates`]: catalogue of standard quantum gates.
//!
//! Work that fans out over samples or starts goes through [`exec::Backend`];
//! with the default `parallel` feature it runs on rayon, otherwise
//! sequentially. Results do not depend on the backend.

pub mod chaos;
pub mod ensemble;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod gates;
pub mod io;
pub mod matcore;
pub mod maxent;
pub mod measure;
pub mod rng;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, C64};
