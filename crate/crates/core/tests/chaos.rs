use qdent::chaos::{classify, ChaosMethod, ChaosStatus, ClassifyOptions};
use qdent::ensemble::haar_unitary;
use qdent::gates::{agrees, classify_catalogue, gate};
use qdent::matcore::cis;
use qdent::ComplexMatrix;

fn phase(u: &ComplexMatrix, phi: f64) -> ComplexMatrix {
    let z = cis(phi);
    ComplexMatrix::from_vec(u.dim(), u.as_slice().iter().map(|x| x * z).collect()).unwrap()
}

#[test]
fn verdict_is_phase_invariant() {
    let opts = ClassifyOptions::default();
    for seed in 0..200 {
        for d in [2, 3] {
            let u = haar_unitary(d, seed);
            let phi = 0.1 + seed as f64 * 0.37;
            let a = classify(&u, &opts).unwrap();
            let b = classify(&phase(&u, phi), &opts).unwrap();
            if !(a.boundary || b.boundary) {
                assert_eq!(a.status, b.status, "d={d} seed={seed}");
            }
        }
    }
}

#[test]
fn catalogue_agrees_with_published_claims() {
    let rows = classify_catalogue(&ClassifyOptions::default()).unwrap();
    assert!(rows.len() >= 16);
    for (g, v) in &rows {
        assert!(agrees(g.claim, v), "{} -> {:?}", g.name, v);
    }
}

#[test]
fn deutsch_and_toffoli_fail_the_trace_condition() {
    let opts = ClassifyOptions::default();
    let v = classify(&gate("TOFFOLI", &[]).unwrap().matrix, &opts).unwrap();
    assert_eq!((v.status, v.method), (ChaosStatus::NotChaotic, ChaosMethod::TraceNecessary));
    let v = classify(&gate("DEUTSCH", &[0.3]).unwrap().matrix, &opts).unwrap();
    assert_eq!(v.status, ChaosStatus::NotChaotic);
}
