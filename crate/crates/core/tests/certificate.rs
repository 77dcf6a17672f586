use saw_core::bounds::{auto_bounds, LowerBoundSequence, Provenance};
use saw_core::certificate::{certify_ratio, verify, RatioCertificate, SearchParams, Status};
use saw_core::engine::{build_cycle_family, EngineConfig};
use saw_core::graph::{catalog, GraphHandle};
use saw_core::quotient::{build_quotient, SubgroupAction};

fn run(g: &GraphHandle, rows: &[Vec<i64>], b: &LowerBoundSequence, budget: usize) -> RatioCertificate {
    let q = build_quotient(g, &SubgroupAction::sublattice(rows).unwrap()).unwrap();
    let family = build_cycle_family(&q, &q.classify_type().unwrap(), budget).unwrap();
    certify_ratio(g, &q, &family, b, budget, &EngineConfig::with_workers(2)).unwrap()
}

fn constant(g: &GraphHandle, mu: f64, n: usize) -> LowerBoundSequence {
    LowerBoundSequence::constant(g.id(), mu, n, Provenance::Constant)
}

#[test]
fn z_mod_three() {
    let g = catalog("zd(1)").unwrap();
    let cert = run(&g, &[vec![3]], &constant(&g, 1.0, 20), 20);
    assert_eq!(cert.status, Status::Certified);
    assert_eq!(cert.params, Some(SearchParams { r: 2, s: 4, m: 2 }));
    assert_eq!(cert.epsilon.as_deref(), Some("1/2"));
    let k = cert.constants.as_ref().unwrap();
    // Z = 2ℓ̄ μ^{2ℓ̄} (σ⃗_1 + … + σ⃗_4) with μ bounded by 2^{1/20}
    let mu = 2f64.powf(1.0 / 20.0);
    assert!((k.z - 6.0 * mu.powi(6) * 4.0).abs() < 1e-9);
    assert!(k.r_final < 1.0 && k.r_final >= k.r_value.max(k.s_value));
    assert!(cert.checks.iter().all(|c| c.verdict));
    assert!(verify(&cert).ok);
}

#[test]
fn weaker_bounds_stay_sound() {
    let g = catalog("zd(1)").unwrap();
    let cert = run(&g, &[vec![3]], &constant(&g, 0.9, 20), 20);
    assert_eq!(cert.status, Status::Certified);
    assert_eq!(cert.params, Some(SearchParams { r: 2, s: 10, m: 3 }));
    let short = run(&g, &[vec![3]], &constant(&g, 0.9, 9), 9);
    assert_eq!(short.status, Status::InconclusiveBudget);
    assert!(!verify(&short).ok);
}

#[test]
fn zero_budget_is_inconclusive() {
    let g = catalog("zd(1)").unwrap();
    let cert = run(&g, &[vec![3]], &constant(&g, 1.0, 20), 0);
    assert_eq!(cert.status, Status::InconclusiveBudget);
    assert!(cert.constants.is_none());
}

#[test]
fn z2_torus_with_bridge_bounds() {
    let g = catalog("zd(2)").unwrap();
    let b = auto_bounds(&g, 16, &EngineConfig::with_workers(2)).unwrap();
    assert!(b.entries.iter().all(|e| e.provenance == Provenance::Bridge));
    let cert = run(&g, &[vec![2, 0], vec![0, 2]], &b, 16);
    assert_eq!(cert.status, Status::Certified);
    assert!(verify(&cert).ok);
    let json = serde_json::to_string_pretty(&cert).unwrap();
    let back: RatioCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);

    let mut tampered = cert.clone();
    tampered.inputs.b[14] = 2.5;
    assert!(!verify(&tampered).ok);
}

#[test]
fn ladder_with_exact_mu() {
    let g = catalog("ladder").unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for k in [2, 3] {
        let cert = run(&g, &[vec![k]], &constant(&g, phi, 20), 20);
        assert_eq!(cert.status, Status::Certified, "ladder / {k}");
        assert!(verify(&cert).ok);
    }
}
