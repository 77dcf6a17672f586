mod common;

use common::*;
use num_traits::ToPrimitive;
use saw_core::bounds::bridge_counts;
use saw_core::engine::{count_directed_saws, count_saws, EngineConfig, Strategy};
use saw_core::graph::{catalog, GraphHandle};
use saw_core::quotient::{build_quotient, SubgroupAction};

fn library(g: &GraphHandle, n: usize, workers: usize) -> Vec<u64> {
    let cfg = EngineConfig {
        workers,
        strategy: Strategy::Enumerate,
        ..EngineConfig::default()
    };
    count_saws(g, &g.origin(), n, &cfg)
        .unwrap()
        .counts
        .iter()
        .map(|c| c.to_u64().unwrap())
        .collect()
}

fn triangular_graph() -> GraphHandle {
    let z2 = catalog("zd(2)").unwrap();
    z2.augment((&"0@0,0".parse().unwrap(), &"0@1,1".parse().unwrap())).unwrap()
}

#[test]
fn oracle_tables_match_brute_force() {
    assert_eq!(saw_counts((0, 0), 10, z2), Z2[..=10]);
    assert_eq!(saw_counts((0, 0), 8, triangular), TRIANGULAR[..=8]);
    assert_eq!(saw_counts((0, 0u8), 16, ladder), LADDER[..=16]);
    assert_eq!(saw_counts((0, 0, 0u8), 14, square_octagon), SQUARE_OCTAGON[..=14]);
    assert_eq!(z2_bridges(10), Z2_BRIDGES[..=10]);
}

#[test]
fn z2_counts() {
    let g = catalog("zd(2)").unwrap();
    assert_eq!(library(&g, 12, 4), Z2);
}

#[test]
fn triangular_counts() {
    assert_eq!(library(&triangular_graph(), 10, 4), TRIANGULAR[..=10]);
}

#[test]
fn ladder_counts() {
    assert_eq!(library(&catalog("ladder").unwrap(), 24, 4), LADDER);
}

#[test]
fn square_octagon_counts() {
    assert_eq!(library(&catalog("square-octagon").unwrap(), 22, 4), SQUARE_OCTAGON);
}

#[test]
fn spec_file_z2_from_a_presentation() {
    let text = r#"
kind = "cayley"
generators = ["a", "A", "b", "B"]
inverses = ["A", "a", "B", "b"]
relators = ["a b A B"]
rules = [["b a", "a b"], ["b A", "A b"], ["B a", "a B"], ["B A", "A B"]]
"#;
    let g = saw_core::graph::parse_graph_spec(text).unwrap().build("z2-cayley").unwrap();
    assert_eq!(library(&g, 9, 2), Z2[..=9]);
}

#[test]
fn bridges() {
    let b: Vec<u64> = bridge_counts(2, 14, &EngineConfig::with_workers(4))
        .unwrap()
        .iter()
        .map(|c| c.to_u64().unwrap())
        .collect();
    assert_eq!(b, Z2_BRIDGES);
}

#[test]
fn torus_quotients() {
    let g = catalog("zd(2)").unwrap();
    for (a, b) in [(2, 2), (3, 1), (3, 3), (4, 3), (5, 2)] {
        let action = SubgroupAction::sublattice(&[vec![a, 0], vec![0, b]]).unwrap();
        let q = build_quotient(&g, &action).unwrap();
        let n = (a * b) as usize + 1;
        let got: Vec<u64> = count_directed_saws(&q, n, &EngineConfig::with_workers(3))
            .unwrap()
            .counts
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        assert_eq!(got, torus_directed_counts(a, b, n), "{a}x{b}");
    }
}

#[test]
fn trees() {
    for d in [3u64, 4] {
        let g = catalog(&format!("tree({d})")).unwrap();
        let dp = count_saws(&g, &g.origin(), 30, &EngineConfig::with_workers(1)).unwrap();
        for n in 1..=30u32 {
            assert_eq!(dp.counts[n as usize], (d * (d - 1).pow(n - 1)).into());
        }
        assert_eq!(library(&g, 8, 2)[..], dp.counts[..=8].iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>()[..]);
    }
}
