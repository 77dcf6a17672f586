mod common;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use saw_core::engine::{count_directed_saws, EngineConfig};
use saw_core::graph::{catalog, Step, Walk};
use saw_core::quotient::{build_quotient, SubgroupAction};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn torus_counts_match_oracle(a in 1i64..5, b in 1i64..5, workers in 1usize..4) {
        let g = catalog("zd(2)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![a, 0], vec![0, b]]).unwrap()).unwrap();
        let n = (a * b) as usize;
        let got: Vec<u64> = count_directed_saws(&q, n, &EngineConfig::with_workers(workers))
            .unwrap()
            .counts
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        prop_assert_eq!(got, common::torus_directed_counts(a, b, n));
    }

    #[test]
    fn lift_inverts_project(choices in prop::collection::vec(0usize..4, 0..12), shift in -3i64..3) {
        let g = catalog("zd(2)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![2, 1], vec![0, 3]]).unwrap()).unwrap();
        let start: saw_core::graph::VertexKey = format!("0@{shift},{}", -shift).parse().unwrap();
        let mut walk = Walk::empty(start.clone());
        let mut here = start.clone();
        for c in choices {
            let nbs = g.neighbors(&here).unwrap();
            let to = nbs[c % nbs.len()].target.clone();
            walk.steps.push(Step { to: to.clone(), parallel: 0 });
            here = to;
        }
        let image = q.project(&walk).unwrap();
        prop_assert_eq!(image.len(), walk.len());
        prop_assert_eq!(q.lift(&start, &image).unwrap(), walk);
    }
}
