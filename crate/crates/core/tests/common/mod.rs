//! Brute-force enumerators written directly on coordinates, sharing no code
//! with the library.

#![allow(dead_code)]

use std::collections::HashSet;
use std::hash::Hash;

/// `σ_0..=σ_n` by depth-first search with a visited set.
pub fn saw_counts<V, F>(start: V, n: usize, neighbors: F) -> Vec<u64>
where
    V: Copy + Eq + Hash,
    F: Fn(V) -> Vec<V>,
{
    fn go<V: Copy + Eq + Hash, F: Fn(V) -> Vec<V>>(
        v: V,
        depth: usize,
        n: usize,
        seen: &mut HashSet<V>,
        counts: &mut [u64],
        neighbors: &F,
    ) {
        counts[depth] += 1;
        if depth == n {
            return;
        }
        for w in neighbors(v) {
            if seen.insert(w) {
                go(w, depth + 1, n, seen, counts, neighbors);
                seen.remove(&w);
            }
        }
    }
    let mut counts = vec![0; n + 1];
    let mut seen = HashSet::from([start]);
    go(start, 0, n, &mut seen, &mut counts, &neighbors);
    counts
}

pub fn z2(v: (i64, i64)) -> Vec<(i64, i64)> {
    let (x, y) = v;
    vec![(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
}

/// Z² with the diagonal (1, 1) added.
pub fn triangular(v: (i64, i64)) -> Vec<(i64, i64)> {
    let (x, y) = v;
    let mut out = z2(v);
    out.extend([(x + 1, y + 1), (x - 1, y - 1)]);
    out
}

/// Two rails `r ∈ {0, 1}` joined by rungs.
pub fn ladder(v: (i64, u8)) -> Vec<(i64, u8)> {
    let (x, r) = v;
    vec![(x + 1, r), (x - 1, r), (x, 1 - r)]
}

/// 4.8.8 tiling: a 4-cycle `c = 0 (east), 1 (north), 2 (west), 3 (south)` at
/// each point of Z², east corners joined to the west corner of the next
/// square and north corners to the south corner above.
pub fn square_octagon(v: (i64, i64, u8)) -> Vec<(i64, i64, u8)> {
    let (x, y, c) = v;
    let mut out = vec![(x, y, (c + 1) % 4), (x, y, (c + 3) % 4)];
    out.push(match c {
        0 => (x + 1, y, 2),
        1 => (x, y + 1, 3),
        2 => (x - 1, y, 0),
        _ => (x, y - 1, 1),
    });
    out
}

/// Directed SAWs from orbit (0, 0) of Z² modulo `a Z × b Z`; each of the four
/// unit steps is its own edge even when two land in the same orbit.
pub fn torus_directed_counts(a: i64, b: i64, n: usize) -> Vec<u64> {
    fn go(v: (i64, i64), depth: usize, n: usize, a: i64, b: i64, seen: &mut HashSet<(i64, i64)>, counts: &mut [u64]) {
        counts[depth] += 1;
        if depth == n {
            return;
        }
        let (x, y) = v;
        for w in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            let w = (w.0.rem_euclid(a), w.1.rem_euclid(b));
            if seen.insert(w) {
                go(w, depth + 1, n, a, b, seen, counts);
                seen.remove(&w);
            }
        }
    }
    let mut counts = vec![0; n + 1];
    let mut seen = HashSet::from([(0, 0)]);
    go((0, 0), 0, n, a, b, &mut seen, &mut counts);
    counts
}

/// Bridges of Z²: SAWs with `x(w_0) < x(w_i) ≤ x(w_n)` for `i ≥ 1`, found by
/// filtering every SAW.
pub fn z2_bridges(n: usize) -> Vec<u64> {
    fn go(walk: &mut Vec<(i64, i64)>, n: usize, counts: &mut [u64]) {
        let d = walk.len() - 1;
        let end = walk[d].0;
        if walk[1..].iter().all(|p| 0 < p.0 && p.0 <= end) || d == 0 {
            counts[d] += 1;
        }
        if d == n {
            return;
        }
        for w in z2(walk[d]) {
            if !walk.contains(&w) {
                walk.push(w);
                go(walk, n, counts);
                walk.pop();
            }
        }
    }
    let mut counts = vec![0; n + 1];
    go(&mut vec![(0, 0)], n, &mut counts);
    counts
}

pub const Z2: [u64; 13] = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292, 324932];

pub const TRIANGULAR: [u64; 13] = [
    1, 6, 30, 138, 618, 2730, 11946, 51882, 224130, 964134, 4133166, 17668938, 75355206,
];

pub const LADDER: [u64; 25] = [
    1, 3, 6, 12, 20, 36, 58, 100, 160, 268, 430, 708, 1140, 1860, 3002, 4876, 7880, 12772, 20654,
    33444, 54100, 87564, 141666, 229252, 370920,
];

pub const SQUARE_OCTAGON: [u64; 23] = [
    1, 3, 6, 12, 22, 42, 80, 152, 284, 536, 988, 1848, 3412, 6352, 11724, 21718, 39952, 73808,
    135668, 250188, 459172, 844888, 1548608,
];

pub const Z2_BRIDGES: [u64; 15] = [1, 1, 3, 7, 17, 41, 101, 251, 631, 1591, 4029, 10235, 26083, 66653, 170689];

pub const PHI: f64 = 1.618_033_988_749_895;
