use std::collections::BTreeSet;

use ratio_lab::constructions::star_family;
use ratio_lab::numeric::binomial_u128;
use ratio_lab::projective::build_plane;
use ratio_lab::search::enumerate_maximal_families;
use ratio_lab::{Family, VertexSet};

/// Heap's algorithm over [1..=n].
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) { a.swap(i, k - 1) } else { a.swap(0, k - 1) }
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

#[test]
fn every_labeled_fano_plane_is_found() {
    let lines = build_plane(2, 1).unwrap().lines().to_vec();
    let relabeled: BTreeSet<Vec<VertexSet>> = permutations(7)
        .into_iter()
        .map(|perm| {
            let sets = lines.iter().map(|l| l.iter().map(|v| perm[v - 1]).collect::<VertexSet>());
            Family::from_sets(7, 3, sets).unwrap().sets().to_vec()
        })
        .collect();
    assert_eq!(relabeled.len(), 30);

    let found: BTreeSet<Vec<VertexSet>> = enumerate_maximal_families(7, 3, true)
        .unwrap()
        .into_iter()
        .filter(|f| f.len() == 7 && !is_star(f))
        .map(|f| f.sets().to_vec())
        .collect();
    assert_eq!(found, relabeled);
}

fn is_star(f: &Family) -> bool {
    f.sets().iter().fold(VertexSet::universe(f.n()), |a, &s| a.intersection(s)) != VertexSet::EMPTY
}

#[test]
fn stars_are_maximal_and_largest() {
    for (n, r) in [(5, 2), (6, 2), (7, 2), (6, 3), (7, 3)] {
        let all = enumerate_maximal_families(n, r, false).unwrap();
        for v in 1..=n {
            let star: Family = Family::from_sets(
                n,
                r,
                star_family(n, r).unwrap().sets().iter().map(|s| {
                    s.iter().map(|x| if x == 1 { v } else if x == v { 1 } else { x }).collect::<VertexSet>()
                }),
            )
            .unwrap();
            assert!(all.contains(&star), "star at {v} missing for ({n}, {r})");
        }
        let bound = binomial_u128(n - 1, r - 1) as usize;
        assert!(all.iter().all(|f| f.len() <= bound || 2 * r > n));
        assert!(all.iter().all(|f| f.is_intersecting() && f.is_maximal_intersecting().unwrap()));
    }
}
