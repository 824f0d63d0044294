//! Exhaustive enumeration of small structures, used by the law sweeps, the
//! acceptance suite, and the sweep examples. Everything here is exponential
//! and intended for universes of at most four or five elements.

use itertools::Itertools;

use crate::morphism::{all_tuples, canonical_form, relabel};
use crate::structure::{gaifman_components, PointedStructure, Structure, Vocabulary};

/// Every labeled structure over `vocab` with exactly `n` elements.
pub fn all_structures(vocab: &Vocabulary, n: usize) -> Vec<Structure> {
    let mut per_symbol: Vec<Vec<Vec<usize>>> = Vec::new();
    for sym in 0..vocab.len() {
        per_symbol.push(all_tuples(n, vocab.arity(sym)).collect());
    }
    let mut out = Vec::new();
    let masks: Vec<u64> = per_symbol
        .iter()
        .map(|tuples| {
            assert!(tuples.len() <= 20, "enumeration space too large");
            1u64 << tuples.len()
        })
        .collect();
    let mut choice = vec![0u64; vocab.len()];
    loop {
        let mut s = Structure::new(vocab.clone(), n);
        for (sym, tuples) in per_symbol.iter().enumerate() {
            for (i, t) in tuples.iter().enumerate() {
                if choice[sym] & (1 << i) != 0 {
                    s.insert(sym, t.clone());
                }
            }
        }
        out.push(s);
        // odometer
        let mut sym = 0;
        loop {
            if sym == vocab.len() {
                return out;
            }
            choice[sym] += 1;
            if choice[sym] < masks[sym] {
                break;
            }
            choice[sym] = 0;
            sym += 1;
        }
    }
}

/// Structures with at most `max_n` elements, one per isomorphism class.
pub fn structures_up_to_iso(vocab: &Vocabulary, max_n: usize) -> Vec<Structure> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut seen = std::collections::BTreeSet::new();
        for s in all_structures(vocab, n) {
            if seen.insert(canonical_form(&s)) {
                out.push(s);
            }
        }
    }
    out
}

/// Simple graphs (symmetric, loop-free `E`) with at most `max_n` vertices,
/// one per isomorphism class.
pub fn graphs_up_to_iso(max_n: usize) -> Vec<Structure> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0..(1u64 << edges.len()) {
            let chosen: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let s = Structure::graph(n, &chosen);
            if seen.insert(canonical_form(&s)) {
                out.push(s);
            }
        }
    }
    out
}

/// Connected simple graphs with `1..=max_n` vertices, one per class.
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<Structure> {
    graphs_up_to_iso(max_n)
        .into_iter()
        .filter(|s| s.size() >= 1 && gaifman_components(s).len() == 1)
        .collect()
}

/// Pointed structures with at most `max_n` elements, one per pointed
/// isomorphism class.
pub fn pointed_up_to_iso(vocab: &Vocabulary, max_n: usize) -> Vec<PointedStructure> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen = std::collections::BTreeSet::new();
        for s in all_structures(vocab, n) {
            for point in 0..n {
                let key = (0..n)
                    .permutations(n)
                    .map(|perm| {
                        let r = relabel(&s, &perm);
                        let mut ser = canonical_of_labeled(&r);
                        ser.push(vec![vec![perm[point]]]);
                        ser
                    })
                    .min()
                    .unwrap();
                if seen.insert(key) {
                    out.push(PointedStructure::new(s.clone(), point).unwrap());
                }
            }
        }
    }
    out
}

fn canonical_of_labeled(s: &Structure) -> Vec<Vec<Vec<usize>>> {
    (0..s.vocab().len())
        .map(|sym| {
            let mut ts: Vec<Vec<usize>> = s.tuples(sym).cloned().collect();
            ts.sort();
            ts
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph_class_counts() {
        // Digraphs with loops over {E/2}: 1 empty, 2 on one vertex,
        // 10 on two vertices, 104 on three.
        let classes = structures_up_to_iso(&Vocabulary::graph(), 3);
        let by_size = |n: usize| classes.iter().filter(|s| s.size() == n).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(1), 2);
        assert_eq!(by_size(2), 10);
        assert_eq!(by_size(3), 104);
    }

    #[test]
    fn simple_graph_class_counts() {
        // 1, 1, 2, 4, 11 simple graphs on 0..=4 vertices.
        let classes = graphs_up_to_iso(4);
        let by_size = |n: usize| classes.iter().filter(|s| s.size() == n).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 2);
        assert_eq!(by_size(3), 4);
        assert_eq!(by_size(4), 11);
        // 1, 1, 2, 6, 21 of them connected on 1..=5 would be the next row;
        // check through 4 vertices here.
        let connected = connected_graphs_up_to_iso(4);
        let by_size = |n: usize| connected.iter().filter(|s| s.size() == n).count();
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 1);
        assert_eq!(by_size(3), 2);
        assert_eq!(by_size(4), 6);
    }

    #[test]
    fn pointed_counts_small() {
        // One-vertex digraphs with a point: loop or no loop -> 2 classes.
        let classes = pointed_up_to_iso(&Vocabulary::graph(), 1);
        assert_eq!(classes.len(), 2);
    }
}
