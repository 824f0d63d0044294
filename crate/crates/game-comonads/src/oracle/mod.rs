//! Independent classical deciders, used to verify the comonadic machinery.
//!
//! Nothing here touches the comonad, game, or equivalence modules: positions
//! are encoded differently, fixpoints are computed with different loops, and
//! relation data is read directly off the structures. The acceptance suite
//! is only meaningful because the two sides can disagree.

mod formula;

pub use formula::{enum_formulas_check, eval_sentence, Formula, Fragment, SeparatorSearch};

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::{gaifman_graph, PointedStructure, Structure};

/// Winning-condition styles for the classical relations: preserve relations
/// forward only, preserve and reflect with moves on the left, or preserve
/// and reflect with moves on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFlavor {
    ForthPositive,
    Forth,
    BackForth,
}

/// Dense arity-indexed relation lookup for one structure.
struct DenseRels {
    n: usize,
    /// Per symbol: arity and a flat truth table over `n^arity` entries.
    tables: Vec<(usize, Vec<bool>)>,
}

impl DenseRels {
    fn new(s: &Structure) -> DenseRels {
        let n = s.size();
        let tables = (0..s.vocab().len())
            .map(|sym| {
                let arity = s.vocab().arity(sym);
                let mut table = vec![false; n.pow(arity as u32)];
                for t in s.tuples(sym) {
                    if t.len() == arity && t.iter().all(|&e| e < n) {
                        let mut idx = 0;
                        for &e in t {
                            idx = idx * n + e;
                        }
                        table[idx] = true;
                    }
                }
                (arity, table)
            })
            .collect();
        DenseRels { n, tables }
    }

    fn holds(&self, sym: usize, tuple: &[usize]) -> bool {
        let (arity, table) = &self.tables[sym];
        debug_assert_eq!(tuple.len(), *arity);
        let mut idx = 0;
        for &e in tuple {
            idx = idx * self.n + e;
        }
        table[idx]
    }
}

/// The index-wise condition on a pair of assignments: every relation tuple
/// over assignment positions transfers, and (with equality) the assignments
/// identify the same positions.
fn assignment_condition(
    a: &Structure,
    ra: &DenseRels,
    rb: &DenseRels,
    xs: &[usize],
    ys: &[usize],
    preserve_only: bool,
    with_equality: bool,
) -> bool {
    let j = xs.len();
    if with_equality {
        for p in 0..j {
            for q in 0..j {
                let (ea, eb) = (xs[p] == xs[q], ys[p] == ys[q]);
                if if preserve_only { ea && !eb } else { ea != eb } {
                    return false;
                }
            }
        }
    }
    for sym in 0..a.vocab().len() {
        let arity = a.vocab().arity(sym);
        if j == 0 {
            continue;
        }
        let mut tuple_a = vec![0usize; arity];
        let mut tuple_b = vec![0usize; arity];
        for positions in (0..arity).map(|_| 0..j).multi_cartesian_product() {
            for (slot, &pos) in positions.iter().enumerate() {
                tuple_a[slot] = xs[pos];
                tuple_b[slot] = ys[pos];
            }
            let (ha, hb) = (ra.holds(sym, &tuple_a), rb.holds(sym, &tuple_b));
            if if preserve_only { ha && !hb } else { ha != hb } {
                return false;
            }
        }
    }
    true
}

/// The classical rank-`k` back-and-forth recursion on assignments, deciding
/// equivalence (or the preorder, for `ForthPositive`) in the quantifier-rank
/// fragment with or without equality.
pub fn classical_rank_relation(
    a: &Structure,
    b: &Structure,
    k: usize,
    flavor: OracleFlavor,
    with_equality: bool,
) -> bool {
    let ra = DenseRels::new(a);
    let rb = DenseRels::new(b);
    let preserve_only = flavor == OracleFlavor::ForthPositive;
    let mut memo: HashMap<(Vec<usize>, Vec<usize>), bool> = HashMap::new();

    fn recurse(
        a: &Structure,
        b: &Structure,
        ra: &DenseRels,
        rb: &DenseRels,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        remaining: usize,
        flavor: OracleFlavor,
        preserve_only: bool,
        with_equality: bool,
        memo: &mut HashMap<(Vec<usize>, Vec<usize>), bool>,
    ) -> bool {
        if !assignment_condition(a, ra, rb, xs, ys, preserve_only, with_equality) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        if let Some(&v) = memo.get(&(xs.clone(), ys.clone())) {
            return v;
        }
        let mut ok = true;
        // forth: every element of A has a response in B
        'forth: for x in 0..a.size() {
            for y in 0..b.size() {
                xs.push(x);
                ys.push(y);
                let win = recurse(a, b, ra, rb, xs, ys, remaining - 1, flavor, preserve_only, with_equality, memo);
                xs.pop();
                ys.pop();
                if win {
                    continue 'forth;
                }
            }
            ok = false;
            break;
        }
        if ok && flavor == OracleFlavor::BackForth {
            'back: for y in 0..b.size() {
                for x in 0..a.size() {
                    xs.push(x);
                    ys.push(y);
                    let win = recurse(a, b, ra, rb, xs, ys, remaining - 1, flavor, preserve_only, with_equality, memo);
                    xs.pop();
                    ys.pop();
                    if win {
                        continue 'back;
                    }
                }
                ok = false;
                break;
            }
        }
        memo.insert((xs.clone(), ys.clone()), ok);
        ok
    }

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    recurse(a, b, &ra, &rb, &mut xs, &mut ys, k, flavor, preserve_only, with_equality, &mut memo)
}

/// The classical `k`-pebble game on partial placements, solved as a greatest
/// fixpoint by repeated sweeps until stable. Placement pairs are encoded in
/// mixed radix: each pebble slot is either unplaced or a pair of elements.
pub fn classical_pebble_relation(a: &Structure, b: &Structure, k: usize, flavor: OracleFlavor) -> bool {
    let ra = DenseRels::new(a);
    let rb = DenseRels::new(b);
    let preserve_only = flavor == OracleFlavor::ForthPositive;
    let (na, nb) = (a.size(), b.size());
    let radix = 1 + na * nb;
    let total = radix.pow(k as u32);

    let decode = |mut code: usize| -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut f = vec![None; k];
        let mut g = vec![None; k];
        for slot in 0..k {
            let v = code % radix;
            code /= radix;
            if v > 0 {
                f[slot] = Some((v - 1) / nb);
                g[slot] = Some((v - 1) % nb);
            }
        }
        (f, g)
    };
    let place = |code: usize, slot: usize, x: usize, y: usize| -> usize {
        let digit = radix.pow(slot as u32);
        let old = (code / digit) % radix;
        code - old * digit + (1 + x * nb + y) * digit
    };

    let condition = |code: usize| -> bool {
        let (f, g) = decode(code);
        let xs: Vec<usize> = f.iter().flatten().copied().collect();
        let ys: Vec<usize> = g.iter().flatten().copied().collect();
        if xs.len() != ys.len() {
            return false;
        }
        // Placements over an expanded vocabulary carry I explicitly, so no
        // separate equality switch is needed here.
        assignment_condition(a, &ra, &rb, &xs, &ys, preserve_only, false)
    };

    let mut winning: Vec<bool> = (0..total).map(condition).collect();
    // A Spoiler move relocates one pebble slot on one side; Duplicator moves
    // the same slot on the other side.
    loop {
        let mut changed = false;
        for code in 0..total {
            if !winning[code] {
                continue;
            }
            let mut survives = true;
            'moves: for slot in 0..k {
                for x in 0..na {
                    if !(0..nb).any(|y| winning[place(code, slot, x, y)]) {
                        survives = false;
                        break 'moves;
                    }
                }
                if flavor == OracleFlavor::BackForth {
                    for y in 0..nb {
                        if !(0..na).any(|x| winning[place(code, slot, x, y)]) {
                            survives = false;
                            break 'moves;
                        }
                    }
                }
            }
            if !survives {
                winning[code] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    winning[0]
}

/// Step-bounded bisimulation from the two points, by backward induction:
/// level 1 compares unary labels, each further level matches transitions on
/// both sides. `k` counts the states along a trace, so level `k` allows
/// `k - 1` transition steps.
pub fn classical_modal_bisim(p: &PointedStructure, q: &PointedStructure, k: usize) -> Result<bool> {
    let (a, b) = (&p.base, &q.base);
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    if a.vocab().max_arity() > 2 {
        return Err(Error::InvalidInput("modal bisimulation needs arity <= 2".to_string()));
    }
    let unaries = a.vocab().unary_symbols();
    let binaries = a.vocab().binary_symbols();
    let labels_match = |x: usize, y: usize| {
        unaries
            .iter()
            .all(|&sym| a.holds(sym, &[x]) == b.holds(sym, &[y]))
    };
    let mut level: Vec<Vec<bool>> = (0..a.size())
        .map(|x| (0..b.size()).map(|y| labels_match(x, y)).collect())
        .collect();
    for _ in 1..k {
        let next: Vec<Vec<bool>> = (0..a.size())
            .map(|x| {
                (0..b.size())
                    .map(|y| {
                        if !labels_match(x, y) {
                            return false;
                        }
                        binaries.iter().all(|&sym| {
                            let forth = (0..a.size()).all(|x2| {
                                !a.holds(sym, &[x, x2])
                                    || (0..b.size()).any(|y2| b.holds(sym, &[y, y2]) && level[x2][y2])
                            });
                            let back = (0..b.size()).all(|y2| {
                                !b.holds(sym, &[y, y2])
                                    || (0..a.size()).any(|x2| a.holds(sym, &[x, x2]) && level[x2][y2])
                            });
                            forth && back
                        })
                    })
                    .collect()
            })
            .collect();
        level = next;
    }
    Ok(level[p.point][q.point])
}

/// The `k`-round bijection game: each round Duplicator proposes a bijection,
/// Spoiler pins one element, and the pinned correspondence must stay a
/// partial isomorphism including equality.
pub fn bijection_game_equiv(a: &Structure, b: &Structure, k: usize) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let ra = DenseRels::new(a);
    let rb = DenseRels::new(b);
    let n = a.size();
    let bijections: Vec<Vec<usize>> = (0..n).permutations(n).collect();

    fn recurse(
        a: &Structure,
        ra: &DenseRels,
        rb: &DenseRels,
        bijections: &[Vec<usize>],
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        remaining: usize,
    ) -> bool {
        if !assignment_condition(a, ra, rb, xs, ys, false, true) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        // some bijection works for every pin
        'bijections: for f in bijections {
            for x in 0..f.len() {
                xs.push(x);
                ys.push(f[x]);
                let win = recurse(a, ra, rb, bijections, xs, ys, remaining - 1);
                xs.pop();
                ys.pop();
                if !win {
                    continue 'bijections;
                }
            }
            return true;
        }
        false
    }

    if n == 0 {
        return true;
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    recurse(a, &ra, &rb, &bijections, &mut xs, &mut ys, k)
}

fn component_masks(adj: &[std::collections::BTreeSet<usize>], mask: u64, n: usize) -> Vec<u64> {
    let mut seen = 0u64;
    let mut comps = Vec::new();
    for start in 0..n {
        let bit = 1u64 << start;
        if mask & bit == 0 || seen & bit != 0 {
            continue;
        }
        let mut comp = 0u64;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let vb = 1u64 << v;
            if comp & vb != 0 {
                continue;
            }
            comp |= vb;
            for &w in &adj[v] {
                if mask & (1u64 << w) != 0 && comp & (1u64 << w) == 0 {
                    stack.push(w);
                }
            }
        }
        seen |= comp;
        comps.push(comp);
    }
    comps
}

/// Tree-depth of the Gaifman graph by the recursive definition: empty 0,
/// singleton 1, connected `1 + min` over vertex deletions, disconnected
/// `max` over components.
pub fn tree_depth(a: &Structure) -> usize {
    let n = a.size();
    if n == 0 {
        return 0;
    }
    assert!(n <= 63, "tree-depth oracle is for small structures");
    let adj = gaifman_graph(a);
    let mut memo: HashMap<u64, usize> = HashMap::new();

    fn td_connected(
        adj: &[std::collections::BTreeSet<usize>],
        mask: u64,
        n: usize,
        memo: &mut HashMap<u64, usize>,
    ) -> usize {
        if mask.count_ones() == 1 {
            return 1;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let mut best = usize::MAX;
        for v in 0..n {
            if mask & (1u64 << v) == 0 {
                continue;
            }
            let rest = mask & !(1u64 << v);
            let worst = component_masks(adj, rest, n)
                .into_iter()
                .map(|c| td_connected(adj, c, n, memo))
                .max()
                .unwrap_or(0);
            best = best.min(1 + worst);
        }
        memo.insert(mask, best);
        best
    }

    let full = (1u64 << n) - 1;
    component_masks(&adj, full, n)
        .into_iter()
        .map(|c| td_connected(&adj, c, n, &mut memo))
        .max()
        .unwrap_or(0)
}

/// Tree-width by exhaustive elimination orderings on the Gaifman graph: the
/// width of an ordering is the largest number of later neighbors at the
/// moment each vertex is eliminated (with fill-in edges added), and the
/// tree-width is the minimum width. Empty graph: -1 by convention.
pub fn tree_width(a: &Structure) -> i64 {
    let n = a.size();
    if n == 0 {
        return -1;
    }
    assert!(n <= 10, "tree-width oracle is for small structures");
    let adj = gaifman_graph(a);
    let mut best = i64::MAX;
    for order in (0..n).permutations(n) {
        let mut matrix = vec![vec![false; n]; n];
        for v in 0..n {
            for &w in &adj[v] {
                matrix[v][w] = true;
            }
        }
        let mut eliminated = vec![false; n];
        let mut width = 0i64;
        for &v in &order {
            let nbrs: Vec<usize> =
                (0..n).filter(|&w| !eliminated[w] && w != v && matrix[v][w]).collect();
            width = width.max(nbrs.len() as i64);
            for (i, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[i + 1..] {
                    matrix[x][y] = true;
                    matrix[y][x] = true;
                }
            }
            eliminated[v] = true;
            if width >= best {
                break;
            }
        }
        best = best.min(width);
    }
    best
}

/// The modal unfolding depth read directly off the transition graph: the
/// height of the transition tree rooted at the point, or `None` when the
/// transitions do not form such a tree (cycle, reconvergence, multiple
/// labels, an edge into the point, or an unreachable state).
pub fn modal_depth_oracle(p: &PointedStructure) -> Option<usize> {
    let a = &p.base;
    if a.vocab().max_arity() > 2 {
        return None;
    }
    let binaries = a.vocab().binary_symbols();
    let n = a.size();
    let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edge_count = 0usize;
    for &sym in &binaries {
        for t in a.tuples(sym) {
            in_edges[t[1]].push(t[0]);
            out_edges[t[0]].push(t[1]);
            edge_count += 1;
        }
    }
    if !in_edges[p.point].is_empty() {
        return None;
    }
    if (0..n).any(|v| v != p.point && in_edges[v].len() != 1) {
        return None;
    }
    if edge_count != n.saturating_sub(1) {
        return None; // a tree on n nodes has exactly n-1 edges
    }
    // BFS from the point: every node must be reached exactly once.
    let mut depth = vec![usize::MAX; n];
    depth[p.point] = 1;
    let mut queue = std::collections::VecDeque::from([p.point]);
    let mut reached = 0;
    while let Some(v) = queue.pop_front() {
        reached += 1;
        for &w in &out_edges[v] {
            if depth[w] != usize::MAX {
                return None;
            }
            depth[w] = depth[v] + 1;
            queue.push_back(w);
        }
    }
    (reached == n).then(|| depth.into_iter().max().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{expand_identity, Vocabulary};

    #[test]
    fn rank_relation_reflexive() {
        let k3 = Structure::clique(3);
        for flavor in [OracleFlavor::ForthPositive, OracleFlavor::Forth, OracleFlavor::BackForth] {
            assert!(classical_rank_relation(&k3, &k3, 3, flavor, true));
        }
    }

    #[test]
    fn k2_k3_rank_one_no_equality() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        assert!(classical_rank_relation(&k2, &k3, 1, OracleFlavor::BackForth, false));
    }

    #[test]
    fn k2_k3_rank_three_with_equality_separated() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        assert!(!classical_rank_relation(&k2, &k3, 3, OracleFlavor::BackForth, true));
        assert!(classical_rank_relation(&k2, &k3, 2, OracleFlavor::BackForth, true));
    }

    #[test]
    fn equality_via_expansion_matches_flag() {
        // with_equality over sigma equals the plain relation over sigma^I.
        let pool = [
            Structure::clique(2),
            Structure::clique(3),
            Structure::path(3),
            Structure::new(Vocabulary::graph(), 2),
        ];
        for a in &pool {
            for b in &pool {
                for k in 1..=3 {
                    for flavor in [OracleFlavor::ForthPositive, OracleFlavor::BackForth] {
                        let flagged = classical_rank_relation(a, b, k, flavor, true);
                        let expanded = classical_rank_relation(
                            &expand_identity(a).unwrap(),
                            &expand_identity(b).unwrap(),
                            k,
                            flavor,
                            false,
                        );
                        assert_eq!(flagged, expanded, "k={k} flavor={flavor:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pebble_relation_basics() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        assert!(classical_pebble_relation(&k3, &k3, 2, OracleFlavor::BackForth));
        // 2 pebbles cannot tell K2 from K3 without equality.
        assert!(classical_pebble_relation(&k2, &k3, 2, OracleFlavor::BackForth));
        // Hom-preorder direction: K3 -> K2 fails even positively at 3 pebbles
        // (a triangle needs 3 colors), but 2 pebbles cannot see it.
        assert!(classical_pebble_relation(&k3, &k2, 2, OracleFlavor::ForthPositive));
        assert!(!classical_pebble_relation(&k3, &k2, 3, OracleFlavor::ForthPositive));
    }

    #[test]
    fn pebble_cycles_with_equality() {
        // Without equality two pebbles cannot tell C3 from C4; with equality
        // Spoiler pins two distinct non-adjacent C4 vertices, impossible in C3.
        let (c3, c4) = (Structure::cycle(3), Structure::cycle(4));
        assert!(classical_pebble_relation(&c3, &c4, 2, OracleFlavor::BackForth));
        let c3i = expand_identity(&c3).unwrap();
        let c4i = expand_identity(&c4).unwrap();
        assert!(!classical_pebble_relation(&c3i, &c4i, 2, OracleFlavor::BackForth));
        assert!(!classical_pebble_relation(&c3i, &c4i, 3, OracleFlavor::BackForth));
    }

    #[test]
    fn modal_bisim_depth_counting() {
        let loop1 = PointedStructure::new(Structure::from_edges(1, &[(0, 0)]), 0).unwrap();
        let chain2 = PointedStructure::new(Structure::from_edges(2, &[(0, 1)]), 0).unwrap();
        // One- and two-state traces agree; three-state traces differ.
        assert!(classical_modal_bisim(&loop1, &chain2, 1).unwrap());
        assert!(classical_modal_bisim(&loop1, &chain2, 2).unwrap());
        assert!(!classical_modal_bisim(&loop1, &chain2, 3).unwrap());
        assert!(classical_modal_bisim(&loop1, &loop1, 4).unwrap());
    }

    #[test]
    fn bijection_game_basics() {
        let k2 = Structure::clique(2);
        let two = Structure::new(Vocabulary::graph(), 2);
        assert!(bijection_game_equiv(&k2, &k2, 3));
        // One pinned pair sees only loops; two pins expose the edge.
        assert!(bijection_game_equiv(&k2, &two, 1));
        assert!(!bijection_game_equiv(&k2, &two, 2));
        assert!(!bijection_game_equiv(&k2, &Structure::clique(3), 1), "size mismatch");
    }

    #[test]
    fn tree_depth_values() {
        assert_eq!(tree_depth(&Structure::new(Vocabulary::graph(), 0)), 0);
        assert_eq!(tree_depth(&Structure::new(Vocabulary::graph(), 1)), 1);
        assert_eq!(tree_depth(&Structure::clique(2)), 2);
        assert_eq!(tree_depth(&Structure::clique(3)), 3);
        assert_eq!(tree_depth(&Structure::path(4)), 3);
        assert_eq!(tree_depth(&Structure::path(6)), 3);
        assert_eq!(tree_depth(&Structure::path(8)), 4);
        assert_eq!(tree_depth(&Structure::cycle(4)), 3);
    }

    #[test]
    fn tree_width_values() {
        assert_eq!(tree_width(&Structure::new(Vocabulary::graph(), 0)), -1);
        assert_eq!(tree_width(&Structure::new(Vocabulary::graph(), 1)), 0);
        assert_eq!(tree_width(&Structure::path(4)), 1);
        assert_eq!(tree_width(&Structure::clique(3)), 2);
        assert_eq!(tree_width(&Structure::clique(5)), 4);
        assert_eq!(tree_width(&Structure::cycle(4)), 2);
        // A star is a tree: width 1.
        assert_eq!(tree_width(&Structure::graph(4, &[(0, 1), (0, 2), (0, 3)])), 1);
    }

    #[test]
    fn modal_depth_oracle_cases() {
        let chain3 = PointedStructure::new(Structure::from_edges(3, &[(0, 1), (1, 2)]), 0).unwrap();
        assert_eq!(modal_depth_oracle(&chain3), Some(3));
        let cyc = PointedStructure::new(Structure::from_edges(2, &[(0, 1), (1, 0)]), 0).unwrap();
        assert_eq!(modal_depth_oracle(&cyc), None);
        let branch = PointedStructure::new(Structure::from_edges(3, &[(0, 1), (0, 2)]), 0).unwrap();
        assert_eq!(modal_depth_oracle(&branch), Some(2));
    }
}
