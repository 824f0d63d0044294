//! Coalgebras of the materialized comonads and their equivalence with forest
//! covers, plus the coalgebra-number searches.
//!
//! A coalgebra `α : A -> G_k A` is exactly a forest cover of `A`: reading the
//! chain below an element as a play (or trace) gives `α`, and the second-last
//! entry of `α(a)` gives back the parent of `a`. The coalgebra number of `A`
//! is the least `k` admitting a cover; for the EF comonad this is the least
//! height of a forest order satisfying (E), for pebbling the least number of
//! pebble values supporting (E)+(P) over any forest order, and for the modal
//! comonad the height of the unique candidate tree order rooted at the point.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::forest::{validate_object, ForestStructure, Tag};
use crate::structure::{gaifman_graph, PointedStructure, Structure};

use super::ef::{ef_build, Play};
use super::modal::{modal_build, Trace};
use super::ComonadKind;

/// The structure map of a coalgebra, with values as raw plays or traces so
/// the representation is independent of any particular carrier indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaMap {
    Ef(Vec<Play>),
    Modal(Vec<Trace>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub k: usize,
    pub base: Structure,
    /// The distinguished point, for modal coalgebras.
    pub point: Option<usize>,
    pub alpha: AlphaMap,
}

impl Coalgebra {
    pub fn kind(&self) -> ComonadKind {
        match self.alpha {
            AlphaMap::Ef(_) => ComonadKind::Ef,
            AlphaMap::Modal(_) => ComonadKind::Modal,
        }
    }
}

/// Checks the three coalgebra conditions: `α` is a homomorphism into the
/// carrier, the counit law `ε . α = id`, and coassociativity
/// `G(α) . α = δ . α`.
pub fn is_coalgebra(c: &Coalgebra) -> bool {
    match &c.alpha {
        AlphaMap::Ef(alpha) => {
            if alpha.len() != c.base.size() {
                return false;
            }
            let carrier = ef_build(&c.base, c.k);
            let indices: Option<Vec<usize>> = alpha.iter().map(|p| carrier.index_of(p)).collect();
            let Some(indices) = indices else { return false };
            // Homomorphism into the carrier.
            for sym in 0..c.base.vocab().len() {
                for t in c.base.tuples(sym) {
                    let img: Vec<usize> = t.iter().map(|&e| indices[e]).collect();
                    if !carrier.carrier.base.holds(sym, &img) {
                        return false;
                    }
                }
            }
            for (a, play) in alpha.iter().enumerate() {
                // Counit law.
                if play.last() != a {
                    return false;
                }
                // Coassociativity: the i-th prefix of alpha(a) is alpha of
                // the i-th move of alpha(a).
                for (i, &b) in play.0.iter().enumerate() {
                    if alpha[b] != play.prefix(i + 1) {
                        return false;
                    }
                }
            }
            true
        }
        AlphaMap::Modal(alpha) => {
            let Some(point) = c.point else { return false };
            if alpha.len() != c.base.size() {
                return false;
            }
            let Ok(pointed) = PointedStructure::new(c.base.clone(), point) else {
                return false;
            };
            let Ok(carrier) = modal_build(&pointed, c.k) else { return false };
            let indices: Option<Vec<usize>> = alpha.iter().map(|t| carrier.index_of(t)).collect();
            let Some(indices) = indices else { return false };
            if indices[point] != carrier.root() {
                return false; // pointed morphism
            }
            for sym in 0..c.base.vocab().len() {
                for t in c.base.tuples(sym) {
                    let img: Vec<usize> = t.iter().map(|&e| indices[e]).collect();
                    if !carrier.carrier.base.holds(sym, &img) {
                        return false;
                    }
                }
            }
            for (a, trace) in alpha.iter().enumerate() {
                if trace.last() != a {
                    return false;
                }
                for i in 1..=trace.len() {
                    let state = trace.states[i - 1];
                    if alpha[state] != trace.prefix(i) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Reads a forest cover as a coalgebra: `α(a)` is the chain below `a`.
pub fn cover_to_coalgebra(cover: &ForestStructure) -> Result<Coalgebra> {
    let violations = validate_object(cover);
    if !violations.is_empty() {
        return Err(Error::InvalidInput(format!("invalid cover: {}", violations[0])));
    }
    let k = cover
        .bound
        .ok_or_else(|| Error::InvalidInput("cover needs a height bound".to_string()))?;
    match cover.tag {
        Tag::Re => {
            let alpha = (0..cover.size()).map(|a| Play(cover.chain(a))).collect();
            Ok(Coalgebra { k, base: cover.base.clone(), point: None, alpha: AlphaMap::Ef(alpha) })
        }
        Tag::Rm => {
            let binaries = cover.base.vocab().binary_symbols();
            let alpha = (0..cover.size())
                .map(|a| {
                    let states = cover.chain(a);
                    let labels = states
                        .windows(2)
                        .map(|w| {
                            binaries
                                .iter()
                                .copied()
                                .find(|&sym| cover.base.holds(sym, &[w[0], w[1]]))
                                .expect("(M) gives every covering pair a label")
                        })
                        .collect();
                    Trace { states, labels }
                })
                .collect();
            let point = cover.roots()[0];
            Ok(Coalgebra {
                k,
                base: cover.base.clone(),
                point: Some(point),
                alpha: AlphaMap::Modal(alpha),
            })
        }
        tag => Err(Error::InvalidInput(format!("no materialized comonad for tag {tag}"))),
    }
}

/// Reads a coalgebra back as a forest cover: the parent of `a` is the
/// second-last entry of `α(a)`.
pub fn coalgebra_to_cover(c: &Coalgebra) -> Result<ForestStructure> {
    if !is_coalgebra(c) {
        return Err(Error::InvalidInput("not a coalgebra".to_string()));
    }
    let (parent, tag): (Vec<Option<usize>>, Tag) = match &c.alpha {
        AlphaMap::Ef(alpha) => (
            alpha
                .iter()
                .map(|p| (p.len() > 1).then(|| p.0[p.len() - 2]))
                .collect(),
            Tag::Re,
        ),
        AlphaMap::Modal(alpha) => (
            alpha
                .iter()
                .map(|t| (t.len() > 1).then(|| t.states[t.len() - 2]))
                .collect(),
            Tag::Rm,
        ),
    };
    let cover = ForestStructure::new(c.base.clone(), parent, Some(c.k), tag);
    let violations = validate_object(&cover);
    if !violations.is_empty() {
        return Err(Error::InvalidInput(format!("coalgebra yields invalid cover: {}", violations[0])));
    }
    Ok(cover)
}

/// Which cover class a coalgebra-number search ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    Ef,
    Pebble,
}

/// All parent vectors on `n` elements; the choice `n` encodes "root" and the
/// self-parent choice is skipped. Cyclic vectors are filtered by the caller.
fn parent_vectors(n: usize) -> impl Iterator<Item = Vec<Option<usize>>> {
    (0..n)
        .map(|_| 0..=n)
        .multi_cartesian_product()
        .filter_map(move |choice| {
            if choice.iter().enumerate().any(|(e, &c)| c == e) {
                return None;
            }
            Some(choice.iter().map(|&c| (c < n).then_some(c)).collect())
        })
}

fn is_acyclic(parent: &[Option<usize>]) -> bool {
    for start in 0..parent.len() {
        let mut cur = Some(start);
        let mut steps = 0;
        while let Some(x) = cur {
            cur = parent[x];
            steps += 1;
            if steps > parent.len() {
                return false;
            }
        }
    }
    true
}

fn forest_height(parent: &[Option<usize>]) -> usize {
    let chain_len = |mut x: usize| {
        let mut h = 1;
        while let Some(p) = parent[x] {
            h += 1;
            x = p;
        }
        h
    };
    (0..parent.len()).map(chain_len).max().unwrap_or(0)
}

fn comparable(parent: &[Option<usize>], x: usize, y: usize) -> bool {
    let leq = |a: usize, b: usize| {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = parent[c];
        }
        false
    };
    leq(x, y) || leq(y, x)
}

fn satisfies_e(adj: &[std::collections::BTreeSet<usize>], parent: &[Option<usize>]) -> bool {
    (0..parent.len()).all(|a| adj[a].iter().all(|&b| a >= b || comparable(parent, a, b)))
}

/// Minimum number of colors for the (P)-conflict constraints of one forest
/// order: `p(a)` must differ from `p(x)` whenever `a < x <= b` for some
/// Gaifman edge `{a, b}` with `a < b`. Exact backtracking search.
fn min_pebbles(adj: &[std::collections::BTreeSet<usize>], parent: &[Option<usize>]) -> usize {
    let n = parent.len();
    if n == 0 {
        return 0;
    }
    let mut conflict = vec![std::collections::BTreeSet::new(); n];
    for a in 0..n {
        for &b in &adj[a] {
            if a == b {
                continue;
            }
            // collect the interval a < v <= b when a < b in the order
            let mut interval = Vec::new();
            let mut cur = Some(b);
            let mut on_chain = false;
            while let Some(c) = cur {
                if c == a {
                    on_chain = true;
                    break;
                }
                interval.push(c);
                cur = parent[c];
            }
            if on_chain {
                for &x in &interval {
                    conflict[a].insert(x);
                    conflict[x].insert(a);
                }
            }
        }
    }
    // Exact chromatic number by incremental backtracking.
    fn assign(
        conflict: &[std::collections::BTreeSet<usize>],
        color: &mut Vec<usize>,
        next: usize,
        c: usize,
    ) -> bool {
        if next == color.len() {
            return true;
        }
        for v in 1..=c {
            if conflict[next].iter().all(|&o| o >= next || color[o] != v) {
                color[next] = v;
                if assign(conflict, color, next + 1, c) {
                    return true;
                }
                color[next] = 0;
            }
        }
        false
    }
    for c in 1..=n {
        let mut color = vec![0usize; n];
        if assign(&conflict, &mut color, 0, c) {
            return c;
        }
    }
    n
}

/// Least `k <= k_max` such that `a` carries a forest cover of the requested
/// kind, searching exhaustively over forest orders.
pub fn coalgebra_number(a: &Structure, kind: CoverKind, k_max: usize) -> Option<usize> {
    let n = a.size();
    if n == 0 {
        return Some(0);
    }
    let adj = gaifman_graph(a);
    let mut best: Option<usize> = None;
    for parent in parent_vectors(n) {
        if !is_acyclic(&parent) || !satisfies_e(&adj, &parent) {
            continue;
        }
        let value = match kind {
            CoverKind::Ef => forest_height(&parent),
            CoverKind::Pebble => min_pebbles(&adj, &parent),
        };
        if best.is_none_or(|b| value < b) {
            best = Some(value);
        }
        if best == Some(1) {
            break;
        }
    }
    best.filter(|&b| b <= k_max)
}

/// Least `k <= k_max` admitting a modal cover rooted at the point. The
/// covering relation of any such cover is forced to be the set of transition
/// pairs, so the search reduces to checking that the transitions form a tree
/// rooted at the point and measuring its height.
pub fn modal_coalgebra_number(p: &PointedStructure, k_max: usize) -> Option<usize> {
    let base = &p.base;
    if base.vocab().max_arity() > 2 {
        return None;
    }
    let binaries = base.vocab().binary_symbols();
    let mut parent: Vec<Option<usize>> = vec![None; base.size()];
    for y in 0..base.size() {
        let mut labels = 0usize;
        for &sym in &binaries {
            for x in 0..base.size() {
                if base.holds(sym, &[x, y]) {
                    labels += 1;
                    if parent[y].is_some_and(|p| p != x) {
                        return None; // two distinct parents
                    }
                    parent[y] = Some(x);
                }
            }
        }
        if labels > 1 {
            return None; // multiple labels, or multiple edges, into y
        }
    }
    if parent[p.point].is_some() {
        return None; // the point must be the root
    }
    for (y, par) in parent.iter().enumerate() {
        if y != p.point && par.is_none() {
            return None; // unreachable element would be a second root
        }
    }
    if !is_acyclic(&parent) {
        return None;
    }
    let height = forest_height(&parent);
    let cover = ForestStructure::new(base.clone(), parent, Some(height), Tag::Rm);
    if !validate_object(&cover).is_empty() {
        return None;
    }
    (height <= k_max).then_some(height)
}
