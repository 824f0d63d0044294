//! Forest-ordered structures: σ-structures carrying a forest order, with the
//! compatibility conditions that carve out the Ehrenfeucht-Fraïssé, pebbling,
//! and modal classes.
//!
//! Condition (E): Gaifman-adjacent elements are comparable in the forest
//! order. Condition (P): additionally, a pebbling function `p : A -> {1..k}`
//! satisfies `p(a) != p(x)` for every Gaifman-adjacent pair `a < b` and every
//! `a < x <= b`. Condition (M): the covering relation coincides with the
//! pairs related by exactly one binary ("transition") symbol, the structure
//! is a non-empty tree, and only unary and binary symbols occur.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::{gaifman_graph, validate_structure, Structure, Violation};

/// Which class of forest-ordered structures an object belongs to. `R` is the
/// unrestricted class (no height bound), `Re`/`Rp`/`Rm` the EF, pebbling and
/// modal classes with height bound `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    R,
    Re,
    Rp,
    Rm,
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Tag::R => "R",
            Tag::Re => "RE",
            Tag::Rp => "RP",
            Tag::Rm => "RM",
        };
        f.write_str(s)
    }
}

impl Tag {
    pub fn parse(s: &str) -> Option<Tag> {
        match s {
            "R" => Some(Tag::R),
            "RE" => Some(Tag::Re),
            "RP" => Some(Tag::Rp),
            "RM" => Some(Tag::Rm),
            _ => None,
        }
    }
}

/// A σ-structure with a forest order (given by parent pointers), an optional
/// pebbling function, an optional height bound, and a class tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestStructure {
    pub base: Structure,
    pub parent: Vec<Option<usize>>,
    pub pebble: Option<Vec<usize>>,
    pub bound: Option<usize>,
    pub tag: Tag,
}

impl ForestStructure {
    pub fn new(base: Structure, parent: Vec<Option<usize>>, bound: Option<usize>, tag: Tag) -> Self {
        assert_eq!(parent.len(), base.size());
        ForestStructure { base, parent, pebble: None, bound, tag }
    }

    pub fn with_pebbles(mut self, pebble: Vec<usize>) -> Self {
        assert_eq!(pebble.len(), self.base.size());
        self.pebble = Some(pebble);
        self
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// True when the parent relation has no cycles.
    pub fn parent_acyclic(&self) -> bool {
        for start in 0..self.size() {
            let mut steps = 0;
            let mut cur = Some(start);
            while let Some(x) = cur {
                cur = self.parent[x];
                steps += 1;
                if steps > self.size() {
                    return false;
                }
            }
        }
        true
    }

    /// The chain below `x`, listed root-first (so `chain(x).last() == x`).
    pub fn chain(&self, x: usize) -> Vec<usize> {
        let mut c = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            c.push(p);
            cur = p;
            if c.len() > self.size() {
                break; // cyclic parent data; validation reports it
            }
        }
        c.reverse();
        c
    }

    /// Height of an element: the cardinality of its down-chain.
    pub fn height_of(&self, x: usize) -> usize {
        self.chain(x).len()
    }

    /// Height of the structure: the maximum element height (0 when empty).
    pub fn height(&self) -> usize {
        (0..self.size()).map(|x| self.height_of(x)).max().unwrap_or(0)
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.parent[x].is_none()).collect()
    }

    pub fn children(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.parent[y] == Some(x)).collect()
    }

    /// `x <= y` in the forest order.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        let mut cur = Some(y);
        while let Some(c) = cur {
            if c == x {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn is_valid(&self) -> bool {
        validate_object(self).is_empty()
    }
}

/// Validates the tag-specific invariants, naming each failed condition.
pub fn validate_object(x: &ForestStructure) -> Vec<Violation> {
    let mut out: Vec<Violation> = validate_structure(&x.base);
    if x.parent.len() != x.size() {
        out.push(Violation("parent function not total".to_string()));
        return out;
    }
    if x.parent.iter().flatten().any(|&p| p >= x.size()) {
        out.push(Violation("parent out of range".to_string()));
        return out;
    }
    if !x.parent_acyclic() {
        out.push(Violation("parent relation is cyclic".to_string()));
        return out;
    }
    // The bound is a height bound for the EF and modal classes; for the
    // pebbling class it is the number of pebble values and chains may be
    // arbitrarily long.
    if matches!(x.tag, Tag::Re | Tag::Rm) {
        if let Some(bound) = x.bound {
            if x.height() > bound {
                out.push(Violation(format!("height {} exceeds bound {}", x.height(), bound)));
            }
        }
    }
    match x.tag {
        Tag::R => {}
        Tag::Re | Tag::Rp => {
            if x.bound.is_none() {
                out.push(Violation(format!("tag {} requires a bound", x.tag)));
            }
            check_condition_e(x, &mut out);
            if x.tag == Tag::Rp {
                check_condition_p(x, &mut out);
            }
        }
        Tag::Rm => {
            if x.bound.is_none() {
                out.push(Violation("tag RM requires a height bound".to_string()));
            }
            if x.size() == 0 {
                out.push(Violation("tag RM requires a non-empty structure".to_string()));
            } else if x.roots().len() != 1 {
                out.push(Violation(format!("tag RM requires exactly one root, found {}", x.roots().len())));
            }
            check_condition_m(x, &mut out);
        }
    }
    out
}

fn check_condition_e(x: &ForestStructure, out: &mut Vec<Violation>) {
    let adj = gaifman_graph(&x.base);
    for a in 0..x.size() {
        for &b in &adj[a] {
            if a < b && !x.comparable(a, b) {
                out.push(Violation(format!(
                    "(E) fails: adjacent elements {} and {} are incomparable",
                    x.base.name(a),
                    x.base.name(b)
                )));
            }
        }
    }
}

fn check_condition_p(x: &ForestStructure, out: &mut Vec<Violation>) {
    let Some(pebble) = &x.pebble else {
        out.push(Violation("(P) fails: pebbling function missing".to_string()));
        return;
    };
    if let Some(bound) = x.bound {
        for (e, &p) in pebble.iter().enumerate() {
            if p == 0 || p > bound {
                out.push(Violation(format!(
                    "pebble value {} on {} outside 1..{}",
                    p,
                    x.base.name(e),
                    bound
                )));
            }
        }
    }
    let adj = gaifman_graph(&x.base);
    for a in 0..x.size() {
        for &b in &adj[a] {
            if a == b || !x.leq(a, b) {
                continue;
            }
            // walk the interval a < v <= b
            let mut v = b;
            while v != a {
                if pebble[a] == pebble[v] {
                    out.push(Violation(format!(
                        "(P) fails: pebble {} reused at {} between {} and {}",
                        pebble[a],
                        x.base.name(v),
                        x.base.name(a),
                        x.base.name(b)
                    )));
                }
                match x.parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
        }
    }
}

fn check_condition_m(x: &ForestStructure, out: &mut Vec<Violation>) {
    for sym in 0..x.base.vocab().len() {
        if x.base.vocab().arity(sym) > 2 {
            out.push(Violation(format!(
                "(M) fails: symbol {} has arity > 2",
                x.base.vocab().name(sym)
            )));
            return;
        }
    }
    let binaries = x.base.vocab().binary_symbols();
    // Every transition tuple must be a covering pair.
    for &sym in &binaries {
        for t in x.base.tuples(sym) {
            if t.len() == 2 && (x.parent.get(t[1]).copied().flatten() != Some(t[0])) {
                out.push(Violation(format!(
                    "(M) fails: {}({},{}) does not follow the covering relation",
                    x.base.vocab().name(sym),
                    x.base.name(t[0]),
                    x.base.name(t[1])
                )));
            }
        }
    }
    // Every covering pair carries exactly one transition label.
    for y in 0..x.size() {
        if let Some(p) = x.parent[y] {
            let labels: Vec<usize> = binaries
                .iter()
                .copied()
                .filter(|&sym| x.base.holds(sym, &[p, y]))
                .collect();
            if labels.len() != 1 {
                out.push(Violation(format!(
                    "(M) fails: covering pair ({},{}) has {} transition labels",
                    x.base.name(p),
                    x.base.name(y),
                    labels.len()
                )));
            }
        }
    }
}

/// Checks that `map` is a morphism of forest-ordered structures: a σ-hom that
/// sends roots to roots, preserves the covering relation, and (for `Rp`)
/// preserves pebbles.
pub fn check_forest_morphism(map: &[usize], x: &ForestStructure, y: &ForestStructure) -> Result<bool> {
    if x.tag != y.tag || x.bound != y.bound {
        return Err(Error::TagMismatch);
    }
    if x.base.vocab() != y.base.vocab() {
        return Err(Error::VocabMismatch);
    }
    if map.len() != x.size() || map.iter().any(|&v| v >= y.size()) {
        return Err(Error::InvalidInput("map is not total".to_string()));
    }
    for sym in 0..x.base.vocab().len() {
        for t in x.base.tuples(sym) {
            let img: Vec<usize> = t.iter().map(|&e| map[e]).collect();
            if !y.base.holds(sym, &img) {
                return Ok(false);
            }
        }
    }
    for e in 0..x.size() {
        match x.parent[e] {
            None => {
                if y.parent[map[e]].is_some() {
                    return Ok(false);
                }
            }
            Some(p) => {
                if y.parent[map[e]] != Some(map[p]) {
                    return Ok(false);
                }
            }
        }
    }
    if x.tag == Tag::Rp {
        let (Some(px), Some(py)) = (&x.pebble, &y.pebble) else {
            return Err(Error::InvalidInput("pebbling function missing".to_string()));
        };
        for e in 0..x.size() {
            if px[e] != py[map[e]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates all forest morphisms `X -> Y` by brute force (test oracle).
pub fn all_forest_morphisms(x: &ForestStructure, y: &ForestStructure) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if x.size() == 0 {
        return vec![vec![]];
    }
    if y.size() == 0 {
        return Vec::new();
    }
    (0..x.size())
        .map(|_| 0..y.size())
        .multi_cartesian_product()
        .filter(|map| check_forest_morphism(map, x, y) == Ok(true))
        .collect()
}

/// The synchronous product: pairs of equal height (with matching pebbles for
/// `Rp`), componentwise order and relations. For `Rm` only the pairs
/// reachable from the paired roots along equal-label transitions are kept.
pub struct SyncProduct {
    pub forest: ForestStructure,
    pub pairs: Vec<(usize, usize)>,
    pub proj_left: Vec<usize>,
    pub proj_right: Vec<usize>,
}

pub fn synchronous_product(x: &ForestStructure, y: &ForestStructure) -> Result<SyncProduct> {
    if x.tag != y.tag || x.bound != y.bound {
        return Err(Error::TagMismatch);
    }
    if x.base.vocab() != y.base.vocab() {
        return Err(Error::VocabMismatch);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    match x.tag {
        Tag::Rm => {
            // BFS from the paired roots along matching transition labels.
            let (rx, ry) = match (x.roots().first(), y.roots().first()) {
                (Some(&rx), Some(&ry)) => (rx, ry),
                _ => return Err(Error::InvalidInput("RM product needs rooted factors".to_string())),
            };
            let binaries = x.base.vocab().binary_symbols();
            let mut seen = BTreeSet::new();
            let mut queue = std::collections::VecDeque::new();
            seen.insert((rx, ry));
            queue.push_back((rx, ry));
            while let Some((a, b)) = queue.pop_front() {
                pairs.push((a, b));
                for a2 in x.children(a) {
                    for b2 in y.children(b) {
                        let same_label = binaries.iter().any(|&sym| {
                            x.base.holds(sym, &[a, a2]) && y.base.holds(sym, &[b, b2])
                        });
                        if same_label && seen.insert((a2, b2)) {
                            queue.push_back((a2, b2));
                        }
                    }
                }
            }
            pairs.sort_unstable();
        }
        _ => {
            let hx: Vec<usize> = (0..x.size()).map(|e| x.height_of(e)).collect();
            let hy: Vec<usize> = (0..y.size()).map(|e| y.height_of(e)).collect();
            for a in 0..x.size() {
                for b in 0..y.size() {
                    if hx[a] != hy[b] {
                        continue;
                    }
                    if x.tag == Tag::Rp {
                        let (px, py) = (x.pebble.as_ref().unwrap(), y.pebble.as_ref().unwrap());
                        if px[a] != py[b] {
                            continue;
                        }
                    }
                    pairs.push((a, b));
                }
            }
        }
    }
    let index = |a: usize, b: usize| pairs.binary_search(&(a, b)).ok();
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", x.base.name(a), y.base.name(b)))
        .collect();
    let mut base = Structure::with_names(x.base.vocab().clone(), names);
    for sym in 0..x.base.vocab().len() {
        for ta in x.base.tuples(sym) {
            for tb in y.base.tuples(sym) {
                let t: Option<Vec<usize>> = ta
                    .iter()
                    .zip(tb.iter())
                    .map(|(&a, &b)| index(a, b))
                    .collect();
                if let Some(t) = t {
                    base.insert(sym, t);
                }
            }
        }
    }
    let parent: Vec<Option<usize>> = pairs
        .iter()
        .map(|&(a, b)| match (x.parent[a], y.parent[b]) {
            (Some(pa), Some(pb)) => index(pa, pb),
            _ => None,
        })
        .collect();
    let mut forest = ForestStructure::new(base, parent, x.bound, x.tag);
    if x.tag == Tag::Rp {
        let px = x.pebble.as_ref().unwrap();
        forest = forest.with_pebbles(pairs.iter().map(|&(a, _)| px[a]).collect());
    }
    let proj_left = pairs.iter().map(|&(a, _)| a).collect();
    let proj_right = pairs.iter().map(|&(_, b)| b).collect();
    Ok(SyncProduct { forest, pairs, proj_left, proj_right })
}

/// The induced sub-forest-structure on a down-closed set of elements.
/// Returns the substructure together with the inclusion map into `x`.
pub fn induced_subforest(x: &ForestStructure, elements: &BTreeSet<usize>) -> (ForestStructure, Vec<usize>) {
    let incl: Vec<usize> = elements.iter().copied().collect();
    let index_of: std::collections::HashMap<usize, usize> =
        incl.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let names = incl.iter().map(|&e| x.base.name(e).to_string()).collect();
    let mut base = Structure::with_names(x.base.vocab().clone(), names);
    for sym in 0..x.base.vocab().len() {
        for t in x.base.tuples(sym) {
            if let Some(t2) = t.iter().map(|e| index_of.get(e).copied()).collect::<Option<Vec<_>>>() {
                base.insert(sym, t2);
            }
        }
    }
    let parent = incl
        .iter()
        .map(|&e| x.parent[e].and_then(|p| index_of.get(&p).copied()))
        .collect();
    let mut sub = ForestStructure::new(base, parent, x.bound, x.tag);
    if x.tag == Tag::Rp {
        let px = x.pebble.as_ref().unwrap();
        sub = sub.with_pebbles(incl.iter().map(|&e| px[e]).collect());
    }
    (sub, incl)
}

/// Backtracking search for an isomorphism of forest structures: a bijection
/// preserving relations both ways, the forest order, and pebbles.
pub fn forest_iso(x: &ForestStructure, y: &ForestStructure) -> Option<Vec<usize>> {
    if x.size() != y.size() || x.tag != y.tag {
        return None;
    }
    for sym in 0..x.base.vocab().len() {
        if x.base.tuple_count(sym) != y.base.tuple_count(sym) {
            return None;
        }
    }
    let hx: Vec<usize> = (0..x.size()).map(|e| x.height_of(e)).collect();
    let hy: Vec<usize> = (0..y.size()).map(|e| y.height_of(e)).collect();
    {
        let mut sx = hx.clone();
        let mut sy = hy.clone();
        sx.sort_unstable();
        sy.sort_unstable();
        if sx != sy {
            return None;
        }
    }
    // Assign elements in order of increasing height so parents are assigned
    // before their children.
    let mut order: Vec<usize> = (0..x.size()).collect();
    order.sort_by_key(|&e| (hx[e], e));
    fn go(
        x: &ForestStructure,
        y: &ForestStructure,
        hy: &[usize],
        hx: &[usize],
        order: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        pos: usize,
    ) -> bool {
        if pos == order.len() {
            // Relations must match exactly under the bijection.
            return (0..x.base.vocab().len()).all(|sym| {
                x.base.tuples(sym).all(|t| {
                    y.base
                        .holds(sym, &t.iter().map(|&e| map[e].unwrap()).collect::<Vec<_>>())
                })
            });
        }
        let e = order[pos];
        for v in 0..y.size() {
            if used[v] || hy[v] != hx[e] {
                continue;
            }
            let parent_ok = match x.parent[e] {
                None => y.parent[v].is_none(),
                Some(p) => y.parent[v] == map[p],
            };
            if !parent_ok {
                continue;
            }
            if x.tag == Tag::Rp {
                let (px, py) = (x.pebble.as_ref().unwrap(), y.pebble.as_ref().unwrap());
                if px[e] != py[v] {
                    continue;
                }
            }
            // Partial relation preservation over fully assigned tuples.
            map[e] = Some(v);
            let partial_ok = (0..x.base.vocab().len()).all(|sym| {
                x.base.tuples(sym).all(|t| {
                    if !t.contains(&e) {
                        return true;
                    }
                    match t.iter().map(|&w| map[w]).collect::<Option<Vec<_>>>() {
                        Some(img) => y.base.holds(sym, &img),
                        None => true,
                    }
                }) && y.base.tuples(sym).all(|t| {
                    if !t.contains(&v) {
                        return true;
                    }
                    let pre: Option<Vec<usize>> = t
                        .iter()
                        .map(|&w| {
                            map.iter().position(|&m| m == Some(w))
                        })
                        .collect();
                    match pre {
                        Some(pre) => x.base.holds(sym, &pre),
                        None => true,
                    }
                })
            });
            if partial_ok {
                used[v] = true;
                if go(x, y, hy, hx, order, map, used, pos + 1) {
                    return true;
                }
                used[v] = false;
            }
            map[e] = None;
        }
        false
    }
    let mut map = vec![None; x.size()];
    let mut used = vec![false; y.size()];
    if go(x, y, &hy, &hx, &order, &mut map, &mut used, 0) {
        Some(map.into_iter().map(|v| v.unwrap()).collect())
    } else {
        None
    }
}
