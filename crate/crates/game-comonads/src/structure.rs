//! Finite relational structures over a vocabulary of relation symbols.
//!
//! Universes are index sets `0..size` with optional display names. All
//! relation data is kept in sorted, duplicate-free form so that every
//! operation produces deterministic output.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A relation symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols. Names are unique, arities positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(symbols: Vec<(S, usize)>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols
            .into_iter()
            .map(|(name, arity)| Symbol { name: name.into(), arity })
            .collect();
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.arity == 0 {
                return Err(Error::InvalidInput(format!("symbol {} has arity 0", s.name)));
            }
            if !seen.insert(s.name.clone()) {
                return Err(Error::SymbolCollision(s.name.clone()));
            }
        }
        Ok(Vocabulary { symbols })
    }

    /// The standard single-binary-relation vocabulary `{E/2}`.
    pub fn graph() -> Self {
        Vocabulary::new(vec![("E", 2)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn arity(&self, sym: usize) -> usize {
        self.symbols[sym].arity
    }

    pub fn name(&self, sym: usize) -> &str {
        &self.symbols[sym].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Indices of the binary symbols, in declaration order.
    pub fn binary_symbols(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.arity(s) == 2).collect()
    }

    /// Indices of the unary symbols, in declaration order.
    pub fn unary_symbols(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.arity(s) == 1).collect()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// The vocabulary extended with a fresh binary symbol `I`.
    pub fn with_identity(&self) -> Result<Self> {
        if self.index_of("I").is_some() {
            return Err(Error::SymbolCollision("I".to_string()));
        }
        let mut symbols = self.symbols.clone();
        symbols.push(Symbol { name: "I".to_string(), arity: 2 });
        Ok(Vocabulary { symbols })
    }
}

/// A finite structure: universe `0..size` plus an interpretation of every
/// symbol as a (sorted, duplicate-free) set of tuples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Structure {
    vocab: Vocabulary,
    size: usize,
    names: Vec<String>,
    interp: Vec<BTreeSet<Vec<usize>>>,
}

/// A named invariant violation produced by a validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl Structure {
    pub fn new(vocab: Vocabulary, size: usize) -> Self {
        let names = (0..size).map(|i| i.to_string()).collect();
        let interp = vec![BTreeSet::new(); vocab.len()];
        Structure { vocab, size, names, interp }
    }

    pub fn with_names(vocab: Vocabulary, names: Vec<String>) -> Self {
        let size = names.len();
        let interp = vec![BTreeSet::new(); vocab.len()];
        Structure { vocab, size, names, interp }
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn name(&self, elem: usize) -> &str {
        &self.names[elem]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.size);
        self.names = names;
    }

    /// Inserts a tuple, silently deduplicating. Out-of-range entries are
    /// representable and reported by [`validate_structure`].
    pub fn insert(&mut self, sym: usize, tuple: Vec<usize>) {
        self.interp[sym].insert(tuple);
    }

    pub fn holds(&self, sym: usize, tuple: &[usize]) -> bool {
        self.interp[sym].contains(tuple)
    }

    pub fn tuples(&self, sym: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.interp[sym].iter()
    }

    pub fn tuple_count(&self, sym: usize) -> usize {
        self.interp[sym].len()
    }

    pub fn total_tuples(&self) -> usize {
        self.interp.iter().map(|s| s.len()).sum()
    }

    /// Convenience for binary-relation structures built from edge lists.
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Structure::new(Vocabulary::graph(), size);
        for &(a, b) in edges {
            s.insert(0, vec![a, b]);
        }
        s
    }

    /// Undirected graph: inserts both orientations of every edge.
    pub fn graph(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Structure::new(Vocabulary::graph(), size);
        for &(a, b) in edges {
            s.insert(0, vec![a, b]);
            s.insert(0, vec![b, a]);
        }
        s
    }

    /// The complete (loop-free, symmetric) graph on `n` vertices.
    pub fn clique(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Structure::graph(n, &edges)
    }

    /// The path graph on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Structure::graph(n, &edges)
    }

    /// The cycle graph on `n` vertices (`n >= 3`).
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Structure::graph(n, &edges)
    }
}

/// Checks the structure invariants: tuple lengths match the declared arities
/// and every entry lies in the universe. Violations are data, not faults.
pub fn validate_structure(s: &Structure) -> Vec<Violation> {
    let mut out = Vec::new();
    for sym in 0..s.vocab.len() {
        let arity = s.vocab.arity(sym);
        for tuple in s.tuples(sym) {
            if tuple.len() != arity {
                out.push(Violation(format!(
                    "{}{:?}: tuple length {} does not match arity {}",
                    s.vocab.name(sym),
                    tuple,
                    tuple.len(),
                    arity
                )));
            }
            for &e in tuple {
                if e >= s.size {
                    out.push(Violation(format!(
                        "{}{:?}: entry {} out of range (size {})",
                        s.vocab.name(sym),
                        tuple,
                        e,
                        s.size
                    )));
                }
            }
        }
    }
    out
}

/// A structure with a distinguished element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedStructure {
    pub base: Structure,
    pub point: usize,
}

impl PointedStructure {
    pub fn new(base: Structure, point: usize) -> Result<Self> {
        if point >= base.size() {
            return Err(Error::InvalidInput(format!(
                "point {} out of range (size {})",
                point,
                base.size()
            )));
        }
        Ok(PointedStructure { base, point })
    }
}

/// The Gaifman graph: `x ~ y` iff `x != y` and some tuple contains both.
pub fn gaifman_graph(s: &Structure) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); s.size()];
    for sym in 0..s.vocab.len() {
        for tuple in s.tuples(sym) {
            for &a in tuple {
                for &b in tuple {
                    if a != b && a < s.size() && b < s.size() {
                        adj[a].insert(b);
                        adj[b].insert(a);
                    }
                }
            }
        }
    }
    adj
}

/// Connected components of the Gaifman graph, each sorted, in sorted order.
pub fn gaifman_components(s: &Structure) -> Vec<Vec<usize>> {
    let adj = gaifman_graph(s);
    let mut seen = vec![false; s.size()];
    let mut comps = Vec::new();
    for start in 0..s.size() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Categorical product: universe `A x B` (row-major), relations componentwise.
/// Returns the product together with the two projection maps.
pub fn product_struct(a: &Structure, b: &Structure) -> Result<(Structure, Vec<usize>, Vec<usize>)> {
    if a.vocab != b.vocab {
        return Err(Error::VocabMismatch);
    }
    let n = a.size() * b.size();
    let mut names = Vec::with_capacity(n);
    let mut proj_a = Vec::with_capacity(n);
    let mut proj_b = Vec::with_capacity(n);
    for x in 0..a.size() {
        for y in 0..b.size() {
            names.push(format!("({},{})", a.name(x), b.name(y)));
            proj_a.push(x);
            proj_b.push(y);
        }
    }
    let mut p = Structure::with_names(a.vocab.clone(), names);
    let pair = |x: usize, y: usize| x * b.size() + y;
    for sym in 0..a.vocab.len() {
        for ta in a.tuples(sym) {
            for tb in b.tuples(sym) {
                let t: Vec<usize> = ta.iter().zip(tb.iter()).map(|(&x, &y)| pair(x, y)).collect();
                p.insert(sym, t);
            }
        }
    }
    Ok((p, proj_a, proj_b))
}

/// Coproduct: disjoint union. Returns the sum with the two injection maps.
pub fn coproduct_struct(a: &Structure, b: &Structure) -> Result<(Structure, Vec<usize>, Vec<usize>)> {
    if a.vocab != b.vocab {
        return Err(Error::VocabMismatch);
    }
    let mut names: Vec<String> = a.names.clone();
    for name in &b.names {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    let mut s = Structure::with_names(a.vocab.clone(), names);
    let inj_a: Vec<usize> = (0..a.size()).collect();
    let inj_b: Vec<usize> = (0..b.size()).map(|i| a.size() + i).collect();
    for sym in 0..a.vocab.len() {
        for t in a.tuples(sym) {
            s.insert(sym, t.clone());
        }
        for t in b.tuples(sym) {
            s.insert(sym, t.iter().map(|&e| a.size() + e).collect());
        }
    }
    Ok((s, inj_a, inj_b))
}

/// Expands a structure to the vocabulary with a fresh binary symbol `I`
/// interpreted as the identity relation.
pub fn expand_identity(a: &Structure) -> Result<Structure> {
    let vocab = a.vocab.with_identity()?;
    let mut s = Structure::with_names(vocab, a.names.clone());
    for sym in 0..a.vocab.len() {
        for t in a.tuples(sym) {
            s.insert(sym, t.clone());
        }
    }
    let i_sym = a.vocab.len();
    for x in 0..a.size() {
        s.insert(i_sym, vec![x, x]);
    }
    Ok(s)
}

/// Quotients a structure over a vocabulary containing `I` by the equivalence
/// relation generated by `I`, then drops `I`. Inverse to [`expand_identity`]
/// up to isomorphism.
pub fn quotient_by_identity(a: &Structure) -> Result<Structure> {
    let i_sym = a
        .vocab
        .index_of("I")
        .ok_or_else(|| Error::InvalidInput("vocabulary has no symbol I".to_string()))?;
    if a.vocab.arity(i_sym) != 2 {
        return Err(Error::InvalidInput("symbol I is not binary".to_string()));
    }
    // Union-find over the universe, seeded by the I-tuples.
    let mut parent: Vec<usize> = (0..a.size()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for t in a.tuples(i_sym) {
        if t.len() == 2 && t[0] < a.size() && t[1] < a.size() {
            let (r0, r1) = (find(&mut parent, t[0]), find(&mut parent, t[1]));
            if r0 != r1 {
                parent[r0.max(r1)] = r0.min(r1);
            }
        }
    }
    // Classes indexed in order of their least representative.
    let mut class_of = BTreeMap::new();
    let mut class_names = Vec::new();
    let mut class_map = vec![0usize; a.size()];
    for x in 0..a.size() {
        let r = find(&mut parent, x);
        let next = class_of.len();
        let c = *class_of.entry(r).or_insert(next);
        if c == class_names.len() {
            class_names.push(a.name(r).to_string());
        }
        class_map[x] = c;
    }
    let reduct: Vec<(String, usize)> = a
        .vocab
        .symbols()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != i_sym)
        .map(|(_, s)| (s.name.clone(), s.arity))
        .collect();
    let vocab = Vocabulary::new(reduct)?;
    let mut q = Structure::with_names(vocab, class_names);
    let mut out_sym = 0;
    for sym in 0..a.vocab.len() {
        if sym == i_sym {
            continue;
        }
        for t in a.tuples(sym) {
            q.insert(out_sym, t.iter().map(|&e| class_map[e]).collect());
        }
        out_sym += 1;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_structure_validates() {
        let s = Structure::new(Vocabulary::graph(), 0);
        assert!(validate_structure(&s).is_empty());
    }

    #[test]
    fn k3_validates() {
        let s = Structure::clique(3);
        assert!(validate_structure(&s).is_empty());
        assert_eq!(s.tuple_count(0), 6);
    }

    #[test]
    fn out_of_range_entry_reported() {
        let mut s = Structure::new(Vocabulary::graph(), 3);
        s.insert(0, vec![0, 5]);
        let v = validate_structure(&s);
        assert_eq!(v.len(), 1);
        assert!(v[0].0.contains("out of range"));
    }

    #[test]
    fn arity_mismatch_reported() {
        let mut s = Structure::new(Vocabulary::graph(), 2);
        s.insert(0, vec![0, 1, 1]);
        assert!(!validate_structure(&s).is_empty());
    }

    #[test]
    fn gaifman_of_k3_is_triangle() {
        let adj = gaifman_graph(&Structure::clique(3));
        for x in 0..3 {
            assert_eq!(adj[x].len(), 2);
            assert!(!adj[x].contains(&x));
        }
    }

    #[test]
    fn gaifman_of_ternary_tuple_is_triangle() {
        let vocab = Vocabulary::new(vec![("T", 3)]).unwrap();
        let mut s = Structure::new(vocab, 3);
        s.insert(0, vec![0, 1, 2]);
        let adj = gaifman_graph(&s);
        for x in 0..3 {
            assert_eq!(adj[x].len(), 2);
        }
    }

    #[test]
    fn gaifman_of_relation_free_is_empty() {
        let adj = gaifman_graph(&Structure::new(Vocabulary::graph(), 4));
        assert!(adj.iter().all(|n| n.is_empty()));
    }

    #[test]
    fn product_k2_k2() {
        let k2 = Structure::clique(2);
        let (p, _, _) = product_struct(&k2, &k2).unwrap();
        assert_eq!(p.size(), 4);
        // Componentwise tuples: (0,b)(1,b') with E(b,b') on the second side.
        assert_eq!(p.tuple_count(0), 4);
    }

    #[test]
    fn product_with_full_loop_point_is_identity_like() {
        let k2 = Structure::clique(2);
        let mut pt = Structure::new(Vocabulary::graph(), 1);
        pt.insert(0, vec![0, 0]);
        let (p, _, _) = product_struct(&k2, &pt).unwrap();
        assert_eq!(p.size(), 2);
        assert_eq!(p.tuple_count(0), k2.tuple_count(0));
    }

    #[test]
    fn product_with_empty_is_empty() {
        let k2 = Structure::clique(2);
        let empty = Structure::new(Vocabulary::graph(), 0);
        let (p, _, _) = product_struct(&k2, &empty).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn coproduct_counts() {
        let k2 = Structure::clique(2);
        let (s, ia, ib) = coproduct_struct(&k2, &k2).unwrap();
        assert_eq!(s.size(), 4);
        assert_eq!(s.tuple_count(0), 4);
        assert_eq!(ia, vec![0, 1]);
        assert_eq!(ib, vec![2, 3]);
        let empty = Structure::new(Vocabulary::graph(), 0);
        let (s2, _, _) = coproduct_struct(&k2, &empty).unwrap();
        assert_eq!(s2, k2);
    }

    #[test]
    fn expand_identity_diagonal() {
        let k2 = Structure::clique(2);
        let e = expand_identity(&k2).unwrap();
        let i_sym = e.vocab().index_of("I").unwrap();
        assert_eq!(e.tuple_count(i_sym), 2);
        assert!(e.holds(i_sym, &[0, 0]));
        assert!(e.holds(i_sym, &[1, 1]));
        // Expanding twice collides on the symbol name.
        assert_eq!(expand_identity(&e).unwrap_err(), Error::SymbolCollision("I".to_string()));
    }

    #[test]
    fn quotient_undoes_expand() {
        let k2 = Structure::clique(2);
        let back = quotient_by_identity(&expand_identity(&k2).unwrap()).unwrap();
        assert_eq!(back.size(), 2);
        assert_eq!(back.tuple_count(0), 2);
    }

    #[test]
    fn quotient_generated_closure() {
        // 3 elements, I = {(0,1)}: two classes.
        let vocab = Vocabulary::graph().with_identity().unwrap();
        let mut s = Structure::new(vocab, 3);
        s.insert(1, vec![0, 1]);
        let q = quotient_by_identity(&s).unwrap();
        assert_eq!(q.size(), 2);
    }

    #[test]
    fn quotient_collapses_edge_to_loop() {
        // K2 with I = {(0,1)}: single element with a loop.
        let k2 = Structure::clique(2);
        let mut e = expand_identity(&k2).unwrap();
        let i_sym = e.vocab().index_of("I").unwrap();
        e.insert(i_sym, vec![0, 1]);
        let q = quotient_by_identity(&e).unwrap();
        assert_eq!(q.size(), 1);
        assert!(q.holds(0, &[0, 0]));
    }
}
