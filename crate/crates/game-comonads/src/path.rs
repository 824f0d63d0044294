//! Paths of a forest-ordered structure and the tree they form.
//!
//! A path embedded in `X` is canonically a down-chain: forest morphisms map
//! the chain below `u` bijectively onto the chain below its image, so every
//! embedded chain is `↓x` for its top element (or the empty subobject). The
//! tree of paths therefore has one node per element plus, outside the modal
//! class, a bottom node for the empty path. A brute-force cross-check of
//! this identification lives in the tests.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::forest::{check_forest_morphism, ForestStructure, Tag};

/// A canonical path of `X`: the empty chain, or the chain below an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathNode {
    Empty,
    Top(usize),
}

/// The tree of paths of one structure, with covering edges
/// `Empty -> roots` and `Top(x) -> Top(child of x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTree {
    pub nodes: Vec<PathNode>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl PathTree {
    pub fn index(&self, n: PathNode) -> usize {
        match (n, self.nodes[0]) {
            (PathNode::Empty, PathNode::Empty) => 0,
            (PathNode::Top(x), PathNode::Empty) => 1 + x,
            (PathNode::Top(x), _) => x,
            (PathNode::Empty, _) => panic!("empty path not present in this tree"),
        }
    }

    pub fn height_of(&self, i: usize) -> usize {
        let mut h = 0;
        let mut cur = Some(i);
        while let Some(c) = cur {
            h += 1;
            cur = self.parent[c];
        }
        h - 1 + usize::from(matches!(self.nodes[0], PathNode::Top(_)))
        // For trees rooted at Empty the root has height 0; for modal trees
        // the root is a one-element chain of height 1.
    }

    /// Nodes above `i` (reflexive up-set).
    pub fn up_set(&self, i: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(n) = stack.pop() {
            if out.insert(n) {
                stack.extend(self.children[n].iter().copied());
            }
        }
        out
    }
}

/// The tree of paths of `X`. Every element contributes its down-chain; the
/// empty path is present except in the modal class, where the least
/// subobject is the root chain.
pub fn path_tree(x: &ForestStructure) -> PathTree {
    let with_empty = x.tag != Tag::Rm;
    let mut nodes = Vec::new();
    if with_empty {
        nodes.push(PathNode::Empty);
    }
    nodes.extend((0..x.size()).map(PathNode::Top));
    let offset = usize::from(with_empty);
    let parent: Vec<Option<usize>> = nodes
        .iter()
        .map(|&n| match n {
            PathNode::Empty => None,
            PathNode::Top(e) => match x.parent[e] {
                Some(p) => Some(offset + p),
                None => with_empty.then_some(0),
            },
        })
        .collect();
    let mut children = vec![Vec::new(); nodes.len()];
    for (i, &p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children[p].push(i);
        }
    }
    let root = if with_empty {
        0
    } else {
        nodes
            .iter()
            .position(|&n| matches!(n, PathNode::Top(e) if x.parent[e].is_none()))
            .expect("modal structures are non-empty trees")
    };
    PathTree { nodes, parent, children, root }
}

/// Height of a path: the cardinality of its chain.
pub fn path_height(x: &ForestStructure, p: PathNode) -> usize {
    match p {
        PathNode::Empty => 0,
        PathNode::Top(e) => x.height_of(e),
    }
}

/// The action of a forest morphism on paths: `Top(x) -> Top(f(x))`, the
/// empty path to the empty path. Returns the map on path-tree indices.
pub fn path_functor_map(map: &[usize], x: &ForestStructure, y: &ForestStructure) -> Result<Vec<usize>> {
    if !check_forest_morphism(map, x, y)? {
        return Err(Error::InvalidInput("not a forest morphism".to_string()));
    }
    let px = path_tree(x);
    let py = path_tree(y);
    Ok(px
        .nodes
        .iter()
        .map(|&n| match n {
            PathNode::Empty => py.root,
            PathNode::Top(e) => py.index(PathNode::Top(map[e])),
        })
        .collect())
}

/// The chain below a path, root-first; empty for the empty path.
pub fn path_chain(x: &ForestStructure, p: PathNode) -> Vec<usize> {
    match p {
        PathNode::Empty => Vec::new(),
        PathNode::Top(e) => x.chain(e),
    }
}

/// Checks the pathwise-embedding property: the restriction of `map` to every
/// down-chain is injective and preserves and reflects all relations (and
/// pebbles are already preserved by any `Rp` morphism).
pub fn is_pathwise_embedding(map: &[usize], x: &ForestStructure, y: &ForestStructure) -> Result<bool> {
    if !check_forest_morphism(map, x, y)? {
        return Err(Error::InvalidInput("not a forest morphism".to_string()));
    }
    for top in 0..x.size() {
        let chain = x.chain(top);
        let image: Vec<usize> = chain.iter().map(|&e| map[e]).collect();
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        if distinct.len() != image.len() {
            return Ok(false);
        }
        for sym in 0..x.base.vocab().len() {
            let arity = x.base.vocab().arity(sym);
            for t in crate::morphism::all_tuples(chain.len(), arity) {
                let src: Vec<usize> = t.iter().map(|&i| chain[i]).collect();
                let img: Vec<usize> = t.iter().map(|&i| image[i]).collect();
                if x.base.holds(sym, &src) != y.base.holds(sym, &img) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Openness of a pathwise embedding: the induced map of path trees sends
/// up-sets onto up-sets. Reports a non-pathwise-embedding input as an error,
/// distinct from a plain `false`.
pub fn is_open(map: &[usize], x: &ForestStructure, y: &ForestStructure) -> Result<bool> {
    if !is_pathwise_embedding(map, x, y)? {
        return Err(Error::NotAPathwiseEmbedding);
    }
    let px = path_tree(x);
    let py = path_tree(y);
    let pf = path_functor_map(map, x, y)?;
    for i in 0..px.nodes.len() {
        let image_of_up: BTreeSet<usize> = px.up_set(i).into_iter().map(|j| pf[j]).collect();
        let up_of_image = py.up_set(pf[i]);
        if image_of_up != up_of_image {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A subobject of a forest structure in canonical form: a down-closed subset
/// of elements, carrying the induced substructure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DownSet(pub BTreeSet<usize>);

impl DownSet {
    pub fn is_down_closed(&self, x: &ForestStructure) -> bool {
        self.0.iter().all(|&e| match x.parent[e] {
            Some(p) => self.0.contains(&p),
            None => true,
        })
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.contains(&e)
    }
}

/// All down-closed subsets of `x` (exponential; for small instances).
pub fn all_down_sets(x: &ForestStructure) -> Vec<DownSet> {
    let n = x.size();
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&e| mask & (1 << e) != 0).collect();
        let d = DownSet(set);
        if d.is_down_closed(x) {
            out.push(d);
        }
    }
    out
}

/// The supremum of a set of paths: the union of their chains. For the modal
/// class the supremum of the empty family is the root chain (the least
/// subobject); elsewhere it is empty.
pub fn sup_paths(x: &ForestStructure, paths: &[PathNode]) -> DownSet {
    let mut set = BTreeSet::new();
    if x.tag == Tag::Rm {
        if let Some(&r) = x.roots().first() {
            set.insert(r);
        }
    }
    for &p in paths {
        set.extend(path_chain(x, p));
    }
    DownSet(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    Image,
    Pullback,
}

/// Transports a subobject along a forest morphism: direct image of the
/// down-set, or (for surjective maps) its preimage.
pub fn transport(map: &[usize], x: &ForestStructure, y: &ForestStructure, d: &DownSet, dir: Transport) -> Result<DownSet> {
    if !check_forest_morphism(map, x, y)? {
        return Err(Error::InvalidInput("not a forest morphism".to_string()));
    }
    match dir {
        Transport::Image => Ok(DownSet(d.0.iter().map(|&e| map[e]).collect())),
        Transport::Pullback => {
            let mut hit = vec![false; y.size()];
            for &v in map {
                hit[v] = true;
            }
            if !hit.into_iter().all(|b| b) {
                return Err(Error::NotSurjective);
            }
            Ok(DownSet((0..x.size()).filter(|&e| d.contains(map[e])).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{Structure, Vocabulary};
    use itertools::Itertools;

    fn re(base: Structure, parent: Vec<Option<usize>>, k: usize) -> ForestStructure {
        ForestStructure::new(base, parent, Some(k), Tag::Re)
    }

    fn two_chain() -> ForestStructure {
        re(Structure::new(Vocabulary::graph(), 2), vec![None, Some(0)], 2)
    }

    #[test]
    fn path_tree_of_chain() {
        let x = two_chain();
        let t = path_tree(&x);
        assert_eq!(t.nodes, vec![PathNode::Empty, PathNode::Top(0), PathNode::Top(1)]);
        assert_eq!(t.parent, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn path_tree_of_two_roots() {
        let x = re(Structure::new(Vocabulary::graph(), 2), vec![None, None], 1);
        let t = path_tree(&x);
        assert_eq!(t.children[0], vec![1, 2]);
    }

    #[test]
    fn path_tree_of_empty_is_single_node() {
        let x = ForestStructure::new(Structure::new(Vocabulary::graph(), 0), vec![], None, Tag::R);
        let t = path_tree(&x);
        assert_eq!(t.nodes, vec![PathNode::Empty]);
    }

    #[test]
    fn path_functor_identity_and_composition() {
        let x = two_chain();
        let id: Vec<usize> = (0..x.size()).collect();
        let pf = path_functor_map(&id, &x, &x).unwrap();
        assert_eq!(pf, vec![0, 1, 2]);
        // P(g . f) = P(g) . P(f) over all composable pairs of small shapes.
        let y = re(Structure::new(Vocabulary::graph(), 3), vec![None, Some(0), Some(0)], 2);
        for f in crate::forest::all_forest_morphisms(&x, &y) {
            for g in crate::forest::all_forest_morphisms(&y, &x) {
                let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                let pf = path_functor_map(&f, &x, &y).unwrap();
                let pg = path_functor_map(&g, &y, &x).unwrap();
                let pgf = path_functor_map(&gf, &x, &x).unwrap();
                let composed: Vec<usize> = pf.iter().map(|&i| pg[i]).collect();
                assert_eq!(pgf, composed);
            }
        }
        // Sibling-collapsing maps merge the corresponding leaf paths.
        let collapse = vec![0, 1, 1];
        let pfc = path_functor_map(&collapse, &y, &y).unwrap();
        assert_eq!(pfc[2], pfc[3]);
    }

    #[test]
    fn path_functor_restricts_to_chain_bijections() {
        // Tree-morphism law: the induced map is a bijection from the chain
        // below m onto the chain below Pf(m).
        let y = re(Structure::new(Vocabulary::graph(), 3), vec![None, Some(0), Some(0)], 2);
        for map in crate::forest::all_forest_morphisms(&y, &y) {
            let px = path_tree(&y);
            let pf = path_functor_map(&map, &y, &y).unwrap();
            for i in 0..px.nodes.len() {
                let down =
                    |t: &PathTree, mut j: usize| -> Vec<usize> {
                        let mut v = vec![j];
                        while let Some(p) = t.parent[j] {
                            v.push(p);
                            j = p;
                        }
                        v
                    };
                let chain_src = down(&px, i);
                let chain_img: BTreeSet<usize> = chain_src.iter().map(|&j| pf[j]).collect();
                let chain_tgt: BTreeSet<usize> = down(&px, pf[i]).into_iter().collect();
                assert_eq!(chain_img, chain_tgt);
                assert_eq!(chain_img.len(), chain_src.len());
            }
        }
    }

    #[test]
    fn pathwise_embedding_accepts_embeddings() {
        let x = two_chain();
        let id: Vec<usize> = (0..2).collect();
        assert!(is_pathwise_embedding(&id, &x, &x).unwrap());
    }

    #[test]
    fn pathwise_embedding_rejects_reflection_failure() {
        // Chain without E into chain with E(u,v): reflection fails.
        let x = two_chain();
        let y = re(Structure::from_edges(2, &[(0, 1)]), vec![None, Some(0)], 2);
        assert!(!is_pathwise_embedding(&[0, 1], &x, &y).unwrap());
    }

    #[test]
    fn open_identity_and_pruned_subtree() {
        let x = two_chain();
        let id: Vec<usize> = (0..2).collect();
        assert!(is_open(&id, &x, &x).unwrap());
        // Leaf-pruned inclusion: one root into a two-chain is not open.
        let one = re(Structure::new(Vocabulary::graph(), 1), vec![None], 2);
        assert!(!is_open(&[0], &one, &x).unwrap());
        // A non-pathwise-embedding input is reported distinctly.
        let y = re(Structure::from_edges(2, &[(0, 1)]), vec![None, Some(0)], 2);
        assert_eq!(is_open(&[0, 1], &x, &y), Err(Error::NotAPathwiseEmbedding));
    }

    #[test]
    fn open_agrees_with_bruteforce_lifting() {
        // Brute-force square check: for all path pairs (m in PX, n in PY)
        // with Pf(m) <= n there must be m' >= m with Pf(m') = n.
        let shapes = [
            re(Structure::new(Vocabulary::graph(), 2), vec![None, Some(0)], 3),
            re(Structure::new(Vocabulary::graph(), 3), vec![None, Some(0), Some(0)], 3),
            re(Structure::from_edges(3, &[(0, 1), (0, 2)]), vec![None, Some(0), Some(1)], 3),
            re(Structure::new(Vocabulary::graph(), 4), vec![None, Some(0), Some(1), Some(0)], 3),
        ];
        for x in &shapes {
            for y in &shapes {
                for map in crate::forest::all_forest_morphisms(x, y) {
                    if !is_pathwise_embedding(&map, x, y).unwrap() {
                        continue;
                    }
                    let px = path_tree(x);
                    let py = path_tree(y);
                    let pf = path_functor_map(&map, x, y).unwrap();
                    let leq = |t: &PathTree, a: usize, b: usize| t.up_set(a).contains(&b);
                    let brute = (0..px.nodes.len()).all(|m| {
                        (0..py.nodes.len()).all(|n| {
                            !leq(&py, pf[m], n)
                                || (0..px.nodes.len())
                                    .any(|m2| leq(&px, m, m2) && pf[m2] == n)
                        })
                    });
                    assert_eq!(is_open(&map, x, y).unwrap(), brute);
                }
            }
        }
    }

    #[test]
    fn sup_paths_cases() {
        let x = two_chain();
        assert_eq!(sup_paths(&x, &[]).0.len(), 0);
        assert_eq!(sup_paths(&x, &[PathNode::Top(1)]).0, BTreeSet::from([0, 1]));
        let all: Vec<PathNode> = (0..2).map(PathNode::Top).collect();
        assert_eq!(sup_paths(&x, &all).0.len(), 2);
        // Modal: empty family yields the root chain.
        let m = {
            let base = Structure::from_edges(2, &[(0, 1)]);
            ForestStructure::new(base, vec![None, Some(0)], Some(2), Tag::Rm)
        };
        assert_eq!(sup_paths(&m, &[]).0, BTreeSet::from([0]));
    }

    #[test]
    fn transport_identity_laws() {
        let x = two_chain();
        let id: Vec<usize> = (0..2).collect();
        for d in all_down_sets(&x) {
            assert_eq!(transport(&id, &x, &x, &d, Transport::Image).unwrap(), d);
            assert_eq!(transport(&id, &x, &x, &d, Transport::Pullback).unwrap(), d);
        }
    }

    #[test]
    fn transport_pullback_requires_surjective() {
        let one = re(Structure::new(Vocabulary::graph(), 1), vec![None], 2);
        let x = two_chain();
        let d = DownSet(BTreeSet::from([0]));
        assert_eq!(
            transport(&[0], &one, &x, &d, Transport::Pullback),
            Err(Error::NotSurjective)
        );
    }

    #[test]
    fn adjunction_image_pullback_small() {
        // For surjective f: image(m) <= n iff m <= pullback(n), and
        // image . pullback = id, over all down-set pairs of small shapes.
        let shapes = [
            re(Structure::new(Vocabulary::graph(), 3), vec![None, Some(0), Some(0)], 3),
            re(Structure::new(Vocabulary::graph(), 3), vec![None, Some(0), Some(1)], 3),
            re(Structure::new(Vocabulary::graph(), 4), vec![None, Some(0), Some(0), Some(1)], 3),
        ];
        for x in &shapes {
            for y in &shapes {
                for map in crate::forest::all_forest_morphisms(x, y) {
                    let mut hit = vec![false; y.size()];
                    for &v in &map {
                        hit[v] = true;
                    }
                    if !hit.iter().all(|&b| b) {
                        continue;
                    }
                    for m in all_down_sets(x) {
                        for n in all_down_sets(y) {
                            let im = transport(&map, x, y, &m, Transport::Image).unwrap();
                            let pb = transport(&map, x, y, &n, Transport::Pullback).unwrap();
                            assert_eq!(im.0.is_subset(&n.0), m.0.is_subset(&pb.0));
                        }
                    }
                    for n in all_down_sets(y) {
                        let pb = transport(&map, x, y, &n, Transport::Pullback).unwrap();
                        let back = transport(&map, x, y, &pb, Transport::Image).unwrap();
                        assert_eq!(back, n);
                    }
                }
            }
        }
    }

    #[test]
    fn path_nodes_match_bruteforce_chain_embeddings() {
        // The canonical representation: distinct images of injective
        // root-preserving covering-chain maps are exactly the down-chains.
        let shapes = [
            re(Structure::from_edges(3, &[(0, 1)]), vec![None, Some(0), Some(0)], 3),
            re(Structure::new(Vocabulary::graph(), 4), vec![None, Some(0), Some(1), Some(0)], 4),
            re(Structure::clique(3), vec![None, Some(0), Some(1)], 3),
        ];
        for x in &shapes {
            let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
            images.insert(vec![]); // the empty chain
            for h in 1..=x.size() {
                for elems in (0..x.size()).permutations(h) {
                    let mut ok = x.parent[elems[0]].is_none();
                    for w in elems.windows(2) {
                        ok = ok && x.parent[w[1]] == Some(w[0]);
                    }
                    if ok {
                        let mut img = elems.clone();
                        img.sort_unstable();
                        images.insert(img);
                    }
                }
            }
            let t = path_tree(x);
            let canonical: BTreeSet<Vec<usize>> = t
                .nodes
                .iter()
                .map(|&n| {
                    let mut c = path_chain(x, n);
                    c.sort_unstable();
                    c
                })
                .collect();
            assert_eq!(images, canonical);
        }
    }

    #[test]
    fn conditions_hereditary_to_down_chains() {
        // Every induced chain of a valid tagged object validates as a path
        // of the same tag.
        use crate::forest::validate_object;
        let base = Structure::graph(3, &[(0, 1), (1, 2)]);
        let x = ForestStructure::new(base, vec![None, Some(0), Some(1)], Some(3), Tag::Re);
        assert!(x.is_valid());
        for top in 0..x.size() {
            let chain = x.chain(top);
            let pos: std::collections::HashMap<usize, usize> =
                chain.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let mut sub = Structure::new(x.base.vocab().clone(), chain.len());
            for sym in 0..x.base.vocab().len() {
                for t in x.base.tuples(sym) {
                    if let Some(t2) = t.iter().map(|e| pos.get(e).copied()).collect::<Option<Vec<_>>>() {
                        sub.insert(sym, t2);
                    }
                }
            }
            let parent = (0..chain.len()).map(|i| i.checked_sub(1)).collect();
            let path = ForestStructure::new(sub, parent, x.bound, x.tag);
            assert!(validate_object(&path).is_empty());
        }
    }
}
