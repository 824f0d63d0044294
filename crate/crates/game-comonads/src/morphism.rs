//! Maps between structures: homomorphism and embedding checks, the
//! (surjection, embedding) factorisation, and backtracking witness search.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::{Structure, Vocabulary};

/// A total function between the universes of two structures. Whether it is a
/// homomorphism or an embedding is checked by operations, never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: Structure,
    pub target: Structure,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismMode {
    Hom,
    Embedding,
}

impl Morphism {
    pub fn new(source: Structure, target: Structure, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::InvalidInput("map is not total on the source".to_string()));
        }
        if map.iter().any(|&v| v >= target.size()) {
            return Err(Error::InvalidInput("map value out of target range".to_string()));
        }
        Ok(Morphism { source, target, map })
    }

    pub fn identity(s: &Structure) -> Self {
        Morphism {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.size()).collect(),
        }
    }

    pub fn apply(&self, elem: usize) -> usize {
        self.map[elem]
    }

    /// `g` after `self` (so `self.source -> g.target`).
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        if g.map.len() != self.target.size() {
            return Err(Error::InvalidInput("composition size mismatch".to_string()));
        }
        Morphism::new(
            self.source.clone(),
            g.target.clone(),
            self.map.iter().map(|&x| g.map[x]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

fn preserves(map: &[usize], a: &Structure, b: &Structure) -> bool {
    (0..a.vocab().len()).all(|sym| {
        a.tuples(sym)
            .all(|t| b.holds(sym, &t.iter().map(|&e| map[e]).collect::<Vec<_>>()))
    })
}

fn reflects(map: &[usize], a: &Structure, b: &Structure) -> bool {
    (0..a.vocab().len()).all(|sym| {
        all_tuples(a.size(), a.vocab().arity(sym)).all(|t| {
            let img: Vec<usize> = t.iter().map(|&e| map[e]).collect();
            !b.holds(sym, &img) || a.holds(sym, &t)
        })
    })
}

/// All `arity`-tuples with entries in `0..n`. Arities are positive by the
/// vocabulary invariant.
pub fn all_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    debug_assert!(arity >= 1);
    (0..arity).map(|_| 0..n).multi_cartesian_product()
}

/// Checks whether `f` is a homomorphism, or (mode `Embedding`) an injective
/// homomorphism that also reflects relations.
pub fn check_morphism(f: &Morphism, mode: MorphismMode) -> Result<bool> {
    if f.source.vocab() != f.target.vocab() {
        return Err(Error::VocabMismatch);
    }
    let ok = match mode {
        MorphismMode::Hom => preserves(&f.map, &f.source, &f.target),
        MorphismMode::Embedding => {
            f.is_injective()
                && preserves(&f.map, &f.source, &f.target)
                && reflects(&f.map, &f.source, &f.target)
        }
    };
    Ok(ok)
}

/// Factorises a homomorphism as a surjection onto its image followed by an
/// embedding. The image carries the induced substructure on `f(A)`, which is
/// what makes the second leg reflect relations.
pub fn factorize(f: &Morphism) -> Result<(Morphism, Structure, Morphism)> {
    if !check_morphism(f, MorphismMode::Hom)? {
        return Err(Error::NotAHomomorphism);
    }
    let image: BTreeSet<usize> = f.map.iter().copied().collect();
    let image: Vec<usize> = image.into_iter().collect();
    let index_of: Vec<Option<usize>> = {
        let mut v = vec![None; f.target.size()];
        for (i, &t) in image.iter().enumerate() {
            v[t] = Some(i);
        }
        v
    };
    let names = image.iter().map(|&t| f.target.name(t).to_string()).collect();
    let mut im = Structure::with_names(f.target.vocab().clone(), names);
    for sym in 0..f.target.vocab().len() {
        for t in f.target.tuples(sym) {
            if let Some(t2) = t.iter().map(|&e| index_of[e]).collect::<Option<Vec<_>>>() {
                im.insert(sym, t2);
            }
        }
    }
    let e = Morphism::new(
        f.source.clone(),
        im.clone(),
        f.map.iter().map(|&v| index_of[v].unwrap()).collect(),
    )?;
    let m = Morphism::new(im.clone(), f.target.clone(), image)?;
    Ok((e, im, m))
}

/// Backtracking search for a witness map. Elements are assigned in ascending
/// order and candidate values are tried in ascending order, so the first
/// witness found is deterministic.
fn search_map(
    a: &Structure,
    b: &Structure,
    injective: bool,
    check_partial: impl Fn(&[Option<usize>], usize) -> bool,
    accept: impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    fn go(
        a: &Structure,
        b: &Structure,
        injective: bool,
        check_partial: &impl Fn(&[Option<usize>], usize) -> bool,
        accept: &impl Fn(&[usize]) -> bool,
        partial: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> Option<Vec<usize>> {
        if next == a.size() {
            let full: Vec<usize> = partial.iter().map(|v| v.unwrap()).collect();
            return accept(&full).then_some(full);
        }
        for v in 0..b.size() {
            if injective && used[v] {
                continue;
            }
            partial[next] = Some(v);
            if check_partial(partial, next) {
                used[v] = true;
                if let Some(w) =
                    go(a, b, injective, check_partial, accept, partial, used, next + 1)
                {
                    return Some(w);
                }
                used[v] = false;
            }
            partial[next] = None;
        }
        None
    }
    let mut partial = vec![None; a.size()];
    let mut used = vec![false; b.size()];
    go(a, b, injective, &check_partial, &accept, &mut partial, &mut used, 0)
}

fn partial_preserves(a: &Structure, b: &Structure, partial: &[Option<usize>], last: usize) -> bool {
    (0..a.vocab().len()).all(|sym| {
        a.tuples(sym).all(|t| {
            if !t.contains(&last) {
                return true;
            }
            match t.iter().map(|&e| partial[e]).collect::<Option<Vec<_>>>() {
                Some(img) => b.holds(sym, &img),
                None => true,
            }
        })
    })
}

/// Searches for a homomorphism `A -> B`. Sound by construction and complete:
/// all assignments consistent with the relational constraints are explored.
pub fn hom_search(a: &Structure, b: &Structure) -> Result<Option<Morphism>> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    if a.size() > 0 && b.size() == 0 {
        return Ok(None);
    }
    let map = search_map(
        a,
        b,
        false,
        |partial, last| partial_preserves(a, b, partial, last),
        |_| true,
    );
    Ok(match map {
        Some(map) => Some(Morphism::new(a.clone(), b.clone(), map)?),
        None => None,
    })
}

/// Searches for an isomorphism witness. Quick invariants (sizes, per-symbol
/// tuple counts, degree profiles) prune before the backtracking starts.
pub fn iso_search(a: &Structure, b: &Structure) -> Result<Option<Morphism>> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    for sym in 0..a.vocab().len() {
        if a.tuple_count(sym) != b.tuple_count(sym) {
            return Ok(None);
        }
    }
    let degree_profile = |s: &Structure| {
        let mut prof: Vec<Vec<usize>> = (0..s.size())
            .map(|x| {
                (0..s.vocab().len())
                    .map(|sym| s.tuples(sym).filter(|t| t.contains(&x)).count())
                    .collect()
            })
            .collect();
        prof.sort();
        prof
    };
    if degree_profile(a) != degree_profile(b) {
        return Ok(None);
    }
    let map = search_map(
        a,
        b,
        true,
        |partial, last| partial_preserves(a, b, partial, last),
        |full| {
            let inverse_ok = (0..a.vocab().len()).all(|sym| {
                b.tuples(sym).all(|t| {
                    let pre: Vec<usize> = t
                        .iter()
                        .map(|&v| full.iter().position(|&w| w == v).unwrap())
                        .collect();
                    a.holds(sym, &pre)
                })
            });
            inverse_ok
        },
    );
    Ok(match map {
        Some(map) => Some(Morphism::new(a.clone(), b.clone(), map)?),
        None => None,
    })
}

/// Enumerates every map `A -> B` (exponential; test oracle only).
pub fn all_maps(a: &Structure, b: &Structure) -> Vec<Vec<usize>> {
    if a.size() == 0 {
        return vec![vec![]];
    }
    (0..a.size())
        .map(|_| 0..b.size())
        .multi_cartesian_product()
        .collect()
}

/// Relabels a structure along a permutation of its universe.
pub fn relabel(s: &Structure, perm: &[usize]) -> Structure {
    let mut names = vec![String::new(); s.size()];
    for x in 0..s.size() {
        names[perm[x]] = s.name(x).to_string();
    }
    let mut out = Structure::with_names(s.vocab().clone(), names);
    for sym in 0..s.vocab().len() {
        for t in s.tuples(sym) {
            out.insert(sym, t.iter().map(|&e| perm[e]).collect());
        }
    }
    out
}

/// Canonical form under universe relabelings: the lexicographically least
/// serialization over all permutations. Feasible for tiny structures only.
pub fn canonical_form(s: &Structure) -> Vec<Vec<Vec<usize>>> {
    let n = s.size();
    (0..n)
        .permutations(n)
        .map(|perm| {
            (0..s.vocab().len())
                .map(|sym| {
                    let mut ts: Vec<Vec<usize>> = s
                        .tuples(sym)
                        .map(|t| t.iter().map(|&e| perm[e]).collect())
                        .collect();
                    ts.sort();
                    ts
                })
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_else(|| vec![Vec::new(); s.vocab().len()])
}

pub fn vocab_of(structures: &[&Structure]) -> Result<Vocabulary> {
    let first = structures
        .first()
        .ok_or_else(|| Error::InvalidInput("no structures".to_string()))?;
    for s in structures {
        if s.vocab() != first.vocab() {
            return Err(Error::VocabMismatch);
        }
    }
    Ok(first.vocab().clone())
}
