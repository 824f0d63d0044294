//! The Ehrenfeucht-Fraïssé comonad: plays over a structure, with relations
//! holding between prefix-comparable plays whose last moves are related.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::{ForestStructure, Tag};
use crate::morphism::{check_morphism, Morphism, MorphismMode};
use crate::structure::Structure;

/// A non-empty sequence of elements, of length at most the resource bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Play(pub Vec<usize>);

impl Play {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("plays are non-empty")
    }

    pub fn prefix(&self, len: usize) -> Play {
        Play(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Play) -> bool {
        self.len() <= other.len() && self.0[..] == other.0[..self.len()]
    }
}

/// The materialized EF carrier over a structure: all plays of length `<= k`,
/// parent given by dropping the last move, relations interpreted so that
/// condition (E) holds and the counit is a homomorphism: a tuple of plays is
/// related iff the plays are pairwise prefix-comparable and their last moves
/// are related in the origin.
#[derive(Debug, Clone)]
pub struct EfStructure {
    pub origin: Structure,
    pub k: usize,
    pub plays: Vec<Play>,
    pub carrier: ForestStructure,
    index: HashMap<Play, usize>,
}

/// Number of plays: `n + n^2 + ... + n^k`, saturating.
fn play_count(n: usize, k: usize) -> usize {
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..k {
        level = match level.checked_mul(n) {
            Some(v) => v,
            None => return usize::MAX,
        };
        total = match total.checked_add(level) {
            Some(v) => v,
            None => return usize::MAX,
        };
    }
    total
}

pub fn ef_build(a: &Structure, k: usize) -> EfStructure {
    try_ef_build(a, k, usize::MAX).expect("unbounded build cannot exceed the budget")
}

/// Builds the EF carrier, refusing to materialize more than `max_nodes`
/// plays.
pub fn try_ef_build(a: &Structure, k: usize, max_nodes: usize) -> Result<EfStructure> {
    assert!(k >= 1, "resource index must be positive");
    let needed = play_count(a.size(), k);
    if needed > max_nodes {
        return Err(Error::BudgetExceeded { needed, budget: max_nodes });
    }
    // Plays in (length, lexicographic) order, so prefixes precede extensions.
    let mut plays: Vec<Play> = Vec::with_capacity(needed);
    let mut level: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * a.size());
        for s in &level {
            for e in 0..a.size() {
                let mut t = s.clone();
                t.push(e);
                next.push(t);
            }
        }
        plays.extend(next.iter().cloned().map(Play));
        level = next;
    }
    let index: HashMap<Play, usize> =
        plays.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let parent: Vec<Option<usize>> = plays
        .iter()
        .map(|p| (p.len() > 1).then(|| index[&p.prefix(p.len() - 1)]))
        .collect();
    let names = plays
        .iter()
        .map(|p| p.0.iter().map(|&e| a.name(e)).collect::<Vec<_>>().join("."))
        .collect();
    let mut base = Structure::with_names(a.vocab().clone(), names);
    // Related tuples lie on a single chain, so enumerate them per play: the
    // tuples whose maximal component is that play.
    for (i, s) in plays.iter().enumerate() {
        let chain: Vec<usize> = (1..=s.len()).map(|l| index[&s.prefix(l)]).collect();
        for sym in 0..a.vocab().len() {
            let arity = a.vocab().arity(sym);
            for t in crate::morphism::all_tuples(chain.len(), arity) {
                if t.iter().all(|&pos| chain[pos] != i) {
                    continue; // counted at a shorter play
                }
                let lasts: Vec<usize> = t.iter().map(|&pos| plays[chain[pos]].last()).collect();
                if a.holds(sym, &lasts) {
                    base.insert(sym, t.iter().map(|&pos| chain[pos]).collect());
                }
            }
        }
    }
    let carrier = ForestStructure::new(base, parent, Some(k), Tag::Re);
    Ok(EfStructure { origin: a.clone(), k, plays, carrier, index })
}

impl EfStructure {
    pub fn index_of(&self, play: &Play) -> Option<usize> {
        self.index.get(play).copied()
    }

    /// The counit: the last move of a play.
    pub fn counit_of(&self, play: usize) -> usize {
        self.plays[play].last()
    }

    /// The counit as a map of structures, `E_k A -> A`.
    pub fn counit_morphism(&self) -> Morphism {
        Morphism {
            source: self.carrier.base.clone(),
            target: self.origin.clone(),
            map: self.plays.iter().map(|p| p.last()).collect(),
        }
    }

    /// The comultiplication at one play: the sequence of its non-empty
    /// prefixes, as a play over carrier elements.
    pub fn comult_of(&self, play: usize) -> Vec<usize> {
        let p = &self.plays[play];
        (1..=p.len()).map(|l| self.index[&p.prefix(l)]).collect()
    }

    /// The functor action on a map `f : A -> B` of origins, landing in
    /// `other = E_k B`: applies `f` movewise.
    pub fn map_play(&self, other: &EfStructure, f: &[usize], play: usize) -> usize {
        let image = Play(self.plays[play].0.iter().map(|&e| f[e]).collect());
        other.index[&image]
    }
}

/// Verifies the comonad laws elementwise on a small instance: the counit and
/// comultiplication are homomorphisms, both counit laws hold, and
/// comultiplication is coassociative.
pub fn check_ef_comonad_laws(a: &Structure, k: usize, max_nodes: usize) -> Result<bool> {
    let ga = try_ef_build(a, k, max_nodes)?;
    let gga = try_ef_build(&ga.carrier.base, k, max_nodes)?;

    if !check_morphism(&ga.counit_morphism(), MorphismMode::Hom)? {
        return Ok(false);
    }
    let delta: Vec<usize> = (0..ga.plays.len())
        .map(|s| gga.index_of(&Play(ga.comult_of(s))).expect("prefix plays exist"))
        .collect();
    let delta_morphism = Morphism {
        source: ga.carrier.base.clone(),
        target: gga.carrier.base.clone(),
        map: delta.clone(),
    };
    if !check_morphism(&delta_morphism, MorphismMode::Hom)? {
        return Ok(false);
    }
    for s in 0..ga.plays.len() {
        // Counit law 1: the counit of the double carrier picks out s.
        if gga.counit_of(delta[s]) != s {
            return Ok(false);
        }
        // Counit law 2: applying the counit movewise recovers s.
        let inner = &gga.plays[delta[s]];
        let flattened: Vec<usize> = inner.0.iter().map(|&t| ga.counit_of(t)).collect();
        if flattened != ga.plays[s].0 {
            return Ok(false);
        }
        // Coassociativity, compared as nested raw plays.
        let lhs: Vec<Vec<Vec<usize>>> = {
            // delta at GA applied to delta(s): prefixes of the prefix list.
            let prefixes = ga.comult_of(s);
            (1..=prefixes.len())
                .map(|l| prefixes[..l].iter().map(|&t| ga.plays[t].0.clone()).collect())
                .collect()
        };
        let rhs: Vec<Vec<Vec<usize>>> = ga
            .comult_of(s)
            .iter()
            .map(|&t| ga.comult_of(t).iter().map(|&u| ga.plays[u].0.clone()).collect())
            .collect();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
