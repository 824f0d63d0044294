//! The modal comonad: unravelling a pointed structure along its binary
//! ("transition") relations, to traces of at most `k` states.
//!
//! Unary symbols are propositional labels, copied to every trace ending in a
//! labelled state. Symbols of arity three or more are not supported in the
//! modal class.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::{ForestStructure, Tag};
use crate::morphism::{check_morphism, Morphism, MorphismMode};
use crate::structure::{PointedStructure, Structure};

/// A trace: states visited plus the transition label taken at each step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace {
    pub states: Vec<usize>,
    pub labels: Vec<usize>,
}

impl Trace {
    pub fn start(state: usize) -> Trace {
        Trace { states: vec![state], labels: vec![] }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.states.last().expect("traces are non-empty")
    }

    pub fn step(&self, label: usize, state: usize) -> Trace {
        let mut t = self.clone();
        t.states.push(state);
        t.labels.push(label);
        t
    }

    pub fn prefix(&self, len: usize) -> Trace {
        Trace { states: self.states[..len].to_vec(), labels: self.labels[..len - 1].to_vec() }
    }
}

/// The materialized modal carrier: the unravelling of a pointed structure.
#[derive(Debug, Clone)]
pub struct ModalStructure {
    pub origin: PointedStructure,
    pub k: usize,
    pub traces: Vec<Trace>,
    pub carrier: ForestStructure,
    index: HashMap<Trace, usize>,
}

pub fn modal_build(p: &PointedStructure, k: usize) -> Result<ModalStructure> {
    try_modal_build(p, k, usize::MAX)
}

pub fn try_modal_build(p: &PointedStructure, k: usize, max_nodes: usize) -> Result<ModalStructure> {
    assert!(k >= 1, "resource index must be positive");
    let vocab = p.base.vocab();
    if vocab.max_arity() > 2 {
        return Err(Error::InvalidInput(
            "modal unravelling supports unary and binary symbols only".to_string(),
        ));
    }
    let binaries = vocab.binary_symbols();
    let unaries = vocab.unary_symbols();
    // Breadth-first by trace length; within a level, by (parent, label, state).
    let mut traces = vec![Trace::start(p.point)];
    let mut frontier = vec![Trace::start(p.point)];
    for _ in 1..k {
        let mut next = Vec::new();
        for t in &frontier {
            for &sym in &binaries {
                for b in 0..p.base.size() {
                    if p.base.holds(sym, &[t.last(), b]) {
                        next.push(t.step(sym, b));
                    }
                }
            }
        }
        if traces.len() + next.len() > max_nodes {
            return Err(Error::BudgetExceeded {
                needed: traces.len() + next.len(),
                budget: max_nodes,
            });
        }
        traces.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let index: HashMap<Trace, usize> =
        traces.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let parent: Vec<Option<usize>> = traces
        .iter()
        .map(|t| (t.len() > 1).then(|| index[&t.prefix(t.len() - 1)]))
        .collect();
    let names = traces
        .iter()
        .map(|t| {
            let mut s = p.base.name(t.states[0]).to_string();
            for (i, &l) in t.labels.iter().enumerate() {
                s.push('.');
                s.push_str(vocab.name(l));
                s.push('.');
                s.push_str(p.base.name(t.states[i + 1]));
            }
            s
        })
        .collect();
    let mut base = Structure::with_names(vocab.clone(), names);
    for (i, t) in traces.iter().enumerate() {
        for &sym in &unaries {
            if p.base.holds(sym, &[t.last()]) {
                base.insert(sym, vec![i]);
            }
        }
        if t.len() > 1 {
            let par = index[&t.prefix(t.len() - 1)];
            base.insert(*t.labels.last().unwrap(), vec![par, i]);
        }
    }
    let carrier = ForestStructure::new(base, parent, Some(k), Tag::Rm);
    Ok(ModalStructure { origin: p.clone(), k, traces, carrier, index })
}

impl ModalStructure {
    pub fn index_of(&self, t: &Trace) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn root(&self) -> usize {
        self.index[&Trace::start(self.origin.point)]
    }

    /// The counit: the last state of a trace.
    pub fn counit_of(&self, trace: usize) -> usize {
        self.traces[trace].last()
    }

    pub fn counit_morphism(&self) -> Morphism {
        Morphism {
            source: self.carrier.base.clone(),
            target: self.origin.base.clone(),
            map: self.traces.iter().map(|t| t.last()).collect(),
        }
    }

    /// The comultiplication at one trace: the trace of its prefixes, with
    /// the same labels, as a trace over carrier elements.
    pub fn comult_of(&self, trace: usize) -> Trace {
        let t = &self.traces[trace];
        Trace {
            states: (1..=t.len()).map(|l| self.index[&t.prefix(l)]).collect(),
            labels: t.labels.clone(),
        }
    }
}

/// Verifies the comonad laws elementwise on a small pointed instance.
pub fn check_modal_comonad_laws(p: &PointedStructure, k: usize, max_nodes: usize) -> Result<bool> {
    let ga = try_modal_build(p, k, max_nodes)?;
    let carrier_pointed = PointedStructure::new(ga.carrier.base.clone(), ga.root())?;
    let gga = try_modal_build(&carrier_pointed, k, max_nodes)?;

    if !check_morphism(&ga.counit_morphism(), MorphismMode::Hom)? {
        return Ok(false);
    }
    let delta: Vec<usize> = (0..ga.traces.len())
        .map(|t| gga.index_of(&ga.comult_of(t)).expect("prefix traces exist"))
        .collect();
    let delta_morphism = Morphism {
        source: ga.carrier.base.clone(),
        target: gga.carrier.base.clone(),
        map: delta.clone(),
    };
    if !check_morphism(&delta_morphism, MorphismMode::Hom)? {
        return Ok(false);
    }
    if delta[ga.root()] != gga.root() {
        return Ok(false); // comultiplication must preserve the point
    }
    for t in 0..ga.traces.len() {
        if gga.counit_of(delta[t]) != t {
            return Ok(false);
        }
        let inner = &gga.traces[delta[t]];
        let flattened: Vec<usize> = inner.states.iter().map(|&u| ga.counit_of(u)).collect();
        if flattened != ga.traces[t].states || inner.labels != ga.traces[t].labels {
            return Ok(false);
        }
        // Coassociativity: prefixes of the prefix-trace coincide with the
        // comultiplication of each prefix, compared over carrier indices.
        let prefix_trace = ga.comult_of(t);
        let lhs: Vec<Trace> = (1..=prefix_trace.len()).map(|l| prefix_trace.prefix(l)).collect();
        let rhs: Vec<Trace> =
            prefix_trace.states.iter().map(|&u| ga.comult_of(u)).collect();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::validate_object;
    use crate::structure::Vocabulary;

    fn pointed(base: Structure, point: usize) -> PointedStructure {
        PointedStructure::new(base, point).unwrap()
    }

    #[test]
    fn self_loop_unravels_to_chain() {
        let p = pointed(Structure::from_edges(1, &[(0, 0)]), 0);
        let m = modal_build(&p, 3).unwrap();
        assert_eq!(m.traces.len(), 3);
        assert_eq!(m.carrier.height(), 3);
        assert!(validate_object(&m.carrier).is_empty());
    }

    #[test]
    fn two_state_chain_unravels_to_chain() {
        let p = pointed(Structure::from_edges(2, &[(0, 1)]), 0);
        let m = modal_build(&p, 3).unwrap();
        assert_eq!(m.traces.len(), 2);
    }

    #[test]
    fn branching_state_unravels_to_tree() {
        let p = pointed(Structure::from_edges(3, &[(0, 1), (0, 2)]), 0);
        let m = modal_build(&p, 2).unwrap();
        assert_eq!(m.traces.len(), 3);
        assert_eq!(m.carrier.children(m.root()).len(), 2);
    }

    #[test]
    fn arity_three_rejected() {
        let vocab = Vocabulary::new(vec![("T", 3)]).unwrap();
        let p = pointed(Structure::new(vocab, 1), 0);
        assert!(modal_build(&p, 2).is_err());
    }

    #[test]
    fn unary_labels_copied() {
        let vocab = Vocabulary::new(vec![("R", 2), ("P", 1)]).unwrap();
        let mut s = Structure::new(vocab, 2);
        s.insert(0, vec![0, 1]);
        s.insert(1, vec![1]);
        let m = modal_build(&pointed(s, 0), 2).unwrap();
        let leaf = m.index_of(&Trace::start(0).step(0, 1)).unwrap();
        assert!(m.carrier.base.holds(1, &[leaf]));
        assert!(!m.carrier.base.holds(1, &[m.root()]));
    }

    #[test]
    fn modal_laws_small() {
        // Pointed 2-cycle.
        let p = pointed(Structure::from_edges(2, &[(0, 1), (1, 0)]), 0);
        assert!(check_modal_comonad_laws(&p, 2, usize::MAX).unwrap());
        assert!(check_modal_comonad_laws(&p, 3, usize::MAX).unwrap());
    }
}
