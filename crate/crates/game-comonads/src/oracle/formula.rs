//! Bounded first-order sentence enumeration, used as a stress oracle: search
//! for a sentence of a given fragment and quantifier rank distinguishing two
//! structures.
//!
//! Enumeration is size-ordered over canonical syntax (variables named by
//! binding depth) and deduplicated semantically against the tested pair:
//! formulas are indexed by their truth tables over assignments of both
//! structures, and only the first formula per table is kept. Since every
//! connective acts on tables, saturation of the table pools proves that no
//! separating sentence of the fragment exists at the given rank, which makes
//! a definite "none" verdict possible; the budget caps the enumeration work
//! otherwise.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::Structure;

/// First-order formulas with variables indexed by binding depth: the
/// quantifier at depth `d` binds variable `d`, displayed as `x{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(usize, Vec<usize>),
    Eq(usize, usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Box<Formula>),
    Forall(Box<Formula>),
    CountAtLeast(usize, Box<Formula>),
}

impl Formula {
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(l, r) | Formula::Or(l, r) => l.quantifier_rank().max(r.quantifier_rank()),
            Formula::Exists(f) | Formula::Forall(f) | Formula::CountAtLeast(_, f) => {
                1 + f.quantifier_rank()
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 1,
            Formula::Not(f) | Formula::Exists(f) | Formula::Forall(f) | Formula::CountAtLeast(_, f) => {
                1 + f.size()
            }
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    fn render(&self, vocab: &crate::structure::Vocabulary, depth: usize) -> String {
        match self {
            Formula::Atom(sym, vars) => format!(
                "{}({})",
                vocab.name(*sym),
                vars.iter().map(|v| format!("x{}", v + 1)).join(",")
            ),
            Formula::Eq(u, v) => format!("x{} = x{}", u + 1, v + 1),
            Formula::Not(f) => format!("~{}", f.render(vocab, depth)),
            Formula::And(l, r) => format!("({} & {})", l.render(vocab, depth), r.render(vocab, depth)),
            Formula::Or(l, r) => format!("({} | {})", l.render(vocab, depth), r.render(vocab, depth)),
            Formula::Exists(f) => format!("exists x{}. {}", depth + 1, f.render(vocab, depth + 1)),
            Formula::Forall(f) => format!("forall x{}. {}", depth + 1, f.render(vocab, depth + 1)),
            Formula::CountAtLeast(i, f) => {
                format!("count>={} x{}. {}", i, depth + 1, f.render(vocab, depth + 1))
            }
        }
    }

    /// Human-readable rendering against a vocabulary.
    pub fn display(&self, vocab: &crate::structure::Vocabulary) -> String {
        self.render(vocab, 0)
    }
}

fn eval(f: &Formula, s: &Structure, env: &mut Vec<usize>) -> bool {
    match f {
        Formula::Atom(sym, vars) => {
            let tuple: Vec<usize> = vars.iter().map(|&v| env[v]).collect();
            s.holds(*sym, &tuple)
        }
        Formula::Eq(u, v) => env[*u] == env[*v],
        Formula::Not(g) => !eval(g, s, env),
        Formula::And(l, r) => eval(l, s, env) && eval(r, s, env),
        Formula::Or(l, r) => eval(l, s, env) || eval(r, s, env),
        Formula::Exists(g) => (0..s.size()).any(|x| {
            env.push(x);
            let v = eval(g, s, env);
            env.pop();
            v
        }),
        Formula::Forall(g) => (0..s.size()).all(|x| {
            env.push(x);
            let v = eval(g, s, env);
            env.pop();
            v
        }),
        Formula::CountAtLeast(i, g) => {
            let count = (0..s.size())
                .filter(|&x| {
                    env.push(x);
                    let v = eval(g, s, env);
                    env.pop();
                    v
                })
                .count();
            count >= *i
        }
    }
}

/// Evaluates a sentence (no free variables).
pub fn eval_sentence(s: &Structure, f: &Formula) -> bool {
    eval(f, s, &mut Vec::new())
}

/// The syntactic fragments the enumerator knows about. Negation is a
/// general connective only in the full and counting fragments; the
/// existential fragment allows it on atoms, the existential-positive
/// fragment not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    Full { equality: bool },
    Existential { equality: bool },
    ExistentialPositive { equality: bool },
    Counting { equality: bool },
}

impl Fragment {
    fn equality(&self) -> bool {
        match *self {
            Fragment::Full { equality }
            | Fragment::Existential { equality }
            | Fragment::ExistentialPositive { equality }
            | Fragment::Counting { equality } => equality,
        }
    }
}

/// Outcome of a separator search.
#[derive(Debug, Clone)]
pub enum SeparatorSearch {
    /// A sentence with different truth values, plus where it holds.
    Found { formula: Formula, holds_in_first: bool, tested: usize },
    /// The table pools saturated: no separating sentence of the fragment
    /// and rank exists for this pair.
    NoneFound { tested: usize },
    /// The enumeration budget ran out before saturation.
    BudgetExceeded { tested: usize },
}

struct Pools {
    /// pools[depth][size-1] = deduplicated (formula, table_a, table_b).
    entries: Vec<Vec<Vec<(Formula, u128, u128)>>>,
    seen: Vec<HashSet<(u128, u128)>>,
}

struct TableCtx {
    na: usize,
    nb: usize,
}

impl TableCtx {
    /// Truth table of an atom at a given depth: one bit per assignment,
    /// assignments indexed little-endian by variable.
    fn atom_tables(&self, s_a: &Structure, s_b: &Structure, f: &Formula, depth: usize) -> (u128, u128) {
        let table = |s: &Structure, n: usize| -> u128 {
            let count = n.pow(depth as u32) as u128;
            let mut bits = 0u128;
            for idx in 0..count {
                let mut env = Vec::with_capacity(depth);
                let mut rest = idx;
                for _ in 0..depth {
                    env.push((rest % n as u128) as usize);
                    rest /= n as u128;
                }
                if eval(f, s, &mut env) {
                    bits |= 1 << idx;
                }
            }
            bits
        };
        (table(s_a, self.na), table(s_b, self.nb))
    }

    /// Projects a depth+1 table down one quantifier.
    fn project(&self, table: u128, n: usize, depth: usize, mode: &QuantMode) -> u128 {
        let outer = n.pow(depth as u32) as u128;
        let mut bits = 0u128;
        for idx in 0..outer {
            let mut count = 0usize;
            for x in 0..n {
                let inner_idx = idx + (x as u128) * outer;
                if table & (1 << inner_idx) != 0 {
                    count += 1;
                }
            }
            let holds = match mode {
                QuantMode::Exists => count >= 1,
                QuantMode::Forall => count == n,
                QuantMode::AtLeast(i) => count >= *i,
            };
            if holds {
                bits |= 1 << idx;
            }
        }
        bits
    }
}

enum QuantMode {
    Exists,
    Forall,
    AtLeast(usize),
}

/// Searches for a sentence of the fragment with quantifier rank at most `k`
/// distinguishing `a` from `b`. The budget counts constructed candidate
/// formulas across all depths.
pub fn enum_formulas_check(
    a: &Structure,
    b: &Structure,
    fragment: Fragment,
    k: usize,
    budget: usize,
) -> Result<SeparatorSearch> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    let (na, nb) = (a.size(), b.size());
    if na.max(1).pow(k as u32) > 128 || nb.max(1).pow(k as u32) > 128 {
        return Err(Error::InvalidInput(
            "enumeration oracle supports only tiny structures at this rank".to_string(),
        ));
    }
    let ctx = TableCtx { na, nb };
    let max_count = na.max(nb);
    let mut pools = Pools {
        entries: vec![Vec::new(); k + 1],
        seen: (0..=k).map(|_| HashSet::new()).collect(),
    };
    let mut tested = 0usize;

    macro_rules! add {
        ($depth:expr, $size:expr, $formula:expr, $ta:expr, $tb:expr, $grew:ident) => {{
            tested += 1;
            if tested > budget {
                return Ok(SeparatorSearch::BudgetExceeded { tested });
            }
            if $depth == 0 && ($ta & 1) != ($tb & 1) {
                return Ok(SeparatorSearch::Found {
                    formula: $formula,
                    holds_in_first: ($ta & 1) != 0,
                    tested,
                });
            }
            if pools.seen[$depth].insert(($ta, $tb)) {
                while pools.entries[$depth].len() < $size {
                    pools.entries[$depth].push(Vec::new());
                }
                pools.entries[$depth][$size - 1].push(($formula, $ta, $tb));
                $grew = true;
            }
        }};
    }

    let mut size = 0usize;
    loop {
        size += 1;
        let mut grew = false;
        for depth in (0..=k).rev() {
            // atoms
            if size == 1 && depth >= 1 {
                for sym in 0..a.vocab().len() {
                    let arity = a.vocab().arity(sym);
                    for vars in (0..arity).map(|_| 0..depth).multi_cartesian_product() {
                        let f = Formula::Atom(sym, vars);
                        let (ta, tb) = ctx.atom_tables(a, b, &f, depth);
                        add!(depth, size, f, ta, tb, grew);
                    }
                }
                if fragment.equality() {
                    for u in 0..depth {
                        for v in (u + 1)..depth {
                            let f = Formula::Eq(u, v);
                            let (ta, tb) = ctx.atom_tables(a, b, &f, depth);
                            add!(depth, size, f, ta, tb, grew);
                        }
                    }
                }
            }
            if size == 1 {
                continue;
            }
            let full = na.pow(depth as u32) as u128;
            let full_b = nb.pow(depth as u32) as u128;
            let mask_a: u128 = if full >= 128 { !0 } else { (1u128 << full) - 1 };
            let mask_b: u128 = if full_b >= 128 { !0 } else { (1u128 << full_b) - 1 };
            // negation
            let negation_allowed = matches!(fragment, Fragment::Full { .. } | Fragment::Counting { .. });
            let literal_negation = matches!(fragment, Fragment::Existential { .. });
            if negation_allowed || literal_negation {
                let inner = pools.entries[depth].get(size - 2).cloned().unwrap_or_default();
                for (f, ta, tb) in inner {
                    if matches!(f, Formula::Not(_)) {
                        continue;
                    }
                    if literal_negation && !matches!(f, Formula::Atom(..) | Formula::Eq(..)) {
                        continue;
                    }
                    let g = Formula::Not(Box::new(f));
                    add!(depth, size, g, !ta & mask_a, !tb & mask_b, grew);
                }
            }
            // conjunction and disjunction
            for left_size in 1..=(size - 2) {
                let right_size = size - 1 - left_size;
                if right_size < 1 {
                    continue;
                }
                let lefts = pools.entries[depth].get(left_size - 1).cloned().unwrap_or_default();
                let rights = pools.entries[depth].get(right_size - 1).cloned().unwrap_or_default();
                for (lf, lta, ltb) in &lefts {
                    if matches!(lf, Formula::And(..)) {
                        continue; // canonical right-nesting
                    }
                    for (rf, rta, rtb) in &rights {
                        let g = Formula::And(Box::new(lf.clone()), Box::new(rf.clone()));
                        add!(depth, size, g, lta & rta, ltb & rtb, grew);
                    }
                }
                for (lf, lta, ltb) in &lefts {
                    if matches!(lf, Formula::Or(..)) {
                        continue;
                    }
                    for (rf, rta, rtb) in &rights {
                        let g = Formula::Or(Box::new(lf.clone()), Box::new(rf.clone()));
                        add!(depth, size, g, lta | rta, ltb | rtb, grew);
                    }
                }
            }
            // quantifiers pull from one depth further down
            if depth < k {
                let inner = pools.entries[depth + 1].get(size - 2).cloned().unwrap_or_default();
                for (f, ta, tb) in inner {
                    let ge = Formula::Exists(Box::new(f.clone()));
                    let pa = ctx.project(ta, na, depth, &QuantMode::Exists);
                    let pb = ctx.project(tb, nb, depth, &QuantMode::Exists);
                    add!(depth, size, ge, pa, pb, grew);
                    if matches!(fragment, Fragment::Full { .. } | Fragment::Counting { .. }) {
                        let gf = Formula::Forall(Box::new(f.clone()));
                        let pa = ctx.project(ta, na, depth, &QuantMode::Forall);
                        let pb = ctx.project(tb, nb, depth, &QuantMode::Forall);
                        add!(depth, size, gf, pa, pb, grew);
                    }
                    if matches!(fragment, Fragment::Counting { .. }) {
                        for i in 2..=max_count {
                            let gc = Formula::CountAtLeast(i, Box::new(f.clone()));
                            let pa = ctx.project(ta, na, depth, &QuantMode::AtLeast(i));
                            let pb = ctx.project(tb, nb, depth, &QuantMode::AtLeast(i));
                            add!(depth, size, gc, pa, pb, grew);
                        }
                    }
                }
            }
        }
        if !grew {
            // No connective saw a new table anywhere: the pools are closed,
            // so every sentence of the fragment is table-equivalent to an
            // enumerated one and none separates.
            return Ok(SeparatorSearch::NoneFound { tested });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{classical_rank_relation, OracleFlavor};
    use crate::structure::Vocabulary;

    #[test]
    fn no_separator_for_identical() {
        let k2 = Structure::clique(2);
        let r = enum_formulas_check(&k2, &k2, Fragment::Full { equality: true }, 2, 100_000).unwrap();
        assert!(matches!(r, SeparatorSearch::NoneFound { .. }));
    }

    #[test]
    fn k2_k3_separated_with_equality_rank3() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let r = enum_formulas_check(&k2, &k3, Fragment::Full { equality: true }, 3, 2_000_000).unwrap();
        match r {
            SeparatorSearch::Found { formula, holds_in_first, .. } => {
                assert_eq!(eval_sentence(&k2, &formula), holds_in_first);
                assert_eq!(eval_sentence(&k3, &formula), !holds_in_first);
                assert!(formula.quantifier_rank() <= 3);
            }
            other => panic!("expected separator, got {other:?}"),
        }
    }

    #[test]
    fn k2_k3_equality_free_rank1_none() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let r = enum_formulas_check(&k2, &k3, Fragment::Full { equality: false }, 1, 100_000).unwrap();
        assert!(matches!(r, SeparatorSearch::NoneFound { .. }));
        assert!(classical_rank_relation(&k2, &k3, 1, OracleFlavor::BackForth, false));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let r = enum_formulas_check(&k2, &k3, Fragment::Full { equality: true }, 3, 10).unwrap();
        assert!(matches!(r, SeparatorSearch::BudgetExceeded { .. }));
    }

    #[test]
    fn self_consistency_with_rank_oracle() {
        // Separator found iff the classical recursion reports inequivalence,
        // over small pairs and both the equality and equality-free fragments.
        let pool = [
            Structure::new(Vocabulary::graph(), 1),
            Structure::new(Vocabulary::graph(), 2),
            Structure::clique(2),
            Structure::from_edges(2, &[(0, 1)]),
            Structure::from_edges(1, &[(0, 0)]),
        ];
        for a in &pool {
            for b in &pool {
                for k in 0..=2 {
                    for eq in [false, true] {
                        let classical =
                            classical_rank_relation(a, b, k, OracleFlavor::BackForth, eq);
                        let search =
                            enum_formulas_check(a, b, Fragment::Full { equality: eq }, k, 5_000_000)
                                .unwrap();
                        match search {
                            SeparatorSearch::Found { formula, holds_in_first, .. } => {
                                assert!(!classical, "separator on equivalent pair: {}", formula.display(a.vocab()));
                                assert_eq!(eval_sentence(a, &formula), holds_in_first);
                                assert_eq!(eval_sentence(b, &formula), !holds_in_first);
                            }
                            SeparatorSearch::NoneFound { .. } => assert!(classical),
                            SeparatorSearch::BudgetExceeded { tested } => {
                                panic!("budget exceeded after {tested}")
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn existential_positive_oriented() {
        // An EP sentence true in K2 must stay true in K3 (hom K2 -> K3),
        // so no EP separator can hold in K2 and fail in K3; but one holds in
        // K3 and fails in K2 at rank 3 without equality... it does not:
        // K3 -> K2 has no hom, and indeed a triangle sentence separates.
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let r = enum_formulas_check(&k3, &k2, Fragment::ExistentialPositive { equality: false }, 3, 5_000_000)
            .unwrap();
        match r {
            SeparatorSearch::Found { formula, holds_in_first, .. } => {
                assert!(holds_in_first, "EP separator must hold in the triangle side");
                assert!(eval_sentence(&k3, &formula));
                assert!(!eval_sentence(&k2, &formula));
            }
            other => panic!("expected EP separator, got {other:?}"),
        }
    }

    #[test]
    fn counting_fragment_separates_sizes_at_rank1() {
        let two = Structure::new(Vocabulary::graph(), 2);
        let three = Structure::new(Vocabulary::graph(), 3);
        // Plain FO without equality cannot separate bare sets, counting can.
        let plain = enum_formulas_check(&two, &three, Fragment::Full { equality: false }, 2, 100_000).unwrap();
        assert!(matches!(plain, SeparatorSearch::NoneFound { .. }));
        let counting =
            enum_formulas_check(&two, &three, Fragment::Counting { equality: false }, 1, 100_000).unwrap();
        assert!(matches!(counting, SeparatorSearch::Found { .. }));
    }

    #[test]
    fn rendering_is_readable() {
        let f = Formula::Exists(Box::new(Formula::Not(Box::new(Formula::Atom(0, vec![0, 0])))));
        assert_eq!(f.display(&Vocabulary::graph()), "exists x1. ~E(x1,x1)");
    }
}
