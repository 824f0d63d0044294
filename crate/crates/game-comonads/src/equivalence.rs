//! The resource-indexed relations between structures induced by the EF,
//! pebbling, and modal covers: the morphism preorder, homomorphism
//! equivalence, strong equivalence, bisimilarity, and isomorphism, each with
//! an optional equality expansion.
//!
//! EF and modal queries materialize the carriers and play the abstract game
//! on them. Pebbling queries never materialize a carrier (it is infinite):
//! the abstract game on pebbling carriers restricts to the classical
//! k-pebble game, so they are decided on the finite quotient by placements:
//! positions are pairs of partial placements `[k] ⇀ A`, `[k] ⇀ B` with equal
//! defined sets, a round relocates one pebble on the Spoiler side and the
//! same pebble on the Duplicator side, and Duplicator's region is the
//! greatest fixpoint over this finite position space.

use crate::comonad::{ef_build, modal_build, try_ef_build, try_modal_build};
use crate::error::{Error, Result};
use crate::forest::forest_iso;
use crate::game::{greatest_winning_region, solve_game, GameGraph, Variant};
use crate::morphism::hom_search;
use crate::structure::{expand_identity, PointedStructure, Structure};

/// Default cap on materialized carrier nodes and placement-game positions.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameComonad {
    Ef,
    Pebble,
    Modal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// A morphism `R_k a -> R_k b` exists (a preorder, not symmetric).
    Arrow,
    /// Morphisms exist in both directions.
    HomEq,
    /// Pathwise embeddings exist in both directions.
    StrongEq,
    /// A bisimulation exists between the covers.
    Bisim,
    /// The covers are isomorphic.
    Iso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationQuery {
    pub comonad: GameComonad,
    pub k: usize,
    pub flavor: Flavor,
    pub with_equality: bool,
    pub budget: usize,
}

impl RelationQuery {
    pub fn new(comonad: GameComonad, k: usize, flavor: Flavor) -> Self {
        RelationQuery { comonad, k, flavor, with_equality: false, budget: DEFAULT_BUDGET }
    }

    pub fn with_equality(mut self) -> Self {
        self.with_equality = true;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// Decides the queried relation between two structures (EF or pebbling).
pub fn relate(a: &Structure, b: &Structure, q: &RelationQuery) -> Result<bool> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    if q.comonad == GameComonad::Modal {
        return Err(Error::InvalidInput("modal queries take pointed structures".to_string()));
    }
    if q.with_equality {
        let (ea, eb) = (expand_identity(a)?, expand_identity(b)?);
        let plain = RelationQuery { with_equality: false, ..*q };
        return relate(&ea, &eb, &plain);
    }
    match q.comonad {
        GameComonad::Ef => {
            let ca = try_ef_build(a, q.k, q.budget)?;
            let cb = try_ef_build(b, q.k, q.budget)?;
            match q.flavor {
                Flavor::Arrow => {
                    Ok(solve_game(&ca.carrier, &cb.carrier, Variant::ExistentialPositive)?
                        .duplicator_wins)
                }
                Flavor::HomEq => Ok(solve_game(&ca.carrier, &cb.carrier, Variant::ExistentialPositive)?
                    .duplicator_wins
                    && solve_game(&cb.carrier, &ca.carrier, Variant::ExistentialPositive)?
                        .duplicator_wins),
                Flavor::StrongEq => Ok(solve_game(&ca.carrier, &cb.carrier, Variant::Existential)?
                    .duplicator_wins
                    && solve_game(&cb.carrier, &ca.carrier, Variant::Existential)?.duplicator_wins),
                Flavor::Bisim => {
                    Ok(solve_game(&ca.carrier, &cb.carrier, Variant::Full)?.duplicator_wins)
                }
                Flavor::Iso => Ok(forest_iso(&ca.carrier, &cb.carrier).is_some()),
            }
        }
        GameComonad::Pebble => match q.flavor {
            Flavor::Iso => Err(Error::UnsupportedQuery(
                "isomorphism of pebbling covers is not decided (infinite carrier)".to_string(),
            )),
            Flavor::Arrow => {
                Ok(solve_pebble_game(a, b, q.k, Variant::ExistentialPositive, q.budget)?
                    .duplicator_wins)
            }
            Flavor::HomEq => {
                Ok(solve_pebble_game(a, b, q.k, Variant::ExistentialPositive, q.budget)?
                    .duplicator_wins
                    && solve_pebble_game(b, a, q.k, Variant::ExistentialPositive, q.budget)?
                        .duplicator_wins)
            }
            Flavor::StrongEq => {
                Ok(solve_pebble_game(a, b, q.k, Variant::Existential, q.budget)?.duplicator_wins
                    && solve_pebble_game(b, a, q.k, Variant::Existential, q.budget)?
                        .duplicator_wins)
            }
            Flavor::Bisim => {
                Ok(solve_pebble_game(a, b, q.k, Variant::Full, q.budget)?.duplicator_wins)
            }
        },
        GameComonad::Modal => unreachable!(),
    }
}

/// Decides the queried relation between two pointed structures (modal).
pub fn relate_pointed(a: &PointedStructure, b: &PointedStructure, q: &RelationQuery) -> Result<bool> {
    if a.base.vocab() != b.base.vocab() {
        return Err(Error::VocabMismatch);
    }
    if q.comonad != GameComonad::Modal {
        return Err(Error::InvalidInput("pointed queries are modal".to_string()));
    }
    if q.with_equality {
        let ea = PointedStructure::new(expand_identity(&a.base)?, a.point)?;
        let eb = PointedStructure::new(expand_identity(&b.base)?, b.point)?;
        let plain = RelationQuery { with_equality: false, ..*q };
        return relate_pointed(&ea, &eb, &plain);
    }
    let ca = try_modal_build(a, q.k, q.budget)?;
    let cb = try_modal_build(b, q.k, q.budget)?;
    match q.flavor {
        Flavor::Arrow => {
            Ok(solve_game(&ca.carrier, &cb.carrier, Variant::ExistentialPositive)?.duplicator_wins)
        }
        Flavor::HomEq => Ok(solve_game(&ca.carrier, &cb.carrier, Variant::ExistentialPositive)?
            .duplicator_wins
            && solve_game(&cb.carrier, &ca.carrier, Variant::ExistentialPositive)?.duplicator_wins),
        Flavor::StrongEq => Ok(solve_game(&ca.carrier, &cb.carrier, Variant::Existential)?
            .duplicator_wins
            && solve_game(&cb.carrier, &ca.carrier, Variant::Existential)?.duplicator_wins),
        Flavor::Bisim => Ok(solve_game(&ca.carrier, &cb.carrier, Variant::Full)?.duplicator_wins),
        Flavor::Iso => Ok(forest_iso(&ca.carrier, &cb.carrier).is_some()),
    }
}

/// Outcome of the placement game, with region statistics for reports.
#[derive(Debug, Clone)]
pub struct PebbleOutcome {
    pub duplicator_wins: bool,
    pub winning_positions: usize,
    pub total_positions: usize,
}

/// Partial placements of `k` pebbles on a universe of size `n`, encoded in
/// radix `n + 1` (digit 0 = unplaced).
fn decode_placement(mut code: usize, k: usize, n: usize) -> Vec<Option<usize>> {
    let mut f = vec![None; k];
    for slot in f.iter_mut() {
        let d = code % (n + 1);
        code /= n + 1;
        if d > 0 {
            *slot = Some(d - 1);
        }
    }
    f
}

fn place(code: usize, slot: usize, elem: usize, n: usize) -> usize {
    let digit = (n + 1).pow(slot as u32);
    let old = (code / digit) % (n + 1);
    code - old * digit + (elem + 1) * digit
}

/// The pebble placement game. Positions pair a placement over `A` with a
/// placement over `B` having the same defined pebbles; the winning condition
/// compares relations index-wise over the placed pebbles. Duplicator wins
/// iff the empty position survives the greatest fixpoint.
pub fn solve_pebble_game(
    a: &Structure,
    b: &Structure,
    k: usize,
    variant: Variant,
    budget: usize,
) -> Result<PebbleOutcome> {
    assert!(k >= 1, "at least one pebble");
    let (na, nb) = (a.size(), b.size());
    let total = (na + 1)
        .checked_pow(k as u32)
        .and_then(|pa| (nb + 1).checked_pow(k as u32).and_then(|pb| pa.checked_mul(pb)))
        .unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let g = build_pebble_graph(a, b, k, variant);
    let alive = greatest_winning_region(&g);
    Ok(PebbleOutcome {
        duplicator_wins: alive[0],
        winning_positions: alive.iter().filter(|&&w| w).count(),
        total_positions: total,
    })
}

/// A deterministic transcript of the placement game from the empty position.
pub fn trace_pebble_game(
    a: &Structure,
    b: &Structure,
    k: usize,
    variant: Variant,
    budget: usize,
) -> Result<String> {
    let (na, nb) = (a.size(), b.size());
    let pb_count = (nb + 1).pow(k as u32);
    let idx = |pa: usize, pb: usize| pa * pb_count + pb;
    let outcome = solve_pebble_game(a, b, k, variant, budget)?;
    let alive = greatest_winning_region(&build_pebble_graph(a, b, k, variant));
    let show = |code: usize, n: usize, s: &Structure| -> String {
        let f = decode_placement(code, k, n);
        let parts: Vec<String> = f
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|e| format!("{}:{}", i + 1, s.name(e))))
            .collect();
        format!("{{{}}}", parts.join(","))
    };
    let mut out = String::new();
    let (mut pa, mut pb) = (0usize, 0usize);
    out.push_str(&format!(
        "round 0: position ({}, {}) -- duplicator {}\n",
        show(pa, na, a),
        show(pb, nb, b),
        if outcome.duplicator_wins { "wins" } else { "loses" }
    ));
    for round in 1..=(2 * k).max(4) {
        if alive[idx(pa, pb)] {
            // First Spoiler move, first surviving reply.
            let mut played = false;
            'outer: for slot in 0..k {
                for x in 0..na {
                    let pa2 = place(pa, slot, x, na);
                    if let Some(y) = (0..nb).find(|&y| alive[idx(pa2, place(pb, slot, y, nb))]) {
                        let pb2 = place(pb, slot, y, nb);
                        out.push_str(&format!(
                            "round {round}: Spoiler puts pebble {} on left {}; Duplicator answers {} -- position ({}, {})\n",
                            slot + 1,
                            a.name(x),
                            b.name(y),
                            show(pa2, na, a),
                            show(pb2, nb, b),
                        ));
                        pa = pa2;
                        pb = pb2;
                        played = true;
                        break 'outer;
                    }
                }
            }
            if !played {
                out.push_str("no moves available; duplicator survives\n");
                break;
            }
        } else {
            // Find a refuting Spoiler move.
            let mut refuted = false;
            'refute: for slot in 0..k {
                for x in 0..na {
                    let pa2 = place(pa, slot, x, na);
                    if !(0..nb).any(|y| alive[idx(pa2, place(pb, slot, y, nb))]) {
                        out.push_str(&format!(
                            "round {round}: Spoiler puts pebble {} on left {}; no winning reply exists\n",
                            slot + 1,
                            a.name(x)
                        ));
                        refuted = true;
                        break 'refute;
                    }
                }
                if variant == Variant::Full {
                    for y in 0..nb {
                        let pb2 = place(pb, slot, y, nb);
                        if !(0..na).any(|x| alive[idx(place(pa, slot, x, na), pb2)]) {
                            out.push_str(&format!(
                                "round {round}: Spoiler puts pebble {} on right {}; no winning reply exists\n",
                                slot + 1,
                                b.name(y)
                            ));
                            refuted = true;
                            break 'refute;
                        }
                    }
                }
            }
            if !refuted {
                out.push_str("position lost by the winning condition\n");
            }
            break;
        }
    }
    Ok(out)
}

fn build_pebble_graph(a: &Structure, b: &Structure, k: usize, variant: Variant) -> GameGraph {
    // Shared with solve_pebble_game in structure; rebuilt here for traces.
    let (na, nb) = (a.size(), b.size());
    let pa_count = (na + 1).pow(k as u32);
    let pb_count = (nb + 1).pow(k as u32);
    let idx = |pa: usize, pb: usize| pa * pb_count + pb;
    let preserve_only = variant == Variant::ExistentialPositive;
    let total = pa_count * pb_count;
    let mut condition = vec![false; total];
    let mut moves: Vec<Vec<Vec<usize>>> = vec![Vec::new(); total];
    for pa in 0..pa_count {
        let f = decode_placement(pa, k, na);
        for pb in 0..pb_count {
            let g = decode_placement(pb, k, nb);
            let p = idx(pa, pb);
            if f.iter().zip(g.iter()).any(|(x, y)| x.is_some() != y.is_some()) {
                continue;
            }
            condition[p] = {
                let mut ok = true;
                'check: for sym in 0..a.vocab().len() {
                    let arity = a.vocab().arity(sym);
                    let placed: Vec<usize> = (0..k).filter(|&s| f[s].is_some()).collect();
                    if placed.is_empty() {
                        continue;
                    }
                    for slots in crate::morphism::all_tuples(placed.len(), arity) {
                        let ta: Vec<usize> = slots.iter().map(|&i| f[placed[i]].unwrap()).collect();
                        let tb: Vec<usize> = slots.iter().map(|&i| g[placed[i]].unwrap()).collect();
                        let (ha, hb) = (a.holds(sym, &ta), b.holds(sym, &tb));
                        if if preserve_only { ha && !hb } else { ha != hb } {
                            ok = false;
                            break 'check;
                        }
                    }
                }
                ok
            };
            let mut ms = Vec::new();
            for slot in 0..k {
                for x in 0..na {
                    let pa2 = place(pa, slot, x, na);
                    ms.push((0..nb).map(|y| idx(pa2, place(pb, slot, y, nb))).collect());
                }
                if variant == Variant::Full {
                    for y in 0..nb {
                        let pb2 = place(pb, slot, y, nb);
                        ms.push((0..na).map(|x| idx(place(pa, slot, x, na), pb2)).collect());
                    }
                }
            }
            moves[p] = ms;
        }
    }
    GameGraph { condition, moves }
}

/// The co-Kleisli reading of the EF morphism preorder: a homomorphism from
/// the carrier of `E_k A`, read as a plain structure, into `B`.
pub fn arrow_via_cokleisli(a: &Structure, b: &Structure, k: usize) -> Result<bool> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabMismatch);
    }
    let carrier = ef_build(a, k);
    Ok(hom_search(&carrier.carrier.base, b)?.is_some())
}

/// Verifies, on one instance, that (a) a structure is homomorphism
/// equivalent at level `k` to its own EF carrier (witnessed explicitly by
/// the comultiplication and the mapped counit), and (b) the existence of a
/// homomorphism `A -> B` implies the level-`k` morphism preorder.
pub fn lemma_properties_check(a: &Structure, b: Option<&Structure>, k: usize) -> Result<bool> {
    let ga = ef_build(a, k);
    let gga = ef_build(&ga.carrier.base, k);
    // delta : R_k a -> R_k (G_k a)
    let delta: Vec<usize> = (0..ga.plays.len())
        .map(|s| gga.index_of(&crate::comonad::Play(ga.comult_of(s))).expect("prefixes exist"))
        .collect();
    if !crate::forest::check_forest_morphism(&delta, &ga.carrier, &gga.carrier)? {
        return Ok(false);
    }
    // mapped counit : R_k (G_k a) -> R_k a
    let geps: Vec<usize> = (0..gga.plays.len())
        .map(|s| {
            let inner: Vec<usize> =
                gga.plays[s].0.iter().map(|&t| ga.counit_of(t)).collect();
            ga.index_of(&crate::comonad::Play(inner)).expect("flattened plays exist")
        })
        .collect();
    if !crate::forest::check_forest_morphism(&geps, &gga.carrier, &ga.carrier)? {
        return Ok(false);
    }
    // The games must agree that A and its carrier are hom-equivalent.
    let q = RelationQuery::new(GameComonad::Ef, k, Flavor::HomEq);
    if !relate(a, &ga.carrier.base, &q)? {
        return Ok(false);
    }
    if let Some(b) = b {
        if hom_search(a, b)?.is_some() {
            let arrow = RelationQuery::new(GameComonad::Ef, k, Flavor::Arrow);
            if !relate(a, b, &arrow)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Modal counterpart of [`lemma_properties_check`].
pub fn lemma_properties_check_modal(
    p: &PointedStructure,
    q: Option<&PointedStructure>,
    k: usize,
) -> Result<bool> {
    let ga = modal_build(p, k)?;
    let carrier_pointed = PointedStructure::new(ga.carrier.base.clone(), ga.root())?;
    let gga = modal_build(&carrier_pointed, k)?;
    let delta: Vec<usize> = (0..ga.traces.len())
        .map(|t| gga.index_of(&ga.comult_of(t)).expect("prefixes exist"))
        .collect();
    if !crate::forest::check_forest_morphism(&delta, &ga.carrier, &gga.carrier)? {
        return Ok(false);
    }
    let geps: Vec<usize> = (0..gga.traces.len())
        .map(|s| {
            let inner = crate::comonad::Trace {
                states: gga.traces[s].states.iter().map(|&u| ga.counit_of(u)).collect(),
                labels: gga.traces[s].labels.clone(),
            };
            ga.index_of(&inner).expect("flattened traces exist")
        })
        .collect();
    if !crate::forest::check_forest_morphism(&geps, &gga.carrier, &ga.carrier)? {
        return Ok(false);
    }
    let query = RelationQuery::new(GameComonad::Modal, k, Flavor::HomEq);
    if !relate_pointed(p, &carrier_pointed, &query)? {
        return Ok(false);
    }
    if let Some(qs) = q {
        if hom_search(&p.base, &qs.base)?.is_some_and(|f| f.apply(p.point) == qs.point) {
            let arrow = RelationQuery::new(GameComonad::Modal, k, Flavor::Arrow);
            if !relate_pointed(p, qs, &arrow)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{classical_pebble_relation, classical_rank_relation, OracleFlavor};
    use crate::structure::Vocabulary;

    #[test]
    fn reflexivity_all_supported_queries() {
        let k2 = Structure::clique(2);
        for comonad in [GameComonad::Ef, GameComonad::Pebble] {
            for flavor in [Flavor::Arrow, Flavor::HomEq, Flavor::StrongEq, Flavor::Bisim, Flavor::Iso] {
                if comonad == GameComonad::Pebble && flavor == Flavor::Iso {
                    continue;
                }
                for eq in [false, true] {
                    let mut q = RelationQuery::new(comonad, 2, flavor);
                    if eq {
                        q = q.with_equality();
                    }
                    assert!(relate(&k2, &k2, &q).unwrap(), "{comonad:?} {flavor:?} eq={eq}");
                }
            }
        }
    }

    #[test]
    fn relation_free_structures_bisimilar_without_equality() {
        let two = Structure::new(Vocabulary::graph(), 2);
        let one = Structure::new(Vocabulary::graph(), 1);
        let q = RelationQuery::new(GameComonad::Ef, 3, Flavor::Bisim);
        assert!(relate(&two, &one, &q).unwrap());
        assert!(classical_rank_relation(&two, &one, 3, OracleFlavor::BackForth, false));
    }

    #[test]
    fn k2_k3_with_equality_not_bisimilar() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let q = RelationQuery::new(GameComonad::Ef, 3, Flavor::Bisim).with_equality();
        assert!(!relate(&k2, &k3, &q).unwrap());
        assert!(!classical_rank_relation(&k2, &k3, 3, OracleFlavor::BackForth, true));
    }

    #[test]
    fn pebble_iso_unsupported() {
        let k2 = Structure::clique(2);
        let q = RelationQuery::new(GameComonad::Pebble, 2, Flavor::Iso);
        assert!(matches!(relate(&k2, &k2, &q), Err(Error::UnsupportedQuery(_))));
    }

    #[test]
    fn pebble_game_matches_oracle_spots() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        // Hom-preorder at 2 pebbles agrees with the oracle.
        let q = RelationQuery::new(GameComonad::Pebble, 2, Flavor::Arrow);
        assert_eq!(
            relate(&k3, &k2, &q).unwrap(),
            classical_pebble_relation(&k3, &k2, 2, OracleFlavor::ForthPositive)
        );
        let q3 = RelationQuery::new(GameComonad::Pebble, 3, Flavor::Arrow);
        assert!(!relate(&k3, &k2, &q3).unwrap());
        // Bisim flavor against the backforth oracle on cycles.
        let (c3, c4) = (Structure::cycle(3), Structure::cycle(4));
        for k in 2..=3 {
            let q = RelationQuery::new(GameComonad::Pebble, k, Flavor::Bisim);
            assert_eq!(
                relate(&c3, &c4, &q).unwrap(),
                classical_pebble_relation(&c3, &c4, k, OracleFlavor::BackForth),
                "k={k}"
            );
        }
    }

    #[test]
    fn modal_bisim_matches_oracle_spots() {
        let loop1 = PointedStructure::new(Structure::from_edges(1, &[(0, 0)]), 0).unwrap();
        let chain2 = PointedStructure::new(Structure::from_edges(2, &[(0, 1)]), 0).unwrap();
        for k in 1..=3 {
            let q = RelationQuery::new(GameComonad::Modal, k, Flavor::Bisim);
            assert_eq!(
                relate_pointed(&loop1, &chain2, &q).unwrap(),
                crate::oracle::classical_modal_bisim(&loop1, &chain2, k).unwrap(),
                "k={k}"
            );
        }
    }

    #[test]
    fn cokleisli_agrees_with_arrow() {
        let pool = [
            Structure::clique(2),
            Structure::clique(3),
            Structure::new(Vocabulary::graph(), 1),
            Structure::path(3),
        ];
        for a in &pool {
            for b in &pool {
                for k in 1..=2 {
                    let q = RelationQuery::new(GameComonad::Ef, k, Flavor::Arrow);
                    assert_eq!(
                        arrow_via_cokleisli(a, b, k).unwrap(),
                        relate(a, b, &q).unwrap(),
                        "k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn lemma_items_hold_small() {
        let l1 = Structure::new(Vocabulary::graph(), 1);
        assert!(lemma_properties_check(&l1, None, 1).unwrap());
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        assert!(lemma_properties_check(&k2, Some(&k3), 2).unwrap());
        let p = PointedStructure::new(Structure::from_edges(2, &[(0, 1)]), 0).unwrap();
        assert!(lemma_properties_check_modal(&p, Some(&p), 2).unwrap());
    }

    #[test]
    fn implication_chain_small() {
        // iso => bisim => strong_eq => hom_eq on a small pool.
        let pool = [
            Structure::new(Vocabulary::graph(), 2),
            Structure::clique(2),
            Structure::from_edges(2, &[(0, 1)]),
            Structure::from_edges(1, &[(0, 0)]),
        ];
        for a in &pool {
            for b in &pool {
                for k in 1..=3 {
                    let get = |flavor| {
                        relate(a, b, &RelationQuery::new(GameComonad::Ef, k, flavor)).unwrap()
                    };
                    let (iso, bisim, strong, hom) =
                        (get(Flavor::Iso), get(Flavor::Bisim), get(Flavor::StrongEq), get(Flavor::HomEq));
                    assert!(!iso || bisim);
                    assert!(!bisim || strong);
                    assert!(!strong || hom);
                }
            }
        }
    }

    #[test]
    fn budget_guard_on_pebble_positions() {
        let k3 = Structure::clique(3);
        let q = RelationQuery::new(GameComonad::Pebble, 3, Flavor::Bisim).budget(10);
        assert!(matches!(relate(&k3, &k3, &q), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn pebble_trace_renders() {
        let (k2, k3) = (Structure::clique(2), Structure::clique(3));
        let t = trace_pebble_game(&k2, &k3, 2, Variant::Full, DEFAULT_BUDGET).unwrap();
        assert!(t.contains("round 0"));
    }
}
