//! Materialized game comonads on finite structures.
//!
//! The EF comonad sends a structure to the forest of plays (non-empty
//! sequences of elements of length at most `k`); the modal comonad unravels a
//! pointed structure along its transition relations. The pebbling comonad has
//! an infinite carrier even on finite structures and is never materialized;
//! pebbling is handled through forest covers (here) and finite placement
//! games (the `equivalence` module).

mod coalgebra;
mod ef;
mod modal;

pub use coalgebra::{
    coalgebra_number, coalgebra_to_cover, cover_to_coalgebra, is_coalgebra, modal_coalgebra_number,
    AlphaMap, Coalgebra, CoverKind,
};
pub use ef::{check_ef_comonad_laws, ef_build, try_ef_build, EfStructure, Play};
pub use modal::{check_modal_comonad_laws, modal_build, try_modal_build, ModalStructure, Trace};

/// Which comonad a coalgebra or a materialized carrier belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComonadKind {
    Ef,
    Modal,
}
