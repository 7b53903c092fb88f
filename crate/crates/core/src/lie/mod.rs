//! Shifted Lie algebras with Q̄ operations, their presentations and free
//! constructions.

mod free;
mod odd;
mod presentation;
mod ti;
mod tower;

pub use free::{
    abelian, free_basis, free_label, free_lie_rbar_algebra, lie_straighten, lyndon_words, omega_n, tower_presentation, trivial,
    unbounded, LyndonWord, Term,
};
pub use odd::{free_odd_lie, kjaer_basis};
pub use presentation::{AlgebraPresentation, Mode};
pub use ti::ti_associate;
pub use tower::{Monad, Node, Shape, Tower};
