//! Conjugator search and projection geometry for right-angled Artin groups
//! and free groups, with exhaustive oracles for every algorithm.

pub mod cayley;
pub mod conjugator;
pub mod error;
pub mod hhs;
pub mod projection;
pub mod raag;

pub use error::{Budget, Error, Result};
pub use raag::{CyclicForm, DefiningGraph, GroupWord, Letter, NormalForm, Raag, VertexSet};
