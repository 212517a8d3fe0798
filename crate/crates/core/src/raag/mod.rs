//! Right-angled Artin groups: defining graphs, normal forms, cyclic forms.

mod cyclic;
mod graph;
mod group;
mod word;

pub use cyclic::CyclicForm;
pub use graph::{DefiningGraph, GraphFile, VertexSet, MAX_VERTICES};
pub use group::Raag;
pub use word::{invert_letters, shortlex, GroupWord, Letter, NormalForm};
