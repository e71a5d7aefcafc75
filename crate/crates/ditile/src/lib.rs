//! Exact and constructive toolkit for factor and cycle-tiling problems in
//! digraphs: a bitset digraph core, pattern constructors, exact backtracking
//! solvers, runnable proof procedures, extremal-instance generators and a
//! reproducible experiment harness.

pub mod bitset;
pub mod construct;
pub mod digraph;
pub mod error;
pub mod extremal;
pub mod harness;
pub mod io;
pub mod iso;
pub mod pattern;
pub mod solve;

pub use bitset::VertexSet;
pub use digraph::{DegreeProfile, Digraph, OreMinimum, OreVariant};
pub use error::{Error, Result};
pub use pattern::{
    cycle_from_word, hom_into_directed_path, path_blowup, random_tree, transitive_tournament,
    Dir, LevelMap, OrientationWord, Pattern, PatternKind,
};
pub use solve::{Budget, Embedding, Outcome, Tiling};
