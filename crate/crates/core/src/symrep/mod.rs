//! Representation theory of the symmetric group: partitions, Kostka
//! numbers, irreducible characters, and Young's orthogonal matrices.

pub mod character;
pub mod partition;
pub mod tableau;
pub mod yor;

pub use character::{character_two_row, character_value, CharacterTable};
pub use partition::{partitions_of, Partition};
pub use tableau::{kostka, young_rule_multiplicities};
pub use yor::OrthogonalRepresentation;
