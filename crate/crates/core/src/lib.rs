//! Polycyclic groups given by refined solvable presentations: normal forms by
//! collection from the left, consistency checking by induced determinants
//! and by overlaps, and generators of test presentations.

pub mod bench;
pub mod cli;
pub mod collector;
pub mod consistency;
pub mod corpus;
pub mod matrix;
pub mod presentation;
pub mod word;

#[cfg(test)]
pub(crate) mod fixtures;
