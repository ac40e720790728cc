//! Oriented cycles, their symmetric differences and enumeration.

pub mod connect;
pub mod d4;
pub mod enumerate;
pub mod oriented;

pub use connect::{build_connecting_cycle, default_ends, ConnectingCycleSpec, Traversal};
pub use d4::{d4_hamiltonian_cycles, D4Configuration, D4Cycle};
pub use enumerate::{all_cycles, disjoint_cycle_pairs, enumerate_cycles, hamiltonian_cycles};
pub use oriented::{
    symmetric_difference, symmetric_difference_all, CycleSteps, OrientedCycle, Step,
};
