//! Inputs shared by the benchmarks.

use linkforge::diagram::Diagram;
use linkforge::geometry::{generic_direction, random_embedding, AbstractGraph};
use linkforge::Result;

/// Projection of a seeded random embedding of `K_n`.
pub fn random_complete_diagram(n: usize, seed: u64, bits: u32) -> Result<Diagram> {
    let emb = random_embedding(&AbstractGraph::complete(n), seed, bits)?;
    Diagram::project(&emb, generic_direction(&emb, seed)?)
}
