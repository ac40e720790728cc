//! Exact PL embeddings of graphs, projections and fixture generators.

pub mod embedding;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod projection;

pub use embedding::{
    disjoint_union, mirror_embedding, parse_rational, random_embedding, rational_to_string,
    translate, PLEmbedding, Point3, ProjectionDirection,
};
pub use fixtures::{
    d4_graph, d4_random_fixture, disjoint_triangles_fixture, double_clasp_fixture,
    figure_eight_fixture, generic_direction, hopf_fixture, keyring_fixture, keyrings_fixture,
    shift_cycle, torus_link_fixture, trefoil_fixture, D4Fixture, KeyringFixture, LinkFixture,
};
pub use graph::{AbstractGraph, Edge, EdgeId, VertexId};
pub use projection::{validate_general_position, Arrangement, RawCrossing};
