//! Exact computations on the connected blocks polytope of a graph: the convex
//! hull of incidence vectors of block subsets that induce connected subgraphs.

pub mod blocks;
pub mod blockset;
pub mod corpus;
pub mod ehrhart;
pub mod error;
pub mod facets;
pub mod families;
pub mod graph;
pub mod hull;
pub mod num;
pub mod optimize;
pub mod polytope_graph;
pub mod toric;
pub mod verify;
pub mod vertices;

pub use blocks::{
    block_cut_tree, block_decomposition, blockset_closure, classify, split_components_at, Block,
    BlockCutTree, BlockDecomposition, GraphClass, TreeNode,
};
pub use blockset::{BlockSubset, IncidenceVector};
pub use error::{CbpError, Result};
pub use graph::{parse_edge_list, parse_graph, Graph};
pub use hull::{
    affine_rank, brute_force_facets, contains_point, same_hyperplane, Certificate, Inequality,
    RationalMatrix, RationalPolyhedron,
};
pub use num::Rational;
pub use vertices::{enumerate_vertices, is_connected_blockset, polytope_dimension_check};
pub use corpus::{corpus, CorpusEntry};
pub use ehrhart::{count_lattice_points, ehrhart_polynomial, hstar_checks, hstar_profile, hstar_vector, HStarFlags, HStarProfile};
pub use facets::{
    construct_ibis, enumerate_ibis, facet_certificate, facet_rows, h_representation, validate_ibi, FacetRow,
    IndependentBlocksInequality, RowKind,
};
pub use optimize::{
    brute_force_optimum, eulerian_adapter, max_weight_connected_blockset, tree_adapter, EdgeSolution, Solution,
};
pub use polytope_graph::{
    adjacent_combinatorial, adjacent_geometric, diameter, hirsch_check, polytope_graph, polytope_graph_geometric,
    simplicity_report, HirschReport, PolytopeGraph, SimplicityReport,
};
pub use toric::{
    buchberger_verify, fiber_reduction_test, groebner_candidates, make_term_order, triangulation,
    triangulation_checks, Binomial, SimplicialComplex, TermOrder, TriangulationReport,
};
pub use verify::{verify_corpus, verify_graph, VerificationReport, VerifyConfig};
