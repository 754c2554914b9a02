//! Ordered rooted forests with the grafting operators B⁺ and B⁻, the tree
//! families they generate, the admissible-cut Hopf structure and the
//! duplicial, dendriform and bigraft operations built on top of it.
//!
//! Everything is exact: coefficients are rationals and counts are big
//! integers. The exhaustive sweeps run on rayon when the `parallel` feature
//! is enabled (the default).

mod cache;
pub mod exec;
pub mod forest;
pub mod graft;
pub mod hopf;
pub mod linalg;
pub mod series;
pub mod structures;
pub mod suites;

pub use exec::Strategy;
pub use forest::{
    admissible_cuts, cut_split, format_forest, parse_forest, parse_plane_tree, shape_of,
    standardize, AdmissibleCut, ForestError, Label, OrderedForest, OrderedTree, PlaneTree,
};
pub use graft::{
    b_minus, b_plus, canonical_indexing, count_indexings, generate_set, generate_trees, ladders,
    membership, oracle_count_indexings, signature_of, Algebra, FamilySelector, GraftError, Sign,
    Signature,
};
pub use hopf::{
    antipode, check_b_operator_coproduct, coproduct, coproduct_elem, counit, prim_tot_dimension,
    product, AlgebraElement, Coeff, CoproductVariant, HopfError, LinComb, Tensor2Element,
    Tensor3Element,
};
pub use series::{
    series_coefficients, verify_against_enumeration, CoefficientTable, Report, SeriesError,
    SeriesId,
};
pub use structures::{
    check_identity, generate_closure, lgraft, nwarrow, rgraft, tensor_graft, GraftOp,
    IdentityName, StructError,
};
