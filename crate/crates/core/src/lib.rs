//! Exact computations in the imbalance lattice of binary trees.
//!
//! A binary tree with `n` leaves is summarized by its path-length sequence,
//! the sorted list of leaf depths. Sequences of the same length are ordered
//! by how balanced the trees are, and this order is a lattice. The crate
//! provides:
//!
//! - [`sequence`]: validation, partial sums and the order itself,
//! - [`transforms`]: splitting a leaf (expansion) and merging the deepest
//!   pair (contraction),
//! - [`lattice`]: enumeration, meet, join, balancing moves, covers,
//! - [`irreducibility`]: three tests for join-irreducible elements,
//! - [`trees`]: canonical prefix codes and trees for a sequence,
//! - [`oracle`]: brute-force reference implementations,
//! - [`verify`]: exhaustive property checks built on all of the above.
//!
//! ```
//! use imbalance_lattice::{compare, meet, OrderVerdict, PathLengthSequence};
//!
//! let s: PathLengthSequence = "2,2,2,3,4,5,5".parse()?;
//! let t: PathLengthSequence = "1,3,3,4,4,4,4".parse()?;
//! assert_eq!(compare(&s, &t)?, OrderVerdict::Incomparable);
//! assert_eq!(meet(&s, &t)?.to_string(), "2,2,2,4,4,4,4");
//! # Ok::<(), imbalance_lattice::Error>(())
//! ```

pub mod error;
pub mod irreducibility;
pub mod lattice;
pub mod oracle;
pub mod sequence;
pub mod transforms;
pub mod trees;
pub mod verify;

pub use error::{Dyadic, Error, Result};
pub use irreducibility::{
    decompose_uvw, is_join_irreducible_bruteforce, is_join_irreducible_prop2,
    is_join_irreducible_prop3, is_near_constant, NearConstancy, UvwDecomposition,
};
pub use lattice::{
    bal, bottom, covering_pairs, enumerate, excess_indices, hasse, join, meet,
    minimal_balancing_relation, top, BalancingStep, Ceiling, HasseJson, LatticeUniverse,
    DEFAULT_CEILING,
};
pub use sequence::{
    compare, compare_at_scale, scaled_partial_sums, suffix_length, validate, Depth, OrderVerdict,
    PathLengthSequence, ScaledPartialSums,
};
pub use transforms::{contraction, expansion_at, lower_expansion, upper_expansion};
pub use trees::{
    canonical_code, nodes_on_short_leaf_paths, nodes_within_depth, sequence_from_tree, sum_components, tree_from_sequence,
    CodeTree, Codeword,
};
