//! Witness sets with short covering tours.

pub mod abelian;
pub mod grid;
pub mod lemma;
pub mod pair;
pub mod path;
pub mod report;

pub use abelian::{build_abelian_witness, detect_degeneracy, prune_grid, ZExponents};
pub use grid::{build_grid_set, Collision, GridSet};
pub use lemma::{check_mixed_identity, choose_epsilon, choose_epsilon_for, lemma1_witness, mixed_commutator, LemmaWitness, Sign};
pub use pair::{remark_pairs, Preset, RemarkConfig, Side, SupportPair};
pub use path::{build_serpentine_path, gamma_dot, serpentine_length, EdgeKind, GridPoint, Move, TourPath};
pub use report::{
    build_witness, minimal_big_n, minimal_big_n_for, ratio_bound, verify_witness, Branch, LengthParams, Verdicts,
    WitnessOptions, WitnessReport,
};
