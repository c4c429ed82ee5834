//! N-Queens constructions and analysis.
//!
//! * [`construct`]: an explicit solution for every `n >= 4` as a Queen function
//!   of width at most 3, in O(n).
//! * [`queen_fn`]: Queen functions, piecewise maps linear modulo `n + 1` on the
//!   odd and even rows of each segment.
//! * [`width`]: minimum-width decomposition of any permutation.
//! * [`compose`] and [`irreducible`]: composing boards and deciding which sizes
//!   arise from compositions.
//! * [`enumerate`], [`checks`]: exhaustive enumeration and width censuses.
//! * [`complete`]: extending partial placements.
//!
//! Rows and columns are 1-based throughout: `perm[i - 1]` is the column of the
//! queen in row `i`.

pub mod arrangement;
pub mod checks;
pub mod complete;
pub mod compose;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod irreducible;
pub mod queen_fn;
pub mod symmetry;
pub mod text;
pub mod width;

pub use arrangement::{validate, Arrangement, ArrangementRecord, MAX_N};
pub use checks::{
    check_conjecture, check_remark_15, width_census, ConjectureReport, RemarkReport, WidthCensus,
};
pub use complete::{complete, complete_via_queen_functions, PartialPlacement};
pub use compose::{
    compose, criterion, find_criterion_permutation, generalized_compose, hedayat_exists, witness,
    CriterionReport, TorusPruning,
};
pub use construct::{build_queen_function, dispatch, solve, LemmaFamily};
pub use enumerate::{
    all_solutions, count_solutions, count_with_prefix, enumerate_solutions, enumerate_with_prefix,
    fundamental_classes, fundamental_classes_par, FundamentalClass, SearchState,
};
pub use error::{Error, Result};
pub use irreducible::{
    classify, conjecture_applicable, IrreducibilityClass, IrreducibleForm, Verdict,
};
pub use queen_fn::{eval_queen_function, materialize, LinearMap, QueenFunction, Segment};
pub use symmetry::{apply_symmetry, canonical_form, SymmetryOp};
pub use width::{fit_segment, min_width, orbit_min_width, WidthScanner};
