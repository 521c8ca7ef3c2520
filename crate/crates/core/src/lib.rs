//! Beta-shifts, S-gap shifts and the correspondence `a_i = 1 ⟺ i − 1 ∈ S`
//! between them: validation, Fischer covers, minimal right-resolving factors,
//! equivalence levels, entropy, zeta functions and periodic-point counts.
//!
//! ```
//! use betagap::{ass_of_beta, zeta_beta, series_pn, ParrySeq};
//!
//! let golden: ParrySeq = "1,1".parse().unwrap();
//! assert_eq!(ass_of_beta(&golden).unwrap().to_string(), "{0,1}");
//! let z = zeta_beta(&golden).unwrap();
//! assert_eq!(series_pn(&z, 5).unwrap().counts, vec![1, 3, 4, 7, 11]);
//! ```

pub mod analytics;
pub mod beta;
pub mod cli;
pub mod correspond;
pub mod covers;
pub mod error;
pub mod gaps;
pub mod poly;
pub mod seqcore;

pub use analytics::{
    cantor_witness, entropy_beta, entropy_gap, periodic_count, series_pn, xs_value, zeta_beta,
    zeta_gap, CFValue, Interval, PnTable, System,
};
pub use beta::{
    beta_from_parry, classify_beta, greedy_expand, validate_parry, BetaClass, ParrySeq,
    ParryVerdict,
};
pub use correspond::{
    ass_of_beta, ass_of_gap, equivalence_level, family_sj, AssRecord, EquivalenceLevel,
};
pub use covers::{fischer_beta, fischer_gap, graph_iso, min_factor, LabeledGraph};
pub use error::{Error, Result};
pub use gaps::{classify_gap, d_word, normalize, star_condition, GapClass, GapSet, StarVerdict};
pub use poly::{Poly, RationalFn};
pub use seqcore::{lex_compare, EpWord};
