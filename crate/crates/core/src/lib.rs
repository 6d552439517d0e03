//! Exact evaluation and optimization of strategies in possibilistic and
//! kappa-ranked decision trees.
//!
//! Degrees and utilities are arbitrary-precision rationals throughout, so
//! every reported value is exact.

pub mod criteria;
pub mod dtree;
pub mod format;
pub mod lottery;
pub mod numbers;
pub mod propcheck;
pub mod solver;

pub use criteria::{
    AnyLottery, BinaryUtility, Criterion, CriterionId, CriterionValue, Embedding, Preference,
};
pub use lottery::{CompoundLottery, KappaLottery, Lottery, LotteryNode, SimpleLottery};
pub use numbers::{Degree, KappaRank, Utility};
