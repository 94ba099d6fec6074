//! Pattern-match-oriented programming engine.
//!
//! An embedded pattern language with non-linear patterns and backtracking,
//! executed against a universal value model through composable matchers.
//! Enumeration of all results is lazy, breadth-first (`match_all`) or
//! depth-first (`match_all_dfs`), over targets that may be infinite.
//!
//! The crate is organized as:
//! - [`value`]: runtime values, lazy memoizing collections, persistent
//!   environments, and the expression language;
//! - [`pattern`]: the pattern AST and primitive-pattern patterns;
//! - [`matcher`]: the matcher abstraction and built-in matcher algebra
//!   (`something`, `eq`, `list`, `multiset`, `set`, `sortedList`, tuples,
//!   algebraic data matchers, clause-based matchers);
//! - [`engine`]: the reduction machine and result streams;
//! - [`stdlib`]: list-processing functions written as single match
//!   expressions;
//! - [`demos`]: worked algorithms (primes, N-queens, SAT, poker, trees,
//!   graph queries, tours, relational queries).

pub mod demos;
pub mod engine;
pub mod error;
pub mod json;
pub mod matcher;
pub mod pattern;
pub mod printer;
pub mod stdlib;
pub mod value;

pub use engine::{
    clause, match_all, match_all_dfs, match_all_in, match_first, match_first_in, not_matches,
    EngineConfig, EngineStats, MatchClause, ResultStream, SearchMode,
};
pub use error::{Error, Result};
pub use matcher::{Matcher, MatchingAtom};
pub use pattern::{Pat, Pattern};
pub use value::{Bindings, Coll, Expr, Value};
