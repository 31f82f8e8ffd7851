//! A model checker and logic-programming engine for a hybrid-dynamic quantum
//! logic over finite-dimensional state spaces.
//!
//! States are vectors of ℂⁿ; actions are built from unitary gates and
//! projective measurements with sequencing, choice and iteration; sentences
//! combine propositions with retrieve/store (hybrid features), necessity over
//! actions, and both classical and quantum negation. The crate evaluates
//! sentences over concrete models, constructs initial models of satisfiable
//! Horn programs by saturation, and answers existential queries by searching
//! ground substitutions.
//!
//! The narrative guide lives in `book/`; its chapters are compiled as
//! doc-tests through the [`guide`] module.

pub mod cli;
pub mod eval;
pub mod extent;
pub mod horn;
pub mod linalg;
pub mod model;
pub mod models;
pub mod sentence;
pub mod signature;
pub mod specfile;
pub mod subspace;
pub mod syntax;
pub mod term;

pub use eval::{EvalCtx, EvalError};
pub use extent::{Extent, ExtentKind};
pub use horn::{
    answer_query, check_satisfiable, entails, saturate, EngineConfig, HornProgram, InitialModel,
    QueryOutcome, SatVerdict,
};
pub use linalg::{C64, CMatrix, CVector, DEFAULT_EPSILON};
pub use model::{validate_model, Bindings, Model, TermError, Violation};
pub use sentence::{classify, Action, Class, Sentence};
pub use signature::{Morphism, Signature, SymbolKind};
pub use specfile::SpecFile;
pub use subspace::Subspace;
pub use syntax::{parse_query_str, parse_sentence_str, parse_spec, parse_term_str, ParseError};
pub use term::{Scalar, Term};
