//! Generating functions `F_τ` (avoid τ) and `G_τ` (contain τ exactly once)
//! over `S_n(132)`, their closed forms, and relation checkers.

mod avoid;
mod bivariate;
mod once;
pub mod relations;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

use crate::algebra::{AlgebraError, RationalFunction};
use crate::oracle::OracleError;
use crate::pattern::{Pattern, PatternError};

pub use avoid::{avoid_gf_closed, avoid_gf_closed_for, thm25_closed};
pub use bivariate::{phi_closed_series, phi_residual, phi_residual_with_factor, psi_closed_series, psi_residual};
pub use once::{g_decreasing_closed, g_increasing_closed, g_two_layer_closed, g_wedge_top_closed, once_gf_closed};
pub use relations::{verify_relation, InstanceResult, RelationId, RelationParams, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("pattern {0} contains 132, so every 132-avoider avoids it and its generating function is the Catalan function, not a rational one")]
    NotIn132Class(Pattern),
    #[error("pattern {pattern} is not supported: {reason} (count it with the `oracle` command)")]
    UnsupportedPattern { pattern: Pattern, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

impl EngineError {
    pub(crate) fn unsupported(pattern: &Pattern, reason: impl Into<String>) -> Self {
        EngineError::UnsupportedPattern { pattern: pattern.clone(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, EngineError>;

pub(crate) fn require_132_avoider(pat: &Pattern) -> Result<()> {
    if pat.contains(&Pattern::p132()) {
        Err(EngineError::NotIn132Class(pat.clone()))
    } else {
        Ok(())
    }
}

/// Memoized computation of `F_τ` and `G_τ`.
///
/// Memo entries are written once per key; two threads racing on the same key
/// compute equal values, so whichever insert lands first is kept.
#[derive(Debug, Default)]
pub struct Engine {
    avoid_memo: RwLock<HashMap<Pattern, RationalFunction>>,
    once_memo: RwLock<HashMap<Pattern, RationalFunction>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine used by the free functions.
    pub fn shared() -> &'static Engine {
        static SHARED: OnceLock<Engine> = OnceLock::new();
        SHARED.get_or_init(Engine::new)
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.avoid_memo.read().unwrap().len(), self.once_memo.read().unwrap().len())
    }

    fn memo_get(memo: &RwLock<HashMap<Pattern, RationalFunction>>, key: &Pattern) -> Option<RationalFunction> {
        memo.read().unwrap().get(key).cloned()
    }

    fn memo_put(
        memo: &RwLock<HashMap<Pattern, RationalFunction>>,
        key: &Pattern,
        value: RationalFunction,
    ) -> RationalFunction {
        memo.write().unwrap().entry(key.clone()).or_insert(value).clone()
    }
}

/// `F_τ` via the shared engine.
pub fn avoid_gf(pat: &Pattern) -> Result<RationalFunction> {
    Engine::shared().avoid_gf(pat)
}

/// `G_τ` via the shared engine.
pub fn once_gf(pat: &Pattern) -> Result<RationalFunction> {
    Engine::shared().once_gf(pat)
}
