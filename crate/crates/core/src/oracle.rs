//! Brute-force counts over `S_n(132)`, the ground truth for every symbolic
//! result in the crate.
//!
//! `S_n(132)` is generated by placing `n` at each position `t` and filling
//! the left with a shifted 132-avoider of the values `n-t..n-1` and the right
//! with one of `1..n-t-1`. Everything to the left of `n` must exceed
//! everything to its right, otherwise `(a, n, b)` with `a < b` is a 132.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::{occurrence_count, Pattern};

pub const DEFAULT_CAP: usize = 12;
pub const CAP_ENV: &str = "PERM132_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} is above the enumeration cap {cap} (raise it with {CAP_ENV})")]
    AboveCap { n: usize, cap: usize },
}

/// Enumeration cap: `PERM132_MAX_N` if set and numeric, else 12.
pub fn configured_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    Exactly(usize),
    AtLeast(usize),
}

impl CountMode {
    fn accepts(self, host: &Pattern, pat: &Pattern) -> bool {
        match self {
            CountMode::Exactly(t) => occurrence_count(host, pat, Some(t + 1)) == t,
            CountMode::AtLeast(0) => true,
            CountMode::AtLeast(t) => occurrence_count(host, pat, Some(t)) == t,
        }
    }
}

/// Avoid every pattern in `avoid` and, optionally, contain one pattern a
/// prescribed number of times.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSpec {
    pub avoid: Vec<Pattern>,
    pub contain: Option<(Pattern, CountMode)>,
}

impl ConstraintSpec {
    pub fn avoiding(pat: Pattern) -> Self {
        ConstraintSpec { avoid: vec![pat], contain: None }
    }

    pub fn exactly_once(pat: Pattern) -> Self {
        ConstraintSpec { avoid: Vec::new(), contain: Some((pat, CountMode::Exactly(1))) }
    }

    pub fn and_avoid(mut self, pat: Pattern) -> Self {
        self.avoid.push(pat);
        self
    }

    pub fn matches(&self, host: &Pattern) -> bool {
        self.avoid.iter().all(|p| occurrence_count(host, p, Some(1)) == 0)
            && self.contain.as_ref().is_none_or(|(p, mode)| mode.accepts(host, p))
    }
}

/// Counts for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// JSON array of decimal strings, e.g. `["1","1","2"]`.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        serde_json::to_string(&strings).expect("string arrays always serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// One partition of `S_n(132)`: the permutations with `n` at position `t`.
type Partition = Vec<Pattern>;

fn cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Partition>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Partition>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn raw_avoiders(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).flat_map(|t| raw_with_max_at(n, t)).collect()
}

fn raw_with_max_at(n: usize, t: usize) -> Vec<Vec<u32>> {
    let shift = (n - 1 - t) as u32;
    let lefts = raw_avoiders(t);
    let rights = raw_avoiders(n - 1 - t);
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for l in &lefts {
        for r in &rights {
            let mut v: Vec<u32> = l.iter().map(|x| x + shift).collect();
            v.push(n as u32);
            v.extend_from_slice(r);
            out.push(v);
        }
    }
    out
}

fn partitions(n: usize) -> Arc<Vec<Partition>> {
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let parts: Vec<Partition> = if n == 0 {
        vec![vec![Pattern::empty()]]
    } else {
        (0..n)
            .into_par_iter()
            .map(|t| raw_with_max_at(n, t).into_iter().map(Pattern::from_raw).collect())
            .collect()
    };
    let parts = Arc::new(parts);
    // a concurrent fill computes the same value, so either copy is fine
    cache().lock().unwrap().entry(n).or_insert_with(|| Arc::clone(&parts)).clone()
}

fn check_cap(n: usize) -> Result<(), OracleError> {
    let cap = configured_cap();
    if n > cap {
        Err(OracleError::AboveCap { n, cap })
    } else {
        Ok(())
    }
}

/// `S_n(132)`, ordered by the position of `n` and then recursively by the
/// left and right parts.
pub fn enumerate_avoiders(n: usize) -> Result<Vec<Pattern>, OracleError> {
    check_cap(n)?;
    Ok(partitions(n).iter().flatten().cloned().collect())
}

pub fn count(n: usize, spec: &ConstraintSpec) -> Result<u64, OracleError> {
    check_cap(n)?;
    let parts = partitions(n);
    Ok(parts
        .par_iter()
        .map(|part| part.iter().filter(|p| spec.matches(p)).count() as u64)
        .sum())
}

pub fn series(spec: &ConstraintSpec, n_max: usize) -> Result<CountTable, OracleError> {
    check_cap(n_max)?;
    let counts = (0..=n_max).map(|n| count(n, spec)).collect::<Result<_, _>>()?;
    Ok(CountTable { counts })
}
