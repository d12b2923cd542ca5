//! Permutation patterns: containment, canonical decomposition around
//! right-to-left maxima, and the layered / wedge families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("malformed pattern text `{0}`")]
    Malformed(String),
    #[error("values {0:?} are not a permutation of 1..{len}", len = .0.len())]
    NotAPermutation(Vec<u32>),
    #[error("duplicate value {0}")]
    Duplicate(u32),
    #[error("layered parameters {0:?} must be strictly decreasing and positive")]
    BadLayered(Vec<u32>),
    #[error("wedge parameters ({k},{m},{p}) must satisfy k > m > p > 0")]
    BadWedgeTop { k: u32, m: u32, p: u32 },
    #[error("canonical decomposition of the empty pattern")]
    Empty,
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: isize, lo: isize, hi: isize },
}

/// A permutation of `1..=k` in one-line notation. The empty pattern has `k = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    pub fn new(values: Vec<u32>) -> Result<Self, PatternError> {
        let k = values.len();
        let mut seen = vec![false; k + 1];
        for &v in &values {
            let i = v as usize;
            if i == 0 || i > k || seen[i] {
                return Err(PatternError::NotAPermutation(values));
            }
            seen[i] = true;
        }
        Ok(Pattern(values))
    }

    /// Wraps values already known to form a permutation.
    pub(crate) fn from_raw(values: Vec<u32>) -> Self {
        debug_assert!(Pattern::new(values.clone()).is_ok());
        Pattern(values)
    }

    pub fn empty() -> Self {
        Pattern(Vec::new())
    }

    /// The pattern 132, the fixed restriction of the whole crate.
    pub fn p132() -> Self {
        Pattern(vec![1, 3, 2])
    }

    /// `[k] = (1, 2, ..., k)`.
    pub fn increasing(k: u32) -> Self {
        Pattern((1..=k).collect())
    }

    /// `<k> = (k, k-1, ..., 1)`.
    pub fn decreasing(k: u32) -> Self {
        Pattern((1..=k).rev().collect())
    }

    /// The layered pattern `[m_0, ..., m_r]`: ascending runs
    /// `(m_{i+1}+1, ..., m_i)` with `m_{r+1} = 0`.
    pub fn layered(params: &[u32]) -> Result<Self, PatternError> {
        let valid = !params.is_empty()
            && params.windows(2).all(|w| w[0] > w[1])
            && params.last().is_some_and(|&m| m > 0);
        if !valid {
            return Err(PatternError::BadLayered(params.to_vec()));
        }
        let mut values = Vec::with_capacity(params[0] as usize);
        for (i, &top) in params.iter().enumerate() {
            let below = params.get(i + 1).copied().unwrap_or(0);
            values.extend(below + 1..=top);
        }
        Ok(Pattern(values))
    }

    /// `{k, m, p} = (p+1, ..., m, 1, ..., p, m+1, ..., k)`.
    pub fn wedge_top(k: u32, m: u32, p: u32) -> Result<Self, PatternError> {
        if !(k > m && m > p && p > 0) {
            return Err(PatternError::BadWedgeTop { k, m, p });
        }
        let values = (p + 1..=m).chain(1..=p).chain(m + 1..=k).collect();
        Ok(Pattern(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pat: &Pattern) -> bool {
        occurrence_count(self, pat, Some(1)) >= 1
    }

    pub fn avoids(&self, pat: &Pattern) -> bool {
        !self.contains(pat)
    }

    /// Skew sum: `self` placed above and to the left of `other`.
    pub fn skew_sum(&self, other: &Pattern) -> Pattern {
        let shift = other.len() as u32;
        let values = self
            .0
            .iter()
            .map(|v| v + shift)
            .chain(other.0.iter().copied())
            .collect();
        Pattern(values)
    }

    /// Direct sum: `self` below and to the left of `other`.
    pub fn direct_sum(&self, other: &Pattern) -> Pattern {
        let shift = self.len() as u32;
        let values = self
            .0
            .iter()
            .copied()
            .chain(other.0.iter().map(|v| v + shift))
            .collect();
        Pattern(values)
    }

    pub fn inverse(&self) -> Pattern {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Pattern(inv)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

/// Replaces each value by its rank, giving the order-isomorphic permutation.
pub fn flatten(values: &[u32]) -> Result<Pattern, PatternError> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(PatternError::Duplicate(w[0]));
    }
    let ranked = values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
        .collect();
    Ok(Pattern(ranked))
}

fn parse_list(inner: &str, text: &str) -> Result<Vec<u32>, PatternError> {
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| PatternError::Malformed(text.to_string()))
        })
        .collect()
}

/// Accepts space-separated values, a digit string (`321`), layered
/// `[m0,m1,...]`, decreasing `<k>` and wedge-top `{k,m,p}` notation.
/// The empty string and `()` denote the empty pattern.
pub fn parse_pattern(text: &str) -> Result<Pattern, PatternError> {
    let t = text.trim();
    let malformed = || PatternError::Malformed(text.to_string());
    if t.is_empty() || t == "()" {
        return Ok(Pattern::empty());
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        return Pattern::layered(&parse_list(inner, text)?);
    }
    if let Some(inner) = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let k: u32 = inner.trim().parse().map_err(|_| malformed())?;
        return Ok(Pattern::decreasing(k));
    }
    if let Some(inner) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let params = parse_list(inner, text)?;
        let [k, m, p] = params[..] else {
            return Err(malformed());
        };
        return Pattern::wedge_top(k, m, p);
    }
    let t = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let values: Vec<u32> = if t.contains([' ', ',']) {
        t.split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| malformed()))
            .collect::<Result<_, _>>()?
    } else if t.chars().all(|c| c.is_ascii_digit()) {
        t.chars().map(|c| c.to_digit(10).unwrap()).collect()
    } else {
        return Err(malformed());
    };
    Pattern::new(values)
}

/// Number of index subsequences of `host` order-isomorphic to `pat`.
///
/// With `cap = Some(c)` the search stops as soon as `c` occurrences have been
/// found and returns `c`. The empty pattern occurs exactly once in every host.
pub fn occurrence_count(host: &Pattern, pat: &Pattern, cap: Option<usize>) -> usize {
    let k = pat.len();
    if k == 0 {
        return 1;
    }
    if k > host.len() {
        return 0;
    }
    let mut chosen = Vec::with_capacity(k);
    let mut count = 0;
    let cap = cap.unwrap_or(usize::MAX);
    extend_occurrence(host.values(), pat.values(), 0, &mut chosen, &mut count, cap);
    count
}

fn extend_occurrence(
    host: &[u32],
    pat: &[u32],
    start: usize,
    chosen: &mut Vec<u32>,
    count: &mut usize,
    cap: usize,
) {
    let i = chosen.len();
    if i == pat.len() {
        *count += 1;
        return;
    }
    let remaining = pat.len() - i;
    for pos in start..=host.len() - remaining {
        let v = host[pos];
        let consistent = chosen
            .iter()
            .zip(pat)
            .all(|(&c, &p)| (c < v) == (p < pat[i]));
        if consistent {
            chosen.push(v);
            extend_occurrence(host, pat, pos + 1, chosen, count, cap);
            chosen.pop();
            if *count >= cap {
                return;
            }
        }
    }
}

/// `τ = (τ^0, m_0, τ^1, m_1, ..., τ^r, m_r)` where `m_0 > ... > m_r` are the
/// right-to-left maxima. Each block `(τ^i, m_i)` occupies an interval of
/// values lying above every later block, so `τ` is the skew sum of its blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    maxima: Vec<u32>,
    segments: Vec<Vec<u32>>,
}

impl CanonicalDecomposition {
    pub fn maxima(&self) -> &[u32] {
        &self.maxima
    }

    pub fn segments(&self) -> &[Vec<u32>] {
        &self.segments
    }

    pub fn r(&self) -> usize {
        self.maxima.len() - 1
    }

    /// Reassembles the source pattern.
    pub fn interleave(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (seg, &m) in self.segments.iter().zip(&self.maxima) {
            out.extend_from_slice(seg);
            out.push(m);
        }
        out
    }

    /// `π^i`, flattened: `π^{-1} = ∅`, `π^0 = τ^0`, and
    /// `π^i = (τ^0, m_0, ..., τ^i, m_i)` for `i ≥ 1`.
    pub fn prefix(&self, i: isize) -> Result<Pattern, PatternError> {
        let r = self.r() as isize;
        if !(-1..=r).contains(&i) {
            return Err(PatternError::IndexOutOfRange { index: i, lo: -1, hi: r });
        }
        match i {
            -1 => Ok(Pattern::empty()),
            0 => flatten(&self.segments[0]),
            _ => {
                let mut out = Vec::new();
                for j in 0..=i as usize {
                    out.extend_from_slice(&self.segments[j]);
                    out.push(self.maxima[j]);
                }
                flatten(&out)
            }
        }
    }

    /// `σ^i = (τ^i, m_i, ..., τ^r, m_r)`, flattened; `σ^{r+1} = ∅`.
    pub fn suffix(&self, i: isize) -> Result<Pattern, PatternError> {
        let r = self.r() as isize;
        if !(0..=r + 1).contains(&i) {
            return Err(PatternError::IndexOutOfRange { index: i, lo: 0, hi: r + 1 });
        }
        let mut out = Vec::new();
        for j in i as usize..self.maxima.len() {
            out.extend_from_slice(&self.segments[j]);
            out.push(self.maxima[j]);
        }
        flatten(&out)
    }

    /// The flattened segment `τ^i` (without its maximum).
    pub fn segment(&self, i: usize) -> Pattern {
        flatten(&self.segments[i]).expect("segments hold distinct values")
    }

    /// The flattened block `(τ^i, m_i)`.
    pub fn block(&self, i: usize) -> Pattern {
        let mut v = self.segments[i].clone();
        v.push(self.maxima[i]);
        flatten(&v).expect("blocks hold distinct values")
    }
}

pub fn canonical_decompose(pat: &Pattern) -> Result<CanonicalDecomposition, PatternError> {
    if pat.is_empty() {
        return Err(PatternError::Empty);
    }
    let values = pat.values();
    let mut is_max = vec![false; values.len()];
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().rev() {
        if v > best {
            is_max[i] = true;
            best = v;
        }
    }
    let mut maxima = Vec::new();
    let mut segments = Vec::new();
    let mut current = Vec::new();
    for (&v, &m) in values.iter().zip(&is_max) {
        if m {
            maxima.push(v);
            segments.push(std::mem::take(&mut current));
        } else {
            current.push(v);
        }
    }
    Ok(CanonicalDecomposition { maxima, segments })
}

/// The pattern families with known closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `[m_0, ..., m_r]`, strictly decreasing positive parameters.
    Layered(Vec<u32>),
    /// `<k>`; `classify` reports these as layered with singleton layers.
    Decreasing(u32),
    /// `{k, m, p}` with `k > m > p > 0`.
    WedgeTop { k: u32, m: u32, p: u32 },
    Plain,
}

impl FamilySpec {
    pub fn pattern(&self) -> Option<Pattern> {
        match self {
            FamilySpec::Layered(ms) => Pattern::layered(ms).ok(),
            FamilySpec::Decreasing(k) => Some(Pattern::decreasing(*k)),
            FamilySpec::WedgeTop { k, m, p } => Pattern::wedge_top(*k, *m, *p).ok(),
            FamilySpec::Plain => None,
        }
    }

    /// Layer parameters, with `<k>` expanded to `[k, k-1, ..., 1]`.
    pub fn layers(&self) -> Option<Vec<u32>> {
        match self {
            FamilySpec::Layered(ms) => Some(ms.clone()),
            FamilySpec::Decreasing(k) => Some((1..=*k).rev().collect()),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Layered(ms) => write!(f, "layered [{}]", join(ms)),
            FamilySpec::Decreasing(k) => write!(f, "decreasing <{k}>"),
            FamilySpec::WedgeTop { k, m, p } => write!(f, "wedge-top {{{k},{m},{p}}}"),
            FamilySpec::Plain => f.write_str("plain"),
        }
    }
}

/// Splits `values` into maximal runs of consecutive increasing values.
fn unit_runs(values: &[u32]) -> Vec<&[u32]> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] != values[i - 1] + 1 {
            runs.push(&values[start..i]);
            start = i;
        }
    }
    runs
}

/// Layer parameters of a layered pattern, or `None`.
pub fn layered_params(pat: &Pattern) -> Option<Vec<u32>> {
    if pat.is_empty() {
        return None;
    }
    let params: Vec<u32> = unit_runs(pat.values())
        .iter()
        .map(|run| *run.last().unwrap())
        .collect();
    match Pattern::layered(&params) {
        Ok(p) if p == *pat => Some(params),
        _ => None,
    }
}

pub fn classify(pat: &Pattern) -> FamilySpec {
    if let Some(params) = layered_params(pat) {
        return FamilySpec::Layered(params);
    }
    // {k,m,p}: a two-layer [m,p] followed by m+1, ..., k.
    let v = pat.values();
    let k = v.len() as u32;
    for m in 2..k {
        let (low, high) = v.split_at(m as usize);
        if !high.iter().copied().eq(m + 1..=k) {
            continue;
        }
        if let Some(params) = Pattern::new(low.to_vec()).ok().and_then(|p| layered_params(&p)) {
            if let [top, p] = params[..] {
                debug_assert_eq!(top, m);
                return FamilySpec::WedgeTop { k, m, p };
            }
        }
    }
    FamilySpec::Plain
}

/// Wedge patterns: `(τ^1, ρ^1, ..., τ^r, ρ^r)` with every `τ^i` nonempty,
/// `(τ^1, ..., τ^r) = (s+1, ..., k)` and `(ρ^1, ..., ρ^r)` a layered
/// permutation of `1..=s` whose layers are exactly the nonempty `ρ^i`.
///
/// Each `ρ^i` is a whole layer: the induction behind `F_τ = R_k` peels
/// `ρ^r` off as `[m]`. Letting a block hold several layers would admit
/// e.g. `321`, whose generating function is not `R_3`.
pub fn is_wedge(pat: &Pattern) -> bool {
    let v = pat.values();
    let k = v.len() as u32;
    if k == 0 {
        return false;
    }
    (0..k).any(|s| {
        if v[0] <= s || !v.iter().filter(|&&x| x > s).copied().eq(s + 1..=k) {
            return false;
        }
        // lower blocks between consecutive upper runs
        let blocks: Vec<&[u32]> = v.split(|&x| x > s).filter(|b| !b.is_empty()).collect();
        let mut top = s;
        for b in blocks {
            let lo = top + 1 - b.len() as u32;
            if top < b.len() as u32 || !b.iter().copied().eq(lo..=top) {
                return false;
            }
            top = lo - 1;
        }
        top == 0
    })
}

/// Every wedge pattern of size `k`, built from its parts and deduplicated.
pub fn wedge_patterns(k: u32) -> Vec<Pattern> {
    let mut out = BTreeSet::new();
    for s in 0..k {
        for layer_sizes in compositions(s) {
            let mut top = s;
            let layers: Vec<Vec<u32>> = layer_sizes
                .iter()
                .map(|&len| {
                    top -= len;
                    (top + 1..=top + len).collect()
                })
                .collect();
            for upper_sizes in compositions(k - s) {
                let r = upper_sizes.len();
                // blocks that receive a layer, in order
                for slots in increasing_subsets(r, layers.len()) {
                    let mut values = Vec::with_capacity(k as usize);
                    let mut next_upper = s + 1;
                    let mut layer = layers.iter();
                    for (i, &size) in upper_sizes.iter().enumerate() {
                        values.extend(next_upper..next_upper + size);
                        next_upper += size;
                        if slots.contains(&i) {
                            values.extend_from_slice(layer.next().unwrap());
                        }
                    }
                    out.insert(Pattern::from_raw(values));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All compositions of `n` into positive parts.
fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Strictly increasing sequences of length `len` with entries in `0..n`.
fn increasing_subsets(n: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in increasing_subsets(n, len - 1) {
        let lo = tail.last().map_or(0, |&t| t + 1);
        for v in lo..n {
            let mut t = tail.clone();
            t.push(v);
            out.push(t);
        }
    }
    out
}

/// All permutations of `1..=k` in lexicographic order.
pub fn all_permutations(k: u32) -> Vec<Pattern> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (1..=k).collect();
    loop {
        out.push(Pattern(current.clone()));
        // next lexicographic permutation
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// `S_k(132)` in lexicographic order.
pub fn patterns_avoiding_132(k: u32) -> Vec<Pattern> {
    let p = Pattern::p132();
    all_permutations(k).into_iter().filter(|t| t.avoids(&p)).collect()
}
