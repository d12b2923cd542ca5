//! Checks of the structural equations: exactly where every term is an
//! engine output, coefficient-wise against oracle counts where a term counts
//! permutations that contain one pattern once and avoid another.
//!
//! Oracle conventions: `G_∅ = G^ρ_∅ = 1` (only the empty permutation is
//! counted), and `F_∅ = 0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{PowerSeries, RationalFunction};
use crate::chebyshev::{r_or_zero, sweep_identities};
use crate::oracle::{self, ConstraintSpec, CountMode};
use crate::pattern::{canonical_decompose, layered_params, patterns_avoiding_132, CanonicalDecomposition, Pattern};

use super::{phi_closed_series, phi_residual, psi_closed_series, psi_residual, require_132_avoider, Engine, EngineError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationId {
    /// The avoid recursion, exactly.
    Thm21,
    /// The functional equation for `Φ`, plus `[y^k]Φ = F_<k>`.
    Thm22Feq,
    /// The layered avoid recursion, exactly.
    Thm23,
    /// The once equation, against the oracle.
    Thm31,
    /// The printed recursion for `G^{π^j}_{π^{j-1}}`, against the oracle.
    Remark31,
    /// A corrected recursion for `G^{π^j}_{π^{j-1}}`, against the oracle.
    Remark31Refined,
    /// The functional equation for `Ψ`, plus `[y^k]Ψ = G_<k>`.
    Thm32Feq,
    /// The layered once equation, against the oracle.
    Thm33,
    /// The six Chebyshev identities.
    Lemma41,
}

impl RelationId {
    pub const ALL: [RelationId; 9] = [
        RelationId::Thm21,
        RelationId::Thm22Feq,
        RelationId::Thm23,
        RelationId::Thm31,
        RelationId::Remark31,
        RelationId::Remark31Refined,
        RelationId::Thm32Feq,
        RelationId::Thm33,
        RelationId::Lemma41,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationId::Thm21 => "thm21",
            RelationId::Thm22Feq => "thm22feq",
            RelationId::Thm23 => "thm23",
            RelationId::Thm31 => "thm31",
            RelationId::Remark31 => "remark31",
            RelationId::Remark31Refined => "remark31-refined",
            RelationId::Thm32Feq => "thm32feq",
            RelationId::Thm33 => "thm33",
            RelationId::Lemma41 => "lemma41",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = RelationId::ALL.iter().map(|r| r.as_str()).collect();
                format!("unknown relation `{s}` (known: {})", known.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationParams {
    /// Explicit patterns; empty means sweep `k_min..=k_max`.
    pub patterns: Vec<Pattern>,
    pub k_min: usize,
    pub k_max: usize,
    /// Largest `r` in layered sweeps.
    pub max_r: usize,
    /// Coefficients are compared for `n ≤ terms`.
    pub terms: usize,
    /// `(N_x, N_y)` for the bivariate relations.
    pub orders: (usize, usize),
    /// Largest polynomial index for the identity sweep.
    pub max_index: usize,
}

impl Default for RelationParams {
    fn default() -> Self {
        RelationParams {
            patterns: Vec::new(),
            k_min: 1,
            k_max: 5,
            max_r: 3,
            terms: 9,
            orders: (10, 8),
            max_index: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceResult {
    pub label: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: RelationId,
    pub instances: Vec<InstanceResult>,
    /// Set for the identity sweep, which reports per identity.
    pub max_index: Option<usize>,
}

impl RelationReport {
    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.holds).count()
    }

    pub fn all_hold(&self) -> bool {
        !self.instances.is_empty() && self.passed() == self.instances.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.holds)
    }

    pub fn summary(&self) -> String {
        match self.max_index {
            Some(max) => format!("{}/{} identities hold over 1..{max}", self.passed(), self.instances.len()),
            None => format!("{}: {}/{} instances hold", self.relation, self.passed(), self.instances.len()),
        }
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instances {
            match (&i.detail, i.holds) {
                (Some(d), false) => writeln!(f, "FAIL {}: {d}", i.label)?,
                (_, false) => writeln!(f, "FAIL {}", i.label)?,
                (Some(d), true) => writeln!(f, "ok   {}: {d}", i.label)?,
                (None, true) => writeln!(f, "ok   {}", i.label)?,
            }
        }
        write!(f, "{}", self.summary())
    }
}

pub fn verify_relation(engine: &Engine, id: RelationId, params: &RelationParams) -> Result<RelationReport> {
    if params.k_min > params.k_max {
        return Err(EngineError::InvalidParams(format!(
            "empty range {}..{}",
            params.k_min, params.k_max
        )));
    }
    let mut ctx = Ctx::new(engine, params.terms);
    let mut instances = Vec::new();
    let mut max_index = None;
    match id {
        RelationId::Thm21 => {
            for t in ctx.patterns(params, false)? {
                instances.push(ctx.thm21(&t)?);
            }
        }
        RelationId::Thm23 | RelationId::Thm33 | RelationId::Thm31 => {
            let layered_only = id != RelationId::Thm31 || params.patterns.is_empty();
            for t in ctx.patterns(params, layered_only)? {
                instances.push(match id {
                    RelationId::Thm23 => ctx.thm23(&t)?,
                    RelationId::Thm33 => ctx.thm33(&t)?,
                    _ => ctx.thm31(&t)?,
                });
            }
        }
        RelationId::Remark31 | RelationId::Remark31Refined => {
            for t in ctx.patterns(params, params.patterns.is_empty())? {
                let d = canonical_decompose(&t)?;
                if d.r() < 2 {
                    if params.patterns.is_empty() {
                        continue;
                    }
                    return Err(EngineError::InvalidParams(format!("{t} has r = {}, the recursion needs r >= 2", d.r())));
                }
                for j in 2..=d.r() {
                    instances.push(if id == RelationId::Remark31 {
                        ctx.remark31(&t, &d, j)?
                    } else {
                        ctx.remark31_refined(&t, &d, j)?
                    });
                }
            }
        }
        RelationId::Thm22Feq => instances.extend(ctx.thm22feq(params.orders)?),
        RelationId::Thm32Feq => instances.extend(ctx.thm32feq(params.orders)?),
        RelationId::Lemma41 => {
            let sweep = sweep_identities(params.max_index);
            for (part, n, ok) in sweep.parts {
                instances.push(InstanceResult {
                    label: format!("({part})"),
                    holds: n > 0 && n == ok,
                    detail: Some(format!("{ok}/{n} parameter tuples")),
                });
            }
            max_index = Some(params.max_index);
        }
    }
    Ok(RelationReport { relation: id, instances, max_index })
}

type SeriesKey = (usize, Vec<Pattern>, Option<Pattern>);

struct Ctx<'a> {
    engine: &'a Engine,
    n: usize,
    oracle_cache: HashMap<SeriesKey, PowerSeries>,
}

fn compare(label: String, lhs: &PowerSeries, rhs: &PowerSeries) -> InstanceResult {
    let holds = lhs == rhs;
    let render = |s: &PowerSeries| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    InstanceResult {
        label,
        holds,
        detail: (!holds).then(|| format!("lhs {} | rhs {}", render(lhs), render(rhs))),
    }
}

fn exact(label: String, lhs: &RationalFunction, rhs: &RationalFunction) -> InstanceResult {
    let holds = lhs == rhs;
    InstanceResult {
        label,
        holds,
        detail: (!holds).then(|| format!("lhs {lhs} | rhs {rhs}")),
    }
}

fn layered(params: &[u32]) -> Pattern {
    match params {
        [0] => Pattern::empty(),
        _ => Pattern::layered(params).expect("parameters come from a valid layered pattern"),
    }
}

fn skew_range(d: &CanonicalDecomposition, from: usize, to_inclusive: usize) -> Pattern {
    (from..=to_inclusive).fold(Pattern::empty(), |acc, i| acc.skew_sum(&d.block(i)))
}

fn bracket(ms: &[u32]) -> String {
    let s: Vec<String> = ms.iter().map(u32::to_string).collect();
    format!("[{}]", s.join(","))
}

impl<'a> Ctx<'a> {
    fn new(engine: &'a Engine, n: usize) -> Self {
        Ctx { engine, n, oracle_cache: HashMap::new() }
    }

    fn patterns(&self, params: &RelationParams, layered_only: bool) -> Result<Vec<Pattern>> {
        if !params.patterns.is_empty() {
            for t in &params.patterns {
                require_132_avoider(t)?;
                if t.is_empty() {
                    return Err(EngineError::InvalidParams("the empty pattern has no decomposition".into()));
                }
                if layered_only {
                    match layered_params(t) {
                        Some(ms) if ms.len() >= 2 => {}
                        _ => {
                            return Err(EngineError::InvalidParams(format!(
                                "{t} is not a layered pattern with r >= 1"
                            )))
                        }
                    }
                }
            }
            return Ok(params.patterns.clone());
        }
        let mut out = Vec::new();
        for k in params.k_min.max(1)..=params.k_max {
            for t in patterns_avoiding_132(k as u32) {
                if !layered_only {
                    out.push(t);
                } else if let Some(ms) = layered_params(&t) {
                    if (2..=params.max_r + 1).contains(&ms.len()) {
                        out.push(t);
                    }
                }
            }
        }
        Ok(out)
    }

    fn x(&self) -> PowerSeries {
        PowerSeries::one(self.n).shift_up(1)
    }

    fn f_series(&self, t: &Pattern) -> Result<PowerSeries> {
        Ok(self.engine.avoid_gf(t)?.series(self.n)?)
    }

    fn rf_series(&self, f: &RationalFunction) -> Result<PowerSeries> {
        Ok(f.series(self.n)?)
    }

    /// Oracle series of permutations avoiding every pattern in `avoid` and,
    /// if given, containing `once` exactly once.
    fn oracle(&mut self, avoid: &[Pattern], once: Option<&Pattern>) -> Result<PowerSeries> {
        if once.is_some_and(Pattern::is_empty) {
            return Ok(PowerSeries::one(self.n));
        }
        let mut key_avoid = avoid.to_vec();
        key_avoid.sort();
        key_avoid.dedup();
        let key = (self.n, key_avoid, once.cloned());
        if let Some(s) = self.oracle_cache.get(&key) {
            return Ok(s.clone());
        }
        let spec = ConstraintSpec {
            avoid: key.1.clone(),
            contain: once.map(|p| (p.clone(), CountMode::Exactly(1))),
        };
        let table = oracle::series(&spec, self.n)?;
        let counts: Vec<i64> = table.counts.iter().map(|&c| c as i64).collect();
        let s = PowerSeries::from_ints(&counts);
        self.oracle_cache.insert(key, s.clone());
        Ok(s)
    }

    /// `G^{avoid}_{contain}`.
    fn g(&mut self, contain: &Pattern, avoid: &Pattern) -> Result<PowerSeries> {
        self.oracle(std::slice::from_ref(avoid), Some(contain))
    }

    fn thm21(&mut self, t: &Pattern) -> Result<InstanceResult> {
        let d = canonical_decompose(t)?;
        let x = RationalFunction::x();
        let mut rhs = RationalFunction::one();
        for j in 0..=d.r() as isize {
            let diff = &self.engine.avoid_gf(&d.prefix(j)?)? - &self.engine.avoid_gf(&d.prefix(j - 1)?)?;
            rhs = &rhs + &(&x * &(&diff * &self.engine.avoid_gf(&d.suffix(j)?)?));
        }
        Ok(exact(format!("tau={t}"), &self.engine.avoid_gf(t)?, &rhs))
    }

    fn thm23(&mut self, t: &Pattern) -> Result<InstanceResult> {
        let ms = layered_params(t).expect("checked layered");
        let r = ms.len() - 1;
        let x = RationalFunction::x();
        let e = self.engine;
        let r_a = r_or_zero((ms[0] - ms[1] - 1) as usize);
        let r_b = r_or_zero(ms[r] as usize);
        let lhs = &(&(&RationalFunction::one() - &(&x * &r_a)) - &(&x * &r_b)) * &e.avoid_gf(t)?;
        let mut rhs = &RationalFunction::one() - &(&(&x * &r_a) * &e.avoid_gf(&layered(&ms[1..]))?);
        for j in 2..=r {
            let head: Vec<u32> = ms[..j].iter().map(|m| m - ms[j]).collect();
            let diff = &e.avoid_gf(&layered(&ms[j - 1..]))? - &e.avoid_gf(&layered(&ms[j..]))?;
            rhs = &rhs + &(&x * &(&e.avoid_gf(&layered(&head))? * &diff));
        }
        Ok(exact(bracket(&ms), &lhs, &rhs))
    }

    fn thm31(&mut self, t: &Pattern) -> Result<InstanceResult> {
        let d = canonical_decompose(t)?;
        let r = d.r() as isize;
        let x = self.x();
        let one = PowerSeries::one(self.n);
        let g_tau = self.oracle(&[], Some(t))?;
        let f_pi0 = self.f_series(&d.prefix(0)?)?;
        if r == 0 {
            let lhs = g_tau.mul(&one.sub(&x.mul(&f_pi0)));
            let g_pi0 = self.oracle(&[], Some(&d.prefix(0)?))?;
            let rhs = x.mul(&self.f_series(t)?).mul(&g_pi0);
            return Ok(compare(format!("tau={t} (r=0)"), &lhs, &rhs));
        }
        let f_sigma_r = self.f_series(&d.suffix(r)?)?;
        let lhs = one.sub(&x.mul(&f_pi0)).sub(&x.mul(&f_sigma_r)).mul(&g_tau);
        let mut rhs = PowerSeries::zero(self.n);
        for j in 1..=r {
            let a = self.g(&d.prefix(j - 1)?, &d.prefix(j)?)?;
            let b = self.g(&d.suffix(j)?, &d.suffix(j - 1)?)?;
            rhs = rhs.add(&x.mul(&a).mul(&b));
        }
        Ok(compare(format!("tau={t}"), &lhs, &rhs))
    }

    fn remark31(&mut self, t: &Pattern, d: &CanonicalDecomposition, j: usize) -> Result<InstanceResult> {
        let x = self.x();
        let one = PowerSeries::one(self.n);
        let j = j as isize;
        let h = self.g(&d.prefix(j - 1)?, &d.prefix(j)?)?;
        let f_seg = self.f_series(&d.segment(j as usize))?;
        let f_pi0 = self.f_series(&d.prefix(0)?)?;
        let lhs = one.sub(&x.mul(&f_seg)).sub(&x.mul(&f_pi0)).mul(&h);
        let inner = canonical_decompose(&d.prefix(j - 1)?)?;
        let mut rhs = PowerSeries::zero(self.n);
        for i in 1..j {
            let a = self.g(&d.prefix(i - 1)?, &d.prefix(i)?)?;
            let b = self.g(&inner.suffix(i)?, &inner.suffix(i - 1)?)?;
            rhs = rhs.add(&x.mul(&a).mul(&b));
        }
        Ok(compare(format!("tau={t} j={j}"), &lhs, &rhs))
    }

    /// `(1 - xF_{π^0} - xF_{B_{j-1},B_j}) G^{π^j}_{π^{j-1}} = x Σ_{i=1}^{j-1} A_i C_i`
    /// with blocks `B_i = (τ^i, m_i)`, `A_i = G^{π^i}_{π^{i-1}}` for `i ≥ 2`,
    /// `A_1` counting `τ^0` once while avoiding `B_0` and `B_0 ⊖ B_1`, and
    /// `C_i` counting `B_i ⊖ ... ⊖ B_{j-1}` once while avoiding the same run
    /// extended by `B_{i-1}` on the left or by `B_j` on the right.
    fn remark31_refined(&mut self, t: &Pattern, d: &CanonicalDecomposition, j: usize) -> Result<InstanceResult> {
        let x = self.x();
        let one = PowerSeries::one(self.n);
        let ji = j as isize;
        let h = self.g(&d.prefix(ji - 1)?, &d.prefix(ji)?)?;
        let f_pi0 = self.f_series(&d.prefix(0)?)?;
        let f_pair = self.oracle(&[d.block(j - 1), d.block(j)], None)?;
        let lhs = one.sub(&x.mul(&f_pi0)).sub(&x.mul(&f_pair)).mul(&h);
        let mut rhs = PowerSeries::zero(self.n);
        for i in 1..j {
            let a = if i == 1 {
                self.oracle(&[skew_range(d, 0, 1), d.block(0)], Some(&d.segment(0)))?
            } else {
                self.g(&d.prefix(i as isize - 1)?, &d.prefix(i as isize)?)?
            };
            let c = self.oracle(
                &[skew_range(d, i - 1, j - 1), skew_range(d, i, j)],
                Some(&skew_range(d, i, j - 1)),
            )?;
            rhs = rhs.add(&x.mul(&a).mul(&c));
        }
        Ok(compare(format!("tau={t} j={j}"), &lhs, &rhs))
    }

    fn thm33(&mut self, t: &Pattern) -> Result<InstanceResult> {
        let mut ms = layered_params(t).expect("checked layered");
        let r = ms.len() - 1;
        let label = bracket(&ms);
        ms.push(0);
        let dd = |i: usize, j: usize| ms[i] - ms[j];
        let x = self.x();
        let one = PowerSeries::one(self.n);
        let ra = self.rf_series(&r_or_zero((dd(0, 1) - 1) as usize))?;
        let rb = self.rf_series(&r_or_zero(ms[r] as usize))?;
        let lhs = one.sub(&x.mul(&ra)).sub(&x.mul(&rb)).mul(&self.oracle(&[], Some(t))?);

        let tail = |from: usize| layered(&ms[from..=r]);
        let first = self.g(&layered(&[dd(0, 1) - 1]), &layered(&[dd(0, 2), dd(1, 2)]))?;
        let mut rhs = x.mul(&first).mul(&self.g(&tail(1), &tail(0))?);
        for j in 2..=r {
            let contain: Vec<u32> = (0..j).map(|i| dd(i, j)).collect();
            let avoid: Vec<u32> = (0..=j).map(|i| dd(i, j + 1)).collect();
            let a = self.g(&layered(&contain), &layered(&avoid))?;
            let b = self.g(&tail(j), &tail(j - 1))?;
            rhs = rhs.add(&x.mul(&a).mul(&b));
        }
        Ok(compare(label, &lhs, &rhs))
    }

    fn thm22feq(&mut self, (nx, ny): (usize, usize)) -> Result<Vec<InstanceResult>> {
        if nx == 0 || ny < 2 {
            return Err(EngineError::InvalidParams("Phi needs Nx >= 1 and Ny >= 2".into()));
        }
        let phi = phi_closed_series(nx, ny)?;
        let mut out = vec![InstanceResult {
            label: format!("functional equation to (x^{nx}, y^{})", ny - 1),
            holds: phi_residual(&phi)?.is_zero(),
            detail: None,
        }];
        for k in 1..=ny {
            let f = self.engine.avoid_gf(&Pattern::decreasing(k as u32))?.series(nx)?;
            out.push(compare(format!("[y^{k}] = F_<{k}>"), &phi.y_slice(k), &f));
        }
        Ok(out)
    }

    fn thm32feq(&mut self, (nx, ny): (usize, usize)) -> Result<Vec<InstanceResult>> {
        if nx == 0 || ny == 0 {
            return Err(EngineError::InvalidParams("Psi needs Nx, Ny >= 1".into()));
        }
        let psi = psi_closed_series(nx, ny)?;
        let mut out = vec![InstanceResult {
            label: format!("functional equation to (x^{nx}, y^{ny})"),
            holds: psi_residual(&psi).is_zero(),
            detail: None,
        }];
        let saved = self.n;
        self.n = nx;
        for k in 1..=ny {
            let g = self.oracle(&[], Some(&Pattern::decreasing(k as u32)))?;
            out.push(compare(format!("[y^{k}] = G_<{k}> (oracle)"), &psi.y_slice(k), &g));
        }
        self.n = saved;
        Ok(out)
    }
}
