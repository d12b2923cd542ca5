use crate::algebra::RationalFunction;
use crate::chebyshev::{r_or_zero, v_rf};
use crate::pattern::{canonical_decompose, layered_params, occurrence_count, FamilySpec, Pattern};

use super::{require_132_avoider, Engine, EngineError, Result};

impl Engine {
    /// `G_τ(x) = Σ_n #{α ∈ S_n(132) : α contains τ exactly once} x^n`.
    ///
    /// Supported: `[k]`, two-layer `[k,m]`, and `τ = (π, k)` with `r = 0`
    /// where `π` is supported and either `τ` contains `π` at least twice or
    /// `π` is a two-layer `[m,p]`. In the `r = 0` step
    ///
    /// ```text
    /// G_τ = x F_τ G^τ_π / (1 - x F_π),
    /// ```
    ///
    /// `G^τ_π` (contain `π` once, avoid `τ`) equals `G_π` when `τ` contains
    /// `π` twice; for `π = [m,p]` it has its own closed form. Each step
    /// drops the last entry, so the chain ends at a layered base.
    pub fn once_gf(&self, pat: &Pattern) -> Result<RationalFunction> {
        require_132_avoider(pat)?;
        self.once_rec(pat)
    }

    fn once_rec(&self, pat: &Pattern) -> Result<RationalFunction> {
        if pat.is_empty() {
            return Err(EngineError::unsupported(
                pat,
                "every permutation contains the empty pattern once, so G is the Catalan function",
            ));
        }
        if let Some(g) = Self::memo_get(&self.once_memo, pat) {
            return Ok(g);
        }
        let value = match layered_params(pat).as_deref() {
            Some(&[k]) => g_increasing_closed(k),
            Some(&[k, m]) => g_two_layer_closed(k, m),
            Some(_) => {
                return Err(EngineError::unsupported(
                    pat,
                    "layered patterns with three or more layers need two-pattern functions",
                ))
            }
            None => self.once_chain_step(pat)?,
        };
        Ok(Self::memo_put(&self.once_memo, pat, value))
    }

    fn once_chain_step(&self, pat: &Pattern) -> Result<RationalFunction> {
        let d = canonical_decompose(pat)?;
        if d.r() > 0 {
            return Err(EngineError::unsupported(
                pat,
                "more than one right-to-left maximum; the equation involves two-pattern functions",
            ));
        }
        let pi = d.prefix(0)?;
        let g_rel = if occurrence_count(pat, &pi, Some(2)) >= 2 {
            self.once_rec(&pi)?
        } else if let Some(&[m, p]) = layered_params(&pi).as_deref() {
            g_two_layer_then_max(m, p)
        } else {
            return Err(EngineError::unsupported(
                pat,
                format!("the chain reaches {pi}, which is neither contained twice nor a two-layer pattern"),
            ));
        };
        let x = RationalFunction::x();
        let f_tau = self.avoid_gf(pat)?;
        let f_pi = self.avoid_gf(&pi)?;
        let num = &(&x * &f_tau) * &g_rel;
        Ok(num.checked_div(&(&RationalFunction::one() - &(&x * &f_pi)))?)
    }
}

/// `G_{[k]} = x^k / V_k²`, the `V`-form of `1 / U_k²`. `G_{[0]} = 1`.
pub fn g_increasing_closed(k: u32) -> RationalFunction {
    let v = v_rf(k as usize);
    RationalFunction::x_pow(k as usize)
        .checked_div(&(&v * &v))
        .expect("V_k is never zero")
}

/// `G_{[k,m]} = x^k / (V_k V_{m'} V_{k-m'-1})` with `m' = min(m, k-m)`.
///
/// Taking `m' = min` is the inverse symmetry `[k,m]^{-1} = [k,k-m]`; with
/// `m' = m` the formula is only right when `2m ≤ k`.
pub fn g_two_layer_closed(k: u32, m: u32) -> RationalFunction {
    let (k, mm) = (k as usize, m.min(k - m) as usize);
    let den = &(&v_rf(k) * &v_rf(mm)) * &v_rf(k - mm - 1);
    RationalFunction::x_pow(k).checked_div(&den).expect("V_p is never zero")
}

/// `G^{[m,p]}_{[p]} = x G_{[p-1]} R_p R_{min(p,q)}`, `q = m - p`: contain
/// `[p]` once while avoiding `[m,p]`.
fn g_increasing_avoiding_two_layer(m: u32, p: u32) -> RationalFunction {
    let q = m - p;
    &(&RationalFunction::x() * &g_increasing_closed(p - 1))
        * &(&r_or_zero(p as usize) * &r_or_zero(p.min(q) as usize))
}

/// `G^{([m,p], m+1)}_{[m,p]} = x G_{[q-1]} R_q · G^{[m,p]}_{[p]}`, `q = m - p`.
fn g_two_layer_then_max(m: u32, p: u32) -> RationalFunction {
    let q = m - p;
    let lead = &(&RationalFunction::x() * &g_increasing_closed(q - 1)) * &r_or_zero(q as usize);
    &lead * &g_increasing_avoiding_two_layer(m, p)
}

/// `G_{{k,m,p}} = x^k V_m² / (V_k² V_{p'}² V_{q'} V_{q'-1})` with
/// `p' = min(p, m-p)`, `q' = max(p, m-p)`.
pub fn g_wedge_top_closed(k: u32, m: u32, p: u32) -> RationalFunction {
    let (pp, qq) = (p.min(m - p) as usize, p.max(m - p) as usize);
    let vm = v_rf(m as usize);
    let vk = v_rf(k as usize);
    let vp = v_rf(pp);
    let den = &(&(&vk * &vk) * &(&vp * &vp)) * &(&v_rf(qq) * &v_rf(qq - 1));
    (&RationalFunction::x_pow(k as usize) * &(&vm * &vm))
        .checked_div(&den)
        .expect("V_p is never zero")
}

/// `G_{<k>}` for `k ≤ 2`, the only decreasing patterns in the layered
/// families above.
pub fn g_decreasing_closed(k: u32) -> Option<RationalFunction> {
    match k {
        1 => Some(g_increasing_closed(1)),
        2 => Some(g_two_layer_closed(2, 1)),
        _ => None,
    }
}

/// Closed forms for the once side.
pub fn once_gf_closed(spec: &FamilySpec) -> Result<RationalFunction> {
    let unsupported = || match spec.pattern() {
        Some(p) => EngineError::unsupported(&p, "no closed form for this family"),
        None => EngineError::InvalidParams(format!("no closed form for {spec}")),
    };
    match spec {
        FamilySpec::WedgeTop { k, m, p } => Ok(g_wedge_top_closed(*k, *m, *p)),
        FamilySpec::Plain => Err(unsupported()),
        _ => match spec.layers().as_deref() {
            Some(&[k]) => Ok(g_increasing_closed(k)),
            Some(&[k, m]) => Ok(g_two_layer_closed(k, m)),
            _ => Err(unsupported()),
        },
    }
}
