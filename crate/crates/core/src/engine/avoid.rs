use crate::algebra::RationalFunction;
use crate::chebyshev::{r_or_zero, v_rf};
use crate::pattern::{canonical_decompose, classify, is_wedge, FamilySpec, Pattern};

use super::{require_132_avoider, Engine, EngineError, Result};

impl Engine {
    /// `F_τ(x) = Σ_n |S_n(132, τ)| x^n`.
    ///
    /// With the canonical decomposition `τ = (τ^0, m_0, ..., τ^r, m_r)`,
    /// splitting a 132-avoider around its maximum gives
    ///
    /// ```text
    /// F_τ = 1 + x Σ_{j=0}^{r} (F_{π^j} - F_{π^{j-1}}) F_{σ^j}.
    /// ```
    ///
    /// `F_τ` itself appears on the right as `F_{σ^0}` and `F_{π^r}`, so the
    /// equation is solved for it:
    ///
    /// ```text
    /// F_τ (1 - x F_{π^0} - x F_{σ^r})
    ///     = 1 + x Σ_{j=1}^{r-1} (F_{π^j} - F_{π^{j-1}}) F_{σ^j} - x F_{π^{r-1}} F_{σ^r}
    /// ```
    ///
    /// for `r ≥ 1`, and `F_τ = 1 / (1 - x F_{π^0})` for `r = 0`. Every pattern
    /// on the right is strictly shorter than `τ`. `F_∅ = 0`, `F_1 = 1`.
    pub fn avoid_gf(&self, pat: &Pattern) -> Result<RationalFunction> {
        require_132_avoider(pat)?;
        self.avoid_rec(pat)
    }

    fn avoid_rec(&self, pat: &Pattern) -> Result<RationalFunction> {
        match pat.len() {
            0 => return Ok(RationalFunction::zero()),
            1 => return Ok(RationalFunction::one()),
            _ => {}
        }
        if let Some(f) = Self::memo_get(&self.avoid_memo, pat) {
            return Ok(f);
        }
        let d = canonical_decompose(pat)?;
        let r = d.r() as isize;
        let x = RationalFunction::x();
        let f_pi0 = self.avoid_rec(&d.prefix(0)?)?;
        let value = if r == 0 {
            (&RationalFunction::one() - &(&x * &f_pi0)).recip()?
        } else {
            let f_sigma_r = self.avoid_rec(&d.suffix(r)?)?;
            let mut rhs = RationalFunction::one();
            let mut f_prev = f_pi0.clone();
            for j in 1..r {
                let f_pi = self.avoid_rec(&d.prefix(j)?)?;
                let f_sigma = self.avoid_rec(&d.suffix(j)?)?;
                rhs = &rhs + &(&x * &(&(&f_pi - &f_prev) * &f_sigma));
                f_prev = f_pi;
            }
            // f_prev is now F_{π^{r-1}}
            rhs = &rhs - &(&x * &(&f_prev * &f_sigma_r));
            let divisor = &(&RationalFunction::one() - &(&x * &f_pi0)) - &(&x * &f_sigma_r);
            rhs.checked_div(&divisor)?
        };
        Ok(Self::memo_put(&self.avoid_memo, pat, value))
    }
}

/// The three-layer closed form in `V`-form, `α = k-m_1`, `β = m_1-m_2`,
/// `γ = m_2`:
///
/// ```text
/// F_{[k,m_1,m_2]} = (V_{α+β} V_{α+γ-1} V_{β+γ} + x^{α+γ} V_{β-1} V_β)
///                   / (V_{α+β} V_{α+γ} V_{β+γ}).
/// ```
///
/// From `U_p = x^{-p/2} V_p`: the first term of the `U`-form carries
/// `x^{-(2α+2β+2γ-1)/2}` over `√x · x^{-(α+β+γ)}`, net `x^0`; the second
/// carries `x^{-(2β-1)/2}`, net `x^{α+γ}`.
pub fn thm25_closed(k: u32, m1: u32, m2: u32) -> Result<RationalFunction> {
    if !(k > m1 && m1 > m2 && m2 > 0) {
        return Err(EngineError::InvalidParams(format!(
            "three-layer parameters need k > m1 > m2 > 0, got [{k},{m1},{m2}]"
        )));
    }
    let (a, b, c) = ((k - m1) as usize, (m1 - m2) as usize, m2 as usize);
    let v = v_rf;
    let num = &(&(&v(a + b) * &v(a + c - 1)) * &v(b + c))
        + &(&RationalFunction::x_pow(a + c) * &(&v(b - 1) * &v(b)));
    let den = &(&v(a + b) * &v(a + c)) * &v(b + c);
    Ok(num.checked_div(&den)?)
}

/// Closed forms for the avoid side: `R_k` for `[k]` and `[k,m]`, the
/// three-layer form for `[k,m_1,m_2]`.
pub fn avoid_gf_closed(spec: &FamilySpec) -> Result<RationalFunction> {
    let unsupported = |why: &str| match spec.pattern() {
        Some(p) => EngineError::unsupported(&p, why),
        None => EngineError::InvalidParams(format!("no closed form for {spec}")),
    };
    let layers = spec
        .layers()
        .ok_or_else(|| unsupported("no avoid closed form outside layered (r <= 2) and wedge patterns"))?;
    match layers[..] {
        [k] | [k, _] => Ok(r_or_zero(k as usize)),
        [k, m1, m2] => thm25_closed(k, m1, m2),
        _ => Err(unsupported("layered closed forms stop at three layers")),
    }
}

/// Closed form for a concrete pattern: wedges give `R_k`, otherwise the
/// pattern's family decides.
pub fn avoid_gf_closed_for(pat: &Pattern) -> Result<RationalFunction> {
    require_132_avoider(pat)?;
    if is_wedge(pat) {
        return Ok(r_or_zero(pat.len()));
    }
    match classify(pat) {
        FamilySpec::Plain | FamilySpec::WedgeTop { .. } => Err(EngineError::unsupported(
            pat,
            "no avoid closed form outside layered (r <= 2) and wedge patterns",
        )),
        spec => avoid_gf_closed(&spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::r_func;

    fn pat(v: &[u32]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_int_coeffs(num, den).unwrap()
    }

    #[test]
    fn worked_examples() {
        let e = Engine::new();
        assert_eq!(e.avoid_gf(&pat(&[3, 2, 1])).unwrap(), rf(&[1, -2, 2], &[1, -3, 3, -1]));
        assert_eq!(e.avoid_gf(&pat(&[3, 2, 1, 4])).unwrap(), rf(&[1, -3, 3, -1], &[1, -4, 5, -3]));
        assert_eq!(e.avoid_gf(&Pattern::empty()).unwrap(), RationalFunction::zero());
        assert_eq!(e.avoid_gf(&pat(&[1])).unwrap(), RationalFunction::one());
        assert_eq!(e.avoid_gf(&pat(&[1, 2])).unwrap(), rf(&[1], &[1, -1]));
    }

    #[test]
    fn rejects_132_containers() {
        let e = Engine::new();
        assert!(matches!(e.avoid_gf(&pat(&[1, 4, 3, 2])), Err(EngineError::NotIn132Class(_))));
    }

    #[test]
    fn closed_examples() {
        let r4 = r_func(4).unwrap();
        assert_eq!(r4, rf(&[1, -2], &[1, -3, 1]));
        assert_eq!(avoid_gf_closed(&FamilySpec::Layered(vec![4, 2])).unwrap(), r4);
        let wedge = pat(&[6, 4, 5, 7, 8, 3, 9, 1, 2]);
        assert_eq!(avoid_gf_closed_for(&wedge).unwrap(), r_func(9).unwrap());
        assert_eq!(
            avoid_gf_closed(&FamilySpec::Layered(vec![3, 2, 1])).unwrap(),
            rf(&[1, -2, 2], &[1, -3, 3, -1])
        );
        assert!(avoid_gf_closed(&FamilySpec::Layered(vec![4, 3, 2, 1])).is_err());
        assert!(thm25_closed(3, 3, 1).is_err());
    }
}
