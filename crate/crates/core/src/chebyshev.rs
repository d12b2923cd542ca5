//! Chebyshev polynomials of the second kind and their radical-free companions.
//!
//! The generating functions in this crate are naturally written with
//! `U_p(z)` at `z = 1/(2√x)`. To stay inside exact rational arithmetic every
//! such expression is rewritten through the companion polynomial
//!
//! ```text
//! V_p(x) = x^{p/2} · U_p(1/(2√x)).
//! ```
//!
//! Multiplying `U_{p+1} = 2z U_p - U_{p-1}` by `x^{(p+1)/2}` and using
//! `2z√x = 1` gives `V_{p+1} = V_p - x V_{p-1}` with `V_0 = V_1 = 1`, so each
//! `V_p` is an integer polynomial of degree `⌊p/2⌋` with `V_p(0) = 1`.
//! Substituting `U_p = x^{-p/2} V_p` and collecting the powers of `√x`:
//!
//! ```text
//! R_p  = U_{p-1} / (√x U_p)                    = V_{p-1} / V_p
//! U_{a+b} / (U_a U_b)                          = V_{a+b} / (V_a V_b)
//! √x U_{a+b+1} / (U_a U_b)                     = V_{a+b+1} / (V_a V_b)
//! U_{a-b-1} / (√x U_a U_b)                     = x^b V_{a-b-1} / (V_a V_b)
//! ```
//!
//! In the last line the exponent is `-(a-b-1)/2 - 1/2 + (a+b)/2 = b`.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChebyshevError {
    #[error("R_p is defined for p >= 1, got {0}")]
    IndexTooSmall(usize),
    #[error("parameters {params:?} outside the valid range of identity ({part}): {range}")]
    OutOfRange {
        part: LemmaPart,
        params: Vec<usize>,
        range: &'static str,
    },
    #[error("identity ({part}) takes {expected} parameters, got {got}")]
    Arity { part: LemmaPart, expected: usize, got: usize },
}

/// `U_p(z)` as an integer polynomial in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebU {
    pub p: usize,
    pub poly: Polynomial,
}

/// `V_p(x) = x^{p/2} U_p(1/(2√x))` as an integer polynomial in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionV {
    pub p: usize,
    pub poly: Polynomial,
}

pub fn chebyshev_u(p: usize) -> ChebU {
    let two_z = Polynomial::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Polynomial::zero(), Polynomial::one());
    for _ in 0..p {
        let next = &(&two_z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    ChebU { p, poly: cur }
}

pub fn v_poly(p: usize) -> CompanionV {
    CompanionV { p, poly: v_signed(p as isize) }
}

/// `V_p` extended by the recurrence to `V_{-1} = 0`.
pub(crate) fn v_signed(p: isize) -> Polynomial {
    if p < 0 {
        return Polynomial::zero();
    }
    let x = Polynomial::var();
    let (mut prev, mut cur) = (Polynomial::zero(), Polynomial::one());
    for _ in 0..p {
        let next = &cur - &(&x * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

pub(crate) fn v_rf(p: usize) -> RationalFunction {
    RationalFunction::from_poly(v_signed(p as isize))
}

/// `R_p(x) = V_{p-1}(x) / V_p(x)`.
pub fn r_func(p: usize) -> Result<RationalFunction, ChebyshevError> {
    if p < 1 {
        return Err(ChebyshevError::IndexTooSmall(p));
    }
    Ok(r_or_zero(p))
}

/// `R_p` with the convention `R_0 = 0`, the generating function of
/// permutations avoiding the empty pattern.
pub(crate) fn r_or_zero(p: usize) -> RationalFunction {
    RationalFunction::new(v_signed(p as isize - 1), v_signed(p as isize))
        .expect("V_p(0) = 1, never the zero polynomial")
}

/// The six identities among `U_p` and `R_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaPart {
    /// `U_s U_t - U_{s+w} U_{t-w} = U_{w-1} U_{s-t+w-1}`, `s+w-1 ≥ t ≥ w ≥ 1`.
    I,
    /// `U_{s+w} U_{t+w} - U_s U_t = U_{w-1} U_{s+t+w+1}`, `s,t ≥ 0`, `w ≥ 1`.
    II,
    /// `R_{p+1} = 1 / (1 - x R_p)`, `p ≥ 1`.
    III,
    /// `1 - x R_a R_b = U_{a+b} / (U_a U_b)`, `a,b ≥ 1`.
    IV,
    /// `1 - x R_a - x R_b = √x U_{a+b+1} / (U_a U_b)`, `a,b ≥ 1`.
    V,
    /// `R_a - R_b = U_{a-b-1} / (√x U_a U_b)`, `a ≥ b+1 ≥ 2`.
    VI,
}

impl LemmaPart {
    pub const ALL: [LemmaPart; 6] = [
        LemmaPart::I,
        LemmaPart::II,
        LemmaPart::III,
        LemmaPart::IV,
        LemmaPart::V,
        LemmaPart::VI,
    ];

    pub fn arity(self) -> usize {
        match self {
            LemmaPart::I | LemmaPart::II => 3,
            LemmaPart::III => 1,
            LemmaPart::IV | LemmaPart::V | LemmaPart::VI => 2,
        }
    }

    /// Largest polynomial index the identity touches for these parameters.
    fn max_index(self, q: &[usize]) -> usize {
        match self {
            LemmaPart::I => q[0] + q[2],
            LemmaPart::II => (q[0] + q[2]).max(q[1] + q[2]).max(q[0] + q[1] + q[2] + 1),
            LemmaPart::III => q[0] + 1,
            LemmaPart::IV => q[0] + q[1],
            LemmaPart::V => q[0] + q[1] + 1,
            LemmaPart::VI => q[0],
        }
    }

    fn validate(self, q: &[usize]) -> Result<(), ChebyshevError> {
        if q.len() != self.arity() {
            return Err(ChebyshevError::Arity { part: self, expected: self.arity(), got: q.len() });
        }
        let (ok, range) = match self {
            LemmaPart::I => (q[0] + q[2] > q[1] && q[1] >= q[2] && q[2] >= 1, "s+w-1 >= t >= w >= 1"),
            LemmaPart::II => (q[2] >= 1, "s,t >= 0, w >= 1"),
            LemmaPart::III => (q[0] >= 1, "p >= 1"),
            LemmaPart::IV | LemmaPart::V => (q[0] >= 1 && q[1] >= 1, "a,b >= 1"),
            LemmaPart::VI => (q[0] > q[1] && q[1] >= 1, "a >= b+1 >= 2"),
        };
        if ok {
            Ok(())
        } else {
            Err(ChebyshevError::OutOfRange { part: self, params: q.to_vec(), range })
        }
    }

    /// Every valid parameter tuple whose largest index is at most `max`.
    pub fn parameter_sweep(self, max: usize) -> Vec<Vec<usize>> {
        let range = 0..=max;
        let mut out = Vec::new();
        match self.arity() {
            1 => out.extend(range.map(|p| vec![p])),
            2 => {
                for a in range.clone() {
                    out.extend(range.clone().map(|b| vec![a, b]));
                }
            }
            _ => {
                for a in range.clone() {
                    for b in range.clone() {
                        out.extend(range.clone().map(|c| vec![a, b, c]));
                    }
                }
            }
        }
        out.retain(|q| self.validate(q).is_ok() && self.max_index(q) <= max);
        out
    }
}

impl fmt::Display for LemmaPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaPart::I => "i",
            LemmaPart::II => "ii",
            LemmaPart::III => "iii",
            LemmaPart::IV => "iv",
            LemmaPart::V => "v",
            LemmaPart::VI => "vi",
        })
    }
}

impl std::str::FromStr for LemmaPart {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaPart::ALL
            .into_iter()
            .find(|p| p.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

/// Checks one identity exactly: parts (i), (ii) as polynomial identities in
/// `z`, parts (iii)–(vi) as equalities of canonical rational functions in `x`
/// using the `V`-forms from the module documentation.
pub fn check_identity(part: LemmaPart, params: &[usize]) -> Result<bool, ChebyshevError> {
    part.validate(params)?;
    let u = |p: usize| chebyshev_u(p).poly;
    let r = |p: usize| r_or_zero(p);
    let v = v_rf;
    let x = RationalFunction::x();
    let one = RationalFunction::one();
    let quot = |n: RationalFunction, d: RationalFunction| n.checked_div(&d).expect("V_p is never zero");
    let holds = match part {
        LemmaPart::I => {
            let (s, t, w) = (params[0], params[1], params[2]);
            &(&u(s) * &u(t)) - &(&u(s + w) * &u(t - w)) == &u(w - 1) * &u(s + w - t - 1)
        }
        LemmaPart::II => {
            let (s, t, w) = (params[0], params[1], params[2]);
            &(&u(s + w) * &u(t + w)) - &(&u(s) * &u(t)) == &u(w - 1) * &u(s + t + w + 1)
        }
        LemmaPart::III => {
            let p = params[0];
            r(p + 1) == quot(one.clone(), &one - &(&x * &r(p)))
        }
        LemmaPart::IV => {
            let (a, b) = (params[0], params[1]);
            &one - &(&x * &(&r(a) * &r(b))) == quot(v(a + b), &v(a) * &v(b))
        }
        LemmaPart::V => {
            let (a, b) = (params[0], params[1]);
            &(&one - &(&x * &r(a))) - &(&x * &r(b)) == quot(v(a + b + 1), &v(a) * &v(b))
        }
        LemmaPart::VI => {
            let (a, b) = (params[0], params[1]);
            &r(a) - &r(b) == quot(&RationalFunction::x_pow(b) * &v(a - b - 1), &v(a) * &v(b))
        }
    };
    Ok(holds)
}

/// Outcome of an exhaustive identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySweep {
    pub max: usize,
    /// `(part, instances checked, instances that held)`.
    pub parts: Vec<(LemmaPart, usize, usize)>,
}

impl IdentitySweep {
    pub fn identities_holding(&self) -> usize {
        self.parts.iter().filter(|(_, n, ok)| n == ok && *n > 0).count()
    }

    pub fn all_hold(&self) -> bool {
        self.identities_holding() == self.parts.len()
    }
}

pub fn sweep_identities(max: usize) -> IdentitySweep {
    let parts = LemmaPart::ALL
        .into_iter()
        .map(|part| {
            let sweep = part.parameter_sweep(max);
            let ok = sweep
                .iter()
                .filter(|q| check_identity(part, q).unwrap_or(false))
                .count();
            (part, sweep.len(), ok)
        })
        .collect();
    IdentitySweep { max, parts }
}

/// `V_p(0) = 1` as a rational, for callers that need the constant term.
pub fn v_constant_term(p: usize) -> BigRational {
    v_poly(p).poly.coeff(0)
}
