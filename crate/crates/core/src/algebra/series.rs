use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Polynomial};

/// Truncated power series `c_0 + c_1 x + ... + c_N x^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

/// Which variable of a bivariate series an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl PowerSeries {
    /// Panics on an empty coefficient list: a series knows at least `c_0`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&Polynomial::one(), order)
    }

    pub fn from_poly(p: &Polynomial, order: usize) -> Self {
        Self::new((0..=order).map(|i| p.coeff(i)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| {
                (0..=i)
                    .map(|j| &self.coeffs[j] * &rhs.coeffs[i - j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^p`, keeping the truncation order.
    pub fn shift_up(&self, p: usize) -> Self {
        let n = self.order();
        Self::new(
            (0..=n)
                .map(|i| if i < p { BigRational::zero() } else { self.coeffs[i - p].clone() })
                .collect(),
        )
    }

    /// Exact division by `x^p`; the truncation order drops by `p`.
    pub fn exact_divide_by_var(&self, p: usize) -> Result<Self, AlgebraError> {
        if p > self.order() {
            return Err(AlgebraError::TruncationExhausted);
        }
        if self.coeffs[..p].iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(Self::new(self.coeffs[p..].to_vec()))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::PoleAtZero);
        }
        let mut out: Vec<BigRational> = vec![c0.recip()];
        for n in 1..=self.order() {
            let acc = (1..=n)
                .map(|j| &self.coeffs[j] * &out[n - j])
                .fold(BigRational::zero(), |a, b| a + b);
            out.push(-acc / c0);
        }
        Ok(Self::new(out))
    }

    /// Principal square root of a series with constant term 1:
    /// `t_0 = 1`, `2 t_n = s_n - Σ_{0<i<n} t_i t_{n-i}`.
    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::SqrtConstantTerm);
        }
        let two = BigRational::from_integer(2.into());
        let mut t: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=self.order() {
            let cross = (1..n)
                .map(|i| &t[i] * &t[n - i])
                .fold(BigRational::zero(), |a, b| a + b);
            t.push((&self.coeffs[n] - cross) / &two);
        }
        Ok(Self::new(t))
    }
}

/// Truncated bivariate series `Σ c_{n,k} x^n y^k`, `n ≤ N_x`, `k ≤ N_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    nx: usize,
    ny: usize,
    coeffs: Vec<BigRational>,
}

impl BivariateSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BivariateSeries { nx, ny, coeffs: vec![BigRational::zero(); (nx + 1) * (ny + 1)] }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::from_terms(nx, ny, &[(1, 0, 0)])
    }

    /// Sum of integer terms `(c, i, j) ↦ c x^i y^j`; terms beyond the
    /// truncation are dropped.
    pub fn from_terms(nx: usize, ny: usize, terms: &[(i64, usize, usize)]) -> Self {
        let mut s = Self::zero(nx, ny);
        for &(c, i, j) in terms {
            if i <= nx && j <= ny {
                let idx = s.index(i, j);
                s.coeffs[idx] += BigRational::from_integer(c.into());
            }
        }
        s
    }

    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut coeffs = Vec::with_capacity((nx + 1) * (ny + 1));
        for n in 0..=nx {
            for k in 0..=ny {
                coeffs.push(f(n, k));
            }
        }
        BivariateSeries { nx, ny, coeffs }
    }

    fn index(&self, n: usize, k: usize) -> usize {
        n * (self.ny + 1) + k
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn coeff(&self, n: usize, k: usize) -> &BigRational {
        &self.coeffs[self.index(n, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `[y^k]` as a series in `x`.
    pub fn y_slice(&self, k: usize) -> PowerSeries {
        PowerSeries::new((0..=self.nx).map(|n| self.coeff(n, k).clone()).collect())
    }

    pub fn truncate(&self, nx: usize, ny: usize) -> Self {
        let (nx, ny) = (nx.min(self.nx), ny.min(self.ny));
        Self::from_fn(nx, ny, |n, k| self.coeff(n, k).clone())
    }

    fn common(&self, rhs: &Self) -> (usize, usize) {
        (self.nx.min(rhs.nx), self.ny.min(rhs.ny))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (nx, ny) = self.common(rhs);
        Self::from_fn(nx, ny, |n, k| self.coeff(n, k) + rhs.coeff(n, k))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (nx, ny) = self.common(rhs);
        Self::from_fn(nx, ny, |n, k| self.coeff(n, k) - rhs.coeff(n, k))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_fn(self.nx, self.ny, |n, k| self.coeff(n, k) * c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (nx, ny) = self.common(rhs);
        let mut out = Self::zero(nx, ny);
        for i in 0..=nx {
            for j in 0..=ny {
                let a = self.coeff(i, j);
                if a.is_zero() {
                    continue;
                }
                for n in i..=nx {
                    for k in j..=ny {
                        let b = rhs.coeff(n - i, k - j);
                        if !b.is_zero() {
                            let idx = out.index(n, k);
                            out.coeffs[idx] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `x^p` or `y^p`, keeping the truncation orders.
    pub fn shift_up(&self, var: Var, p: usize) -> Self {
        Self::from_fn(self.nx, self.ny, |n, k| match var {
            Var::X if n >= p => self.coeff(n - p, k).clone(),
            Var::Y if k >= p => self.coeff(n, k - p).clone(),
            _ => BigRational::zero(),
        })
    }

    /// Exact division by `var^p`; the truncation order in `var` drops by `p`.
    pub fn exact_divide_by_var(&self, var: Var, p: usize) -> Result<Self, AlgebraError> {
        let limit = match var {
            Var::X => self.nx,
            Var::Y => self.ny,
        };
        if p > limit {
            return Err(AlgebraError::TruncationExhausted);
        }
        for n in 0..=self.nx {
            for k in 0..=self.ny {
                let low = match var {
                    Var::X => n < p,
                    Var::Y => k < p,
                };
                if low && !self.coeff(n, k).is_zero() {
                    return Err(AlgebraError::NotDivisible);
                }
            }
        }
        Ok(match var {
            Var::X => Self::from_fn(self.nx - p, self.ny, |n, k| self.coeff(n + p, k).clone()),
            Var::Y => Self::from_fn(self.nx, self.ny - p, |n, k| self.coeff(n, k + p).clone()),
        })
    }

    /// Principal square root of a series with constant term 1. Coefficient
    /// `(n, k)` depends only on indices dominated by `(n, k)`, so the
    /// rectangular truncation is exact.
    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if !self.coeff(0, 0).is_one() {
            return Err(AlgebraError::SqrtConstantTerm);
        }
        let two = BigRational::from_integer(2.into());
        let mut t = Self::zero(self.nx, self.ny);
        t.coeffs[0] = BigRational::one();
        for n in 0..=self.nx {
            for k in 0..=self.ny {
                if n == 0 && k == 0 {
                    continue;
                }
                let mut cross = BigRational::zero();
                for i in 0..=n {
                    for j in 0..=k {
                        let inner = (i, j) != (0, 0) && (i, j) != (n, k);
                        if inner {
                            cross += t.coeff(i, j) * t.coeff(n - i, k - j);
                        }
                    }
                }
                let idx = t.index(n, k);
                t.coeffs[idx] = (self.coeff(n, k) - cross) / &two;
            }
        }
        Ok(t)
    }
}
