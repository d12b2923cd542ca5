use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. No trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c · var^deg`.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn lowest_nonzero(&self) -> Option<&BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Euclidean division over the rationals; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + ddeg] / dlead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(ddeg);
        (Self::new(quot), Self::new(rem))
    }

    /// Integer content (gcd of numerators over lcm of denominators) with the
    /// sign of the leading coefficient, so that `self / content` is primitive
    /// with integer coefficients and a positive leading term.
    pub fn content(&self) -> BigRational {
        let Some(lead) = self.leading() else {
            return BigRational::one();
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let content = BigRational::new(num, den);
        if lead.is_negative() {
            -content
        } else {
            content
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Greatest common divisor as a primitive integer polynomial with positive
    /// leading coefficient, via the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`; stays in the
    /// integers when both inputs have integer coefficients.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let (Some(adeg), Some(bdeg)) = (self.degree(), divisor.degree()) else {
            return self.clone();
        };
        if adeg < bdeg {
            return self.clone();
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        for i in (0..=adeg - bdeg).rev() {
            let top = rem[i + bdeg].clone();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &top * d;
            }
        }
        rem.truncate(bdeg);
        Self::new(rem)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Plain rendering such as `1 - 2x + 2x^2` in the given variable.
    pub fn render(&self, var: &str) -> String {
        self.render_with(var, |d| format!("{var}^{d}"))
    }

    /// LaTeX rendering such as `1 - 2x + 2x^{2}`.
    pub fn render_latex(&self, var: &str) -> String {
        self.render_with(var, |d| format!("{var}^{{{d}}}"))
    }

    fn render_with(&self, var: &str, power: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => power(d),
            };
            if d == 0 || !abs.is_one() {
                if abs.is_integer() {
                    out.push_str(&abs.to_string());
                } else {
                    out.push_str(&format!("({abs})"));
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division() {
        // (x^3 - 1) = (x - 1)(x^2 + x + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(q, Polynomial::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_is_primitive() {
        let a = &p(&[1, -1]) * &p(&[2, 3]);
        let b = &p(&[1, -1]).pow(2) * &p(&[5]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), p(&[1]));
        assert_eq!(p(&[0, 6]).gcd(&Polynomial::zero()), p(&[0, 1]));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, -2, 2]).render("x"), "1 - 2x + 2x^2");
        assert_eq!(p(&[0, -1, 0, 3]).render("z"), "-z + 3z^3");
        assert_eq!(p(&[1, 0, 1]).render_latex("x"), "1 + x^{2}");
        assert_eq!(Polynomial::zero().render("x"), "0");
    }
}
