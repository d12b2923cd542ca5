use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Polynomial, PowerSeries};

/// A quotient of polynomials in canonical form: coprime numerator and
/// denominator with coprime integer coefficients, and the lowest nonzero
/// coefficient of the denominator positive. Zero is `0/1`.
///
/// Canonical form makes structural equality coincide with equality of
/// rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);

        // clear denominators, then divide out the common integer content
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let lcm = BigRational::from_integer(lcm);
        let num = num.scale(&lcm);
        let den = den.scale(&lcm);
        for c in num.coeffs().iter().chain(den.coeffs()) {
            gcd = gcd.gcd(c.numer());
        }
        let mut factor = BigRational::new(BigInt::one(), gcd);
        if den.lowest_nonzero().is_some_and(Signed::is_negative) {
            factor = -factor;
        }
        RationalFunction {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::var())
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        Self::from_poly(Polynomial::monomial(BigRational::one(), k))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_ints(&[c]))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::normalized(p, Polynomial::one())
    }

    /// Builds from integer coefficient lists, low degree first.
    pub fn from_int_coeffs(num: &[i64], den: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(Polynomial::from_ints(num), Polynomial::from_ints(den))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// Numerator coefficients as integers (always integral in canonical form).
    pub fn numerator_ints(&self) -> Vec<BigInt> {
        self.num.to_integers().expect("canonical form has integer coefficients")
    }

    pub fn denominator_ints(&self) -> Vec<BigInt> {
        self.den.to_integers().expect("canonical form has integer coefficients")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `x = 0`, or `None` when the denominator vanishes there.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        let d0 = self.den.coeff(0);
        (!d0.is_zero()).then(|| self.num.coeff(0) / d0)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .renormalize()
    }

    fn renormalize(self) -> Self {
        Self::normalized(self.num, self.den)
    }

    /// Multiplies by `x`.
    pub fn mul_x(&self) -> Self {
        self * &Self::x()
    }

    /// First `n + 1` Taylor coefficients at 0, from the recurrence
    /// `Σ_j den_j · c_{i-j} = num_i`.
    pub fn series(&self, n: usize) -> Result<PowerSeries, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::PoleAtZero);
        }
        let mut c: Vec<BigRational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.num.coeff(i);
            for (j, q) in self.den.coeffs().iter().enumerate().skip(1).take(i) {
                acc -= q * &c[i - j];
            }
            c.push(acc / &d0);
        }
        Ok(PowerSeries::new(c))
    }

    /// `num / den` with the expanded polynomials, e.g.
    /// `(1 - 2x + 2x^2) / (1 - 3x + 3x^2 - x^3)`.
    pub fn render_plain(&self) -> String {
        if self.den == Polynomial::one() {
            return self.num.render("x");
        }
        format!("({}) / ({})", self.num.render("x"), self.den.render("x"))
    }

    pub fn render_latex(&self) -> String {
        if self.den == Polynomial::one() {
            return self.num.render_latex("x");
        }
        format!(
            "\\frac{{{}}}{{{}}}",
            self.num.render_latex("x"),
            self.den.render_latex("x")
        )
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_int_coeffs(num, den).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[0, 1], &[1, -1]);
        assert_eq!(&a + &b, rf(&[1, 1], &[1, -1]));
        assert_eq!(&a * &rf(&[1, -1], &[1]), RationalFunction::one());

        let f321 = rf(&[1, -2, 2], &[1, -3, 3, -1]);
        let inner = &RationalFunction::one() - &f321.mul_x();
        let f3214 = RationalFunction::one().checked_div(&inner).unwrap();
        assert_eq!(f3214, rf(&[1, -3, 3, -1], &[1, -4, 5, -3]));
    }

    #[test]
    fn canonical_sign_and_content() {
        // (-2 + 2x) / (-4) = (1 - x) / 2
        let f = rf(&[-2, 2], &[-4]);
        assert_eq!(f.numerator(), &Polynomial::from_ints(&[1, -1]));
        assert_eq!(f.denominator(), &Polynomial::from_ints(&[2]));
        // the lowest nonzero denominator coefficient decides the sign
        let g = rf(&[1], &[0, -1]);
        assert_eq!(g.denominator(), &Polynomial::from_ints(&[0, 1]));
        assert_eq!(g.numerator(), &Polynomial::from_ints(&[-1]));
        assert_eq!(rf(&[0], &[5, 7]), RationalFunction::zero());
    }

    #[test]
    fn division_errors() {
        assert_eq!(
            RationalFunction::one().checked_div(&RationalFunction::zero()),
            Err(AlgebraError::DivisionByZero)
        );
        assert_eq!(
            RationalFunction::from_int_coeffs(&[1], &[0]),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn series_examples() {
        let ints = |f: &RationalFunction, n| f.series(n).unwrap().to_integers().unwrap();
        let as_big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(ints(&rf(&[1, -2, 2], &[1, -3, 3, -1]), 5), as_big(&[1, 1, 2, 4, 7, 11]));
        assert_eq!(ints(&rf(&[1, -1], &[1, -2]), 4), as_big(&[1, 1, 2, 4, 8]));
        assert_eq!(ints(&rf(&[1], &[1, -1, -1]), 4), as_big(&[1, 1, 2, 3, 5]));
        assert_eq!(rf(&[1], &[0, 1]).series(3), Err(AlgebraError::PoleAtZero));
    }

    #[test]
    fn renders() {
        let f = rf(&[1, -2, 2], &[1, -3, 3, -1]);
        assert_eq!(f.render_plain(), "(1 - 2x + 2x^2) / (1 - 3x + 3x^2 - x^3)");
        assert_eq!(f.render_latex(), "\\frac{1 - 2x + 2x^{2}}{1 - 3x + 3x^{2} - x^{3}}");
        assert_eq!(rf(&[0, 0, 1], &[1]).render_plain(), "x^2");
    }
}
