use num_rational::BigRational;

use crate::algebra::{AlgebraError, BivariateSeries, Var};

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `Σ_{i=1}^{ny} y^i`, the truncation of `y / (1 - y)`.
fn y_over_one_minus_y(nx: usize, ny: usize) -> BivariateSeries {
    let terms: Vec<(i64, usize, usize)> = (1..=ny).map(|i| (1, 0, i)).collect();
    BivariateSeries::from_terms(nx, ny, &terms)
}

/// `Φ(x,y) = Σ_{k≥1} F_{<k>}(x) y^k`, expanded from
///
/// ```text
/// Φ = y (1 + x - xy - √((1 + x - xy)² - 4x)) / (2x (1 - y)).
/// ```
///
/// The bracket vanishes at `x = 0`, so it is expanded to order `nx + 1` in
/// `x` and divided by `x` exactly.
pub fn phi_closed_series(nx: usize, ny: usize) -> Result<BivariateSeries, AlgebraError> {
    let a = BivariateSeries::from_terms(nx + 1, ny, &[(1, 0, 0), (1, 1, 0), (-1, 1, 1)]);
    let four_x = BivariateSeries::from_terms(nx + 1, ny, &[(4, 1, 0)]);
    let root = a.mul(&a).sub(&four_x).sqrt()?;
    let bracket = a.sub(&root).exact_divide_by_var(Var::X, 1)?.scale(&half());
    Ok(bracket.mul(&y_over_one_minus_y(nx, ny)))
}

/// `Ψ(x,y) = Σ_{k≥1} G_{<k>}(x) y^k`, expanded from
///
/// ```text
/// Ψ = ((1-x)(1-xy) - √((1-x)²(1-xy)² - 4x²(1-x)y)) / (2x).
/// ```
pub fn psi_closed_series(nx: usize, ny: usize) -> Result<BivariateSeries, AlgebraError> {
    let b = BivariateSeries::from_terms(nx + 1, ny, &[(1, 0, 0), (-1, 1, 0), (-1, 1, 1), (1, 2, 1)]);
    let disc = BivariateSeries::from_terms(nx + 1, ny, &[(4, 2, 1), (-4, 3, 1)]);
    let root = b.mul(&b).sub(&disc).sqrt()?;
    Ok(b.sub(&root).exact_divide_by_var(Var::X, 1)?.scale(&half()))
}

/// Residual of `Φ = y/(1-y) + xΦ(Φ/y - 1 - Φ) + xyΦ` at `Φ`, truncated to
/// `(nx, ny - 1)` because `Φ/y` loses one order in `y`.
///
/// This is what summing `F_<k> = 1 + x Σ_{j=1}^{k-1} (F_<j+1> - F_<j>) F_<k-j>
/// + x F_<k-1>` over `k ≥ 2` gives: the convolution is
/// `(Σ_{j≥1} (F_<j+1> - F_<j>) y^j) · Φ = (Φ/y - 1 - Φ) Φ`. With an extra
/// factor `1 - y` on that term (see [`phi_residual_with_factor`]) the
/// closed form leaves a residual starting at `x^2 y^3`.
pub fn phi_residual(phi: &BivariateSeries) -> Result<BivariateSeries, AlgebraError> {
    phi_residual_impl(phi, false)
}

/// Residual of `Φ = y/(1-y) + x(1-y)Φ(Φ/y - 1 - Φ) + xyΦ`.
pub fn phi_residual_with_factor(phi: &BivariateSeries) -> Result<BivariateSeries, AlgebraError> {
    phi_residual_impl(phi, true)
}

fn phi_residual_impl(phi: &BivariateSeries, with_factor: bool) -> Result<BivariateSeries, AlgebraError> {
    let (nx, ny) = phi.orders();
    let one = BivariateSeries::one(nx, ny);
    let x = BivariateSeries::from_terms(nx, ny, &[(1, 1, 0)]);
    let mut coef = x.clone();
    if with_factor {
        coef = coef.mul(&BivariateSeries::from_terms(nx, ny, &[(1, 0, 0), (-1, 0, 1)]));
    }
    let inner = phi.exact_divide_by_var(Var::Y, 1)?.sub(&one).sub(phi);
    let quad = coef.mul(phi).mul(&inner);
    let lin = x.mul(phi).shift_up(Var::Y, 1);
    Ok(phi.sub(&y_over_one_minus_y(nx, ny)).sub(&quad).sub(&lin))
}

/// Residual of `(1-x)(Ψ - xy) = xΨ² + x(1-x)yΨ` at `Ψ`.
pub fn psi_residual(psi: &BivariateSeries) -> BivariateSeries {
    let (nx, ny) = psi.orders();
    let one_minus_x = BivariateSeries::from_terms(nx, ny, &[(1, 0, 0), (-1, 1, 0)]);
    let x = BivariateSeries::from_terms(nx, ny, &[(1, 1, 0)]);
    let xy = BivariateSeries::from_terms(nx, ny, &[(1, 1, 1)]);
    let lhs = one_minus_x.mul(&psi.sub(&xy));
    let rhs = x.mul(psi).mul(psi).add(&one_minus_x.mul(&xy).mul(psi));
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PowerSeries;

    #[test]
    fn phi_slices() {
        let phi = phi_closed_series(6, 4).unwrap();
        assert_eq!(phi.y_slice(1), PowerSeries::from_ints(&[1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(phi.y_slice(2), PowerSeries::from_ints(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(phi.y_slice(3), PowerSeries::from_ints(&[1, 1, 2, 4, 7, 11, 16]));
        assert!(phi_residual(&phi).unwrap().is_zero());
        let printed = phi_residual_with_factor(&phi).unwrap();
        assert!(!printed.is_zero());
        assert_eq!(printed.coeff(2, 3), &BigRational::from_integer(1.into()));
    }

    #[test]
    fn psi_slices() {
        let psi = psi_closed_series(6, 4).unwrap();
        assert_eq!(psi.y_slice(1), PowerSeries::from_ints(&[0, 1, 0, 0, 0, 0, 0]));
        assert_eq!(psi.y_slice(2), PowerSeries::from_ints(&[0, 0, 1, 1, 1, 1, 1]));
        assert!(psi_residual(&psi).is_zero());
    }
}
