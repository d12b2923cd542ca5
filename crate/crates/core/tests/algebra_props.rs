use num_bigint::BigInt;
use num_rational::BigRational;
use perm132::algebra::{BivariateSeries, Polynomial, PowerSeries, RationalFunction, Var};
use proptest::prelude::*;

fn small_poly(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 0..max_len)
}

/// Denominators with `den(0) != 0`, as every denominator in this crate.
fn unit_den(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    (prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)], prop::collection::vec(-6i64..=6, 0..max_len))
        .prop_map(|(c0, rest)| std::iter::once(c0).chain(rest).collect())
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::from_int_coeffs(num, den).unwrap()
}

#[test]
fn catalan_from_sqrt() {
    // C(x) = (1 - sqrt(1 - 4x)) / (2x)
    let n = 10;
    let s = PowerSeries::from_poly(&Polynomial::from_ints(&[1, -4]), n + 1);
    let root = s.sqrt().unwrap();
    let c = PowerSeries::one(n + 1)
        .sub(&root)
        .exact_divide_by_var(1)
        .unwrap()
        .scale(&BigRational::new(1.into(), 2.into()));
    let ints: Vec<BigInt> = c.to_integers().unwrap();
    let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862].map(BigInt::from).to_vec();
    assert_eq!(&ints[..10], &want[..]);
}

#[test]
fn canonical_sign_and_content() {
    let f = rf(&[2, -4], &[-2, 6]);
    assert_eq!(f.numerator_ints(), vec![BigInt::from(-1), BigInt::from(2)]);
    assert_eq!(f.denominator_ints(), vec![BigInt::from(1), BigInt::from(-3)]);
    assert!(RationalFunction::from_int_coeffs(&[1], &[]).is_err());
    assert!(rf(&[1], &[0, 1]).series(3).is_err());
}

#[test]
fn bivariate_divide_by_y() {
    let s = BivariateSeries::from_terms(3, 3, &[(2, 1, 1), (5, 0, 2)]);
    let d = s.exact_divide_by_var(Var::Y, 1).unwrap();
    assert_eq!(d.coeff(1, 0), &BigRational::from_integer(2.into()));
    assert_eq!(d.coeff(0, 1), &BigRational::from_integer(5.into()));
    assert!(s.exact_divide_by_var(Var::Y, 2).is_err());
}

proptest! {
    #[test]
    fn normalization_is_idempotent(num in small_poly(6), den in unit_den(5)) {
        let f = rf(&num, &den);
        let again = RationalFunction::new(f.numerator().clone(), f.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.denominator().coeff(0) > BigRational::from_integer(0.into()));
    }

    #[test]
    fn series_of_product(a in small_poly(4), b in unit_den(4), c in small_poly(4), d in unit_den(4)) {
        let (f, g) = (rf(&a, &b), rf(&c, &d));
        let n = 8;
        let lhs = (&f * &g).series(n).unwrap();
        let rhs = f.series(n).unwrap().mul(&g.series(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_of_sum(a in small_poly(4), b in unit_den(4), c in small_poly(4), d in unit_den(4)) {
        let (f, g) = (rf(&a, &b), rf(&c, &d));
        let lhs = (&f + &g).series(8).unwrap();
        prop_assert_eq!(lhs, f.series(8).unwrap().add(&g.series(8).unwrap()));
    }

    #[test]
    fn series_times_denominator_is_numerator(a in small_poly(5), b in unit_den(5)) {
        let f = rf(&a, &b);
        let n = 10;
        let den = PowerSeries::from_poly(f.denominator(), n);
        let prod = f.series(n).unwrap().mul(&den);
        prop_assert_eq!(prod, PowerSeries::from_poly(f.numerator(), n));
    }

    #[test]
    fn division_inverts_multiplication(a in small_poly(4), b in unit_den(4), c in unit_den(4), d in unit_den(4)) {
        let f = rf(&a, &b);
        let g = rf(&c, &d);
        prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f);
    }

    #[test]
    fn sqrt_squares_back(tail in prop::collection::vec(-5i64..=5, 0..7)) {
        let coeffs: Vec<i64> = std::iter::once(1).chain(tail).collect();
        let s = PowerSeries::from_poly(&Polynomial::from_ints(&coeffs), 9);
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r), s);
    }

    #[test]
    fn inverse_is_inverse(tail in prop::collection::vec(-5i64..=5, 0..7)) {
        let coeffs: Vec<i64> = std::iter::once(1).chain(tail).collect();
        let s = PowerSeries::from_poly(&Polynomial::from_ints(&coeffs), 9);
        prop_assert_eq!(s.mul(&s.inverse().unwrap()), PowerSeries::one(9));
    }

    #[test]
    fn json_round_trip(num in small_poly(6), den in unit_den(5)) {
        let f = rf(&num, &den);
        let text = f.to_json();
        let back = RationalFunction::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn gcd_divides(a in small_poly(5), b in small_poly(5)) {
        let (p, q) = (Polynomial::from_ints(&a), Polynomial::from_ints(&b));
        let g = p.gcd(&q);
        if !g.is_zero() {
            prop_assert!(p.div_rem(&g).1.is_zero());
            prop_assert!(q.div_rem(&g).1.is_zero());
        }
    }
}
