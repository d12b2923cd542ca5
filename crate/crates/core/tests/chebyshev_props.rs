use num_bigint::BigInt;
use num_rational::BigRational;
use perm132::algebra::{Polynomial, RationalFunction};
use perm132::chebyshev::{check_identity, chebyshev_u, r_func, sweep_identities, v_poly, LemmaPart};
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn first_companions() {
    assert_eq!(v_poly(0).poly, Polynomial::from_ints(&[1]));
    assert_eq!(v_poly(1).poly, Polynomial::from_ints(&[1]));
    assert_eq!(v_poly(2).poly, Polynomial::from_ints(&[1, -1]));
    assert_eq!(v_poly(3).poly, Polynomial::from_ints(&[1, -2]));
    assert_eq!(v_poly(4).poly, Polynomial::from_ints(&[1, -3, 1]));
    assert_eq!(chebyshev_u(3).poly, Polynomial::from_ints(&[0, -4, 0, 8]));
}

#[test]
fn r_func_rejects_zero() {
    assert!(r_func(0).is_err());
    assert_eq!(r_func(1).unwrap(), RationalFunction::one());
}

#[test]
fn full_sweep_to_twelve() {
    let sweep = sweep_identities(12);
    assert!(sweep.all_hold(), "{:?}", sweep.parts);
    assert_eq!(sweep.identities_holding(), 6);
}

#[test]
fn out_of_range_parameters_are_errors() {
    assert!(check_identity(LemmaPart::VI, &[2, 2]).is_err());
    assert!(check_identity(LemmaPart::I, &[1]).is_err());
}

proptest! {
    #[test]
    fn v_recurrence(p in 1usize..40) {
        let x = Polynomial::var();
        let expected = &v_poly(p).poly - &(&x * &v_poly(p - 1).poly);
        prop_assert_eq!(v_poly(p + 1).poly, expected);
    }

    #[test]
    fn v_degree_and_constant_term(p in 0usize..40) {
        let v = v_poly(p).poly;
        prop_assert_eq!(v.degree(), Some(p / 2));
        prop_assert_eq!(v.coeff(0), q(1));
    }

    #[test]
    fn u_and_v_share_coefficients(p in 0usize..30) {
        // [z^{p-2j}] U_p = 2^{p-2j} [x^j] V_p
        let u = chebyshev_u(p).poly;
        let v = v_poly(p).poly;
        for j in 0..=p / 2 {
            let scale = BigRational::from_integer(BigInt::from(2).pow((p - 2 * j) as u32));
            prop_assert_eq!(u.coeff(p - 2 * j), &scale * &v.coeff(j));
        }
    }

    #[test]
    fn r_func_iterates(p in 1usize..25) {
        let x = RationalFunction::x();
        let next = (&RationalFunction::one() - &(&x * &r_func(p).unwrap())).recip().unwrap();
        prop_assert_eq!(r_func(p + 1).unwrap(), next);
    }

    #[test]
    fn each_identity_holds(a in 0usize..10, b in 0usize..10, c in 1usize..10) {
        for part in LemmaPart::ALL {
            let params = [a, b, c];
            if let Ok(ok) = check_identity(part, &params[..part.arity()]) {
                prop_assert!(ok, "({}) at {:?}", part, &params[..part.arity()]);
            }
        }
    }
}
