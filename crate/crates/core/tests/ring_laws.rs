mod common;

use common::*;
use proptest::prelude::*;
use recblock::rings::{Fp, GaussianRational, HasIndeterminate, Polynomial, Quaternion, Rational, RationalFunction, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..30).prop_map(|(n, d)| Rational::new(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
}

fn gf7() -> impl Strategy<Value = Fp> {
    (0i64..7).prop_map(|x| Fp::new(x, gf(7)))
}

fn ratfun() -> impl Strategy<Value = RationalFunction<Fp>> {
    let poly = || prop::collection::vec(0i64..5, 1..4).prop_map(|c| Polynomial::from_coeffs(&gf(5), c.into_iter().map(|x| Fp::new(x, gf(5))).collect()));
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| recblock::rings::ratfun_reduce(n, d).ok())
}

fn check_ring<S: Scalar>(x: &S, y: &S, z: &S, commutative: bool) {
    assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
    assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
    assert_eq!(y.add(z).mul(x), y.mul(x).add(&z.mul(x)));
    assert!(x.sub(x).is_zero());
    if commutative {
        assert_eq!(x.mul(y), y.mul(x));
    }
    if let Some(inv) = x.try_inv() {
        assert!(x.mul(&inv).is_one() && inv.mul(x).is_one());
    } else {
        assert!(x.is_zero());
    }
    // the involution reverses products
    assert_eq!(x.mul(y).star(), y.star().mul(&x.star()));
    assert_eq!(x.star().star(), *x);
}

fn round_trips<S: Scalar>(x: &S) {
    let text = x.to_string();
    assert_eq!(S::parse_token(&x.ctx(), &text).unwrap(), *x, "{text}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field(x in rational(), y in rational(), z in rational()) {
        check_ring(&x, &y, &z, true);
        round_trips(&x);
    }

    #[test]
    fn prime_field(x in gf7(), y in gf7(), z in gf7()) {
        check_ring(&x, &y, &z, true);
        round_trips(&x);
    }

    #[test]
    fn gaussian_field(x in gaussian(), y in gaussian(), z in gaussian()) {
        check_ring(&x, &y, &z, true);
        round_trips(&x);
        // x* x is real and nonnegative
        let n = x.star().mul(&x);
        prop_assert_eq!(n.clone(), GaussianRational::new(x.norm(), q(0)));
    }

    #[test]
    fn quaternion_division_ring(x in quaternion(), y in quaternion(), z in quaternion()) {
        check_ring(&x, &y, &z, false);
        round_trips(&x);
    }

    #[test]
    fn rational_functions(x in ratfun(), y in ratfun(), z in ratfun()) {
        check_ring(&x, &y, &z, true);
        round_trips(&x);
        // canonical form: monic denominator
        prop_assert!(x.denominator().is_monic());
        let ctx = gf(5);
        prop_assert_eq!(x.mul_t_power(3).mul_t_power(-3), x.clone());
        prop_assert!(RationalFunction::<Fp>::t_power(&ctx, 2).mul(&RationalFunction::t_power(&ctx, -2)).is_one());
    }
}

#[test]
fn quaternions_do_not_commute() {
    let (i, j) = (Quaternion::i(), Quaternion::j());
    assert_eq!(i.mul(&j), Quaternion::k());
    assert_eq!(j.mul(&i), Quaternion::k().neg());
}

#[test]
fn inverse_mod_seven() {
    // 3 * 5 = 15 = 1 mod 7
    assert_eq!(Fp::new(3, gf(7)).try_inv(), Some(Fp::new(5, gf(7))));
}
