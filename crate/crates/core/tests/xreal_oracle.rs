mod common;

use common::{arith_failures, exact, rand_dd, rand_qd, two_prod_failures, two_sum_failures};
use mgsqd::xreal::decimal::{parse_decimal, to_decimal_string};
use mgsqd::xreal::eft::{two_prod_dekker, two_prod_fma};
use mgsqd::xreal::hex::{format_components, format_hex, parse_components, parse_hex};
use mgsqd::xreal::{DoubleDouble, QuadDouble, Real};
use mgsqd_oracle::ExactDyadic;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn two_sum_is_exact_on_a_million_pairs() {
    assert_eq!(two_sum_failures(1_000_000, 11), []);
}

#[test]
fn both_two_prod_paths_are_exact_on_a_million_pairs() {
    assert_eq!(two_prod_failures(1_000_000, 12), []);
}

#[test]
fn splitting_stress_cases() {
    let c = 134_217_729.0;
    for (a, b) in [(c, c), (0.1, 0.1), (1e300, 3e7), (-f64::MAX / 3.0, 2.9)] {
        let want = ExactDyadic::from_f64(a) * ExactDyadic::from_f64(b);
        for (p, e) in [two_prod_fma(a, b), two_prod_dekker(a, b)] {
            assert_eq!(ExactDyadic::sum(&[p, e]), want);
        }
    }
}

#[test]
fn double_double_add_mul_div_against_exact_oracle() {
    // 2^-104 for add/mul, 4 units of 2^-104 for division
    assert_eq!(
        arith_failures::<DoubleDouble>(100_000, 21, rand_dd, 104, Some(102)),
        Vec::<String>::new()
    );
}

#[test]
fn quad_double_add_mul_div_against_exact_oracle() {
    // 2^-212 for add/mul, 4 units of 2^-209 for division
    assert_eq!(
        arith_failures::<QuadDouble>(100_000, 22, rand_qd, 212, Some(207)),
        Vec::<String>::new()
    );
}

#[test]
fn pi_squared_in_double_double() {
    let pi = DoubleDouble::new(std::f64::consts::PI, 1.224_646_799_147_353_2e-16);
    let sq = pi * pi;
    assert!(ExactDyadic::rel_error_within(
        &exact(sq),
        &(exact(pi) * exact(pi)),
        104
    ));
}

#[test]
fn square_roots_square_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..2000 {
        let d = rand_dd(&mut rng).abs();
        let q = rand_qd(&mut rng).abs();
        let (sd, sq) = (d.sqrt(), q.sqrt());
        assert!(ExactDyadic::rel_error_within(
            &(exact(sd) * exact(sd)),
            &exact(d),
            102
        ));
        assert!(ExactDyadic::rel_error_within(
            &(exact(sq) * exact(sq)),
            &exact(q),
            208
        ));
    }
}

#[test]
fn third_decimal_expansion() {
    let third = DoubleDouble::ONE / DoubleDouble::from_f64(3.0);
    let s = to_decimal_string(third, 34);
    assert_eq!(s.len(), 38, "{s}");
    assert!(s.starts_with(&format!("3.{}", "3".repeat(30))), "{s}");
    assert!(s.ends_with("e-1"));
    let back: DoubleDouble = parse_decimal(&s).unwrap();
    assert!(ExactDyadic::rel_error_within(
        &exact(back),
        &exact(third),
        104
    ));
    assert_eq!(to_decimal_string(QuadDouble::ZERO, 66), "0.0e0");
    assert_eq!(parse_decimal::<QuadDouble>("1e0").unwrap(), QuadDouble::ONE);
    assert_eq!(to_decimal_string(-2.5f64, 3), "-2.50e0");
    assert_eq!(to_decimal_string(9.995f64, 3), "9.99e0");
    assert_eq!(to_decimal_string(99.96f64, 3), "1.00e2");
    assert!(parse_decimal::<f64>("1.2.3").is_err());
    assert!(parse_decimal::<f64>("e5").is_err());
    assert!(parse_decimal::<f64>("1e999").is_err());
}

#[test]
fn decimal_parse_is_correctly_rounded_for_doubles() {
    for s in [
        "0.1",
        "2.2250738585072014e-308",
        "4.9e-324",
        "1.7976931348623157e308",
        "123456789012345678901234567890",
    ] {
        assert_eq!(
            parse_decimal::<f64>(s).unwrap(),
            s.parse::<f64>().unwrap(),
            "{s}"
        );
    }
}

fn rand_bits_f64() -> impl Strategy<Value = f64> {
    any::<u64>()
        .prop_map(f64::from_bits)
        .prop_filter("finite", |x| x.is_finite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn hex_round_trip_is_bitwise(x in rand_bits_f64()) {
        prop_assert_eq!(parse_hex(&format_hex(x)).unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn quad_double_components_round_trip(a in -1e30f64..1e30, b in -1.0f64..1.0, c in -1.0f64..1.0) {
        let q = QuadDouble::new(a, a * b * 1e-17, a * c * 1e-34, a * b * c * 1e-50);
        let text = format_components(q);
        let back: QuadDouble = parse_components(text.split_whitespace()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn renormalization_is_idempotent(c in prop::array::uniform4(-1e10f64..1e10), s in prop::array::uniform4(0i32..200)) {
        let q = QuadDouble::new(c[0], c[1] * 2f64.powi(-s[1]), c[2] * 2f64.powi(-s[2]), c[3] * 2f64.powi(-s[3]));
        prop_assert_eq!(q.renormalize(), q);
        prop_assert_eq!(exact(q).cmp(&exact(q.renormalize())), std::cmp::Ordering::Equal);
        let d = DoubleDouble::new(c[0], c[1] * 2f64.powi(-s[0]));
        prop_assert_eq!(d.renormalize(), d);
    }

    #[test]
    fn renormalization_preserves_value_within_eps(c in prop::array::uniform4(-1e10f64..1e10), s in prop::array::uniform4(0i32..120)) {
        let raw = [c[0], c[1] * 2f64.powi(-s[1]), c[2] * 2f64.powi(-s[2]), c[3] * 2f64.powi(-s[3])];
        let q = QuadDouble::new(raw[0], raw[1], raw[2], raw[3]);
        let want = ExactDyadic::sum(&raw);
        if !want.is_zero() {
            prop_assert!(ExactDyadic::rel_error_within(&exact(q), &want, 209));
        }
        let parts = q.parts();
        for i in 0..3 {
            // nonoverlapping: each component is at most half an ulp of the previous
            prop_assert!(parts[i + 1].abs() <= parts[i].abs() * 2f64.powi(-52));
        }
    }

    #[test]
    fn field_identities(a in -1e20f64..1e20, b in -1.0f64..1.0, y in 1e-5f64..1e5) {
        let x = QuadDouble::new(a, a * b * 1e-17, 0.0, 0.0);
        prop_assert_eq!(x + (-x), QuadDouble::ZERO);
        prop_assert_eq!(QuadDouble::ONE * x, x);
        let y = QuadDouble::from_f64(y);
        if !x.is_zero() {
            prop_assert!(ExactDyadic::rel_error_within(&exact(x / y * y), &exact(x), 207));
        }
        let xd = DoubleDouble::new(a, a * b * 1e-17);
        prop_assert_eq!(xd + (-xd), DoubleDouble::ZERO);
        prop_assert_eq!(DoubleDouble::ONE * xd, xd);
    }

    #[test]
    fn decimal_round_trip_dd(h in -1e200f64..1e200, l in -1.0f64..1.0, e in -250i32..250) {
        let x = DoubleDouble::new(h * 2f64.powi(e), h * 2f64.powi(e) * l * 1.1e-16);
        let back: DoubleDouble = parse_decimal(&to_decimal_string(x, 34)).unwrap();
        if !x.is_zero() {
            prop_assert!(ExactDyadic::rel_error_within(&exact(back), &exact(x), 104));
        }
    }

    #[test]
    fn decimal_round_trip_qd(h in -1e200f64..1e200, l in prop::array::uniform3(-1.0f64..1.0)) {
        let x = QuadDouble::new(h, h * l[0] * 1e-16, h * l[1] * 1e-33, h * l[2] * 1e-49);
        let back: QuadDouble = parse_decimal(&to_decimal_string(x, 66)).unwrap();
        if !x.is_zero() {
            prop_assert!(ExactDyadic::rel_error_within(&exact(back), &exact(x), 209));
        }
    }
}
