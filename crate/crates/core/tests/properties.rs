use proptest::prelude::*;

use satotate_core::beurling::{chi_hat, selberg, IntervalJ, Sign};
use satotate_core::chebyshev::{cos_combination, lucas_w, u_poly};
use satotate_core::classnumber::hurwitz;
use satotate_core::curves::{aut_size, aut_size_closed_form, point_count, trace_bound};
use satotate_core::ff::FieldContext;
use satotate_core::satotate::{mu_st, AngleInterval};

const FIELDS: [u64; 8] = [5, 7, 11, 25, 49, 101, 125, 343];

fn field() -> impl Strategy<Value = FieldContext> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|q| FieldContext::with_order(q).unwrap())
}

fn field_with_triple() -> impl Strategy<Value = (FieldContext, u32, u32, u32)> {
    field().prop_flat_map(|ctx| {
        let q = ctx.q() as u32;
        (Just(ctx), 0..q, 0..q, 0..q)
    })
}

fn interval() -> impl Strategy<Value = IntervalJ> {
    (0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("nondegenerate", |(a, b)| (a - b).abs() > 1e-9)
        .prop_map(|(a, b)| IntervalJ::new(a.min(b), a.max(b)).unwrap())
}

/// Trapezoid rule on a periodic trigonometric polynomial of degree < n is exact.
fn mean(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    (0..n).map(|i| f(i as f64 / n as f64)).sum::<f64>() / n as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((ctx, x, y, z) in field_with_triple()) {
        let (x, y, z) = (ctx.element(x).unwrap(), ctx.element(y).unwrap(), ctx.element(z).unwrap());
        prop_assert_eq!(ctx.add(x, y), ctx.add(y, x));
        prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
        prop_assert_eq!(ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        prop_assert_eq!(ctx.mul(x, ctx.one()), x);
        if !x.is_zero() {
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
        }
    }

    #[test]
    fn quadratic_character((ctx, x, y, _) in field_with_triple()) {
        let (x, y) = (ctx.element(x).unwrap(), ctx.element(y).unwrap());
        prop_assert_eq!(ctx.quad_char(x), ctx.quad_char_euler(x));
        prop_assert_eq!(ctx.quad_char(ctx.mul(x, y)), ctx.quad_char(x) * ctx.quad_char(y));
        if !x.is_zero() {
            prop_assert_eq!(ctx.quad_char(ctx.square(x)), 1);
        }
        prop_assert_eq!(ctx.pow(x, ctx.q()), x);
    }

    #[test]
    fn hasse_and_automorphisms((ctx, a, b, _) in field_with_triple()) {
        let (a, b) = (ctx.element(a).unwrap(), ctx.element(b).unwrap());
        match point_count(&ctx, a, b) {
            Ok(pc) => {
                prop_assert!(pc.trace.abs() <= trace_bound(ctx.q()));
                prop_assert_eq!(pc.count as i64, ctx.q() as i64 + 1 - pc.trace);
                prop_assert_eq!(aut_size(&ctx, a, b).unwrap(), aut_size_closed_form(ctx.q(), a, b));
            }
            Err(_) => prop_assert!(aut_size(&ctx, a, b).is_err()),
        }
    }

    #[test]
    fn selberg_contract(j in interval(), degree in 1usize..64) {
        let k = (degree + 1) as f64;
        let plus = selberg(j, degree, Sign::Majorant).unwrap();
        let minus = selberg(j, degree, Sign::Minorant).unwrap();
        let n = 4096;
        for i in 0..n {
            let x = i as f64 / n as f64;
            let near = [j.alpha(), j.beta()].iter().any(|&e| {
                let d = (x - e).rem_euclid(1.0);
                d.min(1.0 - d) < 1e-6
            });
            if near {
                continue;
            }
            prop_assert!(plus.eval(x) >= j.indicator(x) - 1e-9);
            prop_assert!(minus.eval(x) <= j.indicator(x) + 1e-9);
        }
        for m in -(degree as i64)..=degree as i64 {
            prop_assert!((plus.coeff(m) - chi_hat(&j, m)).norm() <= 1.0 / k + 1e-12);
            prop_assert!((minus.coeff(m) - chi_hat(&j, m)).norm() <= 1.0 / k + 1e-12);
            prop_assert!((plus.coeff(-m) - plus.coeff(m).conj()).norm() < 1e-15);
        }
        let gap = mean(|x| plus.eval(x) - minus.eval(x), 2 * degree + 2);
        prop_assert!((gap - 2.0 / k).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_identities(n in 0u32..40, theta in 0.01f64..3.13) {
        let lhs = u_poly(n, theta.cos()) * theta.sin();
        prop_assert!((lhs - ((n + 1) as f64 * theta).sin()).abs() < 1e-9);
        if n >= 2 {
            prop_assert!((cos_combination(n, theta) - 2.0 * (n as f64 * theta).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn lucas_parity(j in 0u32..30, t in -40i64..=40, q in prop::sample::select(FIELDS.to_vec())) {
        let sign = if j % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(lucas_w(j, -t, q), lucas_w(j, t, q) * sign);
    }

    #[test]
    fn hurwitz_vanishes_off_discriminants(n in 1i64..5000) {
        let h = hurwitz(n).unwrap();
        if n % 4 == 1 || n % 4 == 2 {
            prop_assert_eq!(h.twelve_h, 0);
        } else {
            prop_assert!(h.twelve_h > 0);
        }
    }

    #[test]
    fn sato_tate_measure_is_additive(a in 0.0f64..3.1, s in 0.0f64..1.0) {
        let b = a + s * (std::f64::consts::PI - a);
        let left = AngleInterval::half_open(0.0, a).map(|i| mu_st(&i)).unwrap_or(0.0);
        let mid = AngleInterval::closed(a, b).map(|i| mu_st(&i)).unwrap_or(0.0);
        let whole = AngleInterval::closed(0.0, b).map(|i| mu_st(&i)).unwrap_or(0.0);
        prop_assert!((left + mid - whole).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&whole));
    }
}
