use hyperfns::eisenstein::{c_function, classify_bounded, Boundedness, Eisenstein};
use hyperfns::specfun::{hyp2f1_nonpos, hyp2f1_with, Strategy as Region};
use hyperfns::value::rel_diff;
use hyperfns::{Space, C64};
use proptest::prelude::*;

fn space() -> impl Strategy<Value = Space> {
    prop::sample::select(vec![(2u32, 1u32), (3, 2), (4, 1), (5, 3), (7, 2), (3, 3)])
        .prop_map(|(p, q)| Space::new(p, q).unwrap())
}

fn generic_lambda() -> impl Strategy<Value = C64> {
    (-3.0f64..3.0, 0.3f64..3.0, any::<bool>()).prop_map(|(re, im, neg)| C64::new(re, if neg { -im } else { im }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hyp2f1_is_symmetric_in_a_and_b(
        a in (-2.0f64..2.0, -2.0f64..2.0),
        b in (-2.0f64..2.0, -2.0f64..2.0),
        c in 0.6f64..4.0,
        z in -6.0f64..-0.01,
    ) {
        let (a, b, c) = (C64::new(a.0, a.1), C64::new(b.0, b.1), C64::new(c, 0.0));
        // Skip near-degenerate a − b where the inversion falls back to a limit.
        prop_assume!((a - b).norm() > 0.05);
        let ab = hyp2f1_nonpos(a, b, c, z).unwrap();
        let ba = hyp2f1_nonpos(b, a, c, z).unwrap();
        let scale = ab.value.norm().max(1.0);
        prop_assert!((ab.value - ba.value).norm() / scale < 1e-10, "{:?} {:?}", ab, ba);
    }

    #[test]
    fn pfaff_matches_series_near_the_switch(
        a in (-1.5f64..1.5, -1.5f64..1.5),
        b in (-1.5f64..1.5, -1.5f64..1.5),
        c in 0.6f64..3.0,
        z in -0.6f64..-0.4,
    ) {
        let (a, b, c) = (C64::new(a.0, a.1), C64::new(b.0, b.1), C64::new(c, 0.0));
        let s = hyp2f1_with(a, b, c, z, Region::Series).unwrap();
        let p = hyp2f1_with(a, b, c, z, Region::Pfaff).unwrap();
        prop_assert!(rel_diff(s.value, p.value) < 1e-9);
    }

    #[test]
    fn c_function_times_reflection_is_one(s in space(), lam in generic_lambda()) {
        let prod = c_function(&s, None, lam).value * c_function(&s, None, -lam).value;
        prop_assert!(rel_diff(prod, C64::new(1.0, 0.0)) < 1e-10);
    }

    #[test]
    fn eisenstein_routes_agree(s in space(), lam in generic_lambda(), t in 0.3f64..4.0) {
        let mut e = Eisenstein::new(s, None, lam);
        let closed = e.closed(t).unwrap();
        let series = e.series(t).unwrap();
        prop_assert!(rel_diff(closed.value, series.value) < 1e-8);
    }

    #[test]
    fn classification_depends_only_on_real_part_off_the_integers(
        s in space(),
        re in -4.9f64..4.9,
        im in 0.1f64..5.0,
    ) {
        let got = classify_bounded(&s, None, 5.0, C64::new(re, im)).unwrap();
        let want = if re.abs() <= s.rho_f64() { Boundedness::Bounded } else { Boundedness::Unbounded };
        prop_assert_eq!(got, want);
    }
}
