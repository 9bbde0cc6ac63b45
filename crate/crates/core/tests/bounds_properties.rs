use proptest::prelude::*;
use ramsey_core::bounds::decide;
use ramsey_core::bounds::{alpha_sequence, bound_erdos_lower, bound_erdos_szekeres, Expr, PrecisionPolicy};

fn pol() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn assert_encloses(e: &Expr, value: f64) -> Result<(), TestCaseError> {
    let iv = e.eval(128).unwrap();
    let (lo, hi) = (iv.lo().to_f64(), iv.hi().to_f64());
    prop_assert!(lo <= hi);
    let tol = 1e-12 * value.abs().max(1.0);
    prop_assert!(lo <= value + tol && value - tol <= hi, "[{lo}, {hi}] misses {value}");
    Ok(())
}

proptest! {
    #[test]
    fn elementary_enclosures(a in 1u64..1_000_000, b in 1u64..1000) {
        let x = Expr::ratio(a, b);
        let v = a as f64 / b as f64;
        assert_encloses(&x.sqrt(), v.sqrt())?;
        assert_encloses(&x.cbrt(), v.cbrt())?;
        assert_encloses(&x.log2(), v.log2())?;
        assert_encloses(&x.ln(), v.ln())?;
        assert_encloses(&Expr::ratio(a % 2000, b).exp2(), ((a % 2000) as f64 / b as f64).exp2())?;
    }

    #[test]
    fn integer_results_are_exact(n in 1u64..100_000) {
        prop_assert!(Expr::from(n * n).sqrt().eval(64).unwrap().is_exact());
        prop_assert!(Expr::from(n * n * n).cbrt().eval(64).unwrap().is_exact());
        prop_assert!(bound_erdos_szekeres(n, pol()).unwrap().is_exact());
    }

    #[test]
    fn comparisons_are_consistent(a in 1u64..10_000, b in 1u64..10_000) {
        let (x, y) = (Expr::from(a).sqrt(), Expr::from(b).sqrt());
        let le = decide::le(&x, &y, pol()).unwrap().holds;
        prop_assert_eq!(le, a <= b);
        if a != b {
            prop_assert_eq!(decide::lt(&x, &y, pol()).unwrap().holds, a < b);
        }
    }

    #[test]
    fn lower_bound_below_upper_bound(n in 3u64..1_000_000) {
        let lo = bound_erdos_lower(n, pol()).unwrap();
        let hi = bound_erdos_szekeres(n, pol()).unwrap();
        prop_assert!(lo.le(&hi, pol()).unwrap());
    }

    #[test]
    fn alpha_trace_invariants(m in 27u64..10_000_000_000) {
        let t = alpha_sequence(m, pol()).unwrap();
        prop_assert!(t.stages[0].alpha_enclosure.is_exact());
        let four_thirds = Expr::ratio(4, 3);
        let floor = Expr::from(36u64) * Expr::from(m).sqrt();
        for s in &t.stages {
            prop_assert!(decide::le(&s.partial_sum, &four_thirds, pol()).unwrap().holds);
            prop_assert!(decide::le(&floor, &s.y_exponent, pol()).unwrap().holds);
        }
        for w in t.stages.windows(2) {
            let next = (Expr::from(2u64) * w[0].alpha.cbrt()).exp2();
            prop_assert!(w[1].alpha_enclosure.overlaps(&next.eval(128).unwrap()));
        }
    }
}
