use biprestar::{Complex64, Series, TruncatedSeries};
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(order: usize, bound: f64) -> impl Strategy<Value = Series> {
    prop::collection::vec(complex(bound), order + 1).prop_map(TruncatedSeries::new)
}

fn normalized(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(complex(1.0), order - 1).prop_map(move |tail| {
        let mut c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        c.extend(tail);
        TruncatedSeries::new(c)
    })
}

proptest! {
    #[test]
    fn reversion_round_trip(f in normalized(5)) {
        let g = f.revert().unwrap();
        let id = TruncatedSeries::identity(5);
        prop_assert!(f.compose(&g).unwrap().max_abs_diff(&id) <= 1e-10);
        prop_assert!(g.compose(&f).unwrap().max_abs_diff(&id) <= 1e-10);
    }

    #[test]
    fn reversion_third_coefficient(a2 in complex(1.0), a3 in complex(1.0)) {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let g = TruncatedSeries::new(vec![zero, one, a2, a3]).revert().unwrap();
        prop_assert!((g.coeffs()[3] - (2.0 * a2 * a2 - a3)).norm() <= 1e-12);
    }

    #[test]
    fn quotient_times_divisor(a in series(5, 1.0), b_tail in prop::collection::vec(complex(1.0), 5),
                              lead in complex(1.0).prop_filter("lead away from 0", |z| z.norm() > 0.3)) {
        let mut bc = vec![lead * 3.0];
        bc.extend(b_tail);
        let b = TruncatedSeries::new(bc);
        let q = a.div(&b).unwrap();
        prop_assert!(q.mul(&b).max_abs_diff(&a) <= 1e-12);
    }

    #[test]
    fn quotient_with_common_zero(a in normalized(5), b in normalized(5)) {
        // a, b both vanish at 0 with b'(0) = 1: the zF'/F shape.
        let q = a.div(&b).unwrap();
        prop_assert_eq!(q.order(), 4);
        prop_assert!(q.mul(&b).max_abs_diff(&a) <= 1e-12);
    }

    #[test]
    fn hadamard_commutes_and_associates(a in series(5, 2.0), b in series(5, 2.0), c in series(5, 2.0)) {
        prop_assert_eq!(a.hadamard(&b), b.hadamard(&a));
        // Coefficientwise products of the same three numbers in the same
        // grouping order are bit-identical; compare both groupings exactly
        // against the explicit triple product.
        let left = a.hadamard(&b).hadamard(&c);
        let right = a.hadamard(&b.hadamard(&c));
        for n in 0..=5 {
            let x = a.coeffs()[n];
            let y = b.coeffs()[n];
            let z = c.coeffs()[n];
            prop_assert_eq!(left.coeffs()[n], (x * y) * z);
            prop_assert_eq!(right.coeffs()[n], x * (y * z));
        }
    }

    #[test]
    fn leibniz_rule(a in series(5, 1.0), b in series(5, 1.0)) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(lhs.order(), 4);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}

#[test]
fn hadamard_associates_exactly_over_rationals() {
    use num_rational::Ratio;
    let q = |n: i64, d: i64| Ratio::new(n, d);
    let a = TruncatedSeries::new(vec![q(1, 2), q(-3, 4), q(5, 7)]);
    let b = TruncatedSeries::new(vec![q(2, 3), q(1, 9), q(-4, 5)]);
    let c = TruncatedSeries::new(vec![q(7, 2), q(3, 1), q(1, 11)]);
    assert_eq!(a.hadamard(&b).hadamard(&c), a.hadamard(&b.hadamard(&c)));
    assert_eq!(a.hadamard(&b), b.hadamard(&a));
}
