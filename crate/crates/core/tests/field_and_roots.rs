use glmn_core::fq::{artin_schreier_enumerate, artin_schreier_linear};
use glmn_core::rootdata::{odd_order_cmp, Shape};
use glmn_core::scalar::{parse_rational, rational, rational_int, rational_to_string};
use glmn_core::{artin_schreier_solve, fq_make, Matrix, Weight};
use proptest::prelude::*;
use std::cmp::Ordering;

fn field_params() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![
        Just((3, 1)),
        Just((3, 2)),
        Just((3, 3)),
        Just((5, 1)),
        Just((5, 2)),
        Just((7, 2)),
        Just((11, 1))
    ]
}

proptest! {
    #[test]
    fn frobenius_is_a_ring_map((p, k) in field_params(), a in any::<u64>(), b in any::<u64>()) {
        let f = fq_make(p, k).unwrap();
        let x = f.element(a % f.order());
        let y = f.element(b % f.order());
        prop_assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
        prop_assert_eq!((x * y).frobenius(), x.frobenius() * y.frobenius());
        let mut z = x;
        for _ in 0..k {
            z = z.frobenius();
        }
        prop_assert_eq!(z, x);
    }

    #[test]
    fn inverses_and_distributivity((p, k) in field_params(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = fq_make(p, k).unwrap();
        let (x, y, z) = (f.element(a % f.order()), f.element(b % f.order()), f.element(c % f.order()));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x - x, f.zero());
        if !x.is_zero() {
            prop_assert_eq!(x * x.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn artin_schreier_root_counts((p, k) in field_params(), a in any::<u64>()) {
        let f = fq_make(p, k).unwrap();
        let c = f.element(a % f.order());
        let roots = artin_schreier_solve(c);
        prop_assert!(roots.is_empty() || roots.len() == p as usize);
        prop_assert_eq!(roots.is_empty(), !c.trace().is_zero());
        for r in &roots {
            prop_assert_eq!(r.pow(p) - *r, c);
        }
        prop_assert_eq!(artin_schreier_enumerate(c), artin_schreier_linear(c));
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(0u64..5, 36)) {
        let f = fq_make(5, 1).unwrap();
        let data: Vec<Vec<_>> = (0..rows).map(|r| (0..cols).map(|c| f.element(seed[r * 6 + c])).collect()).collect();
        let m = Matrix::from_rows(data, f.zero());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = rational(n, d);
        prop_assert_eq!(parse_rational(&rational_to_string(&q)).unwrap(), q);
    }

    #[test]
    fn form_is_symmetric(m in 1usize..4, n in 1usize..4, a in proptest::collection::vec(-9i64..9, 6), b in proptest::collection::vec(-9i64..9, 6)) {
        let s = Shape::new(m, n).unwrap();
        let nn = s.size();
        let x = Weight::new(a[..nn].iter().map(|&v| rational_int(v)).collect());
        let y = Weight::new(b[..nn].iter().map(|&v| rational_int(v)).collect());
        prop_assert_eq!(s.bilinear_form(&x, &y).unwrap(), s.bilinear_form(&y, &x).unwrap());
    }
}

#[test]
fn odd_order_is_a_strict_total_order() {
    for (m, n) in [(1, 1), (2, 3), (3, 2), (4, 4)] {
        let s = Shape::new(m, n).unwrap();
        let pairs = s.odd_pairs();
        assert_eq!(pairs.len(), m * n);
        for (r, a) in pairs.iter().enumerate() {
            assert_eq!(s.odd_rank(*a), r);
            assert_eq!(odd_order_cmp(a, a), Ordering::Equal);
            for b in &pairs {
                assert_eq!(odd_order_cmp(a, b), odd_order_cmp(b, a).reverse());
                for c in &pairs {
                    if odd_order_cmp(a, b) == Ordering::Less
                        && odd_order_cmp(b, c) == Ordering::Less
                    {
                        assert_eq!(odd_order_cmp(a, c), Ordering::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn typicality_examples() {
    let cases = [
        ((1, 1), "(λ1 + λ2)"),
        ((2, 1), "(λ1 + λ3 + 1)(λ2 + λ3)"),
        ((1, 2), "(λ1 + λ3 - 1)(λ1 + λ2)"),
    ];
    for ((m, n), text) in cases {
        let t = Shape::new(m, n).unwrap().typicality_poly().unwrap();
        assert_eq!(t.to_string(), text);
        assert_eq!(t.factors.len(), m * n);
    }
}

#[test]
fn rational_weights_reduce_mod_p() {
    let f = fq_make(5, 1).unwrap();
    let w = Weight::new(vec![rational(1, 2), rational(-3, 1)]);
    let r = w.reduce_mod(f).unwrap();
    assert_eq!(r.coords, vec![f.from_i64(3), f.from_i64(2)]);
    let bad = Weight::new(vec![rational(1, 5)]);
    assert!(bad.reduce_mod(f).is_err());
}
