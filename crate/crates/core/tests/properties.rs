use num_bigint::BigInt;
use proptest::prelude::*;

use rookdecomp::oeis::{compare_sequences, crosscheck, OeisSequence};
use rookdecomp::partitions::{triangular_number, Partition};
use rookdecomp::qseries::{expand_rational, IntPolynomial, RationalGF};
use rookdecomp::rook::{max_rook_number, rook_numbers, Board};
use rookdecomp::DecompositionTable;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=14, 0..=12).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn small_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=5, 0..=5).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..=20, 0..=8).prop_map(|c| IntPolynomial::from_i64(&c))
}

fn denominator() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-3i64..=3, 0..=4).prop_map(|mut tail| {
        tail.insert(0, 1);
        IntPolynomial::from_i64(&tail)
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().weight(), p.weight());
    }

    #[test]
    fn durfee_sizes_are_conjugation_invariant(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(p.durfee_triangle_size(), c.durfee_triangle_size());
        prop_assert_eq!(p.durfee_square_size(), c.durfee_square_size());
    }

    #[test]
    fn durfee_sizes_are_ordered(p in partition()) {
        let square = p.durfee_square_size();
        let triangle = p.durfee_triangle_size();
        prop_assert!(square <= triangle);
        prop_assert!(u64::from(triangle) <= p.weight());
        // the triangle's cells alone weigh t_d
        prop_assert!(p.weight() >= triangular_number(u64::from(triangle)));
    }

    #[test]
    fn matching_equals_durfee_triangle(p in partition()) {
        let board = Board::ferrers(&p);
        prop_assert_eq!(max_rook_number(&board), p.durfee_triangle_size() as usize);
        prop_assert_eq!(max_rook_number(&board.transpose()), max_rook_number(&board));
    }

    #[test]
    fn rook_profile_is_transpose_invariant(p in small_partition()) {
        let board = Board::ferrers(&p);
        let profile = rook_numbers(&board).unwrap();
        prop_assert_eq!(&profile, &rook_numbers(&board.transpose()).unwrap());
        prop_assert_eq!(profile.count(1), board.len().into());
        prop_assert_eq!(profile.max_rooks(), max_rook_number(&board));
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
    }

    #[test]
    fn expansion_is_linear_in_the_numerator(a in poly(), b in poly(), d in denominator()) {
        let order = 25;
        let ea = expand_rational(&RationalGF::new(a.clone(), d.clone()).unwrap(), order);
        let eb = expand_rational(&RationalGF::new(b.clone(), d.clone()).unwrap(), order);
        let sum = expand_rational(&RationalGF::new(&a + &b, d.clone()).unwrap(), order);
        for n in 0..=order {
            prop_assert_eq!(sum.coeff(n), &(ea.coeff(n) + eb.coeff(n)));
        }
    }

    #[test]
    fn expansion_inverts_multiplication(a in poly(), d in denominator()) {
        let order = 30;
        let series = expand_rational(&RationalGF::new(a.clone(), d.clone()).unwrap(), order);
        let back = &IntPolynomial::new(series.coeffs().to_vec()) * &d;
        for n in 0..=order {
            prop_assert_eq!(back.coeff(n), a.coeff(n));
        }
    }

    #[test]
    fn comparison_is_symmetric(
        xs in prop::collection::vec(-50i64..50, 1..20),
        ys in prop::collection::vec(-50i64..50, 1..20),
        shift in 0u64..5,
    ) {
        let a = OeisSequence::from_values("A", 0, xs.iter().map(|&x| BigInt::from(x)));
        let b = OeisSequence::from_values("B", shift, ys.iter().map(|&y| BigInt::from(y)));
        let ab = compare_sequences(&a, &b);
        let ba = compare_sequences(&b, &a);
        match (ab, ba) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.passed(), y.passed()),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "one direction errored"),
        }
        let local: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert!(crosscheck(&a, &local, 0).unwrap().passed());
    }

    #[test]
    fn table_json_round_trips(n in 1u32..=24) {
        let t = rookdecomp::build_table(n).unwrap();
        let back = DecompositionTable::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }
}
