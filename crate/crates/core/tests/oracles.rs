use num_bigint::{BigInt, BigUint};
use num_integer::binomial;

use rookdecomp::closedforms::{rk_closed, ClosedFormError, ClosedFormSource, ValueSource};
use rookdecomp::decomposition::{
    build_table, build_table_with, max_rook_histogram, rook_equivalence_check,
    triangle_histogram, verify_decomposition,
};
use rookdecomp::oeis::{parse_bfile, OeisError};
use rookdecomp::partitions::{enumerate_partitions, for_each_partition, partition_count};
use rookdecomp::qseries::{f_explicit, f_series_product, gf_durfee_square_series, gf_durfee_triangle};
use rookdecomp::rook::{
    is_unimodal, rectangle_rook_count, rectangular_rook_profile, rook_numbers,
    rook_numbers_with_limit, Board, RookError,
};
use rookdecomp::Execution;

fn brute_force_profile(board: &Board) -> Vec<u64> {
    let cells: Vec<_> = board.cells().collect();
    let mut counts = vec![0u64; cells.len() + 1];
    for mask in 0u32..(1 << cells.len()) {
        let chosen: Vec<_> = (0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]).collect();
        let clash = chosen.iter().enumerate().any(|(i, a)| {
            chosen[i + 1..].iter().any(|b| a.0 == b.0 || a.1 == b.1)
        });
        if !clash {
            counts[chosen.len()] += 1;
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

#[test]
fn enumeration_counts_match_pentagonal_recurrence() {
    for n in 0..=30 {
        let mut seen = 0u64;
        for_each_partition(n, |_| seen += 1);
        assert_eq!(BigUint::from(seen), partition_count(n as usize), "n = {n}");
    }
}

#[test]
fn rook_recursion_matches_brute_force() {
    for w in 0..=12 {
        for p in enumerate_partitions(w) {
            let board = Board::ferrers(&p);
            if board.len() > 16 {
                continue;
            }
            let profile = rook_numbers(&board).unwrap();
            assert_eq!(profile.to_u64_vec().unwrap(), brute_force_profile(&board), "{p}");
        }
    }
    let scattered = Board::from_cells([(0, 0), (0, 3), (2, 3), (5, 1), (5, 5), (2, 0)]).unwrap();
    assert_eq!(rook_numbers(&scattered).unwrap().to_u64_vec().unwrap(), brute_force_profile(&scattered));
}

#[test]
fn rectangle_counts_match_product_formula() {
    for m in 1..=5u32 {
        for n in 1..=5u32 {
            let board = rook_numbers(&Board::rectangle(m, n)).unwrap();
            for r in 0..=m.min(n) {
                let formula = binomial(BigUint::from(m), BigUint::from(r))
                    * binomial(BigUint::from(n), BigUint::from(r))
                    * (1..=r).map(BigUint::from).product::<BigUint>();
                assert_eq!(rectangle_rook_count(m, n, r), formula);
                assert_eq!(board.count(r as usize), formula, "{m}x{n} r={r}");
            }
            assert_eq!(rectangular_rook_profile(m.max(n), m.min(n)).unwrap(), board);
            assert!(is_unimodal(&board));
        }
    }
}

#[test]
fn board_guard_is_enforced() {
    let big = Board::rectangle(6, 7);
    assert_eq!(
        rook_numbers(&big),
        Err(RookError::BoardTooLarge { cells: 42, limit: 36 })
    );
    assert!(rook_numbers_with_limit(&big, 42).is_ok());
}

#[test]
fn ferrers_profiles_are_unimodal() {
    for w in 0..=15 {
        for p in enumerate_partitions(w) {
            assert!(is_unimodal(&rook_numbers(&Board::ferrers(&p)).unwrap()), "{p}");
        }
    }
}

#[test]
fn histograms_agree() {
    for n in 0..=30 {
        assert_eq!(triangle_histogram(n), max_rook_histogram(n), "n = {n}");
    }
}

#[test]
fn triangle_gfs_match_enumeration() {
    for k in 2..=5u32 {
        let series = gf_durfee_triangle(k).unwrap().expand(40);
        for n in 0..=40u32 {
            let counted = triangle_histogram(n).get(k as usize).copied().unwrap_or(0);
            assert_eq!(series.coeff(n as usize), &BigInt::from(counted), "k={k} n={n}");
        }
    }
}

#[test]
fn square_gfs_match_enumeration() {
    for k in 1..=3u32 {
        let series = gf_durfee_square_series(k, 40);
        for n in 0..=40u32 {
            let counted = enumerate_partitions(n).filter(|p| p.durfee_square_size() == k).count();
            assert_eq!(series.coeff(n as usize), &BigInt::from(counted), "k={k} n={n}");
        }
    }
}

#[test]
fn f_series_matches_explicit_formula() {
    let series = f_series_product(200);
    for n in 0..=200u64 {
        assert_eq!(series.coeff(n as usize), &BigInt::from(f_explicit(n)), "n = {n}");
    }
}

#[test]
fn table_columns_and_rows_are_consistent() {
    let t = build_table(40).unwrap();
    let report = verify_decomposition(&t);
    assert!(report.passed(), "{report}");
    let seq = build_table_with(40, 80, Execution::Sequential).unwrap();
    assert_eq!(seq, t);
}

#[test]
fn closed_forms_match_enumeration() {
    let t = build_table(60).unwrap();
    for k in 1..=4u32 {
        let from = [1, 5, 10, 17][k as usize - 1];
        for n in from..=60u32 {
            let closed = rk_closed(k, u64::from(n)).unwrap();
            assert_eq!(closed, t.entry(k, n), "R_{k}({n})");
            assert_eq!(ClosedFormSource.value(k, n.into()), t.value(k, n.into()));
        }
    }
}

#[test]
fn closed_forms_reject_out_of_domain() {
    assert!(matches!(
        rk_closed(3, 5),
        Err(ClosedFormError::OutOfDomain { k: 3, n: 5, valid_from: 10 })
    ));
    assert!(matches!(rk_closed(6, 40), Err(ClosedFormError::UnsupportedK { .. })));
}

#[test]
fn rook_equivalence_in_both_modes() {
    for mode in [Execution::Sequential, Execution::Parallel] {
        let report = rook_equivalence_check(20, mode);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn bfile_parsing() {
    let seq = parse_bfile("# A000001 test\n# offset 1\n1 5\n2 -7\n\n3 123456789012345678901234567890\n").unwrap();
    assert_eq!(seq.id, "A000001");
    assert_eq!(seq.declared_offset(), Some(1));
    assert_eq!(seq.get(2), Some(&BigInt::from(-7)));
    assert_eq!(seq.len(), 3);
    assert!(matches!(parse_bfile("1 2\n3 4\n"), Err(OeisError::NonContiguous { .. })));
    assert!(matches!(parse_bfile("1 x\n"), Err(OeisError::Parse { line: 1, .. })));
}
