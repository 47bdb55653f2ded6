use bggx_core::bounds::*;
use bggx_core::Rational;
use proptest::prelude::*;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn binom(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn abelian_row(q: u64, j: u64) -> Vec<i64> {
    (0..=q).map(|i| binom(q, i) * binom(q, j)).collect()
}

#[test]
fn combin_identity_is_kronecker_delta() {
    for a in 0..=30 {
        for b in 0..=30 {
            assert_eq!(combin_identity(a, b), (b == 0) as i128, "A={a} B={b}");
        }
    }
}

#[test]
fn h20_bound_piecewise_equals_family_maximum() {
    for d in 1..=10 {
        for q in 0..=40 {
            let t = thm11_bound(d, q).unwrap();
            assert_eq!(t.piecewise, t.family_max, "d={d} q={q}");
        }
    }
}

#[test]
fn rank_identities_are_polynomial_identities() {
    assert_eq!(rank_identities_hold(), (true, true));
}

#[test]
fn corollary_chain_recovers_abelian_hodge_numbers() {
    for q in 1..=6u64 {
        for j in 0..=q {
            let row = abelian_row(q, j);
            for k in 1..=q as usize {
                for p in 0..=k.min(q as usize) {
                    assert_eq!(
                        corollary_chain(&row, k, p).unwrap(),
                        int(row[p]),
                        "q={q} j={j} k={k} p={p}"
                    );
                }
            }
        }
    }
}

#[test]
fn abelian_alternating_sums_are_non_negative_where_claimed() {
    for q in 1..=6usize {
        for j in 0..=q {
            let row = abelian_row(q as u64, j as u64);
            for k in 1..=q {
                for r in 1..=q {
                    for p in 0..=q {
                        if alternating_sum_applies(q, k, j, r, p) {
                            let s = alternating_sum(&row, r, k, p).unwrap();
                            assert!(s >= int(0), "q={q} j={j} k={k} r={r} p={p}: {s}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn abelian_table_meets_binomial_bound_with_equality() {
    for q in 1..=6usize {
        for p in 0..=q {
            for j in 0..=q {
                let b = binom_bound(q, p, j, q);
                if b.applicable {
                    assert_eq!(b.value, (binom(q as u64, p as u64) * binom(q as u64, j as u64)) as i128);
                }
            }
        }
    }
}

#[test]
fn c2_improves_exactly_when_radicand_exceeds_one() {
    for q in 2..=40usize {
        for k in 1..q {
            let b = c2_bound(q, k);
            let h = b.min_integer_h.unwrap_or(b.base);
            assert_eq!(c2_improves_on_c1(&b), b.applicable && b.radicand > 1);
            // At R = 1 the square-root term vanishes and the two bounds agree.
            if b.applicable && b.radicand == 1 {
                assert_eq!(h, b.base);
            }
            // R > 1 happens for k ≤ q − 3; R = 1 exactly at k = q − 2.
            assert_eq!(b.radicand > 1, k + 3 <= q, "q={q} k={k}");
        }
    }
}

proptest! {
    #[test]
    fn min_integer_h_is_least_solution(q in 3usize..200, k in 1usize..100) {
        prop_assume!(k + 2 <= q);
        let b = c2_bound(q, k);
        let h = b.min_integer_h.unwrap();
        prop_assert!(satisfies_c2(h, &b));
        prop_assert!(!satisfies_c2(h - 1, &b));
    }

    #[test]
    fn conjecture_bound_has_closed_form(q in 2usize..60, k in 1usize..30) {
        prop_assume!(k < q);
        let (rank, h) = conjecture_rank_bound(q, k).unwrap();
        prop_assert!(rank >= 0);
        prop_assert_eq!(h, rank + exact_complex_bound(q, k));
        // The resulting bound is binom(q,2) or 2kq − binom(2k+1,2).
        let (qi, ki) = (q as i128, k as i128);
        let expected = if q <= 2 * k {
            qi * (qi - 1) / 2
        } else {
            2 * ki * qi - (2 * ki + 1) * ki
        };
        prop_assert_eq!(h, expected);
    }
}
