use bggx_core::lr::lr_coefficient;
use bggx_core::partition::partitions_of;
use bggx_core::schur::{complement, multiply};
use bggx_core::{GrassmannianContext, Partition, Rational, SchubertExpr};
use proptest::prelude::*;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn expr_strategy(k: usize, q: usize) -> impl Strategy<Value = SchubertExpr<Rational>> {
    let ctx = GrassmannianContext::new(k, q).unwrap();
    let classes = ctx.box_partitions().unwrap();
    let n = classes.len();
    proptest::collection::vec((0..n, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut e = SchubertExpr::zero(ctx);
        for (i, c) in terms {
            e = e
                .add(&SchubertExpr::term(ctx, classes[i].clone(), int(c)).unwrap())
                .unwrap();
        }
        e
    })
}

fn triples(k: usize, q: usize) -> impl Strategy<Value = [SchubertExpr<Rational>; 3]> {
    (expr_strategy(k, q), expr_strategy(k, q), expr_strategy(k, q)).prop_map(|(a, b, c)| [a, b, c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms_gr_2_5([a, b, c] in triples(2, 5)) {
        prop_assert_eq!(multiply(&a, &b).unwrap(), multiply(&b, &a).unwrap());
        let left = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ring_axioms_gr_3_7([a, b, c] in triples(3, 7)) {
        prop_assert_eq!(multiply(&a, &b).unwrap(), multiply(&b, &a).unwrap());
        let left = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn distributive_gr_3_7([a, b, c] in triples(3, 7)) {
        let lhs = multiply(&a, &b.add(&c).unwrap()).unwrap();
        let rhs = multiply(&a, &b).unwrap().add(&multiply(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn multiplication_matches_lr_tableaux_in_gr_3_8() {
    let ctx = GrassmannianContext::new(3, 8).unwrap();
    let small: Vec<Partition> = (0..=4).flat_map(|d| partitions_of(d, 3, Some(5))).collect();
    for lambda in &small {
        for mu in &small {
            let a = SchubertExpr::<Rational>::class(ctx, lambda.clone()).unwrap();
            let b = SchubertExpr::<Rational>::class(ctx, mu.clone()).unwrap();
            let prod = multiply(&a, &b).unwrap();
            for nu in partitions_of(lambda.size() + mu.size(), 3, Some(5)) {
                let expected = lr_coefficient(lambda, mu, &nu).unwrap();
                assert_eq!(prod.coeff(&nu), int(expected as i64), "{lambda} * {mu} at {nu}");
            }
        }
    }
}

#[test]
fn poincare_duality_pairing() {
    for (k, q) in [(2, 5), (3, 6), (3, 7)] {
        let ctx = GrassmannianContext::new(k, q).unwrap();
        let top = Partition::new(vec![q - k; k]).unwrap();
        let classes = ctx.box_partitions().unwrap();
        for lambda in &classes {
            for mu in &classes {
                if lambda.size() != mu.size() {
                    continue;
                }
                let prod = multiply(
                    &SchubertExpr::<Rational>::class(ctx, lambda.clone()).unwrap(),
                    &SchubertExpr::class(ctx, complement(mu, ctx).unwrap()).unwrap(),
                )
                .unwrap();
                // σ_λ · σ_{μ^∨} has top coefficient δ_{λμ}.
                assert_eq!(prod.coeff(&top), int((lambda == mu) as i64), "{lambda}, {mu}");
            }
        }
    }
}

#[test]
fn stable_products_truncate_to_concrete_ones() {
    for k in 1..=3 {
        let stable = GrassmannianContext::stable(k).unwrap();
        for q in k + 1..=k + 4 {
            let ctx = GrassmannianContext::new(k, q).unwrap();
            let shapes: Vec<Partition> = (0..=3).flat_map(|d| partitions_of(d, k, None)).collect();
            for a in &shapes {
                for b in &shapes {
                    let s = multiply(
                        &SchubertExpr::<Rational>::class(stable, a.clone()).unwrap(),
                        &SchubertExpr::class(stable, b.clone()).unwrap(),
                    )
                    .unwrap();
                    let lhs = s.truncate_to(ctx).unwrap();
                    let rhs = match (
                        SchubertExpr::<Rational>::class(ctx, a.clone()),
                        SchubertExpr::<Rational>::class(ctx, b.clone()),
                    ) {
                        (Ok(x), Ok(y)) => multiply(&x, &y).unwrap(),
                        _ => SchubertExpr::zero(ctx),
                    };
                    assert_eq!(lhs, rhs, "k={k} q={q} {a} * {b}");
                }
            }
        }
    }
}
