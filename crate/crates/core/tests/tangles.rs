use freeplanar::partitions::{enumerate, nested_kreweras, odd_slot, even_slot, Partition, PartitionClass, PartialPartition};
use freeplanar::tangles::*;
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn even_nc(order: usize) -> Vec<Partition> {
    enumerate(order, PartitionClass::EvenNonCrossing).unwrap()
}

#[test]
fn pi_of_inverts_t_pi() {
    for n in 1..=5 {
        for pi in even_nc(2 * n) {
            let t = t_pi(&pi).unwrap();
            assert_eq!(t.pi().unwrap(), pi);
            assert_eq!(t.inner_degrees(), pi.blocks().iter().map(|b| b.len() / 2).collect::<Vec<_>>());
        }
    }
}

#[test]
fn shading_is_nested_kreweras() {
    for n in 1..=5 {
        for pi in even_nc(2 * n) {
            let t = t_pi(&pi).unwrap();
            assert_eq!(t.shading_partition().unwrap(), nested_kreweras(&pi).unwrap(), "{pi}");
        }
    }
    assert_eq!(t_pi(&Partition::full(6)).unwrap().shading_partition().unwrap(), Partition::pi1(6));
    assert_eq!(t_pi(&p("{1,6},{2,3,4,5}")).unwrap().shading_partition().unwrap(), p("{1,2,5,6},{3,4}"));
}

#[test]
fn generator_partitions() {
    for k in 1..=5 {
        assert_eq!(s_tangle(k).pi().unwrap(), Partition::pi1(2 * k));
        assert_eq!(u_tangle(k).pi().unwrap(), Partition::pi0(2 * k));
        assert_eq!(s_tangle(k).involution(), s_tangle(k));
        assert_eq!(identity_tangle(k).involution(), identity_tangle(k));
    }
}

#[test]
fn involution_is_involutive() {
    for n in 1..=3 {
        for pi in even_nc(2 * n) {
            let t = t_pi(&pi).unwrap();
            assert_eq!(t.involution().involution(), t);
        }
    }
}

// Free pairs: the criterion agrees with whether the interleaved picture is planar.
#[test]
fn free_criterion_matches_planarity() {
    for n in 1..=3 {
        let parts = even_nc(2 * n);
        for a in &parts {
            for b in &parts {
                let (ta, tb) = (t_pi(a).unwrap(), t_pi(b).unwrap());
                let free = is_free_pair(&ta, &tb).unwrap();
                assert_eq!(free, interleave(&ta, &tb).is_ok(), "{a} / {b}");
                assert_eq!(free, b.leq(&nested_kreweras(a).unwrap()).unwrap());
            }
        }
    }
    for k in 1..=4 {
        assert!(is_free_pair(&u_tangle(k), &identity_tangle(k)).unwrap());
        assert!(is_free_pair(&identity_tangle(k), &s_tangle(k)).unwrap());
    }
}

#[test]
fn free_composition_joins_parity_parts() {
    for n in 1..=4 {
        for pi in even_nc(2 * n) {
            if !Partition::pi0(2 * n).leq(&pi).unwrap() {
                continue;
            }
            let (t, t2) = reduced_pair(&pi).unwrap();
            let joint = free_compose(&t, &t2).unwrap().pi().unwrap();
            let odds: Vec<usize> = (1..=2 * n).map(odd_slot).collect();
            let evens: Vec<usize> = (1..=2 * n).map(even_slot).collect();
            let expected = PartialPartition::embed(4 * n, &odds, &pi)
                .union_with(&PartialPartition::embed(4 * n, &evens, &nested_kreweras(&pi).unwrap()))
                .unwrap();
            assert_eq!(joint, expected, "{pi}");
        }
    }
}

#[test]
fn reduced_pairs_are_counted_by_catalan() {
    let catalan = [1, 1, 2, 5, 14, 42];
    for (k, &expected) in catalan.iter().enumerate().skip(1) {
        let count = even_nc(2 * k).into_iter().filter(|pi| reduced_pair(pi).is_ok()).count();
        assert_eq!(count, expected);
    }
    assert!(matches!(reduced_pair(&Partition::pi1(4)), Err(TangleError::PrecedenceViolation(_))));
}

#[test]
fn interleaving_recomposes() {
    for k in 1..=3 {
        for pi in even_nc(2 * k) {
            let Ok((t, t2)) = reduced_pair(&pi) else { continue };
            let form = interleaving_form(&t, &t2).unwrap();
            assert_eq!(form.r.outer_degree(), k);
            assert!(form.first_side().unwrap().equivalent(&t), "first side of {pi}: {}", form.first_side().unwrap());
            assert!(form.second_side().unwrap().equivalent(&t2), "second side of {pi}: {} vs {}", form.second_side().unwrap(), t2);
        }
    }
}

// Positions of a block listed in the label order of its disk in `T_π`.
fn disk_order(block: &[usize]) -> Vec<usize> {
    let first_odd = block.iter().position(|x| x % 2 == 1).unwrap();
    (0..block.len()).map(|j| block[(first_odd + j) % block.len()]).collect()
}

#[test]
fn composing_refinements_gives_the_finer_tangle() {
    for n in 1..=4 {
        let parts = even_nc(2 * n);
        for pi in &parts {
            for finer in parts.iter().filter(|q| q.leq(pi).unwrap()) {
                let fillers: Vec<Tangle> =
                    pi.blocks().iter().map(|b| t_pi(&finer.restrict(&disk_order(b))).unwrap()).collect();
                let composite = recompose(&t_pi(pi).unwrap(), &fillers).unwrap();
                assert!(composite.equivalent(&t_pi(finer).unwrap()), "{finer} in {pi}");
                assert_eq!(composite.pi().unwrap(), *finer);
            }
        }
    }
}

#[test]
fn compose_examples() {
    let full = t_pi(&Partition::full(4)).unwrap();
    let pairs = t_pi(&p("{1,2},{3,4}")).unwrap();
    assert!(full.compose(1, &pairs).unwrap().equivalent(&pairs));
    let nested = t_pi(&p("{1,4},{2,3}")).unwrap();
    assert!(full.compose(1, &nested).unwrap().equivalent(&nested));
    for n in 1..=3 {
        for pi in even_nc(2 * n) {
            let t = t_pi(&pi).unwrap();
            for (d, k) in t.inner_degrees().into_iter().enumerate() {
                assert_eq!(t.compose(d + 1, &identity_tangle(k)).unwrap(), t);
            }
        }
    }
    assert!(matches!(full.compose(1, &s_tangle(1)), Err(TangleError::DegreeMismatch { .. })));
    assert!(matches!(full.compose(2, &s_tangle(2)), Err(TangleError::NoSuchDisk(2))));
}

#[test]
fn closed_loops_are_counted() {
    // Capping S_2 with U_2 closes a single loop; capping with S_2 closes two.
    let trace = right_trace(2);
    let host = mult_tangle(2);
    let e = cup_cap_tangle(2, 1).unwrap();
    let ee = host.compose(1, &e).unwrap().compose(1, &e).unwrap();
    assert_eq!(ee.closed_loops(), 1);
    assert_eq!(trace.compose(1, &e).unwrap().closed_loops(), 1);
    assert_eq!(trace.compose(1, &one_tangle(2)).unwrap().closed_loops(), 2);
}

#[test]
fn factorization_recovers_blocks() {
    for n in 1..=4 {
        for pi in even_nc(2 * n) {
            let (found, factors) = irreducible_factorization(&t_pi(&pi).unwrap()).unwrap();
            assert_eq!(found, pi);
            for (f, b) in factors.iter().zip(pi.blocks()) {
                assert_eq!(*f, identity_tangle(b.len() / 2));
            }
        }
    }
    // A tangle with some structure inside each block.
    let pi = p("{1,2,3,4},{5,6}");
    let inner = mult_tangle(2).compose(2, &rotation_tangle(2)).unwrap();
    let t = t_pi(&pi).unwrap().compose(1, &inner).unwrap();
    let (found, factors) = irreducible_factorization(&t).unwrap();
    assert_eq!(found, pi);
    assert!(factors[0].equivalent(&inner));
    assert!(matches!(irreducible_factorization(&right_trace(1)), Err(TangleError::NotConnected)));
}

#[test]
fn free_composition_factors_into_families() {
    let joint = free_compose(&u_tangle(2), &identity_tangle(2)).unwrap();
    let (pi, factors) = irreducible_factorization(&joint).unwrap();
    assert_eq!(pi.block_count(), 3);
    assert_eq!(factors.iter().map(Tangle::disk_count).sum::<usize>(), 1);
}

#[test]
fn fatten_block_count_matches_boundary_shaded_regions() {
    for total in 1..=6 {
        for q in enumerate(total, PartitionClass::NonCrossing).unwrap() {
            for upper in 0..=total {
                let Ok(t) = fatten(&q, upper) else { continue };
                assert_eq!(t.outer_degree(), total);
                let touching = t.regions().iter().filter(|r| r.shaded && r.arcs.iter().any(|a| a.disk == 0)).count();
                assert_eq!(touching, q.block_count());
            }
        }
    }
    assert!(matches!(fatten(&p("{1,3},{2,4}"), 4), Err(TangleError::NotNonCrossing(_))));
}

#[test]
fn dsl_examples() {
    let free_ok = is_free_pair(&u_tangle(3), &s_tangle(3)).unwrap();
    assert_eq!(parse("free(U 3, S 3)").is_ok(), free_ok);
    assert!(parse("free(U 3, Id 3)").is_ok());
    assert!(matches!(parse("free(S 2, S 2)"), Err(TangleError::NotFree(_))) || is_free_pair(&s_tangle(2), &s_tangle(2)).unwrap());
    let e = parse("compose(Tpi[{1,2,3,4}], 1, Tpi[{1,4},{2,3}])").unwrap();
    assert!(e.tangle().unwrap().equivalent(&t_pi(&p("{1,4},{2,3}")).unwrap()));
    let fig = parse("free(Tpi[{1,6},{2,3,4,5}], Tpi[{1,2,5,6},{3,4}])").unwrap();
    assert_eq!(fig.signature().unwrap().inner, vec![1, 2, 2, 1]);
}

fn arb_expr() -> impl Strategy<Value = TangleExpr> {
    let leaf = prop_oneof![
        (1usize..4).prop_map(TangleExpr::S),
        (1usize..4).prop_map(TangleExpr::U),
        (1usize..4).prop_map(TangleExpr::Mult),
        (1usize..4).prop_map(TangleExpr::Rot),
        (1usize..3, 1usize..3).prop_map(|(k, m)| TangleExpr::M(k, m)),
        (2usize..5).prop_flat_map(|k| (Just(k), 1..k)).prop_map(|(k, i)| TangleExpr::E(k, i)),
        Just(TangleExpr::Unit),
        (1usize..4).prop_map(TangleExpr::TrL),
        (1usize..4).prop_map(TangleExpr::TrR),
        (1usize..4).prop_flat_map(|k| proptest::sample::select(even_nc(2 * k))).prop_map(TangleExpr::Tpi),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), 1usize..3, inner.clone()).prop_map(|(a, d, b)| TangleExpr::Compose(Box::new(a), d, Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TangleExpr::Free(Box::new(a), Box::new(b))),
            inner.prop_map(|a| TangleExpr::Inv(Box::new(a))),
        ]
    })
}

proptest! {
    #[test]
    fn pretty_print_round_trips(e in arb_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_syntax(&text).unwrap(), e.clone());
        let spaced = text.replace(',', " ,\n ").replace('(', "( ");
        prop_assert_eq!(parse_syntax(&spaced).unwrap(), e);
    }
}
