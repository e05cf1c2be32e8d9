use freeplanar::partitions::*;
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn interleave(p: &Partition, q: &Partition) -> Partition {
    let n = p.order();
    let blocks = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|x| 2 * x - 1).collect())
        .chain(q.blocks().iter().map(|b| b.iter().map(|y| 2 * y).collect()))
        .collect();
    Partition::new(2 * n, blocks).unwrap()
}

/// The greatest element of `candidates`, asserting that it dominates every other one.
fn greatest(candidates: Vec<Partition>) -> Partition {
    let top = candidates.iter().max_by_key(|c| std::cmp::Reverse(c.block_count())).unwrap().clone();
    for c in &candidates {
        assert!(c.leq(&top).unwrap(), "{c} is not below {top}");
    }
    top
}

fn brute_kreweras(p: &Partition) -> Partition {
    let n = p.order();
    greatest(
        enumerate(n, PartitionClass::All)
            .unwrap()
            .into_iter()
            .filter(|q| interleave(p, q).is_noncrossing())
            .collect(),
    )
}

fn brute_partial(pp: &PartialPartition) -> PartialPartition {
    let comp = pp.complement_support();
    if comp.is_empty() {
        return PartialPartition::new(pp.order(), vec![], vec![]).unwrap();
    }
    let candidates: Vec<Partition> = enumerate(comp.len(), PartitionClass::All)
        .unwrap()
        .into_iter()
        .filter(|q| {
            let placed = PartialPartition::embed(pp.order(), &comp, q);
            placed.union_with(pp).unwrap().is_noncrossing()
        })
        .collect();
    PartialPartition::embed(pp.order(), &comp, &greatest(candidates))
}

#[test]
fn kreweras_matches_maximality_oracle() {
    for n in 1..=6 {
        for x in enumerate(n, PartitionClass::NonCrossing).unwrap() {
            assert_eq!(kreweras(&x).unwrap(), brute_kreweras(&x), "p = {x}");
        }
    }
}

#[test]
fn kreweras_block_count_and_inverse() {
    for n in 1..=8 {
        for x in enumerate(n, PartitionClass::NonCrossing).unwrap() {
            let k = kreweras(&x).unwrap();
            assert_eq!(x.block_count() + k.block_count(), n + 1);
            assert!(k.is_noncrossing());
            assert_eq!(kreweras_inverse(&k).unwrap(), x);
            assert_eq!(kreweras(&kreweras_inverse(&x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn partial_kreweras_matches_maximality_oracle() {
    // Every NC partial partition of every support of [1, 6].
    let n = 6;
    for mask in 0u32..1 << n {
        let support: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let shapes = if support.is_empty() {
            vec![None]
        } else {
            enumerate(support.len(), PartitionClass::NonCrossing).unwrap().into_iter().map(Some).collect()
        };
        for shape in shapes {
            let pp = match &shape {
                Some(q) => PartialPartition::embed(n, &support, q),
                None => PartialPartition::new(n, vec![], vec![]).unwrap(),
            };
            assert_eq!(partial_kreweras(&pp).unwrap(), brute_partial(&pp), "pp = {pp}");
        }
    }
}

#[test]
fn partial_kreweras_worked_instance() {
    let pp = PartialPartition::parse("{1,12},{4,5,8,9}|S={1,4,5,8,9,12}", 12).unwrap();
    let kr = partial_kreweras(&pp).unwrap();
    assert_eq!(kr, brute_partial(&pp));
    assert_eq!(kr.to_string(), "{2,3,10,11},{6,7}|S={2,3,6,7,10,11}");
}

#[test]
fn nested_kreweras_properties() {
    for k in 1..=4 {
        let order = 2 * k;
        for pi in enumerate(order, PartitionClass::NonCrossing).unwrap() {
            let kr = nested_kreweras(&pi).unwrap();
            assert!(Partition::pi1(order).leq(&kr).unwrap(), "kr'({pi}) = {kr}");
            assert!(kr.is_noncrossing());
            let joined = pi.join(&Partition::pi0(order)).unwrap();
            assert_eq!(nested_kreweras(&joined).unwrap(), kr);
        }
    }
    // A partition that is not even is accepted.
    assert_eq!(nested_kreweras(&p("{1,3,4},{2},{5,6}")).unwrap(), p("{1,2},{3,4},{5,6}"));
}

#[test]
fn nested_kreweras_via_explicit_embedding() {
    for pi in enumerate(6, PartitionClass::NonCrossing).unwrap() {
        let support: Vec<usize> = (1..=6).map(odd_slot).collect();
        let kr = brute_partial(&PartialPartition::embed(12, &support, &pi));
        let expected = Partition::from_labels(
            &(1..=6)
                .map(|i| kr.blocks().iter().position(|b| b.contains(&even_slot(i))).unwrap())
                .collect::<Vec<_>>(),
        );
        assert_eq!(nested_kreweras(&pi).unwrap(), expected, "pi = {pi}");
    }
}

#[test]
fn parity_maps_round_trip_and_intertwine() {
    for n in 1..=5 {
        for x in enumerate(n, PartitionClass::NonCrossing).unwrap() {
            let f_inv = parity_map(&x, ParityMap::FInv).unwrap();
            assert!(Partition::pi0(2 * n).leq(&f_inv).unwrap());
            assert_eq!(parity_map(&f_inv, ParityMap::F).unwrap(), x);
            let g_inv = parity_map(&x, ParityMap::GInv).unwrap();
            assert_eq!(parity_map(&g_inv, ParityMap::G).unwrap(), x);
            // F_inv(x) is the partition above pi0 whose odd points carry x.
            assert!(f_inv.is_noncrossing());
            let lhs = kreweras(&x).unwrap();
            let rhs = parity_map(&nested_kreweras(&f_inv).unwrap(), ParityMap::G).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

fn brute_depth(x: &Partition) -> Vec<usize> {
    // Longest chain by explicit search over the nesting relation.
    fn chain(x: &Partition, b: usize) -> usize {
        let blocks = x.blocks();
        let inner = &blocks[b];
        (0..blocks.len())
            .filter(|&c| {
                let outer = &blocks[c];
                outer[0] < inner[0] && inner[0] <= inner[inner.len() - 1] && inner[inner.len() - 1] < outer[outer.len() - 1]
            })
            .map(|c| 1 + chain(x, c))
            .max()
            .unwrap_or(1)
    }
    (0..x.block_count()).map(|b| chain(x, b)).collect()
}

#[test]
fn depth_matches_chain_search() {
    for n in 1..=8 {
        for x in enumerate(n, PartitionClass::NonCrossing).unwrap() {
            assert_eq!(depth(&x).unwrap(), brute_depth(&x), "p = {x}");
        }
    }
}

#[test]
fn surgery_with_resolved_index() {
    for n in 2..=6 {
        for x in enumerate(n, PartitionClass::NonCrossing).unwrap() {
            let k = kreweras(&x).unwrap();
            for b in x.blocks() {
                if b.len() < 2 {
                    continue;
                }
                let env = enveloping_blocks(&x, b).unwrap();
                for i in 1..b.len() {
                    let split = split_block(&x, b, i).unwrap();
                    let merged = merge_blocks(&k, &env.upper, &env.lower[i - 1]).unwrap();
                    assert_eq!(kreweras(&split).unwrap(), merged);
                }
            }
        }
    }
}

#[test]
fn merge_adjacency_is_noncrossing_test() {
    for x in enumerate(5, PartitionClass::NonCrossing).unwrap() {
        for a in x.blocks() {
            for b in x.blocks() {
                if a == b {
                    continue;
                }
                let mut blocks: Vec<Vec<usize>> = x.blocks().iter().filter(|c| *c != a && *c != b).cloned().collect();
                blocks.push(a.iter().chain(b).copied().collect());
                let expect = Partition::new(5, blocks).unwrap();
                match merge_blocks(&x, a, b) {
                    Ok(m) => assert_eq!(m, expect),
                    Err(_) => assert!(!expect.is_noncrossing()),
                }
            }
        }
    }
}

fn partition_strategy(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(0..n, n)).prop_map(|l| Partition::from_labels(&l))
}

proptest! {
    #[test]
    fn lattice_laws((a, b) in (1usize..9).prop_flat_map(|n| (
        proptest::collection::vec(0..n, n), proptest::collection::vec(0..n, n)))) {
        let (a, b) = (Partition::from_labels(&a), Partition::from_labels(&b));
        let meet = a.meet(&b).unwrap();
        let join = a.join(&b).unwrap();
        prop_assert!(meet.leq(&a).unwrap() && meet.leq(&b).unwrap());
        prop_assert!(a.leq(&join).unwrap() && b.leq(&join).unwrap());
        prop_assert_eq!(a.leq(&b).unwrap(), a.meet(&b).unwrap() == a);
        prop_assert_eq!(a.leq(&b).unwrap(), a.join(&b).unwrap() == b);
        prop_assert_eq!(join, b.join(&a).unwrap());
    }

    #[test]
    fn text_round_trip(x in partition_strategy(10)) {
        prop_assert_eq!(x.to_string().parse::<Partition>().unwrap(), x.clone());
        let flags = x.flags();
        prop_assert!(!flags.interval || flags.noncrossing);
    }
}
