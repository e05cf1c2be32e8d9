use super::{PartialPartition, Partition, PartitionError, UnionFind};

fn cycles_to_partition(n: usize, perm: &[usize]) -> Partition {
    let mut labels = vec![usize::MAX; n];
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        while labels[x] == usize::MAX {
            labels[x] = start;
            x = perm[x];
        }
    }
    Partition::from_labels(&labels)
}

/// Successor of each point inside its block, read cyclically (0-based).
fn successor(p: &Partition) -> Vec<usize> {
    let mut next = vec![0; p.order()];
    for b in p.blocks() {
        for (i, &x) in b.iter().enumerate() {
            next[x - 1] = b[(i + 1) % b.len()] - 1;
        }
    }
    next
}

fn predecessor(p: &Partition) -> Vec<usize> {
    let mut prev = vec![0; p.order()];
    for (x, y) in successor(p).into_iter().enumerate() {
        prev[y] = x;
    }
    prev
}

/// Kreweras complement `K(p)`, the cycle structure of `p^{-1} γ` with `γ = (1 2 … n)`.
///
/// Point `i` of `K(p)` sits between `i` and `i+1` of `p`.
pub fn kreweras(p: &Partition) -> Result<Partition, PartitionError> {
    p.require_noncrossing()?;
    let n = p.order();
    let prev = predecessor(p);
    let perm: Vec<usize> = (0..n).map(|i| prev[(i + 1) % n]).collect();
    Ok(cycles_to_partition(n, &perm))
}

/// Inverse of [`kreweras`]: the cycle structure of `γ q^{-1}`.
pub fn kreweras_inverse(q: &Partition) -> Result<Partition, PartitionError> {
    q.require_noncrossing()?;
    let n = q.order();
    let prev = predecessor(q);
    let perm: Vec<usize> = (0..n).map(|i| (prev[i] + 1) % n).collect();
    Ok(cycles_to_partition(n, &perm))
}

/// Largest partition of the complementary support whose union with `pp` is non-crossing.
///
/// Two points `i < j` outside the support are related iff no support point in `[i, j]`
/// shares a block with a support point outside `[i, j]`.
pub fn partial_kreweras(pp: &PartialPartition) -> Result<PartialPartition, PartitionError> {
    if !pp.is_noncrossing() {
        return Err(PartitionError::NotNonCrossing(pp.to_string()));
    }
    let n = pp.order();
    let mut block_of = vec![usize::MAX; n + 1];
    for (b, block) in pp.blocks().iter().enumerate() {
        for &x in block {
            block_of[x] = b;
        }
    }
    let comp = pp.complement_support();
    let mut uf = UnionFind::new(comp.len());
    for a in 0..comp.len() {
        for b in a + 1..comp.len() {
            let (i, j) = (comp[a], comp[b]);
            let crossing = pp.support().iter().filter(|&&k| i < k && k < j).any(|&k| {
                pp.support().iter().filter(|&&l| l < i || l > j).any(|&l| block_of[k] == block_of[l])
            });
            if !crossing {
                uf.union(a, b);
            }
        }
    }
    Ok(PartialPartition::embed(n, &comp, &uf.partition()))
}

/// `2i - δ(i)`: odd `i` goes to `2i-1`, even `i` to `2i`.
pub fn odd_slot(i: usize) -> usize {
    if i % 2 == 1 {
        2 * i - 1
    } else {
        2 * i
    }
}

/// `2i - (1 - δ(i))`: odd `i` goes to `2i`, even `i` to `2i-1`.
pub fn even_slot(i: usize) -> usize {
    if i % 2 == 1 {
        2 * i
    } else {
        2 * i - 1
    }
}

/// Nested Kreweras complement `kr'(π)` of a non-crossing partition of even order.
///
/// `π` is placed on the slots `2i - δ(i)` of `[1, 4k]`, its partial complement is taken,
/// and the result is read back through the slots `2i - (1 - δ(i))`.
pub fn nested_kreweras(pi: &Partition) -> Result<Partition, PartitionError> {
    let n = pi.order();
    if n % 2 == 1 {
        return Err(PartitionError::OddOrder(n));
    }
    pi.require_noncrossing()?;
    let support: Vec<usize> = (1..=n).map(odd_slot).collect();
    let placed = PartialPartition::embed(2 * n, &support, pi);
    let kr = partial_kreweras(&placed)?;
    let back: Vec<usize> = (1..=n).map(even_slot).collect();
    let labels: Vec<usize> = back
        .iter()
        .map(|x| kr.blocks().iter().position(|b| b.contains(x)).expect("complement covers the even slots"))
        .collect();
    Ok(Partition::from_labels(&labels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityMap {
    /// `i ∼ j` iff `2i-1 ∼ 2j-1`; defined on partitions above `π₀`.
    F,
    /// `i ∼ j` iff `2i ∼ 2j`; defined on partitions above `π₁`.
    G,
    FInv,
    GInv,
}

pub fn parity_map(pi: &Partition, map: ParityMap) -> Result<Partition, PartitionError> {
    let n = pi.order();
    match map {
        ParityMap::F | ParityMap::G => {
            if n % 2 == 1 {
                return Err(PartitionError::OddOrder(n));
            }
            let (floor, pick): (Partition, fn(usize) -> usize) = match map {
                ParityMap::F => (Partition::pi0(n), |i| 2 * i - 1),
                _ => (Partition::pi1(n), |i| 2 * i),
            };
            if !floor.leq(pi)? {
                return Err(PartitionError::PrecedenceViolation(pi.to_string(), floor.to_string()));
            }
            let positions: Vec<usize> = (1..=n / 2).map(pick).collect();
            Ok(pi.restrict(&positions))
        }
        ParityMap::FInv | ParityMap::GInv => {
            let blocks = pi
                .blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .flat_map(|&i| match map {
                            ParityMap::FInv => [if i == 1 { 2 * n } else { 2 * i - 2 }, 2 * i - 1],
                            _ => [2 * i - 1, 2 * i],
                        })
                        .collect()
                })
                .collect();
            Partition::new(2 * n, blocks)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn kreweras_examples() {
        assert_eq!(kreweras(&Partition::full(3)).unwrap(), Partition::discrete(3));
        assert_eq!(kreweras(&p("{1,2},{3}")).unwrap(), p("{1},{2,3}"));
        assert_eq!(kreweras(&p("{1,3},{2},{4}")).unwrap(), p("{1,2},{3,4}"));
        assert_eq!(kreweras_inverse(&p("{1,2},{3,4}")).unwrap(), p("{1,3},{2},{4}"));
        assert!(kreweras(&p("{1,3},{2,4}")).is_err());
    }

    #[test]
    fn partial_examples() {
        let pp = PartialPartition::parse("{1,3}|S={1,3}", 3).unwrap();
        assert_eq!(partial_kreweras(&pp).unwrap().to_string(), "{2}|S={2}");
        let empty = PartialPartition::parse("|S={}", 2).unwrap();
        assert_eq!(partial_kreweras(&empty).unwrap().to_string(), "{1,2}|S={1,2}");
        let fig = PartialPartition::parse("{1,12},{4,5,8,9}|S={1,4,5,8,9,12}", 12).unwrap();
        assert_eq!(partial_kreweras(&fig).unwrap().to_string(), "{2,3,10,11},{6,7}|S={2,3,6,7,10,11}");
    }

    #[test]
    fn nested_examples() {
        assert_eq!(nested_kreweras(&p("{1,3,4},{2},{5,6}")).unwrap(), Partition::pi1(6));
        assert_eq!(nested_kreweras(&Partition::full(6)).unwrap(), Partition::pi1(6));
        assert_eq!(nested_kreweras(&p("{1,6},{2,3,4,5}")).unwrap(), p("{1,2,5,6},{3,4}"));
        assert_eq!(nested_kreweras(&Partition::full(3)), Err(PartitionError::OddOrder(3)));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_map(&Partition::pi0(6), ParityMap::F).unwrap(), Partition::discrete(3));
        assert_eq!(parity_map(&Partition::pi1(6), ParityMap::G).unwrap(), Partition::discrete(3));
        assert_eq!(parity_map(&Partition::full(6), ParityMap::F).unwrap(), Partition::full(3));
        assert!(matches!(
            parity_map(&Partition::pi1(6), ParityMap::F),
            Err(PartitionError::PrecedenceViolation(_, _))
        ));
        assert_eq!(parity_map(&Partition::discrete(3), ParityMap::FInv).unwrap(), Partition::pi0(6));
        assert_eq!(parity_map(&Partition::discrete(3), ParityMap::GInv).unwrap(), Partition::pi1(6));
    }
}
