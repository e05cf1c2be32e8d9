use super::{format_set, kreweras, Partition, PartitionError};

/// Depth of each block (aligned with `p.blocks()`): the number of blocks in the longest
/// chain of nested blocks starting at it, so outermost blocks have depth 1.
pub fn depth(p: &Partition) -> Result<Vec<usize>, PartitionError> {
    p.require_noncrossing()?;
    let blocks = p.blocks();
    // `inner` is nested under `outer` when it sits strictly between two consecutive-or-not
    // elements of `outer`: i1 < j1 <= j_last < i_last.
    let nested = |inner: &[usize], outer: &[usize]| {
        outer[0] < inner[0] && inner[inner.len() - 1] < outer[outer.len() - 1]
    };
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&b| std::cmp::Reverse(blocks[b][blocks[b].len() - 1] - blocks[b][0]));
    let mut depth = vec![1; blocks.len()];
    for (pos, &b) in order.iter().enumerate() {
        for &c in &order[..pos] {
            if nested(&blocks[b], &blocks[c]) {
                depth[b] = depth[b].max(depth[c] + 1);
            }
        }
    }
    Ok(depth)
}

/// `p_{B,B'}`: the two blocks merged, provided the result is still non-crossing.
pub fn merge_blocks(p: &Partition, b: &[usize], other: &[usize]) -> Result<Partition, PartitionError> {
    let i = p.find_block(b)?;
    let j = p.find_block(other)?;
    let not_adjacent = || PartitionError::NotAdjacent(format_set(b), format_set(other));
    if i == j {
        return Err(not_adjacent());
    }
    let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
    let moved = blocks[j].clone();
    blocks[i].extend(moved);
    blocks.remove(j);
    let merged = Partition::new(p.order(), blocks)?;
    if merged.is_noncrossing() {
        Ok(merged)
    } else {
        Err(not_adjacent())
    }
}

/// `p_{B,i}`: the block split into its first `index` elements and the rest.
pub fn split_block(p: &Partition, b: &[usize], index: usize) -> Result<Partition, PartitionError> {
    let pos = p.find_block(b)?;
    let block = &p.blocks()[pos];
    if index == 0 || index >= block.len() {
        return Err(PartitionError::InvalidSplitIndex { size: block.len(), index });
    }
    let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
    let tail = blocks[pos].split_off(index);
    blocks.push(tail);
    Partition::new(p.order(), blocks)
}

/// Enveloping blocks of a block `B` of `p`, given as blocks of `K(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub upper: Vec<usize>,
    pub lower: Vec<Vec<usize>>,
}

/// Blocks of `K(p)` adjacent to `B` inside `(p, odd) ∨ (K(p), even)`, split by depth.
pub fn enveloping_blocks(p: &Partition, b: &[usize]) -> Result<Envelope, PartitionError> {
    p.require_noncrossing()?;
    let target = p.find_block(b)?;
    let k = kreweras(p)?;
    let n = p.order();
    let lifted: Vec<Vec<usize>> = p
        .blocks()
        .iter()
        .map(|blk| blk.iter().map(|x| 2 * x - 1).collect())
        .chain(k.blocks().iter().map(|blk| blk.iter().map(|y| 2 * y).collect()))
        .collect();
    let circle = Partition::new(2 * n, lifted.clone())?;
    let depths = depth(&circle)?;
    let depth_of = |blk: &Vec<usize>| depths[circle.find_block(blk).expect("lifted block")];
    let own = &lifted[target];
    let own_depth = depth_of(own);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (c, kb) in k.blocks().iter().enumerate() {
        let lifted_c = &lifted[p.block_count() + c];
        if merge_blocks(&circle, own, lifted_c).is_err() {
            continue;
        }
        if depth_of(lifted_c) <= own_depth {
            upper.push(kb.clone());
        } else {
            lower.push(kb.clone());
        }
    }
    if upper.len() != 1 || lower.len() + 1 != p.blocks()[target].len() {
        return Err(PartitionError::Invalid(format!(
            "block {} of {p} has {} upper and {} lower enveloping blocks",
            format_set(b),
            upper.len(),
            lower.len()
        )));
    }
    lower.sort_by_key(|blk| blk[0]);
    Ok(Envelope { upper: upper.pop().unwrap(), lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn depth_examples() {
        let x = p("{1,4},{2,3},{5}");
        assert_eq!(depth(&x).unwrap(), vec![1, 2, 1]);
        assert_eq!(depth(&Partition::full(4)).unwrap(), vec![1]);
        assert_eq!(depth(&Partition::discrete(3)).unwrap(), vec![1, 1, 1]);
        assert_eq!(depth(&p("{1,6},{2,5},{3,4}")).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn surgery_examples() {
        assert_eq!(merge_blocks(&p("{1,4},{2,3},{5}"), &[1, 4], &[5]).unwrap(), p("{1,4,5},{2,3}"));
        assert_eq!(split_block(&p("{1,4,5},{2,3}"), &[1, 4, 5], 1).unwrap(), p("{1},{4,5},{2,3}"));
        assert_eq!(merge_blocks(&p("{1,2},{3,4}"), &[1, 2], &[3, 4]).unwrap(), Partition::full(4));
        assert!(matches!(merge_blocks(&p("{1,3},{2},{4}"), &[2], &[4]), Err(PartitionError::NotAdjacent(_, _))));
        assert_eq!(
            split_block(&p("{1,2}"), &[1, 2], 2),
            Err(PartitionError::InvalidSplitIndex { size: 2, index: 2 })
        );
    }

    #[test]
    fn envelope_examples() {
        let e = enveloping_blocks(&p("{1,3},{2}"), &[1, 3]).unwrap();
        assert_eq!(e, Envelope { upper: vec![3], lower: vec![vec![1, 2]] });
        let e = enveloping_blocks(&Partition::full(3), &[1, 2, 3]).unwrap();
        assert_eq!(e, Envelope { upper: vec![3], lower: vec![vec![1], vec![2]] });
        let e = enveloping_blocks(&Partition::discrete(2), &[1]).unwrap();
        assert_eq!(e, Envelope { upper: vec![1, 2], lower: vec![] });
    }
}
