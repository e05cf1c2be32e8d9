//! Set partitions of `[1, n]`, with the non-crossing calculus built on top of them.

mod enumerate;
mod kreweras;
mod surgery;

pub use enumerate::{enumerate, PartitionClass, NC_CAP, ALL_CAP, INTERVAL_CAP};
pub use kreweras::{kreweras, kreweras_inverse, nested_kreweras, odd_slot, even_slot, parity_map, partial_kreweras, ParityMap};
pub use surgery::{depth, enveloping_blocks, merge_blocks, split_block, Envelope};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("order {0} exceeds the enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("partitions have different orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("partition {0} is not non-crossing")]
    NotNonCrossing(String),
    #[error("partition order {0} is odd")]
    OddOrder(usize),
    #[error("partition {0} does not dominate {1}")]
    PrecedenceViolation(String, String),
    #[error("blocks {0} and {1} cannot be merged without a crossing")]
    NotAdjacent(String, String),
    #[error("cannot split a block of size {size} after position {index}")]
    InvalidSplitIndex { size: usize, index: usize },
    #[error("{0} is not a block of the partition")]
    NoSuchBlock(String),
    #[error("invalid partition: {0}")]
    Invalid(String),
}

/// A set partition of `[1, n]`; blocks are sorted and ordered by their least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Which of the standard subclasses a partition belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionClassFlags {
    pub noncrossing: bool,
    pub interval: bool,
    pub even: bool,
}

/// Parity of a position: `true` for odd `i`.
pub fn is_odd(i: usize) -> bool {
    i % 2 == 1
}

fn canonicalize(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

pub fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>, PartitionError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| PartitionError::Invalid(format!("`{text}`: {why}"));
    let mut blocks = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('{').ok_or_else(|| bad("expected `{`"))?;
        let close = body.find('}').ok_or_else(|| bad("missing `}`"))?;
        let block: Vec<usize> = if close == 0 {
            Vec::new()
        } else {
            body[..close]
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| bad("expected a positive integer")))
                .collect::<Result<_, _>>()?
        };
        blocks.push(block);
        rest = &body[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            rest = r;
            if rest.is_empty() {
                return Err(bad("trailing comma"));
            }
        } else if !rest.is_empty() {
            return Err(bad("expected `,` between blocks"));
        }
    }
    Ok(blocks)
}

impl Partition {
    /// Builds a partition of `[1, n]` from blocks in any order.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::Invalid("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n || seen[x] {
                    return Err(PartitionError::Invalid(format!("element {x} repeated or outside [1,{n}]")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(PartitionError::Invalid(format!("blocks do not cover [1,{n}]")));
        }
        Ok(Partition { n, blocks: canonicalize(blocks) })
    }

    /// Groups `i` and `j` together iff `labels[i-1] == labels[j-1]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, l) in labels.iter().enumerate() {
            groups.entry(*l).or_default().push(i + 1);
        }
        Partition { n: labels.len(), blocks: canonicalize(groups.into_values().collect()) }
    }

    pub fn discrete(n: usize) -> Self {
        Partition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn full(n: usize) -> Self {
        Partition { n, blocks: vec![(1..=n).collect()] }
    }

    /// Pairs `{2i, 2i+1}` read cyclically, so `{2k, 1}` is a block.
    pub fn pi0(order: usize) -> Self {
        assert!(order.is_multiple_of(2) && order > 0);
        let mut blocks: Vec<Vec<usize>> = (1..order / 2).map(|i| vec![2 * i, 2 * i + 1]).collect();
        blocks.push(vec![1, order]);
        Partition { n: order, blocks: canonicalize(blocks) }
    }

    /// Pairs `{2i-1, 2i}`.
    pub fn pi1(order: usize) -> Self {
        assert!(order.is_multiple_of(2) && order > 0);
        Partition { n: order, blocks: (1..=order / 2).map(|i| vec![2 * i - 1, 2 * i]).collect() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `labels()[i-1]` is the index of the block containing `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                out[x - 1] = b;
            }
        }
        out
    }

    pub fn block_index_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("element in range")
    }

    pub fn find_block(&self, block: &[usize]) -> Result<usize, PartitionError> {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        self.blocks
            .iter()
            .position(|b| *b == sorted)
            .ok_or_else(|| PartitionError::NoSuchBlock(format_set(&sorted)))
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&i) && b.contains(&j))
    }

    pub fn is_noncrossing(&self) -> bool {
        let labels = self.labels();
        for block in &self.blocks {
            for w in block.windows(2) {
                let (a, b) = (w[0], w[1]);
                for x in a + 1..b {
                    let other = &self.blocks[labels[x - 1]];
                    if other[0] < a || *other.last().unwrap() > b {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| b.windows(2).all(|w| w[1] == w[0] + 1))
    }

    pub fn is_even(&self) -> bool {
        self.blocks.iter().all(|b| b.len() % 2 == 0)
    }

    pub fn flags(&self) -> PartitionClassFlags {
        PartitionClassFlags { noncrossing: self.is_noncrossing(), interval: self.is_interval(), even: self.is_even() }
    }

    pub fn require_noncrossing(&self) -> Result<(), PartitionError> {
        if self.is_noncrossing() {
            Ok(())
        } else {
            Err(PartitionError::NotNonCrossing(self.to_string()))
        }
    }

    fn check_order(&self, other: &Partition) -> Result<(), PartitionError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PartitionError::OrderMismatch(self.n, other.n))
        }
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        self.check_order(other)?;
        let labels = other.labels();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1])))
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_order(other)?;
        let (a, b) = (self.labels(), other.labels());
        let pairs: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x * self.n + y).collect();
        Ok(Partition::from_labels(&pairs))
    }

    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_order(other)?;
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(&other.blocks) {
            for w in b.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        Ok(uf.partition())
    }

    /// The partition of `[1, m]` obtained by keeping the block structure on the given
    /// positions, relabelled in increasing order.
    pub fn restrict(&self, positions: &[usize]) -> Partition {
        let labels = self.labels();
        Partition::from_labels(&positions.iter().map(|&x| labels[x - 1]).collect::<Vec<_>>())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format_set(b)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// The order is the number of listed elements, which must be exactly `1..=n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let blocks = parse_blocks(s)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }
}

/// A partition of a support set `S ⊆ [1, n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialPartition {
    n: usize,
    support: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl PartialPartition {
    pub fn new(n: usize, support: Vec<usize>, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        if support.iter().any(|&x| x == 0 || x > n) {
            return Err(PartitionError::Invalid(format!("support outside [1,{n}]")));
        }
        let mut covered: Vec<usize> = blocks.iter().flatten().copied().collect();
        covered.sort_unstable();
        if covered != support || blocks.iter().any(Vec::is_empty) {
            return Err(PartitionError::Invalid("blocks must partition the support".into()));
        }
        Ok(PartialPartition { n, support, blocks: if blocks.is_empty() { blocks } else { canonicalize(blocks) } })
    }

    /// Places the blocks of `p` on `support` (the `i`-th point of `p` goes to `support[i-1]`).
    pub fn embed(n: usize, support: &[usize], p: &Partition) -> Self {
        assert_eq!(support.len(), p.order());
        let blocks = p.blocks().iter().map(|b| b.iter().map(|&x| support[x - 1]).collect()).collect();
        PartialPartition::new(n, support.to_vec(), blocks).expect("embedding is valid")
    }

    /// Parses `{..},{..}|S={..}`; `n` is the ambient order.
    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionError> {
        let (blocks, support) = text
            .split_once("|S=")
            .ok_or_else(|| PartitionError::Invalid(format!("`{text}`: missing `|S=`")))?;
        let blocks = parse_blocks(blocks)?;
        let support = parse_blocks(support)?;
        if support.len() != 1 {
            return Err(PartitionError::Invalid(format!("`{text}`: support must be one set")));
        }
        PartialPartition::new(n, support.into_iter().next().unwrap(), blocks)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn complement_support(&self) -> Vec<usize> {
        (1..=self.n).filter(|x| self.support.binary_search(x).is_err()).collect()
    }

    /// The blocks relabelled to `[1, |S|]` by rank in the support.
    pub fn compressed(&self) -> Partition {
        let labels: Vec<usize> = self.support.iter().map(|x| self.blocks.iter().position(|b| b.contains(x)).unwrap()).collect();
        Partition::from_labels(&labels)
    }

    /// `(p, S) ∨ (q, S^c)` as a partition of `[1, n]`; requires complementary supports.
    pub fn union_with(&self, other: &PartialPartition) -> Result<Partition, PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::OrderMismatch(self.n, other.n));
        }
        Partition::new(self.n, self.blocks.iter().chain(&other.blocks).cloned().collect())
    }

    pub fn is_noncrossing(&self) -> bool {
        self.compressed().is_noncrossing()
    }
}

impl fmt::Display for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format_set(b)).collect();
        write!(f, "{}|S={}", parts.join(","), format_set(&self.support))
    }
}

impl fmt::Debug for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Partition of `[1, n]` whose blocks are the classes (index `i` stands for `i+1`).
    pub(crate) fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn text_format() {
        let x = p("{5,6},{2},{4,1,3}");
        assert_eq!(x.to_string(), "{1,3,4},{2},{5,6}");
        assert_eq!(x.order(), 6);
        assert!(" {1, 2} , {3}".parse::<Partition>().is_ok());
        assert!("{1,2},{2}".parse::<Partition>().is_err());
        assert!("{1,3}".parse::<Partition>().is_err());
        assert!("{1,2}{3}".parse::<Partition>().is_err());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(p("{1,2},{3,4}").join(&p("{1,3},{2,4}")).unwrap(), Partition::full(4));
        let q = Partition::discrete(4);
        assert_eq!(p("{1,2},{3,4}").meet(&q).unwrap(), q);
        assert!(q.leq(&p("{1,2},{3,4}")).unwrap());
        assert_eq!(p("{1,2,3}").meet(&p("{1,2},{3}")).unwrap(), p("{1,2},{3}"));
        assert_eq!(p("{1,2}").leq(&Partition::full(3)), Err(PartitionError::OrderMismatch(2, 3)));
    }

    #[test]
    fn flags() {
        assert!(!p("{1,3},{2,4}").is_noncrossing());
        assert!(p("{1,4},{2,3}").is_noncrossing());
        assert!(!p("{1,4},{2,3}").is_interval());
        assert!(p("{1,4},{2,3}").is_even());
        assert_eq!(Partition::pi0(6), p("{1,6},{2,3},{4,5}"));
        assert_eq!(Partition::pi1(4), p("{1,2},{3,4}"));
    }

    #[test]
    fn partial_text() {
        let pp = PartialPartition::parse("{1,3}|S={1,3}", 3).unwrap();
        assert_eq!(pp.to_string(), "{1,3}|S={1,3}");
        assert_eq!(pp.complement_support(), vec![2]);
        let empty = PartialPartition::parse("|S={}", 2).unwrap();
        assert_eq!(empty.to_string(), "|S={}");
    }
}
