//! Set partitions, non-crossing partitions and non-crossing linked partitions
//! of `{1..n}`.
//!
//! All partitions are kept in canonical form: elements ascending inside each
//! block, blocks ordered by their minimum. Equality and ordering are
//! structural on that form.

pub mod brute;
mod nc;
mod ncl;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use nc::{enumerate_nc, enumerate_nc_0, enumerate_nc_s, group_nc_s_by_join, NcClass};
pub use ncl::{enumerate_ncl, NclClassification};

/// Largest ground set accepted by [`enumerate_nc`] and [`enumerate_nc_s`].
pub const MAX_NC: usize = 14;
/// Largest ground set accepted by [`enumerate_ncl`].
pub const MAX_NCL: usize = 10;
/// Largest (even) ground set accepted by [`enumerate_nc_0`] and [`group_nc_s_by_join`].
pub const MAX_NC_0: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("invalid blocks: {0}")]
    InvalidBlocks(String),
    #[error("partition has a crossing")]
    Crossing,
    #[error("{what} enumeration limited to n <= {max}, got {n}")]
    Guard { what: &'static str, n: usize, max: usize },
    #[error("ground set sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("expected an even ground set, got {0}")]
    OddSize(usize),
    #[error("not a subset of the ground set: {0}")]
    NotSubset(String),
    #[error("not a non-crossing linked partition: {0}")]
    InvalidLinked(String),
}

/// Anything that exposes canonical blocks over `{1..n}`.
pub trait Blocks {
    fn ground_size(&self) -> usize;
    fn block_list(&self) -> &[Vec<usize>];
}

fn canonicalize(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

fn fmt_blocks(blocks: &[Vec<usize>], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for b in blocks {
        write!(f, "(")?;
        for (i, e) in b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")?;
    }
    Ok(())
}

/// A partition of `{1..n}` into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionRepr> for SetPartition {
    type Error = PartitionError;
    fn try_from(r: PartitionRepr) -> Result<Self, Self::Error> {
        SetPartition::new(r.n, r.blocks)
    }
}

impl From<SetPartition> for PartitionRepr {
    fn from(p: SetPartition) -> Self {
        PartitionRepr { n: p.n, blocks: p.blocks }
    }
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyGroundSet);
        }
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::InvalidBlocks("empty block".into()));
            }
            for &e in b {
                if e == 0 || e > n {
                    return Err(PartitionError::InvalidBlocks(format!("element {e} outside 1..={n}")));
                }
                if seen[e] {
                    return Err(PartitionError::InvalidBlocks(format!("element {e} repeated")));
                }
                seen[e] = true;
            }
        }
        if let Some(e) = (1..=n).find(|&e| !seen[e]) {
            return Err(PartitionError::InvalidBlocks(format!("element {e} not covered")));
        }
        Ok(SetPartition { n, blocks: canonicalize(blocks) })
    }

    /// Builds from trusted canonical data.
    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(SetPartition::new(n, blocks.clone()).map(|p| p.blocks == blocks).unwrap_or(false));
        SetPartition { n, blocks }
    }

    /// Builds from a label per element (`labels[i]` is the block of element `i + 1`).
    pub fn from_labels(labels: &[usize]) -> Result<Self, PartitionError> {
        let n = labels.len();
        if n == 0 {
            return Err(PartitionError::EmptyGroundSet);
        }
        let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(i + 1);
        }
        Ok(SetPartition { n, blocks: canonicalize(by_label.into_values().collect()) })
    }

    pub fn singletons(n: usize) -> Result<Self, PartitionError> {
        SetPartition::new(n, (1..=n).map(|e| vec![e]).collect())
    }

    pub fn full(n: usize) -> Result<Self, PartitionError> {
        SetPartition::new(n, vec![(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `labels()[e - 1]` is the index of the block holding `e`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &e in b {
                labels[e - 1] = bi;
            }
        }
        labels
    }

    /// True if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let labels = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&e| labels[e - 1] == labels[b[0] - 1]))
    }

    /// Stack scan: a block that resumes while a later-opened block is still
    /// open is crossed by it.
    pub fn is_noncrossing(&self) -> bool {
        let labels = self.labels();
        let mut stack: Vec<usize> = Vec::new();
        for e in 1..=self.n {
            let b = labels[e - 1];
            let block = &self.blocks[b];
            if block[0] == e {
                stack.push(b);
            } else if stack.last() != Some(&b) {
                return false;
            }
            if *block.last().unwrap() == e {
                stack.pop();
            }
        }
        true
    }

    /// Restriction to the sorted subset `subset`, relabelled into `1..=|subset|`.
    pub fn restrict(&self, subset: &[usize]) -> Result<SetPartition, PartitionError> {
        let index = subset_index(self.n, subset)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().filter_map(|&e| index[e]).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        SetPartition::new(subset.len(), blocks)
    }

    pub fn juxtapose(&self, other: &SetPartition) -> SetPartition {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| b.iter().map(|e| e + self.n).collect()));
        SetPartition::from_canonical(self.n + other.n, canonicalize(blocks))
    }
}

/// Maps each element of `1..=n` to its 1-based position in `subset`.
fn subset_index(n: usize, subset: &[usize]) -> Result<Vec<Option<usize>>, PartitionError> {
    if subset.is_empty() {
        return Err(PartitionError::NotSubset("empty subset".into()));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PartitionError::NotSubset(format!("{subset:?} is not strictly increasing")));
    }
    let mut index = vec![None; n + 1];
    for (i, &e) in subset.iter().enumerate() {
        if e == 0 || e > n {
            return Err(PartitionError::NotSubset(format!("{e} outside 1..={n}")));
        }
        index[e] = Some(i + 1);
    }
    Ok(index)
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(&self.blocks, f)
    }
}

impl Blocks for SetPartition {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn block_list(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// A non-crossing partition together with its exterior/interior split.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCPartition {
    base: SetPartition,
    interior: Vec<bool>,
}

impl NCPartition {
    pub fn new(base: SetPartition) -> Result<Self, PartitionError> {
        if !base.is_noncrossing() {
            return Err(PartitionError::Crossing);
        }
        Ok(Self::from_noncrossing(base))
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        Self::new(SetPartition::new(n, blocks)?)
    }

    pub(crate) fn from_noncrossing(base: SetPartition) -> Self {
        // For non-crossing partitions a block is nested under another block
        // exactly when that block's span strictly contains its span.
        let spans: Vec<(usize, usize)> =
            base.blocks.iter().map(|b| (b[0], *b.last().unwrap())).collect();
        let interior = spans
            .iter()
            .map(|&(lo, hi)| spans.iter().any(|&(l, h)| l < lo && hi < h))
            .collect();
        NCPartition { base, interior }
    }

    /// The bottom element `0_n` (all singletons).
    pub fn bottom(n: usize) -> Result<Self, PartitionError> {
        Ok(Self::from_noncrossing(SetPartition::singletons(n)?))
    }

    /// The top element `1_n` (one block).
    pub fn top(n: usize) -> Result<Self, PartitionError> {
        Ok(Self::from_noncrossing(SetPartition::full(n)?))
    }

    pub fn base(&self) -> &SetPartition {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.base.blocks
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn is_interior(&self, block: usize) -> bool {
        self.interior[block]
    }

    pub fn exterior_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.interior[i]).collect()
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.interior[i]).collect()
    }

    /// Member of `NC_1(n)`: exactly one exterior block.
    pub fn is_nc1(&self) -> bool {
        self.exterior_indices().len() == 1
    }

    /// Member of `NC_2(n)`: exactly two exterior blocks.
    pub fn is_nc2(&self) -> bool {
        self.exterior_indices().len() == 2
    }

    /// Every block holds elements of a single parity.
    pub fn is_parity_preserving(&self) -> bool {
        self.blocks().iter().all(|b| b.iter().all(|e| e % 2 == b[0] % 2))
    }

    pub fn contains_singleton(&self, e: usize) -> bool {
        self.blocks().iter().any(|b| b.len() == 1 && b[0] == e)
    }

    pub fn refines(&self, other: &NCPartition) -> bool {
        self.base.refines(&other.base)
    }

    pub fn juxtapose(&self, other: &NCPartition) -> NCPartition {
        Self::from_noncrossing(self.base.juxtapose(&other.base))
    }

    pub fn as_linked(&self) -> NCLinkedPartition {
        NCLinkedPartition { n: self.n(), blocks: self.blocks().to_vec() }
    }
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base.fmt(f)
    }
}

impl Blocks for NCPartition {
    fn ground_size(&self) -> usize {
        self.n()
    }
    fn block_list(&self) -> &[Vec<usize>] {
        self.blocks()
    }
}

impl Serialize for NCPartition {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.base.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let base = SetPartition::deserialize(d)?;
        NCPartition::new(base).map_err(serde::de::Error::custom)
    }
}

/// A non-crossing linked partition: blocks may share one element under the
/// linking rule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCLinkedPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NCLinkedPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyGroundSet);
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(PartitionError::InvalidBlocks("empty block".into()));
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(PartitionError::InvalidBlocks("repeated element inside a block".into()));
            }
            if b[0] == 0 || *b.last().unwrap() > n {
                return Err(PartitionError::InvalidBlocks(format!("block {b:?} outside 1..={n}")));
            }
        }
        let blocks = canonicalize(blocks);
        let mut covered = vec![false; n + 1];
        for e in blocks.iter().flatten() {
            covered[*e] = true;
        }
        if let Some(e) = (1..=n).find(|&e| !covered[e]) {
            return Err(PartitionError::InvalidLinked(format!("element {e} not covered")));
        }
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                if let Err(why) = ncl::check_block_pair(a, b) {
                    return Err(PartitionError::InvalidLinked(why));
                }
            }
        }
        Ok(NCLinkedPartition { n, blocks })
    }

    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        NCLinkedPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of blocks containing `e` (1 or 2 for `e` in `1..=n`).
    pub fn cover_count(&self, e: usize) -> usize {
        self.blocks.iter().filter(|b| b.binary_search(&e).is_ok()).count()
    }

    /// Some other block's span strictly contains this block's span, or the
    /// block hangs off another block at its minimum.
    pub fn is_interior(&self, block: usize) -> bool {
        ncl::is_interior(&self.blocks, block)
    }

    pub fn classify(&self) -> NclClassification {
        ncl::classify(self)
    }

    /// True if no element is doubly covered.
    pub fn is_plain(&self) -> bool {
        self.blocks.iter().map(Vec::len).sum::<usize>() == self.n
    }

    /// Back to an ordinary non-crossing partition, when no element is shared.
    pub fn to_nc(&self) -> Option<NCPartition> {
        if !self.is_plain() {
            return None;
        }
        Some(NCPartition::from_noncrossing(SetPartition::from_canonical(self.n, self.blocks.clone())))
    }

    pub fn juxtapose(&self, other: &NCLinkedPartition) -> NCLinkedPartition {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| b.iter().map(|e| e + self.n).collect()));
        NCLinkedPartition { n: self.n + other.n, blocks: canonicalize(blocks) }
    }

    /// Intersects every block with `subset` and relabels into `1..=|subset|`.
    ///
    /// Empty intersections are dropped, and so is a singleton left over from
    /// a block when its element is still covered by another block. The
    /// result must again satisfy the linking rules.
    pub fn restrict(&self, subset: &[usize]) -> Result<NCLinkedPartition, PartitionError> {
        let index = subset_index(self.n, subset)?;
        let cut: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().filter_map(|&e| index[e]).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(cut.len());
        for (i, b) in cut.iter().enumerate() {
            let absorbed = b.len() == 1
                && cut.iter().enumerate().any(|(j, d)| {
                    j != i && d.contains(&b[0]) && (d.len() > 1 || j < i)
                });
            if !absorbed {
                kept.push(b.clone());
            }
        }
        NCLinkedPartition::new(subset.len(), kept)
    }
}

impl fmt::Display for NCLinkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(&self.blocks, f)
    }
}

impl Blocks for NCLinkedPartition {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn block_list(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

impl Serialize for NCLinkedPartition {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        PartitionRepr { n: self.n, blocks: self.blocks.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCLinkedPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PartitionRepr::deserialize(d)?;
        NCLinkedPartition::new(r.n, r.blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonical_form_and_validation() {
        let p = sp(4, &[&[4, 2], &[3, 1]]);
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2, 4]]);
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 3]]).is_err());
        assert_eq!(SetPartition::new(0, vec![]), Err(PartitionError::EmptyGroundSet));
    }

    #[test]
    fn crossing_detection() {
        assert!(sp(4, &[&[1, 2], &[3, 4]]).is_noncrossing());
        assert!(!sp(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(sp(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        assert!(!sp(5, &[&[1, 3, 5], &[2, 4]]).is_noncrossing());
        assert!(sp(6, &[&[1, 6], &[2, 3], &[4, 5]]).is_noncrossing());
    }

    #[test]
    fn exterior_and_interior_blocks() {
        let p = NCPartition::from_blocks(6, vec![vec![1, 6], vec![2, 3], vec![4], vec![5]]).unwrap();
        assert_eq!(p.exterior_indices(), vec![0]);
        assert!(p.is_nc1());
        let q = NCPartition::from_blocks(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert!(q.is_nc2());
        assert!(NCPartition::from_blocks(4, vec![vec![1, 3], vec![2, 4]]).is_err());
    }

    #[test]
    fn juxtaposition() {
        let a = NCPartition::bottom(1).unwrap();
        assert_eq!(a.juxtapose(&a), NCPartition::bottom(2).unwrap());
        let t = NCPartition::top(2).unwrap();
        assert_eq!(t.juxtapose(&t).blocks(), &[vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn json_shape() {
        let p = sp(3, &[&[1, 3], &[2]]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"n":3,"blocks":[[1,3],[2]]}"#);
        let back: SetPartition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NCPartition>(r#"{"n":4,"blocks":[[1,3],[2,4]]}"#).is_err());
    }
}
