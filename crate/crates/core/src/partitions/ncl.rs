use std::collections::BTreeSet;

use serde::Serialize;

use super::{canonicalize, NCLinkedPartition, PartitionError, MAX_NCL};

/// Exterior/interior split and cover counts of a linked partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NclClassification {
    pub exterior: Vec<Vec<usize>>,
    pub interior: Vec<Vec<usize>>,
    pub singly: BTreeSet<usize>,
    pub doubly: BTreeSet<usize>,
}

/// Checks the pairwise linking rules for two sorted blocks.
pub(super) fn check_block_pair(a: &[usize], b: &[usize]) -> Result<(), String> {
    let crosses = |x: &[usize], y: &[usize]| {
        x.iter().enumerate().any(|(xi, &i)| {
            x[xi + 1..].iter().any(|&p| {
                y.iter().any(|&k| i < k && k < p) && y.iter().any(|&q| p < q)
            })
        })
    };
    if crosses(a, b) || crosses(b, a) {
        return Err(format!("{a:?} and {b:?} cross"));
    }
    let shared: Vec<usize> = a.iter().copied().filter(|e| b.binary_search(e).is_ok()).collect();
    match shared.as_slice() {
        [] => Ok(()),
        [j] => {
            if a.len() < 2 || b.len() < 2 {
                return Err(format!("{a:?} and {b:?} share {j} but one is a singleton"));
            }
            if (a[0] == *j) == (b[0] == *j) {
                return Err(format!("shared element {j} must be the minimum of exactly one of {a:?}, {b:?}"));
            }
            Ok(())
        }
        _ => Err(format!("{a:?} and {b:?} share more than one element")),
    }
}

pub(super) fn is_interior(blocks: &[Vec<usize>], idx: usize) -> bool {
    let b = &blocks[idx];
    let (lo, hi) = (b[0], *b.last().unwrap());
    blocks.iter().enumerate().any(|(j, d)| {
        j != idx
            && ((d[0] < lo && hi < *d.last().unwrap()) || (d[0] < lo && d.binary_search(&lo).is_ok()))
    })
}

pub(super) fn classify(g: &NCLinkedPartition) -> NclClassification {
    let mut exterior = Vec::new();
    let mut interior = Vec::new();
    for (i, b) in g.blocks().iter().enumerate() {
        if is_interior(g.blocks(), i) {
            interior.push(b.clone());
        } else {
            exterior.push(b.clone());
        }
    }
    let mut singly = BTreeSet::new();
    let mut doubly = BTreeSet::new();
    for e in 1..=g.n() {
        if g.cover_count(e) == 2 {
            doubly.insert(e);
        } else {
            singly.insert(e);
        }
    }
    NclClassification { exterior, interior, singly, doubly }
}

type Shape = Vec<Vec<usize>>;

/// All linked partitions of `{0..m-1}` as raw 0-based block lists, indexed by `m`.
///
/// A partition is determined by its first block `F = {0 = i_1 < ... < i_k}`.
/// The elements strictly between `i_1` and `i_2` carry an independent linked
/// partition. For `l ≥ 2`, the stretch from `i_l` up to `i_{l+1}` (exclusive)
/// carries another one; its block through `i_l` is either the singleton
/// `{i_l}`, which is absorbed into `F`, or a block linked to `F` at `i_l`.
fn shapes_upto(max: usize) -> Vec<Vec<Shape>> {
    let mut table: Vec<Vec<Shape>> = vec![vec![Vec::new()]];
    for m in 1..=max {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (m - 1)) {
            let first: Vec<usize> =
                std::iter::once(0).chain((1..m).filter(|&e| mask >> (e - 1) & 1 == 1)).collect();
            // Each piece: (offset, shapes to place there, whether its block at
            // the offset hangs off the first block).
            let mut pieces: Vec<(usize, &[Shape], bool)> = Vec::new();
            let gap_end = first.get(1).copied().unwrap_or(m);
            pieces.push((1, &table[gap_end - 1], false));
            for l in 1..first.len() {
                let end = first.get(l + 1).copied().unwrap_or(m);
                pieces.push((first[l], &table[end - first[l]], true));
            }
            let mut partial: Vec<Shape> = vec![vec![first.clone()]];
            for (offset, choices, hanging) in pieces {
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for base in &partial {
                    for choice in choices {
                        let mut blocks = base.clone();
                        for block in choice {
                            if hanging && block.len() == 1 && block[0] == 0 {
                                continue;
                            }
                            blocks.push(block.iter().map(|e| e + offset).collect());
                        }
                        next.push(blocks);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        table.push(out);
    }
    table
}

/// All of `NCL(n)`, in canonical order.
pub fn enumerate_ncl(n: usize) -> Result<Vec<NCLinkedPartition>, PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyGroundSet);
    }
    if n > MAX_NCL {
        return Err(PartitionError::Guard { what: "NCL", n, max: MAX_NCL });
    }
    let table = shapes_upto(n);
    let mut out: Vec<NCLinkedPartition> = table[n]
        .iter()
        .map(|shape| {
            let blocks = shape.iter().map(|b| b.iter().map(|e| e + 1).collect()).collect();
            NCLinkedPartition::from_canonical(n, canonicalize(blocks))
        })
        .collect();
    out.sort();
    Ok(out)
}
