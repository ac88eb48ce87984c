use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{canonicalize, NCPartition, PartitionError, SetPartition, MAX_NC, MAX_NC_0};

/// Which family of non-crossing partitions to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NcClass {
    Nc,
    NcS,
    Nc0,
}

impl NcClass {
    pub fn enumerate(self, n: usize) -> Result<Vec<NCPartition>, PartitionError> {
        match self {
            NcClass::Nc => enumerate_nc(n),
            NcClass::NcS => enumerate_nc_s(n),
            NcClass::Nc0 => enumerate_nc_0(n),
        }
    }
}

/// Depth-first generation of non-crossing partitions.
///
/// Each element either opens a new block or joins a block that is still
/// visible, i.e. on the stack of blocks not yet covered by a later block.
/// Joining pops everything above the target. `allow(block_min, e)` filters
/// which joins are permitted.
fn generate(n: usize, allow: &dyn Fn(usize, usize) -> bool) -> Vec<NCPartition> {
    fn rec(
        e: usize,
        n: usize,
        blocks: &mut Vec<Vec<usize>>,
        stack: &mut Vec<usize>,
        allow: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<NCPartition>,
    ) {
        if e > n {
            let base = SetPartition::from_canonical(n, blocks.clone());
            out.push(NCPartition::from_noncrossing(base));
            return;
        }
        blocks.push(vec![e]);
        stack.push(blocks.len() - 1);
        rec(e + 1, n, blocks, stack, allow, out);
        stack.pop();
        blocks.pop();

        for depth in (0..stack.len()).rev() {
            let b = stack[depth];
            if !allow(blocks[b][0], e) {
                continue;
            }
            let popped: Vec<usize> = stack.drain(depth + 1..).collect();
            blocks[b].push(e);
            rec(e + 1, n, blocks, stack, allow, out);
            blocks[b].pop();
            stack.extend(popped);
        }
    }

    let mut out = Vec::new();
    rec(1, n, &mut Vec::new(), &mut Vec::new(), allow, &mut out);
    out.sort();
    out
}

fn guard(what: &'static str, n: usize, max: usize) -> Result<(), PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyGroundSet);
    }
    if n > max {
        return Err(PartitionError::Guard { what, n, max });
    }
    Ok(())
}

fn even(two_n: usize) -> Result<usize, PartitionError> {
    if !two_n.is_multiple_of(2) {
        return Err(PartitionError::OddSize(two_n));
    }
    Ok(two_n / 2)
}

/// All of `NC(n)`, in canonical order.
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>, PartitionError> {
    guard("NC", n, MAX_NC)?;
    Ok(generate(n, &|_, _| true))
}

/// `NC_S(two_n)`: non-crossing partitions whose blocks have constant parity.
pub fn enumerate_nc_s(two_n: usize) -> Result<Vec<NCPartition>, PartitionError> {
    even(two_n)?;
    guard("NC_S", two_n, MAX_NC)?;
    Ok(generate(two_n, &|min, e| min % 2 == e % 2))
}

/// `NC_0(two_n)`: the elements of `NC_S(two_n)` whose even part is the
/// Kreweras complement of the odd part.
pub fn enumerate_nc_0(two_n: usize) -> Result<Vec<NCPartition>, PartitionError> {
    let n = even(two_n)?;
    guard("NC_0", two_n, MAX_NC_0)?;
    let top = NCPartition::top(two_n)?;
    let zero_hat = NCPartition::bottom(n)?.double();
    let mut out: Vec<NCPartition> = enumerate_nc(n)?
        .iter()
        .map(|odd| {
            let sigma = interleave(odd, &odd.kreweras());
            debug_assert_eq!(sigma.join(&zero_hat).ok(), Some(top.clone()));
            sigma
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Splits `NC_S(two_n)` into fibres keyed by the `π ∈ NC(n)` with
/// `σ ∨ 0̂_n = π̂`.
pub fn group_nc_s_by_join(
    two_n: usize,
) -> Result<BTreeMap<NCPartition, Vec<NCPartition>>, PartitionError> {
    let n = even(two_n)?;
    guard("NC_S fibres", two_n, MAX_NC_0)?;
    let zero_hat = NCPartition::bottom(n)?.double();
    let mut fibres: BTreeMap<NCPartition, Vec<NCPartition>> = BTreeMap::new();
    for sigma in enumerate_nc_s(two_n)? {
        let joined = sigma.join(&zero_hat)?;
        let pi = joined.halve().ok_or_else(|| {
            PartitionError::InvalidBlocks(format!("{joined} is not a doubled partition"))
        })?;
        fibres.entry(pi).or_default().push(sigma);
    }
    Ok(fibres)
}

/// Places `odd` on `1, 3, 5, ...` and `even` on `2, 4, 6, ...`.
fn interleave(odd: &NCPartition, even: &NCPartition) -> NCPartition {
    let mut blocks: Vec<Vec<usize>> =
        odd.blocks().iter().map(|b| b.iter().map(|e| 2 * e - 1).collect()).collect();
    blocks.extend(even.blocks().iter().map(|b| b.iter().map(|e| 2 * e).collect()));
    let base = SetPartition::from_canonical(2 * odd.n(), canonicalize(blocks));
    NCPartition::from_noncrossing(base)
}

/// True if two sorted, disjoint blocks cross.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    // Walk the merged order and count how often the owner changes; an
    // alternation a..b..a..b needs at least three changes.
    let (mut i, mut j) = (0, 0);
    let mut last = None;
    let mut changes = 0;
    while i < a.len() || j < b.len() {
        let from_a = j >= b.len() || (i < a.len() && a[i] < b[j]);
        if from_a {
            i += 1;
        } else {
            j += 1;
        }
        if last.is_some_and(|l| l != from_a) {
            changes += 1;
        }
        last = Some(from_a);
    }
    changes >= 3
}

impl NCPartition {
    /// Kreweras complement, read off the permutation `π⁻¹ ∘ (1 2 … n)`
    /// where `π` sends each element to its successor within its block.
    pub fn kreweras(&self) -> NCPartition {
        let n = self.n();
        let mut prev = vec![0; n + 1];
        for b in self.blocks() {
            for (k, &e) in b.iter().enumerate() {
                let before = if k == 0 { *b.last().unwrap() } else { b[k - 1] };
                prev[e] = before;
            }
        }
        let mut seen = vec![false; n + 1];
        let mut blocks = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e);
                e = prev[e % n + 1];
            }
            blocks.push(cycle);
        }
        NCPartition::from_noncrossing(SetPartition::from_canonical(n, canonicalize(blocks)))
    }

    /// Join in the lattice `NC(n)`: the set-partition join, with crossing
    /// blocks merged until none remain.
    pub fn join(&self, other: &NCPartition) -> Result<NCPartition, PartitionError> {
        let n = self.n();
        if other.n() != n {
            return Err(PartitionError::SizeMismatch { left: n, right: other.n() });
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for b in self.blocks().iter().chain(other.blocks()) {
            for &e in &b[1..] {
                let (ra, rb) = (find(&mut parent, b[0]), find(&mut parent, e));
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 1..=n {
            groups.entry(find(&mut parent, e)).or_default().push(e);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        'merge: loop {
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    if blocks_cross(&blocks[i], &blocks[j]) {
                        let taken = blocks.swap_remove(j);
                        blocks[i].extend(taken);
                        blocks[i].sort_unstable();
                        continue 'merge;
                    }
                }
            }
            break;
        }
        Ok(NCPartition::from_noncrossing(SetPartition::from_canonical(n, canonicalize(blocks))))
    }

    /// The doubling `π ↦ π̂` onto `{1..2n}`: `k` becomes `2k-1, 2k`.
    pub fn double(&self) -> NCPartition {
        let blocks = self
            .blocks()
            .iter()
            .map(|b| b.iter().flat_map(|&e| [2 * e - 1, 2 * e]).collect())
            .collect();
        NCPartition::from_noncrossing(SetPartition::from_canonical(2 * self.n(), blocks))
    }

    /// Inverse of [`NCPartition::double`], if `self` is a doubled partition.
    pub fn halve(&self) -> Option<NCPartition> {
        if !self.n().is_multiple_of(2) {
            return None;
        }
        let mut blocks = Vec::with_capacity(self.len());
        for b in self.blocks() {
            if b.len() % 2 != 0 {
                return None;
            }
            let mut half = Vec::with_capacity(b.len() / 2);
            for pair in b.chunks(2) {
                if pair[0] % 2 != 1 || pair[1] != pair[0] + 1 {
                    return None;
                }
                half.push(pair[0].div_ceil(2));
            }
            blocks.push(half);
        }
        Some(NCPartition::from_noncrossing(SetPartition::from_canonical(self.n() / 2, blocks)))
    }

    /// The restrictions to odd and to even positions, relabelled into `1..=n`.
    pub fn parity_parts(&self) -> Result<(NCPartition, NCPartition), PartitionError> {
        let n = even(self.n())?;
        let odd: Vec<usize> = (1..=n).map(|k| 2 * k - 1).collect();
        let evens: Vec<usize> = (1..=n).map(|k| 2 * k).collect();
        let minus = NCPartition::new(self.base().restrict(&odd)?)?;
        let plus = NCPartition::new(self.base().restrict(&evens)?)?;
        Ok((minus, plus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::brute;

    fn nc(n: usize, blocks: &[&[usize]]) -> NCPartition {
        NCPartition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn catalan(n: usize) -> usize {
        let mut c = vec![1usize; n + 1];
        for k in 1..=n {
            c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
        }
        c[n]
    }

    #[test]
    fn counts_are_catalan() {
        for n in 1..=10 {
            assert_eq!(enumerate_nc(n).unwrap().len(), catalan(n), "n = {n}");
        }
        assert_eq!(enumerate_nc(1).unwrap(), vec![NCPartition::bottom(1).unwrap()]);
        assert!(matches!(enumerate_nc(15), Err(PartitionError::Guard { .. })));
        assert_eq!(enumerate_nc(0), Err(PartitionError::EmptyGroundSet));
    }

    #[test]
    fn enumeration_matches_filtered_set_partitions() {
        for n in 1..=7 {
            assert_eq!(enumerate_nc(n).unwrap(), brute::nc_partitions(n), "n = {n}");
        }
    }

    #[test]
    fn kreweras_examples() {
        for n in 1..=5 {
            let top = NCPartition::top(n).unwrap();
            let bottom = NCPartition::bottom(n).unwrap();
            assert_eq!(top.kreweras(), bottom);
            assert_eq!(bottom.kreweras(), top);
        }
        assert_eq!(nc(3, &[&[1, 3], &[2]]).kreweras(), nc(3, &[&[1, 2], &[3]]));
    }

    #[test]
    fn kreweras_matches_defining_maximum() {
        for n in 1..=7 {
            for p in enumerate_nc(n).unwrap() {
                let k = p.kreweras();
                assert_eq!(p.len() + k.len(), n + 1);
                assert_eq!(k, brute::kreweras(&p), "{p}");
            }
        }
    }

    #[test]
    fn join_examples() {
        let p = nc(3, &[&[1, 2], &[3]]);
        let q = nc(3, &[&[1], &[2, 3]]);
        assert_eq!(p.join(&q).unwrap(), NCPartition::top(3).unwrap());
        let p = nc(4, &[&[1, 3], &[2], &[4]]);
        let q = nc(4, &[&[1], &[3], &[2, 4]]);
        assert_eq!(p.join(&q).unwrap(), NCPartition::top(4).unwrap());
        assert_eq!(p.join(&NCPartition::bottom(4).unwrap()).unwrap(), p);
        assert!(p.join(&NCPartition::bottom(3).unwrap()).is_err());
    }

    #[test]
    fn join_matches_minimal_upper_bound() {
        for n in 1..=5 {
            let all = enumerate_nc(n).unwrap();
            for p in &all {
                for q in &all {
                    assert_eq!(p.join(q).unwrap(), brute::join(p, q), "{p} v {q}");
                }
            }
        }
    }

    #[test]
    fn doubling() {
        assert_eq!(NCPartition::bottom(2).unwrap().double(), nc(4, &[&[1, 2], &[3, 4]]));
        assert_eq!(NCPartition::top(2).unwrap().double(), NCPartition::top(4).unwrap());
        for n in 1..=6 {
            for p in enumerate_nc(n).unwrap() {
                let d = p.double();
                assert!(d.base().is_noncrossing());
                assert_eq!(d.halve(), Some(p));
            }
        }
    }

    #[test]
    fn juxtaposition_exterior_blocks() {
        for m in 1..=4 {
            for n in 1..=(5 - m).max(1) {
                for p in enumerate_nc(m).unwrap() {
                    for q in enumerate_nc(n).unwrap() {
                        let j = p.juxtapose(&q);
                        let mut want: Vec<Vec<usize>> =
                            p.exterior_indices().iter().map(|&i| p.blocks()[i].clone()).collect();
                        want.extend(
                            q.exterior_indices()
                                .iter()
                                .map(|&i| q.blocks()[i].iter().map(|e| e + m).collect()),
                        );
                        let got: Vec<Vec<usize>> =
                            j.exterior_indices().iter().map(|&i| j.blocks()[i].clone()).collect();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn nc_s_and_nc_0_small_cases() {
        assert_eq!(enumerate_nc_s(2).unwrap(), vec![NCPartition::bottom(2).unwrap()]);
        let s4 = enumerate_nc_s(4).unwrap();
        assert_eq!(s4.len(), 3);
        assert!(s4.contains(&nc(4, &[&[1, 3], &[2], &[4]])));
        assert!(s4.contains(&nc(4, &[&[1], &[3], &[2, 4]])));
        assert_eq!(enumerate_nc_0(2).unwrap(), vec![NCPartition::bottom(2).unwrap()]);
        assert_eq!(
            enumerate_nc_0(4).unwrap(),
            vec![nc(4, &[&[1], &[2, 4], &[3]]), nc(4, &[&[1, 3], &[2], &[4]])]
        );
        assert_eq!(enumerate_nc_s(3), Err(PartitionError::OddSize(3)));
        assert_eq!(enumerate_nc_0(5), Err(PartitionError::OddSize(5)));
    }

    #[test]
    fn nc_s_matches_parity_filter_and_nc_0_matches_join_criterion() {
        for n in 1..=5 {
            let s = enumerate_nc_s(2 * n).unwrap();
            let filtered: Vec<_> =
                brute::nc_partitions(2 * n).into_iter().filter(|p| p.is_parity_preserving()).collect();
            assert_eq!(s, filtered);
            let zero_hat = NCPartition::bottom(n).unwrap().double();
            let top = NCPartition::top(2 * n).unwrap();
            let by_join: Vec<_> =
                s.iter().filter(|p| p.join(&zero_hat).unwrap() == top).cloned().collect();
            let nc0 = enumerate_nc_0(2 * n).unwrap();
            assert_eq!(nc0, by_join);
            assert_eq!(nc0.len(), catalan(n));
            for sigma in &nc0 {
                let (minus, plus) = sigma.parity_parts().unwrap();
                assert_eq!(plus, minus.kreweras());
                let ext = sigma.exterior_indices();
                assert_eq!(ext.len(), 2, "{sigma}");
                let holds = |e: usize| ext.iter().any(|&i| sigma.blocks()[i].contains(&e));
                assert!(holds(1) && holds(2 * n));
            }
        }
    }

    #[test]
    fn fibres_partition_nc_s() {
        let f = group_nc_s_by_join(4).unwrap();
        assert_eq!(f[&NCPartition::bottom(2).unwrap()], vec![NCPartition::bottom(4).unwrap()]);
        assert_eq!(f[&NCPartition::top(2).unwrap()], enumerate_nc_0(4).unwrap());
        for n in 1..=5 {
            let fibres = group_nc_s_by_join(2 * n).unwrap();
            assert_eq!(fibres[&NCPartition::top(n).unwrap()], enumerate_nc_0(2 * n).unwrap());
            let mut all: Vec<_> = fibres.into_values().flatten().collect();
            all.sort();
            assert_eq!(all, enumerate_nc_s(2 * n).unwrap());
        }
    }

    #[test]
    fn crossing_test_for_block_pairs() {
        assert!(blocks_cross(&[1, 3], &[2, 4]));
        assert!(!blocks_cross(&[1, 4], &[2, 3]));
        assert!(!blocks_cross(&[1, 2], &[3, 4]));
        assert!(blocks_cross(&[2, 5], &[1, 3]));
    }
}
