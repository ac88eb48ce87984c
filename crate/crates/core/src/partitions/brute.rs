//! Slow reference implementations, written straight from the definitions.
//!
//! These exist to check the production algorithms and are only usable for
//! small ground sets.

use super::{NCLinkedPartition, NCPartition, SetPartition};

/// Every set partition of `{1..n}`, via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<SetPartition>) {
        if labels.len() == n {
            out.push(SetPartition::from_labels(labels).expect("nonempty"));
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            rec(labels, n, max.max(l), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        let mut labels = vec![0];
        rec(&mut labels, n, 0, &mut out);
    }
    out
}

/// Quadruple test `i < j < k < l` with `i, k` in one block and `j, l` in another.
pub fn has_crossing(p: &SetPartition) -> bool {
    let labels = p.labels();
    let n = p.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if labels[i] == labels[k] && labels[j] == labels[l] && labels[i] != labels[j] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// `NC(n)` by filtering all set partitions, sorted canonically.
pub fn nc_partitions(n: usize) -> Vec<NCPartition> {
    let mut out: Vec<NCPartition> = set_partitions(n)
        .into_iter()
        .filter(|p| !has_crossing(p))
        .map(NCPartition::from_noncrossing)
        .collect();
    out.sort();
    out
}

/// `p` on odd positions and `q` on even positions of `{1..2n}`.
fn interleaved(p: &NCPartition, q: &NCPartition) -> SetPartition {
    let mut blocks: Vec<Vec<usize>> =
        p.blocks().iter().map(|b| b.iter().map(|e| 2 * e - 1).collect()).collect();
    blocks.extend(q.blocks().iter().map(|b| b.iter().map(|e| 2 * e).collect()));
    SetPartition::new(2 * p.n(), blocks).expect("interleaving covers 1..2n")
}

/// The largest `q ∈ NC(n)` whose interleaving with `p` is non-crossing.
pub fn kreweras(p: &NCPartition) -> NCPartition {
    let admissible: Vec<NCPartition> = nc_partitions(p.n())
        .into_iter()
        .filter(|q| !has_crossing(&interleaved(p, q)))
        .collect();
    let top = admissible
        .iter()
        .find(|q| admissible.iter().all(|r| r.refines(q)))
        .expect("admissible set has a maximum");
    top.clone()
}

/// The smallest `r ∈ NC(n)` refined by both `p` and `q`.
pub fn join(p: &NCPartition, q: &NCPartition) -> NCPartition {
    let bounds: Vec<NCPartition> = nc_partitions(p.n())
        .into_iter()
        .filter(|r| p.refines(r) && q.refines(r))
        .collect();
    let least = bounds
        .iter()
        .find(|r| bounds.iter().all(|s| r.refines(s)))
        .expect("upper bounds have a minimum");
    least.clone()
}

fn literal_cross(a: &[usize], b: &[usize]) -> bool {
    for &i in a {
        for &k in b {
            for &p in a {
                for &q in b {
                    if i < k && k < p && p < q {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn literal_pair_ok(a: &[usize], b: &[usize]) -> bool {
    if literal_cross(a, b) || literal_cross(b, a) {
        return false;
    }
    let shared: Vec<usize> = a.iter().copied().filter(|e| b.contains(e)).collect();
    match shared.len() {
        0 => true,
        1 => {
            let j = shared[0];
            let a_min = a.iter().min() == Some(&j);
            let b_min = b.iter().min() == Some(&j);
            a.len() >= 2 && b.len() >= 2 && (a_min as u8 + b_min as u8) == 1
        }
        _ => false,
    }
}

/// `NCL(n)` by searching over block families.
///
/// No two valid blocks share a minimum, so a family is built by deciding,
/// for each element in turn, whether a block starts there and which larger
/// elements it contains. Every new block is tested against all earlier
/// ones; coverage is tested at the end.
pub fn ncl_partitions(n: usize) -> Vec<NCLinkedPartition> {
    fn rec(e: usize, n: usize, family: &mut Vec<Vec<usize>>, out: &mut Vec<NCLinkedPartition>) {
        if e > n {
            let covered = (1..=n).all(|x| family.iter().any(|b| b.contains(&x)));
            if covered {
                let mut blocks = family.clone();
                blocks.sort();
                out.push(NCLinkedPartition::from_canonical(n, blocks));
            }
            return;
        }
        // An element no earlier block reaches must open a block.
        let reached = family.iter().any(|b| b.contains(&e));
        if reached {
            rec(e + 1, n, family, out);
        }
        let rest = n - e;
        for mask in 0u32..(1 << rest) {
            let block: Vec<usize> = std::iter::once(e)
                .chain((1..=rest).filter(|k| mask >> (k - 1) & 1 == 1).map(|k| e + k))
                .collect();
            if family.iter().all(|b| literal_pair_ok(b, &block)) {
                family.push(block);
                rec(e + 1, n, family, out);
                family.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(1, n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn literal_crossing_small_cases() {
        let crossing = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert!(has_crossing(&crossing));
        assert_eq!(nc_partitions(3).len(), 5);
        assert_eq!(nc_partitions(4).len(), 14);
    }

    #[test]
    fn linked_search_small_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| ncl_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 22]);
    }
}
