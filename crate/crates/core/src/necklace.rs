//! The combinatorics of the simplicial mapping objects `S[n](p,q)`: vertices
//! are endpoint-containing subsets of `{p, ..., q}`, simplices are inclusion
//! chains, and composition is union.

use crate::error::{Error, Result};
use crate::ordcomb::{interval, IndexSubset};
use serde::Serialize;

/// An inclusion chain `C_1 <= C_2 <= ... <= C_k` of subsets of `{p,...,q}`
/// containing both endpoints; a simplex of `S[n](p,q)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NecklaceChain {
    n: usize,
    p: usize,
    q: usize,
    subsets: Vec<IndexSubset>,
}

impl NecklaceChain {
    pub fn new(n: usize, p: usize, q: usize, subsets: Vec<IndexSubset>) -> Result<Self> {
        if p > q || q > n {
            return Err(Error::Bounds(format!("chain endpoints {p},{q} in [{n}]")));
        }
        if subsets.is_empty() {
            return Err(Error::Bounds("chain needs at least one subset".into()));
        }
        for c in &subsets {
            if c.ambient_dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "chain subset lives in [{}], chain in [{n}]",
                    c.ambient_dim()
                )));
            }
            if !c.contains(p) || !c.contains(q) || c.min() < p || c.max() > q {
                return Err(Error::Bounds(format!(
                    "chain subset {:?} must contain {{{p},{q}}} and live in [{p},{q}]",
                    c.elements()
                )));
            }
        }
        for w in subsets.windows(2) {
            if !w[0].is_subset_of(&w[1]) {
                return Err(Error::Bounds(format!(
                    "chain not increasing: {:?} then {:?}",
                    w[0].elements(),
                    w[1].elements()
                )));
            }
        }
        Ok(NecklaceChain { n, p, q, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn subsets(&self) -> &[IndexSubset] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nondegenerate iff no two consecutive subsets are equal.
    pub fn is_nondegenerate(&self) -> bool {
        self.subsets.windows(2).all(|w| w[0] != w[1])
    }
}

/// All vertices of `S[n](p,q)`: the `2^(q-p-1)` subsets of `{p,...,q}`
/// containing both endpoints (one subset when `q = p`).
pub fn vertices(n: usize, p: usize, q: usize) -> Result<Vec<IndexSubset>> {
    if p > q || q > n {
        return Err(Error::Bounds(format!("vertices({n},{p},{q})")));
    }
    if p == q {
        return Ok(vec![IndexSubset::singleton(p, n)?]);
    }
    let interior: Vec<usize> = (p + 1..q).collect();
    let mut out = Vec::with_capacity(1 << interior.len());
    for mask in 0u64..(1 << interior.len()) {
        let mut elements = vec![p];
        for (i, &e) in interior.iter().enumerate() {
            if mask & (1 << i) != 0 {
                elements.push(e);
            }
        }
        elements.push(q);
        out.push(IndexSubset::new(n, elements)?);
    }
    out.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
    Ok(out)
}

/// All inclusion chains of `length` subsets in `S[n](p,q)`; `strict_only`
/// keeps the nondegenerate chains (all inclusions proper).
pub fn chains(
    n: usize,
    p: usize,
    q: usize,
    length: usize,
    strict_only: bool,
) -> Result<Vec<NecklaceChain>> {
    if length == 0 {
        return Err(Error::Bounds("chain length must be positive".into()));
    }
    let verts = vertices(n, p, q)?;
    let mut out = Vec::new();
    let mut stack: Vec<IndexSubset> = Vec::new();
    fn rec(
        n: usize,
        p: usize,
        q: usize,
        verts: &[IndexSubset],
        length: usize,
        strict_only: bool,
        stack: &mut Vec<IndexSubset>,
        out: &mut Vec<NecklaceChain>,
    ) {
        if stack.len() == length {
            out.push(NecklaceChain {
                n,
                p,
                q,
                subsets: stack.clone(),
            });
            return;
        }
        for v in verts {
            if let Some(last) = stack.last() {
                if !last.is_subset_of(v) || (strict_only && last == v) {
                    continue;
                }
            }
            stack.push(v.clone());
            rec(n, p, q, verts, length, strict_only, stack, out);
            stack.pop();
        }
    }
    rec(n, p, q, &verts, length, strict_only, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

/// The pairs `(A, B)` with `{0,n} ⊂ A ⊂ B ⊂ [n]` strictly, the chains the
/// coherence equation quantifies over. Materialized eagerly per dimension;
/// the sweep revisits them for every simplex.
pub fn dagger_chains(n: usize) -> Vec<(IndexSubset, IndexSubset)> {
    if n < 2 {
        return vec![];
    }
    let ends = IndexSubset::pair(0, n, n).unwrap();
    let full = IndexSubset::full(n);
    let verts = vertices(n, 0, n).unwrap();
    let mut out = Vec::new();
    for a in &verts {
        if *a == ends || *a == full {
            continue;
        }
        for b in &verts {
            if *b == ends || *b == full || a == b {
                continue;
            }
            if a.is_subset_of(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out.sort();
    out
}

/// For each `a` in `A^-`, the subset `B ∩ [a, sa]` re-expressed inside the
/// standard ordinal of the interval `[a, sa]`.
pub fn restrict_chain(b: &IndexSubset, a: &IndexSubset) -> Result<Vec<(usize, IndexSubset)>> {
    if !a.is_subset_of(b) {
        return Err(Error::Bounds(format!(
            "{:?} is not a subset of {:?}",
            a.elements(),
            b.elements()
        )));
    }
    let n = a.ambient_dim();
    let mut out = Vec::new();
    for (lo, hi) in a.interval_pairs() {
        let meet = b.intersect_interval(lo, hi)?;
        let within = interval(lo, hi, n)?;
        out.push((lo, meet.reindex_in(&within)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordcomb::all_subsets;

    #[test]
    fn s3_census() {
        // four 0-simplices, five 1-simplices, two 2-simplices
        assert_eq!(vertices(3, 0, 3).unwrap().len(), 4);
        assert_eq!(chains(3, 0, 3, 2, true).unwrap().len(), 5);
        assert_eq!(chains(3, 0, 3, 3, true).unwrap().len(), 2);
        // with degenerate chains included, pairs C0 <= C1 number 4 + 5
        assert_eq!(chains(3, 0, 3, 2, false).unwrap().len(), 9);
    }

    #[test]
    fn vertices_examples() {
        assert_eq!(
            vertices(3, 0, 1).unwrap(),
            vec![IndexSubset::pair(0, 1, 3).unwrap()]
        );
        let v = vertices(9, 1, 5).unwrap();
        assert!(v.contains(&IndexSubset::new(9, vec![1, 4, 5]).unwrap()));
        assert_eq!(v.len(), 8);
        assert_eq!(vertices(4, 2, 2).unwrap().len(), 1);
    }

    #[test]
    fn strict_two_subset_chain_counts() {
        for n in 2..=6 {
            let count = chains(n, 0, n, 2, true)
                .unwrap()
                .iter()
                .filter(|c| {
                    c.subsets()[0] == IndexSubset::pair(0, n, n).unwrap()
                        && c.subsets()[1] == IndexSubset::full(n)
                })
                .count();
            assert_eq!(count, 1);
            // all proper intermediate subsets: {0,n} < A < [n]
            let middles = chains(n, 0, n, 3, true)
                .unwrap()
                .iter()
                .filter(|c| {
                    c.subsets()[0] == IndexSubset::pair(0, n, n).unwrap()
                        && c.subsets()[2] == IndexSubset::full(n)
                })
                .count();
            assert_eq!(middles, (1usize << (n - 1)) - 2);
        }
    }

    #[test]
    fn dagger_chain_count_dim_four() {
        // {0,4} < A < B < [4]: nested proper nonempty subsets of the 3 interior points
        assert_eq!(dagger_chains(4).len(), 6);
        let all = chains(4, 0, 4, 4, true).unwrap();
        let fixed_ends: Vec<_> = all
            .iter()
            .filter(|c| {
                c.subsets()[0] == IndexSubset::pair(0, 4, 4).unwrap()
                    && c.subsets()[3] == IndexSubset::full(4)
            })
            .collect();
        assert_eq!(fixed_ends.len(), 6);
    }

    #[test]
    fn composition_by_union_closure() {
        let n = 5;
        for p in 0..=n {
            for r in p..=n {
                for q in r..=n {
                    let left = vertices(n, p, r).unwrap();
                    let right = vertices(n, r, q).unwrap();
                    let target = vertices(n, p, q).unwrap();
                    for x in &left {
                        for y in &right {
                            let mut elements: Vec<usize> =
                                x.elements().iter().chain(y.elements()).copied().collect();
                            elements.sort_unstable();
                            elements.dedup();
                            let union = IndexSubset::new(n, elements).unwrap();
                            assert!(target.contains(&union), "union {union:?} escapes");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_chain_examples() {
        let b = IndexSubset::new(4, vec![0, 2, 4]).unwrap();
        let a = IndexSubset::new(4, vec![0, 4]).unwrap();
        let restricted = restrict_chain(&b, &a).unwrap();
        assert_eq!(restricted.len(), 1);
        assert_eq!(
            restricted[0],
            (0, IndexSubset::new(4, vec![0, 2, 4]).unwrap())
        );

        let b = IndexSubset::new(4, vec![0, 1, 2, 4]).unwrap();
        let a = IndexSubset::new(4, vec![0, 2, 4]).unwrap();
        let restricted = restrict_chain(&b, &a).unwrap();
        assert_eq!(
            restricted[0],
            (0, IndexSubset::new(2, vec![0, 1, 2]).unwrap())
        );
        assert_eq!(restricted[1], (2, IndexSubset::new(2, vec![0, 2]).unwrap()));

        let same = restrict_chain(&a, &a).unwrap();
        for (lo, piece) in same {
            let hi = a.successor(lo).unwrap();
            assert_eq!(piece, IndexSubset::new(hi - lo, vec![0, hi - lo]).unwrap());
        }

        assert!(restrict_chain(&a, &b).is_err());
    }

    #[test]
    fn interval_restrictions_reassemble() {
        let n = 5;
        for b in all_subsets(n) {
            if !b.contains(0) || !b.contains(n) {
                continue;
            }
            for a in all_subsets(n) {
                if !a.contains(0) || !a.contains(n) || !a.is_subset_of(&b) {
                    continue;
                }
                let mut rebuilt: Vec<usize> = Vec::new();
                for (lo, piece) in restrict_chain(&b, &a).unwrap() {
                    for &e in piece.elements() {
                        rebuilt.push(lo + e);
                    }
                }
                rebuilt.sort_unstable();
                rebuilt.dedup();
                assert_eq!(rebuilt, b.elements());
            }
        }
    }

    #[test]
    fn chain_validation() {
        let good = NecklaceChain::new(
            3,
            0,
            3,
            vec![IndexSubset::pair(0, 3, 3).unwrap(), IndexSubset::full(3)],
        )
        .unwrap();
        assert!(good.is_nondegenerate());
        let degenerate =
            NecklaceChain::new(3, 0, 3, vec![IndexSubset::full(3), IndexSubset::full(3)]).unwrap();
        assert!(!degenerate.is_nondegenerate());
        assert!(NecklaceChain::new(
            3,
            0,
            3,
            vec![IndexSubset::full(3), IndexSubset::pair(0, 3, 3).unwrap()]
        )
        .is_err());
        assert!(NecklaceChain::new(3, 1, 3, vec![IndexSubset::pair(0, 3, 3).unwrap()]).is_err());
    }
}
