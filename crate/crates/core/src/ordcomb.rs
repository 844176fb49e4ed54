//! Finite-ordinal combinatorics: order preserving maps between ordinals
//! `[n] = {0 < 1 < ... < n}`, the coface/codegeneracy generators, and subsets
//! of `[n]` together with their coface interpretation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An order preserving map `[m] -> [n]`, stored as its value list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonotoneMap {
    dom_dim: usize,
    cod_dim: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom_dim: usize, cod_dim: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom_dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "map out of [{dom_dim}] needs {} values, got {}",
                dom_dim + 1,
                values.len()
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Bounds(format!("values {values:?} not monotone")));
        }
        if values.iter().any(|&v| v > cod_dim) {
            return Err(Error::Bounds(format!(
                "values {values:?} exceed codomain [{cod_dim}]"
            )));
        }
        Ok(MonotoneMap {
            dom_dim,
            cod_dim,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            dom_dim: n,
            cod_dim: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `delta_i : [n-1] -> [n]`, skipping `i`.
    pub fn coface(i: usize, n: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Bounds(format!("coface delta_{i} into [{n}]")));
        }
        let values = (0..n).map(|p| if p < i { p } else { p + 1 }).collect();
        Ok(MonotoneMap {
            dom_dim: n - 1,
            cod_dim: n,
            values,
        })
    }

    /// The codegeneracy `sigma_i : [n+1] -> [n]`, repeating `i`.
    pub fn codegeneracy(i: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Bounds(format!("codegeneracy sigma_{i} onto [{n}]")));
        }
        let values = (0..=n + 1)
            .map(|p| if p <= i { p } else { p - 1 })
            .collect();
        Ok(MonotoneMap {
            dom_dim: n + 1,
            cod_dim: n,
            values,
        })
    }

    pub fn dom_dim(&self) -> usize {
        self.dom_dim
    }

    pub fn cod_dim(&self) -> usize {
        self.cod_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, p: usize) -> usize {
        self.values[p]
    }

    pub fn is_identity(&self) -> bool {
        self.dom_dim == self.cod_dim && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod_dim + 1];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// Pointwise composite `g . f` (apply `f` first).
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    if f.cod_dim != g.dom_dim {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose [{}]->[{}] with [{}]->[{}]",
            f.dom_dim, f.cod_dim, g.dom_dim, g.cod_dim
        )));
    }
    Ok(MonotoneMap {
        dom_dim: f.dom_dim,
        cod_dim: g.cod_dim,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// The unique surjection-followed-by-injection factorization of `f`.
pub fn epi_mono_factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let mut image: Vec<usize> = f.values.clone();
    image.dedup();
    let k = image.len() - 1;
    let epi_values = f
        .values
        .iter()
        .map(|v| image.iter().position(|w| w == v).unwrap())
        .collect();
    let epi = MonotoneMap {
        dom_dim: f.dom_dim,
        cod_dim: k,
        values: epi_values,
    };
    let mono = MonotoneMap {
        dom_dim: k,
        cod_dim: f.cod_dim,
        values: image,
    };
    (epi, mono)
}

/// A nonempty subset `C` of the ordinal `[n]`, carrying its ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexSubset {
    ambient_dim: usize,
    elements: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient_dim: usize, elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Bounds("subset of [n] must be nonempty".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Bounds(format!(
                "elements {elements:?} not strictly increasing"
            )));
        }
        if *elements.last().unwrap() > ambient_dim {
            return Err(Error::Bounds(format!(
                "elements {elements:?} exceed ambient [{ambient_dim}]"
            )));
        }
        Ok(IndexSubset {
            ambient_dim,
            elements,
        })
    }

    /// The full subset `{0, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSubset {
            ambient_dim: n,
            elements: (0..=n).collect(),
        }
    }

    pub fn pair(p: usize, q: usize, n: usize) -> Result<Self> {
        if p >= q {
            return Err(Error::Bounds(format!("pair {{{p},{q}}} needs p < q")));
        }
        IndexSubset::new(n, vec![p, q])
    }

    pub fn singleton(p: usize, n: usize) -> Result<Self> {
        IndexSubset::new(n, vec![p])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> usize {
        self.elements[0]
    }

    pub fn max(&self) -> usize {
        *self.elements.last().unwrap()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.elements.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.ambient_dim == other.ambient_dim && self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.ambient_dim + 1
    }

    /// `C^-`: the elements of `C` minus its maximum.
    pub fn lower(&self) -> &[usize] {
        &self.elements[..self.elements.len() - 1]
    }

    /// The successor function `s : C^- -> C`, next greatest element after `c`.
    pub fn successor(&self, c: usize) -> Result<usize> {
        match self.elements.binary_search(&c) {
            Ok(i) if i + 1 < self.elements.len() => Ok(self.elements[i + 1]),
            _ => Err(Error::Bounds(format!("{c} has no successor in {self:?}"))),
        }
    }

    /// Consecutive pairs `(c, sc)` for `c` in `C^-`.
    pub fn interval_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.elements.windows(2).map(|w| (w[0], w[1]))
    }

    /// The coface `delta_C : [m] -> [n]` sending `i` to `c_i`.
    pub fn delta(&self) -> MonotoneMap {
        MonotoneMap {
            dom_dim: self.elements.len() - 1,
            cod_dim: self.ambient_dim,
            values: self.elements.clone(),
        }
    }

    /// Re-express `self` inside the standard ordinal of `within`, i.e.
    /// `delta_within^{-1}(self)`. Requires `self` to be a subset of `within`.
    pub fn reindex_in(&self, within: &IndexSubset) -> Result<IndexSubset> {
        if !self.is_subset_of(within) {
            return Err(Error::Bounds(format!(
                "{:?} is not a subset of {:?}",
                self.elements, within.elements
            )));
        }
        let positions = self
            .elements
            .iter()
            .map(|e| within.elements.binary_search(e).unwrap())
            .collect();
        IndexSubset::new(within.elements.len() - 1, positions)
    }

    /// Intersection with the integer interval `[lo, hi]`, kept in the same ambient.
    pub fn intersect_interval(&self, lo: usize, hi: usize) -> Result<IndexSubset> {
        let elements: Vec<usize> = self
            .elements
            .iter()
            .copied()
            .filter(|&e| lo <= e && e <= hi)
            .collect();
        IndexSubset::new(self.ambient_dim, elements)
    }
}

/// The direct image of `C` under `f`, duplicates collapsed.
pub fn subset_image(f: &MonotoneMap, c: &IndexSubset) -> Result<IndexSubset> {
    if c.ambient_dim != f.dom_dim {
        return Err(Error::DimensionMismatch(format!(
            "subset of [{}] under a map out of [{}]",
            c.ambient_dim, f.dom_dim
        )));
    }
    let mut elements: Vec<usize> = c.elements.iter().map(|&e| f.apply(e)).collect();
    elements.dedup();
    IndexSubset::new(f.cod_dim, elements)
}

/// The full integer interval `{c, c+1, ..., sc}` inside `[n]`.
pub fn interval(c: usize, sc: usize, n: usize) -> Result<IndexSubset> {
    if c >= sc || sc > n {
        return Err(Error::Bounds(format!("interval [{c},{sc}] in [{n}]")));
    }
    IndexSubset::new(n, (c..=sc).collect())
}

/// All monotone maps `[m] -> [n]`, in lexicographic order of value lists.
pub fn all_monotone_maps(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap {
            dom_dim: m,
            cod_dim: n,
            values: values.clone(),
        });
        // advance to the next monotone value list
        let mut i = m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                for j in i + 1..=m {
                    values[j] = values[i];
                }
                break;
            }
        }
    }
}

/// All nonempty subsets of `[n]`, ordered by (size, lexicographic).
pub fn all_subsets(n: usize) -> Vec<IndexSubset> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << (n + 1)) {
        let elements: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
        out.push(IndexSubset {
            ambient_dim: n,
            elements,
        });
    }
    out.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    out
}
