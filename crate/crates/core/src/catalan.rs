//! The Catalan simplicial set as executable combinatorics.
//!
//! A simplex is a 0/1 assignment on its 1-faces `x_{p,q}`, subject to the
//! triangle rule that a `0` on a long edge forces `0` on every edge beneath
//! it. Two-coskeletality makes this assignment the whole story: faces,
//! degeneracies, nondegenerate cores, and enumeration are all edge-table
//! manipulations.

use crate::error::{Error, Result};
use crate::ordcomb::{compose, IndexSubset, MonotoneMap};
use serde::{Deserialize, Serialize};

/// An n-simplex, stored as the bit table of its 1-faces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SimplexWire", into = "SimplexWire")]
pub struct CatalanSimplex {
    dim: usize,
    edges: Vec<u8>,
}

/// Wire form `{"dim": n, "edges": [[p, q, bit], ...]}`.
#[derive(Serialize, Deserialize)]
struct SimplexWire {
    dim: usize,
    edges: Vec<(usize, usize, u8)>,
}

impl From<CatalanSimplex> for SimplexWire {
    fn from(x: CatalanSimplex) -> Self {
        let edges = pairs(x.dim).map(|(p, q)| (p, q, x.edge(p, q))).collect();
        SimplexWire { dim: x.dim, edges }
    }
}

impl TryFrom<SimplexWire> for CatalanSimplex {
    type Error = Error;

    fn try_from(wire: SimplexWire) -> Result<Self> {
        let n = wire.dim;
        let mut edges = vec![2u8; edge_count(n)];
        for (p, q, bit) in wire.edges {
            if p >= q || q > n || bit > 1 {
                return Err(Error::InvalidSimplex(format!(
                    "bad edge entry ({p},{q},{bit}) for dimension {n}"
                )));
            }
            edges[edge_index(p, q, n)] = bit;
        }
        if edges.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSimplex("edge table incomplete".into()));
        }
        CatalanSimplex::new(n, edges)
    }
}

fn edge_count(n: usize) -> usize {
    n * (n + 1) / 2
}

fn edge_index(p: usize, q: usize, n: usize) -> usize {
    debug_assert!(p < q && q <= n);
    p * n - p * p.saturating_sub(1) / 2 + (q - p - 1)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |p| (p + 1..=n).map(move |q| (p, q)))
}

impl CatalanSimplex {
    /// Build a simplex from its flat edge table (lexicographic pair order),
    /// validating the triangle rule.
    pub fn new(dim: usize, edges: Vec<u8>) -> Result<Self> {
        if edges.len() != edge_count(dim) {
            return Err(Error::InvalidSimplex(format!(
                "dimension {dim} needs {} edges, got {}",
                edge_count(dim),
                edges.len()
            )));
        }
        if edges.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSimplex("edge values must be bits".into()));
        }
        let x = CatalanSimplex { dim, edges };
        for p in 0..dim {
            for q in p + 2..=dim {
                if x.edge(p, q) == 0 {
                    for r in p + 1..q {
                        if x.edge(p, r) != 0 || x.edge(r, q) != 0 {
                            return Err(Error::InvalidSimplex(format!(
                                "triangle rule fails at ({p},{r},{q})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let edges = pairs(dim).map(|(p, q)| f(p, q)).collect();
        CatalanSimplex::new(dim, edges)
    }

    /// The unique 0-simplex `*`.
    pub fn vertex() -> Self {
        CatalanSimplex {
            dim: 0,
            edges: vec![],
        }
    }

    /// The 1-simplex with the given edge value.
    pub fn one_simplex(bit: u8) -> Self {
        CatalanSimplex {
            dim: 1,
            edges: vec![bit],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge(&self, p: usize, q: usize) -> u8 {
        self.edges[edge_index(p, q, self.dim)]
    }

    /// Spine values `x_{01}, x_{12}, ..., x_{n-1,n}`.
    pub fn spine(&self) -> Vec<u8> {
        (0..self.dim).map(|i| self.edge(i, i + 1)).collect()
    }

    /// Number of `1`s in the spine; the arity of `T^x`.
    pub fn spine_sum(&self) -> usize {
        (0..self.dim).filter(|&i| self.edge(i, i + 1) == 1).count()
    }

    /// The `C`-th face: the simplex of dimension `|C|-1` with edges read off
    /// along `delta_C`.
    pub fn face(&self, c: &IndexSubset) -> Result<CatalanSimplex> {
        if c.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "face subset of [{}] of a {}-simplex",
                c.ambient_dim(),
                self.dim
            )));
        }
        let elems = c.elements();
        let m = elems.len() - 1;
        let edges = pairs(m)
            .map(|(i, j)| self.edge(elems[i], elems[j]))
            .collect();
        // sub-triangles of valid triangles stay valid
        Ok(CatalanSimplex { dim: m, edges })
    }

    /// The degeneracy `s_i`, pulling edges back along `sigma_i`; a collapsed
    /// pair gets the degenerate edge value 0.
    pub fn degeneracy(&self, i: usize) -> Result<CatalanSimplex> {
        if i > self.dim {
            return Err(Error::Bounds(format!(
                "degeneracy index {i} on a {}-simplex",
                self.dim
            )));
        }
        let sigma = |p: usize| if p <= i { p } else { p - 1 };
        let edges = pairs(self.dim + 1)
            .map(|(p, q)| {
                if sigma(p) == sigma(q) {
                    0
                } else {
                    self.edge(sigma(p), sigma(q))
                }
            })
            .collect();
        Ok(CatalanSimplex {
            dim: self.dim + 1,
            edges,
        })
    }

    /// Whether `self = s_i(y)` for some `y`.
    pub fn collapsible_at(&self, i: usize) -> bool {
        if i + 1 > self.dim || self.edge(i, i + 1) != 0 {
            return false;
        }
        for j in 0..i {
            if self.edge(j, i) != self.edge(j, i + 1) {
                return false;
            }
        }
        for q in i + 2..=self.dim {
            if self.edge(i, q) != self.edge(i + 1, q) {
                return false;
            }
        }
        true
    }

    pub fn is_degenerate(&self) -> bool {
        (0..self.dim).any(|i| self.collapsible_at(i))
    }

    /// The Eilenberg-Zilber decomposition: the unique nondegenerate `core`
    /// and surjection `collapse` with `self = X(collapse)(core)`.
    pub fn nondegenerate_core(&self) -> (CatalanSimplex, MonotoneMap) {
        let mut current = self.clone();
        let mut collapse = MonotoneMap::identity(self.dim);
        loop {
            let Some(i) = (0..current.dim).find(|&i| current.collapsible_at(i)) else {
                return (current, collapse);
            };
            let keep: Vec<usize> = (0..=current.dim).filter(|&p| p != i).collect();
            let face_set = IndexSubset::new(current.dim, keep).unwrap();
            current = current.face(&face_set).unwrap();
            let sigma = MonotoneMap::codegeneracy(i, current.dim).unwrap();
            collapse = compose(&collapse, &sigma).unwrap();
        }
    }

    /// All simplices of dimension `n`, each exactly once, by backtracking over
    /// edges ordered by (length, left endpoint) so the triangle rule prunes.
    pub fn enumerate(n: usize, nondegenerate_only: bool) -> Vec<CatalanSimplex> {
        let mut order: Vec<(usize, usize)> = pairs(n).collect();
        order.sort_by_key(|&(p, q)| (q - p, p));
        let mut edges = vec![0u8; edge_count(n)];
        let mut out = Vec::new();
        fn rec(
            n: usize,
            order: &[(usize, usize)],
            step: usize,
            edges: &mut Vec<u8>,
            out: &mut Vec<CatalanSimplex>,
        ) {
            if step == order.len() {
                out.push(CatalanSimplex {
                    dim: n,
                    edges: edges.clone(),
                });
                return;
            }
            let (p, q) = order[step];
            let zero_ok = (p + 1..q)
                .all(|r| edges[edge_index(p, r, n)] == 0 && edges[edge_index(r, q, n)] == 0);
            if zero_ok {
                edges[edge_index(p, q, n)] = 0;
                rec(n, order, step + 1, edges, out);
            }
            edges[edge_index(p, q, n)] = 1;
            rec(n, order, step + 1, edges, out);
            edges[edge_index(p, q, n)] = 0;
        }
        rec(n, &order, 0, &mut edges, &mut out);
        if nondegenerate_only {
            out.retain(|x| !x.is_degenerate());
        }
        out.sort();
        out
    }

    /// The 2-simplex with spine `(e01, e12)` and long edge `e02`.
    pub fn triangle(e01: u8, e12: u8, e02: u8) -> Result<Self> {
        CatalanSimplex::new(2, vec![e01, e02, e12])
    }

    /// The 2-simplex `u : 0 v 0 -> 1`.
    pub fn u() -> Self {
        CatalanSimplex::triangle(0, 0, 1).unwrap()
    }

    /// The 2-simplex `m : 1 v 1 -> 1`.
    pub fn m() -> Self {
        CatalanSimplex::triangle(1, 1, 1).unwrap()
    }

    /// The 3-simplex `l`: spine (0,0,1), all longer edges 1.
    pub fn l() -> Self {
        CatalanSimplex::from_fn(3, |p, q| {
            if (p, q) == (0, 1) || (p, q) == (1, 2) {
                0
            } else {
                1
            }
        })
        .unwrap()
    }

    /// The 3-simplex `r`: spine (1,0,0), all longer edges 1.
    pub fn r() -> Self {
        CatalanSimplex::from_fn(3, |p, q| {
            if (p, q) == (1, 2) || (p, q) == (2, 3) {
                0
            } else {
                1
            }
        })
        .unwrap()
    }

    /// The n-simplex `mu(n)` with every 1-face equal to 1.
    pub fn mu(n: usize) -> Self {
        CatalanSimplex {
            dim: n,
            edges: vec![1; edge_count(n)],
        }
    }

    /// Look up one of the special simplices by name: `u`, `m`, `l`, `r`, or `mu(n)`.
    pub fn named(name: &str) -> Result<CatalanSimplex> {
        match name {
            "u" => Ok(CatalanSimplex::u()),
            "m" => Ok(CatalanSimplex::m()),
            "l" => Ok(CatalanSimplex::l()),
            "r" => Ok(CatalanSimplex::r()),
            _ => {
                if let Some(inner) = name.strip_prefix("mu(").and_then(|s| s.strip_suffix(')')) {
                    let n: usize = inner
                        .parse()
                        .map_err(|_| Error::UnknownName(name.to_string()))?;
                    Ok(CatalanSimplex::mu(n))
                } else {
                    Err(Error::UnknownName(name.to_string()))
                }
            }
        }
    }
}

impl std::fmt::Display for CatalanSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let spine: Vec<String> = self.spine().iter().map(|b| b.to_string()).collect();
        write!(f, "dim {} spine [{}]", self.dim, spine.join(""))?;
        let longer: Vec<String> = pairs(self.dim)
            .filter(|&(p, q)| q - p >= 2)
            .map(|(p, q)| format!("{p}{q}:{}", self.edge(p, q)))
            .collect();
        if !longer.is_empty() {
            write!(f, " [{}]", longer.join(" "))?;
        }
        Ok(())
    }
}

/// Catalan numbers by the standard recurrence.
pub fn catalan_number(n: usize) -> u64 {
    let mut cat = vec![0u64; n + 1];
    cat[0] = 1;
    for m in 1..=n {
        for i in 0..m {
            cat[m] += cat[i] * cat[m - 1 - i];
        }
    }
    cat[n]
}
