//! The data of a simplicial map out of the Catalan simplicial set into the
//! coherent nerve of Cat: a base category, a functor `T^x` per nondegenerate
//! simplex, and a transformation `eta^x_C` per nondegenerate simplex and
//! proper chain, together with the stipulation-enforcing accessors and the
//! exhaustive check of the coherence equation over a truncation.
//!
//! Values at degenerate simplices and trivial chains are never stored; the
//! accessors derive them, so the stipulations hold by construction.

use crate::catalan::CatalanSimplex;
use crate::error::{Error, Result};
use crate::fincat::{
    check_natural, functor_compose, functor_product, nat_hcomp, nat_product, nat_vcomp, product,
    FinCategory, Functor, NatTrans,
};
use crate::necklace::{dagger_chains, NecklaceChain};
use crate::ordcomb::{interval, subset_image, IndexSubset, MonotoneMap};
use crate::report::Report;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;

/// The `(A^x, T^x, eta^x_C)` family, truncated at `max_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapData {
    max_dim: usize,
    base: FinCategory,
    t_table: BTreeMap<CatalanSimplex, Functor>,
    eta_table: BTreeMap<(CatalanSimplex, IndexSubset), NatTrans>,
}

/// One side-by-side evaluation of the coherence equation at `(x, A, B)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DaggerCheck {
    pub holds: bool,
    pub lhs: NatTrans,
    pub rhs: NatTrans,
}

/// What a generating chain evaluates to.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluated {
    Category(FinCategory),
    Functor(Functor),
    Transformation(NatTrans),
}

impl MapData {
    pub fn new(
        max_dim: usize,
        base: FinCategory,
        t_table: BTreeMap<CatalanSimplex, Functor>,
        eta_table: BTreeMap<(CatalanSimplex, IndexSubset), NatTrans>,
    ) -> Result<Self> {
        if max_dim < 1 {
            return Err(Error::Precondition("max_dim must be at least 1".into()));
        }
        for x in t_table.keys() {
            if x.dim() < 2 || x.dim() > max_dim || x.is_degenerate() {
                return Err(Error::Precondition(format!(
                    "t table keys must be nondegenerate of dimension 2..={max_dim}, got {x}"
                )));
            }
        }
        for (x, c) in eta_table.keys() {
            let n = x.dim();
            if n < 3 || n > max_dim || x.is_degenerate() {
                return Err(Error::Precondition(format!(
                    "eta table keys must be nondegenerate of dimension 3..={max_dim}, got {x}"
                )));
            }
            if c.ambient_dim() != n || !is_strict_chain_subset(c, n) {
                return Err(Error::Precondition(format!(
                    "eta table chain {:?} must lie strictly between {{0,{n}}} and [{n}]",
                    c.elements()
                )));
            }
        }
        Ok(MapData {
            max_dim,
            base,
            t_table,
            eta_table,
        })
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn t_table(&self) -> &BTreeMap<CatalanSimplex, Functor> {
        &self.t_table
    }

    pub fn eta_table(&self) -> &BTreeMap<(CatalanSimplex, IndexSubset), NatTrans> {
        &self.eta_table
    }

    /// `A^x` for a 1-simplex value: the base for edge 1, the terminal
    /// category for the degenerate edge 0.
    pub fn a_of(&self, edge: u8) -> FinCategory {
        if edge == 1 {
            self.base.clone()
        } else {
            FinCategory::terminal()
        }
    }

    /// `prod_{i in [n]^-} A^{x_{i,i+1}}`, the domain `T^x` must have.
    pub fn spine_domain(&self, x: &CatalanSimplex) -> FinCategory {
        let factors: Vec<FinCategory> = x.spine().iter().map(|&e| self.a_of(e)).collect();
        let refs: Vec<&FinCategory> = factors.iter().collect();
        product(&refs)
    }

    /// `T^x`, resolving dimension-1 and degenerate simplices by stipulation.
    pub fn t_of(&self, x: &CatalanSimplex) -> Result<Functor> {
        if x.dim() == 0 {
            return Err(Error::Precondition(
                "T is defined from dimension 1 up".into(),
            ));
        }
        if x.dim() > self.max_dim {
            return Err(Error::Truncation(format!(
                "T at dimension {} exceeds truncation {}",
                x.dim(),
                self.max_dim
            )));
        }
        if x.dim() == 1 {
            return Ok(Functor::identity(&self.a_of(x.edge(0, 1))));
        }
        let (core, _) = x.nondegenerate_core();
        match core.dim() {
            0 => Ok(Functor::identity(&FinCategory::terminal())),
            1 => Ok(Functor::identity(&self.base)),
            _ => self
                .t_table
                .get(&core)
                .cloned()
                .ok_or_else(|| Error::MissingEntry(format!("T at {core}"))),
        }
    }

    /// `eta^x_C`, resolving the trivial-chain and degenerate cases by
    /// stipulation: identities when `C = {0,n}` or `C = [n]`, and one
    /// codegeneracy peeled at a time for degenerate simplices.
    pub fn eta_of(&self, x: &CatalanSimplex, c: &IndexSubset) -> Result<NatTrans> {
        let mut x = x.clone();
        let mut c = c.clone();
        loop {
            let n = x.dim();
            if c.ambient_dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "chain subset in [{}] against a {n}-simplex",
                    c.ambient_dim()
                )));
            }
            if n == 0 || !c.contains(0) || !c.contains(n) {
                return Err(Error::Precondition(format!(
                    "eta needs {{0,{n}}} within the chain subset, got {:?}",
                    c.elements()
                )));
            }
            if c.len() == 2 || c.is_full() {
                return Ok(NatTrans::identity_on(&self.t_of(&x)?));
            }
            match (0..n).find(|&i| x.collapsible_at(i)) {
                None => {
                    return self
                        .eta_table
                        .get(&(x.clone(), c.clone()))
                        .cloned()
                        .ok_or_else(|| {
                            Error::MissingEntry(format!("eta at {x} chain {:?}", c.elements()))
                        });
                }
                Some(i) => {
                    let keep: Vec<usize> = (0..=n).filter(|&p| p != i).collect();
                    x = x.face(&IndexSubset::new(n, keep)?)?;
                    let sigma = MonotoneMap::codegeneracy(i, n - 1)?;
                    c = subset_image(&sigma, &c)?;
                }
            }
        }
    }

    /// The source `T^{x_C} o prod_{c in C^-} T^{x_{[c,sc]}}` of `eta^x_C`.
    pub fn dom_functor(&self, x: &CatalanSimplex, c: &IndexSubset) -> Result<Functor> {
        let n = x.dim();
        let outer = self.t_of(&x.face(c)?)?;
        let mut factors = Vec::new();
        for (lo, hi) in c.interval_pairs() {
            factors.push(self.t_of(&x.face(&interval(lo, hi, n)?)?)?);
        }
        functor_compose(&outer, &functor_product(&factors))
    }

    /// Boundary typing of every table entry plus table coverage up to the
    /// truncation; stored transformations are also naturality-checked.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        for n in 2..=self.max_dim {
            for x in CatalanSimplex::enumerate(n, true) {
                if !self.t_table.contains_key(&x) {
                    report.push("t-missing", json!({ "simplex": x }));
                }
                if n >= 3 {
                    for c in strict_chain_subsets(n) {
                        if !self.eta_table.contains_key(&(x.clone(), c.clone())) {
                            report.push("eta-missing", json!({ "simplex": x, "C": c.elements() }));
                        }
                    }
                }
            }
        }
        for (x, t) in &self.t_table {
            let expected_src = self.spine_domain(x);
            let expected_tgt = self.a_of(x.edge(0, x.dim()));
            if *t.src() != expected_src || *t.tgt() != expected_tgt {
                report.push("t-typing", json!({ "simplex": x }));
            }
        }
        for ((x, c), eta) in &self.eta_table {
            match (self.dom_functor(x, c), self.t_of(x)) {
                (Ok(dom), Ok(cod)) => {
                    if *eta.src() != dom || *eta.tgt() != cod {
                        report.push("eta-typing", json!({ "simplex": x, "C": c.elements() }));
                    } else if !check_natural(eta).pass() {
                        report.push("eta-naturality", json!({ "simplex": x, "C": c.elements() }));
                    }
                }
                _ => report.push("eta-untypeable", json!({ "simplex": x, "C": c.elements() })),
            }
        }
        report
    }

    /// Evaluate the induced map on a generating chain of `S[n](p,q)`.
    pub fn evaluate(&self, x: &CatalanSimplex, chain: &NecklaceChain) -> Result<Evaluated> {
        if chain.n() != x.dim() {
            return Err(Error::DimensionMismatch(format!(
                "chain in S[{}] against a {}-simplex",
                chain.n(),
                x.dim()
            )));
        }
        let subsets = chain.subsets();
        match subsets.len() {
            1 => {
                let c = &subsets[0];
                if c.len() == 1 {
                    return Ok(Evaluated::Category(FinCategory::terminal()));
                }
                let factors: Vec<FinCategory> = c
                    .interval_pairs()
                    .map(|(lo, hi)| self.a_of(x.edge(lo, hi)))
                    .collect();
                let refs: Vec<&FinCategory> = factors.iter().collect();
                Ok(Evaluated::Category(product(&refs)))
            }
            2 => {
                let (c0, c1) = (&subsets[0], &subsets[1]);
                let mut factors = Vec::new();
                for (lo, hi) in c0.interval_pairs() {
                    let piece = c1.intersect_interval(lo, hi)?;
                    factors.push(self.t_of(&x.face(&piece)?)?);
                }
                Ok(Evaluated::Functor(functor_product(&factors)))
            }
            3 => {
                let (c0, c1, c2) = (&subsets[0], &subsets[1], &subsets[2]);
                let mut factors = Vec::new();
                for (lo, hi) in c0.interval_pairs() {
                    let outer_piece = c2.intersect_interval(lo, hi)?;
                    let inner_piece = c1.intersect_interval(lo, hi)?;
                    let face = x.face(&outer_piece)?;
                    let reindexed = inner_piece.reindex_in(&outer_piece)?;
                    factors.push(self.eta_of(&face, &reindexed)?);
                }
                Ok(Evaluated::Transformation(nat_product(&factors)))
            }
            _ => Err(Error::Precondition(
                "chains of length above 3 are determined by 3-coskeletality".into(),
            )),
        }
    }

    /// Both sides of the coherence equation at `(x, A, B)`.
    pub fn check_dagger(
        &self,
        x: &CatalanSimplex,
        a: &IndexSubset,
        b: &IndexSubset,
    ) -> Result<DaggerCheck> {
        let n = x.dim();
        if x.is_degenerate() || n < 4 {
            return Err(Error::Precondition(
                "coherence is checked at nondegenerate simplices of dimension 4 up".into(),
            ));
        }
        if !is_strict_chain_subset(a, n)
            || !is_strict_chain_subset(b, n)
            || !a.is_subset_of(b)
            || a == b
        {
            return Err(Error::Precondition(format!(
                "need {{0,{n}}} < A < B < [{n}] strictly, got A={:?} B={:?}",
                a.elements(),
                b.elements()
            )));
        }

        // left composite: eta^x_B . (eta^{x_B}_{delta_B^{-1} A} o 1)
        let eta_b = self.eta_of(x, b)?;
        let x_b = x.face(b)?;
        let a_in_b = a.reindex_in(b)?;
        let eta_b_a = self.eta_of(&x_b, &a_in_b)?;
        let mut b_interval_ts = Vec::new();
        for (lo, hi) in b.interval_pairs() {
            b_interval_ts.push(self.t_of(&x.face(&interval(lo, hi, n)?)?)?);
        }
        let inner_identity = NatTrans::identity_on(&functor_product(&b_interval_ts));
        let lhs = nat_vcomp(&eta_b, &nat_hcomp(&eta_b_a, &inner_identity)?)?;

        // right composite: eta^x_A . (1 o prod_a eta^{x_{[a,sa]}}_{B cap [a,sa]})
        let eta_a = self.eta_of(x, a)?;
        let mut factor_etas = Vec::new();
        for (lo, hi) in a.interval_pairs() {
            let iv = interval(lo, hi, n)?;
            let face = x.face(&iv)?;
            let meet = b.intersect_interval(lo, hi)?;
            let reindexed = meet.reindex_in(&iv)?;
            factor_etas.push(self.eta_of(&face, &reindexed)?);
        }
        let outer_identity = NatTrans::identity_on(&self.t_of(&x.face(a)?)?);
        let rhs = nat_vcomp(
            &eta_a,
            &nat_hcomp(&outer_identity, &nat_product(&factor_etas))?,
        )?;

        Ok(DaggerCheck {
            holds: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// Validate, then sweep the coherence equation over every nondegenerate
    /// simplex of dimension 4 up to the truncation and every strict chain.
    /// The sweep is distributed over `workers` threads; the report does not
    /// depend on the worker count.
    pub fn check_all(&self, workers: usize) -> Report {
        let mut report = self.validate();
        let mut tasks: Vec<CatalanSimplex> = Vec::new();
        for n in 4..=self.max_dim {
            tasks.extend(CatalanSimplex::enumerate(n, true));
        }
        // the sweep revisits the chain pairs for every simplex of the same
        // dimension; materialize them once per dimension
        let mut chain_cache: BTreeMap<usize, Vec<(IndexSubset, IndexSubset)>> = BTreeMap::new();
        for n in 4..=self.max_dim {
            chain_cache.insert(n, dagger_chains(n));
        }
        let workers = workers.max(1);
        let mut per_task: Vec<(usize, Vec<crate::report::Failure>)> = Vec::new();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                let tasks = &tasks;
                let chain_cache = &chain_cache;
                let me = &*self;
                handles.push(scope.spawn(move || {
                    let mut mine = Vec::new();
                    for (idx, x) in tasks.iter().enumerate() {
                        if idx % workers != w {
                            continue;
                        }
                        let mut failures = Vec::new();
                        for (a, b) in &chain_cache[&x.dim()] {
                            match me.check_dagger(x, a, b) {
                                Ok(check) if check.holds => {}
                                Ok(check) => failures.push(crate::report::Failure {
                                    check: "dagger".into(),
                                    witness: json!({
                                        "simplex": x,
                                        "A": a.elements(),
                                        "B": b.elements(),
                                        "lhs": check.lhs,
                                        "rhs": check.rhs,
                                    }),
                                }),
                                Err(e) => failures.push(crate::report::Failure {
                                    check: "dagger-error".into(),
                                    witness: json!({
                                        "simplex": x,
                                        "A": a.elements(),
                                        "B": b.elements(),
                                        "error": e.to_string(),
                                    }),
                                }),
                            }
                        }
                        mine.push((idx, failures));
                    }
                    mine
                }));
            }
            for handle in handles {
                per_task.extend(handle.join().expect("sweep worker panicked"));
            }
        });
        per_task.sort_by_key(|(idx, _)| *idx);
        for (_, failures) in per_task {
            report.failures.extend(failures);
        }
        report
    }
}

/// Whether `{0,n}` is strictly contained in `c` which is strictly contained
/// in `[n]`.
fn is_strict_chain_subset(c: &IndexSubset, n: usize) -> bool {
    c.ambient_dim() == n && c.contains(0) && c.contains(n) && c.len() > 2 && !c.is_full()
}

/// All subsets strictly between `{0,n}` and `[n]`, in deterministic order.
pub fn strict_chain_subsets(n: usize) -> Vec<IndexSubset> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let interior: Vec<usize> = (1..n).collect();
    for mask in 1u64..((1 << interior.len()) - 1) {
        let mut elements = vec![0];
        for (i, &e) in interior.iter().enumerate() {
            if mask & (1 << i) != 0 {
                elements.push(e);
            }
        }
        elements.push(n);
        out.push(IndexSubset::new(n, elements).unwrap());
    }
    out.sort();
    out
}

/// Wire form of a map-data file.
#[derive(Serialize, Deserialize)]
pub struct MapDataWire {
    pub base: FinCategory,
    pub max_dim: usize,
    pub t_table: Vec<TEntryWire>,
    pub eta_table: Vec<EtaEntryWire>,
}

#[derive(Serialize, Deserialize)]
pub struct TEntryWire {
    pub simplex: CatalanSimplex,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
pub struct EtaEntryWire {
    pub simplex: CatalanSimplex,
    pub c: Vec<usize>,
    pub components: BTreeMap<String, String>,
}

impl MapData {
    /// Build from the wire form, deriving every functor and transformation
    /// boundary from the base category and the simplex at the entry.
    pub fn from_wire(wire: MapDataWire) -> Result<Self> {
        let mut t_table = BTreeMap::new();
        let skeleton = MapData::new(
            wire.max_dim,
            wire.base.clone(),
            BTreeMap::new(),
            BTreeMap::new(),
        )?;
        for entry in wire.t_table {
            let src = skeleton.spine_domain(&entry.simplex);
            let tgt = skeleton.a_of(entry.simplex.edge(0, entry.simplex.dim()));
            let functor = Functor::new(src, tgt, entry.obj_map, entry.mor_map)?;
            t_table.insert(entry.simplex, functor);
        }
        let with_t = MapData::new(
            wire.max_dim,
            wire.base.clone(),
            t_table.clone(),
            BTreeMap::new(),
        )?;
        let mut eta_table = BTreeMap::new();
        for entry in wire.eta_table {
            let c = IndexSubset::new(entry.simplex.dim(), entry.c)?;
            let dom = with_t.dom_functor(&entry.simplex, &c)?;
            let cod = with_t.t_of(&entry.simplex)?;
            let nat = NatTrans::new(dom, cod, entry.components)?;
            eta_table.insert((entry.simplex, c), nat);
        }
        MapData::new(wire.max_dim, wire.base, t_table, eta_table)
    }

    pub fn to_wire(&self) -> MapDataWire {
        MapDataWire {
            base: self.base.clone(),
            max_dim: self.max_dim,
            t_table: self
                .t_table
                .iter()
                .map(|(x, t)| TEntryWire {
                    simplex: x.clone(),
                    obj_map: t.obj_table().clone(),
                    mor_map: t.mor_table().clone(),
                })
                .collect(),
            eta_table: self
                .eta_table
                .iter()
                .map(|((x, c), eta)| EtaEntryWire {
                    simplex: x.clone(),
                    c: c.elements().to_vec(),
                    components: eta.components().clone(),
                })
                .collect(),
        }
    }
}
