//! Sigma-monoidal structures: a signature of k-ary functors per arity with
//! coherent isomorphisms between equal-total-arity composites, classified by
//! naming each nondegenerate simplex through a surjection onto its arity's
//! signature.
//!
//! The isomorphism family is synthesized by uniqueness: between any two
//! relevant parallel functors there must be exactly one natural
//! transformation, and it must be invertible. The axioms checker verifies
//! this on the signature and on every composite the truncation needs, which
//! is the finite content of "all equal-endpoint composites agree".

use super::etransform::e_transform;
use crate::catalan::CatalanSimplex;
use crate::error::{Error, Result};
use crate::fincat::{product, unique_nat_trans, FinCategory, Functor, NatTrans};
use crate::mapcore::{strict_chain_subsets, MapData};
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeMap;

/// How simplices are named into the signature.
#[derive(Debug, Clone, PartialEq)]
pub enum HRule {
    /// Rank nondegenerate simplices of each spine sum by (dimension,
    /// enumeration order) and cycle through the signature.
    RoundRobin,
    /// Explicit assignment of signature indices.
    Table(BTreeMap<CatalanSimplex, usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaStructure {
    base: FinCategory,
    sigma: BTreeMap<usize, Vec<Functor>>,
    h: HRule,
}

/// The i-th projection `A^k -> A`.
pub fn projection(base: &FinCategory, k: usize, i: usize) -> Result<Functor> {
    if k == 0 || i >= k {
        return Err(Error::Precondition(format!("projection {i} of {k}")));
    }
    let factors = vec![base.clone(); k];
    let refs: Vec<&FinCategory> = factors.iter().collect();
    let src = product(&refs);
    let pick = |joined: &str| -> String {
        if k == 1 {
            joined.to_string()
        } else {
            joined.split(',').nth(i).unwrap().to_string()
        }
    };
    Functor::new(
        src.clone(),
        base.clone(),
        src.objects().iter().map(|o| (o.clone(), pick(o))).collect(),
        src.morphism_ids().map(|m| (m.clone(), pick(m))).collect(),
    )
}

/// The constant functor `I -> A` at an object.
pub fn constant(base: &FinCategory, obj: &str) -> Result<Functor> {
    let terminal = FinCategory::terminal();
    let identity = base.identity_of(obj)?.to_string();
    Functor::new(
        terminal,
        base.clone(),
        BTreeMap::from([("*".to_string(), obj.to_string())]),
        BTreeMap::from([("*".to_string(), identity)]),
    )
}

impl SigmaStructure {
    pub fn new(base: FinCategory, sigma: BTreeMap<usize, Vec<Functor>>, h: HRule) -> Result<Self> {
        for (&k, functors) in &sigma {
            if functors.is_empty() {
                return Err(Error::Precondition(format!("empty signature at arity {k}")));
            }
            let factors = vec![base.clone(); k];
            let refs: Vec<&FinCategory> = factors.iter().collect();
            let expected_src = product(&refs);
            for f in functors {
                if *f.src() != expected_src || *f.tgt() != base {
                    return Err(Error::BoundaryMismatch(format!(
                        "signature functor at arity {k} is not A^{k} -> A"
                    )));
                }
            }
        }
        Ok(SigmaStructure { base, sigma, h })
    }

    /// The standard fixture: an indiscrete base with both projections at
    /// arity 2 and first-projection (or first-object) signatures elsewhere.
    pub fn indiscrete_two_projections(names: &[&str], arity_bound: usize) -> Result<Self> {
        let base = FinCategory::indiscrete(names)?;
        let mut sigma = BTreeMap::new();
        for k in 0..=arity_bound {
            let functors = match k {
                0 => vec![constant(&base, &base.objects()[0])?],
                2 => vec![projection(&base, 2, 0)?, projection(&base, 2, 1)?],
                _ => vec![projection(&base, k, 0)?],
            };
            sigma.insert(k, functors);
        }
        SigmaStructure::new(base, sigma, HRule::RoundRobin)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn sigma(&self) -> &BTreeMap<usize, Vec<Functor>> {
        &self.sigma
    }

    pub fn arity(&self, k: usize) -> Result<&[Functor]> {
        self.sigma
            .get(&k)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::MissingShape(format!("no signature at arity {k}")))
    }

    fn round_robin_rank(x: &CatalanSimplex) -> usize {
        let k = x.spine_sum();
        let mut rank = 0;
        for n in 2..x.dim() {
            rank += CatalanSimplex::enumerate(n, true)
                .iter()
                .filter(|y| y.spine_sum() == k)
                .count();
        }
        rank += CatalanSimplex::enumerate(x.dim(), true)
            .iter()
            .filter(|y| y.spine_sum() == k && *y < x)
            .count();
        rank
    }

    /// `h(x)`: the named functor for a nondegenerate simplex of dimension 2 up.
    pub fn h_value(&self, x: &CatalanSimplex) -> Result<&Functor> {
        if x.dim() < 2 || x.is_degenerate() {
            return Err(Error::Precondition(format!(
                "h names nondegenerate simplices of dimension 2 up, got {x}"
            )));
        }
        let list = self.arity(x.spine_sum())?;
        let index = match &self.h {
            HRule::RoundRobin => Self::round_robin_rank(x) % list.len(),
            HRule::Table(table) => *table
                .get(x)
                .ok_or_else(|| Error::MissingEntry(format!("h at {x}")))?,
        };
        list.get(index)
            .ok_or_else(|| Error::MissingEntry(format!("h index {index} at {x}")))
    }
}

/// Signature coverage, surjectivity of the naming within the truncation,
/// unique invertible isomorphisms with the cocycle law on the signature, and
/// existence of the unique iso at every composite the truncation generates.
pub fn sigma_axioms(s: &SigmaStructure, max_dim: usize) -> Report {
    let mut report = Report::new();
    for k in 0..=max_dim {
        if !s.sigma.contains_key(&k) {
            report.push("sigma-missing-arity", json!({ "arity": k }));
        }
    }
    // h surjectivity within the truncation
    for (&k, functors) in &s.sigma {
        if k > max_dim {
            continue;
        }
        let mut hit = vec![false; functors.len()];
        for n in 2..=max_dim {
            for x in CatalanSimplex::enumerate(n, true) {
                if x.spine_sum() != k {
                    continue;
                }
                if let Ok(f) = s.h_value(&x) {
                    if let Some(i) = functors.iter().position(|g| g == f) {
                        hit[i] = true;
                    }
                }
            }
        }
        let missing: Vec<usize> = (0..functors.len()).filter(|&i| !hit[i]).collect();
        if !missing.is_empty() {
            report.push(
                "h-not-surjective",
                json!({ "arity": k, "missing": missing }),
            );
        }
    }
    // unique invertible isos and the cocycle law on each signature
    for (&k, functors) in &s.sigma {
        if k > max_dim {
            continue;
        }
        let mut isos: BTreeMap<(usize, usize), NatTrans> = BTreeMap::new();
        for (i, f) in functors.iter().enumerate() {
            for (j, g) in functors.iter().enumerate() {
                match unique_nat_trans(f, g) {
                    Ok(t) => {
                        if t.invert().is_err() {
                            report
                                .push("iso-not-invertible", json!({ "arity": k, "pair": [i, j] }));
                        }
                        if i == j && !t.is_identity() {
                            report.push("iso-not-identity", json!({ "arity": k, "index": i }));
                        }
                        isos.insert((i, j), t);
                    }
                    Err(e) => report.push(
                        "iso-missing-or-ambiguous",
                        json!({ "arity": k, "pair": [i, j], "error": e.to_string() }),
                    ),
                }
            }
        }
        for i in 0..functors.len() {
            for j in 0..functors.len() {
                for l in 0..functors.len() {
                    let (Some(ij), Some(jl), Some(il)) =
                        (isos.get(&(i, j)), isos.get(&(j, l)), isos.get(&(i, l)))
                    else {
                        continue;
                    };
                    match crate::fincat::nat_vcomp(jl, ij) {
                        Ok(composite) if composite == *il => {}
                        _ => report.push("iso-cocycle", json!({ "arity": k, "triple": [i, j, l] })),
                    }
                }
            }
        }
    }
    // unique isos at every composite generated by the truncation
    match skeleton_with_t(s, max_dim) {
        Ok(with_t) => {
            for n in 3..=max_dim {
                for x in CatalanSimplex::enumerate(n, true) {
                    for c in strict_chain_subsets(n) {
                        let pair = with_t
                            .dom_functor(&x, &c)
                            .and_then(|dom| Ok((dom, with_t.t_of(&x)?)));
                        match pair {
                            Ok((dom, cod)) => match unique_nat_trans(&dom, &cod) {
                                Ok(t) => {
                                    if t.invert().is_err() {
                                        report.push(
                                            "composite-iso-not-invertible",
                                            json!({ "simplex": x, "C": c.elements() }),
                                        );
                                    }
                                }
                                Err(e) => report.push(
                                    "composite-iso-missing-or-ambiguous",
                                    json!({ "simplex": x, "C": c.elements(), "error": e.to_string() }),
                                ),
                            },
                            Err(e) => report.push(
                                "composite-untypeable",
                                json!({ "simplex": x, "C": c.elements(), "error": e.to_string() }),
                            ),
                        }
                    }
                }
            }
        }
        Err(e) => report.push("sigma-untypeable", json!({ "error": e.to_string() })),
    }
    report
}

fn skeleton_with_t(s: &SigmaStructure, max_dim: usize) -> Result<MapData> {
    let mut t_table = BTreeMap::new();
    for n in 2..=max_dim {
        for x in CatalanSimplex::enumerate(n, true) {
            t_table.insert(x.clone(), s.h_value(&x)?.clone());
        }
    }
    MapData::new(max_dim, s.base.clone(), t_table, BTreeMap::new())
}

/// The classifying map: `T^x = h(x)`, `eta^x_C` the unique natural
/// isomorphism from the chain composite to `T^x`.
pub fn sigma_classify(s: &SigmaStructure, max_dim: usize) -> Result<MapData> {
    let with_t = skeleton_with_t(s, max_dim)?;
    let mut eta_table = BTreeMap::new();
    for n in 3..=max_dim {
        for x in CatalanSimplex::enumerate(n, true) {
            for c in strict_chain_subsets(n) {
                let dom = with_t.dom_functor(&x, &c)?;
                let cod = with_t.t_of(&x)?;
                let eta = unique_nat_trans(&dom, &cod)?;
                eta.invert()?;
                eta_table.insert((x.clone(), c), eta);
            }
        }
    }
    MapData::new(max_dim, s.base.clone(), with_t.t_table().clone(), eta_table)
}

/// A signature read back out of classifying data.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredSigma {
    pub base: FinCategory,
    /// Distinct T-values per spine sum, in first-seen order.
    pub sigma: BTreeMap<usize, Vec<Functor>>,
    /// Connecting isomorphisms `(k, i, j) -> sigma[k][i] => sigma[k][j]`,
    /// regenerated from the comparison transformations.
    pub connecting: BTreeMap<(usize, usize, usize), NatTrans>,
}

/// Recover the signature as the distinct T-values at each spine sum, with
/// connecting isomorphisms assembled from the comparison transformations.
pub fn sigma_recover(d: &MapData, max_arity: usize) -> Result<RecoveredSigma> {
    let base = d.a_of(1);
    let mut sigma: BTreeMap<usize, Vec<Functor>> = BTreeMap::new();
    let mut representatives: BTreeMap<usize, Vec<CatalanSimplex>> = BTreeMap::new();
    for n in 2..=d.max_dim() {
        for x in CatalanSimplex::enumerate(n, true) {
            let k = x.spine_sum();
            if k > max_arity {
                continue;
            }
            let value = d.t_of(&x)?;
            let list = sigma.entry(k).or_default();
            if !list.contains(&value) {
                list.push(value);
                representatives.entry(k).or_default().push(x);
            }
        }
    }
    let mut connecting = BTreeMap::new();
    for (&k, reps) in &representatives {
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                if i == j {
                    continue;
                }
                let e_i = e_transform(d, &reps[i])?;
                let e_j = e_transform(d, &reps[j])?;
                let iso = crate::fincat::nat_vcomp(&e_j, &e_i.invert()?)?;
                connecting.insert((k, i, j), iso);
            }
        }
    }
    Ok(RecoveredSigma {
        base,
        sigma,
        connecting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordcomb::IndexSubset;

    fn fixture(bound: usize) -> SigmaStructure {
        SigmaStructure::indiscrete_two_projections(&["a", "b"], bound).unwrap()
    }

    #[test]
    fn axioms_pass_on_indiscrete_fixture() {
        let report = sigma_axioms(&fixture(4), 4);
        assert!(report.pass(), "{report}");
    }

    #[test]
    fn h_round_robin_hits_both_projections() {
        let s = fixture(4);
        let m_value = s.h_value(&CatalanSimplex::m()).unwrap().clone();
        let mut seen = vec![m_value.clone()];
        for n in 3..=4 {
            for x in CatalanSimplex::enumerate(n, true) {
                if x.spine_sum() == 2 {
                    let v = s.h_value(&x).unwrap().clone();
                    if !seen.contains(&v) {
                        seen.push(v);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn classify_passes_validate_and_check_all_small() {
        let s = fixture(4);
        let d = sigma_classify(&s, 4).unwrap();
        assert!(d.validate().pass());
        let report = d.check_all(2);
        assert!(report.pass(), "{report}");
    }

    #[test]
    fn stored_etas_are_isomorphisms() {
        let s = fixture(3);
        let d = sigma_classify(&s, 3).unwrap();
        let c = IndexSubset::new(3, vec![0, 2, 3]).unwrap();
        let eta = d.eta_of(&CatalanSimplex::l(), &c).unwrap();
        assert!(eta.invert().is_ok());
    }

    #[test]
    fn recover_finds_both_binary_functors() {
        let s = fixture(4);
        let d = sigma_classify(&s, 4).unwrap();
        let recovered = sigma_recover(&d, 4).unwrap();
        assert_eq!(recovered.base, *s.base());
        assert_eq!(recovered.sigma[&2].len(), 2);
        let iso = &recovered.connecting[&(2, 0, 1)];
        assert!(iso.invert().is_ok());
        assert_eq!(*iso.src(), recovered.sigma[&2][0]);
        assert_eq!(*iso.tgt(), recovered.sigma[&2][1]);
    }

    #[test]
    fn projection_and_constant_shapes() {
        let base = FinCategory::indiscrete(&["a", "b"]).unwrap();
        let p0 = projection(&base, 2, 0).unwrap();
        let p1 = projection(&base, 2, 1).unwrap();
        assert_ne!(p0, p1);
        assert_eq!(p0.obj("a,b").unwrap(), "a");
        assert_eq!(p1.obj("a,b").unwrap(), "b");
        let c = constant(&base, "b").unwrap();
        assert!(c.src().is_terminal());
        assert_eq!(c.obj("*").unwrap(), "b");
        assert!(projection(&base, 0, 0).is_err());
    }
}
