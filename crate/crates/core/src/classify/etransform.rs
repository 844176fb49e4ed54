//! The comparison transformations `E` between a `T`-value and the canonical
//! representative of its arity: built by induction over the spine, peeling
//! one chain subset at a time.
//!
//! For spine sum 1 the composite runs `1_A => T^x`; for spine sum 0 (away
//! from total degeneracies) it runs `T^u => T^x`; for spine sum `n >= 2` the
//! induction assembles `T^{mu(n)} => T^x` out of the lower cases.

use crate::catalan::CatalanSimplex;
use crate::error::{Error, Result};
use crate::fincat::{functor_product, nat_hcomp, nat_product, nat_vcomp, NatTrans};
use crate::mapcore::MapData;
use crate::ordcomb::{interval, IndexSubset};

/// The comparison transformation at a nondegenerate simplex of the map data.
pub fn e_transform(d: &MapData, x: &CatalanSimplex) -> Result<NatTrans> {
    if x.dim() == 0 {
        return Err(Error::Precondition("no comparison at the vertex".into()));
    }
    if x.is_degenerate() {
        return Err(Error::Precondition(format!(
            "comparison is built at nondegenerate simplices, got {x}"
        )));
    }
    if x.dim() > d.max_dim() {
        return Err(Error::Truncation(format!(
            "{x} exceeds truncation {}",
            d.max_dim()
        )));
    }
    build(d, x)
}

fn build(d: &MapData, x: &CatalanSimplex) -> Result<NatTrans> {
    if x.is_degenerate() {
        let (core, _) = x.nondegenerate_core();
        if core.dim() == 0 {
            return Err(Error::Precondition(
                "total degeneracies carry no comparison".into(),
            ));
        }
        // T^{sx} = T^x, so the comparison factors through the core
        return build(d, &core);
    }
    let m = x.dim();
    if m == 1 {
        // the nondegenerate 1-simplex: E = 1 at the base identity
        return Ok(NatTrans::identity_on(&d.t_of(x)?));
    }
    match x.spine_sum() {
        0 => {
            if m == 2 {
                // x = u, the base of the induction
                return Ok(NatTrans::identity_on(&d.t_of(x)?));
            }
            // peel the chain omitting vertex 1; the recursion lands in the
            // sum-0 case again when x_{012} = s_0(0) and in the sum-1 case
            // when x_{012} = u
            let c_elements: Vec<usize> = std::iter::once(0).chain(2..=m).collect();
            let c = IndexSubset::new(m, c_elements)?;
            let xc = x.face(&c)?;
            let f = build(d, &xc)?;
            let eta = d.eta_of(x, &c)?;
            let p = interval_product(d, x, &c)?;
            let whiskered = nat_hcomp(&f, &NatTrans::identity_on(&p))?;
            nat_vcomp(&eta, &whiskered)
        }
        1 => {
            // omit the vertex next to the unique spine 1
            let j = (0..m).find(|&i| x.edge(i, i + 1) == 1).unwrap();
            let omit = if j >= 1 { j } else { 1 };
            let c_elements: Vec<usize> = (0..=m).filter(|&v| v != omit).collect();
            let c = IndexSubset::new(m, c_elements)?;
            let xc = x.face(&c)?;
            let f = build(d, &xc)?;
            let eta = d.eta_of(x, &c)?;
            let p = interval_product(d, x, &c)?;
            let whiskered = nat_hcomp(&f, &NatTrans::identity_on(&p))?;
            nat_vcomp(&eta, &whiskered)
        }
        n => {
            // cut points after each spine 1 except the last, plus the endpoints
            let ones: Vec<usize> = (0..m).filter(|&i| x.edge(i, i + 1) == 1).collect();
            let mut c_elements = vec![0];
            for &e in &ones[..n - 1] {
                c_elements.push(e + 1);
            }
            if *c_elements.last().unwrap() != m {
                c_elements.push(m);
            }
            let c = IndexSubset::new(m, c_elements)?;
            let xc = x.face(&c)?;
            if xc != CatalanSimplex::mu(c.len() - 1) {
                return Err(Error::Coherence(format!(
                    "cut face of {x} is not the all-ones simplex"
                )));
            }
            let mut parts = Vec::new();
            for (lo, hi) in c.interval_pairs() {
                let y = x.face(&interval(lo, hi, m)?)?;
                parts.push(build(d, &y)?);
            }
            let eta = d.eta_of(x, &c)?;
            let whiskered = nat_hcomp(&NatTrans::identity_on(&d.t_of(&xc)?), &nat_product(&parts))?;
            nat_vcomp(&eta, &whiskered)
        }
    }
}

fn interval_product(
    d: &MapData,
    x: &CatalanSimplex,
    c: &IndexSubset,
) -> Result<crate::fincat::Functor> {
    let n = x.dim();
    let mut factors = Vec::new();
    for (lo, hi) in c.interval_pairs() {
        factors.push(d.t_of(&x.face(&interval(lo, hi, n)?)?)?);
    }
    Ok(functor_product(&factors))
}
