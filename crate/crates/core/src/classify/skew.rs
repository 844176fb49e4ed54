//! Skew monoidal structures: the five-diagram axioms, and the classifying
//! map that sends a simplex to the right-nested composite of its 2-face
//! images and computes each `eta^x_C` by exhaustive search over composites
//! of whiskered 3-face transformations.
//!
//! Composites of 2-face images from the spine product to `A^{x_{0,n}}` are
//! binary merge trees; a single whiskered 3-face transformation is a tree
//! rotation `((T1 T2) T3) -> (T1 (T2 T3))` carrying an instance of alpha,
//! lambda, rho, the unit-endomorphism face, or an identity. Every maximal
//! rotation path ends at the right comb, whose composite is `T^x`; the value
//! of `eta^x_C` is the common value of all paths from the grafted source
//! tree, and disagreement between paths is reported as a coherence failure
//! of the input rather than silently accepted.

use crate::catalan::CatalanSimplex;
use crate::error::{Error, Result};
use crate::fincat::{
    check_natural, functor_compose, functor_product, nat_hcomp, nat_product, nat_vcomp, product,
    FinCategory, Functor, Monoid, NatTrans,
};
use crate::mapcore::{strict_chain_subsets, MapData};
use crate::ordcomb::IndexSubset;
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct SkewStructure {
    base: FinCategory,
    tensor: Functor,
    unit: Functor,
    alpha: NatTrans,
    lambda: NatTrans,
    rho: NatTrans,
}

impl SkewStructure {
    pub fn new(
        base: FinCategory,
        tensor: Functor,
        unit: Functor,
        alpha: NatTrans,
        lambda: NatTrans,
        rho: NatTrans,
    ) -> Result<Self> {
        let id_a = Functor::identity(&base);
        let square = product(&[&base, &base]);
        if *tensor.src() != square || *tensor.tgt() != base {
            return Err(Error::BoundaryMismatch("tensor is not A x A -> A".into()));
        }
        if !unit.src().is_terminal() || *unit.tgt() != base {
            return Err(Error::BoundaryMismatch("unit is not I -> A".into()));
        }
        let left_assoc =
            functor_compose(&tensor, &functor_product(&[tensor.clone(), id_a.clone()]))?;
        let right_assoc =
            functor_compose(&tensor, &functor_product(&[id_a.clone(), tensor.clone()]))?;
        if *alpha.src() != left_assoc || *alpha.tgt() != right_assoc {
            return Err(Error::BoundaryMismatch(
                "alpha is not tensor(tensor x 1) => tensor(1 x tensor)".into(),
            ));
        }
        let unit_left = functor_compose(&tensor, &functor_product(&[unit.clone(), id_a.clone()]))?;
        if *lambda.src() != unit_left || *lambda.tgt() != id_a {
            return Err(Error::BoundaryMismatch(
                "lambda is not tensor(unit x 1) => 1_A".into(),
            ));
        }
        let unit_right = functor_compose(&tensor, &functor_product(&[id_a.clone(), unit.clone()]))?;
        if *rho.src() != id_a || *rho.tgt() != unit_right {
            return Err(Error::BoundaryMismatch(
                "rho is not 1_A => tensor(1 x unit)".into(),
            ));
        }
        Ok(SkewStructure {
            base,
            tensor,
            unit,
            alpha,
            lambda,
            rho,
        })
    }

    /// The strict structure generated by a finite monoid, read as a discrete
    /// or one-object category; alpha, lambda, rho are identities.
    pub fn strict_from_monoid(monoid: &Monoid, one_object: bool) -> Result<Self> {
        let base = if one_object {
            monoid.one_object_category()?
        } else {
            monoid.discrete_category()?
        };
        let square = product(&[&base, &base]);
        let fold2 = |joined: &str| -> String {
            let parts: Vec<&str> = joined.split(',').collect();
            monoid.fold(&parts).unwrap()
        };
        let tensor = Functor::new(
            square.clone(),
            base.clone(),
            square
                .objects()
                .iter()
                .map(|o| {
                    let image = if one_object {
                        "e".to_string()
                    } else {
                        fold2(o)
                    };
                    (o.clone(), image)
                })
                .collect(),
            square
                .morphism_ids()
                .map(|m| (m.clone(), fold2(m)))
                .collect(),
        )?;
        let unit_obj = if one_object {
            "e".to_string()
        } else {
            monoid.unit.clone()
        };
        let terminal = FinCategory::terminal();
        let unit = Functor::new(
            terminal.clone(),
            base.clone(),
            BTreeMap::from([("*".to_string(), unit_obj.clone())]),
            BTreeMap::from([(
                "*".to_string(),
                base.identity_of(&unit_obj).unwrap().to_string(),
            )]),
        )?;
        let id_a = Functor::identity(&base);
        let identity_components = |f: &Functor| -> BTreeMap<String, String> {
            f.src()
                .objects()
                .iter()
                .map(|o| {
                    let image = f.obj(o).unwrap();
                    (o.clone(), f.tgt().identity_of(image).unwrap().to_string())
                })
                .collect()
        };
        let left_assoc =
            functor_compose(&tensor, &functor_product(&[tensor.clone(), id_a.clone()]))?;
        let right_assoc =
            functor_compose(&tensor, &functor_product(&[id_a.clone(), tensor.clone()]))?;
        let alpha = NatTrans::new(
            left_assoc.clone(),
            right_assoc,
            identity_components(&left_assoc),
        )?;
        let unit_left = functor_compose(&tensor, &functor_product(&[unit.clone(), id_a.clone()]))?;
        let lambda = NatTrans::new(
            unit_left.clone(),
            id_a.clone(),
            identity_components(&unit_left),
        )?;
        let unit_right = functor_compose(&tensor, &functor_product(&[id_a.clone(), unit.clone()]))?;
        let rho = NatTrans::new(id_a.clone(), unit_right, identity_components(&id_a))?;
        SkewStructure::new(base, tensor, unit, alpha, lambda, rho)
    }

    /// Replace alpha's components, keeping its boundaries. Used to build
    /// pentagon-violating fixtures.
    pub fn with_alpha_components(mut self, components: BTreeMap<String, String>) -> Result<Self> {
        self.alpha = NatTrans::new(
            self.alpha.src().clone(),
            self.alpha.tgt().clone(),
            components,
        )?;
        Ok(self)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn tensor(&self) -> &Functor {
        &self.tensor
    }

    pub fn unit(&self) -> &Functor {
        &self.unit
    }

    pub fn alpha(&self) -> &NatTrans {
        &self.alpha
    }

    pub fn lambda(&self) -> &NatTrans {
        &self.lambda
    }

    pub fn rho(&self) -> &NatTrans {
        &self.rho
    }
}

/// The five coherence diagrams plus naturality of the three transformations.
pub fn skew_axioms(s: &SkewStructure) -> Report {
    let mut report = Report::new();
    for (name, t) in [("alpha", &s.alpha), ("lambda", &s.lambda), ("rho", &s.rho)] {
        let naturality = check_natural(t);
        if !naturality.pass() {
            report.push("skew-naturality", json!({ "transformation": name }));
        }
    }
    let id_a = Functor::identity(&s.base);
    let run = |report: &mut Report| -> Result<()> {
        // pentagon
        let tt1 = functor_product(&[s.tensor.clone(), id_a.clone(), id_a.clone()]);
        let t1t = functor_product(&[id_a.clone(), s.tensor.clone(), id_a.clone()]);
        let t11 = functor_product(&[id_a.clone(), id_a.clone(), s.tensor.clone()]);
        let step_outer = nat_hcomp(&s.alpha, &NatTrans::identity_on(&tt1))?;
        let step_inner = nat_hcomp(&s.alpha, &NatTrans::identity_on(&t11))?;
        let two_step = nat_vcomp(&step_inner, &step_outer)?;
        let s1 = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[s.alpha.clone(), NatTrans::identity_on(&id_a)]),
        )?;
        let s2 = nat_hcomp(&s.alpha, &NatTrans::identity_on(&t1t))?;
        let s3 = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[NatTrans::identity_on(&id_a), s.alpha.clone()]),
        )?;
        let three_step = nat_vcomp(&s3, &nat_vcomp(&s2, &s1)?)?;
        if two_step != three_step {
            let at = first_difference(&two_step, &three_step);
            report.push("pentagon", json!({ "at": at }));
        }

        // lambda_u . rho_u = 1_u
        let u_obj = s.unit.obj("*")?.to_string();
        let lam_u = s.lambda.component(&u_obj)?;
        let rho_u = s.rho.component(&u_obj)?;
        let composite = s.base.compose(lam_u, rho_u)?;
        if composite != s.base.identity_of(&u_obj)? {
            report.push("unit-circle", json!({ "at": u_obj }));
        }

        // lambda square: lambda_{ab} . alpha_{u,a,b} = lambda_a x 1_b
        let unit_slot = functor_product(&[s.unit.clone(), id_a.clone(), id_a.clone()]);
        let alpha_u = nat_hcomp(&s.alpha, &NatTrans::identity_on(&unit_slot))?;
        let lambda_after = nat_hcomp(&s.lambda, &NatTrans::identity_on(&s.tensor))?;
        let lhs = nat_vcomp(&lambda_after, &alpha_u)?;
        let rhs = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[s.lambda.clone(), NatTrans::identity_on(&id_a)]),
        )?;
        if lhs != rhs {
            report.push(
                "lambda-square",
                json!({ "at": first_difference(&lhs, &rhs) }),
            );
        }

        // rho square: alpha_{a,b,u} . rho_{ab} = 1_a x rho_b
        let unit_last = functor_product(&[id_a.clone(), id_a.clone(), s.unit.clone()]);
        let rho_whisk = nat_hcomp(&s.rho, &NatTrans::identity_on(&s.tensor))?;
        let alpha_last = nat_hcomp(&s.alpha, &NatTrans::identity_on(&unit_last))?;
        let lhs = nat_vcomp(&alpha_last, &rho_whisk)?;
        let rhs = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[NatTrans::identity_on(&id_a), s.rho.clone()]),
        )?;
        if lhs != rhs {
            report.push("rho-square", json!({ "at": first_difference(&lhs, &rhs) }));
        }

        // alpha triangle: (1_a x lambda_b) . alpha_{a,u,b} . (rho_a x 1_b) = 1
        let unit_mid = functor_product(&[id_a.clone(), s.unit.clone(), id_a.clone()]);
        let first = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[s.rho.clone(), NatTrans::identity_on(&id_a)]),
        )?;
        let second = nat_hcomp(&s.alpha, &NatTrans::identity_on(&unit_mid))?;
        let third = nat_hcomp(
            &NatTrans::identity_on(&s.tensor),
            &nat_product(&[NatTrans::identity_on(&id_a), s.lambda.clone()]),
        )?;
        let composite = nat_vcomp(&third, &nat_vcomp(&second, &first)?)?;
        if !composite.is_identity() {
            report.push(
                "alpha-triangle",
                json!({ "at": first_nonidentity(&composite) }),
            );
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.push("skew-axioms-error", json!({ "error": e.to_string() }));
    }
    report
}

fn first_difference(a: &NatTrans, b: &NatTrans) -> serde_json::Value {
    for (o, ca) in a.components() {
        if b.components().get(o) != Some(ca) {
            return json!({ "object": o, "lhs": ca, "rhs": b.components().get(o) });
        }
    }
    json!(null)
}

fn first_nonidentity(t: &NatTrans) -> serde_json::Value {
    for (o, c) in t.components() {
        let image = t.src().obj(o).unwrap();
        if t.src().tgt().identity_of(image).unwrap() != c {
            return json!({ "object": o, "component": c });
        }
    }
    json!(null)
}

/// A binary merge tree over the unit intervals of `[n]`: the shape of one
/// composite of 2-face images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf(usize),
    Node(usize, usize, usize, Box<Tree>, Box<Tree>),
}

impl Tree {
    fn right_comb(points: &[usize]) -> Tree {
        debug_assert!(points.len() >= 2);
        if points.len() == 2 {
            return Tree::interval(points[0], points[1]);
        }
        Tree::Node(
            points[0],
            points[1],
            *points.last().unwrap(),
            Box::new(Tree::interval(points[0], points[1])),
            Box::new(Tree::right_comb(&points[1..])),
        )
    }

    /// The right comb over the unit intervals of `[lo, hi]`.
    fn interval(lo: usize, hi: usize) -> Tree {
        if hi - lo == 1 {
            Tree::Leaf(lo)
        } else {
            let points: Vec<usize> = (lo..=hi).collect();
            Tree::right_comb(&points)
        }
    }

    /// Every binary merge tree over the unit intervals of `[lo, hi]`.
    fn all(lo: usize, hi: usize) -> Vec<Tree> {
        if hi - lo == 1 {
            return vec![Tree::Leaf(lo)];
        }
        let mut out = Vec::new();
        for mid in lo + 1..hi {
            for left in Tree::all(lo, mid) {
                for right in Tree::all(mid, hi) {
                    out.push(Tree::Node(
                        lo,
                        mid,
                        hi,
                        Box::new(left.clone()),
                        Box::new(right.clone()),
                    ));
                }
            }
        }
        out
    }
}

struct SkewEngine<'a> {
    s: &'a SkewStructure,
}

impl<'a> SkewEngine<'a> {
    fn leaf_cat(&self, x: &CatalanSimplex, i: usize) -> FinCategory {
        if x.edge(i, i + 1) == 1 {
            self.s.base.clone()
        } else {
            FinCategory::terminal()
        }
    }

    /// The functor assigned to the 2-face `x_{p,r,q}` by the five-case table.
    fn img2(&self, x: &CatalanSimplex, p: usize, r: usize, q: usize) -> Result<Functor> {
        let triple = (x.edge(p, r), x.edge(r, q), x.edge(p, q));
        match triple {
            (1, 1, 1) => Ok(self.s.tensor.clone()),
            (0, 0, 1) => Ok(self.s.unit.clone()),
            (0, 1, 1) | (1, 0, 1) => Ok(Functor::identity(&self.s.base)),
            (0, 0, 0) => Ok(Functor::identity(&FinCategory::terminal())),
            _ => Err(Error::InvalidSimplex(format!(
                "triple {triple:?} at ({p},{r},{q})"
            ))),
        }
    }

    fn composite(&self, x: &CatalanSimplex, t: &Tree) -> Result<Functor> {
        match t {
            Tree::Leaf(i) => Ok(Functor::identity(&self.leaf_cat(x, *i))),
            Tree::Node(p, r, q, left, right) => {
                let outer = self.img2(x, *p, *r, *q)?;
                let inner = functor_product(&[self.composite(x, left)?, self.composite(x, right)?]);
                functor_compose(&outer, &inner)
            }
        }
    }

    /// The transformation attached to the 3-face `x_{p,s,r,q}`:
    /// `img(x_{prq}) o (img(x_{psr}) x 1)  =>  img(x_{psq}) o (1 x img(x_{srq}))`,
    /// an instance of alpha, lambda, rho, the unit endomorphism, or an
    /// identity depending on the face.
    fn face3_nat(
        &self,
        x: &CatalanSimplex,
        p: usize,
        s: usize,
        r: usize,
        q: usize,
    ) -> Result<NatTrans> {
        let z = x.face(&IndexSubset::new(x.dim(), vec![p, s, r, q])?)?;
        if z == CatalanSimplex::mu(3) {
            return Ok(self.s.alpha.clone());
        }
        if z == CatalanSimplex::l() {
            return Ok(self.s.lambda.clone());
        }
        if z == CatalanSimplex::r() {
            return Ok(self.s.rho.clone());
        }
        // remaining cases: the spine-zero nondegenerate 3-simplex maps to the
        // identity on the unit picker, and degenerate 3-faces to identities
        // between equal composites
        let lhs = functor_compose(
            &self.img2(&z, 0, 2, 3)?,
            &functor_product(&[
                self.img2(&z, 0, 1, 2)?,
                Functor::identity(&if z.edge(2, 3) == 1 {
                    self.s.base.clone()
                } else {
                    FinCategory::terminal()
                }),
            ]),
        )?;
        let rhs = functor_compose(
            &self.img2(&z, 0, 1, 3)?,
            &functor_product(&[
                Functor::identity(&if z.edge(0, 1) == 1 {
                    self.s.base.clone()
                } else {
                    FinCategory::terminal()
                }),
                self.img2(&z, 1, 2, 3)?,
            ]),
        )?;
        if lhs != rhs {
            return Err(Error::Coherence(format!(
                "3-face {z} should carry an identity but its sides differ"
            )));
        }
        Ok(NatTrans::identity_on(&lhs))
    }

    /// All single rotations out of `t`, each with its whiskered
    /// transformation from `composite(t)` to the rotated composite.
    fn rotations(&self, x: &CatalanSimplex, t: &Tree) -> Result<Vec<(Tree, NatTrans)>> {
        let mut out = Vec::new();
        let Tree::Node(p, r, q, left, right) = t else {
            return Ok(out);
        };
        if let Tree::Node(p2, s, r2, l1, l2) = &**left {
            debug_assert_eq!((p2, r2), (p, r));
            let rotated = Tree::Node(
                *p,
                *s,
                *q,
                l1.clone(),
                Box::new(Tree::Node(*s, *r, *q, l2.clone(), right.clone())),
            );
            let core = self.face3_nat(x, *p, *s, *r, *q)?;
            let inner = functor_product(&[
                self.composite(x, l1)?,
                self.composite(x, l2)?,
                self.composite(x, right)?,
            ]);
            let theta = nat_hcomp(&core, &NatTrans::identity_on(&inner))?;
            out.push((rotated, theta));
        }
        let outer_id = NatTrans::identity_on(&self.img2(x, *p, *r, *q)?);
        for (l_new, theta_sub) in self.rotations(x, left)? {
            let tree_new = Tree::Node(*p, *r, *q, Box::new(l_new), right.clone());
            let wrapped = nat_hcomp(
                &outer_id,
                &nat_product(&[theta_sub, NatTrans::identity_on(&self.composite(x, right)?)]),
            )?;
            out.push((tree_new, wrapped));
        }
        for (r_new, theta_sub) in self.rotations(x, right)? {
            let tree_new = Tree::Node(*p, *r, *q, left.clone(), Box::new(r_new));
            let wrapped = nat_hcomp(
                &outer_id,
                &nat_product(&[NatTrans::identity_on(&self.composite(x, left)?), theta_sub]),
            )?;
            out.push((tree_new, wrapped));
        }
        Ok(out)
    }

    /// The common value of all rotation paths from `t` to the right comb,
    /// failing on any disagreement.
    fn path_value(
        &self,
        x: &CatalanSimplex,
        t: &Tree,
        comb: &Tree,
        memo: &mut BTreeMap<Tree, NatTrans>,
    ) -> Result<NatTrans> {
        if let Some(v) = memo.get(t) {
            return Ok(v.clone());
        }
        let value = if t == comb {
            NatTrans::identity_on(&self.composite(x, t)?)
        } else {
            let rotations = self.rotations(x, t)?;
            if rotations.is_empty() {
                return Err(Error::NoPath(format!(
                    "no rotation out of a non-normal composite at {x}"
                )));
            }
            let mut value: Option<NatTrans> = None;
            for (t2, theta) in rotations {
                let onward = self.path_value(x, &t2, comb, memo)?;
                let candidate = nat_vcomp(&onward, &theta)?;
                match &value {
                    None => value = Some(candidate),
                    Some(prev) if *prev == candidate => {}
                    Some(_) => {
                        return Err(Error::Coherence(format!("rotation paths disagree at {x}")))
                    }
                }
            }
            value.unwrap()
        };
        memo.insert(t.clone(), value.clone());
        Ok(value)
    }

    /// The source tree of `eta^x_C`: the comb over the subset's cut points
    /// with each coarse leaf replaced by the comb of its interval.
    fn graft(&self, c: &IndexSubset) -> Tree {
        Tree::right_comb(c.elements())
    }

    fn t_value(&self, x: &CatalanSimplex) -> Result<Functor> {
        match x.dim() {
            0 => Err(Error::Precondition("T starts at dimension 1".into())),
            1 => Ok(Functor::identity(&self.leaf_cat(x, 0))),
            n => {
                let points: Vec<usize> = (0..=n).collect();
                self.composite(x, &Tree::right_comb(&points))
            }
        }
    }
}

/// The classifying map for a skew structure: `T^x` is the right-nested
/// composite of 2-face images, `eta^x_C` the path-search value; every
/// rotation-path disagreement is an error naming the simplex.
pub fn skew_classify(s: &SkewStructure, max_dim: usize) -> Result<MapData> {
    let engine = SkewEngine { s };
    let mut t_table = BTreeMap::new();
    for n in 2..=max_dim {
        for x in CatalanSimplex::enumerate(n, true) {
            t_table.insert(x.clone(), engine.t_value(&x)?);
        }
    }
    let mut eta_table = BTreeMap::new();
    for n in 3..=max_dim {
        for x in CatalanSimplex::enumerate(n, true) {
            let points: Vec<usize> = (0..=n).collect();
            let comb = Tree::right_comb(&points);
            let mut memo = BTreeMap::new();
            // audit the whole rotation graph, not just the grafted sources:
            // every composite must reach T^x along path-independent values
            for t in Tree::all(0, n) {
                engine.path_value(&x, &t, &comb, &mut memo)?;
            }
            for c in strict_chain_subsets(n) {
                let source = engine.graft(&c);
                let eta = engine.path_value(&x, &source, &comb, &mut memo)?;
                eta_table.insert((x.clone(), c), eta);
            }
        }
    }
    MapData::new(max_dim, s.base.clone(), t_table, eta_table)
}

/// Compare the classifying data of two skew inputs: an echo of the
/// injectivity of the nerve embedding. Returns true when distinct inputs
/// produce distinct map data (and equal inputs equal data).
pub fn skew_embed_injectivity_probe(
    s1: &SkewStructure,
    s2: &SkewStructure,
    max_dim: usize,
) -> Result<bool> {
    let d1 = skew_classify(s1, max_dim)?;
    let d2 = skew_classify(s2, max_dim)?;
    Ok((d1 == d2) == (s1 == s2))
}
