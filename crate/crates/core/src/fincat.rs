//! Finite categories as composition tables, functors and natural
//! transformations as explicit total mappings, and the 2-categorical algebra
//! needed to evaluate pasting diagrams concretely.
//!
//! The cartesian monoidal structure on Cat is strictified by I-elision:
//! terminal factors are dropped from products and tuple ids are flat comma
//! joins, so `(A x B) x C = A x (B x C)` and `A x I = A = I x A` hold as
//! equalities of presented data. The comma is reserved as the tuple
//! separator; parsers reject it in user-supplied ids.

use crate::error::{Error, Result};
use crate::report::Report;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::sync::Arc;

const TERMINAL_ID: &str = "*";

/// Composition tables beyond this many composable pairs are not materialized.
/// Operations on large products only ever compose in their (small) targets.
const COMP_PAIR_LIMIT: usize = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorInfo {
    pub src: String,
    pub tgt: String,
}

/// A finite category presented by objects, morphisms, identities, and a
/// composition table keyed `(g, f) -> g o f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CategoryWire", into = "CategoryWire")]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: BTreeMap<String, MorInfo>,
    identities: BTreeMap<String, String>,
    comp: BTreeMap<(String, String), String>,
}

/// Wire form per the CLI schema.
#[derive(Serialize, Deserialize)]
struct CategoryWire {
    objects: Vec<String>,
    morphisms: Vec<MorphismWire>,
    identities: BTreeMap<String, String>,
    comp: Vec<(String, String, String)>,
}

#[derive(Serialize, Deserialize)]
struct MorphismWire {
    id: String,
    src: String,
    tgt: String,
}

impl From<FinCategory> for CategoryWire {
    fn from(c: FinCategory) -> Self {
        CategoryWire {
            objects: c.objects.clone(),
            morphisms: c
                .morphisms
                .iter()
                .map(|(id, info)| MorphismWire {
                    id: id.clone(),
                    src: info.src.clone(),
                    tgt: info.tgt.clone(),
                })
                .collect(),
            identities: c.identities.clone(),
            comp: c
                .comp
                .iter()
                .map(|((g, f), gf)| (g.clone(), f.clone(), gf.clone()))
                .collect(),
        }
    }
}

impl TryFrom<CategoryWire> for FinCategory {
    type Error = Error;

    fn try_from(wire: CategoryWire) -> Result<Self> {
        FinCategory::new(
            wire.objects,
            wire.morphisms
                .into_iter()
                .map(|m| (m.id, m.src, m.tgt))
                .collect(),
            wire.identities,
            wire.comp,
        )
    }
}

impl FinCategory {
    /// Build a category from presented data. Referential integrity is
    /// enforced here; the laws themselves are the business of
    /// [`check_category`], so that broken tables can be represented and
    /// reported on.
    pub fn new(
        mut objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: BTreeMap<String, String>,
        comp: Vec<(String, String, String)>,
    ) -> Result<Self> {
        objects.sort();
        objects.dedup();
        if objects.is_empty() {
            return Err(Error::InvalidCategory("no objects".into()));
        }
        let mut mor_table = BTreeMap::new();
        for (id, src, tgt) in morphisms {
            if !objects.contains(&src) || !objects.contains(&tgt) {
                return Err(Error::InvalidCategory(format!(
                    "morphism {id} has unknown endpoint"
                )));
            }
            if mor_table.insert(id.clone(), MorInfo { src, tgt }).is_some() {
                return Err(Error::InvalidCategory(format!(
                    "duplicate morphism id {id}"
                )));
            }
        }
        for o in &objects {
            let Some(id_mor) = identities.get(o) else {
                return Err(Error::InvalidCategory(format!(
                    "object {o} has no identity"
                )));
            };
            let Some(info) = mor_table.get(id_mor) else {
                return Err(Error::InvalidCategory(format!(
                    "identity of {o} is not a morphism"
                )));
            };
            if info.src != *o || info.tgt != *o {
                return Err(Error::InvalidCategory(format!(
                    "identity of {o} has wrong endpoints"
                )));
            }
        }
        let mut comp_table = BTreeMap::new();
        for (g, f, gf) in comp {
            if !mor_table.contains_key(&g)
                || !mor_table.contains_key(&f)
                || !mor_table.contains_key(&gf)
            {
                return Err(Error::InvalidCategory(format!(
                    "composition entry ({g}, {f}) references unknown morphisms"
                )));
            }
            comp_table.insert((g, f), gf);
        }
        Ok(FinCategory {
            objects,
            morphisms: mor_table,
            identities,
            comp: comp_table,
        })
    }

    /// The terminal category `I`.
    pub fn terminal() -> Self {
        FinCategory {
            objects: vec![TERMINAL_ID.to_string()],
            morphisms: BTreeMap::from([(
                TERMINAL_ID.to_string(),
                MorInfo {
                    src: TERMINAL_ID.to_string(),
                    tgt: TERMINAL_ID.to_string(),
                },
            )]),
            identities: BTreeMap::from([(TERMINAL_ID.to_string(), TERMINAL_ID.to_string())]),
            comp: BTreeMap::from([(
                (TERMINAL_ID.to_string(), TERMINAL_ID.to_string()),
                TERMINAL_ID.to_string(),
            )]),
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.objects.len() == 1 && self.morphisms.len() == 1
    }

    /// The indiscrete category on the given objects: exactly one morphism
    /// `a>b` between any ordered pair.
    pub fn indiscrete(names: &[&str]) -> Result<Self> {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut identities = BTreeMap::new();
        for a in &objects {
            for b in &objects {
                morphisms.push((format!("{a}>{b}"), a.clone(), b.clone()));
            }
            identities.insert(a.clone(), format!("{a}>{a}"));
        }
        let mut comp = Vec::new();
        for a in &objects {
            for b in &objects {
                for c in &objects {
                    comp.push((format!("{b}>{c}"), format!("{a}>{b}"), format!("{a}>{c}")));
                }
            }
        }
        FinCategory::new(objects, morphisms, identities, comp)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = &String> {
        self.morphisms.keys()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn mor_info(&self, id: &str) -> Result<&MorInfo> {
        self.morphisms
            .get(id)
            .ok_or_else(|| Error::InvalidCategory(format!("unknown morphism {id}")))
    }

    pub fn identity_of(&self, obj: &str) -> Result<&str> {
        self.identities
            .get(obj)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("unknown object {obj}")))
    }

    /// `g o f`, applying `f` first.
    pub fn compose(&self, g: &str, f: &str) -> Result<&str> {
        self.comp
            .get(&(g.to_string(), f.to_string()))
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("no composite for ({g}, {f})")))
    }

    pub fn hom(&self, a: &str, b: &str) -> Vec<&String> {
        self.morphisms
            .iter()
            .filter(|(_, info)| info.src == a && info.tgt == b)
            .map(|(id, _)| id)
            .collect()
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: &str) -> Result<String> {
        let info = self.mor_info(f)?;
        for g in self.hom(&info.tgt, &info.src) {
            let gf_ok = self
                .compose(g, f)
                .map(|m| m == self.identity_of(&info.src).unwrap());
            let fg_ok = self
                .compose(f, g)
                .map(|m| m == self.identity_of(&info.tgt).unwrap());
            if gf_ok == Ok(true) && fg_ok == Ok(true) {
                return Ok(g.clone());
            }
        }
        Err(Error::NotInvertible(f.to_string()))
    }
}

fn join_or_terminal(parts: &[&str]) -> String {
    if parts.is_empty() {
        TERMINAL_ID.to_string()
    } else {
        parts.join(",")
    }
}

fn cartesian(lists: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![vec![]];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for combo in &out {
            for item in list {
                let mut c = combo.clone();
                c.push(item.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// The n-ary product with terminal factors elided and nested tuples
/// flattened, so the product is strictly associative and unital.
pub fn product(factors: &[&FinCategory]) -> FinCategory {
    let live: Vec<&FinCategory> = factors
        .iter()
        .copied()
        .filter(|c| !c.is_terminal())
        .collect();
    match live.len() {
        0 => FinCategory::terminal(),
        1 => live[0].clone(),
        _ => {
            let obj_lists: Vec<Vec<String>> = live.iter().map(|c| c.objects.clone()).collect();
            let objects: Vec<String> = cartesian(&obj_lists)
                .iter()
                .map(|combo| {
                    combo
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let mor_lists: Vec<Vec<String>> = live
                .iter()
                .map(|c| c.morphisms.keys().cloned().collect())
                .collect();
            let mor_tuples = cartesian(&mor_lists);
            let mut morphisms = BTreeMap::new();
            for combo in &mor_tuples {
                let id = combo.join(",");
                let src = combo
                    .iter()
                    .zip(&live)
                    .map(|(m, c)| c.morphisms[m].src.as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                let tgt = combo
                    .iter()
                    .zip(&live)
                    .map(|(m, c)| c.morphisms[m].tgt.as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                morphisms.insert(id, MorInfo { src, tgt });
            }
            let mut identities = BTreeMap::new();
            for combo in cartesian(&obj_lists) {
                let obj = combo.join(",");
                let id_mor = combo
                    .iter()
                    .zip(&live)
                    .map(|(o, c)| c.identities[o].as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                identities.insert(obj, id_mor);
            }
            // compose componentwise from the tuples; factor ids may contain
            // commas themselves, so the joined id is never split back
            let mut comp = BTreeMap::new();
            if mor_tuples.len() * mor_tuples.len() <= COMP_PAIR_LIMIT {
                let keyed: Vec<(String, &Vec<String>)> = mor_tuples
                    .iter()
                    .map(|tuple| (tuple.join(","), tuple))
                    .collect();
                let mut by_src: BTreeMap<&String, Vec<usize>> = BTreeMap::new();
                for (i, (g_id, _)) in keyed.iter().enumerate() {
                    by_src.entry(&morphisms[g_id].src).or_default().push(i);
                }
                for (f_id, f_tuple) in &keyed {
                    let f_tgt = &morphisms[f_id].tgt;
                    let Some(candidates) = by_src.get(f_tgt) else {
                        continue;
                    };
                    for &gi in candidates {
                        let (g_id, g_tuple) = &keyed[gi];
                        let mut parts = Vec::with_capacity(live.len());
                        let mut ok = true;
                        for ((g, f), c) in g_tuple.iter().zip(*f_tuple).zip(&live) {
                            match c.compose(g, f) {
                                Ok(gf) => parts.push(gf),
                                Err(_) => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            comp.insert((g_id.clone(), f_id.clone()), parts.join(","));
                        }
                    }
                }
            }
            let mut objects = objects;
            objects.sort();
            FinCategory {
                objects,
                morphisms,
                identities,
                comp,
            }
        }
    }
}

/// A functor as a pair of total mappings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    src: Arc<FinCategory>,
    tgt: Arc<FinCategory>,
    obj_map: BTreeMap<String, String>,
    mor_map: BTreeMap<String, String>,
}

impl Serialize for Functor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("obj_map", &self.obj_map)?;
        map.serialize_entry("mor_map", &self.mor_map)?;
        map.end()
    }
}

impl Functor {
    pub fn new(
        src: FinCategory,
        tgt: FinCategory,
        obj_map: BTreeMap<String, String>,
        mor_map: BTreeMap<String, String>,
    ) -> Result<Self> {
        for o in &src.objects {
            let Some(image) = obj_map.get(o) else {
                return Err(Error::InvalidCategory(format!("functor misses object {o}")));
            };
            if !tgt.objects.contains(image) {
                return Err(Error::InvalidCategory(format!(
                    "functor sends {o} outside the target"
                )));
            }
        }
        for m in src.morphisms.keys() {
            let Some(image) = mor_map.get(m) else {
                return Err(Error::InvalidCategory(format!(
                    "functor misses morphism {m}"
                )));
            };
            if !tgt.morphisms.contains_key(image) {
                return Err(Error::InvalidCategory(format!(
                    "functor sends {m} outside the target"
                )));
            }
        }
        Ok(Functor {
            src: Arc::new(src),
            tgt: Arc::new(tgt),
            obj_map,
            mor_map,
        })
    }

    pub fn identity(cat: &FinCategory) -> Self {
        Functor {
            src: Arc::new(cat.clone()),
            tgt: Arc::new(cat.clone()),
            obj_map: cat.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            mor_map: cat
                .morphisms
                .keys()
                .map(|m| (m.clone(), m.clone()))
                .collect(),
        }
    }

    pub fn src(&self) -> &FinCategory {
        &self.src
    }

    pub fn tgt(&self) -> &FinCategory {
        &self.tgt
    }

    pub fn obj(&self, o: &str) -> Result<&str> {
        self.obj_map
            .get(o)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("functor undefined on object {o}")))
    }

    pub fn mor(&self, m: &str) -> Result<&str> {
        self.mor_map
            .get(m)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("functor undefined on morphism {m}")))
    }

    pub fn obj_table(&self) -> &BTreeMap<String, String> {
        &self.obj_map
    }

    pub fn mor_table(&self) -> &BTreeMap<String, String> {
        &self.mor_map
    }

    pub fn is_identity_functor(&self) -> bool {
        self.src == self.tgt
            && self.obj_map.iter().all(|(a, b)| a == b)
            && self.mor_map.iter().all(|(a, b)| a == b)
    }
}

/// `outer o inner`, applying `inner` first.
pub fn functor_compose(outer: &Functor, inner: &Functor) -> Result<Functor> {
    if inner.tgt != outer.src {
        return Err(Error::BoundaryMismatch(
            "functor composition: middle categories differ".into(),
        ));
    }
    let obj_map = inner
        .obj_map
        .iter()
        .map(|(o, mid)| Ok((o.clone(), outer.obj(mid)?.to_string())))
        .collect::<Result<_>>()?;
    let mor_map = inner
        .mor_map
        .iter()
        .map(|(m, mid)| Ok((m.clone(), outer.mor(mid)?.to_string())))
        .collect::<Result<_>>()?;
    Ok(Functor {
        src: inner.src.clone(),
        tgt: outer.tgt.clone(),
        obj_map,
        mor_map,
    })
}

/// Pointwise product of functors, with I-elision on both sides.
pub fn functor_product(factors: &[Functor]) -> Functor {
    if factors.len() == 1 {
        return factors[0].clone();
    }
    let srcs: Vec<&FinCategory> = factors.iter().map(|f| f.src()).collect();
    let tgts: Vec<&FinCategory> = factors.iter().map(|f| f.tgt()).collect();
    let src = product(&srcs);
    let tgt = product(&tgts);

    let live_src: Vec<usize> = (0..factors.len())
        .filter(|&i| !factors[i].src().is_terminal())
        .collect();
    let in_lists: Vec<Vec<String>> = live_src
        .iter()
        .map(|&i| factors[i].src().objects.to_vec())
        .collect();
    let mut obj_map = BTreeMap::new();
    for combo in cartesian(&in_lists) {
        let key = join_or_terminal(&combo.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut images = Vec::new();
        let mut slot = 0;
        for (i, f) in factors.iter().enumerate() {
            let input = if live_src.contains(&i) {
                let v = combo[slot].clone();
                slot += 1;
                v
            } else {
                f.src().objects[0].clone()
            };
            let image = f.obj(&input).unwrap().to_string();
            if !f.tgt().is_terminal() {
                images.push(image);
            }
        }
        obj_map.insert(
            key,
            join_or_terminal(&images.iter().map(|s| s.as_str()).collect::<Vec<_>>()),
        );
    }
    let in_mor_lists: Vec<Vec<String>> = live_src
        .iter()
        .map(|&i| factors[i].src().morphisms.keys().cloned().collect())
        .collect();
    let mut mor_map = BTreeMap::new();
    for combo in cartesian(&in_mor_lists) {
        let key = join_or_terminal(&combo.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut images = Vec::new();
        let mut slot = 0;
        for (i, f) in factors.iter().enumerate() {
            let input = if live_src.contains(&i) {
                let v = combo[slot].clone();
                slot += 1;
                v
            } else {
                f.src().morphisms.keys().next().unwrap().clone()
            };
            let image = f.mor(&input).unwrap().to_string();
            if !f.tgt().is_terminal() {
                images.push(image);
            }
        }
        mor_map.insert(
            key,
            join_or_terminal(&images.iter().map(|s| s.as_str()).collect::<Vec<_>>()),
        );
    }
    Functor {
        src: Arc::new(src),
        tgt: Arc::new(tgt),
        obj_map,
        mor_map,
    }
}

/// A natural transformation as a total component mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    src: Functor,
    tgt: Functor,
    components: BTreeMap<String, String>,
}

impl Serialize for NatTrans {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("components", &self.components)?;
        map.end()
    }
}

impl NatTrans {
    /// Shape validation: parallel functors and well-typed total components.
    /// Naturality is a law, checked by [`check_natural`].
    pub fn new(src: Functor, tgt: Functor, components: BTreeMap<String, String>) -> Result<Self> {
        if src.src != tgt.src || src.tgt != tgt.tgt {
            return Err(Error::BoundaryMismatch(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        for o in src.src().objects() {
            let Some(c) = components.get(o) else {
                return Err(Error::InvalidCategory(format!("missing component at {o}")));
            };
            let info = src.tgt().mor_info(c)?;
            if info.src != src.obj(o)? || info.tgt != tgt.obj(o)? {
                return Err(Error::BoundaryMismatch(format!(
                    "component at {o} has endpoints {} -> {}, expected {} -> {}",
                    info.src,
                    info.tgt,
                    src.obj(o)?,
                    tgt.obj(o)?
                )));
            }
        }
        Ok(NatTrans {
            src,
            tgt,
            components,
        })
    }

    pub fn identity_on(f: &Functor) -> Self {
        let components = f
            .src()
            .objects()
            .iter()
            .map(|o| {
                let image = f.obj(o).unwrap();
                (o.clone(), f.tgt().identity_of(image).unwrap().to_string())
            })
            .collect();
        NatTrans {
            src: f.clone(),
            tgt: f.clone(),
            components,
        }
    }

    pub fn src(&self) -> &Functor {
        &self.src
    }

    pub fn tgt(&self) -> &Functor {
        &self.tgt
    }

    pub fn component(&self, o: &str) -> Result<&str> {
        self.components
            .get(o)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("no component at {o}")))
    }

    pub fn components(&self) -> &BTreeMap<String, String> {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt
            && self.components.iter().all(|(o, c)| {
                let image = self.src.obj(o).unwrap();
                self.src.tgt().identity_of(image).unwrap() == c
            })
    }

    /// Componentwise inverse, when every component is invertible.
    pub fn invert(&self) -> Result<NatTrans> {
        let components = self
            .components
            .iter()
            .map(|(o, c)| Ok((o.clone(), self.src.tgt().inverse(c)?)))
            .collect::<Result<_>>()?;
        Ok(NatTrans {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            components,
        })
    }
}

/// Vertical composition `second . first`.
pub fn nat_vcomp(second: &NatTrans, first: &NatTrans) -> Result<NatTrans> {
    if first.tgt != second.src {
        return Err(Error::BoundaryMismatch(
            "vertical composition: middle functor differs".into(),
        ));
    }
    let cat = first.src.tgt();
    let components = first
        .components
        .iter()
        .map(|(o, c1)| {
            let c2 = second.component(o)?;
            Ok((o.clone(), cat.compose(c2, c1)?.to_string()))
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans {
        src: first.src.clone(),
        tgt: second.tgt.clone(),
        components,
    })
}

/// Horizontal composition `outer o inner`: `inner: F => G : C -> D`,
/// `outer: H => K : D -> E`, giving `H o F => K o G`.
pub fn nat_hcomp(outer: &NatTrans, inner: &NatTrans) -> Result<NatTrans> {
    if inner.src.tgt != outer.src.src {
        return Err(Error::BoundaryMismatch(
            "horizontal composition: inner target differs from outer source".into(),
        ));
    }
    let e = outer.src.tgt();
    let src = functor_compose(&outer.src, &inner.src)?;
    let tgt = functor_compose(&outer.tgt, &inner.tgt)?;
    let components = inner
        .src
        .src()
        .objects()
        .iter()
        .map(|c| {
            let k_of_inner = outer.tgt.mor(inner.component(c)?)?;
            let outer_at = outer.component(inner.src.obj(c)?)?;
            Ok((c.clone(), e.compose(k_of_inner, outer_at)?.to_string()))
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans {
        src,
        tgt,
        components,
    })
}

/// Pointwise product of transformations, with I-elision on both sides.
pub fn nat_product(factors: &[NatTrans]) -> NatTrans {
    if factors.len() == 1 {
        return factors[0].clone();
    }
    let src = functor_product(&factors.iter().map(|t| t.src.clone()).collect::<Vec<_>>());
    let tgt = functor_product(&factors.iter().map(|t| t.tgt.clone()).collect::<Vec<_>>());
    let live_src: Vec<usize> = (0..factors.len())
        .filter(|&i| !factors[i].src.src().is_terminal())
        .collect();
    let in_lists: Vec<Vec<String>> = live_src
        .iter()
        .map(|&i| factors[i].src.src().objects().to_vec())
        .collect();
    let mut components = BTreeMap::new();
    for combo in cartesian(&in_lists) {
        let key = join_or_terminal(&combo.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut parts = Vec::new();
        let mut slot = 0;
        for (i, t) in factors.iter().enumerate() {
            let at = if live_src.contains(&i) {
                let v = combo[slot].clone();
                slot += 1;
                v
            } else {
                t.src.src().objects()[0].clone()
            };
            let piece = t.component(&at).unwrap().to_string();
            if !t.src.tgt().is_terminal() {
                parts.push(piece);
            }
        }
        components.insert(
            key,
            join_or_terminal(&parts.iter().map(|s| s.as_str()).collect::<Vec<_>>()),
        );
    }
    NatTrans {
        src,
        tgt,
        components,
    }
}

/// Whisker `t` with the functor `f` on the inside: `t o 1_f`.
pub fn whisker_inner(t: &NatTrans, f: &Functor) -> Result<NatTrans> {
    nat_hcomp(t, &NatTrans::identity_on(f))
}

/// Whisker `t` with the functor `f` on the outside: `1_f o t`.
pub fn whisker_outer(f: &Functor, t: &NatTrans) -> Result<NatTrans> {
    nat_hcomp(&NatTrans::identity_on(f), t)
}

/// All natural transformations `f => g`, by backtracking over components
/// with naturality pruning. `limit` bounds the number collected.
pub fn all_nat_trans(f: &Functor, g: &Functor, limit: usize) -> Result<Vec<NatTrans>> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(Error::BoundaryMismatch(
            "searching transformations between non-parallel functors".into(),
        ));
    }
    let objs = f.src().objects().to_vec();
    let mut found = Vec::new();
    let mut partial: BTreeMap<String, String> = BTreeMap::new();
    // arrows indexed by the objects they touch, so the pruning only scans
    // the neighborhood of the newest assignment
    let mut touching: BTreeMap<String, Vec<(String, MorInfo)>> = BTreeMap::new();
    for (m, info) in f.src().morphisms.iter() {
        touching
            .entry(info.src.clone())
            .or_default()
            .push((m.clone(), info.clone()));
        if info.tgt != info.src {
            touching
                .entry(info.tgt.clone())
                .or_default()
                .push((m.clone(), info.clone()));
        }
    }

    fn natural_so_far(
        f: &Functor,
        g: &Functor,
        touching: &BTreeMap<String, Vec<(String, MorInfo)>>,
        partial: &BTreeMap<String, String>,
        newest: &str,
    ) -> bool {
        let cat = f.tgt();
        let Some(arrows) = touching.get(newest) else {
            return true;
        };
        for (m, info) in arrows {
            let (a, b) = (&info.src, &info.tgt);
            if !partial.contains_key(a) || !partial.contains_key(b) {
                continue;
            }
            let lhs = cat.compose(g.mor(m).unwrap(), &partial[a]);
            let rhs = cat.compose(&partial[b], f.mor(m).unwrap());
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => return false,
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &Functor,
        g: &Functor,
        objs: &[String],
        idx: usize,
        touching: &BTreeMap<String, Vec<(String, MorInfo)>>,
        partial: &mut BTreeMap<String, String>,
        found: &mut Vec<NatTrans>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if idx == objs.len() {
            found.push(NatTrans {
                src: f.clone(),
                tgt: g.clone(),
                components: partial.clone(),
            });
            return;
        }
        let o = &objs[idx];
        let candidates: Vec<String> = f
            .tgt()
            .hom(f.obj(o).unwrap(), g.obj(o).unwrap())
            .into_iter()
            .cloned()
            .collect();
        for c in candidates {
            partial.insert(o.clone(), c);
            if natural_so_far(f, g, touching, partial, o) {
                rec(f, g, objs, idx + 1, touching, partial, found, limit);
            }
            partial.remove(o);
        }
    }

    rec(f, g, &objs, 0, &touching, &mut partial, &mut found, limit);
    Ok(found)
}

/// The unique natural transformation `f => g`, failing if there are none or
/// several.
pub fn unique_nat_trans(f: &Functor, g: &Functor) -> Result<NatTrans> {
    let mut found = all_nat_trans(f, g, 2)?;
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::NoPath(
            "no natural transformation between the given functors".into(),
        )),
        _ => Err(Error::Coherence(
            "multiple natural transformations where a unique one was required".into(),
        )),
    }
}

pub fn check_category(c: &FinCategory) -> Report {
    let mut report = Report::new();
    for (m, info) in &c.morphisms {
        let id_src = c.identities.get(&info.src);
        let id_tgt = c.identities.get(&info.tgt);
        match (id_src, id_tgt) {
            (Some(i_s), Some(i_t)) => {
                if c.compose(m, i_s).ok() != Some(m) {
                    report.push("right-identity", json!({ "morphism": m }));
                }
                if c.compose(i_t, m).ok() != Some(m) {
                    report.push("left-identity", json!({ "morphism": m }));
                }
            }
            _ => report.push("identity-missing", json!({ "morphism": m })),
        }
    }
    for ((g, f), gf) in &c.comp {
        let (gi, fi) = (&c.morphisms[g], &c.morphisms[f]);
        if gi.src != fi.tgt {
            report.push("comp-noncomposable", json!({ "g": g, "f": f }));
            continue;
        }
        let gfi = &c.morphisms[gf];
        if gfi.src != fi.src || gfi.tgt != gi.tgt {
            report.push("comp-endpoints", json!({ "g": g, "f": f, "gf": gf }));
        }
    }
    for (f, fi) in &c.morphisms {
        for (g, gi) in &c.morphisms {
            if gi.src != fi.tgt {
                continue;
            }
            if c.compose(g, f).is_err() {
                report.push("comp-missing", json!({ "g": g, "f": f }));
            }
        }
    }
    for (f, fi) in &c.morphisms {
        for (g, gi) in &c.morphisms {
            if gi.src != fi.tgt {
                continue;
            }
            for (h, hi) in &c.morphisms {
                if hi.src != gi.tgt {
                    continue;
                }
                let left = c
                    .compose(h, g)
                    .and_then(|hg| c.compose(hg, f))
                    .map(|s| s.to_string());
                let right = c
                    .compose(g, f)
                    .and_then(|gf| c.compose(h, gf))
                    .map(|s| s.to_string());
                if left.is_err() || left.as_ref().ok() != right.as_ref().ok() {
                    report.push("assoc", json!({ "h": h, "g": g, "f": f }));
                }
            }
        }
    }
    report
}

pub fn check_functor(f: &Functor) -> Report {
    let mut report = Report::new();
    for (m, info) in &f.src().morphisms {
        let image = f.mor(m).unwrap();
        let image_info = &f.tgt().morphisms[image];
        if f.obj(&info.src).unwrap() != image_info.src
            || f.obj(&info.tgt).unwrap() != image_info.tgt
        {
            report.push("functor-endpoints", json!({ "morphism": m }));
        }
    }
    for o in f.src().objects() {
        let id_src = f.src().identity_of(o).unwrap();
        let id_tgt = f.tgt().identity_of(f.obj(o).unwrap()).unwrap();
        if f.mor(id_src).unwrap() != id_tgt {
            report.push("functor-identity", json!({ "object": o }));
        }
    }
    for (m1, i1) in &f.src().morphisms {
        for (m2, i2) in &f.src().morphisms {
            if i2.src != i1.tgt {
                continue;
            }
            let Ok(composite) = f.src().compose(m2, m1) else {
                continue;
            };
            let lhs = f.mor(composite).unwrap();
            let rhs = f.tgt().compose(f.mor(m2).unwrap(), f.mor(m1).unwrap()).ok();
            if rhs != Some(lhs) {
                report.push("functor-composition", json!({ "g": m2, "f": m1 }));
            }
        }
    }
    report
}

pub fn check_natural(t: &NatTrans) -> Report {
    let mut report = Report::new();
    let f = &t.src;
    let g = &t.tgt;
    let cat = f.tgt();
    for (m, info) in &f.src().morphisms {
        let ca = t.component(&info.src).unwrap();
        let cb = t.component(&info.tgt).unwrap();
        let lhs = cat.compose(g.mor(m).unwrap(), ca).map(|s| s.to_string());
        let rhs = cat.compose(cb, f.mor(m).unwrap()).map(|s| s.to_string());
        if lhs.is_err() || lhs.as_ref().ok() != rhs.as_ref().ok() {
            report.push("naturality", json!({ "morphism": m }));
        }
    }
    report
}

/// A finite monoid presented by a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monoid {
    pub elements: Vec<String>,
    pub op: BTreeMap<(String, String), String>,
    pub unit: String,
}

impl Monoid {
    pub fn cyclic(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut op = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                op.insert((a.to_string(), b.to_string()), ((a + b) % n).to_string());
            }
        }
        Monoid {
            elements,
            op,
            unit: "0".to_string(),
        }
    }

    pub fn apply(&self, a: &str, b: &str) -> Result<&str> {
        self.op
            .get(&(a.to_string(), b.to_string()))
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("monoid op undefined on ({a}, {b})")))
    }

    /// Fold a sequence by the monoid operation, unit for the empty sequence.
    pub fn fold(&self, parts: &[&str]) -> Result<String> {
        let mut acc = self.unit.clone();
        for p in parts {
            acc = self.apply(&acc, p)?.to_string();
        }
        Ok(acc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidCategory("monoid needs elements".into()));
        }
        for e in &self.elements {
            if e.is_empty() || e.contains(',') {
                return Err(Error::InvalidCategory(format!("bad element name {e:?}")));
            }
        }
        if !self.elements.contains(&self.unit) {
            return Err(Error::InvalidCategory("monoid unit not an element".into()));
        }
        for a in &self.elements {
            for b in &self.elements {
                let ab = self.apply(a, b)?;
                if !self.elements.iter().any(|e| e == ab) {
                    return Err(Error::InvalidCategory(format!("op({a},{b}) not closed")));
                }
            }
            if self.apply(&self.unit, a)? != a || self.apply(a, &self.unit)? != a {
                return Err(Error::InvalidCategory(format!("unit law fails at {a}")));
            }
        }
        for a in &self.elements {
            for b in &self.elements {
                for c in &self.elements {
                    let left = self.apply(self.apply(a, b)?, c)?;
                    let right = self.apply(a, self.apply(b, c)?)?.to_string();
                    if left != right {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-object category with this monoid as its endomorphisms.
    pub fn one_object_category(&self) -> Result<FinCategory> {
        self.validate()?;
        let obj = "e".to_string();
        let morphisms = self
            .elements
            .iter()
            .map(|m| (m.clone(), obj.clone(), obj.clone()))
            .collect();
        let comp = self
            .elements
            .iter()
            .flat_map(|g| {
                self.elements
                    .iter()
                    .map(|f| (g.clone(), f.clone(), self.apply(g, f).unwrap().to_string()))
                    .collect::<Vec<_>>()
            })
            .collect();
        FinCategory::new(
            vec![obj.clone()],
            morphisms,
            BTreeMap::from([(obj, self.unit.clone())]),
            comp,
        )
    }

    /// The discrete category on the elements; morphism ids reuse object names.
    pub fn discrete_category(&self) -> Result<FinCategory> {
        self.validate()?;
        let morphisms = self
            .elements
            .iter()
            .map(|e| (e.clone(), e.clone(), e.clone()))
            .collect();
        let identities = self
            .elements
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        let comp = self
            .elements
            .iter()
            .map(|e| (e.clone(), e.clone(), e.clone()))
            .collect();
        FinCategory::new(self.elements.clone(), morphisms, identities, comp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2() -> FinCategory {
        Monoid::cyclic(2).one_object_category().unwrap()
    }

    fn chain2() -> FinCategory {
        // the poset 0 -> 1: objects a, b; one non-identity arrow f
        FinCategory::new(
            vec!["a".into(), "b".into()],
            vec![
                ("ida".into(), "a".into(), "a".into()),
                ("idb".into(), "b".into(), "b".into()),
                ("f".into(), "a".into(), "b".into()),
            ],
            BTreeMap::from([("a".into(), "ida".into()), ("b".into(), "idb".into())]),
            vec![
                ("ida".into(), "ida".into(), "ida".into()),
                ("idb".into(), "idb".into(), "idb".into()),
                ("f".into(), "ida".into(), "f".into()),
                ("idb".into(), "f".into(), "f".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn terminal_shape() {
        let i = FinCategory::terminal();
        assert_eq!(i.objects().len(), 1);
        assert_eq!(i.morphism_count(), 1);
        assert!(i.is_terminal());
        assert!(check_category(&i).pass());
    }

    #[test]
    fn product_elides_terminal() {
        let a = z2();
        let i = FinCategory::terminal();
        assert_eq!(product(&[&a, &i]), a);
        assert_eq!(product(&[&i, &a]), a);
        assert_eq!(product(&[&a, &i, &chain2()]), product(&[&a, &chain2()]));
        assert_eq!(product(&[]), i);
        assert_eq!(product(&[&i, &i]), i);
    }

    #[test]
    fn product_of_z2_z2() {
        let a = z2();
        let p = product(&[&a, &a]);
        assert_eq!(p.objects().len(), 1);
        assert_eq!(p.morphism_count(), 4);
        assert!(check_category(&p).pass());
        assert_eq!(p.compose("1,0", "1,1").unwrap(), "0,1");
    }

    #[test]
    fn product_strictly_associative() {
        let a = z2();
        let b = chain2();
        let c = Monoid::cyclic(3).one_object_category().unwrap();
        let ab = product(&[&a, &b]);
        let bc = product(&[&b, &c]);
        assert_eq!(product(&[&ab, &c]), product(&[&a, &b, &c]));
        assert_eq!(product(&[&a, &bc]), product(&[&a, &b, &c]));
    }

    #[test]
    fn functor_compose_identity() {
        let a = z2();
        let f = Functor::identity(&a);
        assert_eq!(functor_compose(&Functor::identity(&a), &f).unwrap(), f);
    }

    #[test]
    fn functor_product_elision() {
        let a = z2();
        let f = Functor::identity(&a);
        let unit = Functor::identity(&FinCategory::terminal());
        assert_eq!(functor_product(&[unit.clone(), f.clone(), unit.clone()]), f);
        assert_eq!(functor_product(&[]), unit);
    }

    fn xor_functor() -> Functor {
        // the multiplication functor Z2 x Z2 -> Z2
        let a = z2();
        let p = product(&[&a, &a]);
        let mor_map = p
            .morphism_ids()
            .map(|m| {
                let parts: Vec<&str> = m.split(',').collect();
                let x: u8 = parts[0].parse().unwrap();
                let y: u8 = parts[1].parse().unwrap();
                (m.clone(), ((x + y) % 2).to_string())
            })
            .collect();
        Functor::new(
            p.clone(),
            a,
            BTreeMap::from([("e,e".to_string(), "e".to_string())]),
            mor_map,
        )
        .unwrap()
    }

    #[test]
    fn xor_composite_equals_triple_product() {
        let a = z2();
        let xor = xor_functor();
        let left = functor_compose(
            &xor,
            &functor_product(&[xor.clone(), Functor::identity(&a)]),
        )
        .unwrap();
        let right = functor_compose(
            &xor,
            &functor_product(&[Functor::identity(&a), xor.clone()]),
        )
        .unwrap();
        // both are the ternary xor on all 8 morphism triples
        assert_eq!(left, right);
        assert_eq!(left.mor("1,1,1").unwrap(), "1");
        assert_eq!(left.mor("1,0,1").unwrap(), "0");
        assert!(check_functor(&left).pass());
    }

    #[test]
    fn nat_identities() {
        let a = z2();
        let f = Functor::identity(&a);
        let idf = NatTrans::identity_on(&f);
        assert_eq!(nat_vcomp(&idf, &idf).unwrap(), idf);
        let h = nat_hcomp(&idf, &idf).unwrap();
        assert_eq!(h, NatTrans::identity_on(&functor_compose(&f, &f).unwrap()));
    }

    // a small pool of transformations for law tests
    fn z2_endo_nats() -> Vec<NatTrans> {
        let a = z2();
        let f = Functor::identity(&a);
        // components of 1_A => 1_A are central elements; both 0 and 1 qualify in Z2
        vec![
            NatTrans::new(
                f.clone(),
                f.clone(),
                BTreeMap::from([("e".into(), "0".into())]),
            )
            .unwrap(),
            NatTrans::new(
                f.clone(),
                f.clone(),
                BTreeMap::from([("e".into(), "1".into())]),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn interchange_law_exhaustive_on_z2() {
        let pool = z2_endo_nats();
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    for d in &pool {
                        // (b . a) o (d . c) = (b o d) . (a o c)
                        let lhs = nat_hcomp(&nat_vcomp(b, a).unwrap(), &nat_vcomp(d, c).unwrap())
                            .unwrap();
                        let rhs = nat_vcomp(&nat_hcomp(b, d).unwrap(), &nat_hcomp(a, c).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn interchange_law_proptest(i in 0usize..2, j in 0usize..2, k in 0usize..2, l in 0usize..2) {
            let pool = z2_endo_nats();
            let (a, b, c, d) = (&pool[i], &pool[j], &pool[k], &pool[l]);
            let lhs = nat_hcomp(&nat_vcomp(b, a).unwrap(), &nat_vcomp(d, c).unwrap()).unwrap();
            let rhs = nat_vcomp(&nat_hcomp(b, d).unwrap(), &nat_hcomp(a, c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn whiskering_matches_hcomp_with_identities() {
        let pool = z2_endo_nats();
        let f = Functor::identity(&z2());
        for t in &pool {
            assert_eq!(
                whisker_inner(t, &f).unwrap(),
                nat_hcomp(t, &NatTrans::identity_on(&f)).unwrap()
            );
            assert_eq!(
                whisker_outer(&f, t).unwrap(),
                nat_hcomp(&NatTrans::identity_on(&f), t).unwrap()
            );
            // whisker then vcomp agrees with direct pasting on components
            let pasted = nat_vcomp(
                &whisker_inner(t, &f).unwrap(),
                &whisker_outer(&f, t).unwrap(),
            )
            .unwrap();
            let direct = nat_hcomp(t, t).unwrap();
            assert_eq!(pasted, direct);
        }
    }

    #[test]
    fn check_category_detects_perturbation() {
        let good = z2();
        assert!(check_category(&good).pass());
        // redirect one composition entry: 0 o 1 = 0 instead of 1
        let mut wire = CategoryWire::from(good);
        for entry in wire.comp.iter_mut() {
            if entry.0 == "0" && entry.1 == "1" {
                entry.2 = "0".to_string();
            }
        }
        let bad = FinCategory::try_from(wire).unwrap();
        let report = check_category(&bad);
        assert!(!report.pass());
        assert!(report
            .failures
            .iter()
            .any(|f| f.check == "assoc" || f.check.contains("identity")));
    }

    #[test]
    fn check_natural_identity_passes() {
        let f = Functor::identity(&chain2());
        assert!(check_natural(&NatTrans::identity_on(&f)).pass());
    }

    #[test]
    fn all_functors_terminal_to_terminal() {
        let i = FinCategory::terminal();
        let f = Functor::identity(&i);
        let composed = functor_compose(&f, &f).unwrap();
        assert_eq!(composed, f);
    }

    #[test]
    fn pasting_agrees_with_whiskered_composites_on_small_categories() {
        // exhaustive over all natural transformations between all endofunctor
        // pairs of the indiscrete 3-object category: the pasted composite
        // b o a agrees with both whisker-then-vcomp evaluations
        let e = indiscrete(&["a", "b", "c"]);
        let mut functors = vec![Functor::identity(&e)];
        // a couple of non-identity endofunctors: a constant and a cycle
        let constant = Functor::new(
            e.clone(),
            e.clone(),
            e.objects()
                .iter()
                .map(|o| (o.clone(), "a".to_string()))
                .collect(),
            e.morphism_ids()
                .map(|m| (m.clone(), "a>a".to_string()))
                .collect(),
        )
        .unwrap();
        let cycle = |o: &str| match o {
            "a" => "b",
            "b" => "c",
            _ => "a",
        };
        let rotate = Functor::new(
            e.clone(),
            e.clone(),
            e.objects()
                .iter()
                .map(|o| (o.clone(), cycle(o).to_string()))
                .collect(),
            e.morphism_ids()
                .map(|m| {
                    let (x, y) = m.split_once('>').unwrap();
                    (m.clone(), format!("{}>{}", cycle(x), cycle(y)))
                })
                .collect(),
        )
        .unwrap();
        functors.push(constant);
        functors.push(rotate);
        for f in &functors {
            for g in &functors {
                let a = unique_nat_trans(f, g).unwrap();
                for h in &functors {
                    for k in &functors {
                        let b = unique_nat_trans(h, k).unwrap();
                        let pasted = nat_hcomp(&b, &a).unwrap();
                        let via_left = nat_vcomp(
                            &whisker_inner(&b, g).unwrap(),
                            &whisker_outer(h, &a).unwrap(),
                        )
                        .unwrap();
                        let via_right = nat_vcomp(
                            &whisker_outer(k, &a).unwrap(),
                            &whisker_inner(&b, f).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(pasted, via_left);
                        assert_eq!(pasted, via_right);
                        assert!(check_natural(&pasted).pass());
                    }
                }
            }
        }
    }

    #[test]
    fn operation_outputs_pass_their_validators() {
        let a = z2();
        let b = chain2();
        let p = product(&[&a, &b]);
        assert!(check_category(&p).pass());
        let f = Functor::identity(&p);
        assert!(check_functor(&f).pass());
        let xor = xor_functor();
        assert!(check_functor(&xor).pass());
        let composed = functor_compose(
            &xor,
            &functor_product(&[Functor::identity(&a), xor.clone()]),
        )
        .unwrap();
        assert!(check_functor(&composed).pass());
        for t in z2_endo_nats() {
            assert!(check_natural(&t).pass());
            assert!(check_natural(&nat_hcomp(&t, &t).unwrap()).pass());
            assert!(check_natural(&nat_product(&[t.clone(), t.clone()])).pass());
        }
    }

    #[test]
    fn unique_nat_trans_on_indiscrete() {
        // indiscrete two-object category: exactly one morphism between any two objects
        let e = indiscrete(&["a", "b"]);
        assert!(check_category(&e).pass());
        let f = Functor::identity(&e);
        let t = unique_nat_trans(&f, &f).unwrap();
        assert!(t.is_identity());
    }

    fn indiscrete(names: &[&str]) -> FinCategory {
        FinCategory::indiscrete(names).unwrap()
    }

    #[test]
    fn invert_on_indiscrete() {
        let e = indiscrete(&["a", "b"]);
        let f = Functor::identity(&e);
        // the swap functor a <-> b
        let swap = Functor::new(
            e.clone(),
            e.clone(),
            BTreeMap::from([("a".into(), "b".into()), ("b".into(), "a".into())]),
            e.morphism_ids()
                .map(|m| {
                    let (x, y) = m.split_once('>').unwrap();
                    let sw = |s: &str| if s == "a" { "b" } else { "a" };
                    (m.clone(), format!("{}>{}", sw(x), sw(y)))
                })
                .collect(),
        )
        .unwrap();
        let t = unique_nat_trans(&f, &swap).unwrap();
        let ti = t.invert().unwrap();
        assert_eq!(nat_vcomp(&ti, &t).unwrap(), NatTrans::identity_on(&f));
    }
}
