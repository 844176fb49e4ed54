//! Input file schemas: monoid-generated and explicit structure files, all
//! under a top-level `kind` tag.

use catalan_monoidal::classify::{
    GammaShape, GammaTable, HRule, LaxStructure, SigmaStructure, SkewStructure, StrictReading,
};
use catalan_monoidal::fincat::{
    functor_compose, functor_product, product, FinCategory, Functor, Monoid, NatTrans,
};
use catalan_monoidal::mapcore::{MapData, MapDataWire};
use catalan_monoidal::{Error, Result};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Deserialize)]
pub struct MonoidWire {
    pub elements: Vec<String>,
    pub op_table: Vec<(String, String, String)>,
    pub unit: String,
}

impl MonoidWire {
    pub fn build(&self) -> Result<Monoid> {
        let monoid = Monoid {
            elements: self.elements.clone(),
            op: self
                .op_table
                .iter()
                .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))
                .collect(),
            unit: self.unit.clone(),
        };
        monoid.validate()?;
        Ok(monoid)
    }
}

fn reading(as_field: Option<&str>) -> Result<StrictReading> {
    match as_field.unwrap_or("one-object") {
        "one-object" => Ok(StrictReading::OneObject),
        "discrete" => Ok(StrictReading::Discrete),
        other => Err(Error::Precondition(format!(
            "unknown monoid reading {other:?}; use \"one-object\" or \"discrete\""
        ))),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
pub enum InputFile {
    #[serde(rename = "monoid")]
    Monoid {
        #[serde(flatten)]
        monoid: MonoidWire,
        #[serde(rename = "as")]
        as_field: Option<String>,
    },
    #[serde(rename = "lax")]
    Lax {
        monoid: Option<MonoidWire>,
        #[serde(rename = "as")]
        as_field: Option<String>,
        arity_bound: Option<usize>,
        iota_component: Option<String>,
        base: Option<FinCategory>,
        tensors: Option<BTreeMap<String, FunctorWire>>,
        iota: Option<NatWire>,
        gamma: Option<Vec<GammaWire>>,
    },
    #[serde(rename = "skew")]
    Skew {
        monoid: Option<MonoidWire>,
        #[serde(rename = "as")]
        as_field: Option<String>,
        alpha_component: Option<String>,
        lambda_component: Option<String>,
        rho_component: Option<String>,
        base: Option<FinCategory>,
        tensor: Option<FunctorWire>,
        unit: Option<FunctorWire>,
        alpha: Option<NatWire>,
        lambda: Option<NatWire>,
        rho: Option<NatWire>,
    },
    #[serde(rename = "sigma")]
    Sigma {
        indiscrete_objects: Option<Vec<String>>,
        base: Option<FinCategory>,
        arity_bound: usize,
        sigma: Option<BTreeMap<String, Vec<SigmaFunctorSpec>>>,
    },
    #[serde(rename = "mapdata")]
    MapData {},
}

#[derive(Deserialize)]
pub struct FunctorWire {
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

impl FunctorWire {
    fn build(&self, src: FinCategory, tgt: FinCategory) -> Result<Functor> {
        Functor::new(src, tgt, self.obj_map.clone(), self.mor_map.clone())
    }
}

#[derive(Deserialize)]
pub struct NatWire {
    pub components: BTreeMap<String, String>,
}

#[derive(Deserialize)]
pub struct GammaWire {
    pub outer: usize,
    pub inner: Vec<usize>,
    pub components: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum SigmaFunctorSpec {
    Named(String),
    Explicit(FunctorWire),
}

fn check_ids(cat: &FinCategory) -> Result<()> {
    for o in cat.objects() {
        if o.contains(',') {
            return Err(Error::Precondition(format!(
                "object id {o:?} contains the reserved tuple separator ','"
            )));
        }
    }
    for m in cat.morphism_ids() {
        if m.contains(',') {
            return Err(Error::Precondition(format!(
                "morphism id {m:?} contains the reserved tuple separator ','"
            )));
        }
    }
    Ok(())
}

fn power(base: &FinCategory, n: usize) -> FinCategory {
    let factors = vec![base.clone(); n];
    let refs: Vec<&FinCategory> = factors.iter().collect();
    product(&refs)
}

fn constant_components(f: &Functor, component: &str) -> BTreeMap<String, String> {
    f.src()
        .objects()
        .iter()
        .map(|o| (o.clone(), component.to_string()))
        .collect()
}

pub fn parse_lax(input: &InputFile, default_bound: usize) -> Result<LaxStructure> {
    match input {
        InputFile::Monoid { monoid, as_field } => LaxStructure::strict_from_monoid(
            &monoid.build()?,
            reading(as_field.as_deref())?,
            default_bound,
        ),
        InputFile::Lax {
            monoid: Some(monoid),
            as_field,
            arity_bound,
            iota_component,
            ..
        } => {
            let bound = arity_bound.unwrap_or(default_bound);
            let mut s = LaxStructure::strict_from_monoid(
                &monoid.build()?,
                reading(as_field.as_deref())?,
                bound,
            )?;
            if let Some(component) = iota_component {
                let components = constant_components(s.iota().src(), component);
                s = s.with_iota_components(components)?;
            }
            Ok(s)
        }
        InputFile::Lax {
            monoid: None,
            base: Some(base),
            arity_bound,
            tensors: Some(tensors),
            iota: Some(iota),
            gamma,
            ..
        } => {
            check_ids(base)?;
            let bound = arity_bound.unwrap_or(default_bound);
            let mut tensor_table = BTreeMap::new();
            for (key, wire) in tensors {
                let n: usize = key
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad tensor arity key {key:?}")))?;
                tensor_table.insert(n, wire.build(power(base, n), base.clone())?);
            }
            let one = tensor_table
                .get(&1)
                .cloned()
                .ok_or_else(|| Error::MissingShape("tensor of arity 1".into()))?;
            let iota = NatTrans::new(Functor::identity(base), one, iota.components.clone())?;
            let mut gamma_table = BTreeMap::new();
            for entry in gamma.as_deref().unwrap_or(&[]) {
                let shape = GammaShape {
                    outer: entry.outer,
                    inner: entry.inner.clone(),
                };
                let outer_t = tensor_table
                    .get(&entry.outer)
                    .ok_or_else(|| Error::MissingShape(format!("tensor {}", entry.outer)))?;
                let inner_ts: Vec<Functor> = entry
                    .inner
                    .iter()
                    .map(|k| {
                        tensor_table
                            .get(k)
                            .cloned()
                            .ok_or_else(|| Error::MissingShape(format!("tensor {k}")))
                    })
                    .collect::<Result<_>>()?;
                let src = functor_compose(outer_t, &functor_product(&inner_ts))?;
                let total: usize = entry.inner.iter().sum();
                let tgt = tensor_table
                    .get(&total)
                    .cloned()
                    .ok_or_else(|| Error::MissingShape(format!("tensor {total}")))?;
                gamma_table.insert(shape, NatTrans::new(src, tgt, entry.components.clone())?);
            }
            LaxStructure::new(
                base.clone(),
                bound,
                tensor_table,
                iota,
                GammaTable::Explicit(gamma_table),
            )
        }
        _ => Err(Error::Precondition(
            "lax input needs either a monoid or explicit base/tensors/iota".into(),
        )),
    }
}

pub fn parse_skew(input: &InputFile) -> Result<SkewStructure> {
    match input {
        InputFile::Monoid { monoid, as_field } => SkewStructure::strict_from_monoid(
            &monoid.build()?,
            reading(as_field.as_deref())? == StrictReading::OneObject,
        ),
        InputFile::Skew {
            monoid: Some(monoid),
            as_field,
            alpha_component,
            lambda_component,
            rho_component,
            ..
        } => {
            let mut s = SkewStructure::strict_from_monoid(
                &monoid.build()?,
                reading(as_field.as_deref())? == StrictReading::OneObject,
            )?;
            if let Some(component) = alpha_component {
                let components = constant_components(s.alpha().src(), component);
                s = s.with_alpha_components(components)?;
            }
            if lambda_component.is_some() || rho_component.is_some() {
                return Err(Error::Precondition(
                    "lambda/rho overrides are only available through explicit tables".into(),
                ));
            }
            Ok(s)
        }
        InputFile::Skew {
            monoid: None,
            base: Some(base),
            tensor: Some(tensor),
            unit: Some(unit),
            alpha: Some(alpha),
            lambda: Some(lambda),
            rho: Some(rho),
            ..
        } => {
            check_ids(base)?;
            let tensor = tensor.build(power(base, 2), base.clone())?;
            let unit = unit.build(FinCategory::terminal(), base.clone())?;
            let id_a = Functor::identity(base);
            let left = functor_compose(&tensor, &functor_product(&[tensor.clone(), id_a.clone()]))?;
            let right =
                functor_compose(&tensor, &functor_product(&[id_a.clone(), tensor.clone()]))?;
            let alpha = NatTrans::new(left, right, alpha.components.clone())?;
            let unit_left =
                functor_compose(&tensor, &functor_product(&[unit.clone(), id_a.clone()]))?;
            let lambda = NatTrans::new(unit_left, id_a.clone(), lambda.components.clone())?;
            let unit_right =
                functor_compose(&tensor, &functor_product(&[id_a.clone(), unit.clone()]))?;
            let rho = NatTrans::new(id_a.clone(), unit_right, rho.components.clone())?;
            SkewStructure::new(base.clone(), tensor, unit, alpha, lambda, rho)
        }
        _ => Err(Error::Precondition(
            "skew input needs either a monoid or explicit base/tensor/unit/alpha/lambda/rho".into(),
        )),
    }
}

pub fn parse_sigma(input: &InputFile) -> Result<SigmaStructure> {
    let InputFile::Sigma {
        indiscrete_objects,
        base,
        arity_bound,
        sigma,
    } = input
    else {
        return Err(Error::Precondition("not a sigma input".into()));
    };
    let base = match (indiscrete_objects, base) {
        (Some(names), None) => {
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            FinCategory::indiscrete(&refs)?
        }
        (None, Some(base)) => {
            check_ids(base)?;
            base.clone()
        }
        _ => {
            return Err(Error::Precondition(
                "sigma input needs exactly one of indiscrete_objects or base".into(),
            ))
        }
    };
    let mut table: BTreeMap<usize, Vec<Functor>> = BTreeMap::new();
    for k in 0..=*arity_bound {
        let functors = match k {
            0 => vec![catalan_monoidal::classify::constant(
                &base,
                &base.objects()[0],
            )?],
            _ => vec![catalan_monoidal::classify::projection(&base, k, 0)?],
        };
        table.insert(k, functors);
    }
    for (key, specs) in sigma.iter().flat_map(|m| m.iter()) {
        let k: usize = key
            .parse()
            .map_err(|_| Error::Precondition(format!("bad sigma arity key {key:?}")))?;
        let mut functors = Vec::new();
        for spec in specs {
            let f = match spec {
                SigmaFunctorSpec::Named(name) => {
                    if let Some(i) = name.strip_prefix("proj:") {
                        let i: usize = i.parse().map_err(|_| {
                            Error::Precondition(format!("bad projection index in {name:?}"))
                        })?;
                        catalan_monoidal::classify::projection(&base, k, i)?
                    } else if let Some(obj) = name.strip_prefix("const:") {
                        catalan_monoidal::classify::constant(&base, obj)?
                    } else {
                        return Err(Error::Precondition(format!(
                            "unknown sigma functor spec {name:?}"
                        )));
                    }
                }
                SigmaFunctorSpec::Explicit(wire) => wire.build(power(&base, k), base.clone())?,
            };
            functors.push(f);
        }
        table.insert(k, functors);
    }
    SigmaStructure::new(base, table, HRule::RoundRobin)
}

pub fn parse_mapdata(text: &str) -> Result<MapData> {
    let wire: MapDataWire = serde_json::from_str(text)
        .map_err(|e| Error::Precondition(format!("mapdata parse: {e}")))?;
    check_ids(&wire.base)?;
    MapData::from_wire(wire)
}
