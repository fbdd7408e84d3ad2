use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Category, Coproduct, Coproducts, Initial, Pullback, Pullbacks};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductSpec {
    pub left: String,
    pub right: String,
    pub object: String,
    pub inl: String,
    pub inr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackSpec {
    pub f: String,
    pub g: String,
    pub object: String,
    pub p1: String,
    pub p2: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsSpec {
    #[serde(default)]
    pub initial: Option<String>,
    #[serde(default)]
    pub coproducts: Vec<CoproductSpec>,
    #[serde(default)]
    pub pullbacks: Vec<PullbackSpec>,
}

/// The on-disk form of a finite category. Composites with an identity may be
/// omitted from `compose`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub limits: LimitsSpec,
}

/// A fully finite category given by its composition table.
#[derive(Debug, Clone)]
pub struct TableCategory {
    spec: TableSpec,
    ends: HashMap<String, (String, String)>,
    compose: HashMap<(String, String), String>,
    identity_of: HashMap<String, String>,
    is_identity: HashMap<String, String>,
}

impl TableCategory {
    pub fn new(spec: TableSpec) -> Result<Self> {
        let mut ends = HashMap::new();
        for a in &spec.arrows {
            for o in [&a.dom, &a.cod] {
                if !spec.objects.contains(o) {
                    return Err(Error::UnknownObject(o.clone()));
                }
            }
            if ends
                .insert(a.id.clone(), (a.dom.clone(), a.cod.clone()))
                .is_some()
            {
                return Err(Error::Invalid(format!("duplicate arrow `{}`", a.id)));
            }
        }
        let mut identity_of = HashMap::new();
        let mut is_identity = HashMap::new();
        for o in &spec.objects {
            let id = spec
                .identities
                .get(o)
                .ok_or_else(|| Error::Missing(format!("identity of `{o}`")))?;
            match ends.get(id) {
                Some((d, c)) if d == o && c == o => {}
                Some(_) => return Err(Error::Invalid(format!("`{id}` is not an endo of `{o}`"))),
                None => return Err(Error::UnknownArrow(id.clone())),
            }
            identity_of.insert(o.clone(), id.clone());
            is_identity.insert(id.clone(), o.clone());
        }
        let mut compose = HashMap::new();
        for [g, f, gf] in &spec.compose {
            for a in [g, f, gf] {
                if !ends.contains_key(a) {
                    return Err(Error::UnknownArrow(a.clone()));
                }
            }
            if ends[f].1 != ends[g].0 {
                return Err(Error::NotComposable(format!("{g} . {f}")));
            }
            if ends[gf] != (ends[f].0.clone(), ends[g].1.clone()) {
                return Err(Error::Invalid(format!(
                    "`{gf}` has the wrong type for {g} . {f}"
                )));
            }
            compose.insert((g.clone(), f.clone()), gf.clone());
        }
        Ok(TableCategory {
            spec,
            ends,
            compose,
            identity_of,
            is_identity,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TableSpec = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        TableCategory::new(spec)
    }

    pub fn spec(&self) -> &TableSpec {
        &self.spec
    }

    pub fn objects(&self) -> &[String] {
        &self.spec.objects
    }

    pub fn arrows(&self) -> impl Iterator<Item = &str> {
        self.spec.arrows.iter().map(|a| a.id.as_str())
    }

    /// Overwrites one composite; for building corrupted tables.
    pub fn set_composite(&mut self, g: &str, f: &str, gf: &str) {
        self.compose
            .insert((g.to_string(), f.to_string()), gf.to_string());
    }

    /// The unique arrow `a → b` satisfying `pred`.
    fn unique_in_hom(
        &self,
        a: &String,
        b: &String,
        what: &str,
        mut pred: impl FnMut(&String) -> Result<bool>,
    ) -> Result<String> {
        let mut found = None;
        for u in self.hom(a, b)? {
            if pred(&u)? {
                if found.is_some() {
                    return Err(Error::Law(format!("{what} is not unique")));
                }
                found = Some(u);
            }
        }
        found.ok_or_else(|| Error::Law(format!("{what} does not exist")))
    }
}

impl Category for TableCategory {
    type Obj = String;
    type Arr = String;

    fn dom(&self, f: &String) -> String {
        self.ends[f].0.clone()
    }

    fn cod(&self, f: &String) -> String {
        self.ends[f].1.clone()
    }

    fn id(&self, a: &String) -> String {
        self.identity_of[a].clone()
    }

    fn compose(&self, g: &String, f: &String) -> Result<String> {
        let (_, fc) = self
            .ends
            .get(f)
            .ok_or_else(|| Error::UnknownArrow(f.clone()))?;
        let (gd, _) = self
            .ends
            .get(g)
            .ok_or_else(|| Error::UnknownArrow(g.clone()))?;
        if fc != gd {
            return Err(Error::NotComposable(format!("{g} . {f}")));
        }
        if let Some(gf) = self.compose.get(&(g.clone(), f.clone())) {
            return Ok(gf.clone());
        }
        if self.is_identity.contains_key(g) {
            return Ok(f.clone());
        }
        if self.is_identity.contains_key(f) {
            return Ok(g.clone());
        }
        Err(Error::Missing(format!("composite {g} . {f}")))
    }

    fn hom(&self, a: &String, b: &String) -> Result<Vec<String>> {
        for o in [a, b] {
            if !self.has_object(o) {
                return Err(Error::UnknownObject(o.clone()));
            }
        }
        Ok(self
            .spec
            .arrows
            .iter()
            .filter(|x| &x.dom == a && &x.cod == b)
            .map(|x| x.id.clone())
            .collect())
    }

    fn has_object(&self, a: &String) -> bool {
        self.identity_of.contains_key(a)
    }
}

impl Coproducts for TableCategory {
    fn coproduct(&self, a: &String, b: &String) -> Result<Coproduct<String, String>> {
        let c = self
            .spec
            .limits
            .coproducts
            .iter()
            .find(|c| &c.left == a && &c.right == b)
            .ok_or_else(|| Error::NoLimit(format!("coproduct {a} + {b}")))?;
        Ok(Coproduct {
            object: c.object.clone(),
            inl: c.inl.clone(),
            inr: c.inr.clone(),
        })
    }

    fn copair(&self, f: &String, g: &String) -> Result<String> {
        let cp = self.coproduct(&self.dom(f), &self.dom(g))?;
        let x = self.cod(f);
        self.unique_in_hom(&cp.object, &x, &format!("copair of {f}, {g}"), |u| {
            Ok(&self.compose(u, &cp.inl)? == f && &self.compose(u, &cp.inr)? == g)
        })
    }
}

impl Initial for TableCategory {
    fn initial(&self) -> Result<String> {
        self.spec
            .limits
            .initial
            .clone()
            .ok_or_else(|| Error::NoLimit("initial object".into()))
    }

    fn initial_arrow(&self, b: &String) -> Result<String> {
        let zero = self.initial()?;
        self.unique_in_hom(&zero, b, &format!("arrow {zero} -> {b}"), |_| Ok(true))
    }
}

impl Pullbacks for TableCategory {
    fn pullback(&self, f: &String, g: &String) -> Result<Pullback<String, String>> {
        let p = self
            .spec
            .limits
            .pullbacks
            .iter()
            .find(|p| &p.f == f && &p.g == g)
            .ok_or_else(|| Error::NoLimit(format!("pullback of {f}, {g}")))?;
        Ok(Pullback {
            object: p.object.clone(),
            p1: p.p1.clone(),
            p2: p.p2.clone(),
        })
    }

    fn mediate(&self, f: &String, g: &String, x1: &String, x2: &String) -> Result<String> {
        if self.compose(f, x1)? != self.compose(g, x2)? {
            return Err(Error::Invalid(format!(
                "cone ({x1}, {x2}) does not commute over ({f}, {g})"
            )));
        }
        let pb = self.pullback(f, g)?;
        self.unique_in_hom(&self.dom(x1), &pb.object, "mediating arrow", |m| {
            Ok(&self.compose(&pb.p1, m)? == x1 && &self.compose(&pb.p2, m)? == x2)
        })
    }
}
