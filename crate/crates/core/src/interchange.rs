//! JSON interchange records for the finite structures; see
//! `docs/interchange.md` for the grammar. Printing is canonical, so
//! `parse ∘ print` is the identity.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cell::PolyMorphism;
use crate::error::{Error, Result};
use crate::finset::{FinFamily, FinMap, FinSet};
use crate::label::Label;
use crate::naturalmodel::{TypeFormer, Universe};
use crate::poly::Polynomial;

type Pairs = Vec<(Label, Label)>;

/// Conversion to and from a serde record.
pub trait Interchange: Sized {
    type Record: Serialize + DeserializeOwned;

    fn to_record(&self) -> Self::Record;

    fn from_record(record: Self::Record) -> Result<Self>;

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_record()).expect("records serialize")
    }

    fn from_json(value: serde_json::Value) -> Result<Self> {
        Self::from_record(serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?)
    }

    /// Pretty-printed JSON.
    fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records serialize")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        Self::from_record(serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?)
    }
}

fn set_of(labels: Vec<Label>) -> Result<FinSet> {
    FinSet::new(labels)
}

fn pairs_of(map: &FinMap) -> Pairs {
    map.pairs().map(|(x, y)| (x.clone(), y.clone())).collect()
}

impl Interchange for FinSet {
    type Record = Vec<Label>;

    fn to_record(&self) -> Vec<Label> {
        self.iter().cloned().collect()
    }

    fn from_record(record: Vec<Label>) -> Result<Self> {
        set_of(record)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub dom: Vec<Label>,
    pub cod: Vec<Label>,
    pub map: Pairs,
}

impl Interchange for FinMap {
    type Record = MapRecord;

    fn to_record(&self) -> MapRecord {
        MapRecord { dom: self.dom().to_record(), cod: self.cod().to_record(), map: pairs_of(self) }
    }

    fn from_record(r: MapRecord) -> Result<Self> {
        FinMap::from_pairs(&set_of(r.dom)?, &set_of(r.cod)?, &r.map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub index: Vec<Label>,
    pub fibres: Vec<(Label, Vec<Label>)>,
}

impl Interchange for FinFamily {
    type Record = FamilyRecord;

    fn to_record(&self) -> FamilyRecord {
        FamilyRecord {
            index: self.index().to_record(),
            fibres: self.iter().map(|(i, fibre)| (i.clone(), fibre.to_record())).collect(),
        }
    }

    fn from_record(r: FamilyRecord) -> Result<Self> {
        let fibres = r.fibres.into_iter().map(|(i, f)| Ok((i, set_of(f)?))).collect::<Result<_>>()?;
        FinFamily::from_pairs(&set_of(r.index)?, fibres)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyRecord {
    #[serde(rename = "I")]
    pub i: Vec<Label>,
    #[serde(rename = "B")]
    pub b: Vec<Label>,
    #[serde(rename = "A")]
    pub a: Vec<Label>,
    #[serde(rename = "J")]
    pub j: Vec<Label>,
    pub s: Pairs,
    pub f: Pairs,
    pub t: Pairs,
}

impl Interchange for Polynomial {
    type Record = PolyRecord;

    fn to_record(&self) -> PolyRecord {
        PolyRecord {
            i: self.i().to_record(),
            b: self.b().to_record(),
            a: self.a().to_record(),
            j: self.j().to_record(),
            s: pairs_of(self.s()),
            f: pairs_of(self.f()),
            t: pairs_of(self.t()),
        }
    }

    fn from_record(r: PolyRecord) -> Result<Self> {
        let (i, b, a, j) = (set_of(r.i)?, set_of(r.b)?, set_of(r.a)?, set_of(r.j)?);
        Polynomial::new(
            FinMap::from_pairs(&b, &i, &r.s)?,
            FinMap::from_pairs(&b, &a, &r.f)?,
            FinMap::from_pairs(&a, &j, &r.t)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismRecord {
    pub src: PolyRecord,
    pub dst: PolyRecord,
    pub vertex: Vec<Label>,
    pub phi0: Pairs,
    pub phi1: Pairs,
    pub phi2: Pairs,
}

impl Interchange for PolyMorphism {
    type Record = MorphismRecord;

    fn to_record(&self) -> MorphismRecord {
        MorphismRecord {
            src: self.src().to_record(),
            dst: self.dst().to_record(),
            vertex: self.vertex().to_record(),
            phi0: pairs_of(self.phi0()),
            phi1: pairs_of(self.phi1()),
            phi2: pairs_of(self.phi2()),
        }
    }

    fn from_record(r: MorphismRecord) -> Result<Self> {
        let src = Polynomial::from_record(r.src)?;
        let dst = Polynomial::from_record(r.dst)?;
        let vertex = set_of(r.vertex)?;
        let phi0 = FinMap::from_pairs(src.a(), dst.a(), &r.phi0)?;
        let phi1 = FinMap::from_pairs(&vertex, dst.b(), &r.phi1)?;
        let phi2 = FinMap::from_pairs(&vertex, src.b(), &r.phi2)?;
        PolyMorphism::new(&src, &dst, phi0, phi1, phi2)
    }
}

/// `[[A, B], code]`, or `[[A, B], code, [[input, element], …]]` when the
/// comparison map is not the order-preserving one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormerRecord {
    Explicit((Label, Label), Label, Pairs),
    Canonical((Label, Label), Label),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseRecord {
    #[serde(rename = "U")]
    pub codes: Vec<Label>,
    #[serde(rename = "El")]
    pub el: Vec<(Label, Vec<Label>)>,
    pub unit: (Label, Label),
    pub sigma: Vec<FormerRecord>,
    pub pi: Vec<FormerRecord>,
}

fn canonical_pairs(dom: &FinSet, cod: &FinSet) -> Pairs {
    dom.iter().cloned().zip(cod.iter().cloned()).collect()
}

impl Interchange for Universe {
    type Record = UniverseRecord;

    fn to_record(&self) -> UniverseRecord {
        let former = |table: &BTreeMap<(Label, Label), TypeFormer>,
                      domain: &dyn Fn(&Label, &Label) -> Result<FinSet>| {
            table
                .iter()
                .map(|((a, b), tf)| {
                    let canonical = match (domain(a, b), self.el_of(&tf.code)) {
                        (Ok(dom), Ok(cod)) => dom.len() == cod.len() && canonical_pairs(&dom, cod) == tf.pairs,
                        _ => false,
                    };
                    let key = (a.clone(), b.clone());
                    if canonical {
                        FormerRecord::Canonical(key, tf.code.clone())
                    } else {
                        FormerRecord::Explicit(key, tf.code.clone(), tf.pairs.clone())
                    }
                })
                .collect()
        };
        UniverseRecord {
            codes: self.codes().to_record(),
            el: self.el().to_record().fibres,
            unit: (self.unit_code().clone(), self.unit_elem().clone()),
            sigma: former(self.sigma_table(), &|a, b| self.sigma_domain(a, b)),
            pi: former(self.pi_table(), &|a, b| self.pi_domain(a, b)),
        }
    }

    fn from_record(r: UniverseRecord) -> Result<Self> {
        let el = FinFamily::from_record(FamilyRecord { index: r.codes, fibres: r.el })?;
        let u = Universe::new(el, r.unit.0, r.unit.1, BTreeMap::new(), BTreeMap::new());
        let read = |entries: Vec<FormerRecord>, pi: bool| -> Result<BTreeMap<(Label, Label), TypeFormer>> {
            let mut table = BTreeMap::new();
            for entry in entries {
                let (key, former) = match entry {
                    FormerRecord::Explicit(key, code, pairs) => (key, TypeFormer { code, pairs }),
                    FormerRecord::Canonical(key, code) => {
                        let dom = if pi { u.pi_domain(&key.0, &key.1)? } else { u.sigma_domain(&key.0, &key.1)? };
                        let pairs = canonical_pairs(&dom, u.el_of(&code)?);
                        (key, TypeFormer { code, pairs })
                    }
                };
                if table.insert(key.clone(), former).is_some() {
                    return Err(Error::Parse(format!("duplicate entry for ({}, {})", key.0, key.1)));
                }
            }
            Ok(table)
        };
        let sigma = read(r.sigma, false)?;
        let pi = read(r.pi, true)?;
        Ok(Universe::new(u.el().clone(), u.unit_code().clone(), u.unit_elem().clone(), sigma, pi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naturalmodel::{mk_bool_universe, mk_corrupted_universe, mk_skewed_universe};

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    #[test]
    fn map_record_shape() {
        let m = FinMap::to_unit(&FinSet::numbered("x", 2));
        let json = m.to_json();
        assert_eq!(json["map"][0], serde_json::json!(["x0", "*"]));
        let back = FinMap::from_json(json).unwrap();
        assert_eq!(back, m);
        assert!(FinMap::from_json_str(r#"{"dom":["a"],"cod":["y"],"map":[]}"#).is_err());
        assert_eq!(FinSet::from_json_str(r#"["b", ["a", "c"], "a"]"#).unwrap().to_record()[0], l("a"));
    }

    #[test]
    fn universes_round_trip() {
        for u in [mk_bool_universe(), mk_skewed_universe(), mk_corrupted_universe()] {
            let text = u.to_json_string();
            assert_eq!(Universe::from_json_str(&text).unwrap(), u);
        }
        let bool_json = mk_bool_universe().to_json();
        assert_eq!(bool_json["sigma"][0], serde_json::json!([["code0", []], "code0"]));
    }

    #[test]
    fn corrupted_entries_print_explicitly() {
        let json = mk_corrupted_universe().to_json();
        let explicit = json["sigma"].as_array().unwrap().iter().filter(|e| e.as_array().unwrap().len() == 3).count();
        assert_eq!(explicit, 1);
    }

    #[test]
    fn unknown_fields_are_parse_errors() {
        let err = FinFamily::from_json_str(r#"{"index":[],"fibres":[],"extra":1}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
