use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{all_maps, dep_prod, FinFamily, FinMap, FinSet};
use crate::label::{section_label, Label};
use crate::poly::Polynomial;

/// A chosen type former at one input: the output code and the comparison
/// map from the canonical set (a `Σ`-set or a section set) into its `El`.
///
/// The map is kept as raw pairs so that malformed universes can be
/// represented and then rejected with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeFormer {
    pub code: Label,
    pub pairs: Vec<(Label, Label)>,
}

/// Which of the two tabulated formers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Former {
    Sigma,
    Pi,
}

impl Former {
    pub fn name(self) -> &'static str {
        match self {
            Former::Sigma => "sigma",
            Former::Pi => "pi",
        }
    }
}

/// A finite universe `p : Ů → U` with chosen unit, `Σ` and `Π` structure.
///
/// Inputs to `Σ̂` and `Π̂` are pairs `(A, B)` where `B` is a section label
/// `[(x, code), …]` over `El(A)`. The `Σ`-set of `(A, B)` has elements
/// `(x, y)` with `y ∈ El(B x)`; the section set has elements `[(x, y), …]`.
/// Elements of `Ů` are `(A, x)` with `x ∈ El(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    el: FinFamily,
    unit_code: Label,
    unit_elem: Label,
    sigma: BTreeMap<(Label, Label), TypeFormer>,
    pi: BTreeMap<(Label, Label), TypeFormer>,
}

impl Universe {
    /// Assembles a universe without validating it; see [`Universe::validate`].
    pub fn new(
        el: FinFamily,
        unit_code: Label,
        unit_elem: Label,
        sigma: BTreeMap<(Label, Label), TypeFormer>,
        pi: BTreeMap<(Label, Label), TypeFormer>,
    ) -> Self {
        Universe { el, unit_code, unit_elem, sigma, pi }
    }

    /// Tabulates a universe whose comparison maps are the order-preserving
    /// bijections, asking `pick` for the output code of each former at each
    /// input given the required cardinality.
    pub fn tabulate(
        el: FinFamily,
        unit_code: Label,
        unit_elem: Label,
        mut pick: impl FnMut(Former, &Label, &Label, usize) -> Option<Label>,
    ) -> Result<Self> {
        let mut u = Universe::new(el, unit_code, unit_elem, BTreeMap::new(), BTreeMap::new());
        for former in [Former::Sigma, Former::Pi] {
            let mut table = BTreeMap::new();
            for a in u.codes().clone().iter() {
                for b in u.families(a)? {
                    let dom = u.former_domain(former, a, &b)?;
                    let code = pick(former, a, &b, dom.len()).ok_or_else(|| {
                        Error::Universe(format!("no {} code of size {} for ({a}, {b})", former.name(), dom.len()))
                    })?;
                    let target = u.el_of(&code)?;
                    if target.len() != dom.len() {
                        return Err(Error::Universe(format!("code {code} has the wrong size for ({a}, {b})")));
                    }
                    let pairs = dom.iter().cloned().zip(target.iter().cloned()).collect();
                    table.insert((a.clone(), b), TypeFormer { code, pairs });
                }
            }
            match former {
                Former::Sigma => u.sigma = table,
                Former::Pi => u.pi = table,
            }
        }
        Ok(u)
    }

    /// The set of codes `U`.
    pub fn codes(&self) -> &FinSet {
        self.el.index()
    }

    pub fn el(&self) -> &FinFamily {
        &self.el
    }

    pub fn el_of(&self, code: &Label) -> Result<&FinSet> {
        self.el.fibre(code).ok_or_else(|| Error::NotAnElement { label: code.clone(), context: "universe".into() })
    }

    pub fn unit_code(&self) -> &Label {
        &self.unit_code
    }

    pub fn unit_elem(&self) -> &Label {
        &self.unit_elem
    }

    pub fn sigma_table(&self) -> &BTreeMap<(Label, Label), TypeFormer> {
        &self.sigma
    }

    pub fn pi_table(&self) -> &BTreeMap<(Label, Label), TypeFormer> {
        &self.pi
    }

    /// `p : Ů → U`.
    pub fn projection(&self) -> FinMap {
        self.el.total_space()
    }

    /// `p` as a polynomial `1 ⇸ 1`.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_map(&self.projection())
    }

    /// Every family `B : El(A) → U`, as section labels.
    pub fn families(&self, a: &Label) -> Result<Vec<Label>> {
        Ok(all_maps(self.el_of(a)?, self.codes())?
            .iter()
            .map(|m| section_label(m.pairs().map(|(x, c)| (x.clone(), c.clone()))))
            .collect())
    }

    /// The family `x ↦ El(B x)` over `El(A)`.
    pub fn family(&self, a: &Label, b: &Label) -> Result<FinFamily> {
        let index = self.el_of(a)?;
        FinFamily::try_from_fn(index, |x| {
            let code = crate::label::section_value(b, x)
                .ok_or_else(|| Error::Universe(format!("family {b} is undefined at {x}")))?;
            Ok(self.el_of(code)?.clone())
        })
    }

    /// `Σ_{x ∈ El A} El(B x)`, with elements `(x, y)`.
    pub fn sigma_domain(&self, a: &Label, b: &Label) -> Result<FinSet> {
        let fam = self.family(a, b)?;
        Ok(FinSet::collect_unique(
            fam.iter().flat_map(|(x, ys)| ys.iter().map(move |y| Label::pair(x.clone(), y.clone()))),
        ))
    }

    /// `Π_{x ∈ El A} El(B x)`, with elements sections `[(x, y), …]`.
    pub fn pi_domain(&self, a: &Label, b: &Label) -> Result<FinSet> {
        let fam = self.family(a, b)?;
        let sections = dep_prod(&FinMap::to_unit(fam.index()), &fam)?;
        Ok(sections.fibre_at(0).clone())
    }

    pub fn former_domain(&self, former: Former, a: &Label, b: &Label) -> Result<FinSet> {
        match former {
            Former::Sigma => self.sigma_domain(a, b),
            Former::Pi => self.pi_domain(a, b),
        }
    }

    pub fn former(&self, former: Former, a: &Label, b: &Label) -> Result<&TypeFormer> {
        let table = match former {
            Former::Sigma => &self.sigma,
            Former::Pi => &self.pi,
        };
        table
            .get(&(a.clone(), b.clone()))
            .ok_or_else(|| Error::Universe(format!("{} is not defined at ({a}, {b})", former.name())))
    }

    /// The comparison map of a former at `(A, B)`, checked to be a map
    /// into `El` of its code.
    pub fn former_map(&self, former: Former, a: &Label, b: &Label) -> Result<(Label, FinMap)> {
        let entry = self.former(former, a, b)?;
        let dom = self.former_domain(former, a, b)?;
        let map = FinMap::from_pairs(&dom, self.el_of(&entry.code)?, &entry.pairs)?;
        Ok((entry.code.clone(), map))
    }

    /// `Σ̂(A, B)` with `pair̂`.
    pub fn sigma(&self, a: &Label, b: &Label) -> Result<(Label, FinMap)> {
        self.former_map(Former::Sigma, a, b)
    }

    /// `Π̂(A, B)` with `λ̂`.
    pub fn pi(&self, a: &Label, b: &Label) -> Result<(Label, FinMap)> {
        self.former_map(Former::Pi, a, b)
    }

    /// The unit square is a pullback: `El(1̂) = {⋆̂}`.
    pub fn check_unit(&self) -> Result<()> {
        let el = self.el_of(&self.unit_code)?;
        if el.len() != 1 || !el.contains(&self.unit_elem) {
            return Err(Error::Universe(format!(
                "El({}) must be the singleton {{{}}}",
                self.unit_code, self.unit_elem
            )));
        }
        Ok(())
    }

    /// Every input has an entry whose comparison map is a bijection.
    pub fn check_former(&self, former: Former) -> Result<()> {
        for a in self.codes() {
            for b in self.families(a)? {
                let (code, map) = self.former_map(former, a, &b)?;
                if !map.is_bijective() {
                    return Err(Error::Universe(format!(
                        "{} at ({a}, {b}) = {code}: comparison map is not a bijection",
                        former.name()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_sigma(&self) -> Result<()> {
        self.check_former(Former::Sigma)
    }

    pub fn check_pi(&self) -> Result<()> {
        self.check_former(Former::Pi)
    }

    pub fn validate(&self) -> Result<()> {
        self.check_unit()?;
        self.check_sigma()?;
        self.check_pi()
    }

    /// Every defect, one message per failing input.
    pub fn issues(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.check_unit() {
            out.push(format!("unit: {e}"));
        }
        for former in [Former::Sigma, Former::Pi] {
            for a in self.codes() {
                let families = match self.families(a) {
                    Ok(f) => f,
                    Err(e) => {
                        out.push(format!("{}: {e}", former.name()));
                        continue;
                    }
                };
                for b in families {
                    match self.former_map(former, a, &b) {
                        Ok((code, map)) if !map.is_bijective() => out.push(format!(
                            "{} at ({a}, {b}) = {code}: comparison map is not a bijection",
                            former.name()
                        )),
                        Ok(_) => {}
                        Err(e) => out.push(format!("{} at ({a}, {b}): {e}", former.name())),
                    }
                }
            }
        }
        let extra = |table: &BTreeMap<(Label, Label), TypeFormer>, name: &str, out: &mut Vec<String>| {
            for (a, b) in table.keys() {
                let known = self.families(a).map(|fs| fs.contains(b)).unwrap_or(false);
                if !known {
                    out.push(format!("{name}: entry at ({a}, {b}) is not a valid input"));
                }
            }
        };
        extra(&self.sigma, "sigma", &mut out);
        extra(&self.pi, "pi", &mut out);
        out
    }
}

fn by_size(el: &FinFamily) -> impl Fn(usize) -> Vec<Label> + '_ {
    move |n| el.iter().filter(|(_, fibre)| fibre.len() == n).map(|(c, _)| c.clone()).collect()
}

/// `U = {code0, code1}` with `El(code0) = ∅`, `El(code1) = {pt}`; every
/// former is determined by cardinality.
pub fn mk_bool_universe() -> Universe {
    let codes = FinSet::new([Label::atom("code0"), Label::atom("code1")]).unwrap();
    let el = FinFamily::new(codes, vec![FinSet::empty(), FinSet::new([Label::atom("pt")]).unwrap()]).unwrap();
    let sized = by_size(&el);
    let (zero, one) = (sized(0), sized(1));
    Universe::tabulate(el.clone(), Label::atom("code1"), Label::atom("pt"), |_, _, _, n| match n {
        0 => zero.first().cloned(),
        1 => one.first().cloned(),
        _ => None,
    })
    .expect("the Boolean universe is closed")
}

/// `U = {code0, code1a, code1b}` with two distinct singletons: the unit is
/// `code1b`, while `Σ̂` and `Π̂` return `code1a` for every singleton
/// result. The monad laws then hold only up to invertible adjustment.
pub fn mk_skewed_universe() -> Universe {
    let codes = FinSet::new([Label::atom("code0"), Label::atom("code1a"), Label::atom("code1b")]).unwrap();
    let el = FinFamily::new(
        codes,
        vec![FinSet::empty(), FinSet::new([Label::atom("pa")]).unwrap(), FinSet::new([Label::atom("pb")]).unwrap()],
    )
    .unwrap();
    Universe::tabulate(el, Label::atom("code1b"), Label::atom("pb"), |_, _, _, n| match n {
        0 => Some(Label::atom("code0")),
        1 => Some(Label::atom("code1a")),
        _ => None,
    })
    .expect("the skewed universe is closed")
}

/// The Boolean universe with `Σ̂(code1, [pt ↦ code0])` redirected to
/// `code1`, so that its pairing map `∅ → {pt}` is not a bijection.
pub fn mk_corrupted_universe() -> Universe {
    let mut u = mk_bool_universe();
    let key = (Label::atom("code1"), section_label([(Label::atom("pt"), Label::atom("code0"))]));
    u.sigma.insert(key, TypeFormer { code: Label::atom("code1"), pairs: Vec::new() });
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    fn fam(x: &str, c: &str) -> Label {
        section_label([(l(x), l(c))])
    }

    #[test]
    fn bool_formers_by_cardinality() {
        let u = mk_bool_universe();
        u.validate().unwrap();
        let empty = section_label(Vec::new());
        assert_eq!(u.sigma(&l("code0"), &empty).unwrap().0, l("code0"));
        assert_eq!(u.pi(&l("code0"), &empty).unwrap().0, l("code1"));
        for c in ["code0", "code1"] {
            assert_eq!(u.sigma(&l("code1"), &fam("pt", c)).unwrap().0, l(c));
            assert_eq!(u.pi(&l("code1"), &fam("pt", c)).unwrap().0, l(c));
        }
        assert_eq!(u.sigma_table().len(), 3);
        assert_eq!(u.pi_table().len(), 3);
    }

    #[test]
    fn skewed_prefers_code1a() {
        let u = mk_skewed_universe();
        u.validate().unwrap();
        assert_eq!(u.sigma_table().len(), 7);
        assert_eq!(u.sigma(&l("code1b"), &fam("pb", "code1b")).unwrap().0, l("code1a"));
        assert_eq!(u.pi(&l("code0"), &section_label(Vec::new())).unwrap().0, l("code1a"));
        assert_eq!(u.unit_code(), &l("code1b"));
    }

    #[test]
    fn former_maps_match_cardinalities() {
        for u in [mk_bool_universe(), mk_skewed_universe()] {
            for a in u.codes() {
                for b in u.families(a).unwrap() {
                    let fam = u.family(a, &b).unwrap();
                    let sum: usize = fam.fibres().iter().map(FinSet::len).sum();
                    let prod: usize = fam.fibres().iter().map(FinSet::len).product();
                    let (sc, _) = u.sigma(a, &b).unwrap();
                    let (pc, _) = u.pi(a, &b).unwrap();
                    assert_eq!(u.el_of(&sc).unwrap().len(), sum);
                    assert_eq!(u.el_of(&pc).unwrap().len(), prod);
                }
            }
        }
    }

    #[test]
    fn corrupted_universe_reports_the_bad_entry() {
        let u = mk_corrupted_universe();
        assert!(u.check_sigma().is_err());
        let issues = u.issues();
        assert_eq!(issues.len(), 1, "{issues:?}");
        assert!(issues[0].contains("sigma at (code1"));
    }

    #[test]
    fn unit_must_be_a_singleton() {
        let mut u = mk_bool_universe();
        u.unit_code = l("code0");
        assert!(matches!(u.check_unit(), Err(Error::Universe(_))));
    }
}
