use std::fmt;

use crate::error::{Error, Result};
use crate::label::Label;

use super::set::FinSet;

/// A total function between finite sets.
///
/// The assignment is stored as codomain positions aligned with the canonical
/// order of the domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    images: Vec<usize>,
}

impl FinMap {
    /// Tabulates `f` on `dom`; every value must lie in `cod`.
    pub fn from_fn(dom: &FinSet, cod: &FinSet, mut f: impl FnMut(&Label) -> Label) -> Result<Self> {
        let images = dom.iter().map(|x| cod.require_index(&f(x), "codomain")).collect::<Result<_>>()?;
        Ok(FinMap { dom: dom.clone(), cod: cod.clone(), images })
    }

    /// Like [`FinMap::from_fn`] for a fallible rule.
    pub fn try_from_fn(dom: &FinSet, cod: &FinSet, mut f: impl FnMut(&Label) -> Result<Label>) -> Result<Self> {
        let images = dom.iter().map(|x| cod.require_index(&f(x)?, "codomain")).collect::<Result<_>>()?;
        Ok(FinMap { dom: dom.clone(), cod: cod.clone(), images })
    }

    /// Builds a map from an explicit assignment list, checking totality and
    /// functionality.
    pub fn from_pairs(dom: &FinSet, cod: &FinSet, pairs: &[(Label, Label)]) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; dom.len()];
        for (x, y) in pairs {
            let i = dom.require_index(x, "domain")?;
            let j = cod.require_index(y, "codomain")?;
            if images[i].replace(j).is_some() {
                return Err(Error::NotFunctional(x.clone()));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::NotTotal(dom.get(i).clone())))
            .collect::<Result<_>>()?;
        Ok(FinMap { dom: dom.clone(), cod: cod.clone(), images })
    }

    pub(crate) fn from_indices(dom: FinSet, cod: FinSet, images: Vec<usize>) -> Self {
        debug_assert_eq!(dom.len(), images.len());
        debug_assert!(images.iter().all(|&j| j < cod.len()));
        FinMap { dom, cod, images }
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap::from_indices(set.clone(), set.clone(), (0..set.len()).collect())
    }

    /// The unique map to the canonical singleton.
    pub fn to_unit(dom: &FinSet) -> Self {
        FinMap::from_indices(dom.clone(), FinSet::unit(), vec![0; dom.len()])
    }

    /// The map `1 → cod` picking out `point`.
    pub fn point(cod: &FinSet, point: &Label) -> Result<Self> {
        let j = cod.require_index(point, "codomain")?;
        Ok(FinMap::from_indices(FinSet::unit(), cod.clone(), vec![j]))
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, value: &Label) -> Result<Self> {
        let j = cod.require_index(value, "codomain")?;
        Ok(FinMap::from_indices(dom.clone(), cod.clone(), vec![j; dom.len()]))
    }

    /// The inclusion of a subset.
    pub fn inclusion(sub: &FinSet, sup: &FinSet) -> Result<Self> {
        FinMap::from_fn(sub, sup, Label::clone)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Value at the `i`-th domain element.
    pub fn at(&self, i: usize) -> &Label {
        self.cod.get(self.images[i])
    }

    pub fn index_at(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, x: &Label) -> Option<&Label> {
        self.dom.index_of(x).map(|i| self.at(i))
    }

    pub(crate) fn eval(&self, x: &Label) -> Result<&Label> {
        Ok(self.at(self.dom.require_index(x, "domain")?))
    }

    /// Iterates over `(x, f(x))` in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.dom.iter().zip(self.images.iter().map(|&j| self.cod.get(j)))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FinMap) -> Result<FinMap> {
        if inner.cod != self.dom {
            return Err(Error::CodomainMismatch(format!(
                "cannot compose: inner codomain has {} elements, outer domain {}",
                inner.cod.len(),
                self.dom.len()
            )));
        }
        let images = inner.images.iter().map(|&j| self.images[j]).collect();
        Ok(FinMap::from_indices(inner.dom.clone(), self.cod.clone(), images))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.images.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.images {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Result<FinMap> {
        if !self.is_bijective() {
            return Err(Error::NotInvertible(format!(
                "map with {} domain and {} codomain elements is not a bijection",
                self.dom.len(),
                self.cod.len()
            )));
        }
        let mut images = vec![0; self.cod.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Ok(FinMap::from_indices(self.cod.clone(), self.dom.clone(), images))
    }

    /// Domain positions grouped by their image, indexed by codomain position.
    pub fn fibre_indices(&self) -> Vec<Vec<usize>> {
        let mut fibres = vec![Vec::new(); self.cod.len()];
        for (i, &j) in self.images.iter().enumerate() {
            fibres[j].push(i);
        }
        fibres
    }

    /// The preimage of `y` as a subset of the domain.
    pub fn fibre(&self, y: &Label) -> FinSet {
        match self.cod.index_of(y) {
            None => FinSet::empty(),
            Some(j) => FinSet::from_distinct(
                self.images.iter().enumerate().filter(|(_, &k)| k == j).map(|(i, _)| self.dom.get(i).clone()).collect(),
            ),
        }
    }

    /// The pairing `⟨self, other⟩ : X → Y × Z`.
    pub fn pairing(&self, other: &FinMap) -> Result<FinMap> {
        if self.dom != other.dom {
            return Err(Error::CodomainMismatch("pairing needs a common domain".into()));
        }
        let cod = self.cod.product(&other.cod);
        let images = self.images.iter().zip(&other.images).map(|(&i, &j)| i * other.cod.len() + j).collect();
        Ok(FinMap::from_indices(self.dom.clone(), cod, images))
    }

    /// `self × other : X × X' → Y × Y'`.
    pub fn product(&self, other: &FinMap) -> FinMap {
        let dom = self.dom.product(&other.dom);
        let cod = self.cod.product(&other.cod);
        let mut images = Vec::with_capacity(dom.len());
        for &i in &self.images {
            for &j in &other.images {
                images.push(i * other.cod.len() + j);
            }
        }
        FinMap::from_indices(dom, cod, images)
    }

    /// Replaces the codomain by a superset (or an equal set).
    pub fn with_codomain(&self, cod: &FinSet) -> Result<FinMap> {
        FinMap::from_fn(&self.dom, cod, |x| self.apply(x).cloned().expect("x in domain"))
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// Enumerates every map `dom → cod` in lexicographic order of value lists.
pub fn all_maps(dom: &FinSet, cod: &FinSet) -> Result<Vec<FinMap>> {
    super::cap::ensure_within_cap(super::cap::power(cod.len(), dom.len()))?;
    let choices: Vec<Vec<usize>> = vec![(0..cod.len()).collect(); dom.len()];
    Ok(cartesian_indices(&choices)
        .into_iter()
        .map(|images| FinMap::from_indices(dom.clone(), cod.clone(), images))
        .collect())
}

/// All tuples choosing one entry from each list, in lexicographic order.
pub(crate) fn cartesian_indices<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSet {
        FinSet::numbered("x", n)
    }

    #[test]
    fn from_pairs_rejects_partial_and_duplicate_assignments() {
        let d = set(2);
        let c = set(1);
        let x0: Label = "x0".into();
        let x1: Label = "x1".into();
        assert_eq!(FinMap::from_pairs(&d, &c, &[(x0.clone(), x0.clone())]), Err(Error::NotTotal(x1.clone())));
        assert_eq!(
            FinMap::from_pairs(&d, &c, &[(x0.clone(), x0.clone()), (x0.clone(), x0.clone())]),
            Err(Error::NotFunctional(x0.clone()))
        );
        assert!(FinMap::from_pairs(&d, &c, &[(x0.clone(), x1.clone()), (x1.clone(), x0.clone())]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let d = set(3);
        let f = FinMap::from_fn(&d, &d, |x| {
            let i: usize = x.as_atom().unwrap()[1..].parse().unwrap();
            Label::atom(format!("x{}", (i + 1) % 3))
        })
        .unwrap();
        let g = f.inverse().unwrap();
        assert!(g.after(&f).unwrap().is_identity());
        assert!(f.after(&g).unwrap().is_identity());
        assert!(FinMap::to_unit(&d).inverse().is_err());
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(&set(2), &set(3)).unwrap().len(), 9);
        assert_eq!(all_maps(&set(0), &set(0)).unwrap().len(), 1);
        assert_eq!(all_maps(&set(2), &set(0)).unwrap().len(), 0);
    }

    #[test]
    fn pairing_lands_in_product() {
        let d = set(2);
        let p = FinMap::identity(&d).pairing(&FinMap::to_unit(&d)).unwrap();
        assert_eq!(p.apply(&"x1".into()), Some(&Label::pair("x1".into(), Label::star())));
    }
}
