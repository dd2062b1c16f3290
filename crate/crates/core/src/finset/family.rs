use std::fmt;

use crate::error::{Error, Result};
use crate::label::Label;

use super::map::FinMap;
use super::set::FinSet;

/// A family of finite sets indexed by a finite set: an object of the slice
/// over `index`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFamily {
    index: FinSet,
    fibres: Vec<FinSet>,
}

impl FinFamily {
    /// Builds a family from fibres listed in index order.
    pub fn new(index: FinSet, fibres: Vec<FinSet>) -> Result<Self> {
        if fibres.len() != index.len() {
            return Err(Error::IndexMismatch(format!(
                "{} fibres for an index of {} elements",
                fibres.len(),
                index.len()
            )));
        }
        Ok(FinFamily { index, fibres })
    }

    pub fn from_fn(index: &FinSet, mut fibre: impl FnMut(&Label) -> FinSet) -> Self {
        let fibres = index.iter().map(&mut fibre).collect();
        FinFamily { index: index.clone(), fibres }
    }

    pub fn try_from_fn(index: &FinSet, mut fibre: impl FnMut(&Label) -> Result<FinSet>) -> Result<Self> {
        let fibres = index.iter().map(&mut fibre).collect::<Result<_>>()?;
        Ok(FinFamily { index: index.clone(), fibres })
    }

    /// Builds a family from `(index element, fibre)` pairs; every index
    /// element must appear exactly once.
    pub fn from_pairs(index: &FinSet, pairs: Vec<(Label, FinSet)>) -> Result<Self> {
        let mut fibres: Vec<Option<FinSet>> = vec![None; index.len()];
        for (i, fibre) in pairs {
            let k = index.require_index(&i, "family index")?;
            if fibres[k].replace(fibre).is_some() {
                return Err(Error::NotFunctional(i));
            }
        }
        let fibres = fibres
            .into_iter()
            .enumerate()
            .map(|(k, f)| f.ok_or_else(|| Error::NotTotal(index.get(k).clone())))
            .collect::<Result<_>>()?;
        Ok(FinFamily { index: index.clone(), fibres })
    }

    pub fn constant(index: &FinSet, fibre: &FinSet) -> Self {
        FinFamily::from_fn(index, |_| fibre.clone())
    }

    /// The family of preimages of `map`, keeping the original labels.
    pub fn fibres_of(map: &FinMap) -> Self {
        let fibres = map
            .fibre_indices()
            .into_iter()
            .map(|ids| FinSet::from_distinct(ids.into_iter().map(|i| map.dom().get(i).clone()).collect()))
            .collect();
        FinFamily { index: map.cod().clone(), fibres }
    }

    pub fn index(&self) -> &FinSet {
        &self.index
    }

    pub fn fibres(&self) -> &[FinSet] {
        &self.fibres
    }

    pub fn fibre_at(&self, k: usize) -> &FinSet {
        &self.fibres[k]
    }

    pub fn fibre(&self, i: &Label) -> Option<&FinSet> {
        self.index.index_of(i).map(|k| &self.fibres[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &FinSet)> + '_ {
        self.index.iter().zip(self.fibres.iter())
    }

    /// Number of elements of the total space.
    pub fn total_len(&self) -> usize {
        self.fibres.iter().map(FinSet::len).sum()
    }

    /// The total space `Σ_i X_i` with elements `(i, x)`, as a map to the index.
    pub fn total_space(&self) -> FinMap {
        let mut elems = Vec::with_capacity(self.total_len());
        let mut images = Vec::with_capacity(self.total_len());
        for (k, (i, fibre)) in self.iter().enumerate() {
            for x in fibre {
                elems.push(Label::pair(i.clone(), x.clone()));
                images.push(k);
            }
        }
        // pairs (i, x) come out in lexicographic order already
        let dom = FinSet::from_distinct(elems);
        FinMap::from_indices(dom, self.index.clone(), images)
    }

    /// Inverse of [`FinFamily::total_space`]: reads the fibres back off a map
    /// whose domain elements are `(i, x)` pairs lying over `i`.
    pub fn from_total_space(map: &FinMap) -> Result<Self> {
        let mut fibres = vec![Vec::new(); map.cod().len()];
        for (i, (e, base)) in map.pairs().enumerate() {
            match e.as_pair() {
                Some((idx, x)) if idx == base => fibres[map.index_at(i)].push(x.clone()),
                _ => return Err(Error::IndexMismatch(format!("{e} is not a pair lying over {base}"))),
            }
        }
        Ok(FinFamily { index: map.cod().clone(), fibres: fibres.into_iter().map(FinSet::from_distinct).collect() })
    }

    /// Union of the fibres (meaningful when they are disjoint).
    pub fn union(&self) -> FinSet {
        FinSet::collect_unique(self.fibres.iter().flat_map(|f| f.iter().cloned()))
    }
}

impl fmt::Debug for FinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// A map of families over a common index: one function per fibre.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FamilyMap {
    src: FinFamily,
    dst: FinFamily,
    components: Vec<FinMap>,
}

impl FamilyMap {
    pub fn new(src: FinFamily, dst: FinFamily, components: Vec<FinMap>) -> Result<Self> {
        if src.index != dst.index {
            return Err(Error::IndexMismatch("family map between different indices".into()));
        }
        if components.len() != src.index.len() {
            return Err(Error::IndexMismatch("wrong number of components".into()));
        }
        for (k, c) in components.iter().enumerate() {
            if c.dom() != src.fibre_at(k) || c.cod() != dst.fibre_at(k) {
                return Err(Error::CodomainMismatch(format!(
                    "component over {} has the wrong domain or codomain",
                    src.index.get(k)
                )));
            }
        }
        Ok(FamilyMap { src, dst, components })
    }

    pub fn from_fn(src: &FinFamily, dst: &FinFamily, mut f: impl FnMut(&Label, &Label) -> Label) -> Result<Self> {
        Self::try_from_fn(src, dst, |i, x| Ok(f(i, x)))
    }

    pub fn try_from_fn(
        src: &FinFamily,
        dst: &FinFamily,
        mut f: impl FnMut(&Label, &Label) -> Result<Label>,
    ) -> Result<Self> {
        if src.index != dst.index {
            return Err(Error::IndexMismatch("family map between different indices".into()));
        }
        let components = src
            .iter()
            .zip(dst.fibres.iter())
            .map(|((i, a), b)| FinMap::try_from_fn(a, b, |x| f(i, x)))
            .collect::<Result<_>>()?;
        Ok(FamilyMap { src: src.clone(), dst: dst.clone(), components })
    }

    pub fn identity(family: &FinFamily) -> Self {
        FamilyMap {
            src: family.clone(),
            dst: family.clone(),
            components: family.fibres.iter().map(FinMap::identity).collect(),
        }
    }

    pub fn src(&self) -> &FinFamily {
        &self.src
    }

    pub fn dst(&self) -> &FinFamily {
        &self.dst
    }

    pub fn components(&self) -> &[FinMap] {
        &self.components
    }

    pub fn component(&self, i: &Label) -> Option<&FinMap> {
        self.src.index.index_of(i).map(|k| &self.components[k])
    }

    pub fn apply(&self, i: &Label, x: &Label) -> Option<&Label> {
        self.component(i)?.apply(x)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FamilyMap) -> Result<FamilyMap> {
        if inner.dst != self.src {
            return Err(Error::CodomainMismatch("family maps do not compose".into()));
        }
        let components =
            self.components.iter().zip(&inner.components).map(|(o, i)| o.after(i)).collect::<Result<_>>()?;
        Ok(FamilyMap { src: inner.src.clone(), dst: self.dst.clone(), components })
    }

    pub fn is_bijective(&self) -> bool {
        self.components.iter().all(FinMap::is_bijective)
    }

    pub fn inverse(&self) -> Result<FamilyMap> {
        Ok(FamilyMap {
            src: self.dst.clone(),
            dst: self.src.clone(),
            components: self.components.iter().map(FinMap::inverse).collect::<Result<_>>()?,
        })
    }

    /// The induced map of total spaces, over the index.
    pub fn total(&self) -> FinMap {
        let dom = self.src.total_space();
        let cod = self.dst.total_space();
        FinMap::from_fn(dom.dom(), cod.dom(), |e| {
            let (i, x) = e.as_pair().expect("total space element");
            Label::pair(i.clone(), self.apply(i, x).expect("component").clone())
        })
        .expect("components land in the target fibres")
    }
}

impl fmt::Debug for FamilyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.src.index.iter().zip(self.components.iter())).finish()
    }
}

/// Every map of families `src → dst` over their common index.
pub fn all_family_maps(src: &FinFamily, dst: &FinFamily) -> Result<Vec<FamilyMap>> {
    if src.index != dst.index {
        return Err(Error::IndexMismatch("family maps between different indices".into()));
    }
    let mut count: u128 = 1;
    for (a, b) in src.fibres.iter().zip(&dst.fibres) {
        count = count.saturating_mul(super::cap::power(b.len(), a.len()));
    }
    super::cap::ensure_within_cap(count)?;
    let per_fibre =
        src.fibres.iter().zip(&dst.fibres).map(|(a, b)| super::map::all_maps(a, b)).collect::<Result<Vec<_>>>()?;
    Ok(super::map::cartesian_indices(&per_fibre)
        .into_iter()
        .map(|components| FamilyMap { src: src.clone(), dst: dst.clone(), components })
        .collect())
}
