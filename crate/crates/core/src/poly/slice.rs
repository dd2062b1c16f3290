use std::collections::BTreeMap;

use crate::cell::PolyMorphism;
use crate::error::{Error, Result};
use crate::finset::{FamilyMap, FinFamily, FinMap, FinSet};
use crate::label::Label;

use super::Polynomial;

/// A polynomial `1 ⇸ 1` in the slice over `I × J`: a map of families
/// `arities → operations` over the base `I × J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePolynomial {
    i: FinSet,
    j: FinSet,
    map: FamilyMap,
}

impl SlicePolynomial {
    pub fn new(i: &FinSet, j: &FinSet, map: FamilyMap) -> Result<Self> {
        if *map.src().index() != i.product(j) {
            return Err(Error::IndexMismatch("slice polynomial must live over I × J".into()));
        }
        Ok(SlicePolynomial { i: i.clone(), j: j.clone(), map })
    }

    pub fn base(&self) -> &FinSet {
        self.map.src().index()
    }

    pub fn arities(&self) -> &FinFamily {
        self.map.src()
    }

    pub fn operations(&self) -> &FinFamily {
        self.map.dst()
    }

    pub fn map(&self) -> &FamilyMap {
        &self.map
    }

    /// The fibre over `z ∈ I × J` as an ordinary polynomial `1 ⇸ 1`.
    pub fn component(&self, z: &Label) -> Option<Polynomial> {
        self.map.component(z).map(Polynomial::from_map)
    }

    /// `S⁻¹`: recovers `I ← B → A → J` when the operations over `(i, j)`
    /// are exactly `{(i, a) | t(a) = j}` for a single `A` and `t`.
    pub fn unreduce(&self) -> Result<Polynomial> {
        let mut t: BTreeMap<Label, Label> = BTreeMap::new();
        let mut per_fibre: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        for (z, ops) in self.operations().iter() {
            let (i, j) = z.as_pair().unwrap();
            for op in ops {
                let (oi, a) =
                    op.as_pair().ok_or_else(|| Error::NotInImage(format!("operation {op} is not a pair (i, a)")))?;
                if oi != i {
                    return Err(Error::NotInImage(format!("operation {op} lies over the wrong i")));
                }
                if let Some(prev) = t.insert(a.clone(), j.clone()) {
                    if &prev != j {
                        return Err(Error::NotInImage(format!("operation {a} lies over two points of J")));
                    }
                }
                per_fibre.entry(z.clone()).or_default().push(a.clone());
            }
        }
        let a_set = FinSet::new(t.keys().cloned())?;
        for i in &self.i {
            for j in &self.j {
                let z = Label::pair(i.clone(), j.clone());
                let found = per_fibre.remove(&z).unwrap_or_default();
                let expected: Vec<Label> = t.iter().filter(|(_, tj)| *tj == j).map(|(a, _)| a.clone()).collect();
                if found != expected {
                    return Err(Error::NotInImage(format!("operations over {z} are not I × A restricted to {j}")));
                }
            }
        }
        let mut s_pairs = Vec::new();
        let mut f_pairs = Vec::new();
        for (z, arity) in self.arities().iter() {
            let (i, _) = z.as_pair().unwrap();
            for b in arity {
                s_pairs.push((b.clone(), i.clone()));
                let (_, a) = self.map.apply(z, b).unwrap().as_pair().unwrap();
                f_pairs.push((b.clone(), a.clone()));
            }
        }
        let b_set = FinSet::new(s_pairs.iter().map(|p| p.0.clone()))
            .map_err(|_| Error::NotInImage("an arity occurs in two fibres".into()))?;
        let t_pairs: Vec<_> = t.into_iter().collect();
        Polynomial::new(
            FinMap::from_pairs(&b_set, &self.i, &s_pairs)?,
            FinMap::from_pairs(&b_set, &a_set, &f_pairs)?,
            FinMap::from_pairs(&a_set, &self.j, &t_pairs)?,
        )
    }
}

/// `S(F) = ⟨s, f⟩ : B → I × A` over `I × J`.
pub fn slice_reduce(poly: &Polynomial) -> SlicePolynomial {
    let base = poly.i().product(poly.j());
    let arities = FinFamily::from_fn(&base, |z| {
        let (i, j) = z.as_pair().unwrap();
        FinSet::collect_unique(
            poly.b()
                .iter()
                .filter(|b| poly.s().apply(b) == Some(i) && poly.t().apply(poly.f().apply(b).unwrap()) == Some(j))
                .cloned(),
        )
    });
    let operations = FinFamily::from_fn(&base, |z| {
        let (i, j) = z.as_pair().unwrap();
        FinSet::collect_unique(poly.t().fibre(j).iter().map(|a| Label::pair(i.clone(), a.clone())))
    });
    let map = FamilyMap::from_fn(&arities, &operations, |z, b| {
        let (i, _) = z.as_pair().unwrap();
        Label::pair(i.clone(), poly.f().apply(b).unwrap().clone())
    })
    .expect("⟨s, f⟩ respects fibres");
    SlicePolynomial { i: poly.i().clone(), j: poly.j().clone(), map }
}

/// `S(φ)`: fibrewise `(id × φ0, φ1, φ2)`; adjustments between such morphisms
/// are the same maps as before reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMorphism {
    src: SlicePolynomial,
    dst: SlicePolynomial,
    phi0: FamilyMap,
    phi1: FamilyMap,
    phi2: FamilyMap,
}

impl SliceMorphism {
    pub fn src(&self) -> &SlicePolynomial {
        &self.src
    }

    pub fn dst(&self) -> &SlicePolynomial {
        &self.dst
    }

    pub fn phi0(&self) -> &FamilyMap {
        &self.phi0
    }

    pub fn phi1(&self) -> &FamilyMap {
        &self.phi1
    }

    pub fn phi2(&self) -> &FamilyMap {
        &self.phi2
    }

    pub fn is_cartesian(&self) -> bool {
        self.phi2.is_bijective()
    }

    /// The fibre over `z` as a morphism of polynomials `1 ⇸ 1`.
    pub fn component(&self, z: &Label) -> Result<PolyMorphism> {
        let err = || Error::NotAnElement { label: z.clone(), context: "slice base".into() };
        PolyMorphism::new(
            &self.src.component(z).ok_or_else(err)?,
            &self.dst.component(z).ok_or_else(err)?,
            self.phi0.component(z).ok_or_else(err)?.clone(),
            self.phi1.component(z).ok_or_else(err)?.clone(),
            self.phi2.component(z).ok_or_else(err)?.clone(),
        )
    }

    /// Checks every fibre is a morphism of polynomials.
    pub fn validate(&self) -> Result<()> {
        for z in self.src.base() {
            self.component(z)?;
        }
        Ok(())
    }

    /// `S⁻¹` on morphisms.
    pub fn unreduce(&self) -> Result<PolyMorphism> {
        let src = self.src.unreduce()?;
        let dst = self.dst.unreduce()?;
        let mut phi0: BTreeMap<Label, Label> = BTreeMap::new();
        for (z, comp) in self.phi0.src().iter() {
            for op in comp {
                let (i, a) = op.as_pair().unwrap();
                let (i2, c) = self.phi0.apply(z, op).unwrap().as_pair().unwrap();
                if i2 != i {
                    return Err(Error::NotInImage("φ0 is not of the form id × φ0".into()));
                }
                if phi0.insert(a.clone(), c.clone()).is_some_and(|prev| &prev != c) {
                    return Err(Error::NotInImage(format!("φ0 disagrees across fibres at {a}")));
                }
            }
        }
        let vertex = self.phi1.src().union();
        let lookup = |fm: &FamilyMap, x: &Label| -> Label {
            let total = fm.total();
            let (_, y) = total.apply(&Label::pair(fibre_of(fm.src(), x), x.clone())).unwrap().as_pair().unwrap();
            y.clone()
        };
        let phi0_pairs: Vec<_> = phi0.into_iter().collect();
        PolyMorphism::new(
            &src,
            &dst,
            FinMap::from_pairs(src.a(), dst.a(), &phi0_pairs)?,
            FinMap::from_fn(&vertex, dst.b(), |x| lookup(&self.phi1, x))?,
            FinMap::from_fn(&vertex, src.b(), |x| lookup(&self.phi2, x))?,
        )
    }
}

fn fibre_of(family: &FinFamily, x: &Label) -> Label {
    family.iter().find(|(_, fib)| fib.contains(x)).map(|(z, _)| z.clone()).expect("element of the union")
}

/// `S(φ)` for `φ : F ⇒ G`.
pub fn slice_reduce_morphism(phi: &PolyMorphism) -> SliceMorphism {
    let src = slice_reduce(phi.src());
    let dst = slice_reduce(phi.dst());
    let top = phi.projection();
    let vertex = FinFamily::from_fn(src.base(), |z| {
        let (i, j) = z.as_pair().unwrap();
        FinSet::collect_unique(
            phi.vertex()
                .iter()
                .filter(|x| {
                    let b = phi.phi2().apply(x).unwrap();
                    phi.src().s().apply(b) == Some(i) && phi.src().t().apply(top.apply(x).unwrap()) == Some(j)
                })
                .cloned(),
        )
    });
    let phi0 = FamilyMap::from_fn(src.operations(), dst.operations(), |_, op| {
        let (i, a) = op.as_pair().unwrap();
        Label::pair(i.clone(), phi.phi0().apply(a).unwrap().clone())
    })
    .expect("φ0 preserves t");
    let phi1 = FamilyMap::from_fn(&vertex, dst.arities(), |_, x| phi.phi1().apply(x).unwrap().clone())
        .expect("φ1 preserves the base");
    let phi2 = FamilyMap::from_fn(&vertex, src.arities(), |_, x| phi.phi2().apply(x).unwrap().clone())
        .expect("φ2 preserves the base");
    SliceMorphism { src, dst, phi0, phi1, phi2 }
}
