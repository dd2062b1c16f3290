use crate::error::{Error, Result};
use crate::finset::{base_change, dep_prod, dep_sum, FamilyMap, FinFamily};
use crate::label::{section_entries, section_label, Label};

use super::Polynomial;

/// `P_F(X) = Σ_t Π_f Δ_s X`; elements of the fibre over `j` are pairs
/// `(a, section)` with `t(a) = j` and `section(b) ∈ X_{s(b)}`.
pub fn extend(poly: &Polynomial, x: &FinFamily) -> Result<FinFamily> {
    if x.index() != poly.i() {
        return Err(Error::IndexMismatch("extension: family is not indexed by I".into()));
    }
    dep_sum(poly.t(), &dep_prod(poly.f(), &base_change(poly.s(), x)?)?)
}

/// The action of `P_F` on a map of families `X → X′` over `I`.
pub fn extend_map(poly: &Polynomial, phi: &FamilyMap) -> Result<FamilyMap> {
    let src = extend(poly, phi.src())?;
    let dst = extend(poly, phi.dst())?;
    FamilyMap::from_fn(&src, &dst, |_, e| {
        let (a, section) = e.as_pair().unwrap();
        let moved = section_entries(section).unwrap().into_iter().map(|(b, x)| {
            let i = poly.s().apply(b).unwrap();
            (b.clone(), phi.apply(i, x).unwrap().clone())
        });
        Label::pair(a.clone(), section_label(moved))
    })
}

/// `|P_F(X)_j|` for every `j`, computed arithmetically without enumeration.
pub fn extension_fibre_size(poly: &Polynomial, x: &FinFamily) -> Result<Vec<u128>> {
    if x.index() != poly.i() {
        return Err(Error::IndexMismatch("extension: family is not indexed by I".into()));
    }
    let mut per_a = vec![1u128; poly.a().len()];
    for k in 0..poly.b().len() {
        let size = x.fibre_at(poly.s().index_at(k)).len() as u128;
        let a = poly.f().index_at(k);
        per_a[a] = per_a[a].saturating_mul(size);
    }
    let mut sizes = vec![0u128; poly.j().len()];
    for (a, n) in per_a.into_iter().enumerate() {
        let j = poly.t().index_at(a);
        sizes[j] = sizes[j].saturating_add(n);
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinMap, FinSet};
    use crate::label::section_value;

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    fn family(index: &FinSet, sizes: &[usize]) -> FinFamily {
        FinFamily::new(
            index.clone(),
            sizes.iter().enumerate().map(|(k, &n)| FinSet::numbered(&format!("x{k}_"), n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_polynomial_extends_to_identity() {
        let i = FinSet::numbered("i", 3);
        let x = family(&i, &[0, 1, 2]);
        let px = extend(&Polynomial::identity(&i), &x).unwrap();
        for (k, fib) in px.iter() {
            // (i, [(i, x)]) is the canonical wrapping of x
            let expected = FinSet::new(
                x.fibre(k).unwrap().iter().map(|e| Label::pair(k.clone(), section_label([(k.clone(), e.clone())]))),
            )
            .unwrap();
            assert_eq!(fib, &expected);
        }
    }

    #[test]
    fn from_map_extension_by_direct_enumeration() {
        // |A| = 2 with fibres of sizes 2 and 3; X a 2-element set
        let b = FinSet::numbered("b", 5);
        let a = FinSet::numbered("a", 2);
        let f = FinMap::from_fn(&b, &a, |e| if e.as_atom().unwrap() < "b2" { l("a0") } else { l("a1") }).unwrap();
        let p = Polynomial::from_map(&f);
        let x = FinFamily::constant(&FinSet::unit(), &FinSet::numbered("x", 2));
        let px = extend(&p, &x).unwrap();
        // oracle: count pairs (a, function B_a → X) by nested loops
        let mut oracle = 0;
        for a in a.iter() {
            let fibre: Vec<_> = f.fibre(a).iter().cloned().collect();
            let mut count = 1;
            for _ in &fibre {
                count *= 2;
            }
            oracle += count;
        }
        assert_eq!(oracle, 12);
        assert_eq!(px.total_len(), oracle);
        assert_eq!(extension_fibre_size(&p, &x).unwrap(), vec![12]);
    }

    #[test]
    fn empty_arities_survive_empty_input() {
        let b = FinSet::numbered("b", 1);
        let a = FinSet::numbered("a", 3);
        let f = FinMap::constant(&b, &a, &l("a0")).unwrap();
        let p = Polynomial::from_map(&f);
        let x = FinFamily::constant(&FinSet::unit(), &FinSet::empty());
        let px = extend(&p, &x).unwrap();
        let expected = FinSet::new(["a1", "a2"].iter().map(|a| Label::pair(l(a), Label::tuple(vec![])))).unwrap();
        assert_eq!(px.fibre_at(0), &expected);
    }

    #[test]
    fn linear_extension_is_a_sum() {
        let i = FinSet::numbered("i", 2);
        let j = FinSet::unit();
        let apex = FinSet::numbered("a", 3);
        let s = FinMap::constant(&apex, &i, &l("i1")).unwrap();
        let t = FinMap::to_unit(&apex);
        let p = Polynomial::linear(&s, &t).unwrap();
        let x = family(&i, &[5, 2]);
        let px = extend(&p, &x).unwrap();
        assert_eq!(px.fibre_at(0).len(), 6);
        let _ = j;
        let empty = FinSet::empty();
        let none =
            Polynomial::linear(&FinMap::from_fn(&empty, &i, |_| unreachable!()).unwrap(), &FinMap::to_unit(&empty))
                .unwrap();
        assert!(extend(&none, &x).unwrap().fibre_at(0).is_empty());
    }

    #[test]
    fn extend_map_is_functorial() {
        let b = FinSet::numbered("b", 2);
        let a = FinSet::numbered("a", 2);
        let f = FinMap::constant(&b, &a, &l("a1")).unwrap();
        let p = Polynomial::from_map(&f);
        let one = FinSet::unit();
        let x = FinFamily::constant(&one, &FinSet::numbered("x", 2));
        let y = FinFamily::constant(&one, &FinSet::numbered("y", 3));
        let phi = FamilyMap::from_fn(&x, &y, |_, e| if e == &l("x0") { l("y2") } else { l("y0") }).unwrap();
        let psi = FamilyMap::from_fn(&y, &x, |_, _| l("x1")).unwrap();
        let lhs = extend_map(&p, &psi.after(&phi).unwrap()).unwrap();
        let rhs = extend_map(&p, &psi).unwrap().after(&extend_map(&p, &phi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let id = extend_map(&p, &FamilyMap::identity(&x)).unwrap();
        assert_eq!(id, FamilyMap::identity(&extend(&p, &x).unwrap()));
        for (_, e) in extend(&p, &x).unwrap().iter().flat_map(|(j, fib)| fib.iter().map(move |e| (j, e))) {
            let moved = extend_map(&p, &phi).unwrap().apply(&Label::star(), e).unwrap().clone();
            let (a, sec) = moved.as_pair().unwrap();
            if a == &l("a1") {
                assert!(section_value(sec, &l("b0")).is_some());
            }
        }
    }
}
