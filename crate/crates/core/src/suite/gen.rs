//! Seeded random instances. Every generator produces a valid object by
//! construction; sizes are bounded by `max`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cell::PolyMorphism;
use crate::error::Result;
use crate::finset::{pullback, FamilyMap, FinFamily, FinMap, FinSet};
use crate::label::Label;
use crate::naturalmodel::Universe;
use crate::poly::Polynomial;

pub fn random_set<R: Rng>(rng: &mut R, prefix: &str, lo: usize, hi: usize) -> FinSet {
    FinSet::numbered(prefix, rng.gen_range(lo..=hi.max(lo)))
}

/// A uniformly random map, or `None` when `dom` is inhabited and `cod` empty.
pub fn random_map<R: Rng>(rng: &mut R, dom: &FinSet, cod: &FinSet) -> Option<FinMap> {
    if cod.is_empty() && !dom.is_empty() {
        return None;
    }
    Some(FinMap::from_fn(dom, cod, |_| cod.get(rng.gen_range(0..cod.len())).clone()).expect("values lie in cod"))
}

/// A random bijection `numbered(prefix, |set|) → set`.
pub fn random_relabelling<R: Rng>(rng: &mut R, prefix: &str, set: &FinSet) -> FinMap {
    let fresh = FinSet::numbered(prefix, set.len());
    let mut order: Vec<_> = set.iter().cloned().collect();
    order.shuffle(rng);
    let pairs: Vec<_> = fresh.iter().cloned().zip(order).collect();
    FinMap::from_pairs(&fresh, set, &pairs).expect("a bijection")
}

/// A random polynomial `I ⇸ J` with `|A|, |B| ≤ max`, and `A` inhabited
/// when `J` is.
pub fn random_polynomial<R: Rng>(rng: &mut R, i: &FinSet, j: &FinSet, max: usize) -> Polynomial {
    let a = if j.is_empty() { FinSet::empty() } else { random_set(rng, "a", 1, max) };
    let b = if a.is_empty() || i.is_empty() { FinSet::empty() } else { random_set(rng, "b", 0, max) };
    let s = random_map(rng, &b, i).expect("I is inhabited when B is");
    let f = random_map(rng, &b, &a).expect("A is inhabited when B is");
    let t = random_map(rng, &a, j).expect("J is inhabited when A is");
    Polynomial::new(s, f, t).expect("shapes agree")
}

/// A random map `B → A` with `1 ≤ |A| ≤ max` and `|B| ≤ max`, as a
/// polynomial `1 ⇸ 1`.
pub fn random_one_to_one<R: Rng>(rng: &mut R, max: usize) -> Polynomial {
    let a = random_set(rng, "a", 1, max);
    let b = random_set(rng, "b", 0, max);
    Polynomial::from_map(&random_map(rng, &b, &a).expect("A is inhabited"))
}

/// A cartesian morphism `F ⇒ G` into a given `G`: a random `φ0` over `J`,
/// with `F` the relabelled pullback of `g` along it.
pub fn random_cartesian_into<R: Rng>(rng: &mut R, g: &Polynomial, max: usize) -> Result<PolyMorphism> {
    let a = if g.a().is_empty() { FinSet::empty() } else { random_set(rng, "a", 0, max) };
    let phi0 = random_map(rng, &a, g.a()).expect("C is inhabited when A is");
    let t = g.t().after(&phi0)?;
    let square = pullback(&phi0, g.f())?;
    let relabel = random_relabelling(rng, "b", &square.apex);
    let f = square.left.after(&relabel)?;
    let s = g.s().after(&square.right)?.after(&relabel)?;
    let src = Polynomial::new(s, f, t)?;
    PolyMorphism::from_square(&src, g, &square.right.after(&relabel)?, &phi0)
}

/// A general, possibly non-cartesian, morphism `F ⇒ G` into a given `G`:
/// every point of the lower pullback is sent to an arity of `F`, either
/// reusing a compatible one or creating a fresh one, and a few unused
/// arities are added.
pub fn random_morphism_into<R: Rng>(rng: &mut R, g: &Polynomial, max: usize) -> Result<PolyMorphism> {
    let a = if g.a().is_empty() { FinSet::empty() } else { random_set(rng, "a", 0, max) };
    let phi0 = random_map(rng, &a, g.a()).expect("C is inhabited when A is");
    let t = g.t().after(&phi0)?;
    let square = pullback(&phi0, g.f())?;
    // arities as (name, a, i)
    let mut arities: Vec<(Label, Label, Label)> = Vec::new();
    let mut phi2 = Vec::new();
    for delta in square.apex.iter() {
        let a_val = square.left.apply(delta).unwrap().clone();
        let i_val = g.s().apply(square.right.apply(delta).unwrap()).unwrap().clone();
        let reusable: Vec<usize> =
            (0..arities.len()).filter(|&k| arities[k].1 == a_val && arities[k].2 == i_val).collect();
        let k = if !reusable.is_empty() && rng.gen_bool(0.5) {
            *reusable.choose(rng).unwrap()
        } else {
            arities.push((Label::atom(format!("b{}", arities.len())), a_val, i_val));
            arities.len() - 1
        };
        phi2.push((delta.clone(), arities[k].0.clone()));
    }
    if !a.is_empty() && !g.i().is_empty() && arities.len() < max && rng.gen_bool(0.5) {
        let a_val = a.get(rng.gen_range(0..a.len())).clone();
        let i_val = g.i().get(rng.gen_range(0..g.i().len())).clone();
        arities.push((Label::atom(format!("b{}", arities.len())), a_val, i_val));
    }
    let b = FinSet::new(arities.iter().map(|(name, _, _)| name.clone()))?;
    let f_pairs: Vec<_> = arities.iter().map(|(n, a, _)| (n.clone(), a.clone())).collect();
    let s_pairs: Vec<_> = arities.iter().map(|(n, _, i)| (n.clone(), i.clone())).collect();
    let src = Polynomial::new(FinMap::from_pairs(&b, g.i(), &s_pairs)?, FinMap::from_pairs(&b, &a, &f_pairs)?, t)?;
    let phi2 = FinMap::from_pairs(&square.apex, &b, &phi2)?;
    PolyMorphism::new(&src, g, phi0, square.right, phi2)
}

/// A random morphism `F ⇒ G` between given polynomials, or `None` when a
/// random choice of `φ0` leaves some point of the pullback without a
/// compatible arity.
pub fn random_morphism_between<R: Rng>(rng: &mut R, f: &Polynomial, g: &Polynomial) -> Result<Option<PolyMorphism>> {
    let mut phi0 = Vec::new();
    for a in f.a() {
        let j = f.t().apply(a).unwrap();
        let options: Vec<&Label> = g.a().iter().filter(|c| g.t().apply(c) == Some(j)).collect();
        let Some(c) = options.choose(rng) else { return Ok(None) };
        phi0.push((a.clone(), (*c).clone()));
    }
    let phi0 = FinMap::from_pairs(f.a(), g.a(), &phi0)?;
    let square = pullback(&phi0, g.f())?;
    let mut phi2 = Vec::new();
    for delta in square.apex.iter() {
        let a = square.left.apply(delta).unwrap();
        let i = g.s().apply(square.right.apply(delta).unwrap()).unwrap();
        let options: Vec<Label> = f.f().fibre(a).iter().filter(|b| f.s().apply(b) == Some(i)).cloned().collect();
        let Some(b) = options.choose(rng) else { return Ok(None) };
        phi2.push((delta.clone(), b.clone()));
    }
    let phi2 = FinMap::from_pairs(&square.apex, f.b(), &phi2)?;
    PolyMorphism::new(f, g, phi0, square.right, phi2).map(Some)
}

/// A random morphism between random polynomials with endpoints of size at
/// most 2.
pub fn random_morphism<R: Rng>(rng: &mut R, max: usize) -> Result<PolyMorphism> {
    let i = random_set(rng, "i", 1, 2.min(max.max(1)));
    let j = random_set(rng, "j", 1, 2.min(max.max(1)));
    let g = random_polynomial(rng, &i, &j, max);
    random_morphism_into(rng, &g, max)
}

/// A cartesian `φ′ : F ⇒ G` parallel to a cartesian `φ`: each operation is
/// sent to a random code with a fibre of the same size, via a random
/// bijection of fibres.
pub fn random_parallel_cartesian<R: Rng>(rng: &mut R, phi: &PolyMorphism) -> Result<PolyMorphism> {
    let (f, g) = (phi.src(), phi.dst());
    let mut phi0 = Vec::new();
    let mut m1 = Vec::new();
    for a in f.a() {
        let arity = f.f().fibre(a);
        let ends = g.t().fibre(f.t().apply(a).unwrap());
        let options: Vec<&Label> = ends.iter().filter(|c| g.f().fibre(c).len() == arity.len()).collect();
        let c = (*options.choose(rng).expect("φ0(a) itself qualifies")).clone();
        let mut targets: Vec<Label> = g.f().fibre(&c).iter().cloned().collect();
        targets.shuffle(rng);
        // the sources must agree on I
        let ok = arity.iter().zip(&targets).all(|(b, d)| f.s().apply(b) == g.s().apply(d));
        let (c, targets) = if ok {
            (c, targets)
        } else {
            let c0 = phi.phi0().apply(a).unwrap().clone();
            let square = phi.square_map()?;
            (c0, arity.iter().map(|b| square.apply(b).unwrap().clone()).collect())
        };
        phi0.push((a.clone(), c));
        m1.extend(arity.iter().cloned().zip(targets));
    }
    PolyMorphism::from_square(f, g, &FinMap::from_pairs(f.b(), g.b(), &m1)?, &FinMap::from_pairs(f.a(), g.a(), &phi0)?)
}

/// A family over `index` with fibres of size between `lo` and `hi`.
pub fn random_family<R: Rng>(rng: &mut R, index: &FinSet, lo: usize, hi: usize) -> FinFamily {
    FinFamily::from_fn(index, |i| {
        let n = rng.gen_range(lo..=hi.max(lo));
        FinSet::new((0..n).map(|k| Label::pair(i.clone(), Label::atom(format!("x{k}"))))).unwrap()
    })
}

/// A random map of families over the same index, or `None` if some fibre
/// has no maps.
pub fn random_family_map<R: Rng>(rng: &mut R, src: &FinFamily, dst: &FinFamily) -> Option<FamilyMap> {
    let comps =
        src.fibres().iter().zip(dst.fibres()).map(|(x, y)| random_map(rng, x, y)).collect::<Option<Vec<_>>>()?;
    FamilyMap::new(src.clone(), dst.clone(), comps).ok()
}

/// A closed finite universe: between one and `max - 1` empty codes and
/// singleton codes each, a random unit, and random choices of output code
/// of the right size for `Σ̂` and `Π̂`.
///
/// Closure under `Π` and `Σ` forces every `El` to have at most one element.
pub fn random_universe<R: Rng>(rng: &mut R, max: usize) -> Universe {
    let half = (max / 2).max(1);
    let zeros = rng.gen_range(1..=half);
    let ones = rng.gen_range(1..=half);
    let mut fibres = Vec::new();
    for k in 0..zeros {
        fibres.push((Label::atom(format!("z{k}")), FinSet::empty()));
    }
    for k in 0..ones {
        fibres.push((Label::atom(format!("o{k}")), FinSet::new([Label::atom(format!("e{k}"))]).unwrap()));
    }
    let codes = FinSet::new(fibres.iter().map(|(c, _)| c.clone())).unwrap();
    let el = FinFamily::from_pairs(&codes, fibres).unwrap();
    let unit = rng.gen_range(0..ones);
    let by_size =
        |n: usize| -> Vec<Label> { el.iter().filter(|(_, fibre)| fibre.len() == n).map(|(c, _)| c.clone()).collect() };
    let (empty, single) = (by_size(0), by_size(1));
    Universe::tabulate(el.clone(), Label::atom(format!("o{unit}")), Label::atom(format!("e{unit}")), |_, _, _, n| {
        match n {
            0 => empty.choose(rng).cloned(),
            1 => single.choose(rng).cloned(),
            _ => None,
        }
    })
    .expect("sizes never exceed one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let phi = random_morphism(&mut rng, 3).unwrap();
            PolyMorphism::new(phi.src(), phi.dst(), phi.phi0().clone(), phi.phi1().clone(), phi.phi2().clone())
                .unwrap();
            let g = phi.dst().clone();
            let cart = random_cartesian_into(&mut rng, &g, 3).unwrap();
            assert!(cart.is_cartesian());
            let other = random_parallel_cartesian(&mut rng, &cart).unwrap();
            assert_eq!(other.src(), cart.src());
            random_universe(&mut rng, 4).validate().unwrap();
            if let Some(general) = random_morphism_between(&mut rng, cart.src(), &g).unwrap() {
                assert_eq!(general.dst(), &g);
            }
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let gen = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_morphism(&mut rng, 3).unwrap()
        };
        assert_eq!(gen(3), gen(3));
    }
}
