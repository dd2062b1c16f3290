use crate::cell::PolyMorphism;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::label::{section_entries, section_label, Label};
use crate::poly::{compose, Polynomial};

use super::lift::lift_apply;
use super::Universe;

fn split(x: &Label) -> Result<(&Label, &Label)> {
    x.as_pair().ok_or_else(|| Error::Parse(format!("expected a pair, found {x}")))
}

/// Re-keys a section over `Ů`-elements `(A, x)` by the raw `x`.
fn by_fibre_element(section: &Label, value: impl Fn(&Label) -> Result<Label>) -> Result<Label> {
    let entries = section_entries(section).ok_or_else(|| Error::Parse(format!("not a section: {section}")))?;
    let mut out = Vec::with_capacity(entries.len());
    for (d, v) in entries {
        out.push((split(d)?.1.clone(), value(v)?));
    }
    Ok(section_label(out))
}

/// `η : i_1 ⇒ p`, the unit square `1 → Ů, 1 → U` at `(1̂, ⋆̂)`.
pub fn unit_structure(u: &Universe) -> Result<PolyMorphism> {
    u.check_unit()?;
    let p = u.polynomial();
    let one = Polynomial::identity(&FinSet::unit());
    let star = Label::pair(u.unit_code().clone(), u.unit_elem().clone());
    let m1 = FinMap::constant(one.b(), p.b(), &star)?;
    let m0 = FinMap::constant(one.a(), p.a(), u.unit_code())?;
    PolyMorphism::from_square(&one, &p, &m1, &m0)
}

/// `μ : p·p ⇒ p` on the engine's own composite: an operation
/// `(A, [d ↦ (B d, d)])` goes to `Σ̂(A, B)` and an arity
/// `((B x, y), (m, (A, x)))` to `pair̂(x, y)`.
pub fn sigma_structure(u: &Universe) -> Result<PolyMorphism> {
    u.check_sigma()?;
    let p = u.polynomial();
    let pp = compose(&p, &p)?.poly;
    let family_of = |m: &Label| -> Result<(Label, Label)> {
        let (a, section) = split(m)?;
        Ok((a.clone(), by_fibre_element(section, |v| Ok(split(v)?.0.clone()))?))
    };
    let on_m = FinMap::try_from_fn(pp.a(), p.a(), |m| {
        let (a, b) = family_of(m)?;
        Ok(u.sigma(&a, &b)?.0)
    })?;
    let on_n = FinMap::try_from_fn(pp.b(), p.b(), |n| {
        let (inner, rest) = split(n)?;
        let (m, d) = split(rest)?;
        let (a, b) = family_of(m)?;
        let (code, pairing) = u.sigma(&a, &b)?;
        let xy = Label::pair(split(d)?.1.clone(), split(inner)?.1.clone());
        let e =
            pairing.apply(&xy).ok_or_else(|| Error::NotAnElement { label: xy.clone(), context: "Σ-set".into() })?;
        Ok(Label::pair(code, e.clone()))
    })?;
    PolyMorphism::from_square(&pp, &p, &on_n, &on_m)
}

/// `ζ : P_p(p) ⇒ p`: `(A, [(A, x) ↦ B x])` goes to `Π̂(A, B)` and
/// `(A, [(A, x) ↦ (B x, y_x)])` to `λ̂(x ↦ y_x)`.
pub fn pi_structure(u: &Universe) -> Result<PolyMorphism> {
    u.check_pi()?;
    let base = u.projection();
    let p = u.polynomial();
    let src = Polynomial::from_map(&lift_apply(&base, &base)?);
    let on_m = FinMap::try_from_fn(src.a(), p.a(), |e| {
        let (a, section) = split(e)?;
        let b = by_fibre_element(section, |v| Ok(v.clone()))?;
        Ok(u.pi(a, &b)?.0)
    })?;
    let on_n = FinMap::try_from_fn(src.b(), p.b(), |e| {
        let (a, section) = split(e)?;
        let b = by_fibre_element(section, |v| Ok(split(v)?.0.clone()))?;
        let ys = by_fibre_element(section, |v| Ok(split(v)?.1.clone()))?;
        let (code, lambda) = u.pi(a, &b)?;
        let value =
            lambda.apply(&ys).ok_or_else(|| Error::NotAnElement { label: ys.clone(), context: "Π-set".into() })?;
        Ok(Label::pair(code, value.clone()))
    })?;
    PolyMorphism::from_square(&src, &p, &on_n, &on_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::is_pullback_square;
    use crate::naturalmodel::{mk_bool_universe, mk_corrupted_universe, mk_skewed_universe};

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    #[test]
    fn bool_unit_picks_code1() {
        let eta = unit_structure(&mk_bool_universe()).unwrap();
        assert!(eta.is_cartesian());
        assert_eq!(eta.phi0().apply(&Label::star()), Some(&l("code1")));
        let sq = eta.square_map().unwrap();
        assert_eq!(sq.apply(&Label::star()), Some(&Label::pair(l("code1"), l("pt"))));
        assert!(is_pullback_square(eta.src().f(), &sq, eta.phi0(), eta.dst().f()));
    }

    #[test]
    fn skewed_unit_picks_code1b() {
        let eta = unit_structure(&mk_skewed_universe()).unwrap();
        assert_eq!(eta.phi0().apply(&Label::star()), Some(&l("code1b")));
    }

    #[test]
    fn bool_composite_base_and_sigma_values() {
        let mu = sigma_structure(&mk_bool_universe()).unwrap();
        assert!(mu.is_cartesian());
        // independent count: Σ_{A} |U|^{|El A|} = 1 + 2
        let oracle: usize = [0u32, 1].iter().map(|&n| 2usize.pow(n)).sum();
        assert_eq!(mu.src().a().len(), oracle);
        let mut values: Vec<_> = mu.phi0().pairs().map(|(_, c)| c.clone()).collect();
        values.sort();
        assert_eq!(values, vec![l("code0"), l("code0"), l("code1")]);
    }

    #[test]
    fn skewed_sigma_lands_in_code1a_on_singletons() {
        let u = mk_skewed_universe();
        let mu = sigma_structure(&u).unwrap();
        for (_, c) in mu.phi0().pairs() {
            let size = u.el_of(c).unwrap().len();
            assert!(size == 0 && c == &l("code0") || size == 1 && c == &l("code1a"));
        }
    }

    #[test]
    fn pi_structure_on_builtins() {
        let u = mk_bool_universe();
        let zeta = pi_structure(&u).unwrap();
        assert!(zeta.is_cartesian());
        let empty = Label::pair(l("code0"), section_label(Vec::new()));
        assert_eq!(zeta.phi0().apply(&empty), Some(&l("code1")));
        assert!(pi_structure(&mk_skewed_universe()).unwrap().is_cartesian());
    }

    #[test]
    fn corrupted_universe_is_rejected_at_sigma() {
        let u = mk_corrupted_universe();
        assert!(unit_structure(&u).is_ok());
        assert!(sigma_structure(&u).is_err());
        assert!(pi_structure(&u).is_ok());
    }
}
