use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{all_maps, FinMap, FinSet};
use crate::label::{section_label, section_value, Label};

use super::Universe;

/// One instance of one row: both sides evaluated to codes, and the explicit
/// comparison between their `El`s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCheck {
    pub row: &'static str,
    pub instance: String,
    pub lhs_code: Option<Label>,
    pub rhs_code: Option<Label>,
    pub lhs_size: usize,
    pub rhs_size: usize,
    pub bijective: bool,
    /// Equal codes and the identity comparison.
    pub strict: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoRow {
    pub row: &'static str,
    pub law: &'static str,
    pub checked: usize,
    pub passed: usize,
    pub strict: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub rows: Vec<IsoRow>,
    pub checks: Vec<IsoCheck>,
}

impl IsoReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.bijective)
    }

    pub fn all_strict(&self) -> bool {
        self.checks.iter().all(|c| c.strict)
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }
}

const ROWS: [(&str, &str); 5] = [
    ("sigma-assoc", "Σ_{x:A} Σ_{y:B(x)} C(x,y) ≅ Σ_{⟨x,y⟩:Σ_{x:A} B(x)} C(x,y)"),
    ("sigma-right-unit", "Σ_{x:A} 1 ≅ A"),
    ("sigma-left-unit", "Σ_{x:1} A ≅ A"),
    ("pi-currying", "Π_{x:A} Π_{y:B(x)} C(x,y) ≅ Π_{⟨x,y⟩:Σ_{x:A} B(x)} C(x,y)"),
    ("pi-left-unit", "Π_{x:1} A ≅ A"),
];

fn invert(map: &FinMap, e: &Label) -> Result<Label> {
    map.pairs()
        .find(|(_, v)| *v == e)
        .map(|(k, _)| k.clone())
        .ok_or_else(|| Error::NotAnElement { label: e.clone(), context: "image of a comparison map".into() })
}

fn split(x: &Label) -> Result<(Label, Label)> {
    x.as_pair().map(|(a, b)| (a.clone(), b.clone())).ok_or_else(|| Error::Parse(format!("expected a pair, found {x}")))
}

fn lookup(section: &Label, arg: &Label) -> Result<Label> {
    section_value(section, arg).cloned().ok_or_else(|| Error::NotTotal(arg.clone()))
}

fn constant_family(u: &Universe, a: &Label, code: &Label) -> Result<Label> {
    Ok(section_label(u.el_of(a)?.iter().map(|x| (x.clone(), code.clone()))))
}

/// Both sides of one instance and the comparison `El(lhs) → El(rhs)`.
struct Sides {
    lhs: Label,
    rhs: Label,
    map: FinMap,
}

fn sides(u: &Universe, lhs: Label, rhs: Label, mut f: impl FnMut(&Label) -> Result<Label>) -> Result<Sides> {
    let map = FinMap::try_from_fn(u.el_of(&lhs)?, u.el_of(&rhs)?, &mut f)?;
    Ok(Sides { lhs, rhs, map })
}

/// `C` restricted to the fibre over each `x`: `(x, B x, [y ↦ C(x, y)])`.
fn curried(u: &Universe, a: &Label, b: &Label, c: &FinMap) -> Result<Vec<(Label, Label, Label)>> {
    let mut out = Vec::new();
    for x in u.el_of(a)? {
        let bx = lookup(b, x)?;
        let cx = section_label(
            u.el_of(&bx)?
                .iter()
                .map(|y| {
                    Ok((
                        y.clone(),
                        c.apply(&Label::pair(x.clone(), y.clone()))
                            .cloned()
                            .ok_or_else(|| Error::NotTotal(y.clone()))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        );
        out.push((x.clone(), bx, cx));
    }
    Ok(out)
}

/// `z ↦ C(unpair z)` over `El(Σ̂(A, B))`.
fn uncurried(u: &Universe, ab: &Label, pair_ab: &FinMap, c: &FinMap) -> Result<Label> {
    Ok(section_label(
        u.el_of(ab)?
            .iter()
            .map(|z| Ok((z.clone(), c.apply(&invert(pair_ab, z)?).cloned().ok_or_else(|| Error::NotTotal(z.clone()))?)))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn sigma_assoc(u: &Universe, a: &Label, b: &Label, c: &FinMap) -> Result<Sides> {
    let (ab, pair_ab) = u.sigma(a, b)?;
    let inner = curried(u, a, b, c)?;
    let outer_family =
        section_label(inner.iter().map(|(x, bx, cx)| Ok((x.clone(), u.sigma(bx, cx)?.0))).collect::<Result<Vec<_>>>()?);
    let (lhs, pair_l) = u.sigma(a, &outer_family)?;
    let (rhs, pair_r) = u.sigma(&ab, &uncurried(u, &ab, &pair_ab, c)?)?;
    sides(u, lhs, rhs, |e| {
        let (x, e1) = split(&invert(&pair_l, e)?)?;
        let (_, bx, cx) = inner.iter().find(|(k, _, _)| k == &x).ok_or_else(|| Error::NotTotal(x.clone()))?;
        let (_, pair_x) = u.sigma(bx, cx)?;
        let (y, w) = split(&invert(&pair_x, &e1)?)?;
        let z = pair_ab.apply(&Label::pair(x, y)).ok_or_else(|| Error::NotTotal(e.clone()))?.clone();
        pair_r.apply(&Label::pair(z, w)).cloned().ok_or_else(|| Error::NotTotal(e.clone()))
    })
}

fn pi_currying(u: &Universe, a: &Label, b: &Label, c: &FinMap) -> Result<Sides> {
    let (ab, pair_ab) = u.sigma(a, b)?;
    let inner = curried(u, a, b, c)?;
    let outer_family =
        section_label(inner.iter().map(|(x, bx, cx)| Ok((x.clone(), u.pi(bx, cx)?.0))).collect::<Result<Vec<_>>>()?);
    let (lhs, lam_l) = u.pi(a, &outer_family)?;
    let (rhs, lam_r) = u.pi(&ab, &uncurried(u, &ab, &pair_ab, c)?)?;
    sides(u, lhs, rhs, |e| {
        let outer = invert(&lam_l, e)?;
        let mut flat = Vec::new();
        for (x, bx, cx) in &inner {
            let (_, lam_x) = u.pi(bx, cx)?;
            let g = invert(&lam_x, &lookup(&outer, x)?)?;
            for y in u.el_of(bx)? {
                let z = pair_ab
                    .apply(&Label::pair(x.clone(), y.clone()))
                    .ok_or_else(|| Error::NotTotal(y.clone()))?
                    .clone();
                flat.push((z, lookup(&g, y)?));
            }
        }
        flat.sort();
        let section = section_label(flat);
        lam_r.apply(&section).cloned().ok_or_else(|| Error::NotAnElement { label: section, context: "Π-set".into() })
    })
}

fn record(row: &'static str, instance: String, outcome: Result<Sides>) -> IsoCheck {
    match outcome {
        Ok(s) => IsoCheck {
            row,
            instance,
            lhs_size: s.map.dom().len(),
            rhs_size: s.map.cod().len(),
            bijective: s.map.is_bijective(),
            strict: s.lhs == s.rhs && s.map.is_identity(),
            lhs_code: Some(s.lhs),
            rhs_code: Some(s.rhs),
            error: None,
        },
        Err(e) => IsoCheck {
            row,
            instance,
            lhs_code: None,
            rhs_code: None,
            lhs_size: 0,
            rhs_size: 0,
            bijective: false,
            strict: false,
            error: Some(e.to_string()),
        },
    }
}

/// Checks the five `Σ`/`Π` type isomorphisms for every choice of codes
/// `A`, `B : El(A) → U` and `C : Σ_{x:A} El(B x) → U`.
pub fn verify_type_isos(u: &Universe) -> Result<IsoReport> {
    let unit = u.unit_code().clone();
    let star = u.unit_elem().clone();
    let mut checks = Vec::new();
    for a in u.codes() {
        // Σ_{x:A} 1 ≅ A
        let outcome = constant_family(u, a, &unit).and_then(|ones| {
            let (lhs, pairing) = u.sigma(a, &ones)?;
            sides(u, lhs, a.clone(), |e| Ok(split(&invert(&pairing, e)?)?.0))
        });
        checks.push(record(ROWS[1].0, format!("A={a}"), outcome));
        // Σ_{x:1} A ≅ A
        let outcome = constant_family(u, &unit, a).and_then(|fam| {
            let (lhs, pairing) = u.sigma(&unit, &fam)?;
            sides(u, lhs, a.clone(), |e| Ok(split(&invert(&pairing, e)?)?.1))
        });
        checks.push(record(ROWS[2].0, format!("A={a}"), outcome));
        // Π_{x:1} A ≅ A
        let outcome = constant_family(u, &unit, a).and_then(|fam| {
            let (lhs, lambda) = u.pi(&unit, &fam)?;
            sides(u, lhs, a.clone(), |e| lookup(&invert(&lambda, e)?, &star))
        });
        checks.push(record(ROWS[4].0, format!("A={a}"), outcome));

        for b in u.families(a)? {
            let dom = u.sigma_domain(a, &b)?;
            for c in all_maps(&dom, u.codes())? {
                let instance =
                    format!("A={a} B={b} C={}", section_label(c.pairs().map(|(k, v)| (k.clone(), v.clone()))));
                checks.push(record(ROWS[0].0, instance.clone(), sigma_assoc(u, a, &b, &c)));
                checks.push(record(ROWS[3].0, instance, pi_currying(u, a, &b, &c)));
            }
        }
    }
    checks.sort_by_key(|c| ROWS.iter().position(|(r, _)| *r == c.row));
    let rows = ROWS
        .iter()
        .map(|(row, law)| {
            let mine: Vec<_> = checks.iter().filter(|c| c.row == *row).collect();
            IsoRow {
                row,
                law,
                checked: mine.len(),
                passed: mine.iter().filter(|c| c.bijective).count(),
                strict: mine.iter().filter(|c| c.strict).count(),
            }
        })
        .collect();
    Ok(IsoReport { rows, checks })
}

/// Codes `A` of `U` whose `El` has exactly `n` elements.
pub fn codes_of_size(u: &Universe, n: usize) -> Vec<Label> {
    u.codes().iter().filter(|c| u.el_of(c).map(FinSet::len) == Ok(n)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naturalmodel::{mk_bool_universe, mk_skewed_universe};

    #[test]
    fn bool_sweep_is_strict() {
        let report = verify_type_isos(&mk_bool_universe()).unwrap();
        assert!(report.all_pass());
        assert!(report.all_strict());
        assert_eq!(report.rows.len(), 5);
        // Σ_A Σ_B |U|^{|Σ El B|}: A = code0 gives 1, A = code1 gives 1 + 2
        assert_eq!(report.rows[0].checked, 4);
        for row in &report.rows[1..3] {
            assert_eq!(row.checked, 2);
        }
    }

    #[test]
    fn skewed_sweep_passes_but_is_not_strict() {
        let u = mk_skewed_universe();
        let report = verify_type_isos(&u).unwrap();
        assert!(report.all_pass(), "{:?}", report.checks.iter().find(|c| !c.bijective));
        assert!(!report.all_strict());
        let unit_row = report.checks.iter().find(|c| c.row == "sigma-right-unit" && c.instance == "A=code1b").unwrap();
        assert_eq!(unit_row.lhs_code, Some(Label::atom("code1a")));
        assert!(!unit_row.strict);
    }

    #[test]
    fn sizes_agree_on_every_check() {
        for u in [mk_bool_universe(), mk_skewed_universe()] {
            for c in verify_type_isos(&u).unwrap().checks {
                assert_eq!(c.lhs_size, c.rhs_size, "{}", c.instance);
            }
        }
        assert_eq!(codes_of_size(&mk_skewed_universe(), 1).len(), 2);
    }
}
