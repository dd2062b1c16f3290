//! The laws checked by each suite, one draw function per random suite and
//! one evaluator for the universe suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cell::{
    adj_vcomp, hcomp, locally_codiscrete, pentagon, same_square, search_adjustments, triangle, Adjustment, PolyMorphism,
};
use crate::error::{Error, Result};
use crate::finset::{is_pullback_square, FamilyMap, FinMap};
use crate::internalcat::{
    adjustment_to_nat, equivalence_table, internal_full_subcat, internal_functor, nat_to_adjustment, search_nat_trans,
};
use crate::naturalmodel::{
    lift_apply, lift_apply_square, lift_object, mk_bool_universe, mk_skewed_universe, pseudoalgebra_from,
    pseudomonad_from, sigma_structure, unit_structure, verify_type_isos, LiftedEndofunctor, Universe,
};
use crate::poly::{compose, extend_map, extension_composition_iso, slice_reduce, slice_reduce_morphism, Polynomial};

use super::{gen, Check, Instance, InstanceGenConfig};

/// Every law id with the statement it checks.
pub const LAWS: &[(&str, &str)] = &[
    ("bicategory-laws/vertical-unit", "id ∘ φ and φ ∘ id are φ up to the canonical vertex comparison"),
    (
        "bicategory-laws/vertical-associativity",
        "(χ ∘ ψ) ∘ φ and χ ∘ (ψ ∘ φ) agree up to the canonical vertex comparison",
    ),
    ("bicategory-laws/horizontal-unit", "id_G · id_F presents the same square as id_{G·F}"),
    ("bicategory-laws/interchange", "(ψ′ ∘ ψ) · (φ′ ∘ φ) = (ψ′ · φ′) ∘ (ψ · φ) for cartesian cells"),
    ("bicategory-laws/locally-codiscrete", "exactly one adjustment between parallel cartesian cells"),
    ("bicategory-laws/adjustment-unit", "adjVComp(id, α) = α"),
    ("coherence/pentagon", "the two composites ((K·H)·G)·F ⇒ K·(H·(G·F)) are equal"),
    ("coherence/triangle", "(G·1)·F ⇒ G·F through the associator equals the unitor"),
    ("coherence/locally-codiscrete", "exactly one adjustment into a cartesian cell, equal to ψ2⁻¹∘φ2"),
    ("internal-equiv/category-laws", "𝔸_f satisfies the unit and associativity laws"),
    ("internal-equiv/functor-laws", "𝔸_φ preserves endpoints, identities and composition"),
    ("internal-equiv/functoriality", "𝔸_{ψ∘φ} = 𝔸_ψ ∘ 𝔸_φ"),
    ("internal-equiv/full-faithful", "𝔸_φ is full and faithful for cartesian φ"),
    (
        "internal-equiv/four-way",
        "naturality, fibrewise naturality, commuting with every k and ψ2∘α = φ2 agree for every candidate α",
    ),
    (
        "internal-equiv/count",
        "adjustments φ ⇛ φ′ and natural transformations 𝔸_φ ⇒ 𝔸_φ′ are equinumerous (exactly one)",
    ),
    ("internal-equiv/round-trip", "adjustment → natural transformation → adjustment is the identity"),
    ("extension-composition/round-trip", "P_{G·F}(X) ≅ P_G(P_F(X)) composes to the identity both ways on every fibre"),
    ("extension-composition/naturality", "the comparison P_{G·F}(X) ≅ P_G(P_F(X)) is natural in X"),
    ("unique-adjustment/exactly-one", "exhaustive search finds exactly one adjustment into a cartesian cell"),
    ("unique-adjustment/formula", "the adjustment found is ψ2⁻¹∘φ2"),
    ("lift/identity", "P(id) = id"),
    ("lift/composite", "P(g ∘ f) = P(g) ∘ P(f)"),
    ("lift/pullback", "P sends pullback squares to pullback squares"),
    ("lift/unit-pullback", "the square h_f : f ⇒ P(f) is a pullback"),
    ("lift/mult-pullback", "the square m_f : P(P(f)) ⇒ P(f) is a pullback"),
    ("lift/unit-natural", "the unit X → P(X) is natural"),
    ("lift/mult-natural", "the multiplication P(P(X)) → P(X) is natural"),
    ("slice-reduction/polynomial-round-trip", "S⁻¹(S(F)) = F"),
    ("slice-reduction/morphism-round-trip", "S⁻¹(S(φ)) = φ and every fibre of S(φ) is a morphism"),
    ("slice-reduction/cartesian-preserved", "φ is cartesian iff S(φ) is, iff S⁻¹(S(φ)) is"),
    ("universe/well-formed", "the unit, Σ and Π tables are total and given by pullback squares"),
    ("pseudomonad/structure", "η and μ are cartesian and α, λ, ρ exist and are invertible"),
    ("pseudomonad/associativity-pasting", "the associativity pasting equation of a pseudomonad"),
    ("pseudomonad/unit-pasting", "the unit pasting equation of a pseudomonad"),
    ("pseudomonad/strict", "α, λ and ρ are identities"),
    ("pseudomonad/non-strict-unit", "ρ is invertible but not an identity: strict right unit fails on some code"),
    ("pseudoalgebra/structure", "ζ is cartesian and σ, τ exist and are invertible"),
    ("pseudoalgebra/associativity-pasting", "the associativity pasting equation of a pseudoalgebra"),
    ("pseudoalgebra/unit-pasting", "the unit pasting equation of a pseudoalgebra"),
    ("pseudoalgebra/strict", "α, λ, ρ, σ and τ are identities"),
    ("pseudoalgebra/non-strict-unit", "τ is invertible but not an identity"),
    ("type-isos/sigma-assoc", "Σ_{x:A} Σ_{y:B(x)} C(x,y) ≅ Σ_{⟨x,y⟩:Σ_{x:A} B(x)} C(x,y)"),
    ("type-isos/sigma-right-unit", "Σ_{x:A} 1 ≅ A"),
    ("type-isos/sigma-left-unit", "Σ_{x:1} A ≅ A"),
    ("type-isos/pi-currying", "Π_{x:A} Π_{y:B(x)} C(x,y) ≅ Π_{⟨x,y⟩:Σ_{x:A} B(x)} C(x,y)"),
    ("type-isos/pi-left-unit", "Π_{x:1} A ≅ A"),
    ("type-isos/strict", "every isomorphism is an equality of codes with the identity comparison"),
    ("type-isos/non-strict-witness", "some isomorphism is a non-identity bijection"),
];

fn shape(p: &Polynomial) -> String {
    format!("{}←{}→{}→{}", p.i().len(), p.b().len(), p.a().len(), p.j().len())
}

fn shapes(ps: &[&Polynomial]) -> String {
    ps.iter().map(|p| shape(p)).collect::<Vec<_>>().join(" ")
}

/// The adjustment `a ⇛ b` through the chosen pullbacks `A ×_C D` of both
/// vertices, when `a` and `b` share `φ0`.
fn canonical_adjustment(a: &PolyMorphism, b: &PolyMorphism) -> Result<Adjustment> {
    if a.phi0() != b.phi0() {
        return Err(Error::NotCommuting("the two cells have different φ0".into()));
    }
    let alpha = b.vertex_comparison().inverse()?.after(&a.vertex_comparison())?;
    Adjustment::new(a, b, alpha)
}

fn agree_up_to_vertex(law: &'static str, a: &PolyMorphism, b: &PolyMorphism) -> Result<Check> {
    let outcome = canonical_adjustment(a, b).map(|adj| adj.is_invertible() && adj.is_trivial());
    Check::from_result(law, outcome, || format!("{a:?} vs {b:?}"))
}

pub(super) fn bicategory_laws(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let ends = max.clamp(1, 2);
    let i = gen::random_set(rng, "i", 1, ends);
    let j = gen::random_set(rng, "j", 1, ends);
    let k = gen::random_set(rng, "k", 1, ends);
    let f = gen::random_polynomial(rng, &i, &j, max);
    let g = gen::random_polynomial(rng, &j, &k, max);
    let phi2 = gen::random_cartesian_into(rng, &f, max)?;
    let phi1 = gen::random_cartesian_into(rng, phi2.src(), max)?;
    let psi2 = gen::random_cartesian_into(rng, &g, max)?;
    let psi1 = gen::random_cartesian_into(rng, psi2.src(), max)?;
    let chi = gen::random_morphism_into(rng, &f, max)?;
    let omega = gen::random_morphism_into(rng, chi.src(), max)?;
    let xi = gen::random_morphism_into(rng, omega.src(), max)?;
    let alt = gen::random_parallel_cartesian(rng, &phi2)?;

    let mut checks = vec![
        agree_up_to_vertex("bicategory-laws/vertical-unit", &PolyMorphism::identity(chi.src()).then(&chi)?, &chi)?,
        agree_up_to_vertex("bicategory-laws/vertical-unit", &chi.then(&PolyMorphism::identity(&f))?, &chi)?,
        agree_up_to_vertex(
            "bicategory-laws/vertical-associativity",
            &xi.then(&omega)?.then(&chi)?,
            &xi.then(&omega.then(&chi)?)?,
        )?,
    ];
    let id_gf = PolyMorphism::identity(&compose(&g, &f)?.poly);
    let h_id = hcomp(&PolyMorphism::identity(&g), &PolyMorphism::identity(&f))?;
    checks.push(Check::when("bicategory-laws/horizontal-unit", same_square(&h_id, &id_gf), || format!("{h_id:?}")));
    let lhs = hcomp(&psi1.then(&psi2)?, &phi1.then(&phi2)?)?;
    let rhs = hcomp(&psi1, &phi1)?.then(&hcomp(&psi2, &phi2)?)?;
    checks.push(Check::when("bicategory-laws/interchange", same_square(&lhs, &rhs), || format!("{lhs:?} vs {rhs:?}")));
    checks.push(Check::from_result("bicategory-laws/locally-codiscrete", locally_codiscrete(&alt, &phi2), || {
        format!("{alt:?} ⇛ {phi2:?}")
    })?);
    let alpha = Adjustment::unique(&alt, &phi2)?;
    let unit = adj_vcomp(&Adjustment::identity(&phi2), &alpha)?;
    checks.push(Check::when("bicategory-laws/adjustment-unit", unit == alpha, || format!("{unit:?}")));
    let descriptor = format!("F={} G={} χ:{}", shape(&f), shape(&g), shapes(&[xi.src(), omega.src(), chi.src()]));
    Ok(Some(Instance { descriptor, checks }))
}

pub(super) fn coherence(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let p: Vec<Polynomial> = (0..4).map(|_| gen::random_one_to_one(rng, max)).collect();
    let pent = pentagon(&p[0], &p[1], &p[2], &p[3])?;
    let tri = triangle(&p[0], &p[1])?;
    let mut checks = vec![
        Check::when("coherence/pentagon", pent.holds(), || format!("{:?} vs {:?}", pent.lhs, pent.rhs)),
        Check::when("coherence/triangle", tri.holds(), || format!("{:?} vs {:?}", tri.lhs, tri.rhs)),
    ];
    let psi = gen::random_cartesian_into(rng, &p[0], max)?;
    let mut sources = vec![gen::random_parallel_cartesian(rng, &psi)?];
    if let Some(general) = gen::random_morphism_between(rng, psi.src(), &p[0])? {
        sources.push(general);
    }
    for phi in &sources {
        checks.push(Check::from_result("coherence/locally-codiscrete", locally_codiscrete(phi, &psi), || {
            format!("{phi:?} ⇛ {psi:?}")
        })?);
    }
    let descriptor = format!("F,G,H,K={}", shapes(&p.iter().collect::<Vec<_>>()));
    Ok(Some(Instance { descriptor, checks }))
}

/// Largest `|B|` of the internal-category instances.
const INTERNAL_MAX_B: usize = 4;

pub(super) fn internal_equiv(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let h = gen::random_one_to_one(rng, max);
    let psi = gen::random_cartesian_into(rng, &h, max)?;
    let phi = gen::random_cartesian_into(rng, psi.src(), max)?;
    let (f, g) = (phi.src().clone(), psi.src().clone());
    if [&f, &g, &h].iter().any(|p| p.b().len() > INTERNAL_MAX_B) {
        return Ok(None);
    }
    let alt = gen::random_parallel_cartesian(rng, &phi)?;
    let mut checks = Vec::new();
    for p in [&f, &g, &h] {
        let laws = internal_full_subcat(p.f())?.check_laws();
        checks.push(match laws {
            Ok(()) => Check::pass("internal-equiv/category-laws"),
            Err(e) => Check::fail("internal-equiv/category-laws", format!("{}: {e}", shape(p))),
        });
    }
    let (a_phi, a_psi, a_alt) = (internal_functor(&phi)?, internal_functor(&psi)?, internal_functor(&alt)?);
    for functor in [&a_phi, &a_psi, &a_alt] {
        checks.push(match functor.check() {
            Ok(()) => Check::pass("internal-equiv/functor-laws"),
            Err(e) => Check::fail("internal-equiv/functor-laws", e.to_string()),
        });
    }
    let composite = internal_functor(&phi.then(&psi)?)?;
    let composed = a_phi.then(&a_psi)?;
    checks.push(Check::when("internal-equiv/functoriality", composite == composed, || {
        format!("{:?} vs {:?}", composite.on_mor, composed.on_mor)
    }));
    for (name, functor) in [("φ", &a_phi), ("ψ", &a_psi), ("φ′", &a_alt)] {
        checks.push(Check::when("internal-equiv/full-faithful", functor.is_full_and_faithful(), || name.to_string()));
    }
    let table = equivalence_table(&phi, &alt)?;
    let disagreement = table.iter().find(|(_, v)| v.iter().any(|b| *b != v[0]));
    checks.push(Check::when("internal-equiv/four-way", disagreement.is_none(), || {
        let (alpha, v) = disagreement.unwrap();
        format!("α = {alpha:?}: {v:?}")
    }));
    let valid = table.iter().filter(|(_, v)| v.iter().all(|b| *b)).count();
    let nats = search_nat_trans(&phi, &alt)?.len();
    let adjustments = search_adjustments(&phi, &alt)?;
    checks.push(Check::when("internal-equiv/count", valid == 1 && nats == 1 && adjustments.len() == 1, || {
        format!("{valid} valid candidates, {nats} natural transformations, {} adjustments", adjustments.len())
    }));
    for alpha in &adjustments {
        let back = nat_to_adjustment(&adjustment_to_nat(alpha)?, &phi, &alt);
        checks
            .push(Check::from_result("internal-equiv/round-trip", back.map(|b| b == *alpha), || format!("{alpha:?}"))?);
    }
    let descriptor = format!("f,g,h={} |candidates|={}", shapes(&[&f, &g, &h]), table.len());
    Ok(Some(Instance { descriptor, checks }))
}

/// Families per extension-composition instance, and maps per family.
const FAMILIES: usize = 3;
const NATURALITY_MAPS: usize = 2;

pub(super) fn extension_composition(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let i = gen::random_set(rng, "i", 1, max);
    let j = gen::random_set(rng, "j", 1, max);
    let k = gen::random_set(rng, "k", 1, max);
    let f = gen::random_polynomial(rng, &i, &j, max);
    let g = gen::random_polynomial(rng, &j, &k, max);
    let gf = compose(&g, &f)?;
    let fibre = max.min(2);
    let mut checks = Vec::new();
    for _ in 0..FAMILIES {
        let x = gen::random_family(rng, &i, 0, fibre);
        let iso = extension_composition_iso(&g, &f, &gf, &x)?;
        let there = iso.backward.after(&iso.forward)? == FamilyMap::identity(iso.forward.src());
        let back = iso.forward.after(&iso.backward)? == FamilyMap::identity(iso.backward.src());
        checks.push(Check::when("extension-composition/round-trip", there && back, || format!("X = {x:?}")));
        for _ in 0..NATURALITY_MAPS {
            let x2 = gen::random_family(rng, &i, 1, fibre);
            let h = gen::random_family_map(rng, &x, &x2).expect("target fibres are inhabited");
            let iso2 = extension_composition_iso(&g, &f, &gf, &x2)?;
            let lhs = iso2.forward.after(&extend_map(&gf.poly, &h)?)?;
            let rhs = extend_map(&g, &extend_map(&f, &h)?)?.after(&iso.forward)?;
            checks.push(Check::when("extension-composition/naturality", lhs == rhs, || format!("h = {h:?}")));
        }
    }
    let descriptor = format!("F={} G={} |G·F|={}", shape(&f), shape(&g), shape(&gf.poly));
    Ok(Some(Instance { descriptor, checks }))
}

/// Largest `|Dφ|` of the unique-adjustment instances.
const ADJUSTMENT_MAX_VERTEX: usize = 4;

pub(super) fn unique_adjustment(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let ends = max.clamp(1, 2);
    let i = gen::random_set(rng, "i", 1, ends);
    let j = gen::random_set(rng, "j", 1, ends);
    let g = gen::random_polynomial(rng, &i, &j, max);
    let psi = gen::random_cartesian_into(rng, &g, max)?;
    let Some(phi) = gen::random_morphism_between(rng, psi.src(), &g)? else { return Ok(None) };
    if phi.vertex().len() > ADJUSTMENT_MAX_VERTEX {
        return Ok(None);
    }
    // empty vertices make the search trivial; keep only a few of them
    if phi.vertex().is_empty() && rng.gen_bool(0.8) {
        return Ok(None);
    }
    let found = search_adjustments(&phi, &psi)?;
    let unique = Adjustment::unique(&phi, &psi)?;
    let checks = vec![
        Check::when("unique-adjustment/exactly-one", found.len() == 1, || format!("{} adjustments", found.len())),
        Check::when("unique-adjustment/formula", found.first() == Some(&unique), || format!("{found:?}")),
    ];
    let descriptor = format!(
        "F={} G={} |Dφ|={} |Dψ|={} cartesian φ: {}",
        shape(psi.src()),
        shape(&g),
        phi.vertex().len(),
        psi.vertex().len(),
        phi.is_cartesian()
    );
    Ok(Some(Instance { descriptor, checks }))
}

pub(super) fn lift(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let y = gen::random_set(rng, "y", 0, max);
    let x = gen::random_set(rng, "x", 1, max.min(2));
    let p = gen::random_map(rng, &y, &x).expect("X is inhabited");
    let target = gen::random_one_to_one(rng, max);
    let phi = gen::random_cartesian_into(rng, &target, max)?;
    let (f, g, m0, m1) = (phi.src().f(), target.f(), phi.phi0(), phi.square_map()?);
    let mut checks = Vec::new();

    let id = lift_apply(&p, &FinMap::identity(g.cod()))?;
    let expected = FinMap::identity(&lift_object(&p, g.cod())?);
    checks.push(Check::when("lift/identity", id == expected, || format!("{id:?}")));
    let whole = lift_apply(&p, &g.after(&m1)?)?;
    let parts = lift_apply(&p, g)?.after(&lift_apply(&p, &m1)?)?;
    checks.push(Check::when("lift/composite", whole == parts, || format!("{whole:?} vs {parts:?}")));
    let (pf, pm1, pm0, pg) = (lift_apply(&p, f)?, lift_apply(&p, &m1)?, lift_apply(&p, m0)?, lift_apply(&p, g)?);
    let square_ok = is_pullback_square(&pf, &pm1, &pm0, &pg) && lift_apply_square(&p, &phi)?.is_cartesian();
    checks.push(Check::when("lift/pullback", square_ok, || format!("P(f) = {pf:?}, P(g) = {pg:?}")));

    let (u, name) = match [0, 1, 2].choose(rng).unwrap() {
        0 => (mk_bool_universe(), "bool"),
        1 => (mk_skewed_universe(), "skewed"),
        _ => (gen::random_universe(rng, max.max(2)), "random"),
    };
    let lifted = LiftedEndofunctor::new(&u.projection(), &unit_structure(&u)?, &sigma_structure(&u)?)?;
    for map in [f, g] {
        let (b, a) = (map.dom(), map.cod());
        let p_map = lifted.on_object(map)?;
        let unit_square = is_pullback_square(map, &lifted.unit_map(b)?, &lifted.unit_map(a)?, &p_map)
            && lifted.unit_at(map)?.is_cartesian();
        checks.push(Check::when("lift/unit-pullback", unit_square, || format!("f = {map:?}")));
        let pp_map = lifted.on_object(&p_map)?;
        let mult_square = is_pullback_square(&pp_map, &lifted.mult_map(b)?, &lifted.mult_map(a)?, &p_map)
            && lifted.mult_at(map)?.is_cartesian();
        checks.push(Check::when("lift/mult-pullback", mult_square, || format!("f = {map:?}")));
    }
    let (b, d) = (m1.dom(), m1.cod());
    let p_m1 = lifted.on_object(&m1)?;
    let unit_lhs = lifted.unit_map(d)?.after(&m1)?;
    let unit_rhs = p_m1.after(&lifted.unit_map(b)?)?;
    checks.push(Check::when("lift/unit-natural", unit_lhs == unit_rhs, || format!("at {m1:?}")));
    let mult_lhs = lifted.mult_map(d)?.after(&lifted.on_object(&p_m1)?)?;
    let mult_rhs = p_m1.after(&lifted.mult_map(b)?)?;
    checks.push(Check::when("lift/mult-natural", mult_lhs == mult_rhs, || format!("at {m1:?}")));

    let descriptor =
        format!("p:{}→{} square {}⇒{} universe {name}", y.len(), x.len(), shape(phi.src()), shape(&target));
    Ok(Some(Instance { descriptor, checks }))
}

pub(super) fn slice_reduction(rng: &mut ChaCha8Rng, cfg: &InstanceGenConfig) -> Result<Option<Instance>> {
    let max = cfg.max_size;
    let i = gen::random_set(rng, "i", 1, max.max(1));
    let j = gen::random_set(rng, "j", 1, max.max(1));
    let g = gen::random_polynomial(rng, &i, &j, max);
    let f = gen::random_polynomial(rng, &i, &j, max);
    let mut checks = Vec::new();
    for p in [&f, &g] {
        let back = slice_reduce(p).unreduce();
        checks.push(Check::from_result("slice-reduction/polynomial-round-trip", back.map(|b| b == *p), || shape(p))?);
    }
    let cells = [gen::random_morphism_into(rng, &g, max)?, gen::random_cartesian_into(rng, &g, max)?];
    for phi in &cells {
        let reduced = slice_reduce_morphism(phi);
        let back = reduced.validate().and_then(|()| reduced.unreduce());
        let round_trip = back.as_ref().map(|b| b == phi).map_err(Clone::clone);
        checks.push(Check::from_result("slice-reduction/morphism-round-trip", round_trip, || format!("{phi:?}"))?);
        let preserved =
            back.map(|b| reduced.is_cartesian() == phi.is_cartesian() && b.is_cartesian() == phi.is_cartesian());
        checks.push(Check::from_result("slice-reduction/cartesian-preserved", preserved, || format!("{phi:?}"))?);
    }
    let descriptor = format!(
        "F={} G={} cells: {} (cartesian {}), {}",
        shape(&f),
        shape(&g),
        shape(cells[0].src()),
        cells[0].is_cartesian(),
        shape(cells[1].src())
    );
    Ok(Some(Instance { descriptor, checks }))
}

/// What a universe instance is expected to show beyond the laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Role {
    /// Strict structure.
    Bool,
    /// A non-strict unit.
    Skewed,
    /// No expectation.
    Random,
}

pub(super) fn well_formed(u: &Universe) -> Vec<Check> {
    let issues = u.issues();
    if issues.is_empty() {
        return vec![Check::pass("universe/well-formed")];
    }
    issues.into_iter().map(|issue| Check::fail("universe/well-formed", issue)).collect()
}

fn structure_failure(law: &'static str, e: Error) -> Result<Instance> {
    if e.is_cap_exceeded() {
        return Err(e);
    }
    Ok(Instance { descriptor: String::new(), checks: vec![Check::fail(law, e.to_string())] })
}

fn defects_text(defects: &[(crate::Label, crate::Label)]) -> String {
    let items: Vec<_> = defects.iter().map(|(want, got)| format!("expected {want}, got {got}")).collect();
    items.join("; ")
}

/// Checks a universe against one of the model suites.
pub(super) fn model(suite: &str, u: &Universe, role: Role) -> Result<Instance> {
    let mut checks = well_formed(u);
    if checks.iter().any(|c| !c.passed) {
        return Ok(Instance { descriptor: String::new(), checks });
    }
    match suite {
        "pseudomonad" => {
            let m = match pseudomonad_from(u) {
                Ok(m) => m,
                Err(e) => return structure_failure("pseudomonad/structure", e),
            };
            let info = if m.is_strict() {
                "strict".into()
            } else {
                format!("ρ defects: {}", defects_text(&m.right_unit_defects()))
            };
            checks.push(Check::pass("pseudomonad/structure").with_witness(info));
            let assoc = m.associativity_pasting().map(|o| o.holds());
            checks.push(Check::from_result("pseudomonad/associativity-pasting", assoc, || "sides differ".into())?);
            let unit = m.unit_pasting().map(|o| o.holds());
            checks.push(Check::from_result("pseudomonad/unit-pasting", unit, || "sides differ".into())?);
            match role {
                Role::Bool => checks.push(Check::when("pseudomonad/strict", m.is_strict(), || "not strict".into())),
                Role::Skewed => {
                    let rho = m.right_unit();
                    let defects = m.right_unit_defects();
                    let ok = rho.is_invertible() && !rho.is_trivial() && !defects.is_empty();
                    checks.push(
                        Check::when("pseudomonad/non-strict-unit", ok, || "ρ is an identity".into())
                            .with_witness(defects_text(&defects)),
                    );
                }
                Role::Random => {}
            }
        }
        "pseudoalgebra" => {
            let a = match pseudoalgebra_from(u) {
                Ok(a) => a,
                Err(e) => return structure_failure("pseudoalgebra/structure", e),
            };
            let info = if a.is_strict() {
                "strict".into()
            } else {
                format!("τ defects: {}", defects_text(&a.unit_defects()))
            };
            checks.push(Check::pass("pseudoalgebra/structure").with_witness(info));
            let assoc = a.associativity_pasting().map(|o| o.holds());
            checks.push(Check::from_result("pseudoalgebra/associativity-pasting", assoc, || "sides differ".into())?);
            let unit = a.unit_pasting().map(|o| o.holds());
            checks.push(Check::from_result("pseudoalgebra/unit-pasting", unit, || "sides differ".into())?);
            match role {
                Role::Bool => {
                    let strict = a.is_strict() && a.monad().is_strict();
                    checks.push(Check::when("pseudoalgebra/strict", strict, || "not strict".into()));
                }
                Role::Skewed => {
                    let tau = a.tau();
                    let ok = tau.is_invertible() && !tau.is_trivial();
                    checks.push(
                        Check::when("pseudoalgebra/non-strict-unit", ok, || "τ is an identity".into())
                            .with_witness(defects_text(&a.unit_defects())),
                    );
                }
                Role::Random => {}
            }
        }
        "type-isos" => {
            let report = verify_type_isos(u)?;
            for row in &report.rows {
                let law = match row.row {
                    "sigma-assoc" => "type-isos/sigma-assoc",
                    "sigma-right-unit" => "type-isos/sigma-right-unit",
                    "sigma-left-unit" => "type-isos/sigma-left-unit",
                    "pi-currying" => "type-isos/pi-currying",
                    _ => "type-isos/pi-left-unit",
                };
                let failing = report.checks.iter().find(|c| c.row == row.row && !c.bijective);
                let check = match failing {
                    None => Check::pass(law).with_witness(format!("{} instances, {} strict", row.checked, row.strict)),
                    Some(c) => Check::fail(
                        law,
                        format!("{}: {}", c.instance, c.error.clone().unwrap_or_else(|| "not a bijection".into())),
                    ),
                };
                checks.push(check);
            }
            match role {
                Role::Bool => checks.push(Check::when("type-isos/strict", report.all_strict(), || {
                    let c = report.checks.iter().find(|c| !c.strict).unwrap();
                    format!("{} at {}", c.row, c.instance)
                })),
                Role::Skewed => {
                    let witness = report.checks.iter().find(|c| c.bijective && !c.strict);
                    let check = match witness {
                        Some(c) => Check::pass("type-isos/non-strict-witness")
                            .with_witness(format!("{} at {}: {:?} vs {:?}", c.row, c.instance, c.lhs_code, c.rhs_code)),
                        None => Check::fail("type-isos/non-strict-witness", "every isomorphism is strict"),
                    };
                    checks.push(check);
                }
                Role::Random => {}
            }
        }
        other => return Err(Error::Parse(format!("{other:?} is not a universe suite"))),
    }
    Ok(Instance { descriptor: String::new(), checks })
}
