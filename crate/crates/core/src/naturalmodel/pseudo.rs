//! Polynomial pseudomonads and pseudoalgebras, with their pasting
//! equations evaluated as composites of concrete adjustments.
//!
//! A pasting diagram is evaluated left to right as a vertical composite of
//! whiskered structure adjustments. Consecutive cells whose boundaries agree
//! only up to the choice of pullback vertex (the same square presented by
//! two differently bracketed composites) are glued by the canonical
//! comparison, which must be trivial; anything else is reported as a
//! failure of the diagram to close up.

use crate::cell::{associator, hcomp, left_unitor, right_unitor, whisker_post, whisker_pre, Adjustment, PolyMorphism};
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::label::Label;
use crate::poly::{compose, Polynomial};

use super::lift::LiftedEndofunctor;
use super::{pi_structure, sigma_structure, unit_structure, Universe};

fn bridge(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Adjustment> {
    if phi == psi {
        return Ok(Adjustment::identity(phi));
    }
    let adj = Adjustment::unique(phi, psi)?;
    if !adj.is_trivial() || !adj.is_invertible() {
        return Err(Error::NotCommuting("pasting boundaries present different squares".into()));
    }
    Ok(adj)
}

/// Vertical composite of a chain of adjustments, glued along trivial
/// comparisons.
fn paste(steps: &[Adjustment]) -> Result<Adjustment> {
    let (first, rest) = steps.split_first().ok_or_else(|| Error::BoundaryMismatch("empty pasting".into()))?;
    let mut acc = first.clone();
    for step in rest {
        acc = acc.then(&bridge(acc.dst(), step.src())?)?.then(step)?;
    }
    Ok(acc)
}

/// `F·α` for an adjustment `α : φ ⇛ φ′` between cartesian morphisms: the
/// unique adjustment `F·φ ⇛ F·φ′`.
fn whisker_poly_left(poly: &Polynomial, alpha: &Adjustment) -> Result<Adjustment> {
    let id = PolyMorphism::identity(poly);
    Adjustment::unique(&hcomp(&id, alpha.src())?, &hcomp(&id, alpha.dst())?)
}

/// `α·F`.
fn whisker_poly_right(alpha: &Adjustment, poly: &Polynomial) -> Result<Adjustment> {
    let id = PolyMorphism::identity(poly);
    Adjustment::unique(&hcomp(alpha.src(), &id)?, &hcomp(alpha.dst(), &id)?)
}

fn chain(cells: &[&PolyMorphism]) -> Result<PolyMorphism> {
    let (first, rest) = cells.split_first().ok_or_else(|| Error::BoundaryMismatch("empty composite".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, next| acc.then(next))
}

/// The two sides of a pasting equation, with the right side glued onto the
/// boundary of the left.
#[derive(Clone, Debug)]
pub struct PastingOutcome {
    pub lhs: Adjustment,
    pub rhs: Adjustment,
}

impl PastingOutcome {
    fn new(lhs: Adjustment, rhs: Adjustment) -> Result<Self> {
        let rhs = bridge(lhs.src(), rhs.src())?.then(&rhs)?.then(&bridge(rhs.dst(), lhs.dst())?)?;
        Ok(PastingOutcome { lhs, rhs })
    }

    /// The two composites are the same map.
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A pseudomonad in polynomials with cartesian morphisms: `p : 1 ⇸ 1` with
/// `η : i_1 ⇒ p`, `μ : p·p ⇒ p` and the unique invertible adjustments
/// `α : μ∘(p·μ)∘a ⇛ μ∘(μ·p)`, `λ : μ∘(η·p) ⇛ l_p`, `ρ : μ∘(p·η) ⇛ r_p`,
/// where `a`, `l`, `r` are the associator and unitors.
#[derive(Clone, Debug)]
pub struct PolynomialPseudomonad {
    carrier: Polynomial,
    eta: PolyMorphism,
    mu: PolyMorphism,
    assoc: Adjustment,
    left_unit: Adjustment,
    right_unit: Adjustment,
}

impl PolynomialPseudomonad {
    /// Completes monad data to a pseudomonad with the unique adjustments.
    pub fn from_data(carrier: &Polynomial, eta: &PolyMorphism, mu: &PolyMorphism) -> Result<Self> {
        let p = carrier;
        let one = Polynomial::identity(p.i());
        if eta.src() != &one || eta.dst() != p || mu.dst() != p || mu.src() != &compose(p, p)?.poly {
            return Err(Error::BoundaryMismatch("η : i ⇒ p and μ : p·p ⇒ p required".into()));
        }
        if !eta.is_cartesian() || !mu.is_cartesian() {
            return Err(Error::NotCartesian("η and μ must be cartesian".into()));
        }
        let id = PolyMorphism::identity(p);
        let assoc_src = chain(&[&associator(p, p, p)?, &hcomp(&id, mu)?, mu])?;
        let assoc_dst = hcomp(mu, &id)?.then(mu)?;
        let left_src = hcomp(eta, &id)?.then(mu)?;
        let right_src = hcomp(&id, eta)?.then(mu)?;
        let adjust = |src: &PolyMorphism, dst: &PolyMorphism| -> Result<Adjustment> {
            let adj = Adjustment::unique(src, dst)?;
            if !adj.is_invertible() {
                return Err(Error::NotInvertible("structure adjustment".into()));
            }
            Ok(adj)
        };
        Ok(PolynomialPseudomonad {
            carrier: p.clone(),
            eta: eta.clone(),
            mu: mu.clone(),
            assoc: adjust(&assoc_src, &assoc_dst)?,
            left_unit: adjust(&left_src, &left_unitor(p)?)?,
            right_unit: adjust(&right_src, &right_unitor(p)?)?,
        })
    }

    pub fn carrier(&self) -> &Polynomial {
        &self.carrier
    }

    pub fn eta(&self) -> &PolyMorphism {
        &self.eta
    }

    pub fn mu(&self) -> &PolyMorphism {
        &self.mu
    }

    pub fn assoc(&self) -> &Adjustment {
        &self.assoc
    }

    pub fn left_unit(&self) -> &Adjustment {
        &self.left_unit
    }

    pub fn right_unit(&self) -> &Adjustment {
        &self.right_unit
    }

    /// All three adjustments are identities up to the choice of vertex,
    /// i.e. the monad laws hold on the nose.
    pub fn is_strict(&self) -> bool {
        [&self.assoc, &self.left_unit, &self.right_unit].iter().all(|a| a.is_trivial())
    }

    /// Operations where `μ∘(p·η)` and the right unitor disagree, as pairs
    /// `(expected, actual)` of codes.
    pub fn right_unit_defects(&self) -> Vec<(Label, Label)> {
        defects(&self.right_unit)
    }

    /// Operations where `μ∘(η·p)` and the left unitor disagree.
    pub fn left_unit_defects(&self) -> Vec<(Label, Label)> {
        defects(&self.left_unit)
    }

    /// The associativity equation between the two pastings
    /// `t⁴ ⇒ t` built from `α`, `t·α` and `α·t`.
    pub fn associativity_pasting(&self) -> Result<PastingOutcome> {
        let p = &self.carrier;
        let (mu, id) = (&self.mu, PolyMorphism::identity(p));
        let pp = compose(p, p)?.poly;
        let a3 = associator(p, p, p)?;
        let a3_p = hcomp(&a3, &id)?;
        let mu_r_p = hcomp(&hcomp(&id, mu)?, &id)?;
        let mu_p_p = hcomp(&hcomp(mu, &id)?, &id)?;
        // ((pp)p)p: contract the middle pair, the last pair, the first pair
        let middle = a3_p.then(&mu_r_p)?;
        let last = associator(p, p, &pp)?.then(&hcomp(&PolyMorphism::identity(&pp), mu)?)?;
        let to_p_ppp = a3_p.then(&associator(p, &pp, p)?)?;

        let lhs = paste(&[
            whisker_pre(&whisker_post(mu, &whisker_poly_left(p, &self.assoc)?)?, &to_p_ppp)?,
            whisker_pre(&self.assoc, &middle)?,
            whisker_post(mu, &whisker_poly_right(&self.assoc, p)?)?,
        ])?;
        let rhs = paste(&[whisker_pre(&self.assoc, &last)?, whisker_pre(&self.assoc, &mu_p_p)?])?;
        PastingOutcome::new(lhs, rhs)
    }

    /// The unit equation on `t·1·t`: `α` followed by `ρ·t` against `t·λ`.
    pub fn unit_pasting(&self) -> Result<PastingOutcome> {
        let p = &self.carrier;
        let (mu, id) = (&self.mu, PolyMorphism::identity(p));
        let one = Polynomial::identity(p.i());
        let t_eta_t = hcomp(&hcomp(&id, &self.eta)?, &id)?;
        let lhs = paste(&[
            whisker_pre(&self.assoc, &t_eta_t)?,
            whisker_post(mu, &whisker_poly_right(&self.right_unit, p)?)?,
        ])?;
        let rhs = whisker_pre(&whisker_post(mu, &whisker_poly_left(p, &self.left_unit)?)?, &associator(p, &one, p)?)?;
        PastingOutcome::new(lhs, rhs)
    }
}

fn defects(adj: &Adjustment) -> Vec<(Label, Label)> {
    adj.src()
        .phi0()
        .pairs()
        .zip(adj.dst().phi0().pairs())
        .filter(|((_, got), (_, want))| got != want)
        .map(|((_, got), (_, want))| (want.clone(), got.clone()))
        .collect()
}

/// The pseudomonad on `p` given by the unit and `Σ` structure of `u`.
pub fn pseudomonad_from(u: &Universe) -> Result<PolynomialPseudomonad> {
    PolynomialPseudomonad::from_data(&u.polynomial(), &unit_structure(u)?, &sigma_structure(u)?)
}

/// A pseudoalgebra over the lift of a polynomial pseudomonad: a map
/// `f : B → A`, a cartesian `ζ : P(f) ⇒ f`, and the unique invertible
/// adjustments `σ : ζ∘P(ζ) ⇛ ζ∘m_f` and `τ : ζ∘h_f ⇛ id_f`.
#[derive(Clone, Debug)]
pub struct PolynomialPseudoalgebra {
    monad: PolynomialPseudomonad,
    lift: LiftedEndofunctor,
    carrier: FinMap,
    zeta: PolyMorphism,
    sigma: Adjustment,
    tau: Adjustment,
}

impl PolynomialPseudoalgebra {
    pub fn from_data(monad: &PolynomialPseudomonad, carrier: &FinMap, zeta: &PolyMorphism) -> Result<Self> {
        let unit = FinSet::unit();
        if monad.carrier.i() != &unit {
            return Err(Error::BoundaryMismatch("the lift is defined for polynomials 1 ⇸ 1".into()));
        }
        let lift = LiftedEndofunctor::new(monad.carrier.f(), &monad.eta, &monad.mu)?;
        let f = Polynomial::from_map(carrier);
        if zeta.src() != &lift.on_object_poly(carrier)? || zeta.dst() != &f {
            return Err(Error::BoundaryMismatch("ζ must be a morphism P(f) ⇒ f".into()));
        }
        if !zeta.is_cartesian() {
            return Err(Error::NotCartesian("ζ must be cartesian".into()));
        }
        let sigma = Adjustment::unique(&lift.on_square(zeta)?.then(zeta)?, &lift.mult_at(carrier)?.then(zeta)?)?;
        let tau = Adjustment::unique(&lift.unit_at(carrier)?.then(zeta)?, &PolyMorphism::identity(&f))?;
        if !sigma.is_invertible() || !tau.is_invertible() {
            return Err(Error::NotInvertible("structure adjustment".into()));
        }
        Ok(PolynomialPseudoalgebra {
            monad: monad.clone(),
            lift,
            carrier: carrier.clone(),
            zeta: zeta.clone(),
            sigma,
            tau,
        })
    }

    pub fn monad(&self) -> &PolynomialPseudomonad {
        &self.monad
    }

    pub fn lift(&self) -> &LiftedEndofunctor {
        &self.lift
    }

    pub fn carrier(&self) -> &FinMap {
        &self.carrier
    }

    pub fn zeta(&self) -> &PolyMorphism {
        &self.zeta
    }

    pub fn sigma(&self) -> &Adjustment {
        &self.sigma
    }

    pub fn tau(&self) -> &Adjustment {
        &self.tau
    }

    pub fn is_strict(&self) -> bool {
        self.sigma.is_trivial() && self.tau.is_trivial()
    }

    /// Codes where `ζ∘h_f` differs from the identity.
    pub fn unit_defects(&self) -> Vec<(Label, Label)> {
        defects(&self.tau)
    }

    /// `σ` against `P(σ)`, the lift's associativity cell and `σ` again,
    /// on `P³(f) ⇒ f`.
    pub fn associativity_pasting(&self) -> Result<PastingOutcome> {
        let (lift, f, zeta) = (&self.lift, &self.carrier, &self.zeta);
        let pf = lift.on_object(f)?;
        let m_f = lift.mult_at(f)?;
        let m_pf = lift.mult_at(&pf)?;
        let p_zeta = lift.on_square(zeta)?;
        let pp_zeta = lift.on_square(&p_zeta)?;
        let p_m = lift.on_square(&m_f)?;
        let lifted_sigma = Adjustment::unique(&lift.on_square(self.sigma.src())?, &lift.on_square(self.sigma.dst())?)?;
        let lift_assoc = Adjustment::unique(&p_m.then(&m_f)?, &m_pf.then(&m_f)?)?;

        let lhs = paste(&[
            whisker_post(zeta, &lifted_sigma)?,
            whisker_pre(&self.sigma, &p_m)?,
            whisker_post(zeta, &lift_assoc)?,
        ])?;
        let rhs = paste(&[whisker_pre(&self.sigma, &pp_zeta)?, whisker_pre(&self.sigma, &m_pf)?])?;
        PastingOutcome::new(lhs, rhs)
    }

    /// `σ` followed by the lift's unit cell against `P(τ)`, on
    /// `P(f) ⇒ f`.
    pub fn unit_pasting(&self) -> Result<PastingOutcome> {
        let (lift, f, zeta) = (&self.lift, &self.carrier, &self.zeta);
        let pf = lift.on_object(f)?;
        let p_h = lift.on_square(&lift.unit_at(f)?)?;
        let lift_unit =
            Adjustment::unique(&p_h.then(&lift.mult_at(f)?)?, &PolyMorphism::identity(&Polynomial::from_map(&pf)))?;
        let lifted_tau = Adjustment::unique(&lift.on_square(self.tau.src())?, &lift.on_square(self.tau.dst())?)?;
        let lhs = paste(&[whisker_pre(&self.sigma, &p_h)?, whisker_post(zeta, &lift_unit)?])?;
        let rhs = whisker_post(zeta, &lifted_tau)?;
        PastingOutcome::new(lhs, rhs)
    }
}

/// The pseudoalgebra `(p, ζ)` given by the `Π` structure of `u`.
pub fn pseudoalgebra_from(u: &Universe) -> Result<PolynomialPseudoalgebra> {
    let monad = pseudomonad_from(u)?;
    PolynomialPseudoalgebra::from_data(&monad, &u.projection(), &pi_structure(u)?)
}
