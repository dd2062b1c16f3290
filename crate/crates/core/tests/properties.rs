//! Laws of the finite constructions on seeded random instances, checked
//! against independently computed cardinalities where possible.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyverse::cell::{associator, pentagon, triangle, PolyMorphism};
use polyverse::finset::{
    base_change, dep_prod, dep_sum, is_pullback_square, pi_transpose, pi_untranspose, pullback, sigma_transpose,
    sigma_untranspose, FamilyMap, FinFamily, FinMap,
};
use polyverse::interchange::Interchange;
use polyverse::poly::{compose, extend, extend_map, extension_fibre_size, Polynomial};
use polyverse::suite::{gen, generate_random, run_suite, InstanceGenConfig};
use polyverse::Label;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_arrow(r: &mut ChaCha8Rng, max: usize) -> FinMap {
    let a = gen::random_set(r, "a", 1, max);
    let b = gen::random_set(r, "b", 0, max);
    gen::random_map(r, &b, &a).unwrap()
}

fn endo(r: &mut ChaCha8Rng, max: usize) -> Polynomial {
    let i = gen::random_set(r, "i", 1, 2);
    gen::random_polynomial(r, &i, &i, max)
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// `Σ_{a ∈ A_j} Π_{b ∈ B_a} |X_{s(b)}|`, one entry per `j`.
fn extension_oracle(p: &Polynomial, x: &FinFamily) -> Vec<BigUint> {
    p.j()
        .iter()
        .map(|j| {
            p.a()
                .iter()
                .filter(|a| p.t().apply(a) == Some(j))
                .map(|a| {
                    p.b()
                        .iter()
                        .filter(|b| p.f().apply(b) == Some(a))
                        .map(|b| big(x.fibre(p.s().apply(b).unwrap()).unwrap().len()))
                        .product::<BigUint>()
                })
                .sum()
        })
        .collect()
}

/// Fibrewise pullback of `p : X → Z ← Y : q`, with its two projections.
fn family_pullback(p: &FamilyMap, q: &FamilyMap) -> (FamilyMap, FamilyMap) {
    let squares: Vec<_> = p.components().iter().zip(q.components()).map(|(pc, qc)| pullback(pc, qc).unwrap()).collect();
    let apex = FinFamily::new(p.src().index().clone(), squares.iter().map(|s| s.apex.clone()).collect()).unwrap();
    let left = FamilyMap::new(apex.clone(), p.src().clone(), squares.iter().map(|s| s.left.clone()).collect());
    let right = FamilyMap::new(apex, q.src().clone(), squares.iter().map(|s| s.right.clone()).collect());
    (left.unwrap(), right.unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pi_adjunction_round_trips(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_arrow(r, 3);
        let y = gen::random_family(r, f.cod(), 0, 2);
        let x = gen::random_family(r, f.dom(), 0, 2);
        if let Some(phi) = gen::random_family_map(r, &base_change(&f, &y).unwrap(), &x) {
            let psi = pi_transpose(&f, &y, &x, &phi).unwrap();
            prop_assert_eq!(pi_untranspose(&f, &y, &x, &psi).unwrap(), phi);
        }
        if let Some(psi) = gen::random_family_map(r, &y, &dep_prod(&f, &x).unwrap()) {
            let phi = pi_untranspose(&f, &y, &x, &psi).unwrap();
            prop_assert_eq!(pi_transpose(&f, &y, &x, &phi).unwrap(), psi);
        }
    }

    #[test]
    fn sigma_adjunction_round_trips(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_arrow(r, 3);
        let x = gen::random_family(r, f.dom(), 0, 2);
        let y = gen::random_family(r, f.cod(), 0, 3);
        if let Some(phi) = gen::random_family_map(r, &dep_sum(&f, &x).unwrap(), &y) {
            let psi = sigma_transpose(&f, &x, &y, &phi).unwrap();
            prop_assert_eq!(sigma_untranspose(&f, &x, &y, &psi).unwrap(), phi);
        }
    }

    #[test]
    fn pullbacks_are_symmetric(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let z = gen::random_set(r, "z", 1, 3);
        let x = gen::random_set(r, "x", 0, 3);
        let y = gen::random_set(r, "y", 0, 3);
        let f = gen::random_map(r, &x, &z).unwrap();
        let g = gen::random_map(r, &y, &z).unwrap();
        let pb = pullback(&f, &g).unwrap();
        let bp = pullback(&g, &f).unwrap();
        prop_assert!(is_pullback_square(&pb.left, &pb.right, &f, &g));
        // the swapped square is a pullback of the same cospan
        prop_assert!(is_pullback_square(&bp.right, &bp.left, &f, &g));
        let swap = FinMap::from_fn(&pb.apex, &bp.apex, |e| {
            let (a, b) = e.as_pair().unwrap();
            Label::pair(b.clone(), a.clone())
        })
        .unwrap();
        prop_assert!(swap.is_bijective());
        let expected: usize = z.iter().map(|c| f.fibre(c).len() * g.fibre(c).len()).sum();
        prop_assert_eq!(pb.apex.len(), expected);
    }

    #[test]
    fn dependent_product_has_the_product_cardinality(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_arrow(r, 4);
        let x = gen::random_family(r, f.dom(), 0, 3);
        let pi = dep_prod(&f, &x).unwrap();
        for a in f.cod().iter() {
            let expected: BigUint = f.fibre(a).iter().map(|b| big(x.fibre(b).unwrap().len())).product();
            prop_assert_eq!(big(pi.fibre(a).unwrap().len()), expected);
        }
    }

    #[test]
    fn extension_has_the_polynomial_cardinality(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let i = gen::random_set(r, "i", 1, 3);
        let j = gen::random_set(r, "j", 1, 3);
        let p = gen::random_polynomial(r, &i, &j, 3);
        let x = gen::random_family(r, &i, 0, 3);
        let oracle = extension_oracle(&p, &x);
        let sizes: Vec<BigUint> = extension_fibre_size(&p, &x).unwrap().into_iter().map(BigUint::from).collect();
        prop_assert_eq!(&sizes, &oracle);
        let ext = extend(&p, &x).unwrap();
        prop_assert_eq!(ext.fibres().iter().map(|s| big(s.len())).collect::<Vec<_>>(), oracle);
    }

    #[test]
    fn extension_preserves_pullbacks(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let i = gen::random_set(r, "i", 1, 2);
        let j = gen::random_set(r, "j", 1, 2);
        let poly = gen::random_polynomial(r, &i, &j, 2);
        let z = gen::random_family(r, &i, 1, 2);
        let x = gen::random_family(r, &i, 0, 2);
        let y = gen::random_family(r, &i, 0, 2);
        let (Some(p), Some(q)) = (gen::random_family_map(r, &x, &z), gen::random_family_map(r, &y, &z)) else {
            return Ok(());
        };
        let (left, right) = family_pullback(&p, &q);
        let image = |m: &FamilyMap| extend_map(&poly, m).unwrap().total();
        prop_assert!(is_pullback_square(&image(&left), &image(&right), &image(&p), &image(&q)));
    }

    #[test]
    fn composition_is_associative_up_to_a_cartesian_iso(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let i = gen::random_set(r, "i", 1, 2);
        let [f, g, h] = [(); 3].map(|_| gen::random_polynomial(r, &i, &i, 2));
        let left = compose(&compose(&h, &g).unwrap().poly, &f).unwrap().poly;
        let right = compose(&h, &compose(&g, &f).unwrap().poly).unwrap().poly;
        prop_assert_eq!(left.a().len(), right.a().len());
        prop_assert_eq!(left.b().len(), right.b().len());
        let alpha = associator(&f, &g, &h).unwrap();
        prop_assert!(alpha.is_cartesian());
        prop_assert!(alpha.phi0().is_bijective());
    }

    #[test]
    fn pentagon_and_triangle_hold_with_general_endpoints(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let i = gen::random_set(r, "i", 2, 2);
        let [f, g, h, k] = [(); 4].map(|_| gen::random_polynomial(r, &i, &i, 2));
        prop_assert!(pentagon(&f, &g, &h, &k).unwrap().holds());
        prop_assert!(triangle(&f, &g).unwrap().holds());
    }

    #[test]
    fn interchange_round_trips(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let p = endo(r, 3);
        prop_assert_eq!(Polynomial::from_json_str(&p.to_json_string()).unwrap(), p.clone());
        let phi = gen::random_morphism(r, 2).unwrap();
        prop_assert_eq!(PolyMorphism::from_json(phi.to_json()).unwrap(), phi.clone());
        let u = gen::random_universe(r, 4);
        let back = polyverse::naturalmodel::Universe::from_json_str(&u.to_json_string()).unwrap();
        prop_assert_eq!(back.to_json(), u.to_json());
        let x = gen::random_family(r, p.i(), 0, 2);
        prop_assert_eq!(FinFamily::from_json(x.to_json()).unwrap(), x);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>()) {
        let cfg = InstanceGenConfig { seed, count: 1, max_size: 3, ..Default::default() };
        for kind in ["polynomial", "morphism", "universe"] {
            prop_assert_eq!(generate_random(kind, &cfg).unwrap(), generate_random(kind, &cfg).unwrap());
        }
    }
}

#[test]
fn suite_reports_are_deterministic() {
    let cfg = InstanceGenConfig { seed: 23, count: 3, max_size: 3, ..Default::default() };
    for suite in ["bicategory-laws", "lift", "slice-reduction"] {
        assert_eq!(run_suite(suite, &cfg).unwrap(), run_suite(suite, &cfg).unwrap());
    }
}
