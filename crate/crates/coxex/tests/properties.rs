//! Cross-module properties on random inputs.

use coxex::checks::{
    coxeter_strong_exchange, is_delta_matroid, is_even_delta_matroid, is_matroid, is_strong_delta,
    VertexSubset,
};
use coxex::combinatorics::{GroundSet, Parity, SetSystem, SubsetMask};
use coxex::equations::{gen_e6, gen_type_a, gen_type_b, gen_type_d};
use coxex::polytopes::{build, PolytopeName};
use coxex::quadrics::{embed_b_family, embed_d_family, plucker_family};
use coxex::realization::{
    as_point, plucker_vector, random_matrix, random_skew, rng_from_seed, spinor_vector, support_system,
};
use coxex::tropical::{satisfies_all, tropicalize, BoolAssignment, VariableId};
use num_traits::Zero;
use proptest::prelude::*;

fn system(n: u32, bits: u64) -> SetSystem {
    let g = GroundSet::new(n).unwrap();
    SetSystem::new(g, g.subsets().filter(|s| bits >> s.bits() & 1 == 1)).unwrap()
}

fn satisfies_b(m: &SetSystem) -> bool {
    satisfies_all(&BoolAssignment::from_set_system(m), gen_type_b(m.n()).unwrap().quadrics()).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn strong_delta_iff_type_b_tropical(bits in 1u64..=u32::MAX as u64) {
        let m = system(5, bits);
        prop_assert_eq!(is_strong_delta(&m).unwrap(), satisfies_b(&m));
    }

    #[test]
    fn strong_implies_delta(bits in 1u64..=u32::MAX as u64) {
        let m = system(5, bits);
        if is_strong_delta(&m).unwrap() {
            prop_assert!(is_delta_matroid(&m).unwrap());
        }
    }

    // The cube vertex set of a system is Coxeter-strong exactly when the system is strong.
    #[test]
    fn cube_exchange_is_strong_delta(bits in 1u64..=u16::MAX as u64) {
        let m = system(4, bits);
        let cube = build(PolytopeName::Cube(4)).unwrap();
        let vs = VertexSubset::from_set_system(&cube, &m).unwrap();
        prop_assert_eq!(coxeter_strong_exchange(&vs), is_strong_delta(&m).unwrap());
    }

    #[test]
    fn spinor_supports(seed in any::<u64>()) {
        let n = 5;
        let c = spinor_vector(&random_skew(n, &mut rng_from_seed(seed))).unwrap();
        let x = as_point(&c);
        let (even, _) = embed_d_family(n as u32).unwrap();
        prop_assert!(even.iter().all(|(_, q)| q.eval(&x).is_zero()));
        let m = support_system(n as u32, &c).unwrap();
        prop_assert!(is_even_delta_matroid(&m).unwrap());
        let fams = gen_type_d(n as u32).unwrap();
        prop_assert!(satisfies_all(&BoolAssignment::from_set_system(&m), fams.for_parity(Parity::Even).quadrics()).0);
    }

    #[test]
    fn plucker_supports(seed in any::<u64>(), k in 2usize..=3) {
        let n = 6;
        let c = plucker_vector(&random_matrix(k, n, &mut rng_from_seed(seed))).unwrap();
        let x = as_point(&c);
        prop_assert!(plucker_family(n as u32, k as u32).unwrap().iter().all(|(_, q)| q.eval(&x).is_zero()));
        let m = support_system(n as u32, &c).unwrap();
        prop_assert!(is_matroid(&m, k as u32).unwrap());
        prop_assert!(satisfies_all(&BoolAssignment::from_set_system(&m), gen_type_a(n as u32, k as u32).unwrap().quadrics()).0);
    }

    #[test]
    fn e6_tropical_matches_exchange(mask in 0u64..(1 << 27)) {
        let p = build(PolytopeName::E6_221).unwrap();
        let vs = VertexSubset::from_mask(&p, mask);
        let fam = gen_e6(&p).unwrap();
        let nu = BoolAssignment::new(vs.labels());
        prop_assert_eq!(coxeter_strong_exchange(&vs), satisfies_all(&nu, fam.quadrics()).0);
    }
}

#[test]
fn tropicalized_b_family_is_generated_family() {
    for n in 3..=4 {
        let gen = gen_type_b(n).unwrap();
        for (_, q) in embed_b_family(n).unwrap() {
            if !q.is_zero() {
                assert!(gen.contains(&tropicalize(&q)), "n={n}");
            }
        }
    }
}

#[test]
fn quadric_json_shape() {
    let (label, q) = embed_b_family(3).unwrap().into_iter().next().unwrap();
    let j = serde_json::to_value(q.to_json("B", coxex::quadrics::pair_label(label.0, label.1))).unwrap();
    assert_eq!(j["family"], "B");
    assert!(j["label"]["I"].is_array() && j["label"]["J"].is_array());
    let term = &j["terms"][0];
    assert!(term["vars"][0].is_array() && term["vars"][1].is_array());
    assert!(term["coeff"].as_str().unwrap().parse::<i64>().is_ok());
}

#[test]
fn variable_json_round_trip() {
    for v in [
        VariableId::Subset(SubsetMask::from_elements(&[1, 3]).unwrap()),
        VariableId::SignedAxis(-2),
        VariableId::Vertex("c12".parse().unwrap()),
        VariableId::Vertex("-a17".parse().unwrap()),
    ] {
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<VariableId>(&s).unwrap(), v, "{s}");
    }
}
