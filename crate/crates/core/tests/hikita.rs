use std::collections::BTreeSet;

use hikita_core::hikita::{
    cartan_generator, coh_side, default_generators, diagram_check, fixed_point_census, flag_fixed_restriction,
    quant_side, sl4_example, unseparated_pairs, BElement, HikitaInstance,
};
use hikita_core::polyring::{default_names, invariant_generators, parse_poly, MultiPoly};
use hikita_core::rootdata::{rho_levi, weyl_elements, LeviSpec, Q};
use hikita_core::Error;
use proptest::prelude::*;

fn levi(s: &str) -> LeviSpec {
    s.parse().unwrap()
}

fn inst(m: &str, l: &str) -> HikitaInstance {
    HikitaInstance::new(levi(m), levi(l)).unwrap()
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn b(name: &str, s: &str, g: &str, n: usize) -> BElement {
    let names = default_names(n, true);
    BElement::new(name, parse_poly(s, &names).unwrap(), parse_poly(g, &names).unwrap(), n).unwrap()
}

fn all_constant(v: &hikita_core::hikita::WeightVector) -> bool {
    v.entries.values().all(|x| Some(x) == v.entries.values().next())
}

#[test]
fn flag_restriction_examples() {
    let i = inst("A4:gl1,gl3", "A4:torus");
    let one = flag_fixed_restriction(&i, &b("g", "1", "x1^2 + h", 4)).unwrap();
    assert_eq!(one.len(), 4);
    assert!(one.values().all(|v| v == &parse_poly("x1^2 + h", &default_names(4, true)).unwrap()));

    // Entry at w is s(w⁻¹ v), checked by evaluation.
    let e = b("e", "x2+x3+x4", "1", 4);
    let r = flag_fixed_restriction(&i, &e).unwrap();
    let v = [qi(2), qi(-3), qi(5), qi(11), qi(0)];
    let distinct: BTreeSet<Q> = r.values().map(|f| f.eval(&v)).collect();
    assert_eq!(distinct.len(), 4);
    for (label, f) in &r {
        let w = &label.rep;
        let mut pulled = w.inverse().act_q(&v[..4]);
        pulled.push(qi(0));
        assert_eq!(f.eval(&v), e.s.eval(&pulled));
    }

    let sym = flag_fixed_restriction(&i, &b("e1", "x1+x2+x3+x4", "1", 4)).unwrap();
    assert!(sym.values().all(|x| Some(x) == sym.values().next()));

    assert!(matches!(
        flag_fixed_restriction(&inst("A4:gl1,gl3", "A4:gl2,gl2"), &BElement::one(4)),
        Err(Error::InvalidLevi(_))
    ));
}

#[test]
fn cohomology_with_torus_matches_flag_restriction() {
    for (m, n) in [("C3:gl3", 3), ("B3:gl1,gl2", 3), ("D4:gl2|so2", 4)] {
        let i = inst(m, &format!("{}:torus", &m[..2]));
        for g in default_generators(&i) {
            let coh = coh_side(&i, &g).unwrap();
            let flag = flag_fixed_restriction(&i, &g).unwrap();
            assert_eq!(coh.entries.len(), flag.len(), "{m}");
            // With L the torus, ρ_l = 0 and every coordinate is a parameter.
            let mut point: Vec<MultiPoly> = (0..n).map(|k| MultiPoly::var(n + 1, k)).collect();
            point.push(MultiPoly::var(n + 1, n).scale(&qi(2)));
            let wm = i.levi_m.weyl_group();
            for (c, v) in &coh.entries {
                let (_, f) =
                    flag.iter().find(|(w, _)| wm.contains(&w.rep.inverse().compose(&c.rep))).expect("same left coset");
                assert_eq!(&f.substitute(&point).unwrap(), v, "{m} {}", g.name);
            }
        }
    }
}

#[test]
fn invariant_s_gives_constant_vectors() {
    let i = inst("C3:gl3", "C3:gl2|sp1");
    for s in ["x1^2+x2^2+x3^2", "x1^2*x2^2*x3^2", "1"] {
        let e = b("s", s, "1", 3);
        assert!(all_constant(&coh_side(&i, &e).unwrap()), "{s}");
        assert!(all_constant(&quant_side(&i, &e).unwrap()), "{s}");
    }
    let ones = coh_side(&i, &BElement::one(3)).unwrap();
    assert!(ones.entries.values().all(|v| v == &MultiPoly::one(2)));
    assert!(diagram_check(&i, &[BElement::one(3)]).unwrap().equal);
}

#[test]
fn quantization_with_trivial_s() {
    let i = sl4_example();
    let q = quant_side(&i, &b("g", "1", "x2", 4)).unwrap();
    // (λ + 2ħρ_l)_2 with λ = (a, 0, 0, 0) and ρ_l = (0, 1, 0, -1).
    assert_eq!(rho_levi(&i.levi_l).coords[1], qi(1));
    let expected = MultiPoly::var(2, 1).scale(&qi(2));
    assert!(q.entries.values().all(|v| v == &expected));
}

#[test]
fn worked_sl4_example() {
    let i = sl4_example();
    assert_eq!(i.nparams(), 1);
    let gens: Vec<BElement> = (1..=3).map(|k| cartan_generator(4, k)).collect();
    let r = diagram_check(&i, &gens).unwrap();
    assert!(r.equal && !r.anomaly);
    assert_eq!(r.bijection.len(), 4);
    // Every entry is one of a - 2ħ, 2ħ - a, 2ħ, a, -a, a + 2ħ, -a - 2ħ.
    let names = vec!["a".to_string(), "h".to_string()];
    let allowed: Vec<MultiPoly> =
        ["a-2h", "2h-a", "2h", "a", "-a", "a+2h", "-a-2h"].iter().map(|s| parse_poly(s, &names).unwrap()).collect();
    for g in &r.per_generator {
        assert!(g.quant.entries.values().all(|v| allowed.contains(v)), "{}", g.name);
    }
}

#[test]
fn symplectic_instance_commutes() {
    let i = inst("C3:gl3", "C3:gl2|sp1");
    let gens = default_generators(&i);
    let r = diagram_check(&i, &gens).unwrap();
    assert!(r.equal, "{:?}", r.mismatches);
    assert_eq!(r.per_generator.len(), 3 + 3);
    let census = fixed_point_census(&i).unwrap();
    assert!(census.consistent);
    assert_eq!(census.count, r.bijection.len());
}

#[test]
fn census_examples() {
    let c = fixed_point_census(&sl4_example()).unwrap();
    assert_eq!(c.count, 4);
    assert!(c.consistent);
    assert_eq!(fixed_point_census(&inst("A3:torus", "A3:torus")).unwrap().count, 6);
    assert_eq!(fixed_point_census(&inst("C3:gl3", "C3:torus")).unwrap().count, 8);
    assert_eq!(fixed_point_census(&inst("C3:full", "C3:torus")).unwrap().count, 1);
    assert_eq!(fixed_point_census(&inst("C3:gl3", "C3:gl3")).unwrap().count, 0);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(matches!(HikitaInstance::new(levi("C3:gl3"), levi("B3:gl3")), Err(Error::AmbientMismatch(..))));
    let i = inst("C3:gl3", "C3:gl2|sp1");
    assert!(matches!(diagram_check(&i, &[b("x", "x1", "1", 3)]), Err(Error::NotInvariant(_))));
    assert!(BElement::new("bad", MultiPoly::one(2), MultiPoly::one(3), 3).is_err());
}

#[test]
fn separation_at_zero_hbar() {
    // With M the torus and the coordinate functions available, the fixed
    // points are told apart.
    let i = inst("C2:torus", "C2:gl1|sp1");
    let pairs = unseparated_pairs(&i, &default_generators(&i), 3).unwrap();
    assert!(pairs.is_empty(), "{pairs:?}");
}

/// Products of invariant generators of M, to be placed on the s leg.
fn invariant_s(m: &LeviSpec, picks: &[usize]) -> MultiPoly {
    let gens = invariant_generators(m);
    let n = m.rank();
    picks.iter().fold(MultiPoly::one(n), |acc, &k| acc.mul(&gens[k % gens.len()]))
}

fn small_g(n: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..=1, n + 1), -3i64..=3), 1..=3).prop_map(move |ts| {
        MultiPoly::from_terms(
            n + 1,
            ts.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (hikita_core::polyring::Monomial(e), qi(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagram_commutes_for_random_elements(
        pick in 0usize..4,
        picks in proptest::collection::vec(0usize..8, 0..=2),
        g in small_g(3),
    ) {
        let (m, l) = [
            ("C3:gl1,gl2", "C3:gl2|sp1"),
            ("B3:gl2|so1", "B3:gl1,gl2"),
            ("A3:gl1,gl2", "A3:gl2,gl1"),
            ("C3:gl1|sp2", "C3:gl1,gl1,gl1"),
        ][pick];
        let i = inst(m, l);
        let s = invariant_s(&i.levi_m, &picks);
        let e = BElement::new("r", s, g, 3).unwrap();
        let r = diagram_check(&i, &[e]).unwrap();
        prop_assert!(r.equal, "{} {}: {:?}", m, l, r.mismatches);
    }

    #[test]
    fn bijection_is_a_bijection(pick in 0usize..5) {
        let (m, l) = [
            ("C3:gl3", "C3:gl2|sp1"),
            ("D4:gl2,gl2", "D4:gl1|so3"),
            ("B3:gl1|so2", "B3:gl1,gl1,gl1"),
            ("A4:gl1,gl3", "A4:gl2,gl2"),
            ("C3:torus", "C3:gl1|sp2"),
        ][pick];
        let i = inst(m, l);
        let bij = i.label_bijection().unwrap();
        let quant: BTreeSet<_> = bij.iter().map(|(q, _)| q.clone()).collect();
        let coh: BTreeSet<_> = bij.iter().map(|(_, c)| c.clone()).collect();
        prop_assert_eq!(quant.len(), bij.len());
        prop_assert_eq!(coh.len(), bij.len());
        prop_assert_eq!(coh, i.coh_labels().unwrap().into_iter().collect::<BTreeSet<_>>());
        // Matched labels represent inverse double cosets: q⁻¹ and c have the
        // same minimal element in W_L \ W / W_M.
        for (q, c) in &bij {
            let a = hikita_core::rootdata::minimal_in_double_coset(&q.rep.inverse(), &i.levi_l, &i.levi_m);
            let b = hikita_core::rootdata::minimal_in_double_coset(&c.rep, &i.levi_l, &i.levi_m);
            prop_assert_eq!(a, b);
        }
        prop_assert!(weyl_elements(i.ambient).len() >= bij.len());
    }
}
