use std::collections::BTreeSet;

use hikita_core::orbitcartan::{
    build_orbit_scheme, canonical_base, certificate_from_quotient, flatness_check, flatness_from_scheme, gr_membership,
    hikita_failure_certificate, is_generic_for, sp_witness, structurally_flat, weyl_orbit, FlatnessVerdict,
};
use hikita_core::polyring::{default_names, parse_ideal, IdealBasis, Monomial};
use hikita_core::rootdata::{stabilizer, weyl_elements, weyl_order, LeviSpec, Weight, Q};
use hikita_core::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn levi(s: &str) -> LeviSpec {
    s.parse().unwrap()
}

fn mono(e: &[u32]) -> Monomial {
    Monomial(e.to_vec())
}

fn squares(n: usize) -> IdealBasis {
    let s: Vec<String> = (1..=n).map(|i| format!("x{i}^2")).collect();
    IdealBasis::with_groebner(n, parse_ideal(&s.join(";"), &default_names(n, false)).unwrap())
}

#[test]
fn scheme_examples() {
    let s = build_orbit_scheme(&levi("C3:gl3"), Some(Weight::from_ints(&[1, 1, 1])), 0).unwrap();
    assert_eq!(s.points.len(), 8);
    let signs: BTreeSet<Weight> = s.points.iter().cloned().collect();
    for a in [-1, 1] {
        for b in [-1, 1] {
            for c in [-1, 1] {
                assert!(signs.contains(&Weight::from_ints(&[a, b, c])));
            }
        }
    }
    assert!(s.gr_iprime.same_ideal(&squares(3)));

    let s = build_orbit_scheme(&levi("C3:gl2|sp1"), Some(Weight::from_ints(&[1, 1, 0])), 0).unwrap();
    assert_eq!(s.points.len(), 12);
    assert!(gr_membership(&s, &mono(&[1, 1, 1])));

    let s = build_orbit_scheme(&levi("B4:gl2|so2"), Some(Weight::from_ints(&[1, 1, 0, 0])), 0).unwrap();
    assert_eq!((s.points.len(), s.quotient.dim, s.quotient.socle_dim), (24, 24, 2));
}

#[test]
fn gr_membership_examples() {
    let s = build_orbit_scheme(&levi("C3:gl3"), None, 0).unwrap();
    assert!(!gr_membership(&s, &mono(&[1, 1, 1])));
    assert!(gr_membership(&s, &mono(&[2, 0, 0])));
    // Beyond the top degree of the quotient everything lies in gr I'.
    let top = s.quotient.hilbert.len() as u32;
    for e in [[top, 0, 0], [1, top, 0], [0, 1, top]] {
        assert!(gr_membership(&s, &mono(&e)));
    }
}

#[test]
fn base_point_checks() {
    let l = levi("C3:gl2|sp1");
    assert_eq!(canonical_base(&l), Weight::from_ints(&[1, 1, 0]));
    assert!(is_generic_for(&l, &Weight::from_ints(&[3, 3, 0])));
    assert!(!is_generic_for(&l, &Weight::from_ints(&[1, 1, 1])));
    assert!(!is_generic_for(&l, &Weight::from_ints(&[1, 2, 0])));
    assert!(matches!(
        build_orbit_scheme(&l, Some(Weight::from_ints(&[0, 0, 0])), 0),
        Err(Error::NonGenericBase { .. })
    ));
    // The canonical base of C3:gl1,gl1|sp1 is (1,2,0), already generic.
    let l = levi("C3:gl1,gl1|sp1");
    let s = build_orbit_scheme(&l, None, 0).unwrap();
    assert_eq!(s.base_point, Weight::from_ints(&[1, 2, 0]));
}

#[test]
fn scheme_invariants() {
    for t in ["A3", "B2", "B3", "C2", "C3", "D3", "D4"] {
        let t = t.parse().unwrap();
        for l in hikita_core::rootdata::all_levis(t) {
            let s = build_orbit_scheme(&l, None, 7).unwrap();
            let expected = (weyl_order(t) / l.weyl_group().order()) as usize;
            assert_eq!(s.points.len(), expected, "{l}");
            assert_eq!(s.iprime_dim, expected, "{l}");
            assert_eq!(s.quotient.dim, expected, "{l}");
            let stab = stabilizer(t, &s.base_point.coords);
            assert!(stab.iter().all(|w| l.weyl_group().contains(w)));
            assert_eq!(stab.len() as u64, l.weyl_group().order());
            // Evaluation audit: every generator of I' vanishes on the orbit.
            for g in &s.iprime.generators {
                for p in &s.points {
                    assert!(g.eval(&p.coords).is_zero(), "{l}: {g}");
                }
            }
            assert!(s.gr_iprime.is_homogeneous());
            // The orbit is closed under W.
            let pts: BTreeSet<&Weight> = s.points.iter().collect();
            for w in weyl_elements(t) {
                assert!(pts.contains(&Weight::new(w.act_q(&s.base_point.coords))));
            }
        }
    }
}

#[test]
fn all_gl_levis_in_type_c_give_squares() {
    for n in 1..=5 {
        let l = LeviSpec::new(format!("C{n}").parse().unwrap(), vec![n], 0).unwrap();
        let s = build_orbit_scheme(&l, None, 0).unwrap();
        assert_eq!(s.quotient.dim, 1 << n);
        assert!(s.gr_iprime.same_ideal(&squares(n)), "n = {n}");
        let binom: Vec<usize> = (0..=n).map(|k| (0..k).fold(1, |a, i| a * (n - i) / (i + 1))).collect();
        assert_eq!(s.quotient.hilbert, binom);
        assert_eq!(s.quotient.socle_dim, 1);
    }
}

#[test]
fn flatness_examples() {
    let r = flatness_check(&levi("C3:gl2|sp1"), Some(13), 0).unwrap();
    assert_eq!((r.generic_dim, r.verdict), (12, FlatnessVerdict::NotFlat));
    // The witness alone already decides it.
    let r = flatness_check(&levi("C3:gl2|sp1"), None, 0).unwrap();
    assert_eq!(r.verdict, FlatnessVerdict::NotFlat);
    assert!(r.witnesses[0].in_gr);

    for n in 1..=4 {
        let l = LeviSpec::new(format!("C{n}").parse().unwrap(), vec![n], 0).unwrap();
        assert_eq!(flatness_check(&l, None, 0).unwrap().verdict, FlatnessVerdict::Flat);
    }
    assert_eq!(flatness_check(&levi("B3:gl2|so1"), None, 0).unwrap().verdict, FlatnessVerdict::Undetermined);
    assert_eq!(flatness_check(&levi("B3:gl2|so1"), Some(12), 0).unwrap().verdict, FlatnessVerdict::Flat);
    assert_eq!(flatness_check(&levi("B3:gl2|so1"), Some(11), 0).unwrap().verdict, FlatnessVerdict::Undetermined);
    assert_eq!(flatness_check(&levi("A3:gl1,gl2"), None, 0).unwrap().verdict, FlatnessVerdict::Flat);
}

#[test]
fn structural_cases() {
    assert!(structurally_flat(&levi("A4:gl2,gl2")));
    assert!(structurally_flat(&levi("C3:gl1,gl2")));
    assert!(structurally_flat(&levi("B3:full")));
    assert!(!structurally_flat(&levi("B3:gl3")));
    assert_eq!(sp_witness(&levi("C3:gl2|sp1")), Some(mono(&[1, 1, 1])));
    assert_eq!(sp_witness(&levi("C4:gl1|sp3")), Some(mono(&[1, 1, 0, 0])));
    assert_eq!(sp_witness(&levi("C3:gl3")), None);
    assert_eq!(sp_witness(&levi("B3:gl2|so1")), None);
}

#[test]
fn sp_witness_lies_in_gr_for_every_symplectic_tail() {
    for n in 2..=4 {
        let t = format!("C{n}").parse().unwrap();
        for l in hikita_core::rootdata::all_levis(t) {
            if let Some(m) = sp_witness(&l) {
                let s = build_orbit_scheme(&l, None, 0).unwrap();
                assert!(gr_membership(&s, &m), "{l}");
                assert_eq!(flatness_from_scheme(&s, None).verdict, FlatnessVerdict::NotFlat);
            }
        }
    }
}

#[test]
fn certificate_examples() {
    let c = hikita_failure_certificate(&levi("C3:gl3"), &[1, 3, 4], 0).unwrap();
    assert_eq!(c.hilbert, vec![1, 3, 3, 1]);
    assert!(c.grade_mismatch && c.socle_mismatch);
    assert_eq!(c.dims, (8, 8));

    let c = hikita_failure_certificate(&levi("B4:gl2|so2"), &[1, 4, 8, 11], 0).unwrap();
    assert_eq!(c.hilbert.len(), 5);
    assert_eq!(c.socle_dim, 2);
    assert!(c.grade_mismatch && c.socle_mismatch);
    assert_eq!(c.dims, (24, 24));

    let s = build_orbit_scheme(&levi("C3:gl3"), None, 0).unwrap();
    let own: Vec<u64> = s.quotient.hilbert.iter().map(|&h| h as u64).collect();
    let c = certificate_from_quotient("C3:gl3", &s.quotient, &own);
    assert!(!c.grade_mismatch && !c.socle_mismatch);
    // Trailing zeros do not count as a grading difference.
    let mut padded = own.clone();
    padded.push(0);
    assert!(!certificate_from_quotient("C3:gl3", &s.quotient, &padded).grade_mismatch);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gr_is_scale_invariant(pick in 0usize..4, num in 1i64..=7, den in 1i64..=5, neg in any::<bool>()) {
        let l = levi(["C3:gl2|sp1", "B3:gl1,gl2", "D4:gl2|so2", "C3:gl1,gl1|sp1"][pick]);
        let base = canonical_base(&l);
        let c = Q::new(if neg { -num } else { num }.into(), den.into());
        let a = build_orbit_scheme(&l, Some(base.clone()), 0).unwrap();
        let b = build_orbit_scheme(&l, Some(base.scale(&c)), 0).unwrap();
        prop_assert!(a.gr_iprime.same_ideal(&b.gr_iprime));
        prop_assert_eq!(a.quotient.hilbert, b.quotient.hilbert);
        prop_assert_eq!(weyl_orbit(&l, &base.scale(&c)).len(), a.points.len());
    }
}
