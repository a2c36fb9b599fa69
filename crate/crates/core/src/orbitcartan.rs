//! Weyl orbits of generic points of `z(l)`, their vanishing ideals `I'`,
//! the leading-form ideals `gr I'`, the weak flatness check and the
//! certificates comparing `C[h]/gr I'` with Springer fiber cohomology.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{
    normal_form, quotient_analytics, vanishing_ideal, GradedQuotient, IdealBasis, Monomial, MultiPoly,
};
use crate::rootdata::{stabilizer, weyl_elements, weyl_order, Family, LeviSpec, Weight, Q};

#[derive(Clone, Debug)]
pub struct OrbitScheme {
    pub levi: LeviSpec,
    pub base_point: Weight,
    /// The W-orbit of the base point, sorted.
    pub points: Vec<Weight>,
    /// Reduced Gröbner basis of the vanishing ideal of the orbit.
    pub iprime: IdealBasis,
    /// Number of standard monomials of `I'`.
    pub iprime_dim: usize,
    pub gr_iprime: IdealBasis,
    /// Analytics of `C[h]/gr I'`.
    pub quotient: GradedQuotient,
}

/// Block `j` gets the value `j` (1-based), the tail is zero.
pub fn canonical_base(l: &LeviSpec) -> Weight {
    let mut v = vec![0i64; l.rank()];
    for (j, r) in l.block_ranges().into_iter().enumerate() {
        for i in r {
            v[i] = j as i64 + 1;
        }
    }
    Weight::from_ints(&v)
}

/// Whether the stabilizer of `v` in W is exactly `W_L`.
pub fn is_generic_for(l: &LeviSpec, v: &Weight) -> bool {
    generic_check(l, v).is_ok()
}

fn generic_check(l: &LeviSpec, v: &Weight) -> Result<()> {
    if v.len() != l.rank() {
        return Err(Error::RankMismatch { expected: l.rank(), found: v.len() });
    }
    let wl = l.weyl_group();
    let stab = stabilizer(l.ambient, &v.coords);
    let expected = wl.order() as usize;
    if stab.len() != expected || !stab.iter().all(|w| wl.contains(w)) {
        return Err(Error::NonGenericBase { expected, found: stab.len() });
    }
    Ok(())
}

fn random_base(l: &LeviSpec, rng: &mut ChaCha8Rng) -> Weight {
    let k = l.gl_blocks.len() as i64;
    let mut v = vec![0i64; l.rank()];
    for r in l.block_ranges() {
        let t = rng.gen_range(1..=4 * k + 4);
        for i in r {
            v[i] = t;
        }
    }
    Weight::from_ints(&v)
}

/// Orbit of `base` under W, without duplicates.
pub fn weyl_orbit(l: &LeviSpec, base: &Weight) -> Vec<Weight> {
    let set: BTreeSet<Weight> = weyl_elements(l.ambient).iter().map(|w| Weight::new(w.act_q(&base.coords))).collect();
    set.into_iter().collect()
}

/// Build `I'`, `gr I'` and the quotient analytics for a Levi. Without a base
/// point the canonical one is used, with seeded random retries if it is not
/// generic.
pub fn build_orbit_scheme(l: &LeviSpec, base: Option<Weight>, seed: u64) -> Result<OrbitScheme> {
    let base = match base {
        Some(b) => {
            generic_check(l, &b)?;
            b
        }
        None => {
            let mut b = canonical_base(l);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut tries = 0;
            while let Err(e) = generic_check(l, &b) {
                tries += 1;
                if tries > 200 {
                    return Err(e);
                }
                b = random_base(l, &mut rng);
            }
            b
        }
    };
    let points = weyl_orbit(l, &base);
    let n = l.rank();
    let coords: Vec<Vec<Q>> = points.iter().map(|p| p.coords.clone()).collect();
    let vi = vanishing_ideal(n, &coords);
    let iprime = IdealBasis::from_reduced_groebner(n, vi.groebner);
    let gr_iprime = iprime.leading_form_ideal();
    let quotient = quotient_analytics(&gr_iprime)?;
    Ok(OrbitScheme {
        levi: l.clone(),
        base_point: base,
        points,
        iprime,
        iprime_dim: vi.standard.len(),
        gr_iprime,
        quotient,
    })
}

/// Whether a monomial lies in `gr I'`.
pub fn gr_membership(scheme: &OrbitScheme, m: &Monomial) -> bool {
    let f = MultiPoly::monomial(m.clone(), Q::from_integer(1.into()));
    normal_form(&f, scheme.gr_iprime.groebner.as_deref().unwrap_or(&[])).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatnessVerdict {
    Flat,
    NotFlat,
    Undetermined,
}

impl std::fmt::Display for FlatnessVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlatnessVerdict::Flat => "flat",
            FlatnessVerdict::NotFlat => "not-flat",
            FlatnessVerdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub monomial: String,
    pub in_gr: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub levi: String,
    pub generic_dim: usize,
    pub special_dim: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub hilbert: Vec<usize>,
    pub socle: usize,
    pub verdict: FlatnessVerdict,
}

/// `x_1 ⋯ x_{c+1}` where `c` is the total size of the GL blocks; defined for
/// type C Levis with a symplectic tail and at least one GL block.
pub fn sp_witness(l: &LeviSpec) -> Option<Monomial> {
    if l.ambient.family != Family::C || l.tail == 0 || l.gl_blocks.is_empty() {
        return None;
    }
    let c: usize = l.gl_blocks.iter().sum();
    let mut e = vec![0u32; l.rank()];
    for x in e.iter_mut().take(c + 1) {
        *x = 1;
    }
    Some(Monomial(e))
}

/// Structural cases where flatness is known without an external dimension:
/// type A, type C with only GL blocks, and `L = G`.
pub fn structurally_flat(l: &LeviSpec) -> bool {
    l.ambient.family == Family::A || (l.ambient.family == Family::C && l.tail == 0) || l.is_full()
}

pub fn flatness_check(l: &LeviSpec, special_dim: Option<usize>, seed: u64) -> Result<FlatnessReport> {
    let scheme = build_orbit_scheme(l, None, seed)?;
    Ok(flatness_from_scheme(&scheme, special_dim))
}

pub fn flatness_from_scheme(scheme: &OrbitScheme, special_dim: Option<usize>) -> FlatnessReport {
    let l = &scheme.levi;
    let generic_dim = (weyl_order(l.ambient) / l.weyl_group().order()) as usize;
    let names = crate::polyring::default_names(l.rank(), false);
    let witnesses: Vec<Witness> = sp_witness(l)
        .map(|m| Witness { monomial: m.format(&names), in_gr: gr_membership(scheme, &m) })
        .into_iter()
        .collect();
    let verdict = if special_dim.is_some_and(|d| d > generic_dim) || witnesses.iter().any(|w| w.in_gr) {
        FlatnessVerdict::NotFlat
    } else if special_dim == Some(generic_dim) || structurally_flat(l) {
        FlatnessVerdict::Flat
    } else {
        FlatnessVerdict::Undetermined
    };
    FlatnessReport {
        levi: l.to_string(),
        generic_dim,
        special_dim,
        witnesses,
        hilbert: scheme.quotient.hilbert.clone(),
        socle: scheme.quotient.socle_dim,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HikitaCertificate {
    pub levi: String,
    pub hilbert: Vec<usize>,
    pub betti: Vec<u64>,
    pub socle_dim: usize,
    /// Hilbert function of `C[h]/gr I'` differs from the Betti vector.
    pub grade_mismatch: bool,
    /// Socle smaller than the top Betti number, which the socle of the
    /// cohomology ring must contain.
    pub socle_mismatch: bool,
    pub dims: (usize, u64),
}

pub fn hikita_failure_certificate(l: &LeviSpec, betti: &[u64], seed: u64) -> Result<HikitaCertificate> {
    let scheme = build_orbit_scheme(l, None, seed)?;
    Ok(certificate_from_quotient(&l.to_string(), &scheme.quotient, betti))
}

pub fn certificate_from_quotient(levi: &str, q: &GradedQuotient, betti: &[u64]) -> HikitaCertificate {
    let trim = |v: Vec<u64>| {
        let mut v = v;
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let hilbert: Vec<u64> = trim(q.hilbert.iter().map(|&h| h as u64).collect());
    let b = trim(betti.to_vec());
    let top = b.last().copied().unwrap_or(0);
    HikitaCertificate {
        levi: levi.to_string(),
        hilbert: q.hilbert.clone(),
        betti: betti.to_vec(),
        socle_dim: q.socle_dim,
        grade_mismatch: hilbert != b,
        socle_mismatch: (q.socle_dim as u64) < top,
        dims: (q.dim, betti.iter().sum()),
    }
}
