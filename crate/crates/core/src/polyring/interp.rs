//! Vanishing ideals of finite point sets by Buchberger–Möller interpolation.
//!
//! The fast path runs the interpolation modulo several 31-bit primes, lifts
//! the coefficients by Chinese remaindering and rational reconstruction, and
//! then certifies the lift exactly: every candidate element vanishes on every
//! point and the candidate leading terms leave exactly `|S|` standard
//! monomials. Those two facts force the candidate to be the reduced Gröbner
//! basis, so the answer never depends on a modular heuristic. If
//! certification fails the exact rational interpolation runs instead.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::quotient::standard_monomials_of_leads;
use super::{Monomial, MultiPoly};
use crate::rootdata::Q;

/// Reduced grevlex Gröbner basis of `I(S)` together with its standard
/// monomials, listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingIdeal {
    pub nvars: usize,
    pub groebner: Vec<MultiPoly>,
    pub standard: Vec<Monomial>,
    /// True when the modular lift was certified, false when the exact
    /// interpolation produced the answer.
    pub certified_modular: bool,
}

trait Field {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct Rationals;

impl Field for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
}

struct ModP(u64);

impl Field for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.0 - 2, self.0)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Interpolation output over one field: standard monomials in increasing
/// order, and for each border leading monomial its tail as coefficients over
/// the standard monomials (`lead = Σ c_j std_j` on the points).
struct BmResult<E> {
    standard: Vec<Monomial>,
    relations: Vec<(Monomial, Vec<E>)>,
}

struct BmState<'a, F: Field> {
    f: &'a F,
    npts: usize,
    standard: Vec<Monomial>,
    std_evals: Vec<Vec<F::E>>,
    rows: Vec<Vec<F::E>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<F::E>>,
    relations: Vec<(Monomial, Vec<F::E>)>,
}

impl<F: Field> BmState<'_, F> {
    /// Reduce the evaluation vector of `t`; record a relation if it is
    /// dependent, otherwise make `t` standard. Returns whether `t` became
    /// standard.
    fn process(&mut self, t: Monomial, eval: Vec<F::E>) -> bool {
        let f = self.f;
        let mut v = eval.clone();
        let mut acc: Vec<F::E> = vec![f.zero(); self.standard.len()];
        for (r, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[r]].clone();
            if f.is_zero(&c) {
                continue;
            }
            for k in 0..self.npts {
                if !f.is_zero(&row[k]) {
                    v[k] = f.sub(&v[k], &f.mul(&c, &row[k]));
                }
            }
            for (j, cj) in self.combos[r].iter().enumerate() {
                if !f.is_zero(cj) {
                    acc[j] = f.add(&acc[j], &f.mul(&c, cj));
                }
            }
        }
        match v.iter().position(|x| !f.is_zero(x)) {
            None => {
                self.relations.push((t, acc));
                false
            }
            Some(p) => {
                let inv = f.inv(&v[p]);
                let row: Vec<F::E> = v.iter().map(|x| f.mul(x, &inv)).collect();
                let mut combo: Vec<F::E> = acc.iter().map(|a| f.sub(&f.zero(), &f.mul(a, &inv))).collect();
                combo.push(inv);
                for c in self.combos.iter_mut() {
                    c.push(f.zero());
                }
                self.rows.push(row);
                self.pivots.push(p);
                self.combos.push(combo);
                self.standard.push(t);
                self.std_evals.push(eval);
                true
            }
        }
    }
}

fn bm_core<F: Field>(f: &F, nvars: usize, points: &[Vec<F::E>]) -> BmResult<F::E> {
    let npts = points.len();
    let one = Monomial::one(nvars);
    if npts == 0 {
        return BmResult { standard: vec![], relations: vec![(one, vec![])] };
    }
    let mut st = BmState {
        f,
        npts,
        standard: Vec::new(),
        std_evals: Vec::new(),
        rows: Vec::new(),
        pivots: Vec::new(),
        combos: Vec::new(),
        relations: Vec::new(),
    };
    // Candidates carry the index of a standard parent and the variable used.
    let mut queue: BTreeMap<Monomial, (usize, usize)> = BTreeMap::new();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut push_children = |s: &Monomial, idx: usize, queue: &mut BTreeMap<Monomial, (usize, usize)>| {
        for i in 0..nvars {
            let c = s.times_var(i);
            if seen.insert(c.clone()) {
                queue.insert(c, (idx, i));
            }
        }
    };
    st.process(one.clone(), vec![f.one(); npts]);
    push_children(&one, 0, &mut queue);
    while let Some((t, (parent, var))) = queue.pop_first() {
        if st.relations.iter().any(|(l, _)| l.divides(&t)) {
            continue;
        }
        let eval: Vec<F::E> = st.std_evals[parent].iter().zip(points).map(|(e, p)| f.mul(e, &p[var])).collect();
        if st.process(t.clone(), eval) {
            push_children(&t, st.standard.len() - 1, &mut queue);
        }
    }
    let len = st.standard.len();
    for (_, c) in st.relations.iter_mut() {
        c.resize(len, f.zero());
    }
    BmResult { standard: st.standard, relations: st.relations }
}

fn to_poly(lead: &Monomial, standard: &[Monomial], coeffs: &[Q]) -> MultiPoly {
    let mut p = MultiPoly::monomial(lead.clone(), Q::one());
    for (m, c) in standard.iter().zip(coeffs) {
        p.add_term(m.clone(), -c.clone());
    }
    p
}

fn finish(nvars: usize, standard: Vec<Monomial>, rel: Vec<(Monomial, Vec<Q>)>, modular: bool) -> VanishingIdeal {
    let mut groebner: Vec<MultiPoly> = rel.iter().map(|(l, c)| to_poly(l, &standard, c)).collect();
    groebner.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    VanishingIdeal { nvars, groebner, standard, certified_modular: modular }
}

/// Exact interpolation over the rationals.
pub fn vanishing_ideal_exact(nvars: usize, points: &[Vec<Q>]) -> VanishingIdeal {
    let pts = dedup(points);
    let r = bm_core(&Rationals, nvars, &pts);
    finish(nvars, r.standard, r.relations, false)
}

fn dedup(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut seen = BTreeSet::new();
    points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect()
}

fn primes_below_2_31() -> impl Iterator<Item = u64> {
    (1u64 << 20..(1u64 << 31)).rev().filter(|&n| {
        if n % 2 == 0 {
            return false;
        }
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

fn reduce_mod(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64()?;
    Some(n * pow_mod(d, p - 2, p) % p)
}

/// Rational `a/b` with `a ≡ b·u (mod m)`, `|a|, |b| <= sqrt(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1 - &t1 * u).mod_floor(m).is_zero() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Exact check that each element vanishes on each point, using integer
/// arithmetic when all coordinates are integers.
fn vanishes_everywhere(g: &[MultiPoly], points: &[Vec<Q>]) -> bool {
    let integral = points.iter().all(|p| p.iter().all(|x| x.is_integer()));
    if !integral {
        return g.iter().all(|f| points.iter().all(|p| f.eval(p).is_zero()));
    }
    let ipts: Vec<Vec<BigInt>> = points.iter().map(|p| p.iter().map(|x| x.to_integer()).collect()).collect();
    let mut cache: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
    fn mono_vals(m: &Monomial, pts: &[Vec<BigInt>], cache: &mut BTreeMap<Monomial, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let v = match m.0.iter().position(|&e| e > 0) {
            None => vec![BigInt::one(); pts.len()],
            Some(i) => {
                let mut e = m.0.clone();
                e[i] -= 1;
                let prev = mono_vals(&Monomial(e), pts, cache);
                prev.iter().zip(pts).map(|(a, p)| a * &p[i]).collect()
            }
        };
        cache.insert(m.clone(), v.clone());
        v
    }
    for f in g {
        let den = f.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut total = vec![BigInt::zero(); ipts.len()];
        for (m, c) in f.terms() {
            let ci = c.numer() * (&den / c.denom());
            let vals = mono_vals(m, &ipts, &mut cache);
            for (t, v) in total.iter_mut().zip(&vals) {
                if v.sign() != Sign::NoSign {
                    *t += &ci * v;
                }
            }
        }
        if total.iter().any(|t| !t.is_zero()) {
            return false;
        }
    }
    true
}

/// Modular interpolation with exact certification; `None` if certification
/// did not succeed within the prime budget.
pub fn vanishing_ideal_modular(nvars: usize, points: &[Vec<Q>], max_primes: usize) -> Option<VanishingIdeal> {
    let pts = dedup(points);
    let n = pts.len();
    let mut modulus = BigInt::one();
    let mut shape: Option<(Vec<Monomial>, Vec<Monomial>)> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut last: Option<Vec<Vec<Q>>> = None;
    let mut used = 0;
    for p in primes_below_2_31() {
        if used >= max_primes {
            break;
        }
        let Some(mp): Option<Vec<Vec<u64>>> =
            pts.iter().map(|pt| pt.iter().map(|x| reduce_mod(x, p)).collect()).collect()
        else {
            continue;
        };
        // Points must stay distinct modulo p.
        if mp.iter().collect::<BTreeSet<_>>().len() != n {
            continue;
        }
        used += 1;
        let r = bm_core(&ModP(p), nvars, &mp);
        let leads: Vec<Monomial> = r.relations.iter().map(|(l, _)| l.clone()).collect();
        match &shape {
            None => {
                shape = Some((r.standard.clone(), leads));
                residues = r.relations.iter().map(|(_, c)| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
                modulus = BigInt::from(p);
            }
            Some((s, l)) => {
                if *s != r.standard || *l != leads {
                    continue;
                }
                // Combine by CRT: x ≡ a (mod M), x ≡ b (mod p).
                let pb = BigInt::from(p);
                let minv = BigInt::from(pow_mod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
                for (res, (_, c)) in residues.iter_mut().zip(&r.relations) {
                    for (a, &b) in res.iter_mut().zip(c) {
                        let diff = (BigInt::from(b) - &*a).mod_floor(&pb);
                        let k = (diff * &minv).mod_floor(&pb);
                        *a += &modulus * k;
                    }
                }
                modulus *= &pb;
            }
        }
        let lifted: Option<Vec<Vec<Q>>> =
            residues.iter().map(|row| row.iter().map(|u| rational_reconstruct(u, &modulus)).collect()).collect();
        let Some(lifted) = lifted else { continue };
        if last.as_ref() != Some(&lifted) {
            last = Some(lifted);
            continue;
        }
        let (standard, leads) = shape.clone().unwrap();
        let rel: Vec<(Monomial, Vec<Q>)> = leads.into_iter().zip(lifted).collect();
        let cand = finish(nvars, standard, rel, true);
        let lead_set: Vec<Monomial> = cand.groebner.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let count = standard_monomials_of_leads(nvars, &lead_set).map(|s| s.len());
        if count == Some(n) && vanishes_everywhere(&cand.groebner, &pts) {
            return Some(cand);
        }
    }
    None
}

/// Vanishing ideal of a finite point set: modular fast path with exact
/// certification, falling back to exact interpolation.
pub fn vanishing_ideal(nvars: usize, points: &[Vec<Q>]) -> VanishingIdeal {
    if points.len() > 16 {
        if let Some(v) = vanishing_ideal_modular(nvars, points, 64) {
            return v;
        }
    }
    vanishing_ideal_exact(nvars, points)
}
