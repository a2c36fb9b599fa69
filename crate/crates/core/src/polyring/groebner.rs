//! Buchberger's algorithm over the rationals with the product and chain
//! criteria, producing reduced monic Gröbner bases in grevlex order.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{Monomial, MultiPoly};
use crate::rootdata::Q;

/// Ideal given by generators, optionally with a reduced grevlex Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub nvars: usize,
    pub generators: Vec<MultiPoly>,
    pub groebner: Option<Vec<MultiPoly>>,
}

impl IdealBasis {
    pub fn new(nvars: usize, generators: Vec<MultiPoly>) -> IdealBasis {
        IdealBasis { nvars, generators, groebner: None }
    }

    /// Generators together with their reduced Gröbner basis.
    pub fn with_groebner(nvars: usize, generators: Vec<MultiPoly>) -> IdealBasis {
        let gb = groebner(&generators);
        IdealBasis { nvars, generators, groebner: Some(gb) }
    }

    /// Use a basis already known to be a reduced Gröbner basis.
    pub fn from_reduced_groebner(nvars: usize, gb: Vec<MultiPoly>) -> IdealBasis {
        IdealBasis { nvars, generators: gb.clone(), groebner: Some(gb) }
    }

    pub fn gb(&self) -> Vec<MultiPoly> {
        match &self.groebner {
            Some(g) => g.clone(),
            None => groebner(&self.generators),
        }
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        normal_form(f, &self.gb()).is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Ideal of top-degree forms. The top forms of a grevlex Gröbner basis
    /// already form the reduced Gröbner basis of the leading-form ideal.
    pub fn leading_form_ideal(&self) -> IdealBasis {
        let tops: Vec<MultiPoly> = self.gb().iter().map(|g| g.top_form()).collect();
        IdealBasis::from_reduced_groebner(self.nvars, tops)
    }

    /// Same ideal, compared through reduced Gröbner bases.
    pub fn same_ideal(&self, other: &IdealBasis) -> bool {
        self.gb() == other.gb()
    }
}

/// Fully reduced remainder of `f` modulo `g` (elements of `g` need not be
/// monic).
pub fn normal_form(f: &MultiPoly, g: &[MultiPoly]) -> MultiPoly {
    let mut p = f.clone();
    let mut r = MultiPoly::zero(f.nvars());
    let leads: Vec<(Monomial, Q)> = g.iter().filter_map(|h| h.leading().map(|(m, c)| (m.clone(), c.clone()))).collect();
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let factor = &c / lc;
                let t = m.div(lm);
                for (gm, gc) in g[k].terms() {
                    p.add_term(gm.mul(&t), -(&factor * gc));
                }
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                r.add_term(m, c);
            }
        }
    }
    r
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    f.mul_term(&l.div(fm), &fc.recip()).sub(&g.mul_term(&l.div(gm), &gc.recip()))
}

/// Reduced monic Gröbner basis in grevlex, sorted by leading monomial.
pub fn groebner(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    // Pairs keyed by (lcm, i, j) so the smallest lcm is processed first.
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut alive: Vec<bool> = Vec::new();

    let add = |f: MultiPoly,
               basis: &mut Vec<MultiPoly>,
               pairs: &mut BTreeSet<(Monomial, usize, usize)>,
               alive: &mut Vec<bool>| {
        let f = f.monic();
        let k = basis.len();
        let lf = f.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            if alive[i] {
                pairs.insert((lf.lcm(g.leading_monomial().unwrap()), i, k));
            }
        }
        basis.push(f);
        alive.push(true);
    };

    for f in gens {
        let r = normal_form(f, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut alive);
        }
    }

    while let Some(pair) = pairs.pop_first() {
        let (l, i, j) = pair;
        done.insert((i, j));
        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        if li.coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j || !basis[k].leading_monomial().unwrap().divides(&l) {
                return false;
            }
            let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
            done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut alive);
        }
    }
    reduce_basis(basis)
}

/// Turn a Gröbner basis into the reduced one.
fn reduce_basis(mut basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let lg = g.leading_monomial().unwrap().clone();
        if minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&lg)) {
            continue;
        }
        minimal.push(g.monic());
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let (lm, _) = minimal[k].leading().unwrap();
        let lm = lm.clone();
        let others: Vec<MultiPoly> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let mut tail = minimal[k].clone();
        tail.add_term(lm.clone(), -Q::from_integer(1.into()));
        let reduced = normal_form(&tail, &others);
        let mut g = reduced;
        g.add_term(lm, Q::from_integer(1.into()));
        out.push(g);
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(g: &[MultiPoly]) -> bool {
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !normal_form(&s_poly(&g[i], &g[j]), g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monic, and no term of any element is divisible by another leading term.
pub fn is_reduced(g: &[MultiPoly]) -> bool {
    g.iter().enumerate().all(|(k, p)| {
        p.leading().is_some_and(|(_, c)| c == &Q::from_integer(1.into()))
            && p.terms()
                .keys()
                .all(|m| g.iter().enumerate().all(|(i, h)| i == k || !h.leading_monomial().unwrap().divides(m)))
    }) && g.iter().all(|p| !p.terms().values().any(|c| c.is_zero()))
}
