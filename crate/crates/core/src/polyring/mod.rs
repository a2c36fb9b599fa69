//! Exact multivariate polynomials over the rationals, Weyl group actions on
//! them, Gröbner bases, vanishing ideals of point sets and Artinian quotient
//! analytics.
//!
//! Monomials are ordered by graded reverse lexicographic order with
//! `x_1 > x_2 > ... > x_n`. When a polynomial lives in `x_1..x_n, ħ` the ħ
//! slot is the last variable, hence the smallest.

mod groebner;
mod interp;
mod parse;
mod quotient;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{rho, LeviSpec, LieType, WeylElement, Q};

pub use groebner::{groebner, is_groebner_basis, is_reduced, normal_form, IdealBasis};
pub use interp::{vanishing_ideal, vanishing_ideal_exact, vanishing_ideal_modular, VanishingIdeal};
pub use parse::{default_names, parse_ideal, parse_poly};
pub use quotient::{quotient_analytics, standard_monomials, GradedQuotient};

/// Exponent vector, ordered by grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// A pure power `x_i^k`, returning `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

/// Polynomial with exact rational coefficients; no zero coefficients are
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::monomial(Monomial::var(nvars, i), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> MultiPoly {
        let mut p = MultiPoly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i + c0`.
    pub fn affine(nvars: usize, coeffs: &[Q], c0: Q) -> MultiPoly {
        let mut p = MultiPoly::constant(nvars, c0);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading monomial and coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Top-degree homogeneous component.
    pub fn top_form(&self) -> MultiPoly {
        match self.total_degree() {
            None => self.clone(),
            Some(d) => self.homogeneous_component(d),
        }
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Q::one())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut r = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut r = MultiPoly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().map(|(m, c)| c * m.eval(point)).sum()
    }

    /// Replace variable `i` by `images[i]`; all images share a target ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(images.len(), self.nvars));
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::VariableMismatch(target, images.iter().map(|p| p.nvars).max().unwrap_or(0)));
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Embed into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if is_const {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.format(names));
            } else {
                out.push_str(&format!("{}*{}", a, m.format(names)));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

/// Number of Weyl coordinates of a polynomial acted on by a rank-`n` element:
/// either `n` (no ħ) or `n + 1` (ħ last).
fn check_rank(n: usize, f: &MultiPoly) -> Result<()> {
    if f.nvars() != n && f.nvars() != n + 1 {
        return Err(Error::RankMismatch { expected: n, found: f.nvars() });
    }
    Ok(())
}

/// Plain action `(w·f)(v) = f(w⁻¹v)`: `x_i ↦ s_{p(i)} x_{p(i)}`, ħ fixed.
pub fn weyl_act_poly(w: &WeylElement, f: &MultiPoly) -> Result<MultiPoly> {
    let n = w.rank();
    check_rank(n, f)?;
    let nv = f.nvars();
    let mut images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let j = w.perm()[i];
            MultiPoly::var(nv, j).scale(&Q::from_integer(BigInt::from(w.signs()[j])))
        })
        .collect();
    if nv == n + 1 {
        images.push(MultiPoly::var(nv, n));
    }
    f.substitute(&images)
}

/// ρ-shifted action `(w.f)(λ, ħ) = f(w⁻¹(λ + ħρ) − ħρ, ħ)` with ρ of `t`.
/// The polynomial must carry the ħ variable.
pub fn rho_shifted_act(w: &WeylElement, f: &MultiPoly, t: LieType) -> Result<MultiPoly> {
    let n = w.rank();
    if t.rank != n {
        return Err(Error::RankMismatch { expected: t.rank, found: n });
    }
    if f.nvars() != n + 1 {
        return Err(Error::RankMismatch { expected: n + 1, found: f.nvars() });
    }
    let r = rho(t).coords;
    let nv = n + 1;
    let h = MultiPoly::var(nv, n);
    let mut images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let j = w.perm()[i];
            let s = Q::from_integer(BigInt::from(w.signs()[j]));
            MultiPoly::var(nv, j).add(&h.scale(&r[j])).scale(&s).sub(&h.scale(&r[i]))
        })
        .collect();
    images.push(h);
    f.substitute(&images)
}

/// Elementary symmetric polynomials `e_1..e_k` of the given polynomials.
pub fn elementary_symmetric(xs: &[MultiPoly], nvars: usize) -> Vec<MultiPoly> {
    // Coefficients of Π (1 + x_i t).
    let mut e = vec![MultiPoly::one(nvars)];
    for x in xs {
        let mut next = e.clone();
        next.push(MultiPoly::zero(nvars));
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(x));
        }
        e = next;
    }
    e.remove(0);
    e
}

/// Generators of `C[x]^{W_L}`: elementary symmetric functions of each GL
/// block, and on the tail the elementary symmetric functions of the squares
/// (type D replaces the top one by the product of the tail variables).
pub fn invariant_generators(l: &LeviSpec) -> Vec<MultiPoly> {
    let n = l.rank();
    let mut gens = Vec::new();
    for r in l.block_ranges() {
        let xs: Vec<MultiPoly> = r.map(|i| MultiPoly::var(n, i)).collect();
        gens.extend(elementary_symmetric(&xs, n));
    }
    if l.tail > 0 {
        let tr = l.tail_range();
        let xs: Vec<MultiPoly> = tr.clone().map(|i| MultiPoly::var(n, i)).collect();
        let sq: Vec<MultiPoly> = xs.iter().map(|x| x.mul(x)).collect();
        let mut es = elementary_symmetric(&sq, n);
        if l.ambient.family == crate::rootdata::Family::D {
            es.pop();
            es.push(xs.iter().fold(MultiPoly::one(n), |a, x| a.mul(x)));
        }
        gens.extend(es);
    }
    gens
}
