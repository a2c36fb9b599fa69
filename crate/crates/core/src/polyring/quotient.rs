//! Artinian quotients `k[x]/I`: standard monomial basis, Hilbert function
//! and socle dimension by exact linear algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::groebner::normal_form;
use super::{IdealBasis, Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::rootdata::Q;

/// Standard monomials of a monomial ideal given by its generators, in
/// increasing grevlex order; `None` when there are infinitely many.
pub(crate) fn standard_monomials_of_leads(nvars: usize, leads: &[Monomial]) -> Option<Vec<Monomial>> {
    if leads.iter().any(|l| l.degree() == 0) {
        return Some(vec![]);
    }
    for i in 0..nvars {
        if !leads.iter().any(|l| l.pure_power_var() == Some(i)) {
            return None;
        }
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(nvars)];
    seen.insert(Monomial::one(nvars));
    while let Some(m) = frontier.pop() {
        for i in 0..nvars {
            let c = m.times_var(i);
            if !seen.contains(&c) && !leads.iter().any(|l| l.divides(&c)) {
                seen.insert(c.clone());
                frontier.push(c);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Standard monomials of an ideal with respect to its reduced Gröbner basis.
pub fn standard_monomials(nvars: usize, gb: &[MultiPoly]) -> Result<Vec<Monomial>> {
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    standard_monomials_of_leads(nvars, &leads).ok_or(Error::InfiniteQuotient)
}

/// Finite-dimensional quotient by an ideal.
#[derive(Clone, Debug, Serialize)]
pub struct GradedQuotient {
    pub nvars: usize,
    #[serde(skip)]
    pub ideal: IdealBasis,
    /// Exponent vectors of the standard monomials, increasing.
    #[serde(skip)]
    pub monomial_basis: Vec<Monomial>,
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
}

impl GradedQuotient {
    pub fn basis_strings(&self, names: &[String]) -> Vec<String> {
        self.monomial_basis.iter().map(|m| m.format(names)).collect()
    }

    /// Standard monomials of a given degree.
    pub fn basis_in_degree(&self, d: u32) -> Vec<&Monomial> {
        self.monomial_basis.iter().filter(|m| m.degree() == d).collect()
    }
}

/// Rank of a list of sparse rows over the rationals.
fn rank(mut rows: Vec<BTreeMap<usize, Q>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for row in rows.iter_mut() {
        let mut r = std::mem::take(row);
        while let Some((&col, _)) = r.iter().next() {
            match pivots.get(&col) {
                Some(p) => {
                    let c = r[&col].clone();
                    for (k, v) in p {
                        let e = r.entry(*k).or_insert_with(Q::zero);
                        *e -= &c * v;
                        if e.is_zero() {
                            r.remove(k);
                        }
                    }
                }
                None => {
                    let inv = r[&col].recip();
                    for v in r.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(col, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Dimension, Hilbert function and socle of `k[x]/I`. The socle is the
/// kernel of `f ↦ (x_1 f, ..., x_n f)`, computed degree by degree when the
/// ideal is homogeneous and on the whole quotient otherwise.
pub fn quotient_analytics(ideal: &IdealBasis) -> Result<GradedQuotient> {
    let nvars = ideal.nvars;
    let gb = ideal.gb();
    let basis = standard_monomials(nvars, &gb)?;
    let top = basis.iter().map(|m| m.degree()).max().unwrap_or(0) as usize;
    let mut hilbert = vec![0usize; if basis.is_empty() { 0 } else { top + 1 }];
    for m in &basis {
        hilbert[m.degree() as usize] += 1;
    }
    let homogeneous = gb.iter().all(|g| g.is_homogeneous());
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let row_of = |m: &Monomial| -> BTreeMap<usize, Q> {
        let mut row = BTreeMap::new();
        for i in 0..nvars {
            let prod = m.times_var(i);
            let nf = if index.contains_key(&prod) {
                MultiPoly::monomial(prod, Q::from_integer(1.into()))
            } else {
                normal_form(&MultiPoly::monomial(prod, Q::from_integer(1.into())), &gb)
            };
            for (t, c) in nf.terms() {
                row.insert(i * basis.len() + index[t], c.clone());
            }
        }
        row
    };
    let socle_dim = if homogeneous {
        (0..hilbert.len())
            .map(|d| {
                let rows: Vec<_> = basis.iter().filter(|m| m.degree() as usize == d).map(&row_of).collect();
                rows.len() - rank(rows)
            })
            .sum()
    } else {
        let rows: Vec<_> = basis.iter().map(&row_of).collect();
        rows.len() - rank(rows)
    };
    Ok(GradedQuotient {
        nvars,
        ideal: IdealBasis::from_reduced_groebner(nvars, gb),
        dim: basis.len(),
        monomial_basis: basis,
        hilbert,
        socle_dim,
    })
}
