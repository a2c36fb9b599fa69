//! Both weight maps of the refined Hikita comparison for a pair of Levis
//! `(M, L)`: the cohomology side, restricting `s ⊗ g` to the torus fixed
//! points labelled by `(W_L\W/W_M)^free`, and the quantization side, reading
//! off highest weights on `(W_M\W/W_L)^free`. Both land in polynomials in
//! the character coordinates of `l` and ħ, and are matched through
//! `[w] ↦ [w⁻¹]`.
//!
//! Normalization: the quantization formula is evaluated and then ħ is
//! replaced by 2ħ; the cohomology formula is evaluated at
//! `x = λ + 2ħρ_l` with ħ-argument 2ħ.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{invariant_generators, weyl_act_poly, MultiPoly};
use crate::rootdata::{
    coset_reps, free_double_cosets, locate_double_coset, parabolic_fixed_cosets, rho_levi,
    shortest_longest_intersection, CosetKind, CosetLabel, CosetSide, Family, LeviSpec, LieType, WeylElement, Q,
};

/// An element `s ⊗ g` of `C[h*, ħ]^{W_M} ⊗ C[h*, ħ]`, both legs in
/// `x_1..x_n, ħ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElement {
    pub name: String,
    pub s: MultiPoly,
    pub g: MultiPoly,
}

impl BElement {
    /// Polynomials in `n` variables are lifted to `n + 1` (ħ last).
    pub fn new(name: impl Into<String>, s: MultiPoly, g: MultiPoly, n: usize) -> Result<BElement> {
        let lift = |f: MultiPoly| -> Result<MultiPoly> {
            match f.nvars() {
                k if k == n => Ok(f.extend_vars(n + 1)),
                k if k == n + 1 => Ok(f),
                k => Err(Error::VariableMismatch(k, n + 1)),
            }
        };
        Ok(BElement { name: name.into(), s: lift(s)?, g: lift(g)? })
    }

    pub fn one(n: usize) -> BElement {
        BElement { name: "1".into(), s: MultiPoly::one(n + 1), g: MultiPoly::one(n + 1) }
    }
}

/// Polynomials in `(λ_1..λ_d, ħ)` indexed by coset labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub nparams: usize,
    pub entries: BTreeMap<CosetLabel, MultiPoly>,
}

impl WeightVector {
    pub fn names(&self) -> Vec<String> {
        param_names(self.nparams)
    }

    pub fn format_entries(&self) -> Vec<(String, String)> {
        let names = self.names();
        self.entries.iter().map(|(k, v)| (k.rep.to_string(), v.format(&names))).collect()
    }
}

/// `a1..ad` followed by `h`.
pub fn param_names(d: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=d).map(|i| format!("a{i}")).collect();
    v.push("h".into());
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HikitaInstance {
    pub ambient: LieType,
    pub levi_m: LeviSpec,
    pub levi_l: LeviSpec,
}

impl HikitaInstance {
    pub fn new(levi_m: LeviSpec, levi_l: LeviSpec) -> Result<HikitaInstance> {
        if levi_m.ambient != levi_l.ambient {
            return Err(Error::AmbientMismatch(levi_m.ambient.to_string(), levi_l.ambient.to_string()));
        }
        Ok(HikitaInstance { ambient: levi_m.ambient, levi_m, levi_l })
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank
    }

    /// Number of character coordinates of `l`.
    pub fn nparams(&self) -> usize {
        self.levi_l.character_dim()
    }

    fn nvars(&self) -> usize {
        self.nparams() + 1
    }

    fn hbar(&self) -> MultiPoly {
        MultiPoly::var(self.nvars(), self.nparams())
    }

    /// The embedding of `X(l)` into `h*`: one parameter per GL block,
    /// repeated across the block, zero on the tail. In type A the last block
    /// is pinned to zero, which fixes the central direction.
    pub fn restriction(&self) -> Vec<MultiPoly> {
        let nv = self.nvars();
        let d = self.nparams();
        let mut out = vec![MultiPoly::zero(nv); self.rank()];
        for (j, r) in self.levi_l.block_ranges().into_iter().enumerate() {
            if j < d {
                for i in r {
                    out[i] = MultiPoly::var(nv, j);
                }
            }
        }
        out
    }

    /// `λ + c·ħ·ρ_l` as polynomials in the parameters and ħ.
    pub fn shifted_point(&self, c: i64) -> Vec<MultiPoly> {
        let h = self.hbar();
        let rho = rho_levi(&self.levi_l).coords;
        let c = Q::from_integer(c.into());
        self.restriction().iter().zip(&rho).map(|(l, r)| l.add(&h.scale(&(r * &c)))).collect()
    }

    pub fn check_invariant(&self, b: &BElement) -> Result<()> {
        for w in self.levi_m.weyl_group().generators() {
            if weyl_act_poly(&w, &b.s)? != b.s {
                return Err(Error::NotInvariant(self.levi_m.to_string()));
            }
        }
        Ok(())
    }

    /// Labels of the cohomology side, `(W_L\W/W_M)^free`.
    pub fn coh_labels(&self) -> Result<Vec<CosetLabel>> {
        free_double_cosets(&self.levi_l, &self.levi_m)
    }

    /// Labels of the quantization side, `(W_M\W/W_L)^free`.
    pub fn quant_labels(&self) -> Result<Vec<CosetLabel>> {
        free_double_cosets(&self.levi_m, &self.levi_l)
    }

    /// The bijection `[w] ↦ [w⁻¹]` from quantization labels to cohomology
    /// labels.
    pub fn label_bijection(&self) -> Result<Vec<(CosetLabel, CosetLabel)>> {
        let coh = self.coh_labels()?;
        let mut out = Vec::new();
        for q in self.quant_labels()? {
            let c = locate_double_coset(&q.rep.inverse(), &self.levi_l, &self.levi_m, &coh)
                .expect("inverse of a free double coset is free")
                .clone();
            out.push((q, c));
        }
        Ok(out)
    }
}

/// `(w·v)[i] = signs[i]·v[perm⁻¹(i)]` on a vector of polynomials.
pub fn act_on_polys(w: &WeylElement, v: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out = v.to_vec();
    for (j, x) in v.iter().enumerate() {
        let i = w.perm()[j];
        out[i] = if w.signs()[i] < 0 { x.neg() } else { x.clone() };
    }
    out
}

fn subst(f: &MultiPoly, point: &[MultiPoly], hbar: &MultiPoly) -> Result<MultiPoly> {
    let mut images = point.to_vec();
    images.push(hbar.clone());
    f.substitute(&images)
}

/// Full flag case: entry at `[w] ∈ W/W_M` is `(w·s)·g` in `(x, ħ)`, labelled
/// by shortest coset representatives.
pub fn flag_fixed_restriction(inst: &HikitaInstance, b: &BElement) -> Result<BTreeMap<CosetLabel, MultiPoly>> {
    if !inst.levi_l.is_torus() {
        return Err(Error::InvalidLevi(format!("{} is not the torus", inst.levi_l)));
    }
    inst.check_invariant(b)?;
    let mut out = BTreeMap::new();
    for w in coset_reps(&inst.levi_m, CosetSide::ShortestLeft) {
        let ws = weyl_act_poly(&w, &b.s)?;
        out.insert(CosetLabel { rep: w, kind: CosetKind::Left }, ws.mul(&b.g));
    }
    Ok(out)
}

/// Cohomology side: `((c·s)·g)(λ + 2ħρ_l, 2ħ)` at each label `c` of
/// `(W_L\W/W_M)^free`.
pub fn coh_side(inst: &HikitaInstance, b: &BElement) -> Result<WeightVector> {
    inst.check_invariant(b)?;
    let point = inst.shifted_point(2);
    let h2 = inst.hbar().scale(&Q::from_integer(2.into()));
    let mut entries = BTreeMap::new();
    for c in inst.coh_labels()? {
        let cs = weyl_act_poly(&c.rep, &b.s)?;
        let v = subst(&cs.mul(&b.g), &point, &h2)?;
        entries.insert(c, v);
    }
    Ok(WeightVector { nparams: inst.nparams(), entries })
}

/// Quantization side: `s(c(λ − ħρ_l), ħ)·g(λ + ħρ_l, ħ)` at each label `c`
/// of `(W_M\W/W_L)^free`, then ħ ↦ 2ħ.
pub fn quant_side(inst: &HikitaInstance, b: &BElement) -> Result<WeightVector> {
    inst.check_invariant(b)?;
    let minus = inst.shifted_point(-2);
    let plus = inst.shifted_point(2);
    let h2 = inst.hbar().scale(&Q::from_integer(2.into()));
    let g_val = subst(&b.g, &plus, &h2)?;
    let mut entries = BTreeMap::new();
    for c in inst.quant_labels()? {
        let pt = act_on_polys(&c.rep, &minus);
        let v = subst(&b.s, &pt, &h2)?.mul(&g_val);
        entries.insert(c, v);
    }
    Ok(WeightVector { nparams: inst.nparams(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub generator: String,
    pub quant_label: String,
    pub coh_label: String,
    pub quant: String,
    pub coh: String,
}

#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub name: String,
    pub coh: WeightVector,
    pub quant: WeightVector,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct DiagramReport {
    pub bijection: Vec<(CosetLabel, CosetLabel)>,
    pub per_generator: Vec<GeneratorCheck>,
    pub mismatches: Vec<Mismatch>,
    /// Per-label equality failed but some other matching of labels would
    /// make the two sides agree.
    pub anomaly: bool,
    pub equal: bool,
}

/// Compare the cohomology entry at `𝐢([c]) = [c⁻¹]` with the quantization
/// entry at `[c]` for every generator, as exact polynomials.
pub fn diagram_check(inst: &HikitaInstance, gens: &[BElement]) -> Result<DiagramReport> {
    let bijection = inst.label_bijection()?;
    let names = param_names(inst.nparams());
    let mut per_generator = Vec::new();
    let mut mismatches = Vec::new();
    for b in gens {
        let coh = coh_side(inst, b)?;
        let quant = quant_side(inst, b)?;
        let mut equal = true;
        for (q, c) in &bijection {
            let (qv, cv) = (&quant.entries[q], &coh.entries[c]);
            if qv != cv {
                equal = false;
                mismatches.push(Mismatch {
                    generator: b.name.clone(),
                    quant_label: q.rep.to_string(),
                    coh_label: c.rep.to_string(),
                    quant: qv.format(&names),
                    coh: cv.format(&names),
                });
            }
        }
        per_generator.push(GeneratorCheck { name: b.name.clone(), coh, quant, equal });
    }
    let anomaly = !mismatches.is_empty() && other_matching_exists(&per_generator, &bijection);
    Ok(DiagramReport { equal: mismatches.is_empty(), bijection, per_generator, mismatches, anomaly })
}

/// Whether the multisets of per-label entry tuples agree on both sides.
fn other_matching_exists(checks: &[GeneratorCheck], bijection: &[(CosetLabel, CosetLabel)]) -> bool {
    let tuples = |pick: &dyn Fn(&GeneratorCheck, usize) -> MultiPoly| {
        let mut v: Vec<Vec<MultiPoly>> =
            (0..bijection.len()).map(|k| checks.iter().map(|g| pick(g, k)).collect()).collect();
        v.sort_by_key(|t| t.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        v
    };
    let q = tuples(&|g, k| g.quant.entries[&bijection[k].0].clone());
    let c = tuples(&|g, k| g.coh.entries[&bijection[k].1].clone());
    q == c
}

/// `invariant_generators(M) ⊗ 1` together with `1 ⊗ x_i`.
pub fn default_generators(inst: &HikitaInstance) -> Vec<BElement> {
    let n = inst.rank();
    let one = MultiPoly::one(n + 1);
    let names = crate::polyring::default_names(n, true);
    let mut out: Vec<BElement> = invariant_generators(&inst.levi_m)
        .into_iter()
        .map(|s| {
            let s = s.extend_vars(n + 1);
            BElement { name: format!("({}) ⊗ 1", s.format(&names)), s, g: one.clone() }
        })
        .collect();
    for i in 0..n {
        out.push(BElement { name: format!("1 ⊗ x{}", i + 1), s: one.clone(), g: MultiPoly::var(n + 1, i) });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub count: usize,
    /// Canonical labels of `(W_M\W/W_L)^free`.
    pub labels: Vec<CosetLabel>,
    /// Canonical labels of `(W_L\W/W_M)^free`.
    pub dual_labels: Vec<CosetLabel>,
    /// The free double cosets, `^M W^sh ∩ ^lo W^L` and `^M(W/W_L)` all have
    /// the same size, and both sides match under `w ↦ w⁻¹`.
    pub consistent: bool,
}

pub fn fixed_point_census(inst: &HikitaInstance) -> Result<Census> {
    let labels = inst.quant_labels()?;
    let dual_labels = inst.coh_labels()?;
    let n = labels.len();
    let inter = shortest_longest_intersection(&inst.levi_m, &inst.levi_l)?.len();
    let para = parabolic_fixed_cosets(&inst.levi_m, &inst.levi_l)?.len();
    let images: BTreeSet<CosetLabel> = inst.label_bijection()?.into_iter().map(|(_, c)| c).collect();
    let consistent = inter == n && para == n && dual_labels.len() == n && images.len() == n;
    Ok(Census { count: n, labels, dual_labels, consistent })
}

/// Labels not separated by the generators at ħ = 0 and a random rational λ:
/// pairs of cohomology labels whose entries agree for every generator.
pub fn unseparated_pairs(inst: &HikitaInstance, gens: &[BElement], seed: u64) -> Result<Vec<(CosetLabel, CosetLabel)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = inst.nparams();
    let mut point: Vec<Q> =
        (0..d).map(|_| Q::new(rng.gen_range(-97..=97).into(), rng.gen_range(1..=13).into())).collect();
    point.push(Q::from_integer(0.into()));
    let labels = inst.coh_labels()?;
    let mut values: Vec<Vec<Q>> = vec![Vec::new(); labels.len()];
    for b in gens {
        let v = coh_side(inst, b)?;
        for (k, l) in labels.iter().enumerate() {
            values[k].push(v.entries[l].eval(&point));
        }
    }
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if values[i] == values[j] {
                out.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Ok(out)
}

/// The `SL_4` instance worked by hand: `M` the torus, `L = GL_1 × GL_3`.
pub fn sl4_example() -> HikitaInstance {
    let t = LieType { family: Family::A, rank: 4 };
    HikitaInstance::new(LeviSpec::torus(t), LeviSpec::new(t, vec![1, 3], 0).expect("valid Levi")).expect("same ambient")
}

/// The Cartan element `e_ii − e_{i+1,i+1}` (1-based `i`) placed on the
/// `s` leg.
pub fn cartan_generator(n: usize, i: usize) -> BElement {
    let s = MultiPoly::var(n + 1, i - 1).sub(&MultiPoly::var(n + 1, i));
    BElement { name: format!("e{i}"), s, g: MultiPoly::one(n + 1) }
}
