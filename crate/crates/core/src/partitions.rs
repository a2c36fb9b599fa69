//! Partitions labelling nilpotent orbits in classical types: collapses,
//! BVLS duality, regular-in-Levi saturation, induction from zero, and the
//! shape predicates for component groups, normality and surjectivity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::rootdata::{Family, LeviSpec, LieType};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each distinct part.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn transpose(&self) -> Partition {
        let len = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=len).map(|i| self.parts.iter().filter(|&&p| p >= i).count()).collect();
        Partition { parts }
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        let mut col = 0;
        for tok in body.split(',') {
            let t = tok.trim();
            match t.parse::<usize>() {
                Ok(v) if v > 0 => parts.push(v),
                _ => return Err(parse_err(s, col, format!("expected a positive integer, found {t:?}"))),
            }
            col += tok.len() + 1;
        }
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The parity of parts that must occur with even multiplicity.
fn bad_parity(family: Family) -> Option<usize> {
    match family {
        Family::A => None,
        Family::B | Family::D => Some(0),
        Family::C => Some(1),
    }
}

fn type_condition(p: &Partition, family: Family) -> bool {
    match bad_parity(family) {
        None => true,
        Some(par) => p.multiplicities().iter().all(|(&v, &m)| v % 2 != par || m % 2 == 0),
    }
}

pub fn is_orbit_partition(p: &Partition, t: LieType) -> bool {
    p.size() == t.natural_dim() && type_condition(p, t.family)
}

/// Lie type whose standard representation has dimension `size`.
pub fn infer_type(family: Family, size: usize) -> Result<LieType> {
    let rank = match family {
        Family::A => size,
        Family::B if !size.is_multiple_of(2) => (size - 1) / 2,
        Family::C | Family::D if size.is_multiple_of(2) => size / 2,
        _ => return Err(Error::InvalidPartition(format!("size {size} has the wrong parity for type {family}"))),
    };
    LieType::new(family, rank)
}

/// All orbit partitions of a given type.
pub fn orbit_partitions(t: LieType) -> Vec<Partition> {
    partitions_of(t.natural_dim()).into_iter().filter(|p| is_orbit_partition(p, t)).collect()
}

/// Largest partition of the family's type dominated by `p`. Repeatedly take
/// the largest part of the wrong parity with odd multiplicity, lower its last
/// occurrence by one and raise the first later part that is at least two
/// smaller (appending a new part 1 if there is none).
pub fn collapse(p: &Partition, family: Family) -> Result<Partition> {
    let par = match bad_parity(family) {
        None => return Ok(p.clone()),
        Some(par) => par,
    };
    let want_odd_size = family == Family::B;
    if (p.size() % 2 == 1) != want_odd_size {
        return Err(Error::Collapse(format!("size {} has the wrong parity for type {family}", p.size())));
    }
    let mut parts = p.parts.clone();
    loop {
        let mult = Partition { parts: parts.clone() }.multiplicities();
        let bad = mult.iter().rev().find(|(&v, &m)| v % 2 == par && m % 2 == 1).map(|(&v, _)| v);
        let Some(qv) = bad else { break };
        let last = parts.iter().rposition(|&x| x == qv).expect("part present");
        parts[last] -= 1;
        match (last + 1..parts.len()).find(|&j| parts[j] + 1 < qv) {
            Some(j) => parts[j] += 1,
            None => parts.push(1),
        }
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(Partition { parts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VeryEven {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub partition: Partition,
    pub ambient: LieType,
    pub very_even: Option<VeryEven>,
}

fn is_very_even(p: &Partition, t: LieType) -> bool {
    t.family == Family::D && p.parts.iter().all(|x| x % 2 == 0)
}

impl OrbitLabel {
    /// Validates the partition; very even D partitions get the flag `I`.
    pub fn new(partition: Partition, ambient: LieType) -> Result<OrbitLabel> {
        let flag = is_very_even(&partition, ambient).then_some(VeryEven::I);
        OrbitLabel::with_flag(partition, ambient, flag)
    }

    pub fn with_flag(partition: Partition, ambient: LieType, flag: Option<VeryEven>) -> Result<OrbitLabel> {
        if !is_orbit_partition(&partition, ambient) {
            return Err(Error::InvalidPartition(format!("{partition} is not an orbit partition for {ambient}")));
        }
        if flag.is_some() != is_very_even(&partition, ambient) {
            return Err(Error::InvalidPartition(
                "very even flag must be present exactly for very even D partitions".into(),
            ));
        }
        Ok(OrbitLabel { partition, ambient, very_even: flag })
    }

    /// Infer the ambient rank from the partition size.
    pub fn from_family(partition: Partition, family: Family) -> Result<OrbitLabel> {
        let t = infer_type(family, partition.size())?;
        OrbitLabel::new(partition, t)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.partition, self.ambient.family)?;
        if let Some(v) = self.very_even {
            write!(f, "^{v:?}")?;
        }
        Ok(())
    }
}

/// BVLS duality on partitions, landing in the Langlands dual type.
pub fn bvls_dual(o: &OrbitLabel) -> Result<OrbitLabel> {
    if !is_orbit_partition(&o.partition, o.ambient) {
        return Err(Error::InvalidPartition(format!("{} is not valid for {}", o.partition, o.ambient)));
    }
    let t = o.ambient;
    let pt = o.partition.transpose();
    let parts = match t.family {
        Family::A => pt,
        Family::C => {
            // Append a part 1 and transpose: the first column grows by one.
            let mut v = pt.parts;
            v[0] += 1;
            collapse(&Partition { parts: v }, Family::B)?
        }
        Family::B => {
            // Remove one box from the shortest row.
            let mut v = pt.parts;
            let last = v.len() - 1;
            v[last] -= 1;
            v.retain(|&x| x > 0);
            collapse(&Partition { parts: v }, Family::C)?
        }
        Family::D => collapse(&pt, Family::D)?,
    };
    let dual_t = t.dual();
    let flag = is_very_even(&parts, dual_t).then(|| o.very_even.unwrap_or(VeryEven::I));
    OrbitLabel::with_flag(parts, dual_t, flag)
}

/// Saturation to G of the regular orbit of the Levi: each GL block of size a
/// contributes (a, a) (once in type A), the tail its regular partition.
pub fn sat_regular_levi(l: &LeviSpec) -> Result<OrbitLabel> {
    let t = l.ambient;
    let mut parts = Vec::new();
    for &a in &l.gl_blocks {
        parts.push(a);
        if t.family != Family::A {
            parts.push(a);
        }
    }
    let m = l.tail;
    match t.family {
        Family::A => {}
        Family::B => parts.push(2 * m + 1),
        Family::C => {
            if m > 0 {
                parts.push(2 * m)
            }
        }
        Family::D => match m {
            0 => {}
            1 => parts.extend([1, 1]),
            _ => parts.extend([2 * m - 1, 1]),
        },
    }
    let size: usize = parts.iter().sum();
    parts.extend(std::iter::repeat_n(1, t.natural_dim().saturating_sub(size)));
    let p = collapse(&Partition::new(parts)?, t.family)?;
    OrbitLabel::new(p, t)
}

/// Partition of the orbit induced from the zero orbit of `l`, computed as the
/// dual of the saturated regular orbit of the dual Levi.
pub fn induced_from_zero(l: &LeviSpec) -> Result<OrbitLabel> {
    bvls_dual(&sat_regular_levi(&l.dual())?)
}

fn distinct_with_parity(p: &Partition, odd: bool) -> Vec<(usize, usize)> {
    p.multiplicities().into_iter().filter(|(v, _)| (v % 2 == 1) == odd).collect()
}

/// Shape criterion for the adjoint component group to be trivial, reading
/// "member" as a distinct part value.
pub fn a_group_trivial(p: &Partition, t: LieType) -> bool {
    match t.family {
        Family::A => true,
        Family::C => {
            let even = distinct_with_parity(p, false);
            even.is_empty() || (even.len() == 1 && even[0].1 % 2 == 1)
        }
        Family::B => distinct_with_parity(p, true).len() == 1,
        Family::D => {
            let odd = distinct_with_parity(p, true);
            odd.len() <= 1 || (odd.len() == 2 && odd.iter().all(|(_, m)| m % 2 == 1))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeVerdict {
    True,
    False,
    NotApplicable,
}

impl ShapeVerdict {
    fn from_bool(b: bool) -> ShapeVerdict {
        if b {
            ShapeVerdict::True
        } else {
            ShapeVerdict::False
        }
    }
}

impl fmt::Display for ShapeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeVerdict::True => "true",
            ShapeVerdict::False => "false",
            ShapeVerdict::NotApplicable => "not-applicable",
        })
    }
}

/// Shapes whose dual orbit has normal closure. Type A orbit closures are
/// always normal.
pub fn normal_orbit_image(p: &Partition, t: LieType) -> ShapeVerdict {
    if !a_group_trivial(p, t) {
        return ShapeVerdict::NotApplicable;
    }
    let even = distinct_with_parity(p, false);
    let odd = distinct_with_parity(p, true);
    let ok = match t.family {
        Family::A => true,
        // ((2a)^{d0}, 2b_1+1, ..., 2b_k+1), d0 odd, a >= b_1
        Family::C => match even.as_slice() {
            [(v, d0)] => d0 % 2 == 1 && odd.iter().all(|(o, _)| (o - 1) / 2 <= v / 2),
            _ => false,
        },
        // ((2a+1)^{d0}, 2b_1, ..., 2b_k), d0 odd, a <= b_k
        Family::B => match odd.as_slice() {
            [(v, d0)] => d0 % 2 == 1 && even.iter().all(|(e, _)| (v - 1) / 2 <= e / 2),
            _ => false,
        },
        Family::D => {
            let all_even = odd.is_empty() && even.len() <= 2;
            // ((2a+1)^{d0}, 2b_1, ..., 2b_k, 1^d), d0 and d odd, a+1 >= b_1;
            // for a = 0 the two odd blocks merge into 1^{even}.
            let case_a = match odd.as_slice() {
                [(1, m)] => m % 2 == 0 && even.iter().all(|(e, _)| *e <= 2),
                [(1, d), (v, d0)] => d % 2 == 1 && d0 % 2 == 1 && even.iter().all(|(e, _)| *e <= v + 1),
                _ => false,
            };
            all_even || case_a
        }
    };
    ShapeVerdict::from_bool(ok)
}

/// A shape `(v_1^{m_1}, ...)` where each multiplicity is `base + 2d` for
/// some `d >= 0`. Entries with nonpositive value are ignored.
fn matches_form(p: &Partition, form: &[(i64, usize)]) -> bool {
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for &(v, base) in form {
        if v > 0 {
            *need.entry(v as usize).or_insert(0) += base;
        }
    }
    let mult = p.multiplicities();
    if mult.keys().any(|k| !need.contains_key(k)) {
        return false;
    }
    need.iter().all(|(v, &base)| {
        let m = mult.get(v).copied().unwrap_or(0);
        m >= base && (m - base) % 2 == 0
    })
}

/// Necessary shape for surjectivity of the pullback from the flag variety to
/// the Springer fiber. Type A Springer fibers always have surjective
/// restriction, so the predicate is true there.
pub fn surjectivity_necessary(p: &Partition, t: LieType) -> bool {
    let top = p.parts.first().copied().unwrap_or(0) as i64;
    let a_range = 0..=top;
    match t.family {
        Family::A => true,
        Family::C => {
            a_range.into_iter().any(|a| matches_form(p, &[(2 * a + 1, 0), (2 * a, 1), (2 * a - 1, 0), (1, 0)]))
        }
        Family::B => a_range.into_iter().any(|a| matches_form(p, &[(2 * a + 2, 0), (2 * a + 1, 1), (2 * a, 0)])),
        Family::D => a_range.into_iter().any(|a| {
            matches_form(p, &[(2 * a + 2, 0), (2 * a + 1, 0)])
                || matches_form(p, &[(2 * a + 1, 0), (2 * a, 0)])
                || matches_form(p, &[(2 * a + 3, 1), (2 * a + 2, 0), (2 * a + 1, 1)])
                || (0..=top).any(|b| matches_form(p, &[(2 * a + 1, 1), (2 * b + 1, 1)]))
                || matches_form(p, &[(2 * a + 1, 1), (2 * a, 0), (2, 0), (1, 1)])
        }),
    }
}

fn binom(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Betti numbers `d_i = C(2k+1, i) + C(2k+1, i-2)`, `0 <= 2i <= 2k+3`, of
/// the Springer fiber for `(2k+1, 2k+1, 1)` in type B.
pub fn kim_betti(k: u64) -> Vec<u64> {
    let n = 2 * k + 1;
    (0..=((2 * k + 3) / 2) as i64).map(|i| binom(n, i) + binom(n, i - 2)).collect()
}
