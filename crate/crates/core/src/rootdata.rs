//! Classical root systems, Weyl groups as signed permutations, Levi
//! subgroups and their coset combinatorics.
//!
//! Coordinates are the standard ε-basis. Type A of rank `n` means `n`
//! coordinates, so its Weyl group is the symmetric group on `n` letters.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Langlands dual family.
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A classical type. `rank` is the number of ε-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::InvalidType(format!("{family}{rank}: rank must be at least {min}")));
        }
        Ok(LieType { family, rank })
    }

    pub fn dual(self) -> LieType {
        LieType { family: self.family.dual(), rank: self.rank }
    }

    /// Dimension of the standard representation.
    pub fn natural_dim(self) -> usize {
        match self.family {
            Family::A => self.rank,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        if s.len() < 2 || !s.is_char_boundary(1) {
            return Err(parse_err(s, 0, "expected a type like C3"));
        }
        let family = Family::parse(&s[..1]).map_err(|_| parse_err(s, 0, "family must be A, B, C or D"))?;
        let rank: usize = s[1..].parse().map_err(|_| parse_err(s, 1, "rank must be a positive integer"))?;
        LieType::new(family, rank)
    }
}

/// Order of the Weyl group.
pub fn weyl_order(t: LieType) -> u64 {
    let n = t.rank as u64;
    let fact: u64 = (1..=n).product();
    match t.family {
        Family::A => fact,
        Family::B | Family::C => fact << n,
        Family::D => fact << (n - 1),
    }
}

/// A weight in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Weight {
        Weight { coords }
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        Weight { coords: v.iter().map(|&x| q(x)).collect() }
    }

    pub fn zero(n: usize) -> Weight {
        Weight { coords: vec![Q::zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Weight> {
        let mut coords = Vec::new();
        let mut col = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            let v = Q::from_str(t).map_err(|_| parse_err(s, col, format!("bad rational {t:?}")))?;
            coords.push(v);
            col += tok.len() + 1;
        }
        Ok(Weight { coords })
    }
}

/// Signed permutation. `perm[i]` is the image of coordinate `i` and
/// `signs[i]` is the sign attached to output coordinate `i`, so that
/// `(w·v)[i] = signs[i] * v[perm⁻¹(i)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// Build from a 0-based permutation and per-output-coordinate signs.
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<WeylElement> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::RankMismatch { expected: n, found: signs.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidType("not a permutation".into()));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidType("signs must be ±1".into()));
        }
        Ok(WeylElement { perm, signs })
    }

    /// From signed one-line notation: `w(e_j) = sgn(σ_j) e_{|σ_j|}`, 1-based.
    pub fn from_one_line(sigma: &[i64]) -> Result<WeylElement> {
        let n = sigma.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for (j, &s) in sigma.iter().enumerate() {
            let a = s.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::InvalidType(format!("one-line entry {s} out of range")));
            }
            perm[j] = a - 1;
            signs[a - 1] = if s < 0 { -1 } else { 1 };
        }
        WeylElement::new(perm, signs)
    }

    /// Permutation from cycle notation on 1-based letters, e.g. `[[1,3,2]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<WeylElement> {
        let mut perm: Vec<usize> = (0..n).collect();
        for c in cycles {
            for i in 0..c.len() {
                let a = c[i];
                let b = c[(i + 1) % c.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidType("cycle letter out of range".into()));
                }
                perm[a - 1] = b - 1;
            }
        }
        WeylElement::new(perm, vec![1; n])
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn one_line(&self) -> Vec<i64> {
        self.perm.iter().map(|&p| self.signs[p] as i64 * (p as i64 + 1)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        assert_eq!(n, other.rank(), "composition of elements of different rank");
        let perm: Vec<usize> = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let inv = inverse_perm(&self.perm);
        let signs = (0..n).map(|i| self.signs[i] * other.signs[inv[i]]).collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let inv = inverse_perm(&self.perm);
        // w⁻¹(e_i) = s_i e_{p⁻¹(i)}, so the sign lands on output p⁻¹(i).
        let mut signs = vec![1; self.rank()];
        for i in 0..self.rank() {
            signs[inv[i]] = self.signs[i];
        }
        WeylElement { perm: inv, signs }
    }

    pub fn act_int(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            let i = self.perm[j];
            out[i] = self.signs[i] as i64 * x;
        }
        out
    }

    pub fn act_q(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            let i = self.perm[j];
            out[i] = if self.signs[i] < 0 { -x.clone() } else { x.clone() };
        }
        out
    }

    /// Whether the element lies in the Weyl group of the given family.
    pub fn in_family(&self, family: Family) -> bool {
        let neg = self.signs.iter().filter(|&&s| s < 0).count();
        match family {
            Family::A => neg == 0,
            Family::B | Family::C => true,
            Family::D => neg % 2 == 0,
        }
    }

    /// Coxeter length via the signed inversion count of the one-line notation.
    pub fn length(&self, family: Family) -> usize {
        let s = self.one_line();
        let n = s.len() as i64;
        let key = |a: i64| if a > 0 { a } else { 2 * n + 1 + a };
        let mut l = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if key(s[i]) > key(s[j]) {
                    l += 1;
                }
                if family != Family::A && key(s[i]) > key(-s[j]) {
                    l += 1;
                }
            }
        }
        if matches!(family, Family::B | Family::C) {
            l += s.iter().filter(|&&x| x < 0).count();
        }
        l
    }

    /// Cycle notation on 1-based letters for the underlying permutation.
    pub fn cycle_string(&self) -> String {
        let s = self.one_line();
        let n = s.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![];
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(s[j]);
                j = (s[j].unsigned_abs() as usize) - 1;
            }
            if cyc.len() > 1 || cyc[0] < 0 {
                let c: Vec<String> = std::iter::once((start + 1) as i64)
                    .chain(cyc[..cyc.len() - 1].iter().copied())
                    .map(|x| x.to_string())
                    .collect();
                let tail_sign = if cyc[cyc.len() - 1] < 0 { "-" } else { "" };
                out.push_str(&format!("({}){}", c.join(" "), tail_sign));
            }
        }
        if out.is_empty() {
            "1".into()
        } else {
            out
        }
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.one_line().cmp(&other.one_line())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn act_on_weight(w: &WeylElement, v: &Weight) -> Result<Weight> {
    if w.rank() != v.len() {
        return Err(Error::RankMismatch { expected: w.rank(), found: v.len() });
    }
    Ok(Weight { coords: w.act_q(&v.coords) })
}

/// All elements of W, sorted lexicographically by signed one-line notation.
pub fn weyl_elements(t: LieType) -> Vec<WeylElement> {
    let n = t.rank;
    let mut out = Vec::with_capacity(weyl_order(t) as usize);
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, fam: Family, cur: &mut Vec<i64>, used: &mut [bool], out: &mut Vec<WeylElement>) {
        if cur.len() == n {
            if fam == Family::D && cur.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                return;
            }
            out.push(WeylElement::from_one_line(cur).expect("valid one-line"));
            return;
        }
        let mut vals: Vec<i64> = Vec::new();
        if fam != Family::A {
            vals.extend((1..=n as i64).rev().map(|x| -x));
        }
        vals.extend(1..=n as i64);
        for v in vals {
            let a = v.unsigned_abs() as usize - 1;
            if used[a] {
                continue;
            }
            used[a] = true;
            cur.push(v);
            rec(n, fam, cur, used, out);
            cur.pop();
            used[a] = false;
        }
    }
    rec(n, t.family, &mut cur, &mut used, &mut out);
    out
}

/// Positive roots as integer vectors.
pub fn positive_roots_int(t: LieType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut out = Vec::new();
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; n];
        v[i] = c;
        v
    };
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            out.push(v);
            if t.family != Family::A {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = 1;
                out.push(v);
            }
        }
        match t.family {
            Family::B => out.push(unit(i, 1)),
            Family::C => out.push(unit(i, 2)),
            _ => {}
        }
    }
    out
}

pub fn is_positive_int(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn to_weight(v: &[i64]) -> Weight {
    Weight::from_ints(v)
}

fn coroot_int(a: &[i64]) -> Weight {
    let norm: i64 = a.iter().map(|x| x * x).sum();
    Weight { coords: a.iter().map(|&x| q_frac(2 * x, norm)).collect() }
}

pub fn roots(t: LieType) -> Vec<Weight> {
    let pos = positive_roots_int(t);
    pos.iter().map(|r| to_weight(r)).chain(pos.iter().map(|r| to_weight(r).neg())).collect()
}

pub fn coroots(t: LieType) -> Vec<Weight> {
    let pos = positive_roots_int(t);
    pos.iter().map(|r| coroot_int(r)).chain(pos.iter().map(|r| coroot_int(r).neg())).collect()
}

pub fn coroot(alpha: &Weight) -> Weight {
    let norm: Q = alpha.coords.iter().map(|x| x * x).sum();
    alpha.scale(&(q(2) / norm))
}

pub fn pairing(v: &Weight, coroot: &Weight) -> Q {
    v.coords.iter().zip(&coroot.coords).map(|(a, b)| a * b).sum()
}

/// Levi subalgebra: GL blocks on the leading coordinates, then a classical
/// tail of the ambient family on the last `tail` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviSpec {
    pub ambient: LieType,
    pub gl_blocks: Vec<usize>,
    pub tail: usize,
}

impl LeviSpec {
    pub fn new(ambient: LieType, gl_blocks: Vec<usize>, tail: usize) -> Result<LeviSpec> {
        if gl_blocks.contains(&0) {
            return Err(Error::InvalidLevi("GL blocks must be positive".into()));
        }
        if ambient.family == Family::A && tail != 0 {
            return Err(Error::InvalidLevi("type A Levis have no classical tail".into()));
        }
        let total: usize = gl_blocks.iter().sum::<usize>() + tail;
        if total != ambient.rank {
            return Err(Error::InvalidLevi(format!("block sizes sum to {total}, ambient rank is {}", ambient.rank)));
        }
        Ok(LeviSpec { ambient, gl_blocks, tail })
    }

    pub fn torus(ambient: LieType) -> LeviSpec {
        LeviSpec { ambient, gl_blocks: vec![1; ambient.rank], tail: 0 }
    }

    pub fn full(ambient: LieType) -> LeviSpec {
        match ambient.family {
            Family::A => LeviSpec { ambient, gl_blocks: vec![ambient.rank], tail: 0 },
            _ => LeviSpec { ambient, gl_blocks: vec![], tail: ambient.rank },
        }
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank
    }

    /// Coordinate ranges of the GL blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.gl_blocks
            .iter()
            .map(|&a| {
                let r = start..start + a;
                start += a;
                r
            })
            .collect()
    }

    pub fn tail_range(&self) -> std::ops::Range<usize> {
        let c: usize = self.gl_blocks.iter().sum();
        c..c + self.tail
    }

    /// Dimension of the character space: one parameter per GL block,
    /// minus one in type A.
    pub fn character_dim(&self) -> usize {
        let k = self.gl_blocks.len();
        if self.ambient.family == Family::A {
            k.saturating_sub(1)
        } else {
            k
        }
    }

    /// Parse the body of a Levi spec (`gl1,gl1|sp1`, `torus`, `full`) for a
    /// given ambient type.
    pub fn parse_body(ambient: LieType, body: &str) -> Result<LeviSpec> {
        let full_input = body;
        let body = body.trim();
        match body {
            "torus" | "t" => return Ok(LeviSpec::torus(ambient)),
            "full" | "G" | "g" => return Ok(LeviSpec::full(ambient)),
            _ => {}
        }
        let (blocks_part, tail_part) = match body.split_once('|') {
            Some((b, t)) => (b, Some(t)),
            None => (body, None),
        };
        let mut blocks = Vec::new();
        let mut col = 0;
        if !blocks_part.trim().is_empty() {
            for tok in blocks_part.split(',') {
                let t = tok.trim();
                let size = t
                    .strip_prefix("gl")
                    .and_then(|x| x.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(full_input, col, format!("expected glN, found {t:?}")))?;
                blocks.push(size);
                col += tok.len() + 1;
            }
        }
        let mut tail = 0;
        if let Some(t) = tail_part {
            let t = t.trim();
            let want = match ambient.family {
                Family::A => return Err(parse_err(full_input, col, "type A Levis have no classical tail")),
                Family::C => "sp",
                Family::B | Family::D => "so",
            };
            tail = t.strip_prefix(want).and_then(|x| x.parse::<usize>().ok()).ok_or_else(|| {
                parse_err(full_input, col, format!("expected {want}N tail for {ambient}, found {t:?}"))
            })?;
        }
        LeviSpec::new(ambient, blocks, tail).map_err(|e| parse_err(full_input, 0, e.to_string()))
    }

    /// Return the tail label for display: `sp` for C, `so` for B and D.
    fn tail_tag(&self) -> &'static str {
        if self.ambient.family == Family::C {
            "sp"
        } else {
            "so"
        }
    }

    pub fn body_string(&self) -> String {
        let blocks: Vec<String> = self.gl_blocks.iter().map(|a| format!("gl{a}")).collect();
        let mut out = blocks.join(",");
        if self.tail > 0 {
            out.push('|');
            out.push_str(&format!("{}{}", self.tail_tag(), self.tail));
        }
        if out.is_empty() {
            out = "full".into();
        }
        out
    }

    /// Same Levi in the Langlands dual ambient (B and C swap).
    pub fn dual(&self) -> LeviSpec {
        LeviSpec { ambient: self.ambient.dual(), gl_blocks: self.gl_blocks.clone(), tail: self.tail }
    }

    pub fn is_torus(&self) -> bool {
        self.tail == 0 && self.gl_blocks.iter().all(|&a| a == 1)
    }

    pub fn is_full(&self) -> bool {
        *self == LeviSpec::full(self.ambient)
    }

    /// Positive roots of the Levi, in ambient coordinates.
    pub fn positive_roots_int(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::new();
        for r in self.block_ranges() {
            for i in r.clone() {
                for j in i + 1..r.end {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[j] = -1;
                    out.push(v);
                }
            }
        }
        let tr = self.tail_range();
        if self.tail > 0 {
            let sub = LieType { family: self.ambient.family, rank: self.tail };
            for r in positive_roots_int(sub) {
                let mut v = vec![0; n];
                v[tr.clone()].copy_from_slice(&r);
                out.push(v);
            }
        }
        out
    }

    pub fn roots_int(&self) -> Vec<Vec<i64>> {
        let pos = self.positive_roots_int();
        let neg: Vec<Vec<i64>> = pos.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        pos.into_iter().chain(neg).collect()
    }

    pub fn weyl_group(&self) -> LeviWeylGroup {
        LeviWeylGroup { levi: self.clone() }
    }
}

impl fmt::Display for LeviSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.ambient, self.body_string())
    }
}

impl FromStr for LeviSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<LeviSpec> {
        let (t, body) =
            s.split_once(':').ok_or_else(|| parse_err(s, 0, "expected AMBIENT:BODY such as C3:gl1,gl1|sp1"))?;
        let ambient: LieType = t.parse().map_err(|e: Error| match e {
            Error::Parse { column, message, .. } => parse_err(s, column, message),
            other => parse_err(s, 0, other.to_string()),
        })?;
        LeviSpec::parse_body(ambient, body).map_err(|e| match e {
            Error::Parse { column, message, .. } => parse_err(s, t.len() + 1 + column, message),
            other => other,
        })
    }
}

/// Weyl group of a Levi as a subgroup of the ambient Weyl group.
#[derive(Clone, Debug)]
pub struct LeviWeylGroup {
    pub levi: LeviSpec,
}

impl LeviWeylGroup {
    pub fn order(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        let blocks: u64 = self.levi.gl_blocks.iter().map(|&a| fact(a)).product();
        let tail = match (self.levi.tail, self.levi.ambient.family) {
            (0, _) => 1,
            (1, Family::D) => 1,
            (m, f) => weyl_order(LieType { family: f, rank: m }),
        };
        blocks * tail
    }

    /// Simple reflections of the Levi.
    pub fn generators(&self) -> Vec<WeylElement> {
        let n = self.levi.rank();
        let mut gens = Vec::new();
        let swap = |i: usize, j: usize, neg: bool| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, j);
            let mut signs = vec![1i8; n];
            if neg {
                signs[i] = -1;
                signs[j] = -1;
            }
            WeylElement { perm, signs }
        };
        for r in self.levi.block_ranges() {
            for i in r.start..r.end.saturating_sub(1) {
                gens.push(swap(i, i + 1, false));
            }
        }
        let tr = self.levi.tail_range();
        if self.levi.tail > 0 {
            for i in tr.start..tr.end - 1 {
                gens.push(swap(i, i + 1, false));
            }
            let last = tr.end - 1;
            match self.levi.ambient.family {
                Family::B | Family::C => {
                    let mut signs = vec![1i8; n];
                    signs[last] = -1;
                    gens.push(WeylElement { perm: (0..n).collect(), signs });
                }
                Family::D if self.levi.tail >= 2 => gens.push(swap(last - 1, last, true)),
                _ => {}
            }
        }
        gens
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        let n = self.levi.rank();
        if w.rank() != n || !w.in_family(self.levi.ambient.family) {
            return false;
        }
        for r in self.levi.block_ranges() {
            for i in r.clone() {
                if !r.contains(&w.perm[i]) || w.signs[w.perm[i]] < 0 {
                    return false;
                }
            }
        }
        let tr = self.levi.tail_range();
        let mut neg = 0;
        for i in tr.clone() {
            if !tr.contains(&w.perm[i]) {
                return false;
            }
            if w.signs[w.perm[i]] < 0 {
                neg += 1;
            }
        }
        !(self.levi.ambient.family == Family::D && neg % 2 == 1)
    }

    pub fn elements(&self) -> Vec<WeylElement> {
        weyl_elements(self.levi.ambient).into_iter().filter(|w| self.contains(w)).collect()
    }

    /// Longest element: reverses each block, negates the tail (D with odd
    /// tail rank keeps the last tail coordinate).
    pub fn longest(&self) -> WeylElement {
        let n = self.levi.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut signs = vec![1i8; n];
        for r in self.levi.block_ranges() {
            for i in r.clone() {
                perm[i] = r.start + r.end - 1 - i;
            }
        }
        let tr = self.levi.tail_range();
        let fam = self.levi.ambient.family;
        for i in tr.clone() {
            signs[i] = -1;
        }
        if fam == Family::D && self.levi.tail % 2 == 1 {
            signs[tr.end - 1] = 1;
        }
        WeylElement { perm, signs }
    }
}

/// Every standard Levi of `t` up to the ordering of GL blocks: all
/// compositions into GL blocks followed by every admissible tail. Type D
/// skips the rank-one tail, which repeats a GL₁ block.
pub fn all_levis(t: LieType) -> Vec<LeviSpec> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let tails: Vec<usize> = match t.family {
        Family::A => vec![0],
        Family::B | Family::C => (0..=t.rank).collect(),
        Family::D => (0..=t.rank).filter(|&m| m != 1).collect(),
    };
    let mut out = Vec::new();
    for m in tails {
        for c in compositions(t.rank - m) {
            out.push(LeviSpec { ambient: t, gl_blocks: c, tail: m });
        }
    }
    out
}

pub fn levi_weyl_group(l: &LeviSpec) -> LeviWeylGroup {
    l.weyl_group()
}

fn all_neg(w: &WeylElement, roots: &[Vec<i64>]) -> bool {
    roots.iter().all(|a| !is_positive_int(&w.act_int(a)))
}

fn all_pos(w: &WeylElement, roots: &[Vec<i64>]) -> bool {
    roots.iter().all(|a| is_positive_int(&w.act_int(a)))
}

/// `w` is shortest in `W_M w`.
pub fn is_min_right(w: &WeylElement, m: &LeviSpec) -> bool {
    all_pos(&w.inverse(), &m.positive_roots_int())
}

/// `w` is shortest in `w W_L`.
pub fn is_min_left(w: &WeylElement, l: &LeviSpec) -> bool {
    all_pos(w, &l.positive_roots_int())
}

/// `w` is longest in `w W_L`.
pub fn is_max_left(w: &WeylElement, l: &LeviSpec) -> bool {
    all_neg(w, &l.positive_roots_int())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetSide {
    /// Shortest representatives of `W_M \ W`.
    ShortestRight,
    /// Longest representatives of `W / W_L`.
    LongestLeft,
    /// Shortest representatives of `W / W_L`.
    ShortestLeft,
}

pub fn coset_reps(l: &LeviSpec, side: CosetSide) -> Vec<WeylElement> {
    let pos = l.positive_roots_int();
    weyl_elements(l.ambient)
        .into_iter()
        .filter(|w| match side {
            CosetSide::ShortestRight => all_pos(&w.inverse(), &pos),
            CosetSide::LongestLeft => all_neg(w, &pos),
            CosetSide::ShortestLeft => all_pos(w, &pos),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CosetKind {
    Left,
    Right,
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CosetLabel {
    pub rep: WeylElement,
    pub kind: CosetKind,
}

impl CosetLabel {
    pub fn double(rep: WeylElement) -> CosetLabel {
        CosetLabel { rep, kind: CosetKind::Double }
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

fn check_same_ambient(m: &LeviSpec, l: &LeviSpec) -> Result<()> {
    if m.ambient != l.ambient {
        return Err(Error::AmbientMismatch(m.ambient.to_string(), l.ambient.to_string()));
    }
    Ok(())
}

fn as_set(v: Vec<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    v.into_iter().collect()
}

/// Minimal representatives `d` of the free double cosets `W_M d W_L`, i.e.
/// those with `d⁻¹Δ_M ∩ Δ_L = ∅`.
pub fn free_minimal_reps(m: &LeviSpec, l: &LeviSpec) -> Result<Vec<WeylElement>> {
    check_same_ambient(m, l)?;
    let m_pos = m.positive_roots_int();
    let l_pos = l.positive_roots_int();
    let l_roots = as_set(l.roots_int());
    Ok(weyl_elements(m.ambient)
        .into_iter()
        .filter(|d| {
            let di = d.inverse();
            all_pos(&di, &m_pos) && all_pos(d, &l_pos) && m_pos.iter().all(|a| !l_roots.contains(&di.act_int(a)))
        })
        .collect())
}

/// Canonical labels of `(W_M \ W / W_L)^free`: for each free double coset the
/// unique element that is shortest in `W_M c` and longest in `c W_L`.
pub fn free_double_cosets(m: &LeviSpec, l: &LeviSpec) -> Result<Vec<CosetLabel>> {
    let wl = l.weyl_group().longest();
    let mut out: Vec<CosetLabel> =
        free_minimal_reps(m, l)?.into_iter().map(|d| CosetLabel::double(d.compose(&wl))).collect();
    out.sort();
    Ok(out)
}

/// `^M W^sh ∩ ^lo W^L`.
pub fn shortest_longest_intersection(m: &LeviSpec, l: &LeviSpec) -> Result<Vec<WeylElement>> {
    check_same_ambient(m, l)?;
    let m_pos = m.positive_roots_int();
    let l_pos = l.positive_roots_int();
    Ok(weyl_elements(m.ambient).into_iter().filter(|w| all_pos(&w.inverse(), &m_pos) && all_neg(w, &l_pos)).collect())
}

/// Cosets `w W_L` in `^M(W/W_L)`: for every root `α` of `M`, `w⁻¹α` lies in
/// the parabolic root set `Δ_L ∪ Δ⁺` exactly when `α` is positive. Returned
/// as shortest left-coset representatives.
pub fn parabolic_fixed_cosets(m: &LeviSpec, l: &LeviSpec) -> Result<Vec<WeylElement>> {
    check_same_ambient(m, l)?;
    let m_roots = m.roots_int();
    let l_pos = l.positive_roots_int();
    let l_roots = as_set(l.roots_int());
    Ok(weyl_elements(m.ambient)
        .into_iter()
        .filter(|w| all_pos(w, &l_pos))
        .filter(|w| {
            let wi = w.inverse();
            m_roots.iter().all(|a| {
                let b = wi.act_int(a);
                let in_p = is_positive_int(&b) || l_roots.contains(&b);
                in_p == is_positive_int(a)
            })
        })
        .collect())
}

/// Which double coset label (from `labels`) contains `w`.
pub fn locate_double_coset<'a>(
    w: &WeylElement,
    m: &LeviSpec,
    l: &LeviSpec,
    labels: &'a [CosetLabel],
) -> Option<&'a CosetLabel> {
    // Reduce w to the minimal element of its double coset by descending
    // through simple reflections on both sides.
    let d = minimal_in_double_coset(w, m, l);
    labels.iter().find(|c| minimal_in_double_coset(&c.rep, m, l) == d)
}

/// Minimal-length element of `W_M w W_L`.
pub fn minimal_in_double_coset(w: &WeylElement, m: &LeviSpec, l: &LeviSpec) -> WeylElement {
    let fam = m.ambient.family;
    let gm = m.weyl_group().generators();
    let gl = l.weyl_group().generators();
    let mut cur = w.clone();
    loop {
        let len = cur.length(fam);
        let mut improved = false;
        for s in &gm {
            let c = s.compose(&cur);
            if c.length(fam) < len {
                cur = c;
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }
        for s in &gl {
            let c = cur.compose(s);
            if c.length(fam) < len {
                cur = c;
                improved = true;
                break;
            }
        }
        if !improved {
            return cur;
        }
    }
}

pub fn rho(t: LieType) -> Weight {
    half_sum(t.rank, &positive_roots_int(t))
}

pub fn rho_levi(l: &LeviSpec) -> Weight {
    half_sum(l.rank(), &l.positive_roots_int())
}

fn half_sum(n: usize, roots: &[Vec<i64>]) -> Weight {
    let mut s = vec![0i64; n];
    for r in roots {
        for (a, b) in s.iter_mut().zip(r) {
            *a += b;
        }
    }
    Weight { coords: s.iter().map(|&x| q_frac(x, 2)).collect() }
}

fn is_positive_integer(x: &Q) -> bool {
    x.is_integer() && x.is_positive()
}

/// `⟨v, β^∨⟩ ∉ Z_{>0}` for every root β of the parabolic `Δ_L ∪ Δ⁺`.
pub fn is_p_antidominant(v: &Weight, p: &LeviSpec) -> bool {
    let mut roots = positive_roots_int(p.ambient);
    roots.extend(p.roots_int());
    roots.iter().all(|b| !is_positive_integer(&pairing(v, &coroot_int(b))))
}

/// `⟨v, β^∨⟩ ≠ 0` for every root outside the Levi.
pub fn is_l_regular(v: &Weight, p: &LeviSpec) -> bool {
    let l_roots = as_set(p.roots_int());
    positive_roots_int(p.ambient)
        .iter()
        .filter(|b| !l_roots.contains(*b))
        .all(|b| !pairing(v, &coroot_int(b)).is_zero())
}

pub fn is_integral(v: &Weight, t: LieType) -> bool {
    positive_roots_int(t).iter().all(|b| pairing(v, &coroot_int(b)).is_integer())
}

/// Stabilizer of a point in W.
pub fn stabilizer(t: LieType, v: &[Q]) -> Vec<WeylElement> {
    weyl_elements(t).into_iter().filter(|w| w.act_q(v) == v).collect()
}
