//! Irreducible root systems of types A–G and BC.
//!
//! Every system is built from an integral Euclidean realization, then each
//! root is re-expressed over the basis `Δ`.  From there on roots are
//! handled as coefficient vectors `n_α(c)`; inner products go through the
//! Gram matrix of `Δ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::frac::Q;
use crate::valued_datum::SplittingData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    BC,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::BC,
    ];

    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" | "F" => Family::F4,
            "G2" | "G" => Family::G2,
            "BC" => Family::BC,
            _ => return Err(Error::Parse(format!("unknown family `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemKind {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemKind {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |reason| {
            Err(Error::InvalidKind {
                family: family.to_string(),
                rank,
                reason,
            })
        };
        if let Some(r) = family.fixed_rank() {
            if r != rank {
                return bad("exceptional family with the wrong rank");
            }
        }
        match family {
            Family::A | Family::BC if rank < 1 => bad("rank must be at least 1"),
            Family::B | Family::C if rank < 2 => bad("rank must be at least 2"),
            Family::D if rank < 3 => bad("rank must be at least 3"),
            _ => Ok(RootSystemKind { family, rank }),
        }
    }

    /// All valid kinds of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<RootSystemKind> {
        let mut out = Vec::new();
        for fam in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(k) = RootSystemKind::new(fam, rank) {
                    out.push(k);
                }
            }
        }
        out
    }
}

impl fmt::Display for RootSystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family),
            None => write!(f, "{}{}", self.family, self.rank),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Middle,
    Long,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub multipliable: bool,
    pub divisible: bool,
    pub length_class: LengthClass,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootSystemKind,
    roots: Vec<Root>,
    euclid: Vec<Vec<i64>>,
    norm: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    simple: Vec<usize>,
    highest: usize,
    neg: Vec<usize>,
    npos: usize,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn combo(dim: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pm_pairs(dim: usize, scale: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(combo(dim, &[(i, si * scale), (j, sj * scale)]));
            }
        }
    }
    out
}

fn sign_vectors(dim: usize) -> Vec<Vec<i64>> {
    (0..1u32 << dim)
        .map(|mask| {
            (0..dim)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// `(simple roots, all roots)` as integer vectors.
fn realization(kind: RootSystemKind) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let l = kind.rank;
    match kind.family {
        Family::A => {
            let n = l + 1;
            let simple = (0..l).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        roots.push(combo(n, &[(i, 1), (j, -1)]));
                    }
                }
            }
            (simple, roots)
        }
        Family::B | Family::C | Family::BC | Family::D => {
            let mut simple: Vec<Vec<i64>> = (0..l - 1)
                .map(|i| combo(l, &[(i, 1), (i + 1, -1)]))
                .collect();
            let mut roots = pm_pairs(l, 1);
            let last = match kind.family {
                Family::B | Family::BC => unit(l, l - 1, 1),
                Family::C => unit(l, l - 1, 2),
                _ => combo(l, &[(l - 2, 1), (l - 1, 1)]),
            };
            simple.push(last);
            for i in 0..l {
                if matches!(kind.family, Family::B | Family::BC) {
                    roots.push(unit(l, i, 1));
                    roots.push(unit(l, i, -1));
                }
                if matches!(kind.family, Family::C | Family::BC) {
                    roots.push(unit(l, i, 2));
                    roots.push(unit(l, i, -2));
                }
            }
            (simple, roots)
        }
        Family::G2 => {
            let mut roots = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(combo(3, &[(i, 1), (j, -1)]));
                        let k = 3 - i - j;
                        roots.push(combo(3, &[(i, 2), (j, -1), (k, -1)]));
                        roots.push(combo(3, &[(i, -2), (j, 1), (k, 1)]));
                    }
                }
            }
            roots.sort();
            roots.dedup();
            let simple = vec![vec![1, -1, 0], vec![-2, 1, 1]];
            (simple, roots)
        }
        Family::F4 => {
            let mut roots = pm_pairs(4, 2);
            for i in 0..4 {
                roots.push(unit(4, i, 2));
                roots.push(unit(4, i, -2));
            }
            roots.extend(sign_vectors(4));
            let simple = vec![
                vec![0, 2, -2, 0],
                vec![0, 0, 2, -2],
                vec![0, 0, 0, 2],
                vec![1, -1, -1, -1],
            ];
            (simple, roots)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut roots = pm_pairs(8, 2);
            roots.extend(
                sign_vectors(8)
                    .into_iter()
                    .filter(|v| v.iter().filter(|&&x| x < 0).count() % 2 == 0),
            );
            let mut simple = vec![
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                combo(8, &[(0, 2), (1, 2)]),
            ];
            for i in 0..6 {
                simple.push(combo(8, &[(i + 1, 2), (i, -2)]));
            }
            (simple, roots)
        }
    }
}

/// Inverse of a small integer matrix over ℚ.
fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Solve `M x = b` for `x` when the answer must be integral.
pub(crate) fn solve_integral(minv: &[Vec<Q>], b: &[i64]) -> Option<Vec<i64>> {
    minv.iter()
        .map(|row| {
            let s: Q = row
                .iter()
                .zip(b)
                .map(|(r, &x)| *r * Q::from_integer(x))
                .sum();
            s.is_integer().then(|| s.to_integer())
        })
        .collect()
}

impl RootSystem {
    fn from_realization(
        kind: RootSystemKind,
        simple_vecs: &[Vec<i64>],
        root_vecs: &[Vec<i64>],
    ) -> Result<RootSystem> {
        let r = simple_vecs.len();
        let gram: Vec<Vec<i64>> = simple_vecs
            .iter()
            .map(|a| simple_vecs.iter().map(|b| dot(a, b)).collect())
            .collect();
        let ginv = invert(&gram).ok_or_else(|| Error::Invariant("singular Gram matrix".into()))?;
        let mut entries = Vec::with_capacity(root_vecs.len());
        for v in root_vecs {
            let b: Vec<i64> = simple_vecs.iter().map(|a| dot(a, v)).collect();
            let n = solve_integral(&ginv, &b)
                .ok_or_else(|| Error::Invariant(format!("root {v:?} not integral over the basis")))?;
            let pos = n.iter().all(|&c| c >= 0);
            let negs = n.iter().all(|&c| c <= 0);
            if !(pos || negs) {
                return Err(Error::Invariant(format!("root {v:?} has mixed signs")));
            }
            entries.push((n, v.clone()));
        }
        // positives by height then basis order, negatives mirrored
        let key = |n: &Vec<i64>| {
            let h: i64 = n.iter().sum();
            (h.abs(), n.iter().map(|c| -c.abs()).collect::<Vec<_>>())
        };
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> =
            entries.iter().filter(|(n, _)| n.iter().sum::<i64>() > 0).cloned().collect();
        pos.sort_by_key(|(n, _)| key(n));
        let npos = pos.len();
        if npos * 2 != entries.len() {
            return Err(Error::Invariant("root set is not symmetric".into()));
        }
        let mut ordered = pos.clone();
        for (n, v) in &pos {
            ordered.push((
                n.iter().map(|c| -c).collect(),
                v.iter().map(|c| -c).collect(),
            ));
        }
        let index: HashMap<Vec<i64>, usize> = ordered
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.clone(), i))
            .collect();
        let norm: Vec<i64> = ordered.iter().map(|(_, v)| dot(v, v)).collect();
        let is_bc = ordered.iter().any(|(n, _)| {
            index.contains_key(&n.iter().map(|c| 2 * c).collect::<Vec<_>>())
        });
        let max_norm = *norm.iter().max().unwrap();
        let roots: Vec<Root> = ordered
            .iter()
            .enumerate()
            .map(|(i, (n, _))| {
                let multipliable = index.contains_key(&n.iter().map(|c| 2 * c).collect::<Vec<_>>());
                let divisible = n.iter().all(|c| c % 2 == 0)
                    && index.contains_key(&n.iter().map(|c| c / 2).collect::<Vec<_>>());
                let length_class = if multipliable {
                    LengthClass::Short
                } else if divisible {
                    LengthClass::Long
                } else if is_bc {
                    LengthClass::Middle
                } else if norm[i] == max_norm {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                };
                Root {
                    coeffs: n.clone(),
                    multipliable,
                    divisible,
                    length_class,
                }
            })
            .collect();
        let simple: Vec<usize> = (0..r)
            .map(|i| index[&unit(r, i, 1)])
            .collect();
        let cartan = (0..r)
            .map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let neg = (0..2 * npos)
            .map(|i| if i < npos { i + npos } else { i - npos })
            .collect();
        let mut highest = None;
        for i in 0..npos {
            let dominates = (0..npos)
                .all(|j| roots[i].coeffs.iter().zip(&roots[j].coeffs).all(|(a, b)| a >= b));
            if dominates {
                highest = Some(i);
            }
        }
        let highest = highest.ok_or_else(|| Error::Invariant("no highest root".into()))?;
        Ok(RootSystem {
            kind,
            roots,
            euclid: ordered.into_iter().map(|(_, v)| v).collect(),
            norm,
            index,
            gram,
            cartan,
            simple,
            highest,
            neg,
            npos,
        })
    }

    pub fn kind(&self) -> RootSystemKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn coeffs(&self, i: usize) -> &[i64] {
        &self.roots[i].coeffs
    }

    /// Integral realization vector of a root (scaled so all roots are integral).
    pub fn euclid(&self, i: usize) -> &[i64] {
        &self.euclid[i]
    }

    pub fn find(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn highest(&self) -> usize {
        self.highest
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn positive(&self) -> std::ops::Range<usize> {
        0..self.npos
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn is_reduced(&self) -> bool {
        self.kind.family != Family::BC
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(
            self.kind.family,
            Family::A | Family::D | Family::E6 | Family::E7 | Family::E8
        )
    }

    /// Φ_nd.
    pub fn nd(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.roots[i].divisible).collect()
    }

    /// Φ_nm.
    pub fn nm(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.roots[i].multipliable).collect()
    }

    pub fn squared_norm(&self, i: usize) -> i64 {
        self.norm[i]
    }

    pub fn inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.euclid[i], &self.euclid[j])
    }

    /// Inner product of two coefficient vectors over `Δ`.
    pub fn inner_coeffs(&self, n: &[i64], m: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += n[i] * self.gram[i][j] * m[j];
            }
        }
        s
    }

    /// `⟨b, a^∨⟩ = 2(b|a)/(a|a)`.
    pub fn pairing(&self, b: usize, a: usize) -> i64 {
        2 * self.inner(b, a) / self.norm[a]
    }

    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        let s: Vec<i64> = self.coeffs(i).iter().zip(self.coeffs(j)).map(|(a, b)| a + b).collect();
        self.find(&s)
    }

    pub fn double(&self, i: usize) -> Option<usize> {
        let s: Vec<i64> = self.coeffs(i).iter().map(|a| 2 * a).collect();
        self.find(&s)
    }

    pub fn halve(&self, i: usize) -> Option<usize> {
        if !self.roots[i].divisible {
            return None;
        }
        let s: Vec<i64> = self.coeffs(i).iter().map(|a| a / 2).collect();
        self.find(&s)
    }

    pub fn collinear(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.coeffs(i), self.coeffs(j));
        let r = self.rank();
        (0..r).all(|x| (0..r).all(|y| a[x] * b[y] == a[y] * b[x]))
    }

    /// `s_a(b) = b − ⟨b, a^∨⟩ a`.
    pub fn reflect(&self, a: usize, b: usize) -> Option<usize> {
        let k = self.pairing(b, a);
        let v: Vec<i64> = self.coeffs(b).iter().zip(self.coeffs(a)).map(|(x, y)| x - k * y).collect();
        self.find(&v)
    }

    /// The highest short root, when short roots exist in a reduced system.
    pub fn highest_short(&self) -> Option<usize> {
        let shorts: Vec<usize> = self
            .positive()
            .filter(|&i| self.roots[i].length_class == LengthClass::Short)
            .collect();
        shorts.iter().copied().find(|&i| {
            shorts
                .iter()
                .all(|&j| self.coeffs(i).iter().zip(self.coeffs(j)).all(|(a, b)| a >= b))
        })
    }

    /// Root system `{w_c · c}` for integer weights `w` on a subset of roots,
    /// keeping `Δ` order; used for `Φ_nd^δ`.
    pub fn scaled(&self, members: &[usize], weight: &[i64], kind: RootSystemKind) -> Result<RootSystem> {
        let vecs: Vec<Vec<i64>> = members
            .iter()
            .map(|&c| self.euclid[c].iter().map(|x| x * weight[c]).collect())
            .collect();
        let simple: Vec<Vec<i64>> = self
            .simple
            .iter()
            .map(|&a| self.euclid[a].iter().map(|x| x * weight[a]).collect())
            .collect();
        RootSystem::from_realization(kind, &simple, &vecs)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} roots)", self.kind, self.len())
    }
}

pub fn build(kind: RootSystemKind) -> Result<RootSystem> {
    let kind = RootSystemKind::new(kind.family, kind.rank)?;
    match kind.family {
        Family::E6 | Family::E7 => {
            let e8 = build(RootSystemKind::new(Family::E8, 8)?)?;
            let k = kind.rank;
            let (simple8, _) = realization(RootSystemKind { family: Family::E8, rank: 8 });
            let keep: Vec<Vec<i64>> = (0..e8.len())
                .filter(|&i| e8.coeffs(i)[k..].iter().all(|&c| c == 0))
                .map(|i| e8.euclid(i).to_vec())
                .collect();
            RootSystem::from_realization(kind, &simple8[..k], &keep)
        }
        _ => {
            let (simple, roots) = realization(kind);
            RootSystem::from_realization(kind, &simple, &roots)
        }
    }
}

pub fn highest_root(sys: &RootSystem) -> &Root {
    sys.highest_root()
}

/// Scaling weights `δ`, Lie-theoretic `λ`, and the root `θ` whose scaled
/// copy `δ_θ θ` is highest in `Φ_nd^δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaWeights {
    pub delta: Vec<i64>,
    pub lambda: Vec<i64>,
    pub theta: usize,
}

impl DeltaWeights {
    pub fn delta_theta(&self) -> i64 {
        self.delta[self.theta]
    }
}

fn delta_and_lambda(sys: &RootSystem, split: &SplittingData) -> Result<(Vec<i64>, Vec<i64>)> {
    let dp = split.d_prime as i64;
    if !sys.is_reduced() {
        if dp != 2 {
            return pre(format!(
                "non-reduced relative type {} needs a quadratic L′ (got d′ = {dp})",
                sys.kind()
            ));
        }
        let delta = sys.roots().iter().map(|r| if r.multipliable { 2 } else { 1 }).collect();
        let lambda = sys.roots().iter().map(|r| if r.divisible { 1 } else { 2 }).collect();
        return Ok((delta, lambda));
    }
    if dp > 1 && sys.is_simply_laced() {
        return pre(format!(
            "d′ = {dp} > 1 is impossible for the simply-laced relative type {}",
            sys.kind()
        ));
    }
    let short = |r: &Root| dp > 1 && r.length_class == LengthClass::Short;
    let lambda = sys.roots().iter().map(|r| if short(r) { dp } else { 1 }).collect();
    let delta = sys
        .roots()
        .iter()
        .map(|r| if split.ramified && short(r) { dp } else { 1 })
        .collect();
    Ok((delta, lambda))
}

/// Kind of `Φ_nd^δ`.
fn scaled_kind(sys: &RootSystem, delta: &[i64]) -> RootSystemKind {
    let k = sys.kind();
    if delta.iter().all(|&d| d == 1) {
        return k;
    }
    let family = match k.family {
        Family::B => Family::C,
        Family::C if k.rank == 2 => Family::C,
        Family::C => Family::B,
        Family::BC if k.rank == 1 => Family::A,
        Family::BC => Family::C,
        f => f,
    };
    RootSystemKind { family, rank: k.rank }
}

pub fn delta_weights(sys: &RootSystem, split: &SplittingData) -> Result<DeltaWeights> {
    let (delta, lambda) = delta_and_lambda(sys, split)?;
    let scaled = delta_system(sys, &delta)?;
    let top = scaled.highest_root().coeffs.clone();
    // scaled coefficients: n^δ_α(c) = δ_c n_α(c) / δ_α
    let theta = sys
        .nd()
        .into_iter()
        .find(|&c| {
            sys.coeffs(c)
                .iter()
                .enumerate()
                .all(|(i, &n)| delta[c] * n == top[i] * delta[sys.simple()[i]])
        })
        .ok_or_else(|| Error::Invariant("highest root of Φ_nd^δ has no preimage".into()))?;
    Ok(DeltaWeights { delta, lambda, theta })
}

/// `Φ_nd^δ` with basis `Δ^δ = {δ_α α}` in the same order as `Δ`.
pub fn delta_system(sys: &RootSystem, delta: &[i64]) -> Result<RootSystem> {
    sys.scaled(&sys.nd(), delta, scaled_kind(sys, delta))
}

/// `b = a + b′` with `a ∈ Δ`, `b′ ∈ Φ⁺`, not collinear and not both
/// multipliable.
pub fn decompose_positive(sys: &RootSystem, b: usize) -> Result<(usize, usize)> {
    if !sys.is_positive(b) {
        return pre("decompose_positive needs a positive root");
    }
    let is_simple_multiple = sys.simple().iter().any(|&a| a == b || sys.double(a) == Some(b));
    if is_simple_multiple {
        return pre("root is a simple root or twice one");
    }
    for &a in sys.simple() {
        let rest: Vec<i64> = sys.coeffs(b).iter().zip(sys.coeffs(a)).map(|(x, y)| x - y).collect();
        if let Some(bp) = sys.find(&rest) {
            let both_multipliable = sys.root(a).multipliable && sys.root(bp).multipliable;
            if sys.is_positive(bp) && !sys.collinear(a, bp) && !both_multipliable {
                return Ok((a, bp));
            }
        }
    }
    Err(Error::Invariant(format!("no decomposition of {:?}", sys.coeffs(b))))
}

/// `n_α(γ) ≥ 0` with `γ = −h + Σ n_α α`.
pub fn lowest_root_coeffs(sys: &RootSystem, gamma: usize) -> Vec<i64> {
    let h = sys.highest_root();
    sys.coeffs(gamma).iter().zip(&h.coeffs).map(|(g, h)| g + h).collect()
}

fn coeffs_of(sys: &RootSystem, v: &[i64]) -> Option<usize> {
    (0..sys.len()).find(|&i| sys.euclid(i) == v)
}

/// Hand-written pairs for `B_l`, `C_l (l ≥ 3)`, `F_4`, `G_2`, as Euclidean
/// vectors in the realization used by [`build`].
fn short_table(sys: &RootSystem, c: usize) -> Option<(usize, usize)> {
    let l = sys.rank();
    let v = sys.euclid(c).to_vec();
    let e = |i: usize, s: i64| unit(l, i, s);
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    let (a, b): (Vec<i64>, Vec<i64>) = match sys.kind().family {
        Family::B => {
            let i = nz[0];
            if v[i] > 0 {
                let j = if i == 0 { 1 } else { 0 };
                (e(j, -1), add(&e(i, 1), &e(j, 1)))
            } else {
                (e(0, -1), add(&e(0, 1), &e(i, -1)))
            }
        }
        Family::C if l >= 3 => {
            let (i, j) = (nz[0], nz[1]);
            let (si, sj) = (v[i], v[j]);
            if si > 0 {
                (add(&e(i, -1), &e(j, sj)), e(i, 2))
            } else if i > 0 {
                (add(&e(0, -1), &e(i, -1)), add(&e(0, 1), &e(j, sj)))
            } else if j > 1 {
                (add(&e(0, -1), &e(1, -1)), add(&e(1, 1), &e(j, sj)))
            } else {
                (add(&e(0, -1), &e(2, -1)), add(&e(1, 1), &e(2, 1)))
            }
        }
        Family::F4 => {
            // vectors carry a factor 2
            if nz.len() == 4 {
                let (s2, s3, s4) = (v[1], v[2], v[3]);
                if v[0] > 0 {
                    (vec![-1, -s2, s3, s4], vec![2, 2 * s2, 0, 0])
                } else {
                    (vec![-2, 0, 0, 0], vec![1, s2, s3, s4])
                }
            } else if nz[0] == 0 {
                (vec![1, -1, -1, -1], vec![1, 1, 1, 1])
            } else {
                let i = nz[0];
                let s = v[i] / 2;
                let mut a = vec![-1, -1, -1, -1];
                let mut b = vec![1, 1, 1, 1];
                a[i] = s;
                b[i] = s;
                (a, b)
            }
        }
        Family::G2 => {
            let n = sys.coeffs(c);
            let (a, b): ([i64; 2], [i64; 2]) = match (n[0], n[1]) {
                (2, 1) => ([1, 0], [1, 1]),
                (1, 1) => ([-1, 0], [2, 1]),
                (1, 0) => ([-1, -1], [2, 1]),
                (-1, 0) => ([-2, -1], [1, 1]),
                (-1, -1) => ([-2, -1], [1, 0]),
                _ => return None,
            };
            return Some((sys.find(&a)?, sys.find(&b)?));
        }
        _ => return None,
    };
    Some((coeffs_of(sys, &a)?, coeffs_of(sys, &b)?))
}

fn short_pair_ok(sys: &RootSystem, c: usize, a: usize, b: usize) -> bool {
    sys.sum(a, b) == Some(c)
        && sys.root(a).length_class == LengthClass::Short
        && sys.is_positive(b)
        && !sys.collinear(a, b)
}

/// `c = a + b` with `a` short, `b` positive, non-collinear, for short
/// `c ≠ −θ` in a reduced non-simply-laced system.
pub fn short_root_decomposition(sys: &RootSystem, c: usize) -> Result<(usize, usize)> {
    if !sys.is_reduced() || sys.is_simply_laced() {
        return pre("short_root_decomposition needs a reduced non-simply-laced system");
    }
    if sys.root(c).length_class != LengthClass::Short {
        return pre("root is not short");
    }
    let theta = sys.highest_short().expect("short roots exist");
    if c == sys.neg(theta) {
        return pre("c = −θ has no such decomposition");
    }
    if let Some((a, b)) = short_table(sys, c) {
        if short_pair_ok(sys, c, a, b) {
            return Ok((a, b));
        }
        return Err(Error::Invariant(format!(
            "case table pair for {:?} fails its checks",
            sys.coeffs(c)
        )));
    }
    // C2 is not covered by the tables; search in basis order
    for b in sys.positive() {
        let rest: Vec<i64> = sys.coeffs(c).iter().zip(sys.coeffs(b)).map(|(x, y)| x - y).collect();
        if let Some(a) = sys.find(&rest) {
            if short_pair_ok(sys, c, a, b) {
                return Ok((a, b));
            }
        }
    }
    Err(Error::Invariant("no short decomposition".into()))
}

/// Axioms (C0), (C1), (C2) for a map on all roots (indexed like `sys.roots()`).
pub fn is_concave(sys: &RootSystem, f: &[Q]) -> bool {
    let n = sys.len();
    for a in 0..n {
        if f[a] + f[sys.neg(a)] < Q::zero() {
            return false;
        }
        if let Some(d) = sys.double(a) {
            if f[d] > f[a] * 2 {
                return false;
            }
        }
        for b in 0..n {
            if let Some(s) = sys.sum(a, b) {
                if f[s] > f[a] + f[b] {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of exchanging the multipliable simple root with `−θ` in `BC_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSwap {
    pub basis: Vec<usize>,
    pub half_highest: usize,
    /// coefficients of every root over the new basis
    pub coeffs: Vec<Vec<i64>>,
}

pub fn basis_swap_bc(sys: &RootSystem) -> Result<BasisSwap> {
    if sys.is_reduced() {
        return pre("basis swap is defined for BC systems only");
    }
    let r = sys.rank();
    let a = *sys
        .simple()
        .iter()
        .find(|&&s| sys.root(s).multipliable)
        .expect("BC has a multipliable simple root");
    let theta = sys.halve(sys.highest()).expect("h = 2θ");
    let basis: Vec<usize> = sys
        .simple()
        .iter()
        .map(|&s| if s == a { sys.neg(theta) } else { s })
        .collect();
    let m: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| sys.coeffs(basis[j])[i]).collect())
        .collect();
    let minv = invert(&m).ok_or_else(|| Error::Invariant("Δ′ is not a basis".into()))?;
    let coeffs: Vec<Vec<i64>> = (0..sys.len())
        .map(|c| solve_integral(&minv, sys.coeffs(c)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invariant("non-integral expansion over Δ′".into()))?;
    for c in &coeffs {
        if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
            return Err(Error::Invariant("mixed signs over Δ′".into()));
        }
    }
    let pos: Vec<usize> = (0..sys.len()).filter(|&c| coeffs[c].iter().all(|&x| x >= 0)).collect();
    let top = pos
        .iter()
        .copied()
        .find(|&i| pos.iter().all(|&j| coeffs[i].iter().zip(&coeffs[j]).all(|(x, y)| x >= y)))
        .ok_or_else(|| Error::Invariant("no highest root over Δ′".into()))?;
    let half_highest = sys.halve(top).ok_or_else(|| Error::Invariant("highest root over Δ′ not divisible".into()))?;
    Ok(BasisSwap { basis, half_highest, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, r: usize) -> RootSystem {
        build(RootSystemKind::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        let a2 = sys(Family::A, 2);
        assert_eq!((a2.len(), a2.positive().len()), (6, 3));
        let bc2 = sys(Family::BC, 2);
        assert_eq!(bc2.len(), 12);
        let cls = |c| bc2.roots().iter().filter(|r| r.length_class == c).count();
        assert_eq!((cls(LengthClass::Short), cls(LengthClass::Middle), cls(LengthClass::Long)), (4, 4, 4));
        assert_eq!(bc2.roots().iter().filter(|r| r.multipliable).count(), 4);
        let g2 = sys(Family::G2, 2);
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.roots().iter().filter(|r| r.length_class == LengthClass::Short).count(), 6);
        for (f, r, n) in [(Family::E6, 6, 72), (Family::E7, 7, 126), (Family::E8, 8, 240), (Family::F4, 4, 48), (Family::D, 4, 24), (Family::B, 3, 18)] {
            assert_eq!(sys(f, r).len(), n, "{f}{r}");
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(sys(Family::F4, 4).highest_root().coeffs, vec![2, 3, 4, 2]);
        assert_eq!(sys(Family::G2, 2).highest_root().coeffs, vec![3, 2]);
        assert_eq!(sys(Family::A, 2).highest_root().coeffs, vec![1, 1]);
        assert_eq!(sys(Family::E8, 8).highest_root().coeffs, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(sys(Family::E7, 7).highest_root().coeffs, vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(sys(Family::E6, 6).highest_root().coeffs, vec![1, 2, 2, 3, 2, 1]);
    }

    #[test]
    fn bad_kinds() {
        assert!(RootSystemKind::new(Family::G2, 3).is_err());
        assert!(RootSystemKind::new(Family::B, 1).is_err());
        assert!(RootSystemKind::new(Family::D, 2).is_err());
        assert!(RootSystemKind::new(Family::BC, 1).is_ok());
    }

    #[test]
    fn decompositions() {
        let a2 = sys(Family::A, 2);
        let h = a2.highest();
        let (a, b) = decompose_positive(&a2, h).unwrap();
        assert_eq!((a2.coeffs(a), a2.coeffs(b)), (&[1, 0][..], &[0, 1][..]));
        let b2 = sys(Family::B, 2);
        let e1 = b2.find(&[1, 1]).unwrap();
        let (a, b) = decompose_positive(&b2, e1).unwrap();
        assert_eq!((b2.coeffs(a), b2.coeffs(b)), (&[1, 0][..], &[0, 1][..]));
        let g2 = sys(Family::G2, 2);
        let (a, b) = decompose_positive(&g2, g2.highest()).unwrap();
        assert_eq!((g2.coeffs(a), g2.coeffs(b)), (&[0, 1][..], &[3, 1][..]));
        assert!(decompose_positive(&g2, g2.simple()[0]).is_err());
    }

    #[test]
    fn lowest_coeffs_examples() {
        let a2 = sys(Family::A, 2);
        assert_eq!(lowest_root_coeffs(&a2, a2.neg(a2.highest())), vec![0, 0]);
        assert_eq!(lowest_root_coeffs(&a2, a2.highest()), vec![2, 2]);
        assert_eq!(lowest_root_coeffs(&a2, a2.simple()[0]), vec![2, 1]);
    }

    #[test]
    fn short_decomposition_examples() {
        let b2 = sys(Family::B, 2);
        let c = b2.find(&[0, -1]).unwrap();
        let (a, b) = short_root_decomposition(&b2, c).unwrap();
        assert_eq!((b2.euclid(a), b2.euclid(b)), (&[-1, 0][..], &[1, -1][..]));
        let g2 = sys(Family::G2, 2);
        let (a, b) = short_root_decomposition(&g2, g2.find(&[1, 0]).unwrap()).unwrap();
        assert_eq!((g2.coeffs(a), g2.coeffs(b)), (&[-1, -1][..], &[2, 1][..]));
        let f4 = sys(Family::F4, 4);
        let e1 = coeffs_of(&f4, &[2, 0, 0, 0]).unwrap();
        let (a, b) = short_root_decomposition(&f4, e1).unwrap();
        assert_eq!((f4.euclid(a), f4.euclid(b)), (&[1, -1, -1, -1][..], &[1, 1, 1, 1][..]));
        let theta = f4.highest_short().unwrap();
        assert!(short_root_decomposition(&f4, f4.neg(theta)).is_err());
        assert!(short_root_decomposition(&f4, f4.highest()).is_err());
    }

    #[test]
    fn concavity_examples() {
        let a2 = sys(Family::A, 2);
        assert!(is_concave(&a2, &vec![Q::zero(); a2.len()]));
        let mut f = vec![Q::zero(); a2.len()];
        f[a2.simple()[0]] = Q::from_integer(-1);
        assert!(!is_concave(&a2, &f));
    }

    #[test]
    fn bc_swap() {
        let bc2 = sys(Family::BC, 2);
        let s = basis_swap_bc(&bc2).unwrap();
        let theta = bc2.halve(bc2.highest()).unwrap();
        assert_eq!(s.basis, vec![bc2.simple()[0], bc2.neg(theta)]);
        assert_eq!(s.half_highest, bc2.neg(bc2.simple()[1]));
        let bc1 = sys(Family::BC, 1);
        let s = basis_swap_bc(&bc1).unwrap();
        assert_eq!(s.half_highest, bc1.neg(bc1.simple()[0]));
        assert!(basis_swap_bc(&sys(Family::C, 2)).is_err());
    }
}
