//! Level arithmetic behind the Frattini subgroup of a pro-p Sylow: the
//! bounds `l′_b` and `l″_c`, the groups `V_{a,c}` on the fundamental alcove
//! and the minimal number of topological generators `d(P) = m f ξ`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::apartment::{fundamental_alcove, AlcoveProfile};
use crate::error::{pre, Error, Result};
use crate::frac::{half, q, Q};
use crate::root_system::{
    build, delta_system, is_concave, lowest_root_coeffs, DeltaWeights, Family, RootSystem, RootSystemKind,
};
use crate::valued_datum::{gamma_sets, quotient_dim, SplittingData};

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Residue characteristic allowed for a relative root system of type `kind`.
pub fn check_residue_characteristic(kind: RootSystemKind, p: u32) -> Result<()> {
    if !is_prime(p) {
        return pre(format!("{p} is not a prime"));
    }
    if p == 2 {
        return Err(Error::Hypothesis("p ≠ 2".into()));
    }
    if matches!(kind.family, Family::G2 | Family::BC) && p < 5 {
        return Err(Error::Hypothesis(format!(
            "p ≥ 5 if Φ is of type G₂ or BC (got p = {p} for {kind})"
        )));
    }
    Ok(())
}

/// `Σ n_α(b) l_α`.
pub fn linear_bound(sys: &RootSystem, l: &[Q], b: usize) -> Q {
    sys.coeffs(b).iter().zip(l).map(|(&n, &x)| x * n).sum()
}

fn check_simple_levels(sys: &RootSystem, split: &SplittingData, l: &[Q]) -> Result<()> {
    if l.len() != sys.rank() {
        return pre(format!("expected {} simple levels, got {}", sys.rank(), l.len()));
    }
    for (i, &a) in sys.simple().iter().enumerate() {
        let g = gamma_sets(sys, a, split).gamma;
        if !g.contains(l[i]) {
            return pre(format!("l = {} ∉ Γ = {g} for simple root {}", l[i], i + 1));
        }
    }
    Ok(())
}

/// `l′_b = Σ n_α(b) l_α` on `Φ⁺` (indexed like `sys.positive()`).
pub fn positive_bounds(sys: &RootSystem, split: &SplittingData, l: &[Q]) -> Result<Vec<Q>> {
    check_simple_levels(sys, split, l)?;
    let out: Vec<Q> = sys.positive().map(|b| linear_bound(sys, l, b)).collect();
    for b in sys.positive() {
        if sys.root(b).divisible {
            continue;
        }
        let g = gamma_sets(sys, b, split).gamma;
        if !g.contains(out[b]) {
            return Err(Error::Invariant(format!(
                "l′ = {} ∉ Γ = {g} for {:?}",
                out[b],
                sys.coeffs(b)
            )));
        }
    }
    Ok(out)
}

/// Coefficients of `δ_c c` over `Δ^δ`.
fn scaled_coeffs(sys: &RootSystem, delta: &[i64], c: usize) -> Vec<i64> {
    sys.coeffs(c)
        .iter()
        .zip(sys.simple())
        .map(|(&n, &a)| delta[c] * n / delta[a])
        .collect()
}

/// `n′_α(c)` for every root, through `Φ_nd^δ`; `None` on divisible roots.
pub fn lowest_coefficients(sys: &RootSystem, weights: &DeltaWeights) -> Result<Vec<Option<Vec<i64>>>> {
    let scaled = delta_system(sys, &weights.delta)?;
    (0..sys.len())
        .map(|c| {
            if sys.root(c).divisible {
                return Ok(None);
            }
            let i = scaled
                .find(&scaled_coeffs(sys, &weights.delta, c))
                .ok_or_else(|| Error::Invariant(format!("{:?} missing from Φ^δ", sys.coeffs(c))))?;
            Ok(Some(lowest_root_coeffs(&scaled, i)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeBounds {
    /// `l″_c` for every root.
    #[serde(with = "crate::frac::serde_q_vec")]
    pub l_second: Vec<Q>,
    /// `l′_θ + l_{−θ}` exceeds `ω(ϖ_{L′})` in a trialitarian `G₂`.
    pub trialitarian_warning: bool,
}

/// `δ_c l″_c = δ_θ l_{−θ} + Σ δ_α n′_α(c) l_α` and `l″_{2c} = 2 l″_c`.
pub fn negative_bounds(
    sys: &RootSystem,
    weights: &DeltaWeights,
    split: &SplittingData,
    l: &[Q],
    l_minus_theta: Q,
) -> Result<NegativeBounds> {
    check_simple_levels(sys, split, l)?;
    let mt = sys.neg(weights.theta);
    let g = gamma_sets(sys, mt, split).gamma;
    if !g.contains(l_minus_theta) {
        return pre(format!("l_(−θ) = {l_minus_theta} ∉ Γ = {g}"));
    }
    let nprime = lowest_coefficients(sys, weights)?;
    let dt = weights.delta_theta();
    let mut l2 = vec![Q::zero(); sys.len()];
    for c in 0..sys.len() {
        let Some(n) = &nprime[c] else { continue };
        let mut s = l_minus_theta * dt;
        for (i, &a) in sys.simple().iter().enumerate() {
            s += l[i] * (weights.delta[a] * n[i]);
        }
        l2[c] = s / weights.delta[c];
    }
    for c in 0..sys.len() {
        if let Some(h) = sys.halve(c) {
            l2[c] = l2[h] * 2;
        }
    }
    for c in sys.nd() {
        let g = gamma_sets(sys, c, split).gamma;
        if !g.contains(l2[c]) {
            return Err(Error::Invariant(format!(
                "l″ = {} ∉ Γ = {g} for {:?}",
                l2[c],
                sys.coeffs(c)
            )));
        }
    }
    let trialitarian = sys.kind().family == Family::G2 && dt == 3;
    let warn = trialitarian && linear_bound(sys, l, weights.theta) + l_minus_theta > q(1);
    Ok(NegativeBounds {
        l_second: l2,
        trialitarian_warning: warn,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCheck {
    #[serde(with = "crate::frac::serde_q_vec")]
    pub l_prime: Vec<Q>,
    pub bounds: NegativeBounds,
    pub violations: Vec<String>,
}

/// Feed the values of a concave `f` on `Δ ∪ {−θ}` through both recursions
/// and compare the results with `f` on every root.
pub fn check_profile(
    sys: &RootSystem,
    weights: &DeltaWeights,
    split: &SplittingData,
    f: &[Q],
) -> Result<ProfileCheck> {
    if f.len() != sys.len() {
        return pre("profile must give a value on every root");
    }
    if !is_concave(sys, f) {
        return pre("profile is not concave");
    }
    let l: Vec<Q> = sys.simple().iter().map(|&a| f[a]).collect();
    let lp = positive_bounds(sys, split, &l)?;
    let nb = negative_bounds(sys, weights, split, &l, f[sys.neg(weights.theta)])?;
    let mut violations = Vec::new();
    for c in 0..sys.len() {
        if nb.l_second[c] < f[c] {
            violations.push(format!("l″ < l at {:?}", sys.coeffs(c)));
        }
    }
    for b in sys.positive() {
        if lp[b] < f[b] {
            violations.push(format!("l′ < l at {:?}", sys.coeffs(b)));
        }
        if nb.l_second[b] < lp[b] {
            violations.push(format!("l″ < l′ at {:?}", sys.coeffs(b)));
        }
    }
    Ok(ProfileCheck {
        l_prime: lp,
        bounds: nb,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootLevel {
    pub root: usize,
    pub coeffs: Vec<i64>,
    #[serde(with = "crate::frac::serde_q")]
    pub base_level: Q,
    #[serde(with = "crate::frac::serde_q")]
    pub frattini_level: Q,
    #[serde(with = "crate::frac::serde_q_opt")]
    pub adjunct_2a: Option<Q>,
    pub bounding: bool,
    /// `dim U_{a,c}/V_{a,c}` over `κ_{L_d}`.
    pub quotient_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub kind: RootSystemKind,
    pub split: SplittingData,
    pub p: u32,
    pub entries: Vec<RootLevel>,
    /// `T(K)_b⁺ = T(K)_b^1` lies in the Frattini subgroup.
    pub torus_depth: u32,
    pub xi: u32,
}

/// The groups `V_{a,c}` of the fundamental alcove, one entry per
/// non-divisible root.
pub fn frattini_levels(sys: &RootSystem, profile: &AlcoveProfile, p: u32) -> Result<LevelAssignment> {
    let mut bounding: Vec<usize> = sys.simple().to_vec();
    bounding.push(sys.neg(profile.theta()));
    frattini_levels_with(sys, profile, &bounding, p)
}

/// As [`frattini_levels`] with an explicit set `Δ ∪ {−θ}`, e.g. one obtained
/// after exchanging the roles of the multipliable simple root and `−θ`.
pub fn frattini_levels_with(
    sys: &RootSystem,
    profile: &AlcoveProfile,
    bounding: &[usize],
    p: u32,
) -> Result<LevelAssignment> {
    check_residue_characteristic(sys.kind(), p)?;
    if !sys.is_reduced() && sys.rank() < 2 {
        return pre("the non-reduced description needs rank ≥ 2 (BC₁ only has bounds)");
    }
    let split = &profile.split;
    let mut entries = Vec::new();
    for a in sys.nd() {
        let prof = gamma_sets(sys, a, split);
        let base = profile.f_c[a];
        let is_b = bounding.contains(&a);
        let mult = sys.root(a).multipliable;
        let (level, adjunct, exp) = if !is_b {
            (base, None, 0)
        } else if !mult {
            let e = quotient_dim(sys, a, base, split) * prof.residue_degree;
            (prof.gamma.next_value(base), None, e)
        } else {
            let fp = profile.f_prime[a];
            let adj = (!split.ramified && prof.gamma_prime.contains(fp)).then(|| fp * 2);
            let d2 = sys.double(a).expect("multipliable");
            let mut e = quotient_dim(sys, a, fp, split);
            if adj.is_none() {
                e += quotient_dim(sys, d2, fp * 2, split);
            }
            (prof.gamma.next_value(fp), adj, e)
        };
        entries.push(RootLevel {
            root: a,
            coeffs: sys.coeffs(a).to_vec(),
            base_level: base,
            frattini_level: level,
            adjunct_2a: adjunct,
            bounding: is_b,
            quotient_exponent: exp,
        });
    }
    let xi = entries.iter().map(|e| e.quotient_exponent).sum();
    Ok(LevelAssignment {
        kind: sys.kind(),
        split: *split,
        p,
        entries,
        torus_depth: 1,
        xi,
    })
}

/// A quasi-split type `^dX_n` (absolute rank `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTag {
    pub d: u32,
    pub family: Family,
    pub n: usize,
}

/// Rows of the generator-count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRow {
    Split,
    SplitG2,
    OuterAOdd,
    OuterD,
    OuterE6,
    Triality,
    OuterAEven,
    OuterA2,
}

impl TableRow {
    pub fn label(self) -> &'static str {
        match self {
            TableRow::Split => "^1X_l",
            TableRow::SplitG2 => "^1G_2",
            TableRow::OuterAOdd => "^2A_{2l-1}",
            TableRow::OuterD => "^2D_{l+1}",
            TableRow::OuterE6 => "^2E_6",
            TableRow::Triality => "^3D_4, ^6D_4",
            TableRow::OuterAEven => "^2A_{2l}",
            TableRow::OuterA2 => "^2A_2",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            TableRow::Split => "ξ = l+1",
            TableRow::SplitG2 => "ξ = 3",
            TableRow::OuterAOdd => "ξ = f′(l−1)+2",
            TableRow::OuterD => "ξ = l+f′",
            TableRow::OuterE6 => "ξ = 3+2f′",
            TableRow::Triality => "ξ = 2+f′",
            TableRow::OuterAEven => "ξ = f′l+1",
            TableRow::OuterA2 => "f′+1 ≤ ξ ≤ 3f′+3",
        }
    }

    pub fn min_p(self) -> u32 {
        match self {
            TableRow::SplitG2 | TableRow::Triality | TableRow::OuterAEven | TableRow::OuterA2 => 5,
            _ => 3,
        }
    }
}

impl GroupTag {
    pub fn new(d: u32, family: Family, n: usize) -> Result<GroupTag> {
        let t = GroupTag { d, family, n };
        t.row()?;
        Ok(t)
    }

    /// From the relative rank `l` where that determines `n`.
    pub fn from_relative(d: u32, family: Family, l: usize) -> Result<GroupTag> {
        let n = match (d, family) {
            (1, _) => l,
            (2, Family::D) => l + 1,
            (2, Family::E6) | (3 | 6, Family::D) => family_default_rank(d, family)?,
            (2, Family::A) => return pre("^2A needs the absolute rank n (l does not fix the parity of n)"),
            _ => return pre(format!("no quasi-split type ^{d}{family}")),
        };
        GroupTag::new(d, family, n)
    }

    pub fn row(&self) -> Result<TableRow> {
        let bad = || pre(format!("no quasi-split type ^{}{}_{}", self.d, self.family, self.n));
        let n = self.n;
        match (self.d, self.family) {
            (1, Family::G2) => Ok(TableRow::SplitG2),
            (1, Family::BC) => bad(),
            (1, f) => {
                RootSystemKind::new(f, n)?;
                Ok(TableRow::Split)
            }
            (2, Family::A) if n >= 3 && n % 2 == 1 => Ok(TableRow::OuterAOdd),
            (2, Family::A) if n >= 4 => Ok(TableRow::OuterAEven),
            (2, Family::A) if n == 2 => Ok(TableRow::OuterA2),
            (2, Family::D) if n >= 4 => Ok(TableRow::OuterD),
            (2, Family::E6) if n == 6 => Ok(TableRow::OuterE6),
            (3 | 6, Family::D) if n == 4 => Ok(TableRow::Triality),
            _ => bad(),
        }
    }

    /// Relative root system `Φ(G, K)`.
    pub fn relative_kind(&self) -> Result<RootSystemKind> {
        let n = self.n;
        let (f, l) = match self.row()? {
            TableRow::Split | TableRow::SplitG2 => (self.family, n),
            TableRow::OuterAOdd => (Family::C, n.div_ceil(2)),
            TableRow::OuterD => (Family::B, n - 1),
            TableRow::OuterE6 => (Family::F4, 4),
            TableRow::Triality => (Family::G2, 2),
            TableRow::OuterAEven | TableRow::OuterA2 => (Family::BC, n / 2),
        };
        RootSystemKind::new(f, l)
    }

    pub fn relative_rank(&self) -> Result<usize> {
        Ok(self.relative_kind()?.rank)
    }
}

fn family_default_rank(d: u32, family: Family) -> Result<usize> {
    match (d, family) {
        (2, Family::E6) => Ok(6),
        (3 | 6, Family::D) => Ok(4),
        _ => pre(format!("no default rank for ^{d}{family}")),
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = self.family.to_string();
        let letter: String = fam.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        write!(f, "^{}{}_{}", self.d, letter, self.n)
    }
}

/// Parses `1A`, `2A`, `3D`, `2E6`, `1G2`, `^2A_5`, … ; a trailing number is
/// the absolute rank.
impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupTag> {
        let (d, n, fam) = parse_tag(s)?;
        let n = match n {
            Some(n) => n,
            None => family_default_rank(d, fam).or_else(|_| fam.fixed_rank().ok_or(()))
                .map_err(|_| Error::Parse(format!("tag {s} needs an absolute rank")))?,
        };
        GroupTag::new(d, fam, n)
    }
}

/// `(d, n, family)` from a tag; `n` is `None` when absent.
pub fn parse_tag(s: &str) -> Result<(u32, Option<usize>, Family)> {
    let t = s.trim().trim_start_matches('^').replace('_', "");
    let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
    let rest = &t[digits.len()..];
    let letters: String = rest.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let tail = &rest[letters.len()..];
    let d: u32 = digits.parse().map_err(|_| Error::Parse(format!("tag {s}: missing d")))?;
    let n: Option<usize> = if tail.is_empty() {
        None
    } else {
        Some(tail.parse().map_err(|_| Error::Parse(format!("tag {s}: bad rank {tail}")))?)
    };
    let fam = match (letters.to_ascii_uppercase().as_str(), n) {
        ("E", Some(6)) => Family::E6,
        ("E", Some(7)) => Family::E7,
        ("E", Some(8)) => Family::E8,
        ("E", None) if d == 2 => Family::E6,
        ("F", _) => Family::F4,
        ("G", _) => Family::G2,
        (l, _) => l.parse().map_err(|_| Error::Parse(format!("tag {s}: unknown family {l}")))?,
    };
    Ok((d, n, fam))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Count {
    Exact { value: u64 },
    Interval { lo: u64, hi: u64 },
}

impl Count {
    fn scale(self, k: u64) -> Count {
        match self {
            Count::Exact { value } => Count::Exact { value: value * k },
            Count::Interval { lo, hi } => Count::Interval { lo: lo * k, hi: hi * k },
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact { value } => write!(f, "{value}"),
            Count::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpInput {
    pub tag: GroupTag,
    pub ramified: bool,
    pub f_prime: Option<u32>,
    pub m: u32,
    pub f: u32,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub family_tag: String,
    pub row: String,
    pub relative_type: String,
    pub d: u32,
    pub n: usize,
    pub l: usize,
    pub ramified: bool,
    pub f_prime: u32,
    pub m: u32,
    pub f: u32,
    pub p: u32,
    pub xi: Count,
    pub d_p: Count,
    pub derivation: String,
}

/// `f′ = [κ_{L′} : κ_{L_d}]` for a tag, checked against a supplied value.
pub fn residue_degree_prime(tag: &GroupTag, ramified: bool, given: Option<u32>) -> Result<u32> {
    let dp = tag.d.min(3);
    let fp = if dp == 1 || ramified { 1 } else { dp };
    match given {
        Some(g) if g != fp => pre(format!(
            "f′ = {g} is inconsistent with {tag} and L′/L_d {} (f′ = {fp})",
            if ramified { "ramified" } else { "unramified" }
        )),
        _ => Ok(fp),
    }
}

pub fn generator_count(input: &DpInput) -> Result<GeneratorReport> {
    let tag = input.tag;
    let row = tag.row()?;
    if input.p == 2 {
        return Err(Error::Hypothesis("p ≠ 2".into()));
    }
    if !is_prime(input.p) {
        return pre(format!("{} is not a prime", input.p));
    }
    if input.p < row.min_p() {
        return Err(Error::Hypothesis(format!(
            "p ≥ {} is required for {} (got p = {})",
            row.min_p(),
            row.label(),
            input.p
        )));
    }
    if input.m == 0 || input.f == 0 {
        return pre("m and f must be positive");
    }
    let ramified = input.ramified && tag.d > 1;
    let fp = residue_degree_prime(&tag, ramified, input.f_prime)?;
    let kind = tag.relative_kind()?;
    let l = kind.rank as u64;
    let f64p = fp as u64;
    let xi = match row {
        TableRow::Split => Count::Exact { value: l + 1 },
        TableRow::SplitG2 => Count::Exact { value: 3 },
        TableRow::OuterAOdd => Count::Exact { value: f64p * (l - 1) + 2 },
        TableRow::OuterD => Count::Exact { value: l + f64p },
        TableRow::OuterE6 => Count::Exact { value: 3 + 2 * f64p },
        TableRow::Triality => Count::Exact { value: 2 + f64p },
        TableRow::OuterAEven => Count::Exact { value: f64p * l + 1 },
        TableRow::OuterA2 => Count::Interval {
            lo: f64p + 1,
            hi: 3 * f64p + 3,
        },
    };
    let mf = input.m as u64 * input.f as u64;
    let d_p = xi.scale(mf);
    let derivation = format!(
        "{} → {} with l = {l}, f′ = {fp}: {} = {xi}; d(P) = m·f·ξ = {}·{}·{xi} = {d_p}",
        tag,
        row.label(),
        row.formula(),
        input.m,
        input.f
    );
    Ok(GeneratorReport {
        family_tag: tag.to_string(),
        row: row.label().to_string(),
        relative_type: kind.to_string(),
        d: tag.d,
        n: tag.n,
        l: kind.rank,
        ramified,
        f_prime: fp,
        m: input.m,
        f: input.f,
        p: input.p,
        xi,
        d_p,
        derivation,
    })
}

/// `ξ` recomputed from the level assignment of the fundamental alcove.
pub fn xi_from_levels(tag: &GroupTag, ramified: bool, p: u32) -> Result<u32> {
    let kind = tag.relative_kind()?;
    let sys = build(kind)?;
    let split = SplittingData::new(tag.d, ramified && tag.d > 1)?;
    let profile = fundamental_alcove(&sys, &split)?;
    Ok(frattini_levels(&sys, &profile, p)?.xi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank1Kind {
    Reduced,
    Bc1,
}

/// Levels reached by `H^p [H, H]` in rank one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1Levels {
    pub kind: Rank1Kind,
    pub ramified: bool,
    #[serde(with = "crate::frac::serde_q")]
    pub l: Q,
    /// `a` and `−a` exchanged so that the level is in `Γ′_a = ℤ`.
    pub swapped: bool,
    pub epsilon: u32,
    pub torus_depth: u32,
    pub improved_torus_depth: Option<u32>,
    /// level of the `U_a` subgroup reached
    #[serde(with = "crate::frac::serde_q")]
    pub plus: Q,
    /// level of the `U_{−a}` subgroup reached
    #[serde(with = "crate::frac::serde_q")]
    pub minus: Q,
}

/// `H ⊇ U_{a,l}, T_b⁺, U_{−a,−l+1}` (reduced) or
/// `H ⊇ U_{−a,−l}, T_b⁺, U_{a,l+½}` (`BC₁`).
pub fn rank1_levels(split: &SplittingData, kind: Rank1Kind, l: Q, p: u32) -> Result<Rank1Levels> {
    if !is_prime(p) {
        return pre(format!("{p} is not a prime"));
    }
    match kind {
        Rank1Kind::Reduced => {
            if p == 2 {
                return Err(Error::Hypothesis("p ≠ 2".into()));
            }
            if !l.is_integer() {
                return pre("l must lie in Γ_a = ℤ");
            }
            Ok(Rank1Levels {
                kind,
                ramified: false,
                l,
                swapped: false,
                epsilon: 0,
                torus_depth: 1,
                improved_torus_depth: None,
                plus: l + 1,
                minus: -l + 2,
            })
        }
        Rank1Kind::Bc1 => {
            if p < 5 {
                return Err(Error::Hypothesis(format!("p ≥ 5 for BC₁ (got p = {p})")));
            }
            if !(l * 2).is_integer() {
                return pre("l must lie in Γ_a = ½ℤ");
            }
            let swapped = !l.is_integer();
            let lb = if swapped { -l - half(1) } else { l };
            let ramified = split.ramified;
            let eps = u32::from(ramified && lb.to_integer().rem_euclid(2) == 1);
            let (minus, plus) = if ramified {
                (-l + Q::new(3, 2), l + 2)
            } else {
                (-l + 1, l + Q::new(3, 2))
            };
            Ok(Rank1Levels {
                kind,
                ramified,
                l,
                swapped,
                epsilon: eps,
                torus_depth: 3 + eps,
                improved_torus_depth: Some(1 + 2 * eps),
                plus,
                minus,
            })
        }
    }
}
