//! Sets of values of the root groups, the quotients `X_{a,l}` and panel
//! residues, and the functions `f_Ω`, `f′_Ω`.
//!
//! Valuations are normalized by `Γ_{L′} = ℤ`, so `Γ_{L_d} = e′ℤ`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::frac::{self, half, q, Q};
use crate::root_system::{LengthClass, Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub d: u32,
    pub d_prime: u32,
    pub ramified: bool,
    pub e_prime: u32,
    pub f_prime: u32,
    pub e: u32,
    pub f: u32,
    pub m: u32,
}

impl SplittingData {
    pub fn split() -> SplittingData {
        SplittingData {
            d: 1,
            d_prime: 1,
            ramified: false,
            e_prime: 1,
            f_prime: 1,
            e: 1,
            f: 1,
            m: 1,
        }
    }

    /// `L′/L_d` of degree `d′ = min(d, 3)`, ramified or not.  `ramified` is
    /// ignored when `d = 1`.
    pub fn new(d: u32, ramified: bool) -> Result<SplittingData> {
        if ![1, 2, 3, 6].contains(&d) {
            return pre(format!("d = {d} is not the order of a ∗-action (1, 2, 3 or 6)"));
        }
        let dp = d.min(3);
        let ramified = ramified && dp > 1;
        Ok(SplittingData {
            d,
            d_prime: dp,
            ramified,
            e_prime: if ramified { dp } else { 1 },
            f_prime: if ramified { 1 } else { dp },
            ..SplittingData::split()
        })
    }

    /// Residue data of `L_d/K` and `|κ_K| = p^m`.
    pub fn with_residue(mut self, m: u32, e: u32, f: u32) -> SplittingData {
        self.m = m;
        self.e = e;
        self.f = f;
        self
    }
}

/// `{offset + k·step : k ∈ ℤ}` with `0 ≤ offset < step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueSet {
    #[serde(with = "crate::frac::serde_q")]
    pub offset: Q,
    #[serde(with = "crate::frac::serde_q")]
    pub step: Q,
}

impl ValueSet {
    pub fn new(offset: Q, step: Q) -> ValueSet {
        assert!(step > Q::zero(), "step must be positive");
        let k = (offset / step).floor();
        ValueSet {
            offset: offset - k * step,
            step,
        }
    }

    pub fn integers() -> ValueSet {
        ValueSet::new(q(0), q(1))
    }

    pub fn halves() -> ValueSet {
        ValueSet::new(q(0), half(1))
    }

    pub fn multiples(n: i64) -> ValueSet {
        ValueSet::new(q(0), q(n))
    }

    pub fn odd() -> ValueSet {
        ValueSet::new(q(1), q(2))
    }

    pub fn contains(&self, l: Q) -> bool {
        ((l - self.offset) / self.step).is_integer()
    }

    /// Least member `≥ l`.
    pub fn at_least(&self, l: Q) -> Q {
        let k = ((l - self.offset) / self.step).ceil();
        self.offset + k * self.step
    }

    /// `l⁺`, least member `> l`.
    pub fn next_value(&self, l: Q) -> Q {
        let k = ((l - self.offset) / self.step).floor() + Q::from_integer(1);
        self.offset + k * self.step
    }

    /// Members in `[lo, hi]`.
    pub fn members(&self, lo: Q, hi: Q) -> Vec<Q> {
        let mut out = Vec::new();
        let mut x = self.at_least(lo);
        while x <= hi {
            out.push(x);
            x += self.step;
        }
        out
    }
}

impl std::fmt::Display for ValueSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |x: Q| {
            if x.is_integer() {
                format!("{}", x.to_integer())
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        };
        match (self.offset.is_zero(), self.step == q(1)) {
            (true, true) => write!(f, "ℤ"),
            (true, false) => write!(f, "{}ℤ", s(self.step)),
            (false, true) => write!(f, "{}+ℤ", s(self.offset)),
            (false, false) => write!(f, "{}+{}ℤ", s(self.offset), s(self.step)),
        }
    }
}

pub fn next_value(l: Q, vs: &ValueSet) -> Q {
    vs.next_value(l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootValueProfile {
    pub root: Root,
    pub gamma: ValueSet,
    pub gamma_prime: ValueSet,
    pub gamma_double: Option<ValueSet>,
    /// `[κ_{L_a} : κ_{L_d}]`
    pub residue_degree: u32,
}

impl RootValueProfile {
    pub fn residue_card(&self, q_d: u64) -> u64 {
        q_d.pow(self.residue_degree)
    }

    /// The progression defining `f′`: `Γ_a` for a multipliable root, the
    /// values of `2a` for a divisible one, `Γ_a` otherwise.
    pub fn rounding_set(&self) -> ValueSet {
        self.gamma
    }
}

fn double_set(split: &SplittingData) -> ValueSet {
    if split.ramified {
        ValueSet::odd()
    } else {
        ValueSet::integers()
    }
}

/// `Γ_a`, `Γ′_a`, and `Γ_{2a}` when `a` is multipliable.
pub fn gamma_sets(sys: &RootSystem, root: usize, split: &SplittingData) -> RootValueProfile {
    let r = sys.root(root).clone();
    let fp = split.f_prime;
    if !sys.is_reduced() {
        return if r.multipliable {
            RootValueProfile {
                root: r,
                gamma: ValueSet::halves(),
                gamma_prime: ValueSet::integers(),
                gamma_double: Some(double_set(split)),
                residue_degree: fp,
            }
        } else if r.divisible {
            let g = double_set(split);
            RootValueProfile {
                root: r,
                gamma: g,
                gamma_prime: g,
                gamma_double: None,
                residue_degree: 1,
            }
        } else {
            RootValueProfile {
                root: r,
                gamma: ValueSet::integers(),
                gamma_prime: ValueSet::integers(),
                gamma_double: None,
                residue_degree: fp,
            }
        };
    }
    let in_lprime = split.d_prime > 1 && r.length_class == LengthClass::Short;
    let g = if in_lprime {
        ValueSet::integers()
    } else {
        ValueSet::multiples(split.e_prime as i64)
    };
    RootValueProfile {
        root: r,
        gamma: g,
        gamma_prime: g,
        gamma_double: None,
        residue_degree: if in_lprime { fp } else { 1 },
    }
}

/// `d(a, l)`: dimension of `X_{a,l}/X_{2a,2l}` over `κ_{L_{2a}}` (over
/// `κ_{L_a}` for non-multipliable `a`).
pub fn quotient_dim(sys: &RootSystem, root: usize, l: Q, split: &SplittingData) -> u32 {
    let prof = gamma_sets(sys, root, split);
    if !prof.gamma_prime.contains(l) {
        return 0;
    }
    if sys.root(root).multipliable && !split.ramified {
        2
    } else {
        1
    }
}

/// `d(a/2, l/2) + d(a, l) + d(2a, 2l)`, over the residue field of the
/// longest root of the chain.
pub fn panel_exponent(sys: &RootSystem, root: usize, l: Q, split: &SplittingData) -> u32 {
    let mut e = quotient_dim(sys, root, l, split);
    if let Some(h) = sys.halve(root) {
        e += quotient_dim(sys, h, l / 2, split);
    }
    if let Some(d) = sys.double(root) {
        e += quotient_dim(sys, d, l * 2, split);
    }
    e
}

/// Same exponent measured over `κ_{L_d}`.
pub fn panel_exponent_over_ld(sys: &RootSystem, root: usize, l: Q, split: &SplittingData) -> u32 {
    let e = panel_exponent(sys, root, l, split);
    let r = sys.root(root);
    if r.multipliable || r.divisible {
        e
    } else {
        e * gamma_sets(sys, root, split).residue_degree
    }
}

/// `1 + q^{d(a/2,l/2) + d(a,l) + d(2a,2l)}` with `q = |κ_{L_{2a}}|`.
pub fn panel_residue_card(sys: &RootSystem, root: usize, l: Q, split: &SplittingData, q: u64) -> Result<u64> {
    let e = panel_exponent(sys, root, l, split);
    if e == 0 {
        return Err(Error::Precondition(format!(
            "no wall at level {l} for root {:?}",
            sys.coeffs(root)
        )));
    }
    Ok(1 + q.pow(e))
}

/// `α(x) = Σ n_i x_i` in coordinates `x_i = α_i(x)`.
pub fn evaluate(sys: &RootSystem, root: usize, x: &[Q]) -> Q {
    sys.coeffs(root)
        .iter()
        .zip(x)
        .map(|(&n, &xi)| xi * n)
        .sum()
}

/// `(f_Ω(a), f′_Ω(a))`.
pub fn f_profile(sys: &RootSystem, split: &SplittingData, points: &[Vec<Q>], root: usize) -> Result<(Q, Q)> {
    let f = points
        .iter()
        .map(|x| -evaluate(sys, root, x))
        .max()
        .ok_or_else(|| Error::Precondition("f_Ω needs a nonempty point set".into()))?;
    let fp = gamma_sets(sys, root, split).rounding_set().at_least(f);
    Ok((f, fp))
}

/// `l ∈ Γ′_a` for some root in the chain `a/2, a, 2a`: an affine root.
pub fn is_wall(sys: &RootSystem, root: usize, l: Q, split: &SplittingData) -> bool {
    panel_exponent(sys, root, l, split) > 0
}

pub fn is_half_integer(l: Q) -> bool {
    frac::is_half_integer(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::qf;
    use crate::root_system::{build, Family, RootSystemKind};

    fn sys(f: Family, r: usize) -> RootSystem {
        build(RootSystemKind::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn successor_examples() {
        assert_eq!(next_value(q(0), &ValueSet::integers()), q(1));
        assert_eq!(next_value(q(0), &ValueSet::halves()), half(1));
        assert_eq!(next_value(q(1), &ValueSet::odd()), q(3));
        assert_eq!(ValueSet::odd().at_least(q(0)), q(1));
        assert_eq!(ValueSet::odd().to_string(), "1+2ℤ");
        assert_eq!(ValueSet::halves().to_string(), "1/2ℤ");
    }

    #[test]
    fn multipliable_table() {
        let bc = sys(Family::BC, 1);
        let a = bc.simple()[0];
        let un = gamma_sets(&bc, a, &SplittingData::new(2, false).unwrap());
        assert_eq!((un.gamma, un.gamma_prime, un.gamma_double), (ValueSet::halves(), ValueSet::integers(), Some(ValueSet::integers())));
        let ra = gamma_sets(&bc, a, &SplittingData::new(2, true).unwrap());
        assert_eq!(ra.gamma_double, Some(ValueSet::odd()));
    }

    #[test]
    fn reduced_ramified_long() {
        let b2 = sys(Family::B, 2);
        let split = SplittingData::new(2, true).unwrap();
        let long = b2.simple()[0];
        assert_eq!(gamma_sets(&b2, long, &split).gamma, ValueSet::multiples(2));
        assert_eq!(gamma_sets(&b2, b2.simple()[1], &split).gamma, ValueSet::integers());
    }

    #[test]
    fn quotient_dims() {
        let bc = sys(Family::BC, 1);
        let a = bc.simple()[0];
        let un = SplittingData::new(2, false).unwrap();
        let ra = SplittingData::new(2, true).unwrap();
        assert_eq!(quotient_dim(&bc, a, q(0), &un), 2);
        assert_eq!(quotient_dim(&bc, a, half(1), &ra), 0);
        assert_eq!(quotient_dim(&bc, bc.double(a).unwrap(), q(1), &ra), 1);
        let a2 = sys(Family::A, 2);
        assert_eq!(quotient_dim(&a2, 0, q(3), &SplittingData::split()), 1);
        assert_eq!(quotient_dim(&a2, 0, half(1), &SplittingData::split()), 0);
    }

    #[test]
    fn panel_cards() {
        let a2 = sys(Family::A, 2);
        assert_eq!(panel_residue_card(&a2, 0, q(0), &SplittingData::split(), 3).unwrap(), 4);
        let bc = sys(Family::BC, 1);
        let a = bc.simple()[0];
        let un = SplittingData::new(2, false).unwrap();
        let ra = SplittingData::new(2, true).unwrap();
        assert_eq!(panel_residue_card(&bc, a, q(0), &un, 3).unwrap(), 28);
        assert_eq!(panel_residue_card(&bc, a, half(1), &ra, 3).unwrap(), 4);
        assert!(panel_residue_card(&a2, 0, half(1), &SplittingData::split(), 3).is_err());
    }

    #[test]
    fn f_profiles() {
        let bc = sys(Family::BC, 1);
        let split = SplittingData::new(2, true).unwrap();
        let a = bc.simple()[0];
        let origin = vec![vec![q(0)]];
        assert_eq!(f_profile(&bc, &split, &origin, a).unwrap(), (q(0), q(0)));
        let pts = vec![vec![qf(-1, 4)]];
        assert_eq!(f_profile(&bc, &split, &pts, a).unwrap(), (qf(1, 4), half(1)));
        assert!(f_profile(&bc, &split, &[], a).is_err());
    }
}
