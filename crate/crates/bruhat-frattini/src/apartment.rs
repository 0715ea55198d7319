//! The standard apartment in coordinates `x_i = α_i(x)` over the basis `Δ`:
//! affine roots, walls meeting a region, the fundamental alcove and the
//! count of alcoves in its combinatorial unit ball.
//!
//! The origin lies on every wall `H_{α,0}`, `α ∈ Δ`.  An affine root
//! `(a, l)` is the function `x ↦ a(x) + l`; its half-apartment is where it
//! is positive and its wall is where it vanishes.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Result};
use crate::frac::{q, Q};
use crate::root_system::{build, delta_weights, DeltaWeights, RootSystem, RootSystemKind};
use crate::valued_datum::{evaluate, f_profile, gamma_sets, is_wall, panel_exponent_over_ld, SplittingData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRoot {
    pub root: usize,
    pub coeffs: Vec<i64>,
    #[serde(with = "crate::frac::serde_q")]
    pub level: Q,
}

impl AffineRoot {
    /// Fails unless `l ∈ Γ′` for some root of the chain `a/2, a, 2a`.
    pub fn new(sys: &RootSystem, split: &SplittingData, root: usize, level: Q) -> Result<AffineRoot> {
        if !is_wall(sys, root, level, split) {
            return pre(format!("{level} is not a wall level for root {:?}", sys.coeffs(root)));
        }
        Ok(AffineRoot {
            root,
            coeffs: sys.coeffs(root).to_vec(),
            level,
        })
    }

    pub fn eval(&self, sys: &RootSystem, x: &[Q]) -> Q {
        evaluate(sys, self.root, x) + self.level
    }

    /// The same wall written with a positive non-divisible root.
    pub fn normalized(&self, sys: &RootSystem) -> AffineRoot {
        let mut r = self.root;
        let mut l = self.level;
        if !sys.is_positive(r) {
            r = sys.neg(r);
            l = -l;
        }
        if let Some(h) = sys.halve(r) {
            r = h;
            l /= 2;
        }
        AffineRoot {
            root: r,
            coeffs: sys.coeffs(r).to_vec(),
            level: l,
        }
    }

    /// Reflection through the wall.
    pub fn reflect(&self, sys: &RootSystem, x: &[Q]) -> Vec<Q> {
        let v = self.eval(sys, x);
        let a = self.root;
        sys.simple()
            .iter()
            .zip(x)
            .map(|(&s, &xi)| xi - v * Q::new(2 * sys.inner(s, a), sys.squared_norm(a)))
            .collect()
    }
}

/// Convex hull of finitely many points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    #[serde(with = "crate::frac::serde_q_rows")]
    pub vertices: Vec<Vec<Q>>,
}

impl Region {
    /// The box `lo ≤ x ≤ hi`, empty when some `lo_i > hi_i`.
    pub fn from_box(lo: &[Q], hi: &[Q]) -> Region {
        assert_eq!(lo.len(), hi.len(), "box bounds of different lengths");
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Region { vertices: Vec::new() };
        }
        let n = lo.len();
        let mut vertices = Vec::with_capacity(1 << n);
        for mask in 0..(1usize << n) {
            let v: Vec<Q> = (0..n).map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }).collect();
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
        Region { vertices }
    }

    pub fn simplex(vertices: Vec<Vec<Q>>) -> Region {
        Region { vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices.first().map_or(0, |v| v.len())
    }

    pub fn barycenter(&self) -> Vec<Q> {
        let n = Q::from_integer(self.vertices.len() as i64);
        let mut c = vec![Q::zero(); self.dim()];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += *vi;
            }
        }
        c.into_iter().map(|x| x / n).collect()
    }
}

/// Dimension of the affine span of `pts`.
fn affine_rank(pts: &[&Vec<Q>]) -> usize {
    let Some((first, rest)) = pts.split_first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Q>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let p = rows[rank][c];
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = rows[r][c] / p;
                for j in c..cols {
                    let t = rows[rank][j];
                    rows[r][j] -= k * t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Levels `l` of the affine roots `(a, l)` and `(2a, 2l)` in `[lo, hi]`.
fn wall_levels(sys: &RootSystem, split: &SplittingData, a: usize, lo: Q, hi: Q) -> Vec<Q> {
    let prof = gamma_sets(sys, a, split);
    let mut ls = prof.gamma_prime.members(lo, hi);
    if let Some(d) = sys.double(a) {
        let g2 = gamma_sets(sys, d, split).gamma_prime;
        ls.extend(g2.members(lo * 2, hi * 2).into_iter().map(|l| l / 2));
    }
    ls.sort();
    ls.dedup();
    ls
}

/// Walls that cut through the region or carry one of its facets, each
/// written with a positive non-divisible root.
pub fn walls_in_box(sys: &RootSystem, split: &SplittingData, region: &Region) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    if region.is_empty() {
        return out;
    }
    let r = sys.rank();
    for a in sys.positive() {
        if sys.root(a).divisible {
            continue;
        }
        let vals: Vec<Q> = region.vertices.iter().map(|x| evaluate(sys, a, x)).collect();
        let (mn, mx) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
        for l in wall_levels(sys, split, a, -mx, -mn) {
            let on: Vec<&Vec<Q>> = region
                .vertices
                .iter()
                .zip(&vals)
                .filter(|(_, v)| **v + l == Q::zero())
                .map(|(x, _)| x)
                .collect();
            let crosses = mn + l < Q::zero() && mx + l > Q::zero();
            if crosses || (r > 0 && !on.is_empty() && affine_rank(&on) + 1 == r) {
                out.push(AffineRoot {
                    root: a,
                    coeffs: sys.coeffs(a).to_vec(),
                    level: l,
                });
            }
        }
    }
    out
}

/// The fundamental alcove `c_af` and the functions `f_c`, `f′_c` on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveProfile {
    pub kind: RootSystemKind,
    pub split: SplittingData,
    pub weights: DeltaWeights,
    /// `(α, 0)` for `α ∈ Δ`, then `(−θ, l_θ)`.
    pub bounding: Vec<AffineRoot>,
    #[serde(with = "crate::frac::serde_q_rows")]
    pub vertices: Vec<Vec<Q>>,
    #[serde(with = "crate::frac::serde_q_vec")]
    pub interior: Vec<Q>,
    #[serde(with = "crate::frac::serde_q_vec")]
    pub f_c: Vec<Q>,
    #[serde(with = "crate::frac::serde_q_vec")]
    pub f_prime: Vec<Q>,
}

impl AlcoveProfile {
    pub fn theta(&self) -> usize {
        self.weights.theta
    }

    pub fn system(&self) -> Result<RootSystem> {
        build(self.kind)
    }

    pub fn region(&self) -> Region {
        Region::simplex(self.vertices.clone())
    }
}

/// Level of the negative bounding wall: `1`, or `½` when `Φ` is not reduced.
pub fn theta_wall_level(sys: &RootSystem) -> Q {
    if sys.is_reduced() {
        q(1)
    } else {
        Q::new(1, 2)
    }
}

pub fn fundamental_alcove(sys: &RootSystem, split: &SplittingData) -> Result<AlcoveProfile> {
    let weights = delta_weights(sys, split)?;
    let theta = weights.theta;
    let lt = theta_wall_level(sys);
    let r = sys.rank();
    let mut vertices = vec![vec![Q::zero(); r]];
    for (i, &n) in sys.coeffs(theta).iter().enumerate() {
        let mut v = vec![Q::zero(); r];
        v[i] = lt / n;
        vertices.push(v);
    }
    let mut bounding: Vec<AffineRoot> = sys
        .simple()
        .iter()
        .map(|&a| AffineRoot::new(sys, split, a, Q::zero()))
        .collect::<Result<_>>()?;
    bounding.push(AffineRoot::new(sys, split, sys.neg(theta), lt)?);
    let mut f_c = Vec::with_capacity(sys.len());
    let mut f_prime = Vec::with_capacity(sys.len());
    for c in 0..sys.len() {
        let (f, fp) = f_profile(sys, split, &vertices, c)?;
        f_c.push(f);
        f_prime.push(fp);
    }
    let region = Region::simplex(vertices);
    Ok(AlcoveProfile {
        kind: sys.kind(),
        split: *split,
        weights,
        bounding,
        interior: region.barycenter(),
        vertices: region.vertices,
        f_c,
        f_prime,
    })
}

/// `f′_c(a)`.
pub fn f_c_values(profile: &AlcoveProfile, root: usize) -> Q {
    profile.f_prime[root]
}

/// Vertices of the alcove adjacent to `c_af` across its `i`-th bounding wall.
pub fn neighbor_vertices(sys: &RootSystem, profile: &AlcoveProfile, i: usize) -> Vec<Vec<Q>> {
    let w = &profile.bounding[i];
    profile.vertices.iter().map(|x| w.reflect(sys, x)).collect()
}

/// Number of alcoves whose closure meets `c_af` along a panel, plus `c_af`
/// itself; `q = |κ_{L_d}|`.
pub fn unit_ball_alcove_count(sys: &RootSystem, profile: &AlcoveProfile, q: u64) -> u64 {
    1 + profile
        .bounding
        .iter()
        .map(|w| q.pow(panel_exponent_over_ld(sys, w.root, w.level, &profile.split)))
        .sum::<u64>()
}
