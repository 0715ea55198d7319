//! Concrete models of a local field `K = 𝔽_q((t))` and of an extension
//! `L/K` of degree 1, 2 or 3 with a generator `τ` of `Gal(L/K)`.
//!
//! Series in `L` are written in a uniformizer `X` of `L`, so valuations are
//! normalized by `ω_L(X) = 1` and `ω_L(t) = e`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gf::{Elt, Gf};
use super::series::{Comparison, Series};
use crate::error::{pre, Error, Result};
use crate::frac::Q;

pub const DEFAULT_PREC: i64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDesc {
    pub degree: u32,
    pub ramified: bool,
}

#[derive(Clone, Debug)]
pub struct LocalModel {
    base: &'static Gf,
    res: &'static Gf,
    desc: ExtensionDesc,
    zeta: Elt,
    prec: i64,
}

impl LocalModel {
    /// `L = K = 𝔽_{p^k}((t))`.
    pub fn base(p: u32, k: u32, prec: i64) -> Result<LocalModel> {
        let f = Gf::get(p, k)?;
        Ok(LocalModel {
            base: f,
            res: f,
            desc: ExtensionDesc {
                degree: 1,
                ramified: false,
            },
            zeta: 1,
            prec,
        })
    }

    /// `L = 𝔽_{p^d}((t))` over `K = 𝔽_p((t))`, `τ` the Frobenius on
    /// coefficients.
    pub fn unramified(p: u32, degree: u32, prec: i64) -> Result<LocalModel> {
        if !(2..=3).contains(&degree) {
            return pre("unramified model needs degree 2 or 3");
        }
        Ok(LocalModel {
            base: Gf::get(p, 1)?,
            res: Gf::get(p, degree)?,
            desc: ExtensionDesc {
                degree,
                ramified: false,
            },
            zeta: 1,
            prec,
        })
    }

    /// `L = 𝔽_q((s))`, `s^d = t`, `τ(s) = ζ s`.
    pub fn ramified(p: u32, k: u32, degree: u32, prec: i64) -> Result<LocalModel> {
        let f = Gf::get(p, k)?;
        let zeta = match degree {
            2 => f.neg(1),
            3 => f.cube_root_of_unity().ok_or_else(|| {
                Error::Unsupported(format!(
                    "ramified cubic model needs q ≡ 1 mod 3 (q = {})",
                    f.q()
                ))
            })?,
            _ => return pre("ramified model needs degree 2 or 3"),
        };
        Ok(LocalModel {
            base: f,
            res: f,
            desc: ExtensionDesc {
                degree,
                ramified: true,
            },
            zeta,
            prec,
        })
    }

    /// Quadratic model in either ramification over `𝔽_p((t))`.
    pub fn quadratic(p: u32, ramified: bool, prec: i64) -> Result<LocalModel> {
        if ramified {
            LocalModel::ramified(p, 1, 2, prec)
        } else {
            LocalModel::unramified(p, 2, prec)
        }
    }

    pub fn with_prec(mut self, prec: i64) -> LocalModel {
        self.prec = prec;
        self
    }

    pub fn desc(&self) -> ExtensionDesc {
        self.desc
    }

    pub fn degree(&self) -> u32 {
        self.desc.degree
    }

    pub fn is_ramified(&self) -> bool {
        self.desc.ramified
    }

    /// Ramification index `e = ω_L(t)`.
    pub fn e(&self) -> i64 {
        if self.desc.ramified {
            self.desc.degree as i64
        } else {
            1
        }
    }

    pub fn p(&self) -> u32 {
        self.res.p()
    }

    pub fn residue_field(&self) -> &'static Gf {
        self.res
    }

    pub fn base_residue_field(&self) -> &'static Gf {
        self.base
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn zero(&self) -> Series {
        Series::exact_zero(self.res)
    }

    pub fn one(&self) -> Series {
        Series::one(self.res)
    }

    pub fn int(&self, n: i64) -> Series {
        Series::from_int(self.res, n)
    }

    /// `½`, exact.
    pub fn half(&self) -> Series {
        Series::constant(self.res, self.res.inv(2))
    }

    /// Uniformizer `X` of `L`.
    pub fn uniformizer(&self) -> Series {
        Series::monomial(self.res, 1, 1)
    }

    /// Uniformizer `t` of `K` seen in `L`.
    pub fn t(&self) -> Series {
        Series::monomial(self.res, 1, self.e())
    }

    /// Truncate to the working precision.
    pub fn cap(&self, x: &Series) -> Series {
        x.truncate(self.prec)
    }

    /// Embed a series in `t` with coefficients in the residue field of `K`.
    pub fn embed(&self, x: &Series) -> Series {
        let y = x.spread(self.e());
        if std::ptr::eq(self.res, self.base) {
            y
        } else {
            // prime-field codes coincide in both tables
            let mut terms = Series::zero(self.res, y.prec());
            for (e, c) in y.terms() {
                terms = &terms + &Series::monomial(self.res, c, e);
            }
            terms
        }
    }

    pub fn tau(&self, x: &Series) -> Series {
        let f = self.res;
        if self.desc.degree == 1 {
            return x.clone();
        }
        if self.desc.ramified {
            let d = self.desc.degree as i64;
            let zeta = self.zeta;
            x.map_terms(|e, c| f.mul(c, f.pow(zeta, e.rem_euclid(d) as u64)))
        } else {
            x.map_terms(|_, c| f.frob(c))
        }
    }

    pub fn tau_pow(&self, x: &Series, i: u32) -> Series {
        let mut y = x.clone();
        for _ in 0..i % self.desc.degree.max(1) {
            y = self.tau(&y);
        }
        y
    }

    pub fn trace(&self, x: &Series) -> Series {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..self.desc.degree {
            y = self.tau(&y);
            acc = &acc + &y;
        }
        acc
    }

    pub fn norm(&self, x: &Series) -> Series {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..self.desc.degree {
            y = self.tau(&y);
            acc = &acc * &y;
        }
        acc
    }

    /// Whether `τx = x` to precision.
    pub fn is_fixed(&self, x: &Series) -> Comparison {
        self.tau(x).compare(x)
    }

    /// Random element of `L` with `ω ≥ lo` (exactly `lo` if `exact_val`).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, lo: i64, exact_val: bool) -> Series {
        Series::random(self.res, rng, lo, self.prec.max(lo + 1), exact_val)
    }

    /// Random element of the fixed field `K`, `ω_L ≥ lo`.
    pub fn random_fixed<R: Rng + ?Sized>(&self, rng: &mut R, lo: i64) -> Series {
        let e = self.e();
        let lo_k = lo.div_euclid(e) + i64::from(lo.rem_euclid(e) != 0);
        let prec_k = (self.prec + e - 1).div_euclid(e).max(lo_k + 1);
        let x = Series::random(self.base, rng, lo_k, prec_k, false);
        self.embed(&x).truncate(self.prec.max(lo + 1))
    }

    /// Random element of `L⁰ = {y : y + τy = 0}` (quadratic case), `ω ≥ lo`.
    pub fn random_trace_zero<R: Rng + ?Sized>(&self, rng: &mut R, lo: i64) -> Series {
        let z = self.random(rng, lo, false);
        &(&z - &self.tau(&z)) * &self.half()
    }

    pub fn trace_subspaces(&self) -> Result<TraceSubspaces> {
        if self.desc.degree != 2 {
            return pre("trace subspaces are defined for quadratic models");
        }
        let l0 = if self.desc.ramified {
            self.uniformizer()
        } else {
            let g = Series::constant(self.res, self.res.gen());
            &g - &self.tau(&g)
        };
        Ok(TraceSubspaces {
            l0_gen: l0,
            l1_point: self.half(),
            delta: 0,
        })
    }
}

/// `L⁰ = ker(τ + id)` generator, a point of `L¹ = {y : y + τy = 1}`, and
/// `ω(L¹_max)` (zero for odd `p`).
#[derive(Clone, Debug)]
pub struct TraceSubspaces {
    pub l0_gen: Series,
    pub l1_point: Series,
    pub delta: i64,
}

/// A point of `H(L, L₂) = {(u, v) : u τu = v + τv}`.
#[derive(Clone, Debug)]
pub struct HPoint {
    pub u: Series,
    pub v: Series,
}

impl HPoint {
    pub fn identity(m: &LocalModel) -> HPoint {
        HPoint {
            u: m.zero(),
            v: m.zero(),
        }
    }

    /// Checked constructor.
    pub fn new(m: &LocalModel, u: Series, v: Series) -> Result<HPoint> {
        let h = HPoint { u, v };
        let c = h.membership(m);
        if !c.equal {
            return pre("(u, v) does not satisfy u τu = v + τv");
        }
        Ok(h)
    }

    /// Compare `u τu` with `v + τv`.
    pub fn membership(&self, m: &LocalModel) -> Comparison {
        let lhs = &self.u * &m.tau(&self.u);
        let rhs = &self.v + &m.tau(&self.v);
        lhs.compare(&rhs)
    }

    /// `½ ω(v)`, `None` for the identity.
    pub fn level(&self) -> Result<Option<Q>> {
        Ok(self.v.valuation()?.map(|v| Q::new(v, 2)))
    }

    /// Whether `½ ω(v) ≥ l` is certain.
    pub fn at_level(&self, l: Q) -> bool {
        Q::from_integer(self.v.val_lower_bound()) >= l * 2
    }

    /// `(−u, τv)`.
    pub fn inverse(&self, m: &LocalModel) -> HPoint {
        HPoint {
            u: -&self.u,
            v: m.tau(&self.v),
        }
    }

    /// Random point with `½ω(v) ≥ level`; `extra` raises the valuations
    /// by a random amount in `0..=extra`.
    pub fn random<R: Rng + ?Sized>(m: &LocalModel, rng: &mut R, level: Q, extra: i64) -> HPoint {
        let lo_u = crate::frac::ceil(level) + rng.gen_range(0..=extra);
        let lo_v = crate::frac::ceil(level * 2) + rng.gen_range(0..=extra);
        let u = m.random(rng, lo_u, true);
        let lam = m.random_trace_zero(rng, lo_v);
        let v = &(&(&u * &m.tau(&u)) * &m.half()) + &lam;
        HPoint { u, v }
    }
}

/// Group law of `H(L, L₂)`: `(u, v)·(u′, v′) = (u + u′, v + v′ + τu·u′)`.
pub fn h_mul(m: &LocalModel, a: &HPoint, b: &HPoint) -> Result<HPoint> {
    if !a.membership(m).equal || !b.membership(m).equal {
        return pre("h_mul input outside H(L, L₂)");
    }
    Ok(HPoint {
        u: &a.u + &b.u,
        v: &(&a.v + &b.v) + &(&m.tau(&a.u) * &b.u),
    })
}
