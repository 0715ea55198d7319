//! Rank-one identities in quasi-split `SU₃` for the hermitian form with
//! antidiagonal matrix.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::matrix::{commutator, Mat};
use super::{Checker, Draw, MIN_MARGIN};
use crate::error::Result;
use crate::frac::{ceil, Q};
use crate::local_field::lemmas::solve_inversion_raw;
use crate::local_field::{good_torus_element, h_mul, HPoint, LocalModel, Series};

pub fn su3_plus(m: &LocalModel, h: &HPoint) -> Mat {
    Mat::from_rows(vec![
        vec![m.one(), -&m.tau(&h.u), -&h.v],
        vec![m.zero(), m.one(), h.u.clone()],
        vec![m.zero(), m.zero(), m.one()],
    ])
}

pub fn su3_minus(m: &LocalModel, h: &HPoint) -> Mat {
    Mat::from_rows(vec![
        vec![m.one(), m.zero(), m.zero()],
        vec![h.u.clone(), m.one(), m.zero()],
        vec![-&h.v, -&m.tau(&h.u), m.one()],
    ])
}

pub fn su3_torus(m: &LocalModel, t: &Series) -> Result<Mat> {
    let tt = m.tau(t);
    Ok(Mat::diag(vec![t.clone(), tt.div(t)?, tt.inv()?]))
}

/// `J` with ones on the antidiagonal.
fn form(m: &LocalModel) -> Mat {
    Mat::from_rows(
        (0..3)
            .map(|i| (0..3).map(|j| if i + j == 2 { m.one() } else { m.zero() }).collect())
            .collect(),
    )
}

/// Whether `ᵗτ(M)·J·M = J` and `det M = 1`.
fn check_unitary(m: &LocalModel, ck: &mut Checker, label: &str, g: &Mat) {
    let j = form(m);
    let lhs = g.map(|x| m.tau(x)).transpose().mul(&j).mul(g);
    ck.mat(&format!("{label} preserves the form"), &lhs, &j);
    ck.series(&format!("{label} has determinant 1"), &g.det(), &m.one());
}

/// Parameters with `[x_{−a}(x,y)⁻¹, x_a(u,v)] = x_{−a}(X,Y)·ã(T)·x_a(U,V)`.
#[derive(Clone, Debug)]
pub struct OppositeParams {
    pub t: Series,
    pub uv: HPoint,
    pub xy: HPoint,
}

impl OppositeParams {
    pub fn new(m: &LocalModel, uv: &HPoint, xy: &HPoint) -> Result<OppositeParams> {
        let (u, v, x, y) = (&uv.u, &uv.v, &xy.u, &xy.v);
        let (tu, tv, tx, ty) = (m.tau(u), m.tau(v), m.tau(x), m.tau(y));
        let t = &(&m.one() - &(&tu * x)) + &(v * y);
        let big_u = (&(&(&(u * u) * &tx) - &(&tv * x)) - &(&(u * &tv) * &ty)).div(&m.tau(&t))?;
        let big_v = (&(&(&(u * v) * &tx) - &(&(&tu * &tv) * x)) + &(&(v * &tv) * y)).div(&t)?;
        let big_x = (&(&(&tu * &(x * x)) - &(u * y)) - &(&(v * x) * y)).div(&t)?;
        let big_y = (&(&(&(&tx * u) * y) - &(&(&tu * x) * &ty)) + &(&(v * y) * &ty)).div(&t)?;
        Ok(OppositeParams {
            t,
            uv: HPoint { u: big_u, v: big_v },
            xy: HPoint { u: big_x, v: big_y },
        })
    }

    /// Read the parameters off the `L·D·U` factors of a matrix.
    pub fn from_matrix(m: &LocalModel, g: &Mat) -> Result<OppositeParams> {
        let t = g.get(0, 0).clone();
        let u = -&m.tau(&g.get(0, 1).div(&t)?);
        let v = -&g.get(0, 2).div(&t)?;
        let x = g.get(1, 0).div(&t)?;
        let y = -&g.get(2, 0).div(&t)?;
        Ok(OppositeParams {
            t,
            uv: HPoint { u, v },
            xy: HPoint { u: x, v: y },
        })
    }

    pub fn matrix(&self, m: &LocalModel) -> Result<Mat> {
        Ok(su3_minus(m, &self.xy)
            .mul(&su3_torus(m, &self.t)?)
            .mul(&su3_plus(m, &self.uv)))
    }
}

fn opposite_lhs(m: &LocalModel, uv: &HPoint, xy: &HPoint) -> Result<Mat> {
    commutator(&su3_minus(m, &xy.inverse(m)), &su3_plus(m, uv))
}

fn random_level(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Q {
    Q::new(rng.gen_range(lo..=hi), 2)
}

pub(super) fn opposite_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let k = rng.gen_range(-2..=4);
    let l = Q::new(k, 2);
    let lp = random_level(rng, 1 - k, 3 - k);
    let uv = HPoint::random(m, rng, l, 1);
    let xy = HPoint::random(m, rng, lp, 1);
    let p = OppositeParams::new(m, &uv, &xy)?;
    if p.t.val()? != 0 {
        return Ok(Draw::Degenerate);
    }
    let lhs = opposite_lhs(m, &uv, &xy)?;
    ck.mat("opposite commutator", &lhs, &p.matrix(m)?);
    check_unitary(m, ck, "x_a(u,v)", &su3_plus(m, &uv));
    check_unitary(m, ck, "x_−a(x,y)", &su3_minus(m, &xy));

    let r = OppositeParams::from_matrix(m, &lhs)?;
    ck.series("recovered T", &r.t, &p.t);
    ck.series("recovered U", &r.uv.u, &p.uv.u);
    ck.series("recovered V", &r.uv.v, &p.uv.v);
    ck.series("recovered X", &r.xy.u, &p.xy.u);
    ck.series("recovered Y", &r.xy.v, &p.xy.v);
    ck.record("(U, V) ∈ H", p.uv.membership(m));
    ck.record("(X, Y) ∈ H", p.xy.membership(m));
    ck.holds("ω(V) ≥ ⌈3l + l′⌉", p.uv.v.val_at_least(ceil(l * 3 + lp)));
    ck.holds("ω(Y) ≥ ⌈l + 3l′⌉", p.xy.v.val_at_least(ceil(l + lp * 3)));
    ck.holds("ω(T − 1) ≥ ⌈l + l′⌉", (&p.t - &m.one()).val_at_least(ceil(l + lp)));
    Ok(Draw::Done)
}

/// `[x_a(u,v), ã(t)]` and its inverse for a fixed good torus element.
pub(super) fn torus_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let lv_t = rng.gen_range(1..=2);
    let t = &m.one() + &m.random(rng, lv_t, true);
    let lv_uv = random_level(rng, -2, 4);
    let uv = HPoint::random(m, rng, lv_uv, 1);
    let (tt, tv) = (m.tau(&t), m.tau(&uv.v));
    let a = (&tt * &tt).div(&t)?;
    let big_u = &uv.u * &(&m.one() - &a);
    let big_v = &(&uv.v + &(&(&t * &tt) * &tv)) - &(&(&uv.u * &m.tau(&uv.u)) * &a);
    let target = HPoint { u: big_u, v: big_v };
    let lhs = commutator(&su3_plus(m, &uv), &su3_torus(m, &t)?)?;
    ck.mat("torus commutator", &lhs, &su3_plus(m, &target));
    ck.record("image in H", target.membership(m));
    check_unitary(m, ck, "ã(t)", &su3_torus(m, &t)?);
    if let (Some(wv), Ok(Some(d))) = (uv.v.valuation()?, (&(&t * &t) - &tt).valuation()) {
        ck.holds("ω(V) ≥ ω(v) + ω(t² − τt)", target.v.val_at_least(wv + d));
    }

    let t0 = good_torus_element(m)?;
    let gap = if m.is_ramified() { Q::new(3, 2) } else { Q::from_integer(1) };
    let lp = random_level(rng, -2, 4);
    let want = HPoint::random(m, rng, lp, 1);
    let tt0 = m.tau(&t0);
    let a = (&tt0 * &tt0).div(&t0)?;
    let one_a = &m.one() - &a;
    let u = want.u.div(&one_a)?;
    let den = &(&m.one() - &(&t0 * &tt0)) * &one_a;
    let v = (&want.v + &(&a * &m.tau(&want.v))).div(&den)?;
    let pre = HPoint { u, v };
    ck.record("preimage in H", pre.membership(m));
    ck.holds("preimage loses at most the expected level", pre.at_level(lp - gap));
    let lhs = commutator(&su3_plus(m, &pre), &su3_torus(m, &t0)?)?;
    ck.mat("torus commutator hits the target", &lhs, &su3_plus(m, &want));
    Ok(Draw::Done)
}

/// `[x_a(x,y), x_a(u,v)] = x_a(0, uτx − xτu)`, the group law, and
/// surjectivity onto `U_{2a}` at the expected level.
pub(super) fn same_root_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let lv_xy = random_level(rng, -2, 4);
    let xy = HPoint::random(m, rng, lv_xy, 1);
    let lv_uv = random_level(rng, -2, 4);
    let uv = HPoint::random(m, rng, lv_uv, 1);
    let lhs = commutator(&su3_plus(m, &xy), &su3_plus(m, &uv))?;
    let w = &(&uv.u * &m.tau(&xy.u)) - &(&xy.u * &m.tau(&uv.u));
    let c = HPoint { u: m.zero(), v: w };
    ck.mat("same-root commutator", &lhs, &su3_plus(m, &c));
    ck.record("commutator in H", c.membership(m));
    let prod = su3_plus(m, &xy).mul(&su3_plus(m, &uv));
    ck.mat("group law", &prod, &su3_plus(m, &h_mul(m, &xy, &uv)?));
    ck.mat(
        "inverse",
        &su3_plus(m, &xy).inverse()?,
        &su3_plus(m, &xy.inverse(m)),
    );

    let l = random_level(rng, -2, 4);
    let cl = ceil(l);
    let (x, lo) = if m.is_ramified() {
        let o = if cl.rem_euclid(2) == 1 { cl } else { cl + 1 };
        (Series::monomial(m.residue_field(), 1, o), 2 * cl + 1)
    } else {
        let g = m.trace_subspaces()?.l0_gen;
        (&g * &Series::monomial(m.residue_field(), 1, cl), 2 * cl)
    };
    let w = m.random_trace_zero(rng, lo);
    if w.is_zero_to_prec() {
        return Ok(Draw::Degenerate);
    }
    let xy = HPoint {
        v: &(&x * &m.tau(&x)) * &m.half(),
        u: x,
    };
    let u = w.div(&(&xy.u - &m.tau(&xy.u)))?;
    let uv = HPoint {
        v: &(&u * &u) * &m.half(),
        u,
    };
    ck.record("u lies in K", m.is_fixed(&uv.u));
    ck.record("(u, v) ∈ H", uv.membership(m));
    ck.record("(x, y) ∈ H", xy.membership(m));
    ck.holds("(u, v) at level l", uv.at_level(l));
    ck.holds("(x, y) at level l", xy.at_level(l));
    let lhs = commutator(&su3_plus(m, &uv), &su3_plus(m, &xy))?;
    let target = HPoint { u: m.zero(), v: w };
    ck.mat("x_2a(w) is a commutator", &lhs, &su3_plus(m, &target));
    Ok(Draw::Done)
}

/// Depth of `w` from which the chain below produces `ã(1 + w)`.
pub const CHAIN_DEPTH: i64 = 3;

/// `ã(1 + w)` as `x_{−a}(X,Y)⁻¹·[x_{−a}(x,y)⁻¹, x_a(u,v)]·x_a(U,V)⁻¹` with
/// `(u,v)` at level 1, `(x,y)` at level ½, `ω(V) ≥ 4` and `ω(Y) ≥ 3`.
pub(super) fn inversion_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let vw = rng.gen_range(CHAIN_DEPTH..=CHAIN_DEPTH + 2);
    let w = m.random(rng, vw, true);
    let (uv, xy) = solve_inversion_raw(m, &-&w, 1)?;
    // y + τy = xτx lives at 2ω(x); past the precision of y it cannot be
    // told apart from zero
    let room = xy.v.prec() - MIN_MARGIN;
    if !xy.u.is_zero_to_prec() && 2 * xy.u.val()? > room {
        return Ok(Draw::Degenerate);
    }
    ck.holds("(u, v) at level 1", uv.at_level(Q::from_integer(1)));
    ck.holds("(x, y) at level ½", xy.at_level(Q::new(1, 2)));
    ck.record("(u, v) ∈ H", uv.membership(m));
    ck.record("(x, y) ∈ H", xy.membership(m));
    let p = OppositeParams::new(m, &uv, &xy)?;
    let one_w = &m.one() + &w;
    ck.series("T = 1 + w", &p.t, &one_w);
    let g = su3_minus(m, &p.xy)
        .inverse()?
        .mul(&opposite_lhs(m, &uv, &xy)?)
        .mul(&su3_plus(m, &p.uv).inverse()?);
    ck.mat("chain yields ã(1 + w)", &g, &su3_torus(m, &one_w)?);
    ck.holds("½ω(V) ≥ 2", p.uv.v.val_at_least(4));
    ck.holds("½ω(Y) ≥ 3/2", p.xy.v.val_at_least(3));
    Ok(Draw::Done)
}
