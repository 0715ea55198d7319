//! `SL₂` identities over `L`, and the commutator constant of `SL₃`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::matrix::{commutator, Mat};
use super::{Checker, Draw};
use crate::error::Result;
use crate::local_field::{hensel_sqrt, LocalModel, Series};

pub fn sl2_plus(u: &Series) -> Mat {
    let f = u.field();
    Mat::from_rows(vec![
        vec![Series::one(f), u.clone()],
        vec![Series::exact_zero(f), Series::one(f)],
    ])
}

pub fn sl2_minus(v: &Series) -> Mat {
    let f = v.field();
    Mat::from_rows(vec![
        vec![Series::one(f), Series::exact_zero(f)],
        vec![-v, Series::one(f)],
    ])
}

pub fn sl2_torus(t: &Series) -> Result<Mat> {
    Ok(Mat::diag(vec![t.clone(), t.inv()?]))
}

fn upper(a: &Series, b: &Series, d: &Series) -> Mat {
    Mat::from_rows(vec![
        vec![a.clone(), b.clone()],
        vec![Series::exact_zero(a.field()), d.clone()],
    ])
}

fn elem(m: &LocalModel, i: usize, j: usize, x: &Series) -> Mat {
    let mut rows: Vec<Vec<Series>> = (0..3)
        .map(|r| (0..3).map(|c| if r == c { m.one() } else { m.zero() }).collect())
        .collect();
    rows[i][j] = x.clone();
    Mat::from_rows(rows)
}

/// `[x_a(x), ã(t)] = x_a((1 − t²)x)` and the witness `[ã(1+ϖ), x_a(x)]`.
pub(super) fn torus_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let one = m.one();
    let lv_s = rng.gen_range(1..=3);
    let s = m.random(rng, lv_s, true);
    let t = &one + &s;
    let lv_x = rng.gen_range(-2..=2);
    let x = m.random(rng, lv_x, true);
    let lhs = commutator(&sl2_plus(&x), &sl2_torus(&t)?)?;
    let y = &(&one - &(&t * &t)) * &x;
    ck.mat("torus commutator", &lhs, &sl2_plus(&y));
    ck.holds("torus commutator raises the level", y.val_at_least(x.val()? + 1));
    ck.series("det ã(t)", &sl2_torus(&t)?.det(), &one);

    let l = rng.gen_range(-2..=2);
    let target = m.random(rng, l + 1, true);
    let w = m.uniformizer();
    let c = &(&w * &m.int(2)) + &(&w * &w);
    let xw = target.div(&c)?;
    ck.holds("witness sits at level l", xw.val_at_least(l));
    let lhs = commutator(&sl2_torus(&(&one + &w))?, &sl2_plus(&xw))?;
    ck.mat("equality witness", &lhs, &sl2_plus(&target));
    Ok(Draw::Done)
}

/// `[x_{−a}(y), x_a(x)] = x_{−a}(xy²/T)·ã(T)·x_a(−x²y/T)` with `T = 1 + xy`.
pub(super) fn opposite_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let vx = rng.gen_range(-2..=3);
    let vy = rng.gen_range(1 - vx..=3 - vx);
    let x = m.random(rng, vx, true);
    let y = m.random(rng, vy, true);
    let tt = &m.one() + &(&x * &y);
    if tt.val()? != 0 {
        return Ok(Draw::Degenerate);
    }
    let big_x = (&x * &(&y * &y)).div(&tt)?;
    let big_u = -&(&x * &(&x * &y)).div(&tt)?;
    let lhs = commutator(&sl2_minus(&y), &sl2_plus(&x))?;
    let rhs = sl2_minus(&big_x).mul(&sl2_torus(&tt)?).mul(&sl2_plus(&big_u));
    ck.mat("opposite commutator", &lhs, &rhs);

    let a = lhs.get(0, 0);
    ck.series("recovered T", a, &tt);
    ck.series("recovered U", &lhs.get(0, 1).div(a)?, &big_u);
    ck.series("recovered X", &-&lhs.get(1, 0).div(a)?, &big_x);
    ck.holds("ω(X) = ω(x) + 2ω(y)", big_x.val()? == vx + 2 * vy);
    ck.holds("ω(U) = 2ω(x) + ω(y)", big_u.val()? == 2 * vx + vy);
    ck.holds("ω(T − 1) ≥ ω(x) + ω(y)", (&tt - &m.one()).val_at_least(vx + vy));
    Ok(Draw::Done)
}

/// The three matrix identities behind the Frattini argument in `SL₂`, the
/// recovery of `x_a(u)` from commutators, and square roots near 1.
pub(super) fn frattini_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let one = m.one();
    let lv_s = rng.gen_range(1..=3);
    let s = m.random(rng, lv_s, true);
    let vs = s.val()?;
    let t = &one + &s;
    let t2 = &t * &t;
    let one_t2 = &one - &t2;
    let lv_u = rng.gen_range(-2..=3);
    let u = m.random(rng, lv_u, true);
    let lv_v = rng.gen_range(-2..=3);
    let v = m.random(rng, lv_v, true);

    let a = upper(&t, &(&t * &u).div(&one_t2)?, &t.inv()?);
    let b = sl2_minus(&(&one_t2 * &one_t2).div(&(&t2 * &u))?);
    let c = commutator(&a, &b)?;
    ck.mat("upper triangular commutator", &c, &upper(&t2, &u, &t2.inv()?));
    ck.holds(
        "ω of the upper entry",
        (&t * &u).div(&one_t2)?.val()? == u.val()? - vs,
    );
    ck.holds(
        "ω of the lower entry",
        (&one_t2 * &one_t2).div(&(&t2 * &u))?.val()? == 2 * vs - u.val()?,
    );

    let a = sl2_plus(&(&one_t2 * &one_t2).div(&(&t2 * &v))?);
    let b = Mat::from_rows(vec![
        vec![t.inv()?, m.zero()],
        vec![(&t * &v).div(&-&one_t2)?, t.clone()],
    ]);
    let lower = Mat::from_rows(vec![vec![t2.clone(), m.zero()], vec![v.clone(), t2.inv()?]]);
    ck.mat("lower triangular commutator", &commutator(&a, &b)?, &lower);

    let t4 = &t2 * &t2;
    let prod = upper(&t2, &u, &t2.inv()?).mul(&upper(&t2, &-&u.div(&t4)?, &t2.inv()?));
    ck.mat("product is diagonal", &prod, &Mat::diag(vec![t4.clone(), t4.inv()?]));

    let lv_u1 = rng.gen_range(1..=3);
    let u1 = m.random(rng, lv_u1, true);
    let tu = &one + &Series::monomial(m.residue_field(), 1, u1.val()?);
    let tu2 = &tu * &tu;
    let d = &one - &tu2;
    let g = sl2_torus(&tu)?.mul(&sl2_plus(&(&tu2 * &u1).div(&d)?));
    let h = sl2_minus(&(&d * &d).div(&(&(&tu2 * &tu2) * &u1))?);
    let rec = sl2_torus(&tu2.inv()?)?.mul(&commutator(&g, &h)?);
    ck.mat("x_a(u) from commutators", &rec, &sl2_plus(&u1));

    let r = hensel_sqrt(&s)?;
    ck.series("square root near 1", &(&(&one + &r) * &(&one + &r)), &t);
    ck.holds("ω of the square root", r.val()? == vs);
    Ok(Draw::Done)
}

/// `[x_α(u), x_β(v)] = x_{α+β}(uv)` in `SL₃` with a sign that does not
/// depend on `u, v`, and every element of `U_{α+β}` is such a commutator.
pub(super) fn structure_trial(m: &LocalModel, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<Draw> {
    let lv_u = rng.gen_range(-2..=2);
    let u = m.random(rng, lv_u, true);
    let lv_v = rng.gen_range(-2..=2);
    let v = m.random(rng, lv_v, true);
    let uv = &u * &v;
    let c = commutator(&elem(m, 0, 1, &u), &elem(m, 1, 2, &v))?;
    ck.mat("[x_α, x_β]", &c, &elem(m, 0, 2, &uv));
    let c = commutator(&elem(m, 1, 2, &v), &elem(m, 0, 1, &u))?;
    ck.mat("[x_β, x_α]", &c, &elem(m, 0, 2, &-&uv));
    let c = commutator(&elem(m, 1, 0, &u), &elem(m, 2, 1, &v))?;
    ck.mat("[x_−α, x_−β]", &c, &elem(m, 2, 0, &-&uv));

    let lv_z = rng.gen_range(-2..=4);
    let z = m.random(rng, lv_z, true);
    let x = m.random(rng, 0, true);
    let c = commutator(&elem(m, 0, 1, &x), &elem(m, 1, 2, &z.div(&x)?))?;
    ck.mat("every x_{α+β}(z) is a commutator", &c, &elem(m, 0, 2, &z));
    Ok(Draw::Done)
}
