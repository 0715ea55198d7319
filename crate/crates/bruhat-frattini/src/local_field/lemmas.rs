//! Rank-one arithmetic in quadratic extensions: square roots near 1, trace
//! uniformizers, torus elements with prescribed valuations, and the
//! inversion of `τu·x − v·y = w`.

use num_traits::Zero;

use super::model::{HPoint, LocalModel};
use super::series::{Series, EXACT_INVERSE_TERMS};
use crate::error::{pre, Error, Result};
use crate::frac::{ceil, Q};

/// `b` with `(1 + b)² = 1 + a` and `ω(b) = ω(a)`, for `ω(a) ≥ 1`.
pub fn hensel_sqrt(a: &Series) -> Result<Series> {
    let f = a.field();
    if f.p() == 2 {
        return Err(Error::Hypothesis("square roots need p ≠ 2".into()));
    }
    if a.is_exact_zero() {
        return Ok(a.clone());
    }
    if a.val_lower_bound() < 1 {
        return pre("hensel_sqrt needs ω(a) ≥ 1");
    }
    let prec = if a.is_exact() {
        a.val_lower_bound() + EXACT_INVERSE_TERMS
    } else {
        a.prec()
    };
    // 2b + b² = a, solved coefficient by coefficient
    let n = prec.max(0) as usize;
    let half = f.inv(2);
    let mut b = vec![0u16; n];
    for k in 1..n {
        let mut s = a.coeff(k as i64).unwrap_or(0);
        for i in 1..k {
            s = f.sub(s, f.mul(b[i], b[k - i]));
        }
        b[k] = f.mul(s, half);
    }
    Ok(Series::from_coeffs(f, 0, b, prec))
}

fn need_quadratic(m: &LocalModel) -> Result<()> {
    if m.degree() != 2 {
        return pre("lemma stated for quadratic extensions");
    }
    if m.p() == 2 {
        return Err(Error::Hypothesis("p ≠ 2".into()));
    }
    Ok(())
}

/// Keep `cand` if its trace is a uniformizer of `K`, else use
/// `cand + N(cand)`.
pub fn trace_uniformizer_from(m: &LocalModel, cand: &Series) -> Result<Series> {
    need_quadratic(m)?;
    if cand.val()? != 1 {
        return pre("candidate is not a uniformizer of L");
    }
    let ok = |x: &Series| m.trace(x).valuation().ok().flatten() == Some(m.e());
    if ok(cand) {
        return Ok(cand.clone());
    }
    let alt = cand + &m.norm(cand);
    if ok(&alt) {
        Ok(alt)
    } else {
        Err(Error::Invariant("neither candidate has a uniformizing trace".into()))
    }
}

/// A uniformizer of `L` whose trace uniformizes `K`.
pub fn trace_uniformizer(m: &LocalModel) -> Result<Series> {
    trace_uniformizer_from(m, &m.uniformizer())
}

/// Valuations `(ω(tτt − 1), ω(t² − τt))`.
pub fn torus_valuations(m: &LocalModel, t: &Series) -> Result<(i64, i64)> {
    let tt = m.tau(t);
    let a = &(t * &tt) - &m.one();
    let b = &(t * t) - &tt;
    Ok((a.val()?, b.val()?))
}

/// `t ∈ 1 + 𝔪_L` with `ω(tτt − 1) = ω(t² − τt) = 1` (unramified) or
/// `ω(tτt − 1) = 2`, `ω(t² − τt) = 1` (ramified).
pub fn good_torus_element(m: &LocalModel) -> Result<Series> {
    need_quadratic(m)?;
    let want = if m.is_ramified() {
        if m.p() < 5 {
            return Err(Error::Hypothesis(
                "a good torus element in the ramified case needs p ≥ 5".into(),
            ));
        }
        (2, 1)
    } else {
        (1, 1)
    };
    let s = m.uniformizer();
    let t1 = &m.one() + &s;
    let mut cands = vec![t1.clone()];
    if m.is_ramified() {
        cands.push(&t1 + &m.norm(&s));
    }
    for t in cands {
        let t = m.cap(&t);
        if torus_valuations(m, &t)? == want {
            return Ok(t);
        }
    }
    Err(Error::Invariant("no candidate torus element passed".into()))
}

/// `ε = 1` exactly when `L/L₂` is ramified and `l` is odd.
pub fn epsilon(m: &LocalModel, l: i64) -> i64 {
    i64::from(m.is_ramified() && l.rem_euclid(2) == 1)
}

/// `(u, ½uτu)` with `ω(u) = l` and `ω(Tr u) = l + ε`.
pub fn min_trace_unipotent(m: &LocalModel, l: i64) -> Result<HPoint> {
    need_quadratic(m)?;
    let eps = epsilon(m, l);
    let k = (l - eps) / m.e();
    let tk = Series::monomial(m.residue_field(), 1, k * m.e());
    let u = if eps == 1 {
        &trace_uniformizer(m)? * &tk
    } else {
        tk
    };
    let v = &(&u * &m.tau(&u)) * &m.half();
    Ok(HPoint { u, v })
}

/// `l″ = max(1 + 2ε, ε + 2l + 2l′)`.
pub fn inversion_depth(m: &LocalModel, l: i64, lp: Q) -> i64 {
    let eps = epsilon(m, l);
    let b = Q::from_integer(eps + 2 * l) + lp * 2;
    (1 + 2 * eps).max(ceil(b))
}

/// Given `w` with `ω(w) ≥ l″`, find `(u, v)` at level `l` and `(x, y)` at
/// level `l′` with `τu·x − v·y = w`.
pub fn solve_inversion(m: &LocalModel, w: &Series, l: i64, lp: Q) -> Result<(HPoint, HPoint)> {
    need_quadratic(m)?;
    if Q::from_integer(l) + lp <= Q::zero() {
        return pre("solve_inversion needs l + l′ > 0");
    }
    let depth = inversion_depth(m, l, lp);
    if !w.val_at_least(depth) {
        return pre(format!("ω(w) must be at least l″ = {depth}"));
    }
    solve_inversion_raw(m, w, l)
}

/// The construction behind [`solve_inversion`] without the depth check.
pub(crate) fn solve_inversion_raw(m: &LocalModel, w: &Series, l: i64) -> Result<(HPoint, HPoint)> {
    let uv = min_trace_unipotent(m, l)?;
    let w = m.cap(w);
    let tu = m.tau(&uv.u);
    let a = m.trace(&tu.div(&uv.v)?);
    let b = m.trace(&w.div(&uv.v)?);
    let delta = &(&b * &m.int(4)) * &(&a * &a).inv()?;
    let r = hensel_sqrt(&-&delta)?;
    let x = -&(&(&a * &m.half()) * &r);
    let y = (&(&tu * &x) - &w).div(&uv.v)?;
    Ok((uv, HPoint { u: x, v: y }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::gf::Gf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sqrt_examples() {
        let f = Gf::get(3, 1).unwrap();
        let a = Series::parse(f, "t + O(t^20)", "t").unwrap();
        let b = hensel_sqrt(&a).unwrap();
        assert_eq!(b.coeff(1), Some(2));
        assert_eq!(b.coeff(2), Some(1));
        let one = Series::one(f);
        let sq = &(&one + &b) * &(&one + &b);
        assert!(sq.compare(&(&one + &a)).equal);
        assert_eq!(b.prec(), 20);
        assert!(hensel_sqrt(&Series::exact_zero(f)).unwrap().is_exact_zero());
        assert!(hensel_sqrt(&Series::parse(f, "1 + t", "t").unwrap()).is_err());
    }

    #[test]
    fn trace_uniformizers() {
        let un = LocalModel::unramified(5, 2, 20).unwrap();
        let w = trace_uniformizer(&un).unwrap();
        assert!(w.compare(&un.uniformizer()).equal);
        let ra = LocalModel::ramified(5, 1, 2, 20).unwrap();
        let w = trace_uniformizer(&ra).unwrap();
        assert!(w.compare(&(&ra.uniformizer() - &ra.t())).equal);
        assert_eq!(ra.trace(&w).val().unwrap(), 2);
    }

    #[test]
    fn good_elements() {
        for ram in [false, true] {
            let m = LocalModel::quadratic(5, ram, 20).unwrap();
            let t = good_torus_element(&m).unwrap();
            let want = if ram { (2, 1) } else { (1, 1) };
            assert_eq!(torus_valuations(&m, &t).unwrap(), want);
        }
        let m = LocalModel::quadratic(3, true, 20).unwrap();
        assert!(matches!(good_torus_element(&m), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn unipotent_traces() {
        let un = LocalModel::unramified(3, 2, 20).unwrap();
        let h = min_trace_unipotent(&un, 0).unwrap();
        assert!(h.u.compare(&un.one()).equal);
        assert_eq!(un.trace(&h.u).val().unwrap(), 0);
        let ra = LocalModel::ramified(5, 1, 2, 20).unwrap();
        for (l, tr) in [(1, 2), (2, 2), (3, 4), (-1, 0)] {
            let h = min_trace_unipotent(&ra, l).unwrap();
            assert_eq!(h.u.val().unwrap(), l);
            assert_eq!(ra.trace(&h.u).val().unwrap(), tr);
            assert!(h.membership(&ra).equal);
        }
    }

    #[test]
    fn inversion_examples() {
        let m = LocalModel::unramified(5, 2, 24).unwrap();
        let (uv, xy) = solve_inversion(&m, &m.zero(), 1, Q::new(1, 2)).unwrap();
        assert!(xy.u.is_zero_to_prec() && xy.v.is_zero_to_prec());
        assert!(uv.membership(&m).equal);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ram in [false, true] {
            let m = LocalModel::quadratic(5, ram, 24).unwrap();
            for _ in 0..20 {
                let (l, lp) = (1, Q::new(1, 2));
                let d = inversion_depth(&m, l, lp);
                let w = m.random(&mut rng, d, false);
                let (uv, xy) = solve_inversion(&m, &w, l, lp).unwrap();
                let lhs = &(&m.tau(&uv.u) * &xy.u) - &(&uv.v * &xy.v);
                assert!(lhs.compare(&w).equal);
                assert!(m.is_fixed(&xy.u).equal);
                assert!((&xy.u * &xy.u).compare(&m.trace(&xy.v)).equal);
                assert!(xy.membership(&m).equal);
                assert!(xy.at_level(lp));
                assert!(uv.at_level(Q::from_integer(l)));
            }
        }
        let m = LocalModel::unramified(5, 2, 24).unwrap();
        let shallow = Series::monomial(m.residue_field(), 1, 2);
        assert!(solve_inversion(&m, &shallow, 1, Q::new(1, 2)).is_err());
        assert!(solve_inversion(&m, &m.zero(), 0, Q::zero()).is_err());
    }
}
