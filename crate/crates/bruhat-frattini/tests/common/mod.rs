//! Shared oracles and criterion checks for the integration tests and the
//! acceptance runner.  Each `check_*` returns a one-line summary or the first
//! discrepancy found.

#![allow(dead_code)]

pub mod enumerate;

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use bruhat_frattini::apartment::fundamental_alcove;
use bruhat_frattini::frac::{half, q, Q};
use bruhat_frattini::frattini::{
    check_profile, frattini_levels, negative_bounds, positive_bounds, xi_from_levels, GroupTag,
};
use bruhat_frattini::local_field::{
    good_torus_element, hensel_sqrt, min_trace_unipotent, trace_uniformizer_from, LocalModel,
    Series,
};
use bruhat_frattini::matrix_verify::{run_suite, Suite, SuiteConfig};
use bruhat_frattini::root_system::{build, Family, RootSystem, RootSystemKind};
use bruhat_frattini::valued_datum::{
    gamma_sets, panel_residue_card, quotient_dim, SplittingData, ValueSet,
};

pub type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// relative root systems with their splitting data

pub struct Case {
    pub sys: RootSystem,
    pub split: SplittingData,
    pub label: String,
}

fn case(fam: Family, rank: usize, d: u32, ram: bool) -> Case {
    let sys = build(RootSystemKind::new(fam, rank).unwrap()).unwrap();
    let split = SplittingData::new(d, ram).unwrap();
    let label = format!(
        "{} d={d}{}",
        sys.kind(),
        if split.ramified { " ram" } else { "" }
    );
    Case { sys, split, label }
}

/// Every relative root system of rank at most `max_rank` occurring for a
/// quasi-split group, with each ramification behaviour of `L′/L_d`.
pub fn cases(max_rank: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for kind in RootSystemKind::all_up_to(max_rank) {
        if kind.family != Family::BC {
            out.push(case(kind.family, kind.rank, 1, false));
        }
    }
    for ram in [false, true] {
        for l in 2..=max_rank {
            out.push(case(Family::C, l, 2, ram));
        }
        for l in 3..max_rank {
            out.push(case(Family::B, l, 2, ram));
        }
        if max_rank >= 4 {
            out.push(case(Family::F4, 4, 2, ram));
        }
        out.push(case(Family::G2, 2, 3, ram));
        out.push(case(Family::G2, 2, 6, ram));
        for l in 1..=max_rank {
            out.push(case(Family::BC, l, 2, ram));
        }
    }
    out
}

// sets of values, read off from the shape of the root alone

pub struct OracleSets {
    pub gamma: ValueSet,
    pub gamma_prime: ValueSet,
    pub gamma_double: Option<ValueSet>,
}

fn is_multipliable(sys: &RootSystem, a: usize) -> bool {
    let c: Vec<i64> = sys.coeffs(a).iter().map(|x| 2 * x).collect();
    sys.find(&c).is_some()
}

fn is_divisible(sys: &RootSystem, a: usize) -> bool {
    let c = sys.coeffs(a);
    c.iter().all(|x| x % 2 == 0) && sys.find(&c.iter().map(|x| x / 2).collect::<Vec<_>>()).is_some()
}

pub fn oracle_sets(sys: &RootSystem, a: usize, split: &SplittingData) -> OracleSets {
    let two_a = if split.ramified {
        ValueSet::new(q(1), q(2))
    } else {
        ValueSet::new(q(0), q(1))
    };
    let z = ValueSet::new(q(0), q(1));
    let same = |g: ValueSet| OracleSets {
        gamma: g,
        gamma_prime: g,
        gamma_double: None,
    };
    if is_multipliable(sys, a) {
        return OracleSets {
            gamma: ValueSet::new(q(0), half(1)),
            gamma_prime: z,
            gamma_double: Some(two_a),
        };
    }
    if is_divisible(sys, a) {
        return same(two_a);
    }
    if sys.kind().family == Family::BC {
        return same(z);
    }
    let longest = (0..sys.len()).map(|b| sys.squared_norm(b)).max().unwrap();
    if split.d_prime > 1 && sys.squared_norm(a) < longest {
        same(z)
    } else {
        same(ValueSet::new(q(0), q(split.e_prime as i64)))
    }
}

/// Γ_a, Γ′_a and Γ_2a agree with the oracle on every root, and collapse to
/// one progression off the multipliable roots.
pub fn check_sets_of_values() -> Outcome {
    let mut roots = 0;
    let cs = cases(8);
    for c in &cs {
        for a in 0..c.sys.len() {
            let got = gamma_sets(&c.sys, a, &c.split);
            let want = oracle_sets(&c.sys, a, &c.split);
            ensure!(
                got.gamma == want.gamma
                    && got.gamma_prime == want.gamma_prime
                    && got.gamma_double == want.gamma_double,
                "{} root {:?}: got Γ={} Γ′={} Γ₂={:?}, want Γ={} Γ′={} Γ₂={:?}",
                c.label,
                c.sys.coeffs(a),
                got.gamma,
                got.gamma_prime,
                got.gamma_double,
                want.gamma,
                want.gamma_prime,
                want.gamma_double
            );
            if !c.sys.root(a).multipliable {
                ensure!(got.gamma == got.gamma_prime, "{}: Γ ≠ Γ′ off multipliable roots", c.label);
            }
            roots += 1;
        }
    }
    // the multipliable table in both cases, spelled out
    for (ram, g2) in [(false, ValueSet::new(q(0), q(1))), (true, ValueSet::new(q(1), q(2)))] {
        let c = case(Family::BC, 1, 2, ram);
        let a = c.sys.simple()[0];
        let got = gamma_sets(&c.sys, a, &c.split);
        ensure!(got.gamma.to_string() == "1/2ℤ", "BC1 Γ_a = {}", got.gamma);
        ensure!(got.gamma_prime.to_string() == "ℤ", "BC1 Γ′_a = {}", got.gamma_prime);
        ensure!(got.gamma_double == Some(g2), "BC1 Γ_2a = {:?}", got.gamma_double);
    }
    Ok(format!("{} root systems, {roots} roots", cs.len()))
}

/// `d(a, l) > 0` exactly for `l ∈ Γ′_a`, over two periods of the widest
/// progression on each side of 0.
pub fn check_affine_roots() -> Outcome {
    let mut n = 0;
    for c in cases(8) {
        for a in 0..c.sys.len() {
            let g = oracle_sets(&c.sys, a, &c.split).gamma_prime;
            for k in -12..=12 {
                let l = Q::new(k, 2);
                let d = quotient_dim(&c.sys, a, l, &c.split);
                ensure!(
                    (d > 0) == g.contains(l),
                    "{} root {:?} l={l}: d = {d}, Γ′ = {g}",
                    c.label,
                    c.sys.coeffs(a)
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs (a, l)"))
}

// the generator-count table

#[derive(Clone, Debug)]
pub struct DpRow {
    pub tag: String,
    pub d: u32,
    pub n: u64,
    pub l: u64,
    pub ramified: bool,
    pub f_prime: u32,
    pub min_p: u32,
    /// `(lo, hi)`, equal for an exact value
    pub xi: (u64, u64),
}

fn tag_string(d: u32, fam: Family, n: usize) -> String {
    match fam.fixed_rank() {
        Some(_) => format!("{d}{fam}"),
        None => format!("{d}{fam}{n}"),
    }
}

/// The table of ξ, one row per type of absolute rank ≤ 8 and per
/// ramification of `L′/L_d`.
pub fn dp_rows() -> Vec<DpRow> {
    let mut rows = Vec::new();
    let mut push = |d: u32, fam: Family, n: u64, l: u64, ram: bool, fp: u32, min_p: u32, xi: (u64, u64)| {
        rows.push(DpRow {
            tag: tag_string(d, fam, n as usize),
            d,
            n,
            l,
            ramified: ram,
            f_prime: fp,
            min_p,
            xi,
        })
    };
    for kind in RootSystemKind::all_up_to(8) {
        let n = kind.rank as u64;
        match kind.family {
            Family::BC => {}
            Family::G2 => push(1, Family::G2, 2, 2, false, 1, 5, (3, 3)),
            fam => push(1, fam, n, n, false, 1, 3, (n + 1, n + 1)),
        }
    }
    for ram in [false, true] {
        let fp: u64 = if ram { 1 } else { 2 };
        let f3: u64 = if ram { 1 } else { 3 };
        for n in [3u64, 5, 7] {
            let l = (n + 1) / 2;
            let x = fp * (l - 1) + 2;
            push(2, Family::A, n, l, ram, fp as u32, 3, (x, x));
        }
        for n in 4..=8u64 {
            let l = n - 1;
            push(2, Family::D, n, l, ram, fp as u32, 3, (l + fp, l + fp));
        }
        push(2, Family::E6, 6, 4, ram, fp as u32, 3, (3 + 2 * fp, 3 + 2 * fp));
        for d in [3, 6] {
            push(d, Family::D, 4, 2, ram, f3 as u32, 5, (2 + f3, 2 + f3));
        }
        for n in [4u64, 6, 8] {
            let l = n / 2;
            push(2, Family::A, n, l, ram, fp as u32, 5, (fp * l + 1, fp * l + 1));
        }
        push(2, Family::A, 2, 1, ram, fp as u32, 5, (fp + 1, 3 * fp + 3));
    }
    rows
}

fn count_of(v: &Value) -> Option<(u64, u64)> {
    match v.get("value") {
        Some(x) => x.as_u64().map(|x| (x, x)),
        None => Some((v.get("lo")?.as_u64()?, v.get("hi")?.as_u64()?)),
    }
}

pub fn dp_json(row: &DpRow, m: u32, f: u32, p: u32, give_fprime: bool) -> std::result::Result<Value, String> {
    let mut args = vec!["bruhat-frattini".to_string(), "dp".into(), "--tag".into(), row.tag.clone()];
    if row.d > 1 {
        args.push(if row.ramified { "--ramified" } else { "--unramified" }.into());
    }
    if give_fprime {
        args.extend(["--fprime".into(), row.f_prime.to_string()]);
    }
    for (k, v) in [("--m", m), ("--f", f), ("--p", p)] {
        args.extend([k.to_string(), v.to_string()]);
    }
    let (out, err, code) = bruhat_frattini::cli::execute(&args);
    if code != 0 {
        return Err(format!("{}: exit {code}: {err}", args.join(" ")));
    }
    serde_json::from_str(&out).map_err(|e| format!("{}: {e}", args.join(" ")))
}

pub fn check_dp_table() -> Outcome {
    let start = Instant::now();
    let rows = dp_rows();
    let mut runs = 0;
    for row in &rows {
        let rel = row.d > 1 && row.xi.0 == row.xi.1;
        if rel {
            let cor = if row.ramified { row.l + 1 } else { row.n + 1 };
            ensure!(row.xi.0 == cor, "{}: table ξ {} vs {cor}", row.tag, row.xi.0);
        }
        for m in [1u32, 2] {
            for f in [1u32, 2] {
                for p in [row.min_p, 7] {
                    let v = dp_json(row, m, f, p, (m + f) % 2 == 0)?;
                    let r = &v["result"];
                    let xi = count_of(&r["xi"]).ok_or("xi missing")?;
                    let dp = count_of(&r["d_p"]).ok_or("d_p missing")?;
                    let k = u64::from(m * f);
                    ensure!(
                        xi == row.xi,
                        "{} {} m={m} f={f} p={p}: ξ = {xi:?}, want {:?}",
                        row.tag,
                        if row.ramified { "ram" } else { "unram" },
                        row.xi
                    );
                    ensure!(dp == (k * row.xi.0, k * row.xi.1), "{}: d(P) = {dp:?}", row.tag);
                    runs += 1;
                }
            }
        }
        if row.d > 1 {
            // a residue degree that contradicts the ramification is refused
            let bad = DpRow {
                f_prime: row.f_prime + 1,
                ..row.clone()
            };
            ensure!(dp_json(&bad, 1, 1, 7, true).is_err(), "{}: f′ = {} accepted", row.tag, bad.f_prime);
        }
    }
    let dt = start.elapsed();
    ensure!(dt.as_secs_f64() < 1.0, "table took {dt:?}");
    Ok(format!("{} rows, {runs} runs in {:.0} ms", rows.len(), dt.as_secs_f64() * 1e3))
}

/// Σ over `Δ ∪ {−θ}` of the quotient exponents in the level assignment
/// equals the ξ printed by `dp`.
pub fn check_dimension_identity() -> Outcome {
    let mut n = 0;
    for row in dp_rows() {
        if row.xi.0 != row.xi.1 {
            continue;
        }
        let tag: GroupTag = row.tag.parse().map_err(|e| format!("{}: {e}", row.tag))?;
        let p = row.min_p.max(5);
        let sys = build(tag.relative_kind().unwrap()).unwrap();
        let split = SplittingData::new(row.d, row.ramified).unwrap();
        let prof = fundamental_alcove(&sys, &split).map_err(|e| e.to_string())?;
        let levels = frattini_levels(&sys, &prof, p).map_err(|e| format!("{}: {e}", row.tag))?;
        let sum: u64 = levels
            .entries
            .iter()
            .filter(|e| e.bounding)
            .map(|e| u64::from(e.quotient_exponent))
            .sum();
        let from_cli = count_of(&dp_json(&row, 1, 1, p, false)?["result"]["xi"]).unwrap().0;
        let direct = u64::from(xi_from_levels(&tag, row.ramified, p).map_err(|e| e.to_string())?);
        ensure!(
            sum == from_cli && direct == from_cli,
            "{} {}: Σ f_a = {sum}, xi_from_levels = {direct}, dp ξ = {from_cli}",
            row.tag,
            if row.ramified { "ram" } else { "unram" }
        );
        n += 1;
    }
    Ok(format!("{n} types"))
}

// level recursions

/// `f_Ω` for a random finite set Ω of points with `a(x) ∈ Γ_a` on every
/// non-divisible root.
pub fn random_profile(c: &Case, rng: &mut impl Rng) -> Vec<Q> {
    let sys = &c.sys;
    let nd = sys.nd();
    let gs: Vec<ValueSet> = (0..sys.len()).map(|a| gamma_sets(sys, a, &c.split).gamma).collect();
    let npts = rng.gen_range(1..=4);
    let mut pts: Vec<Vec<Q>> = Vec::new();
    while pts.len() < npts {
        let x: Vec<Q> = sys
            .simple()
            .iter()
            .map(|&a| gs[a].offset + gs[a].step * rng.gen_range(-3..=3))
            .collect();
        let ok = nd.iter().all(|&a| {
            let v: Q = sys.coeffs(a).iter().zip(&x).map(|(&n, &xi)| xi * n).sum();
            gs[a].contains(v)
        });
        if ok {
            pts.push(x);
        }
    }
    (0..sys.len())
        .map(|a| {
            pts.iter()
                .map(|x| -sys.coeffs(a).iter().zip(x).map(|(&n, &xi)| xi * n).sum::<Q>())
                .max()
                .unwrap()
        })
        .collect()
}

pub fn check_recursions(profiles_per_type: usize, seed: u64) -> Outcome {
    let cs = cases(8);
    for c in &cs {
        let sys = &c.sys;
        let prof = fundamental_alcove(sys, &c.split).map_err(|e| e.to_string())?;
        let l: Vec<Q> = sys.simple().iter().map(|&a| prof.f_c[a]).collect();
        let mt = sys.neg(prof.theta());
        let lp = positive_bounds(sys, &c.split, &l).map_err(|e| format!("{}: {e}", c.label))?;
        let nb = negative_bounds(sys, &prof.weights, &c.split, &l, prof.f_c[mt])
            .map_err(|e| format!("{}: {e}", c.label))?;
        for b in sys.positive() {
            ensure!(lp[b].is_zero(), "{}: l′ = {} at {:?}", c.label, lp[b], sys.coeffs(b));
        }
        for a in sys.nd() {
            if sys.is_positive(a) || a == mt {
                continue;
            }
            ensure!(
                nb.l_second[a] == prof.f_prime[a],
                "{}: l″ = {} but f′ = {} at {:?}",
                c.label,
                nb.l_second[a],
                prof.f_prime[a],
                sys.coeffs(a)
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in &cs {
        let w = fundamental_alcove(&c.sys, &c.split).unwrap().weights;
        for _ in 0..profiles_per_type {
            let f = random_profile(c, &mut rng);
            let chk = check_profile(&c.sys, &w, &c.split, &f).map_err(|e| format!("{}: {e}", c.label))?;
            ensure!(
                chk.violations.is_empty(),
                "{}: {} on profile {:?}",
                c.label,
                chk.violations[0],
                f.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            );
        }
    }
    Ok(format!("{} types, {} random profiles each", cs.len(), profiles_per_type))
}

// quotient enumeration

pub fn check_enumeration() -> Outcome {
    let mut parts = Vec::new();
    for (what, c, l, classes) in [
        ("non-multipliable", case(Family::A, 1, 1, false), q(0), enumerate::non_multipliable()),
        ("multipliable unramified", case(Family::BC, 1, 2, false), q(0), enumerate::multipliable(false)),
        ("multipliable ramified", case(Family::BC, 1, 2, true), half(1), enumerate::multipliable(true)),
    ] {
        let a = c.sys.simple()[0];
        let card = panel_residue_card(&c.sys, a, l, &c.split, 3).map_err(|e| e.to_string())?;
        ensure!(
            card == 1 + classes.cosets as u64,
            "{what}: {} cosets among {} points, panel card {card}",
            classes.cosets,
            classes.points
        );
        parts.push(format!("{what} {}/{}", classes.points, classes.cosets));
    }
    Ok(parts.join(", "))
}

// field lemmas

pub const MODELS: [(u32, bool); 4] = [(3, false), (3, true), (5, false), (5, true)];

fn val(x: &Series) -> Option<i64> {
    x.valuation().ok().flatten()
}

pub fn check_lemmas(trials: usize, seed: u64) -> Outcome {
    let mut checks = 0;
    for (p, ram) in MODELS {
        let m = LocalModel::quadratic(p, ram, 24).map_err(|e| e.to_string())?;
        let e = if ram { 2 } else { 1 };
        let one = m.one();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(p) ^ (u64::from(ram) << 8));
        let tag = format!("p={p}{}", if ram { " ram" } else { "" });
        for i in 0..trials {
            // square roots near 1
            let lo = rng.gen_range(1..=6);
            let a = m.random(&mut rng, lo, true);
            let b = hensel_sqrt(&a).map_err(|x| format!("{tag}: {x}"))?;
            let sq = &(&one + &b) * &(&one + &b);
            ensure!(sq.compare(&(&one + &a)).equal, "{tag} trial {i}: (1+b)² ≠ 1+a");
            ensure!(val(&b) == Some(lo), "{tag} trial {i}: ω(b) ≠ ω(a)");

            // uniformizers with uniformizing trace; in the unramified case
            // the candidate comes from K
            let cand = if ram {
                m.random(&mut rng, 1, true)
            } else {
                let c = rng.gen_range(1..p as i64);
                let tail = m.random(&mut rng, 2, false);
                &(&m.int(c) * &m.t()) + &(&m.half() * &m.trace(&tail))
            };
            let w = trace_uniformizer_from(&m, &cand).map_err(|x| format!("{tag} trial {i}: {x}"))?;
            ensure!(val(&w) == Some(1), "{tag} trial {i}: ω(ϖ) ≠ 1");
            ensure!(val(&m.trace(&w)) == Some(e), "{tag} trial {i}: ω(Tr ϖ) ≠ {e}");
            let alt = &cand + &m.norm(&cand);
            ensure!(
                w.compare(&cand).equal || w.compare(&alt).equal,
                "{tag} trial {i}: result is neither candidate"
            );

            // elements of H of minimal trace
            let l = rng.gen_range(-6..=6);
            let h = min_trace_unipotent(&m, l).map_err(|x| format!("{tag}: {x}"))?;
            let eps = i64::from(ram && l.rem_euclid(2) == 1);
            ensure!(val(&h.u) == Some(l), "{tag} l={l}: ω(u) ≠ l");
            ensure!(val(&m.trace(&h.u)) == Some(l + eps), "{tag} l={l}: ω(Tr u) ≠ l + ε");
            let lhs = &h.u * &m.tau(&h.u);
            ensure!(lhs.compare(&(&h.v + &m.tau(&h.v))).equal, "{tag} l={l}: (u, v) ∉ H");

            // torus elements, at a random working precision
            if !(ram && p < 5) {
                let prec = rng.gen_range(10..=40);
                let mp = LocalModel::quadratic(p, ram, prec).map_err(|x| x.to_string())?;
                let t = good_torus_element(&mp).map_err(|x| format!("{tag}: {x}"))?;
                let tt = mp.tau(&t);
                let a = val(&(&(&t * &tt) - &mp.one()));
                let b = val(&(&(&t * &t) - &tt));
                let want = if ram { (2, 1) } else { (1, 1) };
                ensure!(
                    (a, b) == (Some(want.0), Some(want.1)),
                    "{tag} prec={prec}: torus valuations {a:?}, {b:?}"
                );
                ensure!(val(&(&t - &mp.one())).is_some_and(|v| v >= 1), "{tag}: t ∉ 1 + 𝔪");
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} trials over {} models", MODELS.len()))
}

// matrix suites

pub fn suite_configs() -> Vec<(Suite, u32, bool)> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        for (p, ram) in MODELS {
            if s.check_hypotheses(p, ram).is_ok() {
                out.push((s, p, ram));
            }
        }
    }
    out
}

pub fn check_suites(trials: u64, seed: u64) -> Outcome {
    let start = Instant::now();
    let configs = suite_configs();
    for &(s, p, ram) in &configs {
        let cfg = SuiteConfig {
            trials,
            seed,
            precision: 24,
            ..SuiteConfig::new(p, ram)
        };
        let r = run_suite(s, &cfg).map_err(|e| format!("{s} p={p}: {e}"))?;
        ensure!(r.trials == trials, "{s} p={p} ram={ram}: {} trials ran", r.trials);
        ensure!(
            r.passed(),
            "{s} p={p} ram={ram}: {} failures, first {:?}",
            r.failures,
            r.first_failure
        );
        if let Some(mg) = r.worst_precision_margin {
            ensure!(mg >= 4, "{s} p={p} ram={ram}: margin {mg}");
        }
    }
    let dt = start.elapsed();
    ensure!(dt.as_secs_f64() < 60.0, "suites took {dt:?}");
    Ok(format!("{} suite/model pairs × {trials} trials in {:.1} s", configs.len(), dt.as_secs_f64()))
}

pub fn check_inversion_chain(trials: u64, seed: u64) -> Outcome {
    let mut resampled = 0;
    for (p, ram) in [(5, false), (5, true), (7, false), (7, true)] {
        let cfg = SuiteConfig {
            trials,
            seed,
            ..SuiteConfig::new(p, ram)
        };
        let r = run_suite(Suite::Su3Inversion, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "p={p} ram={ram}: {:?}", r.first_failure);
        resampled += r.resampled;
    }
    Ok(format!("4 models × {trials} draws of w, {resampled} resampled"))
}
