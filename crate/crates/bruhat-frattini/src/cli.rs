//! Command-line front end.  Every command prints one JSON document
//! `{schema, command, result}` (or a short text rendering with `--text`).

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::apartment::{fundamental_alcove, AlcoveProfile};
use crate::error::{Error, Result};
use crate::frac::Q;
use crate::frattini::{
    frattini_levels, generator_count, parse_tag, rank1_levels, DpInput, GeneratorReport, GroupTag,
    LevelAssignment, Rank1Kind, Rank1Levels,
};
use crate::local_field::DEFAULT_PREC;
use crate::matrix_verify::{run_suite, Suite, SuiteConfig, TrialReport};
use crate::root_system::{build, Family, Root, RootSystem, RootSystemKind};
use crate::valued_datum::{gamma_sets, RootValueProfile, SplittingData, ValueSet};

pub const SCHEMA: &str = "bruhat-frattini/1";

#[derive(Parser, Debug)]
#[command(name = "bruhat-frattini", version, about = "Bruhat–Tits level data and Frattini quotients of pro-p Sylow subgroups")]
pub struct Cli {
    /// master seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// working precision of the series models
    #[arg(long, global = true, default_value_t = DEFAULT_PREC)]
    pub precision: i64,
    /// number of random trials
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: u64,
    /// JSON output (the default)
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// human-readable output
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// minimal number of topological generators d(P)
    Dp(DpArgs),
    /// fundamental alcove, its walls and f_c, f′_c
    Alcove(GroupArgs),
    /// sets of values Γ_a, Γ′_a, Γ_2a
    Values(GroupArgs),
    /// groups V_{a,c} generating the Frattini subgroup
    Frattini(FrattiniArgs),
    /// randomized check of a matrix identity suite
    Verify(VerifyArgs),
    /// roots, Cartan matrix and highest root
    Rootsys(RootsysArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Ramification {
    #[arg(long, conflicts_with = "unramified")]
    pub ramified: bool,
    #[arg(long)]
    pub unramified: bool,
}

#[derive(Args, Debug)]
pub struct DpArgs {
    /// type such as 1A, 2A, 3D, 2E6, ^2A_5
    #[arg(long)]
    pub tag: String,
    /// absolute rank
    #[arg(long, conflicts_with = "l")]
    pub n: Option<usize>,
    /// relative rank
    #[arg(long)]
    pub l: Option<usize>,
    #[command(flatten)]
    pub ram: Ramification,
    #[arg(long = "fprime")]
    pub f_prime: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long)]
    pub p: u32,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// type such as 2A5; overrides --family/--rank/--d
    #[arg(long)]
    pub tag: Option<String>,
    /// relative root system family
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// order of the ∗-action (2 by default for BC, else 1)
    #[arg(long)]
    pub d: Option<u32>,
    #[command(flatten)]
    pub ram: Ramification,
}

#[derive(Args, Debug)]
pub struct FrattiniArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// level l of U_a in rank one, e.g. 0, 1/2, -3/2
    #[arg(long, default_value = "0")]
    pub level: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// residue field size of K (must equal p)
    #[arg(long)]
    pub q: Option<u32>,
    #[command(flatten)]
    pub ram: Ramification,
}

#[derive(Args, Debug)]
pub struct RootsysArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

/// What every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub command: String,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveReport {
    pub group: String,
    pub profile: AlcoveProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuesReport {
    pub group: String,
    pub split: SplittingData,
    pub roots: Vec<RootValueProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum FrattiniReport {
    Alcove(LevelAssignment),
    RankOne(Rank1Levels),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsysReport {
    pub kind: RootSystemKind,
    pub roots: Vec<Root>,
    pub simple: Vec<usize>,
    pub highest: Vec<i64>,
    pub cartan: Vec<Vec<i64>>,
}

impl Ramification {
    fn ramified(&self) -> bool {
        self.ramified && !self.unramified
    }
}

fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn dp_tag(a: &DpArgs) -> Result<GroupTag> {
    match (a.n, a.l) {
        (Some(n), _) => {
            let (d, _, fam) = parse_tag(&a.tag)?;
            GroupTag::new(d, fam, n)
        }
        (None, Some(l)) => {
            let (d, _, fam) = parse_tag(&a.tag)?;
            GroupTag::from_relative(d, fam, l)
        }
        (None, None) => a.tag.parse(),
    }
}

/// Relative root system, splitting data and a label.
fn resolve_group(g: &GroupArgs) -> Result<(RootSystem, SplittingData, String)> {
    let ramified = g.ram.ramified();
    if let Some(t) = &g.tag {
        let tag: GroupTag = t.parse()?;
        let kind = tag.relative_kind()?;
        let split = SplittingData::new(tag.d, ramified)?;
        return Ok((build(kind)?, split, tag.to_string()));
    }
    let fam: Family = g
        .family
        .as_deref()
        .ok_or_else(|| Error::Parse("give --tag or --family".into()))?
        .parse()?;
    let rank = match (g.rank, fam.fixed_rank()) {
        (Some(r), _) | (None, Some(r)) => r,
        (None, None) => return Err(Error::Parse(format!("--rank is needed for family {fam}"))),
    };
    let kind = RootSystemKind::new(fam, rank)?;
    let d = g.d.unwrap_or(if fam == Family::BC { 2 } else { 1 });
    let split = SplittingData::new(d, ramified)?;
    Ok((build(kind)?, split, kind.to_string()))
}

fn envelope<T: Serialize>(command: &str, result: T) -> Result<String> {
    let e = Envelope {
        schema: SCHEMA.to_string(),
        command: command.to_string(),
        result,
    };
    serde_json::to_string_pretty(&e).map_err(|e| Error::Invariant(e.to_string()))
}

fn show_set(v: &ValueSet) -> String {
    if v.offset == Q::from_integer(0) {
        format!("{}ℤ", v.step)
    } else {
        format!("{} + {}ℤ", v.offset, v.step)
    }
}

fn text_dp(r: &GeneratorReport) -> String {
    format!("d(P) = {}\n{}\n", r.d_p, r.derivation)
}

fn text_alcove(r: &AlcoveReport, sys: &RootSystem) -> String {
    let mut s = format!("fundamental alcove of {}\nwalls:\n", r.group);
    for w in &r.profile.bounding {
        let _ = writeln!(s, "  ({:?}, {})", w.coeffs, w.level);
    }
    s.push_str("vertices:\n");
    for v in &r.profile.vertices {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  ({})", row.join(", "));
    }
    s.push_str("f_c and f′_c:\n");
    for a in 0..sys.len() {
        let _ = writeln!(
            s,
            "  {:?}: {} {}",
            sys.coeffs(a),
            r.profile.f_c[a],
            r.profile.f_prime[a]
        );
    }
    s
}

fn text_values(r: &ValuesReport) -> String {
    let mut s = format!("sets of values for {}\n", r.group);
    for p in &r.roots {
        let _ = write!(
            s,
            "  {:?}: Γ = {}, Γ′ = {}",
            p.root.coeffs,
            show_set(&p.gamma),
            show_set(&p.gamma_prime)
        );
        if let Some(g) = &p.gamma_double {
            let _ = write!(s, ", Γ_2a = {}", show_set(g));
        }
        s.push('\n');
    }
    s
}

fn text_frattini(r: &FrattiniReport) -> String {
    match r {
        FrattiniReport::Alcove(a) => {
            let mut s = format!("{} with p = {}: ξ = {}\n", a.kind, a.p, a.xi);
            for e in &a.entries {
                let _ = write!(
                    s,
                    "  {:?}: {} → {}",
                    e.coeffs, e.base_level, e.frattini_level
                );
                if let Some(x) = e.adjunct_2a {
                    let _ = write!(s, " (with U_2a at {x})");
                }
                if e.quotient_exponent > 0 {
                    let _ = write!(s, ", exponent {}", e.quotient_exponent);
                }
                s.push('\n');
            }
            let _ = writeln!(s, "  torus: T_b^{}", a.torus_depth);
            s
        }
        FrattiniReport::RankOne(r) => format!(
            "l = {}: U_a at {}, U_−a at {}, torus depth {}\n",
            r.l, r.plus, r.minus, r.torus_depth
        ),
    }
}

fn text_verify(r: &TrialReport) -> String {
    let margin = r
        .worst_precision_margin
        .map_or("exact".to_string(), |m| m.to_string());
    let mut s = format!(
        "{} p={} {}: {} trials, {} failures, {} resampled, worst margin {}\n",
        r.lemma_id,
        r.config.p,
        if r.config.ramified { "ramified" } else { "unramified" },
        r.trials,
        r.failures,
        r.resampled,
        margin
    );
    if let Some(f) = &r.first_failure {
        let _ = writeln!(s, "first failure at trial {}: {}", f.trial, f.message);
    }
    s
}

fn text_rootsys(r: &RootsysReport) -> String {
    let mut s = format!("{}: {} roots, highest {:?}\ncartan:\n", r.kind, r.roots.len(), r.highest);
    for row in &r.cartan {
        let _ = writeln!(s, "  {row:?}");
    }
    s
}

/// Run a parsed command; returns the rendered output and the exit status.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let text = cli.text;
    match &cli.command {
        Command::Dp(a) => {
            let input = DpInput {
                tag: dp_tag(a)?,
                ramified: a.ram.ramified(),
                f_prime: a.f_prime,
                m: a.m,
                f: a.f,
                p: a.p,
            };
            let r = generator_count(&input)?;
            Ok((if text { text_dp(&r) } else { envelope("dp", &r)? }, 0))
        }
        Command::Alcove(g) => {
            let (sys, split, group) = resolve_group(g)?;
            let profile = fundamental_alcove(&sys, &split)?;
            let r = AlcoveReport { group, profile };
            let out = if text { text_alcove(&r, &sys) } else { envelope("alcove", &r)? };
            Ok((out, 0))
        }
        Command::Values(g) => {
            let (sys, split, group) = resolve_group(g)?;
            let roots = sys
                .positive()
                .map(|a| gamma_sets(&sys, a, &split))
                .collect();
            let r = ValuesReport { group, split, roots };
            Ok((if text { text_values(&r) } else { envelope("values", &r)? }, 0))
        }
        Command::Frattini(a) => {
            let (sys, split, _) = resolve_group(&a.group)?;
            let r = if sys.rank() == 1 {
                let kind = if sys.is_reduced() { Rank1Kind::Reduced } else { Rank1Kind::Bc1 };
                FrattiniReport::RankOne(rank1_levels(&split, kind, parse_q(&a.level)?, a.p)?)
            } else {
                let profile = fundamental_alcove(&sys, &split)?;
                FrattiniReport::Alcove(frattini_levels(&sys, &profile, a.p)?)
            };
            Ok((if text { text_frattini(&r) } else { envelope("frattini", &r)? }, 0))
        }
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            if let Some(q) = a.q {
                if q != a.p {
                    return Err(Error::Unsupported(format!(
                        "series models are built over F_p; q = {q} differs from p = {}",
                        a.p
                    )));
                }
            }
            let cfg = SuiteConfig {
                p: a.p,
                ramified: a.ram.ramified(),
                precision: cli.precision,
                trials: cli.trials,
                seed: cli.seed,
            };
            let r = run_suite(suite, &cfg)?;
            let code = if r.passed() { 0 } else { 1 };
            Ok((if text { text_verify(&r) } else { envelope("verify", &r)? }, code))
        }
        Command::Rootsys(a) => {
            let fam: Family = a.family.parse()?;
            let rank = a
                .rank
                .or(fam.fixed_rank())
                .ok_or_else(|| Error::Parse(format!("--rank is needed for family {fam}")))?;
            let sys = build(RootSystemKind::new(fam, rank)?)?;
            let r = RootsysReport {
                kind: sys.kind(),
                roots: sys.roots().to_vec(),
                simple: sys.simple().to_vec(),
                highest: sys.highest_root().coeffs.clone(),
                cartan: sys.cartan().to_vec(),
            };
            Ok((if text { text_rootsys(&r) } else { envelope("rootsys", &r)? }, 0))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidKind { .. } => "invalid_kind",
        Error::Precondition(_) => "precondition",
        Error::Hypothesis(_) => "hypothesis",
        Error::Indeterminate(_) => "indeterminate",
        Error::NotUnit(_) => "not_unit",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
        Error::Invariant(_) => "invariant",
    }
}

/// Parse `args`, run, and return `(stdout, stderr, exit status)`.
pub fn execute<I, S>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (String::new(), e.to_string(), code);
        }
    };
    match run(&cli) {
        Ok((out, code)) => (out, String::new(), code),
        Err(e) => {
            let rep = ErrorReport {
                kind: error_kind(&e).into(),
                message: e.to_string(),
            };
            let err = if cli.text {
                format!("error: {e}\n")
            } else {
                envelope("error", &rep).unwrap_or_else(|_| e.to_string())
            };
            let code = if matches!(e, Error::Hypothesis(_)) { 3 } else { 2 };
            (String::new(), err, code)
        }
    }
}
