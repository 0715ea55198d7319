//! Truncated Laurent series `Σ c_i X^i` over a table field.
//!
//! A series knows its absolute precision: terms of exponent `≥ prec` are
//! unknown.  `prec == EXACT` marks finite sums known exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::gf::{Elt, Gf};
use crate::error::{Error, Result};

pub const EXACT: i64 = i64::MAX / 4;

/// Relative precision used when inverting an exact series that is not a
/// monomial.
pub const EXACT_INVERSE_TERMS: i64 = 48;

#[inline]
fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

#[derive(Clone)]
pub struct Series {
    f: &'static Gf,
    val: i64,
    c: Vec<Elt>,
    prec: i64,
}

/// Outcome of comparing two series at their joint precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    /// joint precision minus the valuation at which the sides were
    /// compared; `EXACT` when both sides are exact
    pub margin: i64,
}

impl Series {
    fn normalized(f: &'static Gf, val: i64, mut c: Vec<Elt>, prec: i64) -> Series {
        let keep = if prec >= EXACT {
            c.len()
        } else {
            (prec - val).clamp(0, c.len() as i64) as usize
        };
        c.truncate(keep);
        while c.last() == Some(&0) {
            c.pop();
        }
        let lead = c.iter().position(|&x| x != 0).unwrap_or(c.len());
        if lead == c.len() {
            return Series {
                f,
                val: 0,
                c: Vec::new(),
                prec,
            };
        }
        c.drain(..lead);
        Series {
            f,
            val: val + lead as i64,
            c,
            prec,
        }
    }

    pub fn from_coeffs(f: &'static Gf, val: i64, coeffs: Vec<Elt>, prec: i64) -> Series {
        Series::normalized(f, val, coeffs, prec)
    }

    /// Zero known up to `prec`.
    pub fn zero(f: &'static Gf, prec: i64) -> Series {
        Series::normalized(f, 0, Vec::new(), prec)
    }

    pub fn exact_zero(f: &'static Gf) -> Series {
        Series::zero(f, EXACT)
    }

    pub fn one(f: &'static Gf) -> Series {
        Series::constant(f, 1)
    }

    pub fn constant(f: &'static Gf, a: Elt) -> Series {
        Series::normalized(f, 0, vec![a], EXACT)
    }

    pub fn from_int(f: &'static Gf, n: i64) -> Series {
        Series::constant(f, f.from_int(n))
    }

    /// `a X^e`, exact.
    pub fn monomial(f: &'static Gf, a: Elt, e: i64) -> Series {
        Series::normalized(f, e, vec![a], EXACT)
    }

    /// Uniformly random coefficients at exponents `[lo, prec)`, with the
    /// coefficient at `lo` forced nonzero when `exact_val` is set.
    pub fn random<R: Rng + ?Sized>(f: &'static Gf, rng: &mut R, lo: i64, prec: i64, exact_val: bool) -> Series {
        let n = (prec - lo).max(0) as usize;
        let q = f.q() as Elt;
        let mut c: Vec<Elt> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if exact_val && n > 0 {
            c[0] = rng.gen_range(1..q);
        }
        Series::normalized(f, lo, c, prec)
    }

    pub fn field(&self) -> &'static Gf {
        self.f
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Stored coefficients from the leading term on.
    pub fn coeffs(&self) -> &[Elt] {
        &self.c
    }

    /// Whether no nonzero term is known.
    pub fn is_zero_to_prec(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.c.is_empty() && self.is_exact()
    }

    pub fn is_exact_one(&self) -> bool {
        self.is_exact() && self.val == 0 && self.c == [1]
    }

    /// `Some(v)`, `None` for an exact zero, error when the series vanishes
    /// only up to its precision.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if !self.c.is_empty() {
            Ok(Some(self.val))
        } else if self.is_exact() {
            Ok(None)
        } else {
            Err(Error::Indeterminate(self.prec))
        }
    }

    /// Valuation of a series known to be nonzero.
    pub fn val(&self) -> Result<i64> {
        match self.valuation()? {
            Some(v) => Ok(v),
            None => Err(Error::NotUnit("exact zero has infinite valuation".into())),
        }
    }

    /// A guaranteed lower bound for the valuation.
    pub fn val_lower_bound(&self) -> i64 {
        if self.c.is_empty() {
            self.prec
        } else {
            self.val
        }
    }

    /// Whether `ω(self) ≥ bound` is certain.
    pub fn val_at_least(&self, bound: i64) -> bool {
        self.val_lower_bound() >= bound
    }

    /// Coefficient of `X^e`; `None` when `e ≥ prec`.
    pub fn coeff(&self, e: i64) -> Option<Elt> {
        if e >= self.prec {
            return None;
        }
        if self.c.is_empty() || e < self.val {
            return Some(0);
        }
        Some(self.c.get((e - self.val) as usize).copied().unwrap_or(0))
    }

    pub fn leading_coeff(&self) -> Option<Elt> {
        self.c.first().copied()
    }

    /// Iterate `(exponent, coefficient)` over nonzero stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Elt)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.val + i as i64, c))
    }

    pub fn truncate(&self, prec: i64) -> Series {
        Series::normalized(self.f, self.val, self.c.clone(), prec.min(self.prec))
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series {
            f: self.f,
            val: if self.c.is_empty() { 0 } else { self.val + k },
            c: self.c.clone(),
            prec: padd(self.prec, k),
        }
    }

    pub fn scale(&self, a: Elt) -> Series {
        let f = self.f;
        if a == 0 {
            return Series::zero(f, self.prec);
        }
        Series::normalized(f, self.val, self.c.iter().map(|&x| f.mul(x, a)).collect(), self.prec)
    }

    /// Apply `c_i ↦ g(i, c_i)` termwise, `g(i, 0) = 0` assumed.
    pub fn map_terms(&self, g: impl Fn(i64, Elt) -> Elt) -> Series {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, &x)| if x == 0 { 0 } else { g(self.val + i as i64, x) })
            .collect();
        Series::normalized(self.f, self.val, c, self.prec)
    }

    /// Substitute `X ↦ X^e`.
    pub fn spread(&self, e: i64) -> Series {
        let mut c = vec![0; if self.c.is_empty() { 0 } else { (self.c.len() - 1) * e as usize + 1 }];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * e as usize] = x;
        }
        let prec = if self.is_exact() { EXACT } else { self.prec * e };
        Series::normalized(self.f, self.val * e, c, prec)
    }

    fn combine(&self, other: &Series, subtract: bool) -> Series {
        let f = self.f;
        let prec = self.prec.min(other.prec);
        if other.c.is_empty() {
            return self.truncate(prec);
        }
        if self.c.is_empty() {
            let o = if subtract { other.neg() } else { other.clone() };
            return o.truncate(prec);
        }
        let lo = self.val.min(other.val);
        let hi = (self.val + self.c.len() as i64).max(other.val + other.c.len() as i64);
        let hi = if prec >= EXACT { hi } else { hi.min(prec) };
        if hi <= lo {
            return Series::zero(f, prec);
        }
        let mut c = vec![0; (hi - lo) as usize];
        for (i, &x) in self.c.iter().enumerate() {
            let e = self.val + i as i64;
            if e < hi {
                c[(e - lo) as usize] = x;
            }
        }
        for (i, &y) in other.c.iter().enumerate() {
            let e = other.val + i as i64;
            if e < hi {
                let slot = &mut c[(e - lo) as usize];
                *slot = if subtract { f.sub(*slot, y) } else { f.add(*slot, y) };
            }
        }
        Series::normalized(f, lo, c, prec)
    }

    pub fn mul_series(&self, other: &Series) -> Series {
        let f = self.f;
        let prec = padd(self.val_lower_bound(), other.prec).min(padd(other.val_lower_bound(), self.prec));
        if self.c.is_empty() || other.c.is_empty() {
            return Series::zero(f, prec);
        }
        if self.is_exact_one() {
            return other.truncate(prec);
        }
        if other.is_exact_one() {
            return self.truncate(prec);
        }
        let v = self.val + other.val;
        let full = self.c.len() + other.c.len() - 1;
        let n = if prec >= EXACT {
            full
        } else {
            ((prec - v).max(0) as usize).min(full)
        };
        let c = convolve(f, &self.c, &other.c, n);
        Series::normalized(f, v, c, prec)
    }

    /// Multiplicative inverse; keeps relative precision.
    pub fn inv(&self) -> Result<Series> {
        let f = self.f;
        let v = match self.valuation()? {
            Some(v) => v,
            None => return Err(Error::NotUnit("division by an exact zero".into())),
        };
        if self.is_exact() && self.c.len() == 1 {
            return Ok(Series::monomial(f, f.inv(self.c[0]), -v));
        }
        let rel = if self.is_exact() {
            EXACT_INVERSE_TERMS
        } else {
            self.prec - v
        };
        let n = rel as usize;
        let a = &self.c;
        let b0 = f.inv(a[0]);
        let mut b: Vec<Elt> = Vec::with_capacity(n);
        b.push(b0);
        let nb0 = f.neg(b0);
        for k in 1..n {
            let top = k.min(a.len() - 1);
            let s = dot(f, &a[1..=top], b[k - top..k].iter().rev());
            b.push(f.mul(nb0, s));
        }
        Ok(Series::normalized(f, -v, b, -v + rel))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul_series(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.f);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Entrywise comparison at the joint precision.
    pub fn compare(&self, other: &Series) -> Comparison {
        let d = self - other;
        let prec = d.prec;
        let equal = d.c.is_empty();
        if prec >= EXACT {
            return Comparison { equal, margin: EXACT };
        }
        let base = match (self.c.first(), other.c.first()) {
            (None, None) => 0,
            (Some(_), None) => self.val,
            (None, Some(_)) => other.val,
            (Some(_), Some(_)) => self.val.min(other.val),
        };
        Comparison {
            equal,
            margin: prec - base,
        }
    }

    /// Render as `c*t^k + …` with the given variable name.
    pub fn render(&self, var: &str) -> String {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.is_exact() {
            parts.push(format!("O({var}^{})", self.prec));
        }
        parts.join(" + ")
    }

    /// Parse a sparse list like `1 + 2*t^3 + 4*t^-1 + O(t^10)`.
    /// Coefficients are field element codes.
    pub fn parse(f: &'static Gf, s: &str, var: &str) -> Result<Series> {
        let bad = |m: &str| Error::Parse(format!("{m} in `{s}`"));
        let mut terms: Vec<(i64, Elt)> = Vec::new();
        let mut prec = EXACT;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut split = String::with_capacity(compact.len() + 4);
        let mut prev = ' ';
        for ch in compact.chars() {
            if ch == '-' && prev != '^' {
                split.push('+');
            }
            split.push(ch);
            prev = ch;
        }
        for raw in split.split('+').filter(|t| !t.is_empty()) {
            if let Some(rest) = raw.strip_prefix("O(") {
                let body = rest.strip_suffix(')').ok_or_else(|| bad("unclosed O("))?;
                let e = body.strip_prefix(var).ok_or_else(|| bad("bad O-term"))?;
                let e = e.strip_prefix('^').unwrap_or("1");
                let e = if e.is_empty() { "1" } else { e };
                prec = e.parse().map_err(|_| bad("bad O exponent"))?;
                continue;
            }
            let (neg, raw) = match raw.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, raw),
            };
            let (coef, mono) = match raw.split_once('*') {
                Some((c, m)) => (c.to_string(), Some(m)),
                None if raw.starts_with(var) => ("1".to_string(), Some(raw)),
                None => (raw.to_string(), None),
            };
            let c: i64 = coef.parse().map_err(|_| bad("bad coefficient"))?;
            if c < 0 || c >= f.q() as i64 {
                return Err(bad("coefficient out of range"));
            }
            let mut c = c as Elt;
            if neg {
                c = f.neg(c);
            }
            let e = match mono {
                None => 0,
                Some(m) => {
                    let rest = m.strip_prefix(var).ok_or_else(|| bad("unknown variable"))?;
                    match rest.strip_prefix('^') {
                        Some(x) => x.parse().map_err(|_| bad("bad exponent"))?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad("bad monomial")),
                    }
                }
            };
            terms.push((e, c));
        }
        let mut acc = Series::zero(f, prec);
        for (e, c) in terms {
            acc = &acc + &Series::monomial(f, c, e);
        }
        Ok(acc)
    }
}

#[inline]
fn dot<'a>(f: &Gf, a: &[Elt], b: impl Iterator<Item = &'a Elt>) -> Elt {
    if f.k() == 1 {
        let p = f.p() as u64;
        let mut s = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            s += x as u64 * y as u64;
        }
        (s % p) as Elt
    } else {
        let mut s = 0;
        for (&x, &y) in a.iter().zip(b) {
            if x != 0 && y != 0 {
                s = f.add(s, f.mul(x, y));
            }
        }
        s
    }
}

/// First `n` coefficients of the product of two coefficient lists.
fn convolve(f: &Gf, a: &[Elt], b: &[Elt], n: usize) -> Vec<Elt> {
    if f.k() == 1 {
        let p = f.p() as u64;
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if i >= n || x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        acc.into_iter().map(|s| (s % p) as Elt).collect()
    } else {
        let mut acc = vec![0; n];
        for (i, &x) in a.iter().enumerate() {
            if i >= n || x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                if y != 0 {
                    *slot = f.add(*slot, f.mul(x, y));
                }
            }
        }
        acc
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let f = self.f;
        Series {
            f,
            val: self.val,
            c: self.c.iter().map(|&x| f.neg(x)).collect(),
            prec: self.prec,
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                $body(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                $body(&self, rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Series, b: &Series| a.combine(b, false));
binop!(Sub, sub, |a: &Series, b: &Series| a.combine(b, true));
binop!(Mul, mul, |a: &Series, b: &Series| a.mul_series(b));

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.f, self.render("X"))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}
