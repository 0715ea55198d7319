//! Finite fields `𝔽_q`, `q = p^k`, `k ≤ 3`, by lookup tables.
//!
//! An element is encoded as the integer `Σ d_i p^i` of its digit vector over
//! the polynomial basis `1, X, …, X^{k−1}`, reduced modulo the least monic
//! irreducible polynomial of degree `k` (ordered by that same encoding).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

pub type Elt = u16;

pub const MAX_Q: u32 = 1024;

pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Elt>,
    sub: Vec<Elt>,
    mul: Vec<Elt>,
    inv: Vec<Elt>,
    frob: Vec<Elt>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut x = x;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Least monic irreducible of degree `k ≤ 3`: for these degrees,
/// irreducible ⟺ no root in `𝔽_p`.  Returns `c_0..c_{k−1}, 1`.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    for code in 0..p.pow(k) {
        let mut poly = digits(code, p, k);
        poly.push(1);
        let has_root = (0..p).any(|x| {
            poly.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) == 0
        });
        if !has_root {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of each degree exists")
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate().take(k) {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m % p) % p;
            }
            prod[deg] = 0;
        }
    }
    prod.truncate(k);
    prod
}

impl Gf {
    fn construct(p: u32, k: u32) -> Gf {
        let q = p.pow(k);
        let modulus = least_irreducible(p, k);
        let n = q as usize;
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        let mut add = vec![0; n * n];
        let mut sub = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = ds[a].iter().zip(&ds[b]).map(|(x, y)| (x + y) % p).collect();
                let d: Vec<u32> = ds[a].iter().zip(&ds[b]).map(|(x, y)| (x + p - y) % p).collect();
                add[a * n + b] = undigits(&s, p) as Elt;
                sub[a * n + b] = undigits(&d, p) as Elt;
                mul[a * n + b] = undigits(&poly_mul_mod(&ds[a], &ds[b], &modulus, p), p) as Elt;
            }
        }
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as Elt;
        }
        let mut frob = vec![0; n];
        for (a, slot) in frob.iter_mut().enumerate() {
            let mut x: Elt = 1;
            for _ in 0..p {
                x = mul[a * n + x as usize];
            }
            *slot = x;
        }
        Gf {
            p,
            k,
            q,
            modulus,
            add,
            sub,
            mul,
            inv,
            frob,
        }
    }

    /// The field with `p^k` elements.  Fields are built once per process
    /// and shared.
    pub fn get(p: u32, k: u32) -> Result<&'static Gf> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::Hypothesis("residue characteristic 2 is excluded".into()));
        }
        if !(1..=3).contains(&k) {
            return Err(Error::Unsupported(format!("residue degree {k} (only 1..=3)")));
        }
        if p.checked_pow(k).is_none_or(|q| q > MAX_Q) {
            return Err(Error::Unsupported(format!("{p}^{k} exceeds the table limit {MAX_Q}")));
        }
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), &'static Gf>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        Ok(*guard
            .entry((p, k))
            .or_insert_with(|| Box::leak(Box::new(Gf::construct(p, k)))))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0, …, c_{k−1}, 1` of the defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    fn ix(&self, a: Elt, b: Elt) -> usize {
        a as usize * self.q as usize + b as usize
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[self.ix(a, b)]
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.sub[self.ix(a, b)]
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[self.ix(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.sub[self.ix(0, a)]
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// `x ↦ x^p`.
    #[inline]
    pub fn frob(&self, a: Elt) -> Elt {
        self.frob[a as usize]
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elt {
        n.rem_euclid(self.p as i64) as Elt
    }

    /// The class of `X`, a generator of `𝔽_q` over `𝔽_p` (`k > 1`).
    pub fn gen(&self) -> Elt {
        if self.k == 1 {
            1
        } else {
            self.p as Elt
        }
    }

    /// A primitive cube root of unity, if `3 | q − 1`.
    pub fn cube_root_of_unity(&self) -> Option<Elt> {
        (2..self.q as Elt).find(|&x| self.pow(x, 3) == 1)
    }

    pub fn is_in_prime_field(&self, a: Elt) -> bool {
        (a as u32) < self.p
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}
