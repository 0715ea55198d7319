//! Brute-force coset counts of truncated root-group quotients over 𝔽₃,
//! with arithmetic written out from scratch.

use std::collections::HashMap;

const PREC: usize = 4;

/// `a + b·i` in 𝔽₉ = 𝔽₃[i]/(i² + 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
struct F9(u8, u8);

impl F9 {
    const ONE: F9 = F9(1, 0);
    const I: F9 = F9(0, 1);

    fn add(self, o: F9) -> F9 {
        F9((self.0 + o.0) % 3, (self.1 + o.1) % 3)
    }

    fn mul(self, o: F9) -> F9 {
        let re = (self.0 * o.0 + 2 * self.1 * o.1) % 3;
        let im = (self.0 * o.1 + self.1 * o.0) % 3;
        F9(re, im)
    }

    fn scale(self, k: u8) -> F9 {
        F9(self.0 * k % 3, self.1 * k % 3)
    }

    fn conj(self) -> F9 {
        F9(self.0, (3 - self.1) % 3)
    }
}

type Ser = [F9; PREC];

fn s_add(a: &Ser, b: &Ser) -> Ser {
    std::array::from_fn(|k| a[k].add(b[k]))
}

fn s_mul(a: &Ser, b: &Ser) -> Ser {
    let mut out = [F9::default(); PREC];
    for i in 0..PREC {
        for j in 0..PREC - i {
            out[i + j] = out[i + j].add(a[i].mul(b[j]));
        }
    }
    out
}

/// Truncated `L` with its involution: `𝔽₉[[t]]`, `τ` acting on
/// coefficients, or `𝔽₃[[s]]` with `τs = −s`.
#[derive(Clone, Copy)]
struct Ext {
    ramified: bool,
}

impl Ext {
    fn tau(&self, a: &Ser) -> Ser {
        std::array::from_fn(|k| {
            let c = a[k].conj();
            if self.ramified && k % 2 == 1 {
                c.scale(2)
            } else {
                c
            }
        })
    }

    fn coefficients(&self) -> Vec<F9> {
        if self.ramified {
            (0..3).map(|a| F9(a, 0)).collect()
        } else {
            (0..9).map(|k| F9(k / 3, k % 3)).collect()
        }
    }

    /// Basis of the trace-zero elements with valuation at least `lo`.
    fn trace_zero_basis(&self, lo: usize) -> Vec<Ser> {
        (lo..PREC)
            .filter(|&k| !self.ramified || k % 2 == 1)
            .map(|k| {
                let mut x = [F9::default(); PREC];
                x[k] = if self.ramified { F9::ONE } else { F9::I };
                x
            })
            .collect()
    }

    /// `½ uτu`
    fn half_norm(&self, u: &Ser) -> Ser {
        // ½ = 2 in 𝔽₃
        s_mul(u, &self.tau(u)).map(|c| c.scale(2))
    }

    /// All truncated series with valuation at least `lo`.
    fn series(&self, lo: usize) -> Vec<Ser> {
        let cs = self.coefficients();
        let mut out = vec![[F9::default(); PREC]];
        for k in lo..PREC {
            out = out
                .into_iter()
                .flat_map(|x| {
                    cs.iter().map(move |&c| {
                        let mut y = x;
                        y[k] = c;
                        y
                    })
                })
                .collect();
        }
        out
    }

    /// `(u, v)·(u′, v′) = (u + u′, v + v′ + τu·u′)`.
    fn h_mul(&self, a: &(Ser, Ser), b: &(Ser, Ser)) -> (Ser, Ser) {
        (s_add(&a.0, &b.0), s_add(&s_add(&a.1, &b.1), &s_mul(&self.tau(&a.0), &b.0)))
    }

    fn in_h(&self, x: &(Ser, Ser)) -> bool {
        s_mul(&x.0, &self.tau(&x.0)) == s_add(&x.1, &self.tau(&x.1))
    }

    /// Points `(u, v)` of `H` with `ω(u) ≥ lo_u` and `ω(v) ≥ lo_v`.
    fn points(&self, lo_u: usize, lo_v: usize) -> Vec<(Ser, Ser)> {
        let tz = self.series(lo_v).into_iter().filter(|w| s_add(w, &self.tau(w)) == [F9::default(); PREC]);
        let tz: Vec<Ser> = tz.collect();
        let mut out = Vec::new();
        for u in self.series(lo_u) {
            let h = self.half_norm(&u);
            for w in &tz {
                out.push((u, s_add(&h, w)));
            }
        }
        out
    }
}

pub struct Cosets {
    pub points: usize,
    pub cosets: usize,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Orbits of right multiplication by `gens` on `points`.
fn orbits<T: Eq + std::hash::Hash + Clone>(points: &[T], gens: &[T], mul: impl Fn(&T, &T) -> T) -> usize {
    let index: HashMap<&T, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    for (i, x) in points.iter().enumerate() {
        for g in gens {
            let j = *index.get(&mul(x, g)).expect("subgroup does not preserve the group");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..points.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// `𝒪_K/𝔭⁴` modulo `𝔭/𝔭⁴`.
pub fn non_multipliable() -> Cosets {
    let ext = Ext { ramified: true };
    let pts = ext.series(0);
    let gens: Vec<Ser> = (1..PREC)
        .map(|k| {
            let mut x = [F9::default(); PREC];
            x[k] = F9::ONE;
            x
        })
        .collect();
    Cosets {
        points: pts.len(),
        cosets: orbits(&pts, &gens, s_add),
    }
}

/// `U_{a,l}/U_{a,l+}` in `H(L, L₂)` truncated at precision 4: `l = 0`
/// unramified, `l = ½` ramified, where the next level is `½`, resp. `1`.
pub fn multipliable(ramified: bool) -> Cosets {
    let ext = Ext { ramified };
    let (lo_v, next_v): (usize, usize) = if ramified { (1, 2) } else { (0, 1) };
    // 2ω(u) ≥ ω(v) on H
    let lo_u = lo_v.div_ceil(2);
    let next_u = next_v.div_ceil(2);
    let pts = ext.points(lo_u, lo_v);
    assert!(pts.iter().all(|x| ext.in_h(x)));
    let mut gens: Vec<(Ser, Ser)> = Vec::new();
    for k in next_u..PREC {
        for c in ext.coefficients().into_iter().filter(|&c| c != F9::default()) {
            let mut u = [F9::default(); PREC];
            u[k] = c;
            let v = ext.half_norm(&u);
            if v.iter().take(next_v).all(|&c| c == F9::default()) {
                gens.push((u, v));
            }
        }
    }
    for w in ext.trace_zero_basis(next_v) {
        gens.push(([F9::default(); PREC], w));
    }
    Cosets {
        points: pts.len(),
        cosets: orbits(&pts, &gens, |a, b| ext.h_mul(a, b)),
    }
}
