use crate::error::{pre, Result};
use crate::local_field::{Comparison, Series, EXACT};

/// Small square matrix over a series field.
#[derive(Clone, Debug)]
pub struct Mat {
    n: usize,
    e: Vec<Series>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<Series>>) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat {
            n,
            e: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(one: &Series, n: usize) -> Mat {
        let zero = Series::exact_zero(one.field());
        let e = (0..n * n)
            .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
            .collect();
        Mat { n, e }
    }

    pub fn diag(d: Vec<Series>) -> Mat {
        let n = d.len();
        let mut m = Mat::identity(&d[0], n);
        for (i, x) in d.into_iter().enumerate() {
            m.e[i * n + i] = x;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let zero = Series::exact_zero(self.e[0].field());
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = zero.clone();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_exact_zero() || b.is_exact_zero() {
                        continue;
                    }
                    s = &s + &(a * b);
                }
                e.push(s);
            }
        }
        Mat { n, e }
    }

    fn minor(&self, i: usize, j: usize) -> Mat {
        let n = self.n;
        let e = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        Mat { n: n - 1, e }
    }

    pub fn det(&self) -> Series {
        match self.n {
            1 => self.e[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            _ => {
                let mut s = Series::exact_zero(self.e[0].field());
                for j in 0..self.n {
                    let t = self.get(0, j) * &self.minor(0, j).det();
                    s = if j % 2 == 0 { &s + &t } else { &s - &t };
                }
                s
            }
        }
    }

    /// Adjugate over the determinant.
    pub fn inverse(&self) -> Result<Mat> {
        let d = self.det().inv()?;
        if self.n == 1 {
            return Ok(Mat { n: 1, e: vec![d] });
        }
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = &self.minor(j, i).det() * &d;
                e.push(if (i + j) % 2 == 0 { c } else { -&c });
            }
        }
        Ok(Mat { n, e })
    }

    pub fn map(&self, g: impl Fn(&Series) -> Series) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(g).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        Mat {
            n,
            e: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    /// Entrywise comparison; the margin is the smallest over entries.
    pub fn compare(&self, o: &Mat) -> Comparison {
        assert_eq!(self.n, o.n);
        let mut out = Comparison {
            equal: true,
            margin: EXACT,
        };
        for (a, b) in self.e.iter().zip(&o.e) {
            let c = a.compare(b);
            out.equal &= c.equal;
            out.margin = out.margin.min(c.margin);
        }
        out
    }

    /// Factors `L·D·U` with `L` lower and `U` upper unitriangular, for
    /// matrices whose leading principal minors are units.
    pub fn ldu(&self) -> Result<(Mat, Vec<Series>, Mat)> {
        let n = self.n;
        let f = self.e[0].field();
        let one = Series::one(f);
        let mut a = self.clone();
        let mut l = Mat::identity(&one, n);
        let mut d = Vec::with_capacity(n);
        for k in 0..n {
            let piv = a.get(k, k).clone();
            if piv.is_zero_to_prec() {
                return pre("LDU needs nonzero leading minors");
            }
            let inv = piv.inv()?;
            for i in k + 1..n {
                let c = a.get(i, k) * &inv;
                for j in k..n {
                    let v = a.get(i, j) - &(&c * a.get(k, j));
                    a.e[i * n + j] = v;
                }
                l.e[i * n + k] = c;
            }
            d.push(piv);
        }
        let mut u = Mat::identity(&one, n);
        for i in 0..n {
            let inv = d[i].inv()?;
            for j in i + 1..n {
                u.e[i * n + j] = a.get(i, j) * &inv;
            }
        }
        Ok((l, d, u))
    }
}

/// `g h g⁻¹ h⁻¹`.
pub fn commutator(g: &Mat, h: &Mat) -> Result<Mat> {
    Ok(g.mul(h).mul(&g.inverse()?).mul(&h.inverse()?))
}
