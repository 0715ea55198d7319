//! Exact rationals used for levels, apartment coordinates and values of
//! the functions `f_Ω`.  Levels live in `½ℤ`; apartment coordinates can be
//! finer (vertices of alcoves sit at `1/m`).

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn half(n: i64) -> Q {
    Q::new(n, 2)
}

pub fn is_half_integer(x: Q) -> bool {
    2 % *x.denom() == 0
}

/// Least integer `≥ x`.
pub fn ceil(x: Q) -> i64 {
    Integer::div_ceil(x.numer(), x.denom())
}

pub fn floor(x: Q) -> i64 {
    Integer::div_floor(x.numer(), x.denom())
}

/// Wire form of a rational: `{num, den}` with `den > 0` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl From<Q> for Frac {
    fn from(x: Q) -> Self {
        Frac {
            num: *x.numer(),
            den: *x.denom(),
        }
    }
}

impl From<Frac> for Q {
    fn from(f: Frac) -> Self {
        Q::new(f.num, f.den)
    }
}

pub mod serde_q {
    use super::{Frac, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        Frac::from(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let f = Frac::deserialize(d)?;
        if f.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(f.into())
    }
}

pub mod serde_q_vec {
    use super::{Frac, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Frac> = xs.iter().map(|x| Frac::from(*x)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<Frac>::deserialize(d)?;
        if v.iter().any(|f| f.den == 0) {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(v.into_iter().map(Q::from).collect())
    }
}

pub mod serde_q_rows {
    use super::{Frac, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Vec<Frac>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let w = Vec::<Vec<Frac>>::deserialize(d)?;
        if w.iter().flatten().any(|f| f.den == 0) {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(w.into_iter().map(|r| r.into_iter().map(Q::from).collect()).collect())
    }
}

pub mod serde_q_opt {
    use super::{Frac, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        x.map(Frac::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let f = Option::<Frac>::deserialize(d)?;
        match f {
            Some(f) if f.den == 0 => Err(serde::de::Error::custom("zero denominator")),
            other => Ok(other.map(Q::from)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(ceil(qf(7, 2)), 4);
        assert_eq!(ceil(qf(-7, 2)), -3);
        assert_eq!(floor(qf(-7, 2)), -4);
        assert_eq!(ceil(q(3)), 3);
    }

    #[test]
    fn half_integers() {
        assert!(is_half_integer(half(3)));
        assert!(is_half_integer(q(-2)));
        assert!(!is_half_integer(qf(1, 4)));
    }

    #[test]
    fn wire_round_trip() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct W {
            #[serde(with = "serde_q")]
            x: Q,
        }
        let w = W { x: qf(-3, 2) };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"x":{"num":-3,"den":2}}"#);
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), w);
    }
}
