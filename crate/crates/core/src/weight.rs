//! Weights, circulations and the incidence map between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// A rational function on the vertices whose values sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<BigRational>);

impl Weight {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        let total: BigRational = values.iter().sum();
        if !total.is_zero() {
            return Err(Error::WeightSum(total.to_string()));
        }
        Ok(Weight(values))
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(rational).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `Σ |self(i) - other(i)|`.
    pub fn l1_distance(&self, other: &Weight) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// The weight multiplied by the lcm of its denominators. Positive scaling
    /// preserves the sign of every subset sum, which is all stability needs.
    pub fn integer_scaled(&self) -> Result<Vec<i128>> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        self.0
            .iter()
            .map(|v| {
                let scaled = v.numer() * (&lcm / v.denom());
                scaled
                    .to_i128()
                    .filter(|x| x.unsigned_abs() < (1u128 << 100))
                    .ok_or_else(|| Error::capacity("weight scaling", 1u128 << 100, u128::MAX))
            })
            .collect()
    }

    /// Sum of the values over the vertex set encoded by `bits`.
    pub fn subset_sum(&self, bits: u32) -> BigRational {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, v)| v)
            .sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Serialized as a list of `[numerator, denominator]` pairs.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Option<Vec<(i64, i64)>> = self
            .0
            .iter()
            .map(|v| Some((v.numer().to_i64()?, v.denom().to_i64()?)))
            .collect();
        match pairs {
            Some(p) => p.serialize(s),
            None => Err(S::Error::custom("weight entry does not fit in i64")),
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(d)?;
        let mut values = Vec::with_capacity(pairs.len());
        for (n, den) in pairs {
            if den == 0 {
                return Err(D::Error::custom("zero denominator"));
            }
            values.push(BigRational::new(n.into(), den.into()));
        }
        Weight::new(values).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a rational as a `[numerator, denominator]` pair.
pub(crate) mod rational_pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(n), Some(d)) => (n, d).serialize(s),
            _ => Err(S::Error::custom("rational does not fit in i64")),
        }
    }
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// An integer flow on the arrows that is conserved at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Circulation(Vec<i64>);

impl Circulation {
    pub fn new(q: &Quiver, values: Vec<i64>) -> Result<Self> {
        if values.len() != q.arrow_count() {
            return Err(Error::Dimension {
                expected: q.arrow_count(),
                found: values.len(),
            });
        }
        let net = incidence_int(q, &values);
        if let Some(v) = net.iter().position(|&x| x != 0) {
            return Err(Error::Integrity(format!(
                "flow is not conserved at vertex {v}"
            )));
        }
        Ok(Circulation(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, arrow: usize) -> i64 {
        self.0[arrow]
    }
}

/// `inc(f)_i = Σ_{head = i} f(a) - Σ_{tail = i} f(a)`.
pub fn incidence(q: &Quiver, f: &[BigRational]) -> Result<Weight> {
    if f.len() != q.arrow_count() {
        return Err(Error::Dimension {
            expected: q.arrow_count(),
            found: f.len(),
        });
    }
    let mut out = vec![BigRational::zero(); q.vertex_count()];
    for (a, x) in q.arrows().iter().zip(f) {
        out[a.head] += x;
        out[a.tail] -= x;
    }
    Weight::new(out)
}

pub(crate) fn incidence_int(q: &Quiver, f: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; q.vertex_count()];
    for (a, &x) in q.arrows().iter().zip(f) {
        out[a.head] += x;
        out[a.tail] -= x;
    }
    out
}

/// `δ_Q(i) = indegree(i) - outdegree(i)`, i.e. the incidence image of the
/// all-ones arrow vector.
pub fn canonical_weight(q: &Quiver) -> Weight {
    let ones = vec![1i64; q.arrow_count()];
    Weight(incidence_int(q, &ones).into_iter().map(rational).collect())
}
