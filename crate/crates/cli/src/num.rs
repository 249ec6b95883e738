//! JSON encodings for exact values: integers as bare JSON numbers of any
//! size, rationals and angles as `"a/b"` strings.

use qfiber::intlat::Lattice;
use qfiber::qparam::Angle;
use qfiber::{Int, Rat};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer written as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub Int);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse().map(Num).map_err(|_| D::Error::custom(format!("{n} is not an integer")))
    }
}

impl From<&Int> for Num {
    fn from(v: &Int) -> Self {
        Num(v.clone())
    }
}

impl From<Int> for Num {
    fn from(v: Int) -> Self {
        Num(v)
    }
}

impl From<usize> for Num {
    fn from(v: usize) -> Self {
        Num(Int::from(v))
    }
}

pub fn nums(v: &[Int]) -> Vec<Num> {
    v.iter().map(Num::from).collect()
}

pub fn matrix(m: &[Vec<Int>]) -> Vec<Vec<Num>> {
    m.iter().map(|r| nums(r)).collect()
}

/// HNF generator rows.
pub fn lattice(l: &Lattice) -> Vec<Vec<Num>> {
    matrix(l.basis())
}

pub fn angle(a: &Angle) -> String {
    a.to_string()
}

pub fn angles(v: &[Angle]) -> Vec<String> {
    v.iter().map(angle).collect()
}

/// `a/b`, with denominator 1 written out.
pub fn fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
