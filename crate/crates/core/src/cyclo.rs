//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)` and balanced quantum
//! integers, factorials and binomials.
//!
//! Elements are residues modulo the cyclotomic polynomial `Φ_N`, so equality
//! is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qparam::Angle;
use crate::{Error, Int, Rat, Result};

fn cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Int>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Int>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_N` with coefficients in ascending degree.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<Int>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![Int::zero(); n + 1];
    p[0] = -Int::one();
    p[n] = Int::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div_monic(&p, &cyclotomic_poly(d));
    }
    let p = Arc::new(p);
    cache().lock().expect("cyclotomic cache poisoned").insert(n, p.clone());
    p
}

fn exact_div_monic(a: &[Int], b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![Int::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division by Φ_d left a remainder");
    quot
}

pub fn euler_phi(n: usize) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// An element of `ℚ(ζ_N)`, stored as integer coefficients over a positive
/// common denominator in lowest terms.
#[derive(Clone)]
pub struct CycloNum {
    conductor: usize,
    modulus: Arc<Vec<Int>>,
    nums: Vec<Int>,
    den: Int,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.den == other.den && self.nums == other.nums
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({} in Q(z{}))", self, self.conductor)
    }
}

impl CycloNum {
    pub fn zero(conductor: usize) -> Self {
        let modulus = cyclotomic_poly(conductor);
        let nums = vec![Int::zero(); modulus.len() - 1];
        Self { conductor, modulus, nums, den: Int::one() }
    }

    pub fn from_rat(conductor: usize, r: Rat) -> Self {
        let mut z = Self::zero(conductor);
        z.nums[0] = r.numer().clone();
        z.den = r.denom().clone();
        z
    }

    pub fn from_int(conductor: usize, k: i64) -> Self {
        Self::from_rat(conductor, Rat::from(Int::from(k)))
    }

    pub fn one(conductor: usize) -> Self {
        Self::from_int(conductor, 1)
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(conductor: usize, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut raw = vec![Int::zero(); e + 1];
        raw[e] = Int::one();
        Self::reduce(conductor, raw, Int::one())
    }

    /// `exp(2πi·a)` in `ℚ(ζ_N)`; needs `den(a) | N`.
    pub fn root_of_unity(a: &Angle, conductor: usize) -> Result<Self> {
        let n = Int::from(conductor);
        if !n.is_multiple_of(a.denom()) {
            return Err(Error::InvalidInput(format!(
                "angle {a} is not a power of ζ_{conductor}"
            )));
        }
        let k = (a.numer() * (&n / a.denom())).to_i64().expect("exponent fits in i64");
        Ok(Self::zeta_pow(conductor, k))
    }

    fn reduce(conductor: usize, mut raw: Vec<Int>, den: Int) -> Self {
        let modulus = cyclotomic_poly(conductor);
        let d = modulus.len() - 1;
        for k in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus.iter().enumerate().take(d) {
                if !m.is_zero() {
                    raw[k - d + i] -= &c * m;
                }
            }
        }
        raw.resize(d, Int::zero());
        let mut out = Self { conductor, modulus, nums: raw, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.nums.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = self.nums.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            self.nums.iter_mut().for_each(|c| *c /= &g);
        }
        if self.is_zero() {
            self.den = Int::one();
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Coefficients on `1, ζ, …, ζ^{φ(N)−1}`.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.nums.iter().map(|c| Rat::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.conductor)
    }

    /// Rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.nums[1..].iter().all(Zero::is_zero) {
            Some(Rat::new(self.nums[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "mixed conductors; lift first");
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`, `gcd(k, N) = 1`.
    fn conjugate(&self, k: usize) -> Self {
        let n = self.conductor;
        let mut raw = vec![Int::zero(); n];
        for (i, c) in self.nums.iter().enumerate() {
            if !c.is_zero() {
                raw[(i * k) % n] += c;
            }
        }
        Self::reduce(n, raw, self.den.clone())
    }

    /// Multiplicative inverse: the product of the other Galois conjugates
    /// divided by the norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible("zero has no inverse".into()));
        }
        let n = self.conductor;
        let mut others = Self::one(n);
        for k in (2..n).filter(|k| k.gcd(&n) == 1) {
            others = &others * &self.conjugate(k);
        }
        let norm = (self * &others)
            .as_rational()
            .expect("the norm of a cyclotomic number is rational");
        let mut out = others;
        out.nums.iter_mut().for_each(|c| *c *= norm.denom());
        out.den *= norm.numer();
        out.normalize();
        Ok(out)
    }

    /// Embeds into `ℚ(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, m: usize) -> Result<Self> {
        if !m.is_multiple_of(self.conductor) {
            return Err(Error::InvalidInput(format!(
                "{m} is not a multiple of the conductor {}",
                self.conductor
            )));
        }
        let step = m / self.conductor;
        let mut raw = vec![Int::zero(); step * self.nums.len().max(1)];
        for (k, c) in self.nums.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Ok(Self::reduce(m, raw, self.den.clone()))
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        self.check(o);
        let den = self.den.lcm(&o.den);
        let (a, b) = (&den / &self.den, &den / &o.den);
        let nums = self
            .nums
            .iter()
            .zip(&o.nums)
            .map(|(x, y)| if sign { x * &a + y * &b } else { x * &a - y * &b })
            .collect();
        let mut out = CycloNum { conductor: self.conductor, modulus: self.modulus.clone(), nums, den };
        out.normalize();
        out
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.combine(o, true)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.combine(o, false)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let nums = self.nums.iter().map(|a| -a).collect();
        CycloNum { conductor: self.conductor, modulus: self.modulus.clone(), nums, den: self.den.clone() }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        let mut raw = vec![Int::zero(); (self.nums.len() * 2).saturating_sub(1).max(1)];
        for (i, a) in self.nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.nums.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CycloNum::reduce(self.conductor, raw, &self.den * &o.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    /// Written in `z = ζ_N`, highest power first, e.g. `-2*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{k}"),
                (_, false) => format!("{mag}*z^{k}"),
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Balanced quantum integer `[n]_v = v^{n−1} + v^{n−3} + … + v^{1−n}`, `[−n] = −[n]`.
pub fn qint(n: i64, v: &CycloNum) -> Result<CycloNum> {
    if n < 0 {
        return Ok(-&qint(-n, v)?);
    }
    if n == 0 {
        return Ok(CycloNum::zero(v.conductor()));
    }
    qint_with_inverse(n, v, &v.inverse()?)
}

/// `[n]_v` for `n ≥ 0` given `v⁻¹`.
pub(crate) fn qint_with_inverse(n: i64, v: &CycloNum, inv: &CycloNum) -> Result<CycloNum> {
    let mut acc = CycloNum::zero(v.conductor());
    if n <= 0 {
        return Ok(acc);
    }
    let v2 = v * v;
    let mut term = inv.pow(n - 1)?;
    for _ in 0..n {
        acc = &acc + &term;
        term = &term * &v2;
    }
    Ok(acc)
}

/// `[n]_v! = [1]_v ⋯ [n]_v`.
pub fn qfact(n: u32, v: &CycloNum) -> Result<CycloNum> {
    let mut acc = CycloNum::one(v.conductor());
    for k in 1..=i64::from(n) {
        acc = &acc * &qint(k, v)?;
    }
    Ok(acc)
}

/// Gaussian binomial by the Pascal rule
/// `[m, n] = v^{−n}[m−1, n] + v^{m−n}[m−1, n−1]`, never dividing.
/// Negative tops use `[−m, n] = (−1)^n [m+n−1, n]`.
pub fn qbinom(m: i64, n: u32, v: &CycloNum) -> Result<CycloNum> {
    let c = v.conductor();
    if m < 0 {
        let b = qbinom(-m + i64::from(n) - 1, n, v)?;
        return Ok(if n % 2 == 1 { -&b } else { b });
    }
    let n = i64::from(n);
    if n > m {
        return Ok(CycloNum::zero(c));
    }
    // powers v^e for e in -m..=m
    let inv = v.inverse()?;
    let mut pos = vec![CycloNum::one(c)];
    let mut neg = vec![CycloNum::one(c)];
    for _ in 0..m {
        pos.push(pos.last().expect("nonempty") * v);
        neg.push(neg.last().expect("nonempty") * &inv);
    }
    // row[k] = [row_index, k]
    let mut row = vec![CycloNum::one(c)];
    for top in 1..=m {
        let mut next = Vec::with_capacity(row.len() + 1);
        for k in 0..=top.min(n) {
            let keep = (k < top).then(|| &neg[k as usize] * &row[k as usize]);
            let shift = (k > 0).then(|| &pos[(top - k) as usize] * &row[(k - 1) as usize]);
            next.push(match (keep, shift) {
                (Some(a), Some(b)) => &a + &b,
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => CycloNum::zero(c),
            });
        }
        row = next;
    }
    Ok(row[n as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ivec, rat};

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), ivec(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(4), ivec(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(12), ivec(&[1, 0, -1, 0, 1]));
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn roots_of_unity() {
        assert!(CycloNum::root_of_unity(&Angle::zero(), 4).unwrap().is_one());
        let m1 = CycloNum::root_of_unity(&Angle::half(), 4).unwrap();
        assert_eq!(m1, CycloNum::from_int(4, -1));
        let i = CycloNum::root_of_unity(&Angle::from_frac(1, 4), 4).unwrap();
        assert_eq!(&i * &i, m1);
        assert!(CycloNum::root_of_unity(&Angle::from_frac(1, 3), 4).is_err());
    }

    #[test]
    fn quantum_two_vanishes_at_i() {
        let i = CycloNum::zeta_pow(4, 1);
        assert!(qint(2, &i).unwrap().is_zero());
        assert!(qfact(2, &i).unwrap().is_zero());
    }

    #[test]
    fn classical_limits() {
        let one = CycloNum::one(1);
        assert_eq!(qbinom(4, 2, &one).unwrap().as_rational(), Some(rat(6, 1)));
        let m1 = CycloNum::from_int(2, -1);
        for m in 0..=10i64 {
            let sign = if (m + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(qbinom(m, 1, &m1).unwrap().as_rational(), Some(Rat::from(int(sign * m))));
        }
    }

    #[test]
    fn inverse_and_lift() {
        let z = CycloNum::zeta_pow(12, 5);
        let x = &z + &CycloNum::from_int(12, 3);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycloNum::zero(5).inverse().is_err());
        let l = z.lift(24).unwrap();
        assert_eq!(l, CycloNum::zeta_pow(24, 10));
    }

    #[test]
    fn display() {
        let x = CycloNum::zeta_pow(4, 1);
        let y = &x * &CycloNum::from_int(4, -2);
        assert_eq!(y.to_string(), "-2*z");
        assert_eq!(CycloNum::zero(3).to_string(), "0");
    }
}
