//! Torsion quantum parameters as ℚ/ℤ-valued forms on the weight lattice.
//!
//! An angle `a/b` stands for the root of unity `exp(2πi·a/b)`, so the group law
//! is addition mod 1. A parameter is one rational scale per almost-simple
//! factor, and `q(λ, μ) = Σ_H c_H (λ_H, μ_H) mod 1`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intlat::{congruence_kernel, Lattice};
use crate::rootdata::{bilinear, Root, RootDatum, Weight};
use crate::{Error, Int, Rat, Result};

/// An element of ℚ/ℤ, stored reduced in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rat);

impl Angle {
    pub fn new(r: Rat) -> Self {
        let f = r.floor();
        Angle(r - f)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(crate::rat(num, den))
    }

    pub fn zero() -> Self {
        Angle(Rat::zero())
    }

    pub fn half() -> Self {
        Self::from_frac(1, 2)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> Int {
        self.0.denom().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(&self.0 * Rat::from(k.clone()))
    }

    /// `x^k` for the root of unity, as an angle.
    pub fn times(&self, k: i64) -> Self {
        self.scale(&Int::from(k))
    }
}

impl Add for &Angle {
    type Output = Angle;
    fn add(self, o: &Angle) -> Angle {
        Angle::new(&self.0 + &o.0)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        &self + &o
    }
}

impl Sub for &Angle {
    type Output = Angle;
    fn sub(self, o: &Angle) -> Angle {
        Angle::new(&self.0 - &o.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        &self - &o
    }
}

impl Neg for &Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-&self.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        -&self
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Angle::new)
    }
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => s.parse::<Int>().map(Rat::from).map_err(|_| bad()),
    }
}

/// Parses one scale: `a/b`, `pi/l:L` (= 1/(2L)) or `2pi/l:L` (= 1/L).
pub fn parse_scale(s: &str) -> Result<Rat> {
    let s = s.trim();
    let sugar = |rest: &str, two: i64| -> Result<Rat> {
        let l: Int = rest
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad order in '{s}'")))?;
        if !l.is_positive() {
            return Err(Error::InvalidInput(format!("order must be positive in '{s}'")));
        }
        Ok(Rat::new(Int::one(), l * Int::from(two)))
    };
    if let Some(rest) = s.strip_prefix("2pi/l:") {
        sugar(rest, 1)
    } else if let Some(rest) = s.strip_prefix("pi/l:") {
        sugar(rest, 2)
    } else {
        parse_rational(s)
    }
}

/// Parses a comma-separated scale list; a single value applies to every factor.
pub fn parse_scales(s: &str, factors: usize) -> Result<Vec<Rat>> {
    let parts: Vec<Rat> = s.split(',').map(parse_scale).collect::<Result<_>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0].clone(); factors]),
        n if n == factors => Ok(parts),
        n => Err(Error::InvalidInput(format!(
            "{n} parameter values given for {factors} factors"
        ))),
    }
}

/// Torsion quantum parameter on a root datum.
#[derive(Clone, Debug)]
pub struct QParam {
    datum: RootDatum,
    scales: Vec<Rat>,
    form: Vec<Vec<Rat>>,
}

/// Parameter class predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub max_nondegenerate: bool,
    pub all_even: bool,
    pub quasi_classical: bool,
    /// An element of `rad(q, P)` outside `Q`, when one exists.
    pub witness: Option<Weight>,
}

impl QParam {
    pub fn new(datum: RootDatum, scales: Vec<Rat>) -> Result<Self> {
        if scales.len() != datum.factor_count() {
            return Err(Error::InvalidInput(format!(
                "{} scales given for {} factors",
                scales.len(),
                datum.factor_count()
            )));
        }
        let r = datum.rank();
        let fo = datum.factor_of();
        let form = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if fo[i] == fo[j] {
                            &scales[fo[i]] * &datum.killing()[i][j]
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let q = Self { datum, scales, form };
        q.check_axioms()?;
        Ok(q)
    }

    /// Same scale on every factor.
    pub fn uniform(datum: RootDatum, c: Rat) -> Result<Self> {
        let n = datum.factor_count();
        Self::new(datum, vec![c; n])
    }

    // Bilinear, so checking on basis vectors is exhaustive.
    fn check_axioms(&self) -> Result<()> {
        let r = self.rank();
        let basis: Vec<Weight> = (0..r).map(|i| self.datum.fundamental_weight(i)).collect();
        for a in &basis {
            for b in &basis {
                let v = self.eval(a, b);
                if v != self.eval(b, a) {
                    return Err(Error::Invariant("quantum form is not symmetric".into()));
                }
                if self.datum.pairing(a, b).is_zero() && !v.is_zero() {
                    return Err(Error::Invariant("quantum form nonzero on an orthogonal pair".into()));
                }
                for i in 0..r {
                    let sa = self.datum.weyl_reflect(i, a)?;
                    let sb = self.datum.weyl_reflect(i, b)?;
                    if self.eval(&sa, &sb) != v {
                        return Err(Error::Invariant(format!("quantum form not invariant under s_{i}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn scales(&self) -> &[Rat] {
        &self.scales
    }

    /// Rational Gram matrix before reduction mod 1.
    pub fn form(&self) -> &[Vec<Rat>] {
        &self.form
    }

    /// Unreduced rational value of the form.
    pub fn raw(&self, a: &[Int], b: &[Int]) -> Rat {
        bilinear(&self.form, a, b)
    }

    pub fn eval(&self, a: &[Int], b: &[Int]) -> Angle {
        Angle::new(self.raw(a, b))
    }

    /// `q_γ = c_H · d_γ`.
    pub fn q_scalar(&self, g: &Root) -> Angle {
        Angle::new(&self.scales[g.factor] * Rat::from(g.d.clone()))
    }

    /// `q_α` for the simple root `α_i`.
    pub fn simple_scalar(&self, i: usize) -> Angle {
        let f = self.datum.factor_of()[i];
        Angle::new(&self.scales[f] * Rat::from(self.datum.symmetrizers()[i].clone()))
    }

    /// `l_γ = ord q(γ, γ)`, checked against the order of `q²(γ, −)` on `P`.
    pub fn l_of(&self, g: &Root) -> Result<Int> {
        let direct = self.eval(&g.weight, &g.weight).order();
        let character = self.character_order(&g.weight);
        if direct != character {
            return Err(Error::Invariant(format!(
                "ord q(γ,γ) = {direct} but ord q²(γ,−) = {character}"
            )));
        }
        Ok(direct)
    }

    fn character_order(&self, g: &[Int]) -> Int {
        let two = Int::from(2);
        (0..self.rank()).fold(Int::one(), |acc, j| {
            let w = self.datum.fundamental_weight(j);
            acc.lcm(&self.eval(g, &w).scale(&two).order())
        })
    }

    /// `l_α` for each simple root.
    pub fn simple_orders(&self) -> Result<Vec<Int>> {
        (0..self.rank()).map(|i| self.l_simple(i)).collect()
    }

    pub fn l_simple(&self, i: usize) -> Result<Int> {
        let a = self.datum.simple_root(i);
        let direct = self.eval(a, a).order();
        let character = self.character_order(a);
        if direct != character {
            return Err(Error::Invariant(format!(
                "ord q(α,α) = {direct} but ord q²(α,−) = {character} at simple root {i}"
            )));
        }
        Ok(direct)
    }

    /// `l_γ` for every positive root, in enumeration order.
    pub fn root_orders(&self) -> Result<Vec<Int>> {
        self.datum.positive_roots().iter().map(|g| self.l_of(g)).collect()
    }

    /// `{λ ∈ ambient : q(λ, μ) = 0 for all μ ∈ ambient}`.
    pub fn rad(&self, ambient: &Lattice) -> Lattice {
        let funcs: Vec<Vec<Rat>> = ambient
            .basis()
            .iter()
            .map(|b| self.functional(b, &Rat::one()))
            .collect();
        integral_kernel(ambient, &funcs)
    }

    /// Coefficient vector of `λ ↦ k·q(λ, b)` before reduction.
    pub(crate) fn functional(&self, b: &[Int], k: &Rat) -> Vec<Rat> {
        (0..self.rank())
            .map(|i| {
                let s: Rat = b
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(j, y)| &self.form[i][j] * Rat::from(y.clone()))
                    .sum();
                s * k
            })
            .collect()
    }

    pub fn classify(&self) -> Result<Classification> {
        let p = self.datum.weight_lattice();
        let rad = self.rad(&p);
        let q = self.datum.root_lattice();
        let witness = rad.basis().iter().find(|v| !q.contains(v)).cloned();
        let two = Int::from(2);
        let all_even = (0..self.rank()).all(|i| self.simple_scalar(i).order().is_multiple_of(&two));
        let quasi_classical = self.simple_orders()?.iter().all(|l| l.is_one());
        Ok(Classification {
            max_nondegenerate: witness.is_none(),
            all_even,
            quasi_classical,
            witness,
        })
    }
}

/// `{λ ∈ L : f(λ) ∈ ℤ for every rational functional f}`.
pub fn integral_kernel(ambient: &Lattice, funcs: &[Vec<Rat>]) -> Lattice {
    let rows: Vec<(Vec<Int>, Int)> = funcs
        .iter()
        .map(|f| {
            // restrict to ambient coordinates, then clear denominators
            let g: Vec<Rat> = ambient
                .basis()
                .iter()
                .map(|b| {
                    b.iter()
                        .zip(f)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, c)| c * Rat::from(x.clone()))
                        .sum()
                })
                .collect();
            let den = g.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            let coeffs = g.iter().map(|x| (x * Rat::from(den.clone())).to_integer()).collect();
            (coeffs, den)
        })
        .collect();
    let coords = congruence_kernel(ambient.rank(), &rows);
    ambient.from_coordinates(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ivec, rat};

    fn q(t: &str, c: Rat) -> QParam {
        QParam::uniform(RootDatum::simply_connected(t.parse().unwrap()).unwrap(), c).unwrap()
    }

    #[test]
    fn angle_normal_form() {
        assert_eq!(Angle::from_frac(-1, 6).to_string(), "5/6");
        assert_eq!(Angle::from_frac(4, 2).to_string(), "0/1");
        assert_eq!(Angle::from_frac(3, 4).order(), int(4));
        assert_eq!((Angle::from_frac(1, 2) + Angle::from_frac(1, 2)), Angle::zero());
    }

    #[test]
    fn scale_sugar() {
        assert_eq!(parse_scale("pi/l:3").unwrap(), rat(1, 6));
        assert_eq!(parse_scale("2pi/l:3").unwrap(), rat(1, 3));
        assert_eq!(parse_scales("1/6", 2).unwrap(), vec![rat(1, 6), rat(1, 6)]);
        assert!(parse_scales("1/6,1/4,1/2", 2).is_err());
        assert!(parse_scale("1/0").is_err());
    }

    #[test]
    fn a1_values() {
        let p = q("A1", rat(1, 4));
        let a = p.datum().simple_root(0).clone();
        assert_eq!(p.eval(&a, &a), Angle::half());
        assert_eq!(p.eval(&a, &ivec(&[0])), Angle::zero());
        let g = &p.datum().positive_roots()[0];
        assert_eq!(p.l_of(g).unwrap(), int(2));
        assert_eq!(p.q_scalar(g), Angle::from_frac(1, 4));
        let rad = p.rad(&p.datum().weight_lattice());
        assert_eq!(rad.basis(), &vec![ivec(&[8])]);
        let c = p.classify().unwrap();
        assert!(c.max_nondegenerate && c.all_even && !c.quasi_classical);

        let p = q("A1", rat(1, 3));
        let g = &p.datum().positive_roots()[0];
        assert_eq!(p.l_of(g).unwrap(), int(3));
        assert_eq!(p.q_scalar(g), Angle::from_frac(1, 3));
        assert_eq!(p.rad(&p.datum().weight_lattice()).basis(), &vec![ivec(&[6])]);
        let c = p.classify().unwrap();
        assert!(c.max_nondegenerate && !c.all_even && !c.quasi_classical);

        let p = q("A1", rat(1, 2));
        assert_eq!(p.l_of(&p.datum().positive_roots()[0]).unwrap(), int(1));
        assert!(p.classify().unwrap().quasi_classical);
    }

    #[test]
    fn a2_off_diagonal() {
        let p = q("A2", rat(1, 6));
        let a = p.datum().simple_root(0).clone();
        let b = p.datum().simple_root(1).clone();
        assert_eq!(p.eval(&a, &b), Angle::from_frac(5, 6));
    }

    #[test]
    fn c2_long_scalar() {
        let l = 5;
        let p = q("C2", rat(1, 2 * l));
        assert_eq!(p.simple_scalar(1), Angle::from_frac(1, l));
    }

    #[test]
    fn zero_parameter_radical_is_ambient() {
        let p = q("B2", Rat::zero());
        let x = p.datum().char_lattice().clone();
        assert_eq!(p.rad(&x), x);
    }

    #[test]
    fn per_factor_scales() {
        let rd = RootDatum::simply_connected("A1xA1".parse().unwrap()).unwrap();
        let p = QParam::new(rd, vec![rat(1, 4), rat(1, 3)]).unwrap();
        let o = p.simple_orders().unwrap();
        assert_eq!(o, vec![int(2), int(3)]);
        let a = p.datum().simple_root(0).clone();
        let b = p.datum().simple_root(1).clone();
        assert!(p.eval(&a, &b).is_zero());
    }
}
