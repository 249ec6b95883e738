//! Named instances with known answers. Each preset states claims about its
//! own report; a claim that fails makes the run exit with status 2.

use num_integer::Integer;
use num_traits::One;
use qfiber::intlat::det;
use qfiber::rootdata::{DynkinType, Weight};
use qfiber::{Error, Int, Result};

use crate::input::{Instance, LatticeChoice};
use crate::num::nums;
use crate::report::{Analysis, Claim, PresetOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// `SL(2n)` at `c = 1/(2l)`.
    Sl2nEven,
    /// `SL(2n)` at `c = 1/l`, `n` and `l` odd.
    Sl2nOdd,
    /// `Sp(2n)` at `c = 1/(2l)`, `l` odd.
    Sp2nOddHalfPi,
    /// `SL(3)` at `c = 1/l`, `l` odd.
    Sl3Odd,
    /// Adjoint type at `c = 1/l`, `l` odd and coprime to the lacing number and `det A`.
    AdjointOddLusztig(DynkinType),
    /// `G2` at `c = 1/(2l)` with `3 | l`.
    G2Small,
}

pub struct PresetInfo {
    pub name: &'static str,
    pub defaults: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[PresetInfo] = &[
    PresetInfo { name: "sl2n-even", defaults: "n=1,l=2", summary: "SL(2n) at c = 1/(2l): X^Tan = X^Müg = lQ, dual group is Langlands dual" },
    PresetInfo { name: "sl2n-odd", defaults: "n=1,l=3", summary: "SL(2n) at c = 1/l with n, l odd: X^Tan ≠ X^Müg, witness (l/2)(α1 + α3 + ...)" },
    PresetInfo { name: "sp2n-odd-halfpi", defaults: "n=2,l=3", summary: "Sp(2n) at c = 1/(2l) with l odd: X^Tan ≠ X^Müg, witness lβ/2" },
    PresetInfo { name: "sl3-odd", defaults: "l=5", summary: "SL(3) at c = 1/l with l odd: X^Tan = X^Müg = lQ" },
    PresetInfo { name: "adjoint-odd-lusztig", defaults: "A1,l=3", summary: "adjoint type at c = 1/l, l odd and coprime: X^Tan = X^Müg = lQ, FPdim = l^dim g" },
    PresetInfo { name: "g2-small", defaults: "l=3", summary: "G2 at c = 1/(2l) with 3 | l: X^Tan = X^Müg = lQ, dual group is Langlands dual" },
];

#[derive(Clone, Debug)]
pub struct Preset {
    kind: Kind,
    n: i64,
    l: i64,
    pub instance: Instance,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_count(key: &str, v: &str) -> Result<i64> {
    v.trim()
        .parse::<i64>()
        .ok()
        .filter(|&x| x >= 1)
        .ok_or_else(|| bad(format!("preset parameter {key} must be a positive integer, got '{v}'")))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Parses `name`, `name:key=val,...` and the aliases `sp2n-odd`, `sl3-odd-<l>`.
pub fn parse(spec: &str) -> Result<Preset> {
    let (head, args) = match spec.split_once(':') {
        Some((h, a)) => (h.trim(), a.trim()),
        None => (spec.trim(), ""),
    };
    let (head, alias_l) = match head.strip_prefix("sl3-odd-") {
        Some(l) => ("sl3-odd", Some(parse_count("l", l)?)),
        None => (if head == "sp2n-odd" { "sp2n-odd-halfpi" } else { head }, None),
    };
    let info = CATALOG.iter().find(|p| p.name == head).ok_or_else(|| bad(format!("unknown preset '{head}'")))?;
    let mut n = 1;
    let mut l = 1;
    let mut dynkin: Option<DynkinType> = None;
    let alias = alias_l.map(|v| format!("l={v}")).unwrap_or_default();
    let parts = info.defaults.split(',').chain(alias.split(',')).chain(args.split(','));
    for part in parts.map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("n", v)) => n = parse_count("n", v)?,
            Some(("l", v)) => l = parse_count("l", v)?,
            Some((k, _)) => return Err(bad(format!("preset {head} has no parameter '{k}'"))),
            None => dynkin = Some(part.parse()?),
        }
    }
    let kind = match head {
        "sl2n-even" => Kind::Sl2nEven,
        "sl2n-odd" => Kind::Sl2nOdd,
        "sp2n-odd-halfpi" => Kind::Sp2nOddHalfPi,
        "sl3-odd" => Kind::Sl3Odd,
        "adjoint-odd-lusztig" => Kind::AdjointOddLusztig(dynkin.clone().expect("default type")),
        _ => Kind::G2Small,
    };
    let takes_type = matches!(kind, Kind::AdjointOddLusztig(_));
    if !takes_type && dynkin.is_some() {
        return Err(bad(format!("preset {head} does not take a Dynkin type")));
    }
    Preset::new(kind, n, l)
}

impl Preset {
    fn new(kind: Kind, n: i64, l: i64) -> Result<Self> {
        let odd = |x: i64, what: &str| if x % 2 == 1 { Ok(()) } else { Err(bad(format!("{what} must be odd, got {x}"))) };
        let (dynkin, lattice, c) = match &kind {
            Kind::Sl2nEven => (format!("A{}", 2 * n - 1), LatticeChoice::SimplyConnected, (1, 2 * l)),
            Kind::Sl2nOdd => {
                odd(n, "n")?;
                odd(l, "l")?;
                (format!("A{}", 2 * n - 1), LatticeChoice::SimplyConnected, (1, l))
            }
            Kind::Sp2nOddHalfPi => {
                if n < 2 {
                    return Err(bad("Sp(2n) needs n ≥ 2"));
                }
                odd(l, "l")?;
                (format!("C{n}"), LatticeChoice::SimplyConnected, (1, 2 * l))
            }
            Kind::Sl3Odd => {
                odd(l, "l")?;
                ("A2".to_string(), LatticeChoice::SimplyConnected, (1, l))
            }
            Kind::AdjointOddLusztig(t) => {
                odd(l, "l")?;
                let lacing = t.factors().iter().map(|f| f.family.lacing() as i64).max().unwrap_or(1);
                let rd = qfiber::rootdata::RootDatum::simply_connected(t.clone())?;
                let d = det(rd.cartan());
                if gcd(l, lacing) != 1 || !d.gcd(&Int::from(l)).is_one() {
                    return Err(bad(format!("l = {l} must be coprime to the lacing number {lacing} and det A = {d}")));
                }
                (t.to_string(), LatticeChoice::Adjoint, (1, l))
            }
            Kind::G2Small => {
                if l % 3 != 0 {
                    return Err(bad(format!("l = {l} must be a multiple of 3")));
                }
                ("G2".to_string(), LatticeChoice::SimplyConnected, (1, 2 * l))
            }
        };
        let instance = Instance { dynkin: dynkin.parse()?, lattice, param: format!("{}/{}", c.0, c.1) };
        Ok(Self { kind, n, l, instance })
    }

    /// Canonical spelling with every parameter written out.
    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Sl2nEven => format!("sl2n-even:n={},l={}", self.n, self.l),
            Kind::Sl2nOdd => format!("sl2n-odd:n={},l={}", self.n, self.l),
            Kind::Sp2nOddHalfPi => format!("sp2n-odd-halfpi:n={},l={}", self.n, self.l),
            Kind::Sl3Odd => format!("sl3-odd:l={}", self.l),
            Kind::AdjointOddLusztig(t) => format!("adjoint-odd-lusztig:{t},l={}", self.l),
            Kind::G2Small => format!("g2-small:l={}", self.l),
        }
    }

    /// The explicit weight showing `X^Tan ≠ X^Müg`, where the preset has one.
    pub fn witness(&self) -> Option<Weight> {
        let rank = self.instance.dynkin.rank();
        let l = Int::from(self.l);
        match self.kind {
            Kind::Sl2nOdd => {
                // (l/2)·Σ α_{2r−1} in fundamental-weight coordinates: l at odd nodes, −l between
                let w = (0..rank).map(|i| if i % 2 == 0 { l.clone() } else { -l.clone() }).collect();
                Some(w)
            }
            Kind::Sp2nOddHalfPi => {
                // lβ/2 with β = α_n long, whose coordinates are (0, …, 0, −2, 2)
                let mut w = vec![Int::from(0); rank];
                w[rank - 2] = -l.clone();
                w[rank - 1] = l;
                Some(w)
            }
            _ => None,
        }
    }

    pub fn evaluate(&self, a: &Analysis) -> PresetOutcome {
        let r = &a.report;
        let v = &r.centers.verdicts;
        let claim = |claim: &str, holds: bool| Claim { claim: claim.to_string(), holds };
        let equal_lq = claim("X^Tan = X^Müg = lQ", v.tan_equals_mug && v.tan_equals_lq);
        let langlands = [
            claim("Cartan matrix of the dual group is the transpose", v.cartan_is_transpose == Some(true)),
            claim("dual group is the Langlands dual", v.langlands_dual == Some(true)),
        ];
        let witness = self.witness();
        let mut claims = Vec::new();
        match &self.kind {
            Kind::Sl2nEven | Kind::G2Small => {
                claims.push(equal_lq);
                claims.extend(langlands);
                claims.push(claim("modular", v.modular));
            }
            Kind::Sl2nOdd | Kind::Sp2nOddHalfPi => {
                let w = witness.as_ref().expect("preset has a witness");
                claims.push(claim("X^Tan ≠ X^Müg", !v.tan_equals_mug));
                claims.push(claim("witness lies in X^Müg", a.tower.x_mug.contains(w)));
                claims.push(claim("q(λ0, λ0) = 1/2", a.q.eval(w, w).to_string() == "1/2"));
                claims.push(claim("witness certifies X^Tan ≠ X^Müg", a.tower.is_tan_witness(&a.q, w)));
            }
            Kind::Sl3Odd => claims.push(equal_lq),
            Kind::AdjointOddLusztig(_) => {
                let rank = self.instance.dynkin.rank();
                let dim_g = rank + 2 * r.root_datum.positive_root_count;
                let l = Int::from(self.l);
                let expect_dim = num_traits::pow(l.clone(), dim_g);
                let groups = &r.dimensions.simples_u_q.invariant_factors;
                claims.push(equal_lq);
                claims.push(claim(
                    "grouplikes form (Z/l)^rank",
                    groups.len() == rank && groups.iter().all(|g| g.0 == l),
                ));
                claims.push(claim("FPdim = l^dim g", r.dimensions.fpdim_fiber.0 == expect_dim));
            }
        }
        PresetOutcome { name: self.name(), witness: witness.as_deref().map(nums), claims }
    }
}
