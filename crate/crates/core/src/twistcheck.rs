//! Scalar identities behind twisting by an alternating form `κ`: constancy
//! of the rescaled Serre sums, the `[e, f]` normalization and the vanishing of
//! cross commutators.
//!
//! `M_α(λ) = κ^{−1}(α, λ)` is written additively as `−κ(α*, λ)`.

use crate::centers::DualDatum;
use crate::cyclo::{qbinom, CycloNum};
use crate::kappa::Biform;
use crate::qparam::Angle;
use crate::{Error, Int, Rat, Result};

/// Rescaling data for one ordered adjacent pair of dual simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWitness {
    pub alpha: usize,
    pub beta: usize,
    /// `1 − ⟨β*, α*^∨⟩`, the Serre exponent.
    pub m: i64,
    /// `M_α(β)`.
    pub character: Angle,
    /// `(r − s)·M_α(β) − rs·ε_α` for `r = 0..=m`, `s = m − r`.
    pub values: Vec<Angle>,
    pub holds: bool,
}

fn character(kappa: &Biform, dual: &DualDatum, i: usize, j: usize) -> Result<Angle> {
    Ok(-kappa.eval(&dual.simple_roots[i], &dual.simple_roots[j])?)
}

fn check_quasi_classical(dual: &DualDatum) -> Result<()> {
    let two = Int::from(2);
    if dual.epsilon_scalars.iter().any(|e| !e.scale(&two).is_zero()) {
        return Err(Error::InvalidInput("ε is not quasi-classical".into()));
    }
    Ok(())
}

/// One witness per ordered pair `(α, β)` of adjacent dual simple roots.
pub fn serre_ratio_invariance(dual: &DualDatum, kappa: &Biform) -> Result<Vec<TwistWitness>> {
    check_quasi_classical(dual)?;
    let r = dual.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j || dual.cartan[i][j] == Int::from(0) {
                continue;
            }
            let m: i64 = i64::try_from(Int::from(1) - &dual.cartan[i][j])
                .map_err(|_| Error::Invariant("Serre exponent overflow".into()))?;
            let ch = character(kappa, dual, i, j)?;
            let eps = &dual.epsilon_scalars[i];
            let values: Vec<Angle> = (0..=m)
                .map(|rr| {
                    let s = m - rr;
                    &ch.times(rr - s) - &eps.times(rr * s)
                })
                .collect();
            let holds = values.windows(2).all(|w| w[0] == w[1]);
            out.push(TwistWitness { alpha: i, beta: j, m, character: ch, values, holds });
        }
    }
    Ok(out)
}

/// `ε · ε^m · [m choose 1]_ε = m` for `ε = ±1` and `|m| ≤ bound`.
pub fn commutator_identity(epsilon: &Angle, bound: i64) -> Result<bool> {
    let two = Int::from(2);
    if !epsilon.scale(&two).is_zero() {
        return Err(Error::InvalidInput(format!("ε_α = {epsilon} is not ±1")));
    }
    let e = CycloNum::root_of_unity(epsilon, 2)?;
    for m in -bound..=bound {
        let lhs = &(&e * &e.pow(m)?) * &qbinom(m, 1, &e)?;
        if lhs.as_rational() != Some(Rat::from(Int::from(m))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M_β(−α) = M_α(β)` for all distinct dual simple roots, i.e. `κ(β, α) = −κ(α, β)`.
pub fn cross_commutator_check(dual: &DualDatum, kappa: &Biform) -> Result<bool> {
    let r = dual.rank();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let neg_alpha: Vec<Int> = dual.simple_roots[i].iter().map(|x| -x).collect();
            let lhs = -kappa.eval(&dual.simple_roots[j], &neg_alpha)?;
            if lhs != character(kappa, dual, i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every check above, bundled.
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub witnesses: Vec<TwistWitness>,
    pub commutator: bool,
    pub cross_commutator: bool,
}

impl TwistReport {
    pub fn all_pass(&self) -> bool {
        self.commutator && self.cross_commutator && self.witnesses.iter().all(|w| w.holds)
    }
}

pub fn twist_report(dual: &DualDatum, kappa: &Biform) -> Result<TwistReport> {
    let witnesses = serre_ratio_invariance(dual, kappa)?;
    let mut commutator = true;
    for e in &dual.epsilon_scalars {
        commutator &= commutator_identity(e, 10)?;
    }
    let cross_commutator = cross_commutator_check(dual, kappa)?;
    Ok(TwistReport { witnesses, commutator, cross_commutator })
}
