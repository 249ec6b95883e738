//! Dimension formulas and simple-module label groups.

use num_traits::One;

use crate::centers::CenterTower;
use crate::intlat::{quotient, FiniteAbelianGroup};
use crate::kappa::Radicals;
use crate::qparam::QParam;
use crate::{Error, Int, Result};

/// `∏_{γ∈Φ⁺} l_γ`, the PBW monomial count of the positive part.
pub fn dim_u_plus(q: &QParam) -> Result<Int> {
    Ok(q.root_orders()?.iter().product())
}

/// `[X : X^Tan] · (∏ l_γ)²`.
pub fn fpdim_fiber(q: &QParam, tower: &CenterTower) -> Result<Int> {
    let plus = dim_u_plus(q)?;
    Ok(quotient(&tower.x_tan, &tower.x)?.order() * &plus * &plus)
}

/// `|Z(G)| · ∏_Δ l_α · (∏ l_γ)²`, defined for simply connected, maximally
/// non-degenerate parameters with every `q_α` of even order.
pub fn fpdim_sc(q: &QParam) -> Result<Int> {
    let rd = q.datum();
    let class = q.classify()?;
    if !rd.is_simply_connected() {
        return Err(Error::Hypotheses("root datum is not simply connected".into()));
    }
    if !class.max_nondegenerate {
        return Err(Error::Hypotheses("parameter is not maximally non-degenerate".into()));
    }
    if !class.all_even {
        return Err(Error::Hypotheses("some q_α has odd order".into()));
    }
    let plus = dim_u_plus(q)?;
    let simple: Int = q.simple_orders()?.iter().product();
    Ok(rd.center_order() * simple * &plus * &plus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub fpdim_fiber: Int,
    pub fpdim_sc: Option<Int>,
    pub dim_uqk: Int,
    pub dim_u_plus: Int,
    pub grouplike_count: Int,
    pub sigma_order: Int,
    pub theta_order: Int,
    /// `[X : X^Tan]`.
    pub tan_index: Int,
    pub simples_group_uq: FiniteAbelianGroup,
    pub simples_group_uqk: FiniteAbelianGroup,
}

impl DimReport {
    pub fn simple_count_uq(&self) -> Int {
        self.simples_group_uq.order()
    }

    pub fn simple_count_uqk(&self) -> Int {
        self.simples_group_uqk.order()
    }
}

/// Computes every dimension and checks the identities relating them.
pub fn dim_report(q: &QParam, tower: &CenterTower, rads: &Radicals) -> Result<DimReport> {
    let plus = dim_u_plus(q)?;
    let simples_group_uq = quotient(&tower.x_tan, &tower.x)?;
    let simples_group_uqk = quotient(&rads.rad_qk, &tower.x)?;
    let tan_index = simples_group_uq.order();
    let grouplike_count = simples_group_uqk.order();
    let square = &plus * &plus;
    let fpdim_fiber = &tan_index * &square;
    let dim_uqk = &grouplike_count * &square;
    let sigma_order = rads.sigma.order();
    let fpdim_sc = match fpdim_sc(q) {
        Ok(v) => Some(v),
        Err(Error::Hypotheses(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(v) = &fpdim_sc {
        if *v != fpdim_fiber {
            return Err(Error::Invariant(format!(
                "simply connected formula gives {v}, fiber formula gives {fpdim_fiber}"
            )));
        }
    }
    if &fpdim_fiber * &sigma_order != dim_uqk {
        return Err(Error::Invariant("FPdim · |Σ| ≠ dim u_{q,κ}".into()));
    }
    if &tan_index * &sigma_order != grouplike_count {
        return Err(Error::Invariant("simple counts are not related by |Σ|".into()));
    }
    if plus < Int::one() {
        return Err(Error::Invariant("nonpositive PBW count".into()));
    }
    Ok(DimReport {
        fpdim_fiber,
        fpdim_sc,
        dim_uqk,
        dim_u_plus: plus,
        grouplike_count,
        sigma_order,
        theta_order: rads.theta.order(),
        tan_index,
        simples_group_uq,
        simples_group_uqk,
    })
}
