//! Finite support and exact coefficients of the R-matrix expansion
//! `Σ_n coeff(n) E^{(n)} ⊗ F^{(n)}` over PBW exponents `n : Φ⁺ → ℤ≥0`.
//!
//! All values live in one field `ℚ(ζ_N)` with `N` the lcm of every angle
//! denominator involved and 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclo::{qfact, qint_with_inverse, CycloNum};
use crate::qparam::{Angle, QParam};
use crate::{Error, Int, Result};

/// Per-root data needed for coefficients, in positive-root order.
#[derive(Clone, Debug)]
pub struct RSetup {
    pub conductor: usize,
    pub orders: Vec<Int>,
    pub heights: Vec<Int>,
    /// `q_γ`.
    pub scalars: Vec<Angle>,
    /// `q(γ, Σ_α ω_α)`.
    pub rho_phases: Vec<Angle>,
    /// `v_γ ↦ q_γ` as field elements.
    pub v: Vec<CycloNum>,
    // per root, k < l_γ: v^{−k(k+1)/2} (v − v⁻¹)^k [k]!
    coeff_table: Vec<Vec<CycloNum>>,
    // per root, k < l_γ: the diagonal pairing factor
    pairing_table: Vec<Vec<CycloNum>>,
}

impl RSetup {
    pub fn new(q: &QParam) -> Result<Self> {
        let rd = q.datum();
        let rho: Vec<Int> = vec![Int::one(); rd.rank()];
        let roots = rd.positive_roots();
        let orders = q.root_orders()?;
        let heights = roots.iter().map(|g| g.height.clone()).collect();
        let scalars: Vec<Angle> = roots.iter().map(|g| q.q_scalar(g)).collect();
        let rho_phases: Vec<Angle> = roots.iter().map(|g| q.eval(&g.weight, &rho)).collect();
        let n = scalars
            .iter()
            .chain(&rho_phases)
            .fold(Int::from(2), |acc, a| acc.lcm(a.denom()));
        let conductor = n
            .to_usize()
            .filter(|&c| c <= 1 << 16)
            .ok_or_else(|| Error::OutsideEnvelope(format!("conductor {n} is too large")))?;
        let v = scalars
            .iter()
            .map(|a| CycloNum::root_of_unity(a, conductor))
            .collect::<Result<Vec<_>>>()?;
        let mut coeff_table = Vec::with_capacity(v.len());
        let mut pairing_table = Vec::with_capacity(v.len());
        for ((x, a), l) in v.iter().zip(&scalars).zip(&orders) {
            let l = l.to_u32().ok_or_else(|| Error::OutsideEnvelope(format!("root order {l} too large")))?;
            let inv = CycloNum::root_of_unity(&-a, conductor)?;
            let diff = x - &inv;
            let mut row = vec![CycloNum::one(conductor)];
            let mut inv_pow = CycloNum::one(conductor);
            let mut pos_pow = CycloNum::one(conductor);
            let mut pair = vec![CycloNum::one(conductor)];
            let diff_inv = if l > 1 { Some(diff.inverse()?) } else { None };
            for k in 1..l {
                inv_pow = &inv_pow * &inv;
                pos_pow = &pos_pow * x;
                let qk = qint_with_inverse(i64::from(k), x, &inv)?;
                let prev = (k - 1) as usize;
                row.push(&(&(&row[prev] * &inv_pow) * &diff) * &qk);
                let d = diff_inv.as_ref().expect("l > 1");
                pair.push(&(&(&pair[prev] * &pos_pow) * d) * &qk.inverse()?);
            }
            coeff_table.push(row);
            pairing_table.push(pair);
        }
        Ok(Self { conductor, orders, heights, scalars, rho_phases, v, coeff_table, pairing_table })
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Number of admissible supports, `∏ l_γ`.
    pub fn support_size(&self) -> Int {
        self.orders.iter().product()
    }

    pub fn is_admissible(&self, n: &[u32]) -> bool {
        n.iter().zip(&self.orders).all(|(k, l)| BigInt::from(*k) < *l)
    }

    /// Admissible supports in lexicographic order, or `None` above `cap`.
    pub fn supports(&self, cap: usize) -> Option<Vec<Vec<u32>>> {
        let total = self.support_size().to_usize().filter(|&t| t <= cap)?;
        Some(self.first_supports(total))
    }

    /// The first `limit` admissible supports in lexicographic order.
    pub fn first_supports(&self, limit: usize) -> Vec<Vec<u32>> {
        let bounds: Vec<u32> = self.orders.iter().map(|l| l.to_u32().unwrap_or(u32::MAX)).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; bounds.len()];
        while out.len() < limit {
            out.push(cur.clone());
            let mut i = bounds.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }

    fn check_len(&self, n: &[u32]) -> Result<()> {
        if n.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "support has {} entries for {} positive roots",
                n.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `(−1)^{Σ n_γ ht(γ)}` times `q(Σ n_γ γ, Σ ω)`, as a field element.
    pub fn sign_phase(&self, n: &[u32]) -> Result<CycloNum> {
        self.check_len(n)?;
        let mut angle = Angle::zero();
        let mut parity = Int::zero();
        for ((k, h), p) in n.iter().zip(&self.heights).zip(&self.rho_phases) {
            parity += h * Int::from(*k);
            angle = &angle + &p.times(i64::from(*k));
        }
        let phase = CycloNum::root_of_unity(&angle, self.conductor)?;
        Ok(if parity.is_odd() { -&phase } else { phase })
    }

    /// The coefficient of `E^{(n)} ⊗ F^{(n)}`; zero off the admissible region.
    pub fn coeff(&self, n: &[u32]) -> Result<CycloNum> {
        let mut acc = self.sign_phase(n)?;
        for (k, row) in n.iter().zip(&self.coeff_table) {
            match row.get(*k as usize) {
                Some(f) => acc = &acc * f,
                None => return Ok(CycloNum::zero(self.conductor)),
            }
        }
        Ok(acc)
    }

    /// Diagonal Hopf pairing `⟨E^n, F^n⟩` at `v_γ ↦ q_γ`.
    pub fn pairing_diag(&self, n: &[u32]) -> Result<CycloNum> {
        self.check_len(n)?;
        if !self.is_admissible(n) {
            return pairing_diag_at(n, &self.v);
        }
        let mut acc = CycloNum::one(self.conductor);
        for (k, row) in n.iter().zip(&self.pairing_table) {
            acc = &acc * &row[*k as usize];
        }
        Ok(acc)
    }
}

/// `∏_γ v_γ^{n(n+1)/2} (v_γ − v_γ^{−1})^{−n} ([n]_{v_γ}!)^{−1}` for given `v_γ`.
pub fn pairing_diag_at(n: &[u32], v: &[CycloNum]) -> Result<CycloNum> {
    let c = v.first().map(CycloNum::conductor).unwrap_or(1);
    let mut acc = CycloNum::one(c);
    for (k, v) in n.iter().zip(v) {
        if *k == 0 {
            continue;
        }
        let k64 = i64::from(*k);
        let diff = v - &v.inverse()?;
        let fact = qfact(*k, v)?;
        if diff.is_zero() || fact.is_zero() {
            return Err(Error::NonInvertible(format!(
                "[{k}]! (v − v⁻¹)^{k} vanishes at v = {v}"
            )));
        }
        let f = &(&v.pow(k64 * (k64 + 1) / 2)? * &diff.pow(-k64)?) * &fact.inverse()?;
        acc = &acc * &f;
    }
    Ok(acc)
}

/// `Ω` acts on `X_λ ⊗ X_μ` by `q(λ, μ)^{−1}`.
pub fn omega_phase(q: &QParam, lambda: &[Int], mu: &[Int]) -> Angle {
    -q.eval(lambda, mu)
}

/// Phase of the squared braiding, `q^{−2}(λ, μ)`.
pub fn squared_phase(q: &QParam, lambda: &[Int], mu: &[Int]) -> Angle {
    q.eval(lambda, mu).times(-2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use crate::{int, ivec, rat};

    fn setup(t: &str, c: crate::Rat) -> (QParam, RSetup) {
        let rd = RootDatum::simply_connected(t.parse().unwrap()).unwrap();
        let q = QParam::uniform(rd, c).unwrap();
        let s = RSetup::new(&q).unwrap();
        (q, s)
    }

    #[test]
    fn a1_quarter_terms() {
        let (_, s) = setup("A1", rat(1, 4));
        assert_eq!(s.support_size(), int(2));
        assert!(s.coeff(&[0]).unwrap().is_one());
        let c1 = s.coeff(&[1]).unwrap();
        let minus_2i = &CycloNum::zeta_pow(s.conductor, s.conductor as i64 / 4) * &CycloNum::from_int(s.conductor, -2);
        assert_eq!(c1, minus_2i);
        assert!(s.coeff(&[2]).unwrap().is_zero());
        assert!(matches!(s.pairing_diag(&[2]), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn a2_sixth_support() {
        let (_, s) = setup("A2", rat(1, 6));
        assert_eq!(s.support_size(), int(27));
        assert_eq!(s.supports(100).unwrap().len(), 27);
        assert!(s.supports(10).is_none());
        let first = s.first_supports(4);
        assert_eq!(first, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 2], vec![0, 1, 0]]);
    }

    #[test]
    fn quasi_classical_single_term() {
        let (_, s) = setup("A2", rat(1, 1));
        assert_eq!(s.support_size(), int(1));
        assert_eq!(s.supports(10).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn generic_pairing_a1() {
        let v = CycloNum::zeta_pow(8, 1);
        let p = pairing_diag_at(&[1], std::slice::from_ref(&v)).unwrap();
        let expect = &v * &(&v - &v.inverse().unwrap()).inverse().unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn pairing_table_matches_direct_formula() {
        let (_, s) = setup("B2", rat(1, 10));
        for k in 0..5u32 {
            let mut n = vec![0; s.len()];
            n[1] = k;
            n[3] = 4 - k;
            let v = s.v.clone();
            assert_eq!(s.pairing_diag(&n).unwrap(), pairing_diag_at(&n, &v).unwrap());
        }
    }

    #[test]
    fn omega() {
        let rd = RootDatum::simply_connected("A1".parse().unwrap()).unwrap();
        let q = QParam::uniform(rd, rat(1, 4)).unwrap();
        let w = ivec(&[1]);
        assert_eq!(omega_phase(&q, &w, &w), Angle::from_frac(7, 8));
        assert!(omega_phase(&q, &ivec(&[0]), &w).is_zero());
    }
}
