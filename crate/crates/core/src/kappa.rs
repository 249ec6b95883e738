//! Alternating square roots `κ` of `ε` on `X^Tan`, their extensions `ψ` to
//! `X`, and the radicals and finite groups built from them.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::centers::CenterTower;
use crate::intlat::{congruence_kernel, quotient, snf, solve_integer, FiniteAbelianGroup, IntMatrix, Lattice};
use crate::qparam::{Angle, QParam};
use crate::rootdata::rational_inverse;
use crate::{Error, Int, Rat, Result};

/// A ℚ/ℤ-valued bilinear form given by its Gram matrix on a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biform {
    domain: Lattice,
    gram: Vec<Vec<Angle>>,
}

impl Biform {
    pub fn new(domain: Lattice, gram: Vec<Vec<Angle>>) -> Result<Self> {
        let k = domain.rank();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput("Gram matrix does not match the domain rank".into()));
        }
        Ok(Self { domain, gram })
    }

    pub fn zero(domain: Lattice) -> Self {
        let k = domain.rank();
        Self { domain, gram: vec![vec![Angle::zero(); k]; k] }
    }

    pub fn domain(&self) -> &Lattice {
        &self.domain
    }

    pub fn basis(&self) -> &IntMatrix {
        self.domain.basis()
    }

    pub fn gram(&self) -> &[Vec<Angle>] {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.iter().flatten().all(Angle::is_zero)
    }

    /// Value on coordinate vectors in the domain basis.
    pub fn eval_coords(&self, x: &[Int], y: &[Int]) -> Angle {
        let mut acc = Rat::zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    acc += self.gram[i][j].value() * Rat::from(a * b);
                }
            }
        }
        Angle::new(acc)
    }

    /// Value on ambient vectors of the domain.
    pub fn eval(&self, x: &[Int], y: &[Int]) -> Result<Angle> {
        let cx = self.coords(x)?;
        let cy = self.coords(y)?;
        Ok(self.eval_coords(&cx, &cy))
    }

    fn coords(&self, v: &[Int]) -> Result<Vec<Int>> {
        self.domain
            .coordinates(v)
            .ok_or_else(|| Error::NotContained(format!("{v:?} is outside the form's domain")))
    }

    /// Left radical `{λ : κ(λ, −) = 0}` inside the domain.
    pub fn radical(&self) -> Lattice {
        let k = self.domain.rank();
        let rows: Vec<(Vec<Int>, Int)> = (0..k)
            .map(|j| {
                let col: Vec<&Rat> = (0..k).map(|i| self.gram[i][j].value()).collect();
                let den = col.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
                let coeffs = col.iter().map(|x| (*x * Rat::from(den.clone())).to_integer()).collect();
                (coeffs, den)
            })
            .collect();
        self.domain.from_coordinates(&congruence_kernel(k, &rows))
    }
}

/// Canonical alternating square root of `ε = q|X^Tan` on the HNF basis:
/// `κ(e_i, e_j) = ε(e_i, e_j)/2 ∈ {0, 1/4}` above the diagonal.
pub fn build_kappa(q: &QParam, x_tan: &Lattice) -> Result<Biform> {
    let basis = x_tan.basis();
    let k = basis.len();
    let quarter = Angle::from_frac(1, 4);
    let mut gram = vec![vec![Angle::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let e = q.eval(&basis[i], &basis[j]);
            let ok = if i == j { e.is_zero() } else { e.is_zero() || e == Angle::half() };
            if !ok {
                return Err(Error::OutsideEnvelope(format!(
                    "ε(e_{i}, e_{j}) = {e} on X^Tan; no alternating square root"
                )));
            }
            if i < j && !e.is_zero() {
                gram[i][j] = quarter.clone();
                gram[j][i] = -&quarter;
            }
        }
    }
    let kappa = Biform::new(x_tan.clone(), gram)?;
    check_square_root(q, &kappa)?;
    Ok(kappa)
}

/// `κ(x, x) = 0`, `κ(x, y) + κ(y, x) = 0` and `2κ(x, y) = ε(x, y)` on generators.
pub fn check_square_root(q: &QParam, kappa: &Biform) -> Result<()> {
    let basis = kappa.basis();
    let two = Int::from(2);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let kij = &kappa.gram[i][j];
            if i == j && !kij.is_zero() {
                return Err(Error::Invariant(format!("κ(e_{i}, e_{i}) = {kij}")));
            }
            if !(kij + &kappa.gram[j][i]).is_zero() {
                return Err(Error::Invariant(format!("κ is not alternating at ({i},{j})")));
            }
            if kij.scale(&two) != q.eval(x, y) {
                return Err(Error::Invariant(format!("2κ ≠ ε at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Radicals and the finite groups `Σ`, `Λ`, `Θ` (as quotients; their duals are isomorphic).
#[derive(Clone, Debug)]
pub struct Radicals {
    /// `rad(q)` with `X` as ambient.
    pub rad_q: Lattice,
    /// `rad(q)` with `P` as ambient.
    pub rad_q_weight: Lattice,
    pub rad_kappa: Lattice,
    pub rad_qk: Lattice,
    /// `X^Tan / rad(q,κ)`.
    pub sigma: FiniteAbelianGroup,
    /// `X / rad(q,κ)`.
    pub lambda: FiniteAbelianGroup,
    /// `X* / rad(q,κ)`.
    pub theta: FiniteAbelianGroup,
}

impl Radicals {
    pub fn ambients_differ(&self) -> bool {
        self.rad_q != self.rad_q_weight
    }
}

pub fn radicals(q: &QParam, tower: &CenterTower, kappa: &Biform) -> Result<Radicals> {
    let rad_q = q.rad(&tower.x);
    let rad_q_weight = q.rad(&q.datum().weight_lattice());
    if !rad_q.is_sublattice_of(&tower.x_tan) {
        return Err(Error::Invariant("rad(q) is not inside X^Tan".into()));
    }
    let rad_kappa = kappa.radical();
    let rad_qk = rad_q.intersect(&rad_kappa);
    let sigma = quotient(&rad_qk, &tower.x_tan)?;
    let lambda = quotient(&rad_qk, &tower.x)?;
    let theta = quotient(&rad_qk, &tower.x_star)?;
    let tan_index = quotient(&tower.x_tan, &tower.x)?.order();
    if sigma.order() * tan_index != lambda.order() {
        return Err(Error::Invariant("|Σ|·[X:X^Tan] ≠ |Λ|".into()));
    }
    Ok(Radicals { rad_q, rad_q_weight, rad_kappa, rad_qk, sigma, lambda, theta })
}

/// Extension `ψ` of `κ` to `X`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub psi: Biform,
    /// Whether `ψ` vanishes on `rad(q,κ)` from both sides.
    pub vanishes_on_radical: bool,
}

/// Extends `κ` from `X^Tan` to `X`, vanishing on `rad(q,κ)` when possible.
///
/// In a basis `f` of `X` with `rad(q,κ) = ⊕ e_i f_i` the vanishing condition
/// says `ψ(f_i, f_j) ∈ (1/gcd(e_i, e_j))ℤ`, so the extension is an integer
/// linear system in the numerators.
pub fn extend_psi(kappa: &Biform, x: &Lattice, rad_qk: &Lattice) -> Result<Extension> {
    let k = x.rank();
    let t = x.coordinate_matrix(kappa.domain())?;
    if t.len() != k {
        return Err(Error::InvalidInput("κ's domain must have full rank in X".into()));
    }
    let psi = match vanishing_extension(kappa, x, rad_qk, &t)? {
        Some(gram) => Extension { psi: Biform::new(x.clone(), gram)?, vanishes_on_radical: true },
        None => Extension { psi: Biform::new(x.clone(), rational_extension(kappa, &t)?)?, vanishes_on_radical: false },
    };
    // restriction is κ on generators
    for (i, a) in kappa.basis().iter().enumerate() {
        for (j, b) in kappa.basis().iter().enumerate() {
            if psi.psi.eval(a, b)? != kappa.gram[i][j] {
                return Err(Error::Invariant(format!("ψ does not restrict to κ at ({i},{j})")));
            }
        }
    }
    let vanishes = rad_qk.basis().iter().all(|r| {
        x.basis()
            .iter()
            .all(|b| matches!(psi.psi.eval(r, b), Ok(v) if v.is_zero()) && matches!(psi.psi.eval(b, r), Ok(v) if v.is_zero()))
    });
    if vanishes != psi.vanishes_on_radical {
        return Err(Error::Invariant("ψ vanishing flag disagrees with a direct check".into()));
    }
    Ok(psi)
}

fn vanishing_extension(kappa: &Biform, x: &Lattice, rad_qk: &Lattice, t: &IntMatrix) -> Result<Option<Vec<Vec<Angle>>>> {
    let k = x.rank();
    let rc = x.coordinate_matrix(rad_qk)?;
    if rc.len() != k {
        return Ok(None);
    }
    let s = snf(&rc, k);
    let e = &s.diagonal;
    // coordinates of X^Tan generators in the adapted basis f
    let tf = crate::intlat::mat_mul(t, &s.v);
    let mut unknowns: Vec<(usize, usize, Int)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let g = e[i].gcd(&e[j]);
            if g > Int::one() {
                unknowns.push((i, j, g));
            }
        }
    }
    let modulus = unknowns
        .iter()
        .fold(Int::from(4), |acc, (_, _, g)| acc.lcm(g))
        .lcm(&kappa.gram.iter().flatten().fold(Int::one(), |acc, a| acc.lcm(a.denom())));
    let nu = unknowns.len();
    let m = tf.len();
    let mut rows = Vec::with_capacity(m * m);
    let mut rhs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let mut row = vec![Int::zero(); nu + m * m];
            for (c, (i, j, g)) in unknowns.iter().enumerate() {
                row[c] = &tf[a][*i] * &tf[b][*j] * (&modulus / g);
            }
            row[nu + a * m + b] = modulus.clone();
            rows.push(row);
            rhs.push((kappa.gram[a][b].value() * Rat::from(modulus.clone())).to_integer());
        }
    }
    let Some(sol) = solve_integer(&rows, nu + m * m, &rhs) else {
        return Ok(None);
    };
    let mut psi_f = vec![vec![Rat::zero(); k]; k];
    for (c, (i, j, g)) in unknowns.iter().enumerate() {
        psi_f[*i][*j] = Rat::new(sol[c].mod_floor(g), g.clone());
    }
    // ψ_X = V ψ_f Vᵀ
    let v = &s.v;
    let gram = (0..k)
        .map(|p| {
            (0..k)
                .map(|r| {
                    let mut acc = Rat::zero();
                    for i in 0..k {
                        if v[p][i].is_zero() {
                            continue;
                        }
                        for j in 0..k {
                            if !psi_f[i][j].is_zero() && !v[r][j].is_zero() {
                                acc += &psi_f[i][j] * Rat::from(&v[p][i] * &v[r][j]);
                            }
                        }
                    }
                    Angle::new(acc)
                })
                .collect()
        })
        .collect();
    Ok(Some(gram))
}

// ψ = T⁻¹ κ T⁻ᵀ over ℚ; extends κ but ignores the radical
fn rational_extension(kappa: &Biform, t: &IntMatrix) -> Result<Vec<Vec<Angle>>> {
    let inv = rational_inverse(t)?;
    let k = t.len();
    Ok((0..k)
        .map(|p| {
            (0..k)
                .map(|r| {
                    let mut acc = Rat::zero();
                    for a in 0..k {
                        for b in 0..k {
                            acc += &inv[p][a] * kappa.gram[a][b].value() * &inv[r][b];
                        }
                    }
                    Angle::new(acc)
                })
                .collect()
        })
        .collect())
}
