//! Integer lattice algebra: Hermite and Smith normal forms, congruence
//! kernels, intersections, indices and quotient invariant factors.
//!
//! A [`Lattice`] is a subgroup of `ℤ^r` stored by the rows of its Hermite
//! normal form, so two lattices are equal exactly when their stored matrices
//! are equal.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Result};

pub type IntMatrix = Vec<Vec<Int>>;

/// Row-style Hermite normal form of the row span of `m`.
///
/// Pivots are positive and strictly increasing in column, entries above a
/// pivot lie in `[0, pivot)`, zero rows are dropped.
pub fn hnf(m: &[Vec<Int>], ncols: usize) -> IntMatrix {
    let mut rows: IntMatrix = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length does not match column count");
            r.clone()
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let n = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            let piv = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(piv) = piv else { break };
            rows.swap(r, piv);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[r]);
                if !tail[0][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < n && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(r);
                axpy(&mut head[i], &q, &tail[0]);
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

// row -= q * other
fn axpy(row: &mut [Int], q: &Int, other: &[Int]) {
    for (x, y) in row.iter_mut().zip(other) {
        *x -= q * y;
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// Matrix product of integer matrices.
pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut acc = Int::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Int], m: &[Vec<Int>]) -> Vec<Int> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Int::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form `U · m · V = diag(diagonal)` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next; zeros trail.
    pub diagonal: Vec<Int>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Torsion part of the cokernel `ℤ^cols / rowspan(m)`.
    pub fn torsion(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_diagonal(&self.diagonal)
    }

    /// Free rank of the cokernel `ℤ^cols / rowspan(m)`.
    pub fn free_rank(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Smith normal form with transforms.
pub fn snf(m: &[Vec<Int>], ncols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: IntMatrix = m.to_vec();
    for r in &a {
        assert_eq!(r.len(), ncols);
    }
    let mut u = identity(rows);
    let mut v = identity(ncols);
    let steps = rows.min(ncols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            u.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[t]);
                let (head, tail) = u.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[t]);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a violating row into row t and go again
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -Int::one();
                    let (head, tail) = a.split_at_mut(i);
                    axpy(&mut head[t], &minus_one, &tail[0]);
                    let (head, tail) = u.split_at_mut(i);
                    axpy(&mut head[t], &minus_one, &tail[0]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..steps).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, u, v, rows, cols: ncols }
}

/// Solves `a · x = b` over the integers. Returns the canonical solution whose
/// free Smith coordinates are zero, or `None` if no integer solution exists.
pub fn solve_integer(a: &[Vec<Int>], ncols: usize, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.len(), b.len());
    let s = snf(a, ncols);
    let ub: Vec<Int> = s
        .u
        .iter()
        .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
        .collect();
    let mut y = vec![Int::zero(); ncols];
    for (i, ubi) in ub.iter().enumerate() {
        let d = s.diagonal.get(i);
        match d {
            Some(d) if !d.is_zero() => {
                if !ubi.is_multiple_of(d) {
                    return None;
                }
                y[i] = ubi / d;
            }
            _ => {
                if !ubi.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(
        s.v.iter()
            .map(|row| row.iter().zip(&y).map(|(p, q)| p * q).sum())
            .collect(),
    )
}

/// A finite abelian group `ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with `d_i | d_{i+1}`, `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<Int>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new() }
    }

    /// Keeps the entries `> 1` of a Smith diagonal. Zeros (free part) are
    /// ignored, callers check finiteness separately.
    pub fn from_diagonal(diag: &[Int]) -> Self {
        let mut f: Vec<Int> = diag.iter().filter(|d| **d > Int::one()).cloned().collect();
        f.sort();
        Self { invariant_factors: f }
    }

    /// Canonical form of `⊕ ℤ/n_i` for arbitrary positive `n_i`.
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let n = orders.len();
        let diag: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { orders[i].clone() } else { Int::zero() }).collect())
            .collect();
        snf(&diag, n).torsion()
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Index of one lattice in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(Int),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// A subgroup of `ℤ^r`, stored in canonical Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_rows(ambient: usize, rows: &[Vec<Int>]) -> Self {
        Self { ambient, basis: hnf(rows, ambient) }
    }

    /// All of `ℤ^r`.
    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: identity(ambient) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The HNF generator rows.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient, "vector has wrong ambient rank");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            if !rest[p].is_multiple_of(&row[p]) {
                return None;
            }
            let c = &rest[p] / &row[p];
            if !c.is_zero() {
                axpy(&mut rest, &c, row);
            }
            coords.push(c);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Rows of `sub`'s basis written in this lattice's basis.
    pub fn coordinate_matrix(&self, sub: &Lattice) -> Result<IntMatrix> {
        sub.basis
            .iter()
            .map(|b| {
                self.coordinates(b).ok_or_else(|| {
                    Error::NotContained(format!("generator {} not in lattice", fmt_vec(b)))
                })
            })
            .collect()
    }

    /// Image of a lattice of coordinate vectors under this basis.
    pub fn from_coordinates(&self, coords: &Lattice) -> Lattice {
        assert_eq!(coords.ambient, self.rank());
        let rows = mat_mul(&coords.basis, &self.basis);
        Lattice::from_rows(self.ambient, &rows)
    }

    pub fn vector_from_coordinates(&self, coords: &[Int]) -> Vec<Int> {
        vec_mat(coords, &self.basis)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice::from_rows(self.ambient, &rows)
    }

    /// `self ∩ other` by the Zassenhaus trick on `[a | a ; b | 0]`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let r = self.ambient;
        let mut rows = Vec::new();
        for a in &self.basis {
            let mut row = a.clone();
            row.extend(a.iter().cloned());
            rows.push(row);
        }
        for b in &other.basis {
            let mut row = b.clone();
            row.extend(std::iter::repeat_n(Int::zero(), r));
            rows.push(row);
        }
        let h = hnf(&rows, 2 * r);
        let kept: IntMatrix = h
            .into_iter()
            .filter(|row| row[..r].iter().all(Zero::is_zero))
            .map(|row| row[r..].to_vec())
            .collect();
        Lattice::from_rows(r, &kept)
    }

    pub fn scaled(&self, n: &Int) -> Lattice {
        let rows: IntMatrix = self.basis.iter().map(|r| r.iter().map(|x| x * n).collect()).collect();
        Lattice::from_rows(self.ambient, &rows)
    }

    /// `[sup : self]`; errors when `self ⊄ sup`.
    pub fn index_in(&self, sup: &Lattice) -> Result<Index> {
        index(self, sup)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub(crate) fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `[sup : sub]`, `Infinite` on a rank defect.
pub fn index(sub: &Lattice, sup: &Lattice) -> Result<Index> {
    if sub.ambient != sup.ambient {
        return Err(Error::InvalidInput("ambient ranks differ".into()));
    }
    let c = sup.coordinate_matrix(sub)?;
    if sub.rank() < sup.rank() {
        return Ok(Index::Infinite);
    }
    Ok(Index::Finite(det(&c).abs()))
}

/// The finite group `sup / sub`.
pub fn quotient(sub: &Lattice, sup: &Lattice) -> Result<FiniteAbelianGroup> {
    let c = sup.coordinate_matrix(sub)?;
    if sub.rank() < sup.rank() {
        return Err(Error::InvalidInput(format!(
            "quotient is infinite (rank {} in rank {})",
            sub.rank(),
            sup.rank()
        )));
    }
    Ok(snf(&c, sup.rank()).torsion())
}

/// `{x ∈ ℤ^r : c·x ≡ 0 (mod n)}` for every `(c, n)` in `rows`.
///
/// Works on `[Cᵀ | I ; diag(n) | 0]`: after Hermite reduction the rows with
/// vanishing congruence part span exactly the solution lattice.
pub fn congruence_kernel(ambient: usize, rows: &[(Vec<Int>, Int)]) -> Lattice {
    let m = rows.len();
    if m == 0 {
        return Lattice::full(ambient);
    }
    let width = m + ambient;
    let mut mat: IntMatrix = Vec::with_capacity(ambient + m);
    for i in 0..ambient {
        let mut row = vec![Int::zero(); width];
        for (k, (c, n)) in rows.iter().enumerate() {
            assert!(n.is_positive(), "congruence modulus must be positive");
            assert_eq!(c.len(), ambient);
            row[k] = c[i].mod_floor(n);
        }
        row[m + i] = Int::one();
        mat.push(row);
    }
    for (k, (_, n)) in rows.iter().enumerate() {
        let mut row = vec![Int::zero(); width];
        row[k] = n.clone();
        mat.push(row);
    }
    let h = hnf(&mat, width);
    let kept: IntMatrix = h
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect();
    Lattice::from_rows(ambient, &kept)
}

/// Converts a machine-integer matrix.
pub fn imat(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ivec};

    fn lat(rows: &[&[i64]]) -> Lattice {
        let m = imat(rows);
        let amb = m.first().map_or(0, |r| r.len());
        Lattice::from_rows(amb, &m)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&imat(&[&[2, 0], &[0, 2]]), 2), imat(&[&[2, 0], &[0, 2]]));
        let a = hnf(&imat(&[&[1, 1], &[0, 2]]), 2);
        let b = hnf(&imat(&[&[1, -1], &[0, 2]]), 2);
        assert_eq!(a, b);
        assert_eq!(a, imat(&[&[1, 1], &[0, 2]]));
        assert!(hnf(&imat(&[&[0, 0]]), 2).is_empty());
    }

    #[test]
    fn hnf_double_inclusion() {
        let a = lat(&[&[1, 1], &[0, 2]]);
        let b = lat(&[&[1, -1], &[0, 2]]);
        assert!(a.is_sublattice_of(&b) && b.is_sublattice_of(&a));
    }

    #[test]
    fn snf_examples() {
        let s = snf(&imat(&[&[2, 0], &[0, 6]]), 2);
        assert_eq!(s.diagonal, ivec(&[2, 6]));
        let s = snf(&imat(&[&[2, 1], &[1, 2]]), 2);
        assert_eq!(s.diagonal, ivec(&[1, 3]));
        assert_eq!(s.torsion().invariant_factors(), &ivec(&[3])[..]);
        let s = snf(&imat(&[&[2, -1], &[-1, 2]]), 2);
        assert_eq!(s.torsion().order(), int(3));
        let s = snf(&imat(&[&[4, 6]]), 2);
        assert_eq!(s.diagonal, ivec(&[2]));
        assert_eq!(s.free_rank(), 1);
    }

    #[test]
    fn snf_transforms_diagonalize() {
        let m = imat(&[&[6, 4, 2], &[2, 8, 10], &[3, 3, 9]]);
        let s = snf(&m, 3);
        let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diagonal[i].clone() } else { int(0) };
                assert_eq!(d[i][j], want);
            }
        }
        assert_eq!(det(&s.u).abs(), int(1));
        assert_eq!(det(&s.v).abs(), int(1));
        for w in s.diagonal.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || (w[1].clone() % &w[0]).is_zero());
        }
    }

    #[test]
    fn index_examples() {
        let z2 = Lattice::full(2);
        assert_eq!(lat(&[&[2, 0], &[0, 2]]).index_in(&z2).unwrap(), Index::Finite(int(4)));
        assert_eq!(lat(&[&[1, 0]]).index_in(&z2).unwrap(), Index::Infinite);
        assert!(z2.index_in(&lat(&[&[2, 0], &[0, 2]])).is_err());
        // A1 with l = 2: lQ = 4ωℤ inside P = ℤω
        assert_eq!(lat(&[&[4]]).index_in(&Lattice::full(1)).unwrap(), Index::Finite(int(4)));
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(congruence_kernel(1, &[(ivec(&[1]), int(2))]), lat(&[&[2]]));
        let k = congruence_kernel(2, &[(ivec(&[1, 1]), int(3))]);
        assert_eq!(k.index_in(&Lattice::full(2)).unwrap(), Index::Finite(int(3)));
        assert!(k.contains(&ivec(&[1, 2])) && !k.contains(&ivec(&[1, 0])));
        assert_eq!(congruence_kernel(3, &[]), Lattice::full(3));
    }

    #[test]
    fn intersect_quotient_member() {
        let a = lat(&[&[2, 0], &[0, 2]]);
        let b = lat(&[&[3, 0], &[0, 3]]);
        assert_eq!(a.intersect(&b), lat(&[&[6, 0], &[0, 6]]));
        // A1, X = P = ℤω, lQ = 3·(2ω) = 6ωℤ: P/3Q ≅ ℤ/6
        let g = quotient(&lat(&[&[6]]), &Lattice::full(1)).unwrap();
        assert_eq!(g.invariant_factors(), &ivec(&[6])[..]);
        // ω ∉ Q = 2ωℤ
        assert!(!lat(&[&[2]]).contains(&ivec(&[1])));
        assert!(quotient(&Lattice::full(1), &lat(&[&[2]])).is_err());
    }

    #[test]
    fn solve_integer_cases() {
        let a = imat(&[&[2, 4], &[6, 8]]);
        let x = solve_integer(&a, 2, &ivec(&[2, 2])).unwrap();
        assert_eq!(vec_mat(&x, &[ivec(&[2, 6]), ivec(&[4, 8])]), ivec(&[2, 2]));
        assert!(solve_integer(&imat(&[&[2]]), 1, &ivec(&[1])).is_none());
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&ivec(&[4, 6]));
        assert_eq!(g.invariant_factors(), &ivec(&[2, 12])[..]);
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }
}
