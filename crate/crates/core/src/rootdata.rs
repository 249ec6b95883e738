//! Semisimple root data: Cartan data, the normalized Killing form, the lattices
//! `Q ⊆ X ⊆ P`, Weyl reflections and the ordered positive roots.
//!
//! Weights are integer vectors in the fundamental-weight basis of `P`. With
//! the Cartan convention `A[i][j] = ⟨α_j, α_i^∨⟩` the simple root `α_j` has
//! coordinates `A[·][j]` and `⟨λ, α_i^∨⟩ = λ_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intlat::{det, IntMatrix, Lattice};
use crate::{Error, Int, Rat, Result};

/// An integer vector in the fundamental-weight basis.
pub type Weight = Vec<Int>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn lacing(self) -> u32 {
        match self {
            Family::A | Family::D | Family::E => 1,
            Family::B | Family::C | Family::F => 2,
            Family::G => 3,
        }
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// One almost-simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.admits_rank(rank) {
            return Err(Error::InvalidInput(format!(
                "no Dynkin type {}{rank}",
                family.letter()
            )));
        }
        Ok(Self { family, rank })
    }

    /// Relative root lengths `d_i` and the edges of the Dynkin diagram
    /// (Bourbaki numbering).
    fn shape(&self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (vec![1; n], chain(n)),
            Family::B => {
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (d, chain(n))
            }
            Family::C => {
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (d, chain(n))
            }
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (vec![1; n], e)
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                (vec![1; n], e)
            }
            Family::F => (vec![2, 2, 1, 1], chain(4)),
            Family::G => (vec![1, 3], chain(2)),
        }
    }

    /// Cartan matrix `A[i][j] = 2(α_i, α_j)/(α_i, α_i)` and symmetrizers.
    pub fn cartan(&self) -> (IntMatrix, Vec<Int>) {
        let (d, edges) = self.shape();
        let n = self.rank;
        let mut a = vec![vec![Int::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = Int::from(2);
        }
        for &(i, j) in &edges {
            let b = -d[i].max(d[j]);
            a[i][j] = Int::from(b / d[i]);
            a[j][i] = Int::from(b / d[j]);
        }
        (a, d.into_iter().map(Int::from).collect())
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Ordered list of almost-simple factors, e.g. `A2xB3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    factors: Vec<SimpleFactor>,
}

impl DynkinType {
    pub fn new(factors: Vec<SimpleFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("empty Dynkin type".into()));
        }
        Ok(Self { factors })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![SimpleFactor::new(family, rank)?])
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(Error::InvalidInput(format!("bad Dynkin factor '{part}'"))),
            };
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rank in '{part}'")))?;
            factors.push(SimpleFactor::new(fam, rank)?);
        }
        Self::new(factors)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// How the character lattice `X` sits between `Q` and `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    SimplyConnected,
    Adjoint,
    /// Generator rows in the fundamental-weight basis.
    Explicit(IntMatrix),
}

/// A positive root with both coordinate views.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients over the simple roots.
    pub coeffs: Vec<Int>,
    /// Coordinates in the fundamental-weight basis.
    pub weight: Weight,
    pub height: Int,
    /// `d_γ = (γ, γ)/2`.
    pub d: Int,
    /// Index of the almost-simple factor containing the root.
    pub factor: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    dynkin: DynkinType,
    cartan: IntMatrix,
    symmetrizers: Vec<Int>,
    killing: Vec<Vec<Rat>>,
    simple_roots: IntMatrix,
    root_lattice: Lattice,
    char_lattice: Lattice,
    lacing: u32,
    factor_of: Vec<usize>,
    pos_roots: Vec<Root>,
    w0_word: Vec<usize>,
}

impl RootDatum {
    pub fn new(dynkin: DynkinType, spec: LatticeSpec) -> Result<Self> {
        let r = dynkin.rank();
        let mut cartan = vec![vec![Int::zero(); r]; r];
        let mut symmetrizers = Vec::with_capacity(r);
        let mut factor_of = Vec::with_capacity(r);
        let mut offset = 0;
        let mut lacing = 1u32;
        for (fi, f) in dynkin.factors().iter().enumerate() {
            let (a, d) = f.cartan();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[offset + i][offset + j] = a[i][j].clone();
                }
            }
            symmetrizers.extend(d);
            factor_of.extend(std::iter::repeat_n(fi, f.rank));
            lacing = lacing.lcm(&f.family.lacing());
            offset += f.rank;
        }
        for i in 0..r {
            for j in 0..r {
                if &symmetrizers[i] * &cartan[i][j] != &symmetrizers[j] * &cartan[j][i] {
                    return Err(Error::Invariant(format!("Cartan matrix not symmetrizable at ({i},{j})")));
                }
            }
        }
        // (ω_i, ω_j) = (D A^{-1})_{ij}
        let inv = rational_inverse(&cartan)?;
        let killing: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..r).map(|j| Rat::from(symmetrizers[i].clone()) * &inv[i][j]).collect())
            .collect();
        let simple_roots: IntMatrix = (0..r).map(|j| (0..r).map(|i| cartan[i][j].clone()).collect()).collect();
        let root_lattice = Lattice::from_rows(r, &simple_roots);
        let char_lattice = match spec {
            LatticeSpec::SimplyConnected => Lattice::full(r),
            LatticeSpec::Adjoint => root_lattice.clone(),
            LatticeSpec::Explicit(rows) => {
                if rows.iter().any(|row| row.len() != r) {
                    return Err(Error::InvalidInput(format!(
                        "lattice generators must have {r} coordinates"
                    )));
                }
                let x = Lattice::from_rows(r, &rows);
                if !root_lattice.is_sublattice_of(&x) {
                    return Err(Error::InvalidInput("lattice generators do not span a lattice containing Q".into()));
                }
                x
            }
        };
        let mut rd = Self {
            dynkin,
            cartan,
            symmetrizers,
            killing,
            simple_roots,
            root_lattice,
            char_lattice,
            lacing,
            factor_of,
            pos_roots: Vec::new(),
            w0_word: Vec::new(),
        };
        rd.check_normalization()?;
        rd.w0_word = rd.greedy_longest_word();
        rd.pos_roots = rd.enumerate_from_word()?;
        Ok(rd)
    }

    pub fn simply_connected(dynkin: DynkinType) -> Result<Self> {
        Self::new(dynkin, LatticeSpec::SimplyConnected)
    }

    pub fn adjoint(dynkin: DynkinType) -> Result<Self> {
        Self::new(dynkin, LatticeSpec::Adjoint)
    }

    fn check_normalization(&self) -> Result<()> {
        let r = self.rank();
        for j in 0..r {
            let a = &self.simple_roots[j];
            let len = self.pairing(a, a);
            if len != Rat::from(Int::from(2) * &self.symmetrizers[j]) {
                return Err(Error::Invariant(format!("(α_{j}, α_{j}) = {len} disagrees with 2d")));
            }
        }
        for fi in 0..self.dynkin.factors().len() {
            let min = (0..r).filter(|&i| self.factor_of[i] == fi).map(|i| &self.symmetrizers[i]).min();
            if min != Some(&Int::one()) {
                return Err(Error::Invariant(format!("factor {fi} has no root of squared length 2")));
            }
        }
        Ok(())
    }

    pub fn dynkin(&self) -> &DynkinType {
        &self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[Int] {
        &self.symmetrizers
    }

    /// Gram matrix of `(ω_i, ω_j)`.
    pub fn killing(&self) -> &[Vec<Rat>] {
        &self.killing
    }

    /// Row `j` holds `α_j` in the fundamental-weight basis.
    pub fn simple_roots(&self) -> &IntMatrix {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        (0..self.rank()).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()
    }

    pub fn root_lattice(&self) -> &Lattice {
        &self.root_lattice
    }

    pub fn weight_lattice(&self) -> Lattice {
        Lattice::full(self.rank())
    }

    pub fn char_lattice(&self) -> &Lattice {
        &self.char_lattice
    }

    pub fn lacing(&self) -> u32 {
        self.lacing
    }

    /// Almost-simple factor index of each simple root.
    pub fn factor_of(&self) -> &[usize] {
        &self.factor_of
    }

    pub fn factor_count(&self) -> usize {
        self.dynkin.factors().len()
    }

    pub fn is_simply_connected(&self) -> bool {
        self.char_lattice.is_full_rank() && self.char_lattice == self.weight_lattice()
    }

    pub fn is_adjoint(&self) -> bool {
        self.char_lattice == self.root_lattice
    }

    /// `|Z(G̃)| = [P : Q] = det A`.
    pub fn center_order(&self) -> Int {
        det(&self.cartan).abs()
    }

    /// Killing pairing of two weights.
    pub fn pairing(&self, a: &[Int], b: &[Int]) -> Rat {
        bilinear(&self.killing, a, b)
    }

    /// Weight coordinates of `Σ c_j α_j`.
    pub fn root_to_weight(&self, coeffs: &[Int]) -> Weight {
        crate::intlat::vec_mat(coeffs, &self.simple_roots)
    }

    /// `s_i(λ) = λ − ⟨λ, α_i^∨⟩ α_i`.
    pub fn weyl_reflect(&self, i: usize, lambda: &[Int]) -> Result<Weight> {
        if i >= self.rank() {
            return Err(Error::InvalidInput(format!("simple index {i} out of range")));
        }
        if lambda.len() != self.rank() {
            return Err(Error::InvalidInput("weight has wrong length".into()));
        }
        Ok(self.reflect_unchecked(i, lambda))
    }

    fn reflect_unchecked(&self, i: usize, lambda: &[Int]) -> Weight {
        let k = &lambda[i];
        lambda.iter().zip(&self.simple_roots[i]).map(|(x, a)| x - k * a).collect()
    }

    // s_i on root coordinates
    fn reflect_coeffs(&self, i: usize, c: &[Int]) -> Vec<Int> {
        let k: Int = c.iter().zip(&self.cartan[i]).map(|(x, a)| x * a).sum();
        let mut out = c.to_vec();
        out[i] -= k;
        out
    }

    /// `2ρ`, the sum of the positive roots.
    pub fn two_rho(&self) -> Weight {
        let mut acc = vec![Int::zero(); self.rank()];
        for g in &self.pos_roots {
            for (a, x) in acc.iter_mut().zip(&g.weight) {
                *a += x;
            }
        }
        acc
    }

    /// Reduced word `i_1 … i_t` for `w0 = s_{i_t} ⋯ s_{i_1}`, `i_1` applied first.
    pub fn longest_word(&self) -> &[usize] {
        &self.w0_word
    }

    /// `Φ⁺` ordered by `γ_j = s_{i_t} ⋯ s_{i_{j+1}}(α_{i_j})`.
    pub fn positive_roots(&self) -> &[Root] {
        &self.pos_roots
    }

    // greedy descent from ρ, lowest index first
    fn greedy_longest_word(&self) -> Vec<usize> {
        let r = self.rank();
        let mut lambda: Weight = vec![Int::one(); r];
        let mut word = Vec::new();
        while let Some(i) = (0..r).find(|&i| lambda[i].is_positive()) {
            lambda = self.reflect_unchecked(i, &lambda);
            word.push(i);
        }
        word
    }

    fn make_root(&self, coeffs: Vec<Int>) -> Root {
        let weight = self.root_to_weight(&coeffs);
        let height = coeffs.iter().sum();
        let len = self.pairing(&weight, &weight);
        let d = (len / Rat::from(Int::from(2))).to_integer();
        let factor = coeffs
            .iter()
            .position(|x| !x.is_zero())
            .map(|i| self.factor_of[i])
            .unwrap_or(0);
        Root { coeffs, weight, height, d, factor }
    }

    fn enumerate_from_word(&self) -> Result<Vec<Root>> {
        let r = self.rank();
        let word = &self.w0_word;
        let mut roots = Vec::with_capacity(word.len());
        for (j, &ij) in word.iter().enumerate() {
            let mut c: Vec<Int> = (0..r).map(|k| if k == ij { Int::one() } else { Int::zero() }).collect();
            for &s in &word[j + 1..] {
                c = self.reflect_coeffs(s, &c);
            }
            roots.push(c);
        }
        let from_word: BTreeSet<Vec<Int>> = roots.iter().cloned().collect();
        let orbit = self.orbit_positive_roots();
        if from_word.len() != roots.len() || from_word != orbit {
            return Err(Error::Invariant(format!(
                "word enumeration ({} roots) disagrees with orbit closure ({} roots)",
                roots.len(),
                orbit.len()
            )));
        }
        Ok(roots.into_iter().map(|c| self.make_root(c)).collect())
    }

    /// Positive roots by closing the simple roots under reflections.
    pub fn orbit_positive_roots(&self) -> BTreeSet<Vec<Int>> {
        let r = self.rank();
        let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
        let mut frontier: Vec<Vec<Int>> = (0..r)
            .map(|i| (0..r).map(|k| if k == i { Int::one() } else { Int::zero() }).collect())
            .collect();
        for f in &frontier {
            seen.insert(f.clone());
        }
        while let Some(c) = frontier.pop() {
            for i in 0..r {
                let n = self.reflect_coeffs(i, &c);
                if !seen.contains(&n) {
                    seen.insert(n.clone());
                    frontier.push(n);
                }
            }
        }
        seen.into_iter().filter(|c| c.iter().all(|x| !x.is_negative())).collect()
    }

    /// Row `i` as the coroot pairing `⟨λ, α_i^∨⟩` is just `λ_i`.
    pub fn coroot_pairing(&self, lambda: &[Int], i: usize) -> Int {
        lambda[i].clone()
    }
}

/// Searches for a permutation `σ` with `a[i][j] == b[σ(i)][σ(j)]` that
/// `accept` approves. Returns the first accepted one.
pub fn find_cartan_isomorphism(
    a: &[Vec<Int>],
    b: &[Vec<Int>],
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    fn go(
        a: &[Vec<Int>],
        b: &[Vec<Int>],
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = sigma.len();
        if i == a.len() {
            return accept(sigma);
        }
        for t in 0..a.len() {
            if used[t] || a[i][i] != b[t][t] {
                continue;
            }
            let fits = (0..i).all(|k| a[i][k] == b[t][sigma[k]] && a[k][i] == b[sigma[k]][t]);
            if !fits {
                continue;
            }
            used[t] = true;
            sigma.push(t);
            if go(a, b, sigma, used, accept) {
                return true;
            }
            sigma.pop();
            used[t] = false;
        }
        false
    }
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if go(a, b, &mut sigma, &mut used, &mut accept) {
        Some(sigma)
    } else {
        None
    }
}

/// Names the Dynkin type of a Cartan matrix, factors ordered by their lowest
/// node. `None` if some component is not of finite type.
pub fn identify_cartan(m: &[Vec<Int>]) -> Option<DynkinType> {
    let n = m.len();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut nodes = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for w in 0..n {
                if comp[w] == usize::MAX && (!m[v][w].is_zero() || !m[w][v].is_zero()) {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        nodes.sort_unstable();
        comps.push(nodes);
    }
    let families = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
    let mut factors = Vec::new();
    for nodes in comps {
        let sub: Vec<Vec<Int>> = nodes.iter().map(|&i| nodes.iter().map(|&j| m[i][j].clone()).collect()).collect();
        let k = nodes.len();
        let found = families.iter().filter(|f| f.admits_rank(k)).find_map(|&family| {
            let f = SimpleFactor { family, rank: k };
            let (c, _) = f.cartan();
            find_cartan_isomorphism(&sub, &c, |_| true).map(|_| f)
        })?;
        factors.push(found);
    }
    DynkinType::new(factors).ok()
}

/// `aᵀ M b` for a rational Gram matrix.
pub fn bilinear(m: &[Vec<Rat>], a: &[Int], b: &[Int]) -> Rat {
    let mut acc = Rat::zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut row = Rat::zero();
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() && !m[i][j].is_zero() {
                row += &m[i][j] * Rat::from(y.clone());
            }
        }
        acc += row * Rat::from(x.clone());
    }
    acc
}

/// Exact inverse of an integer matrix over ℚ.
pub fn rational_inverse(m: &[Vec<Int>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|x| Rat::from(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::InvalidInput("singular matrix".into()))?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let (pr, row) = if i < c {
                let (h, t) = a.split_at_mut(c);
                (&t[0], &mut h[i])
            } else {
                let (h, t) = a.split_at_mut(i);
                (&h[c], &mut t[0])
            };
            for (x, y) in row.iter_mut().zip(pr.iter()) {
                *x -= &f * y;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ivec, rat};

    fn sc(s: &str) -> RootDatum {
        RootDatum::simply_connected(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_normalization() {
        let rd = sc("A1");
        assert_eq!(rd.simple_root(0), &ivec(&[2]));
        assert_eq!(rd.killing()[0][0], rat(1, 2));
        assert!(rd.is_simply_connected());
    }

    #[test]
    fn a2_adjoint_index() {
        let rd = RootDatum::adjoint("A2".parse().unwrap()).unwrap();
        assert!(rd.is_adjoint());
        let idx = rd.char_lattice().index_in(&rd.weight_lattice()).unwrap();
        assert_eq!(idx.finite(), Some(&int(3)));
        assert_eq!(rd.center_order(), int(3));
    }

    #[test]
    fn g2_data() {
        let rd = sc("G2");
        assert_eq!(rd.lacing(), 3);
        assert_eq!(rd.symmetrizers(), &ivec(&[1, 3])[..]);
        let a = rd.cartan();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&rd.symmetrizers()[i] * &a[i][j], &rd.symmetrizers()[j] * &a[j][i]);
            }
        }
    }

    #[test]
    fn inadmissible_types_rejected() {
        for bad in ["E5", "F3", "G3", "B1", "D2", "A0", "H3", ""] {
            assert!(bad.parse::<DynkinType>().is_err(), "{bad}");
        }
        let t: DynkinType = "A2xB3".parse().unwrap();
        assert_eq!(t.to_string(), "A2xB3");
    }

    #[test]
    fn explicit_lattice_must_contain_q() {
        let t: DynkinType = "A1".parse().unwrap();
        assert!(RootDatum::new(t.clone(), LatticeSpec::Explicit(vec![ivec(&[4])])).is_err());
        let rd = RootDatum::new(t, LatticeSpec::Explicit(vec![ivec(&[2])])).unwrap();
        assert!(rd.is_adjoint());
    }

    #[test]
    fn a2_positive_roots_from_word() {
        let rd = sc("A2");
        assert_eq!(rd.longest_word(), &[0, 1, 0]);
        let coeffs: Vec<Vec<Int>> = rd.positive_roots().iter().map(|g| g.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn b2_heights() {
        let rd = sc("B2");
        let mut h: Vec<Int> = rd.positive_roots().iter().map(|g| g.height.clone()).collect();
        h.sort();
        assert_eq!(h, ivec(&[1, 1, 2, 3]));
    }

    #[test]
    fn word_lengths() {
        assert_eq!(sc("A1").longest_word().len(), 1);
        assert_eq!(sc("A2").longest_word().len(), 3);
        assert_eq!(sc("G2").longest_word().len(), 6);
        assert_eq!(sc("E8").longest_word().len(), 120);
    }

    #[test]
    fn reflections() {
        let a1 = sc("A1");
        assert_eq!(a1.weyl_reflect(0, &ivec(&[1])).unwrap(), ivec(&[-1]));
        let a2 = sc("A2");
        let a = a2.simple_root(0).clone();
        let b = a2.simple_root(1).clone();
        assert_eq!(a2.weyl_reflect(0, &a).unwrap(), a.iter().map(|x| -x).collect::<Vec<_>>());
        let sum: Vec<Int> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(a2.weyl_reflect(0, &b).unwrap(), sum);
        assert!(a2.weyl_reflect(2, &a).is_err());
    }

    #[test]
    fn two_rho_is_twice_sum_of_fundamentals() {
        for t in ["A1", "A2", "B2", "G2", "C3", "D4", "F4"] {
            let rd = sc(t);
            assert_eq!(rd.two_rho(), vec![int(2); rd.rank()], "{t}");
        }
    }

    #[test]
    fn w0_sends_fundamentals_to_antidominant() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "A1xG2"] {
            let rd = sc(t);
            for i in 0..rd.rank() {
                let mut w = rd.fundamental_weight(i);
                for &s in rd.longest_word() {
                    w = rd.weyl_reflect(s, &w).unwrap();
                }
                assert!(w.iter().all(|x| !x.is_positive()), "{t}");
            }
        }
    }

    #[test]
    fn cross_factor_pairings_vanish() {
        let rd = sc("A1xB2");
        assert!(rd.killing()[0][1].is_zero() && rd.killing()[0][2].is_zero());
        assert_eq!(rd.lacing(), 2);
    }

    #[test]
    fn identify_types() {
        for t in ["A3", "B3", "C3", "D4", "E6", "F4", "G2", "A1xB2"] {
            let rd = sc(t);
            assert_eq!(identify_cartan(rd.cartan()).unwrap().to_string(), t);
        }
        let b3 = sc("B3");
        let tr: IntMatrix = (0..3).map(|i| (0..3).map(|j| b3.cartan()[j][i].clone()).collect()).collect();
        assert_eq!(identify_cartan(&tr).unwrap().to_string(), "C3");
        // rank two: B and C coincide up to relabeling
        assert_eq!(identify_cartan(sc("C2").cartan()).unwrap().to_string(), "B2");
        assert!(identify_cartan(&[ivec(&[2, -2]), ivec(&[-2, 2])]).is_none());
    }
}
