//! Cross-checks against independent computations: closed formulas, brute
//! force over residues and floating-point evaluation in ℂ.

use num_traits::{ToPrimitive, Zero};
use qfiber::centers::center_tower;
use qfiber::cyclo::{qfact, CycloNum};
use qfiber::intlat::{index, quotient, snf, Lattice};
use qfiber::qparam::{Angle, QParam};
use qfiber::rmatrix::RSetup;
use qfiber::rootdata::{LatticeSpec, RootDatum};
use qfiber::{int, ivec, rat, Int, Rat};

fn sc(t: &str) -> RootDatum {
    RootDatum::simply_connected(t.parse().unwrap()).unwrap()
}

#[test]
fn positive_root_counts_match_closed_forms() {
    let cases: &[(&str, usize)] = &[
        ("A1", 1),
        ("A4", 10),
        ("B3", 9),
        ("C4", 16),
        ("D4", 12),
        ("D5", 20),
        ("E6", 36),
        ("E7", 63),
        ("E8", 120),
        ("F4", 24),
        ("G2", 6),
    ];
    for &(t, n) in cases {
        assert_eq!(sc(t).positive_roots().len(), n, "{t}");
    }
}

#[test]
fn highest_root_height_is_coxeter_minus_one() {
    let cases: &[(&str, i64)] = &[("A3", 3), ("B3", 5), ("C3", 5), ("D4", 5), ("E6", 11), ("E8", 29), ("F4", 11), ("G2", 5)];
    for &(t, h) in cases {
        let top = sc(t).positive_roots().iter().map(|g| g.height.clone()).max().unwrap();
        assert_eq!(top, int(h), "{t}");
    }
}

#[test]
fn type_a_killing_form_closed_form() {
    for n in 1..=5i64 {
        let rd = sc(&format!("A{n}"));
        for i in 1..=n {
            for j in 1..=n {
                let expect = rat(i.min(j) * (n + 1 - i.max(j)), n + 1);
                assert_eq!(rd.killing()[(i - 1) as usize][(j - 1) as usize], expect);
            }
        }
    }
}

#[test]
fn center_orders() {
    let cases: &[(&str, i64)] = &[("A4", 5), ("B3", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)];
    for &(t, z) in cases {
        assert_eq!(sc(t).center_order(), int(z), "{t}");
    }
}

#[test]
fn pairing_with_roots_is_divisible_by_d() {
    for t in ["B3", "C3", "G2", "F4"] {
        let rd = sc(t);
        for g in rd.positive_roots() {
            for i in 0..rd.rank() {
                let v = rd.pairing(&rd.fundamental_weight(i), &g.weight) / Rat::from(g.d.clone());
                assert!(v.is_integer(), "{t}");
            }
        }
    }
}

fn residues(r: usize, m: i64) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| (0..m).map(move |x| {
                let mut w = v.clone();
                w.push(int(x));
                w
            }))
            .collect();
    }
    out
}

/// Counts residues mod `m·ℤ^r` lying in each tower member by the defining
/// conditions and compares with lattice indices.
#[test]
fn tower_by_brute_force_over_residues() {
    let cases: &[(&str, bool, i64, i64)] = &[
        ("A1", false, 1, 3),
        ("A1", false, 1, 4),
        ("A2", false, 1, 6),
        ("B2", false, 1, 6),
        ("A2", true, 1, 5),
        ("G2", false, 1, 4),
        ("C2", false, 1, 10),
    ];
    for &(t, adjoint, num, den) in cases {
        let ty = t.parse().unwrap();
        let rd = if adjoint { RootDatum::adjoint(ty) } else { RootDatum::simply_connected(ty) }.unwrap();
        let q = QParam::uniform(rd, rat(num, den)).unwrap();
        let rd = q.datum();
        let tower = center_tower(&q).unwrap();
        let r = rd.rank();
        // exponent of P/lQ, so that mℤ^r sits inside every tower member
        let m = quotient(&tower.l_q, &Lattice::full(r)).unwrap().invariant_factors().last().cloned().unwrap_or(int(1));
        let m = m.to_i64().unwrap();
        assert!(m.pow(r as u32) <= 100_000, "{t}: test lattice too large");
        let test = Lattice::full(r).scaled(&int(m));
        let x = rd.char_lattice();
        let two = int(2);
        let (mut n_x, mut n_star, mut n_mug, mut n_tan) = (0u64, 0u64, 0u64, 0u64);
        for v in residues(r, m) {
            if !x.contains(&v) {
                continue;
            }
            n_x += 1;
            if !(0..r).all(|i| q.eval(&v, rd.simple_root(i)).scale(&two).is_zero()) {
                continue;
            }
            n_star += 1;
            assert!(tower.x_star.contains(&v));
            if !x.basis().iter().all(|b| q.eval(&v, b).scale(&two).is_zero()) {
                assert!(!tower.x_mug.contains(&v));
                continue;
            }
            n_mug += 1;
            assert!(tower.x_mug.contains(&v));
            if q.eval(&v, &v).is_zero() {
                n_tan += 1;
                assert!(tower.x_tan.contains(&v), "{t} {v:?}");
            } else {
                assert!(!tower.x_tan.contains(&v));
            }
        }
        let idx = |l: &Lattice| index(&test, l).unwrap().finite().unwrap().to_u64().unwrap();
        assert!(test.is_sublattice_of(&tower.l_q), "test lattice must sit inside lQ");
        assert_eq!(n_x, idx(x), "{t}");
        assert_eq!(n_star, idx(&tower.x_star), "{t}");
        assert_eq!(n_mug, idx(&tower.x_mug), "{t}");
        assert_eq!(n_tan, idx(&tower.x_tan), "{t}");
    }
}

#[test]
fn quotient_order_matches_residue_count() {
    let sub = Lattice::from_rows(2, &[ivec(&[2, 4]), ivec(&[0, 6])]);
    let sup = Lattice::full(2);
    let g = quotient(&sub, &sup).unwrap();
    assert_eq!(g.invariant_factors(), &ivec(&[2, 6])[..]);
    let count = residues(2, 12).into_iter().filter(|v| sub.contains(v)).count();
    // residues of 12ℤ² lying in sub: [sub : 12ℤ²] = 144 / 12
    assert_eq!(count, 12);
    let s = snf(sub.basis(), 2);
    let prod: Int = s.diagonal.iter().product();
    assert_eq!(prod, int(12));
}

fn to_complex(x: &CycloNum) -> (f64, f64) {
    let n = x.conductor() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in x.coeffs().iter().enumerate() {
        let c = c.to_f64().unwrap();
        let t = std::f64::consts::TAU * k as f64 / n;
        re += c * t.cos();
        im += c * t.sin();
    }
    (re, im)
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cis(a: f64) -> (f64, f64) {
    let t = std::f64::consts::TAU * a;
    (t.cos(), t.sin())
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8
}

#[test]
fn cyclotomic_products_agree_with_complex_numbers() {
    for n in [3usize, 5, 7, 8, 9, 12, 15, 20, 24] {
        let a = &CycloNum::zeta_pow(n, 1) + &CycloNum::from_int(n, 2);
        let b = &CycloNum::zeta_pow(n, 3) - &CycloNum::zeta_pow(n, n as i64 - 1);
        let p = &a * &b;
        assert!(close(to_complex(&p), cmul(to_complex(&a), to_complex(&b))), "N={n}");
        let inv = a.inverse().unwrap();
        assert!(close(cmul(to_complex(&inv), to_complex(&a)), (1.0, 0.0)), "N={n}");
    }
}

/// Evaluates the coefficient display in floating point.
fn coeff_f64(s: &RSetup, n: &[u32]) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    let mut parity = Int::zero();
    let mut phase = 0.0;
    for (i, k) in n.iter().enumerate() {
        parity += &s.heights[i] * int(*k as i64);
        phase += s.rho_phases[i].value().to_f64().unwrap() * *k as f64;
        let a = s.scalars[i].value().to_f64().unwrap();
        let k = *k as i64;
        let mut f = cis(-a * (k * (k + 1) / 2) as f64);
        let diff = (0.0, 2.0 * (std::f64::consts::TAU * a).sin());
        for _ in 0..k {
            f = cmul(f, diff);
        }
        for j in 1..=k {
            let mut qi = (0.0, 0.0);
            for t in 0..j {
                let e = cis(a * (j - 1 - 2 * t) as f64);
                qi = (qi.0 + e.0, qi.1 + e.1);
            }
            f = cmul(f, qi);
        }
        acc = cmul(acc, f);
    }
    acc = cmul(acc, cis(phase));
    if parity.to_i64().unwrap() % 2 != 0 {
        acc = (-acc.0, -acc.1);
    }
    acc
}

#[test]
fn r_coefficients_agree_with_complex_evaluation() {
    for (t, c) in [("A1", rat(1, 4)), ("A1", rat(1, 5)), ("A2", rat(1, 6)), ("B2", rat(1, 8)), ("G2", rat(1, 12))] {
        let rd = sc(t);
        let q = QParam::uniform(rd, c).unwrap();
        let s = RSetup::new(&q).unwrap();
        for n in s.supports(2000).unwrap() {
            let exact = s.coeff(&n).unwrap();
            let approx = coeff_f64(&s, &n);
            let e = to_complex(&exact);
            let scale = 1.0 + approx.0.abs() + approx.1.abs();
            assert!((e.0 - approx.0).abs() < 1e-6 * scale && (e.1 - approx.1).abs() < 1e-6 * scale, "{t} {n:?}");
        }
    }
}

#[test]
fn quantum_factorial_vanishing_by_brute_force() {
    for l in 1..=6i64 {
        // v with ord(v²) = l: take v = ζ_{2l}
        let n = (2 * l) as usize;
        let v = CycloNum::zeta_pow(n, 1);
        let v2 = &v * &v;
        let ord = (1..=2 * l).find(|&k| v2.pow(k).unwrap().is_one()).unwrap();
        assert_eq!(ord, l);
        for k in 0..=12u32 {
            let z = qfact(k, &v).unwrap().is_zero();
            assert_eq!(z, i64::from(k) >= l && l > 1, "l={l} k={k}");
        }
    }
}

#[test]
fn explicit_lattice_between_q_and_p() {
    // SO(4)-like lattice for A1xA1: spanned by Q and ω1+ω2
    let ty = "A1xA1".parse().unwrap();
    let rd = RootDatum::new(ty, LatticeSpec::Explicit(vec![ivec(&[2, 0]), ivec(&[1, 1])])).unwrap();
    assert!(!rd.is_adjoint() && !rd.is_simply_connected());
    let q = QParam::new(rd, vec![rat(1, 4), rat(1, 4)]).unwrap();
    let t = center_tower(&q).unwrap();
    assert!(t.l_q.is_sublattice_of(&t.x_tan));
    assert_eq!(Angle::from_frac(1, 2).order(), int(2));
}
