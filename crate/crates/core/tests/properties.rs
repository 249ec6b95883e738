use proptest::prelude::*;

use qfiber::centers::{center_tower, g_check};
use qfiber::cyclo::{qbinom, qfact, qint, CycloNum};
use qfiber::intlat::{hnf, index, snf, Lattice};
use qfiber::invariants::dim_report;
use qfiber::kappa::{build_kappa, extend_psi, radicals};
use qfiber::qparam::QParam;
use qfiber::rmatrix::RSetup;
use qfiber::rootdata::RootDatum;
use qfiber::twistcheck::twist_report;
use qfiber::{int, Int, Rat};

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2"];

fn instance() -> impl Strategy<Value = (String, bool, i64, i64)> {
    (0..TYPES.len(), any::<bool>(), 1i64..24, 1i64..=24).prop_map(|(t, adj, a, b)| (TYPES[t].to_string(), adj, a % b, b))
}

fn build(t: &str, adjoint: bool, a: i64, b: i64) -> QParam {
    let ty = t.parse().unwrap();
    let rd = if adjoint { RootDatum::adjoint(ty) } else { RootDatum::simply_connected(ty) }.unwrap();
    QParam::uniform(rd, Rat::new(int(a), int(b))).unwrap()
}


fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn form_is_bilinear_symmetric_and_invariant(
        (t, adj, a, b) in instance(),
        seed in prop::collection::vec(-6i64..=6, 9),
        i in 0usize..3,
    ) {
        let q = build(&t, adj, a, b);
        let r = q.rank();
        let w = |k: usize| -> Vec<Int> { seed[k * 3..k * 3 + 3].iter().cycle().take(r).map(|&x| int(x)).collect() };
        let (l1, l2, m) = (w(0), w(1), w(2));
        prop_assert_eq!(q.eval(&add(&l1, &l2), &m), &q.eval(&l1, &m) + &q.eval(&l2, &m));
        prop_assert_eq!(q.eval(&l1, &m), q.eval(&m, &l1));
        let i = i % r;
        let rd = q.datum();
        let s1 = rd.weyl_reflect(i, &l1).unwrap();
        let s2 = rd.weyl_reflect(i, &m).unwrap();
        prop_assert_eq!(q.eval(&s1, &s2), q.eval(&l1, &m));
        prop_assert_eq!(rd.pairing(&s1, &s2), rd.pairing(&l1, &m));
        prop_assert_eq!(rd.weyl_reflect(i, &s1).unwrap(), l1);
    }

    #[test]
    fn tower_chain_and_dimension_identities((t, adj, a, b) in instance()) {
        let q = build(&t, adj, a, b);
        let tower = center_tower(&q).unwrap();
        prop_assert!(tower.l_q.is_sublattice_of(&tower.x_tan));
        prop_assert!(tower.x_tan.is_sublattice_of(&tower.x_mug));
        prop_assert!(tower.x_mug.is_sublattice_of(&tower.x_star));
        prop_assert!(tower.x_star.is_sublattice_of(&tower.x));
        for l in q.root_orders().unwrap() {
            prop_assert!(l >= int(1));
        }
        let kappa = build_kappa(&q, &tower.x_tan).unwrap();
        let rads = radicals(&q, &tower, &kappa).unwrap();
        prop_assert!(rads.rad_qk.is_sublattice_of(&rads.rad_q));
        prop_assert!(rads.rad_qk.is_sublattice_of(&rads.rad_kappa));
        let d = dim_report(&q, &tower, &rads).unwrap();
        prop_assert_eq!(&d.fpdim_fiber * &d.sigma_order, d.dim_uqk.clone());
        prop_assert_eq!(&d.tan_index * &d.sigma_order, d.grouplike_count.clone());
        let plus = &d.dim_u_plus * &d.dim_u_plus;
        prop_assert_eq!(&d.fpdim_fiber / &plus, d.simple_count_uq());
    }

    #[test]
    fn kappa_identities_and_psi_restriction((t, adj, a, b) in instance(), x in prop::collection::vec(-5i64..=5, 8)) {
        let q = build(&t, adj, a, b);
        let tower = center_tower(&q).unwrap();
        let kappa = build_kappa(&q, &tower.x_tan).unwrap();
        let k = tower.x_tan.rank();
        let u: Vec<Int> = x[..4].iter().cycle().take(k).map(|&v| int(v)).collect();
        let v: Vec<Int> = x[4..].iter().cycle().take(k).map(|&v| int(v)).collect();
        let uu = tower.x_tan.vector_from_coordinates(&u);
        let vv = tower.x_tan.vector_from_coordinates(&v);
        let kuv = kappa.eval(&uu, &vv).unwrap();
        prop_assert!(kappa.eval(&uu, &uu).unwrap().is_zero());
        prop_assert!((&kuv + &kappa.eval(&vv, &uu).unwrap()).is_zero());
        prop_assert_eq!(kuv.times(2), q.eval(&uu, &vv));
        let rads = radicals(&q, &tower, &kappa).unwrap();
        let ext = extend_psi(&kappa, &tower.x, &rads.rad_qk).unwrap();
        prop_assert_eq!(ext.psi.eval(&uu, &vv).unwrap(), kuv);
        prop_assert!(ext.vanishes_on_radical);
    }

    #[test]
    fn hnf_is_canonical(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..5), u in prop::collection::vec(-3i64..=3, 2)) {
        let m: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let l = Lattice::from_rows(3, &m);
        // add an integer combination of rows; the lattice must not change
        let mut more = m.clone();
        let extra: Vec<Int> = (0..3).map(|j| &m[0][j] * int(u[0]) + &m[m.len() - 1][j] * int(u[1])).collect();
        more.push(extra);
        prop_assert_eq!(Lattice::from_rows(3, &more), l.clone());
        prop_assert_eq!(hnf(l.basis(), 3), l.basis().clone());
        for row in &m {
            prop_assert!(l.contains(row));
        }
    }

    #[test]
    fn snf_transforms(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
        let m: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let s = snf(&m, 3);
        let prod = qfiber::intlat::mat_mul(&qfiber::intlat::mat_mul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.diagonal[i].clone() } else { int(0) };
                prop_assert_eq!(&prod[i][j], &expect);
            }
        }
        for w in s.diagonal.windows(2) {
            prop_assert!(w[1] == int(0) || (&w[1] % &w[0]) == int(0));
        }
        let l = Lattice::from_rows(3, &m);
        if l.is_full_rank() {
            let d: Int = s.diagonal.iter().product();
            prop_assert_eq!(index(&l, &Lattice::full(3)).unwrap().finite().cloned(), Some(d));
        }
    }

    #[test]
    fn quantum_integer_identity(n in 0i64..=12, conductor in 3usize..=24, k in 1i64..24) {
        let v = CycloNum::zeta_pow(conductor, k);
        let inv = v.inverse().unwrap();
        prop_assume!(!(&v - &inv).is_zero());
        let lhs = &qint(n, &v).unwrap() * &(&v - &inv);
        let rhs = &v.pow(n).unwrap() - &v.pow(-n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qbinom_multiplies_back(m in 0i64..=9, n in 0u32..=9, conductor in 1usize..=20, k in 0i64..20) {
        prop_assume!(i64::from(n) <= m);
        let v = CycloNum::zeta_pow(conductor, k);
        let b = qbinom(m, n, &v).unwrap();
        let lhs = &(&b * &qfact(n, &v).unwrap()) * &qfact((m - i64::from(n)) as u32, &v).unwrap();
        prop_assert_eq!(lhs, qfact(m as u32, &v).unwrap());
    }

    #[test]
    fn conductor_lift_commutes(a in 0i64..12, b in 0i64..12, step in 1usize..4) {
        let n = 12usize;
        let x = &CycloNum::zeta_pow(n, a) + &CycloNum::from_int(n, 3);
        let y = CycloNum::zeta_pow(n, b);
        let prod = (&x * &y).lift(n * step).unwrap();
        let lifted = &x.lift(n * step).unwrap() * &y.lift(n * step).unwrap();
        prop_assert_eq!(prod, lifted);
    }

    #[test]
    fn r_coefficients_vanish_exactly_off_support((t, adj, a, b) in instance()) {
        let q = build(&t, adj, a, b);
        prop_assume!(q.rank() <= 2);
        let s = RSetup::new(&q).unwrap();
        let Some(supports) = s.supports(400) else { return Ok(()) };
        prop_assert_eq!(Int::from(supports.len()), s.support_size());
        for n in &supports {
            let c = s.coeff(n).unwrap();
            prop_assert!(!c.is_zero());
            let p = s.pairing_diag(n).unwrap();
            prop_assert_eq!(&c * &p, s.sign_phase(n).unwrap());
        }
        for i in 0..s.len() {
            let mut n = vec![0u32; s.len()];
            n[i] = num_traits::ToPrimitive::to_u32(&s.orders[i]).unwrap();
            prop_assert!(s.coeff(&n).unwrap().is_zero());
        }
    }

    #[test]
    fn twist_checks_under_even_hypotheses(t in 0usize..6, l in 1i64..=6) {
        let ty = ["A1", "A2", "A3", "B2", "C3", "G2"][t];
        let rd = RootDatum::simply_connected(ty.parse().unwrap()).unwrap();
        prop_assume!(l % i64::from(rd.lacing()) == 0);
        let q = QParam::uniform(rd, Rat::new(int(1), int(2 * l))).unwrap();
        let tower = center_tower(&q).unwrap();
        let dual = g_check(&q, &tower).unwrap();
        let kappa = build_kappa(&q, &tower.x_tan).unwrap();
        prop_assert!(twist_report(&dual, &kappa).unwrap().all_pass());
    }
}
