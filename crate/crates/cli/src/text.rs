//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::num::Num;
use crate::report::{DualInfo, Report, RMatrixSection, TwistSection};

fn vec(v: &[Num]) -> String {
    let parts: Vec<String> = v.iter().map(|n| n.0.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn rows(m: &[Vec<Num>]) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter().map(|r| vec(r)).collect::<Vec<_>>().join(" ")
}

fn opt_vec(v: &Option<Vec<Num>>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |w| vec(w))
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn yes(b: bool) -> &'static str {
    flag(Some(b))
}

pub fn render(r: &Report) -> String {
    let mut s = String::new();
    let d = &r.root_datum;
    let p = &r.parameter;
    let _ = writeln!(s, "type {}  rank {}  lacing {}  |P/Q| = {}", d.dynkin, d.rank, d.lacing, d.center_order.0);
    let _ = writeln!(s, "X = {}{}", rows(&d.char_lattice), match (d.simply_connected, d.adjoint) {
        (true, _) => "  (simply connected)",
        (_, true) => "  (adjoint)",
        _ => "",
    });
    let _ = writeln!(s, "scales {}  q_α = {}  l_α = {}", p.scales.join(", "), p.simple_scalars.join(", "), vec(&p.simple_orders));
    let _ = writeln!(
        s,
        "maximally non-degenerate {}  all q_α of even order {}  quasi-classical {}",
        yes(p.max_nondegenerate),
        yes(p.all_even),
        yes(p.quasi_classical)
    );
    let _ = writeln!(s, "\n{:<24} {:>7} {:>10} {:>6}", "positive root", "height", "q_γ", "l_γ");
    for g in &p.roots {
        let _ = writeln!(s, "{:<24} {:>7} {:>10} {:>6}", vec(&g.root), g.height.0, g.scalar, g.order.0);
    }
    if let Some(pre) = &r.preset {
        let _ = writeln!(s, "\npreset {}", pre.name);
        if let Some(w) = &pre.witness {
            let _ = writeln!(s, "  λ0 = {}", vec(w));
        }
        for c in &pre.claims {
            let _ = writeln!(s, "  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.claim);
        }
    }
    let c = &r.centers;
    let _ = writeln!(s, "\ncenters");
    for (name, l) in [("X", &c.x), ("X*", &c.x_star), ("X^Müg", &c.x_mug), ("X^Tan", &c.x_tan), ("lQ", &c.lq)] {
        let _ = writeln!(s, "  {:<6} {}", name, rows(l));
    }
    let i = &c.indices;
    let w = &c.witnesses;
    let _ = writeln!(s, "  [X : X*] = {}  witness {}", i.x_over_x_star.0, opt_vec(&w.x_over_x_star));
    let _ = writeln!(s, "  [X* : X^Müg] = {}  witness {}", i.x_star_over_x_mug.0, opt_vec(&w.x_star_over_x_mug));
    let _ = writeln!(s, "  [X^Müg : X^Tan] = {}  witness {}", i.x_mug_over_x_tan.0, opt_vec(&w.x_mug_over_x_tan));
    let _ = writeln!(s, "  [X^Tan : lQ] = {}  witness {}", i.x_tan_over_lq.0, opt_vec(&w.x_tan_over_lq));
    let v = &c.verdicts;
    let _ = writeln!(s, "  X^Tan = X^Müg {}  X^Tan = lQ {}", yes(v.tan_equals_mug), yes(v.tan_equals_lq));
    let _ = writeln!(s, "  simply connected even-order hypotheses {}  conclusion {}", yes(v.sc_hypotheses), flag(v.sc_conclusion));
    let _ = writeln!(s, "  dual Cartan = Aᵀ {}  Langlands dual {}", flag(v.cartan_is_transpose), flag(v.langlands_dual));
    let _ = writeln!(s, "  pivot trivial on X^Tan {}  modular {}", yes(v.pivot_trivial_on_x_tan), yes(v.modular));
    match (&r.dual.g_star, &r.dual.g_check) {
        (Some(gs), Some(gc)) => {
            dual(&mut s, "G*", gs);
            dual(&mut s, "Ǧ", gc);
        }
        _ => {
            let _ = writeln!(s, "\ndual data unavailable: {}", r.dual.unavailable.as_deref().unwrap_or("unknown"));
        }
    }
    let t = &r.twisting;
    let _ = writeln!(s, "\ntwisting");
    let _ = writeln!(s, "  κ on {}: {}", rows(&t.kappa.domain), gram(&t.kappa.gram));
    let _ = writeln!(s, "  ψ on {}: {}", rows(&t.psi.domain), gram(&t.psi.gram));
    let _ = writeln!(s, "  ψ vanishes on rad(q,κ) {}", yes(t.psi_vanishes_on_radical));
    let rd = &r.radicals;
    let _ = writeln!(s, "\nradicals");
    let _ = writeln!(s, "  rad(q) = {}{}", rows(&rd.rad_q), if rd.ambients_differ { "  (differs inside P)" } else { "" });
    let _ = writeln!(s, "  rad(κ) = {}", rows(&rd.rad_kappa));
    let _ = writeln!(s, "  rad(q,κ) = {}", rows(&rd.rad_q_kappa));
    let _ = writeln!(s, "  Σ = {}  Λ = {}  Θ = {}", rd.sigma.describe(), rd.lambda.describe(), rd.theta.describe());
    let m = &r.dimensions;
    let _ = writeln!(s, "\ndimensions");
    let _ = writeln!(s, "  FPdim = dim u_q = {}", m.fpdim_fiber.0);
    if let Some(f) = &m.fpdim_sc_formula {
        let _ = writeln!(s, "  |Z(G)| ∏ l_α (∏ l_γ)² = {}", f.0);
    }
    let _ = writeln!(s, "  dim u_q^+ = {}  [X : X^Tan] = {}", m.dim_u_plus.0, m.tan_index.0);
    let _ = writeln!(s, "  dim u_(q,κ) = {}  grouplikes {}  |Σ| = {}  |Θ| = {}", m.dim_u_q_kappa.0, m.grouplike_count.0, m.sigma_order.0, m.theta_order.0);
    let _ = writeln!(s, "  simples of u_q: {}  simples of u_(q,κ): {}", m.simples_u_q.describe(), m.simples_u_q_kappa.describe());
    if let Some(rm) = &r.rmatrix {
        rmatrix(&mut s, rm);
    }
    if let Some(tw) = &r.twist_check {
        twist(&mut s, tw);
    }
    s
}

fn gram(g: &[Vec<String>]) -> String {
    if g.is_empty() {
        return "[]".into();
    }
    let inner: Vec<String> = g.iter().map(|r| format!("[{}]", r.join(" "))).collect();
    format!("[{}]", inner.join(" "))
}

fn dual(s: &mut String, name: &str, d: &DualInfo) {
    let _ = writeln!(s, "\n{name}: type {}", d.dynkin.as_deref().unwrap_or("?"));
    let _ = writeln!(s, "  Cartan {}", rows(&d.cartan));
    let _ = writeln!(s, "  simple roots {}", rows(&d.simple_roots));
    let _ = writeln!(s, "  characters {}", rows(&d.char_lattice));
    let _ = writeln!(s, "  ε_α {}", d.epsilon.join(", "));
}

pub fn rmatrix(s: &mut String, rm: &RMatrixSection) {
    let _ = writeln!(s, "\nR-matrix over Q(z), z = exp(2πi/{})", rm.conductor);
    let _ = writeln!(s, "  l_γ = {}  support size {}{}", vec(&rm.root_orders), rm.support_size.0, if rm.truncated { "  (truncated)" } else { "" });
    for t in &rm.terms {
        let n: Vec<String> = t.exponents.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "  n = ({})  coeff {}  pairing {}", n.join(", "), t.coeff.value, t.pairing.value);
    }
}

pub fn twist(s: &mut String, tw: &TwistSection) {
    let _ = writeln!(s, "\ntwist checks");
    for w in &tw.ratio_invariance {
        let _ = writeln!(
            s,
            "  [{}] ratio invariance α{} β{}  m = {}  M = {}  values {}",
            if w.holds { "ok" } else { "FAIL" },
            w.alpha + 1,
            w.beta + 1,
            w.serre_exponent,
            w.character,
            w.values.join(" ")
        );
    }
    let _ = writeln!(s, "  [{}] commutator normalization", if tw.commutator { "ok" } else { "FAIL" });
    let _ = writeln!(s, "  [{}] cross commutators", if tw.cross_commutator { "ok" } else { "FAIL" });
}
