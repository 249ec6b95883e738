//! The full analysis of one instance and its JSON form (schema 1).

use qfiber::centers::{center_tower, dual_datum, g_check, verdicts, CenterTower, DualDatum};
use qfiber::cyclo::CycloNum;
use qfiber::intlat::FiniteAbelianGroup;
use qfiber::invariants::dim_report;
use qfiber::kappa::{build_kappa, check_square_root, extend_psi, radicals, Biform};
use qfiber::qparam::QParam;
use qfiber::rmatrix::RSetup;
use qfiber::rootdata::Weight;
use qfiber::twistcheck::twist_report;
use qfiber::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::input::{InputEcho, Instance};
use crate::num::{angle, angles, fraction, lattice, matrix, nums, Num};

pub const SCHEMA: u32 = 1;

type Rows = Vec<Vec<Num>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetOutcome>,
    pub root_datum: DatumSummary,
    pub parameter: ParamSummary,
    pub centers: Centers,
    pub dual: DualSection,
    pub twisting: Twisting,
    pub radicals: RadicalSection,
    pub dimensions: Dimensions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<RMatrixSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_check: Option<TwistSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetOutcome {
    pub name: String,
    pub witness: Option<Vec<Num>>,
    pub claims: Vec<Claim>,
}

impl PresetOutcome {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSummary {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub rank: usize,
    pub lacing: u32,
    pub cartan: Rows,
    pub symmetrizers: Vec<Num>,
    pub char_lattice: Rows,
    pub simply_connected: bool,
    pub adjoint: bool,
    /// `|P/Q|`.
    pub center_order: Num,
    pub positive_root_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: Vec<Num>,
    pub height: Num,
    pub scalar: String,
    pub order: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub scales: Vec<String>,
    pub simple_scalars: Vec<String>,
    pub simple_orders: Vec<Num>,
    pub roots: Vec<RootEntry>,
    pub max_nondegenerate: bool,
    pub all_even: bool,
    pub quasi_classical: bool,
    pub degeneracy_witness: Option<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indices {
    pub x_over_x_star: Num,
    pub x_star_over_x_mug: Num,
    pub x_mug_over_x_tan: Num,
    pub x_tan_over_lq: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub x_over_x_star: Option<Vec<Num>>,
    pub x_star_over_x_mug: Option<Vec<Num>>,
    pub x_mug_over_x_tan: Option<Vec<Num>>,
    pub x_tan_over_lq: Option<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictBlock {
    pub tan_equals_mug: bool,
    pub tan_equals_lq: bool,
    pub sc_hypotheses: bool,
    pub sc_conclusion: Option<bool>,
    pub cartan_is_transpose: Option<bool>,
    pub langlands_dual: Option<bool>,
    pub pivot_trivial_on_x_tan: bool,
    pub modular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Centers {
    pub x: Rows,
    pub x_star: Rows,
    pub x_mug: Rows,
    pub x_tan: Rows,
    pub lq: Rows,
    pub indices: Indices,
    pub witnesses: Witnesses,
    pub verdicts: VerdictBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualInfo {
    #[serde(rename = "type")]
    pub dynkin: Option<String>,
    pub cartan: Rows,
    pub simple_roots: Rows,
    pub char_lattice: Rows,
    pub root_lattice: Rows,
    pub weight_lattice: Rows,
    pub orders: Vec<Num>,
    pub epsilon: Vec<String>,
}

impl DualInfo {
    pub fn new(d: &DualDatum) -> Self {
        Self {
            dynkin: d.dynkin.as_ref().map(ToString::to_string),
            cartan: matrix(&d.cartan),
            simple_roots: matrix(&d.simple_roots),
            char_lattice: lattice(&d.char_lattice),
            root_lattice: lattice(&d.root_lattice),
            weight_lattice: lattice(&d.weight_lattice),
            orders: nums(&d.orders),
            epsilon: angles(&d.epsilon_scalars),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSection {
    pub g_star: Option<DualInfo>,
    pub g_check: Option<DualInfo>,
    /// Why the dual data could not be formed.
    pub unavailable: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gram {
    pub domain: Rows,
    pub gram: Vec<Vec<String>>,
}

impl Gram {
    fn new(b: &Biform) -> Self {
        Self { domain: matrix(b.basis()), gram: b.gram().iter().map(|r| angles(r)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twisting {
    pub kappa: Gram,
    pub psi: Gram,
    pub psi_vanishes_on_radical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub invariant_factors: Vec<Num>,
    pub order: Num,
}

impl Group {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        Self { invariant_factors: nums(g.invariant_factors()), order: g.order().into() }
    }

    pub fn describe(&self) -> String {
        if self.invariant_factors.is_empty() {
            return "0".into();
        }
        self.invariant_factors.iter().map(|n| format!("Z/{}", n.0)).collect::<Vec<_>>().join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalSection {
    pub rad_q: Rows,
    pub rad_q_in_weight_lattice: Rows,
    pub ambients_differ: bool,
    pub rad_kappa: Rows,
    pub rad_q_kappa: Rows,
    pub sigma: Group,
    pub lambda: Group,
    pub theta: Group,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub fpdim_fiber: Num,
    pub fpdim_sc_formula: Option<Num>,
    pub dim_u_q: Num,
    pub dim_u_q_kappa: Num,
    pub dim_u_plus: Num,
    pub grouplike_count: Num,
    pub tan_index: Num,
    pub sigma_order: Num,
    pub theta_order: Num,
    pub simples_u_q: Group,
    pub simples_u_q_kappa: Group,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cyclo {
    pub conductor: usize,
    pub coeffs: Vec<String>,
    pub value: String,
}

impl Cyclo {
    pub fn new(x: &CycloNum) -> Self {
        Self { conductor: x.conductor(), coeffs: x.coeffs().iter().map(fraction).collect(), value: x.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: Cyclo,
    pub pairing: Cyclo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatrixSection {
    pub conductor: usize,
    pub root_orders: Vec<Num>,
    pub support_size: Num,
    pub truncated: bool,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub alpha: usize,
    pub beta: usize,
    pub serre_exponent: i64,
    pub character: String,
    pub values: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSection {
    pub ratio_invariance: Vec<WitnessEntry>,
    pub commutator: bool,
    pub cross_commutator: bool,
    pub all_pass: bool,
}

/// Optional parts of the analysis.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Include up to this many R-matrix terms.
    pub max_terms: Option<usize>,
}

fn weight(w: &Option<Weight>) -> Option<Vec<Num>> {
    w.as_ref().map(|v| nums(v))
}

fn datum_summary(q: &QParam) -> DatumSummary {
    let rd = q.datum();
    DatumSummary {
        dynkin: rd.dynkin().to_string(),
        rank: rd.rank(),
        lacing: rd.lacing(),
        cartan: matrix(rd.cartan()),
        symmetrizers: nums(rd.symmetrizers()),
        char_lattice: lattice(rd.char_lattice()),
        simply_connected: rd.is_simply_connected(),
        adjoint: rd.is_adjoint(),
        center_order: rd.center_order().into(),
        positive_root_count: rd.positive_roots().len(),
    }
}

fn param_summary(q: &QParam) -> Result<ParamSummary> {
    let rd = q.datum();
    let class = q.classify()?;
    let orders = q.root_orders()?;
    let roots = rd
        .positive_roots()
        .iter()
        .zip(&orders)
        .map(|(g, l)| RootEntry { root: nums(&g.coeffs), height: (&g.height).into(), scalar: angle(&q.q_scalar(g)), order: l.into() })
        .collect();
    Ok(ParamSummary {
        scales: q.scales().iter().map(fraction).collect(),
        simple_scalars: (0..rd.rank()).map(|i| angle(&q.simple_scalar(i))).collect(),
        simple_orders: nums(&q.simple_orders()?),
        roots,
        max_nondegenerate: class.max_nondegenerate,
        all_even: class.all_even,
        quasi_classical: class.quasi_classical,
        degeneracy_witness: weight(&class.witness),
    })
}

fn centers_section(q: &QParam, tower: &CenterTower, check: Option<&DualDatum>) -> Result<Centers> {
    let [a, b, c, d] = &tower.indices;
    let [wa, wb, wc, wd] = &tower.witnesses;
    let verdict = match check {
        Some(check) => {
            let v = verdicts(q, tower, check)?;
            VerdictBlock {
                tan_equals_mug: v.tan_equals_mug,
                tan_equals_lq: tower.x_tan == tower.l_q,
                sc_hypotheses: v.sc_hypotheses,
                sc_conclusion: v.sc_conclusion,
                cartan_is_transpose: Some(v.cartan_is_transpose),
                langlands_dual: Some(v.langlands_dual),
                pivot_trivial_on_x_tan: v.pivot_trivial_on_xtan,
                modular: v.modular,
            }
        }
        None => {
            let rd = q.datum();
            let class = q.classify()?;
            let sc_hypotheses = rd.is_simply_connected() && class.max_nondegenerate && class.all_even;
            if sc_hypotheses {
                return Err(Error::Invariant("dual data unavailable under the simply connected hypotheses".into()));
            }
            let two_rho = rd.two_rho();
            let pivot = tower.x_tan.basis().iter().all(|g| q.eval(&two_rho, g).is_zero());
            VerdictBlock {
                tan_equals_mug: tower.tan_equals_mug(),
                tan_equals_lq: tower.x_tan == tower.l_q,
                sc_hypotheses,
                sc_conclusion: None,
                cartan_is_transpose: None,
                langlands_dual: None,
                pivot_trivial_on_x_tan: pivot,
                modular: tower.tan_equals_mug() && pivot,
            }
        }
    };
    Ok(Centers {
        x: lattice(&tower.x),
        x_star: lattice(&tower.x_star),
        x_mug: lattice(&tower.x_mug),
        x_tan: lattice(&tower.x_tan),
        lq: lattice(&tower.l_q),
        indices: Indices { x_over_x_star: a.into(), x_star_over_x_mug: b.into(), x_mug_over_x_tan: c.into(), x_tan_over_lq: d.into() },
        witnesses: Witnesses {
            x_over_x_star: weight(wa),
            x_star_over_x_mug: weight(wb),
            x_mug_over_x_tan: weight(wc),
            x_tan_over_lq: weight(wd),
        },
        verdicts: verdict,
    })
}

/// `G*` and `Ǧ`, or the reason they fall outside the supported range.
pub fn dual_pair(q: &QParam, tower: &CenterTower) -> Result<std::result::Result<(DualDatum, DualDatum), String>> {
    match dual_datum(q, tower).and_then(|s| Ok((s, g_check(q, tower)?))) {
        Ok(pair) => Ok(Ok(pair)),
        Err(e @ Error::Invariant(_)) => Err(e),
        Err(e) => Ok(Err(e.to_string())),
    }
}

pub fn rmatrix_section(q: &QParam, max_terms: usize) -> Result<RMatrixSection> {
    let s = RSetup::new(q)?;
    let supports = s.first_supports(max_terms);
    let mut terms = Vec::with_capacity(supports.len());
    for n in supports {
        let coeff = s.coeff(&n)?;
        let pairing = s.pairing_diag(&n)?;
        if &coeff * &pairing != s.sign_phase(&n)? {
            return Err(Error::Invariant(format!("coefficient and pairing are not inverse at {n:?}")));
        }
        terms.push(Term { exponents: n, coeff: Cyclo::new(&coeff), pairing: Cyclo::new(&pairing) });
    }
    let support_size = s.support_size();
    Ok(RMatrixSection {
        conductor: s.conductor,
        root_orders: nums(&s.orders),
        truncated: qfiber::Int::from(terms.len()) < support_size,
        support_size: support_size.into(),
        terms,
    })
}

pub fn twist_section(dual: &DualDatum, kappa: &Biform) -> Result<TwistSection> {
    let t = twist_report(dual, kappa)?;
    Ok(TwistSection {
        ratio_invariance: t
            .witnesses
            .iter()
            .map(|w| WitnessEntry {
                alpha: w.alpha,
                beta: w.beta,
                serre_exponent: w.m,
                character: angle(&w.character),
                values: angles(&w.values),
                holds: w.holds,
            })
            .collect(),
        commutator: t.commutator,
        cross_commutator: t.cross_commutator,
        all_pass: t.all_pass(),
    })
}

/// Everything computed for one instance, kept for presets and subcommands.
pub struct Analysis {
    pub q: QParam,
    pub tower: CenterTower,
    pub duals: std::result::Result<(DualDatum, DualDatum), String>,
    pub kappa: Biform,
    pub report: Report,
}

pub fn analyze(instance: &Instance, opts: Options) -> Result<Analysis> {
    let q = instance.build()?;
    let tower = center_tower(&q)?;
    let duals = dual_pair(&q, &tower)?;
    let check = duals.as_ref().ok().map(|(_, c)| c);
    let centers = centers_section(&q, &tower, check)?;
    let kappa = build_kappa(&q, &tower.x_tan)?;
    check_square_root(&q, &kappa)?;
    let rads = radicals(&q, &tower, &kappa)?;
    let ext = extend_psi(&kappa, &tower.x, &rads.rad_qk)?;
    let dims = dim_report(&q, &tower, &rads)?;
    let twist_check = match check {
        Some(c) => Some(twist_section(c, &kappa)?),
        None => None,
    };
    let rmatrix = match opts.max_terms {
        Some(m) => Some(rmatrix_section(&q, m)?),
        None => None,
    };
    let report = Report {
        schema: SCHEMA,
        input: instance.echo(&q),
        preset: None,
        root_datum: datum_summary(&q),
        parameter: param_summary(&q)?,
        centers,
        dual: match &duals {
            Ok((s, c)) => DualSection { g_star: Some(DualInfo::new(s)), g_check: Some(DualInfo::new(c)), unavailable: None },
            Err(why) => DualSection { g_star: None, g_check: None, unavailable: Some(why.clone()) },
        },
        twisting: Twisting { kappa: Gram::new(&kappa), psi: Gram::new(&ext.psi), psi_vanishes_on_radical: ext.vanishes_on_radical },
        radicals: RadicalSection {
            rad_q: lattice(&rads.rad_q),
            rad_q_in_weight_lattice: lattice(&rads.rad_q_weight),
            ambients_differ: rads.ambients_differ(),
            rad_kappa: lattice(&rads.rad_kappa),
            rad_q_kappa: lattice(&rads.rad_qk),
            sigma: Group::new(&rads.sigma),
            lambda: Group::new(&rads.lambda),
            theta: Group::new(&rads.theta),
        },
        dimensions: Dimensions {
            fpdim_fiber: (&dims.fpdim_fiber).into(),
            fpdim_sc_formula: dims.fpdim_sc.as_ref().map(Num::from),
            dim_u_q: (&dims.fpdim_fiber).into(),
            dim_u_q_kappa: (&dims.dim_uqk).into(),
            dim_u_plus: (&dims.dim_u_plus).into(),
            grouplike_count: (&dims.grouplike_count).into(),
            tan_index: (&dims.tan_index).into(),
            sigma_order: (&dims.sigma_order).into(),
            theta_order: (&dims.theta_order).into(),
            simples_u_q: Group::new(&dims.simples_group_uq),
            simples_u_q_kappa: Group::new(&dims.simples_group_uqk),
        },
        rmatrix,
        twist_check,
    };
    Ok(Analysis { q, tower, duals, kappa, report })
}

impl Report {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad report: {e}")))
    }
}
