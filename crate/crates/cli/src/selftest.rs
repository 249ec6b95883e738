//! Seeded consistency run over the presets and random instances.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qfiber::{Error, Result};

use crate::input::{Instance, LatticeChoice};
use crate::presets::{self, CATALOG};
use crate::report::{analyze, Options, Report};

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2"];

pub struct Summary {
    pub seed: u64,
    pub checked: usize,
    pub skipped: Vec<String>,
    pub failures: Vec<String>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.skipped {
            writeln!(f, "skipped {s}")?;
        }
        for s in &self.failures {
            writeln!(f, "FAILED {s}")?;
        }
        writeln!(
            f,
            "seed {}: {} instances checked, {} skipped, {} failed",
            self.seed,
            self.checked,
            self.skipped.len(),
            self.failures.len()
        )
    }
}

pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let t = TYPES[rng.gen_range(0..TYPES.len())];
    let lattice = if rng.gen_bool(0.5) { LatticeChoice::Adjoint } else { LatticeChoice::SimplyConnected };
    let b = rng.gen_range(1..=24);
    let a = rng.gen_range(0..b);
    Instance { dynkin: t.parse().expect("listed type parses"), lattice, param: format!("{a}/{b}") }
}

fn consistency(r: &Report) -> std::result::Result<(), String> {
    let json = r.to_json();
    let back = Report::from_json(&json).map_err(|e| e.to_string())?;
    if back.to_json() != json {
        return Err("JSON round trip changed the report".into());
    }
    let d = &r.dimensions;
    let plus = &d.dim_u_plus.0;
    if d.fpdim_fiber.0 != &d.tan_index.0 * plus * plus {
        return Err("FPdim ≠ [X : X^Tan]·(∏ l_γ)²".into());
    }
    if &d.fpdim_fiber.0 * &d.sigma_order.0 != d.dim_u_q_kappa.0 {
        return Err("FPdim·|Σ| ≠ dim u_(q,κ)".into());
    }
    if let Some(t) = &r.twist_check {
        if r.centers.verdicts.sc_hypotheses && !t.all_pass {
            return Err("twist checks fail under the simply connected hypotheses".into());
        }
    }
    Ok(())
}

pub fn run(seed: u64, cases: usize) -> Result<Summary> {
    let mut s = Summary { seed, checked: 0, skipped: Vec::new(), failures: Vec::new() };
    for p in CATALOG {
        let preset = presets::parse(p.name)?;
        let a = analyze(&preset.instance, Options::default())?;
        let outcome = preset.evaluate(&a);
        for c in outcome.claims.iter().filter(|c| !c.holds) {
            s.failures.push(format!("{}: {}", outcome.name, c.claim));
        }
        s.checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let inst = random_instance(&mut rng);
        let label = format!("{} {:?} {}", inst.dynkin, inst.lattice, inst.param);
        match analyze(&inst, Options { max_terms: Some(16) }) {
            Ok(a) => {
                if let Err(why) = consistency(&a.report) {
                    s.failures.push(format!("{label}: {why}"));
                }
                s.checked += 1;
            }
            Err(e @ Error::Invariant(_)) => s.failures.push(format!("{label}: {e}")),
            Err(e) => s.skipped.push(format!("{label}: {e}")),
        }
    }
    Ok(s)
}
