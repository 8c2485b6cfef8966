//! Dispatch from a [`RunConfig`] to the library.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use sarith_core::congruence::{
    charpoly_reduction_check, flag_coset_count, gamma_i_member, gaussian_flag_count, laurent_counterexample_check,
    stabilizer_structure, GammaSampler, QuotRing,
};
use sarith_core::cusps::cusp_census;
use sarith_core::ff::Poly;
use sarith_core::funcfield::{Curve, CurveDesc, Place};
use sarith_core::picard::{pic_os, unit_lattice};
use sarith_core::{Error, Result};

use crate::acceptance::{acceptance_suite, SuiteOpts};
use crate::config::{CommandKind, Outcome, RunConfig, Table};

fn curve(cfg: &RunConfig) -> Result<Curve> {
    let src = cfg.curve.as_deref().ok_or_else(|| Error::Invalid("--curve is required".into()))?;
    CurveDesc::parse(src)
}

fn line(cfg: &RunConfig) -> Result<Curve> {
    let q = cfg.q.as_deref().ok_or_else(|| Error::Invalid("--q is required".into()))?;
    CurveDesc::parse(&format!("p1 q={q}"))
}

fn places(c: &Curve, cfg: &RunConfig) -> Result<Vec<Place>> {
    if cfg.places.is_empty() {
        return Err(Error::Invalid("--places is required".into()));
    }
    cfg.places.iter().map(|p| Place::parse(c, p)).collect()
}

fn n(cfg: &RunConfig, default: usize) -> usize {
    cfg.n.unwrap_or(default)
}

fn modulus(c: &Curve, cfg: &RunConfig) -> Result<Poly> {
    let f = cfg.modulus.as_deref().ok_or_else(|| Error::Invalid("--modulus is required".into()))?;
    Poly::parse(c.base(), f)
}

fn kv_table(pairs: &[(&str, String)]) -> Table {
    let mut t = Table::new(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    t.push(pairs.iter().map(|p| p.1.clone()).collect());
    t
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let ok = |json: Value, table: Table| Ok(Outcome { json, table, failed: false });
    match cfg.command {
        CommandKind::Picard => {
            let c = curve(cfg)?;
            let pic = pic_os(&c, &places(&c, cfg)?)?;
            let g = pic.group();
            let table =
                kv_table(&[("invariant_factors", join(&g.invariant_factors)), ("free_rank", g.free_rank.to_string())]);
            ok(serde_json::to_value(g).unwrap(), table)
        }
        CommandKind::Units => {
            let c = curve(cfg)?;
            let u = unit_lattice(&c, &places(&c, cfg)?)?;
            let r = u.report(&c);
            let table = kv_table(&[
                ("torsion", r.torsion.to_string()),
                ("rank", r.rank.to_string()),
                ("places", r.places.join(";")),
                ("generators", r.generators.as_ref().map(|g| g.join(";")).unwrap_or_else(|| "-".into())),
            ]);
            ok(serde_json::to_value(&r).unwrap(), table)
        }
        CommandKind::Cusps => {
            let c = curve(cfg)?;
            let pic = pic_os(&c, &places(&c, cfg)?)?;
            let n = n(cfg, 2);
            let census = cusp_census(&pic, n, cfg.samples.unwrap_or(500), &cfg.sampler, &[])?;
            let mut table = Table::new(&["class_coords", "witness_matrix", "from_witness"]);
            let found: Vec<Value> = census
                .found
                .iter()
                .map(|f| {
                    table.push(vec![
                        serde_json::to_string(&f.invariant.coords()).unwrap(),
                        serde_json::to_string(&f.witness.to_strings()).unwrap(),
                        f.from_witness.to_string(),
                    ]);
                    json!({
                        "class_coords": f.invariant.coords(),
                        "witness_matrix": f.witness.to_strings(),
                        "from_witness": f.from_witness,
                    })
                })
                .collect();
            ok(
                json!({
                    "expected": census.expected,
                    "distinct": census.distinct(),
                    "found": found,
                    "samples_used": census.samples_used,
                    "samples_discarded": census.samples_discarded,
                    "witnesses_used": census.witnesses_used,
                }),
                table,
            )
        }
        CommandKind::CongruenceCusps => {
            let c = line(cfg)?;
            let f = modulus(&c, cfg)?;
            let n = n(cfg, 2);
            let r = QuotRing::new(&f)?;
            let count = flag_coset_count(n, &r)?;
            let gauss = r.is_field().then(|| gaussian_flag_count(n, r.size() as u64));
            let q = cfg.q.clone().unwrap();
            let fs = r.modulus().to_string_var("t");
            let table = kv_table(&[
                ("n", n.to_string()),
                ("q", q.clone()),
                ("f", fs.clone()),
                ("|R|", r.size().to_string()),
                ("prime?", r.is_field().to_string()),
                ("coset_count", count.to_string()),
                ("gaussian_check", gauss.map(|g| g.to_string()).unwrap_or_else(|| "-".into())),
            ]);
            ok(
                json!({
                    "n": n, "q": q, "f": fs, "ring_size": r.size(), "prime": r.is_field(),
                    "coset_count": count, "gaussian_check": gauss,
                }),
                table,
            )
        }
        CommandKind::Stabilizer => {
            let c = curve(cfg)?;
            let n = n(cfg, 2);
            let st = stabilizer_structure(&c, &places(&c, cfg)?, n)?;
            let table =
                kv_table(&[("torsion_order", st.torsion_order.to_string()), ("free_rank", st.free_rank.to_string())]);
            ok(serde_json::to_value(st).unwrap(), table)
        }
        CommandKind::TorsionCheck => {
            let c = line(cfg)?;
            let f = modulus(&c, cfg)?;
            let n = n(cfg, 2);
            let s: BTreeSet<Place> = [Place::Infinity].into();
            let samples = cfg.samples.unwrap_or(1000);
            let mut gs = GammaSampler::new(&c, n, &s, &f, &cfg.sampler)?;
            let mut passed = 0;
            for _ in 0..samples {
                let m = gs.next();
                if gamma_i_member(&m, &s, &f)? && charpoly_reduction_check(&m, &f)? {
                    passed += 1;
                }
            }
            if passed != samples {
                return Err(Error::InvariantViolation(format!(
                    "{} of {samples} Gamma_I samples fail the characteristic polynomial identity",
                    samples - passed
                )));
            }
            let table = kv_table(&[("samples", samples.to_string()), ("passed", passed.to_string())]);
            ok(json!({ "samples": samples, "passed": passed }), table)
        }
        CommandKind::Counterexample => {
            let c = line(cfg)?;
            let holds = laurent_counterexample_check(&c, n(cfg, 2))?;
            Ok(Outcome { json: json!(holds), table: kv_table(&[("counterexample", holds.to_string())]), failed: !holds })
        }
        CommandKind::Acceptance => {
            let opts = SuiteOpts { seed: cfg.sampler.seed, quick: cfg.quick, ..SuiteOpts::default() };
            let suite = acceptance_suite(&opts);
            let mut table = Table::new(&["criterion", "name", "pass", "detail"]);
            for r in &suite.rows {
                table.push(vec![r.criterion.to_string(), r.name.clone(), r.pass.to_string(), r.detail.clone()]);
            }
            Ok(Outcome { json: serde_json::to_value(&suite).unwrap(), table, failed: !suite.all_pass() })
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => 2,
        Error::InvariantViolation(_) => 3,
        _ => 1,
    }
}
