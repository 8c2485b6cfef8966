//! The acceptance table: every criterion at its stated scale, one row each.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sarith_core::congruence::{
    charpoly_reduction_check, flag_coset_count, gamma_i_member, gaussian_flag_count, laurent_counterexample_check,
    stabilizer_structure, unimodular_pair_count, GammaSampler, QuotRing,
};
use sarith_core::cusps::{cusp_census, reduce_to_standard, stabilizer_member, steinitz_invariant, Chamber, GSpec};
use sarith_core::ff::Poly;
use sarith_core::funcfield::elliptic::points_over;
use sarith_core::funcfield::{Curve, CurveDesc, FnElem, Place};
use sarith_core::picard::pic::{elliptic_quotient_order_by_cosets, point_order_histogram};
use sarith_core::picard::{gcd_oracle, pic_os, FinAbGroup};
use sarith_core::slgroups::sample::{random_borel_k, random_k_elem, random_sl_k};
use sarith_core::slgroups::{in_sl_os, mobius_action, ProjPoint, Sampler, SamplerCfg};
use sarith_core::Result;

/// Options for a suite run. `pic_oracle` is injectable so a tampered
/// oracle can be shown to turn the Picard rows red.
#[derive(Clone)]
pub struct SuiteOpts {
    pub seed: u64,
    pub quick: bool,
    pub timings: bool,
    pub pic_oracle: fn(&[u64]) -> u64,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        SuiteOpts { seed: 42, quick: false, timings: false, pic_oracle: gcd_oracle }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub criterion: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub seed: u64,
    pub quick: bool,
    pub rows: Vec<Row>,
}

impl Suite {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| format!("criterion {:>2} [{}] {}: {}", r.criterion, if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail))
            .collect()
    }
}

/// One cell of the Picard grid: a curve, `S`, and the expected `|Pic(O_S)|`.
pub struct Cell {
    pub curve: &'static str,
    pub places: &'static [&'static str],
}

pub const LINE_GRID: [Cell; 8] = [
    Cell { curve: "p1 q=2", places: &["inf"] },
    Cell { curve: "p1 q=2", places: &["t^2+t+1"] },
    Cell { curve: "p1 q=2", places: &["inf", "t^2+t+1"] },
    Cell { curve: "p1 q=2", places: &["t", "t+1"] },
    Cell { curve: "p1 q=3", places: &["inf"] },
    Cell { curve: "p1 q=3", places: &["t^2+1"] },
    Cell { curve: "p1 q=3", places: &["inf", "t^2+1"] },
    Cell { curve: "p1 q=3", places: &["t", "t+1"] },
];

pub const ELLIPTIC_CELL: Cell = Cell { curve: "elliptic q=5 a=1 b=1", places: &["inf"] };

impl Cell {
    pub fn build(&self) -> Result<(Curve, Vec<Place>)> {
        let c = CurveDesc::parse(self.curve)?;
        let s = self.places.iter().map(|p| Place::parse(&c, p)).collect::<Result<_>>()?;
        Ok((c, s))
    }

    pub fn label(&self) -> String {
        format!("{} S={{{}}}", self.curve, self.places.join(","))
    }
}

fn all_cells() -> impl Iterator<Item = &'static Cell> {
    LINE_GRID.iter().chain(std::iter::once(&ELLIPTIC_CELL))
}

fn cell_seed(seed: u64, idx: usize) -> u64 {
    seed ^ (idx as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

struct Check {
    pass: bool,
    detail: String,
}

fn timed(opts: &SuiteOpts, criterion: u8, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Check>) -> Row {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match out {
        Ok(c) => (c.pass, c.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(l) = limit {
        if elapsed > l {
            pass = false;
            detail += &format!("; over the {} s limit", l.as_secs());
        }
    }
    Row {
        criterion,
        name: name.into(),
        pass,
        detail,
        elapsed_ms: opts.timings.then_some(elapsed.as_millis() as u64),
    }
}

fn picard_counts(opts: &SuiteOpts) -> Result<Check> {
    let mut bad = Vec::new();
    let mut orders = Vec::new();
    for cell in &LINE_GRID {
        let (c, s) = cell.build()?;
        let got = pic_os(&c, &s)?.group().order().unwrap_or(0);
        let degrees: Vec<u64> = s.iter().map(|p| p.degree() as u64).collect();
        let want = (opts.pic_oracle)(&degrees);
        orders.push(got.to_string());
        if got != want {
            bad.push(format!("{}: {got} != oracle {want}", cell.label()));
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("orders [{}] match the oracle", orders.join(", ")) } else { bad.join("; ") },
    })
}

fn order_histogram(g: &FinAbGroup) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for e in g.elements() {
        let ord = e.coords.iter().zip(&g.invariant_factors).fold(1u64, |acc, (&c, &d)| {
            let k = d / gcd(c.rem_euclid(d as i64) as u64, d);
            acc / gcd(acc, k) * k
        });
        *out.entry(ord).or_insert(0) += 1;
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn elliptic_picard(_: &SuiteOpts) -> Result<Check> {
    let (c, s) = ELLIPTIC_CELL.build()?;
    let pic = pic_os(&c, &s)?;
    let g = pic.group();
    let order = g.order().unwrap_or(0);
    let field = sarith_core::ff::FieldDesc::build(5, 1)?;
    let points = points_over(&c, &field).len() as u64;
    let cosets = elliptic_quotient_order_by_cosets(&c, &s)?;
    let structure_ok = order_histogram(g) == point_order_histogram(&c)?;
    Ok(Check {
        pass: order == 9 && points == 9 && cosets == 9 && structure_ok,
        detail: format!(
            "|Pic| = {order}, |E(F_5)| = {points}, coset oracle {cosets}, invariant factors {:?}, order histograms {}",
            g.invariant_factors,
            if structure_ok { "agree" } else { "differ" }
        ),
    })
}

fn census(opts: &SuiteOpts) -> Result<Check> {
    let samples = if opts.quick { 100 } else { 500 };
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    let mut discarded = 0;
    for (i, cell) in all_cells().enumerate() {
        let start = Instant::now();
        let (c, s) = cell.build()?;
        let pic = pic_os(&c, &s)?;
        let cfg = SamplerCfg { seed: cell_seed(opts.seed, i), ..SamplerCfg::default() };
        match cusp_census(&pic, 2, samples, &cfg, &[]) {
            Ok(cen) => {
                counts.push(format!("{}/{}", cen.distinct(), cen.expected));
                discarded += cen.samples_discarded;
                if cen.distinct() as u64 != cen.expected {
                    bad.push(format!("{}: {} classes, expected {}", cell.label(), cen.distinct(), cen.expected));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", cell.label())),
        }
        if start.elapsed() > Duration::from_secs(60) {
            bad.push(format!("{}: over the 60 s limit", cell.label()));
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{samples} samples per cell ({discarded} over-cap redraws), found/expected [{}]",
                counts.join(", ")
            )
        } else {
            bad.join("; ")
        },
    })
}

fn invariance(opts: &SuiteOpts) -> Result<Check> {
    let triples = if opts.quick { 100 } else { 1000 };
    let mut bad = Vec::new();
    for (i, cell) in all_cells().enumerate() {
        let (c, s) = cell.build()?;
        let pic = pic_os(&c, &s)?;
        let s: BTreeSet<Place> = s.into_iter().collect();
        let seed = cell_seed(opts.seed, i);
        let cfg = SamplerCfg { seed, word_length: 4, height: 1, unit_exponent_bound: 1 };
        let mut sm = Sampler::new(&c, 2, &s, &cfg)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let mut mismatches = 0;
        for _ in 0..triples {
            let gamma = sm.next_gamma();
            let g = random_sl_k(&mut rng, &c, 2, 1, 3);
            let b = random_borel_k(&mut rng, &c, 2, 1);
            let before = steinitz_invariant(&Chamber::new(g.clone()), &pic)?;
            let after = steinitz_invariant(&Chamber::new(gamma.mul(&g).mul(&b)), &pic)?;
            if before != after {
                mismatches += 1;
            }
        }
        if mismatches > 0 {
            bad.push(format!("{}: {mismatches} changed", cell.label()));
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{triples} triples on each of 9 cells unchanged") } else { bad.join("; ") },
    })
}

fn euclidean(opts: &SuiteOpts) -> Result<Check> {
    let points = if opts.quick { 100 } else { 1000 };
    let mut bad = Vec::new();
    for (i, q) in ["2", "3"].iter().enumerate() {
        let c = CurveDesc::parse(&format!("p1 q={q}"))?;
        let s: BTreeSet<Place> = [Place::Infinity].into();
        let one = ProjPoint::new(vec![FnElem::one(&c), FnElem::zero(&c)])?;
        let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(opts.seed, 100 + i));
        let mut fails = 0;
        let mut done = 0;
        while done < points {
            let (a, b) = (random_k_elem(&mut rng, &c, 3), random_k_elem(&mut rng, &c, 3));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            done += 1;
            let ok = match reduce_to_standard(&a, &b, &s) {
                Ok(g) => in_sl_os(&g, &s) && mobius_action(&g, &a, &b)? == one,
                Err(_) => false,
            };
            if !ok {
                fails += 1;
            }
        }
        if fails > 0 {
            bad.push(format!("q={q}: {fails} points not reduced"));
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{points} points for each q in {{2, 3}} reach (1:0)") } else { bad.join("; ") },
    })
}

fn flags(_: &SuiteOpts) -> Result<Check> {
    let cases = [(2, "2", "t"), (2, "3", "t"), (2, "2", "t^2+t+1"), (2, "2", "t^3+t+1"), (3, "2", "t")];
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, q, f) in cases {
        let c = CurveDesc::parse(&format!("p1 q={q}"))?;
        let r = QuotRing::new(&Poly::parse(c.base(), f)?)?;
        let got = flag_coset_count(n, &r)?;
        let want = gaussian_flag_count(n, r.size() as u64);
        pass &= got == want;
        parts.push(format!("n={n} q'={}: {got}", r.size()));
    }
    pass &= parts.last().map(|p| p.ends_with(": 21")).unwrap_or(false);
    let f2 = CurveDesc::parse("p1 q=2")?;
    let r = QuotRing::new(&Poly::parse(f2.base(), "t^2")?)?;
    let got = flag_coset_count(2, &r)?;
    let pairs = unimodular_pair_count(&r) / r.units().len() as u64;
    pass &= got == 6 && pairs == 6;
    parts.push(format!("F_2[t]/(t^2): {got} cosets, {pairs} unimodular lines"));
    Ok(Check { pass, detail: parts.join(", ") })
}

fn stabilizers(_: &SuiteOpts) -> Result<Check> {
    let mut bad = Vec::new();
    for cell in &LINE_GRID {
        let (c, s) = cell.build()?;
        for n in [2usize, 3] {
            let st = stabilizer_structure(&c, &s, n)?;
            let torsion = (c.base().size() as u64 - 1).pow(n as u32 - 1);
            let rank = (n - 1) * (s.len() - 1);
            if st.torsion_order != torsion || st.free_rank != rank {
                bad.push(format!("{} n={n}: ({}, {}) != ({torsion}, {rank})", cell.label(), st.torsion_order, st.free_rank));
            }
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "8 cells x n in {2, 3} match, r = 0 when #S = 1".into() } else { bad.join("; ") },
    })
}

fn torsion(opts: &SuiteOpts) -> Result<Check> {
    let samples = if opts.quick { 100 } else { 1000 };
    let c = CurveDesc::parse("p1 q=2")?;
    let s: BTreeSet<Place> = [Place::Infinity].into();
    let mut bad = Vec::new();
    for (i, f) in ["t", "t^2+t+1"].iter().enumerate() {
        let fp = Poly::parse(c.base(), f)?;
        let cfg = SamplerCfg { seed: cell_seed(opts.seed, 200 + i), word_length: 4, height: 1, unit_exponent_bound: 1 };
        let mut fails = 0;
        for n in [2, 3] {
            let mut gs = GammaSampler::new(&c, n, &s, &fp, &cfg)?;
            for _ in 0..samples / 2 {
                let m = gs.next();
                if !(gamma_i_member(&m, &s, &fp)? && charpoly_reduction_check(&m, &fp)?) {
                    fails += 1;
                }
            }
        }
        if fails > 0 {
            bad.push(format!("f={f}: {fails} failures"));
        }
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{samples} Gamma_I samples for each f in {{t, t^2+t+1}} reduce to (1-T)^n")
        } else {
            bad.join("; ")
        },
    })
}

fn unipotence(opts: &SuiteOpts) -> Result<Check> {
    let samples = if opts.quick { 100 } else { 1000 };
    let s: BTreeSet<Place> = [Place::Infinity].into();
    let mut members = 0;
    let mut bad = Vec::new();
    for (i, (q, f)) in [("2", "t"), ("3", "t"), ("3", "t^2+1")].iter().enumerate() {
        let c = CurveDesc::parse(&format!("p1 q={q}"))?;
        let fp = Poly::parse(c.base(), f)?;
        let g = GSpec::GammaI(fp.clone());
        let ch = Chamber::standard(&c, 2);
        let cfg = SamplerCfg { seed: cell_seed(opts.seed, 300 + i), word_length: 3, height: 1, unit_exponent_bound: 1 };
        let mut gs = GammaSampler::new(&c, 2, &s, &fp, &cfg)?;
        for _ in 0..samples {
            for m in [gs.next_borel(), gs.next()] {
                if let Some(parts) = stabilizer_member(&m, &ch, &s, &g)? {
                    members += 1;
                    if !parts.t.is_identity() {
                        bad.push(format!("q={q} f={f}: {m} has torus part {}", parts.t));
                    }
                }
            }
        }
    }
    let mut laurent = Vec::new();
    for q in ["2", "3"] {
        let c = CurveDesc::parse(&format!("p1 q={q}"))?;
        let holds = laurent_counterexample_check(&c, 2)?;
        if !holds {
            bad.push(format!("Laurent check fails for q={q}"));
        }
        laurent.push(format!("q={q}: {holds}"));
    }
    if members == 0 {
        bad.push("no stabilizer members sampled".into());
    }
    Ok(Check {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{members} sampled stabilizer members all unipotent; Laurent counterexample {}", laurent.join(", "))
        } else {
            bad.join("; ")
        },
    })
}

/// Rows 1 through 9.
pub fn criteria_rows(opts: &SuiteOpts) -> Vec<Row> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        timed(opts, 1, "Picard counts", secs(1), || picard_counts(opts)),
        timed(opts, 2, "Elliptic Picard", secs(5), || elliptic_picard(opts)),
        timed(opts, 3, "Cusp census", None, || census(opts)),
        timed(opts, 4, "Invariance", None, || invariance(opts)),
        timed(opts, 5, "Euclidean collapse", secs(10), || euclidean(opts)),
        timed(opts, 6, "Flag counts", secs(120), || flags(opts)),
        timed(opts, 7, "Stabilizer structure", None, || stabilizers(opts)),
        timed(opts, 8, "Gamma_I torsion", None, || torsion(opts)),
        timed(opts, 9, "Congruence unipotence", None, || unipotence(opts)),
    ]
}

fn untimed(rows: &[Row]) -> String {
    let rows: Vec<Row> = rows.iter().map(|r| Row { elapsed_ms: None, ..r.clone() }).collect();
    serde_json::to_string(&rows).expect("rows serialize")
}

/// All ten rows. The last reruns rows 1 to 9 and compares the two reports
/// byte for byte (timings excluded).
pub fn acceptance_suite(opts: &SuiteOpts) -> Suite {
    let mut rows = criteria_rows(opts);
    let again = criteria_rows(opts);
    let (a, b) = (untimed(&rows), untimed(&again));
    rows.push(Row {
        criterion: 10,
        name: "Determinism".into(),
        pass: a == b,
        detail: if a == b {
            format!("two runs with seed {} give identical {}-byte reports", opts.seed, a.len())
        } else {
            "reports differ between runs".into()
        },
        elapsed_ms: None,
    });
    Suite { seed: opts.seed, quick: opts.quick, rows }
}
