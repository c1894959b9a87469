//! One line per acceptance criterion: `[PASS]`, `[FAIL]` or `[CAP ]`,
//! followed by the criterion number and a short summary.

use minorforge::cli::bundles::{ex2_ideal, ex3_ideal, run_bundle, same_betti_powers, BundleConfig, Check, Status};
use minorforge::cli::run;
use minorforge::detideal::{build_family, check_hypotheses, minors_ideal, random_linear_matrix, Hypotheses};
use minorforge::groebner::Ideal;
use minorforge::resolve::{free_resolution, quotient_betti_table, regularity};
use minorforge::ring::Ring;
use minorforge::Result;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::Instant;

const P: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Capped,
}

struct Line {
    id: u32,
    title: &'static str,
    verdict: Verdict,
    detail: String,
    required: bool,
}

fn from_checks(checks: &[Check]) -> (Verdict, String) {
    if let Some(c) = checks.iter().find(|c| c.status == Status::Fail) {
        return (Verdict::Fail, format!("{}/{}: {} [{}]", c.bundle, c.name, c.claim, c.detail));
    }
    if let Some(c) = checks.iter().find(|c| c.status == Status::Capped) {
        return (Verdict::Capped, format!("{}/{}: {}", c.bundle, c.name, c.detail));
    }
    (Verdict::Pass, format!("{} checks", checks.len()))
}

fn bundles(ids: &[&str], cfg: &BundleConfig) -> (Verdict, String) {
    let mut all = vec![];
    for id in ids {
        match run_bundle(id, cfg) {
            Ok(c) => all.extend(c),
            Err(e) => return (Verdict::Fail, format!("{id}: {e}")),
        }
    }
    from_checks(&all)
}

fn outcome(r: Result<(bool, String)>) -> (Verdict, String) {
    match r {
        Ok((true, d)) => (Verdict::Pass, d),
        Ok((false, d)) => (Verdict::Fail, d),
        Err(e) if e.is_resource_cap() => (Verdict::Capped, e.to_string()),
        Err(e) => (Verdict::Fail, format!("error: {e}")),
    }
}

fn two_random_families() -> Result<(bool, String)> {
    let r = Ring::standard(&["x1", "x2", "x3", "x4", "x5"], P)?;
    let mut picked = vec![];
    for seed in 0..20u64 {
        let x = random_linear_matrix(&r, 2, 4, seed)?;
        let h = check_hypotheses(&x, Hypotheses::MainTheorem)?;
        if h.verdict && h.big_n == 5 {
            picked.push((seed, minors_ideal(&x, 2)?));
        }
        if picked.len() == 2 {
            break;
        }
    }
    if picked.len() < 2 {
        return Ok((false, "fewer than two admissible random matrices".into()));
    }
    let (same, detail) = same_betti_powers(&picked[0].1, &picked[1].1, 2)?;
    Ok((same, format!("seeds {} and {}: {detail}", picked[0].0, picked[1].0)))
}

fn betti_invariance() -> Result<(bool, String)> {
    let xa = build_family("scroll:2,2", P)?;
    let xb = build_family("scroll:3,1", P)?;
    let ha = check_hypotheses(&xa, Hypotheses::MainTheorem)?;
    let hb = check_hypotheses(&xb, Hypotheses::MainTheorem)?;
    if !(ha.verdict && hb.verdict && ha.big_n == hb.big_n) {
        return Ok((false, "scroll hypotheses not met".into()));
    }
    let (scrolls, d1) = same_betti_powers(&minors_ideal(&xa, 2)?, &minors_ideal(&xb, 2)?, 2)?;
    let (random, d2) = two_random_families()?;
    Ok((scrolls && random, format!("scrolls N={}: {d1} | random N=5: {d2}", ha.big_n)))
}

fn corpus() -> Result<Vec<(&'static str, Ideal)>> {
    let family = |spec: &str, j: usize| -> Result<Ideal> { minors_ideal(&build_family(spec, P)?, j) };
    let r = Ring::standard(&["a", "b", "c", "d"], P)?;
    let ex1 = Ideal::parse(&r, &["a^2*b", "a^2*c", "a*b*d", "b^2*d"])?;
    Ok(vec![
        ("ex1", ex1.clone()),
        ("ex1^2", ex1.power(2)?),
        ("ex2", ex2_ideal(P)?),
        ("ex3", ex3_ideal(P)?),
        ("scroll(2,2)^2", family("scroll:2,2", 2)?.power(2)?),
        ("scroll(3,1)^2", family("scroll:3,1", 2)?.power(2)?),
        ("veronese^2", family("symmetric:3", 2)?.power(2)?),
        ("generic 2x3^3", family("generic:2x3", 2)?.power(3)?),
        ("generic 2x4^2", family("generic:2x4", 2)?.power(2)?),
        ("m3x5 I3^2", family("paper:m3x5", 3)?.power(2)?),
        ("m4x5 I3", family("paper:m4x5", 3)?),
    ])
}

fn digest(s: &str) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

fn property_suite() -> Result<(bool, String)> {
    let mut bad = vec![];
    let ideals = corpus()?;
    for (name, i) in &ideals {
        let gb = i.groebner_basis()?;
        let again = Ideal::new(i.ring(), gb.to_vec())?.groebner_basis()?;
        if *gb != *again {
            bad.push(format!("{name}: GB not idempotent"));
        }
        let res = free_resolution(i, None)?;
        if !res.is_complex()? {
            bad.push(format!("{name}: d∘d ≠ 0"));
        }
        if !res.is_minimal() {
            bad.push(format!("{name}: unit entry in a differential"));
        }
        let q = quotient_betti_table(i)?;
        if q.euler_numerator() != i.hilbert_numerator()? {
            bad.push(format!("{name}: Betti alternating sum ≠ Hilbert numerator"));
        }
        if res.betti().to_text() != q.shifted(-1).to_text() {
            bad.push(format!("{name}: ideal and quotient tables disagree"));
        }
        let second = free_resolution(&Ideal::new(i.ring(), i.generators().to_vec())?, None)?;
        if digest(&res.betti().to_text()) != digest(&second.betti().to_text()) {
            bad.push(format!("{name}: repeated resolution differs"));
        }
    }
    for args in [
        &["rees", "--family", "scroll:2,2", "--j", "2", "--format", "json", "--jobs", "3"][..],
        &["linear-powers", "--family", "symmetric:3", "--j", "2", "--format", "json"][..],
        &["paper-examples", "palo-betti", "--format", "json", "--seed", "5"][..],
    ] {
        let argv = || std::iter::once("minorforge").chain(args.iter().copied());
        let (a, b) = (run(argv()), run(argv()));
        if a.code != 0 || digest(&a.stdout) != digest(&b.stdout) {
            bad.push(format!("`{}` not deterministic (exit {})", args.join(" "), a.code));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} resolutions, 3 CLI reports", ideals.len())
    } else {
        bad.join("; ")
    };
    Ok((bad.is_empty(), detail))
}

fn symmetric_four_by_four() -> Result<(bool, String)> {
    let i = minors_ideal(&build_family("symmetric:4", P)?, 3)?;
    let regs = (1..=3).map(|k| regularity(&i.power(k)?)).collect::<Result<Vec<_>>>()?;
    Ok((regs[0] == 3 && regs[1] > 6 && regs[2] == 9, format!("reg(I^k) for k = 1..3: {regs:?}")))
}

fn main() {
    let cfg = BundleConfig::default();
    let criteria: Vec<(u32, &'static str, bool, Box<dyn Fn() -> (Verdict, String)>)> = vec![
        (1, "scrolls have linear powers", true, Box::new(|| bundles(&["scrolls"], &cfg))),
        (2, "ex1 Rees presentation, fiber type, reg10, powers", true, Box::new(|| bundles(&["ex1"], &cfg))),
        (3, "3x5 heights and non-linear square", true, Box::new(|| bundles(&["m3x5"], &cfg))),
        (4, "4x5 heights and non-linear square", true, Box::new(|| bundles(&["m4x5"], &cfg))),
        (5, "Veronese powers and saturation identity", true, Box::new(|| bundles(&["veronese"], &cfg))),
        (6, "projective dimension of generic powers", true, Box::new(|| bundles(&["abw-projdim"], &cfg))),
        (7, "hyperplane section Betti relation", true, Box::new(|| bundles(&["palo-betti"], &cfg))),
        (8, "Betti invariance for equal N", true, Box::new(|| outcome(betti_invariance()))),
        (9, "ex2 and ex3", true, Box::new(|| bundles(&["ex2", "ex3"], &cfg))),
        (10, "perturbation height sandwich", true, Box::new(|| bundles(&["yA-perturb"], &cfg))),
        (11, "property suites", true, Box::new(|| outcome(property_suite()))),
        (12, "symmetric 4x4 I_3 powers (stretch)", false, Box::new(|| outcome(symmetric_four_by_four()))),
    ];
    let mut lines = vec![];
    for (id, title, required, f) in criteria {
        let start = Instant::now();
        let (verdict, detail) = f();
        let tag = match verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Capped => "CAP ",
        };
        println!("[{tag}] criterion {id:>2}: {title} ({:.1?}) {detail}", start.elapsed());
        lines.push(Line { id, title, verdict, detail, required });
    }
    let failed: Vec<&Line> = lines.iter().filter(|l| l.required && l.verdict != Verdict::Pass).collect();
    for l in &failed {
        println!("unmet: criterion {} ({}): {}", l.id, l.title, l.detail);
    }
    let passed = lines.iter().filter(|l| l.verdict == Verdict::Pass).count();
    println!("{passed}/{} criteria passed", lines.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
