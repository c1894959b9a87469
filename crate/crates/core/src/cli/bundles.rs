//! Regression bundles for the worked examples. Each bundle runs a fixed
//! scenario and records one [`Check`] per asserted claim.

use crate::detideal::{
    build_family, check_hypotheses, generic_perturbed_height, height_profile, minors_ideal, perturb_with,
    random_scalar_matrix, Hypotheses, LinearMatrix,
};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::powers::{
    a0_top_degree, betti_powers, borel_closure, hyperplane_betti_relation, is_strongly_stable, linear_powers_check,
    saturation_identity_check, LinearPowersReport,
};
use crate::rees::{classify, ReesOptions, ReesPresentation};
use crate::resolve::{is_linear_resolution, projdim, regularity};
use crate::ring::{Poly, Ring};
use serde::Serialize;

pub const BUNDLES: [&str; 10] = [
    "ex1",
    "ex2",
    "ex3",
    "m3x5",
    "m4x5",
    "veronese",
    "scrolls",
    "abw-projdim",
    "palo-betti",
    "yA-perturb",
];

#[derive(Debug, Clone)]
pub struct BundleConfig {
    pub p: u64,
    pub seed: u64,
    pub kmax: u32,
    pub reg10_budget: usize,
    pub limits: Limits,
}

impl Default for BundleConfig {
    fn default() -> Self {
        BundleConfig {
            p: 32003,
            seed: 0,
            kmax: 3,
            reg10_budget: 12,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Stopped by a resource cap before a verdict.
    Capped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub bundle: String,
    pub name: String,
    /// The mathematical claim being verified.
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Recorder {
    bundle: String,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(bundle: &str) -> Self {
        Recorder {
            bundle: bundle.to_string(),
            checks: vec![],
        }
    }

    fn check(&mut self, name: &str, claim: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if e.is_resource_cap() => (Status::Capped, e.to_string()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check {
            bundle: self.bundle.clone(),
            name: name.to_string(),
            claim: claim.to_string(),
            status,
            detail,
        });
    }

    fn fail_all(&mut self, name: &str, claim: &str, e: &Error) {
        let e = e.clone();
        self.check(name, claim, move || Err(e));
    }
}

/// Runs one bundle by id.
pub fn run_bundle(id: &str, cfg: &BundleConfig) -> Result<Vec<Check>> {
    let checks = match id {
        "ex1" => ex1(cfg),
        "ex2" => ex2(cfg),
        "ex3" => ex3(cfg),
        "m3x5" => m3x5(cfg),
        "m4x5" => m4x5(cfg),
        "veronese" => veronese(cfg),
        "scrolls" => scrolls(cfg),
        "abw-projdim" => abw_projdim(cfg),
        "palo-betti" => palo_betti(cfg),
        "yA-perturb" => ya_perturb(cfg),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown example `{id}` (known: {})",
                BUNDLES.join(", ")
            )))
        }
    };
    Ok(checks)
}

fn family_ideal(spec: &str, j: Option<usize>, cfg: &BundleConfig) -> Result<(LinearMatrix, Ideal)> {
    let x = build_family(spec, cfg.p)?;
    let i = minors_ideal(&x, j.unwrap_or(x.nrows()))?.with_limits(cfg.limits.clone());
    Ok((x, i))
}

fn linear_powers_claim(rec: &mut Recorder, name: &str, claim: &str, lp: &Result<LinearPowersReport>) {
    rec.check(name, claim, || {
        let lp = lp.as_ref().map_err(|e| e.clone())?;
        let regs: Vec<String> = lp
            .powers
            .iter()
            .map(|r| match r.reg {
                Some(reg) => format!("k={}: reg {reg} (dk = {})", r.k, r.expected),
                None => format!("k={}: {}", r.k, r.error.as_deref().unwrap_or("?")),
            })
            .collect();
        if let Some(r) = lp.powers.iter().find(|r| r.capped) {
            return Err(Error::Budget(format!("k = {}: {}", r.k, r.error.as_deref().unwrap_or(""))));
        }
        Ok((lp.all_linear(), regs.join("; ")))
    });
}

/// Claims every Rees computation must satisfy.
fn rees_consistency(rec: &mut Recorder, c: &ReesPresentation, lp: &Result<LinearPowersReport>) {
    rec.check("containments", "Q(I) and T(I) are contained in P(I)", || {
        Ok((c.p.contains_ideal(&c.q)? && c.p.contains_ideal(&c.t)?, String::new()))
    });
    rec.check(
        "fiber-criteria",
        "the bidegree criterion and P = Q + T agree on fiber type",
        || {
            Ok((
                c.fiber_type == c.fiber_type_by_bidegree,
                format!("equality {} / bidegrees {}", c.fiber_type, c.fiber_type_by_bidegree),
            ))
        },
    );
    if let Ok(lp) = lp {
        let quadratic = c.quadratic_gb.values().any(|&b| b);
        rec.check(
            "koszul-direction",
            "a quadratic Gröbner basis of P(I) forces linear powers",
            || Ok((!quadratic || lp.all_linear(), format!("quadratic GB found: {quadratic}"))),
        );
        if let Some(r) = c.reg10 {
            rec.check(
                "reg10-linear-powers",
                "reg_(1,0) Rees(I) = 0 exactly when the tested powers are linear",
                || Ok(((r == 0) == lp.all_linear(), format!("reg10 {r}, {}", lp.verdict))),
            );
        }
    }
}

fn opts(cfg: &BundleConfig) -> ReesOptions {
    ReesOptions {
        reg10_budget: cfg.reg10_budget,
        ..ReesOptions::default()
    }
}

fn ex1(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("ex1");
    let setup = || -> Result<(Ideal, ReesPresentation)> {
        let r = Ring::standard(&["a", "b", "c", "d"], cfg.p)?;
        let i = Ideal::parse(&r, &["a^2*b", "a^2*c", "a*b*d", "b^2*d"])?.with_limits(cfg.limits.clone());
        let c = classify(&i, &opts(cfg))?;
        Ok((i, c))
    };
    let (i, c) = match setup() {
        Ok(v) => v,
        Err(e) => {
            rec.fail_all("rees", "the Rees presentation of (a²b, a²c, abd, b²d) is computable", &e);
            return rec.checks;
        }
    };
    rec.check(
        "p-generators",
        "P(I) = (c·y1 − b·y2, d·y1 − a·y3, b·y3 − a·y4, d·y2·y4 − c·y3²)",
        || {
            let expected = Ideal::parse(
                &c.rees.ring,
                &["-y2*b + y1*c", "-y3*a + y1*d", "-y4*a + y3*b", "-y3^2*c + y2*y4*d"],
            )?;
            let gens: Vec<String> = c.p.generators().iter().map(|g| g.to_string()).collect();
            Ok((c.p.equals(&expected)?, gens.join(", ")))
        },
    );
    rec.check("bidegrees", "P(I) has minimal generators of bidegrees (1,1)³ and (1,2)", || {
        let mut b = c.bidegrees.clone();
        b.sort();
        Ok((b == vec![(1, 1), (1, 1), (1, 1), (1, 2)], format!("{b:?}")))
    });
    rec.check("not-fiber-type", "I is not of fiber type", || {
        Ok((!c.fiber_type && !c.fiber_type_by_bidegree, String::new()))
    });
    rec.check("reg10", "reg_(1,0) Rees(I) = 0", || {
        let r = c.reg10.ok_or_else(|| Error::Budget("reg10 skipped".into()))?;
        Ok((r == 0, format!("reg10 {r}")))
    });
    let lp = linear_powers_check(&i, cfg.kmax);
    linear_powers_claim(&mut rec, "linear-powers", "reg(I^k) = 3k on the tested range", &lp);
    rees_consistency(&mut rec, &c, &lp);
    rec.checks
}

/// The strongly stable ideal of the second worked example.
pub fn ex2_ideal(p: u64) -> Result<Ideal> {
    let r = Ring::standard(&["x1", "x2", "x3"], p)?;
    let seeds = ["x2^6", "x1^2*x2^2*x3^2", "x1^3*x3^3"]
        .iter()
        .map(|s| Poly::parse(s, &r))
        .collect::<Result<Vec<_>>>()?;
    borel_closure(&r, &seeds)
}

/// The squarefree quadratic ideal of the third worked example.
pub fn ex3_ideal(p: u64) -> Result<Ideal> {
    let r = Ring::standard_indexed("x", 6, p)?;
    Ideal::parse(
        &r,
        &[
            "x3*x6", "x1*x3", "x5*x6", "x4*x6", "x2*x3", "x1*x5", "x3*x4", "x1*x6", "x1*x2", "x4*x5",
        ],
    )
}

fn ex2(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("ex2");
    let i = match ex2_ideal(cfg.p) {
        Ok(i) => i.with_limits(cfg.limits.clone()),
        Err(e) => {
            rec.fail_all("closure", "the Borel closure is computable", &e);
            return rec.checks;
        }
    };
    rec.check("strongly-stable", "the Borel closure is strongly stable and closed", || {
        let again = borel_closure(i.ring(), i.generators())?;
        Ok((
            is_strongly_stable(&i)? && again.generators() == i.generators(),
            format!("{} generators", i.generators().len()),
        ))
    });
    rec.check("powers-stable", "the tested powers are strongly stable", || {
        for k in 1..=cfg.kmax {
            if !is_strongly_stable(&i.power(k)?)? {
                return Ok((false, format!("k = {k}")));
            }
        }
        Ok((true, String::new()))
    });
    let lp = linear_powers_check(&i, cfg.kmax);
    linear_powers_claim(&mut rec, "linear-powers", "reg(I^k) = 6k on the tested range", &lp);
    match classify(&i, &opts(cfg)) {
        Ok(c) => {
            rec.check("fiber-type", "I is of fiber type", || {
                Ok((c.fiber_type && c.fiber_type_by_bidegree, String::new()))
            });
            rec.check(
                "no-quadratic-gb",
                "no quadratic Gröbner basis of P(I) in the standard orders",
                || Ok((c.quadratic_gb.values().all(|&b| !b), format!("{:?}", c.quadratic_gb))),
            );
            rees_consistency(&mut rec, &c, &lp);
        }
        Err(e) => rec.fail_all("rees", "the Rees presentation is computable", &e),
    }
    rec.checks
}

fn ex3(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("ex3");
    let i = match ex3_ideal(cfg.p) {
        Ok(i) => i.with_limits(cfg.limits.clone()),
        Err(e) => {
            rec.fail_all("ideal", "the ideal parses", &e);
            return rec.checks;
        }
    };
    rec.check("linear-resolution", "I has a linear resolution", || {
        Ok((is_linear_resolution(&i)?, String::new()))
    });
    let lp = linear_powers_check(&i, cfg.kmax);
    linear_powers_claim(&mut rec, "linear-powers", "reg(I^k) = 2k on the tested range", &lp);
    match classify(&i, &opts(cfg)) {
        Ok(c) => {
            rec.check(
                "no-quadratic-gb",
                "no quadratic Gröbner basis of P(I) in the standard orders",
                || Ok((c.quadratic_gb.values().all(|&b| !b), format!("{:?}", c.quadratic_gb))),
            );
            rees_consistency(&mut rec, &c, &lp);
        }
        Err(e) => rec.fail_all("rees", "the Rees presentation is computable", &e),
    }
    rec.checks
}

fn height_claim(rec: &mut Recorder, x: &LinearMatrix, wanted: &[(usize, usize)]) {
    let profile = height_profile(x);
    for &(j, h) in wanted {
        rec.check(&format!("height-I{j}"), &format!("height I_{j} = {h}"), || {
            let p = profile.as_ref().map_err(|e| e.clone())?;
            let got = p.iter().find(|e| e.0 == j).map(|e| e.1);
            Ok((got == Some(h), format!("{got:?}")))
        });
    }
}

fn m3x5(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("m3x5");
    let (x, i) = match family_ideal("paper:m3x5", None, cfg) {
        Ok(v) => v,
        Err(e) => {
            rec.fail_all("matrix", "the 3×5 matrix builds", &e);
            return rec.checks;
        }
    };
    height_claim(&mut rec, &x, &[(3, 3), (2, 3)]);
    rec.check("hypotheses", "the height hypotheses of the main theorem fail", || {
        let r = check_hypotheses(&x, Hypotheses::MainTheorem)?;
        Ok((!r.verdict, format!("{:?}", r.conditions)))
    });
    rec.check("linear-k1", "I_3 has a linear resolution", || {
        let r = regularity(&i)?;
        Ok((r == 3, format!("reg {r}")))
    });
    rec.check("square-not-linear", "reg(I_3²) > 6", || {
        let r = regularity(&i.power(2)?)?;
        Ok((r > 6, format!("reg {r}")))
    });
    rec.checks
}

fn m4x5(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("m4x5");
    let (x, i) = match family_ideal("paper:m4x5", None, cfg) {
        Ok(v) => v,
        Err(e) => {
            rec.fail_all("matrix", "the 4×5 matrix builds", &e);
            return rec.checks;
        }
    };
    height_claim(&mut rec, &x, &[(4, 2), (3, 2)]);
    rec.check("square-not-linear", "reg(I_4²) > 8", || {
        let r = regularity(&i.power(2)?)?;
        Ok((r > 8, format!("reg {r}")))
    });
    rec.checks
}

fn veronese(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("veronese");
    let i = match family_ideal("symmetric:3", Some(2), cfg) {
        Ok(v) => v.1,
        Err(e) => {
            rec.fail_all("matrix", "the symmetric 3×3 matrix builds", &e);
            return rec.checks;
        }
    };
    let lp = linear_powers_check(&i, cfg.kmax);
    linear_powers_claim(&mut rec, "linear-powers", "reg(I^k) = 2k on the tested range", &lp);
    rec.check("saturation", "I² = (I²)^sat ∩ m⁴", || {
        Ok((saturation_identity_check(&i, 2, 4)?, String::new()))
    });
    rec.check("a0", "H⁰_m(S/I²) vanishes in degrees ≥ 4", || {
        let a0 = a0_top_degree(&i.power(2)?)?;
        Ok((a0.map_or(true, |a| a < 4), format!("a0 {a0:?}")))
    });
    rec.check(
        "hyperplane",
        "a general hyperplane section is the rational normal quartic, Betti ranks (6, 8, 3)",
        || {
            let r = hyperplane_betti_relation(&i, 1, cfg.seed)?;
            let ranks: Vec<i64> = r.rows.iter().map(|row| row.beta_r).collect();
            Ok((r.holds && ranks == vec![6, 8, 3, 0, 0, 0], format!("ranks {ranks:?}")))
        },
    );
    rec.checks
}

/// Whether two ideals have identical Betti tables of `I^k` for `k ≤ kmax`.
pub fn same_betti_powers(a: &Ideal, b: &Ideal, kmax: u32) -> Result<(bool, String)> {
    let ta = betti_powers(a, kmax)?;
    let tb = betti_powers(b, kmax)?;
    let mut detail = vec![];
    let mut same = true;
    for (k, (x, y)) in (1..=kmax).zip(ta.into_iter().zip(tb)) {
        let (x, y) = (x?, y?);
        let eq = x.entries().eq(y.entries());
        same &= eq;
        detail.push(format!("k={k}: ranks {:?} vs {:?}", x.ranks(), y.ranks()));
    }
    Ok((same, detail.join("; ")))
}

fn scrolls(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("scrolls");
    for spec in ["scroll:3", "scroll:2,2", "scroll:3,1", "scroll:2,2,1"] {
        let lp = family_ideal(spec, Some(2), cfg).and_then(|(_, i)| linear_powers_check(&i, cfg.kmax));
        linear_powers_claim(
            &mut rec,
            &format!("linear-powers {spec}"),
            "reg(I_2^k) = 2k on the tested range",
            &lp,
        );
    }
    rec.check("saturated-powers", "I_2(scroll(2,2))^k is saturated for k ≤ 2", || {
        let (_, i) = family_ideal("scroll:2,2", Some(2), cfg)?;
        for k in 1..=2 {
            let ik = i.power(k)?;
            if !ik.saturate_maximal()?.equals(&ik)? {
                return Ok((false, format!("k = {k}")));
            }
        }
        Ok((true, String::new()))
    });
    rec.check(
        "betti-invariance",
        "scroll(2,2) and scroll(3,1) have equal Betti tables of I_2^k for k ≤ 2",
        || {
            let (xa, a) = family_ideal("scroll:2,2", Some(2), cfg)?;
            let (xb, b) = family_ideal("scroll:3,1", Some(2), cfg)?;
            let ha = check_hypotheses(&xa, Hypotheses::MainTheorem)?;
            let hb = check_hypotheses(&xb, Hypotheses::MainTheorem)?;
            if !(ha.verdict && hb.verdict && ha.big_n == hb.big_n) {
                return Ok((false, "hypotheses not met".into()));
            }
            same_betti_powers(&a, &b, 2)
        },
    );
    rec.checks
}

fn abw_projdim(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("abw-projdim");
    for (spec, m, n) in [("generic:2x3", 2u32, 3u32), ("generic:2x4", 2, 4)] {
        rec.check(
            &format!("projdim {spec}"),
            &format!("projdim(I_2^k) = min(k, 2)·{} for k ≤ {}", n - m, cfg.kmax),
            || {
                let (_, i) = family_ideal(spec, None, cfg)?;
                let mut got = vec![];
                for k in 1..=cfg.kmax {
                    got.push(projdim(&i.power(k)?)? as u32);
                }
                let want: Vec<u32> = (1..=cfg.kmax).map(|k| k.min(m) * (n - m)).collect();
                Ok((got == want, format!("{got:?}")))
            },
        );
    }
    rec.checks
}

fn palo_betti(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("palo-betti");
    let kmax = cfg.kmax.min(2);
    for seed in cfg.seed..cfg.seed + 3 {
        rec.check(
            &format!("relation seed {seed}"),
            "β_i(J^k) = β_i(I^k) − C(n−1, i)·β_(n−1)(I^k) for I_2(scroll(2,2)), k ≤ 2",
            || {
                let (_, i) = family_ideal("scroll:2,2", Some(2), cfg)?;
                let r = hyperplane_betti_relation(&i, kmax, seed)?;
                let bad: Vec<String> = r
                    .rows
                    .iter()
                    .filter(|row| !row.holds)
                    .map(|row| format!("k={} i={}: {} vs {}", row.k, row.i, row.beta_r, row.predicted))
                    .collect();
                Ok((bad.is_empty(), if bad.is_empty() { format!("z = {}", r.z) } else { bad.join("; ") }))
            },
        );
    }
    rec.checks
}

/// Heights `(j, h, h')` of `I_j(X)` and `I_j(X + yA)` for `A` drawn from `seed`.
pub fn perturbed_heights(x: &LinearMatrix, base: &[(usize, usize)], seed: u64) -> Result<Vec<(usize, usize, usize)>> {
    let a = random_scalar_matrix(x.nrows(), x.ncols(), x.ring().characteristic(), seed);
    let after = height_profile(&perturb_with(x, &a)?)?;
    Ok(base.iter().zip(&after).map(|(&(j, h), &(_, h2))| (j, h, h2)).collect())
}

fn ya_perturb(cfg: &BundleConfig) -> Vec<Check> {
    let mut rec = Recorder::new("yA-perturb");
    for spec in ["paper:m3x5", "paper:m4x5"] {
        let data = (|| -> Result<(LinearMatrix, Vec<Vec<(usize, usize, usize)>>)> {
            let x = build_family(spec, cfg.p)?;
            let base = height_profile(&x)?;
            let runs = (cfg.seed..cfg.seed + 20)
                .map(|s| perturbed_heights(&x, &base, s))
                .collect::<Result<Vec<_>>>()?;
            Ok((x, runs))
        })();
        rec.check(
            &format!("sandwich {spec}"),
            "height I_j(X) ≤ height I_j(X + yA) ≤ height I_j(X) + 1 for 20 seeds",
            || {
                let (_, runs) = data.as_ref().map_err(|e| e.clone())?;
                let bad = runs
                    .iter()
                    .flatten()
                    .find(|&&(_, h, h2)| !(h <= h2 && h2 <= h + 1));
                Ok((bad.is_none(), format!("{bad:?}")))
            },
        );
        rec.check(
            &format!("generic {spec}"),
            "height I_j(X + yA) = min{(m+1−j)(n+1−j), height I_j(X) + 1} for one of 5 seeds",
            || {
                let (x, runs) = data.as_ref().map_err(|e| e.clone())?;
                let (m, n) = (x.nrows(), x.ncols());
                let hit = runs.iter().take(5).position(|r| {
                    r.iter().all(|&(j, h, h2)| h2 == generic_perturbed_height(m, n, j, h))
                });
                Ok((hit.is_some(), format!("first generic seed offset {hit:?}")))
            },
        );
    }
    rec.checks
}
