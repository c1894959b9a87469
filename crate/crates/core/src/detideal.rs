//! Matrices of linear forms and their ideals of minors.
//!
//! Besides construction of the standard families, this module measures
//! heights of the ideals `I_j(X)`, evaluates the height hypotheses under
//! which the ideal of maximal minors has linear powers, and performs the
//! generic one-variable deformation `X + yA` that raises every deficient
//! height by one.
//!
//! ```
//! use minorforge::detideal::{build_family, height_profile, minors_ideal};
//!
//! let x = build_family("scroll:3", 32003).unwrap();
//! assert_eq!(minors_ideal(&x, 2).unwrap().generators().len(), 3);
//! assert_eq!(height_profile(&x).unwrap(), vec![(1, 4), (2, 2)]);
//! ```

use crate::error::{Error, Result};
use crate::groebner::{divide_exact, Ideal};
use crate::ring::{random_linear_form, Degree, MonomialOrder, Poly, Ring, RingDescriptor, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// An `m × n` matrix (`m ≤ n`) of linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMatrix {
    ring: RingRef,
    rows: Vec<Vec<Poly>>,
    family: String,
}

/// JSON form: `{"rows":[["x1","0",...],...]}` with an optional ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub rows: Vec<Vec<String>>,
}

impl LinearMatrix {
    /// Validates the entries; a matrix with more rows than columns is
    /// transposed.
    pub fn new(ring: &RingRef, rows: Vec<Vec<Poly>>, family: impl Into<String>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if m == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be a nonempty rectangle".into()));
        }
        for p in rows.iter().flatten() {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !p.is_zero() && (!p.is_homogeneous() || p.terms().iter().any(|t| t.mono.degree() != 1)) {
                return Err(Error::InvalidArgument(format!("entry {p} is not a linear form")));
            }
        }
        let x = LinearMatrix {
            ring: ring.clone(),
            rows,
            family: family.into(),
        };
        Ok(if m > n { x.transpose() } else { x })
    }

    /// Parses the JSON matrix format. Without a ring, the variables are the
    /// identifiers occurring in the entries, in natural order.
    pub fn from_json(text: &str, p: u64) -> Result<Self> {
        let mj: MatrixJson = serde_json::from_str(text)?;
        let ring = match &mj.ring {
            Some(d) => d.build()?,
            None => {
                let names = infer_variables(mj.rows.iter().flatten().map(|s| s.as_str()));
                if names.is_empty() {
                    return Err(Error::InvalidArgument("matrix has no variables".into()));
                }
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                Ring::standard(&refs, p)?
            }
        };
        let rows = mj
            .rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(s, &ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LinearMatrix::new(&ring, rows, mj.family.unwrap_or_else(|| "custom".into()))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            ring: Some(self.ring.descriptor()),
            family: Some(self.family.clone()),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    /// The transpose (which may have more rows than columns).
    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        LinearMatrix {
            ring: self.ring.clone(),
            rows,
            family: self.family.clone(),
        }
    }

    /// The same matrix over a larger ring containing this one's variables.
    pub fn embed(&self, target: &RingRef) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.embed(target)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMatrix {
            ring: target.clone(),
            rows,
            family: self.family.clone(),
        })
    }

    /// All `j × j` minors (including zeros), rows and columns in
    /// lexicographic order of their index sets, by Laplace expansion along
    /// the first chosen row.
    pub fn minors(&self, j: usize) -> Result<Vec<Poly>> {
        let (m, n) = (self.nrows(), self.ncols());
        if j == 0 || j > m.min(n) {
            return Err(Error::InvalidArgument(format!("minor size {j} out of range 1..={}", m.min(n))));
        }
        let mut memo: HashMap<(u32, u32), Poly> = HashMap::new();
        let mut out = Vec::new();
        for rs in subsets(m, j) {
            for cs in subsets(n, j) {
                out.push(self.minor(mask(&rs), mask(&cs), &mut memo)?);
            }
        }
        Ok(out)
    }

    fn minor(&self, rows: u32, cols: u32, memo: &mut HashMap<(u32, u32), Poly>) -> Result<Poly> {
        if let Some(p) = memo.get(&(rows, cols)) {
            return Ok(p.clone());
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Poly::zero(&self.ring);
        if rest == 0 {
            acc = self.rows[r][cols.trailing_zeros() as usize].clone();
        } else {
            let mut sign = false;
            let mut cs = cols;
            while cs != 0 {
                let c = cs.trailing_zeros() as usize;
                cs &= cs - 1;
                let e = &self.rows[r][c];
                if !e.is_zero() {
                    let sub = self.minor(rest, cols & !(1 << c), memo)?;
                    let t = e.mul(&sub)?;
                    acc = if sign { acc.sub(&t)? } else { acc.add(&t)? };
                }
                sign = !sign;
            }
        }
        memo.insert((rows, cols), acc.clone());
        Ok(acc)
    }

    /// Determinant of a square matrix by fraction-free (Bareiss)
    /// elimination.
    pub fn determinant_bareiss(&self) -> Result<Poly> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let mut a = self.rows.clone();
        let mut prev = Poly::one(&self.ring);
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero(&self.ring));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                    a[i][j] = divide_exact(&num, &prev)
                        .ok_or_else(|| Error::InvalidArgument("inexact Bareiss division".into()))?;
                }
                a[i][k] = Poly::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        Ok(if negate { prev.neg() } else { prev })
    }
}

impl fmt::Display for LinearMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn mask(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

fn natural_key(s: &str) -> (String, u64, String) {
    let head: String = s.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let digits: String = s[head.len()..].chars().take_while(|c| c.is_ascii_digit()).collect();
    let tail = s[head.len() + digits.len()..].to_string();
    (head, digits.parse().unwrap_or(0), tail)
}

fn infer_variables<'a>(entries: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for e in entries {
        let mut cur = String::new();
        for c in e.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_alphanumeric() || c == '_' {
                cur.push(c);
            } else {
                if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && !names.contains(&cur) {
                    names.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    names.sort_by_key(|n| natural_key(n));
    names
}

/// A named family of matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Generic { m: usize, n: usize },
    Symmetric { n: usize },
    Scroll(Vec<usize>),
    Counterexample(String),
    Custom(String),
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `generic:3x5`, `symmetric:3`, `scroll:2,2,3`, `paper:m3x5`,
    /// `custom:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("bad family spec `{s}`: {msg}"));
        let (kind, arg) = s.split_once(':').ok_or_else(|| bad("expected kind:argument"))?;
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad("expected an integer"));
        match kind {
            "generic" => {
                let (m, n) = arg.split_once('x').ok_or_else(|| bad("expected MxN"))?;
                let (m, n) = (num(m)?, num(n)?);
                if m < 1 || n < 1 {
                    return Err(bad("sizes must be positive"));
                }
                Ok(FamilySpec::Generic {
                    m: m as usize,
                    n: n as usize,
                })
            }
            "symmetric" => match num(arg)? {
                n if n >= 1 => Ok(FamilySpec::Symmetric { n: n as usize }),
                _ => Err(bad("size must be positive")),
            },
            "scroll" => {
                let a = arg.split(',').map(num).collect::<Result<Vec<_>>>()?;
                if a.iter().any(|&x| x <= 0) {
                    return Err(bad("scroll degrees must be positive"));
                }
                Ok(FamilySpec::Scroll(a.into_iter().map(|x| x as usize).collect()))
            }
            "paper" => match arg {
                "m3x5" | "m4x5" => Ok(FamilySpec::Counterexample(arg.to_string())),
                _ => Err(bad("known matrices are m3x5 and m4x5")),
            },
            "custom" => Ok(FamilySpec::Custom(arg.to_string())),
            _ => Err(bad("unknown family")),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Generic { m, n } => write!(f, "generic:{m}x{n}"),
            FamilySpec::Symmetric { n } => write!(f, "symmetric:{n}"),
            FamilySpec::Scroll(a) => {
                let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "scroll:{}", s.join(","))
            }
            FamilySpec::Counterexample(name) => write!(f, "paper:{name}"),
            FamilySpec::Custom(path) => write!(f, "custom:{path}"),
        }
    }
}

fn matrix_over(names: &[String], p: u64, cells: &[Vec<&str>], family: String) -> Result<LinearMatrix> {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = Ring::standard(&refs, p)?;
    let rows = cells
        .iter()
        .map(|r| r.iter().map(|s| Poly::parse(s, &ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LinearMatrix::new(&ring, rows, family)
}

fn index_name(prefix: &str, i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("{prefix}{i}_{j}")
    } else {
        format!("{prefix}{i}{j}")
    }
}

/// Builds a family member over `F_p`.
///
/// * `generic:MxN`: variables `x11 … xMN` (`x1_1` style beyond 9).
/// * `symmetric:N`: variables `y_ij`, `i ≤ j`, placed symmetrically.
/// * `scroll:a1,…,ak`: block `i` is `[x_{i,0} … x_{i,a_i−1} / x_{i,1} … x_{i,a_i}]`;
///   one block uses `x0 … xa`, several use `x{i}_{j}`.
/// * `paper:m3x5`, `paper:m4x5`: the two displayed counterexamples over
///   `x1 … x5`, respectively `x1 … x4`.
/// * `custom:<path>`: a JSON matrix file.
pub fn build_family(spec: &str, p: u64) -> Result<LinearMatrix> {
    build(&spec.parse()?, p)
}

pub fn build(spec: &FamilySpec, p: u64) -> Result<LinearMatrix> {
    let tag = spec.to_string();
    match spec {
        FamilySpec::Generic { m, n } => {
            let wide = *m > 9 || *n > 9;
            let names: Vec<String> = (1..=*m)
                .flat_map(|i| (1..=*n).map(move |j| index_name("x", i, j, wide)))
                .collect();
            let cells: Vec<Vec<&str>> = (0..*m).map(|i| (0..*n).map(|j| names[i * n + j].as_str()).collect()).collect();
            matrix_over(&names, p, &cells, tag)
        }
        FamilySpec::Symmetric { n } => {
            let wide = *n > 9;
            let name = |i: usize, j: usize| index_name("y", i.min(j), i.max(j), wide);
            let names: Vec<String> = (1..=*n).flat_map(|i| (i..=*n).map(move |j| name(i, j))).collect();
            let grid: Vec<Vec<String>> = (1..=*n).map(|i| (1..=*n).map(|j| name(i, j)).collect()).collect();
            let cells: Vec<Vec<&str>> = grid.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
            matrix_over(&names, p, &cells, tag)
        }
        FamilySpec::Scroll(a) => {
            if a.is_empty() || a.contains(&0) {
                return Err(Error::InvalidArgument("scroll degrees must be positive".into()));
            }
            let name = |i: usize, j: usize| {
                if a.len() == 1 {
                    format!("x{j}")
                } else {
                    format!("x{}_{j}", i + 1)
                }
            };
            let names: Vec<String> = a
                .iter()
                .enumerate()
                .flat_map(|(i, &ai)| (0..=ai).map(move |j| (i, j)))
                .map(|(i, j)| name(i, j))
                .collect();
            let mut top = Vec::new();
            let mut bottom = Vec::new();
            for (i, &ai) in a.iter().enumerate() {
                for j in 0..ai {
                    top.push(name(i, j));
                    bottom.push(name(i, j + 1));
                }
            }
            let cells = vec![
                top.iter().map(|s| s.as_str()).collect(),
                bottom.iter().map(|s| s.as_str()).collect(),
            ];
            matrix_over(&names, p, &cells, tag)
        }
        FamilySpec::Counterexample(which) => {
            let (nv, cells): (usize, Vec<Vec<&str>>) = match which.as_str() {
                "m3x5" => (
                    5,
                    vec![
                        vec!["x1", "0", "0", "x2", "x4"],
                        vec!["0", "0", "x3", "x2", "x5"],
                        vec!["0", "x2", "x1", "x3", "x3"],
                    ],
                ),
                "m4x5" => (
                    4,
                    vec![
                        vec!["x1", "0", "0", "0", "x3"],
                        vec!["0", "x2", "0", "0", "x4"],
                        vec!["0", "0", "x2", "x3", "0"],
                        vec!["0", "0", "x1", "x4", "x3"],
                    ],
                ),
                _ => return Err(Error::InvalidArgument(format!("unknown matrix {which}"))),
            };
            let names: Vec<String> = (1..=nv).map(|i| format!("x{i}")).collect();
            matrix_over(&names, p, &cells, tag)
        }
        FamilySpec::Custom(path) => {
            let text = std::fs::read_to_string(path)?;
            LinearMatrix::from_json(&text, p)
        }
    }
}

/// `I_j(X)`, minimally generated by a subset of the `j`-minors.
pub fn minors_ideal(x: &LinearMatrix, j: usize) -> Result<Ideal> {
    let minors = x.minors(j)?;
    let all = Ideal::new(x.ring(), minors)?;
    let gens = all.minimal_generators()?;
    Ideal::new(x.ring(), gens)
}

/// Height of `I_j(X)` (zero when all `j`-minors vanish).
pub fn minors_height(x: &LinearMatrix, j: usize) -> Result<usize> {
    let i = minors_ideal(x, j)?;
    if i.is_zero() {
        return Ok(0);
    }
    i.height()
}

/// `(j, height I_j(X))` for `j = 1..=m`, computed concurrently.
pub fn height_profile(x: &LinearMatrix) -> Result<Vec<(usize, usize)>> {
    (1..=x.nrows())
        .into_par_iter()
        .map(|j| Ok((j, minors_height(x, j)?)))
        .collect()
}

/// Which set of height hypotheses to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypotheses {
    /// `height I_m ≥ n − m + 1` and `height I_j ≥ min{(m+1−j)(n−m)+1, N}`
    /// for `2 ≤ j ≤ m − 1`.
    #[serde(rename = "mainThm")]
    MainTheorem,
    /// `height I_j ≥ (m+1−j)(n−m)+1` for every `j`.
    #[serde(rename = "ABWEH")]
    Generic,
}

impl FromStr for Hypotheses {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mainThm" | "main" => Ok(Hypotheses::MainTheorem),
            "ABWEH" | "abweh" | "generic" => Ok(Hypotheses::Generic),
            _ => Err(Error::InvalidArgument(format!("unknown hypotheses `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub j: usize,
    pub required: usize,
    pub actual: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub hypotheses: Hypotheses,
    pub m: usize,
    pub n: usize,
    /// `height I_1(X)`.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Largest `p ∈ 1..=m` with `(m+1−p)(n−m)+2 > N+1`, if any.
    pub p: Option<usize>,
    pub conditions: Vec<Condition>,
    pub verdict: bool,
}

/// Evaluates the chosen height inequalities on the height profile.
pub fn check_hypotheses(x: &LinearMatrix, which: Hypotheses) -> Result<HypothesisReport> {
    let profile = height_profile(x)?;
    Ok(report_from_profile(x.nrows(), x.ncols(), &profile, which))
}

pub fn report_from_profile(m: usize, n: usize, profile: &[(usize, usize)], which: Hypotheses) -> HypothesisReport {
    let height = |j: usize| profile.iter().find(|e| e.0 == j).map_or(0, |e| e.1);
    let big_n = height(1);
    let bound = |j: usize| (m + 1 - j) * (n - m) + 1;
    let js: Vec<(usize, usize)> = match which {
        Hypotheses::MainTheorem => {
            let mut v = vec![(m, n - m + 1)];
            v.extend((2..m).map(|j| (j, bound(j).min(big_n))));
            v.sort();
            v
        }
        Hypotheses::Generic => (1..=m).map(|j| (j, bound(j))).collect(),
    };
    let conditions: Vec<Condition> = js
        .into_iter()
        .map(|(j, required)| Condition {
            j,
            required,
            actual: height(j),
            satisfied: height(j) >= required,
        })
        .collect();
    let p = (1..=m).rev().find(|&p| (m + 1 - p) * (n - m) + 2 > big_n + 1);
    HypothesisReport {
        hypotheses: which,
        m,
        n,
        big_n,
        p,
        verdict: conditions.iter().all(|c| c.satisfied),
        conditions,
    }
}

/// `Y = X + yA` over `S[y]`.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub matrix: LinearMatrix,
    /// Entries of `A` in `F_p`.
    pub a: Vec<Vec<u32>>,
    /// Seed that produced `A`.
    pub seed: u64,
    /// Heights `(j, height I_j(X), height I_j(Y))` when checked.
    pub heights: Option<Vec<(usize, usize, usize)>>,
}

/// Draws `A` uniformly from `M_{m×n}(F_p)` with a ChaCha8 stream.
pub fn random_scalar_matrix(m: usize, n: usize, p: u32, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect()
}

/// An `m × n` matrix of linear forms in `ring` with coefficients drawn
/// from a ChaCha8 stream.
pub fn random_linear_matrix(ring: &RingRef, m: usize, n: usize, seed: u64) -> Result<LinearMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..m)
        .map(|_| (0..n).map(|_| random_linear_form(ring, rng.gen())).collect())
        .collect();
    LinearMatrix::new(ring, rows, format!("random:{m}x{n}@{seed}"))
}

/// `X + yA` for a given scalar matrix over `S[y]` (`y` gets the degree of a
/// linear form of the first grading component).
pub fn perturb_with(x: &LinearMatrix, a: &[Vec<u32>]) -> Result<LinearMatrix> {
    let ring = x.ring();
    let y = ring.fresh_name("y");
    let mut deg: Degree = ring.zero_degree();
    deg[0] = 1;
    let ext = ring.extended(&[y], &[deg], MonomialOrder::DegRevLex)?;
    let yv = Poly::var(&ext, ring.nvars());
    let base = x.embed(&ext)?;
    let rows = base
        .rows
        .iter()
        .zip(a)
        .map(|(r, ar)| {
            r.iter()
                .zip(ar)
                .map(|(e, &c)| e.add(&yv.scale_fp(c)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMatrix::new(&ext, rows, format!("{}+yA", x.family))
}

/// Expected height of `I_j(X + yA)` for generic `A`.
pub fn generic_perturbed_height(m: usize, n: usize, j: usize, h: usize) -> usize {
    ((m + 1 - j) * (n + 1 - j)).min(h + 1)
}

/// Perturbs `X` by `yA` with `A` drawn from `seed`. With `check`, the
/// heights of all `I_j(X + yA)` are compared against
/// `min{(m+1−j)(n+1−j), height I_j(X) + 1}`; on a mismatch `A` is redrawn
/// from the next seed, at most five times.
pub fn perturb_matrix(x: &LinearMatrix, seed: u64, check: bool) -> Result<Perturbation> {
    let (m, n) = (x.nrows(), x.ncols());
    let p = x.ring().characteristic();
    let base = if check { Some(height_profile(x)?) } else { None };
    for attempt in 0..=5u64 {
        let s = seed.wrapping_add(attempt);
        let a = random_scalar_matrix(m, n, p, s);
        let y = perturb_with(x, &a)?;
        let Some(base) = &base else {
            return Ok(Perturbation {
                matrix: y,
                a,
                seed: s,
                heights: None,
            });
        };
        let after = height_profile(&y)?;
        let heights: Vec<(usize, usize, usize)> =
            base.iter().zip(&after).map(|(&(j, h), &(_, h2))| (j, h, h2)).collect();
        if heights.iter().all(|&(j, h, h2)| h2 == generic_perturbed_height(m, n, j, h)) {
            return Ok(Perturbation {
                matrix: y,
                a,
                seed: s,
                heights: Some(heights),
            });
        }
    }
    Err(Error::GenericityFailure(format!(
        "no perturbation reached the generic heights for seeds {seed}..={}",
        seed.wrapping_add(5)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(ps: &[Poly]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn scroll_convention() {
        let x = build_family("scroll:3", 32003).unwrap();
        assert_eq!(x.to_string(), "[x0, x1, x2]\n[x1, x2, x3]\n");
        let i = minors_ideal(&x, 2).unwrap();
        assert_eq!(strs(i.generators()), vec!["-x1^2 + x0*x2", "-x1*x2 + x0*x3", "-x2^2 + x1*x3"]);
        assert!(build_family("scroll:0", 32003).is_err());
        assert!(build_family("scroll:2,-1", 32003).is_err());
        let s = build_family("scroll:2,2", 32003).unwrap();
        assert_eq!(s.ring().nvars(), 6);
        assert_eq!(s.ncols(), 4);
    }

    #[test]
    fn counterexample_matrices() {
        let x = build_family("paper:m3x5", 32003).unwrap();
        assert_eq!(x.to_string(), "[x1, 0, 0, x2, x4]\n[0, 0, x3, x2, x5]\n[0, x2, x1, x3, x3]\n");
        let y = build_family("paper:m4x5", 32003).unwrap();
        assert_eq!((y.nrows(), y.ncols(), y.ring().nvars()), (4, 5, 4));
    }

    #[test]
    fn generic_and_symmetric_shapes() {
        let g = build_family("generic:2x3", 32003).unwrap();
        assert_eq!(g.ring().var_names().join(" "), "x11 x12 x13 x21 x22 x23");
        assert_eq!(height_profile(&g).unwrap(), vec![(1, 6), (2, 2)]);
        let s = build_family("symmetric:3", 32003).unwrap();
        assert_eq!(s.ring().nvars(), 6);
        assert_eq!(s.entry(0, 1), s.entry(1, 0));
        assert_eq!(minors_ideal(&s, 2).unwrap().generators().len(), 6);
    }

    #[test]
    fn laplace_agrees_with_bareiss() {
        for spec in ["generic:3x3", "symmetric:3", "paper:m4x5"] {
            let x = build_family(spec, 32003).unwrap();
            let k = x.nrows().min(x.ncols());
            let cols: Vec<Vec<Poly>> = x.rows().iter().map(|r| r[..k].to_vec()).collect();
            let sq = LinearMatrix::new(x.ring(), cols, "sq").unwrap();
            assert_eq!(sq.minors(k).unwrap()[0], sq.determinant_bareiss().unwrap());
        }
    }

    #[test]
    fn json_round_trip_and_transpose() {
        let x = LinearMatrix::from_json(r#"{"rows":[["x1","x2"],["x2","x10"],["x3","0"]]}"#, 32003).unwrap();
        assert_eq!((x.nrows(), x.ncols()), (2, 3));
        assert_eq!(x.ring().var_names().join(" "), "x1 x2 x3 x10");
        let back = LinearMatrix::from_json(&serde_json::to_string(&x.to_json()).unwrap(), 32003).unwrap();
        assert_eq!(back.rows(), x.rows());
        assert!(LinearMatrix::from_json(r#"{"rows":[["x1^2"]]}"#, 32003).is_err());
    }

    #[test]
    fn hypotheses_literal_evaluation() {
        let r = report_from_profile(3, 5, &[(1, 5), (2, 3), (3, 3)], Hypotheses::MainTheorem);
        assert!(!r.verdict);
        let c2 = r.conditions.iter().find(|c| c.j == 2).unwrap();
        assert_eq!((c2.required, c2.actual, c2.satisfied), (5, 3, false));
        let s = report_from_profile(2, 4, &[(1, 6), (2, 3)], Hypotheses::MainTheorem);
        assert!(s.verdict);
        assert_eq!(s.conditions.len(), 1);
    }

    #[test]
    fn zero_matrix_perturbation() {
        let r = Ring::standard(&["x"], 32003).unwrap();
        let x = LinearMatrix::new(&r, vec![vec![Poly::zero(&r)]], "zero").unwrap();
        assert_eq!(height_profile(&x).unwrap(), vec![(1, 0)]);
        let p = perturb_matrix(&x, 3, true).unwrap();
        assert_eq!(p.heights.unwrap(), vec![(1, 0, 1)]);
    }

    #[test]
    fn subsets_enumerate_lexicographically() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 3), Vec::<Vec<usize>>::new());
    }
}
