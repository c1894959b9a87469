//! Graded Betti numbers of `S/I` recomputed as Koszul homology
//! `β_{i,j} = dim H_i(x; S/I)_j`, with `S/I` spanned by standard monomials
//! and ranks taken by plain Gaussian elimination over F_p.

use minorforge::detideal::{build_family, minors_ideal};
use minorforge::groebner::Ideal;
use minorforge::resolve::{betti_table_both_routes, quotient_betti_table, BettiTable};
use minorforge::ring::{Mono, Poly, Ring, Term};
use proptest::prelude::*;
use std::collections::HashMap;

const P: u64 = 32003;

fn monomials(n: usize, d: u32) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for a in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let p = P;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], p - 2);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

struct Quotient<'a> {
    ideal: &'a Ideal,
    lead: Vec<Mono>,
    n: usize,
}

impl<'a> Quotient<'a> {
    fn new(ideal: &'a Ideal) -> Self {
        Quotient {
            ideal,
            lead: ideal.initial_monomials().unwrap(),
            n: ideal.ring().nvars(),
        }
    }

    fn basis(&self, d: i64) -> Vec<Vec<u16>> {
        if d < 0 {
            return vec![];
        }
        monomials(self.n, d as u32)
            .into_iter()
            .filter(|e| {
                let m = Mono::from_exponents(e);
                !self.lead.iter().any(|l| l.divides(&m))
            })
            .collect()
    }

    /// Matrix of `d_i : K_i(j) → K_(i−1)(j)`, one row per source basis element.
    fn differential(&self, i: usize, j: i64) -> Vec<Vec<u64>> {
        let src_sets = subsets(self.n, i);
        let tgt_sets = subsets(self.n, i - 1);
        let src_mons = self.basis(j - i as i64);
        let tgt_mons = self.basis(j - i as i64 + 1);
        let tgt_index: HashMap<(Vec<usize>, Vec<u16>), usize> = tgt_sets
            .iter()
            .flat_map(|s| tgt_mons.iter().map(move |m| (s.clone(), m.clone())))
            .enumerate()
            .map(|(k, key)| (key, k))
            .collect();
        let ring = self.ideal.ring();
        let mut rows = vec![];
        for s in &src_sets {
            for m in &src_mons {
                let mut row = vec![0u64; tgt_index.len()];
                for (t, &a) in s.iter().enumerate() {
                    let mut e = m.clone();
                    e[a] += 1;
                    let f = Poly::from_terms(ring, vec![Term { coef: 1, mono: Mono::from_exponents(&e) }]);
                    let nf = self.ideal.normal_form(&f).unwrap();
                    let mut rest = s.clone();
                    rest.remove(t);
                    for term in nf.terms() {
                        let k = tgt_index[&(rest.clone(), term.mono.exponents().to_vec())];
                        let c = term.coef as u64;
                        let c = if t % 2 == 0 { c } else { (P - c) % P };
                        row[k] = (row[k] + c) % P;
                    }
                }
                rows.push(row);
            }
        }
        rows
    }

    fn dim(&self, i: usize, j: i64) -> usize {
        if i > self.n {
            return 0;
        }
        subsets(self.n, i).len() * self.basis(j - i as i64).len()
    }

    fn rank(&self, i: usize, j: i64) -> usize {
        if i == 0 || i > self.n || self.dim(i, j) == 0 || self.dim(i - 1, j) == 0 {
            return 0;
        }
        rank_mod_p(self.differential(i, j))
    }

    fn betti(&self, i: usize, j: i64) -> usize {
        self.dim(i, j) - self.rank(i, j) - self.rank(i + 1, j)
    }
}

/// Compares every `β_{i,j}` of the computed table with Koszul homology for
/// `j` up to one past the largest degree in the table.
fn assert_matches_koszul(ideal: &Ideal) {
    let table: BettiTable = quotient_betti_table(ideal).unwrap();
    let q = Quotient::new(ideal);
    let top = table.entries().map(|(_, d, _)| d[0] as i64).max().unwrap_or(0) + 1;
    for i in 0..=q.n {
        for j in 0..=top {
            let want = q.betti(i, j) as u64;
            assert_eq!(table.get(i, &[j as i32]), want, "β_({i},{j}) of {ideal:?}");
        }
    }
}

fn parse(names: &[&str], gens: &[&str]) -> Ideal {
    let r = Ring::standard(names, P).unwrap();
    Ideal::parse(&r, gens).unwrap()
}

#[test]
fn twisted_cubic() {
    assert_matches_koszul(&parse(&["a", "b", "c", "d"], &["b^2 - a*c", "b*c - a*d", "c^2 - b*d"]));
}

#[test]
fn monomial_ideal_with_mixed_degrees() {
    assert_matches_koszul(&parse(&["x", "y", "z"], &["x^2", "x*y^2", "y*z^3", "z^4"]));
}

#[test]
fn four_generated_cubic_ideal() {
    assert_matches_koszul(&parse(&["a", "b", "c", "d"], &["a^2*b", "a^2*c", "a*b*d", "b^2*d"]));
}

#[test]
fn square_of_generic_two_by_three_minors() {
    let x = build_family("generic:2x3", P).unwrap();
    assert_matches_koszul(&minors_ideal(&x, 2).unwrap().power(2).unwrap());
}

#[test]
fn maximal_minors_of_the_three_by_five_matrix() {
    let x = build_family("paper:m3x5", P).unwrap();
    let i = minors_ideal(&x, 3).unwrap();
    assert_matches_koszul(&i);
    assert_matches_koszul(&i.power(2).unwrap());
}

#[test]
fn veronese_surface_and_its_square() {
    let x = build_family("symmetric:3", P).unwrap();
    let i = minors_ideal(&x, 2).unwrap();
    assert_matches_koszul(&i);
    assert_matches_koszul(&i.power(2).unwrap());
}

#[test]
fn scroll_square() {
    let x = build_family("scroll:2,2", P).unwrap();
    assert_matches_koszul(&minors_ideal(&x, 2).unwrap().power(2).unwrap());
}

fn monomial_ideal(n: usize, exps: Vec<Vec<u16>>) -> Ideal {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let r = Ring::standard(&refs, P).unwrap();
    let gens = exps
        .into_iter()
        .filter(|e| e.iter().any(|&a| a > 0))
        .map(|e| Poly::from_terms(&r, vec![Term { coef: 1, mono: Mono::from_exponents(&e) }]))
        .collect();
    Ideal::new(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_monomial_ideals(n in 2usize..=4, exps in prop::collection::vec(prop::collection::vec(0u16..=3, 4), 1..6)) {
        let exps: Vec<Vec<u16>> = exps.into_iter().map(|mut e| { e.truncate(n); e }).collect();
        let i = monomial_ideal(n, exps);
        prop_assume!(!i.is_zero());
        assert_matches_koszul(&i);
        let (a, b) = betti_table_both_routes(&i).unwrap();
        prop_assert_eq!(a.entries().collect::<Vec<_>>(), b.entries().collect::<Vec<_>>());
    }

    #[test]
    fn random_binomial_ideals(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = Ring::standard(&["a", "b", "c", "d"], P).unwrap();
        let quad = monomials(4, 2);
        let gens: Vec<Poly> = (0..rng.gen_range(1..4))
            .map(|_| {
                let m1 = Mono::from_exponents(&quad[rng.gen_range(0..quad.len())]);
                let m2 = Mono::from_exponents(&quad[rng.gen_range(0..quad.len())]);
                Poly::from_terms(&r, vec![Term { coef: 1, mono: m1 }])
                    .sub(&Poly::from_terms(&r, vec![Term { coef: rng.gen_range(1..P as u32), mono: m2 }]))
                    .unwrap()
            })
            .collect();
        let i = Ideal::new(&r, gens).unwrap();
        prop_assume!(!i.is_zero());
        assert_matches_koszul(&i);
    }
}
