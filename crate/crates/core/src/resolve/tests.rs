use super::*;
use crate::ring::Ring;

fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
    let r = Ring::standard(names, 32003).unwrap();
    Ideal::parse(&r, gens).unwrap()
}

fn table(entries: &[(usize, i32, u64)]) -> BettiTable {
    let mut t = BettiTable::new("", 1);
    for &(i, d, m) in entries {
        t.add(i, &[d], m);
    }
    t
}

#[test]
fn square_of_maximal_ideal() {
    let i = ideal(&["x", "y"], &["x^2", "x*y", "y^2"]);
    assert_eq!(betti_table(&i).unwrap(), table(&[(0, 2, 3), (1, 3, 2)]));
    assert_eq!(regularity(&i).unwrap(), 2);
    assert!(is_linear_resolution(&i).unwrap());
}

#[test]
fn koszul_complex() {
    let i = ideal(&["x", "y", "z"], &["x", "y", "z"]);
    let res = free_resolution(&i, None).unwrap();
    assert_eq!(res.ranks(), vec![3, 3, 1]);
    assert!(res.is_complex().unwrap());
    assert!(res.is_minimal());
    assert_eq!(projdim(&i).unwrap(), 2);
    let xy = ideal(&["x", "y"], &["x", "y"]);
    assert_eq!(free_resolution(&xy, None).unwrap().ranks(), vec![2, 1]);
}

#[test]
fn twisted_cubic_both_routes() {
    let i = ideal(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
    let (tor, pruned) = betti_table_both_routes(&i).unwrap();
    assert_eq!(tor, pruned);
    assert_eq!(tor.shifted(-1), table(&[(0, 2, 3), (1, 3, 2)]));
    let res = free_resolution(&i, None).unwrap();
    assert!(res.is_complex().unwrap() && res.is_minimal());
    assert_eq!(res.betti(), betti_table(&i).unwrap());
}

#[test]
fn nonlinear_and_mixed_degrees() {
    let i = ideal(&["x", "y", "z", "w"], &["x^2", "x*y", "y^2 + z*w", "z^3", "x*w^2"]);
    let (tor, pruned) = betti_table_both_routes(&i).unwrap();
    assert_eq!(tor, pruned);
    let l = linearity(&i).unwrap();
    assert!(!l.linear);
    assert_eq!(l.reason.as_deref(), Some("not equigenerated"));
    let h = i.hilbert_numerator().unwrap();
    assert_eq!(tor.euler_numerator(), h);
    let res = free_resolution(&i, None).unwrap();
    assert!(res.is_complex().unwrap() && res.is_minimal());
}

#[test]
fn koszul_syzygy() {
    let r = Ring::standard(&["x", "y"], 32003).unwrap();
    let g = [Poly::var(&r, 0), Poly::var(&r, 1)];
    let s = syzygies(&g).unwrap();
    assert_eq!(s.ncols(), 1);
    let d1 = ModuleMap::row(&r, &g).unwrap();
    assert!(d1.compose(&s).unwrap().is_zero());
    let lead = s.entry(0, 0).monic();
    assert_eq!(lead, Poly::var(&r, 1));
}

#[test]
fn hilbert_burch_syzygies() {
    let r = Ring::standard(&["x0", "x1", "x2", "x3"], 32003).unwrap();
    let i = Ideal::parse(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]).unwrap();
    let s = syzygies(i.generators()).unwrap();
    assert_eq!(s.ncols(), 2);
    assert!(s.source().shifts().iter().all(|d| d[0] == 3));
    assert!(ModuleMap::row(&r, i.generators()).unwrap().compose(&s).unwrap().is_zero());
}

#[test]
fn nonzerodivisor_has_no_syzygies() {
    let r = Ring::standard(&["x", "y"], 32003).unwrap();
    let f = Poly::parse("x^2 + y^2", &r).unwrap();
    assert_eq!(syzygies(&[f]).unwrap().ncols(), 0);
}

#[test]
fn nonminimal_generators_rejected() {
    let r = Ring::standard(&["x", "y"], 32003).unwrap();
    let g = [Poly::parse("x", &r).unwrap(), Poly::parse("x*y", &r).unwrap()];
    assert!(syzygies(&g).is_err());
}

#[test]
fn cokernel_of_a_matrix() {
    let r = Ring::standard(&["x", "y", "z"], 32003).unwrap();
    let m = FreeModule::free(&r, 2);
    let deg1 = |k: usize| FreeModule::new(&r, vec![[1].into_iter().collect(); k]).unwrap();
    let p = |s: &str| Poly::parse(s, &r).unwrap();
    let map = ModuleMap::new(
        deg1(3),
        m,
        vec![vec![p("x"), p("y")], vec![p("y"), p("z")], vec![p("z"), p("x")]],
    )
    .unwrap();
    let res = resolve_cokernel(&map, None, &Limits::default()).unwrap();
    assert!(res.is_complex().unwrap() && res.is_minimal());
    assert_eq!(res.ranks()[0], 2);
    let k = module_syzygies(&map, &Limits::default()).unwrap();
    assert!(map.compose(&k).unwrap().is_zero());
    assert_eq!(k.ncols(), res.ranks()[2]);
}

#[test]
fn length_bound_truncates() {
    let i = ideal(&["x", "y", "z"], &["x", "y", "z"]);
    let res = free_resolution(&i, Some(1)).unwrap();
    assert_eq!(res.ranks(), vec![3, 3]);
    assert!(!res.is_complete());
}
