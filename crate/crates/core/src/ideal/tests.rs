use super::*;
use crate::poly::{parse_poly, VarContext};

fn xyt() -> Arc<VarContext> {
    VarContext::new(["x", "y", "t"]).unwrap()
}

fn id(ctx: &Arc<VarContext>, g: &[&str]) -> Ideal {
    Ideal::parse(ctx, g).unwrap()
}

fn p(ctx: &Arc<VarContext>, s: &str) -> Polynomial {
    parse_poly(s, ctx).unwrap()
}

#[test]
fn groebner_small_cases() {
    let c = VarContext::new(["x", "y"]).unwrap();
    let gb = id(&c, &["x^2", "x"]).groebner_basis(MonomialOrder::Grevlex).unwrap();
    assert_eq!(*gb, vec![p(&c, "x")]);
    let gb = id(&c, &["1"]).groebner_basis(MonomialOrder::Grevlex).unwrap();
    assert_eq!(*gb, vec![p(&c, "1")]);
}

#[test]
fn twisted_cubic_lex() {
    let c = VarContext::new(["z", "y", "x"]).unwrap();
    let gb = id(&c, &["y - x^2", "z - x^3"]).groebner_basis(MonomialOrder::Lex).unwrap();
    assert_eq!(*gb, vec![p(&c, "y - x^2"), p(&c, "z - x^3")]);
}

#[test]
fn groebner_finds_hidden_relations() {
    // Cyclic-3: the reduced grevlex basis has a univariate element in the
    // smallest variable.
    let c = VarContext::new(["a", "b", "d"]).unwrap();
    let i = id(&c, &["a + b + d", "a*b + b*d + d*a", "a*b*d - 1"]);
    let gb = i.groebner_basis(MonomialOrder::Lex).unwrap();
    assert!(gb.contains(&p(&c, "d^3 - 1")));
    for g in i.gens() {
        assert!(i.contains(g).unwrap());
    }
    assert_eq!(i.vspace_dim().unwrap(), VectorDim::Finite(6));
}

#[test]
fn budget_is_enforced() {
    let c = VarContext::new(["a", "b", "d", "e"]).unwrap();
    let i = id(&c, &["a + b + d + e", "a*b + b*d + d*e + e*a", "a*b*d + b*d*e + d*e*a + e*a*b", "a*b*d*e - 1"]);
    let old = budget();
    set_budget(2);
    let r = i.groebner_basis(MonomialOrder::Grevlex);
    set_budget(old);
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}

#[test]
fn membership_modes() {
    let c = xyt();
    assert!(id(&c, &["x", "y"]).contains(&p(&c, "x")).unwrap());
    let sq = id(&c, &["x^2"]);
    assert!(sq.membership(&p(&c, "x"), Membership::Radical).unwrap());
    assert!(!sq.membership(&p(&c, "x"), Membership::Exact).unwrap());
    assert!(!id(&c, &["x + t^2", "y"]).radical_contains(&p(&c, "x")).unwrap());
}

#[test]
fn quotients() {
    let c = xyt();
    assert!(id(&c, &["x^2"]).quotient(&id(&c, &["x"])).unwrap().same_ideal(&id(&c, &["x"])).unwrap());
    assert!(id(&c, &["x*y"]).quotient(&id(&c, &["x"])).unwrap().same_ideal(&id(&c, &["y"])).unwrap());
    let q = id(&c, &["y", "x^2*(x+t^2)"]).quotient(&id(&c, &["x", "y"])).unwrap();
    assert!(q.contains(&p(&c, "x*(x+t^2)")).unwrap());
}

#[test]
fn saturation_examples() {
    let c = xyt();
    let i = id(&c, &["y", "x^2*(x+t^2)"]);
    let (s, k) = i.saturate(&id(&c, &["x", "y"])).unwrap();
    assert!(s.same_ideal(&id(&c, &["y", "x + t^2"])).unwrap());
    assert_eq!(k, 2);
    let (s, k) = i.saturate(&Ideal::unit(&c)).unwrap();
    assert!(s.same_ideal(&i).unwrap());
    assert_eq!(k, 0);

    let d = VarContext::new(["x", "y", "t", "w0", "w1", "w2"]).unwrap();
    let e = id(&d, &["y^2 - x^3 - t^2*x^2", "y*w2 + t*x^2*w1"]);
    let (s, _) = e.saturate(&id(&d, &["x", "y"])).unwrap();
    assert!(s.contains(&p(&d, "(x+t^2)*w2 + y*t*w1")).unwrap());
}

#[test]
fn elimination_examples() {
    let c = VarContext::new(["w", "x", "t"]).unwrap();
    let e = id(&c, &["w - x^2", "x - t"]).eliminate_named(&["w", "t"]).unwrap();
    assert!(e.same_ideal(&id(&c, &["w - t^2"])).unwrap());
    let i = id(&c, &["w - x^2"]);
    assert!(i.eliminate(&[0, 1, 2]).unwrap().same_ideal(&i).unwrap());

    let d = xyt().doubled().unwrap();
    let z = id(&d, &["w0", "w1", "w2 - 1"]).restrict_to(&xyt()).unwrap();
    assert!(z.is_zero_ideal());
}

#[test]
fn dimensions() {
    let c = xyt();
    assert_eq!(id(&c, &["x + t^2", "y"]).krull_dim().unwrap(), KrullDim::Dim(1));
    assert_eq!(id(&c, &["1"]).krull_dim().unwrap(), KrullDim::Empty);
    assert_eq!(id(&c, &["x", "y", "t"]).krull_dim().unwrap(), KrullDim::Dim(0));
    assert_eq!(id(&c, &["x", "y", "t^2"]).vspace_dim().unwrap(), VectorDim::Finite(2));
    let c2 = VarContext::new(["x", "y"]).unwrap();
    assert_eq!(id(&c2, &["x^2", "y^2"]).vspace_dim().unwrap(), VectorDim::Finite(4));
    assert_eq!(id(&c2, &["x"]).vspace_dim().unwrap(), VectorDim::Infinite);
}

#[test]
fn local_multiplicities() {
    let c = xyt();
    let o = RationalPoint::origin(3);
    let i = id(&c, &["3*x + 2*t^2", "3*y^2 - x^3 - t^2*x^2", "t"]);
    assert_eq!(i.local_multiplicity(&o).unwrap(), 2);
    assert_eq!(id(&c, &["x", "y", "t"]).local_multiplicity(&o).unwrap(), 1);
    assert_eq!(id(&c, &["x + t^2", "y", "x"]).local_multiplicity(&o).unwrap(), 2);
    assert_eq!(id(&c, &["x - 1", "y", "t"]).local_multiplicity(&o).unwrap(), 0);
    assert_eq!(id(&c, &["x", "y"]).local_multiplicity(&o), Err(Error::NotZeroDimensional));
}

#[test]
fn local_multiplicity_splits_over_points() {
    let c = VarContext::new(["x", "y"]).unwrap();
    let i = id(&c, &["x^2*(x - 1)", "y*(y + 2)"]);
    let (pts, complete) = i.rational_points().unwrap();
    assert!(complete);
    assert_eq!(pts.len(), 4);
    let total: u64 = pts.iter().map(|q| i.local_multiplicity(q).unwrap()).sum();
    assert_eq!(VectorDim::Finite(total), i.vspace_dim().unwrap());
}

#[test]
fn irrational_points_are_flagged() {
    let c = VarContext::new(["x", "y"]).unwrap();
    let (pts, complete) = id(&c, &["x^2 - 2", "y - 1"]).rational_points().unwrap();
    assert!(pts.is_empty());
    assert!(!complete);
    let (pts, complete) = id(&c, &["(x^2 - 2)*(x - 3)", "y"]).rational_points().unwrap();
    assert_eq!(pts, vec![RationalPoint::from_ints(&[3, 0])]);
    assert!(!complete);
}

#[test]
fn rational_root_test() {
    let r = rational_roots(&[(-2).into(), 1.into(), 3.into()]).unwrap();
    assert_eq!(r, vec![BigRational::from_integer((-1).into()), BigRational::new(2.into(), 3.into())]);
}

#[test]
fn intersection_of_ideals() {
    let c = xyt();
    let i = id(&c, &["x"]).intersect(&id(&c, &["y"])).unwrap();
    assert!(i.same_ideal(&id(&c, &["x*y"])).unwrap());
}

#[test]
fn local_dimension_routes_agree() {
    let c = xyt();
    let o = RationalPoint::origin(3);
    let cases: [(&[&str], KrullDim); 5] = [
        (&["x*(t - 1)", "y*(t - 1)"], KrullDim::Dim(1)),
        (&["x*(t - 1)", "y*(t - 1)", "t*(x - 1)"], KrullDim::Dim(0)),
        (&["x - 1"], KrullDim::Empty),
        (&["y^2 - x^3"], KrullDim::Dim(2)),
        (&["x*y", "x*t", "x^2"], KrullDim::Dim(2)),
    ];
    for (gens, expected) in cases {
        let i = id(&c, gens);
        let d = i.local_dim(&o).unwrap();
        assert_eq!(d, expected, "{gens:?}");
        assert_eq!(i.at_most_isolated_at(&o).unwrap(), d <= KrullDim::Dim(0), "{gens:?}");
    }
    let far = id(&c, &["x", "y"]).intersect(&id(&c, &["t - 1"])).unwrap();
    assert_eq!(far.local_dim(&RationalPoint::from_ints(&[0, 0, 1])).unwrap(), KrullDim::Dim(2));
}
