use super::*;
use crate::poly::{parse_poly, VarContext};
use std::sync::Arc;

fn xyt() -> Arc<crate::poly::VarContext> {
    VarContext::new(["x", "y", "t"]).unwrap()
}

fn id(g: &[&str]) -> Ideal {
    Ideal::parse(&xyt(), g).unwrap()
}

fn pt(v: &[i64]) -> RationalPoint {
    RationalPoint::from_ints(v)
}

#[test]
fn gap_sheaf_cases() {
    let d = xyt().doubled().unwrap();
    let e = Ideal::parse(&d, &["y^2 - x^3 - t^2*x^2", "y*w2 + t*x^2*w1"]).unwrap();
    let g = gap_sheaf(&e, &Ideal::parse(&d, &["x", "y"]).unwrap()).unwrap();
    let expected = Ideal::parse(&d, &["y^2 - x^3 - t^2*x^2", "y*w2 + t*x^2*w1", "(x+t^2)*w2 + y*t*w1"]).unwrap();
    assert!(g.contains_ideal(&expected).unwrap());
    assert!(g.same_zero_set(&expected).unwrap());

    let i = id(&["x*y"]);
    assert!(gap_sheaf(&i, &Ideal::unit(&xyt())).unwrap().same_ideal(&i).unwrap());
    let c2 = VarContext::new(["x", "y"]).unwrap();
    let r = gap_sheaf(&Ideal::parse(&c2, &["x*y"]).unwrap(), &Ideal::parse(&c2, &["x"]).unwrap()).unwrap();
    assert!(r.same_ideal(&Ideal::parse(&c2, &["y"]).unwrap()).unwrap());
}

#[test]
fn jacobian_cycles_with_candidates() {
    let i = id(&["y", "x^2*(x + t^2)"]);
    let cands = CandidateSet::from_ideals(&[id(&["x", "y"]), id(&["x + t^2", "y"])]).unwrap();
    let c = cycle_of_ideal(&i, &cands).unwrap();
    assert_eq!(c.multiplicity_of(&id(&["x", "y"])).unwrap(), 2);
    assert_eq!(c.multiplicity_of(&id(&["x + t^2", "y"])).unwrap(), 1);
    assert_eq!(c.components().len(), 2);

    let j = id(&["x*(3*x + 2*t^2)", "3*y^2 - x^3 - t^2*x^2"]);
    let cands = CandidateSet::from_ideals(&[id(&["x", "y"]), id(&["3*x + 2*t^2", "3*y^2 - x^3 - t^2*x^2"])]).unwrap();
    let c = cycle_of_ideal(&j, &cands).unwrap();
    assert_eq!(c.multiplicity_of(&id(&["x", "y"])).unwrap(), 2);
    assert_eq!(c.multiplicity_of(&id(&["3*x + 2*t^2", "3*y^2 - x^3 - t^2*x^2"])).unwrap(), 1);

    let p = id(&["x", "y"]);
    let c = cycle_of_ideal(&p, &CandidateSet::from_ideals(std::slice::from_ref(&p)).unwrap()).unwrap();
    assert_eq!(c.to_string(), "1[V(y, x)]");
}

#[test]
fn missing_candidate_is_reported() {
    let i = id(&["y", "x^2*(x + t^2)"]);
    let cands = CandidateSet::from_ideals(&[id(&["x", "y"])]).unwrap();
    assert!(matches!(cycle_of_ideal(&i, &cands), Err(Error::UnresolvedComponent { .. })));
}

#[test]
fn automatic_harvest_matches_candidates() {
    let i = id(&["y", "x^2*(x + t^2)"]);
    let c = cycle_of_ideal_auto(&i, &CandidateSet::new()).unwrap();
    let expected = Cycle::from_components(vec![(id(&["x", "y"]), 2), (id(&["x + t^2", "y"]), 1)]).unwrap();
    assert!(c.equals(&expected).unwrap(), "{c}");
}

#[test]
fn slicing_multiplicities() {
    let i = id(&["y", "x^2*(x + t^2)"]);
    assert_eq!(component_multiplicity(&i, &id(&["x", "y"]), Some(&pt(&[0, 0, 1]))).unwrap(), 2);
    assert_eq!(component_multiplicity(&i, &id(&["x + t^2", "y"]), Some(&pt(&[-1, 0, 1]))).unwrap(), 1);
    assert_eq!(component_multiplicity(&i, &id(&["x - 1", "y"]), None).unwrap(), 0);
}

#[test]
fn intersection_numbers() {
    let o = RationalPoint::origin(3);
    let c = Cycle::from_components(vec![(id(&["3*x + 2*t^2", "3*y^2 - x^3 - t^2*x^2"]), 1)]).unwrap();
    assert_eq!(intersection_number_at(&c, &parse_poly("t", &xyt()).unwrap(), &o).unwrap(), 2);
    let c = Cycle::from_components(vec![(id(&["x + t^2", "y"]), 1)]).unwrap();
    assert_eq!(intersection_number_at(&c, &parse_poly("x", &xyt()).unwrap(), &o).unwrap(), 2);
    let c = Cycle::from_components(vec![(id(&["y"]), 1)]).unwrap();
    let c2 = VarContext::new(["x", "y"]).unwrap();
    let c_plane = Cycle::from_components(vec![(Ideal::parse(&c2, &["y"]).unwrap(), 1)]).unwrap();
    let h = parse_poly("y^2 - x^3", &c2).unwrap();
    assert_eq!(intersection_number_at(&c_plane, &h, &RationalPoint::origin(2)).unwrap(), 3);
    let err = intersection_number_at(&c, &parse_poly("y", &xyt()).unwrap(), &o);
    assert!(matches!(err, Err(Error::NonProper(_))));
}

#[test]
fn ideal_level_intersection_number_agrees() {
    let o = RationalPoint::origin(3);
    let i = id(&["y", "x^2*(x + t^2)"]);
    let t = parse_poly("t", &xyt()).unwrap();
    let direct = ideal_intersection_number(&i, &t, &o).unwrap();
    let cands = CandidateSet::from_ideals(&[id(&["x", "y"]), id(&["x + t^2", "y"])]).unwrap();
    let via_cycle = intersection_number_at(&cycle_of_ideal(&i, &cands).unwrap(), &t, &o).unwrap();
    assert_eq!(direct, via_cycle);
    assert_eq!(direct, 3);
}
