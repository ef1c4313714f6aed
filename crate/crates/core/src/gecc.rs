//! Graded enriched characteristic cycle of the shifted constant sheaf on a
//! stratified space: Morse modules per stratum attached to conormals.
//!
//! Morse modules are computed for open strata (normal slice is a point),
//! one-dimensional strata of surfaces in 3-space (normal slice is a plane
//! curve with an ordinary multiple point) and points of plane curves or
//! surfaces in 3-space (complex link counted by a polar intersection
//! number). Anything else needs an override in the problem file. The
//! Whitney conditions of the given stratification are trusted.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conormal::{conormal_ideal, maximal_minors, ConormalIdeal};
use crate::cycle::{gap_sheaf, ideal_intersection_number, poly_gcd};
use crate::enriched::{FGAbelianGroup, GradedEnrichedCycle};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, RationalPoint};
use crate::problem::{ProblemSpec, StratumSpec};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Random linear form `Σ a_i (z_i - p_i)` with coefficients in `±1..±4`.
pub fn random_linear_form(ctx: &std::sync::Arc<crate::poly::VarContext>, rng: &mut ChaCha8Rng, through: &RationalPoint) -> Polynomial {
    let n = ctx.len();
    let mut acc = Polynomial::zero(ctx);
    for i in 0..n {
        let mut a: i64 = rng.gen_range(-4..=4);
        if a == 0 {
            a = 1;
        }
        let zi = &Polynomial::var(ctx, i) - &Polynomial::constant(ctx, through.coords()[i].clone());
        acc = &acc + &zi.scale(&BigRational::from_integer(a.into()));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorseRule {
    Override,
    /// Not in the closure of a larger stratum: the normal slice is a point.
    OpenStratum,
    /// Transverse slice is an ordinary `lines`-fold point of a plane curve.
    NormalSlice { lines: u32 },
    /// Complex link is a bouquet of `spheres` spheres, counted with the two
    /// listed linear forms.
    ComplexLink { spheres: u64, forms: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseModule {
    pub entries: Vec<(i32, FGAbelianGroup)>,
    pub rule: MorseRule,
}

impl MorseModule {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, g)| g.is_zero())
    }

    pub fn in_degree(&self, k: i32) -> FGAbelianGroup {
        self.entries.iter().filter(|(d, _)| *d == k).fold(FGAbelianGroup::zero(), |acc, (_, g)| acc.direct_sum(g))
    }
}

fn rank_entry(degree: i32, rank: u64) -> Vec<(i32, FGAbelianGroup)> {
    if rank == 0 {
        Vec::new()
    } else {
        vec![(degree, FGAbelianGroup::free(rank))]
    }
}

/// Whether no strictly larger stratum has `st` in its closure.
pub fn is_open_stratum(st: &StratumSpec, spec: &ProblemSpec) -> Result<bool> {
    let mine = st.closure_ideal(&spec.ctx)?;
    for other in &spec.strata {
        if other.dim > st.dim && mine.radical_contains_ideal(&other.closure_ideal(&spec.ctx)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique point of a zero-dimensional stratum.
pub fn stratum_point(st: &StratumSpec, spec: &ProblemSpec) -> Result<RationalPoint> {
    if let Some(p) = &st.test_point {
        return Ok(p.clone());
    }
    let (pts, complete) = st.closure_ideal(&spec.ctx)?.rational_points()?;
    if pts.len() == 1 && complete {
        Ok(pts[0].clone())
    } else {
        Err(Error::MissingTestPoint(st.name.clone()))
    }
}

fn cross(a: &[BigRational], b: &[BigRational]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Multiplicity of the hypersurface along a curve stratum, read off the
/// restriction of the defining polynomial to a random plane through the
/// test point transverse to the stratum. Returns the multiplicity and
/// whether the tangent cone of the slice is reduced (an ordinary multiple
/// point). Two independent planes must agree.
pub fn transverse_multiplicity(st: &StratumSpec, spec: &ProblemSpec, seed: u64) -> Result<(u32, bool)> {
    let f = spec
        .defining_polynomial()
        .ok_or_else(|| Error::UnautomatedStratum(format!("{}: X is not a hypersurface", st.name)))?;
    if spec.ambient_dim() != 3 || st.dim != 1 {
        return Err(Error::UnautomatedStratum(format!("{}: transverse slices need a curve stratum in 3-space", st.name)));
    }
    let q = st.test_point.clone().ok_or_else(|| Error::MissingTestPoint(st.name.clone()))?;
    if st.closure.len() != 2 {
        return Err(Error::Presentation(format!("{}: a curve in 3-space needs two generators", st.name)));
    }
    let grads: Vec<Vec<BigRational>> = st
        .closure
        .iter()
        .map(|h| h.gradient().iter().map(|d| d.eval_at(&q)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let tangent = cross(&grads[0], &grads[1]);
    if tangent.iter().all(Zero::is_zero) {
        return Err(Error::Presentation(format!("{}: closure is singular at the test point", st.name)));
    }
    let ctx = &spec.ctx;
    let ext = ctx.extended(&["s", "r"]);
    let (s, r) = (Polynomial::var(&ext, 3), Polynomial::var(&ext, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a5e);
    let mut results = Vec::new();
    for _ in 0..2 {
        let (u, v) = loop {
            let u: Vec<BigRational> = (0..3).map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
            let v: Vec<BigRational> = (0..3).map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
            if !dot(&cross(&u, &v), &tangent).is_zero() {
                break (u, v);
            }
        };
        let bindings: Vec<(usize, Polynomial)> = (0..3)
            .map(|i| {
                let pos = &(&Polynomial::constant(&ext, q.coords()[i].clone()) + &s.scale(&u[i])) + &r.scale(&v[i]);
                (i, pos)
            })
            .collect();
        let slice = f.lift_to(&ext).substitute(&bindings)?;
        if slice.is_zero() {
            return Err(Error::GenericityFailure(format!("{}: slice plane lies in X", st.name)));
        }
        let m = slice.terms().iter().map(|(mono, _)| mono.degree()).min().expect("nonzero");
        let cone = Polynomial::from_terms(
            &ext,
            slice.terms().iter().filter(|(mono, _)| mono.degree() == m).cloned().collect(),
        );
        let g = poly_gcd(&cone.partial_derivative(3), &cone.partial_derivative(4))?;
        results.push((m, g.is_constant()));
    }
    if results[0] != results[1] {
        return Err(Error::GenericityFailure(format!(
            "{}: transverse slices disagree ({:?} vs {:?})",
            st.name, results[0], results[1]
        )));
    }
    Ok(results[0])
}

/// Number of spheres in the complex link of `X` at a point stratum:
/// `(Γ¹_{F,L} · V(L))_p` for the classical polar curve of the defining
/// polynomial, computed with two random linear forms that must agree.
pub fn complex_link_count(st: &StratumSpec, spec: &ProblemSpec, seed: u64) -> Result<(u64, Vec<Polynomial>)> {
    let f = spec
        .defining_polynomial()
        .ok_or_else(|| Error::UnautomatedStratum(format!("{}: X is not a hypersurface", st.name)))?;
    let n = spec.ambient_dim();
    if !(n == 2 || n == 3) || st.dim != 0 {
        return Err(Error::UnautomatedStratum(format!(
            "{}: complex links are automated only for points of plane curves and surfaces in 3-space",
            st.name
        )));
    }
    let p = stratum_point(st, spec)?;
    let ctx = &spec.ctx;
    let sigma = Ideal::new(ctx, f.gradient())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11c4);
    let mut counts = Vec::new();
    let mut forms = Vec::new();
    for _ in 0..2 {
        let l = random_linear_form(ctx, &mut rng, &p);
        let minors = maximal_minors(&[l.gradient(), f.gradient()]);
        let polar = gap_sheaf(&Ideal::new(ctx, minors)?, &sigma)?;
        counts.push(ideal_intersection_number(&polar, &l, &p)?);
        forms.push(l);
    }
    if counts[0] != counts[1] {
        return Err(Error::GenericityFailure(format!(
            "{}: complex link counts disagree ({} with {}, {} with {})",
            st.name, counts[0], forms[0], counts[1], forms[1]
        )));
    }
    Ok((counts[0], forms))
}

/// Morse module of a stratum for the constant sheaf shifted by `s`.
/// Automated cases place it in degree `dim X - s` (open strata: `d_S - s`).
pub fn morse_module(st: &StratumSpec, spec: &ProblemSpec, seed: u64) -> Result<MorseModule> {
    if let Some(entries) = &st.morse {
        let entries = entries.iter().filter(|(_, g)| !g.is_zero()).cloned().collect();
        return Ok(MorseModule { entries, rule: MorseRule::Override });
    }
    let s = spec.shift;
    if is_open_stratum(st, spec)? {
        return Ok(MorseModule { entries: rank_entry(st.dim as i32 - s, 1), rule: MorseRule::OpenStratum });
    }
    let degree = spec.space_dim() as i32 - s;
    let hyper = spec.is_hypersurface();
    let n = spec.ambient_dim();
    if hyper && n == 3 && st.dim == 1 && spec.space_dim() == 2 {
        let (m, ordinary) = transverse_multiplicity(st, spec, seed)?;
        if !ordinary {
            return Err(Error::UnautomatedStratum(format!(
                "{}: transverse slice is not an ordinary multiple point; supply a Morse override",
                st.name
            )));
        }
        return Ok(MorseModule {
            entries: rank_entry(degree, u64::from(m.saturating_sub(1))),
            rule: MorseRule::NormalSlice { lines: m },
        });
    }
    if hyper && st.dim == 0 && (n == 2 || n == 3) && spec.space_dim() == n - 1 {
        let (c, forms) = complex_link_count(st, spec, seed)?;
        return Ok(MorseModule {
            entries: rank_entry(degree, c),
            rule: MorseRule::ComplexLink { spheres: c, forms: forms.iter().map(ToString::to_string).collect() },
        });
    }
    Err(Error::UnautomatedStratum(format!("{}: no automated rule applies; supply a Morse override", st.name)))
}

pub fn morse_modules(spec: &ProblemSpec, seed: u64) -> Result<Vec<MorseModule>> {
    spec.strata.iter().map(|st| morse_module(st, spec, seed)).collect()
}

#[derive(Clone, Debug)]
pub struct StratumEntry {
    pub name: String,
    pub dim: usize,
    pub morse: MorseModule,
    /// Present for visible strata only.
    pub conormal: Option<ConormalIdeal>,
}

#[derive(Clone, Debug)]
pub struct Gecc {
    pub cycle: GradedEnrichedCycle,
    pub strata: Vec<StratumEntry>,
}

/// `gecc^k = Σ_S H^{k-d_S}(N_S, L_S)[T̄*_S]`; strata with zero Morse
/// modules are left out.
pub fn build_gecc(spec: &ProblemSpec, seed: u64) -> Result<Gecc> {
    let modules = morse_modules(spec, seed)?;
    let mut cycle = GradedEnrichedCycle::zero();
    let mut strata = Vec::new();
    for (st, morse) in spec.strata.iter().zip(modules) {
        let conormal = if morse.is_zero() {
            None
        } else {
            let c = conormal_ideal(&spec.ctx, &st.closure, &spec.removed_closures(st)?, &st.name)?;
            for (k, g) in &morse.entries {
                cycle.add(*k, &c.ideal, g)?;
            }
            Some(c)
        };
        strata.push(StratumEntry { name: st.name.clone(), dim: st.dim, morse, conormal });
    }
    Ok(Gecc { cycle, strata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn transverse_slices_count_lines() {
        let spec = bundled::load("example2_6").unwrap();
        let s3 = spec.stratum("S3").unwrap();
        let s4 = spec.stratum("S4").unwrap();
        assert_eq!(transverse_multiplicity(s3, &spec, DEFAULT_SEED).unwrap(), (3, true));
        assert_eq!(transverse_multiplicity(s4, &spec, DEFAULT_SEED).unwrap(), (2, true));
        assert_eq!(transverse_multiplicity(s4, &spec, 99).unwrap(), (2, true));
    }

    #[test]
    fn origin_complex_link_has_two_spheres() {
        let spec = bundled::load("example2_6").unwrap();
        let (c, forms) = complex_link_count(spec.stratum("O").unwrap(), &spec, DEFAULT_SEED).unwrap();
        assert_eq!(c, 2);
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn example_gecc_is_concentrated_in_degree_zero() {
        let spec = bundled::load("example2_6").unwrap();
        let g = build_gecc(&spec, DEFAULT_SEED).unwrap();
        assert_eq!(g.cycle.degrees().map(|(k, _)| k).collect::<Vec<_>>(), vec![0]);
        let ranks: Vec<u64> = g.strata.iter().map(|s| s.morse.in_degree(0).rank).collect();
        assert_eq!(ranks, vec![1, 1, 2, 1, 2]);
        let d0 = g.cycle.degree(0);
        assert_eq!(d0.components().len(), 5);
        let c3 = &g.strata[2].conormal.as_ref().unwrap().ideal;
        assert_eq!(d0.coefficient_of(c3).unwrap(), FGAbelianGroup::free(2));
    }

    #[test]
    fn unautomated_stratum_without_override() {
        let mut spec = bundled::load("two_planes").unwrap();
        spec.strata[2].morse = None;
        let err = morse_module(&spec.strata[2], &spec, DEFAULT_SEED).unwrap_err();
        assert!(matches!(err, Error::UnautomatedStratum(_)));
    }

    #[test]
    fn two_planes_override_lands_in_degree_minus_one() {
        let spec = bundled::load("two_planes").unwrap();
        let g = build_gecc(&spec, DEFAULT_SEED).unwrap();
        assert_eq!(g.cycle.degrees().map(|(k, _)| k).collect::<Vec<_>>(), vec![-1, 0]);
        assert_eq!(g.cycle.degree(0).components().len(), 2);
        assert_eq!(g.cycle.degree(-1).components().len(), 1);
        assert!(g.strata.iter().all(|s| s.morse.rule != MorseRule::Override || s.name == "O"));
    }

    #[test]
    fn smooth_ambient_is_one_open_stratum() {
        let spec = bundled::load("cusp").unwrap();
        let g = build_gecc(&spec, DEFAULT_SEED).unwrap();
        assert_eq!(g.cycle.degrees().map(|(k, _)| k).collect::<Vec<_>>(), vec![0]);
        assert_eq!(g.strata[0].morse.rule, MorseRule::OpenStratum);
    }
}
