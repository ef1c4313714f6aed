//! Relative conormal cycles, relative polar curves and the local numbers
//! read off them at the origin.
//!
//! Germs at the origin are handled by localization (saturating away the
//! origin and checking which generators survive), never by balls.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conormal::{
    conormal_ideal, critical_locus, im_d, intersect_im_d, jacobian_singular_locus, maximal_minors,
    relative_conormal_ideal, union_ideal, ConormalIdeal,
};
use crate::cycle::{cycle_of_ideal_auto, gap_sheaf, ideal_intersection_number, same_component};
use crate::enriched::{
    ge_intersect, ge_pushforward, projection_image, AlgebraicOracle, CachedOracle, FGAbelianGroup,
    GradedEnrichedCycle,
};
use crate::error::{Error, Result};
use crate::gecc::{morse_modules, random_linear_form, MorseModule};
use crate::ideal::{Ideal, KrullDim, VectorDim};
use crate::poly::{Polynomial, RationalPoint};
use crate::problem::ProblemSpec;

/// Per-degree groups; degrees with zero groups are left out.
pub type GroupTable = BTreeMap<i32, FGAbelianGroup>;

fn table_add(t: &mut GroupTable, k: i32, g: &FGAbelianGroup) {
    if g.is_zero() {
        return;
    }
    let e = t.entry(k).or_default();
    *e = e.direct_sum(g);
}

fn table_rank(t: &GroupTable) -> u64 {
    t.values().map(|g| g.rank).sum()
}

fn is_at_most_point(d: KrullDim) -> bool {
    d <= KrullDim::Dim(0)
}

#[derive(Clone, Debug)]
pub struct RelativeStratum {
    pub name: String,
    pub morse: MorseModule,
    pub conormal: Option<ConormalIdeal>,
    /// Why the stratum contributes nothing, if it does not.
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RelativeConormal {
    pub cycle: GradedEnrichedCycle,
    pub strata: Vec<RelativeStratum>,
}

/// `(T*_{f,F}U)^k = Σ_{S : f|S nonconstant} H^{k-d_S}(N_S, L_S)[T̄*_{f|S}U]`.
pub fn relative_conormal_cycle(spec: &ProblemSpec, seed: u64) -> Result<RelativeConormal> {
    relative_conormal_cycle_of(spec, &spec.f, seed)
}

fn relative_conormal_cycle_of(spec: &ProblemSpec, f: &Polynomial, seed: u64) -> Result<RelativeConormal> {
    let modules = morse_modules(spec, seed)?;
    let mut cycle = GradedEnrichedCycle::zero();
    let mut strata = Vec::new();
    for (st, morse) in spec.strata.iter().zip(modules) {
        let mut entry = RelativeStratum { name: st.name.clone(), morse: morse.clone(), conormal: None, note: None };
        if morse.is_zero() {
            entry.note = Some("invisible".into());
            strata.push(entry);
            continue;
        }
        match relative_conormal_ideal(&spec.ctx, &st.closure, &spec.removed_closures(st)?, f, &st.name) {
            Ok(c) => {
                for (k, g) in &morse.entries {
                    cycle.add(*k, &c.ideal, g)?;
                }
                entry.conormal = Some(c);
            }
            Err(Error::ConstantOnClosure(msg)) => entry.note = Some(format!("not used: {msg}")),
            Err(e) => return Err(e),
        }
        strata.push(entry);
    }
    Ok(RelativeConormal { cycle, strata })
}

#[derive(Clone, Debug)]
pub struct PolarPiece {
    pub stratum: String,
    /// `π(T̄*_{f|S} ∩ im dg̃)`, by substitution.
    pub ideal: Ideal,
    pub dim: KrullDim,
}

impl PolarPiece {
    pub fn annihilated(&self) -> bool {
        self.dim == KrullDim::Empty
    }
}

#[derive(Clone, Debug)]
pub struct PolarCurve {
    pub relative: RelativeConormal,
    /// Ambient components with graded coefficients.
    pub cycle: GradedEnrichedCycle,
    pub pieces: Vec<PolarPiece>,
    /// First piece that is not a curve, as `(stratum, dim)`.
    pub failure: Option<(String, usize)>,
}

impl PolarCurve {
    /// Nonempty pieces; their union is the polar set.
    pub fn set(&self) -> Vec<Ideal> {
        self.pieces.iter().filter(|p| !p.annihilated()).map(|p| p.ideal.clone()).collect()
    }

    pub fn require_curve(&self) -> Result<()> {
        match &self.failure {
            Some((s, d)) => Err(Error::PolarNotCurve { dim: *d, source_name: s.clone() }),
            None => Ok(()),
        }
    }

    pub fn contains_point(&self, p: &RationalPoint) -> Result<bool> {
        for i in self.set() {
            if i.vanishes_at(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `Γ¹_{f,g̃} = π_*(T*_{f,F} ⊙ im dg̃)`, computed per stratum by
/// substituting `w = ∇g̃` into the relative conormal. The set is returned
/// even when some piece is not a curve; the cycle then omits that piece.
pub fn polar_curve(spec: &ProblemSpec, seed: u64) -> Result<PolarCurve> {
    let relative = relative_conormal_cycle(spec, seed)?;
    polar_from_relative(spec, relative, &spec.g)
}

fn polar_from_relative(spec: &ProblemSpec, relative: RelativeConormal, g: &Polynomial) -> Result<PolarCurve> {
    let cands = spec.candidate_set()?;
    let mut cycle = GradedEnrichedCycle::zero();
    let mut pieces = Vec::new();
    let mut failure = None;
    for st in &relative.strata {
        let Some(c) = &st.conormal else { continue };
        let ideal = intersect_im_d(&c.ideal, g)?;
        let dim = ideal.krull_dim()?;
        pieces.push(PolarPiece { stratum: st.name.clone(), ideal: ideal.clone(), dim });
        match dim {
            KrullDim::Empty => {}
            KrullDim::Dim(1) => {
                let z = cycle_of_ideal_auto(&ideal, &cands)?;
                for (k, a) in &st.morse.entries {
                    for (p, m) in z.components() {
                        cycle.add(*k, p, &a.power(*m))?;
                    }
                }
            }
            KrullDim::Dim(d) => {
                if failure.is_none() {
                    failure = Some((st.name.clone(), d));
                }
            }
        }
    }
    Ok(PolarCurve { relative, cycle, pieces, failure })
}

/// The same curve by the definition: intersect with `im dg̃` in the doubled
/// space through the intersection oracle, then push forward.
pub fn polar_curve_by_intersection(relative: &RelativeConormal, g: &Polynomial) -> Result<GradedEnrichedCycle> {
    let graph = GradedEnrichedCycle::single(0, &im_d(g)?, FGAbelianGroup::free(1))?;
    let oracle = CachedOracle::new(AlgebraicOracle);
    let up = ge_intersect(&relative.cycle, &graph, &oracle)?;
    ge_pushforward(&up, &projection_image)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    /// `dim_0 supp φ_g ψ_f F ≤ 0`, from `|T*_{f,F}| ∩ V(f) ∩ im dg̃ ∩ V(g)`
    /// eliminated from the doubled space.
    pub support: bool,
    /// `dim_0 V(f) ∩ |Γ| ≤ 0`.
    pub f_cut: bool,
    /// `dim_0 V(f,g) ∩ |Γ| ≤ 0`.
    pub fg_cut: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.support && self.f_cut && self.fg_cut
    }

    pub fn agree(&self) -> bool {
        self.support == self.f_cut && self.f_cut == self.fg_cut
    }
}

#[derive(Clone, Debug)]
pub struct Main1Report {
    pub polar: PolarCurve,
    pub verdicts: Verdicts,
    /// `V(f) ∩ |Γ| ⊆ V(g)` near the origin, per nonempty piece.
    pub phipsi: bool,
    /// `H^k(φ_g[-1]ψ_f[-1]F)_0`, present when the verdicts hold.
    pub table: Option<GroupTable>,
    pub diagnostics: Vec<String>,
}

/// Local dimension at `p` by two routes that must agree: localization by
/// saturation, and the tangent cone.
fn local_dim_checked(i: &Ideal, p: &RationalPoint, what: &str) -> Result<KrullDim> {
    let isolated = i.at_most_isolated_at(p)?;
    let d = i.local_dim(p)?;
    if isolated != is_at_most_point(d) {
        return Err(Error::Inconsistent(format!(
            "local dimension of {what} at {p}: saturation says isolated = {isolated}, tangent cone says {d}"
        )));
    }
    Ok(d)
}

fn max_dim(ds: impl IntoIterator<Item = KrullDim>) -> KrullDim {
    ds.into_iter().max().unwrap_or(KrullDim::Empty)
}

fn support_verdict(relative: &RelativeConormal, f: &Polynomial, g: &Polynomial, o: &RationalPoint) -> Result<KrullDim> {
    let mut dims = Vec::new();
    for st in &relative.strata {
        let Some(c) = &st.conormal else { continue };
        let d = c.ideal.ctx();
        let mut gens = c.ideal.gens().to_vec();
        gens.push(f.lift_to(d));
        gens.push(g.lift_to(d));
        gens.extend(im_d(g)?.gens().iter().cloned());
        let down = Ideal::new(d, gens)?.restrict_to(&d.ambient_context())?;
        dims.push(local_dim_checked(&down, o, &format!("support piece from {}", st.name))?);
    }
    Ok(max_dim(dims))
}

/// Verdicts of the three equivalent conditions at the origin, the
/// containment `V(f) ∩ |Γ| ⊆ V(g)`, and the stalk table
/// `H^k ≅ (Γ^k ⊙ V(f))_0` when the conditions hold.
pub fn main1_table(spec: &ProblemSpec, seed: u64) -> Result<Main1Report> {
    let polar = polar_curve(spec, seed)?;
    main1_from_polar(spec, polar)
}

fn main1_from_polar(spec: &ProblemSpec, polar: PolarCurve) -> Result<Main1Report> {
    let o = RationalPoint::origin(spec.ambient_dim());
    let (f, g) = (&spec.f, &spec.g);
    let mut diagnostics = Vec::new();

    let support = support_verdict(&polar.relative, f, g, &o)?;
    let mut f_dims = Vec::new();
    let mut fg_dims = Vec::new();
    let mut phipsi = true;
    for piece in polar.pieces.iter().filter(|p| !p.annihilated()) {
        let cut_f = piece.ideal.with(std::slice::from_ref(f))?;
        let cut_fg = cut_f.with(std::slice::from_ref(g))?;
        f_dims.push(local_dim_checked(&cut_f, &o, &format!("V(f) ∩ polar piece from {}", piece.stratum))?);
        fg_dims.push(local_dim_checked(&cut_fg, &o, &format!("V(f,g) ∩ polar piece from {}", piece.stratum))?);
        let (off_g, _) = cut_f.saturate_by(g)?;
        if off_g.vanishes_at(&o)? {
            phipsi = false;
            diagnostics.push(format!("V(f) ∩ piece from {} leaves V(g) at the origin", piece.stratum));
        }
    }
    let verdicts = Verdicts {
        support: is_at_most_point(support),
        f_cut: is_at_most_point(max_dim(f_dims.iter().copied())),
        fg_cut: is_at_most_point(max_dim(fg_dims.iter().copied())),
    };
    diagnostics.push(format!(
        "local dimensions at the origin: support {}, V(f) cut {}, V(f,g) cut {}",
        support,
        max_dim(f_dims),
        max_dim(fg_dims)
    ));
    if !verdicts.agree() {
        return Err(Error::Inconsistent(format!("equivalent conditions disagree: {verdicts:?}")));
    }

    let table = if verdicts.all() {
        polar.require_curve()?;
        let mut table = GroupTable::new();
        for (k, ek) in polar.cycle.degrees() {
            for (p, a) in ek.components() {
                let j = p.with(std::slice::from_ref(f))?.local_multiplicity(&o)?;
                table_add(&mut table, k, &a.power(j));
            }
        }
        let by_pieces = piece_rank_total(&polar, f, &o)?;
        if by_pieces != table_rank(&table) {
            return Err(Error::Inconsistent(format!(
                "stalk rank {} from components, {} from unsplit pieces",
                table_rank(&table),
                by_pieces
            )));
        }
        diagnostics.push(format!("stalk rank {by_pieces} confirmed on unsplit polar pieces"));
        Some(table)
    } else {
        None
    };
    Ok(Main1Report { polar, verdicts, phipsi, table, diagnostics })
}

/// `Σ_S rk(M_S) · (J_S · V(f))_0` with `J_S` the substituted ideal of the
/// stratum, without decomposing it.
fn piece_rank_total(polar: &PolarCurve, f: &Polynomial, o: &RationalPoint) -> Result<u64> {
    let mut total = 0;
    for piece in polar.pieces.iter().filter(|p| p.dim == KrullDim::Dim(1)) {
        let st = polar.relative.strata.iter().find(|s| s.name == piece.stratum).expect("piece has a stratum");
        let rk: u64 = st.morse.entries.iter().map(|(_, g)| g.rank).sum();
        total += rk * ideal_intersection_number(&piece.ideal, f, o)?;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct Main2Report {
    pub main1: Main1Report,
    /// Components of `Γ̂` (not inside `V(g)`) per degree.
    pub hat: GradedEnrichedCycle,
    /// Components inside `V(g)`, reported separately.
    pub inside_g: GradedEnrichedCycle,
    /// `((Γ̂)^k ⊙ V(f))_0`: the pair `(F_f, F_{f|V(g)})`.
    pub f_pair: GroupTable,
    /// `((Γ̂)^k ⊙ V(g))_0`: the pair `(F_g, F_{g|V(f)})`.
    pub g_pair: GroupTable,
}

pub fn main2_pairs(spec: &ProblemSpec, seed: u64) -> Result<Main2Report> {
    let main1 = main1_table(spec, seed)?;
    if !main1.verdicts.f_cut {
        return Err(Error::VerdictFailure("dim_0 V(f) ∩ |Γ| > 0".into()));
    }
    let o = RationalPoint::origin(spec.ambient_dim());
    let mut hat = GradedEnrichedCycle::zero();
    let mut inside_g = GradedEnrichedCycle::zero();
    let mut f_pair = GroupTable::new();
    let mut g_pair = GroupTable::new();
    for (k, ek) in main1.polar.cycle.degrees() {
        for (p, a) in ek.components() {
            if p.radical_contains(&spec.g)? {
                inside_g.add(k, p, a)?;
                continue;
            }
            hat.add(k, p, a)?;
            table_add(&mut f_pair, k, &a.power(p.with(std::slice::from_ref(&spec.f))?.local_multiplicity(&o)?));
            table_add(&mut g_pair, k, &a.power(p.with(std::slice::from_ref(&spec.g))?.local_multiplicity(&o)?));
        }
    }
    Ok(Main2Report { main1, hat, inside_g, f_pair, g_pair })
}

#[derive(Clone, Debug)]
pub struct EmptinessTrial {
    pub form: Polynomial,
    pub origin_in_polar: bool,
    pub verdicts: Verdicts,
    /// Whether `H*(φ_l[-1]ψ_f[-1]F)_0 = 0`; unknown when the verdicts fail.
    pub stalk_zero: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct EmptinessReport {
    pub trials: Vec<EmptinessTrial>,
    /// Some sampled form has the origin off its polar set.
    pub some_form_misses: bool,
    /// Every sampled form has the origin off its polar set.
    pub generic_misses: bool,
    /// Every sampled stalk vanishes.
    pub generic_stalk_zero: bool,
    pub flags: Vec<String>,
}

impl EmptinessReport {
    pub fn consistent(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Samples linear forms `l` and compares, per form, `0 ∉ |Γ_{f,l}|` with
/// the vanishing of the stalk table; disagreements between forms or
/// between the two sides are flagged.
pub fn emptiness_report(spec: &ProblemSpec, trials: usize, seed: u64) -> Result<EmptinessReport> {
    let o = RationalPoint::origin(spec.ambient_dim());
    let relative = relative_conormal_cycle(spec, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe3b7);
    let mut out = Vec::new();
    let mut flags = Vec::new();
    for _ in 0..trials.max(1) {
        let l = random_linear_form(&spec.ctx, &mut rng, &o);
        let trial_spec = spec.with_g(l.clone());
        let polar = polar_from_relative(&trial_spec, relative.clone(), &l)?;
        let origin_in_polar = polar.contains_point(&o)?;
        let m1 = main1_from_polar(&trial_spec, polar)?;
        let stalk_zero = m1.table.as_ref().map(|t| t.is_empty());
        if !m1.verdicts.all() {
            flags.push(format!("GENERICITY_FAILURE: {l} fails the dimension conditions"));
        }
        if let Some(z) = stalk_zero {
            if z == origin_in_polar {
                flags.push(format!(
                    "INCONSISTENT: with {l}, origin in polar set = {origin_in_polar} but stalk zero = {z}"
                ));
            }
        }
        out.push(EmptinessTrial { form: l, origin_in_polar, verdicts: m1.verdicts, stalk_zero });
    }
    if out.iter().any(|t| t.origin_in_polar != out[0].origin_in_polar) {
        flags.push("GENERICITY_FAILURE: sampled forms disagree on whether the origin is in the polar set".into());
    }
    Ok(EmptinessReport {
        some_form_misses: out.iter().any(|t| !t.origin_in_polar),
        generic_misses: out.iter().all(|t| !t.origin_in_polar),
        generic_stalk_zero: out.iter().all(|t| t.stalk_zero == Some(true)),
        trials: out,
        flags,
    })
}

#[derive(Clone, Debug)]
pub struct LeReport {
    /// `Γ¹_{f,z0}` as an ideal.
    pub polar: Ideal,
    pub local_dim: KrullDim,
    pub tau: u64,
}

/// `τ = (Γ¹_{f,z0} · V(f))_0` on a smooth ambient space, with
/// `Γ¹ = V(minors[∇z0; ∇f]) ¬ Σf`.
pub fn le_attaching(f: &Polynomial, z0: &Polynomial) -> Result<LeReport> {
    let ctx = f.ctx();
    let o = RationalPoint::origin(ctx.len());
    let sigma = Ideal::new(ctx, f.gradient())?;
    let polar = gap_sheaf(&Ideal::new(ctx, maximal_minors(&[z0.gradient(), f.gradient()]))?, &sigma)?;
    let local_dim = local_dim_checked(&polar, &o, "polar curve")?;
    if local_dim > KrullDim::Dim(1) {
        return Err(Error::PolarNotCurve { dim: local_dim.as_i64() as usize, source_name: format!("({z0}, {f})") });
    }
    if !polar.with(std::slice::from_ref(f))?.at_most_isolated_at(&o)? {
        return Err(Error::NonProper(format!("polar curve of ({f}, {z0}) meets V({f}) in a curve")));
    }
    let tau = if local_dim == KrullDim::Empty { 0 } else { ideal_intersection_number(&polar, f, &o)? };
    Ok(LeReport { polar, local_dim, tau })
}

/// Length of `O_p / (∂f/∂z)` at an isolated critical point.
pub fn milnor_number(f: &Polynomial, p: &RationalPoint) -> Result<u64> {
    let jac = Ideal::new(f.ctx(), f.gradient())?;
    match jac.local_multiplicity(p) {
        Err(Error::NotZeroDimensional) => Err(Error::NonIsolated),
        r => r,
    }
}

/// Milnor number of `f|V(l)` at `p` for a linear (affine) form `l` with
/// `l(p) = 0`: eliminate one coordinate through `l` and take the Jacobian
/// in the others.
pub fn restricted_milnor_number(f: &Polynomial, l: &Polynomial, p: &RationalPoint) -> Result<u64> {
    let ctx = f.ctx();
    if l.total_degree().unwrap_or(0) != 1 {
        return Err(Error::Validation(format!("{l} is not a linear form")));
    }
    if !l.eval_at(p)?.is_zero() {
        return Err(Error::Validation(format!("{p} is not on V({l})")));
    }
    let k = (0..ctx.len()).find(|&i| l.degree_in(i) == 1).expect("linear form has a variable");
    let a = l.partial_derivative(k).constant_term();
    let rest = &l.scale(&(BigRational::one() / &a)) - &Polynomial::var(ctx, k);
    let solved = -&rest;
    let fr = f.substitute(&[(k, solved)])?;
    let mut gens: Vec<Polynomial> = (0..ctx.len()).filter(|&i| i != k).map(|i| fr.partial_derivative(i)).collect();
    gens.push(&Polynomial::var(ctx, k) - &Polynomial::constant(ctx, p.coords()[k].clone()));
    match Ideal::new(ctx, gens)?.local_multiplicity(p) {
        Err(Error::NotZeroDimensional) => Err(Error::NonIsolated),
        r => r,
    }
}

#[derive(Clone, Debug)]
pub struct FamilyPoint {
    pub degree: i32,
    pub point: RationalPoint,
    pub multiplicity: u64,
    pub group: FGAbelianGroup,
}

#[derive(Clone, Debug)]
pub struct FamilySample {
    pub a: BigRational,
    pub points: Vec<FamilyPoint>,
    pub rhs: GroupTable,
    /// Rank carried by irrational slice points, which are not split.
    pub unsplit_rank: u64,
    /// Every component keeps its total intersection count with `V(g - a)`
    /// equal to its count at the origin for `a = 0`, so no point escaped.
    pub conserved: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    /// `((Γ¹_{g,f̃})^k ⊙ V(g))_0`.
    pub lhs: GroupTable,
    pub samples: Vec<FamilySample>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.samples.iter().all(|s| s.agrees && s.conserved)
    }
}

/// Compares the stalk at the origin of the special member with the sum of
/// the local numbers at nearby points of `|Γ_{g,f̃}| ∩ V(g - a)`.
pub fn family_additivity(spec: &ProblemSpec, samples: &[BigRational], seed: u64) -> Result<FamilyReport> {
    let sw = spec.swapped();
    let m1 = main1_table(&sw, seed)?;
    let Some(lhs) = m1.table.clone() else {
        return Err(Error::VerdictFailure("dim_0 V(g) ∩ |Γ_{g,f}| > 0".into()));
    };
    let o = RationalPoint::origin(spec.ambient_dim());
    let g = &spec.g;
    let mut out = Vec::new();
    for a in samples {
        let ga = g - &Polynomial::constant(&spec.ctx, a.clone());
        let mut points = Vec::new();
        let mut rhs = GroupTable::new();
        let mut unsplit_rank = 0;
        let mut conserved = true;
        for (k, ek) in m1.polar.cycle.degrees() {
            for (p, grp) in ek.components() {
                if !p.vanishes_at(&o)? {
                    continue;
                }
                let at_zero = p.with(std::slice::from_ref(g))?;
                let here = p.with(std::slice::from_ref(&ga))?;
                let total = finite_length(&here)?;
                if finite_length(&at_zero)? != at_zero.local_multiplicity(&o)? || total != finite_length(&at_zero)? {
                    conserved = false;
                }
                let (pts, _) = here.rational_points()?;
                let mut split = 0;
                for pt in pts {
                    let m = here.local_multiplicity(&pt)?;
                    split += m;
                    let group = grp.power(m);
                    table_add(&mut rhs, k, &group);
                    points.push(FamilyPoint { degree: k, point: pt, multiplicity: m, group });
                }
                unsplit_rank += (total - split) * grp.rank;
            }
        }
        let agrees = if unsplit_rank == 0 { rhs == lhs } else { table_rank(&rhs) + unsplit_rank == table_rank(&lhs) };
        out.push(FamilySample { a: a.clone(), points, rhs, unsplit_rank, conserved, agrees });
    }
    Ok(FamilyReport { lhs, samples: out })
}

fn finite_length(i: &Ideal) -> Result<u64> {
    match i.vspace_dim()? {
        VectorDim::Finite(d) => Ok(d),
        VectorDim::Infinite => Err(Error::NotZeroDimensional),
    }
}

/// Components of `|Γ_{f,g̃}|` along which neither `f` nor `g` is constant
/// must be the same as those of `|Γ_{g,f̃}|`. Returns the two lists.
pub fn symmetric_components(spec: &ProblemSpec, seed: u64) -> Result<(Vec<Ideal>, Vec<Ideal>, bool)> {
    let fg = polar_curve(spec, seed)?;
    let gf = polar_curve(&spec.swapped(), seed)?;
    let a = nonconstant_components(&fg.cycle, &spec.f, &spec.g)?;
    let b = nonconstant_components(&gf.cycle, &spec.f, &spec.g)?;
    let mut same = a.len() == b.len();
    for p in &a {
        let mut found = false;
        for q in &b {
            if same_component(p, q)? {
                found = true;
                break;
            }
        }
        same &= found;
    }
    Ok((a, b, same))
}

fn nonconstant_components(c: &GradedEnrichedCycle, f: &Polynomial, g: &Polynomial) -> Result<Vec<Ideal>> {
    let mut out: Vec<Ideal> = Vec::new();
    for (_, ek) in c.degrees() {
        for (p, _) in ek.components() {
            if crate::conormal::constant_on(p, f)? || crate::conormal::constant_on(p, g)? {
                continue;
            }
            let mut dup = false;
            for q in &out {
                if same_component(p, q)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                out.push(p.clone());
            }
        }
    }
    Ok(out)
}

/// Checks `Σ̄(f,g) = Σ̄f ∪ |Γ_{f,g̃}|` as sets. `Σ̄(f,g)` is the closure of
/// the locus where `df|S` and `dg|S` are dependent on a visible stratum;
/// `Σ̄f` comes from the absolute conormals.
pub fn sigma_union_check(spec: &ProblemSpec, seed: u64) -> Result<bool> {
    let polar = polar_curve(spec, seed)?;
    let amb = &spec.ctx;
    let mut conormals = Vec::new();
    let mut pair_parts = Vec::new();
    for (st, rel) in spec.strata.iter().zip(&polar.relative.strata) {
        if rel.morse.is_zero() {
            continue;
        }
        let gaps = spec.removed_closures(st)?;
        conormals.push((conormal_ideal(amb, &st.closure, &gaps, &st.name)?, true));
        let mut rows: Vec<Vec<Polynomial>> = st.closure.iter().map(Polynomial::gradient).collect();
        rows.push(spec.f.gradient());
        rows.push(spec.g.gradient());
        let mut gens = st.closure.clone();
        gens.extend(maximal_minors(&rows));
        let mut part = Ideal::new(amb, gens)?;
        for gap in gaps.into_iter().chain([jacobian_singular_locus(&st.closure, amb)?]) {
            if !gap.is_unit()? {
                part = gap_sheaf(&part, &gap)?;
            }
        }
        if !part.is_unit()? {
            pair_parts.push(part);
        }
    }
    let mut right = critical_locus(&conormals, &spec.f)?;
    right.extend(polar.set());
    let left = union_ideal(amb, &pair_parts)?;
    let right = union_ideal(amb, &right)?;
    left.same_zero_set(&right)
}
