//! Ordinary cycles: components with multiplicities, decomposition against
//! candidate primes, and local intersection numbers.

mod factor;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, KrullDim, VectorDim};
use crate::poly::{rat, Polynomial, RationalPoint};

pub use factor::{factor_lite, poly_gcd};

/// Seed for the second, random slice used to certify multiplicities.
const SLICE_SEED: u64 = 0x51ce_2b1d;

/// Small integers tried, in order, as coordinates of sampled test points.
const SAMPLE_VALUES: [i64; 9] = [1, 2, -1, 3, -2, 4, -3, 5, 7];

/// Whether two prime ideals define the same irreducible set.
pub fn same_component(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.key()? == b.key()? {
        return Ok(true);
    }
    a.same_zero_set(b)
}

/// Formal sum of components with positive multiplicities. Components are
/// stored by their reduced grevlex basis.
#[derive(Clone, Debug, Default)]
pub struct Cycle {
    comps: Vec<(Ideal, u64)>,
}

fn canonical(p: &Ideal) -> Result<Ideal> {
    Ideal::new(p.ctx(), (*p.key()?).clone())
}

impl Cycle {
    pub fn zero() -> Cycle {
        Cycle { comps: Vec::new() }
    }

    pub fn from_components(comps: Vec<(Ideal, u64)>) -> Result<Cycle> {
        let mut c = Cycle::zero();
        for (p, m) in comps {
            c.add_component(&p, m)?;
        }
        Ok(c)
    }

    /// Adds `m·[V(P)]`, merging with an equal component if present.
    pub fn add_component(&mut self, p: &Ideal, m: u64) -> Result<()> {
        if m == 0 {
            return Ok(());
        }
        for (q, k) in &mut self.comps {
            if same_component(q, p)? {
                *k += m;
                return Ok(());
            }
        }
        self.comps.push((canonical(p)?, m));
        Ok(())
    }

    pub fn components(&self) -> &[(Ideal, u64)] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn plus(&self, other: &Cycle) -> Result<Cycle> {
        let mut out = self.clone();
        for (p, m) in &other.comps {
            out.add_component(p, *m)?;
        }
        Ok(out)
    }

    /// Multiplicity of the component equal to `p`, or 0.
    pub fn multiplicity_of(&self, p: &Ideal) -> Result<u64> {
        for (q, k) in &self.comps {
            if same_component(q, p)? {
                return Ok(*k);
            }
        }
        Ok(0)
    }

    /// Equality as formal sums.
    pub fn equals(&self, other: &Cycle) -> Result<bool> {
        if self.comps.len() != other.comps.len() {
            return Ok(false);
        }
        for (p, m) in &self.comps {
            if other.multiplicity_of(p)? != *m {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}[V{p}]")?;
        }
        Ok(())
    }
}

/// Candidate primes for a decomposition, each with its dimension.
#[derive(Clone, Debug, Default)]
pub struct CandidateSet {
    primes: Vec<(Ideal, KrullDim)>,
    test_points: Vec<Option<RationalPoint>>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ideals(ps: &[Ideal]) -> Result<Self> {
        let mut c = Self::new();
        for p in ps {
            c.add(p.clone())?;
        }
        Ok(c)
    }

    pub fn add(&mut self, p: Ideal) -> Result<()> {
        self.add_with_point(p, None)
    }

    /// Adds a candidate together with a rational point on it to slice at.
    pub fn add_with_point(&mut self, p: Ideal, pt: Option<RationalPoint>) -> Result<()> {
        for (q, _) in &self.primes {
            if same_component(q, &p)? {
                return Ok(());
            }
        }
        let d = p.krull_dim()?;
        self.primes.push((p, d));
        self.test_points.push(pt);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ideal, KrullDim, Option<&RationalPoint>)> {
        self.primes.iter().zip(&self.test_points).map(|((p, d), t)| (p, *d, t.as_ref()))
    }
}

/// `I : W^∞`: drops every component of `V(I)` lying in `V(W)`.
pub fn gap_sheaf(i: &Ideal, w: &Ideal) -> Result<Ideal> {
    Ok(i.saturate(w)?.0)
}

/// Top-dimensional cycle of `V(I)` built from the candidates.
///
/// Fails with `UnresolvedComponent` if, after saturating away every accepted
/// component, a top-dimensional piece remains.
pub fn cycle_of_ideal(i: &Ideal, cands: &CandidateSet) -> Result<Cycle> {
    let d = match i.krull_dim()? {
        KrullDim::Empty => return Ok(Cycle::zero()),
        KrullDim::Dim(d) => d,
    };
    let mut accepted: Vec<Ideal> = Vec::new();
    let mut cycle = Cycle::zero();
    for (p, pd, pt) in cands.iter() {
        if pd != KrullDim::Dim(d) || !p.radical_contains_ideal(i)? {
            continue;
        }
        let mut overlaps = false;
        for a in &accepted {
            if a.radical_contains_ideal(p)? || p.radical_contains_ideal(a)? {
                overlaps = true;
                break;
            }
        }
        if overlaps {
            continue;
        }
        let avoid: Vec<Ideal> = cands
            .iter()
            .filter(|(q, qd, _)| !same_ptr(q, p) && *qd <= KrullDim::Dim(d))
            .map(|(q, _, _)| q.clone())
            .collect();
        let m = component_multiplicity_avoiding(i, p, pt, &avoid)?;
        if m > 0 {
            cycle.add_component(p, m)?;
            accepted.push(p.clone());
        }
    }
    let mut residual = i.clone();
    for a in &accepted {
        residual = gap_sheaf(&residual, a)?;
    }
    if let KrullDim::Dim(r) = residual.krull_dim()? {
        if r >= d {
            return Err(Error::UnresolvedComponent { residual: residual.to_string() });
        }
    }
    Ok(cycle)
}

fn same_ptr(a: &Ideal, b: &Ideal) -> bool {
    std::ptr::eq(a.gens().as_ptr(), b.gens().as_ptr())
}

/// Like [`cycle_of_ideal`], with candidates harvested from the ideal itself
/// by splitting generators with [`factor_lite`], after the supplied ones.
pub fn cycle_of_ideal_auto(i: &Ideal, extra: &CandidateSet) -> Result<Cycle> {
    let d = match i.krull_dim()? {
        KrullDim::Empty => return Ok(Cycle::zero()),
        KrullDim::Dim(d) => d,
    };
    let mut cands = extra.clone();
    for p in harvest(i, d)? {
        cands.add(p)?;
    }
    cycle_of_ideal(i, &cands)
}

/// Candidate components of dimension `d`, found by recursively adding
/// factors of reduced basis elements.
pub fn harvest(i: &Ideal, d: usize) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    split_rec(i, d, &mut out, 0)?;
    Ok(out)
}

fn split_rec(k: &Ideal, d: usize, out: &mut Vec<Ideal>, depth: usize) -> Result<()> {
    if k.krull_dim()? != KrullDim::Dim(d) {
        return Ok(());
    }
    let gb = k.key()?;
    if depth < 24 {
        for g in gb.iter() {
            let fs = factor_lite(g)?;
            let reducible = fs.len() >= 2 || (fs.len() == 1 && fs[0] != g.primitive());
            if reducible {
                for f in fs {
                    split_rec(&k.with(&[f])?, d, out, depth + 1)?;
                }
                return Ok(());
            }
        }
    }
    for q in out.iter() {
        if same_component(q, k)? {
            return Ok(());
        }
    }
    out.push(Ideal::new(k.ctx(), (*gb).clone())?);
    Ok(())
}

/// Hyperplanes `z_u = q_u` for the independent variables `u`.
fn coordinate_slice(p: &Ideal, q: &RationalPoint, vars: &[usize]) -> Vec<Polynomial> {
    let ctx = p.ctx();
    vars.iter()
        .map(|&u| &Polynomial::var(ctx, u) - &Polynomial::constant(ctx, q.coords()[u].clone()))
        .collect()
}

/// `d` seeded random hyperplanes through `q`.
fn random_slice(p: &Ideal, q: &RationalPoint, d: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let ctx = p.ctx();
    let n = ctx.len();
    (0..d)
        .map(|_| {
            let mut acc = Polynomial::zero(ctx);
            for v in 0..n {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    let lin = &Polynomial::var(ctx, v) - &Polynomial::constant(ctx, q.coords()[v].clone());
                    acc = &acc + &lin.scale(&rat(c));
                }
            }
            acc
        })
        .collect()
}

/// `H` meets `V(P)` transversally in a smooth point at `q`.
fn transverse(p: &Ideal, h: &[Polynomial], q: &RationalPoint) -> Result<bool> {
    if h.iter().any(Polynomial::is_zero) {
        return Ok(false);
    }
    match p.with(h)?.local_multiplicity(q) {
        Ok(1) => Ok(true),
        Ok(_) | Err(Error::NotZeroDimensional) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Variable subsets of size `d`, the leading-term independent set first.
fn slice_variable_sets(p: &Ideal, d: usize) -> Result<Vec<Vec<usize>>> {
    let first = p.independent_set()?.ok_or_else(|| Error::NeedsTestPoint(p.to_string()))?;
    let n = p.ctx().len();
    let mut out = vec![first.clone()];
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        if cur != first {
            out.push(cur.clone());
        }
        // next combination in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < n - d + i {
                break;
            }
            if i == 0 {
                return Ok(out);
            }
        }
        cur[i] += 1;
        for j in i + 1..d {
            cur[j] = cur[j - 1] + 1;
        }
        if d == 0 {
            return Ok(out);
        }
    }
}

/// A rational point of `V(P)` off every ideal in `avoid`, found by fixing
/// `dim P` coordinates to small integers and solving for the rest.
pub fn sample_point(p: &Ideal, avoid: &[Ideal]) -> Result<RationalPoint> {
    let d = match p.krull_dim()? {
        KrullDim::Empty => return Err(Error::NeedsTestPoint(p.to_string())),
        KrullDim::Dim(d) => d,
    };
    let ctx = p.ctx();
    let choices = SAMPLE_VALUES.len();
    let per_set = choices.pow(d as u32).min(64);
    for vars in slice_variable_sets(p, d)? {
        for idx in 0..per_set {
            let mut rem = idx;
            let mut cut = Vec::with_capacity(d);
            for &u in &vars {
                let c = Polynomial::constant(ctx, rat(SAMPLE_VALUES[rem % choices]));
                cut.push(&Polynomial::var(ctx, u) - &c);
                rem /= choices;
            }
            let fiber = p.with(&cut)?;
            if fiber.krull_dim()? != KrullDim::Dim(0) {
                continue;
            }
            let (pts, _) = fiber.rational_points()?;
            'pts: for q in pts {
                for a in avoid {
                    if a.vanishes_at(&q)? {
                        continue 'pts;
                    }
                }
                if transverse(p, &coordinate_slice(p, &q, &vars), &q)? {
                    return Ok(q);
                }
            }
        }
    }
    Err(Error::NeedsTestPoint(p.to_string()))
}

/// Length of `I` at a generic point of `V(P)`; 0 when `V(P) ⊄ V(I)`.
///
/// `V(P)` is cut by `dim P` hyperplanes through a rational test point:
/// coordinate hyperplanes of an independent set first, then a seeded random
/// choice. Both slices must be transverse to `P` and give the same length.
pub fn component_multiplicity(i: &Ideal, p: &Ideal, test_point: Option<&RationalPoint>) -> Result<u64> {
    component_multiplicity_avoiding(i, p, test_point, &[])
}

fn component_multiplicity_avoiding(
    i: &Ideal,
    p: &Ideal,
    test_point: Option<&RationalPoint>,
    avoid: &[Ideal],
) -> Result<u64> {
    if !p.radical_contains_ideal(i)? {
        return Ok(0);
    }
    let d = match p.krull_dim()? {
        KrullDim::Empty => return Err(Error::DimensionMismatch("empty candidate".into())),
        KrullDim::Dim(d) => d,
    };
    let q = match test_point {
        Some(q) => {
            if !p.vanishes_at(q)? {
                return Err(Error::Validation(format!("test point {q} does not lie on V{p}")));
            }
            q.clone()
        }
        None => match sample_point(p, avoid) {
            Ok(q) => q,
            Err(Error::NeedsTestPoint(_)) if d > 0 => return affine_slice_multiplicity(i, p, d),
            Err(e) => return Err(e),
        },
    };
    if d == 0 {
        return i.local_multiplicity(&q);
    }
    let mut slices: Vec<Vec<Polynomial>> = Vec::new();
    for vars in slice_variable_sets(p, d)? {
        let coord = coordinate_slice(p, &q, &vars);
        if transverse(p, &coord, &q)? {
            slices.push(coord);
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SLICE_SEED);
    let mut tries = 0;
    while slices.len() < 2 && tries < 16 {
        tries += 1;
        let h = random_slice(p, &q, d, &mut rng);
        if transverse(p, &h, &q)? {
            slices.push(h);
        }
    }
    if slices.len() < 2 {
        return Err(Error::GenericityFailure(format!("no transverse slice of V{p} at {q}")));
    }
    let mut values = Vec::with_capacity(2);
    for h in &slices {
        values.push(i.with(h)?.local_multiplicity(&q)?);
    }
    if values[0] != values[1] {
        return Err(Error::GenericityFailure(format!(
            "slices of V{p} at {q} give lengths {} and {}",
            values[0], values[1]
        )));
    }
    Ok(values[0])
}

/// Multiplicity of `P` in `I` without a rational point: cut both by `d`
/// random affine hyperplanes `H`, keep the part of `I + H` supported on
/// the `deg P` points of `V(P + H)` and divide its length by `deg P`. Two
/// independent cuts must agree.
fn affine_slice_multiplicity(i: &Ideal, p: &Ideal, d: usize) -> Result<u64> {
    let ctx = p.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(SLICE_SEED ^ 0xaff1);
    let mut values = Vec::with_capacity(2);
    let mut tries = 0;
    while values.len() < 2 && tries < 16 {
        tries += 1;
        let shift = RationalPoint::new((0..ctx.len()).map(|_| rat(rng.gen_range(-5..=5))).collect());
        let h = random_slice(p, &shift, d, &mut rng);
        if h.iter().any(Polynomial::is_zero) {
            continue;
        }
        let on_p = p.with(&h)?;
        let deg = match on_p.vspace_dim()? {
            VectorDim::Finite(0) | VectorDim::Infinite => continue,
            VectorDim::Finite(k) => k,
        };
        let cut = i.with(&h)?;
        let (away, _) = cut.saturate(&on_p)?;
        let (local, _) = cut.saturate(&away)?;
        let len = match local.vspace_dim()? {
            VectorDim::Finite(k) => k,
            VectorDim::Infinite => continue,
        };
        if len % deg != 0 {
            continue;
        }
        values.push(len / deg);
    }
    if values.len() < 2 || values[0] != values[1] {
        return Err(Error::GenericityFailure(format!("affine slices of V{p} disagree: {values:?}")));
    }
    Ok(values[0])
}

/// `(C·V(h))_p = Σ m·length(P + (h))_p` over the components of `C`.
pub fn intersection_number_at(c: &Cycle, h: &Polynomial, p: &RationalPoint) -> Result<u64> {
    let mut total = 0;
    for (comp, m) in c.components() {
        let cut = comp.with(std::slice::from_ref(h))?;
        let here = match cut.local_multiplicity(p) {
            Ok(v) => v,
            Err(Error::NotZeroDimensional) => {
                return Err(Error::NonProper(format!("V{comp} meets V({h}) improperly at {p}")))
            }
            Err(e) => return Err(e),
        };
        total += m * here;
    }
    Ok(total)
}

/// Intersection number at `p` of the cycle of a purely one-dimensional
/// ideal with `V(h)`, computed without decomposing: once components
/// supported at `p` are saturated away the local ring is Cohen–Macaulay,
/// so the length of `I + (h)` at `p` is the intersection number.
pub fn ideal_intersection_number(i: &Ideal, h: &Polynomial, p: &RationalPoint) -> Result<u64> {
    let m = Ideal::maximal_at(i.ctx(), p);
    let (clean, _) = i.saturate(&m)?;
    match clean.with(std::slice::from_ref(h))?.local_multiplicity(p) {
        Ok(v) => Ok(v),
        Err(Error::NotZeroDimensional) => Err(Error::NonProper(format!("V{i} meets V({h}) improperly at {p}"))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests;
