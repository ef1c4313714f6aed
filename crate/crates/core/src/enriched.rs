//! Finitely generated abelian group coefficients and (graded) enriched
//! cycles: sums, shifts, the ⊙ product, push-forward and the ordinary cycle
//! obtained by taking alternating ranks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cycle::{cycle_of_ideal_auto, same_component, CandidateSet, Cycle};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, KrullDim};
use crate::poly::RationalPoint;

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | … | d_k` and every `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    pub rank: u64,
    pub torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of `⊕ ℤ/n_i`.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        if n == 0 {
            continue;
        }
        for (p, e) in prime_powers(n) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            factors[k] *= p.pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors.sort_unstable();
    factors
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u64) -> Self {
        FGAbelianGroup { rank, torsion: Vec::new() }
    }

    /// Normalizes arbitrary cyclic orders into invariant-factor form; orders
    /// of 1 (and 0, read as no torsion entry) are dropped.
    pub fn new(rank: u64, torsion: &[u64]) -> Self {
        FGAbelianGroup { rank, torsion: invariant_factors(torsion) }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Prime-power orders of the cyclic torsion summands, sorted.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .torsion
            .iter()
            .flat_map(|&d| prime_powers(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend(&other.torsion);
        FGAbelianGroup::new(self.rank + other.rank, &t)
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: u64) -> Self {
        let mut t = Vec::new();
        for _ in 0..n {
            t.extend(&self.torsion);
        }
        FGAbelianGroup::new(self.rank * n, &t)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut t = Vec::new();
        for &b in &other.torsion {
            t.extend(std::iter::repeat_n(b, self.rank as usize));
        }
        for &a in &self.torsion {
            t.extend(std::iter::repeat_n(a, other.rank as usize));
            for &b in &other.torsion {
                t.push(a.gcd(&b));
            }
        }
        FGAbelianGroup::new(self.rank * other.rank, &t)
    }

    /// `self` is isomorphic to a direct summand of `other`.
    pub fn is_summand_of(&self, other: &Self) -> bool {
        if self.rank > other.rank {
            return false;
        }
        let mut rest = other.elementary_divisors();
        for d in self.elementary_divisors() {
            match rest.iter().position(|&x| x == d) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// Formal sum of distinct components with nonzero group coefficients.
#[derive(Clone, Debug, Default)]
pub struct EnrichedCycle {
    comps: Vec<(Ideal, FGAbelianGroup)>,
}

impl EnrichedCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(v: &Ideal, coeff: FGAbelianGroup) -> Result<Self> {
        let mut e = Self::zero();
        e.add(v, &coeff)?;
        Ok(e)
    }

    /// Adds `coeff·[V]`, direct-summing with an equal component.
    pub fn add(&mut self, v: &Ideal, coeff: &FGAbelianGroup) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        for (w, c) in &mut self.comps {
            if same_component(w, v)? {
                *c = c.direct_sum(coeff);
                return Ok(());
            }
        }
        self.comps.push((Ideal::new(v.ctx(), (*v.key()?).clone())?, coeff.clone()));
        Ok(())
    }

    pub fn components(&self) -> &[(Ideal, FGAbelianGroup)] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coefficient_of(&self, v: &Ideal) -> Result<FGAbelianGroup> {
        for (w, c) in &self.comps {
            if same_component(w, v)? {
                return Ok(c.clone());
            }
        }
        Ok(FGAbelianGroup::zero())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (v, c) in &other.comps {
            out.add(v, c)?;
        }
        Ok(out)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.comps.len() != other.comps.len() {
            return Ok(false);
        }
        for (v, c) in &self.comps {
            if other.coefficient_of(v)? != *c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Direct sum of all coefficients.
    pub fn total(&self) -> FGAbelianGroup {
        self.comps.iter().fold(FGAbelianGroup::zero(), |acc, (_, c)| acc.direct_sum(c))
    }
}

impl fmt::Display for EnrichedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}[V{v}]")?;
        }
        Ok(())
    }
}

/// Enriched cycles indexed by degree; zero degrees are not stored.
#[derive(Clone, Debug, Default)]
pub struct GradedEnrichedCycle {
    by_degree: BTreeMap<i32, EnrichedCycle>,
}

impl GradedEnrichedCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn concentrated(degree: i32, e: EnrichedCycle) -> Self {
        let mut g = Self::zero();
        if !e.is_zero() {
            g.by_degree.insert(degree, e);
        }
        g
    }

    pub fn single(degree: i32, v: &Ideal, coeff: FGAbelianGroup) -> Result<Self> {
        Ok(Self::concentrated(degree, EnrichedCycle::single(v, coeff)?))
    }

    pub fn add(&mut self, degree: i32, v: &Ideal, coeff: &FGAbelianGroup) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        self.by_degree.entry(degree).or_default().add(v, coeff)
    }

    pub fn degree(&self, k: i32) -> EnrichedCycle {
        self.by_degree.get(&k).cloned().unwrap_or_default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i32, &EnrichedCycle)> {
        self.by_degree.iter().map(|(k, e)| (*k, e))
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// Distinct components over all degrees.
    pub fn support(&self) -> Result<Vec<Ideal>> {
        let mut out: Vec<Ideal> = Vec::new();
        for e in self.by_degree.values() {
            'c: for (v, _) in e.components() {
                for w in &out {
                    if same_component(w, v)? {
                        continue 'c;
                    }
                }
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.by_degree.len() != other.by_degree.len() {
            return Ok(false);
        }
        for (k, e) in &self.by_degree {
            match other.by_degree.get(k) {
                Some(o) if e.equals(o)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

impl fmt::Display for GradedEnrichedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.by_degree.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, e)) in self.by_degree.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "degree {k}: {e}")?;
        }
        Ok(())
    }
}

/// `(D + E)^k = D^k + E^k`.
pub fn ge_sum(d: &GradedEnrichedCycle, e: &GradedEnrichedCycle) -> Result<GradedEnrichedCycle> {
    let mut out = d.clone();
    for (k, ek) in &e.by_degree {
        let merged = out.degree(*k).sum(ek)?;
        out.by_degree.insert(*k, merged);
    }
    Ok(out)
}

/// `(E[k])^i = E^{i+k}`.
pub fn ge_shift(e: &GradedEnrichedCycle, k: i32) -> GradedEnrichedCycle {
    GradedEnrichedCycle { by_degree: e.by_degree.iter().map(|(i, c)| (i - k, c.clone())).collect() }
}

/// `q·E`: every coefficient tensored with `q`.
pub fn ge_scale(q: &FGAbelianGroup, e: &GradedEnrichedCycle) -> Result<GradedEnrichedCycle> {
    let mut out = GradedEnrichedCycle::zero();
    for (k, ek) in &e.by_degree {
        for (v, c) in ek.components() {
            out.add(*k, v, &q.tensor(c))?;
        }
    }
    Ok(out)
}

/// Cycle with signed integer coefficients; zero coefficients are kept so
/// that components cancelled by the sign rule stay visible.
#[derive(Clone, Debug, Default)]
pub struct SignedCycle {
    comps: Vec<(Ideal, i64)>,
}

impl SignedCycle {
    pub fn add(&mut self, v: &Ideal, m: i64) -> Result<()> {
        for (w, k) in &mut self.comps {
            if same_component(w, v)? {
                *k += m;
                return Ok(());
            }
        }
        self.comps.push((v.clone(), m));
        Ok(())
    }

    pub fn components(&self) -> &[(Ideal, i64)] {
        &self.comps
    }

    pub fn coefficient_of(&self, v: &Ideal) -> Result<i64> {
        for (w, k) in &self.comps {
            if same_component(w, v)? {
                return Ok(*k);
            }
        }
        Ok(0)
    }

    /// Equality of the nonzero parts.
    pub fn equals(&self, other: &SignedCycle) -> Result<bool> {
        for (v, k) in self.comps.iter().chain(&other.comps) {
            let _ = k;
            if self.coefficient_of(v)? != other.coefficient_of(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, k)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{k}[V{v}]")?;
        }
        Ok(())
    }
}

/// `[E]^ord = Σ_i (-1)^i rk(E^i_V)[V]`.
pub fn ordinary_of(e: &GradedEnrichedCycle) -> Result<SignedCycle> {
    let mut out = SignedCycle::default();
    for (k, ek) in &e.by_degree {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        for (v, c) in ek.components() {
            out.add(v, sign * c.rank as i64)?;
        }
    }
    Ok(out)
}

/// `D ≤ E` iff `D + P = E` for some graded enriched cycle `P`.
pub fn ge_leq(d: &GradedEnrichedCycle, e: &GradedEnrichedCycle) -> Result<bool> {
    for (k, dk) in &d.by_degree {
        let ek = e.degree(*k);
        for (v, c) in dk.components() {
            if !c.is_summand_of(&ek.coefficient_of(v)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Supplies ordinary intersection cycles of component pairs, refusing
/// improper intersections.
pub trait IntersectionOracle {
    fn intersect(&self, v: &Ideal, w: &Ideal) -> Result<Cycle>;
}

/// Intersects by adding ideals. Properness is checked by dimension count;
/// zero-dimensional intersections are resolved into rational points with
/// local multiplicities, higher-dimensional ones by automatic
/// decomposition.
#[derive(Debug, Default, Clone, Copy)]
pub struct AlgebraicOracle;

impl IntersectionOracle for AlgebraicOracle {
    fn intersect(&self, v: &Ideal, w: &Ideal) -> Result<Cycle> {
        let n = v.ctx().len() as i64;
        let k = v.sum(w)?;
        let dk = k.krull_dim()?;
        if dk == KrullDim::Empty {
            return Ok(Cycle::zero());
        }
        let expected = v.krull_dim()?.as_i64() + w.krull_dim()?.as_i64() - n;
        if dk.as_i64() != expected {
            return Err(Error::NonProper(format!("V{v} and V{w} meet in dimension {dk}, expected {expected}")));
        }
        if dk == KrullDim::Dim(0) {
            let (pts, complete) = k.rational_points()?;
            if !complete {
                return Err(Error::UnresolvedComponent { residual: k.to_string() });
            }
            let mut c = Cycle::zero();
            for p in pts {
                let m = k.local_multiplicity(&p)?;
                c.add_component(&Ideal::maximal_at(k.ctx(), &p), m)?;
            }
            return Ok(c);
        }
        cycle_of_ideal_auto(&k, &CandidateSet::new())
    }
}

/// Memoizes another oracle by the reduced bases of the inputs.
pub struct CachedOracle<O> {
    inner: O,
    memo: Mutex<HashMap<(String, String), Cycle>>,
}

impl<O: IntersectionOracle> CachedOracle<O> {
    pub fn new(inner: O) -> Self {
        CachedOracle { inner, memo: Mutex::new(HashMap::new()) }
    }
}

fn key_string(i: &Ideal) -> Result<String> {
    Ok(Ideal::new(i.ctx(), (*i.key()?).clone())?.to_string())
}

impl<O: IntersectionOracle> IntersectionOracle for CachedOracle<O> {
    fn intersect(&self, v: &Ideal, w: &Ideal) -> Result<Cycle> {
        let key = (key_string(v)?, key_string(w)?);
        if let Some(c) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(c.clone());
        }
        let c = self.inner.intersect(v, w)?;
        self.memo.lock().expect("memo lock").insert(key, c.clone());
        Ok(c)
    }
}

/// `(D ⊙ E)^k = Σ_{i+j=k} D^i ⊙ E^j`, with `D_V ⊗ E_W` placed on every
/// component of `V·W` (repeated by its multiplicity).
pub fn ge_intersect(
    d: &GradedEnrichedCycle,
    e: &GradedEnrichedCycle,
    oracle: &dyn IntersectionOracle,
) -> Result<GradedEnrichedCycle> {
    let mut out = GradedEnrichedCycle::zero();
    for (i, di) in &d.by_degree {
        for (j, ej) in &e.by_degree {
            for (v, a) in di.components() {
                for (w, b) in ej.components() {
                    let z = oracle.intersect(v, w)?;
                    let t = a.tensor(b);
                    for (p, m) in z.components() {
                        out.add(i + j, p, &t.power(*m))?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Proper push-forward along a projection. `image` gives the image of each
/// component (for example by elimination); components whose image has
/// smaller dimension push forward to zero.
pub fn ge_pushforward(
    e: &GradedEnrichedCycle,
    image: &dyn Fn(&Ideal) -> Result<Option<Ideal>>,
) -> Result<GradedEnrichedCycle> {
    let mut out = GradedEnrichedCycle::zero();
    for (k, ek) in &e.by_degree {
        for (v, c) in ek.components() {
            let img = image(v)?.ok_or_else(|| Error::MissingImage(v.to_string()))?;
            if img.krull_dim()? != v.krull_dim()? {
                continue;
            }
            out.add(*k, &img, c)?;
        }
    }
    Ok(out)
}

/// Push-forward with images given as an explicit table.
pub fn ge_pushforward_table(e: &GradedEnrichedCycle, table: &[(Ideal, Ideal)]) -> Result<GradedEnrichedCycle> {
    ge_pushforward(e, &|v: &Ideal| {
        for (src, img) in table {
            if same_component(src, v)? {
                return Ok(Some(img.clone()));
            }
        }
        Ok(None)
    })
}

/// Image of a component of the doubled space under projection to the
/// ambient coordinates.
pub fn projection_image(v: &Ideal) -> Result<Option<Ideal>> {
    let amb = v.ctx().ambient_context();
    Ok(Some(v.restrict_to(&amb)?))
}

/// The ordinary intersection cycle localized at a point: only components
/// through `p` are kept.
pub fn localize_at(e: &GradedEnrichedCycle, p: &RationalPoint) -> Result<GradedEnrichedCycle> {
    let mut out = GradedEnrichedCycle::zero();
    for (k, ek) in &e.by_degree {
        for (v, c) in ek.components() {
            if v.vanishes_at(p)? {
                out.add(*k, v, c)?;
            }
        }
    }
    Ok(out)
}
