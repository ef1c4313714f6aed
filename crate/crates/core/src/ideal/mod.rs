//! Ideals of the polynomial ring and the operations built on Gröbner bases.

mod groebner;
mod order;
mod points;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{parse_poly, same_ctx, Polynomial, RationalPoint, VarContext};

pub use groebner::{budget, set_budget, DEFAULT_BUDGET};
pub use order::MonomialOrder;
pub(crate) use order::TermOrder;
pub use points::rational_roots;

/// Krull dimension of `k[z]/I`; `Empty` for the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KrullDim {
    Empty,
    Dim(usize),
}

impl KrullDim {
    /// `-1` stands for the empty set.
    pub fn as_i64(self) -> i64 {
        match self {
            KrullDim::Empty => -1,
            KrullDim::Dim(d) => d as i64,
        }
    }

    pub fn is_empty(self) -> bool {
        self == KrullDim::Empty
    }
}

impl fmt::Display for KrullDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDim::Empty => write!(f, "EMPTY"),
            KrullDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Dimension of `k[z]/I` as a vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorDim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for VectorDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorDim::Finite(d) => write!(f, "{d}"),
            VectorDim::Infinite => write!(f, "INFINITE"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Exact,
    Radical,
}

struct Inner {
    ctx: Arc<VarContext>,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<TermOrder, Arc<Vec<Polynomial>>>>,
}

/// Ideal given by a generator list. Gröbner bases are computed lazily and
/// cached per order; clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    inner: Arc<Inner>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.inner.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(ctx: &Arc<VarContext>, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ctx(g.ctx(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Self::raw(ctx, kept))
    }

    fn raw(ctx: &Arc<VarContext>, gens: Vec<Polynomial>) -> Ideal {
        Ideal { inner: Arc::new(Inner { ctx: ctx.clone(), gens, cache: Mutex::new(HashMap::new()) }) }
    }

    /// An ideal whose generators are already its reduced grevlex basis.
    fn from_grevlex_basis(ctx: &Arc<VarContext>, gb: Vec<Polynomial>) -> Ideal {
        let id = Self::raw(ctx, gb.clone());
        id.inner.cache.lock().expect("cache lock").insert(TermOrder::Grevlex, Arc::new(gb));
        id
    }

    pub fn parse(ctx: &Arc<VarContext>, gens: &[&str]) -> Result<Ideal> {
        let ps = gens.iter().map(|s| parse_poly(s, ctx)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, ps)
    }

    pub fn unit(ctx: &Arc<VarContext>) -> Ideal {
        Self::raw(ctx, vec![Polynomial::one(ctx)])
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Ideal {
        Self::raw(ctx, Vec::new())
    }

    /// `(z_i - p_i)` over the leading coordinates covered by `pt`.
    pub fn maximal_at(ctx: &Arc<VarContext>, pt: &RationalPoint) -> Ideal {
        let gens = pt
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| &Polynomial::var(ctx, i) - &Polynomial::constant(ctx, c.clone()))
            .collect();
        Self::raw(ctx, gens)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.inner.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.inner.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.inner.gens.is_empty()
    }

    pub(crate) fn gb(&self, ord: &TermOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.inner.cache.lock().expect("cache lock").get(ord) {
            return Ok(b.clone());
        }
        let b = Arc::new(groebner::groebner(&self.inner.ctx, &self.inner.gens, ord)?);
        self.inner.cache.lock().expect("cache lock").insert(ord.clone(), b.clone());
        Ok(b)
    }

    /// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing
    /// leading monomial.
    pub fn groebner_basis(&self, ord: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        self.gb(&ord.to_term_order(self.ctx().len())?)
    }

    /// Reduced grevlex basis; equal ideals have equal keys.
    pub fn key(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.gb(&TermOrder::Grevlex)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.inner.gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Ok(true);
        }
        let gb = self.key()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.normal_form_in(p, MonomialOrder::Grevlex)
    }

    pub fn normal_form_in(&self, p: &Polynomial, ord: MonomialOrder) -> Result<Polynomial> {
        if !same_ctx(p.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let to = ord.to_term_order(self.ctx().len())?;
        let gb = self.gb(&to)?;
        Ok(groebner::normal_form(p, &gb, &to))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Rabinowitsch test: `p ∈ √I` iff `1 ∈ I + (1 - s·p)`.
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        if !same_ctx(p.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        if p.is_zero() || self.contains(p)? {
            return Ok(true);
        }
        let ext = self.ctx().extended(&["s"]);
        let s = Polynomial::var(&ext, ext.len() - 1);
        let mut gens: Vec<Polynomial> = self.gens().iter().map(|g| g.lift_to(&ext)).collect();
        gens.push(&Polynomial::one(&ext) - &(&s * &p.lift_to(&ext)));
        Ideal::raw(&ext, gens).is_unit()
    }

    pub fn membership(&self, p: &Polynomial, mode: Membership) -> Result<bool> {
        match mode {
            Membership::Exact => self.contains(p),
            Membership::Radical => self.radical_contains(p),
        }
    }

    /// `J ⊆ I`.
    pub fn contains_ideal(&self, j: &Ideal) -> Result<bool> {
        for g in j.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `J ⊆ √I`, i.e. `V(I) ⊆ V(J)`.
    pub fn radical_contains_ideal(&self, j: &Ideal) -> Result<bool> {
        for g in j.gens() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(*self.key()? == *other.key()?)
    }

    /// `V(I) = V(J)`.
    pub fn same_zero_set(&self, other: &Ideal) -> Result<bool> {
        Ok(self.radical_contains_ideal(other)? && other.radical_contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = self.gens().to_vec();
        g.extend(other.gens().iter().cloned());
        Ideal::new(self.ctx(), g)
    }

    pub fn with(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut g = self.gens().to_vec();
        g.extend(extra.iter().cloned());
        Ideal::new(self.ctx(), g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = Vec::new();
        for a in self.gens() {
            for b in other.gens() {
                g.push(a * b);
            }
        }
        Ideal::new(self.ctx(), g)
    }

    /// Ideal in `target`, which must extend our context with trailing
    /// variables.
    pub fn lift_to(&self, target: &Arc<VarContext>) -> Ideal {
        Ideal::raw(target, self.gens().iter().map(|g| g.lift_to(target)).collect())
    }

    pub fn substitute(&self, bindings: &[(usize, Polynomial)]) -> Result<Ideal> {
        let g = self.gens().iter().map(|p| p.substitute(bindings)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.ctx(), g)
    }

    /// Moves `pt` to the origin.
    pub fn translate(&self, pt: &RationalPoint) -> Ideal {
        Ideal::raw(self.ctx(), self.gens().iter().map(|g| g.translate(pt)).collect())
    }

    /// Whether every generator vanishes at `pt`.
    pub fn vanishes_at(&self, pt: &RationalPoint) -> Result<bool> {
        for g in self.gens() {
            if !g.eval_at(pt)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `I ∩ J` via a tag variable `s`: eliminate `s` from `s·I + (1-s)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ctx(self.ctx(), other.ctx()) {
            return Err(Error::ContextMismatch);
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(self.ctx()));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let ctx = self.ctx();
        let ext = ctx.extended(&["s"]);
        let sv = ext.len() - 1;
        let s = Polynomial::var(&ext, sv);
        let one_minus_s = &Polynomial::one(&ext) - &s;
        let mut gens: Vec<Polynomial> = self.gens().iter().map(|g| &s * &g.lift_to(&ext)).collect();
        gens.extend(other.gens().iter().map(|g| &one_minus_s * &g.lift_to(&ext)));
        let gb = groebner::groebner(&ext, &gens, &TermOrder::block(vec![sv], ext.len()))?;
        let kept: Vec<Polynomial> = gb.iter().filter_map(|g| g.restrict_to(ctx)).collect();
        Ideal::new(ctx, kept)
    }

    /// `I : (h)`.
    pub fn quotient_by(&self, h: &Polynomial) -> Result<Ideal> {
        if h.is_zero() {
            return Ok(Ideal::unit(self.ctx()));
        }
        if h.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::raw(self.ctx(), vec![h.clone()]);
        let inter = self.intersect(&principal)?;
        let gens = inter
            .gens()
            .iter()
            .map(|g| g.div_exact(h).expect("elements of (h) are multiples of h"))
            .collect();
        let q = Ideal::new(self.ctx(), gens)?;
        Ok(Ideal::from_grevlex_basis(self.ctx(), (*q.key()?).clone()))
    }

    /// `I : J = ∩_j (I : j)`.
    pub fn quotient(&self, j: &Ideal) -> Result<Ideal> {
        if !same_ctx(self.ctx(), j.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut acc: Option<Ideal> = None;
        for g in j.gens() {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        match acc {
            None => Ok(Ideal::unit(self.ctx())),
            Some(a) => Ok(Ideal::from_grevlex_basis(self.ctx(), (*a.key()?).clone())),
        }
    }

    /// `I : J^∞` by iterated quotients. The index is the least `k` with
    /// `I : J^k = I : J^(k+1)`.
    pub fn saturate(&self, j: &Ideal) -> Result<(Ideal, usize)> {
        self.saturate_with(|cur| cur.quotient(j))
    }

    pub fn saturate_by(&self, h: &Polynomial) -> Result<(Ideal, usize)> {
        self.saturate_with(|cur| cur.quotient_by(h))
    }

    fn saturate_with(&self, step: impl Fn(&Ideal) -> Result<Ideal>) -> Result<(Ideal, usize)> {
        let mut cur = Ideal::from_grevlex_basis(self.ctx(), (*self.key()?).clone());
        let mut k = 0;
        loop {
            if cur.is_unit()? {
                return Ok((cur, k));
            }
            let next = step(&cur)?;
            if next.key()? == cur.key()? {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `I ∩ k[keep]`, returned in the same context.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let n = self.ctx().len();
        let elim: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        if elim.is_empty() {
            return Ok(self.clone());
        }
        if elim.len() == n {
            return Ok(if self.is_unit()? { Ideal::unit(self.ctx()) } else { Ideal::zero(self.ctx()) });
        }
        let gb = self.gb(&TermOrder::block(elim.clone(), n))?;
        let kept: Vec<Polynomial> =
            gb.iter().filter(|g| g.support().iter().all(|v| !elim.contains(v))).cloned().collect();
        Ideal::new(self.ctx(), kept)
    }

    pub fn eliminate_named(&self, keep: &[&str]) -> Result<Ideal> {
        let idx = keep.iter().map(|n| self.ctx().var_index(n)).collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// Intersection with the subring of `target`'s variables, which must be
    /// a prefix of ours, expressed in `target`.
    pub fn restrict_to(&self, target: &Arc<VarContext>) -> Result<Ideal> {
        let k = target.len();
        let keep: Vec<usize> = (0..k).collect();
        let e = self.eliminate(&keep)?;
        let gens = e.gens().iter().map(|g| g.restrict_to(target).expect("eliminated")).collect();
        Ideal::new(target, gens)
    }

    pub fn krull_dim(&self) -> Result<KrullDim> {
        Ok(match self.independent_set()? {
            None => KrullDim::Empty,
            Some(u) => KrullDim::Dim(u.len()),
        })
    }

    /// A maximum set of variables independent modulo the leading-term
    /// ideal (the first such set in lexicographic order of bitmasks).
    /// `None` for the unit ideal.
    pub fn independent_set(&self) -> Result<Option<Vec<usize>>> {
        let n = self.ctx().len();
        assert!(n < 64, "too many variables");
        if self.is_zero_ideal() {
            return Ok(Some((0..n).collect()));
        }
        if self.is_unit()? {
            return Ok(None);
        }
        let gb = self.key()?;
        let supports: Vec<u64> = gb
            .iter()
            .map(|g| {
                let lm = &g.leading().expect("nonzero").0;
                (0..n).filter(|&v| lm.exp(v) > 0).fold(0u64, |m, v| m | (1 << v))
            })
            .collect();
        let mut best: u64 = 0;
        for set in 0u64..(1u64 << n) {
            if set.count_ones() > best.count_ones() && supports.iter().all(|s| s & !set != 0) {
                best = set;
            }
        }
        Ok(Some((0..n).filter(|v| best & (1 << v) != 0).collect()))
    }

    pub fn vspace_dim(&self) -> Result<VectorDim> {
        if self.is_zero_ideal() {
            return Ok(VectorDim::Infinite);
        }
        if self.is_unit()? {
            return Ok(VectorDim::Finite(0));
        }
        let n = self.ctx().len();
        let gb = self.key()?;
        let leads: Vec<&crate::poly::Monomial> = gb.iter().map(|g| &g.leading().expect("nonzero").0).collect();
        for v in 0..n {
            let pure = leads.iter().any(|m| m.exp(v) > 0 && m.degree() == m.exp(v));
            if !pure {
                return Ok(VectorDim::Infinite);
            }
        }
        let mut exps = vec![0u32; n];
        Ok(VectorDim::Finite(count_standard(&leads, &mut exps, 0)))
    }

    /// Whether `V(I)` has dimension at most zero at `pt` (or misses it).
    /// Positive-dimensional components through `pt` survive `I : m_p^∞`
    /// and force every element of it to vanish at `pt`.
    pub fn at_most_isolated_at(&self, pt: &RationalPoint) -> Result<bool> {
        if pt.len() != self.ctx().len() {
            return Err(Error::Arity { expected: self.ctx().len(), got: pt.len() });
        }
        if self.is_unit()? || !self.vanishes_at(pt)? {
            return Ok(true);
        }
        let (away, _) = self.saturate(&Ideal::maximal_at(self.ctx(), pt))?;
        for g in away.key()?.iter() {
            if !g.eval_at(pt)?.is_zero() {
                return Ok(true);
            }
        }
        away.is_unit()
    }

    /// Dimension of `V(I)` at `pt`, computed as the dimension of the
    /// tangent cone: the fibre at `u = 0` of `I(pt + u·z) : u^∞`.
    pub fn local_dim(&self, pt: &RationalPoint) -> Result<KrullDim> {
        let n = self.ctx().len();
        if pt.len() != n {
            return Err(Error::Arity { expected: n, got: pt.len() });
        }
        if self.is_unit()? || !self.vanishes_at(pt)? {
            return Ok(KrullDim::Empty);
        }
        let ext = self.ctx().extended(&["u"]);
        let u = Polynomial::var(&ext, n);
        let bindings: Vec<(usize, Polynomial)> = (0..n)
            .map(|i| {
                let shifted = &(&u * &Polynomial::var(&ext, i)) + &Polynomial::constant(&ext, pt.coords()[i].clone());
                (i, shifted)
            })
            .collect();
        let gens = self
            .gens()
            .iter()
            .map(|g| g.lift_to(&ext).substitute(&bindings))
            .collect::<Result<Vec<_>>>()?;
        let (family, _) = Ideal::new(&ext, gens)?.saturate_by(&u)?;
        family.with(&[u])?.krull_dim()
    }

    /// Length of the local ring `O_p/I` at an isolated point of `V(I)`.
    ///
    /// `J = I : m_p^∞` is the part of `I` away from `p`; any `h ∈ J` with
    /// `h(p) ≠ 0` then cuts out the `p`-primary component as `I : h^∞`,
    /// which equals `I : J^∞`.
    pub fn local_multiplicity(&self, pt: &RationalPoint) -> Result<u64> {
        if pt.len() != self.ctx().len() {
            return Err(Error::Arity { expected: self.ctx().len(), got: pt.len() });
        }
        if self.is_unit()? || !self.vanishes_at(pt)? {
            return Ok(0);
        }
        if let VectorDim::Finite(_) = self.vspace_dim()? {
            return self.local_length_by_truncation(pt);
        }
        let m = Ideal::maximal_at(self.ctx(), pt);
        let (away, _) = self.saturate(&m)?;
        let local = if away.is_unit()? {
            self.clone()
        } else {
            let mut h = None;
            for g in away.gens() {
                if !g.eval_at(pt)?.is_zero() {
                    h = Some(g.clone());
                    break;
                }
            }
            let h = h.ok_or(Error::NotZeroDimensional)?;
            self.saturate_by(&h)?.0
        };
        match local.vspace_dim()? {
            VectorDim::Finite(d) => Ok(d),
            VectorDim::Infinite => Err(Error::NotZeroDimensional),
        }
    }

    /// `dim k[z]/(I + m^N)` with `pt` moved to the origin, for growing `N`.
    /// Once two consecutive values agree, `m^N ⊆ I` locally (Nakayama), so
    /// the value is the local length. The sequence increases strictly until
    /// then, so this stops by `N = length + 1`. Needs `pt` isolated.
    fn local_length_by_truncation(&self, pt: &RationalPoint) -> Result<u64> {
        let moved = self.translate(pt);
        let n = self.ctx().len();
        if n == 0 {
            return Ok(1);
        }
        let mut prev = 0;
        for order in 1u32.. {
            let mut gens = moved.gens().to_vec();
            let mut exps = vec![0u32; n];
            push_monomials_of_degree(self.ctx(), order, 0, &mut exps, &mut gens);
            let len = match Ideal::new(self.ctx(), gens)?.vspace_dim()? {
                VectorDim::Finite(d) => d,
                VectorDim::Infinite => unreachable!("m^N is in the ideal"),
            };
            if len == prev {
                return Ok(len);
            }
            prev = len;
        }
        unreachable!()
    }

    /// All rational points of a zero-dimensional ideal, plus a flag telling
    /// whether every complex point is rational.
    pub fn rational_points(&self) -> Result<(Vec<RationalPoint>, bool)> {
        points::rational_points(self)
    }

    /// Evaluates the generators at rational values of every variable.
    pub fn contains_point(&self, values: &[BigRational]) -> Result<bool> {
        for g in self.gens() {
            if !g.eval(values)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn push_monomials_of_degree(ctx: &Arc<VarContext>, left: u32, v: usize, exps: &mut Vec<u32>, out: &mut Vec<Polynomial>) {
    if v + 1 == exps.len() {
        exps[v] = left;
        let one = BigRational::from_integer(1.into());
        out.push(Polynomial::from_terms(ctx, vec![(crate::poly::Monomial::from_exps(exps), one)]));
        exps[v] = 0;
        return;
    }
    for e in 0..=left {
        exps[v] = e;
        push_monomials_of_degree(ctx, left - e, v + 1, exps, out);
    }
    exps[v] = 0;
}

fn count_standard(leads: &[&crate::poly::Monomial], exps: &mut Vec<u32>, v: usize) -> u64 {
    if v == exps.len() {
        return 1;
    }
    let mut total = 0;
    loop {
        let standard = !leads.iter().any(|m| m.exps().iter().zip(exps.iter()).all(|(a, b)| a <= b));
        if !standard {
            break;
        }
        total += count_standard(leads, exps, v + 1);
        exps[v] += 1;
    }
    exps[v] = 0;
    total
}

#[cfg(test)]
mod tests;
