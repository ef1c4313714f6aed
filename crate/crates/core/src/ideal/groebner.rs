//! Buchberger's algorithm with the Gebauer–Möller pair criteria. Pairs are
//! picked by sugar under grevlex and by smallest lcm under the other
//! orders. Reduction is fraction-free over ℤ; the final basis is converted
//! to monic rational polynomials.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::order::TermOrder;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarContext};

pub const DEFAULT_BUDGET: u64 = 200_000;

static BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BUDGET);

/// Maximum number of S-pairs a single Gröbner computation may reduce.
pub fn budget() -> u64 {
    BUDGET.load(AtomicOrdering::Relaxed)
}

pub fn set_budget(pairs: u64) {
    BUDGET.store(pairs.max(1), AtomicOrdering::Relaxed);
}

type Terms = Vec<(Monomial, BigInt)>;

struct Element {
    terms: Terms,
    sugar: u32,
}

impl Element {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn to_terms(p: &Polynomial, ord: &TermOrder) -> Terms {
    let mut t = p.primitive_integer_terms();
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    make_primitive(&mut t);
    t
}

fn make_primitive(t: &mut Terms) {
    if t.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in t.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if t[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for x in t.iter_mut() {
            x.1 = &x.1 / &g;
        }
    }
}

/// `a*p - b*m*q`, both inputs sorted descending in `ord`.
fn combine(p: &[(Monomial, BigInt)], a: &BigInt, q: &[(Monomial, BigInt)], m: &Monomial, b: &BigInt, ord: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    let scaled = |c: &BigInt| if a_one { c.clone() } else { c * a };
    while i < p.len() && j < q.len() {
        let qm = q[j].0.mul(m);
        match ord.cmp(&p[i].0, &qm) {
            Ordering::Greater => {
                out.push((p[i].0.clone(), scaled(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((qm, -(&q[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = scaled(&p[i].1) - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((qm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for t in &p[i..] {
        out.push((t.0.clone(), scaled(&t.1)));
    }
    for t in &q[j..] {
        out.push((t.0.mul(m), -(&t.1 * b)));
    }
    out
}

fn content_bits(t: &Terms) -> u64 {
    t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

/// Fraction-free top reduction of `p` by the active elements: afterwards
/// no active leading monomial divides the leading monomial. The result is
/// primitive, so it is a nonzero scalar multiple of a true remainder.
fn reduce(mut p: Terms, basis: &[Element], active: &[usize], ord: &TermOrder) -> Terms {
    let mut steps = 0u32;
    while !p.is_empty() {
        let lm = &p[0].0;
        let Some(e) = active.iter().map(|&k| &basis[k]).find(|e| e.lm().divides(lm)) else {
            break;
        };
        let mult = lm.div(e.lm()).expect("divisibility checked");
        let g = p[0].1.gcd(e.lc());
        let a = e.lc() / &g;
        let b = &p[0].1 / &g;
        p = combine(&p[1..], &a, &e.terms[1..], &mult, &b, ord);
        steps += 1;
        if steps.is_multiple_of(4) || content_bits(&p) > 128 {
            make_primitive(&mut p);
        }
    }
    make_primitive(&mut p);
    p
}

fn s_poly(f: &Element, g: &Element, lcm: &Monomial, ord: &TermOrder) -> Terms {
    let mf = lcm.div(f.lm()).expect("lcm");
    let mg = lcm.div(g.lm()).expect("lcm");
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let fpart: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c * &a)).collect();
    combine(&fpart, &BigInt::one(), &g.terms[1..], &mg, &b, ord)
}

struct Engine<'o> {
    ord: &'o TermOrder,
    basis: Vec<Element>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    processed: u64,
    limit: u64,
}

impl Engine<'_> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lm().lcm(b.lm());
        let sa = a.sugar + lcm.degree() - a.lm().degree();
        let sb = b.sugar + lcm.degree() - b.lm().degree();
        Pair { i, j, lcm, sugar: sa.max(sb) }
    }

    /// Gebauer–Möller update after adding element `h`.
    fn insert(&mut self, terms: Terms, sugar: u32) {
        let h = self.basis.len();
        self.basis.push(Element { terms, sugar });
        let hlm = self.basis[h].lm().clone();

        let mut cands: Vec<Pair> = self.active.iter().map(|&g| self.make_pair(g, h)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let coprime = self.basis[p.i].lm().is_coprime(&hlm);
            if coprime
                || (!cands.iter().any(|q| q.lcm.divides(&p.lcm)) && !kept.iter().any(|q| q.lcm.divides(&p.lcm)))
            {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.basis[p.i].lm().is_coprime(&hlm));

        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = basis[p.i].lm().lcm(&hlm);
            let l2 = basis[p.j].lm().lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !hlm.divides(basis[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let normal = !matches!(ord, TermOrder::Grevlex);
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = if normal {
                ord.cmp(&a.lcm, &b.lcm) == Ordering::Less
            } else {
                a.sugar < b.sugar || (a.sugar == b.sugar && ord.cmp(&a.lcm, &b.lcm) == Ordering::Less)
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn has_unit(&self) -> bool {
        self.active.iter().any(|&k| self.basis[k].lm().is_one())
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.select() {
            if self.has_unit() {
                return Ok(());
            }
            self.processed += 1;
            if self.processed > self.limit {
                return Err(Error::BudgetExceeded { pairs: self.processed - 1 });
            }
            let s = s_poly(&self.basis[p.i], &self.basis[p.j], &p.lcm, self.ord);
            let r = reduce(s, &self.basis, &self.active, self.ord);
            if !r.is_empty() {
                let r = reduce_tail(r, &self.basis, &self.active, self.ord);
                self.insert(r, p.sugar);
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis with monic rational elements, sorted by
/// increasing leading monomial.
pub(crate) fn groebner(ctx: &Arc<VarContext>, gens: &[Polynomial], ord: &TermOrder) -> Result<Vec<Polynomial>> {
    let mut input: Vec<Terms> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_terms(g, ord)).collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if input.iter().any(|t| t[0].0.is_one()) {
        return Ok(vec![Polynomial::one(ctx)]);
    }
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    let mut eng = Engine { ord, basis: Vec::new(), active: Vec::new(), pairs: Vec::new(), processed: 0, limit: budget() };
    for t in input {
        let sugar = t.iter().map(|x| x.0.degree()).max().unwrap_or(0);
        eng.insert(t, sugar);
    }
    eng.run()?;
    if eng.has_unit() {
        return Ok(vec![Polynomial::one(ctx)]);
    }

    // Minimal basis, then inter-reduce.
    let mut mins: Vec<usize> = eng.active.clone();
    mins.sort_by(|&a, &b| ord.cmp(eng.basis[a].lm(), eng.basis[b].lm()));
    let mut minimal: Vec<usize> = Vec::new();
    for &k in &mins {
        if !minimal.iter().any(|&m| eng.basis[m].lm().divides(eng.basis[k].lm())) {
            minimal.push(k);
        }
    }
    let mut out_terms: Vec<Terms> = Vec::with_capacity(minimal.len());
    for (pos, &k) in minimal.iter().enumerate() {
        let others: Vec<usize> = minimal.iter().enumerate().filter(|(q, _)| *q != pos).map(|(_, &m)| m).collect();
        let full = reduce_tail(eng.basis[k].terms.clone(), &eng.basis, &others, ord);
        out_terms.push(full);
    }
    let mut out: Vec<Polynomial> = out_terms
        .into_iter()
        .map(|t| {
            let lc = BigRational::from_integer(t[0].1.clone());
            let terms = t.into_iter().map(|(m, c)| (m, BigRational::from_integer(c) / &lc)).collect();
            Polynomial::from_terms(ctx, terms)
        })
        .collect();
    out.sort_by(|a, b| ord.cmp(&leading_monomial(a, ord), &leading_monomial(b, ord)));
    Ok(out)
}

/// Reduces all non-leading terms of `p`, keeping the leading term.
fn reduce_tail(mut p: Terms, basis: &[Element], active: &[usize], ord: &TermOrder) -> Terms {
    let mut i = 1;
    let mut steps = 0u32;
    while i < p.len() {
        let Some(e) = active.iter().map(|&k| &basis[k]).find(|e| e.lm().divides(&p[i].0)) else {
            i += 1;
            continue;
        };
        let mult = p[i].0.div(e.lm()).expect("divisibility checked");
        let g = p[i].1.gcd(e.lc());
        let a = e.lc() / &g;
        let b = &p[i].1 / &g;
        let tail = combine(&p[i + 1..], &a, &e.terms[1..], &mult, &b, ord);
        p.truncate(i);
        if !a.is_one() {
            for t in p.iter_mut() {
                t.1 *= &a;
            }
        }
        p.extend(tail);
        steps += 1;
        if steps.is_multiple_of(4) || content_bits(&p) > 128 {
            make_primitive(&mut p);
        }
    }
    make_primitive(&mut p);
    p
}

pub(crate) fn leading_monomial(p: &Polynomial, ord: &TermOrder) -> Monomial {
    p.terms()
        .iter()
        .map(|t| &t.0)
        .max_by(|a, b| ord.cmp(a, b))
        .expect("nonzero polynomial")
        .clone()
}

/// Exact normal form of `p` modulo a reduced basis for `ord`.
pub(crate) fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &TermOrder) -> Polynomial {
    if p.is_zero() || basis.is_empty() {
        return p.clone();
    }
    let sorted = |q: &Polynomial| {
        let mut t: Vec<(Monomial, BigRational)> = q.terms().to_vec();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    };
    let reducers: Vec<Vec<(Monomial, BigRational)>> = basis.iter().map(sorted).collect();
    let mut cur = sorted(p);
    let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
    while !cur.is_empty() {
        let (lm, lc) = cur[0].clone();
        match reducers.iter().find(|r| r[0].0.divides(&lm)) {
            Some(r) => {
                let mult = lm.div(&r[0].0).expect("divides");
                let c = &lc / &r[0].1;
                let mut out = Vec::with_capacity(cur.len() + r.len());
                let (mut i, mut j) = (1, 1);
                while i < cur.len() && j < r.len() {
                    let rm = r[j].0.mul(&mult);
                    match ord.cmp(&cur[i].0, &rm) {
                        Ordering::Greater => {
                            out.push(cur[i].clone());
                            i += 1;
                        }
                        Ordering::Less => {
                            out.push((rm, -(&r[j].1 * &c)));
                            j += 1;
                        }
                        Ordering::Equal => {
                            let v = &cur[i].1 - &r[j].1 * &c;
                            if !v.is_zero() {
                                out.push((rm, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend(cur[i..].iter().cloned());
                for t in &r[j..] {
                    out.push((t.0.mul(&mult), -(&t.1 * &c)));
                }
                cur = out;
            }
            None => rem.push(cur.remove(0)),
        }
    }
    Polynomial::from_terms(p.ctx(), rem)
}
