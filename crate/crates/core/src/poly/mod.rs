//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use monomial::Monomial;
pub use parse::parse_poly;

/// Ordered, duplicate-free list of variable names.
///
/// The first `ambient_len` names are the ambient coordinates. A doubled
/// context appends one cotangent coordinate per ambient coordinate; helper
/// variables used internally (tags, Rabinowitsch variables) come last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    ambient: usize,
    cotangent: bool,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Arc<VarContext>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Self::check_names(&names)?;
        let ambient = names.len();
        Ok(Arc::new(VarContext { names, ambient, cotangent: false }))
    }

    fn check_names(names: &[String]) -> Result<()> {
        if names.is_empty() {
            return Err(Error::InvalidContext("no variables declared".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !valid_identifier(n) {
                return Err(Error::InvalidContext(format!("`{n}` is not a valid identifier")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(())
    }

    /// Ambient coordinates followed by cotangent coordinates `w0..wn`.
    ///
    /// Falls back to `_w0..` when an ambient name already starts with `w`
    /// followed by digits.
    pub fn doubled(&self) -> Result<Arc<VarContext>> {
        if self.cotangent || self.names.len() != self.ambient {
            return Err(Error::InvalidContext("context is already extended".into()));
        }
        let n = self.ambient;
        for prefix in ["w", "_w", "__w"] {
            let extra: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
            if extra.iter().all(|e| !self.names.contains(e)) {
                let mut names = self.names.clone();
                names.extend(extra);
                return Ok(Arc::new(VarContext { names, ambient: n, cotangent: true }));
            }
        }
        Err(Error::InvalidContext("cannot name cotangent coordinates".into()))
    }

    /// This context with fresh helper variables appended. Names are made
    /// unique by prefixing underscores.
    pub fn extended(&self, extra: &[&str]) -> Arc<VarContext> {
        let mut names = self.names.clone();
        for e in extra {
            let mut name = format!("_{e}");
            while names.contains(&name) {
                name.insert(0, '_');
            }
            names.push(name);
        }
        Arc::new(VarContext { names, ambient: self.ambient, cotangent: self.cotangent })
    }

    /// Context consisting of the ambient coordinates only.
    pub fn ambient_context(&self) -> Arc<VarContext> {
        Arc::new(VarContext {
            names: self.names[..self.ambient].to_vec(),
            ambient: self.ambient,
            cotangent: false,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient
    }

    pub fn has_cotangent(&self) -> bool {
        self.cotangent
    }

    /// Index of the cotangent coordinate paired with ambient coordinate `i`.
    pub fn cotangent_index(&self, i: usize) -> Option<usize> {
        (self.cotangent && i < self.ambient).then_some(self.ambient + i)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

pub(crate) fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A point with one exact rational coordinate per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint { coords: vec![BigRational::zero(); n] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalPoint { coords: v.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Polynomial over ℚ. Terms are kept sorted by descending grevlex order
/// with no zero coefficients, so structural equality is mathematical
/// equality.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<VarContext>,
    terms: Vec<(Monomial, BigRational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx: ctx.clone(), terms: vec![(Monomial::one(ctx.len()), c)] }
    }

    pub fn from_int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, rat(c))
    }

    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Self {
        assert!(i < ctx.len(), "variable index out of range");
        Polynomial { ctx: ctx.clone(), terms: vec![(Monomial::var(ctx.len(), i, 1), BigRational::one())] }
    }

    pub fn var_named(ctx: &Arc<VarContext>, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.var_index(name)?))
    }

    /// `Σ c_i z_i` over the first `coeffs.len()` variables.
    pub fn linear_form(ctx: &Arc<VarContext>, coeffs: &[BigRational]) -> Self {
        let n = ctx.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(n, i, 1), c.clone()))
            .collect();
        Self::from_terms(ctx, terms)
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ctx: &Arc<VarContext>, mut terms: Vec<(Monomial, BigRational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ctx.len());
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Polynomial { ctx: ctx.clone(), terms: out }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigRational::zero(),
        }
    }

    /// Leading term with respect to grevlex.
    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_ctx(&self, other: &Polynomial) {
        assert!(same_ctx(&self.ctx, &other.ctx), "polynomials from different variable contexts");
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.check_ctx(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { ctx: self.ctx.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        self.check_ctx(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|e| *e += &c).or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_terms(&self.ctx, terms)
    }

    /// Formal partial derivative with respect to variable index `v`.
    pub fn partial_derivative(&self, v: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut dm = m.clone();
                dm.set_exp(v, e - 1);
                terms.push((dm, c * rat(e as i64)));
            }
        }
        Self::from_terms(&self.ctx, terms)
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial_derivative(self.ctx.var_index(name)?))
    }

    /// Gradient with respect to the ambient coordinates.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ctx.ambient_len()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Simultaneous substitution `v ↦ q_v`. Bound polynomials must share the
    /// context of `self`.
    pub fn substitute(&self, bindings: &[(usize, Polynomial)]) -> Result<Polynomial> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let n = self.ctx.len();
        let mut image: Vec<Option<&Polynomial>> = vec![None; n];
        for (v, q) in bindings {
            if *v >= n {
                return Err(Error::Arity { expected: n, got: *v + 1 });
            }
            if !same_ctx(&self.ctx, &q.ctx) {
                return Err(Error::ContextMismatch);
            }
            image[*v] = Some(q);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(n);
            let mut factor = Polynomial::constant(&self.ctx, c.clone());
            for v in 0..n {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match image[v] {
                    None => kept.set_exp(v, e),
                    Some(q) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| q.pow(e)).clone();
                        factor = &factor * &pw;
                    }
                }
            }
            for (fm, fc) in factor.terms {
                let key = fm.mul(&kept);
                acc.entry(key).and_modify(|e| *e += &fc).or_insert(fc);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::from_terms(&self.ctx, terms))
    }

    pub fn substitute_named(&self, bindings: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let idx: Result<Vec<(usize, Polynomial)>> =
            bindings.iter().map(|(n, q)| Ok((self.ctx.var_index(n)?, q.clone()))).collect();
        self.substitute(&idx?)
    }

    /// Substitutes constants for the leading coordinates.
    pub fn eval_partial(&self, values: &[BigRational]) -> Polynomial {
        let bindings: Vec<(usize, Polynomial)> = values
            .iter()
            .enumerate()
            .map(|(i, c)| (i, Polynomial::constant(&self.ctx, c.clone())))
            .collect();
        self.substitute(&bindings).expect("constant bindings are always valid")
    }

    /// Value at a point giving every variable of the context.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.ctx.len() {
            return Err(Error::Arity { expected: self.ctx.len(), got: point.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Value at a point of the ambient coordinates; the polynomial must not
    /// involve other variables.
    pub fn eval_at(&self, pt: &RationalPoint) -> Result<BigRational> {
        let n = self.ctx.len();
        if pt.len() > n {
            return Err(Error::Arity { expected: n, got: pt.len() });
        }
        let reduced = self.eval_partial(pt.coords());
        if !reduced.is_constant() {
            return Err(Error::Arity { expected: n, got: pt.len() });
        }
        Ok(reduced.constant_term())
    }

    /// `p(z + a)`: moves the point `a` (leading coordinates) to the origin.
    pub fn translate(&self, pt: &RationalPoint) -> Polynomial {
        let bindings: Vec<(usize, Polynomial)> = pt
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, &Polynomial::var(&self.ctx, i) + &Polynomial::constant(&self.ctx, c.clone())))
            .collect();
        self.substitute(&bindings).expect("translation bindings are valid")
    }

    /// Lowest total degree of a term after translating `pt` to the origin.
    pub fn vanishing_order(&self, pt: &RationalPoint) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if pt.len() > self.ctx.len() {
            return Err(Error::Arity { expected: self.ctx.len(), got: pt.len() });
        }
        let t = self.translate(pt);
        Ok(t.terms.iter().map(|(m, _)| m.degree()).min().unwrap_or(0))
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// `map[i]`.
    pub fn embed(&self, target: &Arc<VarContext>, map: &[usize]) -> Polynomial {
        let n = target.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &j) in map.iter().enumerate() {
                    let x = m.exp(i);
                    if x > 0 {
                        e.set_exp(j, e.exp(j) + x);
                    }
                }
                (e, c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Embeds into a context whose first variables coincide with ours.
    pub fn lift_to(&self, target: &Arc<VarContext>) -> Polynomial {
        let map: Vec<usize> = (0..self.ctx.len()).collect();
        self.embed(target, &map)
    }

    /// Restricts to a context consisting of our leading variables. Fails
    /// when a dropped variable occurs.
    pub fn restrict_to(&self, target: &Arc<VarContext>) -> Option<Polynomial> {
        let k = target.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if (k..self.ctx.len()).any(|v| m.exp(v) > 0) {
                return None;
            }
            terms.push((m.truncate(k), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Content-free integer multiple: coefficients are coprime integers and
    /// the leading coefficient is positive.
    pub fn primitive_integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        if self.terms.is_empty() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<(Monomial, BigInt)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom()))).collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if ints[0].1.is_negative() {
            g = -g;
        }
        for t in &mut ints {
            t.1 = &t.1 / &g;
        }
        ints
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        let terms = self
            .primitive_integer_terms()
            .into_iter()
            .map(|(m, c)| (m, BigRational::from_integer(c)))
            .collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check_ctx(d);
        let (lm, lc) = d.terms.first()?;
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first().cloned() {
            let qm = m.div(lm)?;
            let qc = &c / lc;
            r = &r - &d.mul_term(&qm, &qc);
            q.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ctx, q))
    }

    /// Rewrites the polynomial through a coefficient map; used when moving
    /// between equal contexts held in different allocations.
    pub fn with_ctx(&self, ctx: &Arc<VarContext>) -> Polynomial {
        assert_eq!(**ctx, *self.ctx);
        Polynomial { ctx: ctx.clone(), terms: self.terms.clone() }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ctx: &VarContext, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in 0..m.len() {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ctx.name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ctx, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(["x", "y", "t"]).unwrap()
    }

    #[test]
    fn context_rejects_duplicates_and_bad_names() {
        assert!(VarContext::new(["x", "x"]).is_err());
        assert!(VarContext::new(["1x"]).is_err());
        assert!(VarContext::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn doubled_context_names_cotangent_block() {
        let d = ctx().doubled().unwrap();
        assert_eq!(d.names(), ["x", "y", "t", "w0", "w1", "w2"]);
        assert_eq!(d.cotangent_index(2), Some(5));
        let odd = VarContext::new(["w0", "y"]).unwrap().doubled().unwrap();
        assert_eq!(odd.names()[2], "_w0");
    }

    #[test]
    fn partial_derivatives_of_example_surface() {
        let c = ctx();
        let f = parse_poly("y*(y^2 - x^3 - t^2*x^2)", &c).unwrap();
        assert_eq!(f.num_terms(), 3);
        let fx = parse_poly("y*(-3*x^2 - 2*t^2*x)", &c).unwrap();
        let fy = parse_poly("3*y^2 - x^3 - t^2*x^2", &c).unwrap();
        assert_eq!(f.partial_derivative(0), fx);
        assert_eq!(f.partial_derivative_named("y").unwrap(), fy);
        assert!(parse_poly("5", &c).unwrap().partial_derivative(0).is_zero());
        assert!(f.partial_derivative_named("q").is_err());
    }

    #[test]
    fn substitution_examples() {
        let d = VarContext::new(["x", "y", "t", "w0", "w1", "w2"]).unwrap();
        let p = parse_poly("y*w2 + t*x^2*w1", &d).unwrap();
        let zero = Polynomial::zero(&d);
        let one = Polynomial::one(&d);
        let s = p.substitute(&[(4, zero.clone()), (5, one.clone())]).unwrap();
        assert_eq!(s, parse_poly("y", &d).unwrap());
        assert_eq!(p.substitute(&[]).unwrap(), p);
        let q = parse_poly("(x+t^2)*w2 + y*t*w1", &d).unwrap();
        assert_eq!(q.substitute(&[(4, zero), (5, one)]).unwrap(), parse_poly("x + t^2", &d).unwrap());
    }

    #[test]
    fn vanishing_orders() {
        let c = ctx();
        let o = RationalPoint::origin(3);
        assert_eq!(parse_poly("y^2 - x^3", &c).unwrap().vanishing_order(&o).unwrap(), 2);
        assert_eq!(parse_poly("x", &c).unwrap().vanishing_order(&o).unwrap(), 1);
        let p = RationalPoint::from_ints(&[-1, 0, 1]);
        assert_eq!(parse_poly("x + t^2", &c).unwrap().vanishing_order(&p).unwrap(), 1);
        assert_eq!(Polynomial::zero(&c).vanishing_order(&o), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let a = parse_poly("x^2 - y^2", &c).unwrap();
        let b = parse_poly("x + y", &c).unwrap();
        assert_eq!(a.div_exact(&b).unwrap(), parse_poly("x - y", &c).unwrap());
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn primitive_form_clears_denominators() {
        let c = ctx();
        let p = parse_poly("-1/2*x + 3/4*y", &c).unwrap();
        assert_eq!(p.primitive(), parse_poly("2*x - 3*y", &c).unwrap());
    }

    #[test]
    fn printing_is_canonical() {
        let c = ctx();
        let p = parse_poly("y*(y^2 - x^3 - t^2*x^2) - 3/2", &c).unwrap();
        assert_eq!(p.to_string(), "-x^2*y*t^2 - x^3*y + y^3 - 3/2");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
    }
}
