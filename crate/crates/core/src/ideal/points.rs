use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ideal, KrullDim, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalPoint};

/// Candidate divisors above this bound are not enumerated.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

fn horner(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Distinct rational roots of `Σ coeffs[i]·x^i`, found with the rational
/// root test. Returns `None` when the coefficients are too large to
/// enumerate candidate divisors.
pub fn rational_roots(coeffs: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut c: Vec<BigInt> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).expect("nonzero polynomial");
    if shift > 0 {
        roots.push(BigRational::zero());
        c.drain(..shift);
    }
    if c.len() > 1 {
        let ps = divisors(&c[0])?;
        let qs = divisors(c.last().expect("nonempty"))?;
        let mut seen = std::collections::BTreeSet::new();
        for q in &qs {
            for p in &ps {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = BigRational::new(p * sign, q.clone());
                    if horner(&c, &r).is_zero() && seen.insert(r.clone()) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Coefficients of a polynomial involving only variable `v`, as integers.
fn univariate(p: &Polynomial, v: usize) -> Vec<BigInt> {
    let terms = p.primitive_integer_terms();
    let deg = p.degree_in(v) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in terms {
        out[m.exp(v) as usize] = c;
    }
    out
}

/// Degree of the squarefree part, via `deg p - deg gcd(p, p')`.
fn squarefree_degree(p: &Polynomial, v: usize) -> Result<u32> {
    let dp = p.partial_derivative(v);
    if dp.is_zero() {
        return Ok(0);
    }
    let ctx = p.ctx();
    let g = Ideal::new(ctx, vec![p.clone(), dp])?;
    let gb = g.groebner_basis(MonomialOrder::Lex)?;
    let gcd_deg = gb.iter().map(|q| q.degree_in(v)).min().unwrap_or(0);
    Ok(p.degree_in(v) - gcd_deg)
}

pub(super) fn rational_points(ideal: &Ideal) -> Result<(Vec<RationalPoint>, bool)> {
    match ideal.krull_dim()? {
        KrullDim::Empty => return Ok((Vec::new(), true)),
        KrullDim::Dim(0) => {}
        KrullDim::Dim(_) => return Err(Error::NotZeroDimensional),
    }
    let n = ideal.ctx().len();
    let mut values: Vec<Option<BigRational>> = vec![None; n];
    let mut out = Vec::new();
    let mut complete = true;
    solve(ideal, n, &mut values, &mut out, &mut complete)?;
    out.sort_by(|a: &RationalPoint, b| a.coords().cmp(b.coords()));
    Ok((out, complete))
}

/// Solves for variables `0..upto` of an ideal in which the later ones have
/// already been substituted.
fn solve(
    ideal: &Ideal,
    upto: usize,
    values: &mut Vec<Option<BigRational>>,
    out: &mut Vec<RationalPoint>,
    complete: &mut bool,
) -> Result<()> {
    if ideal.is_unit()? {
        return Ok(());
    }
    if upto == 0 {
        let coords = values.iter().map(|v| v.clone().expect("all assigned")).collect();
        out.push(RationalPoint::new(coords));
        return Ok(());
    }
    let v = upto - 1;
    let gb = ideal.groebner_basis(MonomialOrder::Lex)?;
    let uni = gb
        .iter()
        .filter(|g| g.support().iter().all(|&u| u == v))
        .min_by_key(|g| g.degree_in(v))
        .cloned();
    let Some(uni) = uni else {
        return Err(Error::NotZeroDimensional);
    };
    let roots = match rational_roots(&univariate(&uni, v)) {
        Some(r) => r,
        None => {
            *complete = false;
            return Ok(());
        }
    };
    if roots.len() as u32 != squarefree_degree(&uni, v)? {
        *complete = false;
    }
    let ctx = ideal.ctx();
    for r in roots {
        let sub = ideal.substitute(&[(v, Polynomial::constant(ctx, r.clone()))])?;
        values[v] = Some(r);
        solve(&sub, v, values, out, complete)?;
    }
    values[v] = None;
    Ok(())
}
