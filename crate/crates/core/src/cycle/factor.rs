//! Partial factorization: enough to split the generators that occur when
//! decomposing desk-scale curves and surfaces, not a full factorizer.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::ideal::{rational_roots, Ideal};
use crate::poly::{Monomial, Polynomial};

/// Greatest common divisor, normalized with `Polynomial::primitive`.
/// Computed as `a·b / lcm(a, b)` with the lcm generating `(a) ∩ (b)`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let ctx = a.ctx();
    if a.is_zero() {
        return Ok(b.primitive());
    }
    if b.is_zero() {
        return Ok(a.primitive());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(ctx));
    }
    if a.div_exact(b).is_some() {
        return Ok(b.primitive());
    }
    if b.div_exact(a).is_some() {
        return Ok(a.primitive());
    }
    let inter = Ideal::new(ctx, vec![a.clone()])?.intersect(&Ideal::new(ctx, vec![b.clone()])?)?;
    let key = inter.key()?;
    let lcm = &key[0];
    let g = (a * b).div_exact(lcm).expect("lcm divides the product");
    Ok(g.primitive())
}

/// Coefficients of `p` viewed as a polynomial in variable `v`.
fn coefficients_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let ctx = p.ctx();
    let mut by_deg: BTreeMap<u32, Vec<(Monomial, BigRational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut stripped = m.clone();
        stripped.set_exp(v, 0);
        by_deg.entry(m.exp(v)).or_default().push((stripped, c.clone()));
    }
    by_deg.into_values().map(|t| Polynomial::from_terms(ctx, t)).collect()
}

fn push_unique(out: &mut Vec<Polynomial>, f: Polynomial) {
    let f = f.primitive();
    if !f.is_constant() && !out.contains(&f) {
        out.push(f);
    }
}

/// Distinct non-constant factors of `g` (primitive, without multiplicity)
/// found by stripping monomial factors, rational roots of univariate
/// polynomials, squarefree splitting and content in each variable. The
/// product of the result has the same zero set as `g`.
pub fn factor_lite(g: &Polynomial) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    split(g.clone(), &mut out)?;
    Ok(out)
}

fn split(g: Polynomial, out: &mut Vec<Polynomial>) -> Result<()> {
    if g.is_constant() {
        return Ok(());
    }
    let ctx = g.ctx().clone();
    let n = ctx.len();

    let mut g = g;
    let mut mono = Monomial::one(n);
    for v in 0..n {
        let k = g.terms().iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
        if k > 0 {
            mono.set_exp(v, k);
            push_unique(out, Polynomial::var(&ctx, v));
        }
    }
    if !mono.is_one() {
        let divisor = Polynomial::from_terms(&ctx, vec![(mono, BigRational::one())]);
        g = g.div_exact(&divisor).expect("monomial content divides");
    }
    if g.is_constant() {
        return Ok(());
    }

    let support = g.support();
    if support.len() == 1 {
        let v = support[0];
        let coeffs: Vec<num_bigint::BigInt> = {
            let terms = g.primitive_integer_terms();
            let mut c = vec![num_bigint::BigInt::from(0); g.degree_in(v) as usize + 1];
            for (m, x) in terms {
                c[m.exp(v) as usize] = x;
            }
            c
        };
        if let Some(roots) = rational_roots(&coeffs) {
            let mut rest = g.clone();
            for r in roots {
                let lin = &Polynomial::var(&ctx, v) - &Polynomial::constant(&ctx, r);
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                }
                push_unique(out, lin);
            }
            if !rest.is_constant() {
                push_unique(out, rest);
            }
            return Ok(());
        }
    }

    for &v in &support {
        let h = poly_gcd(&g, &g.partial_derivative(v))?;
        if !h.is_constant() {
            let rest = g.div_exact(&h).expect("gcd divides");
            split(h, out)?;
            split(rest, out)?;
            return Ok(());
        }
    }

    for &v in &support {
        let coeffs = coefficients_in(&g, v);
        if coeffs.len() < 2 {
            continue;
        }
        let mut c = coeffs[0].clone();
        for k in &coeffs[1..] {
            c = poly_gcd(&c, k)?;
            if c.is_constant() {
                break;
            }
        }
        if !c.is_constant() {
            let rest = g.div_exact(&c).expect("content divides");
            split(c, out)?;
            split(rest, out)?;
            return Ok(());
        }
    }

    push_unique(out, g);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarContext};

    fn fl(s: &str) -> Vec<String> {
        let c = VarContext::new(["x", "y", "t"]).unwrap();
        let mut v: Vec<String> = factor_lite(&parse_poly(s, &c).unwrap()).unwrap().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn gcd_of_products() {
        let c = VarContext::new(["x", "y", "t"]).unwrap();
        let a = parse_poly("(x + t^2)*(x - y)", &c).unwrap();
        let b = parse_poly("(x + t^2)*(y + 1)", &c).unwrap();
        assert_eq!(poly_gcd(&a, &b).unwrap(), parse_poly("x + t^2", &c).unwrap());
    }

    #[test]
    fn splits_common_shapes() {
        assert_eq!(fl("x^2*(x + t^2)"), vec!["t^2 + x", "x"]);
        assert_eq!(fl("x*(3*x + 2*t^2)"), vec!["2*t^2 + 3*x", "x"]);
        assert_eq!(fl("(y - x*t)^2*(y + 1)"), vec!["x*t - y", "y + 1"]);
        assert_eq!(fl("t^2 - 1"), vec!["t + 1", "t - 1"]);
        assert_eq!(fl("y*t^2 + x*t^2"), vec!["t", "x + y"]);
        assert_eq!(fl("y^2 - x^3 - t^2*x^2"), vec!["x^2*t^2 + x^3 - y^2"]);
    }
}
