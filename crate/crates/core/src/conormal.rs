//! Conormal and relative conormal ideals in the doubled coordinates
//! `(z, w)`, graphs of differentials, and their intersections pushed back
//! down to the ambient space.

use std::fmt;
use std::sync::Arc;

use crate::cycle::gap_sheaf;
use crate::error::{Error, Result};
use crate::ideal::{Ideal, KrullDim};
use crate::poly::{Polynomial, VarContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConormalTag {
    Absolute { stratum: String },
    Relative { stratum: String, function: String },
}

impl fmt::Display for ConormalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConormalTag::Absolute { stratum } => write!(f, "T*_{stratum}"),
            ConormalTag::Relative { stratum, function } => write!(f, "T*_{{{function}|{stratum}}}"),
        }
    }
}

/// Ideal in the doubled context cutting out the closure of a (relative)
/// conormal space.
#[derive(Clone, Debug)]
pub struct ConormalIdeal {
    pub ideal: Ideal,
    pub tag: ConormalTag,
}

/// Determinant by cofactor expansion along the first row; matrices here
/// are at most a handful of rows.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    match k {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let ctx = m[0][0].ctx();
            let mut acc = Polynomial::zero(ctx);
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&sub);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn column_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero maximal minors of a matrix with `rows.len()` rows. Empty when
/// there are more rows than columns.
pub fn maximal_minors(rows: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if k == 0 || k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for cols in column_subsets(n, k) {
        let sub: Vec<Vec<Polynomial>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let d = determinant(&sub);
        if !d.is_zero() && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

fn cotangent_row(d: &Arc<VarContext>) -> Vec<Polynomial> {
    (0..d.ambient_len()).map(|i| Polynomial::var(d, d.cotangent_index(i).expect("doubled"))).collect()
}

fn lifted_gradient(h: &Polynomial, d: &Arc<VarContext>) -> Vec<Polynomial> {
    h.gradient().iter().map(|g| g.lift_to(d)).collect()
}

/// Refuses presentations whose Jacobian has rank below the codimension
/// everywhere on the closure.
fn check_presentation(amb: &Arc<VarContext>, closure: &[Polynomial]) -> Result<Ideal> {
    let base = Ideal::new(amb, closure.to_vec())?;
    if closure.is_empty() {
        return Ok(base);
    }
    if base.is_unit()? {
        return Err(Error::Presentation("closure is empty".into()));
    }
    let jac: Vec<Vec<Polynomial>> = closure.iter().map(Polynomial::gradient).collect();
    let minors = maximal_minors(&jac);
    for m in &minors {
        if !base.radical_contains(m)? {
            return Ok(base);
        }
    }
    Err(Error::Presentation(format!(
        "the Jacobian of {base} drops rank along the whole closure; give reduced complete-intersection generators"
    )))
}

/// Drops gaps that are unit or whose zero set lies inside another gap's;
/// saturating by the larger set already removes those components.
fn essential_gaps(gaps: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let mut kept: Vec<Ideal> = Vec::new();
    for g in gaps {
        if g.is_unit()? {
            continue;
        }
        let mut covered = false;
        for k in &kept {
            if g.radical_contains_ideal(k)? {
                covered = true;
                break;
            }
        }
        if covered {
            continue;
        }
        let mut next = Vec::with_capacity(kept.len() + 1);
        for k in kept {
            if !k.radical_contains_ideal(&g)? {
                next.push(k);
            }
        }
        next.push(g);
        kept = next;
    }
    Ok(kept)
}

fn saturate_all(mut i: Ideal, gaps: Vec<Ideal>) -> Result<Ideal> {
    let d = i.ctx().clone();
    for g in essential_gaps(gaps)? {
        i = gap_sheaf(&i, &g.lift_to(&d))?;
    }
    Ok(i)
}

/// Singular locus of the closure as presented: where the Jacobian of the
/// generators drops rank.
pub fn jacobian_singular_locus(closure: &[Polynomial], amb: &Arc<VarContext>) -> Result<Ideal> {
    if closure.is_empty() {
        return Ok(Ideal::unit(amb));
    }
    let jac: Vec<Vec<Polynomial>> = closure.iter().map(Polynomial::gradient).collect();
    let mut gens = closure.to_vec();
    gens.extend(maximal_minors(&jac));
    Ideal::new(amb, gens)
}

/// `closure + (c+1)-minors of [w; ∇h₁; …; ∇h_c]`, with the components over
/// every ideal in `gaps` (ambient coordinates) removed. An empty closure
/// list means the whole ambient space.
pub fn conormal_ideal(
    amb: &Arc<VarContext>,
    closure: &[Polynomial],
    gaps: &[Ideal],
    stratum: &str,
) -> Result<ConormalIdeal> {
    check_presentation(amb, closure)?;
    let d = amb.doubled()?;
    let mut rows = vec![cotangent_row(&d)];
    rows.extend(closure.iter().map(|h| lifted_gradient(h, &d)));
    let mut gens: Vec<Polynomial> = closure.iter().map(|h| h.lift_to(&d)).collect();
    gens.extend(maximal_minors(&rows));
    let mut all_gaps = gaps.to_vec();
    all_gaps.push(jacobian_singular_locus(closure, amb)?);
    let ideal = saturate_all(Ideal::new(&d, gens)?, all_gaps)?;
    Ok(ConormalIdeal { ideal, tag: ConormalTag::Absolute { stratum: stratum.to_string() } })
}

/// Whether `f` takes a single value on `V(closure)`: the image of
/// `V(closure, u - f)` in the `u`-line is then a finite set.
pub fn constant_on(closure: &Ideal, f: &Polynomial) -> Result<bool> {
    let amb = closure.ctx();
    let ext = amb.extended(&["u"]);
    let u = Polynomial::var(&ext, amb.len());
    let mut gens: Vec<Polynomial> = closure.gens().iter().map(|g| g.lift_to(&ext)).collect();
    gens.push(&u - &f.lift_to(&ext));
    let image = Ideal::new(&ext, gens)?.eliminate(&[amb.len()])?;
    Ok(!image.is_zero_ideal())
}

/// Critical locus of `f` restricted to the smooth part of the closure:
/// `closure + (c+1)-minors of [∇h₁; …; ∇h_c; ∇f]`.
pub fn restricted_critical_locus(amb: &Arc<VarContext>, closure: &[Polynomial], f: &Polynomial) -> Result<Ideal> {
    let mut rows: Vec<Vec<Polynomial>> = closure.iter().map(Polynomial::gradient).collect();
    rows.push(f.gradient());
    let mut gens = closure.to_vec();
    gens.extend(maximal_minors(&rows));
    Ideal::new(amb, gens)
}

/// `closure + (c+2)-minors of [w; ∇h₁; …; ∇h_c; ∇f]`, gap-sheafed first by
/// `gaps` and the singular locus, then by the critical locus of `f` on the
/// stratum.
pub fn relative_conormal_ideal(
    amb: &Arc<VarContext>,
    closure: &[Polynomial],
    gaps: &[Ideal],
    f: &Polynomial,
    stratum: &str,
) -> Result<ConormalIdeal> {
    let base = check_presentation(amb, closure)?;
    if constant_on(&base, f)? {
        return Err(Error::ConstantOnClosure(format!("{f} on V{base}")));
    }
    let crit = restricted_critical_locus(amb, closure, f)?;
    if base.radical_contains_ideal(&crit)? {
        return Err(Error::ConstantOnClosure(format!("{f} is critical along V{base}")));
    }
    let d = amb.doubled()?;
    let mut rows = vec![cotangent_row(&d)];
    rows.extend(closure.iter().map(|h| lifted_gradient(h, &d)));
    rows.push(lifted_gradient(f, &d));
    let mut gens: Vec<Polynomial> = closure.iter().map(|h| h.lift_to(&d)).collect();
    gens.extend(maximal_minors(&rows));
    let mut all_gaps = gaps.to_vec();
    all_gaps.push(jacobian_singular_locus(closure, amb)?);
    all_gaps.push(crit);
    let ideal = saturate_all(Ideal::new(&d, gens)?, all_gaps)?;
    Ok(ConormalIdeal {
        ideal,
        tag: ConormalTag::Relative { stratum: stratum.to_string(), function: f.to_string() },
    })
}

/// `(w_i - ∂g/∂z_i)` in the doubled context.
pub fn im_d(g: &Polynomial) -> Result<Ideal> {
    let d = g.ctx().doubled()?;
    let gens = g
        .gradient()
        .iter()
        .enumerate()
        .map(|(i, dg)| &Polynomial::var(&d, d.cotangent_index(i).expect("doubled")) - &dg.lift_to(&d))
        .collect();
    Ideal::new(&d, gens)
}

/// Substitutes `w_i ↦ ∂g/∂z_i` into the generators and reads the result in
/// the ambient coordinates; this generates `π(V(C) ∩ im dg)`.
pub fn intersect_im_d(c: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let d = c.ctx();
    if !d.has_cotangent() {
        return Err(Error::InvalidContext("conormal ideal must live in the doubled context".into()));
    }
    let amb = d.ambient_context();
    if *g.ctx() != amb {
        return Err(Error::ContextMismatch);
    }
    let bindings: Vec<(usize, Polynomial)> = g
        .gradient()
        .iter()
        .enumerate()
        .map(|(i, dg)| (d.cotangent_index(i).expect("doubled"), dg.lift_to(d)))
        .collect();
    let gens = c
        .gens()
        .iter()
        .map(|p| Ok(p.substitute(&bindings)?.restrict_to(&amb).expect("cotangent variables were substituted")))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&amb, gens)
}

/// For each visible stratum, the locus where `df` lies in its conormal;
/// the union of the nonunit results is the closure of the critical locus.
pub fn critical_locus(strata: &[(ConormalIdeal, bool)], f: &Polynomial) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for (c, visible) in strata {
        if !*visible {
            continue;
        }
        let i = intersect_im_d(&c.ideal, f)?;
        if i.krull_dim()? != KrullDim::Empty {
            out.push(i);
        }
    }
    Ok(out)
}

/// Product of ideals: its zero set is the union.
pub fn union_ideal(amb: &Arc<VarContext>, parts: &[Ideal]) -> Result<Ideal> {
    let mut acc = Ideal::unit(amb);
    for p in parts {
        acc = acc.product(p)?;
    }
    Ok(acc)
}
