//! Problem files: a stratified space, a shift for the constant sheaf, the
//! functions `f̃` and `g̃`, and optional hints. Loading validates the JSON
//! shape (errors carry a JSON pointer) and the geometry of the strata.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::Value;

use crate::cycle::CandidateSet;
use crate::enriched::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::ideal::{Ideal, KrullDim};
use crate::poly::{parse_poly, Polynomial, RationalPoint, VarContext};

#[derive(Clone, Debug)]
pub struct StratumSpec {
    pub name: String,
    pub closure: Vec<Polynomial>,
    pub minus: Vec<String>,
    pub dim: usize,
    pub test_point: Option<RationalPoint>,
    pub morse: Option<Vec<(i32, FGAbelianGroup)>>,
}

impl StratumSpec {
    pub fn closure_ideal(&self, ctx: &Arc<VarContext>) -> Result<Ideal> {
        Ideal::new(ctx, self.closure.clone())
    }
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub ctx: Arc<VarContext>,
    /// Each component is an ideal given by generators; a single generator
    /// is a hypersurface. No components means the whole ambient space.
    pub space: Vec<Vec<Polynomial>>,
    pub shift: i32,
    pub strata: Vec<StratumSpec>,
    pub f: Polynomial,
    pub g: Polynomial,
    pub candidates: Vec<Ideal>,
}

impl ProblemSpec {
    pub fn ambient_dim(&self) -> usize {
        self.ctx.len()
    }

    pub fn stratum(&self, name: &str) -> Option<&StratumSpec> {
        self.strata.iter().find(|s| s.name == name)
    }

    pub fn is_ambient(&self) -> bool {
        self.space.is_empty()
    }

    /// `X` is cut out by one polynomial (the product of the components).
    pub fn is_hypersurface(&self) -> bool {
        !self.space.is_empty() && self.space.iter().all(|c| c.len() == 1)
    }

    pub fn defining_polynomial(&self) -> Option<Polynomial> {
        if !self.is_hypersurface() {
            return None;
        }
        let mut acc = Polynomial::one(&self.ctx);
        for c in &self.space {
            acc = &acc * &c[0];
        }
        Some(acc)
    }

    pub fn space_ideal(&self) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for c in &self.space {
            let i = Ideal::new(&self.ctx, c.clone())?;
            acc = Some(match acc {
                None => i,
                Some(a) => a.intersect(&i)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::zero(&self.ctx)))
    }

    /// Dimension of `X`: the largest stratum dimension.
    pub fn space_dim(&self) -> usize {
        self.strata.iter().map(|s| s.dim).max().unwrap_or(self.ctx.len())
    }

    /// Closures of the strata removed from `st`.
    pub fn removed_closures(&self, st: &StratumSpec) -> Result<Vec<Ideal>> {
        st.minus
            .iter()
            .map(|n| {
                let s = self.stratum(n).ok_or_else(|| Error::Validation(format!("unknown stratum `{n}`")))?;
                s.closure_ideal(&self.ctx)
            })
            .collect()
    }

    pub fn candidate_set(&self) -> Result<CandidateSet> {
        CandidateSet::from_ideals(&self.candidates)
    }

    /// Same problem with `f` and `g` exchanged.
    pub fn swapped(&self) -> ProblemSpec {
        let mut s = self.clone();
        std::mem::swap(&mut s.f, &mut s.g);
        s
    }

    /// Same problem with another `g̃`.
    pub fn with_g(&self, g: Polynomial) -> ProblemSpec {
        let mut s = self.clone();
        s.g = g;
        s
    }
}

fn schema(pointer: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), msg: msg.into() }
}

fn field<'a>(obj: &'a Value, ptr: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(ptr.to_string(), format!("missing required field `{key}`")))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn as_str<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(ptr, "expected a string"))
}

fn as_int(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(ptr, "expected an integer"))
}

fn poly_at(v: &Value, ptr: &str, ctx: &Arc<VarContext>) -> Result<Polynomial> {
    let s = as_str(v, ptr)?;
    parse_poly(s, ctx).map_err(|e| match e {
        Error::Syntax { pos, msg } => schema(ptr, format!("parse error at byte {pos}: {msg}")),
        Error::UnknownIdentifier { name, pos } => schema(ptr, format!("unknown identifier `{name}` at byte {pos}")),
        other => schema(ptr, other.to_string()),
    })
}

fn poly_list(v: &Value, ptr: &str, ctx: &Arc<VarContext>) -> Result<Vec<Polynomial>> {
    as_array(v, ptr)?.iter().enumerate().map(|(i, p)| poly_at(p, &format!("{ptr}/{i}"), ctx)).collect()
}

fn rational_at(v: &Value, ptr: &str) -> Result<BigRational> {
    if let Some(i) = v.as_i64() {
        return Ok(BigRational::from_integer(i.into()));
    }
    if let Some(s) = v.as_str() {
        return BigRational::from_str(s.trim()).map_err(|_| schema(ptr, format!("`{s}` is not a rational number")));
    }
    Err(schema(ptr, "expected an integer or a rational written as a string"))
}

const TOP_KEYS: [&str; 7] = ["variables", "space", "shift", "strata", "f", "g", "candidates"];
const STRATUM_KEYS: [&str; 6] = ["name", "closure", "minus", "dim", "test_point", "morse"];

fn no_unknown_keys(obj: &Value, ptr: &str, allowed: &[&str]) -> Result<()> {
    let map = obj.as_object().ok_or_else(|| schema(ptr, "expected an object"))?;
    for k in map.keys() {
        if !allowed.contains(&k.as_str()) && k != "description" {
            return Err(schema(format!("{ptr}/{k}"), format!("unknown field `{k}`")));
        }
    }
    Ok(())
}

fn morse_list(v: &Value, ptr: &str) -> Result<Vec<(i32, FGAbelianGroup)>> {
    let mut out = Vec::new();
    for (i, e) in as_array(v, ptr)?.iter().enumerate() {
        let p = format!("{ptr}/{i}");
        no_unknown_keys(e, &p, &["degree", "rank", "torsion"])?;
        let degree = as_int(field(e, &p, "degree")?, &format!("{p}/degree"))?;
        let rank = as_int(field(e, &p, "rank")?, &format!("{p}/rank"))?;
        if rank < 0 {
            return Err(schema(format!("{p}/rank"), "rank must be nonnegative"));
        }
        let mut torsion = Vec::new();
        if let Some(t) = e.get("torsion") {
            for (j, d) in as_array(t, &format!("{p}/torsion"))?.iter().enumerate() {
                let d = as_int(d, &format!("{p}/torsion/{j}"))?;
                if d < 1 {
                    return Err(schema(format!("{p}/torsion/{j}"), "torsion orders must be positive"));
                }
                torsion.push(d as u64);
            }
        }
        out.push((degree as i32, FGAbelianGroup::new(rank as u64, &torsion)));
    }
    Ok(out)
}

/// Parses and validates a problem document.
pub fn parse_problem(doc: &Value) -> Result<ProblemSpec> {
    no_unknown_keys(doc, "", &TOP_KEYS)?;
    let vars = as_array(field(doc, "", "variables")?, "/variables")?;
    let names = vars
        .iter()
        .enumerate()
        .map(|(i, v)| as_str(v, &format!("/variables/{i}")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let ctx = VarContext::new(names).map_err(|e| schema("/variables", e.to_string()))?;

    let space_v = field(doc, "", "space")?;
    no_unknown_keys(space_v, "/space", &["components"])?;
    let comps = as_array(field(space_v, "/space", "components")?, "/space/components")?;
    let mut space = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let p = format!("/space/components/{i}");
        if c.is_string() {
            space.push(vec![poly_at(c, &p, &ctx)?]);
        } else {
            let gens = poly_list(c, &p, &ctx)?;
            if gens.is_empty() {
                return Err(schema(p, "a component needs at least one generator"));
            }
            space.push(gens);
        }
    }

    let shift = as_int(field(doc, "", "shift")?, "/shift")? as i32;
    let f = poly_at(field(doc, "", "f")?, "/f", &ctx)?;
    let g = poly_at(field(doc, "", "g")?, "/g", &ctx)?;

    let mut strata = Vec::new();
    for (i, s) in as_array(field(doc, "", "strata")?, "/strata")?.iter().enumerate() {
        let p = format!("/strata/{i}");
        no_unknown_keys(s, &p, &STRATUM_KEYS)?;
        let name = as_str(field(s, &p, "name")?, &format!("{p}/name"))?.to_string();
        let closure = poly_list(field(s, &p, "closure")?, &format!("{p}/closure"), &ctx)?;
        let minus = match s.get("minus") {
            None => Vec::new(),
            Some(m) => as_array(m, &format!("{p}/minus"))?
                .iter()
                .enumerate()
                .map(|(j, n)| as_str(n, &format!("{p}/minus/{j}")).map(str::to_string))
                .collect::<Result<Vec<_>>>()?,
        };
        let dim = as_int(field(s, &p, "dim")?, &format!("{p}/dim"))?;
        if dim < 0 {
            return Err(schema(format!("{p}/dim"), "dimension must be nonnegative"));
        }
        let test_point = match s.get("test_point") {
            None | Some(Value::Null) => None,
            Some(tp) => {
                let tp_ptr = format!("{p}/test_point");
                let coords = as_array(tp, &tp_ptr)?
                    .iter()
                    .enumerate()
                    .map(|(j, c)| rational_at(c, &format!("{tp_ptr}/{j}")))
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() != ctx.len() {
                    return Err(schema(tp_ptr, format!("expected {} coordinates", ctx.len())));
                }
                Some(RationalPoint::new(coords))
            }
        };
        let morse = match s.get("morse") {
            None | Some(Value::Null) => None,
            Some(m) => Some(morse_list(m, &format!("{p}/morse"))?),
        };
        strata.push(StratumSpec { name, closure, minus, dim: dim as usize, test_point, morse });
    }
    if strata.is_empty() {
        return Err(schema("/strata", "at least one stratum is required"));
    }

    let mut candidates = Vec::new();
    if let Some(c) = doc.get("candidates") {
        for (i, gens) in as_array(c, "/candidates")?.iter().enumerate() {
            candidates.push(Ideal::new(&ctx, poly_list(gens, &format!("/candidates/{i}"), &ctx)?)?);
        }
    }

    let spec = ProblemSpec { ctx, space, shift, strata, f, g, candidates };
    validate(&spec)?;
    Ok(spec)
}

/// Cross-checks names, dimensions, test points and coverage of `X`.
pub fn validate(spec: &ProblemSpec) -> Result<()> {
    let ctx = &spec.ctx;
    for (i, s) in spec.strata.iter().enumerate() {
        if spec.strata[..i].iter().any(|o| o.name == s.name) {
            return Err(Error::Validation(format!("duplicate stratum name `{}`", s.name)));
        }
        for m in &s.minus {
            if spec.stratum(m).is_none() {
                return Err(Error::Validation(format!("stratum `{}` removes unknown stratum `{m}`", s.name)));
            }
        }
        let closure = s.closure_ideal(ctx)?;
        match closure.krull_dim()? {
            KrullDim::Dim(d) if d == s.dim => {}
            other => {
                return Err(Error::Validation(format!(
                    "stratum `{}` declares dimension {} but its closure has dimension {other}",
                    s.name, s.dim
                )))
            }
        }
        if !spec.is_ambient() {
            let x = spec.space_ideal()?;
            if !closure.radical_contains_ideal(&x)? {
                return Err(Error::Validation(format!("closure of stratum `{}` is not contained in X", s.name)));
            }
        }
        if let Some(tp) = &s.test_point {
            if !closure.vanishes_at(tp)? {
                return Err(Error::Validation(format!("test point {tp} is not on the closure of `{}`", s.name)));
            }
            for r in spec.removed_closures(s)? {
                if r.vanishes_at(tp)? {
                    return Err(Error::Validation(format!(
                        "test point {tp} of `{}` lies on a removed stratum",
                        s.name
                    )));
                }
            }
        }
    }
    let components: Vec<Ideal> = if spec.is_ambient() {
        vec![Ideal::zero(ctx)]
    } else {
        spec.space.iter().map(|c| Ideal::new(ctx, c.clone())).collect::<Result<_>>()?
    };
    for (i, c) in components.iter().enumerate() {
        let mut found = false;
        for s in &spec.strata {
            if s.closure_ideal(ctx)?.same_zero_set(c)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Validation(format!("space component {i} is not the closure of any stratum")));
        }
    }
    Ok(())
}

pub fn load_problem_str(text: &str) -> Result<ProblemSpec> {
    let doc: Value = serde_json::from_str(text).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    parse_problem(&doc)
}

pub fn load_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_problem_str(&text)
}
