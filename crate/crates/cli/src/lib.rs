//! Command-line front end: loads a problem file, runs one computation and
//! writes a [`ResultDocument`].
//!
//! Exit codes: 0 success, 2 when a hypothesis is mathematically false,
//! 1 on errors, 64 on usage errors.

pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use polar_core::gecc::{build_gecc, MorseRule, DEFAULT_SEED};
use polar_core::ideal::{set_budget, DEFAULT_BUDGET};
use polar_core::polar::{
    emptiness_report, family_additivity, le_attaching, main1_table, main2_pairs, milnor_number, polar_curve,
    polar_curve_by_intersection, relative_conormal_cycle, restricted_milnor_number,
};
use polar_core::problem::{load_problem, ProblemSpec};
use polar_core::{Error, MonomialOrder, RationalPoint};

pub use report::ResultDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "polar", version, about = "Graded enriched polar curves and their local numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Gecc,
    Conormal,
    Polar,
    Main1,
    Main2,
    Empty,
    Leattach,
    Milnor,
    Family,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded enriched characteristic cycle of the shifted constant sheaf
    Gecc(Common),
    /// Graded enriched relative conormal cycle of f
    Conormal(Common),
    /// Relative polar curve of (f, g)
    Polar(Common),
    /// Dimension conditions at the origin and the stalk table
    Main1(Common),
    /// Pair groups for (f, g) and (g, f)
    Main2(Common),
    /// Emptiness of the polar curve for sampled linear forms
    Empty(Common),
    /// Attaching number of f with respect to the linear form g
    Leattach(Common),
    /// Milnor number of f at the origin
    Milnor(Common),
    /// Additivity of the special fibre over nearby values of g
    Family(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Problem file (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Emit the JSON result document
    #[arg(long)]
    json: bool,
    /// Seed for every random choice
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled linear forms or family values
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Order used to print generators
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    /// S-pair budget per Gröbner computation (POLAR_BUDGET overrides)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl Command {
    fn split(self) -> (Kind, Common) {
        match self {
            Command::Gecc(c) => (Kind::Gecc, c),
            Command::Conormal(c) => (Kind::Conormal, c),
            Command::Polar(c) => (Kind::Polar, c),
            Command::Main1(c) => (Kind::Main1, c),
            Command::Main2(c) => (Kind::Main2, c),
            Command::Empty(c) => (Kind::Empty, c),
            Command::Leattach(c) => (Kind::Leattach, c),
            Command::Milnor(c) => (Kind::Milnor, c),
            Command::Family(c) => (Kind::Family, c),
        }
    }
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Gecc => "gecc",
            Kind::Conormal => "conormal",
            Kind::Polar => "polar",
            Kind::Main1 => "main1",
            Kind::Main2 => "main2",
            Kind::Empty => "empty",
            Kind::Leattach => "leattach",
            Kind::Milnor => "milnor",
            Kind::Family => "family",
        }
    }
}

struct Opts {
    seed: u64,
    trials: usize,
    order: MonomialOrder,
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let (kind, common) = cli.command.split();
    let budget = std::env::var("POLAR_BUDGET").ok().and_then(|v| v.trim().parse::<u64>().ok()).or(common.budget);
    set_budget(budget.unwrap_or(DEFAULT_BUDGET));
    let spec = match load_problem(&common.input) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", common.input.display());
            return EXIT_ERROR;
        }
    };
    let opts = Opts {
        seed: common.seed,
        trials: common.trials,
        order: match common.order {
            OrderArg::Grevlex => MonomialOrder::Grevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        },
    };
    match execute(kind, &spec, &opts) {
        Ok((doc, code)) => {
            let text = if common.json { doc.to_json() } else { doc.to_text() };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::VerdictFailure(_) => EXIT_VERDICT,
                _ => EXIT_ERROR,
            }
        }
    }
}

/// Computes the document for one subcommand.
fn execute(kind: Kind, spec: &ProblemSpec, o: &Opts) -> polar_core::Result<(ResultDocument, i32)> {
    let mut doc = ResultDocument::new(kind.name(), o.seed, spec.ctx.names());
    let origin = RationalPoint::origin(spec.ambient_dim());
    let mut code = EXIT_OK;
    match kind {
        Kind::Gecc => {
            let g = build_gecc(spec, o.seed)?;
            doc.add_cycle("gecc", &g.cycle, o.order)?;
            doc.verdict("concentrated_in_degree_0", g.cycle.degrees().all(|(k, _)| k == 0));
            for s in &g.strata {
                let how = match &s.morse.rule {
                    MorseRule::Override => "given by override".to_string(),
                    MorseRule::OpenStratum => "open stratum".to_string(),
                    MorseRule::NormalSlice { lines } => format!("normal slice has an ordinary {lines}-fold point"),
                    MorseRule::ComplexLink { spheres, forms } => {
                        format!("complex link is a bouquet of {spheres} spheres (checked with {})", forms.join(" and "))
                    }
                };
                let groups: Vec<String> = s.morse.entries.iter().map(|(k, m)| format!("{m} in degree {k}")).collect();
                let groups = if groups.is_empty() { "invisible".to_string() } else { groups.join(", ") };
                doc.note(format!("{}: {how}; {groups}", s.name));
            }
            doc.note("Whitney conditions of the given stratification are assumed, not checked");
        }
        Kind::Conormal => {
            let r = relative_conormal_cycle(spec, o.seed)?;
            doc.add_cycle("relative_conormal", &r.cycle, o.order)?;
            for s in &r.strata {
                if let Some(n) = &s.note {
                    doc.note(format!("{}: {n}", s.name));
                }
            }
        }
        Kind::Polar => {
            let p = polar_curve(spec, o.seed)?;
            doc.add_cycle("polar", &p.cycle, o.order)?;
            doc.verdict("curve", p.failure.is_none());
            for piece in &p.pieces {
                if piece.annihilated() {
                    doc.note(format!("{}: annihilated by im dg", piece.stratum));
                } else {
                    doc.note(format!("{}: polar piece V({}) of dimension {}", piece.stratum, shown(&piece.ideal, o)?, piece.dim));
                }
            }
            if let Err(e) = p.require_curve() {
                doc.note(e.to_string());
                code = EXIT_ERROR;
            } else {
                let other = polar_curve_by_intersection(&p.relative, &spec.g)?;
                doc.verdict("routes_agree", other.equals(&p.cycle)?);
            }
        }
        Kind::Main1 => {
            let r = main1_table(spec, o.seed)?;
            doc.add_cycle("polar", &r.polar.cycle, o.order)?;
            doc.verdict("support_isolated", r.verdicts.support);
            doc.verdict("f_cut_isolated", r.verdicts.f_cut);
            doc.verdict("fg_cut_isolated", r.verdicts.fg_cut);
            doc.verdict("f_cut_inside_g", r.phipsi);
            for d in &r.diagnostics {
                doc.note(d.clone());
            }
            for piece in r.polar.pieces.iter().filter(|p| !p.annihilated()) {
                doc.note(format!("polar set piece from {}: V({})", piece.stratum, shown(&piece.ideal, o)?));
            }
            match &r.table {
                Some(t) => doc.add_table("stalk", t),
                None => code = EXIT_VERDICT,
            }
        }
        Kind::Main2 => {
            let m1 = main1_table(spec, o.seed)?;
            doc.verdict("f_cut_isolated", m1.verdicts.f_cut);
            if !m1.verdicts.f_cut {
                doc.add_cycle("polar", &m1.polar.cycle, o.order)?;
                doc.note("the pairs are only defined when V(f) meets the polar set in isolated points");
                return Ok((doc, EXIT_VERDICT));
            }
            let r = main2_pairs(spec, o.seed)?;
            doc.add_cycle("polar_hat", &r.hat, o.order)?;
            doc.add_cycle("polar_inside_g", &r.inside_g, o.order)?;
            doc.add_table("f_pair", &r.f_pair);
            doc.add_table("g_pair", &r.g_pair);
        }
        Kind::Empty => {
            let r = emptiness_report(spec, o.trials, o.seed)?;
            doc.integer("trials", r.trials.len() as i64);
            doc.verdict("some_form_misses_origin", r.some_form_misses);
            doc.verdict("generic_form_misses_origin", r.generic_misses);
            doc.verdict("generic_stalk_zero", r.generic_stalk_zero);
            doc.verdict("consistent", r.consistent());
            for t in &r.trials {
                let stalk = match t.stalk_zero {
                    Some(true) => "zero",
                    Some(false) => "nonzero",
                    None => "undefined",
                };
                doc.note(format!(
                    "l = {}: origin in polar set {}, dimension conditions {}, stalk {stalk}",
                    t.form,
                    t.origin_in_polar,
                    t.verdicts.all()
                ));
            }
            for f in &r.flags {
                doc.note(f.clone());
            }
        }
        Kind::Leattach => {
            if !spec.is_ambient() {
                return Err(Error::Validation("the attaching number needs a smooth ambient space".into()));
            }
            let le = le_attaching(&spec.f, &spec.g)?;
            doc.integer("tau", le.tau as i64);
            doc.note(format!("polar curve V({}) has local dimension {} at the origin", shown(&le.polar, o)?, le.local_dim));
            if let (Ok(mu), Ok(mu_slice)) =
                (milnor_number(&spec.f, &origin), restricted_milnor_number(&spec.f, &spec.g, &origin))
            {
                doc.integer("milnor", mu as i64);
                doc.integer("milnor_slice", mu_slice as i64);
                doc.verdict("tau_is_sum_of_milnor_numbers", le.tau == mu + mu_slice);
            }
        }
        Kind::Milnor => {
            doc.integer("milnor", milnor_number(&spec.f, &origin)? as i64);
        }
        Kind::Family => {
            let samples = family_samples(o.trials);
            let r = family_additivity(spec, &samples, o.seed)?;
            doc.add_table("special_fibre", &r.lhs);
            for s in &r.samples {
                doc.add_table(&format!("nearby_sum a={}", s.a), &s.rhs);
                for p in &s.points {
                    doc.note(format!("a = {}: {} at {} with length {}", s.a, p.group, p.point, p.multiplicity));
                }
                if s.unsplit_rank > 0 {
                    doc.note(format!("a = {}: UNSPLIT rank {} at irrational points", s.a, s.unsplit_rank));
                }
                if !s.conserved {
                    doc.note(format!("a = {}: intersection count is not conserved; points may escape", s.a));
                }
            }
            doc.verdict("additivity", r.holds());
            if !r.holds() {
                code = EXIT_VERDICT;
            }
        }
    }
    Ok((doc, code))
}

fn shown(i: &polar_core::Ideal, o: &Opts) -> polar_core::Result<String> {
    Ok(report::generator_strings(i, o.order)?.join(", "))
}

/// `a_j = (-1)^j / (j+2)^2`: small values alternating in sign, so that
/// square roots of `±a` are rational.
fn family_samples(n: usize) -> Vec<BigRational> {
    (0..n.max(1))
        .map(|j| {
            let d = (j as i64 + 2).pow(2);
            let s = if j % 2 == 0 { 1 } else { -1 };
            BigRational::new(s.into(), d.into())
        })
        .collect()
}
