//! The result document every subcommand emits, as JSON or as text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use polar_core::enriched::{FGAbelianGroup, GradedEnrichedCycle};
use polar_core::polar::GroupTable;
use polar_core::{Ideal, MonomialOrder, Result};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = "polar";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleEntry {
    /// Which cycle of the document the component belongs to.
    pub cycle: String,
    pub generators: Vec<String>,
    pub coeff_by_degree: BTreeMap<i32, FGAbelianGroup>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub variables: Vec<String>,
    pub cycles: Vec<CycleEntry>,
    pub tables: BTreeMap<String, BTreeMap<i32, FGAbelianGroup>>,
    pub verdicts: BTreeMap<String, bool>,
    pub integers: BTreeMap<String, i64>,
    pub diagnostics: Vec<String>,
}

impl ResultDocument {
    pub fn new(command: &str, seed: u64, variables: &[String]) -> Self {
        ResultDocument {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            variables: variables.to_vec(),
            cycles: Vec::new(),
            tables: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            integers: BTreeMap::new(),
            diagnostics: Vec::new(),
        }
    }

    /// Adds the components of `c`, one entry per component with its
    /// coefficients in every degree. Generators are the reduced basis in
    /// `order`.
    pub fn add_cycle(&mut self, name: &str, c: &GradedEnrichedCycle, order: MonomialOrder) -> Result<()> {
        let start = self.cycles.len();
        for (k, ek) in c.degrees() {
            for (v, g) in ek.components() {
                let generators = generator_strings(v, order)?;
                let existing = self.cycles[start..].iter_mut().find(|e| e.generators == generators);
                match existing {
                    Some(e) => {
                        e.coeff_by_degree.insert(k, g.clone());
                    }
                    None => self.cycles.push(CycleEntry {
                        cycle: name.into(),
                        generators,
                        coeff_by_degree: BTreeMap::from([(k, g.clone())]),
                    }),
                }
            }
        }
        Ok(())
    }

    pub fn add_table(&mut self, name: &str, t: &GroupTable) {
        self.tables.insert(name.into(), t.clone());
    }

    pub fn verdict(&mut self, name: &str, v: bool) {
        self.verdicts.insert(name.into(), v);
    }

    pub fn integer(&mut self, name: &str, v: i64) {
        self.integers.insert(name.into(), v);
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {} (seed {})", self.tool, self.version, self.command, self.seed);
        if !self.cycles.is_empty() {
            let _ = writeln!(s, "cycles:");
            for c in &self.cycles {
                let coeffs: Vec<String> =
                    c.coeff_by_degree.iter().map(|(k, g)| format!("degree {k}: {g}")).collect();
                let _ = writeln!(s, "  {} V({}): {}", c.cycle, c.generators.join(", "), coeffs.join("; "));
            }
        }
        for (name, t) in &self.tables {
            if t.is_empty() {
                let _ = writeln!(s, "{name}: 0 in every degree");
            } else {
                let parts: Vec<String> = t.iter().map(|(k, g)| format!("degree {k}: {g}")).collect();
                let _ = writeln!(s, "{name}: {}, 0 in other degrees", parts.join("; "));
            }
        }
        for (name, v) in &self.verdicts {
            let _ = writeln!(s, "{name}: {}", if *v { "TRUE" } else { "FALSE" });
        }
        for (name, v) in &self.integers {
            let _ = writeln!(s, "{name} = {v}");
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "note: {d}");
        }
        s
    }
}

pub fn generator_strings(i: &Ideal, order: MonomialOrder) -> Result<Vec<String>> {
    Ok(i.groebner_basis(order)?.iter().map(ToString::to_string).collect())
}
