//! Output documents of the command-line tool. Each document serializes to
//! JSON (validated by `schema/output.schema.json`) and renders as plain text.
//! Rationals are strings `"a/b"` or integers; big integers are strings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::filtration::{HPolynomial, JumpTable};
use crate::monomial::MonomialIdeal;
use crate::rational::{format_rational, Rational};
use crate::series::{PoincareForm, TruncatedSeries};
use crate::tor::TorRow;
use crate::verify::SuiteReport;

/// Generators as strings, in display order.
pub fn ideal_strings(i: &MonomialIdeal) -> Vec<String> {
    if i.is_unit() {
        return vec!["1".to_string()];
    }
    i.gens().iter().rev().map(|g| g.to_string()).collect()
}

fn join_ideal(gens: &[String]) -> String {
    match gens {
        [] => "(0)".to_string(),
        [one] if one == "1" => "(1)".to_string(),
        _ => gens.join(", "),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub lct: String,
}

impl LctDoc {
    pub fn new(a: &MonomialIdeal, lct: &Rational) -> Self {
        LctDoc { command: "lct".into(), ideal: ideal_strings(a), dim: a.dim(), lct: format_rational(lct) }
    }
}

impl fmt::Display for LctDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lct)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpEntry {
    pub c: String,
    pub multiplicity: u64,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpsDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub characteristic: u64,
    pub max: String,
    pub jumps: Vec<JumpEntry>,
}

impl JumpsDoc {
    pub fn new(a: &MonomialIdeal, characteristic: u64, table: &JumpTable) -> Self {
        JumpsDoc {
            command: "jumps".into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            characteristic,
            max: format_rational(&table.c_max),
            jumps: table
                .jumps
                .iter()
                .map(|j| JumpEntry { c: format_rational(&j.c), multiplicity: j.multiplicity, ideal: ideal_strings(&j.ideal) })
                .collect(),
        }
    }
}

impl fmt::Display for JumpsDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, j) in self.jumps.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}  mult {}  ideal {}", j.c, j.multiplicity, join_ideal(&j.ideal))?;
        }
        Ok(())
    }
}

/// Output of `mult` and `test`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub characteristic: u64,
    pub c: String,
    pub result: Vec<String>,
    pub colength: u64,
}

impl IdealDoc {
    pub fn new(command: &str, a: &MonomialIdeal, characteristic: u64, c: &Rational, result: &MonomialIdeal, colength: u64) -> Self {
        IdealDoc {
            command: command.into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            characteristic,
            c: format_rational(c),
            result: ideal_strings(result),
            colength,
        }
    }
}

impl fmt::Display for IdealDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_ideal(&self.result))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub c: String,
    /// Numerator coefficients in ascending powers of `T`.
    pub numerator: Vec<String>,
    pub denominator_exponent: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareBlock {
    pub e: String,
    pub classes: Vec<ClassEntry>,
    pub rendering: String,
}

impl PoincareBlock {
    pub fn new(form: &PoincareForm) -> Self {
        PoincareBlock {
            e: form.denominator().to_string(),
            classes: form
                .classes()
                .iter()
                .map(|(c, r)| ClassEntry {
                    c: format_rational(c),
                    numerator: r.numerator().iter().map(|x| x.to_string()).collect(),
                    denominator_exponent: r.denominator_exponent(),
                    value: r.to_string(),
                })
                .collect(),
            rendering: form.render(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub exponent: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionBlock {
    pub order: String,
    pub terms: Vec<TermEntry>,
    pub rendering: String,
}

impl ExpansionBlock {
    pub fn new(s: &TruncatedSeries) -> Self {
        ExpansionBlock {
            order: format_rational(&s.order),
            terms: s
                .terms
                .iter()
                .map(|(e, c)| TermEntry { exponent: format_rational(e), coefficient: c.to_string() })
                .collect(),
            rendering: s.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub characteristic: u64,
    pub poincare: PoincareBlock,
    pub expansion: Option<ExpansionBlock>,
}

impl PoincareDoc {
    pub fn new(a: &MonomialIdeal, characteristic: u64, form: &PoincareForm, expansion: Option<&TruncatedSeries>) -> Self {
        PoincareDoc {
            command: "poincare".into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            characteristic,
            poincare: PoincareBlock::new(form),
            expansion: expansion.map(ExpansionBlock::new),
        }
    }
}

impl fmt::Display for PoincareDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poincare.rendering)?;
        if let Some(x) = &self.expansion {
            write!(f, "\n{}", x.rendering)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpolyDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub characteristic: u64,
    pub c: String,
    /// Coefficients of `h` at `c`, ascending.
    pub h: Vec<String>,
    /// Coefficients of `h` at `c - ε`.
    pub h_left: Vec<String>,
    pub multiplicity: u64,
    pub rendering: BTreeMap<String, String>,
}

impl HpolyDoc {
    pub fn new(a: &MonomialIdeal, characteristic: u64, c: &Rational, h: &HPolynomial, h_left: &HPolynomial, multiplicity: u64) -> Self {
        let coeffs = |p: &HPolynomial| p.coeffs.iter().map(|x| x.to_string()).collect();
        HpolyDoc {
            command: "hpoly".into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            characteristic,
            c: format_rational(c),
            h: coeffs(h),
            h_left: coeffs(h_left),
            multiplicity,
            rendering: BTreeMap::from([("h".to_string(), h.to_string()), ("h_left".to_string(), h_left.to_string())]),
        }
    }
}

impl fmt::Display for HpolyDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h({}) = {}", self.c, self.rendering["h"])?;
        writeln!(f, "h({}-) = {}", self.c, self.rendering["h_left"])?;
        write!(f, "m({}) = {}", self.c, self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub j: u64,
    #[serde(rename = "J")]
    pub argument: Vec<String>,
    pub tor: Vec<u64>,
    pub image_phi: u64,
    pub beta1: u64,
}

impl TorDoc {
    pub fn new(a: &MonomialIdeal, big_j: &MonomialIdeal, row: &TorRow) -> Self {
        TorDoc {
            command: "tor".into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            j: row.j,
            argument: ideal_strings(big_j),
            tor: row.tor.clone(),
            image_phi: row.image_phi,
            beta1: row.beta1,
        }
    }
}

impl fmt::Display for TorDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tor.iter().enumerate() {
            writeln!(f, "Tor_{i} = {t}")?;
        }
        write!(f, "image_phi = {}\nbeta1 = {}", self.image_phi, self.beta1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub details: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub command: String,
    pub ideal: Vec<String>,
    pub dim: usize,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
    #[serde(skip)]
    text: String,
}

impl VerifyDoc {
    pub fn new(a: &MonomialIdeal, report: &SuiteReport) -> Self {
        VerifyDoc {
            command: "verify".into(),
            ideal: ideal_strings(a),
            dim: a.dim(),
            suite: report.suite.clone(),
            passed: report.passed(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckEntry { name: c.name.clone(), passed: c.passed, details: c.details.iter().cloned().collect() })
                .collect(),
            text: report.to_string(),
        }
    }
}

impl fmt::Display for VerifyDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
