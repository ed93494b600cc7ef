//! Verification suites: each one recomputes an identity through two
//! independent routes and reports every comparison with its intermediate
//! values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::filtration::{multiplicity, poincare_bruteforce, poincare_closed_form, Filtration};
use crate::hull::in_hull_plus_orthant;
use crate::monomial::MonomialIdeal;
use crate::multiplier::MultiplierFiltration;
use crate::newton::NewtonPolyhedron;
use crate::rational::{format_rational, int, Rational};
use crate::test_ideal::{CharP, TestFiltration};
use crate::tor::{self, Resolve};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Skoda,
    Rationality,
    TorSymmetry,
    Excess,
    TestVsMult,
    Lemma41,
    Lemma42,
    CmForm,
    NewtonHull,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Skoda,
        Suite::Rationality,
        Suite::TorSymmetry,
        Suite::Excess,
        Suite::TestVsMult,
        Suite::Lemma41,
        Suite::Lemma42,
        Suite::CmForm,
        Suite::NewtonHull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Skoda => "skoda",
            Suite::Rationality => "rationality",
            Suite::TorSymmetry => "tor-symmetry",
            Suite::Excess => "excess",
            Suite::TestVsMult => "test-vs-mult",
            Suite::Lemma41 => "lemma41",
            Suite::Lemma42 => "lemma42",
            Suite::CmForm => "cmform",
            Suite::NewtonHull => "newton-hull",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Vec<(String, String)>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, details: Vec::new() }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            for (k, v) in &c.details {
                write!(f, "  {k}={v}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} {}: {}/{} checks",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

/// Inputs shared by the suites; unused fields are ignored.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub ideal: MonomialIdeal,
    pub characteristic: Option<u64>,
    /// Expansion order for `rationality`, `N` for `lemma42`.
    pub order: Option<Rational>,
    /// Upper end of the threshold range for `test-vs-mult` and `excess`.
    pub max: Option<Rational>,
    /// Largest power `j` for the Tor based suites.
    pub j: Option<u64>,
    /// `J` for `tor-symmetry`, `lemma41` and `lemma42`.
    pub argument: Option<MonomialIdeal>,
    /// `K` for `lemma42`.
    pub larger: Option<MonomialIdeal>,
    /// Parameter reduction for `cmform` and `excess`.
    pub reduction: Option<MonomialIdeal>,
}

impl SuiteParams {
    pub fn new(ideal: MonomialIdeal) -> Self {
        SuiteParams {
            ideal,
            characteristic: None,
            order: None,
            max: None,
            j: None,
            argument: None,
            larger: None,
            reduction: None,
        }
    }

    fn filtration(&self) -> Result<Box<dyn Filtration>> {
        Ok(match self.characteristic {
            None | Some(0) => Box::new(MultiplierFiltration::new(&self.ideal)?),
            Some(p) => Box::new(TestFiltration::new(&self.ideal, CharP::new(p)?)?),
        })
    }

    fn reduction(&self) -> Result<MonomialIdeal> {
        match &self.reduction {
            Some(q) => Ok(q.clone()),
            None => tor::pure_power_reduction(&self.ideal),
        }
    }

    fn maximal(&self) -> MonomialIdeal {
        MonomialIdeal::maximal(self.ideal.dim())
    }
}

/// Folds invariant violations into a failed check; other errors propagate.
fn guarded(name: String, f: impl FnOnce() -> Result<Check>) -> Result<Check> {
    match f() {
        Err(Error::Invariant(msg)) => Ok(Check::new(name, false).with("error", msg)),
        other => other,
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Skoda => skoda(params)?,
        Suite::Rationality => rationality(params)?,
        Suite::TorSymmetry => tor_symmetry(params)?,
        Suite::Excess => excess(params)?,
        Suite::TestVsMult => test_vs_mult(params)?,
        Suite::Lemma41 => lemma41(params)?,
        Suite::Lemma42 => lemma42(params)?,
        Suite::CmForm => cmform(params)?,
        Suite::NewtonHull => newton_hull(params)?,
    };
    Ok(SuiteReport { suite: suite.name().to_string(), checks })
}

/// `F_c = 𝔞·F_{c-1}` at every candidate `c ∈ (d, d+2]`.
fn skoda(p: &SuiteParams) -> Result<Vec<Check>> {
    let f = p.filtration()?;
    let d = int(f.dim() as i64);
    let mut out = Vec::new();
    for c in f.candidates(&(&d + int(2)))? {
        if c <= d {
            continue;
        }
        let lhs = f.eval(&c)?;
        let rhs = p.ideal.product(&f.eval(&(&c - Rational::one()))?)?;
        out.push(
            Check::new(format!("c={}", format_rational(&c)), lhs == rhs)
                .with("colength_lhs", lhs.colength()?)
                .with("colength_rhs", rhs.colength()?),
        );
    }
    Ok(out)
}

fn default_order(d: usize) -> Rational {
    int(if d <= 2 { 20 } else { 8 })
}

/// Expansion of the closed form against direct enumeration.
fn rationality(p: &SuiteParams) -> Result<Vec<Check>> {
    let f = p.filtration()?;
    let order = p.order.clone().unwrap_or_else(|| default_order(f.dim()));
    let closed = poincare_closed_form(f.as_ref())?;
    let expanded = closed.expand(&order);
    let brute = poincare_bruteforce(f.as_ref(), &order)?;
    Ok(vec![Check::new(format!("order={}", format_rational(&order)), expanded == brute)
        .with("closed_form", closed.render())
        .with("expansion", &expanded)
        .with("bruteforce", &brute)])
}

/// `Tor_i(A/𝔞^j, A/J)` with either argument resolved.
fn tor_symmetry(p: &SuiteParams) -> Result<Vec<Check>> {
    let big_j = p.argument.clone().unwrap_or_else(|| p.maximal());
    let d = p.ideal.dim();
    let mut out = Vec::new();
    for j in 1..=p.j.unwrap_or(3) {
        let x = tor::tor_lengths_with(&p.ideal, j, &big_j, d, Resolve::Power)?;
        let y = tor::tor_lengths_with(&p.ideal, j, &big_j, d, Resolve::Argument)?;
        let h0 = p.ideal.power(j)?.sum(&big_j)?.colength()?;
        out.push(
            Check::new(format!("j={j}"), x.tor == y.tor && x.tor[0] == h0)
                .with("resolve_power", format!("{:?}", x.tor))
                .with("resolve_argument", format!("{:?}", y.tor))
                .with("tor0_oracle", h0),
        );
    }
    Ok(out)
}

/// Excess at each jump `c ≤ max` for `j = 1..=4`.
fn excess(p: &SuiteParams) -> Result<Vec<Check>> {
    let f = p.filtration()?;
    let q = p.reduction()?;
    let max = p.max.clone().unwrap_or_else(|| int(3));
    let mut out = Vec::new();
    for c in f.candidates(&max)? {
        if multiplicity(f.as_ref(), &c)? == 0 {
            continue;
        }
        for j in 1..=p.j.unwrap_or(4) {
            out.push(guarded(format!("c={} j={j}", format_rational(&c)), || {
                let r = tor::excess(f.as_ref(), &q, &c, j)?;
                Ok(Check::new(format!("c={} j={j}", format_rational(&c)), true)
                    .with("rho", format_rational(&r.rho))
                    .with("tor2_difference", r.tor_difference)
                    .with("multiplicity_difference", r.multiplicity_difference))
            })?);
        }
    }
    Ok(out)
}

/// Test ideals against multiplier ideals at every candidate of either.
fn test_vs_mult(p: &SuiteParams) -> Result<Vec<Check>> {
    let prime = CharP::new(p.characteristic.unwrap_or(3))?;
    let t = TestFiltration::new(&p.ideal, prime)?;
    let m = MultiplierFiltration::new(&p.ideal)?;
    let max = p.max.clone().unwrap_or_else(|| int(p.ideal.dim() as i64 + 1));
    let mut cs = t.candidates(&max)?;
    cs.extend(m.candidates(&max)?);
    cs.sort();
    cs.dedup();
    let mut out = Vec::new();
    for c in cs {
        let (a, b) = (t.eval(&c)?, m.eval(&c)?);
        out.push(
            Check::new(format!("c={}", format_rational(&c)), a == b)
                .with("test", &a)
                .with("multiplier", &b),
        );
    }
    Ok(out)
}

/// `λ(J/𝔞^jJ) = λ(A/𝔞^j) - λ(Im φ_j) + (β₁-1)λ(A/J)`.
fn lemma41(p: &SuiteParams) -> Result<Vec<Check>> {
    let m = p.maximal();
    let targets = match &p.argument {
        Some(j) => vec![j.clone()],
        None => vec![m.clone(), m.power(2)?, MonomialIdeal::unit(p.ideal.dim())],
    };
    let mut out = Vec::new();
    for big_j in &targets {
        for j in 1..=p.j.unwrap_or(4) {
            let r = tor::verify_lemma_41(&p.ideal, j, big_j)?;
            out.push(
                Check::new(format!("J=({big_j}) j={j}"), r.holds)
                    .with("lhs", r.lhs)
                    .with("colength_power", r.colength_power)
                    .with("image_phi", r.image_phi)
                    .with("beta1", r.beta1)
                    .with("colength_J", r.colength_j)
                    .with("rhs", r.rhs),
            );
        }
    }
    Ok(out)
}

/// Generating function of `λ(𝔞^jK/𝔞^jJ)`.
fn lemma42(p: &SuiteParams) -> Result<Vec<Check>> {
    let m = p.maximal();
    let k = p.larger.clone().unwrap_or_else(|| m.clone());
    let big_j = match &p.argument {
        Some(j) => j.clone(),
        None => m.power(2)?,
    };
    let order = match &p.order {
        Some(n) if n.is_integer() && *n >= int(0) => {
            u64::try_from(n.to_integer()).map_err(|_| Error::Precondition("order too large".into()))?
        }
        Some(n) => return Err(Error::Precondition(format!("order must be a nonnegative integer, got {}", format_rational(n)))),
        None => 5,
    };
    let r = tor::verify_lemma_42(&p.ideal, &k, &big_j, order)?;
    Ok(vec![Check::new(format!("K=({k}) J=({big_j}) N={order}"), r.holds)
        .with("lhs", format!("{:?}", r.lhs))
        .with("rhs", format!("{:?}", r.rhs))])
}

/// Cohen–Macaulay shape against the closed form, one check per class.
fn cmform(p: &SuiteParams) -> Result<Vec<Check>> {
    let f = p.filtration()?;
    let q = p.reduction()?;
    let cm = match tor::cm_poincare_form(f.as_ref(), &q) {
        Err(Error::Invariant(msg)) => return Ok(vec![Check::new("reassembly", false).with("error", msg)]),
        other => other?,
    };
    let mut out = Vec::new();
    for (c, cls) in &cm.classes {
        let list = |v: &[BigInt]| format!("{:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        out.push(
            Check::new(format!("class={}", format_rational(c)), true)
                .with("leading", format!("{:?}", cls.leading))
                .with("alphas", list(&cls.alphas))
                .with("p", list(&cls.correction))
                .with("window_start", cls.window_start)
                .with("series", &cls.series),
        );
    }
    let reassembled = cm.to_poincare_form()?;
    let closed = poincare_closed_form(f.as_ref())?;
    out.push(Check::new("reassembly", reassembled == closed).with("closed_form", closed.render()));
    Ok(out)
}

/// Facet description of the Newton polyhedron against Fourier–Motzkin
/// membership on a half-integer grid.
fn newton_hull(p: &SuiteParams) -> Result<Vec<Check>> {
    let poly = NewtonPolyhedron::new(&p.ideal)?;
    let d = p.ideal.dim();
    let reach: u32 = poly.vertices().iter().flat_map(|v| v.entries().iter().copied()).max().unwrap_or(0) + 1;
    let side = (2 * reach + 1) as usize;
    let mut mismatches = 0u64;
    let mut points = 0u64;
    let mut first = None;
    let mut idx = vec![0usize; d];
    loop {
        let u: Vec<Rational> = idx.iter().map(|&k| Rational::new(BigInt::from(k), BigInt::from(2))).collect();
        let facet = poly.in_scaled_polyhedron(&u, &Rational::one(), false)?;
        let hull = in_hull_plus_orthant(p.ideal.gens(), &u);
        points += 1;
        if facet != hull {
            mismatches += 1;
            first.get_or_insert_with(|| u.iter().map(format_rational).collect::<Vec<_>>().join(","));
        }
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < side {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    let mut check = Check::new("facets-vs-hull", mismatches == 0)
        .with("points", points)
        .with("facets", poly.facets().len())
        .with("mismatches", mismatches);
    if let Some(u) = first {
        check = check.with("first_mismatch", u);
    }
    Ok(vec![check])
}
