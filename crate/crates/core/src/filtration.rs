//! Filtrations indexed by positive rationals: jump detection, multiplicities,
//! h-polynomials of the shifted filtrations and the closed-form Poincaré
//! series assembled from them.
//!
//! For every class `c ∈ (0, 1]` the generating function `Σ_j m(c+j) T^j`
//! equals `m(c)/(1-T) + (h_c(T) - h_{c-ε}(T))/(1-T)^{d+1}`, where `h_c` is the
//! h-polynomial of the good filtration `j ↦ eval(c+j)` and `h_{c-ε}` that of
//! `j ↦ eval_left(c+j)`. Summing over the classes that carry a jump gives the
//! whole series.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::monomial::{quotient_length, MonomialIdeal};
use crate::rational::{self, Rational};
use crate::series::{one_minus_t_pow, PoincareForm, TruncatedSeries, UniRational};
use crate::{Error, Result};

/// A decreasing family of ideals `c ↦ eval(c)` with `eval(c) = 𝔞·eval(c-1)`
/// for `c > skoda_bound()`.
pub trait Filtration {
    fn base_ideal(&self) -> &MonomialIdeal;

    fn dim(&self) -> usize {
        self.base_ideal().dim()
    }

    /// The ideal at `c`; the unit ideal for `c ≤ 0`.
    fn eval(&self, c: &Rational) -> Result<MonomialIdeal>;

    /// The limit from the left, `eval(c - ε)` for small `ε > 0`.
    fn eval_left(&self, c: &Rational) -> Result<MonomialIdeal>;

    fn skoda_bound(&self) -> Rational;

    /// Sorted list containing every jump in `(0, c_max]`.
    fn candidates(&self, c_max: &Rational) -> Result<Vec<Rational>>;
}

/// Memo table shared by the concrete filtrations.
#[derive(Default)]
pub(crate) struct EvalCache {
    map: Mutex<HashMap<(Rational, bool), MonomialIdeal>>,
}

impl EvalCache {
    pub(crate) fn get_or(
        &self,
        c: &Rational,
        left: bool,
        f: impl FnOnce() -> Result<MonomialIdeal>,
    ) -> Result<MonomialIdeal> {
        if let Some(v) = self.map.lock().unwrap().get(&(c.clone(), left)) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.map.lock().unwrap().insert((c.clone(), left), v.clone());
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub c: Rational,
    pub ideal: MonomialIdeal,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpTable {
    pub jumps: Vec<Jump>,
    pub c_max: Rational,
}

impl JumpTable {
    /// Least common multiple of the jump denominators.
    pub fn denominator(&self) -> BigInt {
        rational::lcm_of_denominators(self.jumps.iter().map(|j| &j.c))
    }
}

fn require_positive(c: &Rational, what: &str) -> Result<()> {
    if rational::is_positive(c) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} must be positive")))
    }
}

/// Jumps of `f` in `(0, c_max]` with their multiplicities.
///
/// Besides comparing `eval_left` and `eval` at each candidate, the value at
/// the midpoint before each candidate must equal the left limit there; a
/// mismatch means the candidate list missed a jump.
pub fn jumping_numbers(f: &dyn Filtration, c_max: &Rational) -> Result<JumpTable> {
    require_positive(c_max, "c_max")?;
    let mut prev = Rational::zero();
    let mut jumps = Vec::new();
    for c in f.candidates(c_max)? {
        if !rational::is_positive(&c) || &c > c_max {
            continue;
        }
        let left = f.eval_left(&c)?;
        let mid = (&prev + &c) / Rational::from_integer(BigInt::from(2));
        if f.eval(&mid)? != left {
            return Err(Error::Invariant(format!(
                "filtration is not constant on ({}, {})",
                rational::format_rational(&prev),
                rational::format_rational(&c)
            )));
        }
        let ideal = f.eval(&c)?;
        if !left.contains_ideal(&ideal)? {
            return Err(Error::Invariant(format!("filtration increases at {}", rational::format_rational(&c))));
        }
        let m = quotient_length(&left, &ideal)?;
        if m > 0 {
            jumps.push(Jump { c: c.clone(), ideal, multiplicity: m });
        }
        prev = c;
    }
    Ok(JumpTable { jumps, c_max: c_max.clone() })
}

/// `λ(eval_left(c) / eval(c))`
pub fn multiplicity(f: &dyn Filtration, c: &Rational) -> Result<u64> {
    quotient_length(&f.eval_left(c)?, &f.eval(c)?)
}

/// Integer polynomial `h(T)` with `Σ_j λ(M_0/M_j) T^j = h(T)/(1-T)^{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl HPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `h(T)/(1-T)^{d+1}`
    pub fn hilbert_series(&self, dim: usize) -> UniRational {
        UniRational::new(self.coeffs.clone(), dim as u32 + 1)
    }
}

impl fmt::Display for HPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", UniRational::new(self.coeffs.clone(), 0))
    }
}

/// `h_n = Σ_i (-1)^i C(d+1, i) λ_{n-i}`
fn h_coefficient(lengths: &[u64], n: usize, d: usize) -> BigInt {
    let w = one_minus_t_pow(d as u32 + 1);
    (0..w.len()).filter(|&i| i <= n).map(|i| &w[i] * BigInt::from(lengths[n - i])).sum()
}

fn hilbert_samuel(f: &dyn Filtration, c: &Rational, left: bool) -> Result<HPolynomial> {
    let ev = |x: &Rational| if left { f.eval_left(x) } else { f.eval(x) };
    let d = f.dim();
    let a = f.base_ideal();
    let bound = f.skoda_bound();
    let cap = (10 * (d as i64 + rational::ceil(&bound).to_i64().unwrap_or(0))).max(2 * d as i64 + 8) as usize;
    let m0 = ev(c)?;
    let base = m0.colength()?;
    let mut lengths = vec![0u64];
    let mut cur = m0;
    let mut tail_from: Option<usize> = None;
    for j in 1..=cap {
        let cj = c + Rational::from_integer(BigInt::from(j));
        let next = if tail_from.is_some() {
            a.product(&cur)?
        } else {
            let direct = ev(&cj)?;
            if cj > bound {
                if direct != a.product(&cur)? {
                    return Err(Error::InvalidFiltration(format!(
                        "tail rule fails at {}",
                        rational::format_rational(&cj)
                    )));
                }
                tail_from = Some(j);
            }
            direct
        };
        lengths.push(next.colength()? - base);
        cur = next;
        let Some(t0) = tail_from else { continue };
        if j < t0 + d + 1 {
            continue;
        }
        if (j - d - 1..=j).all(|n| h_coefficient(&lengths, n, d).is_zero()) {
            let mut coeffs: Vec<BigInt> = (0..j - d - 1).map(|n| h_coefficient(&lengths, n, d)).collect();
            while coeffs.last().is_some_and(|x| x.is_zero()) {
                coeffs.pop();
            }
            let h = HPolynomial { coeffs };
            let predicted = h.hilbert_series(d).expand(j + 3);
            for k in j + 1..=j + 3 {
                let direct = ev(&(c + Rational::from_integer(BigInt::from(k))))?.colength()? - base;
                if predicted[k] != BigInt::from(direct) {
                    return Err(Error::NoStabilization(format!(
                        "h-polynomial {h} predicts {} at j = {k}, found {direct}",
                        predicted[k]
                    )));
                }
            }
            if h.at_one().is_zero() {
                return Err(Error::Invariant(format!("h-polynomial {h} vanishes at 1")));
            }
            return Ok(h);
        }
    }
    Err(Error::NoStabilization(format!(
        "lengths {lengths:?} at {} did not stabilize within {cap} steps",
        rational::format_rational(c)
    )))
}

/// h-polynomial of `j ↦ eval(c + j)`.
pub fn h_polynomial(f: &dyn Filtration, c: &Rational) -> Result<HPolynomial> {
    hilbert_samuel(f, c, false)
}

/// h-polynomial of `j ↦ eval_left(c + j)`.
pub fn h_polynomial_left(f: &dyn Filtration, c: &Rational) -> Result<HPolynomial> {
    hilbert_samuel(f, c, true)
}

/// `Σ_j m(c+j) T^j` as a rational function.
pub fn tail_series(f: &dyn Filtration, c: &Rational) -> Result<UniRational> {
    require_positive(c, "c")?;
    let d = f.dim();
    let m = multiplicity(f, c)?;
    let h = h_polynomial(f, c)?.hilbert_series(d);
    let hl = h_polynomial_left(f, c)?.hilbert_series(d);
    Ok(&UniRational::from_i64(&[m as i64], 1) + &(&h - &hl))
}

/// Jumps up to this bound meet every class that carries a jump at all.
pub(crate) fn class_window(f: &dyn Filtration) -> Rational {
    Rational::from_integer(rational::ceil(&f.skoda_bound()) + BigInt::one())
}

/// Closed form of `Σ_c m(c) T^c`.
pub fn poincare_closed_form(f: &dyn Filtration) -> Result<PoincareForm> {
    let table = jumping_numbers(f, &class_window(f))?;
    let classes: BTreeSet<Rational> = table.jumps.iter().map(|j| rational::class_of(&j.c)).collect();
    let mut form = PoincareForm::new();
    for c in classes {
        let r = tail_series(f, &c)?;
        form.add_class(c, r)?;
    }
    Ok(form)
}

/// `Σ m(c) T^c` over the jumps `c ≤ order`, read off the jump table.
pub fn poincare_bruteforce(f: &dyn Filtration, order: &Rational) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::new(order.clone());
    for j in jumping_numbers(f, order)?.jumps {
        s.add_term(j.c, BigInt::from(j.multiplicity));
    }
    Ok(s)
}

/// Values of `j ↦ m(c + j)` on a window and whether a polynomial of degree
/// below `d` fitted on all but the last three values predicts those three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialProbe {
    pub start: u64,
    pub values: Vec<u64>,
    pub fits: bool,
}

pub fn probe_multiplicity_polynomial(f: &dyn Filtration, c: &Rational, start: u64) -> Result<PolynomialProbe> {
    let d = f.dim();
    let values = (start..start + d as u64 + 3)
        .map(|j| multiplicity(f, &(c + Rational::from_integer(BigInt::from(j)))))
        .collect::<Result<Vec<_>>>()?;
    let fit: Vec<BigInt> = values[..d].iter().map(|&v| BigInt::from(v)).collect();
    // extend by the recurrence Δ^d = 0
    let w = one_minus_t_pow(d as u32);
    let mut seq = fit;
    for _ in 0..3 {
        let n = seq.len();
        let next: BigInt = -(1..w.len()).map(|i| &w[i] * &seq[n - i]).sum::<BigInt>();
        seq.push(next);
    }
    let fits = seq.iter().zip(&values).all(|(a, &b)| *a == BigInt::from(b));
    Ok(PolynomialProbe { start, values, fits })
}

/// A filtration given by a finite table up to `B` and by `eval(c) = 𝔞·eval(c-1)`
/// beyond it.
pub struct TableFiltration {
    base: MonomialIdeal,
    entries: Vec<(Rational, MonomialIdeal)>,
    bound: Rational,
    cache: EvalCache,
}

impl TableFiltration {
    pub fn new(base: MonomialIdeal, entries: Vec<(Rational, MonomialIdeal)>, bound: Rational) -> Result<Self> {
        base.require_m_primary("base ideal")?;
        if base.is_unit() {
            return Err(Error::Precondition("base ideal must be proper".into()));
        }
        require_positive(&bound, "table bound")?;
        let mut prev_c = Rational::zero();
        let mut prev = MonomialIdeal::unit(base.dim());
        for (c, ideal) in &entries {
            if ideal.dim() != base.dim() {
                return Err(Error::DimensionMismatch { expected: base.dim(), found: ideal.dim() });
            }
            if c <= &prev_c || c > &bound {
                return Err(Error::InvalidFiltration(format!(
                    "entry {} is not ascending within (0, B]",
                    rational::format_rational(c)
                )));
            }
            ideal.require_m_primary("table entry")?;
            if ideal == &prev || !prev.contains_ideal(ideal)? {
                return Err(Error::InvalidFiltration(format!(
                    "entry at {} does not strictly decrease",
                    rational::format_rational(c)
                )));
            }
            prev_c = c.clone();
            prev = ideal.clone();
        }
        let f = TableFiltration { base, entries, bound, cache: EvalCache::default() };
        f.check_seam()?;
        Ok(f)
    }

    /// Monotonicity on `[B, B+1]`, including the point just after `B`.
    fn check_seam(&self) -> Result<()> {
        let one = Rational::one();
        let mut points: BTreeSet<Rational> = BTreeSet::new();
        points.insert(self.bound.clone());
        points.insert(&self.bound + &one);
        for (c, _) in &self.entries {
            let s = c + &one;
            if s > self.bound && s <= &self.bound + &one {
                points.insert(s);
            }
        }
        let pts: Vec<Rational> = points.into_iter().collect();
        let mut probes = Vec::new();
        for w in pts.windows(2) {
            probes.push(w[0].clone());
            probes.push((&w[0] + &w[1]) / Rational::from_integer(BigInt::from(2)));
        }
        probes.push(pts.last().unwrap().clone());
        let mut prev: Option<MonomialIdeal> = None;
        for p in &probes {
            let v = self.eval(p)?;
            if let Some(q) = &prev {
                if !q.contains_ideal(&v)? {
                    return Err(Error::InvalidFiltration(format!(
                        "not decreasing across the table bound near {}",
                        rational::format_rational(p)
                    )));
                }
            }
            prev = Some(v);
        }
        Ok(())
    }

    pub fn entries(&self) -> &[(Rational, MonomialIdeal)] {
        &self.entries
    }

    fn lookup(&self, c: &Rational, left: bool) -> MonomialIdeal {
        self.entries
            .iter()
            .rev()
            .find(|(e, _)| if left { e < c } else { e <= c })
            .map(|(_, i)| i.clone())
            .unwrap_or_else(|| MonomialIdeal::unit(self.base.dim()))
    }

    fn value(&self, c: &Rational, left: bool) -> Result<MonomialIdeal> {
        if !rational::is_positive(c) {
            return Ok(MonomialIdeal::unit(self.base.dim()));
        }
        if c <= &self.bound {
            return Ok(self.lookup(c, left));
        }
        self.cache.get_or(c, left, || {
            let below = self.value(&(c - Rational::one()), left)?;
            self.base.product(&below)
        })
    }
}

/// Table filtration with validation of monotonicity and the seam at `B`.
pub fn make_table_filtration(
    base: MonomialIdeal,
    entries: Vec<(Rational, MonomialIdeal)>,
    bound: Rational,
) -> Result<TableFiltration> {
    TableFiltration::new(base, entries, bound)
}

impl Filtration for TableFiltration {
    fn base_ideal(&self) -> &MonomialIdeal {
        &self.base
    }

    fn eval(&self, c: &Rational) -> Result<MonomialIdeal> {
        self.value(c, false)
    }

    fn eval_left(&self, c: &Rational) -> Result<MonomialIdeal> {
        self.value(c, true)
    }

    fn skoda_bound(&self) -> Rational {
        self.bound.clone()
    }

    fn candidates(&self, c_max: &Rational) -> Result<Vec<Rational>> {
        let mut out = BTreeSet::new();
        let seeds = self.entries.iter().map(|(c, _)| c.clone()).chain(std::iter::once(self.bound.clone()));
        for s in seeds {
            let mut x = s;
            while &x <= c_max {
                out.insert(x.clone());
                x += Rational::one();
            }
        }
        out.insert(c_max.clone());
        Ok(out.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    /// `c ↦ 𝔪^{⌊c⌋}` built as a table.
    fn floor_powers() -> TableFiltration {
        let m = MonomialIdeal::maximal(2);
        make_table_filtration(m.clone(), vec![(int(1), m)], int(1)).unwrap()
    }

    #[test]
    fn table_examples() {
        let f = floor_powers();
        let m = MonomialIdeal::maximal(2);
        for k in 0..5u64 {
            assert_eq!(f.eval(&int(k as i64)).unwrap(), m.power(k).unwrap());
        }
        assert_eq!(f.eval(&frac(3, 2)).unwrap(), m);
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        let g = make_table_filtration(a, vec![(frac(1, 2), m.clone()), (int(1), m.power(2).unwrap())], int(1)).unwrap();
        let js: Vec<Rational> = jumping_numbers(&g, &int(2)).unwrap().jumps.into_iter().map(|j| j.c).collect();
        assert_eq!(js, vec![frac(1, 2), int(1), frac(3, 2), int(2)]);
        let bad = make_table_filtration(m.clone(), vec![(frac(1, 2), m.power(2).unwrap()), (int(1), m.clone())], int(1));
        assert!(matches!(bad, Err(Error::InvalidFiltration(_))));
        // the seam: 𝔪^3 at B followed by 𝔪·unit = 𝔪 just after it
        let seam = make_table_filtration(m.clone(), vec![(int(1), m.power(3).unwrap())], int(1));
        assert!(matches!(seam, Err(Error::InvalidFiltration(_))));
    }

    #[test]
    fn trivial_filtration_h_polynomial() {
        // eval(j) = 𝔪^j at integers, so the chain from 0 is the 𝔪-adic one:
        // Σ λ(A/𝔪^j) T^j = T/(1-T)^3
        let f = floor_powers();
        assert_eq!(h_polynomial(&f, &int(0)).unwrap().coeffs, vec![BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn probe_on_powers() {
        let f = floor_powers();
        let p = probe_multiplicity_polynomial(&f, &int(1), 2).unwrap();
        assert_eq!(p.values, vec![3, 4, 5, 6, 7]);
        assert!(p.fits);
    }
}
