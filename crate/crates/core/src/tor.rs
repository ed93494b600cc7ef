//! Multigraded Tor of monomial quotients through Taylor complexes, and the
//! length identities built on it: `λ(J/𝔞^jJ)` through the image of the
//! second differential, the generating function of `λ(𝔞^jK/𝔞^jJ)`, the
//! Cohen–Macaulay shape of the Poincaré series and the excess in dimension 2.
//!
//! `Tor_i(A/I, A/J)` is the homology of `T(I) ⊗ A/J`, where `T(I)` is the
//! Taylor resolution of `A/I`. In a fixed multidegree `u` the tensored complex
//! has one basis vector per pair (subset `S`, standard monomial `m` of `J`)
//! with `label(S) + m = u`, so each multidegree is a small ±1 matrix problem.
//! Computing `Tor_i` only needs subsets of size at most `i + 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::filtration::{multiplicity, poincare_closed_form, Filtration};
use crate::linalg;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::is_reduction;
use crate::rational::{self, Rational};
use crate::series::{PoincareForm, UniRational};
use crate::{Error, Result};

/// Generator-count limit for the full Taylor complex.
pub const FULL_TAYLOR_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorCell {
    /// Bit `k` set when generator `k` belongs to the subset.
    pub subset: u64,
    /// Exponent of the lcm of the generators in the subset.
    pub label: ExponentVector,
}

impl TaylorCell {
    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|k| self.subset >> k & 1 == 1).collect()
    }
}

/// Taylor complex of a monomial ideal, possibly truncated above some degree.
#[derive(Clone, Debug)]
pub struct LabeledComplex {
    generators: Vec<ExponentVector>,
    terms: Vec<Vec<TaylorCell>>,
    index: Vec<HashMap<u64, usize>>,
}

impl LabeledComplex {
    fn build(ideal: &MonomialIdeal, max_size: usize) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gens = ideal.gens().to_vec();
        let g = gens.len();
        if g > 64 {
            return Err(Error::Resource(format!("{g} generators exceed the Taylor complex limit of 64")));
        }
        let top = max_size.min(g);
        let mut terms: Vec<Vec<TaylorCell>> = vec![Vec::new(); top + 1];
        terms[0].push(TaylorCell { subset: 0, label: ExponentVector::zero(ideal.dim()) });
        // grow subsets by appending generators above the current maximum
        for size in 1..=top {
            let prev = std::mem::take(&mut terms[size - 1]);
            let mut cur = Vec::new();
            for cell in &prev {
                let start = if cell.subset == 0 { 0 } else { 64 - cell.subset.leading_zeros() as usize };
                for (k, gk) in gens.iter().enumerate().skip(start) {
                    cur.push(TaylorCell { subset: cell.subset | 1 << k, label: cell.label.lcm(gk) });
                }
            }
            terms[size - 1] = prev;
            terms[size] = cur;
        }
        let index = terms
            .iter()
            .map(|cells| cells.iter().enumerate().map(|(i, c)| (c.subset, i)).collect())
            .collect();
        Ok(LabeledComplex { generators: gens, terms, index })
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn terms(&self) -> &[Vec<TaylorCell>] {
        &self.terms
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.len()).collect()
    }

    /// Faces of a cell in degree `i` as `(index in degree i-1, sign)`.
    pub fn boundary(&self, i: usize, cell: usize) -> Vec<(usize, i64)> {
        let s = self.terms[i][cell].subset;
        let mut out = Vec::new();
        let mut pos = 0;
        for k in 0..64 {
            if s >> k & 1 == 0 {
                continue;
            }
            let face = s & !(1u64 << k);
            out.push((self.index[i - 1][&face], if pos % 2 == 0 { 1 } else { -1 }));
            pos += 1;
        }
        out
    }

    /// `d∘d = 0`, checked on signs and monomial twists.
    pub fn check_d_squared(&self) -> bool {
        for i in 2..self.terms.len() {
            for (ci, cell) in self.terms[i].iter().enumerate() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (f, s1) in self.boundary(i, ci) {
                    for (h, s2) in self.boundary(i - 1, f) {
                        // the twist x^{label(S) - label(F)}·x^{label(F) - label(H)}
                        let face = &self.terms[i - 1][f].label;
                        let inner = &self.terms[i - 2][h].label;
                        if !face.divides(&cell.label) || !inner.divides(face) {
                            return false;
                        }
                        *acc.entry(h).or_default() += s1 * s2;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Full Taylor complex, all `2^g` subsets.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<LabeledComplex> {
    if ideal.num_gens() > FULL_TAYLOR_LIMIT {
        return Err(Error::Resource(format!(
            "{} generators exceed the full Taylor complex limit of {FULL_TAYLOR_LIMIT}; use a smaller power or dimension",
            ideal.num_gens()
        )));
    }
    LabeledComplex::build(ideal, ideal.num_gens())
}

/// Subsets of size at most `max_size` only; exact for homology below `max_size`.
pub fn taylor_complex_truncated(ideal: &MonomialIdeal, max_size: usize) -> Result<LabeledComplex> {
    LabeledComplex::build(ideal, max_size)
}

/// Homology of `T(resolved) ⊗ A/other`, summed over multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorHomology {
    /// `λ(H_i)` for `i` below the truncation degree.
    pub homology: Vec<u64>,
    /// `Σ_u rank d_i(u)` for `i = 0, 1, ...`; `rank[0]` is always 0.
    pub rank: Vec<u64>,
    /// `Σ_u dim C_i(u)`
    pub chain: Vec<u64>,
    /// Alternating sums of homology and chain dimensions agree in every
    /// multidegree (only meaningful for the full complex).
    pub euler_consistent: bool,
}

fn tensor_homology(resolved: &MonomialIdeal, other: &MonomialIdeal, max_size: usize) -> Result<TensorHomology> {
    if resolved.dim() != other.dim() {
        return Err(Error::DimensionMismatch { expected: resolved.dim(), found: other.dim() });
    }
    let cx = taylor_complex_truncated(resolved, max_size)?;
    let top = cx.terms.len() - 1;
    let std = other.standard_monomials()?;
    let mut groups: HashMap<ExponentVector, Vec<Vec<u64>>> = HashMap::new();
    for (deg, cells) in cx.terms.iter().enumerate() {
        for cell in cells {
            for m in &std {
                let u = cell.label.checked_add(m)?;
                groups.entry(u).or_insert_with(|| vec![Vec::new(); top + 1])[deg].push(cell.subset);
            }
        }
    }
    let mut homology = vec![0u64; top + 1];
    let mut rank = vec![0u64; top + 2];
    let mut chain = vec![0u64; top + 1];
    let mut euler_consistent = true;
    for mut lists in groups.into_values() {
        for l in lists.iter_mut() {
            l.sort_unstable();
        }
        let mut r = vec![0usize; top + 2];
        for i in 1..=top {
            let (rows, cols) = (&lists[i - 1], &lists[i]);
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let mut m = vec![vec![0i64; cols.len()]; rows.len()];
            for (ci, &s) in cols.iter().enumerate() {
                let mut pos = 0;
                for k in 0..64 {
                    if s >> k & 1 == 0 {
                        continue;
                    }
                    if let Ok(ri) = rows.binary_search(&(s & !(1u64 << k))) {
                        m[ri][ci] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                    pos += 1;
                }
            }
            r[i] = linalg::rank(&m);
        }
        let mut alt_h = 0i64;
        let mut alt_c = 0i64;
        for i in 0..=top {
            let n = lists[i].len();
            let h = n - r[i] - r[i + 1];
            homology[i] += h as u64;
            chain[i] += n as u64;
            rank[i] += r[i] as u64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            alt_h += sign * h as i64;
            alt_c += sign * n as i64;
        }
        euler_consistent &= alt_h == alt_c;
    }
    Ok(TensorHomology { homology, rank, chain, euler_consistent })
}

/// Which argument of Tor gets resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolve {
    /// Resolve `A/𝔞^j`, tensor with `A/J`.
    Power,
    /// Resolve `A/J`, tensor with `A/𝔞^j`.
    Argument,
}

/// One row of a Tor table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorRow {
    pub j: u64,
    /// `λ(Tor_i(A/𝔞^j, A/J))` for `i = 0..=i_max`
    pub tor: Vec<u64>,
    /// `λ(Im φ_j)`, the image of the second differential in `(A/J)^{β₁}`.
    pub image_phi: u64,
    /// Image of the third differential.
    pub image_phi3: u64,
    /// Number of minimal generators of `𝔞^j`.
    pub beta1: u64,
}

fn check_tor_inputs(a: &MonomialIdeal, j: u64, big_j: &MonomialIdeal) -> Result<()> {
    if j == 0 {
        return Err(Error::Precondition("j must be positive".into()));
    }
    a.require_m_primary("base ideal")?;
    big_j.require_m_primary("J")?;
    if a.dim() != big_j.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: big_j.dim() });
    }
    Ok(())
}

/// `λ(Tor_i(A/𝔞^j, A/J))` for `i ≤ i_max`, resolving the chosen side.
pub fn tor_lengths_with(
    a: &MonomialIdeal,
    j: u64,
    big_j: &MonomialIdeal,
    i_max: usize,
    side: Resolve,
) -> Result<TorRow> {
    check_tor_inputs(a, j, big_j)?;
    let power = a.power(j)?;
    let (resolved, other) = match side {
        Resolve::Power => (&power, big_j),
        Resolve::Argument => (big_j, &power),
    };
    let h = tensor_homology(resolved, other, (i_max + 1).max(3))?;
    let mut tor: Vec<u64> = h.homology.iter().take(i_max + 1).copied().collect();
    tor.resize(i_max + 1, 0);
    let (image_phi, image_phi3) = match side {
        Resolve::Power => (h.rank.get(2).copied().unwrap_or(0), h.rank.get(3).copied().unwrap_or(0)),
        Resolve::Argument => {
            let g = tensor_homology(&power, big_j, 3)?;
            (g.rank[2], g.rank[3])
        }
    };
    Ok(TorRow { j, tor, image_phi, image_phi3, beta1: power.num_gens() as u64 })
}

pub fn tor_lengths(a: &MonomialIdeal, j: u64, big_j: &MonomialIdeal, i_max: usize) -> Result<TorRow> {
    tor_lengths_with(a, j, big_j, i_max, Resolve::Power)
}

/// `λ(Im φ_j^J)` alone.
pub fn image_phi_length(a: &MonomialIdeal, j: u64, big_j: &MonomialIdeal) -> Result<u64> {
    check_tor_inputs(a, j, big_j)?;
    if big_j.is_unit() {
        return Ok(0);
    }
    Ok(tensor_homology(&a.power(j)?, big_j, 2)?.rank[2])
}

/// Per-multidegree Euler characteristic check on the full Taylor complex.
pub fn euler_characteristic_holds(a: &MonomialIdeal, j: u64, big_j: &MonomialIdeal) -> Result<bool> {
    check_tor_inputs(a, j, big_j)?;
    let power = a.power(j)?;
    if power.num_gens() > FULL_TAYLOR_LIMIT {
        return Err(Error::Resource("too many generators for the full complex".into()));
    }
    Ok(tensor_homology(&power, big_j, power.num_gens())?.euler_consistent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub base: MonomialIdeal,
    pub argument: MonomialIdeal,
    pub rows: Vec<TorRow>,
}

pub fn tor_table(a: &MonomialIdeal, big_j: &MonomialIdeal, js: &[u64], i_max: usize) -> Result<TorTable> {
    let rows = js.iter().map(|&j| tor_lengths(a, j, big_j, i_max)).collect::<Result<_>>()?;
    Ok(TorTable { base: a.clone(), argument: big_j.clone(), rows })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn require_parameter(a: &MonomialIdeal) -> Result<()> {
    if a.is_pure_power_parameter() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{a} is not generated by pure powers of the variables")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma41Report {
    pub j: u64,
    /// `λ(J/𝔞^jJ)` from colengths.
    pub lhs: i64,
    pub colength_power: u64,
    pub image_phi: u64,
    pub beta1: u64,
    pub colength_j: u64,
    /// `λ(A/𝔞^j) - λ(Im φ_j) + (β₁ - 1)λ(A/J)`
    pub rhs: i64,
    pub holds: bool,
}

/// `λ(J/𝔞^jJ) = λ(A/𝔞^j) - λ(Im φ_j) + (β₁ - 1)·λ(A/J)`, both sides computed
/// independently.
pub fn verify_lemma_41(a: &MonomialIdeal, j: u64, big_j: &MonomialIdeal) -> Result<Lemma41Report> {
    require_parameter(a)?;
    check_tor_inputs(a, j, big_j)?;
    let d = a.dim() as u64;
    let power = a.power(j)?;
    let lhs = power.product(big_j)?.colength()? as i64 - big_j.colength()? as i64;
    let beta1 = binomial(j + d - 1, d - 1).to_u64().ok_or(Error::Overflow)?;
    if beta1 != power.num_gens() as u64 {
        return Err(Error::Invariant(format!("β₁ = {beta1} but 𝔞^{j} has {} generators", power.num_gens())));
    }
    let image_phi = image_phi_length(a, j, big_j)?;
    let colength_power = power.colength()?;
    let colength_j = big_j.colength()?;
    let rhs = colength_power as i64 - image_phi as i64 + (beta1 as i64 - 1) * colength_j as i64;
    Ok(Lemma41Report { j, lhs, colength_power, image_phi, beta1, colength_j, rhs, holds: lhs == rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma42Report {
    /// `λ(𝔞^jK/𝔞^jJ)` for `j = 0..=N`
    pub lhs: Vec<i64>,
    /// `λ(K/J)·C(j+d-1, d-1) + λ(Im φ_j^K) - λ(Im φ_j^J)`
    pub rhs: Vec<i64>,
    pub holds: bool,
}

/// Coefficientwise check of
/// `Σ_j λ(𝔞^jK/𝔞^jJ) T^j = λ(K/J)/(1-T)^d + Σ_{j≥1} (λ(Im φ_j^K) - λ(Im φ_j^J)) T^j`.
pub fn verify_lemma_42(a: &MonomialIdeal, k: &MonomialIdeal, big_j: &MonomialIdeal, order: u64) -> Result<Lemma42Report> {
    require_parameter(a)?;
    k.require_m_primary("K")?;
    big_j.require_m_primary("J")?;
    if !k.contains_ideal(big_j)? {
        return Err(Error::Precondition("J must be contained in K".into()));
    }
    let d = a.dim() as u64;
    let quotient = big_j.colength()? as i64 - k.colength()? as i64;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..=order {
        let power = a.power(j)?;
        lhs.push(power.product(big_j)?.colength()? as i64 - power.product(k)?.colength()? as i64);
        let mut r = quotient * binomial(j + d - 1, d - 1).to_i64().ok_or(Error::Overflow)?;
        if j >= 1 {
            r += image_phi_length(a, j, k)? as i64 - image_phi_length(a, j, big_j)? as i64;
        }
        rhs.push(r);
    }
    let holds = lhs == rhs;
    Ok(Lemma42Report { lhs, rhs, holds })
}

/// Result of fitting `j ↦ value` by a polynomial of degree below `degree_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFit {
    pub start: u64,
    pub values: Vec<i64>,
    /// The `degree_bound`-th differences vanish on the window.
    pub differences_vanish: bool,
    /// Values predicted from the first `degree_bound` entries, compared with
    /// the remaining entries.
    pub predicts: bool,
}

/// `degree_bound`-th differences and forward prediction on `values`.
pub fn fit_polynomial(start: u64, values: &[i64], degree_bound: usize) -> PolynomialFit {
    let w = crate::series::one_minus_t_pow(degree_bound as u32);
    let w: Vec<i64> = w.iter().map(|x| x.to_i64().unwrap()).collect();
    let differences_vanish = values
        .windows(degree_bound + 1)
        .all(|win| win.iter().rev().zip(&w).map(|(v, c)| v * c).sum::<i64>() == 0);
    let mut seq: Vec<i64> = values[..degree_bound.min(values.len())].to_vec();
    while seq.len() < values.len() {
        let n = seq.len();
        let next: i64 = -(1..w.len()).map(|i| w[i] * seq[n - i]).sum::<i64>();
        seq.push(next);
    }
    PolynomialFit { start, values: values.to_vec(), differences_vanish, predicts: seq == values }
}

/// `j ↦ λ(Tor_i(A/𝔞^j, A/J))` on `j = start..start+len`, fitted by a
/// polynomial of degree `d - 1`.
pub fn kodiyalam_fit(a: &MonomialIdeal, big_j: &MonomialIdeal, i: usize, start: u64, len: usize) -> Result<PolynomialFit> {
    let values = (start..start + len as u64)
        .map(|j| tor_lengths(a, j, big_j, i).map(|r| r.tor[i] as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_polynomial(start, &values, a.dim()))
}

/// Cohen–Macaulay data of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmClass {
    /// `m(c), ..., m(c+d-1)`
    pub leading: Vec<u64>,
    /// `α_1, ..., α_d`
    pub alphas: Vec<BigInt>,
    /// `p(T)`, ascending coefficients.
    pub correction: Vec<BigInt>,
    /// First `j` from which the image differences follow the polynomial.
    pub window_start: u64,
    /// The class series rebuilt from the data above.
    pub series: UniRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmForm {
    pub reduction: MonomialIdeal,
    pub classes: BTreeMap<Rational, CmClass>,
}

impl CmForm {
    pub fn to_poincare_form(&self) -> Result<PoincareForm> {
        let mut f = PoincareForm::new();
        for (c, cls) in &self.classes {
            f.add_class(c.clone(), cls.series.clone())?;
        }
        Ok(f)
    }
}

/// Solves `Σ_i α_i·C(j+i-2, i-1) = D_j` for the `d` given consecutive `j`.
fn solve_alphas(start: u64, values: &[i64]) -> Option<Vec<BigInt>> {
    let d = values.len();
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            let j = start + r as u64;
            let mut row: Vec<Rational> =
                (1..=d as u64).map(|i| Rational::from_integer(binomial(j + i - 2, i - 1))).collect();
            row.push(Rational::from_integer(BigInt::from(values[r])));
            row
        })
        .collect();
    for col in 0..d {
        let p = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    m.iter().map(|row| row[d].is_integer().then(|| row[d].to_integer())).collect()
}

fn alpha_value(alphas: &[BigInt], j: u64) -> BigInt {
    alphas.iter().enumerate().map(|(k, a)| a * binomial(j + k as u64 - 1, k as u64)).sum()
}

/// The Cohen–Macaulay shape of the Poincaré series over a pure-power
/// reduction `Q` of the base ideal:
/// `R_c = Σ_{i<d-1} m(c+i)T^i + m(c+d-1)T^{d-1}/(1-T)^d + T^d(Σ α_i/(1-T)^i + p(T))`.
/// The result is checked against [`poincare_closed_form`].
pub fn cm_poincare_form(f: &dyn Filtration, q: &MonomialIdeal) -> Result<CmForm> {
    let d = f.dim();
    if !q.is_pure_power_parameter() || !is_reduction(q, f.base_ideal())? {
        return Err(Error::NoParameterReduction(q.to_string()));
    }
    let dd = Rational::from_integer(BigInt::from(d));
    for c in f.candidates(&(&dd + Rational::from_integer(BigInt::from(2))))? {
        if c > dd && f.eval(&c)? != q.product(&f.eval(&(&c - Rational::one()))?)? {
            return Err(Error::Precondition(format!(
                "Skoda tail over {q} fails at {}",
                rational::format_rational(&c)
            )));
        }
    }
    let closed = poincare_closed_form(f)?;
    let mut classes = BTreeMap::new();
    for c in closed.classes().keys() {
        let shift = |i: usize| c + Rational::from_integer(BigInt::from(i));
        let leading = (0..d).map(|i| multiplicity(f, &shift(i))).collect::<Result<Vec<_>>>()?;
        let k_ideal = f.eval_left(&shift(d - 1))?;
        let j_ideal = f.eval(&shift(d - 1))?;
        let mut diffs: Vec<i64> = Vec::new();
        let diff_at = |j: u64| -> Result<i64> {
            Ok(image_phi_length(q, j, &k_ideal)? as i64 - image_phi_length(q, j, &j_ideal)? as i64)
        };
        let cap = 40u64;
        let mut found = None;
        for k in 1..=cap {
            let need = (k + 2 * d as u64 + 2) as usize;
            while diffs.len() < need {
                diffs.push(diff_at(diffs.len() as u64 + 1)?);
            }
            let window = &diffs[(k - 1) as usize..need];
            let fit = fit_polynomial(k, &window[..2 * d], d);
            if !fit.differences_vanish {
                continue;
            }
            let Some(alphas) = solve_alphas(k, &window[..d]) else { continue };
            let ok = window.iter().enumerate().all(|(o, &v)| alpha_value(&alphas, k + o as u64) == BigInt::from(v));
            if ok {
                found = Some((k, alphas));
                break;
            }
        }
        let (k, alphas) = found.ok_or_else(|| {
            Error::NoStabilization(format!(
                "image differences {diffs:?} for class {} have no polynomial tail",
                rational::format_rational(c)
            ))
        })?;
        let correction: Vec<BigInt> = (1..k)
            .map(|j| BigInt::from(diffs[(j - 1) as usize]) - alpha_value(&alphas, j))
            .collect();
        let mut series = UniRational::zero();
        for (i, m) in leading.iter().enumerate().take(d - 1) {
            series = &series + &UniRational::from_i64(&[*m as i64], 0).shift(i);
        }
        series = &series + &UniRational::from_i64(&[leading[d - 1] as i64], d as u32).shift(d - 1);
        let mut tail = UniRational::new(correction.clone(), 0);
        for (i, a) in alphas.iter().enumerate() {
            tail = &tail + &UniRational::new(vec![a.clone()], i as u32 + 1);
        }
        series = &series + &tail.shift(d);
        let expected = closed.classes().get(c).cloned().unwrap_or_else(UniRational::zero);
        if series != expected {
            return Err(Error::Invariant(format!(
                "class {}: Cohen–Macaulay form {series} differs from closed form {expected}",
                rational::format_rational(c)
            )));
        }
        classes.insert(c.clone(), CmClass { leading, alphas, correction, window_start: k, series });
    }
    Ok(CmForm { reduction: q.clone(), classes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessReport {
    pub c: Rational,
    pub j: u64,
    /// `λTor₂(A/Q^j, A/𝒥_{c+1}) - λTor₂(A/Q^j, A/𝒥_{c+1-ε})`
    pub tor_difference: i64,
    /// `m(c+j) - m(c)`
    pub multiplicity_difference: i64,
    pub rho: Rational,
    /// `ρ` computed at `j = 1..=4`.
    pub rho_by_j: Vec<Rational>,
}

/// Excess `ρ_c` of a jump `c` in dimension 2 as a normalized Tor₂ difference.
/// Checks that the value does not depend on `j ∈ 1..=4` and that the Tor₂
/// difference equals `m(c+j) - m(c)`.
pub fn excess(f: &dyn Filtration, q: &MonomialIdeal, c: &Rational, j: u64) -> Result<ExcessReport> {
    if f.dim() != 2 {
        return Err(Error::Unsupported(format!("excess needs dimension 2, found {}", f.dim())));
    }
    if j == 0 {
        return Err(Error::Precondition("j must be positive".into()));
    }
    if !q.is_pure_power_parameter() || !is_reduction(q, f.base_ideal())? {
        return Err(Error::NoParameterReduction(q.to_string()));
    }
    if multiplicity(f, c)? == 0 {
        return Err(Error::Precondition(format!("{} is not a jumping number", rational::format_rational(c))));
    }
    let next = c + Rational::one();
    let at = f.eval(&next)?;
    let left = f.eval_left(&next)?;
    let tor_diff = |jj: u64| -> Result<i64> {
        Ok(tor_lengths(q, jj, &at, 2)?.tor[2] as i64 - tor_lengths(q, jj, &left, 2)?.tor[2] as i64)
    };
    let tor_difference = tor_diff(j)?;
    let m_c = multiplicity(f, c)? as i64;
    let multiplicity_difference = multiplicity(f, &(c + Rational::from_integer(BigInt::from(j))))? as i64 - m_c;
    if tor_difference != multiplicity_difference {
        return Err(Error::Invariant(format!(
            "Tor₂ difference {tor_difference} differs from m(c+j) - m(c) = {multiplicity_difference}"
        )));
    }
    let rho = Rational::new(BigInt::from(tor_difference), BigInt::from(j));
    let rho_by_j = (1..=4u64)
        .map(|jj| tor_diff(jj).map(|t| Rational::new(BigInt::from(t), BigInt::from(jj))))
        .collect::<Result<Vec<_>>>()?;
    if rho_by_j.iter().any(|r| r != &rho) {
        return Err(Error::Invariant(format!(
            "excess depends on j: {:?}",
            rho_by_j.iter().map(rational::format_rational).collect::<Vec<_>>()
        )));
    }
    Ok(ExcessReport { c: c.clone(), j, tor_difference, multiplicity_difference, rho, rho_by_j })
}

/// Pure-power parameter ideal with the same integral closure as `a`, if the
/// pure powers of `a` already give one.
pub fn pure_power_reduction(a: &MonomialIdeal) -> Result<MonomialIdeal> {
    let exps = a.pure_power_exponents().ok_or_else(|| Error::NotMPrimary(a.to_string()))?;
    let q = MonomialIdeal::pure_powers(&exps)?;
    if !q.is_unit() && is_reduction(&q, a)? {
        Ok(q)
    } else {
        Err(Error::NoParameterReduction(q.to_string()))
    }
}
