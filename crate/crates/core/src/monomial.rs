//! Monomials, monomial ideals and their arithmetic.
//!
//! An ideal is stored by its minimal generators, sorted lexicographically, so
//! structural equality is ideal equality.

use std::fmt;

use smallvec::SmallVec;

use crate::{Error, Result};

/// Exponent vector of a monomial `x^v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(SmallVec<[u32; 4]>);

impl ExponentVector {
    pub fn new(entries: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(entries))
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, dim))
    }

    /// `x_i^k`
    pub fn pure_power(dim: usize, i: usize, k: u32) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = k;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    #[inline]
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(Error::Overflow)?;
        }
        Ok(ExponentVector(out))
    }

    /// Componentwise `self - other`, if `other` divides `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(ExponentVector(out))
    }

    /// Componentwise maximum, the exponent of the lcm.
    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn checked_scale(&self, q: u64) -> Result<ExponentVector> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            let v = (*a as u64).checked_mul(q).ok_or(Error::Overflow)?;
            *a = u32::try_from(v).map_err(|_| Error::Overflow)?;
        }
        Ok(ExponentVector(out))
    }

    pub fn floor_div(&self, q: u64) -> ExponentVector {
        ExponentVector(self.0.iter().map(|&a| (a as u64 / q) as u32).collect())
    }

    /// The variable index if this is `x_i^k` with `k > 0`.
    pub fn pure_power_index(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if idx.is_some() {
                    return None;
                }
                idx = Some(i);
            }
        }
        idx
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

pub(crate) fn variable_name(dim: usize, i: usize) -> String {
    if dim <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for ExponentVector {
    /// `x^2*y`, or `1` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&variable_name(self.dim(), i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Ambient characteristic. Carried as metadata only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Characteristic {
    #[default]
    Zero,
    Prime(u64),
}

#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
    characteristic: Characteristic,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl std::hash::Hash for MonomialIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.gens.hash(state);
    }
}

/// Minimal elements under divisibility, sorted lexicographically.
fn minimal_elements(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    // Sorting by degree first means a divisor always precedes its multiples.
    gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable();
    kept
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, in canonical form.
    pub fn minimalize(dim: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        if let Some(bad) = gens.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self::from_canonical(dim, minimal_elements(gens)))
    }

    fn from_canonical(dim: usize, gens: Vec<ExponentVector>) -> Self {
        MonomialIdeal { dim, gens, characteristic: Characteristic::Zero }
    }

    /// Shorthand for tests and examples: `from_exponents(2, &[&[2, 0], &[0, 3]])`.
    pub fn from_exponents(dim: usize, gens: &[&[u32]]) -> Result<Self> {
        Self::minimalize(dim, gens.iter().map(|g| ExponentVector::new(g)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_canonical(dim, Vec::new())
    }

    pub fn unit(dim: usize) -> Self {
        Self::from_canonical(dim, vec![ExponentVector::zero(dim)])
    }

    /// The maximal ideal generated by the variables.
    pub fn maximal(dim: usize) -> Self {
        let mut gens: Vec<_> = (0..dim).map(|i| ExponentVector::pure_power(dim, i, 1)).collect();
        gens.sort_unstable();
        Self::from_canonical(dim, gens)
    }

    /// `<x_1^{a_1}, ..., x_d^{a_d}>`
    pub fn pure_powers(exponents: &[u32]) -> Result<Self> {
        let dim = exponents.len();
        Self::minimalize(
            dim,
            exponents.iter().enumerate().map(|(i, &a)| ExponentVector::pure_power(dim, i, a)).collect(),
        )
    }

    pub fn with_characteristic(mut self, characteristic: Characteristic) -> Self {
        self.characteristic = characteristic;
        self
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    fn check_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    fn derived(&self, gens: Vec<ExponentVector>) -> Self {
        Self::from_canonical(self.dim, minimal_elements(gens)).with_characteristic(self.characteristic)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.derived(self.gens.iter().chain(other.gens.iter()).cloned().collect()))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_add(b)?);
            }
        }
        Ok(self.derived(gens))
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(self.derived(gens))
    }

    pub fn power(&self, n: u64) -> Result<Self> {
        let mut acc = Self::unit(self.dim).with_characteristic(self.characteristic);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(self.contains_unchecked(v))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, v: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(v))
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_dim(other)?;
        Ok(other.gens.iter().all(|g| self.contains_unchecked(g)))
    }

    /// For each variable, the smallest `k` with `x_i^k` in the ideal.
    pub fn pure_power_exponents(&self) -> Option<Vec<u32>> {
        if self.is_unit() {
            return Some(vec![0; self.dim]);
        }
        let mut out = vec![None::<u32>; self.dim];
        for g in &self.gens {
            if let Some(i) = g.pure_power_index() {
                let k = g.entries()[i];
                out[i] = Some(out[i].map_or(k, |o: u32| o.min(k)));
            }
        }
        out.into_iter().collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_power_exponents().is_some()
    }

    pub(crate) fn require_m_primary(&self, what: &str) -> Result<()> {
        if self.is_m_primary() {
            Ok(())
        } else {
            Err(Error::NotMPrimary(format!("{what} = {self}")))
        }
    }

    /// Exactly one pure power of each variable and nothing else.
    pub fn is_pure_power_parameter(&self) -> bool {
        self.gens.len() == self.dim
            && !self.is_unit()
            && self.is_m_primary()
            && self.gens.iter().all(|g| g.pure_power_index().is_some())
    }

    /// Number of standard monomials, the length of `A/I`.
    pub fn colength(&self) -> Result<u64> {
        self.require_m_primary("colength argument")?;
        let gens: Vec<Vec<u32>> = self.gens.iter().map(|g| g.entries().to_vec()).collect();
        Ok(count_standard(gens))
    }

    /// All monomials not in the ideal, in lexicographic order.
    pub fn standard_monomials(&self) -> Result<Vec<ExponentVector>> {
        self.require_m_primary("ideal")?;
        let mut out = Vec::new();
        let bounds = self.pure_power_exponents().unwrap();
        let mut cur = vec![0u32; self.dim];
        enumerate_standard(self, &bounds, 0, &mut cur, &mut out);
        Ok(out)
    }

    /// `I^{[q]}`
    pub fn frobenius_power(&self, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Precondition("Frobenius power needs q >= 1".into()));
        }
        let gens = self.gens.iter().map(|g| g.checked_scale(q)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived(gens))
    }

    /// `I^{[1/q]}`, the smallest monomial ideal `J` with `I ⊆ J^{[q]}`.
    pub fn frobenius_root(&self, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Precondition("Frobenius root needs q >= 1".into()));
        }
        Ok(self.derived(self.gens.iter().map(|g| g.floor_div(q)).collect()))
    }
}

/// `J ⊆ I`
pub fn ideal_leq(j: &MonomialIdeal, i: &MonomialIdeal) -> Result<bool> {
    i.contains_ideal(j)
}

/// `λ(I/J)` for `J ⊆ I`.
pub fn quotient_length(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<u64> {
    if !i.contains_ideal(j)? {
        return Err(Error::Precondition(format!("quotient length needs ({j}) ⊆ ({i})")));
    }
    Ok(j.colength()? - i.colength()?)
}

/// Counts standard monomials slice by slice along the first coordinate.
/// Each slice `{v : v_0 = t}` is the standard set of the projection of the
/// generators with first entry at most `t`.
fn count_standard(mut gens: Vec<Vec<u32>>) -> u64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0;
    }
    let d = gens[0].len();
    if d == 1 {
        return gens.iter().map(|g| g[0] as u64).min().unwrap();
    }
    let b0 = gens.iter().filter(|g| g[1..].iter().all(|&e| e == 0)).map(|g| g[0]).min().unwrap();
    gens.sort_unstable_by_key(|g| g[0]);
    let mut total = 0;
    let mut next = 0;
    let mut slice: Vec<ExponentVector> = Vec::new();
    for t in 0..b0 {
        let before = slice.len();
        while next < gens.len() && gens[next][0] <= t {
            slice.push(ExponentVector::new(&gens[next][1..]));
            next += 1;
        }
        if slice.len() != before {
            slice = minimal_elements(slice);
        }
        total += count_standard(slice.iter().map(|g| g.entries().to_vec()).collect());
    }
    total
}

fn enumerate_standard(
    ideal: &MonomialIdeal,
    bounds: &[u32],
    i: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<ExponentVector>,
) {
    if i == cur.len() {
        out.push(ExponentVector::new(cur));
        return;
    }
    for t in 0..bounds[i] {
        cur[i] = t;
        // Prune: if the prefix with zeros after it is already in the ideal,
        // so is everything larger in this coordinate.
        let probe = {
            let mut p = cur.clone();
            for x in p.iter_mut().skip(i + 1) {
                *x = 0;
            }
            ExponentVector::from(p)
        };
        if ideal.contains_unchecked(&probe) {
            break;
        }
        enumerate_standard(ideal, bounds, i + 1, cur, out);
    }
    cur[i] = 0;
}

impl fmt::Display for MonomialIdeal {
    /// Comma-separated generators, highest power of `x` first; `(1)` for the
    /// unit ideal, `(0)` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        if self.is_unit() {
            return f.write_str("(1)");
        }
        for (k, g) in self.gens.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    /// Counts standard monomials by scanning the whole box.
    fn colength_by_box(i: &MonomialIdeal) -> u64 {
        let bounds = i.pure_power_exponents().unwrap();
        let total: usize = bounds.iter().map(|&b| b as usize).product();
        let mut count = 0;
        for mut k in 0..total {
            let mut v = vec![0u32; i.dim()];
            for (j, b) in bounds.iter().enumerate() {
                v[j] = (k % *b as usize) as u32;
                k /= *b as usize;
            }
            if !i.contains(&ExponentVector::from(v)).unwrap() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[3, 1], &[0, 3]]), ideal(2, &[&[2, 0], &[0, 3]]));
        assert!(MonomialIdeal::minimalize(2, vec![]).unwrap().is_zero());
        assert_eq!(ideal(2, &[&[1, 1], &[1, 1]]).gens().len(), 1);
        let err = MonomialIdeal::minimalize(2, vec![ExponentVector::new(&[1]), ExponentVector::new(&[1, 0])]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn operations() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.product(&m).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert!(ideal(2, &[&[2, 0], &[0, 2]]).power(0).unwrap().is_unit());
        assert_eq!(ideal(2, &[&[1, 0]]).intersection(&ideal(2, &[&[0, 1]])).unwrap(), ideal(2, &[&[1, 1]]));
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert!(i.contains(&ExponentVector::new(&[3, 0])).unwrap());
        assert!(!i.contains(&ExponentVector::new(&[0, 5])).unwrap());
        let p = ideal(2, &[&[2, 0], &[0, 2]]).product(&m).unwrap();
        assert!(ideal_leq(&p, &m).unwrap());
    }

    #[test]
    fn primary_and_colength() {
        assert!(ideal(2, &[&[2, 0], &[0, 3]]).is_m_primary());
        assert!(!ideal(2, &[&[1, 1]]).is_m_primary());
        assert!(MonomialIdeal::unit(3).is_m_primary());
        assert_eq!(MonomialIdeal::unit(2).colength().unwrap(), 0);
        assert_eq!(MonomialIdeal::maximal(2).colength().unwrap(), 1);
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]).colength().unwrap(), 4);
        assert!(matches!(ideal(2, &[&[1, 1]]).colength(), Err(Error::NotMPrimary(_))));
        let m = MonomialIdeal::maximal(2);
        assert_eq!(quotient_length(&m, &m.power(2).unwrap()).unwrap(), 2);
        assert_eq!(quotient_length(&m, &m).unwrap(), 0);
        assert_eq!(quotient_length(&MonomialIdeal::unit(2), &m).unwrap(), 1);
        assert!(quotient_length(&m.power(2).unwrap(), &m).is_err());
    }

    #[test]
    fn frobenius() {
        let i = ideal(2, &[&[5, 2], &[1, 7]]);
        let r = i.frobenius_root(3).unwrap();
        assert_eq!(r, ideal(2, &[&[1, 0], &[0, 2]]));
        assert!(r.frobenius_power(3).unwrap().contains_ideal(&i).unwrap());
        assert_eq!(ideal(1, &[&[9]]).frobenius_root(9).unwrap(), ideal(1, &[&[1]]));
        let j = ideal(2, &[&[3, 0], &[0, 4]]);
        assert!(j.frobenius_root(2).unwrap().frobenius_power(2).unwrap().contains_ideal(&j).unwrap());
        assert!(j.frobenius_root(0).is_err());
        assert!(j.frobenius_power(0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ideal(2, &[&[2, 1], &[0, 3]]).to_string(), "x^2*y, y^3");
        assert_eq!(MonomialIdeal::unit(2).to_string(), "(1)");
        assert_eq!(MonomialIdeal::maximal(3).to_string(), "x, y, z");
    }

    #[test]
    fn standard_monomials_listing() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        let s: Vec<String> = i.standard_monomials().unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(s, ["1", "y", "y^2", "x"]);
    }

    fn arb_primary(max_d: usize, max_e: u32) -> impl Strategy<Value = MonomialIdeal> {
        (1..=max_d).prop_flat_map(move |d| {
            (
                proptest::collection::vec(1..=max_e, d),
                proptest::collection::vec(proptest::collection::vec(0..=max_e, d), 0..5),
            )
                .prop_map(move |(pp, extra)| {
                    let mut gens: Vec<ExponentVector> =
                        pp.iter().enumerate().map(|(i, &a)| ExponentVector::pure_power(d, i, a)).collect();
                    gens.extend(extra.into_iter().map(ExponentVector::from));
                    MonomialIdeal::minimalize(d, gens).unwrap()
                })
        })
    }

    /// Is `r` the smallest monomial ideal whose `q`-th Frobenius power contains `i`?
    fn is_minimal_root(i: &MonomialIdeal, r: &MonomialIdeal, q: u64) -> bool {
        if !r.frobenius_power(q).unwrap().contains_ideal(i).unwrap() {
            return false;
        }
        (0..r.num_gens()).all(|k| {
            let mut gens = r.gens().to_vec();
            gens.remove(k);
            let smaller = MonomialIdeal::minimalize(r.dim(), gens).unwrap();
            !smaller.frobenius_power(q).unwrap().contains_ideal(i).unwrap()
        })
    }

    proptest! {
        #[test]
        fn colength_matches_box_scan(i in arb_primary(3, 6)) {
            prop_assert_eq!(i.colength().unwrap(), colength_by_box(&i));
            prop_assert_eq!(i.standard_monomials().unwrap().len() as u64, colength_by_box(&i));
        }

        #[test]
        fn minimalize_idempotent(i in arb_primary(3, 6)) {
            let again = MonomialIdeal::minimalize(i.dim(), i.gens().to_vec()).unwrap();
            prop_assert_eq!(&again, &i);
        }

        #[test]
        fn length_additivity(i in arb_primary(3, 4)) {
            let m = MonomialIdeal::maximal(i.dim());
            let j = i.product(&m).unwrap();
            let unit = MonomialIdeal::unit(i.dim());
            prop_assert_eq!(
                quotient_length(&unit, &j).unwrap(),
                quotient_length(&unit, &i).unwrap() + quotient_length(&i, &j).unwrap()
            );
            // I/I·m has the minimal generators of I as a basis
            prop_assert_eq!(colength_by_box(&j), colength_by_box(&i) + i.num_gens() as u64);
        }

        #[test]
        fn frobenius_adjunction(i in arb_primary(2, 9), q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9])) {
            let r = i.frobenius_root(q).unwrap();
            prop_assert!(is_minimal_root(&i, &r, q));
        }
    }
}
