//! Multiplier ideals of monomial ideals.
//!
//! For an 𝔪-primary monomial ideal `𝔞` with Newton polyhedron `P`, the
//! multiplier ideal `𝒥(𝔞^c)` is spanned by the monomials `x^v` with
//! `v + 1 ∈ Int(c·P)`. The left limit `𝒥(𝔞^{c-ε})` is spanned by those with
//! `v + 1 ∈ c·P`: a point with positive coordinates lies in `c·P` exactly
//! when it lies in `Int(c'·P)` for every `c' < c`, because every facet that
//! can be active there has positive offset.

use num_bigint::BigInt;

use crate::filtration::{EvalCache, Filtration};
use crate::monomial::MonomialIdeal;
use crate::newton::NewtonPolyhedron;
use crate::rational::{self, Rational};
use crate::{Error, Result};

fn polyhedron_of(a: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    a.require_m_primary("base ideal")?;
    if a.is_unit() {
        return Err(Error::Precondition("base ideal must be proper".into()));
    }
    NewtonPolyhedron::new(a)
}

/// Monomials `x^v` with `v + 1` in `Int(c·P)` (or in `c·P` when `!strict`).
pub(crate) fn interior_ideal(p: &NewtonPolyhedron, c: &Rational, strict: bool) -> Result<MonomialIdeal> {
    if !rational::is_positive(c) {
        return Ok(MonomialIdeal::unit(p.dim()));
    }
    let (num, den) = rational::to_i128_pair(c)?;
    let axes = p.axis_vertices().ok_or_else(|| Error::NotMPrimary("Newton polyhedron".into()))?;
    let bounds = axes
        .iter()
        .map(|&a| {
            let b = rational::floor(&(c * Rational::from_integer(BigInt::from(a))));
            u32::try_from(b).map_err(|_| Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    p.lattice_ideal(num, den, 1, strict, &bounds)
}

/// `𝒥(𝔞^c)`
pub fn multiplier_ideal(a: &MonomialIdeal, c: &Rational) -> Result<MonomialIdeal> {
    if !rational::is_positive(c) {
        return Err(Error::Precondition("c must be positive".into()));
    }
    Ok(interior_ideal(&polyhedron_of(a)?, c, true)?.with_characteristic(a.characteristic()))
}

/// `𝒥(𝔞^{c-ε})` for small `ε > 0`.
pub fn multiplier_left_limit(a: &MonomialIdeal, c: &Rational) -> Result<MonomialIdeal> {
    if !rational::is_positive(c) {
        return Err(Error::Precondition("c must be positive".into()));
    }
    Ok(interior_ideal(&polyhedron_of(a)?, c, false)?.with_characteristic(a.characteristic()))
}

/// Log canonical threshold: `min ⟨a, 1⟩ / b` over the facets.
pub fn lct(a: &MonomialIdeal) -> Result<Rational> {
    lct_of(&polyhedron_of(a)?)
}

pub(crate) fn lct_of(p: &NewtonPolyhedron) -> Result<Rational> {
    p.facets()
        .iter()
        .map(|f| Rational::new(BigInt::from(f.normal.iter().sum::<i64>()), BigInt::from(f.offset)))
        .min()
        .ok_or_else(|| Error::Precondition("polyhedron has no facets".into()))
}

pub struct MultiplierFiltration {
    base: MonomialIdeal,
    polyhedron: NewtonPolyhedron,
    cache: EvalCache,
}

impl MultiplierFiltration {
    pub fn new(a: &MonomialIdeal) -> Result<Self> {
        Ok(MultiplierFiltration { base: a.clone(), polyhedron: polyhedron_of(a)?, cache: EvalCache::default() })
    }

    pub fn polyhedron(&self) -> &NewtonPolyhedron {
        &self.polyhedron
    }
}

pub fn multiplier_filtration(a: &MonomialIdeal) -> Result<MultiplierFiltration> {
    MultiplierFiltration::new(a)
}

impl Filtration for MultiplierFiltration {
    fn base_ideal(&self) -> &MonomialIdeal {
        &self.base
    }

    fn eval(&self, c: &Rational) -> Result<MonomialIdeal> {
        self.cache.get_or(c, false, || interior_ideal(&self.polyhedron, c, true))
    }

    fn eval_left(&self, c: &Rational) -> Result<MonomialIdeal> {
        self.cache.get_or(c, true, || interior_ideal(&self.polyhedron, c, false))
    }

    fn skoda_bound(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.base.dim()))
    }

    fn candidates(&self, c_max: &Rational) -> Result<Vec<Rational>> {
        self.polyhedron.candidate_jumps(c_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::filtration::*;
    use crate::monomial::ExponentVector;
    use crate::newton::integral_closure;
    use crate::rational::{frac, int};
    use crate::series::UniRational;
    use proptest::prelude::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    /// Multiplier ideal straight from the definition: scan a generous box for
    /// exponents `v` with `⟨a, v+1⟩ > c·b` on every facet.
    fn multiplier_by_scan(a: &MonomialIdeal, c: &Rational, strict: bool) -> MonomialIdeal {
        let p = NewtonPolyhedron::new(a).unwrap();
        let d = a.dim();
        let side = (rational::ceil(&(c * int(8))).to_string().parse::<usize>().unwrap()) + 2;
        let mut gens = Vec::new();
        for mut k in 0..side.pow(d as u32) {
            let mut u = vec![0u32; d];
            for x in u.iter_mut() {
                *x = (k % side) as u32;
                k /= side;
            }
            let pt: Vec<Rational> = u.iter().map(|&x| int(x as i64 + 1)).collect();
            if p.in_scaled_polyhedron(&pt, c, strict).unwrap() {
                gens.push(ExponentVector::from(u));
            }
        }
        MonomialIdeal::minimalize(d, gens).unwrap()
    }

    #[test]
    fn examples() {
        let m = MonomialIdeal::maximal(2);
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(multiplier_ideal(&m, &int(2)).unwrap(), m);
        assert!(multiplier_ideal(&m, &frac(1, 10)).unwrap().is_unit());
        assert_eq!(multiplier_ideal(&a, &int(1)).unwrap(), m);
        assert!(multiplier_left_limit(&m, &int(2)).unwrap().is_unit());
        assert!(multiplier_left_limit(&a, &frac(5, 6)).unwrap().is_unit());
        assert!(multiplier_left_limit(&a, &frac(1, 2)).unwrap().is_unit());
        assert_eq!(lct(&m).unwrap(), int(2));
        assert_eq!(lct(&a).unwrap(), frac(5, 6));
        assert_eq!(lct(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap(), int(1));
        assert!(matches!(multiplier_ideal(&ideal(2, &[&[1, 1]]), &int(1)), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn jumps_and_multiplicities() {
        let m = MonomialIdeal::maximal(2);
        let f = MultiplierFiltration::new(&m).unwrap();
        let t = jumping_numbers(&f, &int(4)).unwrap();
        let got: Vec<(Rational, u64)> = t.jumps.iter().map(|j| (j.c.clone(), j.multiplicity)).collect();
        assert_eq!(got, vec![(int(2), 1), (int(3), 2), (int(4), 3)]);
        assert_eq!(t.jumps[1].ideal, m.power(2).unwrap());
        assert_eq!(multiplicity(&f, &int(3)).unwrap(), 2);
        assert_eq!(multiplicity(&f, &frac(5, 2)).unwrap(), 0);
        assert!(jumping_numbers(&f, &int(1)).unwrap().jumps.is_empty());
        let g = MultiplierFiltration::new(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        let t = jumping_numbers(&g, &int(1)).unwrap();
        assert_eq!(t.jumps.len(), 1);
        assert_eq!((t.jumps[0].c.clone(), t.jumps[0].multiplicity), (frac(5, 6), 1));
        assert_eq!(multiplicity(&g, &frac(5, 6)).unwrap(), 1);
    }

    #[test]
    fn h_polynomials_of_the_maximal_ideal() {
        let f = MultiplierFiltration::new(&MonomialIdeal::maximal(2)).unwrap();
        assert_eq!(h_polynomial(&f, &int(1)).unwrap().to_string(), "T");
        assert_eq!(h_polynomial_left(&f, &int(1)).unwrap().to_string(), "T^2");
        assert_eq!(tail_series(&f, &int(1)).unwrap(), UniRational::from_i64(&[0, 1], 2));
        assert!(tail_series(&f, &frac(1, 2)).unwrap().is_zero());
        let form = poincare_closed_form(&f).unwrap();
        assert_eq!(form.render(), "T^2/(1-T)^2");
        assert_eq!(poincare_bruteforce(&f, &int(4)).unwrap().to_string(), "T^2 + 2T^3 + 3T^4");
    }

    #[test]
    fn closed_form_of_a_cusp_ideal() {
        let g = MultiplierFiltration::new(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        let form = poincare_closed_form(&g).unwrap();
        assert_eq!(form.expand(&int(20)), poincare_bruteforce(&g, &int(20)).unwrap());
        let r = tail_series(&g, &frac(5, 6)).unwrap();
        assert_eq!(r.expand(3)[..3], [BigInt::one(), BigInt::from(2), BigInt::from(3)]);
        assert_eq!(poincare_bruteforce(&g, &int(1)).unwrap().to_string(), "T^(5/6)");
    }

    #[test]
    fn integral_closure_invariance() {
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        let f = MultiplierFiltration::new(&a).unwrap();
        let g = MultiplierFiltration::new(&integral_closure(&a).unwrap()).unwrap();
        for c in f.candidates(&int(4)).unwrap() {
            assert_eq!(f.eval(&c).unwrap(), g.eval(&c).unwrap());
        }
        assert_eq!(f.eval(&int(1)).unwrap(), MonomialIdeal::maximal(2));
        assert!(f.eval_left(&int(1)).unwrap().is_unit());
    }

    fn arb_primary() -> impl Strategy<Value = MonomialIdeal> {
        (2usize..=3).prop_flat_map(|d| {
            (
                proptest::collection::vec(1u32..=5, d),
                proptest::collection::vec(proptest::collection::vec(0u32..=4, d), 0..3),
            )
                .prop_map(move |(pp, extra)| {
                    let mut gens: Vec<ExponentVector> =
                        pp.iter().enumerate().map(|(i, &a)| ExponentVector::pure_power(d, i, a)).collect();
                    gens.extend(extra.into_iter().map(ExponentVector::from));
                    MonomialIdeal::minimalize(d, gens).unwrap()
                })
        })
        .prop_filter("proper", |i| !i.is_unit())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn line_sweep_matches_scan(a in arb_primary(), num in 1i64..14, den in 1i64..5) {
            let c = frac(num, den);
            prop_assert_eq!(multiplier_ideal(&a, &c).unwrap(), multiplier_by_scan(&a, &c, true));
            prop_assert_eq!(multiplier_left_limit(&a, &c).unwrap(), multiplier_by_scan(&a, &c, false));
        }

        #[test]
        fn containments_and_threshold(a in arb_primary(), num in 1i64..14, den in 1i64..5) {
            let c = frac(num, den);
            let j = multiplier_ideal(&a, &c).unwrap();
            let ceil = rational::ceil(&c).to_string().parse::<u64>().unwrap();
            prop_assert!(j.contains_ideal(&a.power(ceil).unwrap()).unwrap());
            prop_assert!(j.is_m_primary());
            let l = lct(&a).unwrap();
            prop_assert!(multiplier_left_limit(&a, &l).unwrap().is_unit());
            prop_assert!(!multiplier_ideal(&a, &l).unwrap().is_unit());
        }

        #[test]
        fn piecewise_constant(a in arb_primary()) {
            let f = MultiplierFiltration::new(&a).unwrap();
            let cands = f.candidates(&int(3)).unwrap();
            for w in cands.windows(2) {
                let v = f.eval(&w[0]).unwrap();
                let third = (&w[0] * int(2) + &w[1]) / int(3);
                let mid = (&w[0] + &w[1]) / int(2);
                prop_assert_eq!(&f.eval(&mid).unwrap(), &v);
                prop_assert_eq!(&f.eval(&third).unwrap(), &v);
            }
        }

        #[test]
        fn skoda_and_discreteness(a in arb_primary()) {
            let f = MultiplierFiltration::new(&a).unwrap();
            let d = a.dim() as i64;
            for c in f.candidates(&int(d + 2)).unwrap() {
                if c > int(d) {
                    prop_assert_eq!(f.eval(&c).unwrap(), a.product(&f.eval(&(&c - int(1))).unwrap()).unwrap());
                }
            }
            // the number of distinct values on [1, 2] is bounded by the length drop
            let cands: Vec<Rational> = f.candidates(&int(2)).unwrap().into_iter().filter(|c| c >= &int(1)).collect();
            let mut distinct = std::collections::BTreeSet::new();
            for c in std::iter::once(int(1)).chain(cands) {
                distinct.insert(f.eval(&c).unwrap().gens().to_vec());
            }
            let drop = crate::monomial::quotient_length(&f.eval(&int(1)).unwrap(), &f.eval(&int(2)).unwrap()).unwrap();
            prop_assert!(distinct.len() as u64 <= drop + 1);
        }

        #[test]
        fn hilbert_series_identity(a in arb_primary(), num in 1i64..8, den in 1i64..4) {
            // HS = (1-T)·HS¹: first differences of the lengths are the colength
            // drops of consecutive steps
            let f = MultiplierFiltration::new(&a).unwrap();
            let c = frac(num, den);
            let h = h_polynomial(&f, &c).unwrap();
            let lengths = h.hilbert_series(a.dim()).expand(8);
            for j in 1..=8usize {
                let jj = int(j as i64);
                let step = crate::monomial::quotient_length(
                    &f.eval(&(&c + &jj - int(1))).unwrap(),
                    &f.eval(&(&c + &jj)).unwrap(),
                ).unwrap();
                prop_assert_eq!(&lengths[j] - &lengths[j - 1], BigInt::from(step));
            }
        }
    }
}
