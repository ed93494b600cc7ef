//! Test ideals of monomial ideals over a field of characteristic `p`.
//!
//! `τ(𝔞^c)` is the stable value of the ascending chain
//! `e ↦ (𝔞^{⌈c p^e⌉})^{[1/p^e]}`. The power `𝔞^N` is never formed: with
//! `𝔞 = (x^{g_1}, ..., x^{g_k})` every generator of `𝔞^n` factors as
//! `x^{Gr}·(x^{Gs})^p` with `r ∈ [0, p)^k`, and `(I·K^{[p]})^{[1/p]} = I^{[1/p]}·K`
//! for monomial ideals. So the root of `Σ_t D_t·𝔞^{L-t}` is again of that form,
//! with `L` replaced by `⌊L/p⌋` and `t` staying below `k`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::filtration::{EvalCache, Filtration};
use crate::monomial::{Characteristic, ExponentVector, MonomialIdeal};
use crate::newton::NewtonPolyhedron;
use crate::rational::{self, Rational};
use crate::{Error, Result};

pub const DEFAULT_MAX_E: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharP(u64);

impl CharP {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if prime {
            Ok(CharP(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// `R_σ`: the ideal generated by `x^{Gr}` with `r ∈ [0, p)^k` and `|r| = σ`.
struct RestrictedPowers {
    base: MonomialIdeal,
    p: u64,
    sets: Vec<MonomialIdeal>,
}

impl RestrictedPowers {
    fn new(base: &MonomialIdeal, p: u64) -> Result<Self> {
        let d = base.dim();
        let k = base.num_gens();
        let top = k * (p as usize - 1);
        let mut sets: Vec<Vec<ExponentVector>> = vec![Vec::new(); top + 1];
        sets[0].push(ExponentVector::zero(d));
        let mut reached = 0;
        for g in base.gens() {
            let mut next: Vec<Vec<ExponentVector>> = vec![Vec::new(); top + 1];
            for s in 0..=reached {
                for v in &sets[s] {
                    let mut cur = v.clone();
                    for r in 0..p as usize {
                        next[s + r].push(cur.clone());
                        cur = cur.checked_add(g)?;
                    }
                }
            }
            reached += p as usize - 1;
            sets = next
                .into_iter()
                .map(|s| MonomialIdeal::minimalize(d, s).map(|i| i.gens().to_vec()))
                .collect::<Result<_>>()?;
        }
        let sets = sets.into_iter().map(|s| MonomialIdeal::minimalize(d, s)).collect::<Result<_>>()?;
        Ok(RestrictedPowers { base: base.clone(), p, sets })
    }

    /// `(𝔞^n)^{[1/p^e]}`
    fn root_of_power(&self, n: &BigUint, e: u32) -> Result<MonomialIdeal> {
        let d = self.base.dim();
        let p = self.p;
        let top = self.sets.len() - 1;
        let mut l = n.clone();
        let mut terms: BTreeMap<usize, MonomialIdeal> = BTreeMap::new();
        terms.insert(0, MonomialIdeal::unit(d));
        for _ in 0..e {
            let l_next = &l / p;
            let mut next: BTreeMap<usize, MonomialIdeal> = BTreeMap::new();
            for (&t, dt) in &terms {
                let rest = &l - BigUint::from(t);
                let start = (&rest % p).to_usize().unwrap();
                let limit = rest.to_usize().map_or(top, |r| r.min(top));
                let mut sigma = start;
                while sigma <= limit {
                    let m = (&rest - BigUint::from(sigma)) / p;
                    let t_next = (&l_next - m).to_usize().ok_or(Error::Overflow)?;
                    let part = dt.product(&self.sets[sigma])?.frobenius_root(p)?;
                    let slot = next.entry(t_next).or_insert_with(|| MonomialIdeal::zero(d));
                    *slot = slot.sum(&part)?;
                    sigma += p as usize;
                }
            }
            terms = next;
            l = l_next;
        }
        let mut out = MonomialIdeal::zero(d);
        for (t, dt) in terms {
            let exp = (&l - BigUint::from(t)).to_u64().ok_or(Error::Overflow)?;
            out = out.sum(&dt.product(&self.base.power(exp)?)?)?;
        }
        Ok(out)
    }

    /// `τ(𝔞^c)` certified from both sides.
    ///
    /// Test ideals are constant on `[c, next)`, so we work at the midpoint
    /// `t` of that interval, which is not a jump. With `q = p^e` and `k`
    /// generators,
    ///
    /// * `L_e = (𝔞^{⌈tq⌉})^{[1/q]}` is an ascending chain inside `τ(𝔞^t)`,
    /// * `U_e = (𝔞^{⌊tq⌋-k})^{[1/q]}` contains `τ(𝔞^t)`, because
    ///   `𝔞^{mq + k(q-1)} ⊆ (𝔞^m)^{[q]}`.
    ///
    /// Away from jumps both converge to `τ(𝔞^t)`; the first `e` with
    /// `L_e = U_e` gives the exact value.
    fn test_ideal(&self, c: &Rational, next: &Rational, max_e: u32) -> Result<MonomialIdeal> {
        let t = (c + next) / Rational::from_integer(BigInt::from(2));
        let k = BigInt::from(self.base.num_gens());
        let mut lower: Vec<MonomialIdeal> = Vec::new();
        let mut q = BigInt::one();
        for e in 1..=max_e {
            q *= self.p;
            let tq = &t * Rational::from_integer(q.clone());
            let hi = rational::ceil(&tq).to_biguint().unwrap_or_else(BigUint::zero);
            let lo = (rational::floor(&tq) - &k).to_biguint().unwrap_or_else(BigUint::zero);
            let l = self.root_of_power(&hi, e)?;
            let u = self.root_of_power(&lo, e)?;
            if !u.contains_ideal(&l)? {
                return Err(Error::Invariant(format!("test ideal bounds cross at e = {e}")));
            }
            if let Some(prev) = lower.last() {
                if !l.contains_ideal(prev)? {
                    return Err(Error::Invariant(format!("test ideal chain descends at e = {e}")));
                }
            }
            lower.push(l);
            if lower.last() == Some(&u) {
                return Ok(u.with_characteristic(Characteristic::Prime(self.p)));
            }
        }
        Err(Error::Stabilization {
            cap: max_e,
            chain: lower.iter().map(|i| i.colength()).collect::<Result<_>>()?,
        })
    }
}

/// First candidate jump strictly above `c`.
fn next_candidate(poly: &NewtonPolyhedron, c: &Rational) -> Result<Rational> {
    let reach = c + Rational::one();
    poly.candidate_jumps(&reach)?
        .into_iter()
        .find(|x| x > c)
        .ok_or_else(|| Error::Invariant("no candidate above c".into()))
}

fn check_base(a: &MonomialIdeal) -> Result<()> {
    a.require_m_primary("base ideal")?;
    if a.is_unit() {
        return Err(Error::Precondition("base ideal must be proper".into()));
    }
    Ok(())
}

/// `τ(𝔞^c)` in characteristic `p`.
pub fn test_ideal(a: &MonomialIdeal, c: &Rational, p: CharP) -> Result<MonomialIdeal> {
    check_base(a)?;
    if !rational::is_positive(c) {
        return Err(Error::Precondition("c must be positive".into()));
    }
    let next = next_candidate(&NewtonPolyhedron::new(a)?, c)?;
    RestrictedPowers::new(a, p.0)?.test_ideal(c, &next, DEFAULT_MAX_E)
}

/// `τ(𝔞^{c-ε})`: the value at the midpoint between `c` and the previous
/// candidate jump, or the unit ideal below the first candidate.
pub fn test_left_limit(a: &MonomialIdeal, c: &Rational, p: CharP) -> Result<MonomialIdeal> {
    check_base(a)?;
    let f = TestFiltration::new(a, p)?;
    f.eval_left(c)
}

pub struct TestFiltration {
    base: MonomialIdeal,
    p: CharP,
    polyhedron: NewtonPolyhedron,
    powers: RestrictedPowers,
    max_e: u32,
    cache: EvalCache,
}

impl TestFiltration {
    pub fn new(a: &MonomialIdeal, p: CharP) -> Result<Self> {
        check_base(a)?;
        Ok(TestFiltration {
            base: a.clone().with_characteristic(Characteristic::Prime(p.0)),
            p,
            polyhedron: NewtonPolyhedron::new(a)?,
            powers: RestrictedPowers::new(a, p.0)?,
            max_e: DEFAULT_MAX_E,
            cache: EvalCache::default(),
        })
    }

    pub fn with_max_e(mut self, max_e: u32) -> Self {
        self.max_e = max_e;
        self
    }

    pub fn characteristic(&self) -> CharP {
        self.p
    }
}

pub fn test_filtration(a: &MonomialIdeal, p: CharP) -> Result<TestFiltration> {
    TestFiltration::new(a, p)
}

impl Filtration for TestFiltration {
    fn base_ideal(&self) -> &MonomialIdeal {
        &self.base
    }

    fn eval(&self, c: &Rational) -> Result<MonomialIdeal> {
        if !rational::is_positive(c) {
            return Ok(MonomialIdeal::unit(self.base.dim()));
        }
        self.cache.get_or(c, false, || {
            let next = next_candidate(&self.polyhedron, c)?;
            self.powers.test_ideal(c, &next, self.max_e)
        })
    }

    fn eval_left(&self, c: &Rational) -> Result<MonomialIdeal> {
        if !rational::is_positive(c) {
            return Ok(MonomialIdeal::unit(self.base.dim()));
        }
        let below = self.polyhedron.candidate_jumps(c)?.into_iter().rfind(|x| x < c);
        match below {
            None => Ok(MonomialIdeal::unit(self.base.dim())),
            Some(b) => self.eval(&((b + c) / Rational::from_integer(BigInt::from(2)))),
        }
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
    use crate::multiplier::{multiplier_ideal, multiplier_left_limit};
    use crate::newton::integral_closure;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    fn p(p: u64) -> CharP {
        CharP::new(p).unwrap()
    }

    #[test]
    fn primes() {
        assert!(CharP::new(7).is_ok());
        assert!(matches!(CharP::new(9), Err(Error::NotPrime(9))));
        assert!(CharP::new(1).is_err());
    }

    #[test]
    fn examples() {
        let m = MonomialIdeal::maximal(2);
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(test_ideal(&m, &int(2), p(3)).unwrap(), m);
        assert!(test_ideal(&m, &frac(1, 2), p(5)).unwrap().is_unit());
        assert_eq!(test_ideal(&a, &frac(5, 6), p(7)).unwrap(), m);
        assert!(test_left_limit(&a, &frac(5, 6), p(7)).unwrap().is_unit());
        assert!(test_left_limit(&m, &int(2), p(5)).unwrap().is_unit());
        assert!(test_left_limit(&m, &frac(1, 3), p(2)).unwrap().is_unit());
        assert!(matches!(test_ideal(&ideal(2, &[&[1, 1]]), &int(1), p(2)), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn plateau_in_the_chain() {
        // for p = 2 the chain below 7/5 repeats for e = 3, 4, 5 before moving
        let a = ideal(2, &[&[3, 0], &[0, 5]]);
        let f = TestFiltration::new(&a, p(2)).unwrap();
        let c = frac(7, 5);
        assert_eq!(f.eval_left(&c).unwrap(), multiplier_left_limit(&a, &c).unwrap());
        assert_eq!(f.eval_left(&c).unwrap().colength().unwrap(), 9);
    }

    #[test]
    fn stabilization_cap_is_loud() {
        let f = TestFiltration::new(&ideal(2, &[&[2, 0], &[0, 3]]), p(2)).unwrap().with_max_e(2);
        assert!(matches!(f.eval(&frac(5, 6)), Err(Error::Stabilization { cap: 2, .. })));
    }

    fn arb_primary() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..=3).prop_flat_map(|d| {
            (
                proptest::collection::vec(1u32..=4, d),
                proptest::collection::vec(proptest::collection::vec(0u32..=3, d), 0..3),
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
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn recursion_matches_direct_root(a in arb_primary(), n in 0u64..14, e in 1u32..=2, pr in prop::sample::select(vec![2u64, 3])) {
            let q = pr.pow(e);
            prop_assume!(n <= 12);
            let direct = a.power(n).unwrap().frobenius_root(q).unwrap();
            let rp = RestrictedPowers::new(&a, pr).unwrap();
            prop_assert_eq!(rp.root_of_power(&BigUint::from(n), e).unwrap(), direct);
        }

        #[test]
        fn agrees_with_multiplier_ideal(a in arb_primary(), num in 1i64..9, den in 1i64..4, pr in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = frac(num, den);
            prop_assert_eq!(test_ideal(&a, &c, p(pr)).unwrap(), multiplier_ideal(&a, &c).unwrap());
        }

        #[test]
        fn integral_closure_invariance(a in arb_primary(), num in 1i64..7, den in 1i64..4) {
            let c = frac(num, den);
            let b = integral_closure(&a).unwrap();
            prop_assert_eq!(test_ideal(&a, &c, p(3)).unwrap(), test_ideal(&b, &c, p(3)).unwrap());
        }
    }
}
