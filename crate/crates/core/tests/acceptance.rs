//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

use std::time::Instant;

use jumpseries::filtration::{h_polynomial, h_polynomial_left, jumping_numbers, multiplicity};
use jumpseries::rational::{format_rational, frac, int};
use jumpseries::tor::{self, Resolve};
use jumpseries::verify::{run_suite, Suite, SuiteParams};
use jumpseries::{
    parse_ideal, poincare_bruteforce, poincare_closed_form, CharP, ExponentVector, Filtration, HPolynomial, MonomialIdeal,
    MultiplierFiltration, PoincareForm, Rational, TableFiltration, TestFiltration, UniRational,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ideal(s: &str) -> MonomialIdeal {
    parse_ideal(s).unwrap()
}

const CORPUS_2D: &[&str] = &[
    "x, y",
    "x^2, y^3",
    "x^2, y^2",
    "x^3, y^3",
    "x^3, y^5",
    "x^2, x*y, y^3",
    "x^3, x*y, y^3",
    "x^4, x^2*y, y^3",
    "x^5, x^2*y^2, y^4",
    "x^6, x*y, y^6",
    "x^6, x^3*y^2, y^5",
    "x^4, x*y^3, y^5",
];

const CORPUS_3D: &[&str] = &["x, y, z", "x^2, y^2, z^2", "x^2, y^2, z^3, x*y*z", "x^2, x*y, y^3, z^2", "x^3, y^2, z^2"];

fn corpus() -> impl Iterator<Item = MonomialIdeal> {
    CORPUS_2D.iter().chain(CORPUS_3D).map(|s| ideal(s))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// 1. Closed form against direct enumeration.
fn closed_form_vs_bruteforce() -> Outcome {
    let mut n = 0;
    for a in corpus() {
        let f = MultiplierFiltration::new(&a).map_err(err)?;
        let order = int(if a.dim() == 2 { 20 } else { 8 });
        let closed = poincare_closed_form(&f).map_err(err)?;
        let brute = poincare_bruteforce(&f, &order).map_err(err)?;
        ensure(closed.expand(&order) == brute, || format!("{a}: {} vs {brute}", closed.render()))?;
        n += 1;
    }
    Ok(format!("{n} ideals ({} in d=2, {} in d=3)", CORPUS_2D.len(), CORPUS_3D.len()))
}

/// 2. The maximal ideal of the plane, against counting `v₁ + v₂ + 2 ≤ c`.
fn maximal_ideal_worked_example() -> Outcome {
    let m = ideal("x, y");
    let f = MultiplierFiltration::new(&m).map_err(err)?;
    let closed = poincare_closed_form(&f).map_err(err)?;
    ensure(closed.render() == "T^2/(1-T)^2", || closed.render())?;
    let mut expected = PoincareForm::new();
    expected.add_class(int(1), UniRational::from_i64(&[0, 1], 2)).map_err(err)?;
    ensure(closed == expected, || "class data".into())?;
    // colength of the multiplier ideal at c: #{v : v₁ + v₂ + 2 ≤ c}, strict for the left limit
    let count = |c: i64, strict: bool| -> u64 {
        let mut k = 0;
        for s in 0..=c.max(0) {
            let ok = if strict { s + 2 < c } else { s + 2 <= c };
            if ok {
                k += s as u64 + 1;
            }
        }
        k
    };
    let table = jumping_numbers(&f, &int(12)).map_err(err)?;
    let got: Vec<(String, u64)> = table.jumps.iter().map(|j| (format_rational(&j.c), j.multiplicity)).collect();
    let want: Vec<(String, u64)> = (2..=12).map(|k| (k.to_string(), count(k, false) - count(k, true))).collect();
    ensure(got == want, || format!("{got:?}"))?;
    ensure(want.iter().enumerate().all(|(i, (_, m))| *m == i as u64 + 1), || "m(k) = k - 1".into())?;
    // h from (1-T)^3 · Σ λ(M_0/M_j) T^j with the counted lengths
    let h_oracle = |strict: bool| -> Vec<i64> {
        let lens: Vec<i64> = (0..12).map(|j| count(1 + j, strict) as i64).collect();
        let w = [1, -3, 3, -1];
        let mut h: Vec<i64> =
            (0..12).map(|n| (0..4).filter(|&i| i <= n).map(|i| w[i] * lens[n - i]).sum()).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    };
    let h = h_polynomial(&f, &int(1)).map_err(err)?;
    let hl = h_polynomial_left(&f, &int(1)).map_err(err)?;
    let as_i64 = |p: &HPolynomial| p.coeffs.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
    ensure(as_i64(&h) == h_oracle(false) && as_i64(&h) == vec![0, 1], || format!("h = {h}"))?;
    ensure(as_i64(&hl) == h_oracle(true) && as_i64(&hl) == vec![0, 0, 1], || format!("h_left = {hl}"))?;
    Ok("P = T^2/(1-T)^2, m(k) = k-1 for k ≤ 12, h = T, h_left = T^2".into())
}

fn skoda_holds(f: &dyn Filtration) -> Result<usize, String> {
    let d = int(f.dim() as i64);
    let mut n = 0;
    for c in f.candidates(&(&d + int(2))).map_err(err)? {
        if c <= d {
            continue;
        }
        let lhs = f.eval(&c).map_err(err)?;
        let rhs = f.base_ideal().product(&f.eval(&(&c - Rational::one())).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || format!("{} at c = {}", f.base_ideal(), format_rational(&c)))?;
        n += 1;
    }
    Ok(n)
}

/// 3. Skoda tail for multiplier and test ideals.
fn skoda() -> Outcome {
    let mut n = 0;
    for a in corpus() {
        n += skoda_holds(&MultiplierFiltration::new(&a).map_err(err)?)?;
        for p in [2, 3, 5] {
            n += skoda_holds(&TestFiltration::new(&a, CharP::new(p).map_err(err)?).map_err(err)?)?;
        }
    }
    Ok(format!("{n} ideal equalities"))
}

/// 4. Test ideals equal multiplier ideals on monomial ideals.
fn test_equals_multiplier() -> Outcome {
    let mut n = 0;
    for a in corpus() {
        let m = MultiplierFiltration::new(&a).map_err(err)?;
        let max = int(a.dim() as i64 + 1);
        for p in [2, 3, 5, 7] {
            let t = TestFiltration::new(&a, CharP::new(p).map_err(err)?).map_err(err)?;
            let mut cs = t.candidates(&max).map_err(err)?;
            cs.extend(m.candidates(&max).map_err(err)?);
            cs.sort();
            cs.dedup();
            for c in cs {
                ensure(t.eval(&c).map_err(err)? == m.eval(&c).map_err(err)?, || {
                    format!("{a}, p = {p}, c = {}", format_rational(&c))
                })?;
                ensure(t.eval_left(&c).map_err(err)? == m.eval_left(&c).map_err(err)?, || {
                    format!("left limit: {a}, p = {p}, c = {}", format_rational(&c))
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} thresholds"))
}

/// 5. Generating function of `λ(𝔞^jK/𝔞^jJ)`.
fn length_generating_function() -> Outcome {
    let m = ideal("x, y");
    let (m2, m3) = (m.power(2).unwrap(), m.power(3).unwrap());
    let mut n = 0;
    for a in ["x^2, y^2", "x, y", "x^3, y^3"].map(ideal) {
        let mut pairs = vec![(m.clone(), m2.clone()), (m2.clone(), m3.clone())];
        let f = MultiplierFiltration::new(&a).map_err(err)?;
        for j in jumping_numbers(&f, &int(3)).map_err(err)?.jumps {
            pairs.push((f.eval_left(&j.c).map_err(err)?, j.ideal));
        }
        for (k, big_j) in pairs {
            let r = tor::verify_lemma_42(&a, &k, &big_j, 5).map_err(err)?;
            ensure(r.holds, || format!("{a}; K = {k}; J = {big_j}: {:?} vs {:?}", r.lhs, r.rhs))?;
            n += 1;
        }
    }
    Ok(format!("{n} (K, J) pairs, coefficients j = 0..=5"))
}

/// 6. Polynomial growth of Tor lengths.
fn tor_polynomiality() -> Outcome {
    let a = ideal("x^2, y^2");
    let m = ideal("x, y");
    for j in 1..=5u64 {
        let row = tor::tor_lengths(&a, j, &m, 2).map_err(err)?;
        // the power of a two-generated parameter ideal has j + 1 generators
        // and j Hilbert–Burch syzygies, all with entries in the maximal ideal
        let gens = a.power(j).unwrap().num_gens() as u64;
        ensure(row.tor == vec![1, gens, gens - 1] && row.tor[2] == j, || format!("j = {j}: {:?}", row.tor))?;
    }
    for i in 0..=2 {
        let fit = tor::kodiyalam_fit(&a, &m, i, 1, 7).map_err(err)?;
        ensure(fit.differences_vanish && fit.predicts, || format!("Tor_{i}: {:?}", fit.values))?;
    }
    Ok("Tor_2 = j for j = 1..=5; second differences vanish for i ≤ 2".into())
}

/// 7. Cohen–Macaulay shape in the plane.
fn cm_shape() -> Outcome {
    let mut classes = 0;
    for s in ["x, y", "x^2, y^3"] {
        let a = ideal(s);
        let f = MultiplierFiltration::new(&a).map_err(err)?;
        let cm = tor::cm_poincare_form(&f, &a).map_err(err)?;
        for (c, cls) in &cm.classes {
            let m_c = BigInt::from(cls.leading[0]);
            ensure(cls.alphas[1] == -m_c.clone() && cls.alphas[0].is_zero(), || {
                format!("{s}, class {}: alphas {:?}", format_rational(c), cls.alphas)
            })?;
            ensure(cls.correction.iter().all(|x| x.is_zero()), || format!("{s}: p = {:?}", cls.correction))?;
            if s == "x, y" {
                ensure(cls.alphas[1].is_zero(), || "α₂ for the maximal ideal".into())?;
            }
            classes += 1;
        }
        let closed = poincare_closed_form(&f).map_err(err)?;
        ensure(cm.to_poincare_form().map_err(err)? == closed, || format!("{s}: reassembly"))?;
        let brute = poincare_bruteforce(&f, &int(20)).map_err(err)?;
        ensure(closed.expand(&int(20)) == brute, || format!("{s}: closed form"))?;
    }
    Ok(format!("{classes} classes with α₂ = -m(c), α₁ = 0, p = 0"))
}

/// 8. Excess as a normalized Tor₂ difference.
fn excess() -> Outcome {
    let m = ideal("x, y");
    let f = MultiplierFiltration::new(&m).map_err(err)?;
    for c in [2, 3] {
        for j in 1..=4 {
            let r = tor::excess(&f, &m, &int(c), j).map_err(err)?;
            ensure(r.rho == int(1) && r.tor_difference == r.multiplicity_difference, || format!("c = {c}, j = {j}"))?;
        }
    }
    let mut n = 0;
    for s in CORPUS_2D {
        let a = ideal(s);
        if !a.is_pure_power_parameter() {
            continue;
        }
        let f = MultiplierFiltration::new(&a).map_err(err)?;
        for jump in jumping_numbers(&f, &int(2)).map_err(err)?.jumps {
            let r = tor::excess(&f, &a, &jump.c, 1).map_err(err)?;
            let step = multiplicity(&f, &(&jump.c + Rational::one())).map_err(err)? as i64 - jump.multiplicity as i64;
            ensure(r.rho == Rational::from_integer(step.into()), || format!("{s} at {}", format_rational(&jump.c)))?;
            n += 1;
        }
    }
    Ok(format!("ρ = 1 at c = 2, 3 for j = 1..=4; j-independence at {n} jumps of parameter ideals"))
}

fn random_ideal(rng: &mut ChaCha8Rng, d: usize, max_exp: u32) -> MonomialIdeal {
    let mut gens: Vec<ExponentVector> =
        (0..d).map(|i| ExponentVector::pure_power(d, i, rng.random_range(1..=max_exp))).collect();
    for _ in 0..rng.random_range(0..3) {
        let v: Vec<u32> = (0..d).map(|_| rng.random_range(0..max_exp)).collect();
        if v.iter().any(|&x| x > 0) {
            gens.push(ExponentVector::new(&v));
        }
    }
    MonomialIdeal::minimalize(d, gens).unwrap()
}

/// Proposes a table: random jumps in `(0, B]` with ideals from intersecting
/// random ideals into a descending chain, padded near `B` so that the
/// extension `𝔞·M_{c-1}` can stay below the table.
fn propose_table(rng: &mut ChaCha8Rng) -> Option<TableFiltration> {
    let d = if rng.random_bool(0.75) { 2 } else { 3 };
    let base = random_ideal(rng, d, 3);
    let bound = int(rng.random_range(1..=d as i64));
    let mut points: Vec<Rational> =
        (0..rng.random_range(1..=4)).map(|_| frac(rng.random_range(1..=6 * d as i64), 6)).filter(|c| c <= &bound).collect();
    points.push(bound.clone());
    points.sort();
    points.dedup();
    let mut cur = MonomialIdeal::unit(d);
    let mut chain = Vec::new();
    for c in points {
        let step = random_ideal(rng, d, 3);
        let next = cur.intersection(&step).ok()?;
        cur = next.clone();
        chain.push((c, next));
    }
    let lower = &bound - Rational::one();
    let pivot =
        chain.iter().find(|(c, _)| c > &lower).map(|(_, i)| i.clone()).unwrap_or_else(|| MonomialIdeal::unit(d));
    let pad = base.product(&pivot).ok()?;
    let mut entries: Vec<(Rational, MonomialIdeal)> = Vec::new();
    for (c, i) in chain {
        let i = if c > lower { i.sum(&pad).ok()? } else { i };
        if entries.last().map(|(_, p)| p == &i).unwrap_or(i.is_unit()) {
            continue;
        }
        entries.push((c, i));
    }
    TableFiltration::new(base, entries, bound).ok()
}

/// 9. Fuzzed table filtrations.
fn fuzzed_tables() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7ab1e);
    let (mut accepted, mut rejected) = (0, 0);
    while accepted < 200 {
        let Some(f) = propose_table(&mut rng) else {
            rejected += 1;
            ensure(rejected < 20_000, || "rejection sampling stalled".into())?;
            continue;
        };
        let order = int(f.dim() as i64 + 5);
        let closed = poincare_closed_form(&f).map_err(err)?;
        let brute = poincare_bruteforce(&f, &order).map_err(err)?;
        ensure(closed.expand(&order) == brute, || {
            format!("base {}, entries {:?}: {} vs {brute}", f.base_ideal(), f.entries().len(), closed.render())
        })?;
        accepted += 1;
    }
    Ok(format!("{accepted} tables accepted, {rejected} proposals rejected"))
}

/// 10. Tor with either argument resolved; facets against hull membership.
fn oracle_independence() -> Outcome {
    let mut tor_checks = 0;
    for a in corpus() {
        let d = a.dim();
        let mm = MonomialIdeal::maximal(d);
        let f = MultiplierFiltration::new(&a).map_err(err)?;
        let mut args = vec![mm.clone(), mm.power(2).unwrap(), f.eval(&int(2)).map_err(err)?];
        if d == 2 {
            args.push(ideal("x^3, x*y, y^2"));
        }
        let max_j = if d == 2 { 3 } else { 2 };
        for big_j in &args {
            for j in 1..=max_j {
                let x = tor::tor_lengths_with(&a, j, big_j, d, Resolve::Power).map_err(err)?;
                let y = tor::tor_lengths_with(&a, j, big_j, d, Resolve::Argument).map_err(err)?;
                ensure(x.tor == y.tor, || format!("{a}, J = {big_j}, j = {j}: {:?} vs {:?}", x.tor, y.tor))?;
                tor_checks += 1;
            }
        }
    }
    let mut points = 0u64;
    for a in corpus() {
        let r = run_suite(Suite::NewtonHull, &SuiteParams::new(a.clone())).map_err(err)?;
        ensure(r.passed(), || format!("{a}: {r}"))?;
        points += r.checks[0].details.iter().find(|(k, _)| k == "points").unwrap().1.parse::<u64>().unwrap();
    }
    Ok(format!("{tor_checks} Tor comparisons, {points} hull membership points, zero discrepancies"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 closed form = brute force on the corpus", closed_form_vs_bruteforce),
        ("2 maximal ideal worked example", maximal_ideal_worked_example),
        ("3 Skoda tail (multiplier, p = 2, 3, 5)", skoda),
        ("4 test ideal = multiplier ideal (p = 2, 3, 5, 7)", test_equals_multiplier),
        ("5 generating function of λ(a^jK/a^jJ)", length_generating_function),
        ("6 polynomial Tor lengths", tor_polynomiality),
        ("7 Cohen–Macaulay shape in dimension 2", cm_shape),
        ("8 excess as a Tor₂ difference", excess),
        ("9 fuzzed table filtrations", fuzzed_tables),
        ("10 oracle independence (Tor symmetry, facets vs hull)", oracle_independence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
