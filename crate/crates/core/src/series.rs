//! Rational functions with denominators `(1-T)^k`, Poincaré forms summing
//! such functions over exponent classes in (0, 1], and truncated series with
//! rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

/// `(1-T)^k` as a coefficient vector.
pub(crate) fn one_minus_t_pow(k: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for _ in 0..k {
        p = poly_mul(&p, &[BigInt::one(), -BigInt::one()]);
    }
    p
}

/// `numerator / (1-T)^k`, kept with `numerator(1) != 0` whenever `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRational {
    num: Vec<BigInt>,
    k: u32,
}

impl UniRational {
    pub fn new(mut num: Vec<BigInt>, mut k: u32) -> Self {
        trim(&mut num);
        if num.is_empty() {
            return UniRational { num, k: 0 };
        }
        while k > 0 && num.iter().sum::<BigInt>().is_zero() {
            // divide by (1-T): q_i = n_i + q_{i-1}
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = BigInt::zero();
            for c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            num = q;
            trim(&mut num);
            k -= 1;
        }
        UniRational { num, k }
    }

    pub fn from_i64(num: &[i64], k: u32) -> Self {
        Self::new(num.iter().map(|&c| BigInt::from(c)).collect(), k)
    }

    pub fn zero() -> Self {
        UniRational { num: Vec::new(), k: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator_exponent(&self) -> u32 {
        self.k
    }

    /// Numerator over `(1-T)^k` for some `k ≥ self.k`.
    fn numerator_over(&self, k: u32) -> Vec<BigInt> {
        poly_mul(&self.num, &one_minus_t_pow(k - self.k))
    }

    /// Multiplies by `T^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); m];
        num.extend(self.num.iter().cloned());
        UniRational { num, k: self.k }
    }

    /// Coefficients of `T^0, ..., T^n` in the power series expansion.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = (0..=n).map(|i| self.num.get(i).cloned().unwrap_or_default()).collect();
        for _ in 0..self.k {
            for i in 1..=n {
                let prev = c[i - 1].clone();
                c[i] += prev;
            }
        }
        c
    }
}

impl Add for &UniRational {
    type Output = UniRational;
    fn add(self, other: &UniRational) -> UniRational {
        let k = self.k.max(other.k);
        UniRational::new(poly_add(&self.numerator_over(k), &other.numerator_over(k)), k)
    }
}

impl Neg for &UniRational {
    type Output = UniRational;
    fn neg(self) -> UniRational {
        UniRational { num: self.num.iter().map(|c| -c).collect(), k: self.k }
    }
}

impl Sub for &UniRational {
    type Output = UniRational;
    fn sub(self, other: &UniRational) -> UniRational {
        self + &(-other)
    }
}

impl Mul for &UniRational {
    type Output = UniRational;
    fn mul(self, other: &UniRational) -> UniRational {
        UniRational::new(poly_mul(&self.num, &other.num), self.k + other.k)
    }
}

/// One term `c·V^n` of a rendered polynomial; `first` controls the sign style.
fn write_term(out: &mut String, c: &BigInt, var: &str, n: &str, first: bool, spaced: bool) {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg, spaced) {
        (true, true, _) => out.push('-'),
        (true, false, _) => {}
        (false, true, true) => out.push_str(" - "),
        (false, false, true) => out.push_str(" + "),
        (false, true, false) => out.push('-'),
        (false, false, false) => out.push('+'),
    }
    if n == "0" {
        out.push_str(&mag.to_string());
        return;
    }
    if !mag.is_one() {
        out.push_str(&mag.to_string());
    }
    out.push_str(var);
    if n != "1" {
        out.push('^');
        out.push_str(n);
    }
}

fn render_poly(p: &[BigInt], var: &str) -> (String, usize) {
    let mut s = String::new();
    let mut terms = 0;
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        write_term(&mut s, c, var, &i.to_string(), terms == 0, false);
        terms += 1;
    }
    if terms == 0 {
        s.push('0');
    }
    (s, terms)
}

fn render_fraction(num: &[BigInt], var: &str, step: u64, k: u32) -> String {
    let (n, terms) = render_poly(num, var);
    if k == 0 || terms == 0 {
        return n;
    }
    let base = if step == 1 { format!("(1-{var})") } else { format!("(1-{var}^{step})") };
    let den = if k == 1 { base } else { format!("{base}^{k}") };
    if terms > 1 {
        format!("({n})/{den}")
    } else {
        format!("{n}/{den}")
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_fraction(&self.num, "T", 1, self.k))
    }
}

/// `Σ_c R_c(T)·T^c` over classes `c ∈ (0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoincareForm {
    classes: BTreeMap<Rational, UniRational>,
}

impl PoincareForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `r·T^c` to the class of `c`. Zero results are dropped.
    pub fn add_class(&mut self, c: Rational, r: UniRational) -> Result<()> {
        if !rational::is_positive(&c) || c > Rational::one() {
            return Err(Error::Precondition(format!("class {} is not in (0, 1]", rational::format_rational(&c))));
        }
        let sum = match self.classes.remove(&c) {
            Some(old) => &old + &r,
            None => r,
        };
        if !sum.is_zero() {
            self.classes.insert(c, sum);
        }
        Ok(())
    }

    pub fn classes(&self) -> &BTreeMap<Rational, UniRational> {
        &self.classes
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    /// Common denominator of the classes, so the form lives in `ℚ(T^{1/e})`.
    pub fn denominator(&self) -> BigInt {
        rational::lcm_of_denominators(self.classes.keys())
    }

    /// All terms with exponent `≤ order`.
    pub fn expand(&self, order: &Rational) -> TruncatedSeries {
        let mut terms = BTreeMap::new();
        for (c, r) in &self.classes {
            if c > order {
                continue;
            }
            let n = rational::floor(&(order - c)).to_usize().unwrap_or(0);
            for (j, coef) in r.expand(n).into_iter().enumerate() {
                if !coef.is_zero() {
                    terms.insert(c + Rational::from_integer(BigInt::from(j)), coef);
                }
            }
        }
        TruncatedSeries { order: order.clone(), terms }
    }

    /// Single fraction over `(1-z^e)^k` with `z = T^{1/e}`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let e = self.denominator();
        let eu = e.to_u64().expect("class denominator fits in u64");
        let kmax = self.classes.values().map(|r| r.k).max().unwrap_or(0);
        let mut total: Vec<BigInt> = Vec::new();
        for (c, r) in &self.classes {
            let shift = (c * Rational::from_integer(e.clone())).to_integer().to_usize().unwrap();
            let num = r.numerator_over(kmax);
            let mut z = vec![BigInt::zero(); shift + (num.len().max(1) - 1) * eu as usize + 1];
            for (i, coef) in num.iter().enumerate() {
                z[shift + i * eu as usize] += coef;
            }
            total = poly_add(&total, &z);
        }
        if eu == 1 {
            render_fraction(&total, "T", 1, kmax)
        } else {
            format!("{} where z = T^(1/{eu})", render_fraction(&total, "z", eu, kmax))
        }
    }

    /// Inverse of [`Self::render`].
    pub fn parse(text: &str) -> Result<PoincareForm> {
        let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg} in {text:?}") };
        let text = text.trim();
        let (body, var, e) = match text.split_once(" where z = T^(1/") {
            Some((body, rest)) => {
                let e: u64 = rest.strip_suffix(')').and_then(|x| x.parse().ok()).ok_or_else(|| err("bad substitution"))?;
                (body, 'z', e)
            }
            None => (text, 'T', 1),
        };
        let (num_text, k) = match body.rfind("/(1-") {
            Some(pos) => {
                let den = &body[pos + 1..];
                let base = if e == 1 { format!("(1-{var})") } else { format!("(1-{var}^{e})") };
                let rest = den.strip_prefix(&base).ok_or_else(|| err("bad denominator"))?;
                let k: u32 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').and_then(|x| x.parse().ok()).ok_or_else(|| err("bad denominator power"))?
                };
                (&body[..pos], k)
            }
            None => (body, 0),
        };
        let num_text = num_text.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(num_text);
        let coeffs = parse_poly(num_text, var).ok_or_else(|| err("bad numerator"))?;
        let mut by_class: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
        for (n, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = n as u64;
            let (r, m) = if n.is_multiple_of(e) {
                if n == 0 {
                    return Err(err("constant term has no class in (0, 1]"));
                }
                (e, n / e - 1)
            } else {
                (n % e, n / e)
            };
            let p = by_class.entry(r).or_default();
            if p.len() <= m as usize {
                p.resize(m as usize + 1, BigInt::zero());
            }
            p[m as usize] += c;
        }
        let mut form = PoincareForm::new();
        for (r, p) in by_class {
            form.add_class(Rational::new(BigInt::from(r), BigInt::from(e)), UniRational::new(p, k))?;
        }
        Ok(form)
    }
}

fn parse_poly(s: &str, var: char) -> Option<Vec<BigInt>> {
    let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out: Vec<BigInt> = Vec::new();
    let mut i = 0;
    if s == ['0'] {
        return Some(out);
    }
    while i < s.len() {
        let mut sign = BigInt::one();
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return None;
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coef: BigInt = if i > start { s[start..i].iter().collect::<String>().parse().ok()? } else { BigInt::one() };
        let mut n = 0usize;
        if i < s.len() && s[i] == var {
            i += 1;
            n = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let st = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                n = s[st..i].iter().collect::<String>().parse().ok()?;
            }
        } else if i == start {
            return None;
        }
        if out.len() <= n {
            out.resize(n + 1, BigInt::zero());
        }
        out[n] += sign * coef;
    }
    Some(out)
}

/// Finitely many terms `coef·T^exp` with rational exponents `≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub order: Rational,
    pub terms: BTreeMap<Rational, BigInt>,
}

impl TruncatedSeries {
    pub fn new(order: Rational) -> Self {
        TruncatedSeries { order, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exponent: Rational, coef: BigInt) {
        let entry = self.terms.entry(exponent.clone()).or_default();
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }
}

impl fmt::Display for TruncatedSeries {
    /// `T^2 + 2T^3 + 3T^4`, fractional exponents as `T^(5/6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let n = if e.is_integer() { e.to_string() } else { format!("({})", rational::format_rational(e)) };
            write_term(&mut s, c, "T", &n, k == 0, true);
        }
        f.write_str(&s)
    }
}
