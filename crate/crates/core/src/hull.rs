//! Membership in `conv(points) + ℝ₊^d` decided by Fourier–Motzkin
//! elimination. Deliberately independent of [`crate::newton`]: it never
//! looks at facets and serves as the cross-check for them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::monomial::ExponentVector;
use crate::rational::Rational;

/// A constraint `Σ coef_i λ_i ≤ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coef: Vec<Rational>,
    rhs: Rational,
}

impl Row {
    /// Scales so the first nonzero coefficient is ±1, for deduplication.
    fn normalized(mut self) -> Row {
        if let Some(p) = self.coef.iter().find(|c| !c.is_zero()).cloned() {
            let s = p.abs();
            for c in self.coef.iter_mut() {
                *c = &*c / &s;
            }
            self.rhs = &self.rhs / &s;
        }
        self
    }
}

/// Is there `λ ≥ 0` with `Σ λ = 1` and `Σ λ_k p_k ≤ u` componentwise?
pub fn in_hull_plus_orthant(points: &[ExponentVector], u: &[Rational]) -> bool {
    let k = points.len();
    if k == 0 {
        return false;
    }
    let mut rows: BTreeSet<Row> = BTreeSet::new();
    let zero = || vec![Rational::zero(); k];
    for i in 0..k {
        let mut c = zero();
        c[i] = -Rational::one();
        rows.insert(Row { coef: c, rhs: Rational::zero() });
    }
    rows.insert(Row { coef: vec![Rational::one(); k], rhs: Rational::one() });
    rows.insert(Row { coef: vec![-Rational::one(); k], rhs: -Rational::one() });
    for (j, uj) in u.iter().enumerate() {
        let coef = points.iter().map(|p| Rational::from_integer(BigInt::from(p.entries()[j]))).collect();
        rows.insert(Row { coef, rhs: uj.clone() }.normalized());
    }
    for var in 0..k {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in rows {
            if r.coef[var].is_positive() {
                pos.push(r);
            } else if r.coef[var].is_negative() {
                neg.push(r);
            } else {
                rest.insert(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = &p.coef[var];
                let b = -&n.coef[var];
                // b·p + a·n eliminates the variable
                let coef = p.coef.iter().zip(&n.coef).map(|(x, y)| &b * x + a * y).collect();
                let rhs = &b * &p.rhs + a * &n.rhs;
                rest.insert(Row { coef, rhs }.normalized());
            }
        }
        rows = rest;
    }
    rows.iter().all(|r| !r.rhs.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn segment_plus_orthant() {
        let pts = [ExponentVector::new(&[2, 0]), ExponentVector::new(&[0, 3])];
        assert!(in_hull_plus_orthant(&pts, &[int(1), frac(3, 2)]));
        assert!(!in_hull_plus_orthant(&pts, &[int(1), int(1)]));
        assert!(in_hull_plus_orthant(&pts, &[int(5), int(0)]));
        assert!(!in_hull_plus_orthant(&pts, &[int(1), int(0)]));
        assert!(!in_hull_plus_orthant(&[], &[int(1), int(1)]));
    }
}
