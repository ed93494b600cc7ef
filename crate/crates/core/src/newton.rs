//! Newton polyhedra of monomial ideals: facets by double description on the
//! homogenized cone, scaled membership, integral closure and candidate
//! jumping numbers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A facet inequality `⟨a, x⟩ ≥ b` with `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// No coordinate ray lies in the facet, i.e. every normal entry is positive.
    pub bounded: bool,
}

impl Facet {
    fn value(&self, u: &[i64]) -> i128 {
        self.normal.iter().zip(u).map(|(&a, &x)| a as i128 * x as i128).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

/// Extreme ray of the dual cone together with the set of tight constraints.
#[derive(Clone, Debug)]
struct Ray {
    y: Vec<i128>,
    zeros: u128,
}

fn normalize(y: &mut [i128]) {
    let g = y.iter().fold(0i128, |g, &x| {
        let (mut a, mut b) = (g, x.abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    });
    if g > 1 {
        for x in y.iter_mut() {
            *x /= g;
        }
    }
}

fn dot(y: &[i128], r: &[i128]) -> Result<i128> {
    y.iter().zip(r).try_fold(0i128, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?)).ok_or(Error::Overflow)
}

/// Extreme rays of `{y : ⟨y, r⟩ ≥ 0 for all rows r}`. The first `n` rows must
/// be `(e_1,0), ..., (e_d,0), (v,1)`, which pins down the initial simplex.
fn double_description(rows: &[Vec<i128>]) -> Result<Vec<Ray>> {
    let n = rows[0].len();
    let d = n - 1;
    if rows.len() > 128 {
        return Err(Error::Resource(format!("{} generators exceed the facet enumeration limit", rows.len() - d)));
    }
    let v0 = &rows[d];
    let mut rays: Vec<Ray> = Vec::new();
    for k in 0..n {
        let mut y = vec![0i128; n];
        if k < d {
            y[k] = 1;
            y[d] = -v0[k];
        } else {
            y[d] = 1;
        }
        let zeros = (0..n).filter(|&j| j != k).fold(0u128, |z, j| z | (1 << j));
        rays.push(Ray { y, zeros });
    }
    for (h_idx, h) in rows.iter().enumerate().skip(n) {
        let vals = rays.iter().map(|r| dot(&r.y, h)).collect::<Result<Vec<_>>>()?;
        let mut next: Vec<Ray> = Vec::new();
        for (r, &s) in rays.iter().zip(&vals) {
            if s > 0 {
                next.push(r.clone());
            } else if s == 0 {
                next.push(Ray { y: r.y.clone(), zeros: r.zeros | (1 << h_idx) });
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            let sp = vals[pi];
            if sp <= 0 {
                continue;
            }
            for (ni, q) in rays.iter().enumerate() {
                let sn = vals[ni];
                if sn >= 0 {
                    continue;
                }
                let common = p.zeros & q.zeros;
                if (common.count_ones() as usize) + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == pi || k == ni || r.zeros & common != common);
                if !adjacent {
                    continue;
                }
                let mut y = Vec::with_capacity(n);
                for (a, b) in q.y.iter().zip(&p.y) {
                    let t = sp.checked_mul(*a).and_then(|x| x.checked_sub(sn.checked_mul(*b)?));
                    y.push(t.ok_or(Error::Overflow)?);
                }
                normalize(&mut y);
                next.push(Ray { y, zeros: common | (1 << h_idx) });
            }
        }
        rays = next;
    }
    Ok(rays)
}

impl NewtonPolyhedron {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let d = ideal.dim();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for i in 0..d {
            let mut r = vec![0i128; d + 1];
            r[i] = 1;
            rows.push(r);
        }
        for g in ideal.gens() {
            let mut r: Vec<i128> = g.entries().iter().map(|&e| e as i128).collect();
            r.push(1);
            rows.push(r);
        }
        let mut facets = BTreeSet::new();
        for ray in double_description(&rows)? {
            let a = &ray.y[..d];
            let b = -ray.y[d];
            if b <= 0 {
                // the face at infinity or a coordinate hyperplane
                continue;
            }
            let normal = a.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect::<Result<Vec<_>>>()?;
            let bounded = normal.iter().all(|&x| x > 0);
            facets.insert(Facet { normal, offset: i64::try_from(b).map_err(|_| Error::Overflow)?, bounded });
        }
        let facets: Vec<Facet> = facets.into_iter().collect();
        let vertices = ideal
            .gens()
            .iter()
            .filter(|g| {
                let u: Vec<i64> = g.entries().iter().map(|&e| e as i64).collect();
                let mut tight: Vec<Vec<i64>> =
                    facets.iter().filter(|f| f.value(&u) == f.offset as i128).map(|f| f.normal.clone()).collect();
                for i in 0..d {
                    if u[i] == 0 {
                        let mut e = vec![0; d];
                        e[i] = 1;
                        tight.push(e);
                    }
                }
                linalg::rank(&tight) == d
            })
            .cloned()
            .collect();
        Ok(NewtonPolyhedron { dim: d, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Facets with positive offset; the coordinate facets are implicit.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Exponents `a_i` of the vertices `a_i e_i` on the axes, if all exist.
    pub fn axis_vertices(&self) -> Option<Vec<u32>> {
        let mut out = vec![None; self.dim];
        for v in &self.vertices {
            if let Some(i) = v.pure_power_index() {
                out[i] = Some(v.entries()[i]);
            }
        }
        out.into_iter().collect()
    }

    /// `u ∈ c·P`, or `u ∈ Int(c·P)` when `strict`.
    pub fn in_scaled_polyhedron(&self, u: &[Rational], c: &Rational, strict: bool) -> Result<bool> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        if !rational::is_positive(c) {
            return Err(Error::Precondition("scaling factor must be positive".into()));
        }
        if u.iter().any(|x| x.is_negative()) {
            return Err(Error::Precondition("point must be nonnegative".into()));
        }
        if strict && u.iter().any(|x| x.is_zero()) {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|f| {
            let lhs: Rational =
                f.normal.iter().zip(u).map(|(&a, x)| Rational::from_integer(BigInt::from(a)) * x).sum();
            let rhs = c * Rational::from_integer(BigInt::from(f.offset));
            if strict {
                lhs > rhs
            } else {
                lhs >= rhs
            }
        }))
    }

    /// Integer-point version of [`Self::in_scaled_polyhedron`] with `c = num/den`.
    pub(crate) fn contains_point(&self, u: &[i64], num: i128, den: i128, strict: bool) -> bool {
        if strict && u.iter().any(|&x| x <= 0) {
            return false;
        }
        self.facets.iter().all(|f| {
            let lhs = den * f.value(u);
            let rhs = num * f.offset as i128;
            if strict {
                lhs > rhs
            } else {
                lhs >= rhs
            }
        })
    }

    /// Minimal generators of `{v ∈ ℕ^d : v + shift·1 ∈ c·P}` (closed) or of
    /// the points landing in the interior (strict), searching `v_i ≤ bounds[i]`.
    /// Every line parallel to the last axis contributes its lowest point.
    pub(crate) fn lattice_ideal(
        &self,
        num: i128,
        den: i128,
        shift: i64,
        strict: bool,
        bounds: &[u32],
    ) -> Result<MonomialIdeal> {
        let d = self.dim;
        let last = d - 1;
        let mut gens = Vec::new();
        let mut prefix = vec![0u32; last];
        'lines: loop {
            let mut w_min: i128 = 0;
            let mut ok = true;
            for f in &self.facets {
                let s: i128 = (0..last)
                    .map(|i| f.normal[i] as i128 * (prefix[i] as i128 + shift as i128))
                    .sum();
                let rhs = num * f.offset as i128 - den * s;
                let a = f.normal[last] as i128 * den;
                if a == 0 {
                    if (strict && rhs >= 0) || (!strict && rhs > 0) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                // need a·(w + shift) ≥ rhs, or > rhs when strict
                let need = if strict { rhs.div_euclid(a) + 1 } else { -((-rhs).div_euclid(a)) };
                w_min = w_min.max(need - shift as i128);
            }
            if ok && w_min <= bounds[last] as i128 {
                let mut v = prefix.clone();
                v.push(w_min as u32);
                gens.push(ExponentVector::from(v));
            }
            // advance the odometer over the first d-1 coordinates
            let mut i = 0;
            loop {
                if i == last {
                    break 'lines;
                }
                if prefix[i] < bounds[i] {
                    prefix[i] += 1;
                    break;
                }
                prefix[i] = 0;
                i += 1;
            }
        }
        MonomialIdeal::minimalize(d, gens)
    }

    /// Sorted superset of the jumping numbers `≤ c_max` of the multiplier
    /// filtration: all `⟨a, v+1⟩/b ≤ c_max` with `v_i < c_max·a_i`, plus
    /// `c_max` itself.
    pub fn candidate_jumps(&self, c_max: &Rational) -> Result<Vec<Rational>> {
        if !rational::is_positive(c_max) {
            return Err(Error::Precondition("c_max must be positive".into()));
        }
        let axes = self
            .axis_vertices()
            .ok_or_else(|| Error::NotMPrimary("candidate box is unbounded".into()))?;
        let box_len: Vec<u64> = axes
            .iter()
            .map(|&a| {
                let t = rational::ceil(&(c_max * Rational::from_integer(BigInt::from(a))));
                u64::try_from(t.max(BigInt::zero())).map_err(|_| Error::Overflow)
            })
            .collect::<Result<_>>()?;
        let mut out: BTreeSet<Rational> = BTreeSet::new();
        for f in &self.facets {
            // numerators n = ⟨a, v+1⟩ ≤ c_max·b, by a reachability sweep
            let top = rational::floor(&(c_max * Rational::from_integer(BigInt::from(f.offset))));
            let top = usize::try_from(top.max(BigInt::zero())).map_err(|_| Error::Overflow)?;
            let mut reach = vec![false; top + 1];
            reach[0] = true;
            for i in 0..self.dim {
                let a = f.normal[i] as usize;
                let mut next = vec![false; top + 1];
                for (s, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
                    for k in 1..=box_len[i] as usize {
                        let t = s + a * k;
                        if t > top {
                            break;
                        }
                        next[t] = true;
                        if a == 0 {
                            break;
                        }
                    }
                }
                reach = next;
            }
            for (n, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
                out.insert(Rational::new(BigInt::from(n), BigInt::from(f.offset)));
            }
        }
        out.insert(c_max.clone());
        Ok(out.into_iter().collect())
    }
}

pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    NewtonPolyhedron::new(ideal)
}

/// Monomials whose exponents lie in the Newton polyhedron.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let p = NewtonPolyhedron::new(ideal)?;
    let mut bounds = vec![0u32; ideal.dim()];
    for v in p.vertices() {
        for (b, &e) in bounds.iter_mut().zip(v.entries()) {
            *b = (*b).max(e);
        }
    }
    Ok(p.lattice_ideal(1, 1, 0, false, &bounds)?.with_characteristic(ideal.characteristic()))
}

/// `Q ⊆ I ⊆ integral closure of Q`.
pub fn is_reduction(q: &MonomialIdeal, i: &MonomialIdeal) -> Result<bool> {
    if q.dim() != i.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: i.dim() });
    }
    if q.is_zero() || i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !i.contains_ideal(q)? {
        return Ok(false);
    }
    let p = NewtonPolyhedron::new(q)?;
    Ok(i.gens().iter().all(|g| {
        let u: Vec<i64> = g.entries().iter().map(|&e| e as i64).collect();
        p.contains_point(&u, 1, 1, false)
    }))
}
