//! Shift-invariant linear systems `x(k+1) = A x(k)`: polynomial periods,
//! cycle sets, orbit lengths of single vectors and vectors with a
//! prescribed orbit length.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canonical::{elementary_divisors, eval_poly_at_matrix, vector_annihilator};
use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{vec_add, FFMatrix, Vector};
use crate::ntheory::{self, ceil_log, checked_pow, gcd, lcm};
use crate::poly::Poly;
use crate::roots::order_in_group;

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} does not fit in 128 bits"))
}

/// Smallest `e >= 1` with `f | x^e - 1`.
///
/// ```
/// use pfss::{FieldCtx, Poly, lfss::poly_period};
/// let f2 = FieldCtx::prime(2).unwrap();
/// assert_eq!(poly_period(&f2, &Poly::from_ints(&f2, &[1, 1, 1])).unwrap(), 3);
/// ```
pub fn poly_period(ctx: &FieldCtx, f: &Poly) -> Result<u128> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() {
        return Err(Error::SingularPolynomial);
    }
    let f = f.monic(ctx);
    if f.degree() == Some(0) {
        return Ok(1);
    }
    let q = ctx.size() as u128;
    let p = ctx.characteristic() as u128;
    let mut exponent = 1u128;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for (g, c) in poly_factor(ctx, &f)?.factors {
        let d = g.degree().expect("non-constant factor") as u32;
        let group = checked_pow(q, d).ok_or_else(|| overflow("q^d"))? - 1;
        let t = ceil_log(p, c as u128);
        let pt = checked_pow(p, t).ok_or_else(|| overflow("p^t"))?;
        let part = group.checked_mul(pt).ok_or_else(|| overflow("period bound"))?;
        let g_ = gcd(exponent, part);
        exponent = (exponent / g_)
            .checked_mul(part)
            .ok_or_else(|| overflow("period bound"))?;
        factors = ntheory::merge_factors(&factors, &ntheory::factorize(group));
        if t > 0 {
            factors = ntheory::merge_factors(&factors, &[(p, t)]);
        }
    }
    let x = Poly::x();
    Ok(order_in_group(exponent, &factors, |e| x.pow_mod(e, &f, ctx).is_one()))
}

/// Multiset of cycles: `count` cycles of each `length`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleSet {
    entries: BTreeMap<u128, u128>,
}

#[derive(Serialize, Deserialize)]
struct CycleEntry {
    count: u128,
    length: u128,
}

impl Serialize for CycleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<CycleEntry> = self
            .iter()
            .map(|(length, count)| CycleEntry { count, length })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycleSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<CycleEntry>::deserialize(d)?;
        let mut cs = CycleSet::new();
        for e in v {
            cs.add(e.length, e.count);
        }
        Ok(cs)
    }
}

impl CycleSet {
    pub fn new() -> Self {
        CycleSet::default()
    }

    /// The cycle set of a single fixed point.
    pub fn point() -> Self {
        CycleSet::from_pairs(&[(1, 1)])
    }

    /// From `(length, count)` pairs.
    pub fn from_pairs(pairs: &[(u128, u128)]) -> Self {
        let mut cs = CycleSet::new();
        for &(l, c) in pairs {
            cs.add(l, c);
        }
        cs
    }

    pub fn add(&mut self, length: u128, count: u128) {
        if count > 0 {
            *self.entries.entry(length).or_insert(0) += count;
        }
    }

    /// `(length, count)` in increasing length.
    pub fn iter(&self) -> impl Iterator<Item = (u128, u128)> + '_ {
        self.entries.iter().map(|(&l, &c)| (l, c))
    }

    pub fn count(&self, length: u128) -> u128 {
        self.entries.get(&length).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> Vec<u128> {
        self.entries.keys().copied().collect()
    }

    pub fn contains_length(&self, length: u128) -> bool {
        self.entries.contains_key(&length)
    }

    /// Total number of states covered, `sum count * length`.
    pub fn total_states(&self) -> u128 {
        self.iter().map(|(l, c)| l * c).sum()
    }

    /// Cycle set of the product system on `V1 x V2`:
    /// `n1[T1] * n2[T2] = n1 n2 gcd(T1, T2) [lcm(T1, T2)]`.
    pub fn product(&self, other: &CycleSet) -> CycleSet {
        let mut out = CycleSet::new();
        for (l1, c1) in self.iter() {
            for (l2, c2) in other.iter() {
                out.add(lcm(l1, l2), c1 * c2 * gcd(l1, l2));
            }
        }
        out
    }

    /// Renders as `1[1] + 3[6]`.
    pub fn render(&self) -> String {
        self.iter()
            .map(|(l, c)| format!("{c}[{l}]"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn require_nonsingular(a: &FFMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("expected a square matrix".into()));
    }
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// Cycle set of the permutation `x -> A x` of `GF(q)^n`, from the
/// elementary divisors of `A`.
pub fn cycle_set(a: &FFMatrix) -> Result<CycleSet> {
    require_nonsingular(a)?;
    let ctx = a.ctx();
    let q = ctx.size() as u128;
    let p = ctx.characteristic() as u128;
    let mut total = CycleSet::point();
    for (f, c) in elementary_divisors(a)? {
        let d = f.degree().expect("non-constant divisor") as u32;
        let e = poly_period(ctx, &f)?;
        let mut part = CycleSet::point();
        for j in 1..=c {
            let ej = e * checked_pow(p, ceil_log(p, j as u128)).ok_or_else(|| overflow("period"))?;
            let hi = checked_pow(q, j * d).ok_or_else(|| overflow("state count"))?;
            let lo = checked_pow(q, (j - 1) * d).ok_or_else(|| overflow("state count"))?;
            part.add(ej, (hi - lo) / ej);
        }
        total = total.product(&part);
    }
    Ok(total)
}

/// Number of states `q^n`, refused above `cap`.
pub fn state_count(ctx: &FieldCtx, n: usize, cap: u128) -> Result<u64> {
    let size = checked_pow(ctx.size() as u128, n as u32).unwrap_or(u128::MAX);
    if size > cap || size > u64::MAX as u128 {
        return Err(Error::StateSpaceTooLarge { size, cap });
    }
    Ok(size as u64)
}

/// Index of a state in `0..q^n`, first coordinate least significant.
pub fn state_index(ctx: &FieldCtx, x: &[FieldElement]) -> u64 {
    let q = ctx.size();
    x.iter().rev().fold(0u64, |acc, v| acc * q + v.encoding())
}

pub fn state_from_index(ctx: &FieldCtx, n: usize, mut idx: u64) -> Vector {
    let q = ctx.size();
    (0..n)
        .map(|_| {
            let v = FieldElement::from_encoding(idx % q);
            idx /= q;
            v
        })
        .collect()
}

/// Cycle set by following every state around its cycle.
pub fn exhaustive_cycle_set(a: &FFMatrix, cap: u128) -> Result<CycleSet> {
    require_nonsingular(a)?;
    let ctx = a.ctx();
    let n = a.rows();
    let total = state_count(ctx, n, cap)?;
    let mut seen = vec![false; total as usize];
    let mut out = CycleSet::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0u128;
        let mut x = state_from_index(ctx, n, start);
        loop {
            let i = state_index(ctx, &x) as usize;
            if seen[i] {
                break;
            }
            seen[i] = true;
            len += 1;
            x = a.mul_vec(&x);
        }
        out.add(len, 1);
    }
    Ok(out)
}

/// Smallest `T >= 1` with `A^T x = x`.
pub fn vector_orbit_length(a: &FFMatrix, x: &[FieldElement]) -> Result<u128> {
    require_nonsingular(a)?;
    poly_period(a.ctx(), &vector_annihilator(a, x)?)
}

/// Orbit length by iteration, for cross-checks.
pub fn vector_orbit_length_by_iteration(a: &FFMatrix, x: &[FieldElement], cap: u128) -> Result<u128> {
    let mut y = a.mul_vec(x);
    let mut t = 1u128;
    while y != x {
        if t >= cap {
            return Err(Error::StepCapExceeded(cap));
        }
        y = a.mul_vec(&y);
        t += 1;
    }
    Ok(t)
}

/// A vector whose orbit under `A` has length exactly `t`, or `None` when
/// no cycle of that length exists.
///
/// Works in the primary decomposition: a component in `ker f(A)^j` but not
/// `ker f(A)^(j-1)` has period `e_f p^ceil(log_p j)`, and a sum of
/// components has the lcm of their periods. Exponent choices are tried in
/// lexicographic order over the irreducible factors sorted canonically,
/// and each component is the first kernel basis vector that qualifies.
pub fn find_vector_with_period(a: &FFMatrix, t: u128) -> Result<Option<Vector>> {
    require_nonsingular(a)?;
    let ctx = a.ctx();
    let n = a.rows();
    let p = ctx.characteristic() as u128;
    if t == 1 {
        return Ok(Some(vec![FieldElement::ZERO; n]));
    }
    // distinct irreducible factors with their largest exponent
    let mut primes: Vec<(Poly, u32)> = Vec::new();
    for (f, c) in elementary_divisors(a)? {
        match primes.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m = (*m).max(c),
            None => primes.push((f, c)),
        }
    }
    let mut options: Vec<Vec<u128>> = Vec::new();
    for (f, c) in &primes {
        let e = poly_period(ctx, f)?;
        let mut periods = vec![1u128];
        for j in 1..=*c {
            periods.push(e * checked_pow(p, ceil_log(p, j as u128)).ok_or_else(|| overflow("period"))?);
        }
        options.push(periods);
    }
    let mut choice = vec![0usize; primes.len()];
    let found = loop {
        let period = choice
            .iter()
            .zip(&options)
            .fold(1u128, |acc, (&j, per)| lcm(acc, per[j]));
        if period == t {
            break Some(choice.clone());
        }
        // odometer with the last factor varying fastest
        let mut i = choice.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
        }
        if choice.iter().all(|&j| j == 0) {
            break None;
        }
    };
    let Some(choice) = found else {
        return Ok(None);
    };
    let mut x = vec![FieldElement::ZERO; n];
    for ((f, _), &j) in primes.iter().zip(&choice) {
        if j == 0 {
            continue;
        }
        let fa = eval_poly_at_matrix(f, a)?;
        let upper = fa.pow(j as u128)?.kernel();
        let lower = fa.pow(j as u128 - 1)?;
        let w = upper
            .into_iter()
            .find(|v| !crate::matrix::is_zero_vec(&lower.mul_vec(v)))
            .expect("kernel chain is strictly increasing up to the exponent");
        x = vec_add(ctx, &x, &w);
    }
    let got = vector_orbit_length(a, &x)?;
    if got != t {
        return Err(Error::VerificationFailed(format!(
            "constructed vector has period {got}, wanted {t}"
        )));
    }
    Ok(Some(x))
}
