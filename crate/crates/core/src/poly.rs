//! Dense univariate polynomials over the top level of a [`FieldCtx`].
//!
//! Coefficients are stored in ascending order of degree, with no trailing
//! zeros; the zero polynomial has an empty coefficient vector. Arithmetic
//! takes the field context explicitly.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![FieldElement::ONE],
        }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^n`
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// Polynomial with prime-field coefficients given as integers.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    /// `x - c`
    pub fn linear(ctx: &FieldCtx, c: FieldElement) -> Self {
        Poly::new(vec![ctx.neg(c), FieldElement::ONE])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    /// Orders by degree, then by coefficient encodings from the top down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64, ctx: &FieldCtx) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx);
            }
        }
        acc
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = ctx.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, ctx)
    }

    pub fn divrem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = ctx.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = ctx.sub(rem[i - dd + j], ctx.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        Ok(self.divrem(divisor, ctx)?.1)
    }

    pub fn divides(&self, other: &Poly, ctx: &FieldCtx) -> bool {
        !self.is_zero() && other.rem(self, ctx).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        let (q, r) = self.divrem(divisor, ctx)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, ctx).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other, ctx);
        self.div_exact(&g, ctx).expect("gcd divides").mul(other, ctx).monic(ctx)
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ctx.mul(ctx.from_int((i as u64 % ctx.characteristic()) as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: FieldElement, ctx: &FieldCtx) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        self.mul(other, ctx).rem(modulus, ctx).expect("nonzero modulus")
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        let mut base = self.rem(modulus, ctx).expect("nonzero modulus");
        let mut acc = Poly::one().rem(modulus, ctx).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus, ctx);
            }
        }
        acc
    }

    /// `self(g) mod modulus` by Horner's rule.
    pub fn compose_mod(&self, g: &Poly, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_mod(g, modulus, ctx).add(&Poly::constant(c), ctx);
        }
        acc.rem(modulus, ctx).expect("nonzero modulus")
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(FieldElement) -> FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Keep every `step`-th coefficient: `sum c_{ks} x^k`.
    pub fn deflate(&self, step: usize) -> Poly {
        Poly::new(self.coeffs.iter().step_by(step).copied().collect())
    }

    /// True when every coefficient lies in the subfield at `level`.
    pub fn coeffs_in_level(&self, ctx: &FieldCtx, level: usize) -> bool {
        self.coeffs.iter().all(|&c| ctx.level_of(c) <= level)
    }
}
