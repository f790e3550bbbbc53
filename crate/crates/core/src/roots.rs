//! Multiplicative structure of a finite field: element orders, discrete
//! logarithms and `N`-th roots, extending the field when a root is missing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::factor::{find_irreducible, is_irreducible};
use crate::field::{FieldCtx, FieldElement};
use crate::ntheory::{self, gcd, inv_mod, pow_mod};
use crate::poly::Poly;

/// Knobs for operations that may need to build field extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionOptions {
    /// Seed for irreducible-polynomial search.
    pub seed: u64,
    /// Extension degrees above `cap_factor * current absolute degree` are
    /// refused with [`Error::ExtensionBoundExceeded`].
    pub cap_factor: usize,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        ExtensionOptions {
            seed: 0,
            cap_factor: 64,
        }
    }
}

/// Smallest `t >= 1` with `a^t = 1`.
pub fn element_order(ctx: &FieldCtx, a: FieldElement) -> Result<u128> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = (ctx.size() - 1) as u128;
    Ok(order_in_group(n, &ntheory::factorize(n), |e| ctx.pow(a, e).is_one()))
}

/// Order of an element in a cyclic group of order `n`, given a predicate
/// `is_identity_power(e)` for `g^e = 1`.
pub(crate) fn order_in_group(
    n: u128,
    factors: &[(u128, u32)],
    mut is_identity_power: impl FnMut(u128) -> bool,
) -> u128 {
    let mut t = n;
    for &(r, _) in factors {
        while t.is_multiple_of(r) && is_identity_power(t / r) {
            t /= r;
        }
    }
    t
}

fn bsgs(ctx: &FieldCtx, g: FieldElement, h: FieldElement, order: u128) -> Option<u128> {
    let m = (order as f64).sqrt().ceil() as u128 + 1;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = FieldElement::ONE;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = ctx.mul(cur, g);
    }
    let giant = ctx.inv(ctx.pow(g, m)).ok()?;
    let mut gamma = h;
    for i in 0..m {
        if let Some(&j) = baby.get(&gamma) {
            return Some((i * m + j) % order);
        }
        gamma = ctx.mul(gamma, giant);
    }
    None
}

/// `k` with `g^k = h`, where `g` generates a cyclic group of order `n`.
/// Pohlig-Hellman over the prime-power parts of `n`, baby-step/giant-step
/// inside each prime-order subgroup.
pub fn discrete_log(ctx: &FieldCtx, g: FieldElement, h: FieldElement, n: u128) -> Option<u128> {
    if h.is_zero() {
        return None;
    }
    let mut residues = Vec::new();
    for (r, e) in ntheory::factorize(n) {
        let re = r.pow(e);
        let gr = ctx.pow(g, n / re);
        let hr = ctx.pow(h, n / re);
        let g_hat = ctx.pow(gr, re / r);
        let gr_inv = ctx.inv(gr).ok()?;
        let mut x = 0u128;
        let mut rk = 1u128;
        for k in 0..e {
            let shifted = ctx.mul(ctx.pow(gr_inv, x), hr);
            let hk = ctx.pow(shifted, r.pow(e - 1 - k));
            let d = bsgs(ctx, g_hat, hk, r)?;
            x += d * rk;
            rk *= r;
        }
        residues.push((x % re, re));
    }
    // CRT
    let mut acc = 0u128;
    let mut modulus = 1u128;
    for (x, m) in residues {
        let inv = inv_mod(modulus % m, m)?;
        let t = ntheory::mul_mod((x + m - acc % m) % m, inv, m);
        acc += modulus * t;
        modulus *= m;
    }
    Some(acc % n.max(1))
}

/// Does `b` (of multiplicative order `order`) have an `n`-th root in the
/// degree-`e` extension of a field of size `q`? True iff
/// `order | (Q - 1) / gcd(n, Q - 1)` with `Q = q^e`.
fn root_exists_in_extension(q: u128, e: u128, order: u128, n: u128) -> bool {
    let m = order * n;
    let q_minus_1 = (pow_mod(q, e, m) + m - 1) % m;
    let g = gcd(n, q_minus_1 % n);
    q_minus_1.is_multiple_of(order * g)
}

/// An `n`-th root of `a`, in `ctx` or in the smallest extension of `ctx`
/// that contains one. Returns the root and the (possibly extended) field.
pub fn element_nth_root(
    ctx: &FieldCtx,
    a: FieldElement,
    n: u64,
    opts: &ExtensionOptions,
) -> Result<(FieldElement, FieldCtx)> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n == 0 {
        return Err(Error::InvalidInput("root index must be positive".into()));
    }
    if a.is_one() {
        return Ok((FieldElement::ONE, ctx.clone()));
    }
    let p = ctx.characteristic();
    let mut n_prime = n;
    let mut b = a;
    while n_prime.is_multiple_of(p) {
        n_prime /= p;
        b = ctx.frobenius_inverse(b);
    }
    if n_prime == 1 {
        return Ok((b, ctx.clone()));
    }
    let order = element_order(ctx, b)?;
    let q = ctx.size() as u128;
    let cap = opts.cap_factor.max(1) * ctx.degree();
    let e = (1..=cap as u128)
        .find(|&e| root_exists_in_extension(q, e, order, n_prime as u128))
        .ok_or(Error::ExtensionBoundExceeded { cap })?;

    let field = if e == 1 {
        ctx.clone()
    } else {
        // x^n' - b is the natural modulus when it is irreducible: its class
        // of x is then the root itself
        let mut binomial = vec![FieldElement::ZERO; n_prime as usize + 1];
        binomial[0] = ctx.neg(b);
        binomial[n_prime as usize] = FieldElement::ONE;
        let binomial = Poly::new(binomial);
        if e == n_prime as u128 && is_irreducible(ctx, &binomial) {
            let k = ctx.extend_unchecked(&binomial)?;
            let r = k.step_generator(k.depth() - 1);
            return Ok((r, k));
        }
        ctx.extend_unchecked(&find_irreducible(ctx, e as usize, opts.seed))?
    };

    let big_q1 = (field.size() - 1) as u128;
    let gamma = field.primitive_element();
    let k = discrete_log(&field, gamma, b, big_q1)
        .ok_or_else(|| Error::VerificationFailed("discrete logarithm not found".into()))?;
    let g = gcd(n_prime as u128, big_q1);
    if k % g != 0 {
        return Err(Error::VerificationFailed(
            "root predicted but congruence unsolvable".into(),
        ));
    }
    let reduced = big_q1 / g;
    let j = ntheory::mul_mod(
        k / g,
        inv_mod((n_prime as u128 / g) % reduced, reduced).unwrap_or(0),
        reduced.max(1),
    );
    let r = field.pow(gamma, j);
    if field.pow(r, n as u128) != a {
        return Err(Error::VerificationFailed("computed root fails r^N = a".into()));
    }
    Ok((r, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldCtx {
        let f2 = FieldCtx::prime(2).unwrap();
        f2.extend(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap()
    }

    #[test]
    fn orders_by_direct_powering() {
        let k = gf4();
        let theta = k.step_generator(0);
        assert_eq!(element_order(&k, FieldElement::ONE).unwrap(), 1);
        assert_eq!(element_order(&k, theta).unwrap(), 3);
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(element_order(&f5, f5.from_int(2)).unwrap(), 4);
        assert_eq!(element_order(&f5, FieldElement::ZERO), Err(Error::ZeroElement));
    }

    #[test]
    fn cube_root_of_theta_lands_in_gf64() {
        let k = gf4();
        let theta = k.step_generator(0);
        let (r, big) = element_nth_root(&k, theta, 3, &ExtensionOptions::default()).unwrap();
        assert_eq!(big.size(), 64);
        assert_eq!(big.depth(), 2);
        assert_eq!(big.pow(r, 3), theta);
        // the binomial x^3 + theta is used as the modulus
        assert_eq!(
            big.step_modulus(1).coeffs(),
            &[theta, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]
        );
    }

    #[test]
    fn square_root_of_two_needs_gf25() {
        let f5 = FieldCtx::prime(5).unwrap();
        let two = f5.from_int(2);
        let (r, k) = element_nth_root(&f5, two, 2, &ExtensionOptions::default()).unwrap();
        assert_eq!(k.size(), 25);
        assert_eq!(k.mul(r, r), two);
        // exhaustive oracle: some element of GF(25) squares to 2, none of F5 does
        assert!(k.elements().any(|x| k.mul(x, x) == two));
        assert!(f5.elements().all(|x| f5.mul(x, x) != two));
    }

    #[test]
    fn trivial_roots() {
        let f5 = FieldCtx::prime(5).unwrap();
        let (r, k) = element_nth_root(&f5, FieldElement::ONE, 7, &ExtensionOptions::default()).unwrap();
        assert_eq!((r, k.size()), (FieldElement::ONE, 5));
        assert_eq!(
            element_nth_root(&f5, FieldElement::ZERO, 2, &ExtensionOptions::default()),
            Err(Error::ZeroElement)
        );
        // p-th roots never need an extension
        let (r, k) = element_nth_root(&f5, f5.from_int(3), 25, &ExtensionOptions::default()).unwrap();
        assert_eq!(k.size(), 5);
        assert_eq!(k.pow(r, 25), f5.from_int(3));
    }

    #[test]
    fn extension_cap_is_enforced() {
        let f2 = FieldCtx::prime(2).unwrap();
        let k = gf4();
        let theta = k.step_generator(0);
        let opts = ExtensionOptions { seed: 0, cap_factor: 1 };
        assert_eq!(
            element_nth_root(&k, theta, 3, &opts),
            Err(Error::ExtensionBoundExceeded { cap: 2 })
        );
        let _ = f2;
    }

    #[test]
    fn discrete_log_round_trips() {
        let f3 = FieldCtx::prime(3).unwrap();
        let k = f3.extend(&find_irreducible(&f3, 6, 1)).unwrap();
        let g = k.primitive_element();
        let n = (k.size() - 1) as u128;
        for e in [0u128, 1, 7, 100, 727] {
            let h = k.pow(g, e);
            assert_eq!(discrete_log(&k, g, h, n), Some(e));
        }
    }
}
