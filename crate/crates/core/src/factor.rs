//! Irreducibility testing, irreducible search and factorization of
//! polynomials over a finite field: square-free decomposition, then
//! distinct-degree splitting, then randomized equal-degree splitting
//! (Cantor-Zassenhaus, with the trace map in characteristic 2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::ntheory;
use crate::poly::Poly;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors in
/// canonical order (degree, then coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self, ctx: &FieldCtx) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit), |acc, (g, m)| {
            acc.mul(&g.pow(*m as u64, ctx), ctx)
        })
    }

    /// Distinct roots in the field, ascending by encoding.
    pub fn roots(&self, ctx: &FieldCtx) -> Vec<FieldElement> {
        let mut r: Vec<FieldElement> = self
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| ctx.neg(g.coeff(0)))
            .collect();
        r.sort();
        r
    }
}

/// `x^(q^k) mod f` for `k = 0..=n`, computed by repeated `q`-th powering.
fn frobenius_powers(ctx: &FieldCtx, f: &Poly, n: usize) -> Vec<Poly> {
    let q = ctx.size() as u128;
    let mut out = Vec::with_capacity(n + 1);
    let mut h = Poly::x().rem(f, ctx).expect("nonzero modulus");
    out.push(h.clone());
    for _ in 0..n {
        h = h.pow_mod(q, f, ctx);
        out.push(h.clone());
    }
    out
}

/// Rabin's test: `f` of degree `d` is irreducible iff `x^(q^d) = x mod f`
/// and `gcd(x^(q^(d/r)) - x, f) = 1` for each prime `r | d`.
pub fn is_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let f = f.monic(ctx);
    let pows = frobenius_powers(ctx, &f, d);
    let x = Poly::x();
    if pows[d] != x.rem(&f, ctx).expect("nonzero") {
        return false;
    }
    ntheory::factorize(d as u128).iter().all(|&(r, _)| {
        let h = pows[d / r as usize].sub(&x, ctx);
        f.gcd(&h, ctx).is_one()
    })
}

/// A monic irreducible polynomial of the given degree, found by testing
/// seeded random monic candidates. Degree 0 is not meaningful and panics.
pub fn find_irreducible(ctx: &FieldCtx, degree: usize, seed: u64) -> Poly {
    assert!(degree >= 1, "irreducible polynomials have degree >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((degree as u64) << 32));
    loop {
        let mut coeffs: Vec<FieldElement> = (0..degree).map(|_| ctx.random(&mut rng)).collect();
        coeffs.push(FieldElement::ONE);
        let cand = Poly::new(coeffs);
        if degree > 1 && cand.coeff(0).is_zero() {
            continue;
        }
        if is_irreducible(ctx, &cand) {
            return cand;
        }
    }
}

/// Unique `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(ctx: &FieldCtx, f: &Poly) -> Poly {
    let p = ctx.characteristic() as usize;
    f.deflate(p).map_coeffs(|c| ctx.frobenius_inverse(c))
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// the `g_i` square-free, pairwise coprime and `f = prod g_i^i`.
pub fn square_free_decomposition(ctx: &FieldCtx, f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = ctx.characteristic() as u32;
    let mut c = f.gcd(&f.derivative(ctx), ctx);
    let mut w = f.div_exact(&c, ctx).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c, ctx);
        let fac = w.div_exact(&y, ctx).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, ctx).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root(ctx, &c);
        for (g, m) in square_free_decomposition(ctx, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into `(product of all irreducible
/// factors of degree d, d)` pairs.
pub fn distinct_degree_factorization(ctx: &FieldCtx, f: &Poly) -> Vec<(Poly, usize)> {
    let q = ctx.size() as u128;
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = Poly::x();
    let mut i = 1usize;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(q, &g, ctx);
        let d = g.gcd(&h.sub(&Poly::x(), ctx), ctx);
        if !d.is_one() {
            g = g.div_exact(&d, ctx).expect("gcd divides");
            h = h.rem(&g, ctx).expect("nonzero");
            out.push((d, i));
        }
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let d = g.degree().unwrap();
        out.push((g, d));
    }
    out
}

fn random_poly(ctx: &FieldCtx, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new((0..below).map(|_| ctx.random(rng)).collect())
}

/// Splits a monic product of distinct irreducibles, all of degree `d`.
pub fn equal_degree_factorization(ctx: &FieldCtx, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let q = ctx.size() as u128;
    let p = ctx.characteristic();
    loop {
        let a = random_poly(ctx, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace from GF(q^d) down to GF(2): sum of a^(2^i), i < m*d
            let steps = ctx.degree() * d;
            let mut s = a.clone();
            let mut t = a.clone();
            for _ in 1..steps {
                s = s.mul_mod(&s, f, ctx);
                t = t.add(&s, ctx);
            }
            t
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q - 1)/2)
            let mut norm = a.rem(f, ctx).expect("nonzero");
            let mut conj = norm.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, f, ctx);
                norm = norm.mul_mod(&conj, f, ctx);
            }
            norm.pow_mod((q - 1) / 2, f, ctx).sub(&Poly::one(), ctx)
        };
        let g = f.gcd(&b, ctx);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.div_exact(&g, ctx).expect("gcd divides");
            let mut out = equal_degree_factorization(ctx, &g, d, rng);
            out.extend(equal_degree_factorization(ctx, &other, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles. The result is unique, so
/// the internal randomness never shows in the output.
pub fn poly_factor(ctx: &FieldCtx, f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let monic = f.monic(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ monic.degree().unwrap() as u64);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in square_free_decomposition(ctx, &monic) {
        for (part, d) in distinct_degree_factorization(ctx, &sqf) {
            for g in equal_degree_factorization(ctx, &part, d, &mut rng) {
                match factors.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, m)) => *m += mult,
                    None => factors.push((g, mult)),
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Random monic polynomial of exact degree `n`.
pub fn random_monic<R: Rng>(ctx: &FieldCtx, n: usize, rng: &mut R) -> Poly {
    let mut c: Vec<FieldElement> = (0..n).map(|_| ctx.random(rng)).collect();
    c.push(FieldElement::ONE);
    Poly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }

    /// Trial division by every monic polynomial of degree <= bound.
    fn brute_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
        let n = f.degree().unwrap();
        let q = ctx.size();
        for d in 1..=n / 2 {
            let count = q.pow(d as u32);
            for code in 0..count {
                let mut c = Vec::new();
                let mut r = code;
                for _ in 0..d {
                    c.push(FieldElement::from_encoding(r % q));
                    r /= q;
                }
                c.push(FieldElement::ONE);
                if Poly::new(c).divides(f, ctx) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3] {
            let k = FieldCtx::prime(p).unwrap();
            for n in 1..=5usize {
                let count = p.pow(n as u32);
                for code in 0..count {
                    let mut c = Vec::new();
                    let mut r = code;
                    for _ in 0..n {
                        c.push(FieldElement::from_encoding(r % p));
                        r /= p;
                    }
                    c.push(FieldElement::ONE);
                    let f = Poly::new(c);
                    assert_eq!(is_irreducible(&k, &f), brute_irreducible(&k, &f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn unique_quadratic_over_f2() {
        let k = f2();
        for seed in 0..10 {
            assert_eq!(find_irreducible(&k, 2, seed), Poly::from_ints(&k, &[1, 1, 1]));
        }
        let lin = find_irreducible(&k, 1, 3);
        assert_eq!(lin.degree(), Some(1));
    }

    #[test]
    fn x2_plus_2_irreducible_over_f5() {
        let k = FieldCtx::prime(5).unwrap();
        let f = Poly::from_ints(&k, &[2, 0, 1]);
        assert!(is_irreducible(&k, &f));
        assert!((0..5).all(|v| !f.eval(k.from_int(v), &k).is_zero()));
    }

    #[test]
    fn difference_of_squares_over_f5() {
        let k = FieldCtx::prime(5).unwrap();
        let f = Poly::from_ints(&k, &[-1, 0, 1]);
        let fac = poly_factor(&k, &f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&k, &[1, 1]), 1), (Poly::from_ints(&k, &[4, 1]), 1)]
        );
        assert_eq!(fac.roots(&k), vec![k.from_int(1), k.from_int(4)]);
    }

    #[test]
    fn x3_plus_theta_irreducible_over_gf4() {
        let k = FieldCtx::from_tower(2, &[Poly::from_ints(&f2(), &[1, 1, 1]).coeffs().to_vec()]).unwrap();
        let theta = k.step_generator(0);
        let f = Poly::new(vec![theta, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
        let fac = poly_factor(&k, &f).unwrap();
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let k = FieldCtx::prime(3).unwrap();
        // (x+1)^4 (x^2+1)^3 (x) over F3
        let a = Poly::from_ints(&k, &[1, 1]).pow(4, &k);
        let b = Poly::from_ints(&k, &[1, 0, 1]).pow(3, &k);
        let f = a.mul(&b, &k).mul(&Poly::x(), &k).scale(k.from_int(2), &k);
        let fac = poly_factor(&k, &f).unwrap();
        assert_eq!(fac.expand(&k), f);
        assert_eq!(fac.unit, k.from_int(2));
        assert_eq!(
            fac.factors,
            vec![
                (Poly::x(), 1),
                (Poly::from_ints(&k, &[1, 1]), 4),
                (Poly::from_ints(&k, &[1, 0, 1]), 3)
            ]
        );
        assert_eq!(poly_factor(&k, &Poly::zero()), Err(Error::ZeroPolynomial));
    }
}
