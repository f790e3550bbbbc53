//! Finite fields `GF(p^m)` presented as explicit towers of extensions.
//!
//! An element is stored as its canonical encoding: at tower level `l` with
//! step degree `d` over level `l - 1`, the element `c_0 + c_1 x + ... +
//! c_{d-1} x^{d-1}` encodes as `sum c_i * |F_{l-1}|^i`. Unrolled down to the
//! prime field this is the integer whose base-`p` digits are the flattened
//! coefficient tree, so a single-step field uses the usual `sum c_i p^i`.
//!
//! A consequence used throughout: a field that is a prefix of a longer tower
//! embeds into it with the *same* encodings, so embedding along a tower is
//! the identity map on `FieldElement` values.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ntheory;
use crate::poly::Poly;

/// Levels at or below this size get exp/log tables on first use.
const TABLE_LIMIT: u64 = 1 << 16;

/// Canonical encoding of a field element; meaningful only together with the
/// [`FieldCtx`] it was produced in (or any tower extending it).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_encoding(code: u64) -> Self {
        FieldElement(code)
    }

    pub const fn encoding(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn is_one(self) -> bool {
        self.0 == 1
    }
}

struct Tables {
    generator: u64,
    // exp has length 2(q-1) so products of logs need no reduction
    exp: Vec<u64>,
    log: Vec<u64>,
}

#[derive(Clone)]
struct Level {
    degree: usize,
    abs_degree: usize,
    size: u64,
    modulus: Vec<FieldElement>,
    tables: Arc<OnceLock<Option<Tables>>>,
}

struct Inner {
    p: u64,
    levels: Vec<Level>,
}

/// Shared description of a finite field tower `F_p -> F_{p^d1} -> ...`.
///
/// Cheap to clone; equality is structural (same prime, same moduli).
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.levels.len() == other.0.levels.len() && self.is_prefix_of(other))
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.describe())
    }
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        if !ntheory::is_prime(p as u128) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let base = Level {
            degree: 1,
            abs_degree: 1,
            size: p,
            modulus: Vec::new(),
            tables: Arc::new(OnceLock::new()),
        };
        Ok(FieldCtx(Arc::new(Inner { p, levels: vec![base] })))
    }

    /// Build a tower from successive monic moduli, each over the previous
    /// level. Every modulus is checked for irreducibility.
    pub fn from_tower(p: u64, tower: &[Vec<FieldElement>]) -> Result<Self> {
        let mut ctx = FieldCtx::prime(p)?;
        for (i, step) in tower.iter().enumerate() {
            let poly = Poly::new(step.clone());
            if poly.degree() < Some(1) || !poly.is_monic() {
                return Err(Error::InvalidField(format!(
                    "tower step {i} modulus must be monic of degree >= 1"
                )));
            }
            if step.iter().any(|c| c.0 >= ctx.size()) {
                return Err(Error::InvalidField(format!(
                    "tower step {i} has a coefficient outside the previous level"
                )));
            }
            if poly.degree() == Some(1) {
                return Err(Error::InvalidField(format!(
                    "tower step {i} has degree 1; omit trivial steps"
                )));
            }
            ctx = ctx.extend(&poly)?;
        }
        Ok(ctx)
    }

    /// Adjoin a root of `modulus`, a monic irreducible polynomial over the
    /// top level. A degree-1 modulus yields the same field back.
    pub fn extend(&self, modulus: &Poly) -> Result<Self> {
        let degree = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if degree == 0 || !modulus.is_monic() {
            return Err(Error::NotIrreducible);
        }
        if degree == 1 {
            return Ok(self.clone());
        }
        if !crate::factor::is_irreducible(self, modulus) {
            return Err(Error::NotIrreducible);
        }
        self.extend_unchecked(modulus)
    }

    pub(crate) fn extend_unchecked(&self, modulus: &Poly) -> Result<Self> {
        let degree = modulus.degree().expect("nonzero modulus");
        let size = (self.size() as u128)
            .checked_pow(degree as u32)
            .filter(|&s| s <= u64::MAX as u128)
            .ok_or_else(|| {
                Error::FieldTooLarge(format!(
                    "extension of degree {degree} over a field of size {} exceeds 2^64",
                    self.size()
                ))
            })?;
        let top = self.top();
        let mut levels = self.0.levels.clone();
        levels.push(Level {
            degree,
            abs_degree: top.abs_degree * degree,
            size: size as u64,
            modulus: modulus.coeffs().to_vec(),
            tables: Arc::new(OnceLock::new()),
        });
        Ok(FieldCtx(Arc::new(Inner { p: self.0.p, levels })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Number of elements `q = p^m`.
    pub fn size(&self) -> u64 {
        self.top().size
    }

    /// Absolute degree `m` over the prime field.
    pub fn degree(&self) -> usize {
        self.top().abs_degree
    }

    /// Number of extension steps above the prime field.
    pub fn depth(&self) -> usize {
        self.0.levels.len() - 1
    }

    /// Modulus of extension step `i` (0-based), over level `i`.
    pub fn step_modulus(&self, i: usize) -> Poly {
        Poly::new(self.0.levels[i + 1].modulus.clone())
    }

    pub fn step_degree(&self, i: usize) -> usize {
        self.0.levels[i + 1].degree
    }

    pub fn level_size(&self, level: usize) -> u64 {
        self.0.levels[level].size
    }

    fn top(&self) -> &Level {
        self.0.levels.last().expect("at least the prime level")
    }

    fn top_index(&self) -> usize {
        self.0.levels.len() - 1
    }

    /// True when `self`'s tower is a prefix of `other`'s, so `self` embeds
    /// into `other` with unchanged encodings.
    pub fn is_subfield_of(&self, other: &FieldCtx) -> bool {
        self.0.p == other.0.p && self.0.levels.len() <= other.0.levels.len() && self.is_prefix_of(other)
    }

    fn is_prefix_of(&self, other: &FieldCtx) -> bool {
        self.0
            .levels
            .iter()
            .zip(other.0.levels.iter())
            .all(|(a, b)| a.modulus == b.modulus)
    }

    /// The smaller of two compatible towers' common extension.
    pub fn join(&self, other: &FieldCtx) -> Result<FieldCtx> {
        if other.is_subfield_of(self) {
            Ok(self.clone())
        } else if self.is_subfield_of(other) {
            Ok(other.clone())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} and {} are not nested towers",
                self.describe(),
                other.describe()
            )))
        }
    }

    /// The tower truncated to its first `depth` steps.
    pub fn truncate(&self, depth: usize) -> FieldCtx {
        if depth >= self.depth() {
            return self.clone();
        }
        FieldCtx(Arc::new(Inner {
            p: self.0.p,
            levels: self.0.levels[..=depth].to_vec(),
        }))
    }

    /// Lowest tower level containing `x`.
    pub fn level_of(&self, x: FieldElement) -> usize {
        self.0
            .levels
            .iter()
            .position(|l| x.0 < l.size)
            .unwrap_or(self.top_index())
    }

    /// Checks that `x` is a valid encoding in this field.
    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.size()
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.size() {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidInput(format!(
                "encoding {code} out of range for a field of size {}",
                self.size()
            )))
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u64)
    }

    /// The generator adjoined at tower step `i` (level `i + 1`).
    pub fn step_generator(&self, i: usize) -> FieldElement {
        FieldElement(self.0.levels[i].size)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.size()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.size()))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(FieldElement)
    }

    // ---- arithmetic at the top level ----

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_at(self.top_index(), a.0, b.0))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.sub_at(self.top_index(), a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_at(self.top_index(), a.0))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_at(self.top_index(), a.0, b.0))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv_at(self.top_index(), a.0)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        FieldElement(self.pow_at(self.top_index(), a.0, e))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p as u128)
    }

    /// The unique `p`-th root, `x^(q/p)`.
    pub fn frobenius_inverse(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.degree() {
            r = self.frobenius(r);
        }
        r
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let l = self.top_index();
        if let Some(t) = self.tables(l) {
            return FieldElement(t.generator);
        }
        FieldElement(self.find_generator(l))
    }

    // ---- level arithmetic ----

    fn add_at(&self, l: usize, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if l == 0 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn neg_at(&self, l: usize, a: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if l == 0 {
            return (p - a % p) % p;
        }
        let mut a = a;
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn sub_at(&self, l: usize, a: u64, b: u64) -> u64 {
        self.add_at(l, a, self.neg_at(l, b))
    }

    fn mul_at(&self, l: usize, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if l == 0 {
            return ((a as u128 * b as u128) % self.0.p as u128) as u64;
        }
        if let Some(t) = self.tables(l) {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.mul_generic(l, a, b)
    }

    fn inv_at(&self, l: usize, a: u64) -> u64 {
        debug_assert!(a != 0);
        if l == 0 {
            let p = self.0.p as u128;
            return ntheory::inv_mod(a as u128, p).expect("nonzero in prime field") as u64;
        }
        let q1 = self.0.levels[l].size - 1;
        if let Some(t) = self.tables(l) {
            return t.exp[((q1 - t.log[a as usize]) % q1) as usize];
        }
        self.pow_at(l, a, (q1 - 1) as u128)
    }

    fn pow_at(&self, l: usize, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let q1 = (self.0.levels[l].size - 1) as u128;
        let e = e % q1;
        if l > 0 {
            if let Some(t) = self.tables(l) {
                let idx = (t.log[a as usize] as u128 * e) % q1;
                return t.exp[idx as usize];
            }
        }
        self.pow_generic(l, a, e)
    }

    fn pow_generic(&self, l: usize, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_at_no_table(l, acc, base);
            }
            base = self.mul_at_no_table(l, base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_at_no_table(&self, l: usize, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if l == 0 {
            return self.mul_at(0, a, b);
        }
        self.mul_generic(l, a, b)
    }

    /// Schoolbook multiplication over level `l - 1`, then reduction by the
    /// monic step modulus.
    fn mul_generic(&self, l: usize, a: u64, b: u64) -> u64 {
        let level = &self.0.levels[l];
        let sub = l - 1;
        let s = self.0.levels[sub].size;
        let d = level.degree;
        let split = |mut x: u64| {
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(x % s);
                x /= s;
            }
            v
        };
        let (ca, cb) = (split(a), split(b));
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let t = self.mul_at(sub, x, y);
                prod[i + j] = self.add_at(sub, prod[i + j], t);
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let m = level.modulus[j].0;
                if m != 0 {
                    let t = self.mul_at(sub, c, m);
                    prod[i - d + j] = self.sub_at(sub, prod[i - d + j], t);
                }
            }
            prod[i] = 0;
        }
        let mut out = 0u64;
        for &c in prod[..d].iter().rev() {
            out = out.wrapping_mul(s).wrapping_add(c);
        }
        out
    }

    fn tables(&self, l: usize) -> Option<&Tables> {
        if l == 0 {
            return None;
        }
        let level = &self.0.levels[l];
        level
            .tables
            .get_or_init(|| {
                if level.size > TABLE_LIMIT {
                    return None;
                }
                Some(self.build_tables(l))
            })
            .as_ref()
    }

    fn build_tables(&self, l: usize) -> Tables {
        let q = self.0.levels[l].size;
        let g = self.find_generator(l);
        let n = (q - 1) as usize;
        let mut exp = vec![0u64; 2 * n];
        let mut log = vec![0u64; q as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u64;
            x = self.mul_generic(l, x, g);
        }
        Tables { generator: g, exp, log }
    }

    fn find_generator(&self, l: usize) -> u64 {
        let q = self.0.levels[l].size;
        if q == 2 {
            return 1;
        }
        let q1 = (q - 1) as u128;
        let primes: Vec<u128> = ntheory::factorize(q1).into_iter().map(|(r, _)| r).collect();
        (2..q)
            .find(|&g| primes.iter().all(|&r| self.pow_generic(l, g, q1 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    // ---- presentation ----

    /// Short tower description such as `GF(2) -> x^2 + x + 1 -> x^3 + a`.
    pub fn describe(&self) -> String {
        let mut s = format!("GF({})", self.0.p);
        for i in 0..self.depth() {
            let below = self.truncate(i);
            s.push_str(&format!(
                " -[{}]-> GF({}^{})",
                below.format_poly(&self.step_modulus(i), "x"),
                self.0.p,
                self.0.levels[i + 1].abs_degree
            ));
        }
        s
    }

    /// Name of the generator adjoined at tower step `i`.
    pub fn generator_name(i: usize) -> String {
        let letters = "abcdefghijklmnopqrstuvwxyz";
        if i < letters.len() {
            letters[i..=i].to_string()
        } else {
            format!("g{i}")
        }
    }

    /// Polynomial notation, e.g. `(a + 1)*b^2 + b + 1`.
    pub fn format_element(&self, x: FieldElement) -> String {
        self.format_at(self.top_index(), x.0)
    }

    fn format_at(&self, l: usize, x: u64) -> String {
        if l == 0 || x < self.0.levels[l - 1].size {
            return if l == 0 {
                x.to_string()
            } else {
                self.format_at(l - 1, x)
            };
        }
        let s = self.0.levels[l - 1].size;
        let d = self.0.levels[l].degree;
        let var = Self::generator_name(l - 1);
        let mut terms = Vec::new();
        let mut rest = x;
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(rest % s);
            rest /= s;
        }
        for j in (0..d).rev() {
            let c = coeffs[j];
            if c == 0 {
                continue;
            }
            let cs = self.format_at(l - 1, c);
            let monomial = match j {
                0 => String::new(),
                1 => var.clone(),
                _ => format!("{var}^{j}"),
            };
            terms.push(if j == 0 {
                cs
            } else if c == 1 {
                monomial
            } else if cs.contains(' ') {
                format!("({cs})*{monomial}")
            } else {
                format!("{cs}*{monomial}")
            });
        }
        terms.join(" + ")
    }

    pub fn format_poly(&self, f: &Poly, var: &str) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (j, &c) in f.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.format_element(c);
            let monomial = match j {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{j}"),
            };
            terms.push(if j == 0 {
                cs
            } else if c.is_one() {
                monomial
            } else if cs.contains(' ') {
                format!("({cs})*{monomial}")
            } else {
                format!("{cs}*{monomial}")
            });
        }
        terms.join(" + ")
    }

    /// Coefficients of `x` over the level just below the top, as encodings.
    pub fn top_coefficients(&self, x: FieldElement) -> Vec<FieldElement> {
        let l = self.top_index();
        if l == 0 {
            return vec![x];
        }
        let s = self.0.levels[l - 1].size;
        let mut rest = x.0;
        (0..self.0.levels[l].degree)
            .map(|_| {
                let c = rest % s;
                rest /= s;
                FieldElement(c)
            })
            .collect()
    }

    /// Inverse of [`top_coefficients`](Self::top_coefficients).
    pub fn from_top_coefficients(&self, coeffs: &[FieldElement]) -> Result<FieldElement> {
        let l = self.top_index();
        if l == 0 {
            return match coeffs {
                [c] => self.element(c.0),
                _ => Err(Error::InvalidInput("prime-field element takes one coefficient".into())),
            };
        }
        let s = self.0.levels[l - 1].size;
        if coeffs.len() != self.0.levels[l].degree || coeffs.iter().any(|c| c.0 >= s) {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients below {s}",
                self.0.levels[l].degree
            )));
        }
        let mut out = 0u64;
        for c in coeffs.iter().rev() {
            out = out * s + c.0;
        }
        Ok(FieldElement(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> FieldCtx {
        FieldCtx::from_tower(2, &[vec![FieldElement(1), FieldElement(1), FieldElement(1)]]).unwrap()
    }

    fn gf64_tower() -> FieldCtx {
        // F2 -> x^2+x+1 -> x^3 + theta, theta encoded as 2
        FieldCtx::from_tower(
            2,
            &[
                vec![FieldElement(1), FieldElement(1), FieldElement(1)],
                vec![FieldElement(2), FieldElement(0), FieldElement(0), FieldElement(1)],
            ],
        )
        .unwrap()
    }

    /// Exhaustive GF(4) multiplication table written out by hand from
    /// theta^2 = theta + 1 (encodings: 0, 1, theta = 2, theta + 1 = 3).
    const GF4_MUL: [[u64; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

    #[test]
    fn gf4_table_and_inverse() {
        let f = gf4();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    f.mul(FieldElement(a), FieldElement(b)).0,
                    GF4_MUL[a as usize][b as usize]
                );
            }
        }
        let theta = f.step_generator(0);
        assert_eq!(f.mul(theta, theta), FieldElement(3));
        assert_eq!(f.inv(theta).unwrap(), FieldElement(3));
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_field_basics() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.add(FieldElement(4), FieldElement(1)), FieldElement::ZERO);
        assert_eq!(f5.sub(FieldElement(1), FieldElement(3)), FieldElement(3));
        assert_eq!(f5.inv(FieldElement(2)).unwrap(), FieldElement(3));
        assert!(FieldCtx::prime(6).is_err());
    }

    #[test]
    fn tower_generator_cubes_to_theta() {
        let f = gf64_tower();
        assert_eq!(f.size(), 64);
        assert_eq!(f.degree(), 6);
        let alpha = f.step_generator(1);
        let theta = f.step_generator(0);
        assert_eq!(f.pow(alpha, 3), theta);
        assert_eq!(f.format_element(alpha), "b");
        assert_eq!(
            f.format_element(f.add(f.mul(theta, f.mul(alpha, alpha)), FieldElement(1))),
            "a*b^2 + 1"
        );
    }

    #[test]
    fn table_and_generic_paths_agree() {
        // GF(3^5) = 243 elements uses tables; compare with generic multiply
        let f3 = FieldCtx::prime(3).unwrap();
        let m = crate::factor::find_irreducible(&f3, 5, 7);
        let f = f3.extend(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(a, b).0, f.mul_generic(1, a.0, b.0));
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn subfield_relations() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f4 = gf4();
        let f64 = gf64_tower();
        assert!(f2.is_subfield_of(&f4));
        assert!(f4.is_subfield_of(&f64));
        assert!(!f64.is_subfield_of(&f4));
        assert_eq!(f4.join(&f64).unwrap(), f64);
        assert_eq!(f64.truncate(1), f4);
        assert_eq!(f64.level_of(FieldElement(3)), 1);
        let f3 = FieldCtx::prime(3).unwrap();
        assert!(f3.join(&f2).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F2
        let err = FieldCtx::from_tower(2, &[vec![FieldElement(1), FieldElement(0), FieldElement(1)]]);
        assert_eq!(err.unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn frobenius_inverse_is_pth_root() {
        let f = gf64_tower();
        for x in f.elements() {
            assert_eq!(f.frobenius(f.frobenius_inverse(x)), x);
        }
    }
}
