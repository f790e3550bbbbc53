//! Matrix `N`-th roots over extension fields and the Floquet transform
//! that turns a periodic system into a shift-invariant one.

use crate::canonical::{char_min_poly, jordan_form_seeded, similarity, JordanDecomposition};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{FFMatrix, Vector};
use crate::pfss::Pfss;
use crate::roots::{element_nth_root, ExtensionOptions};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOptions {
    pub extension: ExtensionOptions,
    /// Largest number of base-field candidates tried by the exhaustive
    /// search for otherwise undecided cases; 0 disables it.
    pub search_limit: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            extension: ExtensionOptions::default(),
            search_limit: 1 << 21,
        }
    }
}

/// Which branch produced a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMethod {
    /// Eigenvalue roots on a diagonalizable matrix.
    Diagonal,
    /// Per-block series lift, `gcd(N, p) = 1`.
    Hensel,
    /// Exhaustive search over the base field.
    Search,
}

impl RootMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RootMethod::Diagonal => "diagonal",
            RootMethod::Hensel => "hensel",
            RootMethod::Search => "search",
        }
    }
}

/// Evidence that no `N`-th root exists in any extension: a nonderogatory
/// matrix with a Jordan block of size at least 2 and `p | N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoRootCertificate {
    pub characteristic: u64,
    pub n: u64,
    pub minpoly_equals_charpoly: bool,
    pub p_divides_n: bool,
    pub max_block: usize,
}

impl NoRootCertificate {
    /// Recompute every claim from `phi`.
    pub fn verify(&self, phi: &FFMatrix) -> Result<bool> {
        let (cp, mp) = char_min_poly(phi)?;
        let jd = jordan_form_seeded(phi, 0)?;
        Ok(self.minpoly_equals_charpoly
            && self.p_divides_n
            && self.max_block >= 2
            && cp == mp
            && self.n.is_multiple_of(phi.ctx().characteristic())
            && self.characteristic == phi.ctx().characteristic()
            && jd.max_block() == self.max_block)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootResult {
    Root { root: FFMatrix, method: RootMethod },
    NoRoot { certificate: NoRootCertificate },
    Undetermined { reason: String },
}

impl RootResult {
    pub fn status(&self) -> &'static str {
        match self {
            RootResult::Root { .. } => "root",
            RootResult::NoRoot { .. } => "no_root",
            RootResult::Undetermined { .. } => "undetermined",
        }
    }

    pub fn root(&self) -> Option<&FFMatrix> {
        match self {
            RootResult::Root { root, .. } => Some(root),
            _ => None,
        }
    }
}

/// Coefficients of `c(t)^e mod t^len`.
fn series_pow(ctx: &FieldCtx, c: &[FieldElement], mut e: u64, len: usize) -> Vec<FieldElement> {
    let mul = |a: &[FieldElement], b: &[FieldElement]| {
        let mut out = vec![FieldElement::ZERO; len];
        for (i, &x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(len - i) {
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
            }
        }
        out
    };
    let mut base = c.to_vec();
    base.resize(len, FieldElement::ZERO);
    let mut acc = vec![FieldElement::ZERO; len];
    acc[0] = FieldElement::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// `X(t)` with `X(0) = 1` and `X^N = 1 + u t` modulo `t^len`, solved one
/// coefficient at a time; needs `N` invertible in the field.
fn unipotent_series_root(ctx: &FieldCtx, u: FieldElement, n: u64, len: usize) -> Result<Vec<FieldElement>> {
    let n_inv = ctx.inv(ctx.from_int((n % ctx.characteristic()) as i64))?;
    let mut c = vec![FieldElement::ZERO; len];
    c[0] = FieldElement::ONE;
    for k in 1..len {
        let target = if k == 1 { u } else { FieldElement::ZERO };
        let rest = series_pow(ctx, &c[..k], n, k + 1)[k];
        c[k] = ctx.mul(ctx.sub(target, rest), n_inv);
    }
    Ok(c)
}

fn root_from_jordan(jd: &JordanDecomposition, n: u64, hensel: bool, opts: &ExtensionOptions) -> Result<FFMatrix> {
    let mut ctx = jd.ctx.clone();
    let mut mus = Vec::with_capacity(jd.blocks.len());
    for b in &jd.blocks {
        let (mu, k) = element_nth_root(&ctx, b.eigenvalue, n, opts)?;
        ctx = k;
        mus.push(mu);
    }
    let dim: usize = jd.blocks.iter().map(|b| b.size).sum();
    let mut r = FFMatrix::zeros(&ctx, dim, dim);
    let mut off = 0;
    for (b, &mu) in jd.blocks.iter().zip(&mus) {
        let coeffs = if hensel && b.size > 1 {
            let u = ctx.inv(b.eigenvalue)?;
            unipotent_series_root(&ctx, u, n, b.size)?
        } else {
            vec![FieldElement::ONE]
        };
        for i in 0..b.size {
            for (d, &c) in coeffs.iter().enumerate() {
                if i + d < b.size {
                    r.set(off + i, off + i + d, ctx.mul(mu, c));
                }
            }
        }
        off += b.size;
    }
    jd.s_inv.embed(&ctx)?.mul(&r)?.mul(&jd.s.embed(&ctx)?)
}

/// All matrices over the prime-level-or-better field of `phi`'s entries,
/// checked one by one.
fn search_root(phi: &FFMatrix, n: u64, limit: u64) -> Option<FFMatrix> {
    let base = phi.descend();
    let ctx = base.ctx().clone();
    let q = ctx.size() as u128;
    let cells = (base.rows() * base.cols()) as u32;
    let total = crate::ntheory::checked_pow(q, cells)?;
    if total > limit as u128 {
        return None;
    }
    for code in 0..total {
        let mut c = code;
        let data: Vec<FieldElement> = (0..cells)
            .map(|_| {
                let v = FieldElement::from_encoding((c % q) as u64);
                c /= q;
                v
            })
            .collect();
        let x = FFMatrix::new(&ctx, base.rows(), base.cols(), data).ok()?;
        if x.pow(n as u128).ok()? == base {
            return Some(x);
        }
    }
    None
}

/// Decide whether `phi` has an `N`-th root over some extension and build
/// one when the decision procedure can.
///
/// ```
/// use pfss::{FieldCtx, FFMatrix, floquet::{matrix_nth_root, RootOptions, RootResult}};
/// let f2 = FieldCtx::prime(2).unwrap();
/// let phi = FFMatrix::from_ints(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
/// let r = matrix_nth_root(&phi, 2, &RootOptions::default()).unwrap();
/// assert!(matches!(r, RootResult::NoRoot { .. }));
/// ```
pub fn matrix_nth_root(phi: &FFMatrix, n: u64, opts: &RootOptions) -> Result<RootResult> {
    if !phi.is_square() {
        return Err(Error::DimensionMismatch("root of a non-square matrix".into()));
    }
    if !phi.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if n == 0 {
        return Err(Error::InvalidInput("root index must be positive".into()));
    }
    if n == 1 {
        return Ok(RootResult::Root {
            root: phi.clone(),
            method: RootMethod::Diagonal,
        });
    }
    let p = phi.ctx().characteristic();
    let jd = jordan_form_seeded(phi, opts.extension.seed)?;
    let branch = if jd.is_diagonal() {
        Some(RootMethod::Diagonal)
    } else if !n.is_multiple_of(p) {
        Some(RootMethod::Hensel)
    } else {
        None
    };
    if let Some(method) = branch {
        let root = root_from_jordan(&jd, n, method == RootMethod::Hensel, &opts.extension)?;
        let root = root.descend_over(phi.ctx());
        if root.pow(n as u128)? != phi.embed(root.ctx())? {
            return Err(Error::VerificationFailed("computed root fails X^N = Φ".into()));
        }
        return Ok(RootResult::Root { root, method });
    }
    let (cp, mp) = char_min_poly(phi)?;
    if cp == mp && jd.max_block() >= 2 {
        return Ok(RootResult::NoRoot {
            certificate: NoRootCertificate {
                characteristic: p,
                n,
                minpoly_equals_charpoly: true,
                p_divides_n: true,
                max_block: jd.max_block(),
            },
        });
    }
    if opts.search_limit > 0 && phi.rows() <= 3 {
        if let Some(root) = search_root(phi, n, opts.search_limit) {
            let root = root.embed(phi.ctx())?;
            return Ok(RootResult::Root {
                root,
                method: RootMethod::Search,
            });
        }
    }
    Ok(RootResult::Undetermined {
        reason: format!(
            "p = {p} divides N = {n} and the matrix is derogatory with a Jordan block of size {}",
            jd.max_block()
        ),
    })
}

/// Floquet data: `Ã`, and `P(0), ..., P(N-1)` with `P(0) = I` and
/// `P(k+1) A(k) P(k)^{-1} = Ã`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloquetData {
    pub ctx: FieldCtx,
    pub a_tilde: FFMatrix,
    pub p: Vec<FFMatrix>,
}

impl FloquetData {
    /// The matrix of the equivalent shift-invariant system.
    pub fn equivalent_lfss(&self) -> &FFMatrix {
        &self.a_tilde
    }

    /// `x̃(k) = P(k mod N) x(k)`.
    pub fn transform_state(&self, k: u128, x: &[FieldElement]) -> Vector {
        self.p[(k % self.p.len() as u128) as usize].mul_vec(x)
    }

    /// `x(0) = P(0)^{-1} x̃(0)`.
    pub fn initial_state(&self, xt: &[FieldElement]) -> Result<Vector> {
        if self.p[0].is_identity() {
            return Ok(xt.to_vec());
        }
        Ok(self.p[0].invert()?.mul_vec(xt))
    }
}

/// Build `P(k)` from a root `Ã` of the monodromy by
/// `P(i) = Ã P(i-1) A(i-1)^{-1}` with `P(0) = I`, and check closure and
/// conjugation.
pub fn floquet_transform(sys: &Pfss, a_tilde: &FFMatrix) -> Result<FloquetData> {
    let ctx = sys.ctx().join(a_tilde.ctx())?;
    floquet_transform_from(sys, a_tilde, &FFMatrix::identity(&ctx, sys.dim()))
}

/// As [`floquet_transform`] with a given invertible `P(0)`; then `Ã^N`
/// must equal `P(0) Φ P(0)^{-1}`.
pub fn floquet_transform_from(sys: &Pfss, a_tilde: &FFMatrix, p0: &FFMatrix) -> Result<FloquetData> {
    let ctx = sys.ctx().join(a_tilde.ctx())?.join(p0.ctx())?;
    let sys = sys.extend(&ctx)?;
    let at = a_tilde.embed(&ctx)?;
    let p0 = p0.embed(&ctx)?;
    let nn = sys.period();
    let p0_inv = p0.invert()?;
    if at.pow(nn as u128)? != p0.mul(&sys.monodromy())?.mul(&p0_inv)? {
        return Err(Error::RootMismatch);
    }
    let inverses = sys
        .matrices()
        .iter()
        .enumerate()
        .map(|(k, m)| m.invert().map_err(|_| Error::SingularSystem(k)))
        .collect::<Result<Vec<_>>>()?;
    let mut p = vec![p0];
    for i in 1..=nn {
        let next = at.mul(&p[i - 1])?.mul(&inverses[i - 1])?;
        p.push(next);
    }
    if p[nn] != p[0] {
        return Err(Error::RootMismatch);
    }
    p.truncate(nn);
    for k in 0..nn {
        let lhs = p[(k + 1) % nn].mul(&sys.matrices()[k])?.mul(&p[k].invert()?)?;
        if lhs != at {
            return Err(Error::VerificationFailed(format!(
                "conjugation identity fails at k = {k}"
            )));
        }
    }
    Ok(FloquetData { ctx, a_tilde: at, p })
}

/// Accept any `Ã` whose `N`-th power is similar to the monodromy, choosing
/// `P(0)` as the similarity; `P(0) = I` when `Ã^N = Φ`.
pub fn floquet_from_witness(sys: &Pfss, a_tilde: &FFMatrix, seed: u64) -> Result<FloquetData> {
    let ctx = sys.ctx().join(a_tilde.ctx())?;
    let phi = sys.monodromy().embed(&ctx)?;
    let power = a_tilde.embed(&ctx)?.pow(sys.period() as u128)?;
    if power == phi {
        return floquet_transform(sys, a_tilde);
    }
    match similarity(&phi, &power, seed)? {
        Some(s) => floquet_transform_from(sys, a_tilde, &s),
        None => Err(Error::RootMismatch),
    }
}

/// Root of the monodromy followed by the transform, when a root is found.
pub fn floquet(sys: &Pfss, opts: &RootOptions) -> Result<(RootResult, Option<FloquetData>)> {
    if let Some(k) = sys.first_singular() {
        return Err(Error::SingularSystem(k));
    }
    let rr = matrix_nth_root(&sys.monodromy(), sys.period() as u64, opts)?;
    let fd = match rr.root() {
        Some(root) => Some(floquet_transform(sys, root)?),
        None => None,
    };
    Ok((rr, fd))
}

/// Rank condition of the real-field Floquet existence theorem: for each
/// window length `i = 1..n`, `rank(A(j+i-1) ... A(j))` does not depend on
/// the phase `j`.
pub fn van_dooren_condition(sys: &Pfss) -> bool {
    let nn = sys.period() as u64;
    (1..=sys.dim() as u64).all(|i| {
        let ranks: Vec<usize> = (0..nn)
            .map(|j| sys.transition(j + i, j).expect("ordered range").rank())
            .collect();
        ranks.windows(2).all(|w| w[0] == w[1])
    })
}

/// The system over a larger field of the same tower.
pub fn extend_system(sys: &Pfss, ctx: &FieldCtx) -> Result<Pfss> {
    sys.extend(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::find_irreducible;

    #[test]
    fn series_root_of_one_plus_t() {
        let f5 = FieldCtx::prime(5).unwrap();
        let c = unipotent_series_root(&f5, FieldElement::ONE, 3, 4).unwrap();
        let cube = series_pow(&f5, &c, 3, 4);
        assert_eq!(
            cube,
            vec![
                FieldElement::ONE,
                FieldElement::ONE,
                FieldElement::ZERO,
                FieldElement::ZERO
            ]
        );
    }

    #[test]
    fn hensel_branch_on_large_unipotent_block() {
        // block size 4 > p = 3, N = 2
        let f3 = FieldCtx::prime(3).unwrap();
        let mut rows = vec![vec![0i64; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
            if i + 1 < 4 {
                row[i + 1] = 1;
            }
        }
        let phi = FFMatrix::from_ints(&f3, &rows).unwrap();
        match matrix_nth_root(&phi, 2, &RootOptions::default()).unwrap() {
            RootResult::Root { root, method } => {
                assert_eq!(method, RootMethod::Hensel);
                assert_eq!(root.pow(2).unwrap(), phi.embed(root.ctx()).unwrap());
            }
            other => panic!("expected a root, got {other:?}"),
        }
    }

    #[test]
    fn derogatory_unipotent_is_searched() {
        // J2(1) + J1(1) in characteristic 2, N = 2: derogatory, p | N
        let f2 = FieldCtx::prime(2).unwrap();
        let phi = FFMatrix::from_ints(&f2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = matrix_nth_root(&phi, 2, &RootOptions::default()).unwrap();
        // [[1,0,1],[0,1,0],[0,1,1]] squares to [[1,1,0],[0,1,0],[0,0,1]] up to similarity;
        // whatever the search finds must satisfy the defining equation
        match r {
            RootResult::Root { root, method } => {
                assert_eq!(method, RootMethod::Search);
                assert_eq!(root.pow(2).unwrap(), phi);
            }
            RootResult::Undetermined { .. } => {}
            RootResult::NoRoot { .. } => panic!("derogatory input must not get a certificate"),
        }
    }

    #[test]
    fn identity_roots_to_identity() {
        let f5 = FieldCtx::prime(5).unwrap();
        let id = FFMatrix::identity(&f5, 3);
        let r = matrix_nth_root(&id, 5, &RootOptions::default()).unwrap();
        assert!(r.root().unwrap().is_identity());
        let f3 = FieldCtx::prime(3).unwrap();
        let k = f3.extend(&find_irreducible(&f3, 2, 0)).unwrap();
        let r = matrix_nth_root(&FFMatrix::identity(&k, 2), 4, &RootOptions::default()).unwrap();
        assert!(r.root().unwrap().is_identity());
    }
}
