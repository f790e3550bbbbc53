//! Characteristic and minimal polynomials, invariant factors and Jordan
//! forms of square matrices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::{find_irreducible, poly_factor};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{span_rank, FFMatrix, Vector};
use crate::ntheory::lcm;
use crate::poly::Poly;

fn require_square(m: &FFMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

/// Upper Hessenberg matrix similar to `m`.
fn hessenberg(m: &FFMatrix) -> FFMatrix {
    let ctx = m.ctx().clone();
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(i0) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
            continue;
        };
        if i0 != j + 1 {
            for c in 0..n {
                let (a, b) = (h.get(i0, c), h.get(j + 1, c));
                h.set(i0, c, b);
                h.set(j + 1, c, a);
            }
            for r in 0..n {
                let (a, b) = (h.get(r, i0), h.get(r, j + 1));
                h.set(r, i0, b);
                h.set(r, j + 1, a);
            }
        }
        let pivot_inv = ctx.inv(h.get(j + 1, j)).expect("nonzero pivot");
        for i in j + 2..n {
            let u = ctx.mul(h.get(i, j), pivot_inv);
            if u.is_zero() {
                continue;
            }
            // row_i -= u * row_{j+1}, then col_{j+1} += u * col_i
            for c in 0..n {
                let v = ctx.sub(h.get(i, c), ctx.mul(u, h.get(j + 1, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = ctx.add(h.get(r, j + 1), ctx.mul(u, h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    h
}

/// Characteristic polynomial `det(xI - M)`, monic of degree `n`.
pub fn charpoly(m: &FFMatrix) -> Result<Poly> {
    require_square(m)?;
    let ctx = m.ctx();
    let h = hessenberg(m);
    let n = h.rows();
    // p[k] is the charpoly of the leading k x k block
    let mut p = vec![Poly::one()];
    for k in 1..=n {
        let km = k - 1;
        let mut next = Poly::linear(ctx, h.get(km, km)).mul(&p[km], ctx);
        let mut t = FieldElement::ONE;
        for i in (1..k).rev() {
            let im = i - 1;
            t = ctx.mul(t, h.get(im + 1, im));
            let c = ctx.mul(t, h.get(im, km));
            next = next.sub(&p[im].scale(c, ctx), ctx);
        }
        p.push(next);
    }
    Ok(p.pop().expect("n >= 1"))
}

/// Monic generator of `{f : f(M) v = 0}`.
pub fn vector_annihilator(m: &FFMatrix, v: &[FieldElement]) -> Result<Poly> {
    require_square(m)?;
    let ctx = m.ctx();
    let mut krylov: Vec<Vector> = vec![v.to_vec()];
    if crate::matrix::is_zero_vec(v) {
        return Ok(Poly::one());
    }
    loop {
        let next = m.mul_vec(krylov.last().expect("nonempty"));
        let mut with_next = krylov.clone();
        with_next.push(next.clone());
        if span_rank(ctx, &with_next) == krylov.len() {
            let basis = FFMatrix::from_columns(ctx, &krylov)?;
            let c = basis.solve(&next).expect("dependent vector lies in the span");
            let mut coeffs: Vec<FieldElement> = c.iter().map(|&x| ctx.neg(x)).collect();
            coeffs.push(FieldElement::ONE);
            return Ok(Poly::new(coeffs));
        }
        krylov.push(next);
    }
}

/// Minimal polynomial, as the lcm of the annihilators of the unit vectors.
pub fn minpoly(m: &FFMatrix) -> Result<Poly> {
    require_square(m)?;
    let ctx = m.ctx();
    let n = m.rows();
    let mut acc = Poly::one();
    for i in 0..n {
        let mut e = vec![FieldElement::ZERO; n];
        e[i] = FieldElement::ONE;
        acc = acc.lcm(&vector_annihilator(m, &e)?, ctx);
    }
    Ok(acc)
}

/// `(charpoly, minpoly)`.
pub fn char_min_poly(m: &FFMatrix) -> Result<(Poly, Poly)> {
    Ok((charpoly(m)?, minpoly(m)?))
}

/// `f(M)` by Horner's rule.
pub fn eval_poly_at_matrix(f: &Poly, m: &FFMatrix) -> Result<FFMatrix> {
    require_square(m)?;
    let ctx = m.ctx();
    let id = FFMatrix::identity(ctx, m.rows());
    let mut acc = FFMatrix::zeros(ctx, m.rows(), m.cols());
    for &c in f.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&id.scale(c))?;
    }
    Ok(acc)
}

/// Non-constant invariant factors of `M`: the monic diagonal entries of
/// the Smith form of `xI - M`, each dividing the next.
pub fn invariant_factors(m: &FFMatrix) -> Result<Vec<Poly>> {
    require_square(m)?;
    let ctx = m.ctx();
    let n = m.rows();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = ctx.neg(m.get(i, j));
                    if i == j {
                        Poly::new(vec![c, FieldElement::ONE])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect();

    for k in 0..n {
        loop {
            // pivot of least degree in the trailing block
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            let Some((pi, pj)) = pivot else { break };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let piv = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..n {
                let (q, r) = a[i][k].divrem(&piv, ctx)?;
                for j in k..n {
                    let t = a[k][j].mul(&q, ctx);
                    a[i][j] = a[i][j].sub(&t, ctx);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                let (q, r) = a[k][j].divrem(&piv, ctx)?;
                for row in a.iter_mut().skip(k) {
                    let t = row[k].mul(&q, ctx);
                    row[j] = row[j].sub(&t, ctx);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must also divide the rest of the block
            let bad = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].rem(&piv, ctx).map(|r| r.is_zero()).unwrap_or(true));
            match bad {
                Some((i, _)) => {
                    for j in k..n {
                        let t = a[i][j].clone();
                        a[k][j] = a[k][j].add(&t, ctx);
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n)
        .map(|i| a[i][i].monic(ctx))
        .filter(|f| f.degree().is_some_and(|d| d > 0))
        .collect())
}

/// Prime-power factors `f^c` of the invariant factors, as `(f, c)` pairs,
/// one entry per occurrence.
pub fn elementary_divisors(m: &FFMatrix) -> Result<Vec<(Poly, u32)>> {
    let ctx = m.ctx();
    let mut out = Vec::new();
    for f in invariant_factors(m)? {
        out.extend(poly_factor(ctx, &f)?.factors);
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: FieldElement,
    pub size: usize,
}

/// `S M S^{-1} = J` over the splitting field `ctx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub ctx: FieldCtx,
    pub blocks: Vec<JordanBlock>,
    pub s: FFMatrix,
    pub s_inv: FFMatrix,
}

impl JordanDecomposition {
    /// The block-diagonal Jordan matrix.
    pub fn j(&self) -> FFMatrix {
        let n: usize = self.blocks.iter().map(|b| b.size).sum();
        let mut j = FFMatrix::zeros(&self.ctx, n, n);
        let mut off = 0;
        for b in &self.blocks {
            for i in 0..b.size {
                j.set(off + i, off + i, b.eigenvalue);
                if i + 1 < b.size {
                    j.set(off + i, off + i + 1, FieldElement::ONE);
                }
            }
            off += b.size;
        }
        j
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(|b| b.size).max().unwrap_or(0)
    }

    /// `S^{-1} J S`, which should equal the input matrix.
    pub fn reassemble(&self) -> Result<FFMatrix> {
        self.s_inv.mul(&self.j())?.mul(&self.s)
    }
}

/// Smallest extension of `ctx` over which `f` splits into linear factors.
pub fn splitting_field(ctx: &FieldCtx, f: &Poly, seed: u64) -> Result<FieldCtx> {
    let fac = poly_factor(ctx, f)?;
    let degree = fac
        .factors
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(1) as u128)
        .fold(1u128, lcm) as usize;
    if degree == 1 {
        return Ok(ctx.clone());
    }
    let modulus = fac
        .factors
        .iter()
        .map(|(g, _)| g)
        .find(|g| g.degree() == Some(degree))
        .cloned()
        .unwrap_or_else(|| find_irreducible(ctx, degree, seed));
    ctx.extend_unchecked(&modulus)
}

/// Jordan form over the splitting field of the characteristic polynomial.
/// Blocks are ordered by eigenvalue encoding, then by decreasing size.
pub fn jordan_form(m: &FFMatrix) -> Result<JordanDecomposition> {
    jordan_form_seeded(m, 0)
}

pub fn jordan_form_seeded(m: &FFMatrix, seed: u64) -> Result<JordanDecomposition> {
    require_square(m)?;
    let n = m.rows();
    let cp = charpoly(m)?;
    let k = splitting_field(m.ctx(), &cp, seed)?;
    let mk = m.embed(&k)?;
    let mut eig: Vec<(FieldElement, u32)> = poly_factor(&k, &cp)?
        .factors
        .iter()
        .map(|(g, e)| (k.neg(g.coeff(0)), *e))
        .collect();
    eig.sort();

    let id = FFMatrix::identity(&k, n);
    let mut blocks = Vec::new();
    let mut columns: Vec<Vector> = Vec::new();
    for &(lambda, mult) in &eig {
        let b = mk.sub(&id.scale(lambda))?;
        // kernels of B^k until they stabilise at the generalized eigenspace
        let mut kernels: Vec<Vec<Vector>> = vec![Vec::new()];
        let mut bk = id.clone();
        while kernels.last().map_or(0, |ker| ker.len()) < mult as usize {
            bk = bk.mul(&b)?;
            kernels.push(bk.kernel());
        }
        let top = kernels.len() - 1;
        // chains from the longest down
        let mut inherited: Vec<Vector> = Vec::new();
        let mut chains: Vec<(usize, Vector)> = Vec::new();
        for s in (1..=top).rev() {
            let mut span: Vec<Vector> = kernels[s - 1].clone();
            span.extend(inherited.iter().cloned());
            let mut rank = span_rank(&k, &span);
            for w in &kernels[s] {
                span.push(w.clone());
                let r = span_rank(&k, &span);
                if r > rank {
                    rank = r;
                    chains.push((s, w.clone()));
                    inherited.push(w.clone());
                } else {
                    span.pop();
                }
            }
            inherited = inherited.iter().map(|v| b.mul_vec(v)).collect();
        }
        chains.sort_by(|a, b| b.0.cmp(&a.0));
        for (s, w) in chains {
            let mut chain = vec![w];
            for _ in 1..s {
                let next = b.mul_vec(chain.last().expect("nonempty"));
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            blocks.push(JordanBlock {
                eigenvalue: lambda,
                size: s,
            });
        }
    }
    let t = FFMatrix::from_columns(&k, &columns)?;
    let s = t.invert()?;
    Ok(JordanDecomposition {
        ctx: k,
        blocks,
        s,
        s_inv: t,
    })
}

/// An invertible `S` with `S a S^{-1} = b`, or `None` when the matrices
/// are not similar. Candidates are seeded random elements of the solution
/// space of `S a = b S`.
pub fn similarity(a: &FFMatrix, b: &FFMatrix, seed: u64) -> Result<Option<FFMatrix>> {
    require_square(a)?;
    require_square(b)?;
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    let ctx = a.ctx().join(b.ctx())?;
    let (a, b) = (a.embed(&ctx)?, b.embed(&ctx)?);
    if invariant_factors(&a)? != invariant_factors(&b)? {
        return Ok(None);
    }
    // unknown s_ij sits at column i * n + j
    let mut eqs = FFMatrix::zeros(&ctx, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let c = eqs.get(row, i * n + k);
                eqs.set(row, i * n + k, ctx.add(c, a.get(k, j)));
                let c = eqs.get(row, k * n + j);
                eqs.set(row, k * n + j, ctx.sub(c, b.get(i, k)));
            }
        }
    }
    let basis = eqs.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let mut data = vec![FieldElement::ZERO; n * n];
        for v in &basis {
            let c = ctx.random(&mut rng);
            for (d, &x) in data.iter_mut().zip(v) {
                *d = ctx.add(*d, ctx.mul(c, x));
            }
        }
        let s = FFMatrix::new(&ctx, n, n, data)?;
        if s.is_invertible() {
            return Ok(Some(s));
        }
    }
    Err(Error::VerificationFailed(
        "similar matrices but no invertible intertwiner found".into(),
    ))
}
