use std::collections::BTreeMap;

use super::eval::{evaluate, evaluate_tangle, multiply, trace, Side};
use super::{AlgebraSpec, Caps, GpaError, Loop, LoopVector};
use crate::numeric::{nullspace, rank, Matrix, SparseEchelon, Surd};
use crate::partitions::{enumerate, PartitionClass};
use crate::tangles::{fatten, Tangle, TangleExpr};

/// `Tr(η* η)` for a single loop.
pub fn loop_norm(spec: &AlgebraSpec, walk: &Loop) -> Result<Surd, GpaError> {
    let v = LoopVector::basis(walk.clone());
    trace(spec, &multiply(spec, &v.adjoint(), &v)?, Side::Right)
}

/// `⟨x, y⟩ = Tr(y* x)`, evaluated through the multiplication and trace tangles.
pub fn inner_product(spec: &AlgebraSpec, x: &LoopVector, y: &LoopVector) -> Result<Surd, GpaError> {
    trace(spec, &multiply(spec, &y.adjoint(), x)?, Side::Right)
}

// Loops are orthogonal, so inner products only need the norm of each loop.
struct Norms<'a> {
    spec: &'a AlgebraSpec,
    cache: BTreeMap<Loop, Surd>,
}

impl<'a> Norms<'a> {
    fn new(spec: &'a AlgebraSpec) -> Self {
        Norms { spec, cache: BTreeMap::new() }
    }

    fn pair(&mut self, x: &LoopVector, y: &LoopVector) -> Result<Surd, GpaError> {
        let mut total = Surd::zero();
        for (l, a) in x.terms() {
            let b = y.coefficient(l);
            if b.is_zero() {
                continue;
            }
            if !self.cache.contains_key(l) {
                let n = loop_norm(self.spec, l)?;
                self.cache.insert(l.clone(), n);
            }
            total += &(&(a * &b) * &self.cache[l]);
        }
        Ok(total)
    }
}

/// `G_ij = ⟨v_i, v_j⟩`.
pub fn gram(spec: &AlgebraSpec, vectors: &[LoopVector]) -> Result<Matrix, GpaError> {
    if let Some(v) = vectors.iter().find(|v| v.degree != vectors[0].degree) {
        return Err(GpaError::DegreeMismatch { expected: vectors[0].degree, found: v.degree });
    }
    let mut norms = Norms::new(spec);
    let mut g = vec![vec![Surd::zero(); vectors.len()]; vectors.len()];
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let x = norms.pair(&vectors[i], &vectors[j])?;
            g[j][i] = x.clone();
            g[i][j] = x;
        }
    }
    Ok(g)
}

/// Rank of the Gram matrix over the coefficient field.
pub fn gram_rank(spec: &AlgebraSpec, vectors: &[LoopVector]) -> Result<usize, GpaError> {
    Ok(rank(&spec.field(), &gram(spec, vectors)?)?)
}

/// Every Temperley–Lieb diagram of degree `n`, one per non-crossing partition of `n`.
pub fn tl_diagrams(n: usize) -> Result<Vec<Tangle>, GpaError> {
    let parts = enumerate(n, PartitionClass::NonCrossing).map_err(|e| GpaError::CapExceeded(e.to_string()))?;
    parts.iter().map(|p| Ok(fatten(p, n)?)).collect()
}

/// Images of all Temperley–Lieb diagrams of degree `n`.
pub fn tl_image(spec: &AlgebraSpec, n: usize, caps: Caps) -> Result<Vec<LoopVector>, GpaError> {
    if n > caps.max_degree || spec.dimension() > caps.max_dimension {
        return Err(GpaError::CapExceeded(format!("Temperley–Lieb image of degree {n} with d = {}", spec.dimension())));
    }
    tl_diagrams(n)?.iter().map(|t| evaluate_tangle(spec, t, 0, &[])).collect()
}

struct Indexer {
    index: BTreeMap<Loop, usize>,
}

impl Indexer {
    fn sparse(&mut self, v: &LoopVector) -> BTreeMap<usize, Surd> {
        let mut out = BTreeMap::new();
        for (l, c) in v.terms() {
            let len = self.index.len();
            let i = *self.index.entry(l.clone()).or_insert(len);
            out.insert(i, c.clone());
        }
        out
    }
}

/// Orthogonal basis of the complement, inside the degree-`n` realized space, of every
/// concatenation of lower-degree realized elements. `realized[k - 1]` spans degree `k`.
pub fn boolean_subspace(spec: &AlgebraSpec, realized: &[Vec<LoopVector>], n: usize) -> Result<Vec<LoopVector>, GpaError> {
    if n == 0 || realized.len() < n {
        return Err(GpaError::DegreeMismatch { expected: n, found: realized.len() });
    }
    let field = spec.field();
    let mut indexer = Indexer { index: BTreeMap::new() };
    let mut span = SparseEchelon::new(field.clone());
    let mut basis = Vec::new();
    for v in &realized[n - 1] {
        if v.degree != n {
            return Err(GpaError::DegreeMismatch { expected: n, found: v.degree });
        }
        if span.insert(&indexer.sparse(v))? {
            basis.push(v.clone());
        }
    }
    let mut images = SparseEchelon::new(field.clone());
    let mut image_basis = Vec::new();
    for k in 1..n {
        let m = n - k;
        for x in &realized[k - 1] {
            for y in &realized[m - 1] {
                let w = evaluate(spec, &TangleExpr::M(k, m), &[x.clone(), y.clone()])?;
                let sparse = indexer.sparse(&w);
                if !span.reduce(&sparse).is_empty() {
                    return Err(GpaError::NotClosedUnderConcatenation(n));
                }
                if images.insert(&sparse)? {
                    image_basis.push(w);
                }
            }
        }
    }
    if image_basis.len() == basis.len() {
        return Ok(Vec::new());
    }
    let mut norms = Norms::new(spec);
    let complement: Vec<LoopVector> = if image_basis.is_empty() {
        basis.clone()
    } else {
        let mut a: Matrix = Vec::new();
        for w in &image_basis {
            a.push(basis.iter().map(|v| norms.pair(v, w)).collect::<Result<_, _>>()?);
        }
        nullspace(&field, &a, basis.len())?
            .into_iter()
            .map(|c| {
                c.iter().zip(&basis).fold(LoopVector::zero(n), |acc, (x, v)| acc.add(&v.scale(x)))
            })
            .collect()
    };
    // Gram–Schmidt.
    let mut orthogonal: Vec<(LoopVector, Surd)> = Vec::new();
    for x in complement {
        let mut u = x.clone();
        for (prev, norm) in &orthogonal {
            let c = field.div(&norms.pair(&x, prev)?, norm)?;
            u = u.sub(&prev.scale(&c));
        }
        let norm = norms.pair(&u, &u)?;
        orthogonal.push((u, norm));
    }
    Ok(orthogonal.into_iter().map(|(u, _)| u).collect())
}
