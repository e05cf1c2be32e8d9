use super::FreeProdError;
use crate::gpa::{evaluate_tangle, loop_basis, tl_image, AlgebraSpec, Caps, GpaError, Loop, LoopVector};
use crate::numeric::SparseEchelon;
use crate::partitions::{enumerate, Partition, PartitionClass};
use crate::tangles::{reduced_pair, Tangle};
use std::collections::BTreeMap;

/// Largest degree for which the concrete free product is computed.
pub const CONCRETE_CAP: usize = 3;

/// Where the labels of inner disks come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelSource {
    /// Temperley–Lieb images.
    Tl,
    /// Every loop.
    Full,
}

/// `ξ ⊗ η ↦` the loop of `A ⊗ B` walking both at once; edge `(k, l)` of block `(i, j)`
/// has index `(k - 1) n_j + l`.
pub fn phi(a: &AlgebraSpec, b: &AlgebraSpec, x: &LoopVector, y: &LoopVector) -> Result<LoopVector, GpaError> {
    if x.degree != y.degree {
        return Err(GpaError::DegreeMismatch { expected: x.degree, found: y.degree });
    }
    x.validate(a)?;
    y.validate(b)?;
    let s = b.blocks.len();
    let mut out = LoopVector::zero(x.degree);
    for (l1, c1) in x.terms() {
        for (l2, c2) in y.terms() {
            let edges = l1
                .0
                .iter()
                .zip(&l2.0)
                .map(|(&(i, k), &(j, l))| ((i - 1) * s + j, (k - 1) * b.blocks[j - 1] as usize + l))
                .collect();
            out.add_term(Loop(edges), c1 * c2);
        }
    }
    Ok(out)
}

fn labels(spec: &AlgebraSpec, k: usize, source: LabelSource, caps: Caps) -> Result<Vec<LoopVector>, GpaError> {
    match source {
        LabelSource::Tl => tl_image(spec, k, caps),
        LabelSource::Full => Ok(loop_basis(spec, k, caps)?.into_iter().map(LoopVector::basis).collect()),
    }
}

// Images of a tangle on every combination of labels.
fn images(spec: &AlgebraSpec, t: &Tangle, source: LabelSource, caps: Caps) -> Result<Vec<LoopVector>, GpaError> {
    let per_disk: Vec<Vec<LoopVector>> =
        t.inner_degrees().into_iter().map(|k| labels(spec, k, source, caps)).collect::<Result<_, _>>()?;
    let mut combos: Vec<Vec<LoopVector>> = vec![Vec::new()];
    for options in &per_disk {
        combos = combos
            .into_iter()
            .flat_map(|c| options.iter().map(move |o| [c.clone(), vec![o.clone()]].concat()))
            .collect();
    }
    combos.iter().map(|inputs| evaluate_tangle(spec, t, 0, inputs)).collect()
}

/// `Φ(Z_{T_π}(x) ⊗ Z_{T_{kr'(π)}}(y))` over every reduced free pair of degree `n` and every
/// choice of labels.
pub fn reduced_pair_images(
    a: &AlgebraSpec,
    b: &AlgebraSpec,
    n: usize,
    source: LabelSource,
    caps: Caps,
) -> Result<Vec<LoopVector>, FreeProdError> {
    if n == 0 || n > CONCRETE_CAP {
        return Err(FreeProdError::CapExceeded(format!("concrete free product of degree {n}")));
    }
    let floor = Partition::pi0(2 * n);
    let mut out = Vec::new();
    for pi in enumerate(2 * n, PartitionClass::EvenNonCrossing).expect("small order") {
        if !floor.leq(&pi).expect("same order") {
            continue;
        }
        let (t, t2) = reduced_pair(&pi).map_err(GpaError::from)?;
        let xs = images(a, &t, source, caps)?;
        let ys = images(b, &t2, source, caps)?;
        for x in &xs {
            for y in &ys {
                out.push(phi(a, b, x, y)?);
            }
        }
    }
    Ok(out)
}

/// Dimension of the span of [`reduced_pair_images`] inside the graph planar algebra of
/// `A ⊗ B`. The trace form is positive definite there, so this is also its Gram rank.
pub fn concrete_span_rank(
    a: &AlgebraSpec,
    b: &AlgebraSpec,
    n: usize,
    source: LabelSource,
    caps: Caps,
) -> Result<usize, FreeProdError> {
    let vectors = reduced_pair_images(a, b, n, source, caps)?;
    let mut index: BTreeMap<Loop, usize> = BTreeMap::new();
    let mut span = SparseEchelon::new(a.tensor(b).field());
    for v in &vectors {
        let sparse = v
            .terms()
            .map(|(l, c)| {
                let len = index.len();
                (*index.entry(l.clone()).or_insert(len), c.clone())
            })
            .collect();
        span.insert(&sparse).map_err(GpaError::from)?;
    }
    Ok(span.rank())
}
