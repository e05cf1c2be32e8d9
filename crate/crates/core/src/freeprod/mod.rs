//! Free and tensor products of planar algebras: dimension profiles, the Boolean
//! decomposition of a free product, basis labels, and a concrete realization of the free
//! product inside the graph planar algebra of a tensor product.

mod concrete;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gpa::GpaError;
use crate::moments::{
    cumulants_from_moments, free_mult_conv, kreweras_convolution, multiplicative_extension, CumulantKind,
    MomentProfile, MomentsError,
};
use crate::numeric::Rational;
use crate::partitions::{enumerate, kreweras, Partition, PartitionClass};

pub use concrete::{concrete_span_rank, phi, reduced_pair_images, LabelSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeProdError {
    #[error("Boolean cumulant b({n}) = {value} is not a nonnegative integer")]
    NegativeBooleanCumulant { n: usize, value: String },
    #[error("{0} exceeds the configured cap")]
    CapExceeded(String),
    #[error(transparent)]
    Moments(#[from] MomentsError),
    #[error(transparent)]
    Gpa(#[from] GpaError),
}

/// The sequence `dim P_n` of a planar algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub moments: MomentProfile,
    boolean: Vec<Rational>,
}

impl DimensionProfile {
    /// Rejects sequences whose Boolean cumulants are not nonnegative integers.
    pub fn new(moments: MomentProfile) -> Result<Self, FreeProdError> {
        let boolean = cumulants_from_moments(&moments, CumulantKind::Boolean).values;
        for (i, b) in boolean.iter().enumerate() {
            if !b.is_integer() || *b < Rational::from_integer(0.into()) {
                return Err(FreeProdError::NegativeBooleanCumulant { n: i + 1, value: b.to_string() });
            }
        }
        Ok(DimensionProfile { moments, boolean })
    }

    /// Temperley–Lieb–Jones: Catalan numbers.
    pub fn tlj(n: usize) -> Self {
        DimensionProfile::new(MomentProfile::catalan(n)).expect("Catalan numbers")
    }

    /// The full graph planar algebra of a `d`-dimensional algebra: `d^n`.
    pub fn point_mass(d: i64, n: usize) -> Self {
        DimensionProfile::new(MomentProfile::point_mass(d, n)).expect("powers")
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn boolean_cumulants(&self) -> &[Rational] {
        &self.boolean
    }

    pub fn free_cumulants(&self) -> Vec<Rational> {
        cumulants_from_moments(&self.moments, CumulantKind::Free).values
    }

    fn require(&self, n: usize) -> Result<(), FreeProdError> {
        if self.len() < n {
            return Err(MomentsError::SequenceTooShort { needed: n, available: self.len() }.into());
        }
        Ok(())
    }

    fn boolean_count(&self, size: usize) -> usize {
        self.boolean[size - 1].to_integer().try_into().expect("small dimension")
    }
}

/// `dim (P ⊗ Q)_n = dim P_n · dim Q_n`.
pub fn tensor_dims(p: &DimensionProfile, q: &DimensionProfile, n: usize) -> Result<Vec<Rational>, FreeProdError> {
    p.require(n)?;
    q.require(n)?;
    Ok((1..=n).map(|k| p.moments.moment(k) * q.moments.moment(k)).collect())
}

/// `dim (P * Q)_n`, the moments of `μ_P ⊠ μ_Q`.
pub fn free_product_dims(p: &DimensionProfile, q: &DimensionProfile, n: usize) -> Result<Vec<Rational>, FreeProdError> {
    Ok(free_mult_conv(&p.moments, &q.moments, n)?.moments)
}

/// Free wreath product character moments: `χ_α ⊠ χ_β`.
pub fn wreath_character_moments(
    alpha: &MomentProfile,
    beta: &MomentProfile,
    n: usize,
) -> Result<MomentProfile, FreeProdError> {
    Ok(free_mult_conv(alpha, beta, n)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanDecomposition {
    /// `dim L(n)` for `n = 1..=N`.
    pub l: Vec<Rational>,
    /// Per degree, the contribution `b_P(p) b_Q(K(p))` of every `p ∈ NC(n)`.
    pub per_partition: Vec<Vec<(Partition, Rational)>>,
}

/// `L(n) = ⊕_{p ∈ NC(n)} B_P(p) ⊗ B_Q(K(p))`, dimension by dimension.
pub fn boolean_decomposition_dims(
    p: &DimensionProfile,
    q: &DimensionProfile,
    n: usize,
) -> Result<BooleanDecomposition, FreeProdError> {
    p.require(n)?;
    q.require(n)?;
    let mut l = Vec::new();
    let mut per_partition = Vec::new();
    for k in 1..=n {
        let parts = enumerate(k, PartitionClass::NonCrossing).map_err(|_| MomentsError::CapExceeded(k))?;
        let mut terms = Vec::new();
        let mut total = Rational::from_integer(0.into());
        for part in parts {
            let complement = kreweras(&part).expect("non-crossing");
            let x = multiplicative_extension(&p.boolean, &part)? * multiplicative_extension(&q.boolean, &complement)?;
            total += &x;
            terms.push((part, x));
        }
        debug_assert_eq!(total, kreweras_convolution(&p.boolean, &q.boolean, k)?);
        l.push(total);
        per_partition.push(terms);
    }
    Ok(BooleanDecomposition { l, per_partition })
}

/// One part of a basis label: `p ∈ NC(k)` and an index into the Boolean space of `P`
/// for each block of `p` and of `Q` for each block of `K(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartLabel {
    pub p: Partition,
    pub p_idx: Vec<usize>,
    pub k_idx: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    pub intervals: Vec<usize>,
    pub parts: Vec<PartLabel>,
}

impl Serialize for PartLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("p", &self.p.to_string())?;
        m.serialize_entry("pIdx", &self.p_idx)?;
        m.serialize_entry("kIdx", &self.k_idx)?;
        m.end()
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BasisLabel", 2)?;
        st.serialize_field("I", &self.intervals)?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

impl BasisLabel {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("label serializes")
    }
}

// All index vectors with entry j in 1..=ranges[j].
fn index_vectors(ranges: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranges {
        out = out.into_iter().flat_map(|v| (1..=r).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out
}

fn part_labels(p: &DimensionProfile, q: &DimensionProfile, k: usize) -> Result<Vec<PartLabel>, FreeProdError> {
    let mut out = Vec::new();
    for part in enumerate(k, PartitionClass::NonCrossing).map_err(|_| MomentsError::CapExceeded(k))? {
        let complement = kreweras(&part).expect("non-crossing");
        let pr: Vec<usize> = part.blocks().iter().map(|b| p.boolean_count(b.len())).collect();
        let kr: Vec<usize> = complement.blocks().iter().map(|b| q.boolean_count(b.len())).collect();
        for p_idx in index_vectors(&pr) {
            for k_idx in index_vectors(&kr) {
                out.push(PartLabel { p: part.clone(), p_idx: p_idx.clone(), k_idx });
            }
        }
    }
    Ok(out)
}

/// Labels of a basis of `(P * Q)_n`: an interval partition of `n` and a part label for
/// each interval.
pub fn basis_labels(p: &DimensionProfile, q: &DimensionProfile, n: usize) -> Result<Vec<BasisLabel>, FreeProdError> {
    p.require(n)?;
    q.require(n)?;
    let per_size: Vec<Vec<PartLabel>> = (1..=n).map(|k| part_labels(p, q, k)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for interval in enumerate(n, PartitionClass::Interval).map_err(|_| MomentsError::CapExceeded(n))? {
        let sizes: Vec<usize> = interval.blocks().iter().map(Vec::len).collect();
        let ranges: Vec<usize> = sizes.iter().map(|&s| per_size[s - 1].len()).collect();
        for choice in index_vectors(&ranges) {
            let parts = choice.iter().zip(&sizes).map(|(&c, &s)| per_size[s - 1][c - 1].clone()).collect();
            out.push(BasisLabel { intervals: sizes.clone(), parts });
        }
    }
    Ok(out)
}
