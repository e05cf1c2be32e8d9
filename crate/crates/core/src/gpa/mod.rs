//! The graph planar algebra of an inclusion `ℂ ⊂ A` with `A = ⊕ M_{m_i}`: loops on the
//! star graph with one even vertex and one odd vertex per block, exact state sums for
//! tangles acting on them, traces and inner products.

mod eval;
mod spaces;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{int, NumericError, Rational, Surd, SurdField};
use crate::tangles::TangleError;

pub use eval::{evaluate, evaluate_tangle, multiply, trace, Side};
pub use spaces::{boolean_subspace, gram, gram_rank, inner_product, loop_norm, tl_diagrams, tl_image};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpaError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("unsupported tangle shape: {0}")]
    UnsupportedTangleShape(String),
    #[error("{0} exceeds the configured cap")]
    CapExceeded(String),
    #[error("concatenations of degree {0} leave the realized space")]
    NotClosedUnderConcatenation(usize),
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("invalid loop vector: {0}")]
    InvalidVector(String),
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Limits for operations that touch every loop of a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: usize,
    pub max_dimension: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 4, max_dimension: 9 }
    }
}

/// `A = ⊕ M_{m_i}` given by its block sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default)]
    pub name: String,
    pub blocks: Vec<u64>,
}

impl AlgebraSpec {
    pub fn new(name: impl Into<String>, blocks: Vec<u64>) -> Result<Self, GpaError> {
        let spec = AlgebraSpec { name: name.into(), blocks };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), GpaError> {
        if self.blocks.is_empty() {
            return Err(GpaError::InvalidSpec("at least one block is required".into()));
        }
        if self.blocks.contains(&0) {
            return Err(GpaError::InvalidSpec("block sizes must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, GpaError> {
        let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| GpaError::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// `d = Σ m_i²`.
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|m| m * m).sum()
    }

    /// `δ = √d`.
    pub fn delta(&self) -> Surd {
        Surd::sqrt(self.dimension())
    }

    /// Spin vector at block `i` (1-based): `m_i / √d`. The even vertex has weight 1.
    pub fn spin(&self, block: usize) -> Surd {
        let d = self.dimension();
        Surd::scaled_sqrt(Rational::new(self.blocks[block - 1].into(), d.into()), d)
    }

    /// Partition function at block `i`: `m_i² / d`.
    pub fn partition_function(&self, block: usize) -> Rational {
        let m = self.blocks[block - 1];
        Rational::new((m * m).into(), self.dimension().into())
    }

    /// Field containing every coefficient the evaluator produces.
    pub fn field(&self) -> SurdField {
        SurdField::generated_by(self.blocks.iter().copied().chain([self.dimension()]))
    }

    /// Whether the spin vector is an eigenvector of the adjacency matrix for `√d`.
    pub fn spin_is_perron_vector(&self) -> bool {
        let delta = self.delta();
        let at_even: Surd = (1..=self.blocks.len())
            .map(|i| self.spin(i).scale(&int(self.blocks[i - 1] as i64)))
            .fold(Surd::zero(), |acc, x| acc + x);
        let odd_ok = (1..=self.blocks.len()).all(|i| &delta * &self.spin(i) == Surd::from_int(self.blocks[i - 1] as i64));
        at_even == delta && odd_ok
    }

    /// Edges in block-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| (1..=m as usize).map(move |k| (i + 1, k)))
            .collect()
    }

    /// Product algebra `A ⊗ B`; blocks `m_i n_j` in `(i, j)` lexicographic order.
    pub fn tensor(&self, other: &AlgebraSpec) -> AlgebraSpec {
        let blocks = self.blocks.iter().flat_map(|m| other.blocks.iter().map(move |n| m * n)).collect();
        AlgebraSpec { name: format!("{}⊗{}", self.name, other.name), blocks }
    }
}

/// A closed walk of length `2n` from the even vertex: `(block, edge)` pairs, two per visit
/// to an odd vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Loop(pub Vec<(usize, usize)>);

impl Loop {
    pub fn degree(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_valid(&self, spec: &AlgebraSpec) -> bool {
        self.0.len().is_multiple_of(2)
            && self.0.iter().all(|&(b, k)| b >= 1 && b <= spec.blocks.len() && k >= 1 && k as u64 <= spec.blocks[b - 1])
            && self.0.chunks(2).all(|pair| pair[0].0 == pair[1].0)
    }

    /// The loop traversed backwards.
    pub fn reversed(&self) -> Loop {
        Loop(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Loop) -> Loop {
        Loop(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(b, k)| format!("{b}.{k}")).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// All loops of degree `n` in lexicographic order.
pub fn loop_basis(spec: &AlgebraSpec, n: usize, caps: Caps) -> Result<Vec<Loop>, GpaError> {
    if n > caps.max_degree || spec.dimension() > caps.max_dimension {
        return Err(GpaError::CapExceeded(format!("loop basis of degree {n} with d = {}", spec.dimension())));
    }
    let pairs: Vec<[(usize, usize); 2]> = spec
        .edges()
        .into_iter()
        .flat_map(|e| spec.edges().into_iter().filter(move |f| f.0 == e.0).map(move |f| [e, f]))
        .collect();
    let mut loops = vec![Vec::new()];
    for _ in 0..n {
        loops = loops
            .into_iter()
            .flat_map(|prefix: Vec<(usize, usize)>| {
                pairs.iter().map(move |p| {
                    let mut l = prefix.clone();
                    l.extend_from_slice(p);
                    l
                })
            })
            .collect();
    }
    Ok(loops.into_iter().map(Loop).collect())
}

/// An element of the degree-`n` space: a finite combination of loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopVector {
    pub degree: usize,
    terms: BTreeMap<Loop, Surd>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "loop")]
    walk: Loop,
    coeff: Surd,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    degree: usize,
    terms: Vec<TermJson>,
}

impl LoopVector {
    pub fn zero(degree: usize) -> Self {
        LoopVector { degree, terms: BTreeMap::new() }
    }

    pub fn basis(walk: Loop) -> Self {
        let degree = walk.degree();
        LoopVector { degree, terms: BTreeMap::from([(walk, Surd::one())]) }
    }

    /// The scalar `c` as an element of the degree-0 space.
    pub fn scalar(c: Surd) -> Self {
        let mut v = LoopVector::zero(0);
        v.add_term(Loop(Vec::new()), c);
        v
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Loop, Surd)>) -> Result<Self, GpaError> {
        let mut v = LoopVector::zero(degree);
        for (l, c) in terms {
            if l.0.len() != 2 * degree {
                return Err(GpaError::InvalidVector(format!("loop {l} in a vector of degree {degree}")));
            }
            v.add_term(l, c);
        }
        Ok(v)
    }

    pub fn add_term(&mut self, walk: Loop, c: Surd) {
        debug_assert_eq!(walk.0.len(), 2 * self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(walk) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Loop, &Surd)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, walk: &Loop) -> Surd {
        self.terms.get(walk).cloned().unwrap_or_else(Surd::zero)
    }

    /// Number of loops with a nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty loop of a degree-0 vector.
    pub fn scalar_value(&self) -> Surd {
        self.coefficient(&Loop(Vec::new()))
    }

    pub fn add(&self, other: &LoopVector) -> LoopVector {
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Surd) -> LoopVector {
        let mut out = LoopVector::zero(self.degree);
        for (l, x) in self.terms() {
            out.add_term(l.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &LoopVector) -> LoopVector {
        self.add(&other.scale(&Surd::from_int(-1)))
    }

    /// The adjoint: loops reversed (coefficients are real).
    pub fn adjoint(&self) -> LoopVector {
        LoopVector { degree: self.degree, terms: self.terms.iter().map(|(l, c)| (l.reversed(), c.clone())).collect() }
    }

    pub fn to_json(&self) -> String {
        let json = VectorJson {
            degree: self.degree,
            terms: self.terms.iter().map(|(l, c)| TermJson { walk: l.clone(), coeff: c.clone() }).collect(),
        };
        serde_json::to_string(&json).expect("vector serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GpaError> {
        let json: VectorJson = serde_json::from_str(text).map_err(|e| GpaError::InvalidVector(e.to_string()))?;
        LoopVector::from_terms(json.degree, json.terms.into_iter().map(|t| (t.walk, t.coeff)))
    }

    /// Checks every loop against a spec.
    pub fn validate(&self, spec: &AlgebraSpec) -> Result<(), GpaError> {
        match self.terms.keys().find(|l| !l.is_valid(spec)) {
            Some(l) => Err(GpaError::InvalidVector(format!("{l} is not a loop of {}", spec.name))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for LoopVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({c}){l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
