//! Moment sequences, free and Boolean cumulants, and free multiplicative convolution.

mod groups;

pub use groups::{perm_group_character_moments, GROUP_CAP};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{parse_rational, Rational};
use crate::partitions::{enumerate, kreweras, Partition, PartitionClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentsError {
    #[error("sequence of length {available} is too short, order {needed} is needed")]
    SequenceTooShort { needed: usize, available: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generated group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("order {0} exceeds the non-crossing enumeration cap")]
    CapExceeded(usize),
    #[error("invalid moment data: {0}")]
    Parse(String),
}

/// Moments `m(1..N)` of a measure; `m(0) = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentProfile {
    pub name: String,
    pub moments: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CumulantKind {
    Free,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantProfile {
    pub kind: CumulantKind,
    pub values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    name: String,
    moments: Vec<String>,
}

impl MomentProfile {
    pub fn new(name: impl Into<String>, moments: Vec<Rational>) -> Self {
        MomentProfile { name: name.into(), moments }
    }

    pub fn from_integers(name: impl Into<String>, moments: &[i64]) -> Self {
        MomentProfile::new(name, moments.iter().map(|&m| Rational::from_integer(m.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// `m(n)` for `n ≥ 0`.
    pub fn moment(&self, n: usize) -> Rational {
        if n == 0 {
            Rational::one()
        } else {
            self.moments[n - 1].clone()
        }
    }

    pub fn truncated(&self, n: usize) -> Result<MomentProfile, MomentsError> {
        require(self, n)?;
        Ok(MomentProfile::new(self.name.clone(), self.moments[..n].to_vec()))
    }

    /// Point mass at `a`: moments `a^n`.
    pub fn point_mass(a: i64, n: usize) -> Self {
        let a = Rational::from_integer(a.into());
        let moments = (1..=n).map(|k| num_traits::pow(a.clone(), k)).collect();
        MomentProfile::new(format!("delta_{a}"), moments)
    }

    pub fn catalan(n: usize) -> Self {
        let mut c = vec![Rational::one()];
        for k in 0..n {
            let next = &c[k] * Rational::from_integer((2 * (2 * k + 1)).into()) / Rational::from_integer((k + 2).into());
            c.push(next);
        }
        MomentProfile::new("catalan", c[1..].to_vec())
    }

    pub fn to_json(&self) -> String {
        let j = ProfileJson { name: self.name.clone(), moments: self.moments.iter().map(|m| m.to_string()).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, MomentsError> {
        let j: ProfileJson = serde_json::from_str(text).map_err(|e| MomentsError::Parse(e.to_string()))?;
        let moments = j
            .moments
            .iter()
            .map(|s| parse_rational(s).map_err(|e| MomentsError::Parse(e.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(MomentProfile::new(j.name, moments))
    }
}

fn require(mu: &MomentProfile, n: usize) -> Result<(), MomentsError> {
    if mu.len() < n {
        Err(MomentsError::SequenceTooShort { needed: n, available: mu.len() })
    } else {
        Ok(())
    }
}

/// `Π_B seq(|B|)`, with `seq` indexed from block size 1.
pub fn multiplicative_extension(seq: &[Rational], p: &Partition) -> Result<Rational, MomentsError> {
    let mut acc = Rational::one();
    for b in p.blocks() {
        let v = seq.get(b.len() - 1).ok_or(MomentsError::SequenceTooShort { needed: b.len(), available: seq.len() })?;
        acc *= v;
    }
    Ok(acc)
}

fn product_of_sizes(seq: &[Rational], sizes: &[usize]) -> Rational {
    sizes.iter().fold(Rational::one(), |acc, &s| acc * &seq[s - 1])
}

/// `[z^j] M(z)^s` for `j ≤ limit`, where `M(z) = 1 + Σ m_k z^k`.
fn powers_of_series(m: &[Rational], max_power: usize, limit: usize) -> Vec<Vec<Rational>> {
    let series: Vec<Rational> = (0..=limit).map(|k| if k == 0 { Rational::one() } else { m.get(k - 1).cloned().unwrap_or_default() }).collect();
    let mut out = vec![{
        let mut one = vec![Rational::zero(); limit + 1];
        one[0] = Rational::one();
        one
    }];
    for s in 1..=max_power {
        let prev = &out[s - 1];
        let mut next = vec![Rational::zero(); limit + 1];
        for (i, a) in prev.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in series.iter().enumerate().take(limit + 1 - i) {
                next[i + j] += a * b;
            }
        }
        out.push(next);
    }
    out
}

/// Free cumulants from `m(n) = Σ_{p ∈ NC(n)} c(p)`, solved through the functional
/// equation `M(z) = 1 + Σ_s c_s z^s M(z)^s`.
fn free_cumulants(m: &[Rational]) -> Vec<Rational> {
    let n = m.len();
    let mut c = Vec::with_capacity(n);
    for k in 1..=n {
        let powers = powers_of_series(&m[..k - 1], k - 1, k);
        let mut v = m[k - 1].clone();
        for s in 1..k {
            v -= &c[s - 1] * &powers[s][k - s];
        }
        c.push(v);
    }
    c
}

fn free_moments(c: &[Rational]) -> Vec<Rational> {
    let n = c.len();
    let mut m: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        let powers = powers_of_series(&m, k - 1, k);
        let mut v = c[k - 1].clone();
        for s in 1..k {
            v += &c[s - 1] * &powers[s][k - s];
        }
        m.push(v);
    }
    m
}

/// Boolean cumulants from `m(n) = Σ_{j=1}^n b(j) m(n-j)`.
fn boolean_cumulants(m: &[Rational]) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m.len());
    for n in 1..=m.len() {
        let mut v = m[n - 1].clone();
        for j in 1..n {
            v -= &b[j - 1] * &m[n - j - 1];
        }
        b.push(v);
    }
    b
}

fn boolean_moments(b: &[Rational]) -> Vec<Rational> {
    let mut m: Vec<Rational> = Vec::with_capacity(b.len());
    for n in 1..=b.len() {
        let mut v = b[n - 1].clone();
        for j in 1..n {
            v += &b[j - 1] * &m[n - j - 1];
        }
        m.push(v);
    }
    m
}

pub fn cumulants_from_moments(mu: &MomentProfile, kind: CumulantKind) -> CumulantProfile {
    let values = match kind {
        CumulantKind::Free => free_cumulants(&mu.moments),
        CumulantKind::Boolean => boolean_cumulants(&mu.moments),
    };
    CumulantProfile { kind, values }
}

pub fn moments_from_cumulants(name: impl Into<String>, cumulants: &CumulantProfile) -> MomentProfile {
    let moments = match cumulants.kind {
        CumulantKind::Free => free_moments(&cumulants.values),
        CumulantKind::Boolean => boolean_moments(&cumulants.values),
    };
    MomentProfile::new(name, moments)
}

/// Block-size types of `(p, K(p))` over `NC(n)`, with multiplicities.
pub type KrewerasTypes = Vec<(Vec<usize>, Vec<usize>, u64)>;

/// Cached table of `(type of p, type of K(p), count)` for `p ∈ NC(n)`.
pub fn kreweras_types(n: usize) -> Result<Arc<KrewerasTypes>, MomentsError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<KrewerasTypes>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let all = enumerate(n, PartitionClass::NonCrossing).map_err(|_| MomentsError::CapExceeded(n))?;
    let mut counts: HashMap<(Vec<usize>, Vec<usize>), u64> = HashMap::new();
    for p in all {
        let k = kreweras(&p).expect("non-crossing");
        let sizes = |q: &Partition| {
            let mut s: Vec<usize> = q.blocks().iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        *counts.entry((sizes(&p), sizes(&k))).or_default() += 1;
    }
    let mut table: KrewerasTypes = counts.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    table.sort();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    Ok(table)
}

/// `Σ_{p ∈ NC(n)} f(p) g(K(p))` for multiplicative extensions of `f` and `g`.
pub fn kreweras_convolution(f: &[Rational], g: &[Rational], n: usize) -> Result<Rational, MomentsError> {
    let mut acc = Rational::zero();
    for (pt, kt, count) in kreweras_types(n)?.iter() {
        let term = product_of_sizes(f, pt) * product_of_sizes(g, kt);
        if !term.is_zero() {
            acc += term * Rational::from_integer((*count).into());
        }
    }
    Ok(acc)
}

/// Moments of `μ ⊠ ν` up to order `n` through `c_{μ⊠ν}(k) = Σ_{p ∈ NC(k)} c_μ(p) c_ν(K(p))`.
pub fn free_mult_conv(mu: &MomentProfile, nu: &MomentProfile, n: usize) -> Result<MomentProfile, MomentsError> {
    require(mu, n)?;
    require(nu, n)?;
    let cm = free_cumulants(&mu.moments[..n]);
    let cn = free_cumulants(&nu.moments[..n]);
    let c = (1..=n).map(|k| kreweras_convolution(&cm, &cn, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(MomentProfile::new(format!("{}*{}", mu.name, nu.name), free_moments(&c)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanConvCheck {
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub equal: bool,
}

/// Compares the Boolean cumulants of `μ ⊠ ν` with `Σ_{p ∈ NC(n)} b_μ(p) b_ν(K(p))`.
pub fn boolean_conv_check(mu: &MomentProfile, nu: &MomentProfile, n: usize) -> Result<BooleanConvCheck, MomentsError> {
    let product = free_mult_conv(mu, nu, n)?;
    let lhs = boolean_cumulants(&product.moments);
    let bm = boolean_cumulants(&mu.moments[..n]);
    let bn = boolean_cumulants(&nu.moments[..n]);
    let rhs = (1..=n).map(|k| kreweras_convolution(&bm, &bn, k)).collect::<Result<Vec<_>, _>>()?;
    let equal = lhs == rhs;
    Ok(BooleanConvCheck { lhs, rhs, equal })
}

/// Whether the Hankel matrix `(m(i+j))_{0 ≤ i,j ≤ ⌊N/2⌋}` is positive semidefinite.
#[allow(clippy::needless_range_loop)]
pub fn check_hankel(mu: &MomentProfile) -> bool {
    let size = mu.len() / 2 + 1;
    let mut h: Vec<Vec<Rational>> = (0..size).map(|i| (0..size).map(|j| mu.moment(i + j)).collect()).collect();
    for k in 0..size {
        let pivot = h[k][k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if (k + 1..size).any(|j| !h[k][j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..size {
            let factor = &h[i][k] / &pivot;
            for j in k + 1..size {
                let t = &factor * &h[k][j];
                h[i][j] -= t;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn multiplicative_extension_examples() {
        let p: Partition = "{1,3},{2}".parse().unwrap();
        assert_eq!(multiplicative_extension(&ints(&[1, 1, 1]), &p).unwrap(), Rational::one());
        let q: Partition = "{1,2},{3,4}".parse().unwrap();
        assert_eq!(multiplicative_extension(&ints(&[2, 3]), &q).unwrap(), Rational::from_integer(9.into()));
        assert_eq!(multiplicative_extension(&ints(&[1, 0, 0]), &q).unwrap(), Rational::zero());
        assert!(multiplicative_extension(&ints(&[1]), &q).is_err());
    }

    #[test]
    fn cumulant_examples() {
        let cat = MomentProfile::from_integers("catalan", &[1, 2, 5, 14]);
        assert_eq!(cumulants_from_moments(&cat, CumulantKind::Free).values, ints(&[1, 1, 1, 1]));
        assert_eq!(cumulants_from_moments(&cat, CumulantKind::Boolean).values, ints(&[1, 1, 2, 5]));
        let delta = MomentProfile::from_integers("delta_1", &[1, 1, 1, 1]);
        assert_eq!(cumulants_from_moments(&delta, CumulantKind::Boolean).values, ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn convolution_examples() {
        let cat = MomentProfile::catalan(5);
        assert_eq!(free_mult_conv(&cat, &cat, 5).unwrap().moments, ints(&[1, 3, 12, 55, 273]));
        let one = MomentProfile::point_mass(1, 4);
        assert_eq!(free_mult_conv(&one, &cat, 4).unwrap().moments, cat.moments[..4].to_vec());
        let prod = free_mult_conv(&MomentProfile::point_mass(2, 4), &MomentProfile::point_mass(3, 4), 4).unwrap();
        assert_eq!(prod.moments, MomentProfile::point_mass(6, 4).moments);
        assert!(matches!(free_mult_conv(&cat, &one, 5), Err(MomentsError::SequenceTooShort { .. })));
    }

    #[test]
    fn bn_example() {
        let cat = MomentProfile::catalan(2);
        let r = boolean_conv_check(&cat, &cat, 2).unwrap();
        assert_eq!(r.lhs, ints(&[1, 2]));
        assert!(r.equal);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name":"catalan","moments":["1","2","5","14"]}"#;
        let mu = MomentProfile::from_json(text).unwrap();
        assert_eq!(mu.to_json(), text);
        let half = MomentProfile::new("x", vec![Rational::new(1.into(), 2.into())]);
        assert_eq!(half.to_json(), r#"{"name":"x","moments":["1/2"]}"#);
    }

    #[test]
    fn hankel() {
        assert!(check_hankel(&MomentProfile::catalan(8)));
        assert!(check_hankel(&MomentProfile::point_mass(0, 4)));
        assert!(!check_hankel(&MomentProfile::from_integers("bad", &[0, -1])));
        assert!(!check_hankel(&MomentProfile::from_integers("bad", &[2, 1])));
    }
}
