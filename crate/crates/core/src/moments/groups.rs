use std::collections::{HashMap, HashSet};

use num_traits::Zero;

use super::{MomentProfile, MomentsError};
use crate::numeric::Rational;

/// Largest group order accepted by the closure (10!).
pub const GROUP_CAP: usize = 3_628_800;

const MAX_POINTS: usize = 16;

fn pack(perm: &[u8]) -> u64 {
    perm.iter().enumerate().fold(0, |acc, (i, &v)| acc | (v as u64) << (4 * i))
}

/// Moments `m(k) = |G|^{-1} Σ_{g ∈ G} fix(g)^k` of the fixed-point count on the group
/// generated by `generators`, each given as the image list of `1..=n`.
pub fn perm_group_character_moments(
    n: usize,
    generators: &[Vec<usize>],
    k: usize,
) -> Result<MomentProfile, MomentsError> {
    if n == 0 || n > MAX_POINTS {
        return Err(MomentsError::InvalidPermutation(format!("{n} points; supported range is 1..={MAX_POINTS}")));
    }
    let mut gens = Vec::new();
    for g in generators {
        let mut seen = vec![false; n];
        if g.len() != n || g.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true)) {
            return Err(MomentsError::InvalidPermutation(format!("{g:?} is not a permutation of 1..={n}")));
        }
        gens.push(g.iter().map(|&x| (x - 1) as u8).collect::<Vec<u8>>());
    }
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut group: HashSet<u64> = HashSet::from([pack(&identity)]);
    let mut frontier = vec![identity];
    let mut fixed_histogram: HashMap<usize, u64> = HashMap::from([(n, 1)]);
    while let Some(g) = frontier.pop() {
        for s in &gens {
            let h: Vec<u8> = s.iter().map(|&x| g[x as usize]).collect();
            if group.insert(pack(&h)) {
                if group.len() > GROUP_CAP {
                    return Err(MomentsError::GroupTooLarge(GROUP_CAP));
                }
                let fixed = h.iter().enumerate().filter(|(i, &v)| *i == v as usize).count();
                *fixed_histogram.entry(fixed).or_default() += 1;
                frontier.push(h);
            }
        }
    }
    let order = Rational::from_integer((group.len() as u64).into());
    let moments = (1..=k)
        .map(|j| {
            let total = fixed_histogram.iter().fold(Rational::zero(), |acc, (&f, &count)| {
                acc + Rational::from_integer((count as u128 * (f as u128).pow(j as u32)).into())
            });
            total / &order
        })
        .collect();
    Ok(MomentProfile::new(format!("fix({n} points, order {})", group.len()), moments))
}
