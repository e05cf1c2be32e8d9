#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use super::{NumericError, Rational, Surd};

/// The multiquadratic field `Q(√p_1, …, √p_t)` for a declared list of primes.
///
/// Elements are ordinary [`Surd`]s; the field only supplies division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdField {
    primes: Vec<u64>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl SurdField {
    /// Field generated by the square roots of the given positive integers.
    pub fn generated_by(radicands: impl IntoIterator<Item = u64>) -> Self {
        let mut primes: Vec<u64> = radicands.into_iter().flat_map(prime_factors).collect();
        primes.sort_unstable();
        primes.dedup();
        SurdField { primes }
    }

    pub fn rationals() -> Self {
        SurdField { primes: Vec::new() }
    }

    pub fn generators(&self) -> &[u64] {
        &self.primes
    }

    pub fn degree(&self) -> usize {
        1 << self.primes.len()
    }

    fn mask_of(&self, r: u64) -> Result<usize, NumericError> {
        let mut mask = 0;
        let mut rest = r;
        for (i, p) in self.primes.iter().enumerate() {
            if rest.is_multiple_of(*p) {
                mask |= 1 << i;
                rest /= p;
            }
        }
        if rest == 1 {
            Ok(mask)
        } else {
            Err(NumericError::RadicandOutsideField(r))
        }
    }

    fn radicand_of(&self, mask: usize) -> u64 {
        self.primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).product()
    }

    pub fn contains(&self, a: &Surd) -> bool {
        a.radicands().all(|r| self.mask_of(r).is_ok())
    }

    fn coordinates(&self, a: &Surd) -> Result<Vec<Rational>, NumericError> {
        let mut v = vec![Rational::zero(); self.degree()];
        for (r, q) in a.terms() {
            v[self.mask_of(r)?] = q.clone();
        }
        Ok(v)
    }

    /// Multiplicative inverse, found by solving `a·x = 1` in the rational basis of the field.
    pub fn inv(&self, a: &Surd) -> Result<Surd, NumericError> {
        if a.is_zero() {
            return Err(NumericError::ZeroDivision);
        }
        self.coordinates(a)?;
        if let Some(q) = a.as_rational() {
            return Ok(Surd::from_rational(q.recip()));
        }
        let dim = self.degree();
        // Column j of the multiplication-by-a matrix is a·√(basis_j).
        let mut m = vec![vec![Rational::zero(); dim + 1]; dim];
        for j in 0..dim {
            let col = self.coordinates(&(a * &Surd::sqrt(self.radicand_of(j))))?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m[0][dim] = Rational::one();
        for col in 0..dim {
            let pivot = (col..dim).find(|&r| !m[r][col].is_zero()).ok_or(NumericError::ZeroDivision)?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..dim {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..=dim {
                        let delta = &factor * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        let mut out = Surd::zero();
        for (j, row) in m.iter().enumerate() {
            out += Surd::scaled_sqrt(row[dim].clone(), self.radicand_of(j));
        }
        Ok(out)
    }

    pub fn div(&self, a: &Surd, b: &Surd) -> Result<Surd, NumericError> {
        Ok(a * &self.inv(b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    #[test]
    fn inverses() {
        let f = SurdField::generated_by([2]);
        assert_eq!(f.inv(&Surd::sqrt(2)).unwrap(), Surd::scaled_sqrt(rational(1, 2), 2));
        let a = Surd::one() + Surd::sqrt(2);
        assert_eq!(f.inv(&a).unwrap(), Surd::from_int(-1) + Surd::sqrt(2));
        assert_eq!(f.inv(&Surd::from_int(3)).unwrap(), Surd::from_rational(rational(1, 3)));
        assert_eq!(SurdField::rationals().inv(&Surd::from_int(3)).unwrap(), Surd::from_rational(rational(1, 3)));
    }

    #[test]
    fn errors() {
        let f = SurdField::generated_by([2]);
        assert_eq!(f.inv(&Surd::zero()), Err(NumericError::ZeroDivision));
        assert_eq!(f.inv(&Surd::sqrt(3)), Err(NumericError::RadicandOutsideField(3)));
    }

    #[test]
    fn three_generators() {
        let f = SurdField::generated_by([6, 5]);
        assert_eq!(f.generators(), &[2, 3, 5]);
        let a = Surd::one() + Surd::sqrt(2) + Surd::sqrt(15) - Surd::scaled_sqrt(rational(3, 7), 30);
        assert!((&a * &f.inv(&a).unwrap()).is_one());
    }
}
