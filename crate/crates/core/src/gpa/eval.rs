use std::collections::BTreeMap;

use num_traits::Pow;

use super::{AlgebraSpec, GpaError, Loop, LoopVector};
use crate::numeric::{Rational, Surd};
use crate::tangles::{Arc, Point, Tangle, TangleExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `m^{t/2}`.
fn half_power(m: u64, t: i64) -> Surd {
    let base = Rational::from_integer(m.into());
    let whole: Rational = Pow::pow(&base, t.div_euclid(2) as i32);
    if t.rem_euclid(2) == 1 {
        Surd::scaled_sqrt(whole, m)
    } else {
        Surd::from_rational(whole)
    }
}

/// `(√d)^s`.
fn delta_power(d: u64, s: i64) -> Surd {
    let up = Surd::sqrt(d).pow(s.unsigned_abs() as u32);
    if s >= 0 {
        up
    } else {
        let dd = Rational::from_integer(d.into());
        let inv: Rational = Pow::pow(&dd, -(s.unsigned_abs() as i32));
        up.scale(&inv)
    }
}

/// Turning of a region boundary along a disk arc, in half turns.
fn arc_turning(t: &Tangle, arc: Arc) -> i64 {
    let m = t.points_on(arc.disk);
    let side = arc.index == 0 || arc.index == m / 2;
    match (arc.disk, side) {
        (0, true) => 2,
        (0, false) => 1,
        (_, true) => 0,
        (_, false) => 1,
    }
}

struct Prepared {
    strings: Vec<(Point, Point)>,
    string_region: Vec<usize>,
    // Twice the exponent of the spin vector on each shaded region.
    region_exponent: Vec<i64>,
    outer_string: Vec<usize>,
    sqrt_d_power: i64,
}

fn prepare(t: &Tangle, extra_delta: i64) -> Result<Prepared, GpaError> {
    let closed = t.outer_points() == 0;
    let mut region_of: BTreeMap<Arc, usize> = BTreeMap::new();
    let mut region_exponent = Vec::new();
    for region in t.regions().into_iter().filter(|r| r.shaded) {
        let mut e = 2 * (1 - region.holes as i64) - region.arcs.iter().map(|&a| arc_turning(t, a)).sum::<i64>();
        if closed && region.holes == 1 {
            // Partition function of the outside vertex: the square of its spin.
            e += 4;
        }
        for &a in &region.arcs {
            region_of.insert(a, region_exponent.len());
        }
        region_exponent.push(e);
    }
    let total: i64 = region_exponent.iter().sum();
    if total % 2 != 0 {
        return Err(GpaError::UnsupportedTangleShape(format!("odd total spin exponent in {t}")));
    }
    let strings = t.strings();
    let shaded_arc = |p: Point| Arc { disk: p.disk, index: if p.label % 2 == 1 { p.label } else { p.label - 1 } };
    let string_region = strings.iter().map(|&(a, _)| region_of[&shaded_arc(a)]).collect();
    let mut outer_string = vec![0; t.outer_points()];
    for (s, &(a, b)) in strings.iter().enumerate() {
        for p in [a, b] {
            if p.disk == 0 {
                outer_string[p.label - 1] = s;
            }
        }
    }
    Ok(Prepared {
        strings,
        string_region,
        region_exponent,
        outer_string,
        sqrt_d_power: -total / 2 + t.closed_loops() as i64 + extra_delta,
    })
}

/// Exact action of `t` on the given inputs, times `δ^{extra_delta}`.
pub fn evaluate_tangle(
    spec: &AlgebraSpec,
    t: &Tangle,
    extra_delta: i64,
    inputs: &[LoopVector],
) -> Result<LoopVector, GpaError> {
    let degrees = t.inner_degrees();
    if inputs.len() != degrees.len() {
        return Err(GpaError::DegreeMismatch { expected: degrees.len(), found: inputs.len() });
    }
    for (v, &k) in inputs.iter().zip(&degrees) {
        if v.degree != k {
            return Err(GpaError::DegreeMismatch { expected: k, found: v.degree });
        }
        v.validate(spec)?;
    }
    let prep = prepare(t, extra_delta)?;
    let blocks = spec.blocks.len();
    // Spin factors per shaded region and block.
    let factors: Vec<Vec<Surd>> = prep
        .region_exponent
        .iter()
        .map(|&e| spec.blocks.iter().map(|&m| half_power(m, e)).collect())
        .collect();
    let global = delta_power(spec.dimension(), prep.sqrt_d_power);

    let mut out = LoopVector::zero(t.outer_degree());
    let input_terms: Vec<Vec<(&Loop, &Surd)>> = inputs.iter().map(|v| v.terms().collect()).collect();
    let mut choice = vec![0usize; inputs.len()];
    if input_terms.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut coeff = global.clone();
        for (d, &c) in choice.iter().enumerate() {
            coeff = &coeff * input_terms[d][c].1;
        }
        let edge_at = |p: Point| input_terms[p.disk - 1][choice[p.disk - 1]].0 .0[p.label - 1];
        if let Some((edges, regions)) = fixed_state(&prep, blocks, edge_at) {
            emit_states(spec, &prep, &factors, edges, regions, &coeff, &mut out);
        }
        // Next input combination.
        let mut d = 0;
        while d < choice.len() {
            choice[d] += 1;
            if choice[d] < input_terms[d].len() {
                break;
            }
            choice[d] = 0;
            d += 1;
        }
        if d == choice.len() {
            break;
        }
    }
    Ok(out)
}

type Edge = (usize, usize);

// Edges and blocks forced by the inner loops, or None when they are incompatible.
#[allow(clippy::type_complexity)]
fn fixed_state(
    prep: &Prepared,
    blocks: usize,
    edge_at: impl Fn(Point) -> Edge,
) -> Option<(Vec<Option<Edge>>, Vec<Option<usize>>)> {
    let mut edges: Vec<Option<Edge>> = vec![None; prep.strings.len()];
    let mut regions: Vec<Option<usize>> = vec![None; prep.region_exponent.len()];
    for (s, &(a, b)) in prep.strings.iter().enumerate() {
        for p in [a, b] {
            if p.disk == 0 {
                continue;
            }
            let e = edge_at(p);
            match edges[s] {
                Some(prev) if prev != e => return None,
                _ => edges[s] = Some(e),
            }
        }
        if let Some(e) = edges[s] {
            debug_assert!(e.0 <= blocks);
            let r = prep.string_region[s];
            match regions[r] {
                Some(b) if b != e.0 => return None,
                _ => regions[r] = Some(e.0),
            }
        }
    }
    Some((edges, regions))
}

fn emit_states(
    spec: &AlgebraSpec,
    prep: &Prepared,
    factors: &[Vec<Surd>],
    edges: Vec<Option<Edge>>,
    regions: Vec<Option<usize>>,
    coeff: &Surd,
    out: &mut LoopVector,
) {
    let free_regions: Vec<usize> = (0..regions.len()).filter(|&r| regions[r].is_none()).collect();
    let free_strings: Vec<usize> = (0..edges.len()).filter(|&s| edges[s].is_none()).collect();
    let mut regions = regions;
    let mut pick = vec![1usize; free_regions.len()];
    loop {
        for (j, &r) in free_regions.iter().enumerate() {
            regions[r] = Some(pick[j]);
        }
        let mut weight = coeff.clone();
        for (r, b) in regions.iter().enumerate() {
            weight = &weight * &factors[r][b.unwrap() - 1];
        }
        // Edge choices for strings with both ends on the outer disk.
        let sizes: Vec<usize> =
            free_strings.iter().map(|&s| spec.blocks[regions[prep.string_region[s]].unwrap() - 1] as usize).collect();
        let mut idx = vec![1usize; free_strings.len()];
        let mut edges = edges.clone();
        loop {
            for (j, &s) in free_strings.iter().enumerate() {
                edges[s] = Some((regions[prep.string_region[s]].unwrap(), idx[j]));
            }
            let walk = Loop(prep.outer_string.iter().map(|&s| edges[s].unwrap()).collect());
            out.add_term(walk, weight.clone());
            let mut j = 0;
            while j < idx.len() {
                idx[j] += 1;
                if idx[j] <= sizes[j] {
                    break;
                }
                idx[j] = 1;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
        let mut j = 0;
        while j < pick.len() {
            pick[j] += 1;
            if pick[j] <= spec.blocks.len() {
                break;
            }
            pick[j] = 1;
            j += 1;
        }
        if j == pick.len() {
            break;
        }
    }
}

/// Evaluates an expression on inputs for its inner disks, in disk order.
pub fn evaluate(spec: &AlgebraSpec, expr: &TangleExpr, inputs: &[LoopVector]) -> Result<LoopVector, GpaError> {
    let sig = expr.signature()?;
    if sig.inner.len() != inputs.len() {
        return Err(GpaError::DegreeMismatch { expected: sig.inner.len(), found: inputs.len() });
    }
    let t = expr.tangle()?;
    evaluate_tangle(spec, &t, expr.delta_power(), inputs)
}

/// `x · y`, with `x` stacked above `y`.
pub fn multiply(spec: &AlgebraSpec, x: &LoopVector, y: &LoopVector) -> Result<LoopVector, GpaError> {
    if x.degree != y.degree {
        return Err(GpaError::DegreeMismatch { expected: x.degree, found: y.degree });
    }
    if x.degree == 0 {
        return Ok(LoopVector::scalar(&x.scalar_value() * &y.scalar_value()));
    }
    evaluate(spec, &TangleExpr::Mult(x.degree), &[x.clone(), y.clone()])
}

/// Normalized trace, closing strings around the chosen side.
pub fn trace(spec: &AlgebraSpec, x: &LoopVector, side: Side) -> Result<Surd, GpaError> {
    if x.degree == 0 {
        return Ok(x.scalar_value());
    }
    let expr = match side {
        Side::Left => TangleExpr::TrL(x.degree),
        Side::Right => TangleExpr::TrR(x.degree),
    };
    Ok(evaluate(spec, &expr, std::slice::from_ref(x))?.scalar_value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_powers() {
        assert_eq!(half_power(4, 3), Surd::from_int(8));
        assert_eq!(half_power(2, -1), "1/2*sqrt(2)".parse().unwrap());
        assert_eq!(half_power(3, 0), Surd::one());
        assert_eq!(delta_power(5, -2), Surd::from_rational(Rational::new(1.into(), 5.into())));
        assert_eq!(delta_power(5, -1), "1/5*sqrt(5)".parse().unwrap());
    }
}
