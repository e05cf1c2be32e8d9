use super::build::{identity_tangle, s_tangle, t_pi, u_tangle};
use super::{Point, Tangle, TangleError};
use crate::partitions::{even_slot, nested_kreweras, odd_slot, Partition};

fn require_connected(t: &Tangle) -> Result<Partition, TangleError> {
    t.pi()
}

/// `(T, T')` is free iff `π_{T'} ≤ kr'(π_T)`.
pub fn is_free_pair(t: &Tangle, other: &Tangle) -> Result<bool, TangleError> {
    if t.outer_degree() != other.outer_degree() {
        return Err(TangleError::DegreeMismatch { expected: t.outer_degree(), found: other.outer_degree() });
    }
    let pi = require_connected(t)?;
    let pi2 = require_connected(other)?;
    let kr = nested_kreweras(&pi).map_err(|e| TangleError::Invalid(e.to_string()))?;
    Ok(pi2.leq(&kr).expect("same order"))
}

/// Places `t` on the outer slots `2i - δ(i)` and `other` on `2i - (1 - δ(i))` of a
/// boundary with `4k` points and checks whether the result is planar. Inner disks of
/// `other` come after those of `t`, with their labels shifted down by one.
pub fn interleave(t: &Tangle, other: &Tangle) -> Result<Tangle, TangleError> {
    if t.outer_degree() != other.outer_degree() {
        return Err(TangleError::DegreeMismatch { expected: t.outer_degree(), found: other.outer_degree() });
    }
    require_connected(t)?;
    require_connected(other)?;
    let first = t.disk_count();
    let mut points = vec![2 * t.outer_points()];
    points.extend((1..=first).map(|d| t.points_on(d)));
    points.extend((1..=other.disk_count()).map(|d| other.points_on(d)));
    let place_first = |p: Point| if p.disk == 0 { Point::outer(odd_slot(p.label)) } else { p };
    let place_second = |p: Point| {
        if p.disk == 0 {
            Point::outer(even_slot(p.label))
        } else {
            let m = other.points_on(p.disk);
            Point::new(first + p.disk, (p.label + m - 2) % m + 1)
        }
    };
    let mut strings: Vec<(Point, Point)> = t.strings().into_iter().map(|(a, b)| (place_first(a), place_first(b))).collect();
    strings.extend(other.strings().into_iter().map(|(a, b)| (place_second(a), place_second(b))));
    Tangle::new(points, &strings)
}

/// The free composition `T * T'`.
pub fn free_compose(t: &Tangle, other: &Tangle) -> Result<Tangle, TangleError> {
    if !is_free_pair(t, other)? {
        return Err(TangleError::NotFree(format!(
            "{} is not below kr'({})",
            other.pi().expect("connected"),
            t.pi().expect("connected")
        )));
    }
    interleave(t, other)
}

/// The reduced free pair `(T_π, T_{kr'(π)})` for `π ≥ π₀`.
pub fn reduced_pair(pi: &Partition) -> Result<(Tangle, Tangle), TangleError> {
    let order = pi.order();
    if order % 2 == 1 || !Partition::pi0(order).leq(pi).expect("same order") {
        return Err(TangleError::PrecedenceViolation(pi.to_string()));
    }
    let kr = nested_kreweras(pi).map_err(|e| TangleError::Invalid(e.to_string()))?;
    Ok((t_pi(pi)?, t_pi(&kr)?))
}

/// `(π_T, [T_1, …, T_r])` with `T = T_{π_T} ∘ (T_1, …, T_r)`; `T_j` is the part of `T`
/// attached to the `j`-th block, its outer label 1 on the block's smallest odd element.
pub fn irreducible_factorization(t: &Tangle) -> Result<(Partition, Vec<Tangle>), TangleError> {
    let pi = t.pi()?;
    let outer = t.outer_points();
    // Disks reached from each block.
    let mut disk_block = vec![usize::MAX; t.disk_count() + 1];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for (b, block) in pi.blocks().iter().enumerate() {
        for &x in block {
            let q = t.partner(Point::outer(x));
            if q.disk != 0 {
                stack.push((q.disk, b));
            }
        }
    }
    while let Some((d, b)) = stack.pop() {
        if disk_block[d] != usize::MAX {
            continue;
        }
        disk_block[d] = b;
        for l in 1..=t.points_on(d) {
            let q = t.partner(Point::new(d, l));
            if q.disk != 0 && disk_block[q.disk] == usize::MAX {
                stack.push((q.disk, b));
            }
        }
    }
    let mut factors = Vec::new();
    for (b, block) in pi.blocks().iter().enumerate() {
        let first_odd = block.iter().position(|x| x % 2 == 1).expect("even block");
        let outer_label = |x: usize| {
            let rank = block.iter().position(|&y| y == x).unwrap();
            (rank + block.len() - first_odd) % block.len() + 1
        };
        let disks: Vec<usize> = (1..=t.disk_count()).filter(|&d| disk_block[d] == b).collect();
        let local = |p: Point| {
            if p.disk == 0 {
                Point::outer(outer_label(p.label))
            } else {
                Point::new(disks.iter().position(|&d| d == p.disk).unwrap() + 1, p.label)
            }
        };
        let mut points = vec![block.len()];
        points.extend(disks.iter().map(|&d| t.points_on(d)));
        let strings: Vec<(Point, Point)> = t
            .strings()
            .into_iter()
            .filter(|(a, _)| if a.disk == 0 { block.contains(&a.label) } else { disk_block[a.disk] == b })
            .map(|(a, c)| (local(a), local(c)))
            .collect();
        factors.push(Tangle::new(points, &strings)?);
    }
    debug_assert_eq!(outer, pi.order());
    let rebuilt = recompose(&t_pi(&pi)?, &factors)?;
    if !rebuilt.equivalent(t) {
        return Err(TangleError::Invalid(format!("factorization of {t} does not recompose")));
    }
    Ok((pi, factors))
}

/// `T ∘ (X_1, …, X_r)`, filling every inner disk of `T`.
pub fn recompose(t: &Tangle, fillers: &[Tangle]) -> Result<Tangle, TangleError> {
    if fillers.len() != t.disk_count() {
        return Err(TangleError::Invalid(format!("{} fillers for {} disks", fillers.len(), t.disk_count())));
    }
    let mut out = t.clone();
    for (d, x) in fillers.iter().enumerate().rev() {
        out = out.compose(d + 1, x)?;
    }
    Ok(out)
}

/// Which side of a reduced pair an inner disk of the interleaving tangle comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskColor {
    /// From `T`; filled with `(Id, S)`.
    First,
    /// From `T'`; filled with `(U, Id)`.
    Second,
}

#[derive(Debug, Clone)]
pub struct InterleavingForm {
    pub r: Tangle,
    pub colors: Vec<DiskColor>,
}

impl InterleavingForm {
    fn fill(&self, first: fn(usize) -> Tangle, second: fn(usize) -> Tangle) -> Result<Tangle, TangleError> {
        let fillers: Vec<Tangle> = self
            .colors
            .iter()
            .zip(self.r.inner_degrees())
            .map(|(c, k)| match c {
                DiskColor::First => first(k),
                DiskColor::Second => second(k),
            })
            .collect();
        recompose(&self.r, &fillers)
    }

    /// `R ∘ (X_1, …)`: identities on the first family, `U` on the second.
    pub fn first_side(&self) -> Result<Tangle, TangleError> {
        self.fill(identity_tangle, u_tangle)
    }

    /// `R ∘ (X̃_1, …)`: `S` on the first family, identities on the second.
    pub fn second_side(&self) -> Result<Tangle, TangleError> {
        self.fill(s_tangle, identity_tangle)
    }
}

/// For a reduced pair: joins the inner ends of outer points `4i-1` and `4i` of `T * T'`
/// and drops those points, keeping `4i-3, 4i-2` as `2i-1, 2i`.
pub fn interleaving_form(t: &Tangle, other: &Tangle) -> Result<InterleavingForm, TangleError> {
    let pi = t.pi()?;
    let reduced = reduced_pair(&pi).map_err(|_| TangleError::NotReduced(pi.to_string()))?;
    if !reduced.0.equivalent(t) || !reduced.1.equivalent(other) {
        return Err(TangleError::NotReduced(pi.to_string()));
    }
    let product = free_compose(t, other)?;
    let k = t.outer_degree();
    let keep = |label: usize| match label % 4 {
        1 => Some(label.div_ceil(2)),
        2 => Some((label + 2) / 2),
        _ => None,
    };
    let mut strings = Vec::new();
    for (a, b) in product.strings() {
        // Strings of T_π and T_{kr'(π)} all run from the outer disk to an inner disk.
        match (a.disk, keep(a.label)) {
            (0, Some(l)) => strings.push((Point::outer(l), b)),
            (0, None) => {}
            _ => return Err(TangleError::Invalid("reduced pair with an inner-inner string".into())),
        }
    }
    for i in 1..=k {
        let x = product.partner(Point::outer(4 * i - 1));
        let y = product.partner(Point::outer(4 * i));
        strings.push((x, y));
    }
    let mut points = vec![2 * k];
    points.extend((1..=product.disk_count()).map(|d| product.points_on(d)));
    let r = Tangle::new(points.clone(), &strings)?;
    let colors: Vec<DiskColor> = (0..product.disk_count())
        .map(|d| if d < t.disk_count() { DiskColor::First } else { DiskColor::Second })
        .collect();
    // Marked points of the second family: rotate each so that filling with identities
    // lands on the marked points of `T'`. The rotations are even, which `U` ignores.
    let draft = InterleavingForm { r, colors: colors.clone() };
    let raw = draft.second_side()?;
    let first = t.disk_count();
    let mut rotation = vec![0; points.len()];
    for d in 1..=other.disk_count() {
        let m = other.points_on(d);
        let anchor = raw.partner(Point::new(d, 1));
        let target = other.partner(anchor);
        debug_assert_eq!(target.disk, d);
        rotation[first + d] = (target.label + m - 1) % m;
        debug_assert_eq!(rotation[first + d] % 2, 0);
    }
    let turn = |p: Point| {
        if rotation[p.disk] == 0 {
            p
        } else {
            let m = points[p.disk];
            Point::new(p.disk, (p.label - 1 + rotation[p.disk]) % m + 1)
        }
    };
    let strings: Vec<(Point, Point)> = draft.r.strings().into_iter().map(|(a, b)| (turn(a), turn(b))).collect();
    let r = Tangle::new(points, &strings)?;
    Ok(InterleavingForm { r, colors })
}
