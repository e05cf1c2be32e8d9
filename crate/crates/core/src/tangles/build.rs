use super::{Arc, Point, Tangle, TangleError};
use crate::partitions::Partition;

fn build(points: Vec<usize>, strings: Vec<(Point, Point)>) -> Tangle {
    Tangle::new(points, &strings).expect("generator tangles are planar")
}

/// The irreducible tangle `T_π`: one inner disk per block (in block order), outer point
/// `i` joined to the disk of its block, and each disk's marked point joined to the
/// smallest odd element of its block.
pub fn t_pi(pi: &Partition) -> Result<Tangle, TangleError> {
    if !pi.is_noncrossing() {
        return Err(TangleError::NotNonCrossing(pi.to_string()));
    }
    if !pi.is_even() {
        return Err(TangleError::NotEven(pi.to_string()));
    }
    let mut points = vec![pi.order()];
    let mut strings = Vec::new();
    for (d, block) in pi.blocks().iter().enumerate() {
        points.push(block.len());
        let first_odd = block.iter().position(|x| x % 2 == 1).expect("even NC blocks alternate parity");
        for (rank, &x) in block.iter().enumerate() {
            let label = (rank + block.len() - first_odd) % block.len() + 1;
            strings.push((Point::outer(x), Point::new(d + 1, label)));
        }
    }
    Tangle::new(points, &strings)
}

/// `S_k`: no inner disks, `2i-1` joined to `2i`.
pub fn s_tangle(k: usize) -> Tangle {
    build(vec![2 * k], (1..=k).map(|i| (Point::outer(2 * i - 1), Point::outer(2 * i))).collect())
}

/// `U_k`: no inner disks, `2i` joined to `2i+1` and `2k` to `1`.
pub fn u_tangle(k: usize) -> Tangle {
    build(vec![2 * k], (1..=k).map(|i| (Point::outer(2 * i), Point::outer(2 * i % (2 * k) + 1))).collect())
}

/// The identity tangle: one inner disk of degree `k`, label `j` joined to label `j`.
pub fn identity_tangle(k: usize) -> Tangle {
    build(vec![2 * k, 2 * k], (1..=2 * k).map(|j| (Point::outer(j), Point::new(1, j))).collect())
}

/// The unit of degree `k`: vertical strings, top position `j` to bottom position `j`.
pub fn one_tangle(k: usize) -> Tangle {
    build(vec![2 * k], (1..=k).map(|j| (Point::outer(j), Point::outer(2 * k + 1 - j))).collect())
}

/// The empty tangle of degree 0.
pub fn unit_tangle() -> Tangle {
    build(vec![0], Vec::new())
}

/// Multiplication: disk 1 stacked above disk 2, both of degree `k`.
pub fn mult_tangle(k: usize) -> Tangle {
    let mut strings = Vec::new();
    for j in 1..=k {
        strings.push((Point::outer(j), Point::new(1, j)));
        strings.push((Point::new(1, k + j), Point::new(2, k + 1 - j)));
        strings.push((Point::new(2, k + j), Point::outer(k + j)));
    }
    build(vec![2 * k, 2 * k, 2 * k], strings)
}

/// Concatenation of degrees `k` and `m`: the two disks side by side, outer labels
/// `1..=2k` on disk 1 and `2k+1..=2k+2m` on disk 2.
pub fn concat_tangle(k: usize, m: usize) -> Tangle {
    let mut strings: Vec<(Point, Point)> = (1..=2 * k).map(|j| (Point::outer(j), Point::new(1, j))).collect();
    strings.extend((1..=2 * m).map(|j| (Point::outer(2 * k + j), Point::new(2, j))));
    build(vec![2 * (k + m), 2 * k, 2 * m], strings)
}

/// Right trace: strings close around the right side of the disk.
pub fn right_trace(k: usize) -> Tangle {
    let strings: Vec<(Point, Point)> = (1..=k).map(|j| (Point::new(1, j), Point::new(1, 2 * k + 1 - j))).collect();
    Tangle::closed(vec![0, 2 * k], &strings, Arc { disk: 1, index: 0 }).expect("trace tangle")
}

/// Left trace: strings close around the left side of the disk.
pub fn left_trace(k: usize) -> Tangle {
    let strings: Vec<(Point, Point)> = (1..=k).map(|j| (Point::new(1, j), Point::new(1, 2 * k + 1 - j))).collect();
    Tangle::closed(vec![0, 2 * k], &strings, Arc { disk: 1, index: k }).expect("trace tangle")
}

/// Cup-cap diagram at positions `i, i+1` (`1 ≤ i < k`), vertical strings elsewhere.
pub fn cup_cap_tangle(k: usize, i: usize) -> Result<Tangle, TangleError> {
    if i == 0 || i >= k {
        return Err(TangleError::Invalid(format!("E({k},{i}) needs 1 <= i < k")));
    }
    let bottom = |pos: usize| 2 * k + 1 - pos;
    let mut strings = vec![(Point::outer(i), Point::outer(i + 1)), (Point::outer(bottom(i)), Point::outer(bottom(i + 1)))];
    for j in (1..=k).filter(|&j| j != i && j != i + 1) {
        strings.push((Point::outer(j), Point::outer(bottom(j))));
    }
    Tangle::new(vec![2 * k], &strings)
}

/// Rotation of a degree-`k` disk by two boundary points.
pub fn rotation_tangle(k: usize) -> Tangle {
    let m = 2 * k;
    build(vec![m, m], (1..=m).map(|j| (Point::outer(j), Point::new(1, (j + 1) % m + 1))).collect())
}

/// Temperley–Lieb diagram obtained by drawing boundary lines around the blocks of a
/// non-crossing partition of `k` upper and `l` lower points. Upper points are `1..=k`
/// left to right, lower points `k+1..=k+l` left to right.
pub fn fatten(p: &Partition, upper: usize) -> Result<Tangle, TangleError> {
    let total = p.order();
    if upper > total {
        return Err(TangleError::Invalid(format!("{upper} upper points for a partition of {total}")));
    }
    // Cyclic position: upper left to right, then lower right to left.
    let cyclic = |x: usize| if x <= upper { x } else { upper + total + 1 - x };
    let blocks: Vec<Vec<usize>> = p
        .blocks()
        .iter()
        .map(|b| {
            let mut c: Vec<usize> = b.iter().map(|&x| cyclic(x)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let around = Partition::new(total, blocks.clone()).map_err(|e| TangleError::Invalid(e.to_string()))?;
    if !around.is_noncrossing() {
        return Err(TangleError::NotNonCrossing(p.to_string()));
    }
    let mut strings = Vec::new();
    for b in around.blocks() {
        for (j, &c) in b.iter().enumerate() {
            let next = b[(j + 1) % b.len()];
            strings.push((Point::outer(2 * c), Point::outer(2 * next - 1)));
        }
    }
    Tangle::new(vec![2 * total], &strings)
}
