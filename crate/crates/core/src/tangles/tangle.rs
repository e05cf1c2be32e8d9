use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::TangleError;
use crate::partitions::{Partition, UnionFind};

/// A boundary point: disk `0` is the outer disk, labels run `1..=2k` clockwise from the
/// marked point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub disk: usize,
    pub label: usize,
}

impl Point {
    pub fn new(disk: usize, label: usize) -> Self {
        Point { disk, label }
    }

    pub fn outer(label: usize) -> Self {
        Point { disk: 0, label }
    }
}

/// The boundary interval of a disk between labels `index` and `index + 1`
/// (`index = 0` is the interval between the last label and `1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub disk: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub arcs: Vec<Arc>,
    pub shaded: bool,
    /// Boundary components other than the outer one.
    pub holes: usize,
}

/// A planar tangle stored combinatorially: point counts per disk, the string matching,
/// the number of closed loops, and (for an outer disk without points) which arc of the
/// skeleton faces the outer boundary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tangle {
    points: Vec<usize>,
    partner: Vec<Vec<Point>>,
    loops: usize,
    outer_face: Option<Arc>,
}

impl Tangle {
    /// Builds and validates a tangle. `points[0]` is the outer disk's point count.
    pub fn new(points: Vec<usize>, strings: &[(Point, Point)]) -> Result<Self, TangleError> {
        Tangle::assemble(points, strings, 0, None)
    }

    /// A tangle whose outer disk has no points; `outer_face` is an arc of the skeleton in
    /// the region touching the outer boundary.
    pub fn closed(points: Vec<usize>, strings: &[(Point, Point)], outer_face: Arc) -> Result<Self, TangleError> {
        Tangle::assemble(points, strings, 0, Some(outer_face))
    }

    pub(crate) fn assemble(
        points: Vec<usize>,
        strings: &[(Point, Point)],
        loops: usize,
        outer_face: Option<Arc>,
    ) -> Result<Self, TangleError> {
        let invalid = |why: String| Err(TangleError::Invalid(why));
        if points.is_empty() {
            return invalid("no outer disk".into());
        }
        for (d, &m) in points.iter().enumerate() {
            if m % 2 == 1 || (d > 0 && m == 0) {
                return invalid(format!("disk {d} has {m} points"));
            }
        }
        let unset = Point::new(usize::MAX, 0);
        let mut partner: Vec<Vec<Point>> = points.iter().map(|&m| vec![unset; m]).collect();
        for &(a, b) in strings {
            for p in [a, b] {
                if p.disk >= points.len() || p.label == 0 || p.label > points[p.disk] {
                    return invalid(format!("point {p:?} does not exist"));
                }
                if partner[p.disk][p.label - 1] != unset {
                    return invalid(format!("point {p:?} has two strings"));
                }
            }
            if a == b {
                return invalid(format!("string from {a:?} to itself"));
            }
            partner[a.disk][a.label - 1] = b;
            partner[b.disk][b.label - 1] = a;
            let same_kind = (a.disk == 0) == (b.disk == 0);
            let same_parity = a.label % 2 == b.label % 2;
            if same_kind == same_parity {
                return invalid(format!("string {a:?}-{b:?} breaks the parity rule"));
            }
        }
        if partner.iter().flatten().any(|p| *p == unset) {
            return invalid("some boundary point has no string".into());
        }
        match (points[0], outer_face) {
            (0, None) if points.len() > 1 => return invalid("outer face of a closed tangle is unspecified".into()),
            (0, Some(a)) if a.disk == 0 || a.disk >= points.len() || a.index >= points[a.disk] => {
                return invalid(format!("outer face arc {a:?} does not exist"))
            }
            (m, Some(_)) if m > 0 => return invalid("outer face given for an outer disk with points".into()),
            _ => {}
        }
        let t = Tangle { points, partner, loops, outer_face };
        t.check_planar()?;
        Ok(t)
    }

    pub fn outer_points(&self) -> usize {
        self.points[0]
    }

    pub fn outer_degree(&self) -> usize {
        self.points[0] / 2
    }

    pub fn disk_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Degrees of the inner disks `1..=disk_count()`.
    pub fn inner_degrees(&self) -> Vec<usize> {
        self.points[1..].iter().map(|m| m / 2).collect()
    }

    pub fn points_on(&self, disk: usize) -> usize {
        self.points[disk]
    }

    pub fn partner(&self, p: Point) -> Point {
        self.partner[p.disk][p.label - 1]
    }

    pub fn closed_loops(&self) -> usize {
        self.loops
    }

    pub fn outer_face(&self) -> Option<Arc> {
        self.outer_face
    }

    /// Every string once, listed from its smaller endpoint.
    pub fn strings(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for (d, row) in self.partner.iter().enumerate() {
            for (i, q) in row.iter().enumerate() {
                let p = Point::new(d, i + 1);
                if p < *q {
                    out.push((p, *q));
                }
            }
        }
        out
    }

    /// The next arc along a region boundary after `arc`, keeping the region on the left.
    fn next_arc(&self, arc: Arc) -> Arc {
        let m = self.points[arc.disk];
        let exit = if arc.disk == 0 {
            if arc.index == 0 {
                m
            } else {
                arc.index
            }
        } else {
            arc.index + 1
        };
        let q = self.partner(Point::new(arc.disk, exit));
        if q.disk == 0 {
            Arc { disk: 0, index: q.label - 1 }
        } else {
            Arc { disk: q.disk, index: q.label % self.points[q.disk] }
        }
    }

    fn trace_faces(&self) -> Vec<Vec<Arc>> {
        let mut seen: Vec<Vec<bool>> = self.points.iter().map(|&m| vec![false; m]).collect();
        let mut faces = Vec::new();
        for (d, &m) in self.points.iter().enumerate() {
            for i in 0..m {
                if seen[d][i] {
                    continue;
                }
                let start = Arc { disk: d, index: i };
                let mut face = Vec::new();
                let mut cur = start;
                loop {
                    seen[cur.disk][cur.index] = true;
                    face.push(cur);
                    cur = self.next_arc(cur);
                    if cur == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Union-find over disks; the outer disk is 0.
    fn disk_components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.points.len());
        for (a, b) in self.strings() {
            uf.union(a.disk, b.disk);
        }
        uf
    }

    /// Every inner disk is joined to the outer boundary through strings and disks.
    pub fn is_connected(&self) -> bool {
        if self.points[0] == 0 {
            return false;
        }
        let mut uf = self.disk_components();
        (1..self.points.len()).all(|d| uf.find(d) == uf.find(0))
    }

    fn check_planar(&self) -> Result<(), TangleError> {
        let faces = self.trace_faces();
        for face in &faces {
            let shaded = face[0].index % 2 == 1;
            if face.iter().any(|a| (a.index % 2 == 1) != shaded) {
                return Err(TangleError::Invalid("region with inconsistent shading".into()));
            }
        }
        let total: usize = self.points.iter().sum();
        let inner = self.points.len() - 1;
        let expected = if self.points[0] > 0 {
            if !self.is_connected() {
                return Err(TangleError::UnsupportedTangleShape("a component floats free of the outer boundary".into()));
            }
            total / 2 + 1 - inner
        } else {
            if inner == 0 {
                return Ok(());
            }
            let mut uf = self.disk_components();
            if (2..self.points.len()).any(|d| uf.find(d) != uf.find(1)) {
                return Err(TangleError::UnsupportedTangleShape("closed tangle with several components".into()));
            }
            total / 2 + 2 - inner
        };
        if faces.len() != expected {
            return Err(TangleError::Invalid(format!(
                "string matching is not planar ({} regions, {} expected)",
                faces.len(),
                expected
            )));
        }
        Ok(())
    }

    /// Regions of the tangle other than closed-loop interiors, each with its boundary arcs.
    /// An outer disk without points contributes the arc `(0, 0)` to the region it bounds.
    pub fn regions(&self) -> Vec<Region> {
        let mut regions: Vec<Region> = self
            .trace_faces()
            .into_iter()
            .map(|arcs| Region { shaded: arcs[0].index % 2 == 1, arcs, holes: 0 })
            .collect();
        if self.points[0] == 0 {
            match self.outer_face {
                Some(face) => {
                    let r = regions.iter_mut().find(|r| r.arcs.contains(&face)).expect("outer face arc is traced");
                    r.arcs.push(Arc { disk: 0, index: 0 });
                    r.holes = 1;
                }
                None => regions.push(Region { arcs: vec![Arc { disk: 0, index: 0 }], shaded: false, holes: 0 }),
            }
        }
        regions
    }

    /// `π_T`: outer points are related when joined through strings and inner disks.
    pub fn pi(&self) -> Result<Partition, TangleError> {
        if !self.is_connected() {
            return Err(TangleError::NotConnected);
        }
        let n = self.points[0];
        let offset = self.points.len();
        let mut uf = UnionFind::new(offset + n);
        for (a, b) in self.strings() {
            let node = |p: Point| if p.disk == 0 { offset + p.label - 1 } else { p.disk };
            uf.union(node(a), node(b));
        }
        let labels: Vec<usize> = (0..n).map(|i| uf.find(offset + i)).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Outer points are related when they bound the same shaded region.
    pub fn shading_partition(&self) -> Result<Partition, TangleError> {
        if !self.is_connected() {
            return Err(TangleError::NotConnected);
        }
        let mut face_of: BTreeMap<Arc, usize> = BTreeMap::new();
        for (f, face) in self.trace_faces().into_iter().enumerate() {
            for a in face {
                face_of.insert(a, f);
            }
        }
        let labels: Vec<usize> = (1..=self.points[0])
            .map(|i| {
                let index = if i % 2 == 1 { i } else { i - 1 };
                face_of[&Arc { disk: 0, index }]
            })
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Reflection in a diameter, relabelled so first regions stay first.
    pub fn involution(&self) -> Tangle {
        let flip = |p: Point| {
            let m = self.points[p.disk];
            Point::new(p.disk, m + 1 - p.label)
        };
        let strings: Vec<(Point, Point)> = self.strings().into_iter().map(|(a, b)| (flip(a), flip(b))).collect();
        let outer_face = self.outer_face.map(|a| {
            let m = self.points[a.disk];
            Arc { disk: a.disk, index: (m - a.index) % m }
        });
        Tangle::assemble(self.points.clone(), &strings, self.loops, outer_face).expect("reflection of a planar tangle")
    }

    /// Inserts `inner` into inner disk `disk` (1-based). Disks of the result are the disks
    /// of `self` before `disk`, then those of `inner`, then the rest of `self`.
    pub fn compose(&self, disk: usize, inner: &Tangle) -> Result<Tangle, TangleError> {
        if disk == 0 || disk >= self.points.len() {
            return Err(TangleError::NoSuchDisk(disk));
        }
        if self.points[disk] != inner.points[0] {
            return Err(TangleError::DegreeMismatch { expected: self.points[disk] / 2, found: inner.outer_degree() });
        }
        let extra = inner.points.len() - 1;
        // New disk index for disks of self (other than `disk`) and of inner (other than 0).
        let outer_index = |d: usize| if d < disk { d } else { d + extra - 1 };
        let inner_index = |d: usize| disk + d - 1;
        let mut points: Vec<usize> = Vec::new();
        points.extend_from_slice(&self.points[..disk]);
        points.extend_from_slice(&inner.points[1..]);
        points.extend_from_slice(&self.points[disk + 1..]);

        // Walk a string starting at a surviving point until it reaches another survivor.
        #[derive(Clone, Copy, PartialEq)]
        enum Side {
            Host,
            Guest,
        }
        let mut used_glue = vec![false; self.points[disk]];
        let walk = |start_side: Side, start: Point, used: &mut Vec<bool>| -> (Side, Point) {
            let (mut side, mut p) = (start_side, start);
            loop {
                let q = match side {
                    Side::Host => self.partner(p),
                    Side::Guest => inner.partner(p),
                };
                match side {
                    Side::Host if q.disk == disk => {
                        used[q.label - 1] = true;
                        side = Side::Guest;
                        p = Point::outer(q.label);
                    }
                    Side::Guest if q.disk == 0 => {
                        used[q.label - 1] = true;
                        side = Side::Host;
                        p = Point::new(disk, q.label);
                    }
                    _ => return (side, q),
                }
            }
        };
        let relabel = |side: Side, p: Point| match side {
            Side::Host => Point::new(outer_index(p.disk), p.label),
            Side::Guest => Point::new(inner_index(p.disk), p.label),
        };
        let mut strings = Vec::new();
        let mut starts: Vec<(Side, Point)> = Vec::new();
        for (d, &m) in self.points.iter().enumerate() {
            if d != disk {
                starts.extend((1..=m).map(|l| (Side::Host, Point::new(d, l))));
            }
        }
        for (d, &m) in inner.points.iter().enumerate().skip(1) {
            starts.extend((1..=m).map(|l| (Side::Guest, Point::new(d, l))));
        }
        for (side, p) in starts {
            let (end_side, q) = walk(side, p, &mut used_glue);
            let (a, b) = (relabel(side, p), relabel(end_side, q));
            if a < b {
                strings.push((a, b));
            }
        }
        // Glue points never reached from a survivor lie on closed loops.
        let mut loops = self.loops + inner.loops;
        for l in 1..=self.points[disk] {
            if used_glue[l - 1] {
                continue;
            }
            loops += 1;
            let mut p = Point::new(disk, l);
            loop {
                used_glue[p.label - 1] = true;
                let q = inner.partner(Point::outer(p.label));
                let back = self.partner(Point::new(disk, q.label));
                used_glue[q.label - 1] = true;
                p = back;
                if used_glue[p.label - 1] {
                    break;
                }
            }
        }
        let outer_face = match self.outer_face {
            None => None,
            Some(a) if a.disk != disk => Some(Arc { disk: outer_index(a.disk), index: a.index }),
            Some(a) => self.glued_face_survivor(disk, inner, a, &outer_index, &inner_index),
        };
        if points[0] == 0 && points.len() > 1 && outer_face.is_none() {
            return Err(TangleError::UnsupportedTangleShape("composite outer region has no boundary arc".into()));
        }
        Tangle::assemble(points, &strings, loops, outer_face)
    }

    /// For a closed host whose outer-facing arc lies on the disk being filled: an arc of
    /// the composite lying in the same region.
    fn glued_face_survivor(
        &self,
        disk: usize,
        inner: &Tangle,
        start: Arc,
        outer_index: &dyn Fn(usize) -> usize,
        inner_index: &dyn Fn(usize) -> usize,
    ) -> Option<Arc> {
        let host_faces = self.trace_faces();
        let guest_faces = inner.trace_faces();
        let host_face_of = |a: Arc| host_faces.iter().position(|f| f.contains(&a)).unwrap();
        let guest_face_of = |a: Arc| guest_faces.iter().position(|f| f.contains(&a)).unwrap();
        let mut queue = VecDeque::from([(true, host_face_of(start))]);
        let mut seen = std::collections::HashSet::new();
        while let Some((host, f)) = queue.pop_front() {
            if !seen.insert((host, f)) {
                continue;
            }
            let face = if host { &host_faces[f] } else { &guest_faces[f] };
            for a in face {
                match (host, a.disk) {
                    (true, d) if d == disk => queue.push_back((false, guest_face_of(Arc { disk: 0, index: a.index }))),
                    (true, d) => return Some(Arc { disk: outer_index(d), index: a.index }),
                    (false, 0) => queue.push_back((true, host_face_of(Arc { disk, index: a.index }))),
                    (false, d) => return Some(Arc { disk: inner_index(d), index: a.index }),
                }
            }
        }
        None
    }

    /// Inner disks renumbered in order of first visit from the outer boundary, so that
    /// tangles differing only by disk numbering compare equal.
    pub fn canonical(&self) -> Tangle {
        let n = self.points.len();
        let mut order = vec![usize::MAX; n];
        order[0] = 0;
        let mut next = 1;
        let mut queue = VecDeque::from([0usize]);
        if self.points[0] == 0 && n > 1 {
            let d = self.outer_face.map_or(1, |a| a.disk);
            order[d] = next;
            next += 1;
            queue.push_back(d);
        }
        while let Some(d) = queue.pop_front() {
            for l in 1..=self.points[d] {
                let q = self.partner(Point::new(d, l));
                if order[q.disk] == usize::MAX {
                    order[q.disk] = next;
                    next += 1;
                    queue.push_back(q.disk);
                }
            }
        }
        for slot in order.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        self.permute_disks(&order)
    }

    /// Renumbers disk `d` as `order[d]` (the outer disk must stay 0).
    pub fn permute_disks(&self, order: &[usize]) -> Tangle {
        let mut points = vec![0; self.points.len()];
        for (d, &m) in self.points.iter().enumerate() {
            points[order[d]] = m;
        }
        let map = |p: Point| Point::new(order[p.disk], p.label);
        let strings: Vec<(Point, Point)> = self.strings().into_iter().map(|(a, b)| (map(a), map(b))).collect();
        let outer_face = self.outer_face.map(|a| Arc { disk: order[a.disk], index: a.index });
        Tangle::assemble(points, &strings, self.loops, outer_face).expect("renumbering keeps planarity")
    }

    /// Equality up to the numbering of inner disks.
    pub fn equivalent(&self, other: &Tangle) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tangle(outer {}; disks {:?}", self.outer_degree(), self.inner_degrees())?;
        for (a, b) in self.strings() {
            write!(f, "; {}.{}-{}.{}", a.disk, a.label, b.disk, b.label)?;
        }
        if self.loops > 0 {
            write!(f, "; loops {}", self.loops)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
