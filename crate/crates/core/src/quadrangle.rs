//! Finite generalized quadrangles as abstract incidence structures.
//!
//! Classical models (W(q), Q(4,q), H(4,4)) are compiled from projective
//! coordinates down to the abstract form: points are `0..n_points` and each
//! line is a sorted list of point indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::galois::Fe;
use crate::graph::Graph;
use crate::projective::{Geometry, ProjectiveError};

/// Unverified incidence data: a point count and point lists per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawIncidence {
    pub n_points: usize,
    pub lines: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotGq {
    Empty,
    PointOutOfRange {
        line: usize,
        point: usize,
    },
    RepeatedPoint {
        line: usize,
        point: usize,
    },
    RepeatedLine {
        first: usize,
        second: usize,
    },
    LineSize {
        line: usize,
        expected: usize,
        found: usize,
    },
    PointDegree {
        point: usize,
        expected: usize,
        found: usize,
    },
    Degenerate {
        s: usize,
        t: usize,
    },
    TwoCommonLines {
        p1: usize,
        p2: usize,
    },
    /// A non-incident point-line pair with `joins` connecting flags instead
    /// of exactly one.
    Axiom {
        point: usize,
        line: usize,
        joins: usize,
    },
    NotThick {
        s: usize,
        t: usize,
    },
}

impl fmt::Display for NotGq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotGq::Empty => f.write_str("no points or no lines"),
            NotGq::PointOutOfRange { line, point } => write!(f, "line {line} names point {point} out of range"),
            NotGq::RepeatedPoint { line, point } => write!(f, "line {line} lists point {point} twice"),
            NotGq::RepeatedLine { first, second } => write!(f, "lines {first} and {second} coincide"),
            NotGq::LineSize { line, expected, found } => {
                write!(f, "line {line} has {found} points, expected {expected}")
            }
            NotGq::PointDegree { point, expected, found } => {
                write!(f, "point {point} lies on {found} lines, expected {expected}")
            }
            NotGq::Degenerate { s, t } => write!(f, "order ({s},{t}) is degenerate"),
            NotGq::TwoCommonLines { p1, p2 } => write!(f, "points {p1} and {p2} share two lines"),
            NotGq::Axiom { point, line, joins } => {
                write!(f, "point {point} and line {line} are joined by {joins} flags instead of exactly one")
            }
            NotGq::NotThick { s, t } => write!(f, "order ({s},{t}) is not thick"),
        }
    }
}

impl core::error::Error for NotGq {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Thickness {
    Required,
    Any,
}

/// A verified generalized quadrangle of order (s, t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGq {
    s: usize,
    t: usize,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    line_sets: Vec<BitSet>,
    collinear: Vec<BitSet>,
    line_meets: Vec<BitSet>,
}

impl IncidenceGq {
    /// Checks the axioms and certifies the order.
    pub fn verify(raw: &RawIncidence, thickness: Thickness) -> Result<IncidenceGq, NotGq> {
        let np = raw.n_points;
        if np == 0 || raw.lines.is_empty() {
            return Err(NotGq::Empty);
        }
        let mut lines = Vec::with_capacity(raw.lines.len());
        for (li, pts) in raw.lines.iter().enumerate() {
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(NotGq::RepeatedPoint { line: li, point: w[0] });
                }
            }
            if let Some(&p) = sorted.iter().find(|&&p| p >= np) {
                return Err(NotGq::PointOutOfRange { line: li, point: p });
            }
            lines.push(sorted);
        }
        let s1 = lines[0].len();
        for (li, l) in lines.iter().enumerate() {
            if l.len() != s1 {
                return Err(NotGq::LineSize { line: li, expected: s1, found: l.len() });
            }
        }
        let mut point_lines = vec![Vec::new(); np];
        for (li, l) in lines.iter().enumerate() {
            for &p in l {
                point_lines[p].push(li);
            }
        }
        let t1 = point_lines[0].len();
        for (p, ls) in point_lines.iter().enumerate() {
            if ls.len() != t1 {
                return Err(NotGq::PointDegree { point: p, expected: t1, found: ls.len() });
            }
        }
        if s1 < 2 || t1 < 2 {
            return Err(NotGq::Degenerate { s: s1.saturating_sub(1), t: t1.saturating_sub(1) });
        }
        let (s, t) = (s1 - 1, t1 - 1);

        let line_sets: Vec<BitSet> = lines.iter().map(|l| BitSet::from_indices(np, l.iter().copied())).collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if line_sets[i] == line_sets[j] {
                    return Err(NotGq::RepeatedLine { first: i, second: j });
                }
            }
        }
        let mut collinear = vec![BitSet::new(np); np];
        for l in &lines {
            for &a in l {
                for &b in l {
                    if a == b {
                        continue;
                    }
                    if collinear[a].contains(b) {
                        let (p1, p2) = if a < b { (a, b) } else { (b, a) };
                        return Err(NotGq::TwoCommonLines { p1, p2 });
                    }
                    collinear[a].insert(b);
                }
            }
        }
        for (p, near) in collinear.iter().enumerate() {
            for (li, set) in line_sets.iter().enumerate() {
                if set.contains(p) {
                    continue;
                }
                let joins = near.intersection_count(set);
                if joins != 1 {
                    return Err(NotGq::Axiom { point: p, line: li, joins });
                }
            }
        }
        if thickness == Thickness::Required && (s < 2 || t < 2) {
            return Err(NotGq::NotThick { s, t });
        }
        let nl = lines.len();
        let line_meets = line_sets
            .iter()
            .map(|a| BitSet::from_indices(nl, (0..nl).filter(|&j| !a.is_disjoint(&line_sets[j]))))
            .collect();
        Ok(IncidenceGq { s, t, lines, point_lines, line_sets, collinear, line_meets })
    }

    pub fn order(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn is_thick(&self) -> bool {
        self.s >= 2 && self.t >= 2
    }

    pub fn n_points(&self) -> usize {
        self.point_lines.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_set(&self, l: usize) -> &BitSet {
        &self.line_sets[l]
    }

    pub fn lines_on(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    /// Distinct points on a common line.
    #[inline]
    pub fn collinear(&self, a: usize, b: usize) -> bool {
        self.collinear[a].contains(b)
    }

    pub fn collinear_set(&self, p: usize) -> &BitSet {
        &self.collinear[p]
    }

    /// Lines sharing a point (a line meets itself).
    #[inline]
    pub fn lines_meet(&self, a: usize, b: usize) -> bool {
        self.line_meets[a].contains(b)
    }

    #[inline]
    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.line_sets[l].contains(p)
    }

    /// The line through two distinct collinear points.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.point_lines[a].iter().copied().find(|&l| self.line_sets[l].contains(b))
    }

    pub fn raw(&self) -> RawIncidence {
        RawIncidence { n_points: self.n_points(), lines: self.lines.clone() }
    }

    /// Points and lines exchanged; the result has order (t, s).
    pub fn dual(&self) -> IncidenceGq {
        let raw = RawIncidence { n_points: self.n_lines(), lines: self.point_lines.clone() };
        IncidenceGq::verify(&raw, Thickness::Any).expect("dual of a generalized quadrangle")
    }

    /// All flags ordered by (point, line).
    pub fn flags(&self) -> Vec<Flag> {
        (0..self.n_points())
            .flat_map(|p| self.point_lines[p].iter().map(move |&l| Flag { point: p, line: l }))
            .collect()
    }

    /// Flags are opposite when their lines are disjoint and their points
    /// are distinct and non-collinear.
    #[inline]
    pub fn flags_opposite(&self, a: &Flag, b: &Flag) -> bool {
        a.point != b.point && !self.collinear(a.point, b.point) && !self.lines_meet(a.line, b.line)
    }
}

/// Incident point-line pair of a generalized quadrangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub point: usize,
    pub line: usize,
}

/// Largest number of flags for which the opposition graph is built.
pub const FLAG_GRAPH_MAX_FLAGS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TooManyFlags(pub usize);

impl fmt::Display for TooManyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} flags exceed the limit of {FLAG_GRAPH_MAX_FLAGS}", self.0)
    }
}

impl core::error::Error for TooManyFlags {}

/// Flags of a generalized quadrangle with their opposition graph.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    pub gq: IncidenceGq,
    pub flags: Vec<Flag>,
    pub graph: Graph,
}

impl FlagComplex {
    pub fn new(gq: IncidenceGq) -> Result<Self, TooManyFlags> {
        let flags = gq.flags();
        if flags.len() > FLAG_GRAPH_MAX_FLAGS {
            return Err(TooManyFlags(flags.len()));
        }
        let graph = Graph::from_fn(flags.len(), |i, j| gq.flags_opposite(&flags[i], &flags[j]));
        Ok(FlagComplex { gq, flags, graph })
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.flags.binary_search(f).ok()
    }
}

/// A generalized quadrangle realized in a projective space, with the
/// projective ids of its points and lines.
#[derive(Debug, Clone)]
pub struct ClassicalGq {
    pub name: &'static str,
    pub gq: IncidenceGq,
    pub geometry: Geometry,
    /// GQ point index to projective point id (ascending).
    pub point_ids: Vec<usize>,
    /// GQ line index to projective line id (ascending).
    pub line_ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    Unsupported(u32),
    Projective(ProjectiveError),
    NotGq(NotGq),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Unsupported(q) => write!(f, "model not available for q = {q}"),
            ModelError::Projective(e) => e.fmt(f),
            ModelError::NotGq(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for ModelError {}

impl From<ProjectiveError> for ModelError {
    fn from(e: ProjectiveError) -> Self {
        ModelError::Projective(e)
    }
}

fn from_point_predicate(
    name: &'static str,
    geometry: Geometry,
    on: impl Fn(&Geometry, &[Fe]) -> bool,
) -> Result<ClassicalGq, ModelError> {
    let np = geometry.points().len();
    let mut index = vec![usize::MAX; np];
    let mut point_ids = Vec::new();
    for (p, slot) in index.iter_mut().enumerate() {
        if on(&geometry, geometry.coords(p)) {
            *slot = point_ids.len();
            point_ids.push(p);
        }
    }
    let mut line_ids = Vec::new();
    let mut lines = Vec::new();
    for l in 0..geometry.lines().len() {
        let pts = geometry.line_points(l);
        if pts.iter().all(|&p| index[p] != usize::MAX) {
            line_ids.push(l);
            lines.push(pts.iter().map(|&p| index[p]).collect());
        }
    }
    let raw = RawIncidence { n_points: point_ids.len(), lines };
    let gq = IncidenceGq::verify(&raw, Thickness::Any).map_err(ModelError::NotGq)?;
    Ok(ClassicalGq { name, gq, geometry, point_ids, line_ids })
}

/// Symplectic quadrangle W(q): all points of PG(3, q) and the lines totally
/// isotropic for x0 y1 - x1 y0 + x2 y3 - x3 y2.
pub fn w_symplectic(q: u32) -> Result<ClassicalGq, ModelError> {
    if !(2..=4).contains(&q) {
        return Err(ModelError::Unsupported(q));
    }
    let geometry = Geometry::new(3, q)?;
    let f = geometry.field().clone();
    let form = |x: &[Fe], y: &[Fe]| {
        let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
        let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
        f.add(a, b)
    };
    let np = geometry.points().len();
    let mut line_ids = Vec::new();
    let mut lines = Vec::new();
    for (l, sub) in geometry.lines().iter().enumerate() {
        if form(sub.row(0), sub.row(1)).is_zero() {
            line_ids.push(l);
            lines.push(geometry.line_points(l).to_vec());
        }
    }
    let raw = RawIncidence { n_points: np, lines };
    let gq = IncidenceGq::verify(&raw, Thickness::Any).map_err(ModelError::NotGq)?;
    Ok(ClassicalGq { name: "W", gq, geometry, point_ids: (0..np).collect(), line_ids })
}

/// Parabolic quadric Q(4, q): x0^2 + x1 x2 + x3 x4 = 0 in PG(4, q).
pub fn q4_quadric(q: u32) -> Result<ClassicalGq, ModelError> {
    if !(2..=4).contains(&q) {
        return Err(ModelError::Unsupported(q));
    }
    from_point_predicate("Q4", Geometry::new(4, q)?, |g, x| parabolic_form(g, x).is_zero())
}

pub fn parabolic_form(g: &Geometry, x: &[Fe]) -> Fe {
    let f = g.field();
    f.add(f.add(f.mul(x[0], x[0]), f.mul(x[1], x[2])), f.mul(x[3], x[4]))
}

/// Hermitian variety H(4, 4): sum of x_i^3 = 0 in PG(4, 4), conjugation
/// a -> a^2.
pub fn h4_hermitian() -> Result<ClassicalGq, ModelError> {
    from_point_predicate("H4", Geometry::new(4, 4)?, |g, x| {
        let f = g.field();
        x.iter().fold(Fe::ZERO, |acc, &c| f.add(acc, f.pow(c, 3))).is_zero()
    })
}

/// Subquadrangle of order (s, 1): a grid of (s+1)^2 points and 2(s+1)
/// lines, given by GQ indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Grid {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidGrid(pub &'static str);

impl fmt::Display for InvalidGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid grid: {}", self.0)
    }
}

impl core::error::Error for InvalidGrid {}

impl Grid {
    /// Confirms that the grid is a subquadrangle of order (s, 1) of `gq`.
    pub fn validate(&self, gq: &IncidenceGq) -> Result<(), InvalidGrid> {
        let (s, _) = gq.order();
        if self.points.len() != (s + 1) * (s + 1) || self.lines.len() != 2 * (s + 1) {
            return Err(InvalidGrid("wrong size"));
        }
        if self.points.iter().any(|&p| p >= gq.n_points()) || self.lines.iter().any(|&l| l >= gq.n_lines()) {
            return Err(InvalidGrid("index out of range"));
        }
        let pset = BitSet::from_indices(gq.n_points(), self.points.iter().copied());
        if self.lines.iter().any(|&l| !gq.line_set(l).is_subset(&pset)) {
            return Err(InvalidGrid("grid line leaves the point set"));
        }
        let local = |p: usize| self.points.binary_search(&p).ok();
        if self.points.windows(2).any(|w| w[0] >= w[1]) || self.lines.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InvalidGrid("indices not strictly ascending"));
        }
        let raw = RawIncidence {
            n_points: self.points.len(),
            lines: self.lines.iter().map(|&l| gq.line(l).iter().map(|&p| local(p).unwrap()).collect()).collect(),
        };
        match IncidenceGq::verify(&raw, Thickness::Any) {
            Ok(sub) if sub.order() == (s, 1) => {}
            _ => return Err(InvalidGrid("not a subquadrangle of order (s,1)")),
        }
        Ok(())
    }

    /// The grid lines through a grid point.
    pub fn lines_through(&self, gq: &IncidenceGq, p: usize) -> Vec<usize> {
        self.lines.iter().copied().filter(|&l| gq.incident(p, l)).collect()
    }
}

/// Grids of Q(4, q) found as hyperplane sections with (q+1)^2 points that
/// carry 2(q+1) quadric lines, in order of the hyperplane's dual point.
pub fn hyperplane_grids(model: &ClassicalGq) -> Vec<Grid> {
    let g = &model.geometry;
    let f = g.field();
    let (s, _) = model.gq.order();
    let mut out = Vec::new();
    for h in 0..g.points().len() {
        let a = g.coords(h);
        let points: Vec<usize> = (0..model.point_ids.len())
            .filter(|&i| {
                let x = g.coords(model.point_ids[i]);
                crate::linalg::dot(f, a, x).is_zero()
            })
            .collect();
        if points.len() != (s + 1) * (s + 1) {
            continue;
        }
        let pset = BitSet::from_indices(model.gq.n_points(), points.iter().copied());
        let lines: Vec<usize> = (0..model.gq.n_lines()).filter(|&l| model.gq.line_set(l).is_subset(&pset)).collect();
        let grid = Grid { points, lines };
        if grid.validate(&model.gq).is_ok() && !out.contains(&grid) {
            out.push(grid);
        }
    }
    out
}

/// Hyperplane sections of a Q(4, q) model that meet every line of the
/// quadric in exactly one point, in order of the hyperplane's dual point.
pub fn hyperplane_ovoids(model: &ClassicalGq) -> impl Iterator<Item = Vec<usize>> + '_ {
    let g = &model.geometry;
    let f = g.field();
    (0..g.points().len()).filter_map(move |h| {
        let a = g.coords(h);
        let points: Vec<usize> = (0..model.point_ids.len())
            .filter(|&i| crate::linalg::dot(f, a, g.coords(model.point_ids[i])).is_zero())
            .collect();
        let pset = BitSet::from_indices(model.gq.n_points(), points.iter().copied());
        (0..model.gq.n_lines()).all(|l| model.gq.line_set(l).intersection_count(&pset) == 1).then_some(points)
    })
}

/// Every grid of an order-(2, s') quadrangle with at most 24 points, by
/// testing each 9-point subset for closure as a 3 x 3 grid.
pub fn exhaustive_grids(gq: &IncidenceGq) -> Option<Vec<Grid>> {
    let (s, _) = gq.order();
    let n = gq.n_points();
    if s != 2 || n > 24 {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(9);
    fn rec(gq: &IncidenceGq, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Grid>) {
        if cur.len() == 9 {
            let pset = BitSet::from_indices(gq.n_points(), cur.iter().copied());
            let lines: Vec<usize> = (0..gq.n_lines()).filter(|&l| gq.line_set(l).is_subset(&pset)).collect();
            let grid = Grid { points: cur.clone(), lines };
            if grid.validate(gq).is_ok() {
                out.push(grid);
            }
            return;
        }
        for p in start..gq.n_points() {
            if 9 - cur.len() > gq.n_points() - p {
                break;
            }
            cur.push(p);
            rec(gq, p + 1, cur, out);
            cur.pop();
        }
    }
    rec(gq, 0, &mut cur, &mut out);
    Some(out)
}

/// Point and line bijection from one quadrangle onto another preserving
/// incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Isomorphism {
    pub fn check(&self, a: &IncidenceGq, b: &IncidenceGq) -> bool {
        if a.n_points() != b.n_points() || a.n_lines() != b.n_lines() {
            return false;
        }
        let mut seen = BitSet::new(b.n_lines());
        for (l, pts) in a.lines().iter().enumerate() {
            let img = self.lines[l];
            if seen.contains(img) {
                return false;
            }
            seen.insert(img);
            if pts.iter().any(|&p| !b.incident(self.points[p], img)) {
                return false;
            }
        }
        let mut pseen = BitSet::new(b.n_points());
        self.points.iter().all(|&p| {
            let fresh = !pseen.contains(p);
            pseen.insert(p);
            fresh
        })
    }
}

/// Finds an isomorphism `a -> b` by backtracking on the collinearity
/// relation. Deterministic: points of `a` are mapped in order of most
/// already-mapped collinear neighbours (lowest index on ties) and candidate
/// images are tried in ascending order.
pub fn find_isomorphism(a: &IncidenceGq, b: &IncidenceGq) -> Option<Isomorphism> {
    if a.order() != b.order() || a.n_points() != b.n_points() || a.n_lines() != b.n_lines() {
        return None;
    }
    let n = a.n_points();
    let mut map = vec![usize::MAX; n];
    let mut used = BitSet::new(n);
    let mut order: Vec<usize> = Vec::with_capacity(n);

    fn rec(a: &IncidenceGq, b: &IncidenceGq, map: &mut Vec<usize>, used: &mut BitSet, order: &mut Vec<usize>) -> bool {
        let n = a.n_points();
        if order.len() == n {
            return true;
        }
        // next point: most mapped collinear neighbours
        let mut best = usize::MAX;
        let mut best_score = 0usize;
        for (p, &m) in map.iter().enumerate() {
            if m != usize::MAX {
                continue;
            }
            let score = order.iter().filter(|&&m| a.collinear(p, m)).count() + 1;
            if score > best_score {
                best_score = score;
                best = p;
            }
        }
        let p = best;
        let mut cand = used.complement();
        for &m in order.iter() {
            let img = map[m];
            if a.collinear(p, m) {
                cand.intersect_with(b.collinear_set(img));
            } else {
                cand.difference_with(b.collinear_set(img));
            }
        }
        for c in cand.iter() {
            map[p] = c;
            used.insert(c);
            order.push(p);
            if rec(a, b, map, used, order) {
                return true;
            }
            order.pop();
            used.remove(c);
            map[p] = usize::MAX;
        }
        false
    }

    if !rec(a, b, &mut map, &mut used, &mut order) {
        return None;
    }
    let lines = a.lines().iter().map(|pts| b.join(map[pts[0]], map[pts[1]]).expect("collinearity preserved")).collect();
    let iso = Isomorphism { points: map, lines };
    iso.check(a, b).then_some(iso)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid3() -> RawIncidence {
        // rows {0,1,2},{3,4,5},{6,7,8}; columns {0,3,6},{1,4,7},{2,5,8}
        RawIncidence {
            n_points: 9,
            lines: vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]],
        }
    }

    #[test]
    fn grid_is_not_thick() {
        assert_eq!(IncidenceGq::verify(&grid3(), Thickness::Required), Err(NotGq::NotThick { s: 2, t: 1 }));
        let g = IncidenceGq::verify(&grid3(), Thickness::Any).unwrap();
        assert_eq!(g.order(), (2, 1));
        assert!(!g.is_thick());
        let pair = RawIncidence { n_points: 2, lines: vec![vec![0, 1]] };
        assert_eq!(IncidenceGq::verify(&pair, Thickness::Any), Err(NotGq::Degenerate { s: 1, t: 0 }));
    }

    #[test]
    fn axiom_violations_are_named() {
        // Fano plane: two lines always meet, so a point off a line sees
        // every point of it
        let fano = RawIncidence {
            n_points: 7,
            lines: vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        };
        assert!(matches!(IncidenceGq::verify(&fano, Thickness::Any), Err(NotGq::Axiom { joins: 3, .. })));
        let bad = RawIncidence { n_points: 3, lines: vec![vec![0, 1], vec![0, 1, 2]] };
        assert_eq!(IncidenceGq::verify(&bad, Thickness::Any), Err(NotGq::LineSize { line: 1, expected: 2, found: 3 }));
        let oob = RawIncidence { n_points: 2, lines: vec![vec![0, 5]] };
        assert_eq!(IncidenceGq::verify(&oob, Thickness::Any), Err(NotGq::PointOutOfRange { line: 0, point: 5 }));
        assert_eq!(
            IncidenceGq::verify(&RawIncidence { n_points: 0, lines: vec![] }, Thickness::Any),
            Err(NotGq::Empty)
        );
    }

    #[test]
    fn classical_orders_and_counts() {
        for q in 2..=4u32 {
            let w = w_symplectic(q).unwrap();
            let qq = q as usize;
            assert_eq!(w.gq.order(), (qq, qq));
            assert_eq!(w.gq.n_points(), (qq + 1) * (qq * qq + 1));
            let qd = q4_quadric(q).unwrap();
            assert_eq!(qd.gq.order(), (qq, qq));
            assert_eq!(qd.gq.n_lines(), (qq + 1) * (qq * qq + 1));
            assert!((0..qd.gq.n_points()).all(|p| qd.gq.lines_on(p).len() == qq + 1));
        }
        assert_eq!(w_symplectic(2).unwrap().gq.flags().len(), 45);
        assert_eq!(w_symplectic(3).unwrap().gq.flags().len(), 160);
        assert!(matches!(w_symplectic(5), Err(ModelError::Unsupported(5))));
        assert!(matches!(q4_quadric(1), Err(ModelError::Unsupported(1))));
    }

    #[test]
    fn hermitian_quadrangle() {
        let h = h4_hermitian().unwrap();
        assert_eq!(h.gq.order(), (4, 8));
        assert_eq!((h.gq.n_points(), h.gq.n_lines(), h.gq.flags().len()), (165, 297, 1485));
        for p in 0..h.gq.n_points() {
            assert_eq!(h.gq.collinear_set(p).count(), 36);
        }
        assert_eq!(h.gq.dual().order(), (8, 4));
    }

    #[test]
    fn dual_round_trip() {
        let w = w_symplectic(2).unwrap().gq;
        assert_eq!(w.dual().order(), (2, 2));
        assert_eq!(w.dual().dual(), w);
    }

    #[test]
    fn flag_opposition_w2() {
        let fc = FlagComplex::new(w_symplectic(2).unwrap().gq).unwrap();
        assert_eq!(fc.graph.order(), 45);
        assert_eq!(fc.graph.regular_degree(), Some(16));
        for (i, f) in fc.flags.iter().enumerate() {
            assert!(!fc.gq.flags_opposite(f, f));
            for (j, g) in fc.flags.iter().enumerate() {
                if fc.gq.collinear(f.point, g.point) {
                    assert!(!fc.graph.adjacent(i, j));
                }
            }
        }
        assert_eq!(FlagComplex::new(w_symplectic(3).unwrap().gq).unwrap().graph.order(), 160);
    }

    #[test]
    fn dual_flag_graph_is_relabeling() {
        let fc = FlagComplex::new(w_symplectic(3).unwrap().gq).unwrap();
        let dc = FlagComplex::new(fc.gq.dual()).unwrap();
        let image: Vec<usize> =
            fc.flags.iter().map(|f| dc.index_of(&Flag { point: f.line, line: f.point }).unwrap()).collect();
        for i in 0..fc.flags.len() {
            for j in 0..fc.flags.len() {
                assert_eq!(fc.graph.adjacent(i, j), dc.graph.adjacent(image[i], image[j]));
            }
        }
    }

    #[test]
    fn flag_guard() {
        let h = h4_hermitian().unwrap().gq;
        assert!(FlagComplex::new(h).is_ok());
        let big = q4_quadric(4).unwrap().gq.dual();
        // 425 flags, fine
        assert!(FlagComplex::new(big).is_ok());
    }

    #[test]
    fn q42_and_w2_are_isomorphic() {
        let w = w_symplectic(2).unwrap().gq;
        let qd = q4_quadric(2).unwrap().gq;
        let iso = find_isomorphism(&w, &qd).unwrap();
        assert!(iso.check(&w, &qd));
    }

    #[test]
    fn grids_of_q42_hyperplane_vs_exhaustive() {
        let m = q4_quadric(2).unwrap();
        let mut by_section = hyperplane_grids(&m);
        let mut brute = exhaustive_grids(&m.gq).unwrap();
        by_section.sort();
        brute.sort();
        assert!(!brute.is_empty());
        assert_eq!(by_section, brute);
        for g in &brute {
            assert_eq!((g.points.len(), g.lines.len()), (9, 6));
            for &p in &g.points {
                let off: Vec<usize> = m.gq.lines_on(p).iter().copied().filter(|l| !g.lines.contains(l)).collect();
                assert_eq!(off.len(), 1);
            }
        }
    }

    #[test]
    fn grid_validation_rejects_non_grids() {
        let m = q4_quadric(2).unwrap();
        let g = hyperplane_grids(&m).remove(0);
        assert!(g.validate(&m.gq).is_ok());
        let mut bad = g.clone();
        bad.lines.pop();
        assert!(bad.validate(&m.gq).is_err());
        let ov = hyperplane_ovoids(&m).next().unwrap();
        let fake = Grid { points: ov.iter().copied().chain(0..4).collect(), lines: g.lines.clone() };
        assert!(fake.validate(&m.gq).is_err());
    }
}
