//! Explicit independent sets, colorings and coverings of chamber and flag
//! opposition graphs, emitted as certificates.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::certificate::{Certificate, CertificateKind};
use crate::projective::ChamberComplex;
use crate::quadrangle::{find_isomorphism, hyperplane_ovoids, ClassicalGq, FlagComplex, Grid, InvalidGrid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    InvalidGrid(InvalidGrid),
    NotIncident { line: usize, plane: usize },
    OutOfRange(usize),
    WrongOrder { s: usize, t: usize },
    NotPartition { vertex: usize },
    NotLineIndependent { a: usize, b: usize },
    ConstructionFailed(&'static str),
}

impl From<InvalidGrid> for ConstructionError {
    fn from(e: InvalidGrid) -> Self {
        ConstructionError::InvalidGrid(e)
    }
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::InvalidGrid(e) => e.fmt(f),
            ConstructionError::NotIncident { line, plane } => write!(f, "line {line} is not in plane {plane}"),
            ConstructionError::OutOfRange(x) => write!(f, "element {x} out of range"),
            ConstructionError::WrongOrder { s, t } => write!(f, "construction does not apply to order ({s},{t})"),
            ConstructionError::NotPartition { vertex } => write!(f, "classes do not partition: vertex {vertex}"),
            ConstructionError::NotLineIndependent { a, b } => write!(f, "skew lines {a} and {b} share a class"),
            ConstructionError::ConstructionFailed(what) => write!(f, "construction failed: {what}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

/// A point or plane of PG(3, q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PgElement {
    Point(usize),
    Plane(usize),
}

impl fmt::Display for PgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgElement::Point(p) => write!(f, "point {p}"),
            PgElement::Plane(p) => write!(f, "plane {p}"),
        }
    }
}

/// A point or line of a generalized quadrangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GqElement {
    Point(usize),
    Line(usize),
}

impl fmt::Display for GqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GqElement::Point(p) => write!(f, "point {p}"),
            GqElement::Line(l) => write!(f, "line {l}"),
        }
    }
}

/// Vertex ids of F(x): chambers whose line passes through the point x, or
/// lies in the plane x.
pub fn pencil_pg_set(cc: &ChamberComplex, x: PgElement) -> Vec<usize> {
    let g = &cc.geometry;
    cc.chambers
        .iter()
        .enumerate()
        .filter(|(_, c)| match x {
            PgElement::Point(p) => g.point_on_line(p, c.line),
            PgElement::Plane(pl) => g.line_in_plane(c.line, pl),
        })
        .map(|(i, _)| i)
        .collect()
}

pub fn pencil_pg(cc: &ChamberComplex, x: PgElement) -> Result<Certificate, ConstructionError> {
    let bound = match x {
        PgElement::Point(p) => (p, cc.geometry.points().len()),
        PgElement::Plane(p) => (p, cc.geometry.planes().len()),
    };
    if bound.0 >= bound.1 {
        return Err(ConstructionError::OutOfRange(bound.0));
    }
    Ok(Certificate::independent_set(format!("pencil_pg {x} q={}", cc.q()), &cc.graph, pencil_pg_set(cc, x)))
}

/// Every point and plane of PG(3, q), points first.
pub fn pg_elements(cc: &ChamberComplex) -> Vec<PgElement> {
    let g = &cc.geometry;
    (0..g.points().len()).map(PgElement::Point).chain((0..g.planes().len()).map(PgElement::Plane)).collect()
}

/// Vertex ids of F(x): flags whose line passes through the point x, or
/// whose point lies on the line x.
pub fn pencil_gq_set(fc: &FlagComplex, x: GqElement) -> Vec<usize> {
    fc.flags
        .iter()
        .enumerate()
        .filter(|(_, f)| match x {
            GqElement::Point(p) => fc.gq.incident(p, f.line),
            GqElement::Line(l) => fc.gq.incident(f.point, l),
        })
        .map(|(i, _)| i)
        .collect()
}

pub fn pencil_gq(fc: &FlagComplex, x: GqElement) -> Result<Certificate, ConstructionError> {
    let (id, n) = match x {
        GqElement::Point(p) => (p, fc.gq.n_points()),
        GqElement::Line(l) => (l, fc.gq.n_lines()),
    };
    if id >= n {
        return Err(ConstructionError::OutOfRange(id));
    }
    let (s, t) = fc.gq.order();
    Ok(Certificate::independent_set(format!("pencil_gq {x} order=({s},{t})"), &fc.graph, pencil_gq_set(fc, x)))
}

pub fn gq_elements(fc: &FlagComplex) -> Vec<GqElement> {
    (0..fc.gq.n_points()).map(GqElement::Point).chain((0..fc.gq.n_lines()).map(GqElement::Line)).collect()
}

fn flag_index(fc: &FlagComplex, point: usize, line: usize) -> usize {
    fc.index_of(&crate::quadrangle::Flag { point, line }).expect("incident pair is a flag")
}

/// The nine flags (P, l) of an order-(2,2) quadrangle with P a grid point
/// and l the unique line on P outside the grid.
pub fn exceptional_gq22(fc: &FlagComplex, grid: &Grid) -> Result<Certificate, ConstructionError> {
    let (s, t) = fc.gq.order();
    if (s, t) != (2, 2) {
        return Err(ConstructionError::WrongOrder { s, t });
    }
    grid.validate(&fc.gq)?;
    let set = grid
        .points
        .iter()
        .map(|&p| {
            let outside: Vec<usize> = fc.gq.lines_on(p).iter().copied().filter(|l| !grid.lines.contains(l)).collect();
            debug_assert_eq!(outside.len(), 1);
            flag_index(fc, p, outside[0])
        })
        .collect();
    Ok(Certificate::independent_set(format!("exceptional_gq22 grid_points={:?}", grid.points), &fc.graph, set))
}

/// Flags (Q, l) for every line l on Q, and for each point P != Q on one of
/// the two grid lines h, h' through Q, the flag (P, m) with m the other grid
/// line on P. Has t + 1 + 2s elements.
pub fn sharpness_set(fc: &FlagComplex, grid: &Grid, q_point: usize) -> Result<Certificate, ConstructionError> {
    grid.validate(&fc.gq)?;
    if grid.points.binary_search(&q_point).is_err() {
        return Err(ConstructionError::InvalidGrid(InvalidGrid("point not on the grid")));
    }
    let through_q = grid.lines_through(&fc.gq, q_point);
    let mut set: Vec<usize> = fc.gq.lines_on(q_point).iter().map(|&l| flag_index(fc, q_point, l)).collect();
    for &h in &through_q {
        for &p in fc.gq.line(h) {
            if p == q_point {
                continue;
            }
            let other: Vec<usize> = grid.lines_through(&fc.gq, p).into_iter().filter(|&m| m != h).collect();
            set.push(flag_index(fc, p, other[0]));
        }
    }
    let (s, t) = fc.gq.order();
    Ok(Certificate::independent_set(
        format!("sharpness_set order=({s},{t}) grid_points={:?} q_point={q_point}", grid.points),
        &fc.graph,
        set,
    ))
}

/// The q^2 points of `plane` off `line` followed by the q planes on `line`
/// other than `plane`, in id order.
pub fn line_plane_family(cc: &ChamberComplex, line: usize, plane: usize) -> Result<Vec<PgElement>, ConstructionError> {
    let g = &cc.geometry;
    if line >= g.lines().len() {
        return Err(ConstructionError::OutOfRange(line));
    }
    if plane >= g.planes().len() {
        return Err(ConstructionError::OutOfRange(plane));
    }
    if !g.line_in_plane(line, plane) {
        return Err(ConstructionError::NotIncident { line, plane });
    }
    let mut family: Vec<PgElement> =
        g.plane_point_set(plane).iter().filter(|&p| !g.point_on_line(p, line)).map(PgElement::Point).collect();
    family.extend(g.line_planes(line).iter().copied().filter(|&pl| pl != plane).map(PgElement::Plane));
    Ok(family)
}

/// Lines of PG(3, q) incident with no member of the family.
pub fn lines_missed(cc: &ChamberComplex, family: &[PgElement]) -> Vec<usize> {
    let g = &cc.geometry;
    (0..g.lines().len())
        .filter(|&l| {
            !family.iter().any(|x| match *x {
                PgElement::Point(p) => g.point_on_line(p, l),
                PgElement::Plane(pl) => g.line_in_plane(l, pl),
            })
        })
        .collect()
}

/// Covering family of q^2 + q pencils and the proper coloring obtained by
/// first-hit assignment.
pub fn pg_coloring(
    cc: &ChamberComplex,
    line: usize,
    plane: usize,
) -> Result<(Certificate, Certificate), ConstructionError> {
    let family = line_plane_family(cc, line, plane)?;
    let sets: Vec<Vec<usize>> = family.iter().map(|&x| pencil_pg_set(cc, x)).collect();
    let tag = format!("pg_coloring q={} line={line} plane={plane}", cc.q());
    let cover = Certificate::new(CertificateKind::CoveringFamily, tag.clone(), &cc.graph, sets);
    let coloring = cover.first_hit_coloring(tag);
    Ok((cover, coloring))
}

/// Line classes induced by the family: each line goes to the first member
/// it is incident with.
pub fn line_plane_classes(
    cc: &ChamberComplex,
    line: usize,
    plane: usize,
) -> Result<Vec<Vec<usize>>, ConstructionError> {
    let g = &cc.geometry;
    let family = line_plane_family(cc, line, plane)?;
    let mut taken = BitSet::new(g.lines().len());
    let classes = family
        .iter()
        .map(|x| {
            (0..g.lines().len())
                .filter(|&l| match *x {
                    PgElement::Point(p) => g.point_on_line(p, l),
                    PgElement::Plane(pl) => g.line_in_plane(l, pl),
                })
                .filter(|&l| {
                    let fresh = !taken.contains(l);
                    taken.insert(l);
                    fresh
                })
                .collect()
        })
        .collect();
    Ok(classes)
}

/// Colors each chamber by the class of its line. Every class must consist
/// of pairwise meeting lines and the classes must partition the lines.
pub fn lift_line_coloring(cc: &ChamberComplex, classes: &[Vec<usize>]) -> Result<Certificate, ConstructionError> {
    let g = &cc.geometry;
    let nl = g.lines().len();
    let mut class_of = vec![usize::MAX; nl];
    for (ci, class) in classes.iter().enumerate() {
        for &l in class {
            if l >= nl {
                return Err(ConstructionError::OutOfRange(l));
            }
            if class_of[l] != usize::MAX {
                return Err(ConstructionError::NotPartition { vertex: l });
            }
            class_of[l] = ci;
        }
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if !g.lines_meet(a, b) {
                    return Err(ConstructionError::NotLineIndependent { a: a.min(b), b: a.max(b) });
                }
            }
        }
    }
    if let Some(l) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(ConstructionError::NotPartition { vertex: l });
    }
    let mut sets = vec![Vec::new(); classes.len()];
    for (i, c) in cc.chambers.iter().enumerate() {
        sets[class_of[c.line]].push(i);
    }
    Ok(Certificate::new(
        CertificateKind::ProperColoring,
        format!("lift_line_coloring q={} classes={}", cc.q(), classes.len()),
        &cc.graph,
        sets,
    ))
}

/// First hyperplane section of Q(4, q) (in dual point order) meeting every
/// quadric line exactly once, as GQ point indices.
pub fn ovoid_q4(model: &ClassicalGq) -> Result<Vec<usize>, ConstructionError> {
    let ovoid = hyperplane_ovoids(model)
        .next()
        .ok_or(ConstructionError::ConstructionFailed("no elliptic hyperplane section"))?;
    certify_ovoid(model, &ovoid)?;
    Ok(ovoid)
}

fn certify_ovoid(model: &ClassicalGq, ovoid: &[usize]) -> Result<(), ConstructionError> {
    let gq = &model.gq;
    let set = BitSet::from_indices(gq.n_points(), ovoid.iter().copied());
    let (s, t) = gq.order();
    if ovoid.len() != s * t + 1 || (0..gq.n_lines()).any(|l| gq.line_set(l).intersection_count(&set) != 1) {
        return Err(ConstructionError::ConstructionFailed("section is not an ovoid"));
    }
    Ok(())
}

/// A spread of W(q) obtained by pulling an ovoid of Q(4, q) back through an
/// isomorphism from the dual of W(q) onto Q(4, q). Returns W line indices.
pub fn spread_w(w: &ClassicalGq, q4: &ClassicalGq) -> Result<Vec<usize>, ConstructionError> {
    let ovoid = ovoid_q4(q4)?;
    let dual = w.gq.dual();
    let iso =
        find_isomorphism(&dual, &q4.gq).ok_or(ConstructionError::ConstructionFailed("no duality W(q) -> Q(4,q)"))?;
    let mut spread: Vec<usize> = (0..dual.n_points()).filter(|&x| ovoid.contains(&iso.points[x])).collect();
    spread.sort_unstable();
    let mut covered = BitSet::new(w.gq.n_points());
    for &l in &spread {
        if !covered.is_disjoint(w.gq.line_set(l)) {
            return Err(ConstructionError::ConstructionFailed("spread lines meet"));
        }
        covered.union_with(w.gq.line_set(l));
    }
    if covered.count() != w.gq.n_points() {
        return Err(ConstructionError::ConstructionFailed("spread does not cover"));
    }
    Ok(spread)
}

/// Proper coloring with classes F(x) for x in an ovoid (points) or spread
/// (lines).
pub fn coloring_from_ovoid_or_spread(fc: &FlagComplex, set: &[GqElement]) -> Result<Certificate, ConstructionError> {
    let n = fc.flags.len();
    let mut seen = BitSet::new(n);
    let mut classes = Vec::with_capacity(set.len());
    for &x in set {
        let cls = pencil_gq_set(fc, x);
        for &v in &cls {
            if seen.contains(v) {
                return Err(ConstructionError::NotPartition { vertex: v });
            }
            seen.insert(v);
        }
        classes.push(cls);
    }
    if let Some(v) = seen.complement().first() {
        return Err(ConstructionError::NotPartition { vertex: v });
    }
    let (s, t) = fc.gq.order();
    let kind = match set.first() {
        Some(GqElement::Line(_)) => "spread",
        _ => "ovoid",
    };
    Ok(Certificate::new(
        CertificateKind::ProperColoring,
        format!("coloring_from_{kind} order=({s},{t})"),
        &fc.graph,
        classes,
    ))
}

/// The pencils F(x) for the points x != p collinear with p.
pub fn h44_cover(fc: &FlagComplex, p: usize) -> Result<Certificate, ConstructionError> {
    if p >= fc.gq.n_points() {
        return Err(ConstructionError::OutOfRange(p));
    }
    let sets: Vec<Vec<usize>> = fc.gq.collinear_set(p).iter().map(|x| pencil_gq_set(fc, GqElement::Point(x))).collect();
    let (s, t) = fc.gq.order();
    Ok(Certificate::new(
        CertificateKind::CoveringFamily,
        format!("collinear_pencil_cover order=({s},{t}) point={p}"),
        &fc.graph,
        sets,
    ))
}
