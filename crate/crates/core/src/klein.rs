//! Klein correspondence between lines of PG(3, q) and points of the
//! hyperbolic quadric Q+(5, q), and the induced map on chambers.
//!
//! Plücker coordinates are ordered (p01, p02, p03, p12, p31, p23) with
//! quadratic form p01 p23 + p02 p31 + p03 p12.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::constructions::PgElement;
use crate::galois::{Fe, FieldTable};
use crate::projective::{enumerate_subspaces, Chamber, Geometry, ProjectiveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KleinError {
    Projective(ProjectiveError),
    NotThreeSpace,
    /// The image of a pencil is not a plane on the quadric.
    PencilImage(PgElement),
}

impl From<ProjectiveError> for KleinError {
    fn from(e: ProjectiveError) -> Self {
        KleinError::Projective(e)
    }
}

impl fmt::Display for KleinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleinError::Projective(e) => e.fmt(f),
            KleinError::NotThreeSpace => f.write_str("Klein correspondence needs PG(3,q)"),
            KleinError::PencilImage(x) => write!(f, "image of the pencil of {x} is not a quadric plane"),
        }
    }
}

impl core::error::Error for KleinError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Images of point pencils.
    Latin,
    /// Images of plane pencils.
    Greek,
}

/// Plane of PG(5, q) contained in the quadric.
#[derive(Debug, Clone)]
pub struct Generator {
    /// Id among all planes of PG(5, q).
    pub plane_id: usize,
    pub family: Family,
    pub points: BitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KleinChamber {
    pub point_id: usize,
    pub greek_plane_id: usize,
    pub latin_plane_id: usize,
}

pub fn quadratic_form(f: &FieldTable, x: &[Fe]) -> Fe {
    let a = f.mul(x[0], x[5]);
    let b = f.mul(x[1], x[4]);
    let c = f.mul(x[2], x[3]);
    f.add(f.add(a, b), c)
}

/// Polar form of [`quadratic_form`].
pub fn bilinear_form(f: &FieldTable, x: &[Fe], y: &[Fe]) -> Fe {
    [(0, 5), (5, 0), (1, 4), (4, 1), (2, 3), (3, 2)].iter().fold(Fe::ZERO, |acc, &(i, j)| f.add(acc, f.mul(x[i], y[j])))
}

/// Plücker vector of the line spanned by `u` and `v` (not normalized).
pub fn pluecker_vector(f: &FieldTable, u: &[Fe], v: &[Fe]) -> [Fe; 6] {
    let m = |i: usize, j: usize| f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
    [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(3, 1), m(2, 3)]
}

/// The Klein quadric together with the images of lines, point pencils and
/// plane pencils of a PG(3, q).
#[derive(Debug, Clone)]
pub struct Klein {
    space: Geometry,
    quadric: BitSet,
    generators: Vec<Generator>,
    line_image: Vec<usize>,
    point_generator: Vec<usize>,
    plane_generator: Vec<usize>,
}

impl Klein {
    pub fn new(pg: &Geometry) -> Result<Klein, KleinError> {
        if pg.n() != 3 {
            return Err(KleinError::NotThreeSpace);
        }
        let space = Geometry::new(5, pg.q())?;
        let f = space.field();
        let np = space.points().len();
        let quadric = BitSet::from_indices(np, (0..np).filter(|&p| quadratic_form(f, space.coords(p)) == Fe::ZERO));

        let mut generators: Vec<Generator> = Vec::new();
        for plane in enumerate_subspaces(f, 5, 2) {
            let rows: Vec<&[Fe]> = plane.rows().collect();
            let singular = rows.iter().all(|r| quadratic_form(f, r) == Fe::ZERO)
                && (0..3).all(|i| (i + 1..3).all(|j| bilinear_form(f, rows[i], rows[j]) == Fe::ZERO));
            if singular {
                let points = BitSet::from_indices(np, space.span_points(&plane));
                generators.push(Generator { plane_id: plane.id, family: Family::Latin, points });
            }
        }
        let by_points: BTreeMap<Vec<usize>, usize> =
            generators.iter().enumerate().map(|(i, g)| (g.points.to_vec(), i)).collect();

        let line_image: Vec<usize> = pg
            .lines()
            .iter()
            .map(|l| {
                let v = pluecker_vector(f, l.row(0), l.row(1));
                space.point_id(&v).expect("nonzero Plücker vector")
            })
            .collect();
        let lookup = |lines: &mut dyn Iterator<Item = usize>, x: PgElement| {
            let mut pts: Vec<usize> = lines.map(|l| line_image[l]).collect();
            pts.sort_unstable();
            pts.dedup();
            by_points.get(&pts).copied().ok_or(KleinError::PencilImage(x))
        };
        let point_generator = (0..pg.points().len())
            .map(|p| lookup(&mut pg.point_lines(p).iter().copied(), PgElement::Point(p)))
            .collect::<Result<Vec<_>, _>>()?;
        let plane_generator = (0..pg.planes().len())
            .map(|p| lookup(&mut pg.plane_lines(p).iter(), PgElement::Plane(p)))
            .collect::<Result<Vec<_>, _>>()?;

        // same family iff the intersection is a point or the whole plane
        let base = generators[point_generator[0]].points.clone();
        for g in &mut generators {
            let k = g.points.intersection_count(&base);
            g.family = if k == 1 || k == base.count() { Family::Latin } else { Family::Greek };
        }
        Ok(Klein { space, quadric, generators, line_image, point_generator, plane_generator })
    }

    /// PG(5, q) with points only.
    pub fn space(&self) -> &Geometry {
        &self.space
    }

    pub fn quadric(&self) -> &BitSet {
        &self.quadric
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// PG(5, q) point id of the Plücker image of a PG(3, q) line.
    pub fn pluecker(&self, line: usize) -> usize {
        self.line_image[line]
    }

    /// Points of PG(5, q) on the quadric joined by a quadric line, or equal.
    pub fn collinear(&self, a: usize, b: usize) -> bool {
        let s = &self.space;
        bilinear_form(s.field(), s.coords(a), s.coords(b)) == Fe::ZERO
    }

    /// Generator index of the image of the pencil of x.
    pub fn pencil_generator(&self, x: PgElement) -> usize {
        match x {
            PgElement::Point(p) => self.point_generator[p],
            PgElement::Plane(p) => self.plane_generator[p],
        }
    }

    fn generator_index(&self, plane_id: usize) -> usize {
        self.generators.binary_search_by_key(&plane_id, |g| g.plane_id).expect("generator plane id")
    }

    pub fn generator_of(&self, plane_id: usize) -> &Generator {
        &self.generators[self.generator_index(plane_id)]
    }

    pub fn translate_chamber(&self, c: &Chamber) -> KleinChamber {
        KleinChamber {
            point_id: self.line_image[c.line],
            greek_plane_id: self.generators[self.plane_generator[c.plane]].plane_id,
            latin_plane_id: self.generators[self.point_generator[c.point]].plane_id,
        }
    }

    /// All triples (X, greek, latin) with X on both planes, enumerated on the
    /// quadric side and sorted.
    pub fn klein_chambers(&self) -> Vec<KleinChamber> {
        let mut out = Vec::new();
        for gr in self.generators.iter().filter(|g| g.family == Family::Greek) {
            for la in self.generators.iter().filter(|g| g.family == Family::Latin) {
                for x in gr.points.intersection(&la.points).iter() {
                    out.push(KleinChamber { point_id: x, greek_plane_id: gr.plane_id, latin_plane_id: la.plane_id });
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn opposite(&self, a: &KleinChamber, b: &KleinChamber) -> bool {
        !self.collinear(a.point_id, b.point_id)
            && self.generator_of(a.greek_plane_id).points.is_disjoint(&self.generator_of(b.latin_plane_id).points)
            && self.generator_of(b.greek_plane_id).points.is_disjoint(&self.generator_of(a.latin_plane_id).points)
    }
}

/// First pair where chamber opposition and the quadric-side condition
/// disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferReport {
    pub pairs_checked: u64,
    pub first_counterexample: Option<(usize, usize)>,
}

/// First `j > i` for which the two opposition relations disagree.
pub fn transfer_row(
    pg: &Geometry,
    klein: &Klein,
    chambers: &[Chamber],
    images: &[KleinChamber],
    i: usize,
) -> Option<usize> {
    (i + 1..chambers.len()).find(|&j| pg.opposite(&chambers[i], &chambers[j]) != klein.opposite(&images[i], &images[j]))
}

pub fn opposition_transfer_check(pg: &Geometry, klein: &Klein, chambers: &[Chamber]) -> TransferReport {
    let images: Vec<KleinChamber> = chambers.iter().map(|c| klein.translate_chamber(c)).collect();
    let n = chambers.len() as u64;
    let first = (0..chambers.len()).find_map(|i| transfer_row(pg, klein, chambers, &images, i).map(|j| (i, j)));
    TransferReport { pairs_checked: n * n.saturating_sub(1) / 2, first_counterexample: first }
}

/// Whether the image of F(x) is the set of Klein chambers whose point lies
/// in the corresponding generator.
pub fn pencil_translates(klein: &Klein, chambers: &[Chamber], pencil: &[usize], x: PgElement) -> bool {
    let gen = &klein.generators[klein.pencil_generator(x)];
    let mut image: Vec<KleinChamber> = pencil.iter().map(|&i| klein.translate_chamber(&chambers[i])).collect();
    image.sort_unstable();
    let mut target: Vec<KleinChamber> =
        klein.klein_chambers().into_iter().filter(|k| gen.points.contains(k.point_id)).collect();
    target.sort_unstable();
    image == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{pencil_pg_set, pg_elements};
    use crate::projective::ChamberComplex;

    #[test]
    fn pluecker_basics() {
        let pg = Geometry::new(3, 2).unwrap();
        let k = Klein::new(&pg).unwrap();
        let f = pg.field();
        let e = |i: usize| {
            let mut v = [Fe::ZERO; 4];
            v[i] = Fe::ONE;
            v
        };
        assert_eq!(pluecker_vector(f, &e(0), &e(1)), [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO]);
        let mut images: Vec<usize> = (0..35).map(|l| k.pluecker(l)).collect();
        assert!(images.iter().all(|&p| k.quadric().contains(p)));
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 35);
        assert_eq!(k.quadric().count(), 35);
        for a in 0..35 {
            for b in 0..35 {
                assert_eq!(pg.lines_meet(a, b), k.collinear(k.pluecker(a), k.pluecker(b)));
            }
        }
    }

    #[test]
    fn generators_split_into_two_families() {
        for q in [2u32, 3] {
            let pg = Geometry::new(3, q).unwrap();
            let k = Klein::new(&pg).unwrap();
            let qq = q as usize;
            let n_planes = qq * qq * qq + qq * qq + qq + 1;
            assert_eq!(k.generators().len(), 2 * n_planes);
            let latin = k.generators().iter().filter(|g| g.family == Family::Latin).count();
            assert_eq!(latin, n_planes);
            for p in 0..n_planes {
                assert_eq!(k.generators()[k.pencil_generator(PgElement::Point(p))].family, Family::Latin);
                assert_eq!(k.generators()[k.pencil_generator(PgElement::Plane(p))].family, Family::Greek);
            }
        }
    }

    #[test]
    fn chamber_translation_is_a_bijection() {
        let pg = Geometry::new(3, 2).unwrap();
        let k = Klein::new(&pg).unwrap();
        let chambers = pg.chambers().unwrap();
        let mut images: Vec<KleinChamber> = chambers.iter().map(|c| k.translate_chamber(c)).collect();
        for (c, im) in chambers.iter().zip(&images) {
            assert!(k.generator_of(im.greek_plane_id).points.contains(im.point_id));
            assert!(k.generator_of(im.latin_plane_id).points.contains(im.point_id));
            assert_eq!(im.point_id, k.pluecker(c.line));
        }
        images.sort_unstable();
        assert_eq!(images, k.klein_chambers());
        assert_eq!(images.len(), 315);
    }

    #[test]
    fn opposition_transfers_at_two() {
        let pg = Geometry::new(3, 2).unwrap();
        let k = Klein::new(&pg).unwrap();
        let chambers = pg.chambers().unwrap();
        let r = opposition_transfer_check(&pg, &k, &chambers);
        assert_eq!(r, TransferReport { pairs_checked: 315 * 314 / 2, first_counterexample: None });
        // a pair sharing the same line
        let (a, b) = (0..chambers.len())
            .flat_map(|i| (i + 1..chambers.len()).map(move |j| (i, j)))
            .find(|&(i, j)| chambers[i].line == chambers[j].line)
            .unwrap();
        let (ka, kb) = (k.translate_chamber(&chambers[a]), k.translate_chamber(&chambers[b]));
        assert_eq!(ka.point_id, kb.point_id);
        assert!(!k.opposite(&ka, &kb));
    }

    #[test]
    fn pencils_translate_to_generators() {
        let pg = Geometry::new(3, 2).unwrap();
        let k = Klein::new(&pg).unwrap();
        let cc = ChamberComplex::new(pg.clone(), false).unwrap();
        for x in pg_elements(&cc) {
            assert!(pencil_translates(&k, &cc.chambers, &pencil_pg_set(&cc, x), x));
        }
    }

    #[test]
    fn rejects_other_dimensions() {
        let g = Geometry::new(4, 2).unwrap();
        assert!(matches!(Klein::new(&g), Err(KleinError::NotThreeSpace)));
    }
}
