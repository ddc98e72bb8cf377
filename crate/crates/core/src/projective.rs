//! Projective spaces PG(n, q) for n in {3, 4, 5}, chambers of PG(3, q) and
//! their opposition graph.
//!
//! Every subspace is stored as its reduced row echelon basis. Subspaces of
//! one dimension are sorted by the row-major sequence of element codes of
//! that basis, and the position in the sorted list is the subspace id. All
//! cross references use ids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::galois::{Fe, FieldError, FieldTable};
use crate::graph::Graph;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    Field(FieldError),
    Unsupported { n: usize, q: u32 },
    NotThreeSpace,
}

impl From<FieldError> for ProjectiveError {
    fn from(e: FieldError) -> Self {
        ProjectiveError::Field(e)
    }
}

impl fmt::Display for ProjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveError::Field(e) => e.fmt(f),
            ProjectiveError::Unsupported { n, q } => write!(f, "PG({n},{q}) is outside the supported range"),
            ProjectiveError::NotThreeSpace => f.write_str("operation requires PG(3,q)"),
        }
    }
}

impl core::error::Error for ProjectiveError {}

/// A projective subspace given by its canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    /// Projective dimension: 0 point, 1 line, 2 plane.
    pub dim: usize,
    pub id: usize,
    cols: usize,
    /// `dim + 1` rows of length `cols`, row-major.
    basis: Vec<Fe>,
}

impl Subspace {
    pub fn rows(&self) -> impl Iterator<Item = &[Fe]> {
        self.basis.chunks(self.cols)
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.basis[i * self.cols..(i + 1) * self.cols]
    }

    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }

    pub fn ambient_len(&self) -> usize {
        self.cols
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All subspaces of projective dimension `dim` in PG(n, q), canonically
/// ordered.
pub fn enumerate_subspaces(f: &FieldTable, n: usize, dim: usize) -> Vec<Subspace> {
    let cols = n + 1;
    let k = dim + 1;
    let q = f.order() as usize;
    let mut all: Vec<Vec<Fe>> = Vec::new();
    for pivots in combinations(cols, k) {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..cols).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = vec![Fe::ZERO; k * cols];
            for (r, &pc) in pivots.iter().enumerate() {
                m[r * cols + pc] = Fe::ONE;
            }
            for &(r, c) in free.iter().rev() {
                m[r * cols + c] = Fe((code % q) as u8);
                code /= q;
            }
            all.push(m);
        }
    }
    all.sort();
    all.into_iter().enumerate().map(|(id, basis)| Subspace { dim, id, cols, basis }).collect()
}

/// Base-q integer of a coordinate vector, first coordinate most significant.
/// For normalized vectors this is monotone in the canonical point order.
#[inline]
fn vector_key(q: u32, v: &[Fe]) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * q as u64 + x.0 as u64)
}

/// PG(n, q) with canonically ordered points, and lines/planes where needed.
///
/// n = 3 carries points, lines, planes and all incidences; n = 4 points and
/// lines; n = 5 points only.
#[derive(Debug, Clone)]
pub struct Geometry {
    n: usize,
    field: FieldTable,
    points: Vec<Subspace>,
    point_keys: Vec<u64>,
    lines: Vec<Subspace>,
    planes: Vec<Subspace>,
    line_points: Vec<Vec<usize>>,
    line_point_sets: Vec<BitSet>,
    plane_point_sets: Vec<BitSet>,
    point_lines: Vec<Vec<usize>>,
    /// per plane, the lines it contains
    plane_lines: Vec<BitSet>,
    /// per line, the planes containing it
    line_planes: Vec<Vec<usize>>,
    /// per line, the lines meeting it (itself included)
    line_meets: Vec<BitSet>,
}

/// Largest q enumerated for each supported n.
pub fn max_order(n: usize) -> Option<u32> {
    match n {
        3 => Some(9),
        4 => Some(5),
        5 => Some(5),
        _ => None,
    }
}

impl Geometry {
    pub fn new(n: usize, q: u32) -> Result<Geometry, ProjectiveError> {
        let field = FieldTable::new(q)?;
        match max_order(n) {
            Some(max) if q <= max => {}
            _ => return Err(ProjectiveError::Unsupported { n, q }),
        }
        let points = enumerate_subspaces(&field, n, 0);
        let point_keys: Vec<u64> = points.iter().map(|p| vector_key(q, p.basis())).collect();
        debug_assert!(point_keys.windows(2).all(|w| w[0] < w[1]));
        let mut g = Geometry {
            n,
            field,
            points,
            point_keys,
            lines: Vec::new(),
            planes: Vec::new(),
            line_points: Vec::new(),
            line_point_sets: Vec::new(),
            plane_point_sets: Vec::new(),
            point_lines: Vec::new(),
            plane_lines: Vec::new(),
            line_planes: Vec::new(),
            line_meets: Vec::new(),
        };
        if n <= 4 {
            g.lines = enumerate_subspaces(&g.field, n, 1);
            g.line_points = g.lines.iter().map(|l| g.span_points(l)).collect();
            let np = g.points.len();
            g.line_point_sets = g.line_points.iter().map(|ps| BitSet::from_indices(np, ps.iter().copied())).collect();
            g.point_lines = vec![Vec::new(); np];
            for (li, ps) in g.line_points.iter().enumerate() {
                for &p in ps {
                    g.point_lines[p].push(li);
                }
            }
        }
        if n == 3 {
            g.planes = enumerate_subspaces(&g.field, n, 2);
            let np = g.points.len();
            g.plane_point_sets = g.planes.iter().map(|pl| BitSet::from_indices(np, g.span_points(pl))).collect();
            let nl = g.lines.len();
            g.line_planes = vec![Vec::new(); nl];
            g.plane_lines = g
                .plane_point_sets
                .iter()
                .map(|pset| {
                    let mut s = BitSet::new(nl);
                    for (li, lset) in g.line_point_sets.iter().enumerate() {
                        if lset.is_subset(pset) {
                            s.insert(li);
                        }
                    }
                    s
                })
                .collect();
            for (pi, ls) in g.plane_lines.iter().enumerate() {
                for li in ls.iter() {
                    g.line_planes[li].push(pi);
                }
            }
            g.line_meets = g
                .line_point_sets
                .iter()
                .map(|a| {
                    let mut s = BitSet::new(nl);
                    for (lj, b) in g.line_point_sets.iter().enumerate() {
                        if !a.is_disjoint(b) {
                            s.insert(lj);
                        }
                    }
                    s
                })
                .collect();
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn planes(&self) -> &[Subspace] {
        &self.planes
    }

    pub fn coords(&self, point: usize) -> &[Fe] {
        self.points[point].basis()
    }

    /// Id of the point spanned by a nonzero vector.
    pub fn point_id(&self, v: &[Fe]) -> Option<usize> {
        let mut w = v.to_vec();
        if w.len() != self.n + 1 || !linalg::normalize(&self.field, &mut w) {
            return None;
        }
        self.point_keys.binary_search(&vector_key(self.q(), &w)).ok()
    }

    /// Point ids of the subspace spanned by a canonical basis.
    pub fn span_points(&self, s: &Subspace) -> Vec<usize> {
        let f = &self.field;
        let q = f.order() as usize;
        let k = s.dim + 1;
        let cols = s.ambient_len();
        let mut out = Vec::new();
        // combinations whose first nonzero coefficient is one are already
        // normalized because the basis is in reduced row echelon form
        for lead in 0..k {
            let tail = k - lead - 1;
            for mut code in 0..q.pow(tail as u32) {
                let mut v = s.row(lead).to_vec();
                for r in (lead + 1..k).rev() {
                    let c = Fe((code % q) as u8);
                    code /= q;
                    for (x, &b) in v.iter_mut().zip(s.row(r)) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
                debug_assert_eq!(v.len(), cols);
                out.push(self.point_keys.binary_search(&vector_key(f.order(), &v)).expect("normalized point"));
            }
        }
        out.sort_unstable();
        out
    }

    /// Id of the subspace with the given spanning vectors, looked up among
    /// lines or planes.
    pub fn subspace_id(&self, spanning: &[Vec<Fe>]) -> Option<(usize, usize)> {
        let mut m = spanning.to_vec();
        linalg::rref(&self.field, &mut m, self.n + 1);
        let dim = m.len().checked_sub(1)?;
        let flat: Vec<Fe> = m.concat();
        let list = match dim {
            0 => &self.points,
            1 => &self.lines,
            2 => &self.planes,
            _ => return None,
        };
        list.binary_search_by(|s| s.basis.as_slice().cmp(flat.as_slice())).ok().map(|id| (dim, id))
    }

    pub fn line_points(&self, line: usize) -> &[usize] {
        &self.line_points[line]
    }

    pub fn line_point_set(&self, line: usize) -> &BitSet {
        &self.line_point_sets[line]
    }

    pub fn point_lines(&self, point: usize) -> &[usize] {
        &self.point_lines[point]
    }

    pub fn plane_point_set(&self, plane: usize) -> &BitSet {
        &self.plane_point_sets[plane]
    }

    pub fn plane_lines(&self, plane: usize) -> &BitSet {
        &self.plane_lines[plane]
    }

    pub fn line_planes(&self, line: usize) -> &[usize] {
        &self.line_planes[line]
    }

    #[inline]
    pub fn point_on_line(&self, point: usize, line: usize) -> bool {
        self.line_point_sets[line].contains(point)
    }

    #[inline]
    pub fn point_in_plane(&self, point: usize, plane: usize) -> bool {
        self.plane_point_sets[plane].contains(point)
    }

    #[inline]
    pub fn line_in_plane(&self, line: usize, plane: usize) -> bool {
        self.plane_lines[plane].contains(line)
    }

    #[inline]
    pub fn lines_meet(&self, a: usize, b: usize) -> bool {
        self.line_meets[a].contains(b)
    }

    fn require_three_space(&self) -> Result<(), ProjectiveError> {
        if self.n == 3 {
            Ok(())
        } else {
            Err(ProjectiveError::NotThreeSpace)
        }
    }

    /// Orthogonal complement under the standard dot product, as
    /// `(dim, id)`. Points and planes of PG(3, q) are exchanged, lines map
    /// to lines.
    pub fn dual(&self, dim: usize, id: usize) -> (usize, usize) {
        let s = match dim {
            0 => &self.points[id],
            1 => &self.lines[id],
            _ => &self.planes[id],
        };
        let rows: Vec<Vec<Fe>> = s.rows().map(<[Fe]>::to_vec).collect();
        let ns = linalg::null_space(&self.field, &rows, self.n + 1);
        self.subspace_id(&ns).expect("complement is enumerated")
    }

    /// All chambers of PG(3, q) ordered by (point, line, plane).
    pub fn chambers(&self) -> Result<Vec<Chamber>, ProjectiveError> {
        self.require_three_space()?;
        let mut out = Vec::new();
        for p in 0..self.points.len() {
            for &l in &self.point_lines[p] {
                for &pl in &self.line_planes[l] {
                    out.push(Chamber { point: p, line: l, plane: pl });
                }
            }
        }
        Ok(out)
    }

    /// Chambers `(P, l, pi)` and `(P', l', pi')` are opposite when P is not
    /// in pi', P' is not in pi and l, l' are skew.
    #[inline]
    pub fn opposite(&self, a: &Chamber, b: &Chamber) -> bool {
        !self.point_in_plane(a.point, b.plane)
            && !self.point_in_plane(b.point, a.plane)
            && !self.lines_meet(a.line, b.line)
    }

    pub fn dual_chamber(&self, c: &Chamber) -> Chamber {
        Chamber { point: self.dual(2, c.plane).1, line: self.dual(1, c.line).1, plane: self.dual(0, c.point).1 }
    }
}

/// Incident point, line, plane of PG(3, q), by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chamber {
    pub point: usize,
    pub line: usize,
    pub plane: usize,
}

/// Largest q for which the chamber graph is built without forcing.
pub const CHAMBER_GRAPH_MAX_Q: u32 = 4;

/// Chambers of PG(3, q) together with their opposition graph.
#[derive(Debug, Clone)]
pub struct ChamberComplex {
    pub geometry: Geometry,
    pub chambers: Vec<Chamber>,
    pub graph: Graph,
}

impl ChamberComplex {
    /// Builds the chamber opposition graph. Above q = 4 `force` is required.
    pub fn new(geometry: Geometry, force: bool) -> Result<Self, ProjectiveError> {
        Self::with_rows(geometry, force, |g, chambers| {
            (0..chambers.len()).map(|i| opposition_row(g, chambers, i)).collect()
        })
    }

    /// Like [`ChamberComplex::new`] with a caller-supplied row builder, so
    /// rows can be produced in parallel. The result does not depend on the
    /// builder as long as it returns `opposition_row` for every index.
    pub fn with_rows(
        geometry: Geometry,
        force: bool,
        build: impl FnOnce(&Geometry, &[Chamber]) -> Vec<BitSet>,
    ) -> Result<Self, ProjectiveError> {
        geometry.require_three_space()?;
        let q = geometry.q();
        if q > CHAMBER_GRAPH_MAX_Q && !(force && q == 5) {
            return Err(ProjectiveError::Unsupported { n: 3, q });
        }
        let chambers = geometry.chambers()?;
        let rows = build(&geometry, &chambers);
        let graph = Graph::from_rows(rows).expect("opposition is symmetric and irreflexive");
        Ok(ChamberComplex { geometry, chambers, graph })
    }

    pub fn q(&self) -> u32 {
        self.geometry.q()
    }

    pub fn index_of(&self, c: &Chamber) -> Option<usize> {
        self.chambers.binary_search(c).ok()
    }
}

/// Adjacency row of chamber `i`.
pub fn opposition_row(g: &Geometry, chambers: &[Chamber], i: usize) -> BitSet {
    let mut row = BitSet::new(chambers.len());
    let a = &chambers[i];
    for (j, b) in chambers.iter().enumerate() {
        if g.opposite(a, b) {
            row.insert(j);
        }
    }
    row
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}
