//! The Desarguesian planes `PG(2,q)` and `AG(2,q)`.
//!
//! Points and lines are triples whose first nonzero coordinate is 1. Their
//! indices follow the lexicographic order on coordinate codes:
//! `(0,0,1) -> 0`, `(0,1,z) -> 1 + z`, `(1,y,z) -> 1 + q + yq + z`, and the
//! same for lines. Affine points `(x,y)` are identified with `(x,y,1)`; the
//! affine index of `(x,y)` is `x q + y` on codes.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use thiserror::Error;

use crate::gf::{Elem, FieldCtx, GfError};
use crate::linalg::RowEchelon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("the zero vector is not a projective point or line")]
    ZeroVector,
    #[error("singular matrix")]
    Singular,
    #[error("point {0:?} is not on line {1:?}")]
    NotOnLine(PointId, LineId),
    #[error("the two lines coincide")]
    SameLine,
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineId(pub u32);

impl PointId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl LineId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A slope in `F_q ∪ {∞}`. Direction points are `(1,d,0)` and `(0,1,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Elem),
    Infinite,
}

impl Slope {
    /// `d.code()` for finite slopes, `q` for infinity.
    pub fn index(self, q: u32) -> usize {
        match self {
            Slope::Finite(d) => d.code() as usize,
            Slope::Infinite => q as usize,
        }
    }

    pub fn from_index(f: &FieldCtx, i: usize) -> Slope {
        if i == f.q() as usize {
            Slope::Infinite
        } else {
            Slope::Finite(f.elem(i as u32))
        }
    }

    pub fn all(f: &FieldCtx) -> impl Iterator<Item = Slope> + '_ {
        (0..=f.q() as usize).map(move |i| Slope::from_index(f, i))
    }
}

fn normalize(f: &FieldCtx, v: [Elem; 3]) -> Result<[Elem; 3], PlaneError> {
    for &c in &v {
        f.ensure(c)?;
    }
    let lead = v.iter().copied().find(|c| !c.is_zero()).ok_or(PlaneError::ZeroVector)?;
    let s = f.inv(lead)?;
    Ok([f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)])
}

/// A point of `PG(2,q)` in normalized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint([Elem; 3]);

/// A line `[a,b,c]` of `PG(2,q)`, i.e. `aX + bY + cZ = 0`, normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine([Elem; 3]);

impl ProjPoint {
    pub fn new(f: &FieldCtx, v: [Elem; 3]) -> Result<Self, PlaneError> {
        normalize(f, v).map(ProjPoint)
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.0
    }
}

impl ProjLine {
    pub fn new(f: &FieldCtx, v: [Elem; 3]) -> Result<Self, PlaneError> {
        normalize(f, v).map(ProjLine)
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.0
    }
}

pub type Mat3 = [[Elem; 3]; 3];

pub fn mat_vec(f: &FieldCtx, m: &Mat3, v: [Elem; 3]) -> [Elem; 3] {
    let mut out = [f.zero(); 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = dot3(f, *row, v);
    }
    out
}

/// Row vector times matrix.
pub fn vec_mat(f: &FieldCtx, v: [Elem; 3], m: &Mat3) -> [Elem; 3] {
    let mut out = [f.zero(); 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = dot3(f, v, [m[0][j], m[1][j], m[2][j]]);
    }
    out
}

pub fn mat_mul(f: &FieldCtx, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = dot3(f, a[i], [b[0][j], b[1][j], b[2][j]]);
        }
    }
    out
}

#[inline]
pub fn dot3(f: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> Elem {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

pub fn cross(f: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn mat_inverse(f: &FieldCtx, m: &Mat3) -> Result<Mat3, PlaneError> {
    let c0 = cross(f, m[1], m[2]);
    let c1 = cross(f, m[2], m[0]);
    let c2 = cross(f, m[0], m[1]);
    let det = dot3(f, m[0], c0);
    if det.is_zero() {
        return Err(PlaneError::Singular);
    }
    let di = f.inv(det)?;
    // adjugate: columns are the cross products
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        out[i][0] = f.mul(c0[i], di);
        out[i][1] = f.mul(c1[i], di);
        out[i][2] = f.mul(c2[i], di);
    }
    Ok(out)
}

pub fn identity(f: &FieldCtx) -> Mat3 {
    let (z, o) = (f.zero(), f.one());
    [[o, z, z], [z, o, z], [z, z, o]]
}

/// `PG(2,q)` with incidence tables and the affine/slope dictionary.
pub struct PlaneCtx {
    field: FieldCtx,
    points: Vec<[Elem; 3]>,
    lines: Vec<[Elem; 3]>,
    line_points: Vec<Vec<PointId>>,
    point_lines: Vec<Vec<LineId>>,
    affine_to_point: Vec<PointId>,
    point_to_affine: Vec<Option<u32>>,
    /// `[slope index][intercept code]`
    slope_lines: Vec<Vec<LineId>>,
    /// `(slope index, intercept code)`; `None` for the line at infinity.
    line_slope: Vec<Option<(u32, u32)>>,
    masks: OnceLock<Vec<Vec<u64>>>,
    code_space: OnceLock<RowEchelon>,
}

impl std::fmt::Debug for PlaneCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PlaneCtx(q={})", self.field.q())
    }
}

fn coord_index(q: u32, v: [Elem; 3]) -> u32 {
    if v[0].code() == 1 {
        1 + q + v[1].code() * q + v[2].code()
    } else if v[1].code() == 1 {
        1 + v[2].code()
    } else {
        0
    }
}

fn coords_at(f: &FieldCtx, i: u32) -> [Elem; 3] {
    let q = f.q();
    if i == 0 {
        [f.zero(), f.zero(), f.one()]
    } else if i <= q {
        [f.zero(), f.one(), f.elem(i - 1)]
    } else {
        let r = i - 1 - q;
        [f.one(), f.elem(r / q), f.elem(r % q)]
    }
}

impl PlaneCtx {
    pub fn new(field: FieldCtx) -> Arc<PlaneCtx> {
        let f = &field;
        let q = f.q();
        let n = (q * q + q + 1) as usize;
        let points: Vec<[Elem; 3]> = (0..n as u32).map(|i| coords_at(f, i)).collect();
        let lines = points.clone();

        let mut line_points = Vec::with_capacity(n);
        for l in &lines {
            let [a, b, c] = *l;
            let (u, v) = if !a.is_zero() {
                ([b, f.neg(a), f.zero()], [c, f.zero(), f.neg(a)])
            } else if !b.is_zero() {
                ([f.one(), f.zero(), f.zero()], [f.zero(), c, f.neg(b)])
            } else {
                ([f.one(), f.zero(), f.zero()], [f.zero(), f.one(), f.zero()])
            };
            let mut pts = Vec::with_capacity(q as usize + 1);
            pts.push(PointId(coord_index(q, normalize(f, u).unwrap())));
            for t in f.elements() {
                let w = [
                    f.add(v[0], f.mul(t, u[0])),
                    f.add(v[1], f.mul(t, u[1])),
                    f.add(v[2], f.mul(t, u[2])),
                ];
                pts.push(PointId(coord_index(q, normalize(f, w).unwrap())));
            }
            pts.sort_unstable();
            line_points.push(pts);
        }
        let mut point_lines = vec![Vec::with_capacity(q as usize + 1); n];
        for (j, pts) in line_points.iter().enumerate() {
            for &pt in pts {
                point_lines[pt.idx()].push(LineId(j as u32));
            }
        }

        let mut affine_to_point = Vec::with_capacity((q * q) as usize);
        let mut point_to_affine = vec![None; n];
        for x in f.elements() {
            for y in f.elements() {
                let pt = coord_index(q, normalize(f, [x, y, f.one()]).unwrap());
                point_to_affine[pt as usize] = Some(x.code() * q + y.code());
                affine_to_point.push(PointId(pt));
            }
        }

        let mut slope_lines = vec![Vec::with_capacity(q as usize); q as usize + 1];
        let mut line_slope = vec![None; n];
        for s in 0..=q as usize {
            for b in f.elements() {
                let l = if s == q as usize {
                    [f.one(), f.zero(), b]
                } else {
                    let d = f.elem(s as u32);
                    normalize(f, [d, f.neg(f.one()), b]).unwrap()
                };
                let id = coord_index(q, l);
                slope_lines[s].push(LineId(id));
                line_slope[id as usize] = Some((s as u32, b.code()));
            }
        }

        Arc::new(PlaneCtx {
            field,
            points,
            lines,
            line_points,
            point_lines,
            affine_to_point,
            point_to_affine,
            slope_lines,
            line_slope,
            masks: OnceLock::new(),
            code_space: OnceLock::new(),
        })
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// `q^2 + q + 1`, the number of points and of lines.
    #[inline]
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn point_ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.size() as u32).map(PointId)
    }

    pub fn line_ids(&self) -> impl Iterator<Item = LineId> {
        (0..self.size() as u32).map(LineId)
    }

    pub fn point(&self, id: PointId) -> ProjPoint {
        ProjPoint(self.points[id.idx()])
    }

    pub fn line(&self, id: LineId) -> ProjLine {
        ProjLine(self.lines[id.idx()])
    }

    pub fn point_coords(&self, id: PointId) -> [Elem; 3] {
        self.points[id.idx()]
    }

    pub fn line_coords(&self, id: LineId) -> [Elem; 3] {
        self.lines[id.idx()]
    }

    pub fn point_id(&self, pt: &ProjPoint) -> PointId {
        PointId(coord_index(self.q(), pt.0))
    }

    pub fn line_id(&self, l: &ProjLine) -> LineId {
        LineId(coord_index(self.q(), l.0))
    }

    /// Index of the point with the given (not necessarily normalized) coordinates.
    pub fn point_at(&self, v: [Elem; 3]) -> Result<PointId, PlaneError> {
        Ok(PointId(coord_index(self.q(), normalize(&self.field, v)?)))
    }

    pub fn line_at(&self, v: [Elem; 3]) -> Result<LineId, PlaneError> {
        Ok(LineId(coord_index(self.q(), normalize(&self.field, v)?)))
    }

    /// Shorthand for tests and examples: coordinates given as codes.
    pub fn point_codes(&self, c: [u32; 3]) -> PointId {
        let f = &self.field;
        self.point_at([f.elem(c[0]), f.elem(c[1]), f.elem(c[2])])
            .expect("nonzero coordinates")
    }

    pub fn line_codes(&self, c: [u32; 3]) -> LineId {
        let f = &self.field;
        self.line_at([f.elem(c[0]), f.elem(c[1]), f.elem(c[2])])
            .expect("nonzero coordinates")
    }

    /// Point indices on a line, ascending.
    pub fn points_on(&self, l: LineId) -> &[PointId] {
        &self.line_points[l.idx()]
    }

    /// Lines through a point, ascending.
    pub fn lines_through(&self, pt: PointId) -> &[LineId] {
        &self.point_lines[pt.idx()]
    }

    pub fn incident(&self, pt: PointId, l: LineId) -> bool {
        dot3(&self.field, self.points[pt.idx()], self.lines[l.idx()]).is_zero()
    }

    pub fn meet(&self, a: LineId, b: LineId) -> Result<PointId, PlaneError> {
        if a == b {
            return Err(PlaneError::SameLine);
        }
        self.point_at(cross(&self.field, self.lines[a.idx()], self.lines[b.idx()]))
    }

    pub fn join(&self, a: PointId, b: PointId) -> Result<LineId, PlaneError> {
        self.line_at(cross(&self.field, self.points[a.idx()], self.points[b.idx()]))
    }

    pub fn line_at_infinity(&self) -> LineId {
        LineId(0)
    }

    pub fn origin(&self) -> PointId {
        self.affine_point(self.field.zero(), self.field.zero())
    }

    pub fn affine_point(&self, x: Elem, y: Elem) -> PointId {
        self.affine_to_point[(x.code() * self.q() + y.code()) as usize]
    }

    /// Projective index of the affine point with affine index `i`.
    pub fn affine_index_point(&self, i: usize) -> PointId {
        self.affine_to_point[i]
    }

    /// Affine index `x q + y`, or `None` on the line at infinity.
    pub fn affine_index(&self, pt: PointId) -> Option<usize> {
        self.point_to_affine[pt.idx()].map(|v| v as usize)
    }

    pub fn affine_coords(&self, pt: PointId) -> Option<(Elem, Elem)> {
        self.affine_index(pt).map(|i| {
            let q = self.q() as usize;
            (self.field.elem((i / q) as u32), self.field.elem((i % q) as u32))
        })
    }

    /// Slope of an affine line, `None` for the line at infinity.
    pub fn slope_of(&self, l: LineId) -> Option<Slope> {
        self.line_slope[l.idx()].map(|(s, _)| Slope::from_index(&self.field, s as usize))
    }

    /// Intercept `b` of an affine line: `Y = dX + b`, or `X + b = 0` for slope infinity.
    pub fn intercept_of(&self, l: LineId) -> Option<Elem> {
        self.line_slope[l.idx()].map(|(_, b)| self.field.elem(b))
    }

    /// The `q` lines of a slope, indexed by intercept code.
    pub fn lines_with_slope(&self, s: Slope) -> &[LineId] {
        &self.slope_lines[s.index(self.q())]
    }

    pub fn line_with_slope(&self, s: Slope, b: Elem) -> LineId {
        self.slope_lines[s.index(self.q())][b.code() as usize]
    }

    /// Intercept of the line of slope `s` through `(x,y)`.
    pub fn intercept(&self, s: Slope, x: Elem, y: Elem) -> Elem {
        let f = &self.field;
        match s {
            Slope::Finite(d) => f.sub(y, f.mul(d, x)),
            Slope::Infinite => f.neg(x),
        }
    }

    pub fn direction_point(&self, s: Slope) -> PointId {
        let f = &self.field;
        match s {
            Slope::Finite(d) => self.point_at([f.one(), d, f.zero()]).unwrap(),
            Slope::Infinite => self.point_at([f.zero(), f.one(), f.zero()]).unwrap(),
        }
    }

    /// Bitmask of the points of a line, one bit per point index.
    pub fn line_mask(&self, l: LineId) -> &[u64] {
        &self.masks.get_or_init(|| {
            let words = self.size().div_ceil(64);
            self.line_points
                .iter()
                .map(|pts| {
                    let mut m = vec![0u64; words];
                    for pt in pts {
                        m[pt.idx() / 64] |= 1 << (pt.idx() % 64);
                    }
                    m
                })
                .collect()
        })[l.idx()]
    }

    /// Reduced echelon basis of the `F_p` row space of the incidence matrix,
    /// built on first use.
    pub fn code_space(&self) -> &RowEchelon {
        self.code_space.get_or_init(|| {
            let n = self.size();
            let mut e = RowEchelon::new(self.p(), n);
            let mut row = vec![0u32; n];
            for pts in &self.line_points {
                row.iter_mut().for_each(|x| *x = 0);
                for pt in pts {
                    row[pt.idx()] = 1;
                }
                e.insert(&row);
            }
            e
        })
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.size();
        let mut entries = vec![0u8; n * n];
        for (j, pts) in self.line_points.iter().enumerate() {
            for pt in pts {
                entries[j * n + pt.idx()] = 1;
            }
        }
        IncidenceMatrix { n, entries }
    }
}

/// The 0/1 matrix `A(l, P) = [P on l]`, rows indexed by lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: LineId, pt: PointId) -> u8 {
        self.entries[l.idx() * self.n + pt.idx()]
    }

    pub fn row(&self, l: LineId) -> &[u8] {
        &self.entries[l.idx() * self.n..(l.idx() + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|&x| x as i64).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.n];
        for r in self.entries.chunks(self.n) {
            for (acc, &x) in s.iter_mut().zip(r) {
                *acc += x as i64;
            }
        }
        s
    }

    /// `A A^T` over the integers, row-major.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            let ri = &self.entries[i * n..(i + 1) * n];
            for j in i..n {
                let rj = &self.entries[j * n..(j + 1) * n];
                let v: i64 = ri.iter().zip(rj).map(|(&a, &b)| (a & b) as i64).sum();
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }

    /// `A J` over the integers (every entry of row `l` is the row sum of `l`).
    pub fn times_all_ones(&self) -> Vec<i64> {
        let sums = self.row_sums();
        let mut out = Vec::with_capacity(self.n * self.n);
        for s in sums {
            out.extend(std::iter::repeat_n(s, self.n));
        }
        out
    }
}

/// A collineation `P -> mP`, `l -> l m^{-1}` with cached permutations.
#[derive(Clone, Debug)]
pub struct Projectivity {
    m: Mat3,
    inv: Mat3,
    point_perm: Vec<PointId>,
    line_perm: Vec<LineId>,
}

impl Projectivity {
    pub fn new(plane: &PlaneCtx, m: Mat3) -> Result<Self, PlaneError> {
        let f = plane.field();
        for row in &m {
            for &c in row {
                f.ensure(c)?;
            }
        }
        let inv = mat_inverse(f, &m)?;
        let point_perm = plane
            .point_ids()
            .map(|pt| plane.point_at(mat_vec(f, &m, plane.point_coords(pt))).unwrap())
            .collect();
        let line_perm = plane
            .line_ids()
            .map(|l| plane.line_at(vec_mat(f, plane.line_coords(l), &inv)).unwrap())
            .collect();
        Ok(Projectivity {
            m,
            inv,
            point_perm,
            line_perm,
        })
    }

    pub fn identity(plane: &PlaneCtx) -> Self {
        Self::new(plane, identity(plane.field())).unwrap()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat3 {
        &self.inv
    }

    pub fn apply_point(&self, pt: PointId) -> PointId {
        self.point_perm[pt.idx()]
    }

    pub fn apply_line(&self, l: LineId) -> LineId {
        self.line_perm[l.idx()]
    }

    pub fn inverse(&self, plane: &PlaneCtx) -> Projectivity {
        Projectivity::new(plane, self.inv).expect("inverse of an invertible matrix")
    }

    /// Point map as a permutation of point indices.
    pub fn point_permutation(&self) -> &[PointId] {
        &self.point_perm
    }
}

/// A projectivity taking `pt` to `(0,0,1)`, `l1` to `X = 0` and `l2` to `Y = 0`.
pub fn transform_taking(
    plane: &PlaneCtx,
    pt: PointId,
    l1: LineId,
    l2: LineId,
) -> Result<Projectivity, PlaneError> {
    for l in [l1, l2] {
        if !plane.incident(pt, l) {
            return Err(PlaneError::NotOnLine(pt, l));
        }
    }
    if l1 == l2 {
        return Err(PlaneError::SameLine);
    }
    let other = |l: LineId| *plane.points_on(l).iter().find(|&&x| x != pt).unwrap();
    let q1 = plane.point_coords(other(l1));
    let q2 = plane.point_coords(other(l2));
    let p = plane.point_coords(pt);
    let n = [[q2[0], q1[0], p[0]], [q2[1], q1[1], p[1]], [q2[2], q1[2], p[2]]];
    let m = mat_inverse(plane.field(), &n)?;
    Projectivity::new(plane, m)
}

/// A uniformly random invertible matrix (rejection sampling).
pub fn random_invertible<R: Rng + ?Sized>(f: &FieldCtx, rng: &mut R) -> Mat3 {
    loop {
        let mut m = [[f.zero(); 3]; 3];
        for row in m.iter_mut() {
            for c in row.iter_mut() {
                *c = f.elem(rng.gen_range(0..f.q()));
            }
        }
        if mat_inverse(f, &m).is_ok() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plane(p: u64, h: u32) -> Arc<PlaneCtx> {
        PlaneCtx::new(FieldCtx::new(p, h).unwrap())
    }

    #[test]
    fn counts() {
        let fano = plane(2, 1);
        assert_eq!(fano.size(), 7);
        let pg5 = plane(5, 1);
        assert_eq!(pg5.size(), 31);
        for l in pg5.line_ids() {
            assert_eq!(pg5.points_on(l).len(), 6);
        }
        for pt in pg5.point_ids() {
            assert_eq!(pg5.lines_through(pt).len(), 6);
        }
    }

    #[test]
    fn pg9_two_lines_meet_once() {
        let pg = plane(3, 2);
        assert_eq!(pg.size(), 91);
        for a in pg.line_ids() {
            for b in pg.line_ids().filter(|&b| b > a) {
                let common = pg
                    .points_on(a)
                    .iter()
                    .filter(|x| pg.points_on(b).contains(x))
                    .count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn ordering_is_lexicographic_on_codes() {
        let pg = plane(2, 2);
        let codes: Vec<[u32; 3]> = pg
            .point_ids()
            .map(|pt| pg.point_coords(pt).map(|c| c.code()))
            .collect();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
        for (i, c) in codes.iter().enumerate() {
            assert_eq!(pg.point_codes(*c), PointId(i as u32));
        }
    }

    #[test]
    fn normalization_idempotent() {
        let f = FieldCtx::new(7, 1).unwrap();
        let p = ProjPoint::new(&f, [f.from_int(0), f.from_int(3), f.from_int(5)]).unwrap();
        assert_eq!(p.coords()[1], f.one());
        assert_eq!(ProjPoint::new(&f, p.coords()).unwrap(), p);
        assert_eq!(
            ProjLine::new(&f, [f.zero(); 3]).unwrap_err(),
            PlaneError::ZeroVector
        );
    }

    #[test]
    fn slopes() {
        let pg = plane(5, 1);
        let f = pg.field();
        assert_eq!(pg.slope_of(pg.line_codes([1, 0, 3])), Some(Slope::Infinite));
        assert_eq!(
            pg.slope_of(pg.line_at([f.one(), f.from_int(-1), f.zero()]).unwrap()),
            Some(Slope::Finite(f.one()))
        );
        assert_eq!(pg.slope_of(pg.line_codes([0, 0, 1])), None);
        for s in Slope::all(f) {
            let ls = pg.lines_with_slope(s);
            assert_eq!(ls.len(), 5);
            for (b, &l) in ls.iter().enumerate() {
                assert_eq!(pg.slope_of(l), Some(s));
                assert_eq!(pg.intercept_of(l), Some(f.elem(b as u32)));
                assert!(pg.incident(pg.direction_point(s), l));
            }
        }
        // horizontal lines Y = b
        for (b, &l) in pg.lines_with_slope(Slope::Finite(f.zero())).iter().enumerate() {
            for x in f.elements() {
                assert!(pg.incident(pg.affine_point(x, f.elem(b as u32)), l));
            }
        }
        // vertical lines X + b = 0
        let l = pg.line_with_slope(Slope::Infinite, f.from_int(2));
        assert!(pg.incident(pg.affine_point(f.from_int(3), f.from_int(1)), l));
    }

    #[test]
    fn parallel_classes_partition_affine_points_q9() {
        let pg = plane(3, 2);
        for s in Slope::all(pg.field()) {
            let mut seen = [false; 81];
            for &l in pg.lines_with_slope(s) {
                for &pt in pg.points_on(l) {
                    if let Some(i) = pg.affine_index(pt) {
                        assert!(!seen[i]);
                        seen[i] = true;
                    }
                }
            }
            assert!(seen.iter().all(|&x| x));
        }
    }

    #[test]
    fn incidence_identities() {
        for (p, h) in [(2, 1), (5, 1)] {
            let pg = plane(p, h);
            let a = pg.incidence_matrix();
            let n = a.size();
            let q = pg.q() as i64;
            assert!(a.row_sums().iter().all(|&s| s == q + 1));
            assert!(a.col_sums().iter().all(|&s| s == q + 1));
            let g = a.gram();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(g[i * n + j], if i == j { q + 1 } else { 1 });
                }
            }
        }
    }

    #[test]
    fn projectivities_preserve_incidence() {
        let pg = plane(5, 1);
        let f = pg.field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let t = Projectivity::new(&pg, random_invertible(f, &mut rng)).unwrap();
            for pt in pg.point_ids() {
                for l in pg.line_ids() {
                    assert_eq!(
                        pg.incident(pt, l),
                        pg.incident(t.apply_point(pt), t.apply_line(l))
                    );
                }
            }
        }
        let id = Projectivity::identity(&pg);
        assert!(pg.point_ids().all(|pt| id.apply_point(pt) == pt));
        let sing = [[f.one(), f.zero(), f.zero()]; 3];
        assert_eq!(Projectivity::new(&pg, sing).unwrap_err(), PlaneError::Singular);
    }

    #[test]
    fn transform_taking_maps_frame() {
        let pg = plane(7, 1);
        let target_p = pg.point_codes([0, 0, 1]);
        let x0 = pg.line_codes([1, 0, 0]);
        let y0 = pg.line_codes([0, 1, 0]);
        let t = transform_taking(&pg, target_p, x0, y0).unwrap();
        assert_eq!(t.apply_point(target_p), target_p);
        assert_eq!(t.apply_line(x0), x0);
        assert_eq!(t.apply_line(y0), y0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let pt = PointId(rng.gen_range(0..pg.size() as u32));
            let through = pg.lines_through(pt);
            let l1 = through[rng.gen_range(0..through.len())];
            let l2 = *through.iter().find(|&&l| l != l1).unwrap();
            let t = transform_taking(&pg, pt, l1, l2).unwrap();
            assert_eq!(t.apply_point(pt), target_p);
            assert_eq!(t.apply_line(l1), x0);
            assert_eq!(t.apply_line(l2), y0);
        }
        let off = pg.line_codes([1, 1, 1]);
        assert!(matches!(
            transform_taking(&pg, target_p, off, y0),
            Err(PlaneError::NotOnLine(..))
        ));
        assert_eq!(
            transform_taking(&pg, target_p, y0, y0).unwrap_err(),
            PlaneError::SameLine
        );
    }
}
