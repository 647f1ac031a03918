//! The `F_p` code spanned by the lines of `PG(2,q)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, FieldCtx};
use crate::linalg::{rank_mod_p, RowEchelon};
use crate::plane::{transform_taking, LineId, PlaneCtx, PlaneError, PointId, Projectivity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("G does not yield an F_p-valued word (value at point {0:?})")]
    NotPrimeValued(PointId),
    #[error("G must be homogeneous of degree {expected} or zero")]
    BadG { expected: usize },
    #[error("slope set contains a repeated element")]
    RepeatedSlope,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("need at least {0} distinct lines")]
    TooFewLines(usize),
    #[error("rank bound {r} outside 0..={max}")]
    RankOutOfRange { r: i64, max: i64 },
    #[error("requires a prime field, got q = {0}")]
    NeedPrimeField(u32),
    #[error("p = {p} too small, need p > {min}")]
    PrimeTooSmall { p: u32, min: u32 },
    #[error("support is not covered by the given lines")]
    SupportNotCovered,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A function from the points of `PG(2,q)` to `F_p`, values stored as residues.
#[derive(Clone)]
pub struct Codeword {
    plane: Arc<PlaneCtx>,
    values: Vec<u32>,
}

impl std::fmt::Debug for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nz: Vec<(u32, u32)> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32, v))
            .collect();
        write!(f, "Codeword(q={}, {:?})", self.plane.q(), nz)
    }
}

impl PartialEq for Codeword {
    fn eq(&self, other: &Self) -> bool {
        self.plane.field() == other.plane.field() && self.values == other.values
    }
}

impl Eq for Codeword {}

impl Codeword {
    pub fn zero(plane: Arc<PlaneCtx>) -> Self {
        let n = plane.size();
        Codeword {
            plane,
            values: vec![0; n],
        }
    }

    /// Values are reduced mod `p`.
    pub fn from_values(plane: Arc<PlaneCtx>, values: Vec<u32>) -> Self {
        assert_eq!(values.len(), plane.size());
        let p = plane.p();
        Codeword {
            values: values.into_iter().map(|v| v % p).collect(),
            plane,
        }
    }

    pub fn line(plane: Arc<PlaneCtx>, l: LineId) -> Self {
        let mut c = Self::zero(plane);
        for &pt in c.plane.clone().points_on(l) {
            c.values[pt.idx()] = 1;
        }
        c
    }

    pub fn point(plane: Arc<PlaneCtx>, pt: PointId) -> Self {
        let mut c = Self::zero(plane);
        c.values[pt.idx()] = 1;
        c
    }

    pub fn all_ones(plane: Arc<PlaneCtx>) -> Self {
        let n = plane.size();
        Codeword {
            plane,
            values: vec![1; n],
        }
    }

    pub fn plane(&self) -> &Arc<PlaneCtx> {
        &self.plane
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, pt: PointId) -> u32 {
        self.values[pt.idx()]
    }

    pub fn set(&mut self, pt: PointId, v: u32) {
        self.values[pt.idx()] = v % self.plane.p();
    }

    pub fn support(&self) -> Vec<PointId> {
        self.plane
            .point_ids()
            .filter(|pt| self.values[pt.idx()] != 0)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Codeword) -> Codeword {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Codeword) -> Codeword {
        let p = self.plane.p();
        self.add_scaled(other, p - 1)
    }

    /// `self + k * other`
    pub fn add_scaled(&self, other: &Codeword, k: u32) -> Codeword {
        let p = self.plane.p() as u64;
        let k = k as u64 % p;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u64 + k * b as u64) % p) as u32)
            .collect();
        Codeword {
            plane: self.plane.clone(),
            values,
        }
    }

    pub fn scale(&self, k: u32) -> Codeword {
        Codeword::zero(self.plane.clone()).add_scaled(self, k)
    }

    /// The word `c'` with `c'(mP) = c(P)`.
    pub fn transform(&self, t: &Projectivity) -> Codeword {
        let mut values = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[t.apply_point(PointId(i as u32)).idx()] = v;
        }
        Codeword {
            plane: self.plane.clone(),
            values,
        }
    }

    pub fn value_elem(&self, pt: PointId) -> Elem {
        self.plane.field().from_int(self.values[pt.idx()] as i64)
    }
}

/// `sum_P c1(P) c2(P)` in `F_p`.
pub fn dot(c1: &Codeword, c2: &Codeword) -> u32 {
    let p = c1.plane.p() as u64;
    c1.values
        .iter()
        .zip(&c2.values)
        .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p) as u32
}

/// Whether `c . chi_l = c . 1` for every line `l`.
pub fn line_sum_invariance(c: &Codeword) -> bool {
    let p = c.plane.p() as u64;
    let total = c.values.iter().map(|&v| v as u64).sum::<u64>() % p;
    c.plane.line_ids().all(|l| {
        let s: u64 = c.plane.points_on(l).iter().map(|pt| c.values[pt.idx()] as u64).sum();
        s % p == total
    })
}

/// Map from lines to nonzero `F_p` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineCombination {
    coeffs: BTreeMap<LineId, u32>,
}

impl LineCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, l: LineId) -> u32 {
        self.coeffs.get(&l).copied().unwrap_or(0)
    }

    /// Sets the coefficient (already reduced mod `p`); zero removes the entry.
    pub fn set(&mut self, l: LineId, v: u32) {
        if v == 0 {
            self.coeffs.remove(&l);
        } else {
            self.coeffs.insert(l, v);
        }
    }

    pub fn add_to(&mut self, l: LineId, v: u32, p: u32) {
        let cur = self.get(l);
        self.set(l, (cur + v % p) % p);
    }

    pub fn iter(&self) -> impl Iterator<Item = (LineId, u32)> + '_ {
        self.coeffs.iter().map(|(&l, &v)| (l, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `c(P) = sum_l alpha_l [P on l]`.
pub fn codeword_from_combination(plane: &Arc<PlaneCtx>, comb: &LineCombination) -> Codeword {
    let p = plane.p();
    let mut values = vec![0u32; plane.size()];
    for (l, a) in comb.iter() {
        for pt in plane.points_on(l) {
            values[pt.idx()] = (values[pt.idx()] + a) % p;
        }
    }
    Codeword {
        plane: plane.clone(),
        values,
    }
}

pub fn membership_linear(c: &Codeword) -> bool {
    c.plane.code_space().contains(&c.values)
}

/// Polynomial in `X, Y, Z` with exponents at most `q - 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedPoly3 {
    terms: BTreeMap<(u32, u32, u32), Elem>,
}

impl ReducedPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), Elem)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            if !c.is_zero() {
                out.terms.insert(e, c);
            }
        }
        out
    }

    pub fn monomial(exp: (u32, u32, u32), c: Elem) -> Self {
        Self::from_terms([(exp, c)])
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), Elem)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Option<Elem> {
        self.terms.get(&e).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j, k)| i + j + k).max()
    }

    /// Degree in `Z`, `-1` for the zero polynomial.
    pub fn z_degree(&self) -> i64 {
        self.terms.keys().map(|&(_, _, k)| k as i64).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|&(i, j, k)| i + j + k == deg)
    }

    pub fn eval(&self, f: &FieldCtx, v: [Elem; 3]) -> Elem {
        self.terms.iter().fold(f.zero(), |acc, (&(i, j, k), &c)| {
            let m = f.mul(
                f.mul(f.pow(v[0], i as u64), f.pow(v[1], j as u64)),
                f.pow(v[2], k as u64),
            );
            f.add(acc, f.mul(c, m))
        })
    }

    pub fn add(&self, f: &FieldCtx, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            let v = f.add(terms.get(&e).copied().unwrap_or(f.zero()), c);
            if v.is_zero() {
                terms.remove(&e);
            } else {
                terms.insert(e, v);
            }
        }
        ReducedPoly3 { terms }
    }

    /// Product without reduction of exponents.
    pub fn mul(&self, f: &FieldCtx, other: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32, u32), Elem> = BTreeMap::new();
        for (&(a, b, c), &x) in &self.terms {
            for (&(d, e, g), &y) in &other.terms {
                let key = (a + d, b + e, c + g);
                let v = f.add(terms.get(&key).copied().unwrap_or(f.zero()), f.mul(x, y));
                terms.insert(key, v);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        ReducedPoly3 { terms }
    }

    /// Readable form such as `2*X^2*Z + Y`.
    pub fn display(&self, f: &FieldCtx) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&(i, j, k), &c) in &self.terms {
            let coef = if f.h() == 1 {
                c.code().to_string()
            } else {
                format!("[{}]", f.format_elem(c))
            };
            let mut mono = Vec::new();
            for (name, e) in [("X", i), ("Y", j), ("Z", k)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            if mono.is_empty() {
                parts.push(coef);
            } else if coef == "1" {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{coef}*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

/// `interp[j][b]`: coefficient of `T^j` in `1 - (T - b)^{q-1}`.
fn interpolation_matrix(f: &FieldCtx) -> Vec<Vec<Elem>> {
    let q = f.q() as usize;
    let mut m = vec![vec![f.zero(); q]; q];
    m[0][0] = f.one();
    for b in 0..q {
        let be = f.elem(b as u32);
        let mut pw = f.one();
        for j in (1..q).rev() {
            // b^{q-1-j}, with 0^0 = 1
            m[j][b] = f.neg(pw);
            pw = f.mul(pw, be);
        }
    }
    m
}

/// `F_c`: interpolates `c` on nonzero vectors, with value `sum_P c(P)` at
/// the origin so the `X^{q-1} Y^{q-1} Z^{q-1}` term vanishes.
pub fn reduced_polynomial(c: &Codeword) -> ReducedPoly3 {
    let plane = &c.plane;
    let f = plane.field();
    let q = f.q() as usize;
    let p = f.p() as u64;
    let mat = interpolation_matrix(f);
    let mut grid = vec![f.zero(); q * q * q];
    let at = |x: usize, y: usize, z: usize| (x * q + y) * q + z;
    let total = c.values.iter().map(|&v| v as u64).sum::<u64>() % p;
    let lifted: Vec<Elem> = c.values.iter().map(|&v| f.from_int(v as i64)).collect();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                grid[at(x, y, z)] = if x + y + z == 0 {
                    f.from_int(total as i64)
                } else {
                    let v = [f.elem(x as u32), f.elem(y as u32), f.elem(z as u32)];
                    lifted[plane.point_at(v).unwrap().idx()]
                };
            }
        }
    }
    let mut line = vec![f.zero(); q];
    let transform = |line: &[Elem], out: &mut [Elem]| {
        for (j, row) in mat.iter().enumerate() {
            let mut s = f.zero();
            for (b, &m) in row.iter().enumerate() {
                if !line[b].is_zero() {
                    s = f.add(s, f.mul(m, line[b]));
                }
            }
            out[j] = s;
        }
    };
    let mut out = vec![f.zero(); q];
    // z axis
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                line[z] = grid[at(x, y, z)];
            }
            transform(&line, &mut out);
            for z in 0..q {
                grid[at(x, y, z)] = out[z];
            }
        }
    }
    // y axis
    for x in 0..q {
        for z in 0..q {
            for y in 0..q {
                line[y] = grid[at(x, y, z)];
            }
            transform(&line, &mut out);
            for y in 0..q {
                grid[at(x, y, z)] = out[y];
            }
        }
    }
    // x axis
    for y in 0..q {
        for z in 0..q {
            for x in 0..q {
                line[x] = grid[at(x, y, z)];
            }
            transform(&line, &mut out);
            for x in 0..q {
                grid[at(x, y, z)] = out[x];
            }
        }
    }
    let mut terms = BTreeMap::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = grid[at(x, y, z)];
                if !v.is_zero() {
                    terms.insert((x as u32, y as u32, z as u32), v);
                }
            }
        }
    }
    let top = (q as u32 - 1, q as u32 - 1, q as u32 - 1);
    assert!(!terms.contains_key(&top), "top monomial survived normalization");
    ReducedPoly3 { terms }
}

/// Membership via the degree criterion: total degree of `F_c` at most `q - 1`.
pub fn membership_dgm(c: &Codeword) -> bool {
    let q = c.plane.q();
    reduced_polynomial(c).total_degree().is_none_or(|d| d < q)
}

/// `prod_{d in F_q \ D} (Y - dX)` as a polynomial in `X, Y`.
pub fn complement_product(f: &FieldCtx, d_set: &[Elem]) -> ReducedPoly3 {
    let mut h = ReducedPoly3::monomial((0, 0, 0), f.one());
    for d in f.elements().filter(|e| !d_set.contains(e)) {
        let factor = ReducedPoly3::from_terms([((0, 1, 0), f.one()), ((1, 0, 0), f.neg(d))]);
        h = h.mul(f, &factor);
    }
    h
}

/// The polynomial `G prod_{d not in D}(Y - dX) + c0 (1 - X^{q-1})`.
pub fn concurrent_polynomial(
    f: &FieldCtx,
    d_set: &[Elem],
    g: &ReducedPoly3,
    c0: Elem,
) -> Result<ReducedPoly3, CodeError> {
    let mut seen = d_set.to_vec();
    seen.sort();
    seen.dedup();
    if seen.len() != d_set.len() {
        return Err(CodeError::RepeatedSlope);
    }
    if d_set.is_empty() {
        if !g.is_zero() {
            return Err(CodeError::BadG { expected: 0 });
        }
    } else if !g.is_homogeneous(d_set.len() as u32 - 1) {
        return Err(CodeError::BadG {
            expected: d_set.len() - 1,
        });
    }
    let h = complement_product(f, d_set);
    let q = f.q();
    let base = ReducedPoly3::from_terms([((0, 0, 0), c0), ((q - 1, 0, 0), f.neg(c0))]);
    Ok(g.mul(f, &h).add(f, &base))
}

/// Evaluates a polynomial at every point; fails if a value leaves `F_p`.
pub fn codeword_from_polynomial(
    plane: &Arc<PlaneCtx>,
    poly: &ReducedPoly3,
) -> Result<Codeword, CodeError> {
    let f = plane.field();
    let q = f.q() as usize;
    // pw[v][e] = v^e
    let pw: Vec<Vec<Elem>> = f
        .elements()
        .map(|v| {
            let mut row = Vec::with_capacity(q);
            let mut x = f.one();
            for _ in 0..q {
                row.push(x);
                x = f.mul(x, v);
            }
            row
        })
        .collect();
    let mut values = vec![0u32; plane.size()];
    for pt in plane.point_ids() {
        let [x, y, z] = plane.point_coords(pt);
        let mut acc = f.zero();
        for ((i, j, k), c) in poly.terms() {
            let m = f.mul(
                f.mul(pw[x.code() as usize][i as usize], pw[y.code() as usize][j as usize]),
                pw[z.code() as usize][k as usize],
            );
            acc = f.add(acc, f.mul(c, m));
        }
        values[pt.idx()] = f.nu(acc).map_err(|_| CodeError::NotPrimeValued(pt))?;
    }
    Ok(Codeword {
        plane: plane.clone(),
        values,
    })
}

/// The codeword with polynomial `G prod_{d not in D}(Y - dX) + c0 (1 - X^{q-1})`,
/// supported on `X = 0` and the lines `Y = dX`, `d` in `D`.
pub fn odd_from_polynomial(
    plane: &Arc<PlaneCtx>,
    d_set: &[Elem],
    g: &ReducedPoly3,
    c0: Elem,
) -> Result<Codeword, CodeError> {
    let f = plane.field();
    let poly = concurrent_polynomial(f, d_set, g, c0)?;
    codeword_from_polynomial(plane, &poly)
}

/// The lines `X = 0` and `Y = dX` for `d` in `D`.
pub fn concurrent_frame_lines(plane: &PlaneCtx, d_set: &[Elem]) -> Vec<LineId> {
    let f = plane.field();
    let mut out = vec![plane.line_at([f.one(), f.zero(), f.zero()]).unwrap()];
    for &d in d_set {
        out.push(plane.line_at([d, f.neg(f.one()), f.zero()]).unwrap());
    }
    out
}

fn common_point(plane: &PlaneCtx, lines: &[LineId]) -> Result<PointId, CodeError> {
    let pt = plane.meet(lines[0], lines[1])?;
    if lines.iter().all(|&l| plane.incident(pt, l)) {
        Ok(pt)
    } else {
        Err(CodeError::NotConcurrent)
    }
}

fn check_distinct(lines: &[LineId], min: usize) -> Result<(), CodeError> {
    let mut v = lines.to_vec();
    v.sort();
    v.dedup();
    if v.len() != lines.len() || v.len() < min {
        return Err(CodeError::TooFewLines(min));
    }
    Ok(())
}

/// Member of the code, supported on the lines, and not constant on any
/// line minus the common point.
pub fn is_odd_codeword(c: &Codeword, lines: &[LineId]) -> Result<bool, CodeError> {
    let plane = &c.plane;
    check_distinct(lines, 2)?;
    let pt = common_point(plane, lines)?;
    let covered = c
        .support()
        .into_iter()
        .all(|x| lines.iter().any(|&l| plane.incident(x, l)));
    if !covered || !membership_linear(c) {
        return Ok(false);
    }
    Ok(lines.iter().all(|&l| {
        let vals: Vec<u32> = plane
            .points_on(l)
            .iter()
            .filter(|&&x| x != pt)
            .map(|x| c.get(*x))
            .collect();
        vals.iter().any(|&v| v != vals[0])
    }))
}

fn require_prime(plane: &PlaneCtx, min_exclusive: u32) -> Result<(), CodeError> {
    if plane.field().h() != 1 {
        return Err(CodeError::NeedPrimeField(plane.q()));
    }
    if plane.p() <= min_exclusive {
        return Err(CodeError::PrimeTooSmall {
            p: plane.p(),
            min: min_exclusive,
        });
    }
    Ok(())
}

fn word_from(plane: &Arc<PlaneCtx>, parts: &[([i64; 2], fn(i64) -> i64)]) -> Codeword {
    // parts: points (a, b, z) with value fn(z)
    let f = plane.field();
    let p = f.p() as i64;
    let mut c = Codeword::zero(plane.clone());
    for &([a, b], val) in parts {
        for z in 0..p {
            let pt = plane
                .point_at([f.from_int(a), f.from_int(b), f.from_int(z)])
                .unwrap();
            c.set(pt, val(z).rem_euclid(p) as u32);
        }
    }
    c
}

/// `z` on `(1,0,z)`, `(0,1,z)` and on `(1,1,-z)`.
pub fn example_odd_3(plane: &Arc<PlaneCtx>) -> Result<Codeword, CodeError> {
    require_prime(plane, 2)?;
    Ok(word_from(
        plane,
        &[([1, 0], |z| z), ([0, 1], |z| z), ([1, 1], |z| -z)],
    ))
}

/// `z` on `(1,0,-z)`, `(0,1,z)` and `(1,-1,z)`.
pub fn example_odd_3_antidiagonal(plane: &Arc<PlaneCtx>) -> Result<Codeword, CodeError> {
    require_prime(plane, 2)?;
    Ok(word_from(
        plane,
        &[([1, 0], |z| -z), ([0, 1], |z| z), ([1, -1], |z| z)],
    ))
}

/// `2z^2` on `(1,0,z)` and `(0,1,z)`, `-z^2` on `(1,1,z)` and `(1,-1,z)`.
pub fn example_odd_4(plane: &Arc<PlaneCtx>) -> Result<Codeword, CodeError> {
    require_prime(plane, 3)?;
    Ok(word_from(
        plane,
        &[
            ([1, 0], |z| 2 * z * z),
            ([0, 1], |z| 2 * z * z),
            ([1, 1], |z| -z * z),
            ([1, -1], |z| -z * z),
        ],
    ))
}

/// Z-degree of `F_c` after applying `t`, which must take `pt` to `(0,0,1)`.
pub fn rank_at_with(c: &Codeword, pt: PointId, t: &Projectivity) -> i64 {
    let plane = &c.plane;
    assert_eq!(
        t.apply_point(pt),
        plane.point_codes([0, 0, 1]),
        "transform must take the point to (0,0,1)"
    );
    reduced_polynomial(&c.transform(t)).z_degree()
}

/// `P`-rank of `c`, `-1` for the zero word.
pub fn rank_at(c: &Codeword, pt: PointId) -> i64 {
    let plane = &c.plane;
    let through = plane.lines_through(pt);
    let t = transform_taking(plane, pt, through[0], through[1]).expect("two lines through a point");
    rank_at_with(c, pt, &t)
}

/// `(r+1)(n-1-r/2)+1`
pub fn concurrent_subspace_dim(n: usize, r: usize) -> usize {
    // (r+1)(2n-2-r)/2 + 1, exact since one of the factors is even
    (r + 1) * (2 * n - 2 - r) / 2 + 1
}

/// Generators of the words supported on `lines` (concurrent at `pt`) with
/// `pt`-rank at most `r`, from the monomials of `G` with Z-degree at most `r`
/// and the constant part.
pub fn concurrent_subspace_basis(
    plane: &Arc<PlaneCtx>,
    pt: PointId,
    lines: &[LineId],
    r: i64,
) -> Result<Vec<Codeword>, CodeError> {
    if plane.field().h() != 1 {
        return Err(CodeError::NeedPrimeField(plane.q()));
    }
    let n = lines.len();
    if r < 0 || r + 2 > n as i64 {
        return Err(CodeError::RankOutOfRange {
            r,
            max: n as i64 - 2,
        });
    }
    check_distinct(lines, 2)?;
    for &l in lines {
        if !plane.incident(pt, l) {
            return Err(CodeError::NotConcurrent);
        }
    }
    let f = plane.field();
    let last = lines[n - 1];
    let t = transform_taking(plane, pt, last, lines[0])?;
    let back = t.inverse(plane);
    let mut d_set = Vec::with_capacity(n - 1);
    for &l in &lines[..n - 1] {
        let [a, b, _] = plane.line_coords(t.apply_line(l));
        d_set.push(f.neg(f.div(a, b).expect("image is not X = 0")));
    }
    let deg = (n - 2) as u32;
    let mut out = Vec::new();
    out.push(odd_from_polynomial(plane, &d_set, &ReducedPoly3::zero(), f.one())?.transform(&back));
    for k in 0..=(r as u32) {
        for i in 0..=(deg - k) {
            let j = deg - k - i;
            let g = ReducedPoly3::monomial((i, j, k), f.one());
            out.push(odd_from_polynomial(plane, &d_set, &g, f.zero())?.transform(&back));
        }
    }
    Ok(out)
}

/// Dimension of the subcode of words supported inside `allowed`.
pub fn supported_subcode_dim(plane: &PlaneCtx, allowed: &[bool]) -> usize {
    let e = plane.code_space();
    let outside: Vec<usize> = (0..plane.size()).filter(|&i| !allowed[i]).collect();
    let rows: Vec<Vec<u32>> = e
        .rows()
        .iter()
        .map(|r| outside.iter().map(|&i| r[i]).collect())
        .collect();
    let restricted = if outside.is_empty() {
        0
    } else {
        rank_mod_p(plane.p(), &rows)
    };
    e.rank() - restricted
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityReport {
    pub rank: i64,
    pub rank_at_most_r: bool,
    /// Whether `c` lies in the span of the rank-`r` subspaces on `r + 2` of the lines.
    pub in_span: bool,
    pub agree: bool,
}

/// Checks that `rk_P(c) <= r` exactly when `c` lies in the span of the
/// subspaces on `{l_j, l_{n-r}, ..., l_n}`, `j < n - r`.
pub fn reducibility_split(
    c: &Codeword,
    pt: PointId,
    lines: &[LineId],
    r: i64,
) -> Result<ReducibilityReport, CodeError> {
    let plane = &c.plane;
    for &l in lines {
        if !plane.incident(pt, l) {
            return Err(CodeError::NotConcurrent);
        }
    }
    let covered = c
        .support()
        .into_iter()
        .all(|x| lines.iter().any(|&l| plane.incident(x, l)));
    if !covered {
        return Err(CodeError::SupportNotCovered);
    }
    if r < 0 {
        return Err(CodeError::RankOutOfRange {
            r,
            max: lines.len() as i64 - 2,
        });
    }
    let rank = rank_at(c, pt);
    let n = lines.len();
    let in_span = if r as usize + 2 >= n {
        membership_linear(c)
    } else {
        let r_us = r as usize;
        let tail = &lines[n - r_us - 1..];
        let mut span = RowEchelon::new(plane.p(), plane.size());
        for &lj in &lines[..n - r_us - 1] {
            let mut sub = vec![lj];
            sub.extend_from_slice(tail);
            for w in concurrent_subspace_basis(plane, pt, &sub, r)? {
                span.insert(w.values());
            }
        }
        span.contains(c.values())
    };
    let rank_at_most_r = rank <= r;
    Ok(ReducibilityReport {
        rank,
        rank_at_most_r,
        in_span,
        agree: rank_at_most_r == in_span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::random_invertible;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane(p: u64, h: u32) -> Arc<PlaneCtx> {
        PlaneCtx::new(FieldCtx::new(p, h).unwrap())
    }

    fn random_member(pl: &Arc<PlaneCtx>, rng: &mut ChaCha8Rng) -> Codeword {
        let mut comb = LineCombination::new();
        for _ in 0..rng.gen_range(1..6) {
            let l = LineId(rng.gen_range(0..pl.size() as u32));
            comb.add_to(l, rng.gen_range(1..pl.p()), pl.p());
        }
        codeword_from_combination(pl, &comb)
    }

    #[test]
    fn combinations() {
        let pl = plane(5, 1);
        let l = pl.line_codes([1, 2, 3]);
        let m = pl.line_codes([0, 1, 4]);
        let mut comb = LineCombination::new();
        comb.set(l, 1);
        assert_eq!(codeword_from_combination(&pl, &comb).weight(), 6);
        comb.add_to(l, 4, 5);
        assert!(comb.is_empty());
        comb.set(l, 1);
        comb.set(m, 1);
        assert_eq!(codeword_from_combination(&pl, &comb).weight(), 11);
    }

    #[test]
    fn membership_basics() {
        for (p, h) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let pl = plane(p, h);
            let ones = Codeword::all_ones(pl.clone());
            assert!(membership_linear(&ones));
            assert!(membership_dgm(&ones));
            let pt = Codeword::point(pl.clone(), PointId(3));
            assert!(!membership_linear(&pt));
            assert!(!membership_dgm(&pt));
            assert!(!line_sum_invariance(&pt));
            let l = Codeword::line(pl.clone(), LineId(3));
            assert!(membership_linear(&l) && membership_dgm(&l));
        }
        // the all-ones word as an explicit sum of the lines through a point
        let pl = plane(5, 1);
        let mut comb = LineCombination::new();
        for &l in pl.lines_through(PointId(0)) {
            comb.set(l, 1);
        }
        assert_eq!(codeword_from_combination(&pl, &comb), Codeword::all_ones(pl.clone()));
    }

    #[test]
    fn reduced_polynomial_of_a_line() {
        let pl = plane(5, 1);
        let f = pl.field();
        let c = Codeword::line(pl.clone(), pl.line_codes([1, 0, 0]));
        let want = ReducedPoly3::from_terms([((0, 0, 0), f.one()), ((4, 0, 0), f.from_int(-1))]);
        assert_eq!(reduced_polynomial(&c), want);
        assert!(reduced_polynomial(&Codeword::zero(pl.clone())).is_zero());
        assert_eq!(rank_at(&c, pl.point_codes([0, 0, 1])), 0);
    }

    #[test]
    fn reduced_polynomial_reproduces_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (p, h) in [(3, 1), (2, 2), (7, 1)] {
            let pl = plane(p, h);
            let f = pl.field();
            for _ in 0..5 {
                let vals = (0..pl.size()).map(|_| rng.gen_range(0..p as u32)).collect();
                let c = Codeword::from_values(pl.clone(), vals);
                let poly = reduced_polynomial(&c);
                for pt in pl.point_ids() {
                    assert_eq!(poly.eval(f, pl.point_coords(pt)), c.value_elem(pt));
                }
                for ((i, j, k), _) in poly.terms() {
                    assert_eq!((i + j + k) % (f.q() - 1), 0);
                }
            }
        }
    }

    #[test]
    fn examples_are_odd() {
        let pl = plane(5, 1);
        let c3 = example_odd_3(&pl).unwrap();
        assert_eq!(c3.weight(), 12);
        assert_eq!(reduced_polynomial(&c3).total_degree(), Some(4));
        let lines3 = [pl.line_codes([0, 1, 0]), pl.line_codes([1, 0, 0]), pl.line_codes([1, 4, 0])];
        assert!(is_odd_codeword(&c3, &lines3).unwrap());
        assert!(line_sum_invariance(&c3));
        let span = RowEchelon::from_rows(
            5,
            pl.size(),
            lines3.iter().map(|&l| Codeword::line(pl.clone(), l).values.clone()).collect::<Vec<_>>().iter().map(Vec::as_slice),
        );
        assert!(!span.contains(c3.values()));

        let c4 = example_odd_4(&pl).unwrap();
        assert_eq!(c4.weight(), 16);
        assert!(membership_linear(&c4) && membership_dgm(&c4));
        let f = pl.field();
        let lines4 = concurrent_frame_lines(&pl, &[f.from_int(-1), f.zero(), f.one()]);
        assert!(is_odd_codeword(&c4, &lines4).unwrap());
        assert_eq!(rank_at(&c4, pl.point_codes([0, 0, 1])), 2);

        let l = lines3[0];
        assert!(!is_odd_codeword(&Codeword::line(pl.clone(), l), &lines3[..2]).unwrap());
        let not_conc = [lines3[0], lines3[1], pl.line_codes([1, 1, 1])];
        assert_eq!(is_odd_codeword(&c3, &not_conc), Err(CodeError::NotConcurrent));
        assert!(matches!(example_odd_4(&plane(3, 1)), Err(CodeError::PrimeTooSmall { .. })));
    }

    #[test]
    fn odd_from_polynomial_example() {
        let pl = plane(5, 1);
        let f = pl.field();
        let d = [f.from_int(-1), f.zero(), f.one()];
        let g = ReducedPoly3::monomial((0, 0, 2), f.from_int(2));
        let c = odd_from_polynomial(&pl, &d, &g, f.zero()).unwrap();
        assert_eq!(c, example_odd_4(&pl).unwrap());
        let poly = concurrent_polynomial(f, &d, &g, f.zero()).unwrap();
        assert_eq!(reduced_polynomial(&c), poly);

        let line = odd_from_polynomial(&pl, &d, &ReducedPoly3::zero(), f.one()).unwrap();
        assert_eq!(line, Codeword::line(pl.clone(), pl.line_codes([1, 0, 0])));
        let bad = ReducedPoly3::monomial((0, 0, 1), f.one());
        assert_eq!(
            odd_from_polynomial(&pl, &d, &bad, f.zero()),
            Err(CodeError::BadG { expected: 2 })
        );
    }

    #[test]
    fn non_prime_values_rejected() {
        let pl = plane(3, 2);
        let f = pl.field();
        // on two lines G is a constant; a non-prime constant leaves F_3
        let d = [f.zero()];
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let g = ReducedPoly3::monomial((0, 0, 0), x);
        assert!(matches!(
            odd_from_polynomial(&pl, &d, &g, f.zero()),
            Err(CodeError::NotPrimeValued(_))
        ));
    }

    #[test]
    fn rank_is_transform_independent_and_subadditive() {
        let pl = plane(7, 1);
        let f = pl.field();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let origin = pl.point_codes([0, 0, 1]);
        let d = [f.zero(), f.one(), f.from_int(3)];
        for _ in 0..10 {
            let mut terms = Vec::new();
            for i in 0..=2u32 {
                for k in 0..=(2 - i) {
                    terms.push(((i, 2 - i - k, k), f.elem(rng.gen_range(0..7))));
                }
            }
            let g = ReducedPoly3::from_terms(terms);
            let c = odd_from_polynomial(&pl, &d, &g, f.elem(rng.gen_range(0..7))).unwrap();
            let r0 = rank_at(&c, origin);
            // conjugate by a random projectivity and move back
            let m = Projectivity::new(&pl, random_invertible(f, &mut rng)).unwrap();
            let c2 = c.transform(&m);
            let pt2 = m.apply_point(origin);
            assert_eq!(rank_at(&c2, pt2), r0);
            let through = pl.lines_through(pt2);
            let t = transform_taking(&pl, pt2, through[3], through[5]).unwrap();
            assert_eq!(rank_at_with(&c2, pt2, &t), r0);
            let other = random_member(&pl, &mut rng);
            let rs = rank_at(&c.add(&other), origin);
            assert!(rs <= r0.max(rank_at(&other, origin)));
        }
    }

    #[test]
    fn subspace_dimensions_small() {
        let pl = plane(5, 1);
        let origin = pl.point_codes([0, 0, 1]);
        let through = pl.lines_through(origin).to_vec();
        let rank = |n: usize, r: i64| {
            let b = concurrent_subspace_basis(&pl, origin, &through[..n], r).unwrap();
            rank_mod_p(5, &b.iter().map(|c| c.values.clone()).collect::<Vec<_>>())
        };
        assert_eq!(rank(3, 1), 4);
        assert_eq!(rank(2, 0), 2);
        assert_eq!(rank(4, 2), 7);
        assert_eq!(concurrent_subspace_dim(3, 1), 4);
        assert!(matches!(
            concurrent_subspace_basis(&pl, origin, &through[..3], 2),
            Err(CodeError::RankOutOfRange { .. })
        ));
        // supported subcode of all words on the 4 lines agrees
        let mut allowed = vec![false; pl.size()];
        for &l in &through[..4] {
            for pt in pl.points_on(l) {
                allowed[pt.idx()] = true;
            }
        }
        assert_eq!(supported_subcode_dim(&pl, &allowed), 7);
    }

    #[test]
    fn reducibility_examples() {
        let pl = plane(5, 1);
        let origin = pl.point_codes([0, 0, 1]);
        let lines = [pl.line_codes([0, 1, 0]), pl.line_codes([1, 0, 0]), pl.line_codes([1, 4, 0])];
        let c3 = example_odd_3(&pl).unwrap();
        let rep = reducibility_split(&c3, origin, &lines, 0).unwrap();
        assert_eq!(rep.rank, 1);
        assert!(!rep.rank_at_most_r && !rep.in_span && rep.agree);
        let comb = Codeword::line(pl.clone(), lines[0]).add_scaled(&Codeword::line(pl.clone(), lines[2]), 3);
        let rep = reducibility_split(&comb, origin, &lines, 0).unwrap();
        assert!(rep.rank_at_most_r && rep.in_span && rep.agree);
    }

    #[test]
    fn dot_product_with_lines() {
        let pl = plane(5, 1);
        let l = Codeword::line(pl.clone(), LineId(9));
        let m = Codeword::line(pl.clone(), LineId(20));
        assert_eq!(dot(&l, &m), 1);
        assert_eq!(dot(&l, &l), 1);
        assert!(line_sum_invariance(&l));
    }
}
