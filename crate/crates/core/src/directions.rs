//! Multisets of affine points and the directions they determine.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, UniPoly};
use crate::plane::{LineId, PlaneCtx, PointId, Slope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectionsError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// A multiset of points of `AG(2,q)`, stored densely by affine index `x q + y`.
#[derive(Clone)]
pub struct PointMultiset {
    plane: Arc<PlaneCtx>,
    mult: Vec<u64>,
}

impl std::fmt::Debug for PointMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointMultiset")
            .field("q", &self.plane.q())
            .field("size", &self.size())
            .finish()
    }
}

impl PartialEq for PointMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.plane.field() == other.plane.field() && self.mult == other.mult
    }
}

impl Eq for PointMultiset {}

impl PointMultiset {
    pub fn empty(plane: Arc<PlaneCtx>) -> Self {
        let n = (plane.q() * plane.q()) as usize;
        PointMultiset {
            plane,
            mult: vec![0; n],
        }
    }

    /// Multiset from per-affine-index multiplicities.
    pub fn from_dense(plane: Arc<PlaneCtx>, mult: Vec<u64>) -> Self {
        assert_eq!(mult.len(), (plane.q() * plane.q()) as usize);
        PointMultiset { plane, mult }
    }

    pub fn plane(&self) -> &Arc<PlaneCtx> {
        &self.plane
    }

    pub fn get(&self, x: Elem, y: Elem) -> u64 {
        self.mult[(x.code() * self.plane.q() + y.code()) as usize]
    }

    pub fn add(&mut self, x: Elem, y: Elem, m: u64) {
        self.mult[(x.code() * self.plane.q() + y.code()) as usize] += m;
    }

    pub fn set(&mut self, x: Elem, y: Elem, m: u64) {
        self.mult[(x.code() * self.plane.q() + y.code()) as usize] = m;
    }

    pub fn dense(&self) -> &[u64] {
        &self.mult
    }

    /// `sum of multiplicities`
    pub fn size(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// `(x, y, multiplicity)` for every point of positive multiplicity.
    pub fn entries(&self) -> impl Iterator<Item = (Elem, Elem, u64)> + '_ {
        let f = self.plane.field();
        let q = self.plane.q() as usize;
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(move |(i, &m)| (f.elem((i / q) as u32), f.elem((i % q) as u32), m))
    }

    /// Adds `m` copies of the affine part of a line.
    pub fn add_line(&mut self, l: LineId, m: u64) {
        for &pt in self.plane.clone().points_on(l) {
            if let Some(i) = self.plane.affine_index(pt) {
                self.mult[i] += m;
            }
        }
    }

    pub fn from_lines(plane: Arc<PlaneCtx>, lines: &[(LineId, u64)]) -> Self {
        let mut m = Self::empty(plane);
        for &(l, k) in lines {
            m.add_line(l, k);
        }
        m
    }

    /// Image under the affine map `(x,y) -> (a x + b y + e, c x + d y + f)`.
    pub fn affine_image(&self, m: [[Elem; 3]; 2]) -> Self {
        let f = self.plane.field();
        let mut out = Self::empty(self.plane.clone());
        for (x, y, k) in self.entries() {
            let nx = f.add(f.add(f.mul(m[0][0], x), f.mul(m[0][1], y)), m[0][2]);
            let ny = f.add(f.add(f.mul(m[1][0], x), f.mul(m[1][1], y)), m[1][2]);
            out.add(nx, ny, k);
        }
        out
    }

    pub fn to_projective(&self) -> ProjMultiset {
        let mut pm = ProjMultiset::empty(self.plane.clone());
        for (i, &m) in self.mult.iter().enumerate() {
            pm.mult[self.plane.affine_index_point(i).idx()] += m;
        }
        pm
    }
}

/// Line counts of a multiset for every slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSpectrum {
    q: u32,
    p: u32,
    size: u64,
    /// `counts[slope index][intercept code]`
    counts: Vec<Vec<u64>>,
}

impl DirectionSpectrum {
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn counts(&self, s: Slope) -> &[u64] {
        &self.counts[s.index(self.q)]
    }

    pub fn counts_by_index(&self, s: usize) -> &[u64] {
        &self.counts[s]
    }

    pub fn equidistributed(&self, s: Slope) -> bool {
        self.equi_idx(s.index(self.q))
    }

    fn equi_idx(&self, s: usize) -> bool {
        let q = self.q as u64;
        let lo = self.size / q;
        let hi = self.size.div_ceil(q);
        self.counts[s].iter().all(|&c| c == lo || c == hi)
    }

    pub fn mod_equidistributed(&self, s: Slope) -> bool {
        self.residue(s).is_some()
    }

    /// The common residue mod `p` of the line counts, if there is one.
    pub fn residue(&self, s: Slope) -> Option<u32> {
        self.residue_idx(s.index(self.q))
    }

    fn residue_idx(&self, s: usize) -> Option<u32> {
        let p = self.p as u64;
        let r = self.counts[s][0] % p;
        self.counts[s].iter().all(|&c| c % p == r).then_some(r as u32)
    }

    fn slopes_where(&self, pred: impl Fn(usize) -> bool, plane: &PlaneCtx) -> Vec<Slope> {
        (0..=self.q as usize)
            .filter(|&s| pred(s))
            .map(|s| Slope::from_index(plane.field(), s))
            .collect()
    }

    /// Special directions in slope order, infinity last.
    pub fn special(&self, plane: &PlaneCtx) -> Vec<Slope> {
        self.slopes_where(|s| !self.equi_idx(s), plane)
    }

    pub fn mod_special(&self, plane: &PlaneCtx) -> Vec<Slope> {
        self.slopes_where(|s| self.residue_idx(s).is_none(), plane)
    }

    pub fn num_special(&self) -> usize {
        (0..=self.q as usize).filter(|&s| !self.equi_idx(s)).count()
    }

    pub fn num_mod_special(&self) -> usize {
        (0..=self.q as usize)
            .filter(|&s| self.residue_idx(s).is_none())
            .count()
    }
}

pub fn spectrum(m: &PointMultiset) -> DirectionSpectrum {
    let plane = &m.plane;
    let f = plane.field();
    let q = plane.q();
    let mut counts = vec![vec![0u64; q as usize]; q as usize + 1];
    for (x, y, k) in m.entries() {
        for (s, row) in counts.iter_mut().enumerate() {
            let b = plane.intercept(Slope::from_index(f, s), x, y);
            row[b.code() as usize] += k;
        }
    }
    DirectionSpectrum {
        q,
        p: plane.p(),
        size: m.size(),
        counts,
    }
}

/// `b -> |M ∩ {Y = dX + b}| mod p` (or `X + b = 0` for infinity) as a
/// polynomial of degree at most `q - 1`.
pub fn projection_poly(m: &PointMultiset, s: Slope) -> UniPoly {
    let f = m.plane.field();
    let sp = spectrum(m);
    let vals: Vec<Elem> = sp
        .counts(s)
        .iter()
        .map(|&c| f.from_int((c % f.p() as u64) as i64))
        .collect();
    UniPoly::interpolate_all(f, &vals)
}

/// Direct evaluation of the additive Rédei polynomial `F_M(t, d, b)`.
///
/// Requires infinity to be mod-special unless `skip_check` is set; with the
/// check skipped, `E` is still the set of finite mod-equidistributed slopes.
pub fn redei_additive_eval(
    m: &PointMultiset,
    t: Elem,
    d: Elem,
    b: Elem,
    skip_check: bool,
) -> Result<Elem, DirectionsError> {
    let f = m.plane.field();
    let sp = spectrum(m);
    if !skip_check && sp.mod_equidistributed(Slope::Infinite) {
        return Err(DirectionsError::HypothesisViolated(
            "direction infinity is not mod-special".into(),
        ));
    }
    let e = (f.q() - 1) as u64;
    let mut acc = f.zero();
    for (x, y, k) in m.entries() {
        let lin = f.sub(f.mul(y, t), f.add(f.mul(d, x), b));
        let term = f.sub(f.one(), f.pow(lin, e));
        acc = f.add(acc, f.mul(f.from_int((k % f.p() as u64) as i64), term));
    }
    for ev in f.elements() {
        if let Some(r) = sp.residue(Slope::Finite(ev)) {
            let term = f.sub(f.one(), f.pow(f.sub(d, f.mul(ev, t)), e));
            acc = f.sub(acc, f.mul(f.from_int(r as i64), term));
        }
    }
    Ok(acc)
}

fn lines_per_q(m: &PointMultiset) -> Result<u64, DirectionsError> {
    let q = m.plane.q() as u64;
    let size = m.size();
    if size == 0 || !size.is_multiple_of(q) {
        return Err(DirectionsError::NotApplicable(format!(
            "size {size} is not a positive multiple of q = {q}"
        )));
    }
    Ok(size / q)
}

fn check_rebuild(m: &PointMultiset, lines: &[(LineId, u64)]) -> Result<(), DirectionsError> {
    if PointMultiset::from_lines(m.plane.clone(), lines) == *m {
        Ok(())
    } else {
        Err(DirectionsError::HypothesisViolated(
            "extracted lines do not rebuild the multiset".into(),
        ))
    }
}

/// Parallel lines with multiplicities whose union is `m`, when `m` has size
/// `nq` and exactly one special direction.
pub fn decompose_one_direction(m: &PointMultiset) -> Result<Vec<(LineId, u64)>, DirectionsError> {
    lines_per_q(m)?;
    let plane = &m.plane;
    let sp = spectrum(m);
    let special = sp.special(plane);
    if special.len() != 1 {
        return Err(DirectionsError::NotApplicable(format!(
            "{} special directions, expected 1",
            special.len()
        )));
    }
    let mut out = Vec::new();
    for &l in plane.lines_with_slope(special[0]) {
        let ms: Vec<u64> = affine_points_on(plane, l).map(|i| m.mult[i]).collect();
        if ms.iter().any(|&x| x != ms[0]) {
            return Err(DirectionsError::HypothesisViolated(
                "multiplicity is not constant along a line of the special slope".into(),
            ));
        }
        if ms[0] > 0 {
            out.push((l, ms[0]));
        }
    }
    check_rebuild(m, &out)?;
    Ok(out)
}

fn affine_points_on(plane: &PlaneCtx, l: LineId) -> impl Iterator<Item = usize> + '_ {
    plane.points_on(l).iter().filter_map(|&pt| plane.affine_index(pt))
}

/// Lines of the two special slopes whose union is `m`, when `m` has size
/// `nq` and exactly two special directions.
pub fn decompose_two_directions(
    m: &PointMultiset,
) -> Result<Vec<(LineId, u64)>, DirectionsError> {
    let n = lines_per_q(m)? as i64;
    let plane = &m.plane;
    let f = plane.field();
    let q = plane.q() as i64;
    let sp = spectrum(m);
    let special = sp.special(plane);
    if special.len() != 2 {
        return Err(DirectionsError::NotApplicable(format!(
            "{} special directions, expected 2",
            special.len()
        )));
    }
    let (s1, s2) = (special[0], special[1]);
    let a_counts: Vec<i64> = sp.counts(s1).iter().map(|&c| c as i64).collect();
    let b_counts: Vec<i64> = sp.counts(s2).iter().map(|&c| c as i64).collect();
    for (x, y, _) in (0..q * q).map(|i| {
        let i = i as u32;
        (f.elem(i / q as u32), f.elem(i % q as u32), ())
    }) {
        let ax = a_counts[plane.intercept(s1, x, y).code() as usize];
        let by = b_counts[plane.intercept(s2, x, y).code() as usize];
        let num = ax + by - n;
        if num.rem_euclid(q) != 0 || num / q != m.get(x, y) as i64 {
            return Err(DirectionsError::HypothesisViolated(
                "multiplicity differs from (a_x + b_y - n)/q".into(),
            ));
        }
    }
    let a = a_counts[0].rem_euclid(q);
    let b = b_counts[0].rem_euclid(q);
    let r: Vec<i64> = a_counts.iter().map(|&c| (c - a) / q).collect();
    let s: Vec<i64> = b_counts.iter().map(|&c| (c - b) / q).collect();
    let t = (n - a - b) / q;
    let t1 = t.min(*r.iter().min().unwrap());
    let t2 = t - t1;
    let mut out = Vec::new();
    for (slope, offs, sub) in [(s1, &r, t1), (s2, &s, t2)] {
        for (bi, &l) in plane.lines_with_slope(slope).iter().enumerate() {
            let k = offs[bi] - sub;
            if k < 0 {
                return Err(DirectionsError::HypothesisViolated(
                    "negative line multiplicity".into(),
                ));
            }
            if k > 0 {
                out.push((l, k as u64));
            }
        }
    }
    out.sort();
    check_rebuild(m, &out)?;
    Ok(out)
}

/// Strips per-line minima along each special direction (slope order,
/// infinity last). Returns the extracted lines when nothing but a constant
/// residual remains; a constant residual `c` is returned as `c` copies of
/// every horizontal line.
pub fn union_of_lines_decomposition(m: &PointMultiset) -> Option<Vec<(LineId, u64)>> {
    let plane = m.plane.clone();
    let f = plane.field();
    let q = plane.q() as u64;
    if !m.size().is_multiple_of(q) {
        return None;
    }
    let special = spectrum(m).special(&plane);
    let mut rest = m.mult.clone();
    let mut out: Vec<(LineId, u64)> = Vec::new();
    for s in special {
        for &l in plane.lines_with_slope(s) {
            let idx: Vec<usize> = affine_points_on(&plane, l).collect();
            let mb = idx.iter().map(|&i| rest[i]).min().unwrap();
            if mb > 0 {
                idx.iter().for_each(|&i| rest[i] -= mb);
                out.push((l, mb));
            }
        }
    }
    let c = rest[0];
    if rest.iter().any(|&x| x != c) {
        return None;
    }
    if c > 0 {
        for &l in plane.lines_with_slope(Slope::Finite(f.zero())) {
            out.push((l, c));
        }
    }
    out.sort();
    // merge repeated lines
    let mut merged: Vec<(LineId, u64)> = Vec::new();
    for (l, k) in out {
        match merged.last_mut() {
            Some((pl, pk)) if *pl == l => *pk += k,
            _ => merged.push((l, k)),
        }
    }
    debug_assert!(PointMultiset::from_lines(plane.clone(), &merged) == *m);
    Some(merged)
}

/// A multiset of points of `PG(2,q)`, by point index.
#[derive(Clone, Debug)]
pub struct ProjMultiset {
    plane: Arc<PlaneCtx>,
    mult: Vec<u64>,
}

impl PartialEq for ProjMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.plane.field() == other.plane.field() && self.mult == other.mult
    }
}

impl Eq for ProjMultiset {}

impl ProjMultiset {
    pub fn empty(plane: Arc<PlaneCtx>) -> Self {
        let n = plane.size();
        ProjMultiset {
            plane,
            mult: vec![0; n],
        }
    }

    pub fn get(&self, pt: PointId) -> u64 {
        self.mult[pt.idx()]
    }

    pub fn add(&mut self, pt: PointId, m: u64) {
        self.mult[pt.idx()] += m;
    }

    pub fn size(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn line_count(&self, l: LineId) -> u64 {
        self.plane.points_on(l).iter().map(|pt| self.mult[pt.idx()]).sum()
    }

    pub fn plane(&self) -> &Arc<PlaneCtx> {
        &self.plane
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingReport {
    pub is_nfold: bool,
    /// Support points lying on some line that meets the multiset in exactly `n` points.
    pub essential_points: Vec<PointId>,
    pub is_minimal: bool,
    /// Lines `l` with `|M| - |M ∩ l| = nq`.
    pub redei_lines: Vec<LineId>,
    /// Whether every line meets the multiset in `n` points mod `p`.
    pub all_lines_n_mod_p: bool,
}

pub fn blocking_check(m: &ProjMultiset, n: u64) -> BlockingReport {
    let plane = &m.plane;
    let q = plane.q() as u64;
    let p = plane.p() as u64;
    let counts: Vec<u64> = plane.line_ids().map(|l| m.line_count(l)).collect();
    let is_nfold = counts.iter().all(|&c| c >= n);
    let essential_points: Vec<PointId> = plane
        .point_ids()
        .filter(|&pt| m.get(pt) > 0)
        .filter(|&pt| plane.lines_through(pt).iter().any(|l| counts[l.idx()] == n))
        .collect();
    let support = plane.point_ids().filter(|&pt| m.get(pt) > 0).count();
    let size = m.size();
    let redei_lines = plane
        .line_ids()
        .filter(|l| size - counts[l.idx()] == n * q)
        .collect();
    BlockingReport {
        is_nfold,
        is_minimal: is_nfold && essential_points.len() == support,
        essential_points,
        redei_lines,
        all_lines_n_mod_p: counts.iter().all(|&c| c % p == n % p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane(p: u64, h: u32) -> Arc<PlaneCtx> {
        PlaneCtx::new(FieldCtx::new(p, h).unwrap())
    }

    fn kiss_somlai(pl: &Arc<PlaneCtx>) -> PointMultiset {
        let f = pl.field();
        let mut m = PointMultiset::empty(pl.clone());
        for x in f.elements() {
            for y in f.elements() {
                if y.code() < x.code() {
                    m.add(x, y, 1);
                }
            }
        }
        m
    }

    #[test]
    fn one_line_has_one_special_direction() {
        let pl = plane(5, 1);
        let f = pl.field();
        let l = pl.line_with_slope(Slope::Finite(f.from_int(2)), f.one());
        let m = PointMultiset::from_lines(pl.clone(), &[(l, 1)]);
        let sp = spectrum(&m);
        assert_eq!(sp.special(&pl), vec![Slope::Finite(f.from_int(2))]);
        for s in Slope::all(f).filter(|&s| s != Slope::Finite(f.from_int(2))) {
            assert!(sp.counts(s).iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn kiss_somlai_three_special() {
        let pl = plane(5, 1);
        let m = kiss_somlai(&pl);
        assert_eq!(m.size(), 10);
        assert_eq!(spectrum(&m).num_special(), 3);
        for s in spectrum(&m).mod_special(&pl) {
            assert!(projection_poly(&m, s).degree().unwrap_or(0) <= 1);
        }
    }

    #[test]
    fn baer_subplane_q9() {
        let pl = plane(3, 2);
        let f = pl.field();
        let mut m = PointMultiset::empty(pl.clone());
        for x in 0..3 {
            for y in 0..3 {
                m.add(f.elem(x), f.elem(y), 1);
            }
        }
        assert_eq!(spectrum(&m).num_special(), 4);
        assert!(union_of_lines_decomposition(&m).is_none());
    }

    #[test]
    fn empty_multiset() {
        let pl = plane(7, 1);
        let m = PointMultiset::empty(pl.clone());
        let sp = spectrum(&m);
        assert_eq!(sp.num_special(), 0);
        assert_eq!(sp.num_mod_special(), 0);
        assert!(projection_poly(&m, Slope::Infinite).is_zero());
        assert_eq!(union_of_lines_decomposition(&m), Some(vec![]));
        let f = pl.field();
        for d in f.elements() {
            let v = redei_additive_eval(&m, f.one(), d, f.from_int(3), true).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn projection_poly_reproduces_counts() {
        let pl = plane(3, 2);
        let f = pl.field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mult = (0..81).map(|_| rng.gen_range(0..3)).collect();
        let m = PointMultiset::from_dense(pl.clone(), mult);
        let sp = spectrum(&m);
        for s in Slope::all(f) {
            let poly = projection_poly(&m, s);
            for b in f.elements() {
                let v = poly.eval(f, b);
                assert_eq!(f.pow(v, 3), v);
                assert_eq!(v, f.from_int((sp.counts(s)[b.code() as usize] % 3) as i64));
            }
        }
    }

    #[test]
    fn redei_matches_projection() {
        let pl = plane(5, 1);
        let f = pl.field();
        // shear the Kiss-Somlai set so that infinity becomes special
        let m = kiss_somlai(&pl);
        let sheared = m.affine_image([[f.one(), f.one(), f.zero()], [f.zero(), f.one(), f.zero()]]);
        assert!(spectrum(&sheared).mod_equidistributed(Slope::Infinite));
        let sp = spectrum(&m);
        assert!(!sp.mod_equidistributed(Slope::Infinite));
        for d in f.elements() {
            let poly = projection_poly(&m, Slope::Finite(d));
            for b in f.elements() {
                let v = redei_additive_eval(&m, f.one(), d, b, false).unwrap();
                if sp.mod_equidistributed(Slope::Finite(d)) {
                    assert!(v.is_zero());
                } else {
                    assert_eq!(v, poly.eval(f, b));
                }
            }
        }
        let pinf = projection_poly(&m, Slope::Infinite);
        for b in f.elements() {
            let v = redei_additive_eval(&m, f.zero(), f.one(), b, false).unwrap();
            assert_eq!(v, pinf.eval(f, b));
        }
        assert!(redei_additive_eval(&sheared, f.one(), f.one(), f.one(), false).is_err());
    }

    #[test]
    fn one_direction_decomposition() {
        let pl = plane(5, 1);
        let f = pl.field();
        let y0 = pl.line_with_slope(Slope::Finite(f.zero()), f.zero());
        let y1 = pl.line_with_slope(Slope::Finite(f.zero()), f.one());
        let m = PointMultiset::from_lines(pl.clone(), &[(y0, 2)]);
        assert_eq!(decompose_one_direction(&m).unwrap(), vec![(y0, 2)]);
        let m = PointMultiset::from_lines(pl.clone(), &[(y0, 1), (y1, 1)]);
        assert_eq!(decompose_one_direction(&m).unwrap(), vec![(y0, 1), (y1, 1)]);

        let pl7 = plane(7, 1);
        let f7 = pl7.field();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let s = Slope::from_index(f7, rng.gen_range(0..8));
            let lines: Vec<(LineId, u64)> = (0..3)
                .map(|_| (pl7.line_with_slope(s, f7.elem(rng.gen_range(0..7))), 1))
                .collect();
            let m = PointMultiset::from_lines(pl7.clone(), &lines);
            let got = decompose_one_direction(&m).unwrap();
            assert_eq!(PointMultiset::from_lines(pl7.clone(), &got), m);
        }
    }

    #[test]
    fn two_direction_decomposition() {
        let pl = plane(5, 1);
        let f = pl.field();
        let x0 = pl.line_with_slope(Slope::Infinite, f.zero());
        let y0 = pl.line_with_slope(Slope::Finite(f.zero()), f.zero());
        let m = PointMultiset::from_lines(pl.clone(), &[(x0, 1), (y0, 1)]);
        let mut want = vec![(x0, 1), (y0, 1)];
        want.sort();
        assert_eq!(decompose_two_directions(&m).unwrap(), want);

        let pl7 = plane(7, 1);
        let f7 = pl7.field();
        // X = 1 is X + 6 = 0
        let x1 = pl7.line_with_slope(Slope::Infinite, f7.from_int(-1));
        let y3 = pl7.line_with_slope(Slope::Finite(f7.zero()), f7.from_int(3));
        let m = PointMultiset::from_lines(pl7.clone(), &[(x1, 2), (y3, 1)]);
        let mut want = vec![(x1, 2), (y3, 1)];
        want.sort();
        assert_eq!(decompose_two_directions(&m).unwrap(), want);

        let ks = kiss_somlai(&pl);
        assert!(matches!(
            decompose_two_directions(&ks),
            Err(DirectionsError::NotApplicable(_))
        ));
    }

    #[test]
    fn union_of_lines_q9() {
        let pl = plane(3, 2);
        let f = pl.field();
        let lines = vec![
            (pl.line_with_slope(Slope::Finite(f.elem(0)), f.elem(4)), 1),
            (pl.line_with_slope(Slope::Finite(f.elem(0)), f.elem(7)), 1),
            (pl.line_with_slope(Slope::Finite(f.elem(5)), f.elem(1)), 1),
            (pl.line_with_slope(Slope::Infinite, f.elem(2)), 1),
        ];
        let m = PointMultiset::from_lines(pl.clone(), &lines);
        let got = union_of_lines_decomposition(&m).unwrap();
        assert_eq!(PointMultiset::from_lines(pl.clone(), &got), m);
    }

    #[test]
    fn blocking_sets() {
        let pl = plane(5, 1);
        let l = pl.line_codes([1, 2, 3]);
        let mut bs = ProjMultiset::empty(pl.clone());
        for &pt in pl.points_on(l) {
            bs.add(pt, 1);
        }
        let r = blocking_check(&bs, 1);
        assert!(r.is_nfold && r.is_minimal);
        assert_eq!(r.essential_points.len(), 6);
        let extra = pl.point_ids().find(|&pt| !pl.incident(pt, l)).unwrap();
        bs.add(extra, 1);
        let r = blocking_check(&bs, 1);
        assert!(r.is_nfold && !r.is_minimal);
        assert!(!r.essential_points.contains(&extra));
    }

    #[test]
    fn no_special_means_constant() {
        let pl = plane(3, 1);
        // exhaustive over 0/1 multisets on AG(2,3)
        for bits in 0u32..(1 << 9) {
            let mult = (0..9).map(|i| ((bits >> i) & 1) as u64).collect();
            let m = PointMultiset::from_dense(pl.clone(), mult);
            if m.size().is_multiple_of(3) && spectrum(&m).num_special() == 0 {
                assert!(bits == 0 || bits == (1 << 9) - 1);
            }
        }
    }
}
