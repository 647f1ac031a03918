//! Exhaustive and randomized verification campaigns.
//!
//! Work is split into index ranges, one per thread (`PGDIR_THREADS`, default
//! the available parallelism), and merged in a fixed order so reports do not
//! depend on scheduling. Randomized campaigns derive one ChaCha stream per
//! instance from the campaign seed.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bridge::{kiss_somlai_set, BridgeError};
use crate::gf::{FieldCtx, GfError};
use crate::linalg::{solve_combination, RowEchelon};
use crate::plane::{random_invertible, LineId, PlaneCtx, PlaneError, PointId, Projectivity, Slope};
use crate::planecode::{
    concurrent_frame_lines, concurrent_polynomial, concurrent_subspace_basis,
    concurrent_subspace_dim, codeword_from_combination, is_odd_codeword, membership_linear,
    odd_from_polynomial, supported_subcode_dim, CodeError, Codeword, LineCombination, ReducedPoly3,
    example_odd_3,
};

pub const SEED_CASE2: u64 = 0x5eed_0002;
pub const SEED_CLASSIFY: u64 = 0x5eed_0014;

/// Largest codeword count `exhaustive_min_weight` will enumerate.
pub const MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("not desk-enumerable: {0}")]
    NotDeskEnumerable(String),
    #[error("unsupported parameter: {0}")]
    BadParameter(String),
    #[error("cover not found: no 4 lines cover the support of a weight-{0} word")]
    CoverNotFound(usize),
    #[error("word is not a member of the code")]
    NotMember,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

pub fn thread_count() -> usize {
    std::env::var("PGDIR_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `work` on `[lo, hi)` slices of `0..total` and returns the results in
/// slice order.
pub fn par_ranges<T: Send>(total: u64, work: impl Fn(u64, u64) -> T + Sync) -> Vec<T> {
    let t = (thread_count() as u64).clamp(1, total.max(1));
    let chunk = total.div_ceil(t);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..t)
            .map(|i| {
                let lo = (i * chunk).min(total);
                let hi = ((i + 1) * chunk).min(total);
                let work = &work;
                s.spawn(move || work(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub counts: Vec<(String, u64)>,
    /// Empty on success.
    pub counterexamples: Vec<String>,
    pub elapsed: Duration,
}

impl CampaignReport {
    fn new(name: &str) -> Self {
        CampaignReport {
            name: name.to_string(),
            params: Vec::new(),
            counts: Vec::new(),
            counterexamples: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn param(&mut self, k: &str, v: impl ToString) {
        self.params.push((k.to_string(), v.to_string()));
    }

    fn count(&mut self, k: &str, v: u64) {
        self.counts.push((k.to_string(), v));
    }

    pub fn get(&self, k: &str) -> Option<u64> {
        self.counts.iter().find(|(n, _)| n == k).map(|&(_, v)| v)
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Text form without the wall-clock time, so equal runs print equal bytes.
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "campaign {}", self.name).unwrap();
        for (k, v) in &self.params {
            writeln!(s, "  param {k}: {v}").unwrap();
        }
        for (k, v) in &self.counts {
            writeln!(s, "  {k}: {v}").unwrap();
        }
        for c in &self.counterexamples {
            writeln!(s, "  counterexample: {c}").unwrap();
        }
        writeln!(s, "--").unwrap();
        writeln!(s, "campaign={}", self.name).unwrap();
        for (k, v) in &self.params {
            writeln!(s, "{k}={v}").unwrap();
        }
        for (k, v) in &self.counts {
            writeln!(s, "{k}={v}").unwrap();
        }
        writeln!(s, "counterexamples={}", self.counterexamples.len()).unwrap();
        writeln!(s, "passed={}", self.passed()).unwrap();
        s
    }
}

fn prime_plane(p: u32, min: u32) -> Result<Arc<PlaneCtx>, SearchError> {
    let f = FieldCtx::prime(p as u64)?;
    if p < min {
        return Err(SearchError::BadParameter(format!("p = {p}, need p >= {min}")));
    }
    Ok(PlaneCtx::new(f))
}

fn line_masks_affine(plane: &PlaneCtx) -> Vec<Vec<u64>> {
    Slope::all(plane.field())
        .map(|s| {
            plane
                .lines_with_slope(s)
                .iter()
                .map(|&l| {
                    plane
                        .points_on(l)
                        .iter()
                        .filter_map(|&pt| plane.affine_index(pt))
                        .fold(0u64, |m, i| m | 1 << i)
                })
                .collect()
        })
        .collect()
}

/// Number of special directions of the set with bitmask `m`, stopping at 4.
fn special_count(m: u64, lines: &[Vec<u64>], q: u32) -> u32 {
    let n = m.count_ones();
    let (lo, hi) = (n / q, n.div_ceil(q));
    let mut k = 0;
    for par in lines {
        if par.iter().any(|&l| {
            let c = (m & l).count_ones();
            c < lo || c > hi
        }) {
            k += 1;
            if k > 3 {
                break;
            }
        }
    }
    k
}

/// All affine maps `(x,y) -> (ax+by+e, cx+dy+f)` of `AG(2,p)` as point
/// permutations on affine indices.
fn agl_permutations(p: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let q = p as usize;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c).is_multiple_of(p) {
                        continue;
                    }
                    for e in 0..p {
                        for f in 0..p {
                            let perm = (0..q * q)
                                .map(|i| {
                                    let (x, y) = ((i / q) as u32, (i % q) as u32);
                                    let nx = (a * x + b * y + e) % p;
                                    let ny = (c * x + d * y + f) % p;
                                    (nx * p + ny) as u8
                                })
                                .collect();
                            out.push(perm);
                        }
                    }
                }
            }
        }
    }
    out
}

fn apply_perm(m: u64, perm: &[u8]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| m >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn orbit(m: u64, group: &[Vec<u8>]) -> HashSet<u64> {
    group.iter().map(|g| apply_perm(m, g)).collect()
}

/// Every subset of `AG(2,p)` of size divisible by `p` with exactly 3 special
/// directions, compared with the affine orbits of `{(x,y) : y < x}` and of its
/// complement.
pub fn exhaustive_three_directions(p: u32) -> Result<CampaignReport, SearchError> {
    if p != 3 && p != 5 {
        return Err(SearchError::NotDeskEnumerable(format!(
            "2^{} subsets of AG(2,{p})",
            p * p
        )));
    }
    let start = Instant::now();
    let plane = prime_plane(p, 3)?;
    let lines = line_masks_affine(&plane);
    let total = 1u64 << (p * p);
    let parts = par_ranges(total, |lo, hi| {
        let mut any_size = 0u64;
        let mut hits = Vec::new();
        for m in lo..hi {
            if special_count(m, &lines, p) == 3 {
                any_size += 1;
                if m.count_ones() % p == 0 {
                    hits.push(m);
                }
            }
        }
        (any_size, hits)
    });
    let any_size: u64 = parts.iter().map(|x| x.0).sum();
    let mut found: Vec<u64> = parts.into_iter().flat_map(|x| x.1).collect();
    found.sort_unstable();

    let ks = kiss_somlai_set(&plane)?;
    let s = ks
        .entries()
        .filter(|e| e.2 > 0)
        .fold(0u64, |m, (x, y, _)| m | 1 << plane.affine_index(plane.affine_point(x, y)).unwrap());
    let group = agl_permutations(p);
    let orbit_s = orbit(s, &group);
    let orbit_c = orbit((total - 1) ^ s, &group);
    let found_set: HashSet<u64> = found.iter().copied().collect();

    let mut rep = CampaignReport::new("ks-uniqueness");
    rep.param("p", p);
    rep.count("subsets", total);
    rep.count("affine_maps", group.len() as u64);
    rep.count("three_special_any_size", any_size);
    rep.count("three_special", found.len() as u64);
    rep.count("orbit_s", orbit_s.len() as u64);
    rep.count("orbit_complement", orbit_c.len() as u64);
    rep.count("s_found", found_set.contains(&s) as u64);
    if !found_set.contains(&s) {
        rep.counterexamples.push(format!("S = {s:#x} not found"));
    }
    for &m in &found {
        if !orbit_s.contains(&m) && !orbit_c.contains(&m) {
            rep.counterexamples.push(format!("{m:#x} outside both orbits"));
        }
    }
    let mut missing: Vec<u64> = orbit_s
        .union(&orbit_c)
        .filter(|m| !found_set.contains(m))
        .copied()
        .collect();
    missing.sort_unstable();
    for m in missing {
        rep.counterexamples.push(format!("{m:#x} in an orbit but not found"));
    }
    // closure under a generating set of AGL(2,p)
    let gens: Vec<&Vec<u8>> = [1usize, p as usize, (p * p) as usize, 7 * (p * p) as usize]
        .iter()
        .filter_map(|&i| group.get(i))
        .collect();
    let not_closed = found
        .iter()
        .filter(|&&m| gens.iter().any(|g| !found_set.contains(&apply_perm(m, g))))
        .count();
    rep.count("closure_failures", not_closed as u64);
    if not_closed > 0 {
        rep.counterexamples
            .push(format!("{not_closed} sets leave the collection under AGL(2,{p})"));
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// Enumerates all of `C(2,q)` and checks that the minimum weight `q+1` is
/// attained exactly by the nonzero multiples of lines.
pub fn exhaustive_min_weight(q: u32) -> Result<CampaignReport, SearchError> {
    let start = Instant::now();
    let plane = PlaneCtx::new(FieldCtx::of_order(q as u64)?);
    let p = plane.p();
    let basis = plane.code_space().rows().to_vec();
    let dim = basis.len();
    let words = (p as u64)
        .checked_pow(dim as u32)
        .filter(|&w| w <= MAX_ENUMERATION)
        .ok_or_else(|| SearchError::NotDeskEnumerable(format!("{p}^{dim} codewords")))?;
    let n = plane.size();
    let parts = par_ranges(words, |lo, hi| {
        let mut hist = vec![0u64; n + 1];
        let mut light = Vec::new();
        for idx in lo..hi {
            let mut w = vec![0u32; n];
            let mut k = idx;
            for row in &basis {
                let a = (k % p as u64) as u32;
                k /= p as u64;
                if a != 0 {
                    for (x, &r) in w.iter_mut().zip(row) {
                        *x = (*x + a * r) % p;
                    }
                }
            }
            let wt = w.iter().filter(|&&x| x != 0).count();
            hist[wt] += 1;
            if wt > 0 && wt <= q as usize + 1 {
                light.push(w);
            }
        }
        (hist, light)
    });
    let mut hist = vec![0u64; n + 1];
    let mut light = Vec::new();
    for (h, l) in parts {
        for (a, b) in hist.iter_mut().zip(h) {
            *a += b;
        }
        light.extend(l);
    }
    let min_wt = (1..=n).find(|&w| hist[w] > 0).unwrap_or(0);

    let mut rep = CampaignReport::new("min-weight");
    rep.param("q", q);
    rep.count("dimension", dim as u64);
    rep.count("codewords", words);
    rep.count("min_weight", min_wt as u64);
    rep.count("min_weight_words", hist[min_wt]);
    let expected_dim = ((p as u64 + 1) * p as u64 / 2).pow(plane.field().h()) + 1;
    if dim as u64 != expected_dim {
        rep.counterexamples
            .push(format!("dimension {dim}, expected {expected_dim}"));
    }
    if min_wt != q as usize + 1 {
        rep.counterexamples
            .push(format!("minimum weight {min_wt}, expected {}", q + 1));
    }
    let expected_count = (p as u64 - 1) * n as u64;
    if hist[q as usize + 1] != expected_count {
        rep.counterexamples.push(format!(
            "{} words of weight {}, expected {expected_count}",
            hist[q as usize + 1],
            q + 1
        ));
    }
    for w in &light {
        let supp: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
        let is_line_multiple = supp.len() == q as usize + 1
            && plane
                .join(PointId(supp[0] as u32), PointId(supp[1] as u32))
                .map(|l| {
                    plane.points_on(l).iter().all(|pt| w[pt.idx()] == w[supp[0]])
                })
                .unwrap_or(false);
        if !is_line_multiple {
            rep.counterexamples
                .push(format!("weight {} word {:?} is not a multiple of a line", supp.len(), supp));
        }
    }
    if p > 2 {
        for (wt, &c) in hist.iter().enumerate().skip(1) {
            if c % (p as u64 - 1) != 0 {
                rep.counterexamples
                    .push(format!("{c} words of weight {wt}, not divisible by p-1"));
            }
        }
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

fn point_mask(plane: &PlaneCtx, lines: &[LineId]) -> Vec<bool> {
    let mut allowed = vec![false; plane.size()];
    for &l in lines {
        for pt in plane.points_on(l) {
            allowed[pt.idx()] = true;
        }
    }
    allowed
}

/// Dimension of the words supported on `X=0, Y=0, Z=0, X+Y+Z=0`, and on four
/// lines through `(0,0,1)` for comparison.
pub fn general_position_dim(p: u32) -> Result<CampaignReport, SearchError> {
    let start = Instant::now();
    let plane = prime_plane(p, 5)?;
    let quad: Vec<LineId> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|&c| plane.line_codes(c))
        .collect();
    let conc: Vec<LineId> = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]
        .iter()
        .map(|&c| plane.line_codes(c))
        .collect();
    let dg = supported_subcode_dim(&plane, &point_mask(&plane, &quad));
    let dc = supported_subcode_dim(&plane, &point_mask(&plane, &conc));
    let mut rep = CampaignReport::new("general-position");
    rep.param("p", p);
    rep.count("general_position_dim", dg as u64);
    rep.count("concurrent_dim", dc as u64);
    if dg != 4 {
        rep.counterexamples.push(format!("general position dimension {dg}"));
    }
    let want = concurrent_subspace_dim(4, 2);
    if dc != want {
        rep.counterexamples
            .push(format!("concurrent dimension {dc}, expected {want}"));
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

fn random_projectivity<R: Rng>(plane: &PlaneCtx, rng: &mut R) -> Projectivity {
    Projectivity::new(plane, random_invertible(plane.field(), rng)).unwrap()
}

fn supported_on(plane: &PlaneCtx, c: &Codeword, lines: &[LineId]) -> bool {
    c.support()
        .into_iter()
        .all(|x| lines.iter().any(|&l| plane.incident(x, l)))
}

fn line_vectors(plane: &Arc<PlaneCtx>, lines: &[LineId]) -> Vec<Vec<u32>> {
    lines
        .iter()
        .map(|&l| Codeword::line(plane.clone(), l).values().to_vec())
        .collect()
}

fn sum_of_values(c: &Codeword) -> u32 {
    let p = c.plane().p() as u64;
    (c.values().iter().map(|&v| v as u64).sum::<u64>() % p) as u32
}

/// Subtracts `(c.1 - c(P)) chi_l4` from words on three lines through `P`
/// plus `l4`, and checks that what is left lives on the three lines.
pub fn case2_structure(p: u32, samples: usize, seed: u64) -> Result<CampaignReport, SearchError> {
    let start = Instant::now();
    let plane = prime_plane(p, 5)?;
    let pt = plane.point_codes([0, 0, 1]);
    let tri: Vec<LineId> = [[1, 0, 0], [0, 1, 0], [1, p - 1, 0]]
        .iter()
        .map(|&c| plane.line_codes(c))
        .collect();
    let l4 = plane.line_codes([1, 1, 1]);
    let chi4 = Codeword::line(plane.clone(), l4);
    let tri_span = RowEchelon::from_rows(p, plane.size(), line_vectors(&plane, &tri).iter().map(Vec::as_slice));
    let residual = |c: &Codeword| {
        let k = (sum_of_values(c) + p - c.get(pt)) % p;
        c.sub(&chi4.scale(k))
    };
    let mut rep = CampaignReport::new("case2-structure");
    rep.param("p", p);
    rep.param("samples", samples);
    rep.param("seed", seed);

    let odd = example_odd_3(&plane)?;
    let r = residual(&odd.add(&chi4.scale(2)));
    if !tri_span.contains(r.sub(&odd).values()) {
        rep.counterexamples
            .push("odd word plus 2 l4: residual differs from the odd word".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all4 = tri.clone();
    all4.push(l4);
    let mut comb = LineCombination::new();
    for &l in &all4 {
        comb.set(l, rng.gen_range(0..p));
    }
    let r = residual(&codeword_from_combination(&plane, &comb));
    if !tri_span.contains(r.values()) {
        rep.counterexamples
            .push("line combination: residual outside the span of the 3 lines".into());
    }

    let basis = concurrent_subspace_basis(&plane, pt, &tri, 1)?;
    let mut bad = 0u64;
    for i in 0..samples {
        let mut c = chi4.scale(rng.gen_range(0..p));
        for b in &basis {
            c = c.add_scaled(b, rng.gen_range(0..p));
        }
        let r = residual(&c);
        if !supported_on(&plane, &r, &tri) || !membership_linear(&r) {
            bad += 1;
            rep.counterexamples.push(format!("sample {i}: residual leaves the 3 lines"));
        }
    }
    rep.count("random_samples", samples as u64);
    rep.count("failures", bad);
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// No `F_p`-valued word on `n < q/p + 2` concurrent lines other than
/// combinations of the lines: every frame `X = 0, Y = dX (d in D)` with
/// `|D| <= q/p` is scanned over the whole `(G, c0)` parameter space.
pub fn no_small_odd(q: u32) -> Result<CampaignReport, SearchError> {
    let start = Instant::now();
    let f = FieldCtx::of_order(q as u64)?;
    let plane = PlaneCtx::new(f.clone());
    let (p, h) = (f.p(), f.h() as usize);
    let max_d = (q / p) as usize;
    let elems: Vec<_> = f.elements().collect();
    // F_p-basis of F_q
    let basis: Vec<_> = (0..h).map(|k| f.elem(p.pow(k as u32))).collect();
    let mut rep = CampaignReport::new("no-small-odd");
    rep.param("q", q);
    let (mut frames, mut fp_dim_total) = (0u64, 0u64);
    for size in 1..=max_d {
        let deg = size as u32 - 1;
        let monos: Vec<(u32, u32, u32)> = (0..=deg)
            .flat_map(|i| (0..=deg - i).map(move |j| (i, j, deg - i - j)))
            .collect();
        for d_set in combinations(&elems, size) {
            frames += 1;
            // parameter words over F_q, one per F_p-coordinate of (G, c0)
            let mut param_vals: Vec<Vec<crate::gf::Elem>> = Vec::new();
            for &m in &monos {
                for &b in &basis {
                    let g = ReducedPoly3::monomial(m, b);
                    let poly = concurrent_polynomial(&f, &d_set, &g, f.zero())?;
                    param_vals.push(plane.point_ids().map(|pt| poly.eval(&f, plane.point_coords(pt))).collect());
                }
            }
            for &b in &basis {
                let poly = concurrent_polynomial(&f, &d_set, &ReducedPoly3::zero(), b)?;
                param_vals.push(plane.point_ids().map(|pt| poly.eval(&f, plane.point_coords(pt))).collect());
            }
            let np = param_vals.len();
            // constraints: every non-constant coordinate of every value vanishes
            let mut cons = RowEchelon::new(p, np);
            for i in 0..plane.size() {
                let coords: Vec<Vec<u32>> = param_vals.iter().map(|v| f.coeffs(v[i])).collect();
                for k in 1..h {
                    let row: Vec<u32> = coords.iter().map(|c| c[k]).collect();
                    cons.insert(&row);
                }
            }
            let lines = concurrent_frame_lines(&plane, &d_set);
            let span = RowEchelon::from_rows(p, plane.size(), line_vectors(&plane, &lines).iter().map(Vec::as_slice));
            let kernel = cons.null_space();
            fp_dim_total += kernel.len() as u64;
            for t in &kernel {
                let values: Vec<u32> = (0..plane.size())
                    .map(|i| {
                        let v = t.iter().zip(&param_vals).fold(f.zero(), |acc, (&a, pv)| {
                            f.add(acc, f.scale(pv[i], a as i64))
                        });
                        f.nu(v).expect("constraint forces F_p values")
                    })
                    .collect();
                let c = Codeword::from_values(plane.clone(), values);
                if !span.contains(c.values()) {
                    let ds: Vec<u32> = d_set.iter().map(|e| e.code()).collect();
                    rep.counterexamples
                        .push(format!("D = {ds:?}: F_p-valued word outside the span of its lines"));
                }
            }
        }
    }
    rep.count("max_slopes", max_d as u64);
    rep.count("frames", frames);
    rep.count("fp_valued_dim_total", fp_dim_total);
    rep.elapsed = start.elapsed();
    Ok(rep)
}

fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Outcome of [`classify_small_weight`], with the data needed to rebuild `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    LineCombination(LineCombination),
    /// `c = odd + coeff * chi_line` with `odd` odd on `frame`.
    OddOn3PlusLine {
        point: PointId,
        frame: [LineId; 3],
        odd: Codeword,
        line: LineId,
        coeff: u32,
    },
    OddOn4 {
        point: PointId,
        frame: [LineId; 4],
    },
    Unclassified,
}

pub const LABEL_COMBINATION: &str = "linear combination of at most 4 lines";
pub const LABEL_ODD3_PLUS_LINE: &str = "odd-on-3 plus line";
pub const LABEL_ODD4: &str = "odd codeword on 4 lines";
pub const LABEL_UNCLASSIFIED: &str = "unclassified";

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::LineCombination(_) => LABEL_COMBINATION,
            Classification::OddOn3PlusLine { .. } => LABEL_ODD3_PLUS_LINE,
            Classification::OddOn4 { .. } => LABEL_ODD4,
            Classification::Unclassified => LABEL_UNCLASSIFIED,
        }
    }
}

/// Weight range where every member is one of the three shapes.
pub fn in_classified_range(p: u32, weight: usize) -> bool {
    let (p, w) = (p as usize, weight);
    (37..=47).contains(&p) && w <= 4 * p + 3 || p >= 53 && w + 36 <= 5 * p
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn cover_dfs(
    plane: &PlaneCtx,
    uncovered: &[u64],
    slots: u32,
    chosen: &mut Vec<LineId>,
    found: &mut BTreeSet<Vec<LineId>>,
    cap: usize,
) {
    if found.len() >= cap {
        return;
    }
    let left: u32 = uncovered.iter().map(|w| w.count_ones()).sum();
    if left == 0 {
        let mut c = chosen.clone();
        c.sort();
        found.insert(c);
        return;
    }
    if slots == 0 {
        return;
    }
    // some remaining cover line takes at least this many uncovered points
    let need = left.div_ceil(slots);
    if need > plane.q() + 1 {
        return;
    }
    for l in plane.line_ids() {
        if chosen.contains(&l) {
            continue;
        }
        let mask = plane.line_mask(l);
        if popcount_and(uncovered, mask) >= need {
            let rest: Vec<u64> = uncovered.iter().zip(mask).map(|(u, m)| u & !m).collect();
            chosen.push(l);
            cover_dfs(plane, &rest, slots - 1, chosen, found, cap);
            chosen.pop();
        }
    }
}

/// All covers of `supp(c)` by the fewest lines, at most 4 lines, up to `cap` of them.
pub fn minimal_covers(c: &Codeword, cap: usize) -> Vec<Vec<LineId>> {
    let plane = c.plane();
    let mut mask = vec![0u64; plane.size().div_ceil(64)];
    for pt in c.support() {
        mask[pt.idx() / 64] |= 1 << (pt.idx() % 64);
    }
    if mask.iter().all(|&w| w == 0) {
        return vec![vec![]];
    }
    for k in 1..=4 {
        let mut found = BTreeSet::new();
        cover_dfs(plane, &mask, k, &mut Vec::new(), &mut found, cap);
        if !found.is_empty() {
            return found.into_iter().collect();
        }
    }
    Vec::new()
}

fn common_point(plane: &PlaneCtx, lines: &[LineId]) -> Option<PointId> {
    let pt = plane.meet(lines[0], lines[1]).ok()?;
    lines.iter().all(|&l| plane.incident(pt, l)).then_some(pt)
}

fn as_combination(c: &Codeword, lines: &[LineId]) -> Option<LineCombination> {
    let plane = c.plane();
    let coeffs = solve_combination(plane.p(), &line_vectors(plane, lines), c.values())?;
    let mut comb = LineCombination::new();
    for (&l, a) in lines.iter().zip(coeffs) {
        comb.set(l, a);
    }
    Some(comb)
}

fn odd_plus_line(c: &Codeword, cover: &[LineId]) -> Result<Option<Classification>, SearchError> {
    let plane = c.plane();
    let p = plane.p();
    if cover.len() == 3 {
        if let Some(pt) = common_point(plane, cover) {
            if is_odd_codeword(c, cover)? {
                return Ok(Some(Classification::OddOn3PlusLine {
                    point: pt,
                    frame: [cover[0], cover[1], cover[2]],
                    odd: c.clone(),
                    line: cover[0],
                    coeff: 0,
                }));
            }
        }
        return Ok(None);
    }
    if cover.len() != 4 {
        return Ok(None);
    }
    for i in 0..4 {
        let line = cover[i];
        let tri: Vec<LineId> = cover.iter().copied().filter(|&l| l != line).collect();
        let Some(pt) = common_point(plane, &tri) else {
            continue;
        };
        let coeff = if plane.incident(pt, line) {
            let vals: Vec<u32> = plane
                .points_on(line)
                .iter()
                .filter(|&&x| x != pt)
                .map(|&x| c.get(x))
                .collect();
            if vals.iter().any(|&v| v != vals[0]) {
                continue;
            }
            vals[0]
        } else {
            (sum_of_values(c) + p - c.get(pt)) % p
        };
        let odd = c.sub(&Codeword::line(plane.clone(), line).scale(coeff));
        if is_odd_codeword(&odd, &tri)? {
            return Ok(Some(Classification::OddOn3PlusLine {
                point: pt,
                frame: [tri[0], tri[1], tri[2]],
                odd,
                line,
                coeff,
            }));
        }
    }
    Ok(None)
}

/// Sorts a small-weight member of `C(2,p)` into one of the three shapes.
///
/// Outside [`in_classified_range`] a word that fits none of them comes back
/// as `Unclassified`; inside it, a missing 4-line cover is an error.
pub fn classify_small_weight(c: &Codeword) -> Result<Classification, SearchError> {
    let plane = c.plane();
    if plane.field().h() != 1 {
        return Err(CodeError::NeedPrimeField(plane.q()).into());
    }
    if !membership_linear(c) {
        return Err(SearchError::NotMember);
    }
    let covers = minimal_covers(c, 256);
    if covers.is_empty() {
        return if in_classified_range(plane.p(), c.weight()) {
            Err(SearchError::CoverNotFound(c.weight()))
        } else {
            Ok(Classification::Unclassified)
        };
    }
    for cover in &covers {
        if let Some(comb) = as_combination(c, cover) {
            return Ok(Classification::LineCombination(comb));
        }
    }
    for cover in &covers {
        if let Some(cls) = odd_plus_line(c, cover)? {
            return Ok(cls);
        }
    }
    for cover in &covers {
        if cover.len() == 4 {
            if let Some(pt) = common_point(plane, cover) {
                if is_odd_codeword(c, cover)? {
                    return Ok(Classification::OddOn4 {
                        point: pt,
                        frame: [cover[0], cover[1], cover[2], cover[3]],
                    });
                }
            }
        }
    }
    Ok(Classification::Unclassified)
}

/// Rebuilds `c` from the witness and re-checks the oddness claims.
pub fn verify_witness(c: &Codeword, cls: &Classification) -> bool {
    let plane = c.plane();
    match cls {
        Classification::LineCombination(comb) => {
            comb.iter().filter(|&(_, a)| a != 0).count() <= 4
                && codeword_from_combination(plane, comb) == *c
        }
        Classification::OddOn3PlusLine {
            point,
            frame,
            odd,
            line,
            coeff,
        } => {
            common_point(plane, frame) == Some(*point)
                && is_odd_codeword(odd, frame).unwrap_or(false)
                && odd.add(&Codeword::line(plane.clone(), *line).scale(*coeff)) == *c
        }
        Classification::OddOn4 { point, frame } => {
            common_point(plane, frame) == Some(*point) && is_odd_codeword(c, frame).unwrap_or(false)
        }
        Classification::Unclassified => false,
    }
}

/// A random odd word on `n` lines through `(0,0,1)` of the form
/// `X = 0, Y = dX`, with its frame.
pub fn random_odd_word<R: Rng>(
    plane: &Arc<PlaneCtx>,
    n: usize,
    rng: &mut R,
) -> Result<(Codeword, Vec<LineId>), SearchError> {
    let f = plane.field();
    if f.h() != 1 || n < 3 || n > plane.q() as usize + 1 {
        return Err(SearchError::BadParameter(format!("odd word on {n} lines in PG(2,{})", plane.q())));
    }
    let p = plane.p();
    let deg = n as u32 - 2;
    let mut elems: Vec<_> = f.elements().collect();
    for _ in 0..10_000 {
        elems.shuffle(rng);
        let d_set = &elems[..n - 1];
        let terms: Vec<_> = (0..=deg)
            .flat_map(|i| (0..=deg - i).map(move |j| (i, j, deg - i - j)))
            .map(|m| (m, f.elem(rng.gen_range(0..p))))
            .collect();
        let g = ReducedPoly3::from_terms(terms);
        let c0 = f.elem(rng.gen_range(0..p));
        let c = odd_from_polynomial(plane, d_set, &g, c0)?;
        let lines = concurrent_frame_lines(plane, d_set);
        if is_odd_codeword(&c, &lines)? {
            return Ok((c, lines));
        }
    }
    Err(SearchError::BadParameter("no odd word found after 10000 draws".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    LineCombination,
    OddOn3PlusLine,
    OddOn4,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 3] = [
        InstanceKind::LineCombination,
        InstanceKind::OddOn3PlusLine,
        InstanceKind::OddOn4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InstanceKind::LineCombination => LABEL_COMBINATION,
            InstanceKind::OddOn3PlusLine => LABEL_ODD3_PLUS_LINE,
            InstanceKind::OddOn4 => LABEL_ODD4,
        }
    }
}

/// A word of the given shape, moved by a random projectivity.
pub fn sample_instance<R: Rng>(
    plane: &Arc<PlaneCtx>,
    kind: InstanceKind,
    rng: &mut R,
) -> Result<Codeword, SearchError> {
    let p = plane.p();
    let n = plane.size() as u32;
    let c = match kind {
        InstanceKind::LineCombination => {
            let k = rng.gen_range(1..=4);
            let mut comb = LineCombination::new();
            while comb.len() < k {
                comb.set(LineId(rng.gen_range(0..n)), rng.gen_range(1..p));
            }
            return Ok(codeword_from_combination(plane, &comb));
        }
        InstanceKind::OddOn3PlusLine => {
            let (w, frame) = random_odd_word(plane, 3, rng)?;
            let line = loop {
                let l = LineId(rng.gen_range(0..n));
                if !frame.contains(&l) {
                    break l;
                }
            };
            w.add_scaled(&Codeword::line(plane.clone(), line), rng.gen_range(1..p))
        }
        InstanceKind::OddOn4 => random_odd_word(plane, 4, rng)?.0,
    };
    Ok(c.transform(&random_projectivity(plane, rng)))
}

/// Classifies `per_case` constructed words of each shape and checks label
/// and witness.
pub fn classification_campaign(p: u32, per_case: usize, seed: u64) -> Result<CampaignReport, SearchError> {
    let start = Instant::now();
    let plane = prime_plane(p, 5)?;
    plane.code_space();
    let mut rep = CampaignReport::new("classify");
    rep.param("p", p);
    rep.param("per_case", per_case);
    rep.param("seed", seed);
    for (ki, kind) in InstanceKind::ALL.into_iter().enumerate() {
        let parts = par_ranges(per_case as u64, |lo, hi| {
            let mut bad = Vec::new();
            let mut out_of_range = 0u64;
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((ki as u64) << 32 | i);
                let c = match sample_instance(&plane, kind, &mut rng) {
                    Ok(c) => c,
                    Err(e) => {
                        bad.push(format!("{} #{i}: {e}", kind.label()));
                        continue;
                    }
                };
                if !in_classified_range(p, c.weight()) {
                    out_of_range += 1;
                }
                match classify_small_weight(&c) {
                    Ok(cls) if cls.label() == kind.label() && verify_witness(&c, &cls) => {}
                    Ok(cls) => bad.push(format!(
                        "{} #{i}: got {} (witness ok: {})",
                        kind.label(),
                        cls.label(),
                        verify_witness(&c, &cls)
                    )),
                    Err(e) => bad.push(format!("{} #{i}: {e}", kind.label())),
                }
            }
            (bad, out_of_range)
        });
        let mut oor = 0;
        for (bad, o) in parts {
            rep.counterexamples.extend(bad);
            oor += o;
        }
        let key = match kind {
            InstanceKind::LineCombination => "combination",
            InstanceKind::OddOn3PlusLine => "odd3_plus_line",
            InstanceKind::OddOn4 => "odd4",
        };
        rep.count(&format!("{key}_instances"), per_case as u64);
        rep.count(&format!("{key}_outside_weight_range"), oor);
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planecode::example_odd_4;

    fn plane(p: u64) -> Arc<PlaneCtx> {
        PlaneCtx::new(FieldCtx::prime(p).unwrap())
    }

    #[test]
    fn agl_sizes() {
        assert_eq!(agl_permutations(3).len(), 48 * 9);
        assert_eq!(agl_permutations(5).len(), 12000);
    }

    #[test]
    fn three_directions_p3_runs() {
        let rep = exhaustive_three_directions(3).unwrap();
        assert_eq!(rep.get("subsets"), Some(512));
        assert_eq!(rep.get("s_found"), Some(1));
        assert!(exhaustive_three_directions(7).is_err());
    }

    #[test]
    fn min_weight_small() {
        for (q, count) in [(2, 7), (3, 26), (4, 21)] {
            let rep = exhaustive_min_weight(q).unwrap();
            assert!(rep.passed(), "{}", rep.render());
            assert_eq!(rep.get("min_weight"), Some(q as u64 + 1));
            assert_eq!(rep.get("min_weight_words"), Some(count));
        }
        assert!(matches!(
            exhaustive_min_weight(7),
            Err(SearchError::NotDeskEnumerable(_))
        ));
    }

    #[test]
    fn general_position_small() {
        let rep = general_position_dim(5).unwrap();
        assert_eq!(rep.get("general_position_dim"), Some(4));
        assert_eq!(rep.get("concurrent_dim"), Some(7));
        assert!(general_position_dim(3).is_err());
    }

    #[test]
    fn case2() {
        for p in [5, 7] {
            let rep = case2_structure(p, 100, SEED_CASE2).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
    }

    #[test]
    fn no_small_odd_words() {
        for q in [4, 8, 9] {
            let rep = no_small_odd(q).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(&[1, 2, 3, 4, 5], 2).len(), 10);
        assert_eq!(combinations(&[1, 2, 3], 3), vec![vec![1, 2, 3]]);
        assert!(combinations(&[1, 2], 3).is_empty());
    }

    #[test]
    fn classify_examples_p11() {
        let pl = plane(11);
        let f = pl.field();
        let odd = example_odd_3(&pl).unwrap();
        let cls = classify_small_weight(&odd).unwrap();
        assert_eq!(cls.label(), LABEL_ODD3_PLUS_LINE);
        assert!(verify_witness(&odd, &cls));

        let through = pl.line_at([f.one(), f.from_int(3), f.zero()]).unwrap();
        let c = odd.add(&Codeword::line(pl.clone(), through));
        let cls = classify_small_weight(&c).unwrap();
        assert_eq!(cls.label(), LABEL_ODD3_PLUS_LINE);
        assert!(verify_witness(&c, &cls));

        let c4 = example_odd_4(&pl).unwrap();
        let cls = classify_small_weight(&c4).unwrap();
        assert_eq!(cls.label(), LABEL_ODD4);
        assert!(verify_witness(&c4, &cls));

        let z = Codeword::zero(pl.clone());
        assert_eq!(classify_small_weight(&z).unwrap().label(), LABEL_COMBINATION);
        let pt = Codeword::point(pl.clone(), PointId(3));
        assert_eq!(classify_small_weight(&pt), Err(SearchError::NotMember));
    }

    #[test]
    fn classification_campaign_small() {
        let rep = classification_campaign(13, 10, 7).unwrap();
        assert!(rep.passed(), "{}", rep.render());
        let again = classification_campaign(13, 10, 7).unwrap();
        assert_eq!(rep.render(), again.render());
    }

    #[test]
    fn range_bounds() {
        assert!(in_classified_range(37, 151));
        assert!(!in_classified_range(37, 152));
        assert!(!in_classified_range(31, 10));
        assert!(in_classified_range(53, 229));
        assert!(!in_classified_range(53, 230));
    }
}
