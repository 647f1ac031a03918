//! The acceptance suite. `Level::Full` runs every criterion at its stated
//! parameters, `Level::Quick` at the small fields `q <= 7` (and fewer
//! samples where a criterion is randomized).

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::{
    canonicalize, closed_form_3line, closed_form_4line, code_to_set, decompose_codeword,
    kiss_somlai_set, lift_3line, lift_4line, line_direction, four_direction_multiset,
    set_to_code, Lift,
};
use crate::directions::{projection_poly, spectrum, union_of_lines_decomposition, PointMultiset};
use crate::gf::{is_prime, Elem, FieldCtx};
use crate::linalg::solve_combination;
use crate::plane::{LineId, PlaneCtx, Slope};
use crate::planecode::{
    codeword_from_combination, concurrent_subspace_basis, concurrent_subspace_dim,
    example_odd_3, example_odd_3_antidiagonal, example_odd_4, membership_dgm, membership_linear,
    Codeword,
};
use crate::search::{
    classification_campaign, exhaustive_min_weight, exhaustive_three_directions,
    general_position_dim, par_ranges, random_odd_word, SEED_CLASSIFY,
};

pub const SEED_MEMBERSHIP: u64 = 0x5eed_0101;
pub const SEED_BOUNDS: u64 = 0x5eed_0109;
pub const SEED_ROUND_TRIP: u64 = 0x5eed_0110;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

pub const NAMES: [&str; 12] = [
    "matrix identity",
    "membership oracle equivalence",
    "minimum weight",
    "odd-codeword examples",
    "decomposition",
    "kiss-somlai set",
    "uniqueness at p=5",
    "dimension formula",
    "degree and count bounds",
    "bridge round trip",
    "general position",
    "classification trichotomy",
];

const BUDGET_SECS: [u64; 12] = [5, 120, 60, 30, 120, 60, 900, 300, 300, 180, 120, 300];

fn primes_between(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&n| is_prime(n as u64)).collect()
}

fn plane_q(q: u32) -> Arc<PlaneCtx> {
    PlaneCtx::new(FieldCtx::of_order(q as u64).unwrap())
}

/// Collects failure messages; the criterion passes when none were recorded.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
    seed: u64,
}

impl Check {
    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub fn run_criterion(id: u32, level: Level) -> CriterionResult {
    run_criterion_seeded(id, level, 0)
}

/// Like [`run_criterion`], with `seed` xored into every sampling seed.
pub fn run_criterion_seeded(id: u32, level: Level, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut ck = Check {
        seed,
        ..Check::default()
    };
    let full = level == Level::Full;
    match id {
        1 => matrix_identity(&mut ck, full),
        2 => membership_equivalence(&mut ck, full),
        3 => minimum_weight(&mut ck),
        4 => odd_examples(&mut ck, full),
        5 => decomposition(&mut ck, full),
        6 => kiss_somlai(&mut ck, full),
        7 => uniqueness(&mut ck),
        8 => dimension_formula(&mut ck, full),
        9 => degree_bounds(&mut ck, full),
        10 => round_trip(&mut ck, full),
        11 => general_position(&mut ck, full),
        12 => classification(&mut ck, full),
        _ => ck.failures.push(format!("no criterion {id}")),
    }
    let elapsed = start.elapsed();
    let idx = (id as usize).clamp(1, 12) - 1;
    let budget = Duration::from_secs(BUDGET_SECS[idx]);
    if elapsed > budget {
        ck.failures
            .push(format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()));
    }
    let detail = if ck.failures.is_empty() {
        ck.notes.join("; ")
    } else {
        let mut f = ck.failures.clone();
        let more = f.len().saturating_sub(5);
        f.truncate(5);
        if more > 0 {
            f.push(format!("... {more} more"));
        }
        f.join("; ")
    };
    CriterionResult {
        id,
        name: NAMES[idx],
        passed: ck.failures.is_empty(),
        detail,
        elapsed,
        budget,
    }
}

pub fn run_all(level: Level) -> Vec<CriterionResult> {
    (1..=12).map(|id| run_criterion(id, level)).collect()
}

fn matrix_identity(ck: &mut Check, full: bool) {
    let qs: &[u32] = if full { &[2, 3, 4, 5, 7, 9, 11, 13] } else { &[2, 3, 4, 5, 7] };
    for &q in qs {
        let a = plane_q(q).incidence_matrix();
        let n = a.size();
        let g = a.gram();
        let ok = (0..n).all(|i| (0..n).all(|j| g[i * n + j] == q as i64 * (i == j) as i64 + 1));
        ck.expect(ok, || format!("q={q}: A A^T != qI + J"));
        ck.expect(a.row_sums().iter().all(|&s| s == q as i64 + 1), || {
            format!("q={q}: A J != (q+1) J")
        });
    }
    ck.note(format!("q in {qs:?}"));
}

fn all_words(p: u32, n: usize, idx: u64) -> Vec<u32> {
    let mut k = idx;
    (0..n)
        .map(|_| {
            let d = (k % p as u64) as u32;
            k /= p as u64;
            d
        })
        .collect()
}

fn random_member<R: Rng>(plane: &Arc<PlaneCtx>, rng: &mut R) -> Codeword {
    let p = plane.p();
    let mut v = vec![0u32; plane.size()];
    for row in plane.code_space().rows() {
        let a = rng.gen_range(0..p);
        for (x, &r) in v.iter_mut().zip(row) {
            *x = (*x + a * r) % p;
        }
    }
    Codeword::from_values(plane.clone(), v)
}

fn membership_equivalence(ck: &mut Check, full: bool) {
    let seed = ck.seed;
    for q in [2u32, 3] {
        let plane = plane_q(q);
        let p = plane.p();
        let n = plane.size();
        let total = (p as u64).pow(n as u32);
        let parts = par_ranges(total, |lo, hi| {
            let (mut members, mut bad) = (0u64, Vec::new());
            for idx in lo..hi {
                let c = Codeword::from_values(plane.clone(), all_words(p, n, idx));
                let (a, b) = (membership_linear(&c), membership_dgm(&c));
                members += a as u64;
                if a != b {
                    bad.push(idx);
                }
            }
            (members, bad)
        });
        let members: u64 = parts.iter().map(|x| x.0).sum();
        let bad: Vec<u64> = parts.into_iter().flat_map(|x| x.1).collect();
        let dim = plane.code_space().rank() as u32;
        ck.expect(bad.is_empty(), || format!("q={q}: oracles disagree on {} words", bad.len()));
        ck.expect(members == (p as u64).pow(dim), || {
            format!("q={q}: {members} members, expected {p}^{dim}")
        });
    }
    let trials = if full { 10_000 } else { 1_000 };
    let qs: &[u32] = if full { &[4, 5, 7, 9] } else { &[4, 5, 7] };
    for &q in qs {
        let plane = plane_q(q);
        let p = plane.p();
        let parts = par_ranges(trials, |lo, hi| {
            let mut bad = 0u64;
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SEED_MEMBERSHIP ^ q as u64);
                rng.set_stream(i);
                let c = random_member(&plane, &mut rng);
                let pt = crate::plane::PointId(rng.gen_range(0..plane.size() as u32));
                let nm = c.add_scaled(&Codeword::point(plane.clone(), pt), rng.gen_range(1..p));
                if !membership_linear(&c) || !membership_dgm(&c) {
                    bad += 1;
                }
                if membership_linear(&nm) || membership_dgm(&nm) {
                    bad += 1;
                }
            }
            bad
        });
        let bad: u64 = parts.iter().sum();
        ck.expect(bad == 0, || format!("q={q}: {bad} random disagreements"));
    }
    ck.note(format!(
        "all words for q=2,3; {trials} members + {trials} non-members for q in {qs:?}"
    ));
}

fn minimum_weight(ck: &mut Check) {
    for q in [2, 3, 4] {
        match exhaustive_min_weight(q) {
            Ok(rep) => {
                ck.expect(rep.passed(), || format!("q={q}: {}", rep.counterexamples.join(", ")));
                ck.note(format!(
                    "q={q}: weight {} x{}",
                    rep.get("min_weight").unwrap_or(0),
                    rep.get("min_weight_words").unwrap_or(0)
                ));
            }
            Err(e) => ck.failures.push(format!("q={q}: {e}")),
        }
    }
}

fn primes(full: bool) -> Vec<u32> {
    if full {
        primes_between(5, 31)
    } else {
        vec![5, 7]
    }
}

fn odd_examples(ck: &mut Check, full: bool) {
    for p in primes(full) {
        let plane = plane_q(p);
        let c3 = example_odd_3(&plane).unwrap();
        let c4 = example_odd_4(&plane).unwrap();
        ck.expect(c3.weight() == 3 * (p as usize - 1), || format!("p={p}: wt(odd3) = {}", c3.weight()));
        ck.expect(c4.weight() == 4 * (p as usize - 1), || format!("p={p}: wt(odd4) = {}", c4.weight()));
        for (name, c) in [("odd3", &c3), ("odd4", &c4)] {
            ck.expect(membership_linear(c) && membership_dgm(c), || {
                format!("p={p}: {name} fails a membership test")
            });
        }
        let lines: Vec<Vec<u32>> = [[1, 0, 0], [0, 1, 0], [1, p - 1, 0]]
            .iter()
            .map(|&l| Codeword::line(plane.clone(), plane.line_codes(l)).values().to_vec())
            .collect();
        ck.expect(solve_combination(p, &lines, c3.values()).is_none(), || {
            format!("p={p}: odd3 is a combination of its lines")
        });
    }
    ck.note(format!("p in {:?}", primes(full)));
}

fn decomposition(ck: &mut Check, full: bool) {
    for p in primes(full) {
        let plane = plane_q(p);
        let words = [
            (
                "3-line",
                example_odd_3_antidiagonal(&plane).unwrap(),
                closed_form_3line(&plane).unwrap(),
                lift_3line(&plane).unwrap(),
            ),
            (
                "4-line",
                example_odd_4(&plane).unwrap(),
                closed_form_4line(&plane).unwrap(),
                lift_4line(&plane).unwrap(),
            ),
        ];
        for (name, c, v, lift) in words {
            ck.expect(codeword_from_combination(&plane, &v) == c, || {
                format!("p={p}: {name} closed form: vA != c")
            });
            match decompose_codeword(&c, &Lift::Custom(lift)) {
                Ok(d) => ck.expect(d.canonical == canonicalize(&plane, &v), || {
                    format!("p={p}: {name} decomposition differs from the closed form")
                }),
                Err(e) => ck.failures.push(format!("p={p}: {name}: {e}")),
            }
            match decompose_codeword(&c, &Lift::Canonical) {
                Ok(d) => ck.expect(codeword_from_combination(&plane, &d.canonical) == c, || {
                    format!("p={p}: {name} canonical-lift decomposition: vA != c")
                }),
                Err(e) => ck.failures.push(format!("p={p}: {name} canonical lift: {e}")),
            }
        }
    }
    ck.note(format!("p in {:?}", primes(full)));
}

fn kiss_somlai(ck: &mut Check, full: bool) {
    for p in primes(full) {
        let plane = plane_q(p);
        let s = kiss_somlai_set(&plane).unwrap();
        let sp = spectrum(&s);
        ck.expect(sp.num_special() == 3, || format!("p={p}: {} special directions", sp.num_special()));
        let half = (p as u64 - 1) / 2;
        for d in Slope::all(plane.field()) {
            if sp.equidistributed(d) {
                ck.expect(sp.counts(d).iter().all(|&c| c == half), || {
                    format!("p={p}: slope {d:?} has a line without (p-1)/2 points")
                });
            }
        }
    }
    ck.note(format!("p in {:?}", primes(full)));
}

fn uniqueness(ck: &mut Check) {
    match exhaustive_three_directions(5) {
        Ok(rep) => {
            ck.expect(rep.passed(), || rep.counterexamples.join(", "));
            let (a, b, c) = (
                rep.get("three_special").unwrap_or(0),
                rep.get("orbit_s").unwrap_or(0),
                rep.get("orbit_complement").unwrap_or(0),
            );
            ck.expect(a == b + c, || format!("{a} sets vs orbits {b} + {c}"));
            ck.note(format!("{a} sets = {b} + {c}"));
        }
        Err(e) => ck.failures.push(e.to_string()),
    }
}

fn dimension_formula(ck: &mut Check, full: bool) {
    let ps: &[u32] = if full { &[5, 7, 11] } else { &[5, 7] };
    for &p in ps {
        let plane = plane_q(p);
        let pt = plane.point_codes([0, 0, 1]);
        let through = plane.lines_through(pt).to_vec();
        let jobs: Vec<(usize, usize)> = (2..=p as usize + 1)
            .flat_map(|n| (0..=n - 2).map(move |r| (n, r)))
            .collect();
        let bad: Vec<String> = par_ranges(jobs.len() as u64, |lo, hi| {
            let mut bad = Vec::new();
            for &(n, r) in &jobs[lo as usize..hi as usize] {
                let basis = concurrent_subspace_basis(&plane, pt, &through[..n], r as i64).unwrap();
                let rows: Vec<Vec<u32>> = basis.iter().map(|c| c.values().to_vec()).collect();
                let rank = crate::linalg::rank_mod_p(p, &rows);
                let want = concurrent_subspace_dim(n, r);
                if rank != want {
                    bad.push(format!("p={p} n={n} r={r}: rank {rank}, formula {want}"));
                }
                if r == n - 2 && rank != n * (n - 1) / 2 + 1 {
                    bad.push(format!("p={p} n={n}: rank {rank} != C(n,2)+1"));
                }
            }
            bad
        })
        .into_iter()
        .flatten()
        .collect();
        ck.failures.extend(bad);
    }
    ck.note(format!("p in {ps:?}, all n, r"));
}

fn random_affine<R: Rng>(f: &FieldCtx, rng: &mut R) -> [[Elem; 3]; 2] {
    let q = f.q();
    loop {
        let m: Vec<Elem> = (0..6).map(|_| f.elem(rng.gen_range(0..q))).collect();
        let det = f.sub(f.mul(m[0], m[4]), f.mul(m[1], m[3]));
        if !det.is_zero() {
            return [[m[0], m[1], m[2]], [m[3], m[4], m[5]]];
        }
    }
}

fn random_affine_line<R: Rng>(plane: &PlaneCtx, rng: &mut R) -> LineId {
    let f = plane.field();
    let s = Slope::from_index(f, rng.gen_range(0..=plane.q() as usize));
    plane.line_with_slope(s, f.elem(rng.gen_range(0..plane.q())))
}

/// Mixture of shapes: dense random, sparse, unions of lines, subfield grids
/// or the Kiss-Somlai set moved affinely, and (prime order) multisets read
/// off random odd words.
fn sample_multiset<R: Rng>(plane: &Arc<PlaneCtx>, kind: u64, rng: &mut R) -> PointMultiset {
    let f = plane.field();
    let q = plane.q();
    let p = plane.p();
    let mut m = PointMultiset::empty(plane.clone());
    let rand_elem = |rng: &mut R| f.elem(rng.gen_range(0..q));
    match kind % 5 {
        0 => {
            for x in f.elements() {
                for y in f.elements() {
                    m.set(x, y, rng.gen_range(0..p as u64));
                }
            }
        }
        1 => {
            for _ in 0..rng.gen_range(1..=2 * q) {
                let (x, y) = (rand_elem(rng), rand_elem(rng));
                m.add(x, y, 1);
            }
        }
        2 => {
            for _ in 0..rng.gen_range(1..=4) {
                m.add_line(random_affine_line(plane, rng), rng.gen_range(1..=2));
            }
            if rng.gen_bool(0.5) {
                let (x, y) = (rand_elem(rng), rand_elem(rng));
                m.add(x, y, rng.gen_range(1..=p as u64));
            }
        }
        3 => {
            let base = if f.h() == 1 {
                kiss_somlai_set(plane).unwrap_or_else(|_| PointMultiset::empty(plane.clone()))
            } else {
                let mut b = PointMultiset::empty(plane.clone());
                let sub: Vec<Elem> = f.elements().filter(|&e| f.pow(e, p as u64) == e).collect();
                // F_p grid; a Baer subplane when h = 2
                for &x in &sub {
                    for &y in &sub {
                        b.add(x, y, 1);
                    }
                }
                b
            };
            m = base.affine_image(random_affine(f, rng));
            for _ in 0..rng.gen_range(0..=2) {
                m.add_line(random_affine_line(plane, rng), 1);
            }
        }
        _ => {
            if f.h() == 1 && p >= 5 {
                let n = rng.gen_range(3..=p as usize + 1);
                if let Ok((c, lines)) = random_odd_word(plane, n, rng) {
                    if let Ok(d) = decompose_codeword(&c, &Lift::Canonical) {
                        let dirs: Vec<Slope> =
                            lines.iter().filter_map(|&l| line_direction(plane, l)).collect();
                        if let Ok((ms, _)) = code_to_set(plane, &d.canonical, &dirs) {
                            return ms.affine_image(random_affine(f, rng));
                        }
                    }
                }
            }
            m = four_direction_multiset(plane).unwrap_or_else(|_| {
                let mut b = PointMultiset::empty(plane.clone());
                b.add(f.zero(), f.zero(), 1);
                b
            });
        }
    }
    m
}

fn degree_bounds(ck: &mut Check, full: bool) {
    let seed = ck.seed;
    let samples: u64 = if full { 1000 } else { 200 };
    let qs: &[u32] = if full { &[5, 7, 8, 9, 25] } else { &[5, 7, 4] };
    let mut seen_k = std::collections::BTreeMap::<u32, std::collections::BTreeSet<usize>>::new();
    for &q in qs {
        let plane = plane_q(q);
        let p = plane.p();
        let min_k = (q / p + 2) as usize;
        let parts = par_ranges(samples, |lo, hi| {
            let mut bad = Vec::new();
            let mut ks = std::collections::BTreeSet::new();
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SEED_BOUNDS ^ q as u64);
                rng.set_stream(i);
                let m = sample_multiset(&plane, i, &mut rng);
                let sp = spectrum(&m);
                let k = sp.num_mod_special();
                ks.insert(k);
                if k != 0 && k < min_k {
                    bad.push(format!("q={q} #{i}: {k} mod-special directions"));
                }
                if k >= 2 {
                    for d in Slope::all(plane.field()) {
                        let deg = projection_poly(&m, d).degree().unwrap_or(0);
                        if deg > k - 2 {
                            bad.push(format!("q={q} #{i}: deg pr = {deg} > {k} - 2"));
                        }
                    }
                }
            }
            (bad, ks)
        });
        for (bad, ks) in parts {
            ck.failures.extend(bad);
            seen_k.entry(q).or_default().extend(ks);
        }
    }
    // unions of lines versus few special directions, h > 1
    let union_qs: &[u32] = if full { &[9, 25] } else { &[9] };
    let mut checked = 0u64;
    for &q in union_qs {
        let plane = plane_q(q);
        let p = plane.p() as usize;
        let f = plane.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SEED_BOUNDS ^ 0x9000 ^ q as u64);
        for i in 0..samples {
            let n = rng.gen_range(1..=p);
            let mut m = PointMultiset::empty(plane.clone());
            if i % 2 == 0 {
                let slopes: Vec<usize> = (0..rng.gen_range(1..=3))
                    .map(|_| rng.gen_range(0..=q as usize))
                    .collect();
                for _ in 0..n {
                    let s = Slope::from_index(f, slopes[rng.gen_range(0..slopes.len())]);
                    m.add_line(plane.line_with_slope(s, f.elem(rng.gen_range(0..q))), 1);
                }
            } else {
                for _ in 0..n * q as usize {
                    m.add(f.elem(rng.gen_range(0..q)), f.elem(rng.gen_range(0..q)), 1);
                }
            }
            let k = spectrum(&m).num_special();
            if k * n < p + n {
                checked += 1;
                match union_of_lines_decomposition(&m) {
                    Some(lines) => {
                        let total: u64 = lines.iter().map(|l| l.1).sum();
                        let rebuilt = PointMultiset::from_lines(plane.clone(), &lines);
                        ck.expect(rebuilt == m && total == n as u64, || {
                            format!("q={q} #{i}: decomposition does not rebuild M")
                        });
                    }
                    None => ck
                        .failures
                        .push(format!("q={q} #{i}: {k} special directions but no decomposition")),
                }
            }
        }
    }
    let ks: Vec<String> = seen_k
        .iter()
        .map(|(q, ks)| format!("q={q}: k in {ks:?}"))
        .collect();
    ck.note(format!("{samples} per field; {}; {checked} union checks", ks.join(", ")));
}

fn round_trip(ck: &mut Check, full: bool) {
    let seed = ck.seed;
    let (ps, samples): (&[u32], u64) = if full { (&[5, 7, 11], 100) } else { (&[5, 7], 20) };
    for &p in ps {
        let plane = plane_q(p);
        let parts = par_ranges(samples, |lo, hi| {
            let mut bad = Vec::new();
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SEED_ROUND_TRIP ^ p as u64);
                rng.set_stream(i);
                let n = rng.gen_range(3..=p as usize + 1);
                let outcome = random_odd_word(&plane, n, &mut rng)
                    .map_err(|e| e.to_string())
                    .and_then(|(c, lines)| {
                        let d = decompose_codeword(&c, &Lift::Canonical).map_err(|e| e.to_string())?;
                        let dirs: Vec<Slope> =
                            lines.iter().filter_map(|&l| line_direction(&plane, l)).collect();
                        let (m, rep) = code_to_set(&plane, &d.canonical, &dirs).map_err(|e| e.to_string())?;
                        let mut want = dirs.clone();
                        want.sort();
                        if rep.mod_special != want || !rep.consistent {
                            return Err(format!("mod-special {:?}, declared {:?}", rep.mod_special, want));
                        }
                        // c_M = c minus the frame lines' own terms (line at infinity is cleared)
                        let (cm, _) = set_to_code(&m);
                        let mut want_c = c.clone();
                        for &l in &lines {
                            want_c = want_c.sub(&Codeword::line(plane.clone(), l).scale(d.canonical.get(l)));
                        }
                        if cm != want_c {
                            return Err("set-to-code of the recovered multiset is not c minus frame lines".into());
                        }
                        Ok(())
                    });
                if let Err(e) = outcome {
                    bad.push(format!("p={p} #{i} (n={n}): {e}"));
                }
            }
            bad
        });
        ck.failures.extend(parts.into_iter().flatten());
    }
    ck.note(format!("{samples} odd words per p in {ps:?}"));
}

fn general_position(ck: &mut Check, full: bool) {
    for p in primes(full) {
        match general_position_dim(p) {
            Ok(rep) => ck.expect(rep.passed(), || format!("p={p}: {}", rep.counterexamples.join(", "))),
            Err(e) => ck.failures.push(format!("p={p}: {e}")),
        }
    }
    ck.note(format!("dimensions 4 and 7 for p in {:?}", primes(full)));
}

fn classification(ck: &mut Check, full: bool) {
    let per_case = if full { 200 } else { 20 };
    match classification_campaign(37, per_case, ck.seed ^ SEED_CLASSIFY) {
        Ok(rep) => {
            ck.expect(rep.passed(), || rep.counterexamples.join(", "));
            ck.note(format!("p=37, {per_case} instances per case"));
        }
        Err(e) => ck.failures.push(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_cheap_criteria() {
        for id in [1, 3, 4, 5, 6, 8, 11] {
            let r = run_criterion(id, Level::Quick);
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(13, Level::Quick).passed);
    }
}
