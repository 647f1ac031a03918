//! Translating between affine multisets and odd codewords, and writing
//! codewords as explicit combinations of lines.
//!
//! Direction `d` corresponds to the line `X + dY = 0` through `(0,0,1)`,
//! i.e. `[1,d,0]`, and infinity to `[0,1,0]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::directions::{spectrum, PointMultiset};
use crate::gf::Elem;
use crate::planecode::{
    codeword_from_combination, is_odd_codeword, membership_linear, CodeError, Codeword,
    LineCombination,
};
use crate::plane::{LineId, PlaneCtx, Slope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("word is not a member of the code")]
    NotMember,
    #[error("lift obstruction: line {line:?} has coefficient with denominator {denominator} divisible by p")]
    LiftObstruction { line: LineId, denominator: BigInt },
    #[error("invalid lift: {0}")]
    BadLift(String),
    #[error("the combination is not an odd codeword on the declared directions")]
    NotOdd,
    #[error("declared directions must be distinct and at least two")]
    BadDirections,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The line `X + dY = 0` (`Y = 0` for infinity).
pub fn direction_line(plane: &PlaneCtx, s: Slope) -> LineId {
    let f = plane.field();
    match s {
        Slope::Finite(d) => plane.line_at([f.one(), d, f.zero()]).unwrap(),
        Slope::Infinite => plane.line_at([f.zero(), f.one(), f.zero()]).unwrap(),
    }
}

/// Inverse of [`direction_line`]; `None` for lines missing `(0,0,1)`.
pub fn line_direction(plane: &PlaneCtx, l: LineId) -> Option<Slope> {
    let [a, b, c] = plane.line_coords(l);
    if !c.is_zero() {
        return None;
    }
    Some(if a.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(plane.field().div(b, a).unwrap())
    })
}

/// The point `(d,-1,b)`, read as `(1,0,b)` for infinity.
pub fn direction_point_at(plane: &PlaneCtx, s: Slope, b: Elem) -> crate::plane::PointId {
    let f = plane.field();
    match s {
        Slope::Finite(d) => plane.point_at([d, f.neg(f.one()), b]).unwrap(),
        Slope::Infinite => plane.point_at([f.one(), f.zero(), b]).unwrap(),
    }
}

/// Directions, in the `X + dY = 0` convention, of the lines `X = 0` and
/// `Y = dX` (`d` in `d_set`).
pub fn frame_directions(plane: &PlaneCtx, d_set: &[Elem]) -> Vec<Slope> {
    let f = plane.field();
    let mut out = vec![Slope::Finite(f.zero())];
    for &d in d_set {
        out.push(if d.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(f.neg(f.inv(d).unwrap()))
        });
    }
    out
}

/// `c_M = sum_{(x,y) in M} chi_[x,y,1] - sum_{dbar} r_dbar chi_[1,dbar,0]`.
pub fn set_to_code(m: &PointMultiset) -> (Codeword, LineCombination) {
    let plane = m.plane();
    let f = plane.field();
    let p = plane.p();
    let mut comb = LineCombination::new();
    for (x, y, k) in m.entries() {
        let l = plane.line_at([x, y, f.one()]).unwrap();
        comb.add_to(l, (k % p as u64) as u32, p);
    }
    let sp = spectrum(m);
    for s in Slope::all(f) {
        if let Some(r) = sp.residue(s) {
            comb.add_to(direction_line(plane, s), (p - r) % p, p);
        }
    }
    let c = codeword_from_combination(plane, &comb);
    for s in Slope::all(f) {
        let special = !sp.mod_equidistributed(s);
        for b in f.elements() {
            let v = c.get(direction_point_at(plane, s, b));
            let want = if special {
                (sp.counts(s)[b.code() as usize] % p as u64) as u32
            } else {
                0
            };
            assert_eq!(v, want, "set-to-code identity failed");
        }
    }
    let mod_special = sp.mod_special(plane);
    for pt in c.support() {
        assert!(
            mod_special
                .iter()
                .any(|&s| plane.incident(pt, direction_line(plane, s))),
            "support leaves the mod-special direction lines"
        );
    }
    (c, comb)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeToSetReport {
    pub mod_special: Vec<Slope>,
    /// `(direction, nu(-alpha_[1,dbar,0]), observed residue)` for each direction outside `D`.
    pub residues: Vec<(Slope, u32, Option<u32>)>,
    /// Mod-special set equals `D` and every residue matches.
    pub consistent: bool,
}

/// Multiset with multiplicity `nu(alpha_[a,b,1])` at `(a,b)`; `d_set` lists
/// the directions of the covering lines `X + dY = 0`.
pub fn code_to_set(
    plane: &Arc<PlaneCtx>,
    comb: &LineCombination,
    d_set: &[Slope],
) -> Result<(PointMultiset, CodeToSetReport), BridgeError> {
    let mut ds = d_set.to_vec();
    ds.sort();
    ds.dedup();
    if ds.len() != d_set.len() || ds.len() < 2 {
        return Err(BridgeError::BadDirections);
    }
    let c = codeword_from_combination(plane, comb);
    let lines: Vec<LineId> = ds.iter().map(|&s| direction_line(plane, s)).collect();
    if !is_odd_codeword(&c, &lines)? {
        return Err(BridgeError::NotOdd);
    }
    let f = plane.field();
    let p = plane.p();
    let mut m = PointMultiset::empty(plane.clone());
    for a in f.elements() {
        for b in f.elements() {
            let l = plane.line_at([a, b, f.one()]).unwrap();
            m.set(a, b, comb.get(l) as u64);
        }
    }
    let sp = spectrum(&m);
    let mod_special = sp.mod_special(plane);
    let residues: Vec<(Slope, u32, Option<u32>)> = Slope::all(f)
        .filter(|s| !ds.contains(s))
        .map(|s| {
            let alpha = comb.get(direction_line(plane, s));
            (s, (p - alpha) % p, sp.residue(s))
        })
        .collect();
    let consistent = mod_special == ds && residues.iter().all(|&(_, e, o)| Some(e) == o);
    Ok((
        m,
        CodeToSetReport {
            mod_special,
            residues,
            consistent,
        },
    ))
}

/// Integer representatives of the codeword values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift {
    /// `nu(c(P))`
    Canonical,
    /// One integer per point, congruent to `c(P)` mod `p`.
    Custom(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `v_Q = c_Q A^{-1}`, indexed by line.
    pub rational: Vec<BigRational>,
    /// `v_Q` reduced mod `p`.
    pub raw: LineCombination,
    /// `raw` plus the kernel multiple that clears the line at infinity.
    pub canonical: LineCombination,
}

/// 1 on the lines missing `(0,0,1)`, 0 on the lines through it.
pub fn kernel_vector(plane: &PlaneCtx) -> Vec<u32> {
    plane
        .line_ids()
        .map(|l| u32::from(!plane.line_coords(l)[2].is_zero()))
        .collect()
}

/// Adds the multiple of the kernel vector that zeroes the coefficient of
/// the line at infinity.
pub fn canonicalize(plane: &PlaneCtx, comb: &LineCombination) -> LineCombination {
    let p = plane.p();
    let shift = (p - comb.get(plane.line_at_infinity())) % p;
    let k = kernel_vector(plane);
    let mut out = comb.clone();
    for l in plane.line_ids() {
        if k[l.idx()] == 1 {
            out.add_to(l, shift, p);
        }
    }
    out
}

fn mod_p(r: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64().unwrap();
    let den = den.to_u64().unwrap();
    let inv = crate::linalg::inv_mod(den as u32, p) as u64;
    Some((num * inv % p as u64) as u32)
}

/// `v = c_Q A^{-1}` with `A^{-1} = (A^T - J/(q+1))/q`, reduced mod `p`.
pub fn decompose_codeword(c: &Codeword, lift: &Lift) -> Result<Decomposition, BridgeError> {
    if !membership_linear(c) {
        return Err(BridgeError::NotMember);
    }
    let plane = c.plane();
    let p = plane.p() as i64;
    let cq: Vec<i64> = match lift {
        Lift::Canonical => c.values().iter().map(|&v| v as i64).collect(),
        Lift::Custom(v) => {
            if v.len() != plane.size() {
                return Err(BridgeError::BadLift(format!(
                    "{} values for {} points",
                    v.len(),
                    plane.size()
                )));
            }
            for (i, (&x, &cv)) in v.iter().zip(c.values()).enumerate() {
                if x.rem_euclid(p) != cv as i64 {
                    return Err(BridgeError::BadLift(format!("value at point {i} is not a lift")));
                }
            }
            v.clone()
        }
    };
    let q = BigInt::from(plane.q());
    let total: BigInt = cq.iter().map(|&x| BigInt::from(x)).sum();
    let denom = &q * (&q + BigInt::one());
    let mut rational = Vec::with_capacity(plane.size());
    let mut raw = LineCombination::new();
    for l in plane.line_ids() {
        let s: BigInt = plane.points_on(l).iter().map(|pt| BigInt::from(cq[pt.idx()])).sum();
        let num = (&q + BigInt::one()) * s - &total;
        let v = BigRational::new(num, denom.clone());
        let Some(r) = mod_p(&v, plane.p()) else {
            return Err(BridgeError::LiftObstruction {
                line: l,
                denominator: v.denom().abs(),
            });
        };
        raw.set(l, r);
        rational.push(v);
    }
    let canonical = canonicalize(plane, &raw);
    assert_eq!(codeword_from_combination(plane, &raw), *c, "vA = c failed");
    assert_eq!(codeword_from_combination(plane, &canonical), *c, "kernel shift changed the word");
    Ok(Decomposition {
        rational,
        raw,
        canonical,
    })
}

fn require_prime(plane: &PlaneCtx, min_exclusive: u32) -> Result<(), BridgeError> {
    if plane.field().h() != 1 {
        return Err(CodeError::NeedPrimeField(plane.q()).into());
    }
    if plane.p() <= min_exclusive {
        return Err(CodeError::PrimeTooSmall {
            p: plane.p(),
            min: min_exclusive,
        }
        .into());
    }
    Ok(())
}

/// For a line missing `(0,0,1)`, the pair `(a,b)` with the line equal to `[a,b,-1]`.
fn affine_form(plane: &PlaneCtx, l: LineId) -> Option<(u32, u32)> {
    let f = plane.field();
    let [a, b, c] = plane.line_coords(l);
    if c.is_zero() {
        return None;
    }
    let s = f.neg(f.inv(c).unwrap());
    Some((f.mul(a, s).code(), f.mul(b, s).code()))
}

fn closed_form(
    plane: &PlaneCtx,
    affine: impl Fn(u32, u32) -> i64,
    through: impl Fn([i64; 2]) -> (i64, i64),
) -> LineCombination {
    let p = plane.p();
    let pi = p as i64;
    let mut comb = LineCombination::new();
    for l in plane.line_ids() {
        let (num, den) = match affine_form(plane, l) {
            Some((a, b)) => (affine(a, b), 1),
            None => {
                let [a, b, _] = plane.line_coords(l);
                through([a.code() as i64, b.code() as i64])
            }
        };
        let inv = crate::linalg::inv_mod(den.rem_euclid(pi) as u32, p) as i64;
        comb.set(l, (num.rem_euclid(pi) * inv % pi) as u32);
    }
    comb
}

/// Line vector writing [`crate::planecode::example_odd_3_antidiagonal`] as a
/// combination of lines.
pub fn closed_form_3line(plane: &PlaneCtx) -> Result<LineCombination, BridgeError> {
    require_prime(plane, 2)?;
    Ok(closed_form(
        plane,
        |a, b| i64::from(a < b),
        |ab| match ab {
            [0, 1] => (1, 1),
            [1, 0] | [1, 1] => (0, 1),
            _ => (1, 2),
        },
    ))
}

/// Line vector writing [`crate::planecode::example_odd_4`] as a combination of lines.
pub fn closed_form_4line(plane: &PlaneCtx) -> Result<LineCombination, BridgeError> {
    require_prime(plane, 3)?;
    let p = plane.p() as i64;
    Ok(closed_form(
        plane,
        |a, b| {
            let (a, b) = (a as i64, b as i64);
            match (a + b < p, a >= b) {
                (true, true) => 0,
                (false, true) => 2 * (a + b),
                (true, false) => 2 * (b - a),
                (false, false) => 4 * b,
            }
        },
        |ab| {
            if ab == [1, 0] || ab == [0, 1] {
                (0, 1)
            } else if ab == [1, 1] || ab == [1, p - 1] {
                (-1, 2)
            } else {
                (-1, 3)
            }
        },
    ))
}

fn lift_from(plane: &PlaneCtx, parts: &[([i64; 2], fn(i64) -> i64)]) -> Vec<i64> {
    let f = plane.field();
    let mut out = vec![0i64; plane.size()];
    for &([a, b], val) in parts {
        for z in 0..plane.p() as i64 {
            let pt = plane
                .point_at([f.from_int(a), f.from_int(b), f.from_int(z)])
                .unwrap();
            out[pt.idx()] = val(z);
        }
    }
    out
}

/// Integer lift of the antidiagonal three-line word: `-nu(z)` on `(1,0,z)`,
/// `nu(z)` on `(0,1,z)` and `(1,-1,z)`.
pub fn lift_3line(plane: &PlaneCtx) -> Result<Vec<i64>, BridgeError> {
    require_prime(plane, 2)?;
    Ok(lift_from(plane, &[([1, 0], |z| -z), ([0, 1], |z| z), ([1, -1], |z| z)]))
}

/// Integer lift of the four-line word: `2 nu(z)^2` and `-nu(z)^2`.
pub fn lift_4line(plane: &PlaneCtx) -> Result<Vec<i64>, BridgeError> {
    require_prime(plane, 3)?;
    Ok(lift_from(
        plane,
        &[
            ([1, 0], |z| 2 * z * z),
            ([0, 1], |z| 2 * z * z),
            ([1, 1], |z| -z * z),
            ([1, -1], |z| -z * z),
        ],
    ))
}

/// `{(x,y) : nu(y) < nu(x)}`
pub fn kiss_somlai_set(plane: &Arc<PlaneCtx>) -> Result<PointMultiset, BridgeError> {
    require_prime(plane, 2)?;
    let f = plane.field();
    let mut m = PointMultiset::empty(plane.clone());
    for x in f.elements() {
        for y in f.elements() {
            if y.code() < x.code() {
                m.add(x, y, 1);
            }
        }
    }
    Ok(m)
}

/// Multiset with mod-special directions `0, ∞, 1, -1` coming from the
/// four-line word.
pub fn four_direction_multiset(plane: &Arc<PlaneCtx>) -> Result<PointMultiset, BridgeError> {
    require_prime(plane, 3)?;
    let f = plane.field();
    let p = plane.p() as i64;
    let mut m = PointMultiset::empty(plane.clone());
    for xe in f.elements() {
        for ye in f.elements() {
            let (x, y) = (xe.code() as i64, ye.code() as i64);
            let v = match (x + y < p, x >= y) {
                (true, true) => (-y).rem_euclid(p),
                (false, true) => x,
                (true, false) => (-x).rem_euclid(p),
                (false, false) => y,
            };
            m.set(xe, ye, v as u64);
        }
    }
    Ok(m)
}
