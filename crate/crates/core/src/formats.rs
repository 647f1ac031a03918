//! Text formats. Every file starts with `field p h m_0 ... m_h`; blank lines
//! and lines starting with `#` are skipped. Field elements are written as `h`
//! integers, lowest degree first.
//!
//! | data | record |
//! |---|---|
//! | multiset | `x y mult` |
//! | codeword | `x y z v` |
//! | line combination | `a b c coeff` |
//! | rational line vector | `a b c num/den` |
//! | plane dump | `P i x y z`, `L j a b c` |

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::directions::PointMultiset;
use crate::gf::{Elem, FieldCtx};
use crate::planecode::{Codeword, LineCombination};
use crate::plane::{LineId, PlaneCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing field header")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Bad { line: usize, msg: String },
    #[error("file is over F_{found}, expected F_{expected}")]
    FieldMismatch { expected: u32, found: u32 },
}

fn bad(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Bad {
        line,
        msg: msg.into(),
    }
}

fn elem_str(f: &FieldCtx, a: Elem) -> String {
    f.format_elem(a)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `field p h m_0 ... m_h`.
pub fn parse_header(line: &str) -> Result<FieldCtx, String> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.first() != Some(&"field") || toks.len() < 3 {
        return Err("expected `field p h m_0 ... m_h`".into());
    }
    let nums: Result<Vec<u64>, _> = toks[1..].iter().map(|t| t.parse::<u64>()).collect();
    let nums = nums.map_err(|e| e.to_string())?;
    let (p, h) = (nums[0], nums[1]);
    let f = FieldCtx::new(p, h as u32).map_err(|e| e.to_string())?;
    let modulus: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
    if nums[2..] != modulus[..] {
        return Err(format!("unsupported modulus {:?}, expected {:?}", &nums[2..], modulus));
    }
    Ok(f)
}

struct Doc<'a> {
    plane: Arc<PlaneCtx>,
    records: Vec<(usize, Vec<&'a str>)>,
}

fn parse_doc<'a>(text: &'a str, plane: Option<&Arc<PlaneCtx>>) -> Result<Doc<'a>, FormatError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    if !header.starts_with("field") {
        return Err(FormatError::MissingHeader);
    }
    let f = parse_header(header).map_err(|m| bad(hl, m))?;
    let plane = match plane {
        Some(pl) if *pl.field() == f => pl.clone(),
        Some(pl) => {
            return Err(FormatError::FieldMismatch {
                expected: pl.q(),
                found: f.q(),
            })
        }
        None => PlaneCtx::new(f),
    };
    let records = lines
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect();
    Ok(Doc { plane, records })
}

fn parse_u64(line: usize, tok: &str) -> Result<u64, FormatError> {
    tok.parse()
        .map_err(|_| bad(line, format!("`{tok}` is not a non-negative integer")))
}

fn parse_elems(f: &FieldCtx, line: usize, toks: &[&str], count: usize) -> Result<Vec<Elem>, FormatError> {
    let h = f.h() as usize;
    (0..count)
        .map(|k| {
            let coeffs: Result<Vec<u32>, _> = toks[k * h..(k + 1) * h]
                .iter()
                .map(|t| parse_u64(line, t).map(|v| v.min(u32::MAX as u64) as u32))
                .collect();
            f.from_coeffs(&coeffs?).map_err(|e| bad(line, e.to_string()))
        })
        .collect()
}

fn expect_len(line: usize, toks: &[&str], n: usize) -> Result<(), FormatError> {
    if toks.len() != n {
        return Err(bad(line, format!("expected {n} fields, found {}", toks.len())));
    }
    Ok(())
}

fn residue(line: usize, tok: &str, p: u32) -> Result<u32, FormatError> {
    let v = parse_u64(line, tok)?;
    if v >= p as u64 {
        return Err(bad(line, format!("value {v} is not a residue mod {p}")));
    }
    Ok(v as u32)
}

pub fn write_multiset(m: &PointMultiset) -> String {
    let f = m.plane().field();
    let mut s = f.header();
    s.push('\n');
    for (x, y, k) in m.entries().filter(|e| e.2 > 0) {
        writeln!(s, "{} {} {k}", elem_str(f, x), elem_str(f, y)).unwrap();
    }
    s
}

pub fn read_multiset(text: &str) -> Result<PointMultiset, FormatError> {
    read_multiset_in(text, None)
}

/// Reads into an existing plane, which must match the header.
pub fn read_multiset_in(text: &str, plane: Option<&Arc<PlaneCtx>>) -> Result<PointMultiset, FormatError> {
    let doc = parse_doc(text, plane)?;
    let f = doc.plane.field();
    let h = f.h() as usize;
    let mut m = PointMultiset::empty(doc.plane.clone());
    for (line, toks) in &doc.records {
        expect_len(*line, toks, 2 * h + 1)?;
        let xy = parse_elems(f, *line, toks, 2)?;
        let k = parse_u64(*line, toks[2 * h])?;
        m.add(xy[0], xy[1], k);
    }
    Ok(m)
}

pub fn write_codeword(c: &Codeword) -> String {
    let plane = c.plane();
    let f = plane.field();
    let mut s = f.header();
    s.push('\n');
    for pt in c.support() {
        let [x, y, z] = plane.point_coords(pt);
        writeln!(s, "{} {} {} {}", elem_str(f, x), elem_str(f, y), elem_str(f, z), c.get(pt)).unwrap();
    }
    s
}

pub fn read_codeword(text: &str) -> Result<Codeword, FormatError> {
    read_codeword_in(text, None)
}

/// Points may be given by any nonzero representative; each point at most once.
pub fn read_codeword_in(text: &str, plane: Option<&Arc<PlaneCtx>>) -> Result<Codeword, FormatError> {
    let doc = parse_doc(text, plane)?;
    let plane = doc.plane;
    let f = plane.field();
    let h = f.h() as usize;
    let mut values = vec![0u32; plane.size()];
    let mut seen = vec![false; plane.size()];
    for (line, toks) in &doc.records {
        expect_len(*line, toks, 3 * h + 1)?;
        let v = parse_elems(f, *line, toks, 3)?;
        let pt = plane
            .point_at([v[0], v[1], v[2]])
            .map_err(|e| bad(*line, e.to_string()))?;
        if std::mem::replace(&mut seen[pt.idx()], true) {
            return Err(bad(*line, "point listed twice"));
        }
        values[pt.idx()] = residue(*line, toks[3 * h], plane.p())?;
    }
    Ok(Codeword::from_values(plane, values))
}

fn line_str(plane: &PlaneCtx, l: LineId) -> String {
    let f = plane.field();
    let [a, b, c] = plane.line_coords(l);
    format!("{} {} {}", elem_str(f, a), elem_str(f, b), elem_str(f, c))
}

pub fn write_combination(plane: &PlaneCtx, comb: &LineCombination) -> String {
    let mut s = plane.field().header();
    s.push('\n');
    for (l, a) in comb.iter().filter(|&(_, a)| a != 0) {
        writeln!(s, "{} {a}", line_str(plane, l)).unwrap();
    }
    s
}

pub fn read_combination(text: &str) -> Result<(Arc<PlaneCtx>, LineCombination), FormatError> {
    read_combination_in(text, None)
}

pub fn read_combination_in(
    text: &str,
    plane: Option<&Arc<PlaneCtx>>,
) -> Result<(Arc<PlaneCtx>, LineCombination), FormatError> {
    let doc = parse_doc(text, plane)?;
    let plane = doc.plane;
    let f = plane.field();
    let h = f.h() as usize;
    let mut comb = LineCombination::new();
    for (line, toks) in &doc.records {
        expect_len(*line, toks, 3 * h + 1)?;
        let v = parse_elems(f, *line, toks, 3)?;
        let l = plane
            .line_at([v[0], v[1], v[2]])
            .map_err(|e| bad(*line, e.to_string()))?;
        if comb.get(l) != 0 {
            return Err(bad(*line, "line listed twice"));
        }
        comb.set(l, residue(*line, toks[3 * h], plane.p())?);
    }
    Ok((plane, comb))
}

/// Exact line vector, one `num/den` per line (zeros included).
pub fn write_rational_vector(plane: &PlaneCtx, v: &[BigRational]) -> String {
    let mut s = plane.field().header();
    s.push('\n');
    for l in plane.line_ids() {
        let r = &v[l.idx()];
        writeln!(s, "{} {}/{}", line_str(plane, l), r.numer(), r.denom()).unwrap();
    }
    s
}

pub fn read_rational_vector(text: &str) -> Result<(Arc<PlaneCtx>, Vec<BigRational>), FormatError> {
    let doc = parse_doc(text, None)?;
    let plane = doc.plane;
    let f = plane.field();
    let h = f.h() as usize;
    let mut out: Vec<Option<BigRational>> = vec![None; plane.size()];
    for (line, toks) in &doc.records {
        expect_len(*line, toks, 3 * h + 1)?;
        let v = parse_elems(f, *line, toks, 3)?;
        let l = plane
            .line_at([v[0], v[1], v[2]])
            .map_err(|e| bad(*line, e.to_string()))?;
        let (n, d) = toks[3 * h]
            .split_once('/')
            .ok_or_else(|| bad(*line, "expected num/den"))?;
        let n: BigInt = n.parse().map_err(|_| bad(*line, "bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad(*line, "bad denominator"))?;
        if d == BigInt::from(0) {
            return Err(bad(*line, "zero denominator"));
        }
        out[l.idx()] = Some(BigRational::new(n, d));
    }
    let out: Option<Vec<BigRational>> = out.into_iter().collect();
    out.map(|v| (plane, v))
        .ok_or_else(|| bad(0, "some lines have no entry"))
}

pub fn write_plane_dump(plane: &PlaneCtx) -> String {
    let f = plane.field();
    let mut s = f.header();
    s.push('\n');
    for pt in plane.point_ids() {
        let [x, y, z] = plane.point_coords(pt);
        writeln!(s, "P {} {} {} {}", pt.idx(), elem_str(f, x), elem_str(f, y), elem_str(f, z)).unwrap();
    }
    for l in plane.line_ids() {
        writeln!(s, "L {} {}", l.idx(), line_str(plane, l)).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn plane(q: u64) -> Arc<PlaneCtx> {
        PlaneCtx::new(FieldCtx::of_order(q).unwrap())
    }

    #[test]
    fn header_and_comments() {
        let pl = plane(9);
        let text = format!("# comment\n\n{}\n1 0 2 0 3\n", pl.field().header());
        let m = read_multiset(&text).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.get(pl.field().elem(1), pl.field().elem(2)), 3);
        assert_eq!(read_multiset("1 2 3\n"), Err(FormatError::MissingHeader));
        assert!(read_multiset("field 3 2 1 1 1\n").is_err());
        assert!(read_multiset("field 5 1 0 1\n1 2\n").is_err());
        assert!(read_codeword("field 5 1 0 1\n0 0 1 7\n").is_err());
        assert!(read_codeword("field 5 1 0 1\n0 0 1 2\n0 0 3 1\n").is_err());
    }

    #[test]
    fn codeword_accepts_unnormalized_points() {
        let c = read_codeword("field 5 1 0 1\n0 0 3 2\n2 4 1 1\n").unwrap();
        let pl = c.plane();
        assert_eq!(c.get(pl.point_codes([0, 0, 1])), 2);
        assert_eq!(c.get(pl.point_codes([1, 2, 3])), 1);
        assert!(read_codeword_in(&write_codeword(&c), Some(&plane(7))).is_err());
    }

    #[test]
    fn plane_dump_shape() {
        let pl = plane(2);
        let d = write_plane_dump(&pl);
        let lines: Vec<&str> = d.lines().collect();
        assert_eq!(lines[0], pl.field().header());
        assert_eq!(lines.len(), 1 + 7 + 7);
        assert_eq!(lines[1], "P 0 0 0 1");
        assert_eq!(lines[8], "L 0 0 0 1");
    }

    #[test]
    fn rational_round_trip() {
        let pl = plane(3);
        let v: Vec<BigRational> = (0..pl.size() as i64)
            .map(|i| BigRational::new(BigInt::from(i - 5), BigInt::from(i % 4 + 1)))
            .collect();
        let (_, back) = read_rational_vector(&write_rational_vector(&pl, &v)).unwrap();
        assert_eq!(back, v);
    }

    proptest! {
        #[test]
        fn multiset_round_trip(qi in 0usize..3, mult in prop::collection::vec(0u64..4, 81)) {
            let pl = plane([4, 5, 9][qi]);
            let n = (pl.q() * pl.q()) as usize;
            let m = PointMultiset::from_dense(pl.clone(), mult[..n].to_vec());
            prop_assert_eq!(read_multiset(&write_multiset(&m)).unwrap(), m);
        }

        #[test]
        fn codeword_round_trip(qi in 0usize..3, vals in prop::collection::vec(0u32..5, 91)) {
            let pl = plane([4, 5, 9][qi]);
            let p = pl.p();
            let v: Vec<u32> = vals[..pl.size()].iter().map(|&x| x % p).collect();
            let c = Codeword::from_values(pl.clone(), v);
            prop_assert_eq!(read_codeword(&write_codeword(&c)).unwrap(), c);
        }

        #[test]
        fn combination_round_trip(qi in 0usize..3, vals in prop::collection::vec(0u32..5, 91)) {
            let pl = plane([4, 5, 9][qi]);
            let mut comb = LineCombination::new();
            for l in pl.line_ids() {
                comb.set(l, vals[l.idx()] % pl.p());
            }
            let (pl2, back) = read_combination(&write_combination(&pl, &comb)).unwrap();
            prop_assert_eq!(pl2.field(), pl.field());
            prop_assert_eq!(back, comb);
        }
    }
}
