//! Command-line value syntax: field elements, slopes and polynomials.

use anyhow::{anyhow, bail, Result};
use pgdir::gf::{Elem, FieldCtx};
use pgdir::plane::Slope;
use pgdir::planecode::ReducedPoly3;

/// `7`, `-1` (prime fields only) or `c0:c1:...` (coefficients, low degree first).
/// A bare integer below `q` is taken as the packed element code.
pub fn elem(f: &FieldCtx, tok: &str) -> Result<Elem> {
    let tok = tok.trim();
    if tok.contains(':') {
        let cs = tok
            .split(':')
            .map(|c| c.trim().parse::<u32>().map_err(|_| anyhow!("bad coefficient in '{tok}'")))
            .collect::<Result<Vec<_>>>()?;
        return f.from_coeffs(&cs).map_err(|e| anyhow!("'{tok}': {e}"));
    }
    let v: i64 = tok.parse().map_err(|_| anyhow!("bad field element '{tok}'"))?;
    if (0..f.q() as i64).contains(&v) {
        Ok(f.elem(v as u32))
    } else if f.h() == 1 {
        Ok(f.from_int(v))
    } else {
        bail!("element code {v} out of range for q={}", f.q())
    }
}

pub fn elems(f: &FieldCtx, list: &str) -> Result<Vec<Elem>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(|t| elem(f, t)).collect()
}

/// A slope, or `inf` for the vertical direction.
pub fn slope(f: &FieldCtx, tok: &str) -> Result<Slope> {
    match tok.trim() {
        "inf" | "oo" | "∞" => Ok(Slope::Infinite),
        t => Ok(Slope::Finite(elem(f, t)?)),
    }
}

pub fn slopes(f: &FieldCtx, list: &str) -> Result<Vec<Slope>> {
    list.split(',').map(|t| slope(f, t)).collect()
}

/// Sum of terms like `3*X^2*Y`, `Z`, `-1`, `[1:1]*X*Z`; `0` is the zero polynomial.
pub fn poly(f: &FieldCtx, text: &str) -> Result<ReducedPoly3> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut acc = ReducedPoly3::zero();
    if text.is_empty() || text == "0" {
        return Ok(acc);
    }
    // split on '+' and on '-' that starts a new term
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('*') && !cur.ends_with(':') {
            terms.push(std::mem::take(&mut cur));
        }
        if ch != '+' {
            cur.push(ch);
        }
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.as_str()),
        };
        let mut coef = f.one();
        let mut exp = (0u32, 0u32, 0u32);
        for factor in body.split('*') {
            let (base, e) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| anyhow!("bad exponent in '{factor}'"))?),
                None => (factor, 1),
            };
            match base {
                "X" | "x" => exp.0 += e,
                "Y" | "y" => exp.1 += e,
                "Z" | "z" => exp.2 += e,
                b => {
                    let b = b.trim_start_matches('[').trim_end_matches(']');
                    coef = f.mul(coef, f.pow(elem(f, b)?, e as u64));
                }
            }
        }
        if neg {
            coef = f.neg(coef);
        }
        acc = acc.add(f, &ReducedPoly3::monomial(exp, coef));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        let f = FieldCtx::prime(7).unwrap();
        assert_eq!(elem(&f, "-1").unwrap(), f.elem(6));
        assert_eq!(elem(&f, "9").unwrap(), f.elem(2));
        let g = FieldCtx::new(3, 2).unwrap();
        assert_eq!(elem(&g, "0:1").unwrap(), g.from_coeffs(&[0, 1]).unwrap());
        assert!(elem(&g, "9").is_err());
        assert_eq!(slope(&f, "inf").unwrap(), Slope::Infinite);
    }

    #[test]
    fn polynomials() {
        let f = FieldCtx::prime(5).unwrap();
        let g = poly(&f, "2*X^2 + Y*Z - 3*Z^2").unwrap();
        assert_eq!(g.num_terms(), 3);
        assert_eq!(g.coeff((2, 0, 0)), Some(f.elem(2)));
        assert_eq!(g.coeff((0, 1, 1)), Some(f.one()));
        assert_eq!(g.coeff((0, 0, 2)), Some(f.elem(2)));
        assert!(poly(&f, "0").unwrap().is_zero());
        assert!(poly(&f, "X^a").is_err());
    }
}
