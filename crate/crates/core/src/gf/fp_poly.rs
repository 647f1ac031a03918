//! Dense polynomials over `F_p` as coefficient vectors, lowest degree first.
//! Only what the modulus search needs.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

pub(crate) fn mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

pub(crate) fn rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let m = trim(m.to_vec());
    assert!(!m.is_empty(), "reduction modulo the zero polynomial");
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let p64 = p as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = c * mi as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn mulmod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    rem(p, &mul(p, a, b), m)
}

fn powmod(p: u32, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut base = rem(p, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(p, &acc, &base, m);
        }
        base = mulmod(p, &base, &base, m);
        e >>= 1;
    }
    rem(p, &acc, m)
}

/// Irreducibility of a monic `f` over `F_p`: `X^{p^h} = X mod f` and
/// `gcd(X^{p^i} - X, f) = 1` for `1 <= i < h`.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let h = f.len() - 1;
    if h == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut xp = rem(p, &x, &f);
    for i in 1..=h {
        xp = powmod(p, &xp, p as u64, &f);
        let diff = sub(p, &xp, &x);
        if i < h {
            let g = gcd(p, &f, &diff);
            if g.len() != 1 {
                return false;
            }
        } else if !diff.is_empty() {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `h`, comparing
/// coefficients from the constant term upwards.
pub(crate) fn smallest_irreducible(p: u32, h: usize) -> Vec<u32> {
    let total = (p as u64).pow(h as u32);
    for n in 0..total {
        // most significant digit is the constant term
        let mut coeffs = vec![0u32; h + 1];
        let mut rest = n;
        for i in (0..h).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[h] = 1;
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(smallest_irreducible(2, 1), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(!is_irreducible(3, &[2, 0, 1]));
    }

    #[test]
    fn count_irreducibles() {
        // number of monic irreducibles of degree 4 over F_2 is 3, of degree 3 over F_3 is 8
        let count = |p: u32, h: usize| {
            let total = (p as u64).pow(h as u32);
            (0..total)
                .filter(|&n| {
                    let mut c = vec![0u32; h + 1];
                    let mut r = n;
                    for x in c.iter_mut().take(h) {
                        *x = (r % p as u64) as u32;
                        r /= p as u64;
                    }
                    c[h] = 1;
                    is_irreducible(p, &c)
                })
                .count()
        };
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(5, 2), 10);
    }
}
