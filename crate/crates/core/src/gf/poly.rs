//! Univariate polynomials over `F_q`.

use super::{Elem, FieldCtx};

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<Elem> {
        self.coeffs.get(i).copied()
    }

    pub fn eval(&self, f: &FieldCtx, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The unique polynomial of degree at most `q - 1` agreeing with `g` on
    /// every element of `F_q` (`values[b]` is the value at the element with
    /// code `b`).
    ///
    /// Uses `L_b(T) = 1 - (T - b)^{q-1}`: the coefficient of `T^j`, `j >= 1`,
    /// is `-sum_b g(b) b^{q-1-j}` and the constant term is `g(0)`.
    pub fn interpolate_all(f: &FieldCtx, values: &[Elem]) -> Self {
        let q = f.q() as usize;
        assert_eq!(values.len(), q, "need one value per field element");
        let mut coeffs = vec![f.zero(); q];
        coeffs[0] = values[0];
        for (b, &v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if b == 0 {
                // only b^0 survives, at j = q - 1
                coeffs[q - 1] = f.sub(coeffs[q - 1], v);
                continue;
            }
            let be = f.elem(b as u32);
            // powers b^{q-1-j} for j = q-1 down to 1
            let mut pw = f.one();
            for j in (1..q).rev() {
                coeffs[j] = f.sub(coeffs[j], f.mul(v, pw));
                pw = f.mul(pw, be);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn add(&self, f: &FieldCtx, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeff(i).unwrap_or(f.zero());
                let b = other.coeff(i).unwrap_or(f.zero());
                f.add(a, b)
            })
            .collect();
        Self::from_coeffs(c)
    }

    pub fn mul(&self, f: &FieldCtx, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interpolation_reproduces_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, h) in [(2, 1), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = FieldCtx::new(p, h).unwrap();
            for _ in 0..20 {
                let vals: Vec<Elem> = (0..f.q()).map(|_| f.elem(rng.gen_range(0..f.q()))).collect();
                let poly = UniPoly::interpolate_all(&f, &vals);
                assert!(poly.degree().is_none_or(|d| d < f.q() as usize));
                for (b, &v) in vals.iter().enumerate() {
                    assert_eq!(poly.eval(&f, f.elem(b as u32)), v);
                }
            }
        }
    }

    #[test]
    fn interpolating_a_low_degree_poly() {
        let f = FieldCtx::prime(7).unwrap();
        let target = UniPoly::from_coeffs(vec![f.from_int(3), f.from_int(5), f.from_int(1)]);
        let vals: Vec<Elem> = f.elements().map(|x| target.eval(&f, x)).collect();
        assert_eq!(UniPoly::interpolate_all(&f, &vals), target);
        let zero = vec![f.zero(); 7];
        assert!(UniPoly::interpolate_all(&f, &zero).is_zero());
    }
}
