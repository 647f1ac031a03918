//! Dense linear algebra over `F_p`, entries stored as residues in `u32`.

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (a as u64 * b as u64 % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

/// `row -= c * basis` over `F_p`.
#[inline]
fn axpy(row: &mut [u32], c: u32, basis: &[u32], p: u32) {
    let neg = (p - c % p) as u64;
    let m = p as u64;
    for (r, &b) in row.iter_mut().zip(basis) {
        if b != 0 {
            *r = ((*r as u64 + neg * b as u64) % m) as u32;
        }
    }
}

/// Reduced row echelon basis of a subspace of `F_p^n`, grown one vector at a
/// time.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(p: u32, ncols: usize) -> Self {
        RowEchelon {
            p,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(p: u32, ncols: usize, rows: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut e = Self::new(p, ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols);
        let mut r: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = r[piv];
            if c != 0 {
                axpy(&mut r, c, row, self.p);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Basis of `{x : row . x = 0 for every row}`.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        (0..self.ncols)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .map(|free| {
                let mut v = vec![0u32; self.ncols];
                v[free] = 1;
                for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                    v[piv] = (p - row[free]) % p;
                }
                v
            })
            .collect()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[piv], self.p);
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, self.p);
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                axpy(row, c, &r, self.p);
            }
        }
        let at = self.pivots.partition_point(|&x| x < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, r);
        true
    }
}

pub fn rank_mod_p(p: u32, rows: &[Vec<u32>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    RowEchelon::from_rows(p, ncols, rows.iter().map(Vec::as_slice)).rank()
}

/// Coefficients `a` with `sum a_i gens[i] = target`, if any.
pub fn solve_combination(p: u32, gens: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let n = target.len();
    let k = gens.len();
    // each basis row carries its expression in the generators
    let mut basis: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
    let reduce = |basis: &[(usize, Vec<u32>, Vec<u32>)], v: &mut Vec<u32>, t: &mut Vec<u32>| {
        for (piv, row, comb) in basis {
            let c = v[*piv];
            if c != 0 {
                axpy(v, c, row, p);
                axpy(t, c, comb, p);
            }
        }
    };
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), n);
        let mut v: Vec<u32> = g.iter().map(|&x| x % p).collect();
        let mut t = vec![0u32; k];
        t[i] = 1;
        reduce(&basis, &mut v, &mut t);
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[piv], p);
            v.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
            t.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
            basis.push((piv, v, t));
        }
    }
    let mut v: Vec<u32> = target.iter().map(|&x| x % p).collect();
    let mut t = vec![0u32; k];
    reduce(&basis, &mut v, &mut t);
    if v.iter().any(|&x| x != 0) {
        return None;
    }
    // here 0 = target + sum t_i gens_i
    Some(t.into_iter().map(|x| (p - x) % p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn combine(p: u32, gens: &[Vec<u32>], a: &[u32]) -> Vec<u32> {
        let n = gens[0].len();
        (0..n)
            .map(|j| {
                gens.iter()
                    .zip(a)
                    .fold(0u64, |s, (g, &c)| (s + g[j] as u64 * c as u64) % p as u64) as u32
            })
            .collect()
    }

    #[test]
    fn small_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(7, &rows), 2);
        // over F_2 the second row vanishes
        assert_eq!(rank_mod_p(2, &rows), 2);
        assert_eq!(rank_mod_p(5, &[vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn rref_shape() {
        let e = RowEchelon::from_rows(5, 3, [[0u32, 2, 1].as_slice(), &[3, 1, 4], &[3, 3, 0]]);
        for (row, &piv) in e.rows().iter().zip(e.pivots()) {
            assert_eq!(row[piv], 1);
            for other in e.rows() {
                if !std::ptr::eq(other, row) {
                    assert_eq!(other[piv], 0);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn solve_finds_combinations(
            gens in prop::collection::vec(prop::collection::vec(0u32..7, 6), 1..5),
            coeffs in prop::collection::vec(0u32..7, 5),
        ) {
            let a = &coeffs[..gens.len()];
            let target = combine(7, &gens, a);
            let sol = solve_combination(7, &gens, &target).expect("in span");
            prop_assert_eq!(combine(7, &gens, &sol), target.clone());
            let e = RowEchelon::from_rows(7, 6, gens.iter().map(Vec::as_slice));
            prop_assert!(e.contains(&target));
        }

        #[test]
        fn rank_is_order_independent(
            rows in prop::collection::vec(prop::collection::vec(0u32..3, 5), 0..7),
        ) {
            let mut rev = rows.clone();
            rev.reverse();
            if !rows.is_empty() {
                prop_assert_eq!(rank_mod_p(3, &rows), rank_mod_p(3, &rev));
            }
        }

        #[test]
        fn null_space_is_orthogonal_complement(
            rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 0..5),
        ) {
            let e = RowEchelon::from_rows(5, 6, rows.iter().map(Vec::as_slice));
            let ns = e.null_space();
            prop_assert_eq!(ns.len() + e.rank(), 6);
            prop_assert_eq!(rank_mod_p(5, &ns), ns.len().min(6));
            for v in &ns {
                for r in &rows {
                    let dot = r.iter().zip(v).map(|(&a, &b)| a * b).sum::<u32>() % 5;
                    prop_assert_eq!(dot, 0);
                }
            }
        }
    }
}
