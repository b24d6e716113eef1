use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::RatPoly;

/// Invariant factors `d_1 | d_2 | ⋯` of a square matrix over `Q[t]`, monic,
/// by Euclidean row and column reduction. Zero factors mark rank deficiency.
pub fn invariant_factors(m: &[Vec<RatPoly>]) -> Vec<RatPoly> {
    let n = m.len();
    let mut a: Vec<Vec<RatPoly>> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            let Some((pi, pj)) = pivot else {
                out.resize(n, RatPoly::zero());
                return out;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..n {
                    let t = &q * &a[k][j];
                    a[i][j] = &a[i][j] - &t;
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for i in k..n {
                    let t = &q * &a[i][k];
                    a[i][j] = &a[i][j] - &t;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[k][k].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    for j in k..n {
                        let t = a[i][j].clone();
                        a[k][j] = &a[k][j] + &t;
                    }
                }
                None => break,
            }
        }
        out.push(a[k][k].monic());
    }
    out
}

/// Rank over `Q` of the matrix specialized at `t = 0`.
pub fn rank_at_zero(m: &[Vec<RatPoly>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|p| p.eval_zero()).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    fn det(m: &[Vec<RatPoly>]) -> RatPoly {
        if m.is_empty() {
            return RatPoly::one();
        }
        let mut s = RatPoly::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<RatPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = &m[0][j] * &det(&minor);
            s = if j % 2 == 0 { &s + &term } else { &s - &term };
        }
        s
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    /// `Σ_{i≤k} v_i` as the least valuation of a `k × k` minor.
    fn minor_valuations(m: &[Vec<RatPoly>]) -> Vec<Option<usize>> {
        let n = m.len();
        (1..=n)
            .map(|k| {
                let mut best: Option<usize> = None;
                for rows in subsets(n, k) {
                    for cols in subsets(n, k) {
                        let sub: Vec<Vec<RatPoly>> =
                            rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
                        if let Some(v) = det(&sub).valuation() {
                            best = Some(best.map_or(v, |b: usize| b.min(v)));
                        }
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn diagonal_example() {
        let m = vec![vec![rp(&[0, 2]), rp(&[])], vec![rp(&[]), rp(&[0, 0, 3])]];
        assert_eq!(invariant_factors(&m), vec![rp(&[0, 1]), rp(&[0, 0, 1])]);
    }

    #[test]
    fn non_diagonal_example() {
        // [[t, 0], [0, t - 1]] ~ diag(1, t(t - 1))
        let m = vec![vec![rp(&[0, 1]), rp(&[])], vec![rp(&[]), rp(&[-1, 1])]];
        assert_eq!(invariant_factors(&m), vec![rp(&[1]), rp(&[0, -1, 1])]);
        assert_eq!(rank_at_zero(&m), 1);
    }

    #[test]
    fn singular_matrix_has_zero_factor() {
        let m = vec![vec![rp(&[1, 1]), rp(&[1, 1])], vec![rp(&[2, 2]), rp(&[2, 2])]];
        let f = invariant_factors(&m);
        assert!(f[1].is_zero());
    }

    fn poly_strategy() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| rp(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_determinantal_divisors(entries in prop::collection::vec(poly_strategy(), 9)) {
            let m: Vec<Vec<RatPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
            let f = invariant_factors(&m);
            for k in 1..f.len() {
                if !f[k].is_zero() {
                    prop_assert!(f[k - 1].divides(&f[k]));
                }
            }
            let expected = minor_valuations(&m);
            let mut acc = Some(0usize);
            for (k, d) in f.iter().enumerate() {
                acc = match (acc, d.valuation()) {
                    (Some(a), Some(v)) => Some(a + v),
                    _ => None,
                };
                prop_assert_eq!(acc, expected[k]);
            }
        }
    }
}
