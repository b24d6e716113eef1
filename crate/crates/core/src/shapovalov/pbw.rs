use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::chevalley::ChevalleyBasis;
use crate::error::Result;
use crate::poly::RatPoly;
use crate::roots::Weight;

/// `F_{b_1} ⋯ F_{b_k} v+` with `b_1 ≤ ⋯ ≤ b_k` in root order.
pub type Monomial = Vec<u16>;

/// Element of the deformed Verma module in the PBW basis.
pub type Vector = BTreeMap<Monomial, RatPoly>;

/// The Verma module with highest weight `ν − ρ + tρ` over `Q[t]`.
pub struct DeformedVerma<'a> {
    cb: &'a ChevalleyBasis,
    top: Vec<RatPoly>,
    memo: RefCell<HashMap<(usize, Monomial), Vector>>,
}

fn add_scaled(acc: &mut Vector, v: &Vector, c: &RatPoly) {
    for (m, x) in v {
        let term = x * c;
        let slot = acc.entry(m.clone()).or_default();
        *slot = &*slot + &term;
        if slot.is_zero() {
            acc.remove(m);
        }
    }
}

impl<'a> DeformedVerma<'a> {
    pub fn new(cb: &'a ChevalleyBasis, nu: &Weight) -> Self {
        let top = nu
            .coords()
            .iter()
            .map(|c| {
                let shifted = BigRational::new(BigInt::from(*c.numer() - *c.denom()), BigInt::from(*c.denom()));
                &RatPoly::constant(shifted) + &RatPoly::t()
            })
            .collect();
        DeformedVerma { cb, top, memo: RefCell::default() }
    }

    pub fn basis_algebra(&self) -> &ChevalleyBasis {
        self.cb
    }

    /// Sum of the roots in a monomial.
    pub fn weight_of(&self, m: &[u16]) -> Vec<i64> {
        let mut w = vec![0; self.top.len()];
        for &b in m {
            for (x, r) in w.iter_mut().zip(&self.cb.roots()[b as usize]) {
                *x += r;
            }
        }
        w
    }

    /// PBW monomials of weight `−β`.
    pub fn basis(&self, beta: &[i64]) -> Vec<Monomial> {
        fn go(roots: &[Vec<i64>], start: usize, rest: &[i64], cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if rest.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for k in start..roots.len() {
                let next: Vec<i64> = rest.iter().zip(&roots[k]).map(|(a, b)| a - b).collect();
                if next.iter().all(|&c| c >= 0) {
                    cur.push(k as u16);
                    go(roots, k, &next, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = vec![];
        go(self.cb.roots(), 0, beta, &mut vec![], &mut out);
        out.sort();
        out
    }

    fn single(m: Monomial, c: RatPoly) -> Vector {
        let mut v = Vector::new();
        if !c.is_zero() {
            v.insert(m, c);
        }
        v
    }

    /// Action of a Chevalley basis element on a monomial.
    pub fn act(&self, x: usize, m: &Monomial) -> Result<Vector> {
        if let Some(v) = self.memo.borrow().get(&(x, m.clone())) {
            return Ok(v.clone());
        }
        let cb = self.cb;
        let p = cb.positive_count();
        let out = if x >= 2 * p {
            let i = x - 2 * p;
            let wt = self.weight_of(m);
            let shift: i64 = (0..wt.len()).map(|j| cb.cartan()[i][j] * wt[j]).sum();
            Self::single(m.clone(), &self.top[i] - &RatPoly::from_i64(shift))
        } else if x >= p {
            let g = (x - p) as u16;
            match m.first() {
                Some(&b) if b < g => {
                    // F_g F_b X = F_b F_g X + [F_g, F_b] X
                    let rest: Monomial = m[1..].to_vec();
                    let mut out = self.act_vec(cb.f(b as usize), &self.act(x, &rest)?)?;
                    for (y, c) in cb.bracket(x, cb.f(b as usize))? {
                        add_scaled(&mut out, &self.act(y, &rest)?, &RatPoly::from_i64(c));
                    }
                    out
                }
                _ => {
                    let mut n = vec![g];
                    n.extend_from_slice(m);
                    Self::single(n, RatPoly::one())
                }
            }
        } else {
            match m.first() {
                None => Vector::new(),
                Some(&b) => {
                    // E_g F_b X = F_b E_g X + [E_g, F_b] X
                    let rest: Monomial = m[1..].to_vec();
                    let mut out = self.act_vec(cb.f(b as usize), &self.act(x, &rest)?)?;
                    for (y, c) in cb.bracket(x, cb.f(b as usize))? {
                        add_scaled(&mut out, &self.act(y, &rest)?, &RatPoly::from_i64(c));
                    }
                    out
                }
            }
        };
        self.memo.borrow_mut().insert((x, m.clone()), out.clone());
        Ok(out)
    }

    pub fn act_vec(&self, x: usize, v: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (m, c) in v {
            add_scaled(&mut out, &self.act(x, m)?, c);
        }
        Ok(out)
    }

    /// `⟨F_A v+, F_B v+⟩`: the `v+` coefficient of `σ(F_A) F_B v+`.
    pub fn pairing(&self, a: &Monomial, b: &Monomial) -> Result<RatPoly> {
        let mut v = Self::single(b.clone(), RatPoly::one());
        for &k in a {
            v = self.act_vec(self.cb.e(k as usize), &v)?;
        }
        Ok(v.remove(&Monomial::new()).unwrap_or_default())
    }

    pub fn gram(&self, beta: &[i64]) -> Result<GramMatrix> {
        let basis = self.basis(beta);
        let entries = basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pairing(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(GramMatrix { beta: beta.to_vec(), basis, entries })
    }
}

/// The contravariant form on one weight space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub beta: Vec<i64>,
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<RatPoly>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystem;

    fn with<R>(t: &str, nu: &str, f: impl FnOnce(&DeformedVerma) -> R) -> R {
        let cb = ChevalleyBasis::new(&RootSystem::new(t.parse().unwrap())).unwrap();
        let v = DeformedVerma::new(&cb, &nu.parse().unwrap());
        f(&v)
    }

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn sl2_gram_entries() {
        with("A1", "1", |v| {
            assert_eq!(v.gram(&[0]).unwrap().entries, vec![vec![RatPoly::one()]]);
            assert_eq!(v.gram(&[1]).unwrap().entries, vec![vec![rp(&[0, 1])]]);
            assert_eq!(v.gram(&[2]).unwrap().entries, vec![vec![rp(&[0, -2, 2])]]);
        });
        with("A1", "0", |v| {
            assert_eq!(v.gram(&[1]).unwrap().entries, vec![vec![rp(&[-1, 1])]]);
        });
    }

    #[test]
    fn sl2_product_formula() {
        // ⟨F^n v, F^n v⟩ = Π_{i=1..n} i(m − i + 1) with m = ν − 1 + t
        with("A1", "3", |v| {
            let m = rp(&[2, 1]);
            let mut expect = RatPoly::one();
            for n in 1..=5i64 {
                let factor = &m - &RatPoly::from_i64(n - 1);
                expect = &(&expect * &factor) * &RatPoly::from_i64(n);
                assert_eq!(v.gram(&[n]).unwrap().entries[0][0], expect);
            }
        });
    }

    #[test]
    fn gram_is_symmetric_and_sized_by_partitions() {
        for (t, nu, depth) in [("A2", "1,-1/2", 4), ("B2", "1,1", 3), ("G2", "1,0", 3)] {
            let rs = RootSystem::new(t.parse().unwrap());
            let cb = ChevalleyBasis::new(&rs).unwrap();
            let v = DeformedVerma::new(&cb, &nu.parse().unwrap());
            for beta in crate::roots::nonneg_vectors(rs.rank(), depth) {
                let g = v.gram(&beta).unwrap();
                assert_eq!(g.basis.len() as u64, rs.kostant_partition(&beta).unwrap());
                for i in 0..g.basis.len() {
                    for j in 0..g.basis.len() {
                        assert_eq!(g.entries[i][j], g.entries[j][i], "{t} {beta:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn form_is_contravariant() {
        for (t, nu) in [("A2", "1,1"), ("B2", "2,-1/2")] {
            let rs = RootSystem::new(t.parse().unwrap());
            let cb = ChevalleyBasis::new(&rs).unwrap();
            let v = DeformedVerma::new(&cb, &nu.parse().unwrap());
            let form = |x: &Vector, y: &Vector| -> RatPoly {
                let mut s = RatPoly::zero();
                for (a, ca) in x {
                    for (b, cb) in y {
                        s = &s + &(&(ca * cb) * &v.pairing(a, b).unwrap());
                    }
                }
                s
            };
            for beta in crate::roots::nonneg_vectors(2, 2) {
                for k in 0..cb.positive_count() {
                    let upper: Vec<i64> = beta.iter().zip(&cb.roots()[k]).map(|(a, b)| a + b).collect();
                    for a in v.basis(&beta) {
                        for b in v.basis(&upper) {
                            let fa = v.act(cb.f(k), &a).unwrap();
                            let eb = v.act(cb.e(k), &b).unwrap();
                            let ua = DeformedVerma::single(a.clone(), RatPoly::one());
                            let ub = DeformedVerma::single(b.clone(), RatPoly::one());
                            assert_eq!(form(&fa, &ub), form(&ua, &eb), "{t} {a:?} {b:?}");
                        }
                    }
                }
            }
        }
    }
}
