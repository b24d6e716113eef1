//! Deterministic families of antidominant weights used for bulk checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::roots::{LieType, RootSystem, Weight, Q};

pub const DEFAULT_SEED: u64 = 0x6a616e747a656e;

/// Types exercised by the bulk checks.
pub const SUITE_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RegularIntegral,
    SingularIntegral,
    Nonintegral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteWeight {
    pub family: Family,
    pub label: String,
    pub mu: Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSpec {
    pub lie_type: LieType,
    pub seed: u64,
    pub random_count: usize,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

impl SuiteSpec {
    pub fn new(lie_type: LieType) -> Self {
        SuiteSpec { lie_type, seed: DEFAULT_SEED, random_count: 2 }
    }

    /// Regular `−ρ`, one singular weight per nonempty `J ⊆ Δ`, fixed
    /// nonintegral patterns and seeded random nonpositive rationals. All
    /// coordinates are `≤ 0`, so every weight is antidominant.
    pub fn generate(&self) -> Vec<SuiteWeight> {
        let n = self.lie_type.rank();
        let rs = RootSystem::new(self.lie_type);
        let mut out = vec![SuiteWeight {
            family: Family::RegularIntegral,
            label: "regular".into(),
            mu: Weight::from_ints(&vec![-1; n]),
        }];
        for mask in 1u32..(1 << n) {
            let coords: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { 0 } else { -1 }).collect();
            let j: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            out.push(SuiteWeight {
                family: Family::SingularIntegral,
                label: format!("J={{{}}}", j.join(",")),
                mu: Weight::from_ints(&coords),
            });
        }

        let mut patterns: Vec<(String, Vec<Q>)> = vec![
            ("all -1/2".into(), vec![q(-1, 2); n]),
            ("first -1/2".into(), (0..n).map(|i| if i == 0 { q(-1, 2) } else { q(-1, 1) }).collect()),
            ("all -1/3".into(), vec![q(-1, 3); n]),
            ("last -1/2, rest 0".into(), (0..n).map(|i| if i + 1 == n { q(-1, 2) } else { q(0, 1) }).collect()),
        ];
        let palette = [q(0, 1), q(-1, 1), q(-2, 1), q(-1, 2), q(-3, 2), q(-1, 3), q(-2, 3)];
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (n as u64) << 8);
        let mut found = 0;
        let mut attempts = 0;
        while found < self.random_count && attempts < 1000 {
            attempts += 1;
            let coords: Vec<Q> = (0..n).map(|_| palette[rng.gen_range(0..palette.len())]).collect();
            if patterns.iter().any(|(_, c)| *c == coords) {
                continue;
            }
            found += 1;
            patterns.push((format!("random {found}"), coords));
        }

        for (label, coords) in patterns {
            let mu = Weight::new(coords);
            let integral = (0..rs.positive_roots().len()).all(|k| rs.pairing_index(&mu, k).is_integer());
            if integral || out.iter().any(|s| s.mu == mu) {
                continue;
            }
            out.push(SuiteWeight { family: Family::Nonintegral, label, mu });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_is_present_and_antidominant() {
        for t in SUITE_TYPES {
            let lt: LieType = t.parse().unwrap();
            let rs = RootSystem::new(lt);
            let suite = SuiteSpec::new(lt).generate();
            assert!(suite.iter().all(|s| rs.is_antidominant(&s.mu)), "{t}");
            let count = |f| suite.iter().filter(|s| s.family == f).count();
            assert_eq!(count(Family::RegularIntegral), 1);
            assert_eq!(count(Family::SingularIntegral), (1 << lt.rank()) - 1);
            assert!(count(Family::Nonintegral) >= 2, "{t}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let lt: LieType = "B3".parse().unwrap();
        assert_eq!(SuiteSpec::new(lt).generate(), SuiteSpec::new(lt).generate());
        let other = SuiteSpec { seed: 1, ..SuiteSpec::new(lt) }.generate();
        assert_eq!(other.len(), SuiteSpec::new(lt).generate().len());
    }
}
