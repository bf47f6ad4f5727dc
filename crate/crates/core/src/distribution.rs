//! Exact area distributions `A ↦ C(N, A)` and their canonical serializations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::omega_exact;
use crate::walk::{check_even, max_area};
use crate::{Error, Result};

/// Number of closed `N`-step walks enclosing each algebraic area.
///
/// Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDistribution {
    n: u32,
    counts: BTreeMap<i64, BigUint>,
    total: BigUint,
}

impl AreaDistribution {
    pub fn new(n: u32, counts: BTreeMap<i64, BigUint>) -> Result<Self> {
        check_even(n)?;
        let counts: BTreeMap<i64, BigUint> =
            counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let total = counts.values().sum();
        Ok(AreaDistribution { n, counts, total })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn counts(&self) -> &BTreeMap<i64, BigUint> {
        &self.counts
    }

    pub fn count(&self, area: i64) -> BigUint {
        self.counts.get(&area).cloned().unwrap_or_default()
    }

    pub fn max_abs_area(&self) -> i64 {
        self.counts.keys().map(|a| a.abs()).max().unwrap_or(0)
    }

    /// Counts as `u64`; panics if any count overflows (only meant for small `N`).
    pub fn to_u64_map(&self) -> BTreeMap<i64, u64> {
        self.counts
            .iter()
            .map(|(&a, c)| (a, c.to_u64().expect("count fits in u64")))
            .collect()
    }

    /// Checks the structural invariants: total equals `binomial(N, N/2)²`,
    /// reflection symmetry, and the isoperimetric bound on `|A|`.
    pub fn validate(&self) -> Result<()> {
        let expected = omega_exact(self.n)?;
        if self.total != expected {
            return Err(Error::Inconsistent(format!(
                "N = {}: total {} != binomial(N, N/2)^2 = {}",
                self.n, self.total, expected
            )));
        }
        let bound = max_area(self.n)?;
        for (&a, c) in &self.counts {
            if a.abs() > bound {
                return Err(Error::Inconsistent(format!(
                    "N = {}: area {a} beyond max_area {bound}",
                    self.n
                )));
            }
            if self.counts.get(&-a) != Some(c) {
                return Err(Error::Inconsistent(format!(
                    "N = {}: C({a}) != C({})",
                    self.n, -a
                )));
            }
        }
        Ok(())
    }

    /// `Σ_A A^k C(N, A) / Ω_N` as an exact rational.
    pub fn moment(&self, k: u32) -> BigRational {
        let num: BigInt = self
            .counts
            .iter()
            .map(|(&a, c)| BigInt::from(a).pow(k) * BigInt::from(c.clone()))
            .sum();
        BigRational::new(num, BigInt::from(self.total.clone()))
    }

    /// Normalized probabilities `C(N, A) / Ω_N`.
    pub fn probabilities(&self) -> Vec<(i64, f64)> {
        let total = self.total.to_f64().unwrap_or(f64::INFINITY);
        self.counts
            .iter()
            .map(|(&a, c)| (a, c.to_f64().unwrap_or(f64::INFINITY) / total))
            .collect()
    }

    /// Canonical JSON: `{"N":…,"total":"…","counts":[[A,"…"],…]}` sorted by area.
    pub fn to_json(&self) -> String {
        let wire = Wire {
            n: self.n,
            total: self.total.to_string(),
            counts: self
                .counts
                .iter()
                .map(|(&a, c)| (a, c.to_string()))
                .collect(),
        };
        serde_json::to_string(&wire).expect("serializing plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut counts = BTreeMap::new();
        for (a, c) in wire.counts {
            let c: BigUint = c
                .parse()
                .map_err(|_| Error::Parse(format!("count {c:?} is not a decimal integer")))?;
            if counts.insert(a, c).is_some() {
                return Err(Error::Parse(format!("duplicate area {a}")));
            }
        }
        let d = AreaDistribution::new(wire.n, counts)?;
        if d.total.to_string() != wire.total {
            return Err(Error::Parse(format!(
                "declared total {} disagrees with the sum {}",
                wire.total, d.total
            )));
        }
        Ok(d)
    }

    /// CSV with header `area,count`, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("area,count\n");
        for (a, c) in &self.counts {
            writeln!(out, "{a},{c}").unwrap();
        }
        out
    }

    /// Parses [`to_csv`](Self::to_csv) output; `N` is not part of the CSV.
    pub fn from_csv(n: u32, s: &str) -> Result<Self> {
        let mut lines = s.lines();
        match lines.next() {
            Some("area,count") => {}
            other => return Err(Error::Parse(format!("bad header {other:?}"))),
        }
        let mut counts = BTreeMap::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let (a, c) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad row {line:?}")))?;
            let a: i64 = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad area {a:?}")))?;
            let c: BigUint = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {c:?}")))?;
            counts.insert(a, c);
        }
        AreaDistribution::new(n, counts)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "N")]
    n: u32,
    total: String,
    counts: Vec<(i64, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::dp_counts;
    use num_traits::One;
    use proptest::prelude::*;

    fn d4() -> AreaDistribution {
        let counts = [(-1, 4u32), (0, 28), (1, 4)]
            .into_iter()
            .map(|(a, c)| (a, BigUint::from(c)))
            .collect();
        AreaDistribution::new(4, counts).unwrap()
    }

    #[test]
    fn moments_of_small_walks() {
        let d = d4();
        assert!(d.moment(1).is_zero());
        assert!(d.moment(3).is_zero());
        assert_eq!(d.moment(2), BigRational::new(2.into(), 9.into()));
        assert_eq!(d.moment(0), BigRational::one());
        let d2 = dp_counts(2).unwrap();
        assert!(d2.moment(2).is_zero());
    }

    #[test]
    fn canonical_json() {
        assert_eq!(
            d4().to_json(),
            r#"{"N":4,"total":"36","counts":[[-1,"4"],[0,"28"],[1,"4"]]}"#
        );
        assert_eq!(d4().to_csv(), "area,count\n-1,4\n0,28\n1,4\n");
    }

    #[test]
    fn validation_catches_broken_tables() {
        assert!(d4().validate().is_ok());
        let mut counts = d4().counts().clone();
        counts.insert(1, BigUint::from(5u32));
        assert!(AreaDistribution::new(4, counts)
            .unwrap()
            .validate()
            .is_err());
        assert!(AreaDistribution::new(3, BTreeMap::new()).is_err());
        assert!(
            AreaDistribution::from_json(r#"{"N":4,"total":"37","counts":[[0,"36"]]}"#).is_err()
        );
        assert!(AreaDistribution::from_csv(4, "a,b\n").is_err());
    }

    proptest! {
        #[test]
        fn serialization_round_trips(n in (0u32..=16).prop_map(|k| 2 * k)) {
            let d = dp_counts(n).unwrap();
            prop_assert_eq!(&AreaDistribution::from_json(&d.to_json()).unwrap(), &d);
            prop_assert_eq!(&AreaDistribution::from_csv(n, &d.to_csv()).unwrap(), &d);
        }
    }
}
