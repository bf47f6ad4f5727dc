//! Lattice walks, their signed area, and the brute-force enumeration oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::distribution::AreaDistribution;
use crate::{Error, Result};

/// Largest `N` the direct enumeration accepts.
pub const ENUMERATE_MAX_N: u32 = 14;

/// A unit step on the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    PlusX,
    MinusX,
    PlusY,
    MinusY,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::PlusX, Step::MinusX, Step::PlusY, Step::MinusY];

    pub fn displacement(self) -> (i64, i64) {
        match self {
            Step::PlusX => (1, 0),
            Step::MinusX => (-1, 0),
            Step::PlusY => (0, 1),
            Step::MinusY => (0, -1),
        }
    }

    pub fn negate(self) -> Step {
        match self {
            Step::PlusX => Step::MinusX,
            Step::MinusX => Step::PlusX,
            Step::PlusY => Step::MinusY,
            Step::MinusY => Step::PlusY,
        }
    }

    /// Counterclockwise quarter turn.
    pub fn rotate(self) -> Step {
        match self {
            Step::PlusX => Step::PlusY,
            Step::PlusY => Step::MinusX,
            Step::MinusX => Step::MinusY,
            Step::MinusY => Step::PlusX,
        }
    }

    /// Mirror across the x axis.
    pub fn reflect(self) -> Step {
        match self {
            Step::PlusY => Step::MinusY,
            Step::MinusY => Step::PlusY,
            s => s,
        }
    }
}

/// Signed area in plaquette units; counterclockwise loops are positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedArea(pub i64);

impl fmt::Display for SignedArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Walk {
    steps: Vec<Step>,
}

impl Walk {
    pub fn new(steps: Vec<Step>) -> Self {
        Walk { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Positions visited, starting with the origin; `len() + 1` entries.
    pub fn positions(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = (0, 0);
        out.push(p);
        for s in &self.steps {
            let (dx, dy) = s.displacement();
            p = (p.0 + dx, p.1 + dy);
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> (i64, i64) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.displacement();
            (x + dx, y + dy)
        })
    }

    pub fn is_closed(&self) -> bool {
        self.end() == (0, 0)
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> Walk {
        Walk::new(self.steps.iter().rev().map(|s| s.negate()).collect())
    }

    pub fn rotated(&self) -> Walk {
        Walk::new(self.steps.iter().map(|s| s.rotate()).collect())
    }

    pub fn reflected(&self) -> Walk {
        Walk::new(self.steps.iter().map(|s| s.reflect()).collect())
    }
}

impl FromIterator<Step> for Walk {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        Walk::new(iter.into_iter().collect())
    }
}

/// Cross product `p ∧ s = p_x s_y − p_y s_x`.
#[inline]
pub(crate) fn wedge(p: (i64, i64), s: (i64, i64)) -> i64 {
    p.0 * s.1 - p.1 * s.0
}

/// Shoelace area of a closed walk: `A = ½ Σ_k p_{k−1} ∧ s_k`.
pub fn algebraic_area(w: &Walk) -> Result<SignedArea> {
    if w.len() % 2 == 1 {
        return Err(Error::OddLength(w.len() as u32));
    }
    let mut p = (0i64, 0i64);
    let mut twice = 0i64;
    for s in w.steps() {
        let d = s.displacement();
        twice += wedge(p, d);
        p = (p.0 + d.0, p.1 + d.1);
    }
    if p != (0, 0) {
        return Err(Error::NotClosed(w.len()));
    }
    debug_assert_eq!(twice % 2, 0);
    Ok(SignedArea(twice / 2))
}

/// Largest `|A|` reachable by a closed walk of `n` steps: `⌊N/4⌋·⌈N/4⌉`.
pub fn max_area(n: u32) -> Result<i64> {
    if n % 2 == 1 {
        return Err(Error::OddLength(n));
    }
    let n = i64::from(n);
    Ok((n / 4) * ((n + 3) / 4))
}

pub(crate) fn check_even(n: u32) -> Result<()> {
    if n % 2 == 1 {
        Err(Error::OddLength(n))
    } else {
        Ok(())
    }
}

/// Counts every closed walk of length `n` by depth-first enumeration.
///
/// Branches that can no longer reach the origin are cut, so each leaf is a
/// distinct closed walk. The first two steps are split across rayon tasks and
/// merged with integer addition, so the result does not depend on scheduling.
pub fn enumerate_counts(n: u32) -> Result<AreaDistribution> {
    check_even(n)?;
    if n > ENUMERATE_MAX_N {
        return Err(Error::Budget {
            engine: "enumerate",
            n,
            max: ENUMERATE_MAX_N,
        });
    }
    let counts: BTreeMap<i64, u64> = if n == 0 {
        BTreeMap::from([(0, 1)])
    } else {
        let prefixes: Vec<(Step, Step)> = Step::ALL
            .iter()
            .flat_map(|&a| Step::ALL.iter().map(move |&b| (a, b)))
            .collect();
        let partial: Vec<BTreeMap<i64, u64>> = prefixes
            .par_iter()
            .map(|&(a, b)| {
                let mut out = BTreeMap::new();
                let mut e = Enumerator {
                    n: n as i64,
                    counts: &mut out,
                };
                let (p, twice) = advance((0, 0), 0, a);
                let (p, twice) = advance(p, twice, b);
                e.descend(p, twice, 2);
                out
            })
            .collect();
        let mut merged = BTreeMap::new();
        for m in partial {
            for (a, c) in m {
                *merged.entry(a).or_insert(0) += c;
            }
        }
        merged
    };
    AreaDistribution::new(
        n,
        counts
            .into_iter()
            .map(|(a, c)| (a, BigUint::from(c)))
            .collect(),
    )
}

#[inline]
fn advance(p: (i64, i64), twice: i64, s: Step) -> ((i64, i64), i64) {
    let d = s.displacement();
    ((p.0 + d.0, p.1 + d.1), twice + wedge(p, d))
}

struct Enumerator<'a> {
    n: i64,
    counts: &'a mut BTreeMap<i64, u64>,
}

impl Enumerator<'_> {
    fn descend(&mut self, p: (i64, i64), twice: i64, depth: i64) {
        let remaining = self.n - depth;
        if p.0.abs() + p.1.abs() > remaining {
            return;
        }
        if remaining == 0 {
            *self.counts.entry(twice / 2).or_insert(0) += 1;
            return;
        }
        for s in Step::ALL {
            let (q, t) = advance(p, twice, s);
            self.descend(q, t, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Step::*;

    #[test]
    fn unit_squares() {
        let ccw = Walk::new(vec![PlusX, PlusY, MinusX, MinusY]);
        let cw = Walk::new(vec![PlusY, PlusX, MinusY, MinusX]);
        let flat = Walk::new(vec![PlusX, MinusX, PlusX, MinusX]);
        assert_eq!(algebraic_area(&ccw).unwrap(), SignedArea(1));
        assert_eq!(algebraic_area(&cw).unwrap(), SignedArea(-1));
        assert_eq!(algebraic_area(&flat).unwrap(), SignedArea(0));
    }

    #[test]
    fn rejects_open_and_odd() {
        assert!(matches!(
            algebraic_area(&Walk::new(vec![PlusX, PlusX])),
            Err(Error::NotClosed(2))
        ));
        assert!(matches!(
            algebraic_area(&Walk::new(vec![PlusX, PlusY, MinusX])),
            Err(Error::OddLength(3))
        ));
        assert!(enumerate_counts(5).is_err());
        assert!(matches!(enumerate_counts(16), Err(Error::Budget { .. })));
    }

    #[test]
    fn step_negation_is_involution() {
        for s in Step::ALL {
            assert_eq!(s.negate().negate(), s);
            assert_ne!(s.negate(), s);
            assert_eq!(s.rotate().rotate().rotate().rotate(), s);
        }
    }

    #[test]
    fn small_enumerations() {
        let d0 = enumerate_counts(0).unwrap();
        assert_eq!(d0.count(0), BigUint::from(1u32));
        let d2 = enumerate_counts(2).unwrap();
        assert_eq!(d2.to_u64_map(), BTreeMap::from([(0, 4)]));
        let d4 = enumerate_counts(4).unwrap();
        assert_eq!(d4.to_u64_map(), BTreeMap::from([(-1, 4), (0, 28), (1, 4)]));
        assert_eq!(d4.total(), &BigUint::from(36u32));
    }

    #[test]
    fn max_area_matches_oracle() {
        assert_eq!(max_area(4).unwrap(), 1);
        assert_eq!(max_area(6).unwrap(), 2);
        assert_eq!(max_area(8).unwrap(), 4);
        assert!(max_area(7).is_err());
        for n in (0..=12).step_by(2) {
            let d = enumerate_counts(n).unwrap();
            assert_eq!(d.max_abs_area(), max_area(n).unwrap(), "N = {n}");
        }
    }

    fn closed_walk() -> impl Strategy<Value = Walk> {
        // A random word followed by its negation in shuffled order is closed.
        (prop::collection::vec(0usize..4, 0..8), any::<u64>()).prop_map(|(half, seed)| {
            let mut steps: Vec<Step> = half.iter().map(|&i| Step::ALL[i]).collect();
            let mut back: Vec<Step> = steps.iter().map(|s| s.negate()).collect();
            let mut state = seed | 1;
            for i in (1..back.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                back.swap(i, (state % (i as u64 + 1)) as usize);
            }
            steps.extend(back);
            Walk::new(steps)
        })
    }

    proptest! {
        #[test]
        fn area_symmetries(w in closed_walk()) {
            let a = algebraic_area(&w).unwrap().0;
            prop_assert_eq!(algebraic_area(&w.reversed()).unwrap().0, -a);
            prop_assert_eq!(algebraic_area(&w.rotated()).unwrap().0, a);
            prop_assert_eq!(algebraic_area(&w.reflected()).unwrap().0, -a);
            prop_assert!(a.abs() <= max_area(w.len() as u32).unwrap());
        }
    }
}
