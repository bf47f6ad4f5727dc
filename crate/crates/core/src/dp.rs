//! Exact dynamic programming over `(x, y, 2A)` states.
//!
//! Layer `k` holds the number of `k`-step walks that end at `(x, y)` having
//! accumulated the doubled shoelace sum `Σ p ∧ s`. Positions from which the
//! origin can no longer be reached in the remaining steps are never filled.
//! Cells are `u128`: a layer-`k` count is at most `4^k`, so every `N` within
//! [`DP_MAX_N`] is exact.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::distribution::AreaDistribution;
use crate::walk::{check_even, wedge, Step};
use crate::{Error, Result};

/// Largest `N` accepted by [`dp_counts`]; keeps both layers under ~100 MB.
pub const DP_MAX_N: u32 = 48;

struct Layout {
    half: i64,
    width: usize,
    area_bound: i64,
    area_len: usize,
}

impl Layout {
    fn new(n: u32) -> Self {
        let n = i64::from(n);
        let half = n / 2;
        // At step j the walker is within min(j, N - j) of the origin, which
        // bounds the doubled-area increment of that step.
        let area_bound: i64 = (0..n).map(|j| j.min(n - j)).sum();
        Layout {
            half,
            width: (2 * half + 1) as usize,
            area_bound,
            area_len: (2 * area_bound + 1) as usize,
        }
    }

    fn slab(&self) -> usize {
        self.width * self.area_len
    }

    fn cells(&self) -> usize {
        self.width * self.slab()
    }

    #[inline]
    fn index(&self, x: i64, y: i64, t: i64) -> Option<usize> {
        if x.abs() > self.half || y.abs() > self.half || t.abs() > self.area_bound {
            return None;
        }
        let xi = (x + self.half) as usize;
        let yi = (y + self.half) as usize;
        let ti = (t + self.area_bound) as usize;
        Some((xi * self.width + yi) * self.area_len + ti)
    }
}

/// Exact area counts of all closed `n`-step walks.
pub fn dp_counts(n: u32) -> Result<AreaDistribution> {
    check_even(n)?;
    if n > DP_MAX_N {
        return Err(Error::Budget {
            engine: "dp",
            n,
            max: DP_MAX_N,
        });
    }
    let layout = Layout::new(n);
    let total_steps = i64::from(n);
    let mut prev = vec![0u128; layout.cells()];
    let mut next = vec![0u128; layout.cells()];
    prev[layout.index(0, 0, 0).unwrap()] = 1;

    for k in 1..=total_steps {
        let reach = k.min(total_steps - k);
        let prev_ref = &prev;
        let layout_ref = &layout;
        next.par_chunks_mut(layout.slab())
            .enumerate()
            .for_each(|(xi, slab)| {
                slab.fill(0);
                let x = xi as i64 - layout_ref.half;
                if x.abs() > reach {
                    return;
                }
                let y_reach = reach - x.abs();
                for y in -y_reach..=y_reach {
                    if (x + y - k).rem_euclid(2) != 0 {
                        continue;
                    }
                    let row = ((y + layout_ref.half) as usize) * layout_ref.area_len;
                    for s in Step::ALL {
                        let d = s.displacement();
                        let from = (x - d.0, y - d.1);
                        let shift = wedge((x, y), d);
                        let Some(base) = layout_ref.index(from.0, from.1, 0) else {
                            continue;
                        };
                        let centre = layout_ref.area_bound;
                        for ti in 0..layout_ref.area_len {
                            let t_from = ti as i64 - centre - shift;
                            if t_from.abs() > centre {
                                continue;
                            }
                            let c = prev_ref[(base as i64 + t_from) as usize];
                            if c != 0 {
                                slab[row + ti] += c;
                            }
                        }
                    }
                }
            });
        std::mem::swap(&mut prev, &mut next);
    }

    let mut counts = BTreeMap::new();
    let origin = layout.index(0, 0, 0).unwrap() as i64;
    for t in -layout.area_bound..=layout.area_bound {
        let c = prev[(origin + t) as usize];
        if c == 0 {
            continue;
        }
        if t % 2 != 0 {
            return Err(Error::Inconsistent(format!(
                "closed walks with odd doubled area {t} at N = {n}"
            )));
        }
        counts.insert(t / 2, BigUint::from(c));
    }
    AreaDistribution::new(n, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::enumerate_counts;

    #[test]
    fn small_tables() {
        assert_eq!(dp_counts(0).unwrap().to_u64_map(), BTreeMap::from([(0, 1)]));
        assert_eq!(dp_counts(2).unwrap().to_u64_map(), BTreeMap::from([(0, 4)]));
        assert_eq!(
            dp_counts(4).unwrap().to_u64_map(),
            BTreeMap::from([(-1, 4), (0, 28), (1, 4)])
        );
        let d6 = dp_counts(6).unwrap();
        assert_eq!(d6.total(), &BigUint::from(400u32));
        assert_eq!(d6, enumerate_counts(6).unwrap());
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(matches!(dp_counts(7), Err(Error::OddLength(7))));
        assert!(matches!(dp_counts(DP_MAX_N + 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn agrees_with_enumeration() {
        for n in (0..=10).step_by(2) {
            assert_eq!(
                dp_counts(n).unwrap(),
                enumerate_counts(n).unwrap(),
                "N = {n}"
            );
        }
    }

    #[test]
    fn tables_are_valid() {
        for n in (0..=30).step_by(2) {
            dp_counts(n).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn large_n_exceeds_u64() {
        // binomial(36, 18)^2 > 2^64
        let d = dp_counts(36).unwrap();
        d.validate().unwrap();
        assert!(d.total() > &BigUint::from(u64::MAX));
    }
}
