//! Existence of order-p subgroups via the Riemann–Hurwitz equation
//! `g - 2 = p(h - 2) + t(p - 1)`.
//!
//! A solution `(h, t)` describes a Z/p action on `N_g` with quotient `N_h`
//! and `t` fixed points. With `k >= 1` marked points, `N_g^k` has p-torsion
//! exactly when some solution has `t >= k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhInstance {
    pub g: u32,
    pub k: u32,
    pub p: Prime,
}

impl RhInstance {
    pub fn new(g: u32, k: u32, p: Prime) -> Result<Self> {
        if g < 3 {
            return Err(Error::InvalidParameter(format!("genus must be at least 3, got {g}")));
        }
        Ok(RhInstance { g, k, p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RhSolution {
    pub h: u32,
    pub t: u32,
    /// Set when `t = 0`, i.e. the action would have no fixed points.
    pub free_action: bool,
}

impl RhSolution {
    fn new(h: u32, t: u32) -> Self {
        RhSolution {
            h,
            t,
            free_action: t == 0,
        }
    }
}

/// Every `(h, t)` with `h >= 1`, `t >= 0` solving the equation for `(g, p)`,
/// sorted by `(h, t)`.
///
/// Bounds: `t >= 0` gives `p(h - 2) <= g - 2`, so `h <= (g - 2)/p + 2`; for a
/// fixed `h` the value of `t` is forced.
pub fn solve(g: u32, p: Prime) -> Vec<RhSolution> {
    let (g, p) = (g as i64, p.get() as i64);
    let h_max = (g - 2).div_euclid(p) + 2;
    (1..=h_max)
        .filter_map(|h| {
            let rest = g - 2 - p * (h - 2);
            (rest >= 0 && rest % (p - 1) == 0).then(|| RhSolution::new(h as u32, (rest / (p - 1)) as u32))
        })
        .collect()
}

pub fn solve_all(inst: &RhInstance) -> Vec<RhSolution> {
    solve(inst.g, inst.p)
}

/// Outcome of the torsion test for `N_g^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub has_torsion: bool,
    /// Solutions with `h >= 1` and `t >= max(k, 1)`.
    pub witnesses: Vec<RhSolution>,
    /// Solutions with `t = 0`. Listed for completeness, never counted.
    pub free_solutions: Vec<RhSolution>,
}

pub fn has_p_torsion(inst: &RhInstance) -> TorsionReport {
    let min_t = inst.k.max(1);
    let (free_solutions, branched): (Vec<_>, Vec<_>) = solve_all(inst).into_iter().partition(|s| s.free_action);
    let witnesses: Vec<_> = branched.into_iter().filter(|s| s.t >= min_t).collect();
    TorsionReport {
        has_torsion: !witnesses.is_empty(),
        witnesses,
        free_solutions,
    }
}

/// Genus of the covering surface for quotient data `(h, t)`:
/// `p(h - 2) + t(p - 1) + 2`.
///
/// Values below 3 come back as [`Error::GenusBelowThree`] carrying the raw
/// value, see [`raw_kernel_genus`].
pub fn kernel_genus(h: u32, t: u32, p: Prime) -> Result<u32> {
    let g = raw_kernel_genus(h, t, p);
    if g < 3 {
        return Err(Error::GenusBelowThree(g));
    }
    Ok(g as u32)
}

pub fn raw_kernel_genus(h: u32, t: u32, p: Prime) -> i64 {
    let p = p.get() as i64;
    p * (h as i64 - 2) + t as i64 * (p - 1) + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn pairs(sols: &[RhSolution]) -> Vec<(u32, u32)> {
        sols.iter().map(|s| (s.h, s.t)).collect()
    }

    #[test]
    fn example_families_at_p5() {
        assert_eq!(pairs(&solve(5, p(5))), vec![(1, 2)]);
        assert_eq!(pairs(&solve(6, p(5))), vec![(2, 1)]);
        assert_eq!(pairs(&solve(9, p(5))), vec![(1, 3)]);
    }

    #[test]
    fn torsion_examples() {
        let r = has_p_torsion(&RhInstance::new(5, 2, p(5)).unwrap());
        assert!(r.has_torsion);
        assert_eq!(pairs(&r.witnesses), vec![(1, 2)]);
        assert!(!has_p_torsion(&RhInstance::new(5, 3, p(5)).unwrap()).has_torsion);
        assert!(!has_p_torsion(&RhInstance::new(9, 4, p(5)).unwrap()).has_torsion);
    }

    #[test]
    fn free_solutions_are_flagged_not_counted() {
        // g = 8, p = 3: (h, t) = (2, 3) and (4, 0) both solve.
        let inst = RhInstance::new(8, 0, p(3)).unwrap();
        let all = solve_all(&inst);
        assert_eq!(pairs(&all), vec![(2, 3), (4, 0)]);
        assert!(all[1].free_action);
        let r = has_p_torsion(&inst);
        assert_eq!(pairs(&r.witnesses), vec![(2, 3)]);
        assert_eq!(pairs(&r.free_solutions), vec![(4, 0)]);

        // g = 7, p = 5 only admits the free solution (3, 0).
        let r = has_p_torsion(&RhInstance::new(7, 0, p(5)).unwrap());
        assert!(!r.has_torsion);
        assert_eq!(pairs(&r.free_solutions), vec![(3, 0)]);
    }

    #[test]
    fn kernel_genus_examples() {
        assert_eq!(kernel_genus(1, 2, p(5)), Ok(5));
        assert_eq!(kernel_genus(2, 0, p(7)), Err(Error::GenusBelowThree(2)));
        assert_eq!(kernel_genus(3, 1, p(3)), Ok(7));
    }

    #[test]
    fn rejects_small_genus() {
        assert!(RhInstance::new(2, 0, p(3)).is_err());
    }

    #[test]
    fn agrees_with_naive_double_loop() {
        for n in [3, 5, 7, 11, 13] {
            let q = p(n);
            for g in 3..=40u32 {
                let mut naive = Vec::new();
                for h in 1..=g as i64 {
                    for t in 0..=g as i64 {
                        if g as i64 - 2 == n * (h - 2) + t * (n - 1) {
                            naive.push((h as u32, t as u32));
                        }
                    }
                }
                let sols = solve(g, q);
                assert_eq!(pairs(&sols), naive, "g={g} p={n}");
                for s in &sols {
                    assert_eq!(raw_kernel_genus(s.h, s.t, q), g as i64);
                }
            }
        }
    }

    #[test]
    fn torsion_is_monotone_in_k() {
        for n in [3, 5, 7, 11, 13] {
            for g in 3..=40 {
                let mut seen_false = false;
                for k in 1..=g + 2 {
                    let has = has_p_torsion(&RhInstance::new(g, k, p(n)).unwrap()).has_torsion;
                    assert!(!(seen_false && has), "g={g} k={k} p={n}");
                    seen_false |= !has;
                }
            }
        }
    }
}
