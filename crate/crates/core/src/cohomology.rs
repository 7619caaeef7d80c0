//! p-primary Farrell cohomology patterns and their assembly over conjugacy
//! classes of order-p subgroups.
//!
//! A [`GradedPPattern`] records, for each residue of the degree modulo a
//! period, the rank `r` of the group `(Z/p)^r` in that degree. The
//! group-cohomology inputs (the dihedral and `Z/p × Z/2` patterns) are fixed
//! data; this module only combines them.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liftability::{image_of_i, SlideMap};
use crate::modular::Prime;
use crate::riemann_hurwitz::{has_p_torsion, RhInstance, RhSolution};
use crate::tuple_classes::count_classes;

/// p-period of `N_p^k` for `k = 1, 2`. Taken as an external input, not
/// derived here.
pub const NPK_P_PERIOD: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPPattern {
    pub p: u32,
    pub period: u32,
    /// `ranks[r]` is the rank in degrees `i ≡ r (mod period)`.
    pub ranks: Vec<u32>,
}

impl GradedPPattern {
    pub fn new(p: Prime, period: u32, ranks: Vec<u32>) -> Result<Self> {
        if period == 0 || ranks.len() != period as usize {
            return Err(Error::InvalidParameter(format!(
                "need one rank per residue mod {period}, got {}",
                ranks.len()
            )));
        }
        Ok(GradedPPattern {
            p: p.get(),
            period,
            ranks,
        })
    }

    pub fn zero(p: Prime) -> Self {
        GradedPPattern {
            p: p.get(),
            period: 1,
            ranks: vec![0],
        }
    }

    /// Rank of the p-primary part in degree `i`; negative degrees included.
    pub fn rank_at(&self, degree: i64) -> u32 {
        self.ranks[degree.rem_euclid(self.period as i64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// The same pattern written with period `period`, which must be a
    /// multiple of the current one.
    pub fn with_period(&self, period: u32) -> Result<Self> {
        if period == 0 || !period.is_multiple_of(self.period) {
            return Err(Error::InvalidParameter(format!(
                "{period} is not a multiple of {}",
                self.period
            )));
        }
        let ranks = (0..period as i64).map(|i| self.rank_at(i)).collect();
        Ok(GradedPPattern {
            p: self.p,
            period,
            ranks,
        })
    }
}

/// `Ĥ^i(D_2p)_(p)`: `Z/p` for `i ≡ 0 (mod 4)`, zero otherwise.
pub fn dihedral_pattern(p: Prime) -> GradedPPattern {
    GradedPPattern {
        p: p.get(),
        period: 4,
        ranks: vec![1, 0, 0, 0],
    }
}

/// `Ĥ^i(Z/p × Z/2)_(p)`: `Z/p` in even degrees.
pub fn cyclic_times_z2_pattern(p: Prime) -> GradedPPattern {
    GradedPPattern {
        p: p.get(),
        period: 2,
        ranks: vec![1, 0],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizerGroup {
    Dihedral2p,
    CyclicTimesZ2,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerResolution {
    pub group: NormalizerGroup,
    /// The slide maps forming `Im(I)` in `1 → Z/p → N(Z/p) → Im(I) → 1`.
    pub extension_quotient: Vec<SlideMap>,
}

impl NormalizerResolution {
    pub fn pattern(&self, p: Prime) -> Option<GradedPPattern> {
        match self.group {
            NormalizerGroup::Dihedral2p => Some(dihedral_pattern(p)),
            NormalizerGroup::CyclicTimesZ2 => Some(cyclic_times_z2_pattern(p)),
            NormalizerGroup::Unresolved => None,
        }
    }
}

/// Normalizer of an order-p subgroup of `N_p^k`.
///
/// `Im(I)` is recomputed; when it has order 2 the normalizer has order `2p`,
/// leaving `Z/p × Z/2` (p-period 2) or `D_2p` (p-period 4), and the known
/// p-period picks between them. Only `k ∈ {1, 2}` is handled.
pub fn resolve_normalizer(p: Prime, k: u32, known_p_period: u32) -> NormalizerResolution {
    let unresolved = |quotient: &BTreeSet<SlideMap>| NormalizerResolution {
        group: NormalizerGroup::Unresolved,
        extension_quotient: quotient.iter().copied().collect(),
    };
    if !(1..=2).contains(&k) {
        return unresolved(&BTreeSet::new());
    }
    let image = image_of_i(p);
    if image.len() != 2 {
        return unresolved(&image);
    }
    let group = match known_p_period {
        4 => NormalizerGroup::Dihedral2p,
        2 => NormalizerGroup::CyclicTimesZ2,
        _ => NormalizerGroup::Unresolved,
    };
    NormalizerResolution {
        group,
        extension_quotient: image.into_iter().collect(),
    }
}

/// Brown's formula with one normalizer pattern shared by all classes: the
/// product of `class_count` copies.
pub fn brown_assemble(class_count: u64, per_class: &GradedPPattern) -> GradedPPattern {
    if class_count == 0 {
        return GradedPPattern {
            p: per_class.p,
            period: 1,
            ranks: vec![0],
        };
    }
    GradedPPattern {
        p: per_class.p,
        period: per_class.period,
        ranks: per_class.ranks.iter().map(|&r| r * class_count as u32).collect(),
    }
}

/// Brown's formula with one pattern per class; periods are aligned to their
/// least common multiple before ranks are summed.
pub fn brown_assemble_mixed(p: Prime, per_class: &[GradedPPattern]) -> Result<GradedPPattern> {
    if let Some(other) = per_class.iter().find(|pat| pat.p != p.get()) {
        return Err(Error::ModulusMismatch(p.get(), other.p));
    }
    if per_class.is_empty() {
        return Ok(GradedPPattern::zero(p));
    }
    let period = per_class.iter().fold(1u32, |acc, pat| acc.lcm(&pat.period));
    let mut ranks = vec![0u32; period as usize];
    for pat in per_class {
        let aligned = pat.with_period(period)?;
        for (r, a) in ranks.iter_mut().zip(aligned.ranks) {
            *r += a;
        }
    }
    Ok(GradedPPattern {
        p: p.get(),
        period,
        ranks,
    })
}

/// How the pattern for `N_p^k` was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarrellReport {
    pub p: u32,
    pub k: u32,
    pub pattern: GradedPPattern,
    pub witnesses: Vec<RhSolution>,
    pub class_count: u64,
    pub normalizer: NormalizerGroup,
    pub reason: String,
}

/// `Ĥ*(N_p^k)_(p)` through the full pipeline: torsion test, class count of
/// the `(h, t)` witness, normalizer, Brown's formula.
pub fn farrell_npk_report(p: Prime, k: u32) -> Result<FarrellReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("need k >= 1 marked points".into()));
    }
    let torsion = has_p_torsion(&RhInstance::new(p.get(), k, p)?);
    if !torsion.has_torsion {
        return Ok(FarrellReport {
            p: p.get(),
            k,
            pattern: GradedPPattern::zero(p),
            witnesses: Vec::new(),
            class_count: 0,
            normalizer: NormalizerGroup::Unresolved,
            reason: format!("no p-torsion: no solution with t >= {k}"),
        });
    }
    let resolution = resolve_normalizer(p, k, NPK_P_PERIOD);
    let Some(per_class) = resolution.pattern(p) else {
        return Err(Error::InvalidParameter(format!(
            "normalizer unresolved for p={p}, k={k}"
        )));
    };
    let mut class_count = 0;
    for w in &torsion.witnesses {
        class_count += count_classes(p, w.t as usize, k as usize)?;
    }
    Ok(FarrellReport {
        p: p.get(),
        k,
        pattern: brown_assemble(class_count, &per_class),
        witnesses: torsion.witnesses,
        class_count,
        normalizer: resolution.group,
        reason: format!("{class_count} conjugacy classes, each with normalizer D_2p"),
    })
}

pub fn farrell_npk(p: Prime, k: u32) -> Result<GradedPPattern> {
    Ok(farrell_npk_report(p, k)?.pattern)
}

/// `vcd(N_p^k) = 2p - 4 + k`.
pub fn vcd_npk(p: Prime, k: u32) -> u32 {
    2 * p.get() - 4 + k
}

/// Rank of `H^i(N_p^k; Z)_(p)`, available only for `i >= vcd` where it
/// agrees with Farrell cohomology.
pub fn ordinary_rank(p: Prime, k: u32, i: u32) -> Result<Option<u32>> {
    if i < vcd_npk(p, k) {
        return Ok(None);
    }
    Ok(Some(farrell_npk(p, k)?.rank_at(i as i64)))
}
