//! Congruence classes of t-tuples over (Z/p)^x with `k` marked slots.
//!
//! Two tuples `β`, `β'` are congruent when `β_i = a·ε_i·β'_{σ(i)}` for a unit
//! `a`, signs `ε_i`, and a permutation `σ` fixing the marked slots `1..=k`.
//! Classes are in bijection with conjugacy classes of order-p subgroups
//! acting with `t` fixed points; [`phi_of`] and [`kernel_from_tuple`] are the
//! two directions of that correspondence on surface kernels.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{Fp, Prime};
use crate::surface_kernels::SurfaceKernel;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TTuple {
    p: Prime,
    k: usize,
    betas: Vec<Fp>,
}

impl TTuple {
    pub fn new(p: Prime, k: usize, betas: &[i64]) -> Result<Self> {
        Self::from_elems(p, k, betas.iter().map(|&b| p.elem(b)).collect())
    }

    pub fn from_elems(p: Prime, k: usize, betas: Vec<Fp>) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::ShapeMismatch("tuple must have t >= 1 entries".into()));
        }
        if k > betas.len() {
            return Err(Error::ShapeMismatch(format!("k = {k} exceeds t = {}", betas.len())));
        }
        if let Some(b) = betas.iter().find(|b| b.modulus() != p) {
            return Err(Error::ModulusMismatch(p.get(), b.modulus().get()));
        }
        if let Some(i) = betas.iter().position(|b| b.is_zero()) {
            return Err(Error::InvalidParameter(format!("entry {} is zero", i + 1)));
        }
        Ok(TTuple { p, k, betas })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.betas.len()
    }

    pub fn betas(&self) -> &[Fp] {
        &self.betas
    }

    pub fn values(&self) -> Vec<u32> {
        self.betas.iter().map(|b| b.value()).collect()
    }

    fn scaled_folded(&self, a: Fp) -> Vec<u32> {
        let mut v: Vec<u32> = self.betas.iter().map(|&b| (a * b).fold_sign()).collect();
        v[self.k..].sort_unstable();
        v
    }

    fn with_values(&self, values: &[u32]) -> TTuple {
        let betas = values.iter().map(|&v| self.p.elem(v as i64)).collect();
        TTuple {
            p: self.p,
            k: self.k,
            betas,
        }
    }
}

impl fmt::Display for TTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &[Fp]| s.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ");
        if self.k == 0 {
            write!(f, "({})", show(&self.betas))
        } else if self.k == self.betas.len() {
            write!(f, "({} |)", show(&self.betas))
        } else {
            write!(f, "({} | {})", show(&self.betas[..self.k]), show(&self.betas[self.k..]))
        }
    }
}

/// Serialized tuple: `{"betas": [1, 2], "marked": 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub betas: Vec<u32>,
    pub marked: usize,
}

impl From<&TTuple> for TupleRecord {
    fn from(tp: &TTuple) -> Self {
        TupleRecord {
            betas: tp.values(),
            marked: tp.k,
        }
    }
}

/// Canonical representative of the congruence class of `tp`.
///
/// Every slot is folded to `min(β, p - β)` and the unmarked slots are sorted.
/// With `k >= 1` the scalar is `±β_1^{-1}`, making the first slot 1. With
/// `k = 0` the lexicographically least result over all unit scalars is taken.
/// In both cases the result is the lexicographic minimum of the class.
pub fn canonical_form(tp: &TTuple) -> TTuple {
    let candidates: Vec<Fp> = if tp.k >= 1 {
        let inv = tp.betas[0].inv().expect("tuple entries are units");
        vec![inv, -inv]
    } else {
        tp.p.units().collect()
    };
    let best = candidates
        .into_iter()
        .map(|a| tp.scaled_folded(a))
        .min()
        .expect("at least one scalar");
    tp.with_values(&best)
}

pub fn are_congruent(a: &TTuple, b: &TTuple) -> Result<bool> {
    if a.p != b.p || a.k != b.k || a.t() != b.t() {
        return Err(Error::ShapeMismatch(format!(
            "cannot compare (p={}, t={}, k={}) with (p={}, t={}, k={})",
            a.p,
            a.t(),
            a.k,
            b.p,
            b.t(),
            b.k
        )));
    }
    Ok(canonical_form(a) == canonical_form(b))
}

/// A congruence class, held by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruenceClass {
    canonical: TTuple,
}

impl CongruenceClass {
    pub fn of(tp: &TTuple) -> Self {
        CongruenceClass {
            canonical: canonical_form(tp),
        }
    }

    pub fn canonical(&self) -> &TTuple {
        &self.canonical
    }
}

/// All classes for `(p, t, k)`, sorted by canonical representative.
///
/// For `k >= 1` only tuples with `β_1 = 1` are scanned, since scaling by
/// `β_1^{-1}` brings every tuple there. For `k = 0` all of `((Z/p)^x)^t` is
/// scanned.
pub fn enumerate_classes(p: Prime, t: usize, k: usize) -> Result<Vec<CongruenceClass>> {
    if t == 0 || k > t {
        return Err(Error::ShapeMismatch(format!("need t >= 1 and k <= t, got t={t} k={k}")));
    }
    let n = p.get();
    let free = if k >= 1 { t - 1 } else { t };
    let mut digits = vec![1u32; free];
    let mut seen = BTreeSet::new();
    loop {
        let mut values = Vec::with_capacity(t);
        if k >= 1 {
            values.push(1);
        }
        values.extend_from_slice(&digits);
        let tp = TTuple::new(p, k, &values.iter().map(|&v| v as i64).collect::<Vec<_>>())?;
        seen.insert(canonical_form(&tp));

        let mut i = free;
        loop {
            if i == 0 {
                return Ok(seen
                    .into_iter()
                    .map(|canonical| CongruenceClass { canonical })
                    .collect());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 1;
        }
    }
}

/// Number of classes. For `k >= 1` this is
/// `((p-1)/2)^(k-1) · C((p-1)/2 + t - k - 1, t - k)`; for `k = 0` it is the
/// length of [`enumerate_classes`].
pub fn count_classes(p: Prime, t: usize, k: usize) -> Result<u64> {
    if t == 0 || k > t {
        return Err(Error::ShapeMismatch(format!("need t >= 1 and k <= t, got t={t} k={k}")));
    }
    if k == 0 {
        return Ok(enumerate_classes(p, t, 0)?.len() as u64);
    }
    let half = p.half_units() as u64;
    Ok(half.pow(k as u32 - 1) * multichoose(half, (t - k) as u64))
}

/// Multisets of size `r` drawn from `n` kinds: `C(n + r - 1, r)`.
pub fn multichoose(n: u64, r: u64) -> u64 {
    if r == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial(n + r - 1, r)
}

/// The t-tuple of elliptic images, carrying the kernel's marking.
pub fn phi_of(sk: &SurfaceKernel) -> TTuple {
    TTuple {
        p: sk.p(),
        k: sk.k(),
        betas: sk.x_img().to_vec(),
    }
}

/// A surface kernel realizing the class of a normalized tuple
/// `(1, β_2, ..., β_t)`.
///
/// With `μ = 1 + Σ_{i>=2} β_i` computed on integer lifts in `1..p`:
/// `x_1 ↦ ±1` (+ when μ is even), `x_i ↦ β_i`, `d_1 ↦ δ/2` where `δ = -μ`
/// for even μ and `-(p-1) - (μ-1)` for odd μ, and `d_j ↦ 0` for `j >= 2`.
pub fn kernel_from_tuple(tp: &TTuple, h: usize) -> Result<SurfaceKernel> {
    if tp.betas[0].value() != 1 {
        return Err(Error::Unnormalized);
    }
    if h == 0 {
        return Err(Error::InvalidParameter("need h >= 1".into()));
    }
    let p = tp.p;
    let pi = p.get() as i64;
    let mu: i64 = 1 + tp.betas[1..].iter().map(|b| b.lift()).sum::<i64>();
    let (x1, delta) = if mu % 2 == 0 {
        (1, -mu)
    } else {
        (-1, -(pi - 1) - (mu - 1))
    };
    let mut x = tp.betas.clone();
    x[0] = p.elem(x1);
    let mut d = vec![p.zero(); h];
    d[0] = p.elem(delta).halve();
    let sk = SurfaceKernel::from_parts(p, tp.k, x, d)?;
    sk.validate()?;
    Ok(sk)
}
