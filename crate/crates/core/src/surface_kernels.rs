//! Surface-kernel epimorphisms `θ: Γ → Z/p` for the NEC signature
//! `(h; -; [(p)^t])`, stored as the images of the canonical generators.
//!
//! Γ has generators `d_1..d_h` (glide reflections) and `x_1..x_t` (elliptic),
//! with relations `x_i^p = 1` and `x_1 ⋯ x_t · d_1² ⋯ d_h² = 1`. Because Z/p
//! is abelian, θ is determined by the image vector and any automorphism of Γ
//! acts on θ through its abelianization. The moves below are those
//! abelianized actions; conjugating factors drop out.
//!
//! Generator indices in this module are 1-based, matching `x_1..x_t` and
//! `d_1..d_h`. The first `k` elliptic slots are marked.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{Fp, Prime};

/// Default cap on the number of states an orbit search may visit.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceKernel {
    p: Prime,
    k: usize,
    x_img: Vec<Fp>,
    d_img: Vec<Fp>,
}

/// Why an image vector fails to define a surface kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `θ(x_slot) = 0`, so the elliptic generator would not have order p.
    ZeroEllipticImage { slot: usize },
    /// `Σ θ(x_i) + 2 Σ θ(d_j)` is this nonzero residue.
    Relation { residue: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroEllipticImage { slot } => write!(f, "zero elliptic image at x_{slot}"),
            Violation::Relation { residue } => {
                write!(f, "long relation evaluates to {residue}, not 0")
            }
        }
    }
}

impl SurfaceKernel {
    /// Builds an image vector after structural checks only (`h, t >= 1`,
    /// `k <= t`, shared modulus). Use [`SurfaceKernel::validate`] or
    /// [`SurfaceKernel::new`] to check the kernel conditions.
    pub fn from_parts(p: Prime, k: usize, x_img: Vec<Fp>, d_img: Vec<Fp>) -> Result<Self> {
        if x_img.is_empty() {
            return Err(Error::ShapeMismatch("need at least one elliptic generator".into()));
        }
        if d_img.is_empty() {
            return Err(Error::ShapeMismatch("need at least one glide generator".into()));
        }
        if k > x_img.len() {
            return Err(Error::ShapeMismatch(format!(
                "{k} marked slots but only {} elliptic generators",
                x_img.len()
            )));
        }
        if let Some(bad) = x_img.iter().chain(&d_img).find(|v| v.modulus() != p) {
            return Err(Error::ModulusMismatch(p.get(), bad.modulus().get()));
        }
        Ok(SurfaceKernel { p, k, x_img, d_img })
    }

    /// Builds and validates a kernel from integer images.
    pub fn new(p: Prime, k: usize, x: &[i64], d: &[i64]) -> Result<Self> {
        let sk = Self::from_parts(
            p,
            k,
            x.iter().map(|&v| p.elem(v)).collect(),
            d.iter().map(|&v| p.elem(v)).collect(),
        )?;
        sk.validate()?;
        Ok(sk)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Number of glide generators.
    pub fn h(&self) -> usize {
        self.d_img.len()
    }

    /// Number of elliptic generators.
    pub fn t(&self) -> usize {
        self.x_img.len()
    }

    /// Number of marked elliptic generators.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x_img(&self) -> &[Fp] {
        &self.x_img
    }

    pub fn d_img(&self) -> &[Fp] {
        &self.d_img
    }

    pub fn x_values(&self) -> Vec<u32> {
        self.x_img.iter().map(|v| v.value()).collect()
    }

    pub fn d_values(&self) -> Vec<u32> {
        self.d_img.iter().map(|v| v.value()).collect()
    }

    /// Image of the long relator `x_1 ⋯ x_t · d_1² ⋯ d_h²`.
    pub fn relator_image(&self) -> Fp {
        let xs: Fp = self.x_img.iter().copied().sum();
        let ds: Fp = self.d_img.iter().copied().sum();
        xs + ds + ds
    }

    /// Checks that every elliptic image is nonzero and the long relation
    /// holds. Surjectivity then follows since p is prime.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if let Some(i) = self.x_img.iter().position(|v| v.is_zero()) {
            return Err(Violation::ZeroEllipticImage { slot: i + 1 });
        }
        let r = self.relator_image();
        if !r.is_zero() {
            return Err(Violation::Relation { residue: r.value() });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Applies the induced action of `m`. Indices are checked against
    /// `(t, h, k)`.
    pub fn apply_move(&self, m: KernelMove) -> Result<SurfaceKernel> {
        m.check(self)?;
        let mut out = self.clone();
        let (t, x, d) = (self.t(), &mut out.x_img, &mut out.d_img);
        match m {
            KernelMove::Gamma => {
                let old = x[t - 1];
                x[t - 1] = -old;
                d[0] = old + d[0];
            }
            KernelMove::Rho(i) => x.swap(i - 1, i),
            KernelMove::Alpha(j) => d.swap(j - 1, j),
            KernelMove::Phi(i) => {
                let old = x[i - 1];
                x[i - 1] = -old;
                d[0] = old + d[0];
            }
            KernelMove::Psi(a) => {
                for v in x.iter_mut().chain(d.iter_mut()) {
                    *v = a * *v;
                }
            }
        }
        Ok(out)
    }

    /// Every valid move for this shape: `Gamma`, each `Rho(i)` on unmarked
    /// neighbours, each `Alpha(j)`, each `Phi(i)` and `Psi(a)` for every unit.
    pub fn moves(&self) -> Vec<KernelMove> {
        let (t, h, k) = (self.t(), self.h(), self.k);
        let mut moves = vec![KernelMove::Gamma];
        moves.extend((k + 1..t).map(KernelMove::Rho));
        moves.extend((1..h).map(KernelMove::Alpha));
        moves.extend((1..=t).map(KernelMove::Phi));
        moves.extend(self.p.units().skip(1).map(KernelMove::Psi));
        moves
    }

    /// The equivalent kernel with `d_j = 0` for `j >= 2` and
    /// `d_1 = -(Σ x_i) / 2`; elliptic images are unchanged.
    pub fn normal_form(&self) -> SurfaceKernel {
        let mut out = self.clone();
        let xs: Fp = self.x_img.iter().copied().sum();
        for v in out.d_img.iter_mut() {
            *v = self.p.zero();
        }
        out.d_img[0] = (-xs).halve();
        out
    }

    /// Breadth-first closure of `{self}` under [`SurfaceKernel::moves`].
    pub fn orbit(&self, budget: usize) -> Result<BTreeSet<SurfaceKernel>> {
        let moves = self.moves();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(cur) = queue.pop_front() {
            for &m in &moves {
                let next = cur.apply_move(m)?;
                if !seen.contains(&next) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }
}

impl fmt::Display for SurfaceKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Fp]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "x=({}) d=({})", join(&self.x_img), join(&self.d_img))
    }
}

/// Serialized form: `{"p": 5, "k": 1, "x": [1, 1], "d": [4]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRecord {
    pub p: u32,
    pub k: usize,
    pub x: Vec<u32>,
    pub d: Vec<u32>,
}

impl From<&SurfaceKernel> for KernelRecord {
    fn from(sk: &SurfaceKernel) -> Self {
        KernelRecord {
            p: sk.p.get(),
            k: sk.k,
            x: sk.x_values(),
            d: sk.d_values(),
        }
    }
}

impl TryFrom<KernelRecord> for SurfaceKernel {
    type Error = Error;

    fn try_from(r: KernelRecord) -> Result<Self> {
        let p = Prime::new(r.p as i64)?;
        let x: Vec<i64> = r.x.iter().map(|&v| v as i64).collect();
        let d: Vec<i64> = r.d.iter().map(|&v| v as i64).collect();
        SurfaceKernel::new(p, r.k, &x, &d)
    }
}

/// Automorphisms of Γ (and of Z/p) as they act on image vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelMove {
    /// `d_1 ↦ x_t d_1`, `x_t ↦` a conjugate of `x_t^{-1}`.
    Gamma,
    /// Swaps `x_i` and `x_{i+1}` up to conjugation. Both slots must be unmarked.
    Rho(usize),
    /// Swaps `d_j` and `d_{j+1}` up to conjugation.
    Alpha(usize),
    /// Sends `x_i` to a conjugate of its inverse and `d_1 ↦ x_i d_1`.
    Phi(usize),
    /// Post-composition with multiplication by a unit of Z/p.
    Psi(Fp),
}

impl KernelMove {
    fn check(self, sk: &SurfaceKernel) -> Result<()> {
        let (t, h, k) = (sk.t(), sk.h(), sk.k());
        let bad = |reason: String| Err(Error::InvalidMove { mv: self, reason });
        match self {
            KernelMove::Gamma => Ok(()),
            KernelMove::Rho(i) if i < k + 1 || i + 1 > t => bad(format!(
                "rho needs {} <= i <= {} (k = {k}, t = {t})",
                k + 1,
                t.saturating_sub(1)
            )),
            KernelMove::Alpha(j) if j < 1 || j + 1 > h => {
                bad(format!("alpha needs 1 <= j <= {} (h = {h})", h.saturating_sub(1)))
            }
            KernelMove::Phi(i) if i < 1 || i > t => bad(format!("phi needs 1 <= i <= {t}")),
            KernelMove::Psi(a) if a.modulus() != sk.p() => Err(Error::ModulusMismatch(sk.p().get(), a.modulus().get())),
            KernelMove::Psi(a) if a.is_zero() => bad("psi needs a unit scalar".into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for KernelMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelMove::Gamma => write!(f, "gamma"),
            KernelMove::Rho(i) => write!(f, "rho_{i}"),
            KernelMove::Alpha(j) => write!(f, "alpha_{j}"),
            KernelMove::Phi(i) => write!(f, "phi_{i}"),
            KernelMove::Psi(a) => write!(f, "psi({a})"),
        }
    }
}

/// Number of surface kernels for `(p, h, t)`: `(p-1)^t · p^(h-1)`.
pub fn valid_kernel_count(p: Prime, h: usize, t: usize) -> Option<u64> {
    let p = p.get() as u64;
    (p - 1)
        .checked_pow(t as u32)?
        .checked_mul(p.checked_pow(h.checked_sub(1)? as u32)?)
}

/// Iterates every surface kernel for `(p, h, t, k)` exactly once, in
/// lexicographic order of `(x_1..x_t, d_2..d_h)`; `d_1` is forced by the
/// long relation.
pub fn enumerate_valid(p: Prime, h: usize, t: usize, k: usize, budget: usize) -> Result<ValidKernels> {
    if h == 0 || t == 0 || k > t {
        return Err(Error::ShapeMismatch(format!(
            "need h, t >= 1 and k <= t, got h={h} t={t} k={k}"
        )));
    }
    match valid_kernel_count(p, h, t) {
        Some(n) if n <= budget as u64 => {}
        _ => return Err(Error::BudgetExceeded { budget }),
    }
    Ok(ValidKernels {
        p,
        k,
        x: vec![1; t],
        d_tail: vec![0; h - 1],
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct ValidKernels {
    p: Prime,
    k: usize,
    x: Vec<u32>,
    d_tail: Vec<u32>,
    done: bool,
}

impl ValidKernels {
    fn advance(&mut self) {
        let p = self.p.get();
        for v in self.d_tail.iter_mut().rev() {
            *v += 1;
            if *v < p {
                return;
            }
            *v = 0;
        }
        for v in self.x.iter_mut().rev() {
            *v += 1;
            if *v < p {
                return;
            }
            *v = 1;
        }
        self.done = true;
    }
}

impl Iterator for ValidKernels {
    type Item = SurfaceKernel;

    fn next(&mut self) -> Option<SurfaceKernel> {
        if self.done {
            return None;
        }
        let p = self.p;
        let x_img: Vec<Fp> = self.x.iter().map(|&v| p.elem(v as i64)).collect();
        let tail: Vec<Fp> = self.d_tail.iter().map(|&v| p.elem(v as i64)).collect();
        let xs: Fp = x_img.iter().copied().sum();
        let ds = tail.iter().fold(p.zero(), |acc, &v| acc + v);
        let d1 = (-(xs + ds + ds)).halve();
        let mut d_img = Vec::with_capacity(tail.len() + 1);
        d_img.push(d1);
        d_img.extend(tail);
        self.advance();
        Some(SurfaceKernel {
            p,
            k: self.k,
            x_img,
            d_img,
        })
    }
}

/// Partitions all surface kernels for `(p, h, t, k)` into move-orbits.
/// Orbits come out in order of their least element, each sorted.
pub fn orbit_partition(p: Prime, h: usize, t: usize, k: usize, budget: usize) -> Result<Vec<Vec<SurfaceKernel>>> {
    let mut assigned = BTreeSet::new();
    let mut orbits = Vec::new();
    for sk in enumerate_valid(p, h, t, k, budget)? {
        if assigned.contains(&sk) {
            continue;
        }
        let orbit = sk.orbit(budget)?;
        assigned.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn sk(n: i64, k: usize, x: &[i64], d: &[i64]) -> SurfaceKernel {
        SurfaceKernel::new(p(n), k, x, d).unwrap()
    }

    fn raw(n: i64, k: usize, x: &[i64], d: &[i64]) -> SurfaceKernel {
        let q = p(n);
        SurfaceKernel::from_parts(
            q,
            k,
            x.iter().map(|&v| q.elem(v)).collect(),
            d.iter().map(|&v| q.elem(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(raw(5, 1, &[1, 1], &[4]).validate(), Ok(()));
        assert_eq!(
            raw(5, 1, &[1, 0], &[2]).validate(),
            Err(Violation::ZeroEllipticImage { slot: 2 })
        );
        assert_eq!(
            raw(5, 1, &[1, 1], &[1]).validate(),
            Err(Violation::Relation { residue: 4 })
        );
    }

    #[test]
    fn structural_errors() {
        let q = p(5);
        assert!(SurfaceKernel::from_parts(q, 0, vec![], vec![q.one()]).is_err());
        assert!(SurfaceKernel::from_parts(q, 0, vec![q.one()], vec![]).is_err());
        assert!(SurfaceKernel::from_parts(q, 2, vec![q.one()], vec![q.one()]).is_err());
        assert!(SurfaceKernel::from_parts(q, 0, vec![p(7).one()], vec![q.one()]).is_err());
        assert!(matches!(
            SurfaceKernel::new(q, 0, &[1, 1], &[1]),
            Err(Error::Violation(Violation::Relation { .. }))
        ));
    }

    #[test]
    fn apply_move_examples() {
        let base = sk(5, 0, &[1, 2], &[1]);
        assert_eq!(base.apply_move(KernelMove::Phi(1)).unwrap(), sk(5, 0, &[4, 2], &[2]));
        assert_eq!(base.apply_move(KernelMove::Psi(p(5).one())).unwrap(), base);
        assert_eq!(base.apply_move(KernelMove::Rho(1)).unwrap(), sk(5, 0, &[2, 1], &[1]));
    }

    #[test]
    fn invalid_moves_are_rejected() {
        let marked = sk(5, 1, &[1, 2], &[1]);
        assert!(matches!(
            marked.apply_move(KernelMove::Rho(1)),
            Err(Error::InvalidMove { .. })
        ));
        assert!(marked.apply_move(KernelMove::Rho(2)).is_err());
        assert!(marked.apply_move(KernelMove::Alpha(1)).is_err());
        assert!(marked.apply_move(KernelMove::Phi(0)).is_err());
        assert!(marked.apply_move(KernelMove::Phi(3)).is_err());
        assert!(marked.apply_move(KernelMove::Psi(p(5).zero())).is_err());
        assert!(marked.apply_move(KernelMove::Psi(p(7).one())).is_err());
        // Phi may touch a marked slot.
        assert!(marked.apply_move(KernelMove::Phi(1)).is_ok());
    }

    #[test]
    fn normal_form_examples() {
        let a = sk(5, 1, &[1, 1], &[4]);
        assert_eq!(a.normal_form(), a);
        // 1 + 1 + 2(3 + 3) = 14 is not 0 mod 5, so pick a valid h = 2 input:
        // 1 + 1 + 2(1 + 3) = 10.
        let b = sk(5, 1, &[1, 1], &[1, 3]);
        assert_eq!(b.normal_form(), sk(5, 1, &[1, 1], &[4, 0]));
        let c = sk(7, 0, &[2, 5], &[0, 0, 0]);
        assert_eq!(c.normal_form(), c);
    }

    #[test]
    fn orbit_examples() {
        let seed = sk(3, 1, &[1, 1], &[2]);
        let orbit = seed.orbit(DEFAULT_BUDGET).unwrap();
        assert!(orbit.contains(&seed));
        assert!(orbit.contains(&sk(3, 1, &[2, 2], &[1])));

        let a = sk(5, 1, &[1, 1], &[4]).orbit(DEFAULT_BUDGET).unwrap();
        let b = sk(5, 1, &[1, 2], &[1]).orbit(DEFAULT_BUDGET).unwrap();
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn orbit_budget() {
        let seed = sk(7, 0, &[1, 1, 1], &[2, 0]);
        assert_eq!(seed.orbit(3), Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn enumeration_counts() {
        let count = |n, h, t| enumerate_valid(p(n), h, t, 0, DEFAULT_BUDGET).unwrap().count();
        assert_eq!(count(3, 1, 1), 2);
        assert_eq!(count(3, 2, 2), 12);
        assert_eq!(count(5, 1, 2), 16);
        assert!(matches!(
            enumerate_valid(p(13), 3, 5, 0, 1000),
            Err(Error::BudgetExceeded { budget: 1000 })
        ));
    }

    #[test]
    fn enumeration_is_exact_against_brute_force() {
        // Every raw vector with nonzero x-images, filtered by the relation.
        for n in [3i64, 5] {
            for h in 1..=2usize {
                for t in 1..=2usize {
                    let q = p(n);
                    let mut brute = BTreeSet::new();
                    let total = (n as usize).pow((h + t) as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut digits = Vec::new();
                        for _ in 0..h + t {
                            digits.push((c % n as usize) as i64);
                            c /= n as usize;
                        }
                        let cand = raw(n, 0, &digits[..t], &digits[t..]);
                        if cand.is_valid() {
                            brute.insert(cand);
                        }
                    }
                    let listed: Vec<_> = enumerate_valid(q, h, t, 0, DEFAULT_BUDGET).unwrap().collect();
                    let as_set: BTreeSet<_> = listed.iter().cloned().collect();
                    assert_eq!(as_set.len(), listed.len());
                    assert_eq!(as_set, brute);
                    assert_eq!(listed.len() as u64, valid_kernel_count(q, h, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn move_soundness_and_involutions_exhaustive() {
        for n in [3, 5, 7] {
            for h in 1..=2 {
                for t in 1..=3 {
                    for k in 0..=t {
                        for sk in enumerate_valid(p(n), h, t, k, DEFAULT_BUDGET).unwrap() {
                            for m in sk.moves() {
                                let out = sk.apply_move(m).unwrap();
                                assert!(out.is_valid(), "{m} on {sk}");
                                match m {
                                    KernelMove::Phi(_) | KernelMove::Rho(_) | KernelMove::Alpha(_) => {
                                        assert_eq!(out.apply_move(m).unwrap(), sk);
                                    }
                                    KernelMove::Psi(a) => {
                                        let back = KernelMove::Psi(a.inv().unwrap());
                                        assert_eq!(out.apply_move(back).unwrap(), sk);
                                    }
                                    KernelMove::Gamma => {
                                        assert_eq!(out, sk.apply_move(KernelMove::Phi(t)).unwrap());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_in_orbit() {
        for n in [3, 5] {
            for h in 1..=3 {
                for t in 1..=2 {
                    for k in 0..=t {
                        for sk in enumerate_valid(p(n), h, t, k, DEFAULT_BUDGET).unwrap() {
                            let nf = sk.normal_form();
                            assert!(nf.is_valid());
                            assert_eq!(nf.normal_form(), nf);
                            assert_eq!(nf.x_img(), sk.x_img());
                            assert!(sk.orbit(DEFAULT_BUDGET).unwrap().contains(&nf), "{sk}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_covers_everything_once() {
        let q = p(5);
        let orbits = orbit_partition(q, 2, 2, 1, DEFAULT_BUDGET).unwrap();
        let total: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(total as u64, valid_kernel_count(q, 2, 2).unwrap());
        let union: BTreeSet<_> = orbits.iter().flatten().cloned().collect();
        assert_eq!(union.len(), total);
    }

    #[test]
    fn record_round_trip() {
        let a = sk(7, 2, &[1, 3, 5], &[2, 4]);
        let json = serde_json::to_string(&KernelRecord::from(&a)).unwrap();
        assert_eq!(json, r#"{"p":7,"k":2,"x":[1,3,5],"d":[2,4]}"#);
        let back: KernelRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(SurfaceKernel::try_from(back).unwrap(), a);
    }
}
