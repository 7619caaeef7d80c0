//! Which punctured slides of the twice-marked projective plane lift through
//! the order-p branched covering `N_p → RP²`.
//!
//! `π_1(N_1^2) = ⟨x_1, x_2, d | x_1·x_2·d² = 1⟩` and the covering is given by
//! a monodromy `θ: π_1 → Z/p`. A mapping class `y` lifts iff
//! `y_*(ker θ) = ker θ`, which for a surjection onto Z/p means
//! `θ ∘ y_* = λ·θ` for some unit `λ`.
//!
//! Two routes are provided: [`induced`] applies the abelianized slide action
//! directly, while [`Word`] substitutes the free-group images of the
//! generators and evaluates θ afterwards.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{Fp, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonodromyAssignment {
    pub x1: Fp,
    pub x2: Fp,
    pub d: Fp,
}

impl MonodromyAssignment {
    pub fn new(p: Prime, x1: i64, x2: i64, d: i64) -> Result<Self> {
        let theta = MonodromyAssignment {
            x1: p.elem(x1),
            x2: p.elem(x2),
            d: p.elem(d),
        };
        theta.check()?;
        Ok(theta)
    }

    /// The assignment with the given loop images; `d` is forced by
    /// `x_1 + x_2 + 2d = 0`.
    pub fn from_loops(p: Prime, x1: i64, x2: i64) -> Result<Self> {
        let (x1, x2) = (p.elem(x1), p.elem(x2));
        let theta = MonodromyAssignment {
            x1,
            x2,
            d: (-(x1 + x2)).halve(),
        };
        theta.check()?;
        Ok(theta)
    }

    fn check(&self) -> Result<()> {
        let p = self.x1.modulus();
        if self.x2.modulus() != p || self.d.modulus() != p {
            return Err(Error::ModulusMismatch(
                p.get(),
                self.x2.modulus().get().max(self.d.modulus().get()),
            ));
        }
        if self.x1.is_zero() || self.x2.is_zero() {
            return Err(Error::InvalidParameter(
                "loops around branch points must have nonzero monodromy".into(),
            ));
        }
        if !(self.x1 + self.x2 + self.d + self.d).is_zero() {
            return Err(Error::InvalidParameter("monodromy violates x1*x2*d^2 = 1".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> Prime {
        self.x1.modulus()
    }

    fn scale(&self, a: Fp) -> Self {
        MonodromyAssignment {
            x1: a * self.x1,
            x2: a * self.x2,
            d: a * self.d,
        }
    }

    pub fn image(&self, g: Generator) -> Fp {
        match g {
            Generator::X1 => self.x1,
            Generator::X2 => self.x2,
            Generator::D => self.d,
        }
    }

    pub fn values(&self) -> [u32; 3] {
        [self.x1.value(), self.x2.value(), self.d.value()]
    }
}

impl fmt::Display for MonodromyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x1={}, x2={}, d={})", self.x1, self.x2, self.d)
    }
}

/// Every valid monodromy for `p`: `(p-1)²` assignments.
pub fn all_assignments(p: Prime) -> impl Iterator<Item = MonodromyAssignment> {
    p.units().flat_map(move |x1| {
        p.units().map(move |x2| MonodromyAssignment {
            x1,
            x2,
            d: (-(x1 + x2)).halve(),
        })
    })
}

/// The pure mapping class group of RP² with two marked points,
/// `⟨[v_1]⟩ × ⟨[v_2]⟩ ≅ Z/2 × Z/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SlideMap {
    Identity,
    V1,
    V2,
    V1V2,
}

impl SlideMap {
    pub const ALL: [SlideMap; 4] = [SlideMap::Identity, SlideMap::V1, SlideMap::V2, SlideMap::V1V2];

    fn bits(self) -> (bool, bool) {
        match self {
            SlideMap::Identity => (false, false),
            SlideMap::V1 => (true, false),
            SlideMap::V2 => (false, true),
            SlideMap::V1V2 => (true, true),
        }
    }

    fn from_bits(bits: (bool, bool)) -> Self {
        match bits {
            (false, false) => SlideMap::Identity,
            (true, false) => SlideMap::V1,
            (false, true) => SlideMap::V2,
            (true, true) => SlideMap::V1V2,
        }
    }

    /// Product in `Z/2 × Z/2`.
    pub fn compose(self, other: SlideMap) -> SlideMap {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        SlideMap::from_bits((a ^ c, b ^ d))
    }

    /// Image of a generator under the induced automorphism of `π_1(N_1^2)`.
    /// For `V1V2` this is the `(v_2 ∘ v_1)_*` column; the other order agrees
    /// after abelianization.
    pub fn generator_image(self, g: Generator) -> Word {
        use Generator::{D, X1, X2};
        let w = |s: &[(Generator, i32)]| Word::from_letters(s);
        match (self, g) {
            (SlideMap::Identity, g) => w(&[(g, 1)]),
            (SlideMap::V1, X1) => w(&[(D, 1), (X1, -1), (D, -1)]),
            (SlideMap::V1, X2) => w(&[(D, 1), (X1, 1), (D, -1), (X2, 1), (D, 1), (X1, -1), (D, -1)]),
            (SlideMap::V1, D) => w(&[(D, 1), (X1, 1)]),
            (SlideMap::V2, X1) => w(&[(X2, -1), (X1, 1), (X2, 1)]),
            (SlideMap::V2, X2) => w(&[(D, 1), (X2, -1), (D, -1)]),
            (SlideMap::V2, D) => w(&[(D, 1), (X2, 1)]),
            (SlideMap::V1V2, X1) => w(&[(D, 1), (X1, -1), (D, -1)]),
            (SlideMap::V1V2, X2) => w(&[(D, 1), (X1, 1), (X2, -1), (X1, -1), (D, -1)]),
            (SlideMap::V1V2, D) => w(&[(D, -1)]),
        }
    }
}

impl fmt::Display for SlideMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlideMap::Identity => "id",
            SlideMap::V1 => "v1",
            SlideMap::V2 => "v2",
            SlideMap::V1V2 => "v1*v2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X1,
    X2,
    D,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::X1 => "x1",
            Generator::X2 => "x2",
            Generator::D => "d",
        })
    }
}

/// A freely reduced word in `x1, x2, d`; each letter is a generator with
/// exponent `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(Generator, i32)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Expands `(g, e)` pairs into unit letters and reduces.
    pub fn from_letters(letters: &[(Generator, i32)]) -> Self {
        let mut w = Word::identity();
        for &(g, e) in letters {
            for _ in 0..e.unsigned_abs() {
                w.push((g, e.signum()));
            }
        }
        w
    }

    /// `x1 · x2 · d²`, the defining relator.
    pub fn relator() -> Self {
        Word::from_letters(&[(Generator::X1, 1), (Generator::X2, 1), (Generator::D, 2)])
    }

    fn push(&mut self, letter: (Generator, i32)) {
        match self.0.last() {
            Some(&(g, e)) if g == letter.0 && e == -letter.1 => {
                self.0.pop();
            }
            _ => self.0.push(letter),
        }
    }

    pub fn letters(&self) -> &[(Generator, i32)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Applies the automorphism induced by `m`, letter by letter.
    pub fn apply_slide(&self, m: SlideMap) -> Word {
        self.0.iter().fold(Word::identity(), |acc, &(g, e)| {
            let img = m.generator_image(g);
            acc.concat(&if e > 0 { img } else { img.inverse() })
        })
    }

    /// Strips inverse pairs from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.0.clone();
        while v.len() >= 2 {
            let (a, b) = (v[0], v[v.len() - 1]);
            if a.0 == b.0 && a.1 == -b.1 {
                v.pop();
                v.remove(0);
            } else {
                break;
            }
        }
        Word(v)
    }

    /// Whether `other` is a cyclic rotation of this word.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|s| (0..self.len()).all(|i| self.0[(i + s) % self.len()] == other.0[i]))
    }

    pub fn evaluate(&self, theta: &MonodromyAssignment) -> Fp {
        self.0.iter().fold(theta.p().zero(), |acc, &(g, e)| {
            let v = theta.image(g);
            if e > 0 {
                acc + v
            } else {
                acc - v
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| if *e > 0 { g.to_string() } else { format!("{g}^-1") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// `θ ∘ m_*` on the generators, from the abelianized action:
/// `v1: (-x1, x2, d + x1)`, `v2: (x1, -x2, d + x2)`, `v1v2: (-x1, -x2, -d)`.
pub fn induced(theta: &MonodromyAssignment, m: SlideMap) -> MonodromyAssignment {
    let MonodromyAssignment { x1, x2, d } = *theta;
    match m {
        SlideMap::Identity => *theta,
        SlideMap::V1 => MonodromyAssignment { x1: -x1, x2, d: d + x1 },
        SlideMap::V2 => MonodromyAssignment { x1, x2: -x2, d: d + x2 },
        SlideMap::V1V2 => MonodromyAssignment {
            x1: -x1,
            x2: -x2,
            d: -d,
        },
    }
}

/// `θ ∘ m_*` computed by substituting generator words and evaluating.
pub fn induced_by_words(theta: &MonodromyAssignment, m: SlideMap) -> MonodromyAssignment {
    let ev = |g| m.generator_image(g).evaluate(theta);
    MonodromyAssignment {
        x1: ev(Generator::X1),
        x2: ev(Generator::X2),
        d: ev(Generator::D),
    }
}

/// The unit `λ` with `θ ∘ m_* = λ·θ`, if any. Its existence is equivalent
/// to `m_*` preserving `ker θ`.
pub fn lift_scalar(theta: &MonodromyAssignment, m: SlideMap) -> Option<Fp> {
    let target = induced(theta, m);
    theta.p().units().find(|&a| theta.scale(a) == target)
}

pub fn is_liftable(theta: &MonodromyAssignment, m: SlideMap) -> bool {
    lift_scalar(theta, m).is_some()
}

/// A word `w` with `θ(w) = 0` but `θ(m_*(w)) ≠ 0`, found by scanning
/// `x1^a · x2^b · d^c` over `0 <= a, b, c < p`. Every element of `π_1` has
/// the same θ-images as one of these, so `None` means `m_*` preserves
/// `ker θ`.
pub fn kernel_witness(theta: &MonodromyAssignment, m: SlideMap) -> Option<Word> {
    let n = theta.p().get() as i32;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = Word::from_letters(&[(Generator::X1, a), (Generator::X2, b), (Generator::D, c)]);
                if w.evaluate(theta).is_zero() && !w.apply_slide(m).evaluate(theta).is_zero() {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Slide maps that lift for every valid monodromy, i.e. `Im(I)` inside
/// `Z/2 × Z/2`.
pub fn image_of_i(p: Prime) -> BTreeSet<SlideMap> {
    SlideMap::ALL
        .into_iter()
        .filter(|&m| all_assignments(p).all(|theta| is_liftable(&theta, m)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftabilityReport {
    pub p: u32,
    pub assignments: usize,
    pub liftable: Vec<SlideMap>,
    pub not_liftable: Vec<SlideMap>,
    /// Order of `Im(I)`.
    pub image_order: usize,
}

pub fn liftability_report(p: Prime) -> LiftabilityReport {
    let image = image_of_i(p);
    LiftabilityReport {
        p: p.get(),
        assignments: all_assignments(p).count(),
        liftable: image.iter().copied().collect(),
        not_liftable: SlideMap::ALL.into_iter().filter(|m| !image.contains(m)).collect(),
        image_order: image.len(),
    }
}
