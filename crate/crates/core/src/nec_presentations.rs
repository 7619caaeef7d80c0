//! NEC signatures `(h; ±; [m_1, ..., m_t])`, their exact areas, and the
//! explicit order-p surface kernel on `(h; -; [(p)^t])`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::Prime;
use crate::surface_kernels::SurfaceKernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// Signature of an NEC group without reflections. Only proper periods are
/// modelled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NecSignature {
    pub orbit_genus: u32,
    pub sign: Sign,
    pub periods: Vec<u32>,
}

impl NecSignature {
    pub fn new(orbit_genus: u32, sign: Sign, periods: Vec<u32>) -> Result<Self> {
        if orbit_genus < 1 {
            return Err(Error::InvalidParameter("orbit genus must be at least 1".into()));
        }
        if let Some(m) = periods.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(format!("period {m} is below 2")));
        }
        Ok(NecSignature {
            orbit_genus,
            sign,
            periods,
        })
    }

    /// `(h; -; [(p)^t])`.
    pub fn cyclic(h: u32, p: Prime, t: usize) -> Result<Self> {
        Self::new(h, Sign::Minus, vec![p.get(); t])
    }

    /// `(g; -; [])`, the fundamental group of `N_g`.
    pub fn surface(g: u32) -> Result<Self> {
        Self::new(g, Sign::Minus, Vec::new())
    }

    /// Area divided by 2π, exactly.
    pub fn area_multiple(&self) -> Ratio<i64> {
        area_multiple(self)
    }

    /// Realizable as an NEC group iff the area is positive.
    pub fn is_realizable(&self) -> bool {
        self.area_multiple() > Ratio::from_integer(0)
    }
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let periods: Vec<String> = self.periods.iter().map(u32::to_string).collect();
        write!(f, "({}; {}; [{}])", self.orbit_genus, sign, periods.join(", "))
    }
}

/// `η·g - 2 + Σ (1 - 1/m_i)` with `η = 1` for sign `-` and `2` for `+`.
pub fn area_multiple(sig: &NecSignature) -> Ratio<i64> {
    let eta = match sig.sign {
        Sign::Minus => 1,
        Sign::Plus => 2,
    };
    let base = Ratio::from_integer(eta * sig.orbit_genus as i64 - 2);
    sig.periods
        .iter()
        .fold(base, |acc, &m| acc + Ratio::new(m as i64 - 1, m as i64))
}

/// `Area(sub) = index · Area(super)`.
pub fn check_rh_index(sub: &NecSignature, sup: &NecSignature, index: u32) -> bool {
    area_multiple(sub) == area_multiple(sup) * Ratio::from_integer(index as i64)
}

/// Generator counts of the canonical presentation
/// `⟨d_1..d_h, x_1..x_t | x_i^p = x_1⋯x_t·d_1²⋯d_h² = 1⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPresentation {
    pub num_glide: usize,
    pub num_elliptic: usize,
    pub periods: Vec<u32>,
    /// The first `marked` elliptic generators are marked.
    pub marked: usize,
}

impl CanonicalPresentation {
    pub fn new(sig: &NecSignature, marked: usize) -> Result<Self> {
        if sig.sign != Sign::Minus {
            return Err(Error::InvalidParameter(
                "only non-orientable signatures have glide generators".into(),
            ));
        }
        if marked > sig.periods.len() {
            return Err(Error::InvalidParameter(format!(
                "{marked} marked generators but only {} elliptic",
                sig.periods.len()
            )));
        }
        Ok(CanonicalPresentation {
            num_glide: sig.orbit_genus as usize,
            num_elliptic: sig.periods.len(),
            periods: sig.periods.clone(),
            marked,
        })
    }

    /// The relators as strings, e.g. `x1^5`, `x1*x2*d1^2`.
    pub fn relators(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .periods
            .iter()
            .enumerate()
            .map(|(i, m)| format!("x{}^{m}", i + 1))
            .collect();
        let long: Vec<String> = (1..=self.num_elliptic)
            .map(|i| format!("x{i}"))
            .chain((1..=self.num_glide).map(|j| format!("d{j}^2")))
            .collect();
        out.push(long.join("*"));
        out
    }
}

/// The explicit epimorphism on `(h; -; [(p)^t])`: with `ε = t mod 2`,
/// `x_1 ↦ 1 + ε`, `x_i ↦ 1` for `i >= 2`, `d_1 ↦ (-t - ε)/2`, `d_j ↦ 0`
/// for `j >= 2`.
pub fn standard_kernel(h: u32, t: u32, p: Prime, k: u32) -> Result<SurfaceKernel> {
    if t == 0 {
        return Err(Error::InvalidParameter("construction needs t >= 1".into()));
    }
    if h == 0 {
        return Err(Error::InvalidParameter("construction needs h >= 1".into()));
    }
    if k > t {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds t = {t}")));
    }
    let eps = (t % 2) as i64;
    let first = p.elem(1 + eps);
    if first.is_zero() {
        return Err(Error::InvalidParameter(format!("1 + ε vanishes mod {p}")));
    }
    let mut x = vec![p.one(); t as usize];
    x[0] = first;
    let mut d = vec![p.zero(); h as usize];
    d[0] = p.elem(-(t as i64) - eps).halve();
    let sk = SurfaceKernel::from_parts(p, k as usize, x, d)?;
    sk.validate()?;
    Ok(sk)
}
