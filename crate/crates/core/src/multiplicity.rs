//! Multiplicities, shifts and labels.

use std::fmt;
use std::ops::Add;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, half, int, parse_rat, serde_rat, to_i64, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multiplicity {
    #[serde(with = "serde_rat")]
    pub k1: Rat,
    #[serde(with = "serde_rat")]
    pub k2: Rat,
}

impl Multiplicity {
    pub fn new(k1: Rat, k2: Rat) -> Self {
        Multiplicity { k1, k2 }
    }

    pub fn ints(k1: i64, k2: i64) -> Self {
        Self::new(int(k1), int(k2))
    }

    /// Parses `"p/q,p/q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected k1,k2 but got {s:?}")))?;
        Ok(Self::new(parse_rat(a)?, parse_rat(b)?))
    }

    pub fn rho(&self) -> Rat {
        (&self.k1 + int(2) * &self.k2) * half()
    }

    pub fn alpha(&self) -> Rat {
        &self.k1 + &self.k2 - half()
    }

    pub fn beta(&self) -> Rat {
        &self.k2 - half()
    }

    /// k + (1, 0)
    pub fn plus(&self) -> Self {
        Self::new(&self.k1 + int(1), self.k2.clone())
    }

    /// k + (−1, 1)
    pub fn minus(&self) -> Self {
        Self::new(&self.k1 - int(1), &self.k2 + int(1))
    }

    pub fn shifted(&self, l: Shift) -> Self {
        Self::new(&self.k1 + int(l.l1), &self.k2 + int(l.l2))
    }

    /// Both entries nonnegative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        [&self.k1, &self.k2].iter().all(|k| k.is_integer() && !k.is_negative())
    }

    /// k1 even integer and k2 integer.
    pub fn in_2z_z(&self) -> bool {
        matches!((to_i64(&self.k1), to_i64(&self.k2)), (Some(a), Some(_)) if a % 2 == 0)
    }

    pub fn as_ints(&self) -> Option<(i64, i64)> {
        Some((to_i64(&self.k1)?, to_i64(&self.k2)?))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.k1), fmt_rat(&self.k2))
    }
}

/// A shift ℓ = (ℓ1, ℓ2) with ℓ1 even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shift {
    pub l1: i64,
    pub l2: i64,
}

/// ℓ = ε1·N1·(2,−1) + ε2·N2·(0,1)
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeCoords {
    pub eps1: i64,
    pub n1: i64,
    pub eps2: i64,
    pub n2: i64,
}

impl Shift {
    pub const ZERO: Shift = Shift { l1: 0, l2: 0 };
    pub const G_PLUS: Shift = Shift { l1: 0, l2: 1 };
    pub const G_MINUS: Shift = Shift { l1: 0, l2: -1 };
    pub const E_PLUS: Shift = Shift { l1: 2, l2: -1 };
    pub const E_MINUS: Shift = Shift { l1: -2, l2: 1 };

    pub fn new(l1: i64, l2: i64) -> Result<Self> {
        if l1 % 2 != 0 {
            return Err(Error::Domain(format!("shift ({l1}, {l2}) needs an even first entry")));
        }
        Ok(Shift { l1, l2 })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected l1,l2 but got {s:?}")))?;
        let p = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}")));
        Self::new(p(a)?, p(b)?)
    }

    /// ρ(ℓ) = ℓ1/2 + ℓ2
    pub fn rho(&self) -> i64 {
        self.l1 / 2 + self.l2
    }

    pub fn cone(&self) -> ConeCoords {
        let a = self.l1 / 2;
        let b = self.rho();
        ConeCoords { eps1: a.signum(), n1: a.abs(), eps2: b.signum(), n2: b.abs() }
    }

    /// ord = |ℓ1/2| + |ℓ1/2 + ℓ2|
    pub fn order(&self) -> usize {
        let c = self.cone();
        (c.n1 + c.n2) as usize
    }

    /// ℓ ∈ Z≥0·{(0,1),(2,−1)}
    pub fn in_positive_cone(&self) -> bool {
        self.l1 >= 0 && self.rho() >= 0
    }
}

impl Add for Shift {
    type Output = Shift;
    fn add(self, o: Shift) -> Shift {
        Shift { l1: self.l1 + o.l1, l2: self.l2 + o.l2 }
    }
}

impl std::ops::Neg for Shift {
    type Output = Shift;
    fn neg(self) -> Shift {
        Shift { l1: -self.l1, l2: -self.l2 }
    }
}

impl std::ops::Mul<Shift> for i64 {
    type Output = Shift;
    fn mul(self, s: Shift) -> Shift {
        Shift { l1: self * s.l1, l2: self * s.l2 }
    }
}

/// λ = nε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub i64);

impl Label {
    /// λ* = |n|
    pub fn star(self) -> i64 {
        self.0.abs()
    }

    /// w^λ is the identity iff n ≥ 0.
    pub fn w_upper_is_id(self) -> bool {
        self.0 >= 0
    }

    /// w_λ is s iff n = 0.
    pub fn w_lower_is_s(self) -> bool {
        self.0 == 0
    }

    /// Whether w^λ·w_{λ*} is the identity; otherwise it is s.
    pub fn w_is_id(self) -> bool {
        self.w_upper_is_id() != self.w_lower_is_s()
    }

    /// λ̃ = n + ρ for n > 0, n − ρ otherwise.
    pub fn tilde(self, k: &Multiplicity) -> Rat {
        if self.0 > 0 {
            int(self.0) + k.rho()
        } else {
            int(self.0) - k.rho()
        }
    }

    /// Position in the flag 1, z, 1/z, z², 1/z², …
    pub fn flag_pos(self) -> usize {
        if self.0 > 0 {
            (2 * self.0 - 1) as usize
        } else {
            (-2 * self.0) as usize
        }
    }

    pub fn from_flag_pos(p: usize) -> Self {
        let p = p as i64;
        if p % 2 == 1 {
            Label((p + 1) / 2)
        } else {
            Label(-p / 2)
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l1, self.l2)
    }
}
