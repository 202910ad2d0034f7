//! Rational functions in z in canonical form.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{poly_divrem, poly_gcd, split_valuation, Laurent, Var};
use crate::rational::Rat;

/// `num/den`, coprime, `den` with valuation 0 and leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Laurent,
    den: Laurent,
}

impl RatFunc {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    /// Sum of unreduced fractions; numerators sharing a denominator are added
    /// before any gcd work.
    pub(crate) fn sum_raw(parts: impl IntoIterator<Item = (Laurent, Laurent)>) -> Self {
        let mut groups: Vec<(Laurent, Laurent)> = Vec::new();
        let mut index: HashMap<Laurent, usize> = HashMap::new();
        for (n, d) in parts {
            match index.get(&d) {
                Some(&i) => groups[i].0 = &groups[i].0 + &n,
                None => {
                    index.insert(d.clone(), groups.len());
                    groups.push((n, d));
                }
            }
        }
        groups
            .into_iter()
            .filter(|(n, _)| !n.is_zero())
            .fold(Self::zero(), |acc, (n, d)| &acc + &Self::canonical(n, d))
    }

    fn canonical(num: Laurent, den: Laurent) -> Self {
        assert_eq!(num.var(), Var::Z);
        assert_eq!(den.var(), Var::Z);
        if num.is_zero() {
            return Self::zero();
        }
        let (vn, n) = split_valuation(&num);
        let (vd, d) = split_valuation(&den);
        let (n, d) = if d.degree() == 0 {
            (n, d)
        } else {
            let g = poly_gcd(&n, &d);
            if g.degree() == 0 {
                (n, d)
            } else {
                (poly_divrem(&n, &g).0, poly_divrem(&d, &g).0)
            }
        };
        let lc = d.lead().recip();
        RatFunc { num: n.scale(&lc).shift_exp(vn - vd), den: d.scale(&lc) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Laurent::zero(Var::Z), den: Laurent::one(Var::Z) }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc { num: Laurent::constant(Var::Z, c), den: Laurent::one(Var::Z) }
    }

    pub fn poly(p: Laurent) -> Self {
        RatFunc { num: p, den: Laurent::one(Var::Z) }
    }

    /// a / b for Laurent polynomials.
    pub fn quot(a: &Laurent, b: &Laurent) -> Self {
        Self::new(a.clone(), b.clone()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Laurent::one(Var::Z)
    }

    pub fn as_laurent(&self) -> Option<Laurent> {
        if self.den.is_constant() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// c(z) ↦ c(1/z)
    pub fn reflect(&self) -> Self {
        Self::canonical(self.num.reflect(), self.den.reflect())
    }

    /// θ c = z c'(z)
    pub fn theta(&self) -> Self {
        if self.den.is_constant() {
            return RatFunc { num: self.num.theta(), den: self.den.clone() };
        }
        let n = &(&self.num.theta() * &self.den) - &(&self.num * &self.den.theta());
        Self::canonical(n, &self.den * &self.den)
    }

    /// Value at z = ∞ (equivalently at 1/z = 0).
    pub fn limit_at_infinity(&self) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let dn = self.num.degree();
        let dd = self.den.degree();
        match dn.cmp(&dd) {
            std::cmp::Ordering::Greater => Err(Error::PoleAtInfinity),
            std::cmp::Ordering::Less => Ok(Rat::zero()),
            std::cmp::Ordering::Equal => Ok(self.num.lead() / self.den.lead()),
        }
    }

    /// Taylor coefficients in u = 1/z up to u^order.
    pub fn series_at_infinity(&self, order: usize) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); order + 1];
        if self.is_zero() {
            return Ok(out);
        }
        let (vn, n) = split_valuation(&self.num.reflect());
        let (vd, d) = split_valuation(&self.den.reflect());
        let shift = vn - vd;
        if shift < 0 {
            return Err(Error::PoleAtInfinity);
        }
        let d0 = d.coeff(0);
        // q = n / d as power series
        let mut q: Vec<Rat> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = n.coeff(m as i64);
            for (j, qj) in q.iter().enumerate() {
                acc -= qj * d.coeff((m - j) as i64);
            }
            q.push(acc / &d0);
        }
        for (m, c) in q.into_iter().enumerate() {
            let idx = m as i64 + shift;
            if idx as usize <= order {
                out[idx as usize] = c;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Domain("pole".into()));
        }
        Ok(self.num.eval(t) / d)
    }
}

impl From<Laurent> for RatFunc {
    fn from(p: Laurent) -> Self {
        RatFunc::poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::canonical(&self.num + &o.num, self.den.clone());
        }
        RatFunc::canonical(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc { num: &self.num * &o.num, den: self.den.clone() };
        }
        RatFunc::canonical(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.recip().expect("division by zero rational function")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
