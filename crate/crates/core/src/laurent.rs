//! Sparse Laurent polynomials over the rationals, tagged by variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, half, int, serde_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "xi")]
    Xi,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::X => "x",
            Var::Xi => "xi",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    var: Var,
    terms: BTreeMap<i64, Rat>,
}

/// A polynomial in x = (z + 1/z)/2.
pub type PolyX = Laurent;

impl Laurent {
    pub fn zero(var: Var) -> Self {
        Laurent { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rat::one())
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: Var, e: i64, c: Rat) -> Self {
        let mut p = Self::zero(var);
        p.add_term(e, c);
        p
    }

    /// `z^e`
    pub fn z(e: i64) -> Self {
        Self::monomial(Var::Z, e, Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(var: Var, it: I) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_ints(var: Var, it: &[(i64, i64)]) -> Self {
        Self::from_terms(var, it.iter().map(|&(e, c)| (e, int(c))))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest exponent.
    pub fn lead(&self) -> Rat {
        self.terms.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> i64 {
        self.max_exp().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Laurent { var: self.var, terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn shift_exp(&self, m: i64) -> Self {
        Laurent { var: self.var, terms: self.terms.iter().map(|(e, a)| (e + m, a.clone())).collect() }
    }

    /// f(z) ↦ f(1/z)
    pub fn reflect(&self) -> Self {
        Laurent { var: self.var, terms: self.terms.iter().map(|(e, a)| (-e, a.clone())).collect() }
    }

    /// θ = z d/dz
    pub fn theta(&self) -> Self {
        Self::from_terms(self.var, self.terms.iter().map(|(e, a)| (*e, a * int(*e))))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.var, self.terms.iter().map(|(e, a)| (e - 1, a * int(*e))))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut p = Rat::one();
            for _ in 0..e.unsigned_abs() {
                p *= t;
            }
            if *e < 0 {
                p = p.recip();
            }
            s += c * p;
        }
        s
    }

    /// Sum of coefficients, i.e. the value at 1.
    pub fn value_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    /// p(t) ↦ p(t + a) for ordinary polynomials.
    pub fn translate(&self, a: &Rat) -> Self {
        let base = Self::from_terms(self.var, [(1, Rat::one()), (0, a.clone())]);
        self.compose(&base)
    }

    /// p(q) for an ordinary polynomial p; q may be any Laurent polynomial.
    pub fn compose(&self, q: &Laurent) -> Laurent {
        assert!(self.min_exp().unwrap_or(0) >= 0, "compose needs an ordinary polynomial");
        let mut out = Laurent::zero(q.var);
        let deg = self.degree();
        for e in (0..=deg.max(0)).rev() {
            out = &(&out * q) + &Laurent::constant(q.var, self.coeff(e));
        }
        out
    }

    /// Is this invariant under z ↦ 1/z?
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "variable tag mismatch");
    }
}

pub fn laurent_mul(a: &Laurent, b: &Laurent) -> Result<Laurent> {
    if a.var != b.var {
        return Err(Error::VarMismatch(a.var.name().into(), b.var.name().into()));
    }
    Ok(a * b)
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        self.check_var(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self.check_var(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        self.check_var(o);
        let mut out = Laurent::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, o: Laurent) -> Laurent {
                (&self).$m(&o)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, o: &Laurent) -> Laurent {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

/// Polynomial division with remainder for ordinary polynomials (exponents ≥ 0).
pub fn poly_divrem(a: &Laurent, b: &Laurent) -> (Laurent, Laurent) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let var = a.var;
    let db = b.degree();
    let lb = b.lead();
    let mut q = Laurent::zero(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree() >= db {
        let d = r.degree() - db;
        let c = r.lead() / &lb;
        let t = Laurent::monomial(var, d, c);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    (q, r)
}

pub fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = if r.is_zero() { r } else { r.scale(&r.lead().recip()) };
    }
    if a.is_zero() {
        a
    } else {
        a.scale(&a.lead().recip())
    }
}

/// Splits off the lowest power: f = z^v · f̂ with f̂(0) ≠ 0.
pub fn split_valuation(f: &Laurent) -> (i64, Laurent) {
    let v = f.min_exp().unwrap_or(0);
    (v, f.shift_exp(-v))
}

/// Exact quotient in the Laurent ring, or `NonDivisible`.
pub fn exact_divide(num: &Laurent, den: &Laurent) -> Result<Laurent> {
    if den.is_zero() {
        return Err(Error::Domain("division by zero".into()));
    }
    if num.is_zero() {
        return Ok(Laurent::zero(num.var));
    }
    let (vn, a) = split_valuation(num);
    let (vd, b) = split_valuation(den);
    let (q, r) = poly_divrem(&a, &b);
    if !r.is_zero() {
        return Err(Error::NonDivisible);
    }
    Ok(q.shift_exp(vn - vd))
}

/// x = (z + 1/z)/2
pub fn x_in_z() -> Laurent {
    Laurent::from_terms(Var::Z, [(1, half()), (-1, half())])
}

/// Substitutes x = (z + 1/z)/2.
pub fn lift_x(p: &PolyX) -> Laurent {
    assert!(p.var != Var::Z);
    p.clone().with_var(Var::X).compose(&x_in_z())
}

/// Inverse of `lift_x` on symmetric Laurent polynomials.
pub fn to_x(f: &Laurent) -> Result<PolyX> {
    let mut rest = f.clone();
    let mut out = Laurent::zero(Var::X);
    let z_plus = Laurent::from_ints(Var::Z, &[(1, 1), (-1, 1)]);
    while let Some(e) = rest.max_exp() {
        if e < 0 || (e == 0 && rest.min_exp() != Some(0)) {
            return Err(Error::Domain("Laurent polynomial is not symmetric".into()));
        }
        let c = rest.lead();
        // (z + 1/z)^e = (2x)^e
        out.add_term(e, &c * crate::rational::pow2(e));
        rest = &rest - &z_plus.pow(e as u32).scale(&c);
        if e == 0 {
            break;
        }
    }
    if !rest.is_zero() {
        return Err(Error::Domain("Laurent polynomial is not symmetric".into()));
    }
    Ok(out)
}

/// f = f1 + f2·z with f1, f2 symmetric, returned as polynomials in x.
pub fn steinberg_split(f: &Laurent) -> (PolyX, PolyX) {
    assert_eq!(f.var, Var::Z);
    let sf = f.reflect();
    let d = Laurent::from_ints(Var::Z, &[(1, 1), (-1, -1)]);
    let f1 = exact_divide(&(&(&Laurent::z(1) * &sf) - &(&Laurent::z(-1) * f)), &d)
        .expect("antisymmetric numerator is divisible by z - 1/z");
    let f2 = exact_divide(&(f - &sf), &d).expect("antisymmetric numerator is divisible by z - 1/z");
    (
        to_x(&f1).expect("f1 is symmetric"),
        to_x(&f2).expect("f2 is symmetric"),
    )
}

pub fn steinberg_join(f1: &PolyX, f2: &PolyX) -> Laurent {
    &lift_x(f1) + &(&lift_x(f2) * &Laurent::z(1))
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.name();
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match *e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: i64,
    #[serde(with = "serde_rat")]
    coef: Rat,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    var: Var,
    terms: Vec<TermRepr>,
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| TermRepr { exp: *e, coef: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        if r.var != Var::Z && r.terms.iter().any(|t| t.exp < 0) {
            return Err(serde::de::Error::custom("negative exponent in an ordinary polynomial"));
        }
        Ok(Laurent::from_terms(r.var, r.terms.into_iter().map(|t| (t.exp, t.coef))))
    }
}

/// Human-readable coefficient list, used by the CLI.
pub fn describe(p: &Laurent) -> String {
    p.terms().map(|(e, c)| format!("{e}:{}", fmt_rat(c))).collect::<Vec<_>>().join(",")
}

/// Inverse of `describe`: "e:c,e:c,..." with rational c; empty string is 0.
pub fn parse_terms(var: Var, s: &str) -> Result<Laurent> {
    let mut out = Laurent::zero(var);
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (e, c) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected exp:coef, got {item:?}")))?;
        let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
        out.add_term(e, crate::rational::parse_rat(c.trim())?);
    }
    Ok(out)
}

/// Coefficient list c0,c1,... of an ordinary polynomial.
pub fn parse_coeffs(var: Var, s: &str) -> Result<Laurent> {
    let mut out = Laurent::zero(var);
    for (e, c) in s.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        out.add_term(e as i64, crate::rational::parse_rat(c)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn zp(t: &[(i64, i64)]) -> Laurent {
        Laurent::from_ints(Var::Z, t)
    }

    #[test]
    fn difference_of_squares() {
        let a = zp(&[(1, 1), (-1, -1)]);
        let b = zp(&[(1, 1), (-1, 1)]);
        assert_eq!(laurent_mul(&a, &b).unwrap(), zp(&[(2, 1), (-2, -1)]));
        assert!(laurent_mul(&a, &Laurent::one(Var::X)).is_err());
    }

    #[test]
    fn weight_constant_term() {
        let one = Laurent::one(Var::Z);
        let a = &one - &zp(&[(1, 1), (-1, 1)]).scale(&rat(1, 2));
        let b = &one - &zp(&[(2, 1), (-2, 1)]).scale(&rat(1, 2));
        let d = &(&a * &a) * &b;
        assert_eq!(d.constant_term(), rat(5, 4));
        assert_eq!(d.reflect(), d);
    }

    #[test]
    fn divisions() {
        let q = exact_divide(&zp(&[(1, 1), (-1, -1)]), &zp(&[(0, 1), (-1, -1)])).unwrap();
        assert_eq!(q, zp(&[(1, 1), (0, 1)]));
        let q = exact_divide(&zp(&[(2, 1), (-2, -1)]), &zp(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(q, zp(&[(1, 1), (-1, 1)]));
        assert_eq!(exact_divide(&zp(&[(1, 1)]), &zp(&[(1, 1), (-1, -1)])), Err(Error::NonDivisible));
    }

    #[test]
    fn reflection() {
        assert_eq!(zp(&[(1, 1), (0, 2)]).reflect(), zp(&[(-1, 1), (0, 2)]));
        let a = zp(&[(2, 1), (-2, -1)]);
        assert_eq!(a.reflect(), -&a);
    }

    #[test]
    fn steinberg_examples() {
        let (a, b) = steinberg_split(&Laurent::one(Var::Z));
        assert_eq!((a, b), (Laurent::one(Var::X), Laurent::zero(Var::X)));
        let (a, b) = steinberg_split(&Laurent::z(1));
        assert_eq!((a, b), (Laurent::zero(Var::X), Laurent::one(Var::X)));
        let (a, b) = steinberg_split(&Laurent::z(2));
        assert_eq!(a, Laurent::from_ints(Var::X, &[(0, -1)]));
        assert_eq!(b, Laurent::from_ints(Var::X, &[(1, 2)]));
        assert_eq!(steinberg_join(&a, &b), Laurent::z(2));
    }

    #[test]
    fn x_round_trip() {
        let p = Laurent::from_ints(Var::X, &[(0, 3), (2, -5), (3, 7)]);
        assert_eq!(to_x(&lift_x(&p)).unwrap(), p);
        assert!(to_x(&Laurent::z(1)).is_err());
    }

    #[test]
    fn translate_and_eval() {
        let p = Laurent::from_ints(Var::Xi, &[(2, 1)]);
        let q = p.translate(&int(1));
        assert_eq!(q, Laurent::from_ints(Var::Xi, &[(2, 1), (1, 2), (0, 1)]));
        assert_eq!(zp(&[(1, 1), (-1, 1)]).eval(&int(2)), rat(5, 2));
    }

    #[test]
    fn json_schema() {
        let p = zp(&[(1, 1)]) + Laurent::constant(Var::Z, rat(2, 5));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"var":"z","terms":[{"exp":0,"coef":"2/5"},{"exp":1,"coef":"1/1"}]}"#);
        let back: Laurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
