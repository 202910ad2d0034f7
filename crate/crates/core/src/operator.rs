//! Differential-reflection operators Σ c_ij(z) θ^i s^j and their 2×2 matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{lift_x, to_x, Laurent, PolyX, Var};
use crate::rational::{int, Rat};
use crate::ratfunc::RatFunc;

/// Coefficient on the left: c(z)·θ^i·s^j, j ∈ {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DROp {
    terms: BTreeMap<(u32, u8), RatFunc>,
}

fn binom(n: u32, r: u32) -> Rat {
    let mut out = Rat::one();
    for t in 0..r {
        out = out * int((n - t) as i64) / int((t + 1) as i64);
    }
    out
}

impl DROp {
    pub fn zero() -> Self {
        DROp { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> Self {
        Self::term(RatFunc::constant(c), 0, 0)
    }

    pub fn mult(c: RatFunc) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn theta() -> Self {
        Self::term(RatFunc::one(), 1, 0)
    }

    pub fn refl() -> Self {
        Self::term(RatFunc::one(), 0, 1)
    }

    pub fn term(c: RatFunc, i: u32, j: u8) -> Self {
        let mut op = Self::zero();
        op.add_term(i, j, c);
        op
    }

    pub fn add_term(&mut self, i: u32, j: u8, c: RatFunc) {
        assert!(j < 2);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u8, &RatFunc)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u8) -> RatFunc {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_reflection(&self) -> bool {
        self.terms.keys().any(|&(_, j)| j == 1)
    }

    /// Highest θ-power over all terms, −1 for the zero operator.
    pub fn order(&self) -> i64 {
        self.terms.keys().map(|&(i, _)| i as i64).max().unwrap_or(-1)
    }

    /// Highest θ-power among the reflection-free terms.
    pub fn order_s0(&self) -> i64 {
        self.terms.keys().filter(|&&(_, j)| j == 0).map(|&(i, _)| i as i64).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DROp { terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect() }
    }

    pub fn left_mult(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, c * v);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// s∘D∘s
    pub fn conj_s(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let c = c.reflect();
            out.add_term(i, j, if i % 2 == 1 { -c } else { c });
        }
        out
    }

    /// The differential operator agreeing with this one on s-invariant functions.
    pub fn restrict_to_invariants(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, _), c) in &self.terms {
            out.add_term(i, 0, c.clone());
        }
        out
    }

    /// Splits D = A + B·s into (A, B).
    pub fn split_reflection(&self) -> (DROp, DROp) {
        let mut a = Self::zero();
        let mut b = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                a.add_term(i, 0, c.clone());
            } else {
                b.add_term(i, 0, c.clone());
            }
        }
        (a, b)
    }

    /// Applies the operator to a rational function (no exactness requirement).
    pub fn apply_rational(&self, f: &RatFunc) -> RatFunc {
        let fs = f.reflect();
        let mut cache: [Vec<RatFunc>; 2] = [vec![f.clone()], vec![fs]];
        let mut out = RatFunc::zero();
        for (&(i, j), c) in &self.terms {
            let v = &mut cache[j as usize];
            while v.len() <= i as usize {
                let next = v.last().unwrap().theta();
                v.push(next);
            }
            out = &out + &(c * &v[i as usize]);
        }
        out
    }

    /// Exact action on C[z^±]; `NonDivisible` if the result is not a Laurent polynomial.
    pub fn apply(&self, f: &Laurent) -> Result<Laurent> {
        assert_eq!(f.var(), Var::Z);
        let fs = f.reflect();
        let mut cache: [Vec<Laurent>; 2] = [vec![f.clone()], vec![fs]];
        // group by denominator to keep the common-denominator sum small
        let mut by_den: Vec<(Laurent, Laurent)> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let v = &mut cache[j as usize];
            while v.len() <= i as usize {
                let next = v.last().unwrap().theta();
                v.push(next);
            }
            let t = c.num() * &v[i as usize];
            match by_den.iter_mut().find(|(d, _)| d == c.den()) {
                Some((_, acc)) => *acc = &*acc + &t,
                None => by_den.push((c.den().clone(), t)),
            }
        }
        let mut total = RatFunc::zero();
        for (d, n) in by_den {
            total = &total + &RatFunc::quot(&n, &d);
        }
        total.as_laurent().ok_or(Error::NonDivisible)
    }

    /// Action on a polynomial in x, for operators preserving C[x].
    pub fn apply_x(&self, p: &PolyX) -> Result<PolyX> {
        let r = self.apply(&lift_x(p))?;
        to_x(&r).map_err(|_| Error::NonDivisible)
    }
}

/// Canonical equality, cross-checked by applying both sides to z^n, n ∈ [−8, 8].
pub fn op_equal(a: &DROp, b: &DROp) -> bool {
    let diff = a - b;
    let symbolic = diff.is_zero();
    let numeric = (-8..=8).all(|n| diff.apply_rational(&RatFunc::poly(Laurent::z(n))).is_zero());
    assert_eq!(symbolic, numeric, "symbolic and evaluator equality verdicts disagree");
    symbolic
}

pub fn compose(a: &DROp, b: &DROp) -> DROp {
    a * b
}

impl Add for &DROp {
    type Output = DROp;
    fn add(self, o: &DROp) -> DROp {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &DROp {
    type Output = DROp;
    fn sub(self, o: &DROp) -> DROp {
        self + &(-o)
    }
}

impl Neg for &DROp {
    type Output = DROp;
    fn neg(self) -> DROp {
        DROp { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Mul for &DROp {
    type Output = DROp;
    fn mul(self, o: &DROp) -> DROp {
        // θ-derivatives of reflected / plain coefficients of `o`
        let mut derivs: BTreeMap<((u32, u8), u8), Vec<RatFunc>> = BTreeMap::new();
        let mut slots: BTreeMap<(u32, u8), Vec<(Laurent, Laurent)>> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            let (an, ad) = (a.num(), a.den());
            for (&(m, n), b) in &o.terms {
                let v = derivs.entry(((m, n), j)).or_insert_with(|| vec![if j == 1 { b.reflect() } else { b.clone() }]);
                while v.len() <= i as usize {
                    let next = v.last().unwrap().theta();
                    v.push(next);
                }
                let sign = if j == 1 && m % 2 == 1 { -Rat::one() } else { Rat::one() };
                for r in 0..=i {
                    let (bn, bd) = (v[r as usize].num(), v[r as usize].den());
                    if bn.is_zero() {
                        continue;
                    }
                    let num = (an * bn).scale(&(binom(i, r) * &sign));
                    slots.entry((i - r + m, (j + n) % 2)).or_default().push((num, ad * bd));
                }
            }
        }
        let mut out = DROp::zero();
        for ((i, j), parts) in slots {
            out.add_term(i, j, RatFunc::sum_raw(parts));
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(DROp, Add, add);
owned_ops!(DROp, Sub, sub);
owned_ops!(DROp, Mul, mul);

impl Neg for DROp {
    type Output = DROp;
    fn neg(self) -> DROp {
        -&self
    }
}

impl From<RatFunc> for DROp {
    fn from(c: RatFunc) -> Self {
        DROp::mult(c)
    }
}

impl fmt::Display for DROp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = format!("[{c}]");
                if i > 0 {
                    s += &format!("·θ^{i}");
                }
                if j == 1 {
                    s += "·s";
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
pub struct TermDump {
    pub i: u32,
    pub j: u8,
    pub num: Laurent,
    pub den: Laurent,
}

impl DROp {
    pub fn dump(&self) -> Vec<TermDump> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| TermDump { i, j, num: c.num().clone(), den: c.den().clone() })
            .collect()
    }
}

/// A constant 2×2 rational matrix.
pub type RatMat = [[Rat; 2]; 2];

pub fn ratmat(a: [[i64; 2]; 2]) -> RatMat {
    [[int(a[0][0]), int(a[0][1])], [int(a[1][0]), int(a[1][1])]]
}

pub fn ratmat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn ratmat_scale(a: &RatMat, c: &Rat) -> RatMat {
    [[&a[0][0] * c, &a[0][1] * c], [&a[1][0] * c, &a[1][1] * c]]
}

/// U = (1/√2)(1 −1; 1 1). Conjugations by U are rational: U⁻¹·A·U = ½·L·A·R.
pub fn u_left() -> RatMat {
    ratmat([[1, 1], [-1, 1]])
}

pub fn u_right() -> RatMat {
    ratmat([[1, -1], [1, 1]])
}

/// 2×2 matrix of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatOp {
    pub e: [[DROp; 2]; 2],
}

impl MatOp {
    pub fn new(e00: DROp, e01: DROp, e10: DROp, e11: DROp) -> Self {
        MatOp { e: [[e00, e01], [e10, e11]] }
    }

    pub fn zero() -> Self {
        Self::new(DROp::zero(), DROp::zero(), DROp::zero(), DROp::zero())
    }

    pub fn identity() -> Self {
        Self::diag(DROp::identity(), DROp::identity())
    }

    pub fn diag(a: DROp, b: DROp) -> Self {
        Self::new(a, DROp::zero(), DROp::zero(), b)
    }

    pub fn scalar_diag(a: &DROp) -> Self {
        Self::diag(a.clone(), a.clone())
    }

    pub fn constant(m: &RatMat) -> Self {
        Self::new(
            DROp::scalar(m[0][0].clone()),
            DROp::scalar(m[0][1].clone()),
            DROp::scalar(m[1][0].clone()),
            DROp::scalar(m[1][1].clone()),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &DROp {
        &self.e[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|d| d.is_zero())
    }

    pub fn has_reflection(&self) -> bool {
        self.e.iter().flatten().any(|d| d.has_reflection())
    }

    pub fn order(&self) -> i64 {
        self.e.iter().flatten().map(|d| d.order()).max().unwrap()
    }

    pub fn map(&self, f: impl Fn(&DROp) -> DROp) -> Self {
        MatOp { e: [[f(&self.e[0][0]), f(&self.e[0][1])], [f(&self.e[1][0]), f(&self.e[1][1])]] }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|d| d.scale(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// L·A·R for constant matrices L, R.
    pub fn sandwich(&self, l: &RatMat, r: &RatMat) -> Self {
        &(&MatOp::constant(l) * self) * &MatOp::constant(r)
    }

    /// U⁻¹·A·U
    pub fn u_conj(&self) -> Self {
        self.sandwich(&u_left(), &u_right()).scale(&crate::rational::half())
    }

    /// U·A·U⁻¹
    pub fn u_conj_inv(&self) -> Self {
        self.sandwich(&u_right(), &u_left()).scale(&crate::rational::half())
    }

    /// Acts on a column of Laurent polynomials in z.
    pub fn apply_vec(&self, v: &[Laurent; 2]) -> Result<[Laurent; 2]> {
        // entries may have poles that only cancel in the row sum
        let row = |i: usize| -> Result<Laurent> {
            if let (Ok(a), Ok(b)) = (self.e[i][0].apply(&v[0]), self.e[i][1].apply(&v[1])) {
                return Ok(&a + &b);
            }
            let a = self.e[i][0].apply_rational(&RatFunc::poly(v[0].clone()));
            let b = self.e[i][1].apply_rational(&RatFunc::poly(v[1].clone()));
            (&a + &b).as_laurent().ok_or(Error::NonDivisible)
        };
        Ok([row(0)?, row(1)?])
    }

    /// Acts on a column of polynomials in x.
    pub fn apply_xvec(&self, v: &[PolyX; 2]) -> Result<[PolyX; 2]> {
        let z = [lift_x(&v[0]), lift_x(&v[1])];
        let r = self.apply_vec(&z)?;
        Ok([to_x(&r[0]).map_err(|_| Error::NonDivisible)?, to_x(&r[1]).map_err(|_| Error::NonDivisible)?])
    }

    /// Acts on a 2×2 matrix of x-polynomials, column by column.
    pub fn apply_xmat(&self, m: &XMat) -> Result<XMat> {
        let c0 = self.apply_xvec(&[m[0][0].clone(), m[1][0].clone()])?;
        let c1 = self.apply_xvec(&[m[0][1].clone(), m[1][1].clone()])?;
        let [a, c] = c0;
        let [b, d] = c1;
        Ok([[a, b], [c, d]])
    }
}

pub fn mat_op_equal(a: &MatOp, b: &MatOp) -> bool {
    (0..2).all(|i| (0..2).all(|j| op_equal(&a.e[i][j], &b.e[i][j])))
}

impl Add for &MatOp {
    type Output = MatOp;
    fn add(self, o: &MatOp) -> MatOp {
        let e = |i: usize, j: usize| &self.e[i][j] + &o.e[i][j];
        MatOp { e: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl Sub for &MatOp {
    type Output = MatOp;
    fn sub(self, o: &MatOp) -> MatOp {
        let e = |i: usize, j: usize| &self.e[i][j] - &o.e[i][j];
        MatOp { e: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl Neg for &MatOp {
    type Output = MatOp;
    fn neg(self) -> MatOp {
        self.map(|d| -d)
    }
}

impl Mul for &MatOp {
    type Output = MatOp;
    fn mul(self, o: &MatOp) -> MatOp {
        let e = |i: usize, j: usize| &(&self.e[i][0] * &o.e[0][j]) + &(&self.e[i][1] * &o.e[1][j]);
        MatOp { e: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

owned_ops!(MatOp, Add, add);
owned_ops!(MatOp, Sub, sub);
owned_ops!(MatOp, Mul, mul);

impl Neg for MatOp {
    type Output = MatOp;
    fn neg(self) -> MatOp {
        -&self
    }
}

/// 2×2 matrix of x-polynomials.
pub type XMat = [[PolyX; 2]; 2];

pub fn xmat_zero() -> XMat {
    let z = || Laurent::zero(Var::X);
    [[z(), z()], [z(), z()]]
}

pub fn xmat_mul_const(m: &XMat, c: &RatMat) -> XMat {
    let e = |i: usize, j: usize| &m[i][0].scale(&c[0][j]) + &m[i][1].scale(&c[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn const_mul_xmat(c: &RatMat, m: &XMat) -> XMat {
    let e = |i: usize, j: usize| &m[0][j].scale(&c[i][0]) + &m[1][j].scale(&c[i][1]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn xmat_is_zero(m: &XMat) -> bool {
    m.iter().flatten().all(|p| p.is_zero())
}

pub fn xmat_sub(a: &XMat, b: &XMat) -> XMat {
    let e = |i: usize, j: usize| &a[i][j] - &b[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn reflection_squares_to_one() {
        assert!(op_equal(&(&DROp::refl() * &DROp::refl()), &DROp::identity()));
    }

    #[test]
    fn leibniz() {
        let z = DROp::mult(RatFunc::poly(Laurent::z(1)));
        let lhs = &DROp::theta() * &z;
        let rhs = &(&z * &DROp::theta()) + &z;
        assert!(op_equal(&lhs, &rhs));
    }

    #[test]
    fn reflection_anticommutes_with_theta() {
        let lhs = &DROp::refl() * &DROp::theta();
        let rhs = -&(&DROp::theta() * &DROp::refl());
        assert!(op_equal(&lhs, &rhs));
    }

    #[test]
    fn apply_composition() {
        let c = RatFunc::quot(&Laurent::one(Var::Z), &Laurent::from_ints(Var::Z, &[(0, 1), (-1, -1)]));
        // (1 - s)/(1 - 1/z) preserves Laurent polynomials
        let a = DROp::mult(c).left_mult(&RatFunc::one()) * (&DROp::identity() - &DROp::refl());
        let b = &DROp::theta() + &DROp::refl();
        let f = Laurent::from_ints(Var::Z, &[(3, 1), (-2, 4), (0, -1)]);
        let ab = &a * &b;
        assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
        let g = a.apply(&Laurent::z(1)).unwrap();
        assert_eq!(g, Laurent::from_ints(Var::Z, &[(1, 1), (0, 1)]));
    }

    #[test]
    fn non_divisible_action() {
        let c = RatFunc::quot(&Laurent::one(Var::Z), &Laurent::from_ints(Var::Z, &[(1, 1), (-1, -1)]));
        assert_eq!(DROp::mult(c).apply(&Laurent::z(1)), Err(Error::NonDivisible));
    }

    #[test]
    fn u_conjugation_round_trip() {
        let a = MatOp::new(DROp::theta(), DROp::scalar(rat(1, 3)), DROp::refl(), DROp::identity());
        assert!(mat_op_equal(&a.u_conj().u_conj_inv(), &a));
    }
}
