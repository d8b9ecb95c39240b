//! Arbitrary-precision rational arithmetic with p-adic bookkeeping.
//!
//! [`Rational`] is always stored reduced with a positive denominator, so
//! valuation and equality are structural. The p-adic side provides the
//! valuation [`Rational::valuation`], p-integrality, congruences modulo
//! `p^r ℤ₍ₚ₎` and the canonical representative of a class in ℚ/ℤ₍ₚ₎.
//! The combinatorial side provides exact p-binomial (Gaussian) and
//! multinomial coefficients.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number. The numerator and denominator are always
/// coprime, the denominator is positive, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Raises to an integer power; negative exponents invert.
    ///
    /// Panics when raising zero to a negative power.
    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "cannot raise zero to a negative power");
        }
        let e = i32::try_from(exp).expect("exponent out of range");
        Rational(self.0.pow(e))
    }

    /// The p-adic valuation; `Infinite` for zero.
    ///
    /// Panics if `p` is not prime.
    pub fn valuation(&self, p: u64) -> Valuation {
        assert!(is_prime(p), "p = {p} is not prime");
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigInt::from(p);
        Valuation::Finite(int_valuation(self.numer(), &p) - int_valuation(self.denom(), &p))
    }

    /// Whether this rational lies in ℤ₍ₚ₎, i.e. its p-adic valuation is ≥ 0.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.valuation(p) >= Valuation::Finite(0)
    }

    /// Canonical representative `(c, e)` of the class in ℚ/ℤ₍ₚ₎:
    /// `e = max(0, -v_p)`, `0 ≤ c < p^e`, and `self - c/p^e` is p-integral.
    /// `c = 0` exactly when the value is already p-integral.
    pub fn residue_qzp(&self, p: u64) -> (BigUint, u32) {
        match self.valuation(p) {
            Valuation::Infinite => (BigUint::zero(), 0),
            Valuation::Finite(v) if v >= 0 => (BigUint::zero(), 0),
            Valuation::Finite(v) => {
                let e = u32::try_from(-v).expect("valuation out of range");
                let pe = BigInt::from(p).pow(e);
                // denom = p^e * b' with gcd(b', p) = 1; solve c ≡ a·(b')⁻¹ (mod p^e)
                let b_prime = self.denom() / &pe;
                let inv = mod_inverse(&b_prime, &pe);
                let c = (self.numer() * inv).mod_floor(&pe);
                (c.to_biguint().expect("mod_floor is non-negative"), e)
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // "n" for integers, "n/d" otherwise
        self.0.fmt(f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = BigRational::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))?;
        Ok(Rational(r))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// A p-adic valuation: an integer, or the distinguished value of zero.
/// `Infinite` compares greater than every finite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(&self, bound: i64) -> bool {
        *self >= Valuation::Finite(bound)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// `true` iff `a ≡ b (mod p^r ℤ₍ₚ₎)`, i.e. `v_p(a - b) ≥ r`.
pub fn congruent_mod_pr(a: &Rational, b: &Rational, p: u64, r: u32) -> bool {
    (a - b).valuation(p).at_least(i64::from(r))
}

/// The p-binomial (Gaussian) coefficient
/// `(p^B - 1)⋯(p^{B-i+1} - 1) / ((p^i - 1)⋯(p - 1))`,
/// computed by the product formula with exact stepwise division.
///
/// Panics if `i > B` or `p` is not prime.
pub fn qbinom(big_b: u32, i: u32, p: u64) -> BigInt {
    assert!(is_prime(p), "p = {p} is not prime");
    assert!(i <= big_b, "qbinom requires i <= B, got i={i}, B={big_b}");
    let p = BigInt::from(p);
    let mut acc = BigInt::one();
    // After j steps the accumulator is the Gaussian binomial
    // [(B-i+j) choose j]_p, so every division below is exact.
    for j in 1..=i {
        acc *= p.pow(big_b - i + j) - 1;
        let (q, rem) = acc.div_rem(&(p.pow(j) - 1));
        assert!(rem.is_zero(), "inexact division in qbinom");
        acc = q;
    }
    acc
}

/// Exact multinomial coefficient `(Σ counts)! / ∏ countᵢ!`.
pub fn multinomial(counts: &[u64]) -> BigInt {
    let mut total: u64 = 0;
    let mut acc = BigInt::one();
    for &c in counts {
        total += c;
        acc *= num_integer::binomial(BigInt::from(total), BigInt::from(c));
    }
    acc
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = 7u64;
    while d.saturating_mul(d) <= n {
        for step in [0, 4] {
            if n.is_multiple_of(d + step) {
                return false;
            }
        }
        d += 6;
    }
    true
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        n = q;
    }
}

/// Inverse of `a` modulo `m` for coprime inputs, normalised to `[0, m)`.
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let ext = a.extended_gcd(m);
    assert!(ext.gcd.is_one(), "mod_inverse of non-unit");
    ext.x.mod_floor(m)
}
