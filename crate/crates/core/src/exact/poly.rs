//! Dense univariate polynomials over ℤ and ℚ, coefficients stored low to high.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Integer polynomial. The coefficient vector never has trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

/// Rational polynomial, same storage conventions as [`ZPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    /// `x - r` for an integer r.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at `x`, computed without building the rational.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        // p(n/d) * d^deg is an integer with the same sign as p(n/d).
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // Horner above multiplies the leading term by d^0 and the constant
        // by d^deg, which is exactly d^deg * p(n/d).
        sign_of(&acc)
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Exact quotient over ℤ, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.to_q().divrem(&divisor.to_q());
        if !r.is_zero() {
            return None;
        }
        q.to_integer_exact()
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Polynomial `p(x)` composed with `-x`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&l.recip())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(Rational::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        sign_of(v.numer())
    }

    /// Clears denominators and returns the primitive integer polynomial with
    /// positive leading coefficient that has the same roots.
    pub fn to_primitive_z(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        ZPoly::new(ints).primitive_part()
    }

    /// Integer polynomial with the same coefficients, if they are integers.
    pub fn to_integer_exact(&self) -> Option<ZPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(ZPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

fn fmt_terms<T: fmt::Display + Zero>(coeffs: &[T], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = body == "1";
        match i {
            0 => write!(f, "{body}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{body}{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{body}{var}^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, "x", f)
    }
}

impl ZPoly {
    /// Renders the polynomial in the named variable.
    pub fn display_in(&self, var: &str) -> String {
        struct W<'a>(&'a [BigInt], &'a str);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_terms(self.0, self.1, f)
            }
        }
        W(&self.coeffs, var).to_string()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, "x", f)
    }
}
