//! Arithmetic in ℚ(λ) for a real algebraic λ.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{sign_of, QPoly, ZPoly};
use super::roots::{decimal, AlgebraicNumber};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner {
    generator: AlgebraicNumber,
    modulus: QPoly,
    tight: AlgebraicNumber,
    index: usize,
}

/// The real number field ℚ(λ), embedded in ℝ by the chosen root λ.
/// Degree-one fields are all identified with ℚ.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<Inner>);

impl NumberField {
    pub fn rationals() -> Self {
        Self::build(AlgebraicNumber::from_rational(Rational::zero()))
    }

    fn build(generator: AlgebraicNumber) -> Self {
        let modulus = generator.minpoly().to_q().monic();
        let mut tight = generator.clone();
        tight.refine_to(&Rational::new(BigInt::one(), BigInt::one() << 80));
        let index = if generator.is_rational() { 0 } else { generator.root_index() };
        NumberField(Arc::new(Inner { generator, modulus, tight, index }))
    }

    /// The field generated by `a`, together with `a` as an element of it.
    pub fn from_algebraic(a: &AlgebraicNumber) -> (Self, FieldElement) {
        match a.as_rational() {
            Some(q) => {
                let f = Self::rationals();
                let e = FieldElement::from_rational(&f, q);
                (f, e)
            }
            None => {
                let f = Self::build(a.clone());
                let g = f.generator();
                (f, g)
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.degree().unwrap_or(1).max(1)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Minimal polynomial of the generator (`x` for ℚ).
    pub fn minpoly(&self) -> &ZPoly {
        self.0.generator.minpoly()
    }

    pub fn generator_number(&self) -> &AlgebraicNumber {
        &self.0.generator
    }

    /// The generator λ as a field element (zero for ℚ).
    pub fn generator(&self) -> FieldElement {
        let d = self.degree();
        if d == 1 {
            return FieldElement::zero(self);
        }
        let mut coords = vec![Rational::zero(); d];
        coords[1] = Rational::one();
        FieldElement { field: self.clone(), coords }
    }

    fn reduce(&self, p: &QPoly) -> Vec<Rational> {
        let r = if self.is_rational() { p.clone() } else { p.rem(&self.0.modulus) };
        let d = self.degree();
        let mut c: Vec<Rational> = r.coeffs().to_vec();
        if self.is_rational() {
            // In ℚ the "polynomial" is a constant.
            c.truncate(1);
        }
        c.resize(d, Rational::zero());
        c
    }

    /// Renders the minimal polynomial in the variable λ.
    pub fn describe(&self) -> String {
        if self.is_rational() {
            "Q".to_string()
        } else {
            format!(
                "Q(λ), λ: {} ≈ {}",
                self.minpoly().display_in("λ"),
                self.0.generator.approx_string(6)
            )
        }
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.degree() == other.degree()
                && (self.is_rational()
                    || (self.minpoly() == other.minpoly() && self.0.index == other.0.index)))
    }
}

impl Eq for NumberField {}

/// Element of ℚ(λ) in the power basis `1, λ, …, λ^{d-1}`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(field: &NumberField) -> Self {
        FieldElement { field: field.clone(), coords: vec![Rational::zero(); field.degree()] }
    }

    pub fn one(field: &NumberField) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &NumberField, q: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = q;
        e
    }

    pub fn from_int(field: &NumberField, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(field: &NumberField, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::Dimension { expected: field.degree(), got: coords.len() });
        }
        Ok(FieldElement { field: field.clone(), coords })
    }

    /// Value of a rational polynomial at the generator.
    pub fn from_poly(field: &NumberField, p: &QPoly) -> Self {
        FieldElement { field: field.clone(), coords: field.reduce(p) }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| self.coords[0].clone())
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "{}", Error::FieldMismatch);
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_rational() {
            return Some(Self::from_rational(&self.field, self.coords[0].recip()));
        }
        let (g, s, _) = self.as_poly().ext_gcd(&self.field.0.modulus);
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::from_poly(&self.field, &s))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    /// Interval enclosure of the real value from an enclosure of λ.
    fn enclose(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for c in self.coords.iter().rev() {
            let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            a = mn + c;
            b = mx + c;
        }
        (a, b)
    }

    /// Sign of the real value: −1, 0 or 1.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return sign_of(q.numer());
        }
        // A nonzero reduced element of an irreducible extension is nonzero
        // as a real number, so refinement terminates.
        let mut gen = self.field.0.tight.clone();
        loop {
            let (lo, hi) = gen.interval();
            let (a, b) = self.enclose(lo, hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            for _ in 0..32 {
                gen.refine_once();
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    /// Lowest common denominator and integer numerators of the coordinates.
    pub fn integer_coords(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coords
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (den, nums)
    }

    /// Decimal approximation, display only.
    pub fn approx(&self, digits: usize) -> String {
        if let Some(q) = self.as_rational() {
            return decimal(&q, digits);
        }
        let mut gen = self.field.0.tight.clone();
        let eps = Rational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
        loop {
            let (lo, hi) = gen.interval();
            let (a, b) = self.enclose(lo, hi);
            if &b - &a < eps {
                return decimal(&((a + b) / Rational::from_integer(BigInt::from(2))), digits);
            }
            for _ in 0..16 {
                gen.refine_once();
            }
        }
    }

    /// Exact rendering: `p/q` in ℚ, `(c0 + c1λ + …)/q` otherwise.
    pub fn exact_string(&self) -> String {
        if let Some(q) = self.as_rational() {
            return q.to_string();
        }
        let (den, nums) = self.integer_coords();
        let body = ZPoly::new(nums).display_in("λ");
        let body = reorder_ascending(&body);
        if den.is_one() {
            format!("({body})")
        } else {
            format!("({body})/{den}")
        }
    }
}

/// Turns a descending rendering `aλ^2 + bλ + c` into ascending order.
fn reorder_ascending(desc: &str) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut neg = false;
    for tok in desc.split(' ') {
        match tok {
            "+" => neg = false,
            "-" => neg = true,
            t => {
                let (n, body) = match t.strip_prefix('-') {
                    Some(b) => (true, b.to_string()),
                    None => (neg, t.to_string()),
                };
                terms.push((n, body));
                neg = false;
            }
        }
    }
    terms.reverse();
    let mut out = String::new();
    for (i, (n, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *n {
                out.push('-');
            }
        } else {
            out.push_str(if *n { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            write!(f, "{}", self.exact_string())
        } else {
            write!(f, "{} with λ: {}", self.exact_string(), self.field.minpoly().display_in("λ"))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        if self.field.is_rational() {
            return FieldElement::from_rational(&self.field, &self.coords[0] * &rhs.coords[0]);
        }
        FieldElement::from_poly(&self.field, &self.as_poly().mul(&rhs.as_poly()))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{largest_real_root, rat};
    use proptest::prelude::*;

    fn golden() -> (NumberField, FieldElement) {
        let phi = largest_real_root(&ZPoly::from_i64s(&[-1, -1, 1])).unwrap();
        NumberField::from_algebraic(&phi)
    }

    #[test]
    fn golden_square_reduces() {
        let (k, l) = golden();
        let sq = &l * &l;
        let expect = &l + &FieldElement::one(&k);
        assert_eq!(sq, expect);
    }

    #[test]
    fn inverse_and_sign() {
        let (k, l) = golden();
        let inv = l.inverse().unwrap();
        assert_eq!(&inv * &l, FieldElement::one(&k));
        // 1/φ = φ - 1
        assert_eq!(inv, &l - &FieldElement::one(&k));
        let two = FieldElement::from_int(&k, 2);
        assert_eq!(l.cmp(&two), Ordering::Less);
        assert_eq!((&l - &FieldElement::from_rational(&k, rat(1618, 1000))).sign(), 1);
        assert_eq!((&l - &FieldElement::from_rational(&k, rat(1619, 1000))).sign(), -1);
    }

    #[test]
    fn rational_field_is_canonical() {
        let a = largest_real_root(&ZPoly::from_i64s(&[-4, 1])).unwrap();
        let (k, four) = NumberField::from_algebraic(&a);
        assert!(k.is_rational());
        assert_eq!(k, NumberField::rationals());
        assert_eq!(four.as_rational(), Some(rat(4, 1)));
    }

    #[test]
    fn display_forms() {
        let (k, l) = golden();
        let e = &l.scale(&rat(1, 2)) - &FieldElement::from_rational(&k, rat(1, 3));
        assert_eq!(e.exact_string(), "(-2 + 3λ)/6");
        assert_eq!(e.to_string(), "(-2 + 3λ)/6 with λ: λ^2 - λ - 1");
        assert_eq!(FieldElement::from_rational(&NumberField::rationals(), rat(3, 8)).to_string(), "3/8");
        assert_eq!(l.approx(4), "1.6180");
    }

    #[test]
    fn conjugate_root_is_a_different_field() {
        let p = ZPoly::from_i64s(&[-1, -1, 1]);
        let roots = crate::exact::isolate_real_roots(&p);
        let (lo, hi) = roots[0].clone();
        let psi = AlgebraicNumber::from_isolated(p, lo, hi);
        let (k2, m) = NumberField::from_algebraic(&psi);
        let (k1, _) = golden();
        assert_ne!(k1, k2);
        assert_eq!(m.sign(), -1);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in 1i64..9) {
            let (k, l) = golden();
            let x = &FieldElement::from_int(&k, a) + &l.scale(&rat(b, d));
            let y = &FieldElement::from_rational(&k, rat(c, d)) + &l;
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                let inv = x.inverse().unwrap();
                prop_assert_eq!(&x * &inv, FieldElement::one(&k));
            }
            // Sign agrees with the embedding φ ≈ 1.6180339887.
            let approx = a as f64 + (b as f64 / d as f64) * 1.618_033_988_749_895;
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.sign(), if approx > 0.0 { 1 } else { -1 });
            }
        }
    }
}
