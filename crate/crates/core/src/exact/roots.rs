//! Real root isolation by Sturm sequences and real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::factor::irreducible_factors;
use super::poly::{QPoly, ZPoly};
use super::Rational;

fn sturm_sequence(p: &ZPoly) -> Vec<QPoly> {
    let p0 = p.to_q();
    let p1 = p0.derivative();
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &Rational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in seq.iter().map(|p| p.sign_at(x)) {
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of a squarefree `p` in the half-open
/// interval `(a, b]`.
pub fn count_roots(p: &ZPoly, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(p);
    sign_changes(&seq, a) - sign_changes(&seq, b)
}

/// A bound `B` with every real root of `p` in `(-B, B)`.
fn cauchy_bound(p: &ZPoly) -> Rational {
    let lead = p.lead().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    Rational::new(m, lead) + Rational::from_integer(BigInt::from(2))
}

/// Disjoint isolating intervals `(lo, hi]` for the real roots of a
/// squarefree `p`, in increasing order. A degenerate interval `lo == hi`
/// marks an exact rational root.
pub fn isolate_real_roots(p: &ZPoly) -> Vec<(Rational, Rational)> {
    let seq = sturm_sequence(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if p.sign_at(&hi) == 0 {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Exact real algebraic number: the unique root of an irreducible primitive
/// polynomial inside an isolating interval `(lo, hi)`, or an exact rational
/// when `lo == hi`.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: ZPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        let minpoly = ZPoly::new(vec![-q.numer().clone(), q.denom().clone()]).primitive_part();
        AlgebraicNumber { minpoly, lo: q.clone(), hi: q }
    }

    /// Builds the root of irreducible `minpoly` isolated by `(lo, hi]`.
    /// The caller guarantees irreducibility and that exactly one root lies
    /// in the interval.
    pub fn from_isolated(minpoly: ZPoly, lo: Rational, hi: Rational) -> Self {
        let minpoly = minpoly.primitive_part();
        if minpoly.degree() == Some(1) {
            let q = Rational::new(-minpoly.coeff(0), minpoly.coeff(1));
            return Self::from_rational(q);
        }
        let mut a = AlgebraicNumber { minpoly, lo, hi };
        // Make the interval open at both ends: the root is irrational.
        a.refine_once();
        a
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.lo.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval.
    pub fn refine_once(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let sm = self.minpoly.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let shi = self.minpoly.sign_at(&self.hi);
        if shi == 0 || sm != shi {
            // Root in (mid, hi]; with an irrational root hi is not a root.
            if shi == 0 {
                self.lo = self.hi.clone();
            } else {
                self.lo = mid;
            }
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the interval is narrower than `eps`.
    pub fn refine_to(&mut self, eps: &Rational) {
        while !self.is_rational() && &self.width() >= eps {
            self.refine_once();
        }
    }

    /// Index of this root among the real roots of its minimal polynomial,
    /// counted from the smallest.
    pub fn root_index(&self) -> usize {
        let b = cauchy_bound(&self.minpoly);
        count_roots(&self.minpoly, &-b, &self.hi) - 1
    }

    /// Decimal approximation for display only.
    pub fn approx_string(&self, digits: usize) -> String {
        let mut a = self.clone();
        let eps = Rational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 1));
        a.refine_to(&eps);
        decimal(&a.hi, digits)
    }
}

pub(crate) fn decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let v = (q * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = v.is_negative();
    let v = v.abs();
    let int = &v / &scale;
    let frac = &v % &scale;
    let mut s = format!("{}{}", if neg { "-" } else { "" }, int);
    if digits > 0 {
        s.push_str(&format!(".{:0>width$}", frac.to_string(), width = digits));
    }
    s
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.minpoly == other.minpoly {
            return self.root_index().cmp(&other.root_index());
        }
        // Distinct minimal polynomials: distinct numbers, so refinement
        // separates the intervals.
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo || (a.hi == b.lo && !(a.is_rational() && b.is_rational())) {
                return Ordering::Less;
            }
            if b.hi < a.lo || (b.hi == a.lo && !(a.is_rational() && b.is_rational())) {
                return Ordering::Greater;
            }
            if a.is_rational() && b.is_rational() {
                return a.lo.cmp(&b.lo);
            }
            if a.width() >= b.width() {
                a.refine_once();
            } else {
                b.refine_once();
            }
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(
                f,
                "root of {} in ({}, {}) ≈ {}",
                self.minpoly,
                self.lo,
                self.hi,
                self.approx_string(6)
            ),
        }
    }
}

/// Largest real root of a nonzero integer polynomial, with its minimal
/// polynomial. `None` when there is no real root.
pub fn largest_real_root(p: &ZPoly) -> Option<AlgebraicNumber> {
    let mut best: Option<AlgebraicNumber> = None;
    for f in irreducible_factors(p) {
        if let Some((lo, hi)) = isolate_real_roots(&f).pop() {
            let a = AlgebraicNumber::from_isolated(f, lo, hi);
            if best.as_ref().is_none_or(|b| a > *b) {
                best = Some(a);
            }
        }
    }
    best
}
