//! Exact arithmetic over ℚ and real number fields ℚ(λ), plus finitely
//! generated additive subgroups with decidable membership.
//!
//! A real algebraic number is a primitive irreducible integer polynomial
//! together with a rational interval isolating one of its real roots. Field
//! elements are coordinate vectors in the power basis of the generator, so
//! equality is syntactic and signs come from interval evaluation on a cached
//! tight enclosure of the generator.

mod factor;
mod field;
mod group;
mod poly;
mod roots;

pub use factor::irreducible_factors;
pub use field::{FieldElement, NumberField};
pub use group::{
    closure_equal, find_scale, lambda_closure_member, ClosureMembership, FinGenSubgroup,
    ScaleSearch, Tri, DEFAULT_CLOSURE_BOUND,
};
pub use poly::{QPoly, ZPoly};
pub use roots::{count_roots, isolate_real_roots, largest_real_root, AlgebraicNumber};

use num_bigint::BigInt;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational `n/d` from machine integers. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}
