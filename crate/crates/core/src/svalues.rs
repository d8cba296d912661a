//! Clopen values sets `S(μ) = scale · (⋃_N λ^{-N} H) ∩ [0, γ]`, the
//! group-like set algebra around them, reciprocal sets and products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    closure_equal, find_scale, lambda_closure_member, FieldElement, FinGenSubgroup, NumberField, Rational,
    ScaleSearch, Tri, DEFAULT_CLOSURE_BOUND,
};
use crate::measure::{ErgodicMeasure, LevelMeasure};

/// Symbolic clopen values set.
#[derive(Clone, Debug)]
pub struct ClopenValuesSet {
    field: NumberField,
    group: FinGenSubgroup,
    lambda: Option<FieldElement>,
    scale: FieldElement,
    bound: Option<FieldElement>,
}

/// Brings `x` into `field` when it is rational there; irrational values
/// of another field are rejected.
fn embed(x: &FieldElement, field: &NumberField) -> Result<Option<FieldElement>> {
    if x.field() == field {
        return Ok(Some(x.clone()));
    }
    match x.as_rational() {
        Some(q) => Ok(Some(FieldElement::from_rational(field, q))),
        None if field.is_rational() => Ok(None),
        None => Err(Error::FieldMismatch),
    }
}

impl ClopenValuesSet {
    /// `scale · (⋃ λ^{-N} H) ∩ [0, bound]`.
    pub fn new(
        group: FinGenSubgroup,
        lambda: Option<FieldElement>,
        scale: FieldElement,
        bound: Option<FieldElement>,
    ) -> Result<Self> {
        let field = group.field().clone();
        if !scale.is_positive() {
            return Err(Error::Precondition("scale must be positive".into()));
        }
        if let Some(l) = &lambda {
            if l.field() != &field || !group.is_lambda_stable(l) {
                return Err(Error::Precondition("λ·H must be contained in H".into()));
            }
        }
        if scale.field() != &field || bound.as_ref().is_some_and(|b| b.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ClopenValuesSet { field, group, lambda, scale, bound })
    }

    /// Unbounded set `G[gens] ∩ [0, ∞)` over ℚ with optional integer λ.
    pub fn rational(gens: &[Rational], lambda: Option<i64>) -> Result<Self> {
        let q = NumberField::rationals();
        let els: Vec<FieldElement> = gens.iter().map(|g| FieldElement::from_rational(&q, g.clone())).collect();
        let group = FinGenSubgroup::from_generators(&q, &els)?;
        let l = lambda.map(|l| FieldElement::from_int(&q, l));
        Self::new(group, l, FieldElement::one(&q), None)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn group(&self) -> &FinGenSubgroup {
        &self.group
    }

    pub fn lambda(&self) -> Option<&FieldElement> {
        self.lambda.as_ref()
    }

    pub fn scale(&self) -> &FieldElement {
        &self.scale
    }

    pub fn bound(&self) -> Option<&FieldElement> {
        self.bound.as_ref()
    }

    /// `scale·H`, the group whose λ-closure is `G[S]`.
    pub fn scaled_group(&self) -> FinGenSubgroup {
        self.group.scale(&self.scale)
    }

    /// The same set multiplied by a positive constant.
    pub fn rescaled(&self, c: &FieldElement) -> Result<Self> {
        let c = embed(c, &self.field)?.ok_or(Error::FieldMismatch)?;
        let bound = self.bound.as_ref().map(|b| b * &c);
        Self::new(self.group.clone(), self.lambda.clone(), &self.scale * &c, bound)
    }

    /// Drops the upper bound: `G[S] ∩ [0, ∞)`.
    pub fn unbounded(&self) -> Self {
        let mut s = self.clone();
        s.bound = None;
        s
    }

    /// Membership of a nonnegative value.
    pub fn member(&self, v: &FieldElement, closure_bound: usize) -> Result<Tri> {
        let Some(v) = embed(v, &self.field)? else {
            return Ok(Tri::No);
        };
        if v.sign() < 0 {
            return Ok(Tri::No);
        }
        if v.is_zero() {
            return Ok(Tri::Yes);
        }
        if let Some(b) = &self.bound {
            if &v > b {
                return Ok(Tri::No);
            }
        }
        let x = v.div(&self.scale).expect("scale is positive");
        Ok(match &self.lambda {
            None => {
                if self.group.contains(&x) {
                    Tri::Yes
                } else {
                    Tri::No
                }
            }
            Some(l) => lambda_closure_member(&self.group, l, &x, closure_bound)?.tri(),
        })
    }

    /// Membership with the default closure bound.
    pub fn contains(&self, v: &FieldElement) -> Result<Tri> {
        self.member(v, DEFAULT_CLOSURE_BOUND)
    }

    fn closure_parts(&self) -> (FinGenSubgroup, FieldElement) {
        let l = self.lambda.clone().unwrap_or_else(|| FieldElement::one(&self.field));
        (self.scaled_group(), l)
    }

    /// Set equality.
    pub fn equals(&self, other: &Self, closure_bound: usize) -> Result<Tri> {
        if self.field != other.field {
            // A nonzero λ-stable group inside ℚ forces λ ∈ ℚ, so a set over
            // an irrational field always holds an irrational value.
            if self.field.is_rational() != other.field.is_rational() {
                let trivial = self.group.is_zero() && other.group.is_zero();
                return Ok(if trivial { Tri::Yes } else { Tri::No });
            }
            return Ok(Tri::Undetermined);
        }
        match (&self.bound, &other.bound) {
            (None, None) => {}
            (Some(a), Some(b)) if a == b => {}
            _ => return Ok(Tri::No),
        }
        let (h1, l1) = self.closure_parts();
        let (h2, l2) = other.closure_parts();
        closure_equal(&h1, &l1, &h2, &l2, closure_bound)
    }

    /// Positive rational `c` with `self = c · other`, if the candidate
    /// search finds one. `complete` marks a `None` that is a proof.
    pub fn find_scale_to(&self, other: &Self, closure_bound: usize) -> Result<ScaleSearch> {
        if self.field != other.field {
            return Ok(ScaleSearch { scale: None, complete: false });
        }
        if self.bound.is_some() != other.bound.is_some() {
            return Ok(ScaleSearch { scale: None, complete: true });
        }
        let (h1, l1) = self.closure_parts();
        let (h2, l2) = other.closure_parts();
        let found = find_scale(&h2, &h1, Some((&l2, &l1)), closure_bound)?;
        if let (Some(c), Some(b1), Some(b2)) = (&found.scale, &self.bound, &other.bound) {
            if &b2.scale(c) != b1 {
                return Ok(ScaleSearch { scale: None, complete: false });
            }
        }
        Ok(found)
    }

    /// Every element of the set of the form `m / λ^N` with `m ∈ scale·H`,
    /// `N ≤ max_exp`, up to `value_bound` (rational sets with rank-one `H`
    /// only).
    pub fn rational_elements(&self, max_exp: u32, value_bound: &Rational) -> Result<BTreeSet<Rational>> {
        let g = self.scaled_group();
        let gen = match g.rational_generator() {
            Some(h) => h,
            None if g.is_zero() => return Ok(BTreeSet::from([Rational::zero()])),
            None => return Err(Error::Unsupported("rational enumeration needs a rank-one rational group".into())),
        };
        let l = match &self.lambda {
            Some(l) => l.as_rational().ok_or_else(|| Error::Unsupported("irrational λ".into()))?,
            None => Rational::one(),
        };
        let cap = match &self.bound {
            Some(b) => b.as_rational().unwrap().min(value_bound.clone()),
            None => value_bound.clone(),
        };
        let mut out = BTreeSet::new();
        for n in 0..=max_exp {
            let step = &gen / num_traits::pow(l.clone(), n as usize);
            let count = (&cap / &step).floor().to_integer();
            let count = count.to_u64().ok_or_else(|| Error::Unsupported("too many elements".into()))?;
            for k in 0..=count {
                out.insert(&step * Rational::from_integer(k.into()));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ClopenValuesSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.group.basis().iter().map(|b| b.exact_string()).collect();
        write!(f, "{} · ", self.scale.exact_string())?;
        match &self.lambda {
            Some(l) => write!(f, "⋃_N ({})^-N · G[{}]", l.exact_string(), basis.join(", "))?,
            None => write!(f, "G[{}]", basis.join(", "))?,
        }
        match &self.bound {
            Some(b) => write!(f, " ∩ [0, {}]", b.exact_string())?,
            None => write!(f, " ∩ [0, ∞)")?,
        }
        if !self.field.is_rational() {
            write!(f, " with λ: {}", self.field.minpoly().display_in("λ"))?;
        }
        Ok(())
    }
}

/// `S(μ)`: `H` is generated by the weights on `B_f`; finite measures are
/// bounded by their total mass.
pub fn clopen_values(mu: &ErgodicMeasure) -> ClopenValuesSet {
    let field = mu.field().clone();
    let gens: Vec<FieldElement> = mu
        .finite_vertices()
        .iter()
        .map(|&v| mu.weights()[v].finite().unwrap().clone())
        .collect();
    let group = FinGenSubgroup::from_generators(&field, &gens).expect("weights lie in the field of λ");
    let bound = mu.is_finite().then(|| mu.total_mass());
    ClopenValuesSet::new(group, Some(mu.lambda_element().clone()), mu.scale().clone(), bound)
        .expect("eigenvector weights span a λ-stable group")
}

/// Which condition of the group-like lemma fails on a finite truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupLikeReport {
    /// `(D ∩ [0, g]) + gℤ` closed under subtraction for every `g ∈ D`.
    pub condition3: bool,
    /// `a ≤ b` in `D` implies `b − a ∈ D`.
    pub condition4: bool,
    /// A failing instance for condition (4): `(a, b)` with `b − a ∉ D`.
    pub witness4: Option<(String, String)>,
}

impl GroupLikeReport {
    pub fn group_like(&self) -> bool {
        self.condition3 && self.condition4
    }
}

/// Finite truncation `D ⊆ [0, γ]` of a candidate group-like set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeFinite {
    values: BTreeSet<Rational>,
    gamma: Rational,
}

impl GroupLikeFinite {
    pub fn new(values: impl IntoIterator<Item = Rational>, gamma: Rational) -> Result<Self> {
        let mut values: BTreeSet<Rational> = values.into_iter().collect();
        values.insert(Rational::zero());
        if values.iter().any(|v| v.is_negative() || v > &gamma) {
            return Err(Error::Precondition("values must lie in [0, γ]".into()));
        }
        if !values.contains(&gamma) {
            return Err(Error::Precondition("γ must belong to the truncation".into()));
        }
        Ok(GroupLikeFinite { values, gamma })
    }

    pub fn values(&self) -> &BTreeSet<Rational> {
        &self.values
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }
}

/// Checks conditions (3) and (4) of the group-like lemma on the data.
pub fn is_group_like_truncated(d: &GroupLikeFinite) -> GroupLikeReport {
    let vals: Vec<&Rational> = d.values.iter().collect();
    let mut witness4 = None;
    'outer: for (i, a) in vals.iter().enumerate() {
        for b in &vals[i..] {
            let diff = *b - *a;
            if !d.values.contains(&diff) {
                witness4 = Some((a.to_string(), b.to_string()));
                break 'outer;
            }
        }
    }
    let mut condition3 = true;
    'g: for g in vals.iter().filter(|g| g.is_positive()) {
        let below: Vec<&&Rational> = vals.iter().filter(|v| **v <= *g).collect();
        for a in &below {
            for b in &below {
                let diff = **a - **b;
                let r = if diff.is_negative() { diff + *g } else { diff };
                if !d.values.contains(&r) {
                    condition3 = false;
                    break 'g;
                }
            }
        }
    }
    GroupLikeReport { condition3, condition4: witness4.is_none(), witness4 }
}

/// Products: the group generated by pairwise products with the combined
/// λ-closure and scale.
pub fn product_svalues(s1: &ClopenValuesSet, s2: &ClopenValuesSet) -> Result<ClopenValuesSet> {
    let field = match (s1.field.is_rational(), s2.field.is_rational()) {
        (_, true) => s1.field.clone(),
        (true, false) => s2.field.clone(),
        (false, false) if s1.field == s2.field => s1.field.clone(),
        _ => {
            return Err(Error::UnsupportedField(
                "products over two distinct irrational fields need a compositum".into(),
            ))
        }
    };
    let up = |x: &FieldElement| embed(x, &field).map(|e| e.expect("target field contains the source"));
    let b1: Vec<FieldElement> = s1.group.basis().iter().map(up).collect::<Result<_>>()?;
    let b2: Vec<FieldElement> = s2.group.basis().iter().map(up).collect::<Result<_>>()?;
    let prods: Vec<FieldElement> = b1.iter().flat_map(|a| b2.iter().map(move |b| a * b)).collect();
    let group = FinGenSubgroup::from_generators(&field, &prods)?;
    let lambda = match (&s1.lambda, &s2.lambda) {
        (Some(a), Some(b)) => Some(&up(a)? * &up(b)?),
        (Some(a), None) | (None, Some(a)) => Some(up(a)?),
        (None, None) => None,
    };
    let scale = &up(&s1.scale)? * &up(&s2.scale)?;
    let bound = match (&s1.bound, &s2.bound) {
        (Some(a), Some(b)) => Some(&up(a)? * &up(b)?),
        _ => None,
    };
    ClopenValuesSet::new(group, lambda, scale, bound)
}

/// Multiplicity of a prime in a reciprocal set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => write!(f, "∞"),
        }
    }
}

/// `Rec(D)` encoded by the maximal admissible exponent of each prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PrimeMultiset {
    pub entries: BTreeMap<u64, Multiplicity>,
}

impl PrimeMultiset {
    /// `n ∈ Rec(D)` iff every prime power of `n` is admissible.
    pub fn admits(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        factorize(n).into_iter().all(|(p, e)| match self.entries.get(&p) {
            Some(Multiplicity::Infinite) => true,
            Some(Multiplicity::Finite(k)) => e <= *k,
            None => false,
        })
    }

    /// `Rec(D)` is infinite exactly when some prime has infinite
    /// multiplicity (finitely many primes are ever recorded).
    pub fn is_infinite(&self) -> bool {
        self.entries.values().any(|m| *m == Multiplicity::Infinite)
    }
}

impl fmt::Display for PrimeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(p, m)| format!("{p}: {m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn factorize_big(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Unsupported("integer too large to factor".into()))?;
    Ok(factorize(n))
}

/// `Rec(D)` of a rational group-like set containing 1.
pub fn rec_set(d: &ClopenValuesSet) -> Result<PrimeMultiset> {
    if !d.field.is_rational() {
        return Err(Error::Unsupported("reciprocal sets need rational generators".into()));
    }
    let one = FieldElement::one(&d.field);
    if d.unbounded().contains(&one)? != Tri::Yes {
        return Err(Error::Precondition("1 must belong to D".into()));
    }
    let g = d
        .scaled_group()
        .rational_generator()
        .ok_or_else(|| Error::Unsupported("rank-one rational group expected".into()))?;
    let lam = match &d.lambda {
        Some(l) => l.as_rational().unwrap().to_integer().abs(),
        None => BigInt::one(),
    };
    // 1 ∈ D makes the numerator of g a unit, so G[D] = (1/v)ℤ[1/λ].
    let mut entries = BTreeMap::new();
    for (p, _) in factorize_big(&lam)? {
        entries.insert(p, Multiplicity::Infinite);
    }
    for (p, e) in factorize_big(g.denom())? {
        entries.entry(p).or_insert(Multiplicity::Finite(e));
    }
    Ok(PrimeMultiset { entries })
}

pub fn rec_member(d: &ClopenValuesSet, n: u64) -> Result<bool> {
    Ok(rec_set(d)?.admits(n))
}

/// Denominator primes of a rational.
pub fn denominator_primes(q: &Rational) -> Vec<u64> {
    factorize(q.denom().to_u64().unwrap_or(1)).into_iter().map(|(p, _)| p).collect()
}

/// `gcd` helper exposed for goodness criteria on integer data.
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |a, b| a.gcd(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::StationaryDiagram;
    use crate::exact::rat;
    use crate::measure::{ergodic_measure, tests::example1};
    use proptest::prelude::*;

    fn qf(n: i64, d: i64) -> FieldElement {
        FieldElement::from_rational(&NumberField::rationals(), rat(n, d))
    }

    fn dyadic() -> ClopenValuesSet {
        let d = StationaryDiagram::new(vec![vec![2]]).unwrap();
        clopen_values(&ergodic_measure(&d, 0).unwrap())
    }

    #[test]
    fn dyadic_presentation() {
        let s = dyadic();
        assert_eq!(s.group().basis(), vec![qf(1, 1)]);
        assert_eq!(s.bound(), Some(&qf(1, 1)));
        assert_eq!(s.contains(&qf(3, 8)).unwrap(), Tri::Yes);
        assert_eq!(s.contains(&qf(1, 3)).unwrap(), Tri::No);
        assert_eq!(s.contains(&qf(0, 1)).unwrap(), Tri::Yes);
        assert_eq!(s.contains(&qf(3, 2)).unwrap(), Tri::No);
    }

    #[test]
    fn example1_presentations() {
        let s3 = clopen_values(&ergodic_measure(&example1(3), 2).unwrap());
        assert_eq!(s3.group().basis(), vec![qf(1, 1)]);
        assert!(s3.bound().is_none());
        assert_eq!(s3.lambda(), Some(&qf(4, 1)));
        let s4 = clopen_values(&ergodic_measure(&example1(4), 2).unwrap());
        assert_eq!(s4.group().basis(), vec![qf(1, 3)]);
        assert_eq!(s4.lambda(), Some(&qf(5, 1)));
        // ⋃ 4^{-N} ℤ is the dyadic group.
        let z2 = ClopenValuesSet::rational(&[rat(1, 1)], Some(2)).unwrap();
        assert_eq!(s3.equals(&z2, 64).unwrap(), Tri::Yes);
        assert_eq!(s3.equals(&s4, 64).unwrap(), Tri::No);
    }

    #[test]
    fn truncated_group_like() {
        let d = GroupLikeFinite::new([0, 1, 2, 3, 4].iter().map(|&k| rat(k, 2)), rat(2, 1)).unwrap();
        assert!(is_group_like_truncated(&d).group_like());
        let bad = GroupLikeFinite::new([rat(1, 1), rat(5, 2)], rat(5, 2)).unwrap();
        let r = is_group_like_truncated(&bad);
        assert!(!r.condition4 && !r.condition3);
        let dy = GroupLikeFinite::new((0..=16).map(|k| rat(k, 16)), rat(1, 1)).unwrap();
        assert!(is_group_like_truncated(&dy).group_like());
    }

    #[test]
    fn products() {
        let a = ClopenValuesSet::rational(&[rat(1, 1)], Some(2)).unwrap();
        let b = ClopenValuesSet::rational(&[rat(1, 1)], Some(3)).unwrap();
        let six = ClopenValuesSet::rational(&[rat(1, 1)], Some(6)).unwrap();
        assert_eq!(product_svalues(&a, &b).unwrap().equals(&six, 64).unwrap(), Tri::Yes);
        let unit = ClopenValuesSet::rational(&[rat(1, 1)], None).unwrap();
        assert_eq!(product_svalues(&a, &unit).unwrap().equals(&a, 64).unwrap(), Tri::Yes);
        assert_eq!(product_svalues(&a, &a).unwrap().equals(&a, 64).unwrap(), Tri::Yes);
    }

    #[test]
    fn reciprocal_sets() {
        let d6 = ClopenValuesSet::rational(&[rat(1, 1)], Some(6)).unwrap();
        let r = rec_set(&d6).unwrap();
        assert_eq!(r.to_string(), "{2: ∞, 3: ∞}");
        assert!(rec_member(&d6, 12).unwrap());
        assert!(!rec_member(&d6, 10).unwrap());
        let d5 = ClopenValuesSet::rational(&[rat(1, 5)], None).unwrap();
        assert_eq!(rec_set(&d5).unwrap().to_string(), "{5: 1}");
        assert!(!rec_member(&d5, 25).unwrap());
        // 4, 6 ∈ Rec forces 12 ∈ Rec.
        let d12 = ClopenValuesSet::rational(&[rat(1, 4), rat(1, 6)], None).unwrap();
        assert!(rec_member(&d12, 4).unwrap() && rec_member(&d12, 6).unwrap());
        assert!(rec_member(&d12, 12).unwrap());
        assert!(!rec_set(&d12).unwrap().is_infinite());
    }

    #[test]
    fn scale_search() {
        let a = ClopenValuesSet::rational(&[rat(1, 1)], Some(2)).unwrap();
        let b = ClopenValuesSet::rational(&[rat(1, 3)], Some(2)).unwrap();
        let s = b.find_scale_to(&a, 64).unwrap();
        assert_eq!(s.scale, Some(rat(1, 3)));
        let c = ClopenValuesSet::rational(&[rat(1, 1)], Some(3)).unwrap();
        assert_eq!(a.find_scale_to(&c, 64).unwrap(), ScaleSearch { scale: None, complete: true });
    }

    proptest! {
        #[test]
        fn condition4_closure(a in 0i64..400, b in 0i64..400, e1 in 0u32..4, e2 in 0u32..4) {
            let s = clopen_values(&ergodic_measure(&example1(3), 2).unwrap());
            let x = qf(a, 4i64.pow(e1));
            let y = qf(b, 4i64.pow(e2));
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            prop_assert_eq!(s.contains(&lo).unwrap(), Tri::Yes);
            prop_assert_eq!(s.contains(&(&hi - &lo)).unwrap(), Tri::Yes);
        }

        #[test]
        fn scaling_covariance(a in 1i64..200, d in 1i64..50) {
            let mu = ergodic_measure(&example1(4), 2).unwrap();
            let s = clopen_values(&mu);
            let two = qf(2, 1);
            let s2 = clopen_values(&mu.rescaled(&two));
            let v = qf(a, d);
            prop_assert_eq!(s2.contains(&(&v * &two)).unwrap(), s.contains(&v).unwrap());
        }

        #[test]
        fn random_truncations_agree(n in 1i64..8, k in 1i64..5, drop in 0usize..40, perturb in any::<bool>()) {
            let gamma = rat(k, 1);
            let mut vals: Vec<Rational> = (0..=n * k).map(|j| rat(j, n)).collect();
            if perturb && vals.len() > 2 {
                let i = 1 + drop % (vals.len() - 2);
                vals.remove(i);
            }
            let d = GroupLikeFinite::new(vals, gamma).unwrap();
            let r = is_group_like_truncated(&d);
            prop_assert_eq!(r.condition3, r.condition4);
            // Independent oracle: a truncation is group-like iff it is the
            // full lattice generated by its least positive element.
            let step = d.values().iter().find(|v| v.is_positive()).unwrap().clone();
            let count = (d.gamma() / &step).to_integer();
            let lattice = d.gamma() == &(&step * Rational::from_integer(count.clone()))
                && BigInt::from(d.values().len() - 1) == count;
            prop_assert_eq!(r.condition4, lattice);
        }
    }
}
