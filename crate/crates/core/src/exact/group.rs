//! Finitely generated additive subgroups of a real number field and their
//! λ-closures `⋃_N λ^{-N} H`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, NumberField};
use super::Rational;
use crate::error::{Error, Result};

/// Default search bound for irrational λ-closure membership.
pub const DEFAULT_CLOSURE_BOUND: usize = 64;

/// Three-valued answer of a decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Undetermined,
}

impl Tri {
    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Undetermined,
        }
    }
}

/// Outcome of [`lambda_closure_member`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMembership {
    /// Minimal `N` with `λ^N x ∈ H`.
    Yes(usize),
    No,
    Undetermined,
}

impl ClosureMembership {
    pub fn tri(self) -> Tri {
        match self {
            ClosureMembership::Yes(_) => Tri::Yes,
            ClosureMembership::No => Tri::No,
            ClosureMembership::Undetermined => Tri::Undetermined,
        }
    }
}

/// A finitely generated ℤ-submodule of ℚ(λ), stored as the Hermite normal
/// form of its coordinate lattice. The basis is canonical: two generator
/// lists spanning the same module give identical bases.
#[derive(Clone, Debug)]
pub struct FinGenSubgroup {
    field: NumberField,
    generators: Vec<FieldElement>,
    /// Common denominator `D` with `D·H ⊆ ℤ^d`, minimal.
    den: BigInt,
    /// HNF rows of `D·H`, pivot columns strictly increasing.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn hnf(mut rows: Vec<Vec<BigInt>>, d: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..d {
        rows.retain(|r| r.iter().any(|c| !c.is_zero()));
        // Euclid on the entries of this column.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let &best = nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i == best {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[best][col]);
                let pr = rows[best].clone();
                for (a, b) in rows[i].iter_mut().zip(&pr) {
                    *a -= &q * b;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.remove(i);
            if r[col].is_negative() {
                r.iter_mut().for_each(|c| *c = -c.clone());
            }
            // Reduce earlier rows into [0, pivot).
            for prev in out.iter_mut() {
                let prev: &mut Vec<BigInt> = prev;
                let q = prev[col].div_floor(&r[col]);
                if !q.is_zero() {
                    for (a, b) in prev.iter_mut().zip(&r) {
                        *a -= &q * b;
                    }
                }
            }
            out.push(r);
            pivots.push(col);
        }
    }
    (out, pivots)
}

impl FinGenSubgroup {
    /// `G[gens]`, the additive group generated by `gens`.
    pub fn from_generators(field: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        let d = field.degree();
        for g in gens {
            if g.field() != field {
                return Err(Error::Dimension { expected: d, got: g.field().degree() });
            }
        }
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.integer_coords().0));
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        // The lcm of generator denominators is already the minimal D with
        // D·H ⊆ ℤ^d, so the scaled HNF is canonical.
        let (rows, pivots) = hnf(rows, d);
        Ok(FinGenSubgroup { field: field.clone(), generators: gens.to_vec(), den, rows, pivots })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical ℤ-basis.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|r| {
                let coords = r.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect();
                FieldElement::from_coords(&self.field, coords).expect("basis row has field degree")
            })
            .collect()
    }

    fn scaled(&self, x: &FieldElement) -> Vec<Rational> {
        let den = Rational::from_integer(self.den.clone());
        x.coords().iter().map(|c| c * &den).collect()
    }

    /// Subtracts `floor` multiples of the basis rows in pivot order. The
    /// residue has each pivot coordinate in `[0, pivot)`; it is zero exactly
    /// for members and canonical on each coset inside the ℚ-span.
    fn residue(&self, x: &FieldElement) -> Vec<Rational> {
        let mut v = self.scaled(x);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let piv = Rational::from_integer(row[p].clone());
            let q = (&v[p] / &piv).floor();
            if !q.is_zero() {
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &q * Rational::from_integer(b.clone());
                }
            }
        }
        v
    }

    /// Exact membership in the ℤ-span.
    pub fn contains(&self, x: &FieldElement) -> bool {
        x.field() == &self.field && self.residue(x).iter().all(|c| c.is_zero())
    }

    /// Whether `x` lies in the ℚ-span of the module.
    pub fn in_rational_span(&self, x: &FieldElement) -> bool {
        let mut v = self.scaled(x);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = &v[p] / Rational::from_integer(row[p].clone());
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &q * Rational::from_integer(b.clone());
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// Canonical coset representative modulo the module.
    pub fn reduce(&self, x: &FieldElement) -> FieldElement {
        let den = Rational::from_integer(self.den.clone());
        let coords = self.residue(x).into_iter().map(|c| c / &den).collect();
        FieldElement::from_coords(&self.field, coords).expect("same field")
    }

    /// `c·H` for a nonzero field element `c`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        let gens: Vec<FieldElement> = self.basis().iter().map(|b| b * c).collect();
        Self::from_generators(&self.field, &gens).expect("same field")
    }

    /// Whether `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Whether `λ·H ⊆ H`.
    pub fn is_lambda_stable(&self, lambda: &FieldElement) -> bool {
        self.basis().iter().all(|b| self.contains(&(b * lambda)))
    }

    /// Positive generator `h` of a rank-one rational module `hℤ`.
    pub fn rational_generator(&self) -> Option<Rational> {
        if !self.field.is_rational() || self.rows.len() != 1 {
            return None;
        }
        Some(Rational::new(self.rows[0][0].clone(), self.den.clone()))
    }
}

impl PartialEq for FinGenSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.rows == other.rows
    }
}

impl Eq for FinGenSubgroup {}

/// Decides whether `λ^N x ∈ H` for some `N ≥ 0`.
///
/// For rational λ the answer is exact. Otherwise the cosets `λ^N x + H`
/// are walked until one is zero or one repeats; a repeat proves
/// non-membership. Past `bound` steps the answer is undetermined.
pub fn lambda_closure_member(
    h: &FinGenSubgroup,
    lambda: &FieldElement,
    x: &FieldElement,
    bound: usize,
) -> Result<ClosureMembership> {
    if lambda.field() != h.field() || x.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if !h.is_lambda_stable(lambda) {
        return Err(Error::Precondition("λ·H is not contained in H".into()));
    }
    if x.is_zero() {
        return Ok(ClosureMembership::Yes(0));
    }
    if h.is_zero() || !h.in_rational_span(x) {
        return Ok(ClosureMembership::No);
    }
    if let (Some(hgen), Some(l)) = (h.rational_generator(), lambda.as_rational()) {
        if l.is_zero() {
            return Ok(ClosureMembership::No);
        }
        let t = x.as_rational().expect("rational field") / hgen;
        let mut v = t.denom().clone();
        // λ·hℤ ⊆ hℤ forces λ to be an integer.
        let lam = l.to_integer().abs();
        let mut n = 0;
        while !v.is_one() {
            let g = v.gcd(&lam);
            if g.is_one() {
                return Ok(ClosureMembership::No);
            }
            v /= g;
            n += 1;
        }
        return Ok(ClosureMembership::Yes(n));
    }
    let mut seen = HashSet::new();
    let mut y = x.clone();
    for n in 0..=bound {
        let r = h.reduce(&y);
        if r.is_zero() {
            return Ok(ClosureMembership::Yes(n));
        }
        if !seen.insert(r.clone()) {
            return Ok(ClosureMembership::No);
        }
        y = &r * lambda;
    }
    Ok(ClosureMembership::Undetermined)
}

/// Whether `⋃ λ1^{-N} H1 = ⋃ λ2^{-N} H2`.
pub fn closure_equal(
    h1: &FinGenSubgroup,
    l1: &FieldElement,
    h2: &FinGenSubgroup,
    l2: &FieldElement,
    bound: usize,
) -> Result<Tri> {
    let mut acc = Tri::Yes;
    for (ha, la, hb, lb) in [(h1, l1, h2, l2), (h2, l2, h1, l1)] {
        let la_inv = la.inverse().ok_or_else(|| Error::Precondition("λ must be nonzero".into()))?;
        // C_a ⊆ C_b needs H_a ⊆ C_b and C_b stable under λ_a^{-1}.
        let hb_basis = hb.basis();
        let probes = ha.basis().into_iter().chain(hb_basis.iter().map(|b| b * &la_inv));
        for p in probes {
            acc = acc.and(lambda_closure_member(hb, lb, &p, bound)?.tri());
            if acc == Tri::No {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

/// Result of [`find_scale`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleSearch {
    /// A positive rational `c` with `G1·c = G2`, when found.
    pub scale: Option<Rational>,
    /// Whether a `None` is a proof that no rational scale exists.
    pub complete: bool,
}

/// Searches a positive rational `c` with `c·C1 = C2`, where `Ci` is the
/// λ-closure of `Hi` (or `Hi` itself when `lambda` is `None`).
///
/// Candidates are ratios of basis elements. For rank-one rational modules
/// the candidate set is exhaustive up to λ-units, so `None` is a proof.
pub fn find_scale(
    h1: &FinGenSubgroup,
    h2: &FinGenSubgroup,
    lambdas: Option<(&FieldElement, &FieldElement)>,
    bound: usize,
) -> Result<ScaleSearch> {
    if h1.field() != h2.field() {
        return Err(Error::FieldMismatch);
    }
    let field = h1.field().clone();
    let complete = field.is_rational() && h1.rank() <= 1 && h2.rank() <= 1;
    if h1.is_zero() || h2.is_zero() {
        let ok = h1.is_zero() && h2.is_zero();
        return Ok(ScaleSearch { scale: ok.then(Rational::one), complete: true });
    }
    let mut candidates: Vec<Rational> = Vec::new();
    for a in h1.basis() {
        for b in h2.basis() {
            if let Some(r) = b.div(&a).and_then(|q| q.as_rational()) {
                let r = r.abs();
                if !r.is_zero() && !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    for c in candidates {
        let ce = FieldElement::from_rational(&field, c.clone());
        let scaled = h1.scale(&ce);
        let verdict = match lambdas {
            None => {
                if scaled == *h2 {
                    Tri::Yes
                } else {
                    Tri::No
                }
            }
            Some((l1, l2)) => closure_equal(&scaled, l1, h2, l2, bound)?,
        };
        if verdict == Tri::Yes {
            return Ok(ScaleSearch { scale: Some(c), complete: true });
        }
    }
    Ok(ScaleSearch { scale: None, complete })
}
