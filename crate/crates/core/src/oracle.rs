//! Brute-force ground truth at desk scale.
//!
//! Every search here works on exact integer coordinates: the finite cylinder
//! weights at one level are brought to a common denominator, so sums and
//! equality tests are integer vector operations. Searches report
//! [`SearchOutcome::Inconclusive`] when the budget stops them; a
//! [`SearchOutcome::NotFound`] means the whole budgeted space was scanned.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diagram::{cylinders_at_level, path_counts, ClopenSet, Cylinder, Diagram};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, NumberField, Rational};
use crate::measure::{clopen_measure, LevelMeasure, Value};

/// Limits for exhaustive operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_level: usize,
    pub max_cells: u64,
    pub value_bound: Rational,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_level: 5, max_cells: 1_000_000, value_bound: Rational::from_integer(2.into()) }
    }
}

impl EnumerationBudget {
    pub fn with_level(max_level: usize) -> Self {
        EnumerationBudget { max_level, ..Self::default() }
    }

    fn check(&self) -> Result<()> {
        if self.max_cells == 0 || !self.value_bound.is_positive() {
            return Err(Error::Precondition("budget limits must be positive".into()));
        }
        Ok(())
    }
}

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Inconclusive,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Finite clopen values, possibly truncated by the budget.
#[derive(Clone, Debug)]
pub struct ValueEnumeration {
    pub values: Vec<FieldElement>,
    pub partial: bool,
}

/// Field elements scaled to integer coordinate vectors by one common
/// denominator.
struct Lattice {
    denom: BigInt,
}

impl Lattice {
    fn new(items: &[&FieldElement]) -> Self {
        let mut denom = BigInt::one();
        for x in items {
            for c in x.coords() {
                denom = denom.lcm(c.denom());
            }
        }
        Lattice { denom }
    }

    fn ints(&self, x: &FieldElement) -> Option<Vec<i128>> {
        x.coords()
            .iter()
            .map(|c| (c.numer() * (&self.denom / c.denom())).to_i128())
            .collect()
    }

    fn element(&self, field: &NumberField, v: &[i128]) -> FieldElement {
        let coords = v.iter().map(|&k| Rational::new(BigInt::from(k), self.denom.clone())).collect();
        FieldElement::from_coords(field, coords).expect("dimension matches the field")
    }
}

fn add_vec(a: &[i128], b: &[i128], k: i128) -> Option<Vec<i128>> {
    a.iter().zip(b).map(|(x, y)| y.checked_mul(k).and_then(|t| x.checked_add(t))).collect()
}

/// Per-vertex data of a clopen set at one level: the cylinders ending at
/// each vertex of positive finite weight, with that weight.
struct Buckets {
    entries: Vec<(usize, FieldElement, Vec<Cylinder>)>,
}

impl Buckets {
    fn of<M: LevelMeasure + ?Sized>(mu: &M, set: &ClopenSet) -> Self {
        let mut by_vertex: BTreeMap<usize, Vec<Cylinder>> = BTreeMap::new();
        for c in set.cylinders() {
            by_vertex.entry(c.terminal()).or_default().push(c.clone());
        }
        let entries = by_vertex
            .into_iter()
            .filter_map(|(v, cyls)| match mu.level_weight(set.level(), v) {
                Value::Finite(w) if !w.is_zero() => Some((v, w, cyls)),
                _ => None,
            })
            .collect();
        Buckets { entries }
    }
}

/// Finite measures of all unions of level-`max_level` cylinders (which
/// covers every coarser level), truncated at the budget's value bound.
pub fn enumerate_clopen_values<M: LevelMeasure + ?Sized>(mu: &M, budget: &EnumerationBudget) -> Result<ValueEnumeration> {
    budget.check()?;
    let d = mu.diagram();
    let level = budget.max_level;
    let field = mu.field().clone();
    let counts = path_counts(d, level);
    let bound = FieldElement::from_rational(&field, budget.value_bound.clone());
    let weights: Vec<(FieldElement, u64)> = (0..d.width(level))
        .filter_map(|v| match mu.level_weight(level, v) {
            Value::Finite(w) if !w.is_zero() && !counts[v].is_zero() => {
                Some((w, counts[v].to_u64().unwrap_or(u64::MAX)))
            }
            _ => None,
        })
        .collect();
    let refs: Vec<&FieldElement> = weights.iter().map(|w| &w.0).chain([&bound]).collect();
    let lat = Lattice::new(&refs);
    if field.is_rational() {
        return enumerate_rational(&field, &lat, &weights, &bound, budget);
    }
    let mut partial = false;
    let zero = vec![0i128; field.degree()];
    let mut values: BTreeSet<Vec<i128>> = BTreeSet::from([zero]);
    for (w, n) in &weights {
        let step = lat.ints(w).ok_or_else(overflow)?;
        let mut next = values.clone();
        for base in &values {
            let mut cur = base.clone();
            for _ in 0..*n {
                cur = add_vec(&cur, &step, 1).ok_or_else(overflow)?;
                if lat.element(&field, &cur) > bound {
                    break;
                }
                next.insert(cur.clone());
                if next.len() as u64 > budget.max_cells {
                    partial = true;
                    break;
                }
            }
        }
        values = next;
        if partial {
            break;
        }
    }
    let mut out: Vec<FieldElement> = values.iter().map(|v| lat.element(&field, v)).collect();
    out.sort();
    Ok(ValueEnumeration { values: out, partial })
}

fn overflow() -> Error {
    Error::Unsupported("integer coordinates overflow the search representation".into())
}

fn enumerate_rational(
    field: &NumberField,
    lat: &Lattice,
    weights: &[(FieldElement, u64)],
    bound: &FieldElement,
    budget: &EnumerationBudget,
) -> Result<ValueEnumeration> {
    let top = lat.ints(bound).ok_or_else(overflow)?[0];
    let size = top as u64 + 1;
    if size > budget.max_cells.saturating_mul(64) {
        return Err(Error::EnumerationTooLarge { count: size.to_string(), cap: budget.max_cells });
    }
    let top = top as usize;
    let mut reach = vec![false; top + 1];
    reach[0] = true;
    for (w, n) in weights {
        let step = lat.ints(w).ok_or_else(overflow)?[0] as usize;
        // Bounded multiplicity: track how many copies were used to reach
        // each value in this round.
        let mut used = vec![u64::MAX; top + 1];
        for (i, r) in reach.iter().enumerate() {
            if *r {
                used[i] = 0;
            }
        }
        for i in step..=top {
            if used[i] == u64::MAX && used[i - step] < *n {
                used[i] = used[i - step] + 1;
            }
        }
        for (i, u) in used.iter().enumerate() {
            reach[i] = *u != u64::MAX;
        }
    }
    let values = reach
        .iter()
        .enumerate()
        .filter(|(_, r)| **r)
        .map(|(i, _)| lat.element(field, &[i as i128]))
        .collect();
    Ok(ValueEnumeration { values, partial: false })
}

type Combo = Vec<u64>;

/// Enumerates bounded count vectors over `items`, pruning sums beyond
/// `target` when the field is ordered by integers (degree one).
fn half_sums(
    items: &[(Vec<i128>, u64)],
    target: &[i128],
    prune: bool,
    cap: u64,
    seen: &mut u64,
) -> Option<Vec<(Vec<i128>, Combo)>> {
    let dim = target.len();
    let mut out = vec![(vec![0i128; dim], Vec::new())];
    for (step, n) in items {
        let mut next = Vec::new();
        for (sum, combo) in &out {
            let mut cur = sum.clone();
            for k in 0..=*n {
                if k > 0 {
                    cur = add_vec(&cur, step, 1)?;
                }
                if prune && cur[0] > target[0] {
                    break;
                }
                let mut c = combo.clone();
                c.push(k);
                next.push((cur.clone(), c));
                *seen += 1;
                if *seen > cap {
                    return None;
                }
            }
        }
        out = next;
    }
    Some(out)
}

/// Counts `c_v ≤ n_v` with `Σ c_v w_v = target`, by meet in the middle.
/// `Ok(None)` is an exhaustive miss; `Err(())` means the cap was hit.
fn bounded_subset_sum(
    items: &[(Vec<i128>, u64)],
    target: &[i128],
    prune: bool,
    cap: u64,
) -> std::result::Result<Option<Combo>, ()> {
    let mid = items.len() / 2;
    let mut seen = 0;
    let left = half_sums(&items[..mid], target, prune, cap, &mut seen).ok_or(())?;
    let right = half_sums(&items[mid..], target, prune, cap, &mut seen).ok_or(())?;
    let mut table: HashMap<&[i128], &Combo> = HashMap::new();
    for (s, c) in &left {
        table.entry(s.as_slice()).or_insert(c);
    }
    for (s, c) in &right {
        let need: Vec<i128> = target.iter().zip(s).map(|(t, x)| t - x).collect();
        if let Some(l) = table.get(need.as_slice()) {
            let mut combo = (*l).clone();
            combo.extend(c);
            return Ok(Some(combo));
        }
    }
    Ok(None)
}

/// Number of cylinders of `set` once refined to `level`, without
/// enumerating them.
pub fn refined_size<D: Diagram + ?Sized>(d: &D, set: &ClopenSet, level: usize) -> BigUint {
    let mut h: Vec<BigUint> = vec![BigUint::zero(); d.width(set.level())];
    for c in set.cylinders() {
        h[c.terminal()] += 1u32;
    }
    for n in set.level() + 1..=level {
        let f = d.incidence(n);
        h = f.iter().map(|row| row.iter().zip(&h).map(|(&e, x)| x * e).sum()).collect();
    }
    h.iter().sum()
}

/// A clopen `W ⊆ V` with `μ(W) = w`, preferring the coarsest level.
pub fn subset_search<M: LevelMeasure + ?Sized>(
    mu: &M,
    v: &ClopenSet,
    w: &FieldElement,
    budget: &EnumerationBudget,
) -> Result<SearchOutcome<ClopenSet>> {
    budget.check()?;
    if w.sign() < 0 {
        return Err(Error::Precondition("target value must be nonnegative".into()));
    }
    if let Value::Finite(total) = clopen_measure(mu, v) {
        if w > &total {
            return Err(Error::Precondition("target exceeds μ(V)".into()));
        }
    }
    if w.is_zero() {
        return Ok(SearchOutcome::Found(ClopenSet::empty(v.level())));
    }
    let d = mu.diagram();
    let field = mu.field().clone();
    let prune = field.is_rational();
    let mut inconclusive = false;
    for level in v.level()..=budget.max_level.max(v.level()) {
        if refined_size(d, v, level) > BigUint::from(budget.max_cells) {
            inconclusive = true;
            break;
        }
        let set = v.refine(d, level);
        let buckets = Buckets::of(mu, &set);
        let mut refs: Vec<&FieldElement> = buckets.entries.iter().map(|e| &e.1).collect();
        refs.push(w);
        let lat = Lattice::new(&refs);
        let target = lat.ints(w).ok_or_else(overflow)?;
        let items: Vec<(Vec<i128>, u64)> = buckets
            .entries
            .iter()
            .map(|(_, wt, cyls)| Ok((lat.ints(wt).ok_or_else(overflow)?, cyls.len() as u64)))
            .collect::<Result<_>>()?;
        match bounded_subset_sum(&items, &target, prune, budget.max_cells) {
            Ok(Some(combo)) => {
                let chosen: Vec<Cylinder> = buckets
                    .entries
                    .iter()
                    .zip(&combo)
                    .flat_map(|((_, _, cyls), &k)| cyls[..k as usize].iter().cloned())
                    .collect();
                let mut out = ClopenSet::normalize(d, &chosen);
                if out.level() < level {
                    out = out.refine(d, level);
                }
                return Ok(SearchOutcome::Found(out));
            }
            Ok(None) => {}
            Err(()) => inconclusive = true,
        }
    }
    Ok(if inconclusive { SearchOutcome::Inconclusive } else { SearchOutcome::NotFound })
}

/// A clopen partition of `U` with the prescribed part measures, built
/// greedily in the given order; the last part takes the remainder.
pub fn refinability_check<M: LevelMeasure + ?Sized>(
    mu: &M,
    u: &ClopenSet,
    parts: &[FieldElement],
    budget: &EnumerationBudget,
) -> Result<SearchOutcome<Vec<ClopenSet>>> {
    let Value::Finite(total) = clopen_measure(mu, u) else {
        return Err(Error::Precondition("U must have finite measure".into()));
    };
    let mut sum = FieldElement::zero(mu.field());
    for p in parts {
        if p.sign() < 0 {
            return Err(Error::Precondition("parts must be nonnegative".into()));
        }
        sum = &sum + p;
    }
    if sum != total || parts.is_empty() {
        return Err(Error::Precondition("parts must sum to μ(U)".into()));
    }
    let d = mu.diagram();
    let mut rest = u.clone();
    let mut out = Vec::with_capacity(parts.len());
    for p in &parts[..parts.len() - 1] {
        match subset_search(mu, &rest, p, budget)? {
            SearchOutcome::Found(w) => {
                rest = rest.difference(&w, d);
                out.push(w);
            }
            SearchOutcome::NotFound => return Ok(SearchOutcome::NotFound),
            SearchOutcome::Inconclusive => return Ok(SearchOutcome::Inconclusive),
        }
    }
    out.push(rest);
    Ok(SearchOutcome::Found(out))
}

/// `μ(T⁻¹U) = μ(U)` for every cylinder `U` of level `≤ depth`, where `T`
/// is a level-preserving bijection on cylinders given by `successor`.
pub fn verify_invariance<D, S, F>(d: &D, successor: S, measure: F, depth: usize, cap: u64) -> Result<bool>
where
    D: Diagram + ?Sized,
    S: Fn(&Cylinder) -> Cylinder,
    F: Fn(&Cylinder) -> Value,
{
    for level in 0..=depth {
        let cyls = cylinders_at_level(d, level, cap)?;
        let mut preimage: HashMap<Cylinder, Cylinder> = HashMap::with_capacity(cyls.len());
        for c in &cyls {
            let img = successor(c);
            if img.level() != level || preimage.insert(img, c.clone()).is_some() {
                return Ok(false);
            }
        }
        for c in &cyls {
            match preimage.get(c) {
                Some(p) if measure(p) == measure(c) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
