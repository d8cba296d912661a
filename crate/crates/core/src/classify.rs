//! Goodness, homeomorphism and weak homeomorphism verdicts, and
//! finite-depth back-and-forth certificates.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::construct::{AbstractGoodMeasure, OdometerMeasure};
use crate::diagram::{cylinders_ending_at, path_counts, ClopenSet, Cylinder, Diagram};
use crate::error::{Error, Result};
use crate::exact::{lambda_closure_member, ClosureMembership, FieldElement, FinGenSubgroup, Rational, Tri};
use crate::measure::{clopen_measure, DefectiveProfile, ErgodicMeasure, LevelMeasure, ProfileKind, Value};
use crate::oracle::{subset_search, EnumerationBudget, SearchOutcome};
use crate::svalues::{clopen_values, ClopenValuesSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Goodness {
    Good,
    Bad,
    Undetermined,
}

impl Goodness {
    pub fn tri(self) -> Tri {
        match self {
            Goodness::Good => Tri::Yes,
            Goodness::Bad => Tri::No,
            Goodness::Undetermined => Tri::Undetermined,
        }
    }
}

impl std::fmt::Display for Goodness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Goodness::Good => "good",
            Goodness::Bad => "bad",
            Goodness::Undetermined => "undetermined",
        })
    }
}

/// A cylinder `V` and a value `w ∈ S(μ)` below `μ(V)` that no clopen
/// subset of `V` attains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadWitness {
    pub cylinder: Cylinder,
    pub cylinder_measure: FieldElement,
    pub value: FieldElement,
    /// A cylinder of measure `value`, ending at `vertex`.
    pub realizer: Cylinder,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessVerdict {
    pub verdict: Goodness,
    pub witness: Option<BadWitness>,
    /// For each vertex of `B_f` outside `α`, the least `R` with
    /// `λ^R x_v ∈ H(x_α)` when one was found.
    pub exponents: Vec<(usize, Option<usize>)>,
}

/// Goodness of an ergodic measure: `μ` is good iff `λ^R x_v` lies in the
/// group generated by the weights on `α` for every other vertex `v` of
/// `B_f` and some `R`.
pub fn is_good(mu: &ErgodicMeasure, bound: usize) -> GoodnessVerdict {
    let field = mu.field();
    let alpha = mu.alpha_vertices();
    let gens: Vec<FieldElement> = alpha.iter().map(|&v| mu.weights()[v].finite().unwrap().clone()).collect();
    let h = FinGenSubgroup::from_generators(field, &gens).expect("weights lie in the field of λ");
    let lam = mu.lambda_element();
    let mut verdict = Goodness::Good;
    let mut exponents = Vec::new();
    let mut bad_vertex = None;
    for v in mu.finite_vertices() {
        if alpha.contains(&v) {
            continue;
        }
        let x = mu.weights()[v].finite().unwrap();
        match lambda_closure_member(&h, lam, x, bound).expect("λ·H ⊆ H for eigenvector weights") {
            ClosureMembership::Yes(r) => exponents.push((v, Some(r))),
            ClosureMembership::No => {
                exponents.push((v, None));
                verdict = Goodness::Bad;
                bad_vertex.get_or_insert(v);
            }
            ClosureMembership::Undetermined => {
                exponents.push((v, None));
                if verdict == Goodness::Good {
                    verdict = Goodness::Undetermined;
                }
            }
        }
    }
    let witness = bad_vertex.map(|v| bad_witness(mu, v));
    GoodnessVerdict { verdict, witness, exponents }
}

fn bad_witness(mu: &ErgodicMeasure, v: usize) -> BadWitness {
    let d = mu.stationary();
    let a = mu.alpha_vertices()[0];
    let cylinder = cylinders_ending_at(d, 1, a, u64::MAX).unwrap().remove(0);
    let cylinder_measure = mu.level_weight(1, a).finite().unwrap().clone();
    let mut m = 1;
    let value = loop {
        let w = mu.level_weight(m, v).finite().unwrap().clone();
        if w < cylinder_measure {
            break w;
        }
        m += 1;
    };
    let realizer = first_cylinder_ending_at(d, m, v);
    BadWitness { cylinder, cylinder_measure, value, realizer, vertex: v }
}

/// Lexicographically first cylinder of length `level` ending at `v`,
/// without enumerating the others.
fn first_cylinder_ending_at<D: Diagram + ?Sized>(d: &D, level: usize, v: usize) -> Cylinder {
    let mut steps = Vec::with_capacity(level);
    let mut cur = v;
    for n in (1..=level).rev() {
        steps.push((cur, 0));
        cur = d.incidence(n)[cur].iter().position(|&e| e > 0).expect("incoming edge");
    }
    steps.reverse();
    Cylinder { start: cur, steps }
}

/// A measure together with the data the classification theorems use.
#[derive(Clone, Debug)]
pub enum MeasureObject {
    Ergodic(ErgodicMeasure),
    Odometer(OdometerMeasure),
    Abstract(AbstractGoodMeasure),
}

impl MeasureObject {
    pub fn goodness(&self, bound: usize) -> Goodness {
        match self {
            MeasureObject::Ergodic(m) => is_good(m, bound).verdict,
            // Both constructions produce good measures.
            MeasureObject::Odometer(_) | MeasureObject::Abstract(_) => Goodness::Good,
        }
    }

    pub fn svalues(&self) -> ClopenValuesSet {
        match self {
            MeasureObject::Ergodic(m) => clopen_values(m),
            MeasureObject::Odometer(m) => m.svalues().clone(),
            MeasureObject::Abstract(a) => a.svalues.clone(),
        }
    }

    pub fn profile(&self) -> Result<DefectiveProfile> {
        match self {
            MeasureObject::Ergodic(m) => m.defective_profile(),
            MeasureObject::Odometer(m) => Ok(m.defective_profile()),
            MeasureObject::Abstract(a) => Ok(a.profile.clone()),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            MeasureObject::Ergodic(m) => m.is_finite(),
            _ => false,
        }
    }

    /// Cylinder-level access, when the object lives on a diagram.
    pub fn level_measure(&self) -> Option<&dyn LevelMeasure> {
        match self {
            MeasureObject::Ergodic(m) => Some(m),
            MeasureObject::Odometer(m) => Some(m),
            MeasureObject::Abstract(_) => None,
        }
    }

    fn same_presentation(&self, other: &Self) -> bool {
        match (self, other) {
            (MeasureObject::Ergodic(a), MeasureObject::Ergodic(b)) => {
                a.stationary() == b.stationary() && a.alpha() == b.alpha() && a.scale() == b.scale()
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomeoStatus {
    Homeomorphic,
    NotHomeomorphic,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomeoReason {
    SvaluesMismatch,
    DefectiveProfileMismatch,
    GoodnessMismatch,
    CriteriaMet,
    /// Same diagram, class and scale: the identity map.
    Identical,
    /// Both measures bad; `S(μ)` is not a complete invariant there.
    BothBad,
    /// Some ingredient (goodness, set equality or profile) is undetermined.
    Inconclusive,
}

impl std::fmt::Display for HomeoReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HomeoReason::SvaluesMismatch => "clopen values mismatch",
            HomeoReason::DefectiveProfileMismatch => "defective profile mismatch",
            HomeoReason::GoodnessMismatch => "goodness mismatch",
            HomeoReason::CriteriaMet => "criteria met",
            HomeoReason::Identical => "identical measures",
            HomeoReason::BothBad => "both measures bad",
            HomeoReason::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoVerdict {
    pub verdict: HomeoStatus,
    pub reason: HomeoReason,
}

impl HomeoVerdict {
    fn new(verdict: HomeoStatus, reason: HomeoReason) -> Self {
        HomeoVerdict { verdict, reason }
    }
}

fn profiles_match(a: &Result<DefectiveProfile>, b: &Result<DefectiveProfile>) -> Tri {
    match (a, b) {
        (Ok(p), Ok(q)) if p.kind != ProfileKind::Unknown && q.kind != ProfileKind::Unknown => {
            if p.kind == q.kind && p.mass_class == q.mass_class {
                Tri::Yes
            } else {
                Tri::No
            }
        }
        _ => Tri::Undetermined,
    }
}

/// Homeomorphism verdict for two non-defective measures.
pub fn homeomorphic(mu: &MeasureObject, nu: &MeasureObject, bound: usize) -> Result<HomeoVerdict> {
    use HomeoReason::*;
    use HomeoStatus::*;
    if mu.same_presentation(nu) {
        return Ok(HomeoVerdict::new(Homeomorphic, Identical));
    }
    let (g1, g2) = (mu.goodness(bound), nu.goodness(bound));
    if matches!((g1, g2), (Goodness::Good, Goodness::Bad) | (Goodness::Bad, Goodness::Good)) {
        return Ok(HomeoVerdict::new(NotHomeomorphic, GoodnessMismatch));
    }
    let same_s = mu.svalues().equals(&nu.svalues(), bound)?;
    if same_s == Tri::No {
        return Ok(HomeoVerdict::new(NotHomeomorphic, SvaluesMismatch));
    }
    let same_profile = profiles_match(&mu.profile(), &nu.profile());
    if same_profile == Tri::No {
        return Ok(HomeoVerdict::new(NotHomeomorphic, DefectiveProfileMismatch));
    }
    if g1 == Goodness::Bad && g2 == Goodness::Bad {
        return Ok(HomeoVerdict::new(Undetermined, BothBad));
    }
    if g1 == Goodness::Good && g2 == Goodness::Good && same_s == Tri::Yes && same_profile == Tri::Yes {
        return Ok(HomeoVerdict::new(Homeomorphic, CriteriaMet));
    }
    Ok(HomeoVerdict::new(Undetermined, Inconclusive))
}

/// `c > 0` with `S(μ) = c·S(ν)` and matching profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakVerdict {
    pub verdict: HomeoStatus,
    pub scale: Option<Rational>,
}

pub fn weakly_homeomorphic(mu: &MeasureObject, nu: &MeasureObject, bound: usize) -> Result<WeakVerdict> {
    let undetermined = WeakVerdict { verdict: HomeoStatus::Undetermined, scale: None };
    let no = WeakVerdict { verdict: HomeoStatus::NotHomeomorphic, scale: None };
    match (mu.goodness(bound), nu.goodness(bound)) {
        (Goodness::Good, Goodness::Good) => {}
        (Goodness::Good, Goodness::Bad) | (Goodness::Bad, Goodness::Good) => return Ok(no),
        _ => return Ok(undetermined),
    }
    match profiles_match(&mu.profile(), &nu.profile()) {
        Tri::No => return Ok(no),
        Tri::Undetermined => return Ok(undetermined),
        Tri::Yes => {}
    }
    let (s_mu, s_nu) = (mu.svalues(), nu.svalues());
    if s_mu.equals(&s_nu, bound)? == Tri::Yes {
        return Ok(WeakVerdict { verdict: HomeoStatus::Homeomorphic, scale: Some(Rational::from_integer(1.into())) });
    }
    let found = s_mu.find_scale_to(&s_nu, bound)?;
    Ok(match found.scale {
        Some(c) => WeakVerdict { verdict: HomeoStatus::Homeomorphic, scale: Some(c) },
        None if found.complete => no,
        None => undetermined,
    })
}

/// Whether a good order exists: exactly when the defective set is a
/// single point.
pub fn good_order_exists(m: &MeasureObject) -> Result<Tri> {
    if m.is_finite() {
        return Err(Error::NotApplicable("good orders are characterized for infinite measures".into()));
    }
    Ok(match m.profile()?.kind {
        ProfileKind::Unknown => Tri::Undetermined,
        ProfileKind::SinglePoint => Tri::Yes,
        _ => Tri::No,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forth,
    Back,
}

/// A matched pair of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub x: ClopenSet,
    pub y: ClopenSet,
    pub measure: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub direction: Option<Direction>,
    pub cells: Vec<Cell>,
}

/// Finite prefix of the back-and-forth construction: stage `j` refines
/// stage `j − 1`, and `ρ_j` maps `cells[i].x` to `cells[i].y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackForthCertificate {
    pub depth: usize,
    pub stages: Vec<Stage>,
}

fn failure(stage: usize, detail: impl Into<String>) -> Error {
    Error::CertificateFailure { stage, detail: detail.into() }
}

fn label(set: &ClopenSet, d: &dyn Diagram) -> Vec<String> {
    set.coarsen(d).iter().map(Cylinder::label).collect()
}

/// Splits the cells of one side along the level-`level` cylinders and
/// matches every piece inside the partner cell on the other side.
fn refine_and_match(
    src: &dyn LevelMeasure,
    dst: &dyn LevelMeasure,
    cells: &[(ClopenSet, ClopenSet)],
    level: usize,
    stage: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<(ClopenSet, ClopenSet)>> {
    let ds = src.diagram();
    let dd = dst.diagram();
    let mut out = Vec::new();
    for (a, b) in cells {
        let fine = a.refine(ds, a.level().max(level));
        let mut groups: Vec<(Cylinder, Vec<Cylinder>)> = Vec::new();
        for c in fine.cylinders() {
            let prefix = Cylinder { start: c.start, steps: c.steps[..level.min(c.level())].to_vec() };
            match groups.last_mut() {
                Some((p, v)) if *p == prefix => v.push(c.clone()),
                _ => groups.push((prefix, vec![c.clone()])),
            }
        }
        let pieces: Vec<(ClopenSet, Value)> = groups
            .into_iter()
            .map(|(_, cyls)| {
                let set = ClopenSet::normalize(ds, &cyls);
                let m = clopen_measure(src, &set);
                (set, m)
            })
            .collect();
        let finite: Vec<&(ClopenSet, Value)> = pieces.iter().filter(|p| p.1.is_finite()).collect();
        let infinite: Vec<&(ClopenSet, Value)> = pieces.iter().filter(|p| !p.1.is_finite()).collect();
        let mut rest = b.clone();
        let explicit = if infinite.is_empty() { finite.len().saturating_sub(1) } else { finite.len() };
        for (piece, m) in &finite[..explicit] {
            let w = m.finite().unwrap();
            if w.is_zero() {
                return Err(failure(stage, format!("zero-measure cell {:?}", label(piece, ds))));
            }
            match subset_search(dst, &rest, w, budget)? {
                SearchOutcome::Found(found) => {
                    rest = rest.difference(&found, dd);
                    out.push((piece.clone(), found));
                }
                _ => {
                    return Err(failure(
                        stage,
                        format!("no clopen subset of measure {} inside {:?}", w.exact_string(), label(&rest, dd)),
                    ))
                }
            }
        }
        if infinite.is_empty() {
            if let Some((piece, m)) = finite.last() {
                if clopen_measure(dst, &rest) != *m || rest.is_empty() {
                    return Err(failure(stage, format!("remainder does not match {:?}", label(piece, ds))));
                }
                out.push(((*piece).clone(), rest));
            }
            continue;
        }
        // Pair infinite pieces with infinite cylinders of the remainder.
        let need = infinite.len();
        let mut lvl = rest.level();
        let (inf_cyls, fine_rest) = loop {
            let r = rest.refine(dd, lvl);
            let inf: Vec<Cylinder> =
                r.cylinders().filter(|c| !dst.level_weight(lvl, c.terminal()).is_finite()).cloned().collect();
            if inf.len() >= need {
                break (inf, r);
            }
            if lvl >= budget.max_level {
                return Err(failure(stage, "not enough infinite-measure cylinders in the remainder"));
            }
            lvl += 1;
        };
        // Each infinite piece gets one infinite cylinder; everything else in
        // the remainder is dealt out round-robin, heaviest first, so no
        // single partner collects all the leftover finite mass.
        let anchors: HashSet<&Cylinder> = inf_cyls[..need].iter().collect();
        let mut others: Vec<(Value, &Cylinder)> = fine_rest
            .cylinders()
            .filter(|c| !anchors.contains(c))
            .map(|c| (dst.level_weight(lvl, c.terminal()), c))
            .collect();
        others.sort_by(|a, b| match (&a.0, &b.0) {
            (Value::Infinite, Value::Infinite) => std::cmp::Ordering::Equal,
            (Value::Infinite, _) => std::cmp::Ordering::Less,
            (_, Value::Infinite) => std::cmp::Ordering::Greater,
            (Value::Finite(x), Value::Finite(y)) => y.cmp(x),
        });
        let mut groups: Vec<Vec<Cylinder>> = inf_cyls[..need].iter().map(|c| vec![c.clone()]).collect();
        for (k, (_, c)) in others.into_iter().enumerate() {
            groups[k % need].push(c.clone());
        }
        for ((piece, _), g) in infinite.iter().zip(groups) {
            out.push((piece.clone(), ClopenSet::normalize(dd, &g)));
        }
    }
    Ok(out)
}

fn object_measure(m: &MeasureObject) -> Result<&dyn LevelMeasure> {
    m.level_measure().ok_or_else(|| Error::Precondition("certificates need measures on diagrams".into()))
}

/// Runs `depth` stages of the back-and-forth construction. Odd stages split
/// the cells of `X` along the cylinders of that level, even stages those of
/// `Y`; pieces are matched by subset search on the other side, infinite
/// pieces by infinite cylinders of what remains.
pub fn back_and_forth(
    mu: &MeasureObject,
    nu: &MeasureObject,
    depth: usize,
    budget: &EnumerationBudget,
    bound: usize,
) -> Result<BackForthCertificate> {
    if mu.goodness(bound) != Goodness::Good || nu.goodness(bound) != Goodness::Good {
        return Err(Error::Precondition("both measures must be good".into()));
    }
    if mu.svalues().equals(&nu.svalues(), bound)? != Tri::Yes {
        return Err(Error::Precondition("clopen values sets must be equal".into()));
    }
    if profiles_match(&mu.profile(), &nu.profile()) != Tri::Yes {
        return Err(Error::Precondition("defective profiles must match".into()));
    }
    let (m, n) = (object_measure(mu)?, object_measure(nu)?);
    let whole_x = ClopenSet::whole(m.diagram(), 0, budget.max_cells)?;
    let whole_y = ClopenSet::whole(n.diagram(), 0, budget.max_cells)?;
    let total = clopen_measure(m, &whole_x);
    if total != clopen_measure(n, &whole_y) {
        return Err(failure(0, "total measures differ"));
    }
    let mut cells = vec![(whole_x, whole_y)];
    let mut stages = vec![Stage { direction: None, cells: make_cells(m, &cells) }];
    for j in 1..=depth {
        let direction = if j % 2 == 1 { Direction::Forth } else { Direction::Back };
        cells = match direction {
            Direction::Forth => refine_and_match(m, n, &cells, j, j, budget)?,
            Direction::Back => {
                let swapped: Vec<_> = cells.into_iter().map(|(x, y)| (y, x)).collect();
                let matched = refine_and_match(n, m, &swapped, j, j, budget)?;
                matched.into_iter().map(|(y, x)| (x, y)).collect()
            }
        };
        stages.push(Stage { direction: Some(direction), cells: make_cells(m, &cells) });
    }
    Ok(BackForthCertificate { depth, stages })
}

fn make_cells(m: &dyn LevelMeasure, cells: &[(ClopenSet, ClopenSet)]) -> Vec<Cell> {
    cells.iter().map(|(x, y)| Cell { x: x.clone(), y: y.clone(), measure: clopen_measure(m, x) }).collect()
}

fn check_partition(d: &dyn Diagram, sets: &[&ClopenSet], stage: usize, side: &str) -> Result<()> {
    let level = sets.iter().map(|s| s.level()).max().unwrap_or(0);
    let mut seen: HashSet<Cylinder> = HashSet::new();
    for s in sets {
        if s.is_empty() {
            return Err(failure(stage, format!("empty cell on {side}")));
        }
        for c in s.refine(d, level).cylinders() {
            if !seen.insert(c.clone()) {
                return Err(failure(stage, format!("overlapping cells on {side} at {}", c.label())));
            }
        }
    }
    let total: BigUint = path_counts(d, level).iter().sum();
    if BigUint::from(seen.len()) != total {
        return Err(failure(stage, format!("cells on {side} do not cover the space")));
    }
    Ok(())
}

impl BackForthCertificate {
    /// Re-checks every stage: both sides are partitions, each stage refines
    /// the previous one compatibly with the bijections, and matched cells
    /// have equal measures.
    pub fn verify(&self, mu: &dyn LevelMeasure, nu: &dyn LevelMeasure) -> Result<()> {
        let (dx, dy) = (mu.diagram(), nu.diagram());
        for (j, stage) in self.stages.iter().enumerate() {
            let xs: Vec<&ClopenSet> = stage.cells.iter().map(|c| &c.x).collect();
            let ys: Vec<&ClopenSet> = stage.cells.iter().map(|c| &c.y).collect();
            check_partition(dx, &xs, j, "X")?;
            check_partition(dy, &ys, j, "Y")?;
            for c in &stage.cells {
                let (a, b) = (clopen_measure(mu, &c.x), clopen_measure(nu, &c.y));
                if a != b || a != c.measure {
                    return Err(failure(j, format!("measure mismatch at {:?}", label(&c.x, dx))));
                }
            }
            if j == 0 {
                continue;
            }
            let parents = &self.stages[j - 1].cells;
            for c in &stage.cells {
                let ok = parents.iter().any(|p| c.x.is_subset(&p.x, dx) && c.y.is_subset(&p.y, dy));
                if !ok {
                    return Err(failure(j, format!("cell {:?} does not refine a matched parent", label(&c.x, dx))));
                }
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.stages.last().map_or(0, |s| s.cells.len())
    }

    /// JSON form: cells as coarsest cylinder lists, measures as exact
    /// strings.
    pub fn to_json(&self, mu: &dyn LevelMeasure, nu: &dyn LevelMeasure) -> serde_json::Value {
        let stages: Vec<serde_json::Value> = self
            .stages
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let cells: Vec<serde_json::Value> = s
                    .cells
                    .iter()
                    .map(|c| {
                        json!({
                            "x": label(&c.x, mu.diagram()),
                            "y": label(&c.y, nu.diagram()),
                            "measure": c.measure.exact_string(),
                        })
                    })
                    .collect();
                json!({ "stage": j, "direction": s.direction, "cells": cells })
            })
            .collect();
        json!({ "depth": self.depth, "stages": stages })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{add_infinite_components, alpha_z_product, odometer_from_grouplike, one_point_object};
    use crate::diagram::StationaryDiagram;
    use crate::exact::{rat, NumberField, DEFAULT_CLOSURE_BOUND};
    use crate::measure::{ergodic_measure, tests::example1};

    fn dyadic() -> ErgodicMeasure {
        ergodic_measure(&StationaryDiagram::new(vec![vec![2]]).unwrap(), 0).unwrap()
    }

    #[test]
    fn example1_goodness() {
        let g3 = is_good(&ergodic_measure(&example1(3), 2).unwrap(), 64);
        assert_eq!(g3.verdict, Goodness::Good);
        assert_eq!(g3.exponents, vec![(1, Some(0))]);
        let mu4 = ergodic_measure(&example1(4), 2).unwrap();
        let g4 = is_good(&mu4, 64);
        assert_eq!(g4.verdict, Goodness::Bad);
        let w = g4.witness.unwrap();
        assert_eq!(w.vertex, 1);
        assert!(w.value < w.cylinder_measure);
        assert_eq!(mu4.level_weight(w.realizer.level(), 1).finite(), Some(&w.value));
        assert_eq!(w.value.as_rational(), Some(rat(2, 15)));
        assert_eq!(is_good(&dyadic(), 64).verdict, Goodness::Good);
    }

    #[test]
    fn witness_is_not_attained() {
        let mu4 = ergodic_measure(&example1(4), 2).unwrap();
        let w = is_good(&mu4, 64).witness.unwrap();
        let v = ClopenSet::normalize(mu4.stationary(), &[w.cylinder]);
        let out = subset_search(&mu4, &v, &w.value, &EnumerationBudget::with_level(5)).unwrap();
        assert_eq!(out, SearchOutcome::NotFound);
    }

    #[test]
    fn goodness_stable_under_telescoping_and_scaling() {
        for n in [3, 4] {
            let d = example1(n);
            let base = is_good(&ergodic_measure(&d, 2).unwrap(), 64).verdict;
            for k in [2, 3] {
                let t = d.telescope(k).unwrap();
                assert_eq!(is_good(&ergodic_measure(&t, 2).unwrap(), 64).verdict, base);
            }
            let c = FieldElement::from_rational(&NumberField::rationals(), rat(7, 5));
            assert_eq!(is_good(&ergodic_measure(&d, 2).unwrap().rescaled(&c), 64).verdict, base);
        }
    }

    #[test]
    fn example1_not_homeomorphic() {
        let a = MeasureObject::Ergodic(ergodic_measure(&example1(3), 2).unwrap());
        let b = MeasureObject::Ergodic(ergodic_measure(&example1(4), 2).unwrap());
        let v = homeomorphic(&a, &b, 64).unwrap();
        assert_eq!(v, HomeoVerdict::new(HomeoStatus::NotHomeomorphic, HomeoReason::GoodnessMismatch));
        assert_eq!(homeomorphic(&b, &a, 64).unwrap(), v);
        assert_eq!(homeomorphic(&a, &a, 64).unwrap().verdict, HomeoStatus::Homeomorphic);
        assert_eq!(homeomorphic(&b, &b, 64).unwrap().verdict, HomeoStatus::Homeomorphic);
    }

    #[test]
    fn compactifications_differ() {
        let a = MeasureObject::Abstract(alpha_z_product(&dyadic()).unwrap());
        let b = MeasureObject::Abstract(one_point_object(&dyadic()).unwrap());
        let v = homeomorphic(&a, &b, 64).unwrap();
        assert_eq!(v, HomeoVerdict::new(HomeoStatus::NotHomeomorphic, HomeoReason::DefectiveProfileMismatch));
        assert_eq!(good_order_exists(&b).unwrap(), Tri::Yes);
        assert_eq!(good_order_exists(&a).unwrap(), Tri::No);
        let e = MeasureObject::Ergodic(ergodic_measure(&example1(3), 2).unwrap());
        assert_eq!(good_order_exists(&e).unwrap(), Tri::No);
        assert!(matches!(good_order_exists(&MeasureObject::Ergodic(dyadic())), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn weak_homeomorphism_scales() {
        let gl = |g: Rational, l: i64| {
            let s = ClopenValuesSet::rational(&[g], Some(l)).unwrap();
            MeasureObject::Odometer(odometer_from_grouplike(&s).unwrap())
        };
        let z2 = gl(rat(1, 1), 2);
        let third = gl(rat(1, 3), 2);
        let z3 = gl(rat(1, 1), 3);
        let v = weakly_homeomorphic(&z2, &third, DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(v.scale, Some(rat(3, 1)));
        let none = weakly_homeomorphic(&z2, &z3, DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(none, WeakVerdict { verdict: HomeoStatus::NotHomeomorphic, scale: None });
        let mu = dyadic();
        let two = FieldElement::from_rational(mu.field(), rat(2, 1));
        let doubled = MeasureObject::Ergodic(mu.rescaled(&two));
        let w = weakly_homeomorphic(&doubled, &MeasureObject::Ergodic(mu), DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(w.scale, Some(rat(2, 1)));
    }

    #[test]
    fn dyadic_certificates() {
        let mu = MeasureObject::Ergodic(dyadic());
        let b = EnumerationBudget::with_level(6);
        let cert = back_and_forth(&mu, &mu, 2, &b, 64).unwrap();
        assert_eq!(cert.cell_count(), 4);
        let m = mu.level_measure().unwrap();
        cert.verify(m, m).unwrap();
        let t = MeasureObject::Ergodic(ergodic_measure(&StationaryDiagram::new(vec![vec![4]]).unwrap(), 0).unwrap());
        let cert = back_and_forth(&mu, &t, 2, &b, 64).unwrap();
        cert.verify(m, t.level_measure().unwrap()).unwrap();
        let json = cert.to_json(m, t.level_measure().unwrap());
        assert_eq!(json["stages"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn sixth_certificate() {
        let d = ClopenValuesSet::rational(&[rat(1, 1)], Some(6)).unwrap();
        let odo = MeasureObject::Odometer(odometer_from_grouplike(&d).unwrap());
        let base = StationaryDiagram::new(vec![vec![6]]).unwrap();
        let ext = add_infinite_components(&base, 0, 1).unwrap();
        let st = MeasureObject::Ergodic(ergodic_measure(&ext, 0).unwrap());
        let b = EnumerationBudget { max_level: 12, max_cells: 200_000, ..Default::default() };
        let cert = back_and_forth(&odo, &st, 2, &b, 64).unwrap();
        cert.verify(odo.level_measure().unwrap(), st.level_measure().unwrap()).unwrap();
        // Tampering with a measure is caught.
        let mut bad = cert.clone();
        let last = bad.stages.last_mut().unwrap();
        let i = last.cells.iter().position(|c| c.measure.is_finite()).unwrap();
        let k = last.cells.iter().position(|c| !c.measure.is_finite()).unwrap();
        let (xi, xk) = (last.cells[i].x.clone(), last.cells[k].x.clone());
        last.cells[i].x = xk;
        last.cells[k].x = xi;
        assert!(bad.verify(odo.level_measure().unwrap(), st.level_measure().unwrap()).is_err());
    }
}
