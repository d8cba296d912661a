//! Ergodic tail-invariant measures of stationary diagrams.
//!
//! Each nontrivial vertex class `α` with Perron root `λ > 1` carries one
//! ergodic measure. Its weight vector `x` satisfies `A x = λ x` on the
//! vertices with finite weight; a level-`N` cylinder ending at `v` has
//! measure `scale · x_v / λ^N`. Classes preceding `α` get their weights by
//! solving `(λ − A_ββ) x_β = Σ_γ A_βγ x_γ`, nearest classes first; a class
//! whose own Perron root exceeds `λ`, or which feeds into an infinite class,
//! has infinite weight. Vertices that do not reach `α` have weight zero.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{
    class_decomposition, ClassDecomposition, ClopenSet, Cylinder, Diagram, Matrix, StationaryDiagram,
};
use crate::error::{Error, Result};
use crate::exact::{largest_real_root, AlgebraicNumber, FieldElement, NumberField, Rational, ZPoly};

/// A measure value: exact element of a number field, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(FieldElement),
    Infinite,
}

impl Value {
    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            Value::Finite(x) => Some(x),
            Value::Infinite => None,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a * c),
            Value::Infinite => Value::Infinite,
        }
    }

    pub fn exact_string(&self) -> String {
        match self {
            Value::Finite(a) => a.exact_string(),
            Value::Infinite => "inf".to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(a) => write!(f, "{a}"),
            Value::Infinite => write!(f, "∞"),
        }
    }
}

/// A measure described by the value of its level-`N` cylinders at each
/// terminal vertex.
pub trait LevelMeasure {
    fn diagram(&self) -> &dyn Diagram;
    fn field(&self) -> &NumberField;
    /// Measure of any level-`level` cylinder ending at `vertex`.
    fn level_weight(&self, level: usize, vertex: usize) -> Value;
}

pub fn cylinder_measure<M: LevelMeasure + ?Sized>(m: &M, c: &Cylinder) -> Value {
    m.level_weight(c.level(), c.terminal())
}

/// Sum over the canonical disjoint cylinders; `∞` absorbs.
pub fn clopen_measure<M: LevelMeasure + ?Sized>(m: &M, u: &ClopenSet) -> Value {
    let mut acc = Value::Finite(FieldElement::zero(m.field()));
    for c in u.cylinders() {
        acc = acc.add(&cylinder_measure(m, c));
        if !acc.is_finite() {
            break;
        }
    }
    acc
}

/// Characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier.
pub fn charpoly(m: &Matrix) -> ZPoly {
    let n = m.len();
    let a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for t in 0..n {
                    s += &a[i][t] * &mk[t][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &a[i][t] * &mk[t][i];
            }
        }
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    ZPoly::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

/// Perron root of a nonnegative square matrix (0 for the empty or nilpotent
/// case).
pub fn perron_root(m: &Matrix) -> AlgebraicNumber {
    if m.is_empty() {
        return AlgebraicNumber::from_rational(Rational::zero());
    }
    largest_real_root(&charpoly(m)).expect("a real matrix of nonnegative entries has a real eigenvalue")
}

fn submatrix(a: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect()
}

/// Solves `M y = b` over the field for square invertible `M`.
fn solve(mut m: Vec<Vec<FieldElement>>, mut b: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        let inv = m[col][col].inverse()?;
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[r][j] = &m[r][j] - &t;
                }
                let t = &f * &b[col];
                b[r] = &b[r] - &t;
            }
        }
    }
    Some(b)
}

/// Kernel vector of `A_αα − λ` normalized to 1 in its first coordinate.
fn perron_vector(block: &Matrix, field: &NumberField, lambda: &FieldElement) -> Vec<FieldElement> {
    let n = block.len();
    if n == 1 {
        return vec![FieldElement::one(field)];
    }
    // Fix x_0 = 1 and solve rows 1..n of (A − λ) x = 0 for x_1..x_{n-1}.
    // The Perron eigenspace is one-dimensional, so dropping row 0 leaves
    // an invertible system.
    let m: Vec<Vec<FieldElement>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    let e = FieldElement::from_int(field, block[i][j] as i64);
                    if i == j {
                        &e - lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let b: Vec<FieldElement> = (1..n).map(|i| FieldElement::from_int(field, -(block[i][0] as i64))).collect();
    let rest = solve(m, b).expect("Perron eigenspace is one-dimensional");
    let mut x = vec![FieldElement::one(field)];
    x.extend(rest);
    x
}

/// Weights of the measure attached to class `alpha`, extended to the
/// vertices in `mask` that reach `alpha`. Vertices outside `mask` or not
/// reaching `alpha` get weight zero.
#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Matrix,
    classes: &ClassDecomposition,
    alpha: usize,
    lambda: &AlgebraicNumber,
    field: &NumberField,
    lam: &FieldElement,
    x_alpha: &[FieldElement],
    mask: &[bool],
    spectral: &[AlgebraicNumber],
) -> Result<Vec<Value>> {
    let n = a.len();
    let mut w: Vec<Value> = vec![Value::Finite(FieldElement::zero(field)); n];
    for (i, &v) in classes.classes[alpha].iter().enumerate() {
        w[v] = Value::Finite(x_alpha[i].clone());
    }
    let mut preds: Vec<usize> = (0..classes.len())
        .filter(|&b| classes.precedes(b, alpha) && mask[classes.classes[b][0]])
        .collect();
    // A class reaches strictly more classes than any class it reaches.
    preds.sort_by_key(|&b| (classes.reaches[b].iter().filter(|&&r| r).count(), b));
    for b in preds {
        let vs = &classes.classes[b];
        let mut infinite = false;
        let mut rhs = Vec::with_capacity(vs.len());
        for &v in vs {
            let mut acc = FieldElement::zero(field);
            for u in 0..n {
                if a[v][u] == 0 || classes.class_of[u] == b || !mask[u] {
                    continue;
                }
                match &w[u] {
                    Value::Infinite => infinite = true,
                    Value::Finite(y) => acc = &acc + &y.scale(&Rational::from_integer(a[v][u].into())),
                }
            }
            rhs.push(acc);
        }
        if !infinite {
            match spectral[b].cmp(lambda) {
                std::cmp::Ordering::Greater => infinite = true,
                std::cmp::Ordering::Equal => {
                    return Err(Error::UnsupportedSpectrum(format!(
                        "class {} has the same Perron root {} as class {}",
                        b + 1,
                        lambda,
                        alpha + 1
                    )))
                }
                std::cmp::Ordering::Less => {}
            }
        }
        if infinite {
            for &v in vs {
                w[v] = Value::Infinite;
            }
            continue;
        }
        let m: Vec<Vec<FieldElement>> = vs
            .iter()
            .map(|&i| {
                vs.iter()
                    .map(|&j| {
                        let e = FieldElement::from_int(field, -(a[i][j] as i64));
                        if i == j {
                            &e + lam
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let sol = solve(m, rhs).expect("λ exceeds the block's Perron root, so λ − A_ββ is invertible");
        for (&v, y) in vs.iter().zip(sol) {
            w[v] = Value::Finite(y);
        }
    }
    Ok(w)
}

/// Ergodic tail-invariant measure attached to one vertex class.
#[derive(Clone, Debug)]
pub struct ErgodicMeasure {
    diagram: StationaryDiagram,
    classes: ClassDecomposition,
    spectral: Vec<AlgebraicNumber>,
    alpha: usize,
    lambda: AlgebraicNumber,
    field: NumberField,
    lam: FieldElement,
    lam_inv: FieldElement,
    weights: Vec<Value>,
    scale: FieldElement,
}

/// Perron roots of every class (zero for trivial classes).
pub fn class_spectral_radii(d: &StationaryDiagram, classes: &ClassDecomposition) -> Vec<AlgebraicNumber> {
    let a = d.a();
    classes
        .classes
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            if classes.nontrivial[i] {
                perron_root(&submatrix(&a, vs, vs))
            } else {
                AlgebraicNumber::from_rational(Rational::zero())
            }
        })
        .collect()
}

/// Classes carrying an ergodic measure: nontrivial with Perron root `> 1`.
pub fn measure_classes(d: &StationaryDiagram) -> Vec<usize> {
    let classes = class_decomposition(d);
    let sp = class_spectral_radii(d, &classes);
    let one = AlgebraicNumber::from_rational(Rational::one());
    (0..classes.len()).filter(|&c| sp[c] > one).collect()
}

/// The ergodic measure of class `alpha`.
pub fn ergodic_measure(d: &StationaryDiagram, alpha: usize) -> Result<ErgodicMeasure> {
    let classes = class_decomposition(d);
    if alpha >= classes.len() {
        return Err(Error::Precondition(format!("no class {}", alpha + 1)));
    }
    let spectral = class_spectral_radii(d, &classes);
    let lambda = spectral[alpha].clone();
    if lambda <= AlgebraicNumber::from_rational(Rational::one()) {
        return Err(Error::Precondition(format!(
            "class {} has Perron root {} ≤ 1 and carries no non-atomic ergodic measure",
            alpha + 1,
            lambda
        )));
    }
    let (field, lam) = NumberField::from_algebraic(&lambda);
    let a = d.a();
    let vs = &classes.classes[alpha];
    let x_alpha = perron_vector(&submatrix(&a, vs, vs), &field, &lam);
    let mask = vec![true; a.len()];
    let weights = extend(&a, &classes, alpha, &lambda, &field, &lam, &x_alpha, &mask, &spectral)?;
    let lam_inv = lam.inverse().expect("λ > 1");
    Ok(ErgodicMeasure {
        diagram: d.clone(),
        classes,
        spectral,
        alpha,
        lambda,
        scale: FieldElement::one(&field),
        field,
        lam,
        lam_inv,
        weights,
    })
}

/// Every ergodic measure of the diagram, in class order.
pub fn ergodic_measures(d: &StationaryDiagram) -> Result<Vec<ErgodicMeasure>> {
    measure_classes(d).into_iter().map(|c| ergodic_measure(d, c)).collect()
}

impl ErgodicMeasure {
    pub fn stationary(&self) -> &StationaryDiagram {
        &self.diagram
    }

    pub fn classes(&self) -> &ClassDecomposition {
        &self.classes
    }

    pub fn spectral_radii(&self) -> &[AlgebraicNumber] {
        &self.spectral
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn alpha_vertices(&self) -> &[usize] {
        &self.classes.classes[self.alpha]
    }

    pub fn lambda(&self) -> &AlgebraicNumber {
        &self.lambda
    }

    pub fn lambda_element(&self) -> &FieldElement {
        &self.lam
    }

    /// Raw weights: `x_v`, `∞`, or zero off the support.
    pub fn weights(&self) -> &[Value] {
        &self.weights
    }

    pub fn scale(&self) -> &FieldElement {
        &self.scale
    }

    /// Whether the measure is finite, i.e. λ is distinguished.
    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(Value::is_finite)
    }

    /// Vertices of the finite subdiagram `B_f`: `α` and the preceding
    /// vertices with finite weight.
    pub fn finite_vertices(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&v| {
                let c = self.classes.class_of[v];
                (c == self.alpha || self.classes.precedes(c, self.alpha)) && self.weights[v].is_finite()
            })
            .collect()
    }

    pub fn infinite_vertices(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&v| !self.weights[v].is_finite()).collect()
    }

    /// Scaled weight `scale · x_v` (level 0).
    pub fn vertex_weight(&self, v: usize) -> Value {
        self.weights[v].scale(&self.scale)
    }

    /// Mass of the finite part `μ_f`: the measure of the paths that stay in
    /// `B_f`, which is `scale · Σ_{v ∈ B_f} x_v`.
    pub fn total_mass(&self) -> FieldElement {
        let mut s = FieldElement::zero(&self.field);
        for v in self.finite_vertices() {
            s = &s + self.weights[v].finite().unwrap();
        }
        &s * &self.scale
    }

    /// The same measure multiplied by a positive constant.
    pub fn rescaled(&self, c: &FieldElement) -> Self {
        assert!(c.is_positive(), "rescaling factor must be positive");
        let mut m = self.clone();
        m.scale = &self.scale * c;
        m
    }

    /// Scaled so that `μ_f` is a probability measure.
    pub fn normalized(&self) -> Self {
        let s = self.total_mass();
        let mut m = self.clone();
        m.scale = &self.scale * &s.inverse().expect("B_f is non-empty");
        m
    }

    /// `Σ_v h^{(N)}_v x_v / λ^N` over paths that stay in `B_f`; independent
    /// of `level`.
    pub fn finite_part_mass_at(&self, level: usize) -> FieldElement {
        let bf = self.finite_vertices();
        let h = self.finite_path_counts(level);
        let mut s = FieldElement::zero(&self.field);
        for &v in &bf {
            let w = self.level_weight(level, v);
            let k = Rational::from_integer(h[v].clone().into());
            s = &s + &w.finite().unwrap().scale(&k);
        }
        s
    }

    /// Number of level-`level` cylinders ending at each vertex whose path
    /// stays inside `B_f`.
    pub fn finite_path_counts(&self, level: usize) -> Vec<BigUint> {
        let n = self.weights.len();
        let mut inside = vec![false; n];
        for v in self.finite_vertices() {
            inside[v] = true;
        }
        let f = self.diagram.f();
        let mut h: Vec<BigUint> = (0..n).map(|v| if inside[v] { BigUint::one() } else { BigUint::zero() }).collect();
        for _ in 0..level {
            h = (0..n)
                .map(|v| {
                    if !inside[v] {
                        return BigUint::zero();
                    }
                    (0..n).filter(|&w| inside[w]).map(|w| &h[w] * f[v][w]).sum()
                })
                .collect();
        }
        h
    }

    /// `h̃^{(N)}`: level-`N` cylinders per vertex whose path leaves `B_f`.
    pub fn infinite_cylinder_counts(&self, level: usize) -> Vec<BigUint> {
        let all = crate::diagram::path_counts(&self.diagram, level);
        let fin = self.finite_path_counts(level);
        all.into_iter().zip(fin).map(|(a, b)| a - b).collect()
    }

    /// Checks `(A x)_v = λ x_v` for every `v ∈ B_f`.
    pub fn eigen_consistent(&self) -> bool {
        let a = self.diagram.a();
        self.finite_vertices().iter().all(|&v| {
            let mut s = FieldElement::zero(&self.field);
            for (u, &e) in a[v].iter().enumerate() {
                if e > 0 {
                    match &self.weights[u] {
                        Value::Finite(y) => s = &s + &y.scale(&Rational::from_integer(e.into())),
                        Value::Infinite => return false,
                    }
                }
            }
            s == &self.lam * self.weights[v].finite().unwrap()
        })
    }

    pub fn defective_profile(&self) -> Result<DefectiveProfile> {
        MeasureSum::single(self.clone()).defective_profile()
    }
}

impl LevelMeasure for ErgodicMeasure {
    fn diagram(&self) -> &dyn Diagram {
        &self.diagram
    }

    fn field(&self) -> &NumberField {
        &self.field
    }

    fn level_weight(&self, level: usize, vertex: usize) -> Value {
        match &self.weights[vertex] {
            Value::Infinite => Value::Infinite,
            Value::Finite(x) => Value::Finite(&(x * &self.scale) * &self.lam_inv.pow(level as u32)),
        }
    }
}

/// Topological type of the defective set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "points")]
pub enum ProfileKind {
    Empty,
    SinglePoint,
    Finite(u64),
    Cantor,
    CantorPlusFinite(u64),
    Unknown,
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileKind::Empty => write!(f, "empty"),
            ProfileKind::SinglePoint => write!(f, "single_point"),
            ProfileKind::Finite(k) => write!(f, "finite({k})"),
            ProfileKind::Cantor => write!(f, "cantor"),
            ProfileKind::CantorPlusFinite(k) => write!(f, "cantor_plus_finite({k})"),
            ProfileKind::Unknown => write!(f, "unknown"),
        }
    }
}

/// Size class of the measure of the defective set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MassClass {
    Zero,
    FinitePositive,
    Infinite,
}

impl fmt::Display for MassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MassClass::Zero => "zero",
            MassClass::FinitePositive => "finite_positive",
            MassClass::Infinite => "infinite",
        };
        write!(f, "{s}")
    }
}

/// Kind and measure of the defective set `𝔐`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectiveProfile {
    pub kind: ProfileKind,
    pub mass_class: MassClass,
    /// Exact measure of `𝔐`.
    pub mass: Value,
}

/// Finite positive combination of ergodic measures on one diagram.
#[derive(Clone, Debug)]
pub struct MeasureSum {
    terms: Vec<(ErgodicMeasure, Rational)>,
    field: NumberField,
}

fn embed(x: &FieldElement, target: &NumberField) -> Result<FieldElement> {
    if x.field() == target {
        return Ok(x.clone());
    }
    match x.as_rational() {
        Some(q) => Ok(FieldElement::from_rational(target, q)),
        None => Err(Error::UnsupportedField(
            "measures over two distinct irrational fields cannot be combined".into(),
        )),
    }
}

impl MeasureSum {
    pub fn single(m: ErgodicMeasure) -> Self {
        let field = m.field.clone();
        MeasureSum { terms: vec![(m, Rational::one())], field }
    }

    /// Combination `Σ c_i μ_i` with positive rational coefficients.
    pub fn new(terms: Vec<(ErgodicMeasure, Rational)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("a measure sum needs at least one term".into()));
        }
        if terms.iter().any(|(_, c)| c <= &Rational::zero()) {
            return Err(Error::Precondition("coefficients must be positive".into()));
        }
        let d = &terms[0].0.diagram;
        if terms.iter().any(|(m, _)| &m.diagram != d) {
            return Err(Error::Precondition("all terms must live on the same diagram".into()));
        }
        let mut field = NumberField::rationals();
        for (m, _) in &terms {
            if !m.field.is_rational() {
                if !field.is_rational() && field != m.field {
                    return Err(Error::UnsupportedField(
                        "measures over two distinct irrational fields cannot be combined".into(),
                    ));
                }
                field = m.field.clone();
            }
        }
        Ok(MeasureSum { terms, field })
    }

    pub fn terms(&self) -> &[(ErgodicMeasure, Rational)] {
        &self.terms
    }

    /// Vertices whose cylinders have infinite measure.
    pub fn infinite_vertices(&self) -> Vec<bool> {
        let n = self.terms[0].0.weights.len();
        (0..n).map(|v| self.terms.iter().any(|(m, _)| !m.weights[v].is_finite())).collect()
    }

    /// The defective set is the path space of the subdiagram on the
    /// infinite-measure vertices `I` (a set closed under predecessors).
    pub fn defective_profile(&self) -> Result<DefectiveProfile> {
        let first = &self.terms[0].0;
        let inf = self.infinite_vertices();
        let kind = profile_kind(&first.diagram, &first.classes, &first.spectral, &inf);
        let a = first.diagram.a();
        let mut mass = Value::Finite(FieldElement::zero(&self.field));
        for (m, c) in &self.terms {
            if !m.alpha_vertices().iter().all(|&v| inf[v]) {
                continue;
            }
            let vs = m.alpha_vertices();
            let x_alpha: Vec<FieldElement> = vs.iter().map(|&v| m.weights[v].finite().unwrap().clone()).collect();
            let y = extend(&a, &m.classes, m.alpha, &m.lambda, &m.field, &m.lam, &x_alpha, &inf, &m.spectral)?;
            let mut term = Value::Finite(FieldElement::zero(&m.field));
            for v in (0..inf.len()).filter(|&v| inf[v]) {
                term = term.add(&y[v]);
            }
            let term = match term {
                Value::Finite(t) => Value::Finite(embed(&(&t * &m.scale).scale(c), &self.field)?),
                Value::Infinite => Value::Infinite,
            };
            mass = mass.add(&term);
        }
        let mass_class = match &mass {
            Value::Infinite => MassClass::Infinite,
            Value::Finite(x) if x.is_zero() => MassClass::Zero,
            Value::Finite(_) => MassClass::FinitePositive,
        };
        Ok(DefectiveProfile { kind, mass_class, mass })
    }
}

impl LevelMeasure for MeasureSum {
    fn diagram(&self) -> &dyn Diagram {
        &self.terms[0].0.diagram
    }

    fn field(&self) -> &NumberField {
        &self.field
    }

    fn level_weight(&self, level: usize, vertex: usize) -> Value {
        let mut acc = Value::Finite(FieldElement::zero(&self.field));
        for (m, c) in &self.terms {
            match m.level_weight(level, vertex) {
                Value::Infinite => return Value::Infinite,
                Value::Finite(x) => {
                    let x = embed(&x.scale(c), &self.field).expect("fields checked at construction");
                    acc = acc.add(&Value::Finite(x));
                }
            }
        }
        acc
    }
}

/// Topological type of the path space of the subdiagram on `inf`.
///
/// Infinite paths in the subdiagram eventually stay in one nontrivial
/// class. Paths settling in a class with Perron root `> 1`, or in a cycle
/// class that can still branch elsewhere, are accumulation points. Paths
/// settling in a cycle class with no exit are isolated, and there are
/// finitely many of them when only trivial classes lead into that cycle.
fn profile_kind(
    d: &StationaryDiagram,
    classes: &ClassDecomposition,
    spectral: &[AlgebraicNumber],
    inf: &[bool],
) -> ProfileKind {
    let one = AlgebraicNumber::from_rational(Rational::one());
    let inside: Vec<usize> = (0..classes.len()).filter(|&c| inf[classes.classes[c][0]]).collect();
    let hosts: Vec<usize> = inside.iter().copied().filter(|&c| classes.nontrivial[c]).collect();
    if hosts.is_empty() {
        return ProfileKind::Empty;
    }
    let branching: Vec<usize> = hosts.iter().copied().filter(|&c| spectral[c] > one).collect();
    let sinks: Vec<usize> = hosts
        .iter()
        .copied()
        .filter(|&c| spectral[c] == one && !hosts.iter().any(|&o| o != c && classes.reaches[c][o]))
        .collect();
    for &s in &sinks {
        if hosts.iter().any(|&o| o != s && classes.reaches[o][s]) {
            return ProfileKind::Unknown;
        }
    }
    // After |I| levels every path ending in a sink cycle is already inside
    // it and continues uniquely.
    let n = d.vertex_count();
    let f = d.f();
    let depth = inf.iter().filter(|&&b| b).count() + 1;
    let mut h: Vec<BigUint> = (0..n).map(|v| if inf[v] { BigUint::one() } else { BigUint::zero() }).collect();
    for _ in 0..depth {
        h = (0..n)
            .map(|v| {
                if !inf[v] {
                    return BigUint::zero();
                }
                (0..n).filter(|&w| inf[w]).map(|w| &h[w] * f[v][w]).sum()
            })
            .collect();
    }
    let isolated: BigUint = sinks
        .iter()
        .flat_map(|&s| classes.classes[s].iter().map(|&v| h[v].clone()))
        .sum();
    let k = match u64::try_from(isolated) {
        Ok(k) => k,
        Err(_) => return ProfileKind::Unknown,
    };
    match (branching.is_empty(), k) {
        (true, 0) => ProfileKind::Empty,
        (true, 1) => ProfileKind::SinglePoint,
        (true, k) => ProfileKind::Finite(k),
        (false, 0) => ProfileKind::Cantor,
        (false, k) => ProfileKind::CantorPlusFinite(k),
    }
}
