//! Diagrams and abstract good measures realizing prescribed data.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::diagram::{class_decomposition, Cylinder, Diagram, FiniteRankDiagram, Matrix, StationaryDiagram};
use crate::error::{Error, Result};
use crate::exact::{AlgebraicNumber, FieldElement, NumberField, Rational};
use crate::measure::{perron_root, DefectiveProfile, ErgodicMeasure, LevelMeasure, MassClass, ProfileKind, Value};
use crate::svalues::{factorize, rec_set, ClopenValuesSet, Multiplicity, PrimeMultiset};

/// Vertex carrying the infinite extension in constructed odometers.
pub const ODOMETER_BETA: usize = 0;
/// Vertex carrying the odometer itself.
pub const ODOMETER_ALPHA: usize = 1;

/// Infinite good measure on a two-vertex finite-rank diagram: an odometer
/// component `α` with `p_n` edges per level, fed by a component `β` through
/// `a_n = p_n` edges, so that every cylinder ending in `β` has infinite
/// measure.
#[derive(Clone, Debug)]
pub struct OdometerMeasure {
    diagram: FiniteRankDiagram,
    prefix: Vec<u64>,
    period: Vec<u64>,
    primes: PrimeMultiset,
    scale: Rational,
    field: NumberField,
    target: ClopenValuesSet,
}

impl OdometerMeasure {
    pub fn finite_rank(&self) -> &FiniteRankDiagram {
        &self.diagram
    }

    pub fn prime_multiset(&self) -> &PrimeMultiset {
        &self.primes
    }

    pub fn prime_prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn prime_period(&self) -> &[u64] {
        &self.period
    }

    /// `p_n` for `n ≥ 1`.
    pub fn p(&self, n: usize) -> u64 {
        assert!(n >= 1);
        let i = n - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// `a_n`, the number of edges from `β` into `α` at level `n`.
    pub fn a(&self, n: usize) -> u64 {
        self.diagram.incidence(n)[ODOMETER_ALPHA][ODOMETER_BETA]
    }

    /// `Σ_{i ≤ n} a_i / p_i`, which equals `n`.
    pub fn partial_ratio_sum(&self, n: usize) -> Rational {
        (1..=n).map(|i| Rational::new(self.a(i).into(), self.p(i).into())).sum()
    }

    /// The group-like set this measure was built for.
    pub fn svalues(&self) -> &ClopenValuesSet {
        &self.target
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// The defective set is the set of paths staying in `β`, a Cantor set
    /// of measure zero.
    pub fn defective_profile(&self) -> DefectiveProfile {
        DefectiveProfile {
            kind: ProfileKind::Cantor,
            mass_class: MassClass::Zero,
            mass: Value::Finite(FieldElement::zero(&self.field)),
        }
    }
}

impl LevelMeasure for OdometerMeasure {
    fn diagram(&self) -> &dyn Diagram {
        &self.diagram
    }

    fn field(&self) -> &NumberField {
        &self.field
    }

    fn level_weight(&self, level: usize, vertex: usize) -> Value {
        if vertex == ODOMETER_BETA {
            return Value::Infinite;
        }
        let mut w = self.scale.clone();
        for n in 1..=level {
            w /= Rational::from_integer(self.p(n).into());
        }
        Value::Finite(FieldElement::from_rational(&self.field, w))
    }
}

fn odometer_matrix(p: u64) -> Matrix {
    vec![vec![p, 0], vec![p, p]]
}

/// Good infinite measure on a finite-rank diagram with `S = D` for a
/// rational group-like `D` whose reciprocal set is infinite.
pub fn odometer_from_grouplike(d: &ClopenValuesSet) -> Result<OdometerMeasure> {
    if !d.field().is_rational() {
        return Err(Error::Unsupported("odometer construction needs rational generators".into()));
    }
    if d.bound().is_some() {
        return Err(Error::Precondition("D must be unbounded".into()));
    }
    let g = d
        .scaled_group()
        .rational_generator()
        .ok_or_else(|| Error::Precondition("D must be non-trivial".into()))?;
    // D = u·D' with 1 ∈ D', where u is the part of the numerator of the
    // generator coprime to λ (the rest is a unit of ℤ[1/λ]).
    let q = NumberField::rationals();
    let lam = match d.lambda() {
        Some(l) => l.as_rational().unwrap().to_integer(),
        None => One::one(),
    };
    let mut u = g.numer().clone();
    for (p, _) in factorize(lam.to_u64().ok_or_else(|| Error::Unsupported("λ too large".into()))?) {
        while (&u % p).is_zero() {
            u /= p;
        }
    }
    let scale = Rational::from_integer(u);
    let unit = d.rescaled(&FieldElement::from_rational(&q, Rational::one() / &scale))?;
    let primes = rec_set(&unit)?;
    if !primes.is_infinite() {
        return Err(Error::Density(format!("Rec(D) = divisors of a finite set {primes}; ℚ ∩ D is not dense")));
    }
    let max_finite = primes
        .entries
        .values()
        .filter_map(|m| match m {
            Multiplicity::Finite(k) => Some(*k),
            Multiplicity::Infinite => None,
        })
        .max()
        .unwrap_or(0);
    let mut prefix = Vec::new();
    for round in 1..=max_finite {
        for (p, m) in &primes.entries {
            if *m == Multiplicity::Infinite || *m >= Multiplicity::Finite(round) {
                prefix.push(*p);
            }
        }
    }
    let period: Vec<u64> =
        primes.entries.iter().filter(|(_, m)| **m == Multiplicity::Infinite).map(|(p, _)| *p).collect();
    let diagram = FiniteRankDiagram::new(
        prefix.iter().map(|&p| odometer_matrix(p)).collect(),
        period.iter().map(|&p| odometer_matrix(p)).collect(),
    )?;
    Ok(OdometerMeasure { diagram, prefix, period, primes, scale, field: q, target: d.clone() })
}

/// Adds `i` new minimal classes, each a single vertex with a self-loop of
/// multiplicity `m` and `m - 1` edges into the lowest vertex of `α`, where
/// `m` is the smallest integer above `λ_α` that is not the Perron root of an
/// existing class (an equal root on a comparable class would leave that
/// class without a measure). With a single edge the finite mass inside an
/// infinite cylinder of level `L` grows only like `λ^-L (m/λ)^k` after `k`
/// more levels, which pushes clopen matches far below the cylinder.
pub fn add_infinite_components(d: &StationaryDiagram, alpha: usize, i: usize) -> Result<StationaryDiagram> {
    let classes = class_decomposition(d);
    if alpha >= classes.len() || !classes.nontrivial[alpha] {
        return Err(Error::Precondition("α must be a nontrivial class".into()));
    }
    if i == 0 {
        return Ok(d.clone());
    }
    let a = d.a();
    let verts = &classes.classes[alpha];
    let block: Matrix = verts.iter().map(|&u| verts.iter().map(|&v| a[u][v]).collect()).collect();
    let lambda = perron_root(&block);
    let floor_lo = lambda.interval().0.floor().to_integer();
    let mut root = floor_lo.to_u64().ok_or_else(|| Error::Unsupported("Perron root too large".into()))? + 1;
    let taken: Vec<AlgebraicNumber> = (0..classes.len())
        .filter(|&b| classes.nontrivial[b])
        .map(|b| {
            let vs = &classes.classes[b];
            perron_root(&vs.iter().map(|&u| vs.iter().map(|&v| a[u][v]).collect()).collect())
        })
        .collect();
    loop {
        let r = AlgebraicNumber::from_rational(Rational::from_integer(root.into()));
        if r > lambda && !taken.contains(&r) {
            break;
        }
        root += 1;
    }
    let n = a.len();
    let target = verts[0];
    let mut big = vec![vec![0u64; n + i]; n + i];
    for (u, row) in a.iter().enumerate() {
        big[u][..n].copy_from_slice(row);
    }
    for k in n..n + i {
        big[k][k] = root;
        big[k][target] = root - 1;
    }
    StationaryDiagram::new(crate::diagram::transpose(&big))
}

/// Where an abstract good measure comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    AlphaZProduct,
    OnePointCompactification,
    Diagram,
}

/// A good measure known only through its invariants.
#[derive(Clone, Debug)]
pub struct AbstractGoodMeasure {
    pub svalues: ClopenValuesSet,
    pub profile: DefectiveProfile,
    pub provenance: Provenance,
}

fn finite_good_input(mu: &ErgodicMeasure) -> Result<ClopenValuesSet> {
    if !mu.is_finite() {
        return Err(Error::Precondition("input measure must be finite".into()));
    }
    if crate::classify::is_good(mu, crate::exact::DEFAULT_CLOSURE_BOUND).verdict != crate::classify::Goodness::Good {
        return Err(Error::Precondition("input measure must be good".into()));
    }
    Ok(crate::svalues::clopen_values(mu).unbounded())
}

fn zero_mass_profile(kind: ProfileKind) -> DefectiveProfile {
    DefectiveProfile { kind, mass_class: MassClass::Zero, mass: Value::Finite(FieldElement::zero(&NumberField::rationals())) }
}

/// `μ × ν` on `X × αℤ` with `ν` counting measure on `ℤ`: the defective set
/// `X × {∞}` is a Cantor set.
pub fn alpha_z_product(mu_fin: &ErgodicMeasure) -> Result<AbstractGoodMeasure> {
    Ok(AbstractGoodMeasure {
        svalues: finite_good_input(mu_fin)?,
        profile: zero_mass_profile(ProfileKind::Cantor),
        provenance: Provenance::AlphaZProduct,
    })
}

/// The one-point compactification of `X × ℤ`: the defective set is `{∞}`.
pub fn one_point_object(mu_fin: &ErgodicMeasure) -> Result<AbstractGoodMeasure> {
    Ok(AbstractGoodMeasure {
        svalues: finite_good_input(mu_fin)?,
        profile: zero_mass_profile(ProfileKind::SinglePoint),
        provenance: Provenance::OnePointCompactification,
    })
}

/// Edge order on a diagram: edges into a vertex are compared by source
/// vertex, then by copy index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OdometerOrder {
    #[default]
    Lexicographic,
}

/// Minimal path from the top to `v` at `level`.
fn min_path<D: Diagram + ?Sized>(d: &D, level: usize, v: usize) -> (usize, Vec<(usize, u64)>) {
    let mut steps = Vec::with_capacity(level);
    let mut cur = v;
    for n in (1..=level).rev() {
        steps.push((cur, 0));
        cur = d.incidence(n)[cur].iter().position(|&e| e > 0).expect("every vertex has an incoming edge");
    }
    steps.reverse();
    (cur, steps)
}

/// Adic successor of a finite path, truncated at its own level. The edge
/// at the lowest level that is not maximal is advanced and everything
/// below it reset to the minimal path; a maximal path wraps to the minimal
/// path with the same terminal vertex.
pub fn vershik_successor<D: Diagram + ?Sized>(d: &D, path: &Cylinder, _order: OdometerOrder) -> Cylinder {
    let k = path.level();
    for i in 1..=k {
        let (target, copy) = path.steps[i - 1];
        let source = path.vertex_at(i - 1);
        let row = &d.incidence(i)[target];
        let next = if copy + 1 < row[source] {
            Some((source, copy + 1))
        } else {
            (source + 1..row.len()).find(|&w| row[w] > 0).map(|w| (w, 0))
        };
        if let Some((src, c)) = next {
            let (start, mut steps) = min_path(d, i - 1, src);
            steps.push((target, c));
            steps.extend_from_slice(&path.steps[i..]);
            return Cylinder { start, steps };
        }
    }
    let (start, steps) = min_path(d, k, path.terminal());
    Cylinder { start, steps }
}

/// `Σ a_n/p_n` over the first `n` levels grows without bound: each term is
/// one.
pub fn ratio_terms_are_one(mu: &OdometerMeasure, n: usize) -> bool {
    (1..=n).all(|i| Rational::new(mu.a(i).into(), mu.p(i).into()).is_one())
}
