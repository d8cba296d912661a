//! Bratteli diagrams given by incidence matrices, their vertex classes, and
//! the clopen algebra of cylinder sets.
//!
//! Conventions used throughout the crate:
//!
//! * `F[v][w]` is the number of edges from vertex `v` at level `n+1` to
//!   vertex `w` at level `n`; the transposed matrix is `A = Fᵀ`.
//! * The root is collapsed: level 0 consists of virtual vertices, one per
//!   column of the first incidence matrix, each carrying exactly one path.
//!   A level-`N` cylinder is therefore a start vertex plus `N` edges, and the
//!   number of cylinders ending at `v` is `(F_N ⋯ F_1 𝟙)_v`.
//! * Vertex classes are the strongly connected components of the digraph
//!   with an arrow `v → w` whenever `A[v][w] > 0`. A class `β` precedes `α`
//!   (`β ≺ α`) when `β` reaches `α`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major nonnegative integer matrix.
pub type Matrix = Vec<Vec<u64>>;

/// Default cap on the number of enumerated cylinders.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Level structure shared by stationary and finite-rank diagrams.
pub trait Diagram {
    /// Number of vertices at `level` (level 0 holds the virtual root copies).
    fn width(&self, level: usize) -> usize;
    /// Incidence matrix between `level` (rows) and `level - 1` (columns),
    /// for `level ≥ 1`.
    fn incidence(&self, level: usize) -> &Matrix;
}

fn check_matrix(m: &Matrix, rows: Option<usize>, cols: Option<usize>) -> Result<()> {
    if m.is_empty() || m[0].is_empty() {
        return Err(Error::InvalidDiagram("empty incidence matrix".into()));
    }
    let c = m[0].len();
    if m.iter().any(|r| r.len() != c) {
        return Err(Error::InvalidDiagram("ragged incidence matrix".into()));
    }
    if let Some(r) = rows {
        if m.len() != r {
            return Err(Error::InvalidDiagram(format!("expected {r} rows, found {}", m.len())));
        }
    }
    if let Some(cc) = cols {
        if c != cc {
            return Err(Error::InvalidDiagram(format!("expected {cc} columns, found {c}")));
        }
    }
    if let Some(i) = m.iter().position(|r| r.iter().all(|&x| x == 0)) {
        return Err(Error::InvalidDiagram(format!("row {} is zero: vertex has no incoming edge", i + 1)));
    }
    if let Some(j) = (0..c).find(|&j| m.iter().all(|r| r[j] == 0)) {
        return Err(Error::InvalidDiagram(format!("column {} is zero: vertex has no outgoing edge", j + 1)));
    }
    Ok(())
}

/// Diagram with the same incidence matrix `F` at every level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StationaryDiagram {
    f: Matrix,
}

impl StationaryDiagram {
    pub fn new(f: Matrix) -> Result<Self> {
        check_matrix(&f, None, None)?;
        if f.len() != f[0].len() {
            return Err(Error::InvalidDiagram(format!(
                "stationary incidence matrix must be square, found {}x{}",
                f.len(),
                f[0].len()
            )));
        }
        Ok(StationaryDiagram { f })
    }

    pub fn vertex_count(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    /// `A = Fᵀ`.
    pub fn a(&self) -> Matrix {
        transpose(&self.f)
    }

    /// Diagram with incidence matrix `F^k`.
    pub fn telescope(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("telescoping factor must be positive".into()));
        }
        let mut m = self.f.clone();
        for _ in 1..k {
            m = mat_mul(&m, &self.f)?;
        }
        Ok(StationaryDiagram { f: m })
    }
}

impl Diagram for StationaryDiagram {
    fn width(&self, _level: usize) -> usize {
        self.f.len()
    }

    fn incidence(&self, _level: usize) -> &Matrix {
        &self.f
    }
}

/// Diagram whose incidence matrices are eventually periodic: `prefix`
/// followed by `period` repeated forever. Widths are bounded by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRankDiagram {
    prefix: Vec<Matrix>,
    period: Vec<Matrix>,
}

impl FiniteRankDiagram {
    pub fn new(prefix: Vec<Matrix>, period: Vec<Matrix>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidDiagram("periodic part must be non-empty".into()));
        }
        let d = FiniteRankDiagram { prefix, period };
        // Levels 1..=prefix+2·period cover every adjacent pair, including
        // the wrap from the end of the period to its start.
        let top = d.prefix.len() + 2 * d.period.len();
        let mut cols = None;
        for n in 1..=top {
            let m = d.incidence(n);
            check_matrix(m, None, cols).map_err(|e| match e {
                Error::InvalidDiagram(s) => Error::InvalidDiagram(format!("level {n}: {s}")),
                other => other,
            })?;
            cols = Some(m.len());
        }
        Ok(d)
    }

    pub fn prefix(&self) -> &[Matrix] {
        &self.prefix
    }

    pub fn period(&self) -> &[Matrix] {
        &self.period
    }

    /// Maximal number of vertices on a level.
    pub fn rank(&self) -> usize {
        self.prefix.iter().chain(&self.period).map(|m| m.len()).max().unwrap_or(0)
    }
}

impl Diagram for FiniteRankDiagram {
    fn width(&self, level: usize) -> usize {
        if level == 0 {
            self.incidence(1)[0].len()
        } else {
            self.incidence(level).len()
        }
    }

    fn incidence(&self, level: usize) -> &Matrix {
        assert!(level >= 1, "incidence matrices start at level 1");
        let i = level - 1;
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                let p = a[i][t]
                    .checked_mul(b[t][j])
                    .and_then(|p| p.checked_add(out[i][j]))
                    .ok_or_else(|| Error::InvalidDiagram("matrix entry overflow while telescoping".into()))?;
                out[i][j] = p;
            }
        }
    }
    Ok(out)
}

/// Number of cylinders ending at each vertex of `level`.
pub fn path_counts<D: Diagram + ?Sized>(d: &D, level: usize) -> Vec<BigUint> {
    let mut h: Vec<BigUint> = vec![BigUint::from(1u32); d.width(0)];
    for n in 1..=level {
        let f = d.incidence(n);
        h = f
            .iter()
            .map(|row| row.iter().zip(&h).map(|(&e, x)| x * e).sum())
            .collect();
    }
    h
}

/// Strongly connected components of the `A`-digraph with their access
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDecomposition {
    /// Vertex sets, each sorted, numbered by smallest vertex.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[v]` is the class index of vertex `v`.
    pub class_of: Vec<usize>,
    /// `reaches[i][j]`: class `i` reaches class `j` (`i ≠ j`), so `i ≺ j`.
    pub reaches: Vec<Vec<bool>>,
    /// Whether each class carries a cycle (is not a lone vertex without a
    /// self-loop).
    pub nontrivial: Vec<bool>,
}

impl ClassDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `β ≺ α`: class `beta` reaches class `alpha`.
    pub fn precedes(&self, beta: usize, alpha: usize) -> bool {
        self.reaches[beta][alpha]
    }

    /// Vertices that reach `alpha`'s class, the class itself included.
    pub fn closure_vertices(&self, alpha: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (c, vs) in self.classes.iter().enumerate() {
            if c == alpha || self.reaches[c][alpha] {
                out.extend(vs);
            }
        }
        out.sort_unstable();
        out
    }

    /// Classes with no other nontrivial class preceding them; these
    /// support the minimal components of the tail relation.
    pub fn minimal_classes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.nontrivial[a])
            .filter(|&a| !(0..self.len()).any(|b| b != a && self.nontrivial[b] && self.reaches[b][a]))
            .collect()
    }

    /// Condensation DAG in DOT format, classes labelled by vertices
    /// (numbered from 1).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph classes {\n  rankdir=TB;\n");
        for (i, vs) in self.classes.iter().enumerate() {
            let label: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
            let shape = if self.nontrivial[i] { "ellipse" } else { "box" };
            let _ = writeln!(s, "  c{} [label=\"{{{}}}\", shape={}];", i + 1, label.join(","), shape);
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                // Cover relation only.
                if self.reaches[i][j] && !(0..self.len()).any(|k| self.reaches[i][k] && self.reaches[k][j]) {
                    let _ = writeln!(s, "  c{} -> c{};", i + 1, j + 1);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Strongly connected components of the digraph `v → w` iff `A[v][w] > 0`.
pub fn class_decomposition(d: &StationaryDiagram) -> ClassDecomposition {
    let a = d.a();
    let n = a.len();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|v| g.add_node(v)).collect();
    for v in 0..n {
        for w in 0..n {
            if a[v][w] > 0 {
                g.add_edge(nodes[v], nodes[w], ());
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut vs: Vec<usize> = c.into_iter().map(|i| g[i]).collect();
            vs.sort_unstable();
            vs
        })
        .collect();
    classes.sort();
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    let k = classes.len();
    let mut reaches = vec![vec![false; k]; k];
    for v in 0..n {
        for w in 0..n {
            if a[v][w] > 0 && class_of[v] != class_of[w] {
                reaches[class_of[v]][class_of[w]] = true;
            }
        }
    }
    // Transitive closure.
    for m in 0..k {
        for i in 0..k {
            if reaches[i][m] {
                for j in 0..k {
                    if reaches[m][j] {
                        reaches[i][j] = true;
                    }
                }
            }
        }
    }
    let nontrivial = classes.iter().map(|c| c.len() > 1 || a[c[0]][c[0]] > 0).collect();
    ClassDecomposition { classes, class_of, reaches, nontrivial }
}

/// Cylinder set: a start vertex at level 0 followed by edges, each given by
/// the vertex it reaches and its index among parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cylinder {
    pub start: usize,
    pub steps: Vec<(usize, u64)>,
}

impl Cylinder {
    pub fn level(&self) -> usize {
        self.steps.len()
    }

    pub fn terminal(&self) -> usize {
        self.steps.last().map(|s| s.0).unwrap_or(self.start)
    }

    /// Vertex at `level` along the path.
    pub fn vertex_at(&self, level: usize) -> usize {
        if level == 0 {
            self.start
        } else {
            self.steps[level - 1].0
        }
    }

    /// Whether `self` contains `other` (is a prefix of it).
    pub fn contains(&self, other: &Cylinder) -> bool {
        self.start == other.start
            && self.steps.len() <= other.steps.len()
            && other.steps[..self.steps.len()] == self.steps[..]
    }

    /// One-level refinements, in lexicographic order.
    pub fn children<D: Diagram + ?Sized>(&self, d: &D) -> Vec<Cylinder> {
        let f = d.incidence(self.level() + 1);
        let w = self.terminal();
        let mut out = Vec::new();
        for (v, row) in f.iter().enumerate() {
            for c in 0..row[w] {
                let mut steps = self.steps.clone();
                steps.push((v, c));
                out.push(Cylinder { start: self.start, steps });
            }
        }
        out
    }

    /// All refinements at `level ≥ self.level()`.
    pub fn refine_to<D: Diagram + ?Sized>(&self, d: &D, level: usize) -> Vec<Cylinder> {
        let mut cur = vec![self.clone()];
        for _ in self.level()..level {
            cur = cur.iter().flat_map(|c| c.children(d)).collect();
        }
        cur
    }

    /// Compact text form `s|v:c|v:c…`, vertices numbered from 1.
    pub fn label(&self) -> String {
        let mut s = format!("{}", self.start + 1);
        for (v, c) in &self.steps {
            let _ = write!(s, "|{}:{}", v + 1, c);
        }
        s
    }
}

fn guard(count: &BigUint, cap: u64) -> Result<()> {
    if count > &BigUint::from(cap) {
        return Err(Error::EnumerationTooLarge { count: count.to_string(), cap });
    }
    Ok(())
}

/// Every cylinder of length `level`, lexicographically ordered.
pub fn cylinders_at_level<D: Diagram + ?Sized>(d: &D, level: usize, cap: u64) -> Result<Vec<Cylinder>> {
    let total: BigUint = path_counts(d, level).iter().sum();
    guard(&total, cap)?;
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    for s in 0..d.width(0) {
        out.extend(Cylinder { start: s, steps: Vec::new() }.refine_to(d, level));
    }
    out.sort();
    Ok(out)
}

/// Cylinders of length `level` ending at `v`.
pub fn cylinders_ending_at<D: Diagram + ?Sized>(d: &D, level: usize, v: usize, cap: u64) -> Result<Vec<Cylinder>> {
    let counts = path_counts(d, level);
    guard(&counts[v], cap)?;
    // Walk backwards: enumerate reversed paths ending at v.
    let mut partial: Vec<Vec<(usize, u64)>> = vec![vec![(v, 0)]];
    for n in (1..=level).rev() {
        let f = d.incidence(n);
        let mut next = Vec::new();
        for p in &partial {
            let cur = p.last().unwrap().0;
            for (w, &e) in f[cur].iter().enumerate() {
                for c in 0..e {
                    let mut q = p.clone();
                    let len = q.len();
                    q[len - 1].1 = c;
                    q.push((w, 0));
                    next.push(q);
                }
            }
        }
        partial = next;
    }
    let mut out: Vec<Cylinder> = partial
        .into_iter()
        .map(|mut p| {
            let start = p.pop().unwrap().0;
            p.reverse();
            Cylinder { start, steps: p }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// A clopen set in canonical form: distinct cylinders at one common level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClopenSet {
    level: usize,
    cylinders: BTreeSet<Cylinder>,
}

impl ClopenSet {
    pub fn empty(level: usize) -> Self {
        ClopenSet { level, cylinders: BTreeSet::new() }
    }

    /// Normal form of an arbitrary finite union of cylinders: everything is
    /// refined to the deepest level present and duplicates collapse.
    pub fn normalize<D: Diagram + ?Sized>(d: &D, cylinders: &[Cylinder]) -> Self {
        let level = cylinders.iter().map(|c| c.level()).max().unwrap_or(0);
        let cylinders = cylinders.iter().flat_map(|c| c.refine_to(d, level)).collect();
        ClopenSet { level, cylinders }
    }

    /// The whole path space at `level`.
    pub fn whole<D: Diagram + ?Sized>(d: &D, level: usize, cap: u64) -> Result<Self> {
        Ok(ClopenSet { level, cylinders: cylinders_at_level(d, level, cap)?.into_iter().collect() })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cylinders(&self) -> impl Iterator<Item = &Cylinder> {
        self.cylinders.iter()
    }

    pub fn len(&self) -> usize {
        self.cylinders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    /// Same set expressed at a deeper level.
    pub fn refine<D: Diagram + ?Sized>(&self, d: &D, level: usize) -> Self {
        assert!(level >= self.level, "cannot coarsen by refinement");
        ClopenSet {
            level,
            cylinders: self.cylinders.iter().flat_map(|c| c.refine_to(d, level)).collect(),
        }
    }

    fn common<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> (Self, Self) {
        let l = self.level.max(other.level);
        (self.refine(d, l), other.refine(d, l))
    }

    pub fn union<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> Self {
        let (a, b) = self.common(other, d);
        ClopenSet { level: a.level, cylinders: a.cylinders.union(&b.cylinders).cloned().collect() }
    }

    pub fn intersection<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> Self {
        let (a, b) = self.common(other, d);
        ClopenSet { level: a.level, cylinders: a.cylinders.intersection(&b.cylinders).cloned().collect() }
    }

    pub fn difference<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> Self {
        let (a, b) = self.common(other, d);
        ClopenSet { level: a.level, cylinders: a.cylinders.difference(&b.cylinders).cloned().collect() }
    }

    pub fn is_subset<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> bool {
        let (a, b) = self.common(other, d);
        a.cylinders.is_subset(&b.cylinders)
    }

    pub fn set_eq<D: Diagram + ?Sized>(&self, other: &Self, d: &D) -> bool {
        let (a, b) = self.common(other, d);
        a.cylinders == b.cylinders
    }

    /// Coarsest equivalent form: merges complete sibling families upwards.
    pub fn coarsen<D: Diagram + ?Sized>(&self, d: &D) -> Vec<Cylinder> {
        let mut cur: BTreeSet<Cylinder> = self.cylinders.clone();
        let mut lvl = self.level;
        let mut done: BTreeSet<Cylinder> = BTreeSet::new();
        while lvl > 0 {
            let parents: BTreeSet<Cylinder> = cur
                .iter()
                .map(|c| Cylinder { start: c.start, steps: c.steps[..lvl - 1].to_vec() })
                .collect();
            let mut next = BTreeSet::new();
            for p in parents {
                let kids = p.children(d);
                if kids.iter().all(|k| cur.contains(k)) {
                    next.insert(p);
                } else {
                    done.extend(kids.into_iter().filter(|k| cur.contains(k)));
                }
            }
            cur = next;
            lvl -= 1;
        }
        done.extend(cur);
        done.into_iter().collect()
    }
}

/// Number of cylinders of length `level`.
pub fn total_paths<D: Diagram + ?Sized>(d: &D, level: usize) -> BigUint {
    path_counts(d, level).iter().fold(BigUint::zero(), |a, b| a + b)
}
