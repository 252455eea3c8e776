//! Generators of the Kirwan-map kernel for products of singly generated
//! factors.
//!
//! A family `{A_i ⊆ N_i}` covers a set of fixed points when every target
//! tuple `J` has some `J_i ∈ A_i`. Writing vertex `(i, j)` for the linear
//! form `x_i - theta_ij t`, coverings are exactly the hitting sets of the
//! hypergraph whose edges are `{(1, J_1), ..., (m, J_m)}`. Each minimal
//! hitting set contributes the product of its linear forms; together these
//! generate the ideal of classes vanishing on the target fixed points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{product_of_linear_forms, LinearForm, Polynomial};
use crate::groebner::{GroebnerError, Ideal};
use crate::moment_model::{FixedPointIndex, MomentSystem, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("staircase generators need exactly two factors, system has {found}")]
    FactorCountNotTwo { found: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// The pair `(i, j)`, standing for `x_i - theta_ij t`. Both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub factor: usize,
    pub value: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.factor, self.value)
    }
}

/// Per-factor index sets `A_1, ..., A_m` (1-based value indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Covering {
    pub parts: Vec<BTreeSet<usize>>,
}

impl Covering {
    pub fn empty(factor_count: usize) -> Self {
        Covering { parts: vec![BTreeSet::new(); factor_count] }
    }

    pub fn from_vertices(factor_count: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut cov = Self::empty(factor_count);
        for v in vertices {
            cov.parts[v.factor - 1].insert(v.value);
        }
        cov
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, part)| part.iter().map(move |&j| Vertex { factor: i + 1, value: j }))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum()
    }

    pub fn covers(&self, index: &FixedPointIndex) -> bool {
        index.0.iter().zip(&self.parts).any(|(j, part)| part.contains(j))
    }

    pub fn covers_all(&self, targets: &[FixedPointIndex]) -> bool {
        targets.iter().all(|j| self.covers(j))
    }

    /// Covering whose every single-vertex deletion stops covering.
    pub fn is_minimal_for(&self, targets: &[FixedPointIndex]) -> bool {
        self.covers_all(targets)
            && self.vertices().into_iter().all(|v| {
                let mut smaller = self.clone();
                smaller.parts[v.factor - 1].remove(&v.value);
                !smaller.covers_all(targets)
            })
    }

    pub fn linear_forms(&self, sys: &MomentSystem) -> Vec<LinearForm> {
        self.vertices().into_iter().map(|v| LinearForm::new(v.factor, sys.value(v.factor, v.value).clone())).collect()
    }
}

impl fmt::Display for Covering {
    /// `{A1={1,2}, A2={}}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let inner: Vec<String> = part.iter().map(|j| j.to_string()).collect();
            write!(f, "A{}={{{}}}", i + 1, inner.join(","))?;
        }
        f.write_str("}")
    }
}

/// Fixed-size bitset over the flattened vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn empty(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn members(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// Edge family of a target set: one edge `{(i, J_i)}` per target `J`.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    offsets: Vec<usize>,
    vertex_count: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(sys: &MomentSystem, targets: &[FixedPointIndex]) -> Self {
        let mut offsets = Vec::with_capacity(sys.factor_count());
        let mut total = 0;
        for f in sys.factors() {
            offsets.push(total);
            total += f.len();
        }
        let mut edges: Vec<VertexSet> = Vec::with_capacity(targets.len());
        for j in targets {
            let mut e = VertexSet::empty(total);
            for (i, &ji) in j.0.iter().enumerate() {
                e.insert(offsets[i] + ji - 1);
            }
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        Hypergraph { offsets, vertex_count: total, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn vertex(&self, flat: usize) -> Vertex {
        let i = self.offsets.partition_point(|&o| o <= flat) - 1;
        Vertex { factor: i + 1, value: flat - self.offsets[i] + 1 }
    }

    /// Berge multiplication: fold the edges in one at a time, keeping the
    /// antichain of minimal transversals of the edges seen so far.
    fn minimal_transversals(&self) -> Vec<VertexSet> {
        let mut current = vec![VertexSet::empty(self.vertex_count)];
        for edge in &self.edges {
            let (hit, miss): (Vec<_>, Vec<_>) = current.into_iter().partition(|t| t.intersects(edge));
            let mut candidates: Vec<VertexSet> = Vec::new();
            for t in &miss {
                for v in edge.members() {
                    let c = t.with(v);
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
            let mut next = hit;
            let survivors: Vec<VertexSet> = candidates
                .iter()
                .filter(|c| {
                    !next.iter().any(|h| h.is_subset(c)) && !candidates.iter().any(|d| d != *c && d.is_subset(c))
                })
                .cloned()
                .collect();
            next.extend(survivors);
            current = next;
        }
        current
    }
}

/// All minimal coverings of `targets`, sorted by their vertex lists.
/// An empty target set has exactly one minimal covering, the empty one.
pub fn minimal_coverings(targets: &[FixedPointIndex], sys: &MomentSystem) -> Vec<Covering> {
    let graph = Hypergraph::new(sys, targets);
    let mut coverings: Vec<Covering> = graph
        .minimal_transversals()
        .into_iter()
        .map(|t| Covering::from_vertices(sys.factor_count(), t.members().into_iter().map(|v| graph.vertex(v))))
        .collect();
    coverings.sort_by_key(|c| c.vertices());
    coverings
}

/// Product of the linear forms `x_i - theta_ij t` over the covering.
pub fn covering_generator(cov: &Covering, sys: &MomentSystem) -> Polynomial {
    product_of_linear_forms(sys.factor_count(), &cov.linear_forms(sys))
}

/// Minimal coverings of one side together with their generators.
#[derive(Clone, Debug)]
pub struct KernelGenerators {
    pub side: Side,
    pub coverings: Vec<Covering>,
    pub generators: Vec<Polynomial>,
}

impl KernelGenerators {
    pub fn ideal(&self, var_count: usize) -> Ideal {
        Ideal::new(var_count, self.generators.clone())
    }
}

pub fn kernel_generators(sys: &MomentSystem, side: Side) -> KernelGenerators {
    let targets = sys.side_points(side);
    let coverings = minimal_coverings(&targets, sys);
    let generators = coverings.iter().map(|c| covering_generator(c, sys)).collect();
    KernelGenerators { side, coverings, generators }
}

pub fn kernel_side(sys: &MomentSystem, side: Side) -> Ideal {
    kernel_generators(sys, side).ideal(sys.factor_count())
}

/// Classes vanishing on every long fixed point.
pub fn kernel_plus(sys: &MomentSystem) -> Ideal {
    kernel_side(sys, Side::Plus)
}

/// Classes vanishing on every short fixed point.
pub fn kernel_minus(sys: &MomentSystem) -> Ideal {
    kernel_side(sys, Side::Minus)
}

/// Both generator families together: the presentation ideal of the
/// reduced space.
pub fn kernel_full(sys: &MomentSystem) -> Ideal {
    kernel_plus(sys).sum(&kernel_minus(sys))
}

/// Truncation degree `sum_i (n_i - 1)`.
pub fn default_max_degree(sys: &MomentSystem) -> u32 {
    sys.factors().iter().map(|f| f.len() as u32 - 1).sum()
}

/// `Q[t, x1..xm] / (kernel)` with its graded dimensions.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub generators: Vec<Polynomial>,
    pub basis: Vec<Polynomial>,
    /// `betti[k]` is `b_{2k}`, for `k` in `0..=max_degree`.
    pub betti: Vec<u64>,
    pub max_degree: u32,
    /// Sum of the Betti numbers when the quotient vanishes by `max_degree`.
    pub total_dimension: Option<u64>,
    /// Nonzero dimension at the truncation degree: higher degrees may be nonzero.
    pub truncated: bool,
    pub zero_ring: bool,
    pub warnings: Vec<String>,
}

pub fn reduced_cohomology(sys: &MomentSystem, max_degree: u32) -> Result<CohomologyPresentation, KernelError> {
    let ideal = kernel_full(sys);
    let basis = ideal.groebner_basis().to_vec();
    let betti = ideal.hilbert_function(max_degree)?;
    let zero_ring = betti.first() == Some(&0);
    let top = *betti.last().unwrap_or(&0);
    let truncated = top != 0;
    let total_dimension = (!truncated).then(|| betti.iter().sum());
    let mut warnings = Vec::new();
    if zero_ring {
        warnings.push("quotient is the zero ring: every fixed point lies on one side of the threshold".to_string());
    }
    if truncated {
        warnings.push(format!("nonzero dimension at truncation degree {max_degree}; raise max degree to see more"));
    }
    Ok(CohomologyPresentation {
        generators: ideal.generators().to_vec(),
        basis,
        betti,
        max_degree,
        total_dimension,
        truncated,
        zero_ring,
        warnings,
    })
}

/// Staircase generators for two factors.
///
/// Orders the first factor's values into columns and the second's into
/// rows, so that the target points of column `k` are the first `m_k` rows
/// with `m_1 >= m_2 >= ... >= m_l`. Emits, for each column cut `k`, the
/// product of the first `k` column forms with the first `m_{k+1}` row forms
/// (only at the corners of the staircase, where `m_{k+1} < m_k`), and
/// finally the product of all `l` column forms. On the minus side both
/// value lists are walked from the bottom.
pub fn staircase_generators_2(sys: &MomentSystem, side: Side) -> Result<Vec<Polynomial>, KernelError> {
    if sys.factor_count() != 2 {
        return Err(KernelError::FactorCountNotTwo { found: sys.factor_count() });
    }
    let n1 = sys.factors()[0].len();
    let n2 = sys.factors()[1].len();
    let walk = |n: usize| -> Vec<usize> {
        match side {
            Side::Plus => (1..=n).collect(),
            Side::Minus => (1..=n).rev().collect(),
        }
    };
    let cols = walk(n1);
    let rows = walk(n2);
    let in_side = |a: usize, b: usize| {
        let s = sys.value(1, a) + sys.value(2, b);
        match side {
            Side::Plus => &s > sys.threshold(),
            Side::Minus => &s < sys.threshold(),
        }
    };
    let heights: Vec<usize> = cols.iter().map(|&a| rows.iter().take_while(|&&b| in_side(a, b)).count()).collect();
    let l = heights.iter().take_while(|&&h| h > 0).count();

    let form1 = |k: usize| LinearForm::new(1, sys.value(1, cols[k]).clone());
    let form2 = |k: usize| LinearForm::new(2, sys.value(2, rows[k]).clone());
    let mut out = Vec::new();
    for k in 0..=l {
        if k < l && k > 0 && heights[k] == heights[k - 1] {
            continue;
        }
        let rows_used = if k < l { heights[k] } else { 0 };
        let forms: Vec<LinearForm> = (0..k).map(form1).chain((0..rows_used).map(form2)).collect();
        out.push(product_of_linear_forms(2, &forms));
    }
    Ok(out)
}
