// Copyright (C) 2026 - The zx-core developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense evaluation of diagrams to linear maps.
//!
//! Every vertex becomes a small tensor with one leg per edge end, and the
//! resulting network is contracted pairwise. The default strategy always
//! contracts the pair of tensors giving the smallest intermediate; a hard
//! guard rejects any intermediate above [`MAX_ENTRIES`] entries.
//!
//! A [`Tensor`] is laid out as a `2^outputs × 2^inputs` row-major matrix;
//! within each side the boundary at list position 0 is the most
//! significant bit.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, VertexKind};

/// Largest intermediate tensor the contraction will build (2^22 entries).
pub const MAX_ENTRIES: usize = 1 << 22;

/// Default absolute tolerance on entries of magnitude O(1).
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("intermediate tensor of {entries} entries exceeds the 2^22 guard")]
    SizeGuardExceeded { entries: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(#[from] DiagramError),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("HBox must have exactly 2 legs, got {0}")]
    InvalidDegree(usize),
    #[error("boundary vertices have no tensor")]
    BoundaryHasNoTensor,
}

pub type TensorResult<T> = Result<T, TensorError>;

#[derive(Clone, PartialEq)]
pub struct Tensor {
    outputs: usize,
    inputs: usize,
    data: Vec<Complex64>,
}

impl Tensor {
    pub fn zeros(outputs: usize, inputs: usize) -> Self {
        Tensor { outputs, inputs, data: vec![ZERO; 1 << (outputs + inputs)] }
    }

    pub fn identity(wires: usize) -> Self {
        let mut t = Tensor::zeros(wires, wires);
        for i in 0..(1 << wires) {
            t.set(i, i, ONE);
        }
        t
    }

    pub fn scalar(value: Complex64) -> Self {
        Tensor { outputs: 0, inputs: 0, data: vec![value] }
    }

    /// Builds a tensor from row-major matrix entries.
    ///
    /// Panics if the entry count is not `2^(outputs + inputs)`.
    pub fn from_entries(outputs: usize, inputs: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), 1 << (outputs + inputs), "entry count must be 2^(m+n)");
        Tensor { outputs, inputs, data }
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real(outputs: usize, inputs: usize, data: &[f64]) -> Self {
        Self::from_entries(outputs, inputs, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `(outputs, inputs)` wire counts.
    pub fn shape(&self) -> (usize, usize) {
        (self.outputs, self.inputs)
    }

    pub fn rows(&self) -> usize {
        1 << self.outputs
    }

    pub fn cols(&self) -> usize {
        1 << self.inputs
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let c = self.cols();
        self.data[row * c + col] = value;
    }

    /// The single entry of a 0×0 tensor.
    pub fn as_scalar(&self) -> Option<Complex64> {
        (self.outputs == 0 && self.inputs == 0).then(|| self.data[0])
    }

    pub fn scale(&self, factor: Complex64) -> Tensor {
        Tensor { data: self.data.iter().map(|x| x * factor).collect(), ..*self }
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn matmul(&self, rhs: &Tensor) -> TensorResult<Tensor> {
        if self.inputs != rhs.outputs {
            return Err(TensorError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let mut out = Tensor::zeros(self.outputs, rhs.inputs);
        let oc = out.cols();
        for r in 0..self.rows() {
            for k in 0..self.cols() {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols() {
                    out.data[r * oc + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self`'s wires are the more significant ones.
    pub fn kron(&self, rhs: &Tensor) -> Tensor {
        let mut out = Tensor::zeros(self.outputs + rhs.outputs, self.inputs + rhs.inputs);
        for r1 in 0..self.rows() {
            for c1 in 0..self.cols() {
                let a = self.get(r1, c1);
                for r2 in 0..rhs.rows() {
                    for c2 in 0..rhs.cols() {
                        out.set(r1 * rhs.rows() + r2, c1 * rhs.cols() + c2, a * rhs.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Tensor {
        let mut out = Tensor::zeros(self.inputs, self.outputs);
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> Tensor {
        Tensor { data: self.data.iter().map(|x| x.conj()).collect(), ..*self }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// Entries viewed as one flat state vector over all wires, outputs
    /// first. This is the map-state reshuffle used by bending.
    pub fn as_state(&self) -> Tensor {
        Tensor { outputs: self.outputs + self.inputs, inputs: 0, data: self.data.clone() }
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tensor {}x{} [", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|c| {
                    let z = self.get(r, c);
                    format!("{:.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---- vertex tensors --------------------------------------------------------

/// A tensor with named legs; leg 0 is the most significant index bit.
#[derive(Clone, Debug)]
struct Labeled {
    legs: Vec<usize>,
    data: Vec<Complex64>,
}

impl Labeled {
    fn z_spider(legs: Vec<usize>, phase: Complex64) -> Self {
        let n = legs.len();
        let mut data = vec![ZERO; 1 << n];
        data[0] += ONE;
        data[(1 << n) - 1] += phase;
        Labeled { legs, data }
    }

    /// Applies the Hadamard matrix to leg position `k`.
    fn hadamard_on(&mut self, k: usize) {
        let bit = 1 << (self.legs.len() - 1 - k);
        for i in 0..self.data.len() {
            if i & bit == 0 {
                let (a, b) = (self.data[i], self.data[i | bit]);
                self.data[i] = (a + b) * FRAC_1_SQRT_2;
                self.data[i | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    fn for_vertex(kind: VertexKind, legs: Vec<usize>) -> TensorResult<Self> {
        match kind {
            VertexKind::Z(p) => Ok(Labeled::z_spider(legs, p.exp_i())),
            VertexKind::X(p) => {
                let mut t = Labeled::z_spider(legs, p.exp_i());
                for k in 0..t.legs.len() {
                    t.hadamard_on(k);
                }
                Ok(t)
            }
            VertexKind::H => {
                if legs.len() != 2 {
                    return Err(TensorError::InvalidDegree(legs.len()));
                }
                let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
                Ok(Labeled { legs, data: vec![s, s, s, -s] })
            }
            VertexKind::Boundary => Err(TensorError::BoundaryHasNoTensor),
        }
    }

    fn delta(a: usize, b: usize) -> Self {
        Labeled { legs: vec![a, b], data: vec![ONE, ZERO, ZERO, ONE] }
    }

    /// Sums over every label that occurs twice on this tensor.
    fn trace_repeated(self) -> Labeled {
        let n = self.legs.len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, &l) in self.legs.iter().enumerate() {
            if let Some(&j) = first.get(&l) {
                pairs.push((j, k));
            } else {
                first.insert(l, k);
            }
        }
        if pairs.is_empty() {
            return self;
        }
        let traced: Vec<usize> = pairs.iter().flat_map(|&(j, k)| [j, k]).collect();
        let free: Vec<usize> = (0..n).filter(|k| !traced.contains(k)).collect();
        let bit = |k: usize| 1usize << (n - 1 - k);
        let pair_offsets: Vec<usize> = (0..1usize << pairs.len())
            .map(|s| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .map(|(_, &(j, k))| bit(j) | bit(k))
                    .sum()
            })
            .collect();
        let mut data = vec![ZERO; 1 << free.len()];
        for (r, slot) in data.iter_mut().enumerate() {
            let base: usize = free
                .iter()
                .enumerate()
                .filter(|(i, _)| r >> (free.len() - 1 - i) & 1 == 1)
                .map(|(_, &k)| bit(k))
                .sum();
            *slot = pair_offsets.iter().map(|off| self.data[base | off]).sum();
        }
        Labeled { legs: free.iter().map(|&k| self.legs[k]).collect(), data }
    }

    fn shared_with(&self, other: &Labeled) -> usize {
        self.legs.iter().filter(|l| other.legs.contains(l)).count()
    }

    fn contract(&self, other: &Labeled) -> TensorResult<Labeled> {
        let (na, nb) = (self.legs.len(), other.legs.len());
        let pos_a = |k: usize| 1usize << (na - 1 - k);
        let pos_b = |k: usize| 1usize << (nb - 1 - k);
        let mut shared = Vec::new();
        let mut free_a = Vec::new();
        for (k, l) in self.legs.iter().enumerate() {
            match other.legs.iter().position(|m| m == l) {
                Some(j) => shared.push((pos_a(k), pos_b(j))),
                None => free_a.push(k),
            }
        }
        let free_b: Vec<usize> = (0..nb).filter(|&j| !self.legs.contains(&other.legs[j])).collect();
        let out_legs: Vec<usize> = free_a
            .iter()
            .map(|&k| self.legs[k])
            .chain(free_b.iter().map(|&j| other.legs[j]))
            .collect();
        let r = out_legs.len();
        let entries = 1usize << r;
        if entries > MAX_ENTRIES {
            return Err(TensorError::SizeGuardExceeded { entries });
        }
        // Per result bit, the index bit it sets in `self` or `other`.
        let result_bits: Vec<(usize, usize)> = free_a
            .iter()
            .map(|&k| (pos_a(k), 0))
            .chain(free_b.iter().map(|&j| (0, pos_b(j))))
            .collect();
        let shared_offsets: Vec<(usize, usize)> = (0..1usize << shared.len())
            .map(|s| {
                shared.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(
                    (0, 0),
                    |(oa, ob), (_, &(ba, bb))| (oa | ba, ob | bb),
                )
            })
            .collect();
        let mut data = vec![ZERO; entries];
        for (idx, slot) in data.iter_mut().enumerate() {
            let (mut base_a, mut base_b) = (0, 0);
            for (i, &(ba, bb)) in result_bits.iter().enumerate() {
                if idx >> (r - 1 - i) & 1 == 1 {
                    base_a |= ba;
                    base_b |= bb;
                }
            }
            let mut acc = ZERO;
            for &(oa, ob) in &shared_offsets {
                acc += self.data[base_a | oa] * other.data[base_b | ob];
            }
            *slot = acc;
        }
        Ok(Labeled { legs: out_legs, data })
    }
}

/// The tensor of a single vertex with the given numbers of input and
/// output legs. X-spiders are obtained from Z-spiders by a Hadamard on
/// every leg.
pub fn vertex_tensor(kind: VertexKind, inputs: usize, outputs: usize) -> TensorResult<Tensor> {
    let legs: Vec<usize> = (0..outputs + inputs).collect();
    let t = Labeled::for_vertex(kind, legs)?;
    Ok(Tensor { outputs, inputs, data: t.data })
}

// ---- evaluation ------------------------------------------------------------

/// Order in which the tensor network is contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Always contract the connected pair with the smallest result.
    #[default]
    Greedy,
    /// Fold vertex tensors into one accumulator in vertex-id order.
    Sequential,
}

pub fn evaluate(d: &Diagram) -> TensorResult<Tensor> {
    evaluate_with(d, Strategy::Greedy)
}

pub fn evaluate_with(d: &Diagram, strategy: Strategy) -> TensorResult<Tensor> {
    d.validate()?;

    // Leg labels: spider-spider edges get their own label, any edge ending
    // at a boundary carries the boundary's label.
    let boundary_label = |v: crate::diagram::VertexId| v.0;
    let edge_label_base = d.vertex_ids().last().map_or(0, |v| v.0 + 1);
    let mut legs: BTreeMap<crate::diagram::VertexId, Vec<usize>> = BTreeMap::new();
    let mut pieces: Vec<Labeled> = Vec::new();
    for (e, a, b) in d.edges() {
        let (ka, kb) = (d.kind(a).unwrap(), d.kind(b).unwrap());
        match (ka.is_boundary(), kb.is_boundary()) {
            (true, true) => pieces.push(Labeled::delta(boundary_label(a), boundary_label(b))),
            (true, false) => legs.entry(b).or_default().push(boundary_label(a)),
            (false, true) => legs.entry(a).or_default().push(boundary_label(b)),
            (false, false) => {
                let l = edge_label_base + e.0;
                legs.entry(a).or_default().push(l);
                legs.entry(b).or_default().push(l);
            }
        }
    }
    for (v, kind) in d.vertices() {
        if kind.is_boundary() {
            continue;
        }
        let mut vl = legs.remove(&v).unwrap_or_default();
        if kind.is_spider() {
            // Tracing a self-loop of a spider leaves the same spider with
            // two fewer legs, so loop legs are never materialised.
            let looped: Vec<usize> =
                vl.iter().copied().filter(|l| vl.iter().filter(|m| *m == l).count() == 2).collect();
            vl.retain(|l| !looped.contains(l));
        }
        if vl.len() > 22 {
            return Err(TensorError::SizeGuardExceeded { entries: 1usize << vl.len().min(63) });
        }
        pieces.push(Labeled::for_vertex(kind, vl)?.trace_repeated());
    }

    let result = match strategy {
        Strategy::Greedy => contract_greedy(pieces)?,
        Strategy::Sequential => contract_sequential(pieces)?,
    };

    let mut out = Tensor::zeros(d.outputs().len(), d.inputs().len());
    let n = result.legs.len();
    let position: BTreeMap<usize, usize> =
        result.legs.iter().enumerate().map(|(k, &l)| (l, 1usize << (n - 1 - k))).collect();
    let order: Vec<usize> = d
        .outputs()
        .iter()
        .chain(d.inputs())
        .map(|&v| position[&boundary_label(v)])
        .collect();
    let total = order.len();
    for (idx, slot) in out.data.iter_mut().enumerate() {
        let mut src = 0;
        for (i, &bit) in order.iter().enumerate() {
            if idx >> (total - 1 - i) & 1 == 1 {
                src |= bit;
            }
        }
        *slot = result.data[src] * d.scalar();
    }
    Ok(out)
}

fn contract_greedy(mut pieces: Vec<Labeled>) -> TensorResult<Labeled> {
    if pieces.is_empty() {
        return Ok(Labeled { legs: vec![], data: vec![ONE] });
    }
    while pieces.len() > 1 {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let s = pieces[i].shared_with(&pieces[j]);
                if s == 0 {
                    continue;
                }
                let size = pieces[i].legs.len() + pieces[j].legs.len() - 2 * s;
                if best.is_none_or(|(_, _, b)| size < b) {
                    best = Some((i, j, size));
                }
            }
        }
        let (i, j) = match best {
            Some((i, j, _)) => (i, j),
            None => {
                // Only disconnected pieces remain: join the two smallest.
                let mut idx: Vec<usize> = (0..pieces.len()).collect();
                idx.sort_by_key(|&k| (pieces[k].legs.len(), k));
                (idx[0].min(idx[1]), idx[0].max(idx[1]))
            }
        };
        let b = pieces.swap_remove(j);
        let a = pieces.swap_remove(i);
        pieces.push(a.contract(&b)?);
    }
    Ok(pieces.pop().unwrap())
}

fn contract_sequential(pieces: Vec<Labeled>) -> TensorResult<Labeled> {
    let mut acc = Labeled { legs: vec![], data: vec![ONE] };
    for p in pieces {
        acc = acc.contract(&p)?;
    }
    Ok(acc)
}

// ---- comparison ------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    Exact,
    UpToScalar,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Equal,
    /// `b = ratio · a` for a ratio other than 1.
    ProportionalBy(Complex64),
    /// Largest absolute entry deviation found.
    Distinct(f64),
}

impl Verdict {
    /// Equal, or proportional in up-to-scalar mode.
    pub fn is_equivalent(&self) -> bool {
        !matches!(self, Verdict::Distinct(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "Equal"),
            Verdict::ProportionalBy(r) => write!(f, "ProportionalBy({:.12},{:.12})", r.re, r.im),
            Verdict::Distinct(dev) => write!(f, "Distinct({:.12})", dev),
        }
    }
}

/// Compares two tensors entrywise, either exactly or up to one global
/// scalar. In up-to-scalar mode the ratio is read off the largest
/// magnitude entry of `a`.
pub fn compare(a: &Tensor, b: &Tensor, mode: CompareMode, tolerance: f64) -> TensorResult<Verdict> {
    if a.shape() != b.shape() {
        return Err(TensorError::ShapeMismatch { left: a.shape(), right: b.shape() });
    }
    let verdict = match mode {
        CompareMode::Exact => {
            let dev = a.max_abs_diff(b);
            if dev <= tolerance {
                Verdict::Equal
            } else {
                Verdict::Distinct(dev)
            }
        }
        CompareMode::UpToScalar => {
            let (k, amax) = a
                .data
                .iter()
                .enumerate()
                .map(|(k, x)| (k, x.norm()))
                .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let bmax = b.max_abs();
            if amax <= tolerance || bmax <= tolerance {
                if amax <= tolerance && bmax <= tolerance {
                    Verdict::Equal
                } else {
                    Verdict::Distinct(amax.max(bmax))
                }
            } else {
                let ratio = b.data[k] / a.data[k];
                let dev = a
                    .data
                    .iter()
                    .zip(&b.data)
                    .map(|(x, y)| (y - ratio * x).norm())
                    .fold(0.0, f64::max);
                if dev > tolerance {
                    Verdict::Distinct(dev)
                } else if (ratio - ONE).norm() <= tolerance {
                    Verdict::Equal
                } else {
                    Verdict::ProportionalBy(ratio)
                }
            }
        }
    };
    Ok(verdict)
}

/// Evaluates both diagrams and compares their tensors.
pub fn compare_diagrams(a: &Diagram, b: &Diagram, mode: CompareMode, tolerance: f64) -> TensorResult<Verdict> {
    compare(&evaluate(a)?, &evaluate(b)?, mode, tolerance)
}
