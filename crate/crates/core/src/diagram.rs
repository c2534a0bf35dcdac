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

//! Open multigraph representation of ZX-diagrams.
//!
//! A [`Diagram`] is a multiset of undirected edges over Z-spiders,
//! X-spiders, Hadamard boxes and boundary vertices, together with ordered
//! input and output boundary lists and a global scalar. Spiders may carry
//! parallel edges and self-loops; H-boxes always have degree 2 and
//! boundaries degree 1 once a diagram validates.
//!
//! Vertex ids are opaque and allocated fresh on insertion. Iteration over
//! vertices and edges is always in ascending id order, which is the
//! canonical order used by matching and serialization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::phase::Phase;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Spider colour: Z is green, X is red.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn toggle(self) -> Color {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VertexKind {
    Z(Phase),
    X(Phase),
    /// Hadamard box; always binary.
    H,
    /// Open end of a wire, listed in exactly one of the boundary lists.
    Boundary,
}

impl VertexKind {
    pub fn spider(color: Color, phase: Phase) -> Self {
        match color {
            Color::Z => VertexKind::Z(phase),
            Color::X => VertexKind::X(phase),
        }
    }

    pub fn color(&self) -> Option<Color> {
        match self {
            VertexKind::Z(_) => Some(Color::Z),
            VertexKind::X(_) => Some(Color::X),
            _ => None,
        }
    }

    pub fn phase(&self) -> Option<Phase> {
        match self {
            VertexKind::Z(p) | VertexKind::X(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_spider(&self) -> bool {
        self.color().is_some()
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, VertexKind::Boundary)
    }

    pub fn is_hadamard(&self) -> bool {
        matches!(self, VertexKind::H)
    }

    /// Same kind with the phase replaced; non-spiders are returned as is.
    pub fn with_phase(&self, phase: Phase) -> Self {
        match self.color() {
            Some(c) => VertexKind::spider(c, phase),
            None => *self,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            VertexKind::Z(_) => "Z-spider",
            VertexKind::X(_) => "X-spider",
            VertexKind::H => "HBox",
            VertexKind::Boundary => "Boundary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0:?}")]
    UnknownEdge(EdgeId),
    #[error("{kind} vertex {vertex} has degree {degree} ({kind} vertices must have degree exactly {expected})")]
    DegreeViolation {
        vertex: VertexId,
        kind: &'static str,
        degree: usize,
        expected: usize,
    },
    #[error("{kind} vertex {vertex} has a self-loop (self-loops are only permitted on spiders)")]
    ForbiddenSelfLoop { vertex: VertexId, kind: &'static str },
    #[error("boundary vertex {0} is not listed as an input or output")]
    BoundaryNotListed(VertexId),
    #[error("boundary vertex {0} is listed more than once among inputs/outputs")]
    BoundaryListedTwice(VertexId),
    #[error("vertex {0} is listed as an input/output but is not a boundary")]
    NotABoundary(VertexId),
    #[error("arity mismatch: {outputs} outputs composed onto {inputs} inputs")]
    ArityMismatch { outputs: usize, inputs: usize },
    #[error("boundary index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex relabelling is not a bijection onto fresh ids")]
    BadRelabelling,
}

pub type DiagramResult<T> = Result<T, DiagramError>;

#[derive(Clone, Debug)]
pub struct Diagram {
    vertices: BTreeMap<VertexId, VertexKind>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    scalar: Complex64,
    next_vertex: usize,
    next_edge: usize,
}

impl Default for Diagram {
    fn default() -> Self {
        Self::new()
    }
}

impl Diagram {
    pub fn new() -> Self {
        Diagram {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            scalar: Complex64::new(1.0, 0.0),
            next_vertex: 0,
            next_edge: 0,
        }
    }

    // ---- construction ----------------------------------------------------

    fn insert_vertex(&mut self, kind: VertexKind) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(v, kind);
        self.incidence.insert(v, BTreeSet::new());
        v
    }

    /// Adds an isolated spider or H-box.
    ///
    /// Boundaries are created with [`Diagram::add_input`] and
    /// [`Diagram::add_output`] so that they are always listed.
    pub fn add_spider(&mut self, kind: VertexKind) -> VertexId {
        assert!(!kind.is_boundary(), "use add_input/add_output for boundaries");
        self.insert_vertex(kind)
    }

    pub fn add_z(&mut self, phase: Phase) -> VertexId {
        self.add_spider(VertexKind::Z(phase))
    }

    pub fn add_x(&mut self, phase: Phase) -> VertexId {
        self.add_spider(VertexKind::X(phase))
    }

    pub fn add_h(&mut self) -> VertexId {
        self.add_spider(VertexKind::H)
    }

    /// Appends a new boundary vertex to the input list.
    pub fn add_input(&mut self) -> VertexId {
        let v = self.insert_vertex(VertexKind::Boundary);
        self.inputs.push(v);
        v
    }

    /// Appends a new boundary vertex to the output list.
    pub fn add_output(&mut self) -> VertexId {
        let v = self.insert_vertex(VertexKind::Boundary);
        self.outputs.push(v);
        v
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> DiagramResult<EdgeId> {
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(DiagramError::UnknownVertex(v));
            }
        }
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(e, (a.min(b), a.max(b)));
        self.incidence.get_mut(&a).unwrap().insert(e);
        self.incidence.get_mut(&b).unwrap().insert(e);
        Ok(e)
    }

    /// Connects two vertices known to exist.
    pub(crate) fn connect(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        self.add_edge(a, b).expect("endpoints exist")
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        let (a, b) = self.edges.remove(&e)?;
        if let Some(s) = self.incidence.get_mut(&a) {
            s.remove(&e);
        }
        if let Some(s) = self.incidence.get_mut(&b) {
            s.remove(&e);
        }
        Some((a, b))
    }

    /// Removes a vertex with all its incident edges; boundaries are also
    /// dropped from the boundary lists.
    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        if let Some(es) = self.incidence.remove(&v) {
            for e in es {
                if let Some((a, b)) = self.edges.remove(&e) {
                    let other = if a == v { b } else { a };
                    if let Some(s) = self.incidence.get_mut(&other) {
                        s.remove(&e);
                    }
                }
            }
        }
        self.vertices.remove(&v);
        self.inputs.retain(|&x| x != v);
        self.outputs.retain(|&x| x != v);
    }

    pub(crate) fn set_kind(&mut self, v: VertexId, kind: VertexKind) {
        if let Some(k) = self.vertices.get_mut(&v) {
            *k = kind;
        }
    }

    /// Multiplies the global scalar. This is the only way to change it.
    pub fn mul_scalar(&mut self, factor: Complex64) {
        self.scalar *= factor;
    }

    // ---- queries ---------------------------------------------------------

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.vertices.get(&v).copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, VertexKind)> + '_ {
        self.vertices.iter().map(|(&v, &k)| (v, k))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    /// Edges in ascending id order, endpoints as `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence.get(&v).into_iter().flatten().copied()
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a self-loop).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.edge_endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn is_self_loop(&self, e: EdgeId) -> bool {
        matches!(self.edge_endpoints(e), Some((a, b)) if a == b)
    }

    /// Number of edge ends at `v`; a self-loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v)
            .map(|e| if self.is_self_loop(e) { 2 } else { 1 })
            .sum()
    }

    /// Incident self-loop edges of `v`.
    pub fn self_loops(&self, v: VertexId) -> Vec<EdgeId> {
        self.incident_edges(v).filter(|&e| self.is_self_loop(e)).collect()
    }

    /// Neighbours of `v` with multiplicity, one entry per non-loop edge,
    /// in edge-id order.
    pub fn neighbors(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        self.incident_edges(v)
            .filter_map(|e| match self.edge_endpoints(e) {
                Some((a, b)) if a != b => Some((e, if a == v { b } else { a })),
                _ => None,
            })
            .collect()
    }

    /// All edges joining `a` and `b`, in ascending id order.
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        let key = (a.min(b), a.max(b));
        self.incident_edges(a)
            .filter(|e| self.edges.get(e) == Some(&key))
            .collect()
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of Z/X spiders.
    pub fn spider_count(&self) -> usize {
        self.vertices.values().filter(|k| k.is_spider()).count()
    }

    /// Number of non-boundary vertices.
    pub fn node_count(&self) -> usize {
        self.vertices.values().filter(|k| !k.is_boundary()).count()
    }

    pub fn boundary_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    // ---- validation ------------------------------------------------------

    pub fn validate(&self) -> DiagramResult<()> {
        for (&e, &(a, b)) in &self.edges {
            for v in [a, b] {
                if !self.vertices.contains_key(&v) {
                    return Err(DiagramError::UnknownVertex(v));
                }
                if !self.incidence[&v].contains(&e) {
                    return Err(DiagramError::UnknownEdge(e));
                }
            }
        }
        let mut listed = BTreeSet::new();
        for &v in self.inputs.iter().chain(&self.outputs) {
            match self.vertices.get(&v) {
                None => return Err(DiagramError::UnknownVertex(v)),
                Some(VertexKind::Boundary) => {}
                Some(_) => return Err(DiagramError::NotABoundary(v)),
            }
            if !listed.insert(v) {
                return Err(DiagramError::BoundaryListedTwice(v));
            }
        }
        for (&v, kind) in &self.vertices {
            let expected = match kind {
                VertexKind::H => 2,
                VertexKind::Boundary => 1,
                _ => continue,
            };
            if !self.self_loops(v).is_empty() {
                return Err(DiagramError::ForbiddenSelfLoop { vertex: v, kind: kind.name() });
            }
            let degree = self.degree(v);
            if degree != expected {
                return Err(DiagramError::DegreeViolation {
                    vertex: v,
                    kind: kind.name(),
                    degree,
                    expected,
                });
            }
            if kind.is_boundary() && !listed.contains(&v) {
                return Err(DiagramError::BoundaryNotListed(v));
            }
        }
        Ok(())
    }

    fn boundary_neighbor(&self, b: VertexId) -> DiagramResult<(EdgeId, VertexId)> {
        let es: Vec<EdgeId> = self.incident_edges(b).collect();
        match es.as_slice() {
            [e] if !self.is_self_loop(*e) => Ok((*e, self.other_end(*e, b).unwrap())),
            _ => Err(DiagramError::DegreeViolation {
                vertex: b,
                kind: "Boundary",
                degree: self.degree(b),
                expected: 1,
            }),
        }
    }

    // ---- composition -----------------------------------------------------

    /// Copies every vertex and edge of `other` into `self` under fresh ids
    /// and multiplies in its scalar. Boundary lists are left untouched;
    /// the returned map translates `other`'s ids.
    fn absorb(&mut self, other: &Diagram) -> BTreeMap<VertexId, VertexId> {
        let map: BTreeMap<VertexId, VertexId> = other
            .vertices()
            .map(|(v, k)| (v, self.insert_vertex(k)))
            .collect();
        for (_, a, b) in other.edges() {
            self.connect(map[&a], map[&b]);
        }
        self.scalar *= other.scalar;
        map
    }

    /// Deletes two boundary vertices and joins their neighbours. If the two
    /// boundaries were wired directly to each other the resulting closed
    /// loop is a circle, worth a factor of 2.
    fn fuse_boundaries(&mut self, a: VertexId, b: VertexId) -> DiagramResult<()> {
        let (ea, na) = self.boundary_neighbor(a)?;
        let (eb, nb) = self.boundary_neighbor(b)?;
        self.remove_vertex(a);
        self.remove_vertex(b);
        if ea == eb {
            self.scalar *= 2.0;
        } else {
            self.connect(na, nb);
        }
        Ok(())
    }

    /// Sequential composition: `self` first, then `then`.
    pub fn compose(&self, then: &Diagram) -> DiagramResult<Diagram> {
        if self.outputs.len() != then.inputs.len() {
            return Err(DiagramError::ArityMismatch {
                outputs: self.outputs.len(),
                inputs: then.inputs.len(),
            });
        }
        let mut d = self.clone();
        let map = d.absorb(then);
        let pairs: Vec<(VertexId, VertexId)> = self
            .outputs
            .iter()
            .zip(&then.inputs)
            .map(|(&o, i)| (o, map[i]))
            .collect();
        for (o, i) in pairs {
            d.fuse_boundaries(o, i)?;
        }
        d.inputs = self.inputs.clone();
        d.outputs = then.outputs.iter().map(|o| map[o]).collect();
        Ok(d)
    }

    /// Parallel composition; `right`'s boundaries follow `self`'s.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let mut d = self.clone();
        let map = d.absorb(right);
        d.inputs.extend(right.inputs.iter().map(|v| map[v]));
        d.outputs.extend(right.outputs.iter().map(|v| map[v]));
        d
    }

    /// Negates every phase and conjugates the scalar, keeping boundaries.
    pub fn conjugate(&self) -> Diagram {
        let mut d = self.clone();
        for k in d.vertices.values_mut() {
            if let Some(p) = k.phase() {
                *k = k.with_phase(-p);
            }
        }
        d.scalar = d.scalar.conj();
        d
    }

    /// The dagger: boundaries swapped, phases negated, scalar conjugated.
    pub fn adjoint(&self) -> Diagram {
        let mut d = self.conjugate();
        std::mem::swap(&mut d.inputs, &mut d.outputs);
        d
    }

    /// Turns input `which` into the new last output (attaching a cup).
    pub fn bend_input_to_output(&self, which: usize) -> DiagramResult<Diagram> {
        if which >= self.inputs.len() {
            return Err(DiagramError::IndexOutOfRange { index: which, len: self.inputs.len() });
        }
        let mut d = self.clone();
        let b = d.inputs.remove(which);
        d.outputs.push(b);
        Ok(d)
    }

    /// Turns output `which` into an input at `position` (attaching a cap).
    pub fn bend_output_to_input(&self, which: usize, position: usize) -> DiagramResult<Diagram> {
        if which >= self.outputs.len() {
            return Err(DiagramError::IndexOutOfRange { index: which, len: self.outputs.len() });
        }
        if position > self.inputs.len() {
            return Err(DiagramError::IndexOutOfRange { index: position, len: self.inputs.len() + 1 });
        }
        let mut d = self.clone();
        let b = d.outputs.remove(which);
        d.inputs.insert(position, b);
        Ok(d)
    }

    /// Assembles a diagram from explicit parts and validates it. Vertex ids
    /// are taken as given; edge ids follow the order of `edges`.
    pub fn from_parts(
        vertices: BTreeMap<VertexId, VertexKind>,
        edges: &[(VertexId, VertexId)],
        inputs: Vec<VertexId>,
        outputs: Vec<VertexId>,
        scalar: Complex64,
    ) -> DiagramResult<Diagram> {
        let mut d = Diagram::new();
        d.next_vertex = vertices.keys().next_back().map_or(0, |v| v.0 + 1);
        for (&v, &k) in &vertices {
            d.vertices.insert(v, k);
            d.incidence.insert(v, BTreeSet::new());
        }
        for &(a, b) in edges {
            d.add_edge(a, b)?;
        }
        d.inputs = inputs;
        d.outputs = outputs;
        d.scalar = scalar;
        d.validate()?;
        Ok(d)
    }

    /// Renames vertices through `mapping`, which must be injective and
    /// defined on every vertex. Edges are re-inserted in the order of
    /// their renamed endpoints.
    pub fn relabel(&self, mapping: &BTreeMap<VertexId, VertexId>) -> DiagramResult<Diagram> {
        let targets: BTreeSet<VertexId> = mapping.values().copied().collect();
        if targets.len() != mapping.len() || self.vertex_ids().any(|v| !mapping.contains_key(&v)) {
            return Err(DiagramError::BadRelabelling);
        }
        let mut d = Diagram::new();
        for (v, k) in self.vertices() {
            let w = mapping[&v];
            d.vertices.insert(w, k);
            d.incidence.insert(w, BTreeSet::new());
        }
        d.next_vertex = targets.iter().next_back().map_or(0, |v| v.0 + 1);
        let mut es: Vec<(VertexId, VertexId)> = self
            .edges()
            .map(|(_, a, b)| {
                let (x, y) = (mapping[&a], mapping[&b]);
                (x.min(y), x.max(y))
            })
            .collect();
        es.sort();
        for (a, b) in es {
            d.connect(a, b);
        }
        d.inputs = self.inputs.iter().map(|v| mapping[v]).collect();
        d.outputs = self.outputs.iter().map(|v| mapping[v]).collect();
        d.scalar = self.scalar;
        Ok(d)
    }

    /// The sorted multiset of edge endpoints.
    pub fn edge_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut es: Vec<_> = self.edges.values().copied().collect();
        es.sort();
        es
    }

    /// Graph isomorphism preserving vertex kinds, edge multiplicities and
    /// the boundary lists position by position. Scalars are compared to
    /// within `scalar_tol`.
    pub fn is_isomorphic(&self, other: &Diagram, scalar_tol: f64) -> bool {
        if self.num_vertices() != other.num_vertices()
            || self.num_edges() != other.num_edges()
            || self.inputs.len() != other.inputs.len()
            || self.outputs.len() != other.outputs.len()
            || (self.scalar - other.scalar).norm() > scalar_tol
        {
            return false;
        }
        let mut iso = Isomorphism::new(self, other);
        for (a, b) in self
            .inputs
            .iter()
            .zip(&other.inputs)
            .chain(self.outputs.iter().zip(&other.outputs))
        {
            if !iso.try_pair(*a, *b) {
                return false;
            }
        }
        iso.search()
    }

    // ---- standard pieces -------------------------------------------------

    /// `n` parallel bare wires.
    pub fn identity(n: usize) -> Diagram {
        let mut d = Diagram::new();
        let ins: Vec<_> = (0..n).map(|_| d.add_input()).collect();
        for i in ins {
            let o = d.add_output();
            d.connect(i, o);
        }
        d
    }

    /// The Bell state |00⟩ + |11⟩ as a bent wire.
    pub fn cup() -> Diagram {
        let mut d = Diagram::new();
        let a = d.add_output();
        let b = d.add_output();
        d.connect(a, b);
        d
    }

    /// The Bell effect ⟨00| + ⟨11| as a bent wire.
    pub fn cap() -> Diagram {
        Diagram::cup().adjoint()
    }

    /// A single vertex with `n_in` input and `n_out` output legs.
    pub fn single(kind: VertexKind, n_in: usize, n_out: usize) -> Diagram {
        let mut d = Diagram::new();
        let v = d.add_spider(kind);
        for _ in 0..n_in {
            let b = d.add_input();
            d.connect(b, v);
        }
        for _ in 0..n_out {
            let b = d.add_output();
            d.connect(v, b);
        }
        d
    }
}

/// Structural equality ignoring edge ids and allocation counters.
impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.scalar == other.scalar
            && self.edge_multiset() == other.edge_multiset()
    }
}

/// Backtracking isomorphism search anchored at the boundary lists.
struct Isomorphism<'a> {
    left: &'a Diagram,
    right: &'a Diagram,
    fwd: BTreeMap<VertexId, VertexId>,
    bwd: BTreeMap<VertexId, VertexId>,
    order: Vec<VertexId>,
}

impl<'a> Isomorphism<'a> {
    fn new(left: &'a Diagram, right: &'a Diagram) -> Self {
        // Visit vertices breadth-first from the boundaries so that most
        // candidates are already pinned by a mapped neighbour.
        let mut order = Vec::new();
        let mut seen = BTreeSet::new();
        let roots: Vec<VertexId> = left
            .inputs
            .iter()
            .chain(&left.outputs)
            .copied()
            .chain(left.vertex_ids())
            .collect();
        for r in roots {
            if !seen.insert(r) {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for (_, w) in left.neighbors(v) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        Isomorphism { left, right, fwd: BTreeMap::new(), bwd: BTreeMap::new(), order }
    }

    fn compatible(&self, a: VertexId, b: VertexId) -> bool {
        if self.left.kind(a) != self.right.kind(b)
            || self.left.degree(a) != self.right.degree(b)
            || self.left.self_loops(a).len() != self.right.self_loops(b).len()
        {
            return false;
        }
        for (&x, &y) in &self.fwd {
            if self.left.edges_between(a, x).len() != self.right.edges_between(b, y).len() {
                return false;
            }
        }
        true
    }

    fn try_pair(&mut self, a: VertexId, b: VertexId) -> bool {
        match (self.fwd.get(&a), self.bwd.get(&b)) {
            (Some(&x), _) => x == b,
            (None, Some(_)) => false,
            (None, None) => {
                if !self.compatible(a, b) {
                    return false;
                }
                self.fwd.insert(a, b);
                self.bwd.insert(b, a);
                true
            }
        }
    }

    fn search(&mut self) -> bool {
        let Some(&next) = self.order.iter().find(|v| !self.fwd.contains_key(v)) else {
            return true;
        };
        let candidates: Vec<VertexId> =
            self.right.vertex_ids().filter(|w| !self.bwd.contains_key(w)).collect();
        for w in candidates {
            if self.try_pair(next, w) {
                if self.search() {
                    return true;
                }
                self.fwd.remove(&next);
                self.bwd.remove(&w);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_ids_are_distinct() {
        let mut d = Diagram::new();
        let a = d.add_z(Phase::ZERO);
        let b = d.add_x(Phase::ZERO);
        let c = d.add_input();
        let h = d.add_h();
        let ids: BTreeSet<_> = [a, b, c, h].into_iter().collect();
        assert_eq!(ids.len(), 4);
    }

    #[test]
    fn parallel_edges_and_loops() {
        let mut d = Diagram::new();
        let z = d.add_z(Phase::ZERO);
        let x = d.add_x(Phase::ZERO);
        d.add_edge(z, x).unwrap();
        d.add_edge(z, x).unwrap();
        assert_eq!(d.edges_between(z, x).len(), 2);
        let l = d.add_edge(z, z).unwrap();
        assert!(d.is_self_loop(l));
        assert_eq!(d.self_loops(z), vec![l]);
        assert_eq!(d.degree(z), 4);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn unknown_vertex_rejected() {
        let mut d = Diagram::new();
        let z = d.add_z(Phase::ZERO);
        assert_eq!(d.add_edge(z, VertexId(42)), Err(DiagramError::UnknownVertex(VertexId(42))));
    }

    #[test]
    fn boundary_degree_checked_at_validation() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let z = d.add_z(Phase::ZERO);
        let x = d.add_x(Phase::ZERO);
        d.add_edge(i, z).unwrap();
        assert!(d.validate().is_ok());
        d.add_edge(i, x).unwrap();
        assert!(matches!(
            d.validate(),
            Err(DiagramError::DegreeViolation { kind: "Boundary", degree: 2, .. })
        ));
    }

    #[test]
    fn hbox_degree_and_loops() {
        let mut d = Diagram::new();
        let h = d.add_h();
        assert!(matches!(d.validate(), Err(DiagramError::DegreeViolation { kind: "HBox", degree: 0, .. })));
        d.add_edge(h, h).unwrap();
        assert!(matches!(d.validate(), Err(DiagramError::ForbiddenSelfLoop { .. })));
    }

    #[test]
    fn compose_identities() {
        let d = Diagram::identity(1).compose(&Diagram::identity(1)).unwrap();
        assert!(d.validate().is_ok());
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_edges(), 1);
        assert!(d.is_isomorphic(&Diagram::identity(1), 0.0));
    }

    #[test]
    fn circle_is_two() {
        let d = Diagram::cup().compose(&Diagram::cap()).unwrap();
        assert_eq!(d.num_vertices(), 0);
        assert_eq!(d.scalar(), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn compose_arity_mismatch() {
        let err = Diagram::identity(2).compose(&Diagram::identity(1)).unwrap_err();
        assert_eq!(err, DiagramError::ArityMismatch { outputs: 2, inputs: 1 });
    }

    #[test]
    fn tensor_orders_boundaries() {
        let a = Diagram::single(VertexKind::Z(Phase::ZERO), 1, 1);
        let b = Diagram::cup();
        let d = a.tensor(&b);
        assert_eq!(d.inputs().len(), 1);
        assert_eq!(d.outputs().len(), 3);
        assert_eq!(d.kind(d.outputs()[1]), Some(VertexKind::Boundary));
        assert!(d.validate().is_ok());
    }

    #[test]
    fn adjoint_is_involution() {
        let d = Diagram::single(VertexKind::Z(Phase::HALF_PI), 1, 2);
        let a = d.adjoint();
        assert_eq!(a.inputs().len(), 2);
        let v = a.vertex_ids().find(|&v| a.kind(v).unwrap().is_spider()).unwrap();
        assert_eq!(a.kind(v), Some(VertexKind::Z(Phase::new(3, 2))));
        assert_eq!(a.adjoint(), d);
        assert!(Diagram::cup().adjoint().is_isomorphic(&Diagram::cap(), 0.0));
    }

    #[test]
    fn bend_errors() {
        let d = Diagram::identity(1);
        assert!(matches!(d.bend_input_to_output(1), Err(DiagramError::IndexOutOfRange { .. })));
        let bent = d.bend_input_to_output(0).unwrap();
        assert!(bent.inputs().is_empty());
        assert_eq!(bent.outputs().len(), 2);
        assert_eq!(bent.bend_output_to_input(1, 0).unwrap(), d);
    }

    #[test]
    fn relabel_preserves_structure() {
        let d = Diagram::single(VertexKind::X(Phase::PI), 2, 1);
        let mapping: BTreeMap<_, _> = d.vertex_ids().map(|v| (v, VertexId(100 - v.0))).collect();
        let r = d.relabel(&mapping).unwrap();
        assert!(r.validate().is_ok());
        assert!(r.is_isomorphic(&d, 0.0));
        let bad: BTreeMap<_, _> = d.vertex_ids().map(|v| (v, VertexId(0))).collect();
        assert_eq!(d.relabel(&bad).unwrap_err(), DiagramError::BadRelabelling);
    }
}
