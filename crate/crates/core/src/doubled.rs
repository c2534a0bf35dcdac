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

//! Doubled diagrams: density-matrix semantics with classical wires.
//!
//! A quantum wire is a pair of adjacent plain boundaries (ket, bra); a
//! classical wire is a single boundary. The underlying object is an
//! ordinary [`Diagram`], so rewriting and evaluation apply unchanged.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{Color, Diagram, DiagramError, VertexId, VertexKind};
use crate::phase::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireKind {
    Classical,
    Quantum,
}

impl WireKind {
    /// Number of plain boundaries the wire occupies.
    pub fn width(self) -> usize {
        match self {
            WireKind::Classical => 1,
            WireKind::Quantum => 2,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            WireKind::Classical => "c",
            WireKind::Quantum => "q",
        }
    }

    pub fn from_code(s: &str) -> Option<WireKind> {
        match s {
            "c" => Some(WireKind::Classical),
            "q" => Some(WireKind::Quantum),
            _ => None,
        }
    }
}

impl fmt::Display for WireKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DoubledError {
    #[error("wire kinds cover {kinds} boundaries but the diagram has {boundaries} {side}")]
    WidthMismatch { side: &'static str, kinds: usize, boundaries: usize },
    #[error("cannot compose: outputs {outputs:?} do not match inputs {inputs:?}")]
    KindMismatch { outputs: Vec<WireKind>, inputs: Vec<WireKind> },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A plain diagram together with the kinds of its logical wires.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubledDiagram {
    pub underlying: Diagram,
    pub input_kinds: Vec<WireKind>,
    pub output_kinds: Vec<WireKind>,
}

fn width(kinds: &[WireKind]) -> usize {
    kinds.iter().map(|k| k.width()).sum()
}

impl DoubledDiagram {
    pub fn new(
        underlying: Diagram,
        input_kinds: Vec<WireKind>,
        output_kinds: Vec<WireKind>,
    ) -> Result<Self, DoubledError> {
        let dd = DoubledDiagram { underlying, input_kinds, output_kinds };
        dd.check()?;
        Ok(dd)
    }

    /// A plain diagram all of whose wires are classical.
    pub fn classical(d: Diagram) -> Self {
        let input_kinds = vec![WireKind::Classical; d.inputs().len()];
        let output_kinds = vec![WireKind::Classical; d.outputs().len()];
        DoubledDiagram { underlying: d, input_kinds, output_kinds }
    }

    pub fn check(&self) -> Result<(), DoubledError> {
        for (side, kinds, n) in [
            ("inputs", &self.input_kinds, self.underlying.inputs().len()),
            ("outputs", &self.output_kinds, self.underlying.outputs().len()),
        ] {
            if width(kinds) != n {
                return Err(DoubledError::WidthMismatch { side, kinds: width(kinds), boundaries: n });
            }
        }
        Ok(())
    }

    /// Identity on the given wires.
    pub fn identity(kinds: &[WireKind]) -> Self {
        DoubledDiagram {
            underlying: Diagram::identity(width(kinds)),
            input_kinds: kinds.to_vec(),
            output_kinds: kinds.to_vec(),
        }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &DoubledDiagram) -> Result<Self, DoubledError> {
        if self.output_kinds != then.input_kinds {
            return Err(DoubledError::KindMismatch {
                outputs: self.output_kinds.clone(),
                inputs: then.input_kinds.clone(),
            });
        }
        Ok(DoubledDiagram {
            underlying: self.underlying.compose(&then.underlying)?,
            input_kinds: self.input_kinds.clone(),
            output_kinds: then.output_kinds.clone(),
        })
    }

    pub fn tensor(&self, right: &DoubledDiagram) -> Self {
        DoubledDiagram {
            underlying: self.underlying.tensor(&right.underlying),
            input_kinds: [self.input_kinds.clone(), right.input_kinds.clone()].concat(),
            output_kinds: [self.output_kinds.clone(), right.output_kinds.clone()].concat(),
        }
    }

    pub fn adjoint(&self) -> Self {
        DoubledDiagram {
            underlying: self.underlying.adjoint(),
            input_kinds: self.output_kinds.clone(),
            output_kinds: self.input_kinds.clone(),
        }
    }
}

/// Pairs `d` with its conjugate, interleaving boundaries as (ket, bra).
pub fn double(d: &Diagram) -> DoubledDiagram {
    let mut u = Diagram::new();
    let mut ket: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut bra: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &b in d.inputs() {
        ket.insert(b, u.add_input());
        bra.insert(b, u.add_input());
    }
    for &b in d.outputs() {
        ket.insert(b, u.add_output());
        bra.insert(b, u.add_output());
    }
    for (v, k) in d.vertices() {
        if k.is_boundary() {
            continue;
        }
        let conj = match k.phase() {
            Some(p) => k.with_phase(-p),
            None => k,
        };
        ket.insert(v, u.add_spider(k));
        bra.insert(v, u.add_spider(conj));
    }
    for (_, a, b) in d.edges() {
        u.connect(ket[&a], ket[&b]);
        u.connect(bra[&a], bra[&b]);
    }
    let s = d.scalar();
    u.mul_scalar(s * s.conj());
    DoubledDiagram {
        underlying: u,
        input_kinds: vec![WireKind::Quantum; d.inputs().len()],
        output_kinds: vec![WireKind::Quantum; d.outputs().len()],
    }
}

fn spider_with(color: Color, inputs: usize, outputs: usize) -> Diagram {
    Diagram::single(VertexKind::spider(color, Phase::ZERO), inputs, outputs)
}

/// Quantum in, classical out: a 3-legged spider.
pub fn measure_spider(color: Color) -> DoubledDiagram {
    DoubledDiagram {
        underlying: spider_with(color, 2, 1),
        input_kinds: vec![WireKind::Quantum],
        output_kinds: vec![WireKind::Classical],
    }
}

/// Classical in, quantum out: the mirror image of [`measure_spider`].
pub fn encode_spider(color: Color) -> DoubledDiagram {
    DoubledDiagram {
        underlying: spider_with(color, 1, 2),
        input_kinds: vec![WireKind::Classical],
        output_kinds: vec![WireKind::Quantum],
    }
}

/// Quantum in, quantum and classical out: a 5-legged spider.
pub fn nondemolition_measure(color: Color) -> DoubledDiagram {
    DoubledDiagram {
        underlying: spider_with(color, 2, 3),
        input_kinds: vec![WireKind::Quantum],
        output_kinds: vec![WireKind::Quantum, WireKind::Classical],
    }
}

/// The uniform distribution on one classical wire, as a Z-spider.
pub fn uniform_state() -> DoubledDiagram {
    uniform_state_of(Color::Z)
}

/// One-legged spider of either colour on a classical wire.
pub fn uniform_state_of(color: Color) -> DoubledDiagram {
    DoubledDiagram::classical(spider_with(color, 0, 1))
}

/// Discarding a classical wire: the adjoint of [`uniform_state`].
pub fn discard_classical() -> DoubledDiagram {
    uniform_state().adjoint()
}
