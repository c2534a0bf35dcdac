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

//! The JSON diagram file format.
//!
//! ```json
//! {
//!   "edges": [
//!     [0, 2],
//!     [1, 2]
//!   ],
//!   "inputs": [0],
//!   "outputs": [1],
//!   "scalar": [1.0, 0.0],
//!   "vertices": {
//!     "0": {"kind": "B"},
//!     "1": {"kind": "B"},
//!     "2": {"kind": "Z", "phase": "1/4"}
//!   }
//! }
//! ```
//!
//! Kinds are `Z`, `X`, `H` and `B` (boundary); phases are `p/q` in units
//! of π. An optional `wire-kinds` object lists `c`/`q` per logical wire
//! for doubled diagrams. The serializer writes a canonical form (keys
//! sorted, ids ascending, phases in lowest terms) that parses back to the
//! same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, VertexId, VertexKind};
use crate::doubled::{DoubledDiagram, DoubledError, WireKind};
use crate::phase::Phase;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("invalid diagram: {0}")]
    Diagram(#[from] DiagramError),
    #[error("invalid wire-kinds: {0}")]
    WireKinds(#[from] DoubledError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    kind: String,
    phase: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKinds {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

fn unit_scalar() -> [f64; 2] {
    [1.0, 0.0]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    vertices: BTreeMap<String, RawVertex>,
    edges: Vec<[usize; 2]>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    #[serde(default = "unit_scalar")]
    scalar: [f64; 2],
    #[serde(rename = "wire-kinds")]
    wire_kinds: Option<RawKinds>,
}

/// Wire kinds for the logical inputs and outputs of a doubled diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireKinds {
    pub inputs: Vec<WireKind>,
    pub outputs: Vec<WireKind>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramFile {
    pub diagram: Diagram,
    pub wire_kinds: Option<WireKinds>,
}

impl DiagramFile {
    pub fn plain(diagram: Diagram) -> Self {
        DiagramFile { diagram, wire_kinds: None }
    }

    pub fn doubled(dd: &DoubledDiagram) -> Self {
        DiagramFile {
            diagram: dd.underlying.clone(),
            wire_kinds: Some(WireKinds { inputs: dd.input_kinds.clone(), outputs: dd.output_kinds.clone() }),
        }
    }

    /// The file as a doubled diagram; plain files count as all-classical.
    pub fn to_doubled(&self) -> Result<DoubledDiagram, DoubledError> {
        match &self.wire_kinds {
            Some(k) => DoubledDiagram::new(self.diagram.clone(), k.inputs.clone(), k.outputs.clone()),
            None => Ok(DoubledDiagram::classical(self.diagram.clone())),
        }
    }
}

fn parse_kind(id: &str, v: &RawVertex) -> Result<VertexKind, FormatError> {
    let phase = || -> Result<Phase, FormatError> {
        match &v.phase {
            None => Ok(Phase::ZERO),
            Some(p) => p.parse().map_err(|e| FormatError::Invalid(format!("vertex {id}: {e}"))),
        }
    };
    let no_phase = || {
        if v.phase.is_some() {
            Err(FormatError::Invalid(format!("vertex {id}: only Z and X spiders carry a phase")))
        } else {
            Ok(())
        }
    };
    match v.kind.as_str() {
        "Z" => Ok(VertexKind::Z(phase()?)),
        "X" => Ok(VertexKind::X(phase()?)),
        "H" => no_phase().map(|_| VertexKind::H),
        "B" => no_phase().map(|_| VertexKind::Boundary),
        k => Err(FormatError::Invalid(format!("vertex {id}: unknown kind `{k}` (expected Z, X, H or B)"))),
    }
}

fn parse_wire_kinds(list: &[String]) -> Result<Vec<WireKind>, FormatError> {
    list.iter()
        .map(|s| {
            WireKind::from_code(s)
                .ok_or_else(|| FormatError::Invalid(format!("unknown wire kind `{s}` (expected c or q)")))
        })
        .collect()
}

pub fn parse_file(text: &str) -> Result<DiagramFile, FormatError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut vertices = BTreeMap::new();
    for (id, v) in &raw.vertices {
        let n: usize = id
            .parse()
            .map_err(|_| FormatError::Invalid(format!("vertex id `{id}` is not a non-negative integer")))?;
        if vertices.insert(VertexId(n), parse_kind(id, v)?).is_some() {
            return Err(FormatError::Invalid(format!("vertex id {n} appears twice")));
        }
    }
    let edges: Vec<(VertexId, VertexId)> = raw.edges.iter().map(|&[a, b]| (VertexId(a), VertexId(b))).collect();
    let diagram = Diagram::from_parts(
        vertices,
        &edges,
        raw.inputs.into_iter().map(VertexId).collect(),
        raw.outputs.into_iter().map(VertexId).collect(),
        Complex64::new(raw.scalar[0], raw.scalar[1]),
    )?;
    let wire_kinds = match raw.wire_kinds {
        None => None,
        Some(k) => {
            let k = WireKinds { inputs: parse_wire_kinds(&k.inputs)?, outputs: parse_wire_kinds(&k.outputs)? };
            DoubledDiagram::new(diagram.clone(), k.inputs.clone(), k.outputs.clone())?;
            Some(k)
        }
    };
    Ok(DiagramFile { diagram, wire_kinds })
}

pub fn parse_diagram(text: &str) -> Result<Diagram, FormatError> {
    parse_file(text).map(|f| f.diagram)
}

fn float(x: f64) -> String {
    serde_json::to_string(&x).expect("finite scalar")
}

fn id_list(ids: &[VertexId]) -> String {
    let ids: Vec<String> = ids.iter().map(|v| v.0.to_string()).collect();
    format!("[{}]", ids.join(", "))
}

fn kind_list(kinds: &[WireKind]) -> String {
    let ks: Vec<String> = kinds.iter().map(|k| format!("\"{}\"", k.code())).collect();
    format!("[{}]", ks.join(", "))
}

pub fn serialize_file(f: &DiagramFile) -> String {
    let d = &f.diagram;
    let mut s = String::from("{\n");
    let edges = d.edge_multiset();
    if edges.is_empty() {
        s.push_str("  \"edges\": [],\n");
    } else {
        s.push_str("  \"edges\": [\n");
        let lines: Vec<String> = edges.iter().map(|(a, b)| format!("    [{}, {}]", a.0, b.0)).collect();
        s.push_str(&lines.join(",\n"));
        s.push_str("\n  ],\n");
    }
    let _ = writeln!(s, "  \"inputs\": {},", id_list(d.inputs()));
    let _ = writeln!(s, "  \"outputs\": {},", id_list(d.outputs()));
    let _ = writeln!(s, "  \"scalar\": [{}, {}],", float(d.scalar().re), float(d.scalar().im));
    let tail = if f.wire_kinds.is_some() { "," } else { "" };
    let verts: Vec<String> = d
        .vertices()
        .map(|(v, k)| {
            let body = match k {
                VertexKind::Z(p) => format!("{{\"kind\": \"Z\", \"phase\": \"{p}\"}}"),
                VertexKind::X(p) => format!("{{\"kind\": \"X\", \"phase\": \"{p}\"}}"),
                VertexKind::H => "{\"kind\": \"H\"}".to_string(),
                VertexKind::Boundary => "{\"kind\": \"B\"}".to_string(),
            };
            format!("    \"{}\": {}", v.0, body)
        })
        .collect();
    if verts.is_empty() {
        let _ = writeln!(s, "  \"vertices\": {{}}{tail}");
    } else {
        s.push_str("  \"vertices\": {\n");
        s.push_str(&verts.join(",\n"));
        let _ = writeln!(s, "\n  }}{tail}");
    }
    if let Some(k) = &f.wire_kinds {
        let _ = writeln!(
            s,
            "  \"wire-kinds\": {{\"inputs\": {}, \"outputs\": {}}}",
            kind_list(&k.inputs),
            kind_list(&k.outputs)
        );
    }
    s.push_str("}\n");
    s
}

pub fn serialize_diagram(d: &Diagram) -> String {
    serialize_file(&DiagramFile::plain(d.clone()))
}

pub fn serialize_doubled(dd: &DoubledDiagram) -> String {
    serialize_file(&DiagramFile::doubled(dd))
}
