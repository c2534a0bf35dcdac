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

//! Graphviz output.

use std::fmt::Write as _;

use crate::diagram::{Diagram, VertexKind};

/// Renders `d` as an undirected DOT graph. Vertices and edges are emitted
/// in ascending id order, so equal diagrams give identical text.
pub fn render_dot(d: &Diagram) -> String {
    let mut s = String::from("graph zx {\n  rankdir=BT;\n");
    for (v, k) in d.vertices() {
        let attrs = match k {
            VertexKind::Z(p) | VertexKind::X(p) => {
                let fill = if matches!(k, VertexKind::Z(_)) { "green" } else { "red" };
                let label = if p.is_zero() { String::new() } else { format!("{p} π") };
                format!("shape=circle, style=filled, fillcolor={fill}, label=\"{label}\"")
            }
            VertexKind::H => "shape=square, style=filled, fillcolor=yellow, label=\"\"".to_string(),
            VertexKind::Boundary => {
                let (side, pos) = match d.inputs().iter().position(|&b| b == v) {
                    Some(i) => ("in", i),
                    None => ("out", d.outputs().iter().position(|&b| b == v).unwrap_or(0)),
                };
                format!("shape=point, xlabel=\"{side}{pos}\"")
            }
        };
        let _ = writeln!(s, "  v{} [{attrs}];", v.0);
    }
    for (_, a, b) in d.edges() {
        let _ = writeln!(s, "  v{} -- v{};", a.0, b.0);
    }
    s.push_str("}\n");
    s
}
