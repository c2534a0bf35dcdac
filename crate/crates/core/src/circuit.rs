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

//! Gate circuits and their translation into diagrams.
//!
//! The text format is line oriented:
//!
//! ```text
//! qubits 2
//! h 0
//! rz 1/4 1
//! cnot 0 1
//! ```
//!
//! Phases are in units of π. Blank lines and `#` comments are ignored.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, VertexId};
use crate::phase::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    T(usize),
    RZ(Phase, usize),
    RX(Phase, usize),
    CNOT(usize, usize),
    CZ(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) | Gate::S(q) | Gate::T(q) => vec![q],
            Gate::RZ(_, q) | Gate::RX(_, q) => vec![q],
            Gate::CNOT(a, b) | Gate::CZ(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::X(q) => write!(f, "x {q}"),
            Gate::Z(q) => write!(f, "z {q}"),
            Gate::S(q) => write!(f, "s {q}"),
            Gate::T(q) => write!(f, "t {q}"),
            Gate::RZ(p, q) => write!(f, "rz {p} {q}"),
            Gate::RX(p, q) => write!(f, "rx {p} {q}"),
            Gate::CNOT(c, t) => write!(f, "cnot {c} {t}"),
            Gate::CZ(a, b) => write!(f, "cz {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: qubit {qubit} out of range for {qubits} qubits")]
    IndexOutOfRange { line: usize, qubit: usize, qubits: usize },
    #[error("line {line}: two-qubit gate needs distinct qubits, got {qubit} twice")]
    RepeatedQubit { line: usize, qubit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Circuit { qubits, gates: Vec::new() }
    }

    /// Appends a gate, checking its qubit indices.
    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        self.check_gate(&g, self.gates.len() + 2)?;
        self.gates.push(g);
        Ok(())
    }

    fn check_gate(&self, g: &Gate, line: usize) -> Result<(), CircuitError> {
        let qs = g.qubits();
        for &q in &qs {
            if q >= self.qubits {
                return Err(CircuitError::IndexOutOfRange { line, qubit: q, qubits: self.qubits });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CircuitError::RepeatedQubit { line, qubit: qs[0] });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// The diagram of the circuit; boundary `i` is qubit `i` on both sides.
    pub fn to_diagram(&self) -> Diagram {
        let mut d = Diagram::new();
        let mut ends: Vec<VertexId> = (0..self.qubits).map(|_| d.add_input()).collect();
        let mut step = |d: &mut Diagram, q: usize, v: VertexId| {
            d.connect(ends[q], v);
            ends[q] = v;
        };
        for g in &self.gates {
            match *g {
                Gate::H(q) => {
                    let v = d.add_h();
                    step(&mut d, q, v);
                }
                Gate::X(q) => {
                    let v = d.add_x(Phase::PI);
                    step(&mut d, q, v);
                }
                Gate::Z(q) => {
                    let v = d.add_z(Phase::PI);
                    step(&mut d, q, v);
                }
                Gate::S(q) => {
                    let v = d.add_z(Phase::HALF_PI);
                    step(&mut d, q, v);
                }
                Gate::T(q) => {
                    let v = d.add_z(Phase::QUARTER_PI);
                    step(&mut d, q, v);
                }
                Gate::RZ(p, q) => {
                    let v = d.add_z(p);
                    step(&mut d, q, v);
                }
                Gate::RX(p, q) => {
                    let v = d.add_x(p);
                    step(&mut d, q, v);
                }
                Gate::CNOT(c, t) => {
                    let zc = d.add_z(Phase::ZERO);
                    let xt = d.add_x(Phase::ZERO);
                    step(&mut d, c, zc);
                    step(&mut d, t, xt);
                    d.connect(zc, xt);
                }
                Gate::CZ(a, b) => {
                    let za = d.add_z(Phase::ZERO);
                    let zb = d.add_z(Phase::ZERO);
                    let h = d.add_h();
                    step(&mut d, a, za);
                    step(&mut d, b, zb);
                    d.connect(za, h);
                    d.connect(h, zb);
                }
            }
        }
        for end in ends {
            let o = d.add_output();
            d.connect(end, o);
        }
        d
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, CircuitError> {
    tok.parse().map_err(|_| CircuitError::Syntax { line, message: format!("bad qubit index `{tok}`") })
}

/// Parses the line-oriented circuit format.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines
        .next()
        .ok_or(CircuitError::Syntax { line: 1, message: "missing `qubits N` header".into() })?;
    let qubits = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", n] => n
            .parse()
            .map_err(|_| CircuitError::Syntax { line: first, message: format!("bad qubit count `{n}`") })?,
        _ => return Err(CircuitError::Syntax { line: first, message: "expected `qubits N`".into() }),
    };
    let mut c = Circuit::new(qubits);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let syntax = |message: String| CircuitError::Syntax { line, message };
        let phase = |tok: &str| tok.parse::<Phase>().map_err(|e| syntax(e.to_string()));
        let g = match toks[..] {
            ["h", q] => Gate::H(parse_index(q, line)?),
            ["x", q] => Gate::X(parse_index(q, line)?),
            ["z", q] => Gate::Z(parse_index(q, line)?),
            ["s", q] => Gate::S(parse_index(q, line)?),
            ["t", q] => Gate::T(parse_index(q, line)?),
            ["rz", p, q] => Gate::RZ(phase(p)?, parse_index(q, line)?),
            ["rx", p, q] => Gate::RX(phase(p)?, parse_index(q, line)?),
            ["cnot", a, b] => Gate::CNOT(parse_index(a, line)?, parse_index(b, line)?),
            ["cz", a, b] => Gate::CZ(parse_index(a, line)?, parse_index(b, line)?),
            _ => return Err(syntax(format!("unrecognised gate `{l}`"))),
        };
        c.check_gate(&g, line)?;
        c.gates.push(g);
    }
    Ok(c)
}
