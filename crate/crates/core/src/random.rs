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

//! Seeded generators for random diagrams and circuits.
//!
//! All generators draw from a caller-supplied RNG; [`rng`] builds the
//! reproducible one used throughout the test suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::diagram::{Color, Diagram, VertexId, VertexKind};
use crate::phase::Phase;
use crate::rewrite::RuleId;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_phase<R: Rng>(rng: &mut R) -> Phase {
    Phase::eighth_turns(rng.gen_range(0..8))
}

fn random_color<R: Rng>(rng: &mut R) -> Color {
    if rng.gen_bool(0.5) {
        Color::Z
    } else {
        Color::X
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DiagramShape {
    pub max_spiders: usize,
    pub max_edges: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
    /// Chance that an internal edge is subdivided by an HBox.
    pub hbox_chance: f64,
}

impl Default for DiagramShape {
    fn default() -> Self {
        DiagramShape { max_spiders: 8, max_edges: 12, max_inputs: 2, max_outputs: 2, hbox_chance: 0.15 }
    }
}

/// A random diagram within `shape`. Edge count includes boundary legs and
/// both halves of every HBox-subdivided edge.
pub fn random_diagram<R: Rng>(rng: &mut R, shape: DiagramShape) -> Diagram {
    let mut d = Diagram::new();
    let n_in = rng.gen_range(0..=shape.max_inputs);
    let n_out = rng.gen_range(0..=shape.max_outputs);
    let ins: Vec<VertexId> = (0..n_in).map(|_| d.add_input()).collect();
    let outs: Vec<VertexId> = (0..n_out).map(|_| d.add_output()).collect();
    let n = rng.gen_range(1..=shape.max_spiders.max(1));
    let spiders: Vec<VertexId> = (0..n)
        .map(|_| {
            let p = random_phase(rng);
            d.add_spider(VertexKind::spider(random_color(rng), p))
        })
        .collect();
    let mut edges = 0;
    for &b in ins.iter().chain(&outs) {
        let s = *spiders.choose(rng).unwrap();
        d.connect(b, s);
        edges += 1;
    }
    let budget = shape.max_edges.saturating_sub(edges);
    let internal = rng.gen_range(0..=budget);
    while edges < shape.max_edges && edges - (n_in + n_out) < internal {
        let a = *spiders.choose(rng).unwrap();
        let b = *spiders.choose(rng).unwrap();
        if a != b && edges + 2 <= shape.max_edges && rng.gen_bool(shape.hbox_chance) {
            let h = d.add_h();
            d.connect(a, h);
            d.connect(h, b);
            edges += 2;
        } else {
            d.connect(a, b);
            edges += 1;
        }
    }
    d
}

/// Attaches a free leg of `v` either to a fresh output or to a random
/// spider among `context`.
fn leg<R: Rng>(rng: &mut R, d: &mut Diagram, v: VertexId, context: &[VertexId]) {
    if context.is_empty() || (d.boundary_count() < 4 && rng.gen_bool(0.5)) {
        let o = d.add_output();
        d.connect(v, o);
    } else {
        let w = *context.choose(rng).unwrap();
        d.connect(v, w);
    }
}

fn legs<R: Rng>(rng: &mut R, d: &mut Diagram, v: VertexId, context: &[VertexId], max: usize) {
    for _ in 0..rng.gen_range(0..=max) {
        leg(rng, d, v, context);
    }
}

fn spider<R: Rng>(rng: &mut R, d: &mut Diagram, c: Color) -> VertexId {
    let p = random_phase(rng);
    d.add_spider(VertexKind::spider(c, p))
}

/// A random diagram containing at least one instance of `rule`'s left-hand
/// side, embedded in a small random context. Stays within 8 spiders and
/// 12 edges.
pub fn planted<R: Rng>(rng: &mut R, rule: RuleId) -> Diagram {
    let shape = DiagramShape { max_spiders: 2, max_edges: 3, max_inputs: 1, max_outputs: 1, hbox_chance: 0.2 };
    let mut d = random_diagram(rng, shape);
    let ctx: Vec<VertexId> = d.vertices().filter(|(_, k)| k.is_spider()).map(|(v, _)| v).collect();
    match rule {
        RuleId::Fusion => {
            let c = random_color(rng);
            let a = spider(rng, &mut d, c);
            let b = spider(rng, &mut d, c);
            for _ in 0..rng.gen_range(1..=3) {
                d.connect(a, b);
            }
            legs(rng, &mut d, a, &ctx, 2);
            legs(rng, &mut d, b, &ctx, 2);
        }
        RuleId::Identity => {
            let v = d.add_spider(VertexKind::spider(random_color(rng), Phase::ZERO));
            leg(rng, &mut d, v, &ctx);
            leg(rng, &mut d, v, &ctx);
        }
        RuleId::SelfLoop => {
            let v = {
                let c = random_color(rng);
                spider(rng, &mut d, c)
            };
            d.connect(v, v);
            legs(rng, &mut d, v, &ctx, 3);
        }
        RuleId::Hopf => {
            let z = spider(rng, &mut d, Color::Z);
            let x = spider(rng, &mut d, Color::X);
            for _ in 0..rng.gen_range(2..=3) {
                d.connect(z, x);
            }
            legs(rng, &mut d, z, &ctx, 2);
            legs(rng, &mut d, x, &ctx, 2);
        }
        RuleId::Bialgebra => {
            let zs = [spider(rng, &mut d, Color::Z), spider(rng, &mut d, Color::Z)];
            let xs = [spider(rng, &mut d, Color::X), spider(rng, &mut d, Color::X)];
            for &z in &zs {
                for &x in &xs {
                    d.connect(z, x);
                }
            }
            for v in zs.into_iter().chain(xs) {
                legs(rng, &mut d, v, &ctx, 1);
            }
        }
        RuleId::Copy => {
            let c = random_color(rng);
            let p = if rng.gen_bool(0.5) { Phase::PI } else { Phase::ZERO };
            let s = d.add_spider(VertexKind::spider(c, p));
            let t = spider(rng, &mut d, c.toggle());
            d.connect(s, t);
            legs(rng, &mut d, t, &ctx, 3);
        }
        RuleId::PiCopy => {
            let c = random_color(rng);
            let p = d.add_spider(VertexKind::spider(c, Phase::PI));
            let t = spider(rng, &mut d, c.toggle());
            d.connect(p, t);
            leg(rng, &mut d, p, &ctx);
            legs(rng, &mut d, t, &ctx, 3);
        }
        RuleId::ColourChange => {
            let v = {
                let c = random_color(rng);
                spider(rng, &mut d, c)
            };
            if rng.gen_bool(0.3) {
                d.connect(v, v);
            }
            legs(rng, &mut d, v, &ctx, 3);
        }
        RuleId::HCancel => {
            let h1 = d.add_h();
            let h2 = d.add_h();
            d.connect(h1, h2);
            let a = {
                let c = random_color(rng);
                spider(rng, &mut d, c)
            };
            d.connect(a, h1);
            if rng.gen_bool(0.15) {
                d.connect(a, h2);
            } else {
                leg(rng, &mut d, h2, &ctx);
            }
            legs(rng, &mut d, a, &ctx, 1);
        }
    }
    d
}

/// Renames every vertex of `d` through a random permutation of fresh ids.
pub fn random_relabelling<R: Rng>(rng: &mut R, d: &Diagram) -> Diagram {
    let ids: Vec<VertexId> = d.vertex_ids().collect();
    let mut targets: Vec<VertexId> = (0..ids.len()).map(|k| VertexId(100 + 3 * k)).collect();
    targets.shuffle(rng);
    let mapping: BTreeMap<VertexId, VertexId> = ids.into_iter().zip(targets).collect();
    d.relabel(&mapping).expect("bijection")
}

/// Which gates [`random_circuit`] may draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateSet {
    /// CNOT, CZ, H, RZ(kπ/4), RX(kπ/4).
    CliffordT,
    /// CNOT, RZ(kπ/4), RX(kπ/4), H.
    Universal,
    /// Every gate of the circuit language.
    All,
}

pub fn random_gate<R: Rng>(rng: &mut R, qubits: usize, set: GateSet) -> Gate {
    let q = rng.gen_range(0..qubits);
    let pair = |rng: &mut R| {
        let a = rng.gen_range(0..qubits);
        let mut b = rng.gen_range(0..qubits - 1);
        if b >= a {
            b += 1;
        }
        (a, b)
    };
    let two_qubit = qubits >= 2;
    let choices: &[u8] = match (set, two_qubit) {
        (GateSet::CliffordT, true) => &[0, 1, 2, 3, 4],
        (GateSet::Universal, true) => &[0, 2, 3, 4],
        (GateSet::All, true) => &[0, 1, 2, 3, 4, 5, 6, 7, 8],
        (GateSet::All, false) => &[2, 3, 4, 5, 6, 7, 8],
        (_, false) => &[2, 3, 4],
    };
    match *choices.choose(rng).unwrap() {
        0 => {
            let (a, b) = pair(rng);
            Gate::CNOT(a, b)
        }
        1 => {
            let (a, b) = pair(rng);
            Gate::CZ(a, b)
        }
        2 => Gate::H(q),
        3 => Gate::RZ(random_phase(rng), q),
        4 => Gate::RX(random_phase(rng), q),
        5 => Gate::X(q),
        6 => Gate::Z(q),
        7 => Gate::S(q),
        _ => Gate::T(q),
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, qubits: usize, gates: usize, set: GateSet) -> Circuit {
    let mut c = Circuit::new(qubits);
    for _ in 0..gates {
        c.gates.push(random_gate(rng, qubits, set));
    }
    c
}
