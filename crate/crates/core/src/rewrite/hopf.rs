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

//! The Hopf law as a consequence of bialgebra, copy, fusion and identity.

use super::{apply_in_place, find_matches, Match, RuleId};
use crate::diagram::{Color, Diagram, VertexId};
use crate::phase::Phase;

/// `in--Z(α) =2= X(β)--out`: a Z and an X spider joined by a double edge.
pub fn hopf_lhs(alpha: Phase, beta: Phase) -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let z = d.add_z(alpha);
    let x = d.add_x(beta);
    let o = d.add_output();
    d.connect(i, z);
    d.connect(z, x);
    d.connect(z, x);
    d.connect(x, o);
    d
}

/// `in--Z(α)   X(β)--out`: the same two spiders, disconnected.
pub fn hopf_rhs(alpha: Phase, beta: Phase) -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let z = d.add_z(alpha);
    let x = d.add_x(beta);
    let o = d.add_output();
    d.connect(i, z);
    d.connect(x, o);
    d
}

fn pick(d: &Diagram, rule: RuleId, vertices: &[VertexId]) -> Match {
    find_matches(d, rule)
        .into_iter()
        .find(|m| m.vertices == vertices)
        .unwrap_or_else(|| panic!("no {rule} match on {vertices:?}"))
}

/// A rewrite sequence taking [`hopf_lhs`] to [`hopf_rhs`] without using
/// the Hopf rule itself.
///
/// Two identity insertions open up a bialgebra square on the double
/// edge; the square is flipped, and the two dangling phase-0 spiders it
/// leaves behind are copied through and fused away. The product of the
/// step scalars is 1/2. Matches refer to the vertex ids of
/// `hopf_lhs(alpha, beta)` and of the diagrams derived from it.
pub fn derive_hopf_trace(alpha: Phase, beta: Phase) -> Vec<Match> {
    let mut d = hopf_lhs(alpha, beta);
    let (z, x) = (VertexId(1), VertexId(2));
    let mut steps = Vec::new();
    let mut run = |d: &mut Diagram, m: Match| {
        apply_in_place(d, &m).expect("derivation step applies");
        steps.push(m);
    };

    let first = d.edges_between(z, x)[0];
    let m = Match::insert_identity(&d, first, Color::X).unwrap();
    run(&mut d, m);
    let w = VertexId(4);
    let wx = d.edges_between(w, x)[0];
    let m = Match::insert_identity(&d, wx, Color::Z).unwrap();
    run(&mut d, m);
    let u = VertexId(5);

    let m = pick(&d, RuleId::Bialgebra, &[z, u, x, w]);
    run(&mut d, m);
    let (nx, nz) = (VertexId(6), VertexId(7));

    let m = pick(&d, RuleId::Copy, &[u, nx]);
    run(&mut d, m);
    let (cz, cnz) = (VertexId(8), VertexId(9));
    let m = pick(&d, RuleId::Fusion, &[z, cz]);
    run(&mut d, m);
    let m = pick(&d, RuleId::Fusion, &[nz, cnz]);
    run(&mut d, m);

    let m = pick(&d, RuleId::Copy, &[w, nz]);
    run(&mut d, m);
    let m = pick(&d, RuleId::Fusion, &[x, VertexId(10)]);
    run(&mut d, m);
    steps
}
