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

//! Per-rule candidate enumeration, binding checks, and graph surgery.
//!
//! `candidates` may over-approximate; `check` is the single source of
//! truth for whether a binding satisfies a left-hand side, and is rerun
//! before every application to catch stale matches.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{Match, RuleId};
use crate::diagram::{Color, Diagram, EdgeId, VertexId, VertexKind};
use crate::phase::Phase;

/// Hopf: `LHS = 1/2 · RHS`.
pub const HOPF_SCALAR: f64 = 0.5;
/// Square-form bialgebra: `LHS = 1/√2 · RHS`.
pub const BIALGEBRA_SCALAR: f64 = FRAC_1_SQRT_2;
/// Copy onto n legs: `LHS = (1/√2)^(n−1) · RHS`, times the phase factor.
pub const COPY_LEG_SCALAR: f64 = FRAC_1_SQRT_2;

fn spider(d: &Diagram, v: VertexId) -> Option<(Color, Phase)> {
    let k = d.kind(v)?;
    Some((k.color()?, k.phase()?))
}

fn is_hadamard(d: &Diagram, v: VertexId) -> bool {
    d.kind(v).is_some_and(|k| k.is_hadamard())
}

// ---- enumeration -----------------------------------------------------------

pub(super) fn candidates(d: &Diagram, rule: RuleId) -> Vec<Match> {
    let spiders: Vec<VertexId> = d
        .vertices()
        .filter(|(_, k)| k.is_spider())
        .map(|(v, _)| v)
        .collect();
    let mut out = Vec::new();
    match rule {
        RuleId::Fusion | RuleId::Hopf => {
            for &a in &spiders {
                let mut seen = Vec::new();
                for (_, b) in d.neighbors(a) {
                    if b <= a || seen.contains(&b) || !d.kind(b).unwrap().is_spider() {
                        continue;
                    }
                    seen.push(b);
                    let es = d.edges_between(a, b);
                    let (ca, cb) = (spider(d, a).unwrap().0, spider(d, b).unwrap().0);
                    if rule == RuleId::Fusion {
                        out.push(Match::new(rule, vec![a, b], es));
                    } else if ca != cb && es.len() >= 2 {
                        let (z, x) = if ca == Color::Z { (a, b) } else { (b, a) };
                        out.push(Match::new(rule, vec![z, x], es[..2].to_vec()));
                    }
                }
            }
        }
        RuleId::Identity => {
            for &v in &spiders {
                let ns = d.neighbors(v);
                if ns.len() == 2 {
                    out.push(Match::new(rule, vec![v], vec![ns[0].0, ns[1].0]));
                }
            }
        }
        RuleId::SelfLoop => {
            for &v in &spiders {
                if let Some(&l) = d.self_loops(v).first() {
                    out.push(Match::new(rule, vec![v], vec![l]));
                }
            }
        }
        RuleId::Bialgebra => {
            // Single-edge X-neighbours of every Z-spider.
            let mut single: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> = BTreeMap::new();
            for &z in spiders.iter().filter(|&&v| spider(d, v).unwrap().0 == Color::Z) {
                let mut xs = Vec::new();
                let mut seen = Vec::new();
                for (_, x) in d.neighbors(z) {
                    if seen.contains(&x) {
                        continue;
                    }
                    seen.push(x);
                    if spider(d, x).is_some_and(|(c, _)| c == Color::X) {
                        let es = d.edges_between(z, x);
                        if es.len() == 1 {
                            xs.push((x, es[0]));
                        }
                    }
                }
                xs.sort();
                single.insert(z, xs);
            }
            let zs: Vec<VertexId> = single.keys().copied().collect();
            for (i, &z1) in zs.iter().enumerate() {
                for &z2 in &zs[i + 1..] {
                    let common: Vec<(VertexId, EdgeId, EdgeId)> = single[&z1]
                        .iter()
                        .filter_map(|&(x, e1)| {
                            single[&z2].iter().find(|(y, _)| *y == x).map(|&(_, e2)| (x, e1, e2))
                        })
                        .collect();
                    for (j, &(x1, a1, b1)) in common.iter().enumerate() {
                        for &(x2, a2, b2) in &common[j + 1..] {
                            out.push(Match::new(rule, vec![z1, z2, x1, x2], vec![a1, b1, a2, b2]));
                        }
                    }
                }
            }
        }
        RuleId::Copy => {
            for &s in &spiders {
                let ns = d.neighbors(s);
                if ns.len() == 1 && d.degree(s) == 1 {
                    out.push(Match::new(rule, vec![s, ns[0].1], vec![ns[0].0]));
                }
            }
        }
        RuleId::PiCopy => {
            for &p in &spiders {
                let ns = d.neighbors(p);
                if ns.len() == 2 {
                    for k in 0..2 {
                        let (et, t) = ns[k];
                        let (eu, _) = ns[1 - k];
                        out.push(Match::new(rule, vec![p, t], vec![et, eu]));
                    }
                }
            }
        }
        RuleId::ColourChange => {
            for &v in &spiders {
                out.push(Match::new(rule, vec![v], d.incident_edges(v).collect()));
            }
        }
        RuleId::HCancel => {
            for (h, k) in d.vertices() {
                if !k.is_hadamard() {
                    continue;
                }
                for (_, g) in d.neighbors(h) {
                    if g > h && is_hadamard(d, g) {
                        out.push(Match::new(rule, vec![h, g], d.edges_between(h, g)));
                    }
                }
            }
        }
    }
    out
}

// ---- binding checks --------------------------------------------------------

pub(super) fn check(d: &Diagram, m: &Match) -> bool {
    if m.vertices.iter().any(|&v| !d.contains_vertex(v)) || m.edges.iter().any(|&e| !d.contains_edge(e)) {
        return false;
    }
    if let Some(_color) = m.insertion {
        return m.rule == RuleId::Identity
            && matches!((m.vertices.as_slice(), m.edges.as_slice()), ([a, b], [e])
                if d.edge_endpoints(*e) == Some(((*a).min(*b), (*a).max(*b))));
    }
    match (m.rule, m.vertices.as_slice()) {
        (RuleId::Fusion, &[a, b]) => {
            let (Some((ca, _)), Some((cb, _))) = (spider(d, a), spider(d, b)) else {
                return false;
            };
            a < b && ca == cb && !m.edges.is_empty() && m.edges == d.edges_between(a, b)
        }
        (RuleId::Identity, &[v]) => {
            let Some((_, phase)) = spider(d, v) else { return false };
            let ns = d.neighbors(v);
            phase.is_zero()
                && d.degree(v) == 2
                && ns.len() == 2
                && m.edges == [ns[0].0, ns[1].0]
                && !(ns[0].1 == ns[1].1 && is_hadamard(d, ns[0].1))
        }
        (RuleId::SelfLoop, &[v]) => {
            spider(d, v).is_some() && m.edges.len() == 1 && d.self_loops(v).contains(&m.edges[0])
        }
        (RuleId::Hopf, &[z, x]) => {
            matches!((spider(d, z), spider(d, x)), (Some((Color::Z, _)), Some((Color::X, _))))
                && {
                    let es = d.edges_between(z, x);
                    es.len() >= 2 && m.edges == es[..2]
                }
        }
        (RuleId::Bialgebra, &[z1, z2, x1, x2]) => {
            let colors_ok = [z1, z2].iter().all(|&v| matches!(spider(d, v), Some((Color::Z, _))))
                && [x1, x2].iter().all(|&v| matches!(spider(d, v), Some((Color::X, _))));
            colors_ok
                && z1 < z2
                && x1 < x2
                && m.edges.len() == 4
                && [(z1, x1), (z2, x1), (z1, x2), (z2, x2)]
                    .iter()
                    .zip(&m.edges)
                    .all(|(&(z, x), e)| d.edges_between(z, x) == [*e])
        }
        (RuleId::Copy, &[s, t]) => {
            let (Some((cs, ps)), Some((ct, _))) = (spider(d, s), spider(d, t)) else {
                return false;
            };
            cs != ct
                && ps.is_pauli()
                && d.degree(s) == 1
                && d.edges_between(s, t) == m.edges
                && d.self_loops(t).is_empty()
        }
        (RuleId::PiCopy, &[p, t]) => {
            let (Some((cp, pp)), Some((ct, _))) = (spider(d, p), spider(d, t)) else {
                return false;
            };
            let ns = d.neighbors(p);
            cp != ct
                && pp.is_pi()
                && d.degree(p) == 2
                && ns.len() == 2
                && ns[0].1 != ns[1].1
                && m.edges.len() == 2
                && d.edge_endpoints(m.edges[0]).is_some_and(|(a, b)| (a, b) == (p.min(t), p.max(t)))
                && ns.iter().any(|&(e, _)| e == m.edges[1])
                && m.edges[0] != m.edges[1]
                && d.self_loops(t).is_empty()
        }
        (RuleId::ColourChange, &[v]) => {
            spider(d, v).is_some() && m.edges == d.incident_edges(v).collect::<Vec<_>>()
        }
        (RuleId::HCancel, &[h, g]) => {
            if !(h < g && is_hadamard(d, h) && is_hadamard(d, g)) {
                return false;
            }
            let es = d.edges_between(h, g);
            if es.is_empty() || m.edges != es {
                return false;
            }
            if es.len() == 2 {
                return true;
            }
            let outer = |v: VertexId, other: VertexId| {
                d.neighbors(v).into_iter().map(|(_, w)| w).find(|&w| w != other)
            };
            match (outer(h, g), outer(g, h)) {
                (Some(a), Some(b)) => !(a == b && is_hadamard(d, a)),
                _ => false,
            }
        }
        _ => false,
    }
}

// ---- scalars ---------------------------------------------------------------

pub(super) fn scalar(d: &Diagram, m: &Match) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if m.insertion.is_some() {
        return one;
    }
    match m.rule {
        RuleId::Fusion | RuleId::Identity | RuleId::SelfLoop | RuleId::ColourChange => one,
        RuleId::Hopf => Complex64::new(HOPF_SCALAR, 0.0),
        RuleId::Bialgebra => Complex64::new(BIALGEBRA_SCALAR, 0.0),
        RuleId::Copy => {
            let (s, t) = (m.vertices[0], m.vertices[1]);
            let n = d.degree(t) as i32 - 1;
            let mut f = Complex64::new(COPY_LEG_SCALAR.powi(n - 1), 0.0);
            if spider(d, s).unwrap().1.is_pi() {
                f *= spider(d, t).unwrap().1.exp_i();
            }
            f
        }
        RuleId::PiCopy => spider(d, m.vertices[1]).unwrap().1.exp_i(),
        RuleId::HCancel => {
            if m.edges.len() == 2 {
                Complex64::new(2.0, 0.0)
            } else {
                one
            }
        }
    }
}

// ---- rewriting -------------------------------------------------------------

/// Performs the graph surgery of a checked match; does not touch the scalar.
pub(super) fn rewrite(d: &mut Diagram, m: &Match) {
    if let Some(color) = m.insertion {
        let (a, b) = d.remove_edge(m.edges[0]).unwrap();
        let s = d.add_spider(VertexKind::spider(color, Phase::ZERO));
        d.connect(a, s);
        d.connect(s, b);
        return;
    }
    match m.rule {
        RuleId::Fusion => {
            let (a, b) = (m.vertices[0], m.vertices[1]);
            let (color, pa) = spider(d, a).unwrap();
            let pb = spider(d, b).unwrap().1;
            let mut loops = m.edges.len() - 1;
            let mut reattach = Vec::new();
            for e in d.incident_edges(b).collect::<Vec<_>>() {
                if m.edges.contains(&e) {
                    continue;
                }
                match d.other_end(e, b) {
                    Some(w) if w == b => loops += 1,
                    Some(w) => reattach.push(w),
                    None => {}
                }
            }
            d.remove_vertex(b);
            d.set_kind(a, VertexKind::spider(color, pa + pb));
            for w in reattach {
                d.connect(a, w);
            }
            for _ in 0..loops {
                d.connect(a, a);
            }
        }
        RuleId::Identity => {
            let v = m.vertices[0];
            let ns = d.neighbors(v);
            d.remove_vertex(v);
            d.connect(ns[0].1, ns[1].1);
        }
        RuleId::SelfLoop => {
            d.remove_edge(m.edges[0]);
        }
        RuleId::Hopf => {
            for &e in &m.edges {
                d.remove_edge(e);
            }
        }
        RuleId::Bialgebra => {
            let [z1, z2, x1, x2] = [m.vertices[0], m.vertices[1], m.vertices[2], m.vertices[3]];
            for &e in &m.edges {
                d.remove_edge(e);
            }
            let nx = d.add_x(Phase::ZERO);
            let nz = d.add_z(Phase::ZERO);
            d.connect(z1, nx);
            d.connect(z2, nx);
            d.connect(nz, x1);
            d.connect(nz, x2);
            d.connect(nx, nz);
        }
        RuleId::Copy => {
            let (s, t) = (m.vertices[0], m.vertices[1]);
            let state = d.kind(s).unwrap();
            let others: Vec<VertexId> =
                d.neighbors(t).into_iter().filter(|&(e, _)| e != m.edges[0]).map(|(_, w)| w).collect();
            d.remove_vertex(s);
            d.remove_vertex(t);
            for w in others {
                let c = d.add_spider(state);
                d.connect(c, w);
            }
        }
        RuleId::PiCopy => {
            let (p, t) = (m.vertices[0], m.vertices[1]);
            let not = d.kind(p).unwrap();
            let (tc, tp) = spider(d, t).unwrap();
            let u = d.other_end(m.edges[1], p).unwrap();
            let others: Vec<(EdgeId, VertexId)> =
                d.neighbors(t).into_iter().filter(|&(e, _)| e != m.edges[0]).collect();
            d.remove_vertex(p);
            d.set_kind(t, VertexKind::spider(tc, -tp));
            for (e, w) in others {
                d.remove_edge(e);
                let q = d.add_spider(not);
                d.connect(t, q);
                d.connect(q, w);
            }
            d.connect(t, u);
        }
        RuleId::ColourChange => {
            let v = m.vertices[0];
            let (c, p) = spider(d, v).unwrap();
            d.set_kind(v, VertexKind::spider(c.toggle(), p));
            for &e in &m.edges {
                let (a, b) = d.remove_edge(e).unwrap();
                if a == b {
                    let h1 = d.add_h();
                    let h2 = d.add_h();
                    d.connect(v, h1);
                    d.connect(h1, h2);
                    d.connect(h2, v);
                } else {
                    let w = if a == v { b } else { a };
                    let h = d.add_h();
                    d.connect(v, h);
                    d.connect(h, w);
                }
            }
        }
        RuleId::HCancel => {
            let (h, g) = (m.vertices[0], m.vertices[1]);
            if m.edges.len() == 2 {
                d.remove_vertex(h);
                d.remove_vertex(g);
                return;
            }
            let outer = |d: &Diagram, v: VertexId, other: VertexId| {
                d.neighbors(v).into_iter().map(|(_, w)| w).find(|&w| w != other).unwrap()
            };
            let (a, b) = (outer(d, h, g), outer(d, g, h));
            d.remove_vertex(h);
            d.remove_vertex(g);
            d.connect(a, b);
        }
    }
}
