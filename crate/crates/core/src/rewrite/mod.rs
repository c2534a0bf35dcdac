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

//! Rule catalog, matching and scalar-tracked rule application.
//!
//! Every rule is a local replacement of a small subgraph. Applying a
//! [`Match`] multiplies the diagram's scalar by the factor relating the
//! two sides under this crate's tensor conventions, so a rewritten
//! diagram evaluates to exactly the same tensor as the original.
//!
//! Matches are enumerated in ascending order of their sorted vertex ids,
//! which makes every rewrite sequence reproducible.

mod hopf;
mod rules;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::diagram::{Color, Diagram, EdgeId, VertexId};

pub use hopf::{derive_hopf_trace, hopf_lhs, hopf_rhs};
pub use rules::{BIALGEBRA_SCALAR, COPY_LEG_SCALAR, HOPF_SCALAR};

/// Stable rule identifiers, in catalog order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Fusion,
    Identity,
    SelfLoop,
    Hopf,
    Bialgebra,
    Copy,
    PiCopy,
    ColourChange,
    HCancel,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::Fusion,
        RuleId::Identity,
        RuleId::SelfLoop,
        RuleId::Hopf,
        RuleId::Bialgebra,
        RuleId::Copy,
        RuleId::PiCopy,
        RuleId::ColourChange,
        RuleId::HCancel,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::Fusion => "fusion",
            RuleId::Identity => "identity",
            RuleId::SelfLoop => "self-loop",
            RuleId::Hopf => "hopf",
            RuleId::Bialgebra => "bialgebra",
            RuleId::Copy => "copy",
            RuleId::PiCopy => "pi-copy",
            RuleId::ColourChange => "colour-change",
            RuleId::HCancel => "h-cancel",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| RewriteError::UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RewriteError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("stale {rule} match: its bindings are no longer present in the diagram")]
    StaleMatch { rule: RuleId },
}

/// One catalog entry: a human-readable statement of both sides and of the
/// scalar factor `evaluate(LHS) = factor · evaluate(RHS)`.
#[derive(Clone, Copy, Debug)]
pub struct RewriteRule {
    pub id: RuleId,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub scalar: &'static str,
}

pub const CATALOG: [RewriteRule; 9] = [
    RewriteRule {
        id: RuleId::Fusion,
        lhs: "two same-colour spiders a(α), b(β) joined by k ≥ 1 edges",
        rhs: "one spider a(α+β) carrying both leg sets and k−1 self-loops",
        scalar: "1",
    },
    RewriteRule {
        id: RuleId::Identity,
        lhs: "phase-0 spider with exactly two non-loop legs",
        rhs: "plain wire joining its two neighbours",
        scalar: "1",
    },
    RewriteRule {
        id: RuleId::SelfLoop,
        lhs: "spider with a self-loop",
        rhs: "same spider without that loop",
        scalar: "1",
    },
    RewriteRule {
        id: RuleId::Hopf,
        lhs: "Z(α) and X(β) joined by at least two parallel edges",
        rhs: "the same spiders with two of those edges removed",
        scalar: "1/2",
    },
    RewriteRule {
        id: RuleId::Bialgebra,
        lhs: "Z-spiders z1, z2 and X-spiders x1, x2 forming a square, one edge per pair",
        rhs: "square edges removed; fresh X(0) joined to z1, z2 and fresh Z(0) joined to x1, x2, the two fresh spiders joined",
        scalar: "1/√2",
    },
    RewriteRule {
        id: RuleId::Copy,
        lhs: "one-legged spider s(0 or π) attached to an opposite-colour spider t(β) with n other legs",
        rhs: "n copies of s, one on each of t's other legs",
        scalar: "√2^(1−n), times e^{iβ} when s has phase π",
    },
    RewriteRule {
        id: RuleId::PiCopy,
        lhs: "two-legged π spider p next to an opposite-colour spider t(β) with n other legs",
        rhs: "p removed; t(−β) with a π spider of p's colour on each other leg",
        scalar: "e^{iβ}",
    },
    RewriteRule {
        id: RuleId::ColourChange,
        lhs: "spider of either colour",
        rhs: "spider of the other colour, same phase, with an HBox on every leg",
        scalar: "1",
    },
    RewriteRule {
        id: RuleId::HCancel,
        lhs: "two HBoxes joined by an edge",
        rhs: "plain wire joining their outer neighbours (a closed pair is a circle)",
        scalar: "1 (2 for a closed pair)",
    },
];

pub fn rule(id: RuleId) -> &'static RewriteRule {
    &CATALOG[id as usize]
}

/// A concrete binding of a rule's left-hand side into a diagram.
///
/// `vertices` lists the bound vertices in the rule's role order and
/// `edges` the bound edges. An `insertion` colour marks the inverse of
/// the identity rule: a fresh phase-0 spider of that colour is placed on
/// the bound edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Match {
    pub rule: RuleId,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub insertion: Option<Color>,
}

impl Match {
    fn new(rule: RuleId, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        Match { rule, vertices, edges, insertion: None }
    }

    /// Inverse identity step: subdivide `edge` with a phase-0 spider.
    pub fn insert_identity(d: &Diagram, edge: EdgeId, color: Color) -> Option<Match> {
        let (a, b) = d.edge_endpoints(edge)?;
        Some(Match { rule: RuleId::Identity, vertices: vec![a, b], edges: vec![edge], insertion: Some(color) })
    }

    pub fn is_inverse(&self) -> bool {
        self.insertion.is_some()
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    fn sort_key(&self) -> (Vec<VertexId>, Vec<VertexId>, Vec<EdgeId>) {
        (self.sorted_vertices(), self.vertices.clone(), self.edges.clone())
    }
}

/// All matches of `rule` in `d`, in canonical order.
pub fn find_matches(d: &Diagram, rule: RuleId) -> Vec<Match> {
    let mut ms = rules::candidates(d, rule);
    ms.retain(|m| rules::check(d, m));
    ms.sort_by_key(|m| m.sort_key());
    ms.dedup();
    ms
}

/// Like [`find_matches`], with the rule given by its stable name.
pub fn find_matches_by_name(d: &Diagram, rule: &str) -> Result<Vec<Match>, RewriteError> {
    Ok(find_matches(d, rule.parse()?))
}

/// The scalar the match will multiply into the diagram.
pub fn match_scalar(d: &Diagram, m: &Match) -> Result<Complex64, RewriteError> {
    if !rules::check(d, m) {
        return Err(RewriteError::StaleMatch { rule: m.rule });
    }
    Ok(rules::scalar(d, m))
}

/// Applies `m` to a copy of `d`.
pub fn apply_match(d: &Diagram, m: &Match) -> Result<Diagram, RewriteError> {
    let mut out = d.clone();
    apply_in_place(&mut out, m)?;
    Ok(out)
}

/// Applies `m` to `d` directly, returning the scalar that was multiplied in.
pub fn apply_in_place(d: &mut Diagram, m: &Match) -> Result<Complex64, RewriteError> {
    let s = match_scalar(d, m)?;
    rules::rewrite(d, m);
    d.mul_scalar(s);
    Ok(s)
}

/// Applies `m` structurally but multiplies in `scalar` instead of the
/// rule's own factor. Used when replaying recorded traces.
pub fn apply_with_scalar(d: &mut Diagram, m: &Match, scalar: Complex64) -> Result<(), RewriteError> {
    if !rules::check(d, m) {
        return Err(RewriteError::StaleMatch { rule: m.rule });
    }
    rules::rewrite(d, m);
    d.mul_scalar(scalar);
    Ok(())
}
