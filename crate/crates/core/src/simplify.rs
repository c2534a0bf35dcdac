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

//! Terminating simplification strategies with replayable traces.
//!
//! Every accepted step strictly lowers the measure
//! `(vertex count, edge count)` in lexicographic order, either directly
//! (the cleanup rules) or after the cleanup that follows it (bialgebra,
//! copy, pi-copy, colour-change), so both strategies terminate.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::diagram::{Color, Diagram, VertexId};
use crate::rewrite::{self, apply_in_place, apply_with_scalar, find_matches, Match, RewriteError, RuleId};
use crate::tensor::{self, CompareMode, TensorError, Verdict, DEFAULT_TOLERANCE};

/// Boundary count above which [`verify_trace`] checks recorded scalars
/// against the rule laws instead of evaluating both ends.
pub const ORACLE_BOUNDARY_LIMIT: usize = 10;

const CLEANUP_RULES: [RuleId; 5] =
    [RuleId::Fusion, RuleId::Identity, RuleId::SelfLoop, RuleId::Hopf, RuleId::HCancel];

#[derive(Debug, Error)]
pub enum SimplifyError {
    #[error("trace replay diverged at step {step}: {reason}")]
    ReplayDivergence { step: usize, reason: String },
    #[error("trace line {line}: {message}")]
    TraceSyntax { line: usize, message: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplifyConfig {
    pub max_steps: usize,
    pub enable_bialgebra: bool,
    pub enable_colour_change: bool,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        SimplifyConfig { max_steps: 10_000, enable_bialgebra: true, enable_colour_change: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub m: Match,
    pub scalar: Complex64,
}

impl TraceStep {
    pub fn rule(&self) -> RuleId {
        self.m.rule
    }
}

/// A rewrite sequence together with the diagrams at both of its ends.
#[derive(Clone, Debug)]
pub struct Trace {
    pub initial: Diagram,
    pub steps: Vec<TraceStep>,
    pub final_diagram: Diagram,
    /// Set when simplification stopped because it ran out of steps.
    pub budget_exhausted: bool,
}

impl Trace {
    pub fn empty(d: &Diagram) -> Self {
        Trace { initial: d.clone(), steps: Vec::new(), final_diagram: d.clone(), budget_exhausted: false }
    }

    /// Applies `matches` in order starting from `initial`.
    pub fn from_matches(initial: &Diagram, matches: &[Match]) -> Result<Trace, RewriteError> {
        let mut d = initial.clone();
        let mut steps = Vec::new();
        for m in matches {
            let scalar = apply_in_place(&mut d, m)?;
            steps.push(TraceStep { m: m.clone(), scalar });
        }
        Ok(Trace { initial: initial.clone(), steps, final_diagram: d, budget_exhausted: false })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Product of all recorded step scalars.
    pub fn total_scalar(&self) -> Complex64 {
        self.steps.iter().map(|s| s.scalar).product()
    }

    /// Every intermediate diagram, starting with the initial snapshot.
    pub fn intermediates(&self) -> Result<Vec<Diagram>, SimplifyError> {
        let mut d = self.initial.clone();
        let mut out = vec![d.clone()];
        for (k, step) in self.steps.iter().enumerate() {
            apply_with_scalar(&mut d, &step.m, step.scalar)
                .map_err(|e| SimplifyError::ReplayDivergence { step: k, reason: e.to_string() })?;
            out.push(d.clone());
        }
        Ok(out)
    }

    /// One line per step: `<rule-id> <sorted ids> <re>,<im>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            let ids: Vec<String> = step.m.sorted_vertices().iter().map(|v| v.0.to_string()).collect();
            let ids = if ids.is_empty() { "-".to_string() } else { ids.join(",") };
            let _ = writeln!(s, "{} {} {},{}", rule_token(&step.m), ids, step.scalar.re, step.scalar.im);
        }
        s
    }

    /// Rebuilds a trace from its text form by re-finding each step's match
    /// in the diagram reached so far.
    pub fn parse(initial: &Diagram, text: &str) -> Result<Trace, SimplifyError> {
        let mut d = initial.clone();
        let mut steps = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| SimplifyError::TraceSyntax { line: k + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [token, ids, scalar] = fields[..] else {
                return Err(syntax(format!("expected 3 fields, found {}", fields.len())));
            };
            let ids: Vec<VertexId> = if ids == "-" {
                Vec::new()
            } else {
                ids.split(',')
                    .map(|t| t.parse().map(VertexId))
                    .collect::<Result<_, _>>()
                    .map_err(|_| syntax(format!("bad vertex list `{ids}`")))?
            };
            let scalar = parse_scalar(scalar).ok_or_else(|| syntax(format!("bad scalar `{scalar}`")))?;
            let m = resolve(&d, token, &ids, scalar).map_err(syntax)?;
            apply_with_scalar(&mut d, &m, scalar)
                .map_err(|e| SimplifyError::ReplayDivergence { step: steps.len(), reason: e.to_string() })?;
            steps.push(TraceStep { m, scalar });
        }
        Ok(Trace { initial: initial.clone(), steps, final_diagram: d, budget_exhausted: false })
    }
}

fn rule_token(m: &Match) -> String {
    match m.insertion {
        Some(Color::Z) => format!("{}^-1/Z", m.rule),
        Some(Color::X) => format!("{}^-1/X", m.rule),
        None => m.rule.to_string(),
    }
}

fn parse_scalar(s: &str) -> Option<Complex64> {
    let (re, im) = s.split_once(',')?;
    Some(Complex64::new(re.parse().ok()?, im.parse().ok()?))
}

fn resolve(d: &Diagram, token: &str, ids: &[VertexId], scalar: Complex64) -> Result<Match, String> {
    if let Some((name, color)) = token.split_once("^-1/") {
        let color = match color {
            "Z" => Color::Z,
            "X" => Color::X,
            _ => return Err(format!("bad insertion colour in `{token}`")),
        };
        if name != RuleId::Identity.as_str() || ids.len() != 2 {
            return Err(format!("`{token}` must be an identity insertion on two vertices"));
        }
        let e = *d
            .edges_between(ids[0], ids[1])
            .first()
            .ok_or_else(|| format!("no edge between {} and {}", ids[0].0, ids[1].0))?;
        return Ok(Match::insert_identity(d, e, color).expect("edge exists"));
    }
    let rule: RuleId = token.parse().map_err(|e: RewriteError| e.to_string())?;
    let candidates: Vec<Match> =
        find_matches(d, rule).into_iter().filter(|m| m.sorted_vertices() == ids).collect();
    // The same vertex set can bind a rule in more than one role order;
    // the recorded scalar tells those apart.
    candidates
        .iter()
        .find(|m| rewrite::match_scalar(d, m).is_ok_and(|s| (s - scalar).norm() <= DEFAULT_TOLERANCE))
        .or(candidates.first())
        .cloned()
        .ok_or_else(|| format!("no {rule} match on vertices {ids:?}"))
}

pub fn measure(d: &Diagram) -> (usize, usize) {
    (d.num_vertices(), d.num_edges())
}

struct Run {
    d: Diagram,
    steps: Vec<TraceStep>,
    budget: usize,
    exhausted: bool,
}

impl Run {
    fn new(d: &Diagram, budget: usize) -> Self {
        Run { d: d.clone(), steps: Vec::new(), budget, exhausted: false }
    }

    fn apply(&mut self, m: Match) {
        let scalar = apply_in_place(&mut self.d, &m).expect("fresh match applies");
        self.steps.push(TraceStep { m, scalar });
        self.budget -= 1;
    }

    fn cleanup(&mut self) {
        loop {
            if self.budget == 0 {
                self.exhausted = CLEANUP_RULES.iter().any(|&r| !find_matches(&self.d, r).is_empty());
                return;
            }
            let next = CLEANUP_RULES.iter().find_map(|&r| find_matches(&self.d, r).into_iter().next());
            match next {
                Some(m) => self.apply(m),
                None => return,
            }
        }
    }

    fn finish(self, initial: &Diagram) -> (Diagram, Trace) {
        let trace = Trace {
            initial: initial.clone(),
            steps: self.steps,
            final_diagram: self.d.clone(),
            budget_exhausted: self.exhausted,
        };
        (self.d, trace)
    }
}

/// Applies fusion, identity, self-loop, Hopf and H-cancellation to
/// fixpoint, always choosing the first available match in catalog order.
pub fn cleanup_pass(d: &Diagram) -> (Diagram, Trace) {
    let mut run = Run::new(d, usize::MAX);
    run.cleanup();
    run.finish(d)
}

/// Cleanup interleaved with measure-reducing bialgebra, copy and
/// pi-copy steps (and colour-change when enabled).
pub fn simplify(d: &Diagram, cfg: SimplifyConfig) -> (Diagram, Trace) {
    let mut extra = Vec::new();
    if cfg.enable_bialgebra {
        extra.push(RuleId::Bialgebra);
    }
    extra.extend([RuleId::Copy, RuleId::PiCopy]);
    if cfg.enable_colour_change {
        extra.push(RuleId::ColourChange);
    }

    let mut run = Run::new(d, cfg.max_steps.max(1));
    'outer: loop {
        run.cleanup();
        if run.exhausted {
            break;
        }
        let here = measure(&run.d);
        for &rule in &extra {
            for m in find_matches(&run.d, rule) {
                if run.budget == 0 {
                    run.exhausted = true;
                    break 'outer;
                }
                let mut trial = Run::new(&run.d, run.budget);
                trial.apply(m);
                trial.cleanup();
                if measure(&trial.d) < here {
                    run.d = trial.d;
                    run.steps.extend(trial.steps);
                    run.budget = trial.budget;
                    run.exhausted = trial.exhausted;
                    continue 'outer;
                }
            }
        }
        break;
    }
    run.finish(d)
}

/// Replays `t` with its recorded scalars and checks it both structurally
/// and semantically.
///
/// The replayed diagram must be isomorphic to the final snapshot, scalar
/// aside. Then the
/// initial and final snapshots are compared exactly by the oracle when they
/// have at most [`ORACLE_BOUNDARY_LIMIT`] boundaries; for larger diagrams
/// each recorded scalar is checked against its rule's law instead.
pub fn verify_trace(t: &Trace) -> Result<Verdict, SimplifyError> {
    let mut d = t.initial.clone();
    let mut law_dev: f64 = 0.0;
    for (k, step) in t.steps.iter().enumerate() {
        let law = rewrite::match_scalar(&d, &step.m)
            .map_err(|e| SimplifyError::ReplayDivergence { step: k, reason: e.to_string() })?;
        law_dev = law_dev.max((law - step.scalar).norm());
        apply_with_scalar(&mut d, &step.m, step.scalar).expect("checked above");
    }
    // Scalars are judged by the oracle below, not here.
    if d != t.final_diagram && !d.is_isomorphic(&t.final_diagram, f64::INFINITY) {
        return Err(SimplifyError::ReplayDivergence {
            step: t.steps.len(),
            reason: "replayed diagram differs from the final snapshot".into(),
        });
    }
    if t.initial.boundary_count() <= ORACLE_BOUNDARY_LIMIT {
        return Ok(tensor::compare_diagrams(&t.initial, &d, CompareMode::Exact, DEFAULT_TOLERANCE)?);
    }
    Ok(if law_dev <= DEFAULT_TOLERANCE { Verdict::Equal } else { Verdict::Distinct(law_dev) })
}
