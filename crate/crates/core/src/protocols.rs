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

//! Builders for standard protocols, plus self-checks used by the CLI.

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::diagram::{Diagram, VertexKind};
use crate::doubled::{DoubledDiagram, WireKind};
use crate::phase::Phase;
use crate::simplify::{simplify, verify_trace, SimplifyConfig};
use crate::tensor::{compare, evaluate, CompareMode, Tensor, TensorError, DEFAULT_TOLERANCE};

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("phase {0} must be 0 or π here")]
    InvalidPhase(Phase),
    #[error("unknown protocol `{0}`")]
    UnknownProtocol(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

fn check_pauli(p: Phase) -> Result<(), ProtocolError> {
    if p.is_pauli() {
        Ok(())
    } else {
        Err(ProtocolError::InvalidPhase(p))
    }
}

fn phase_gate(kind: VertexKind) -> Diagram {
    Diagram::single(kind, 1, 1)
}

fn then(a: Diagram, b: &Diagram) -> Diagram {
    a.compose(b).expect("arity checked by construction")
}

/// Bell state: a cup with `Z(a)` on its first leg and `X(b)` on its second.
pub fn bell_state(a: Phase, b: Phase) -> Result<Diagram, ProtocolError> {
    check_pauli(a)?;
    check_pauli(b)?;
    let mut d = Diagram::new();
    let o0 = d.add_output();
    let o1 = d.add_output();
    let z = d.add_z(a);
    let x = d.add_x(b);
    d.connect(z, o0);
    d.connect(x, o1);
    d.connect(z, x);
    Ok(d)
}

/// The adjoint of [`bell_state`].
pub fn bell_effect(a: Phase, b: Phase) -> Result<Diagram, ProtocolError> {
    Ok(bell_state(a, b)?.adjoint())
}

/// Teleports the input to the output through a shared cup and the Bell
/// effect `(a, b)`. Uncorrected, Bob's wire carries `X^b Z^a`; the
/// correction undoes it with `X(b)` followed by `Z(a)`.
pub fn teleportation(a: Phase, b: Phase, corrected: bool) -> Result<Diagram, ProtocolError> {
    let share = Diagram::identity(1).tensor(&Diagram::cup());
    let measure = bell_effect(a, b)?.tensor(&Diagram::identity(1));
    let mut d = then(share, &measure);
    if corrected {
        d = then(d, &phase_gate(VertexKind::X(b)));
        d = then(d, &phase_gate(VertexKind::Z(a)));
    }
    Ok(d)
}

/// Teleportation on density matrices with the Bell measurement split into
/// a CNOT, an X-measurement and a Z-measurement. The two outcome bits
/// travel on classical wires and drive Bob's X and Z corrections.
pub fn teleportation_classical() -> DoubledDiagram {
    let mut d = Diagram::new();
    let in_k = d.add_input();
    let in_b = d.add_input();
    let out_k = d.add_output();
    let out_b = d.add_output();

    // Alice's X-measurement and Bob's X half of the classical channel
    // share one X-spider; likewise for Z.
    let mx = d.add_x(Phase::ZERO);
    let mz = d.add_z(Phase::ZERO);
    for (input, output) in [(in_k, out_k), (in_b, out_b)] {
        let ctrl = d.add_z(Phase::ZERO);
        let targ = d.add_x(Phase::ZERO);
        let fix_x = d.add_x(Phase::ZERO);
        let fix_z = d.add_z(Phase::ZERO);
        d.connect(input, ctrl);
        d.connect(ctrl, targ);
        d.connect(ctrl, mx);
        d.connect(targ, mz);
        // The cup from Alice's half to Bob's half.
        d.connect(targ, fix_x);
        d.connect(fix_x, fix_z);
        d.connect(fix_z, output);
        d.connect(mz, fix_x);
        d.connect(mx, fix_z);
    }
    DoubledDiagram { underlying: d, input_kinds: vec![WireKind::Quantum], output_kinds: vec![WireKind::Quantum] }
}

fn effect(phase: Phase) -> Diagram {
    Diagram::single(VertexKind::Z(phase), 1, 0)
}

fn bit_phase(s: bool) -> Phase {
    if s {
        Phase::PI
    } else {
        Phase::ZERO
    }
}

/// One measurement step: the input joins a `Z(0)` spider, one of whose
/// legs is measured with the phased effect `Z(α + sπ)`.
pub fn mbqc_step(alpha: Phase, s: bool, corrected: bool) -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let v = d.add_z(Phase::ZERO);
    let e = d.add_z(alpha + bit_phase(s));
    let o = d.add_output();
    d.connect(i, v);
    d.connect(v, e);
    d.connect(v, o);
    if corrected && s {
        d = then(d, &phase_gate(VertexKind::Z(-Phase::PI)));
    }
    d
}

/// Four-qubit linear cluster: the input qubit and three `|+⟩` qubits
/// joined by CZ gates, with the first three measured by phased effects.
///
/// With all outcomes zero the result is proportional to
/// `U = H Z(γ) H Z(β) H Z(α)`. The corrected variant adapts the later
/// measurement angles to earlier outcomes and finishes with `Z(s₂π)` then
/// `X((s₁⊕s₃)π)`, so that every outcome pattern yields `U` as well.
pub fn cluster_mbqc(alpha: Phase, beta: Phase, gamma: Phase, s: [bool; 3], corrected: bool) -> Diagram {
    let plus = Diagram::single(VertexKind::Z(Phase::ZERO), 0, 1);
    let mut prep = Diagram::identity(1);
    for _ in 0..3 {
        prep = prep.tensor(&plus);
    }
    let mut entangle = Circuit::new(4);
    for k in 0..3 {
        entangle.gates.push(Gate::CZ(k, k + 1));
    }
    let flip = |p: Phase, bit: bool| if corrected && bit { -p } else { p };
    let angles = [alpha, flip(beta, s[0]), flip(gamma, s[1])];
    let mut measure = Diagram::new();
    for (k, &a) in angles.iter().enumerate() {
        measure = measure.tensor(&effect(a + bit_phase(s[k])));
    }
    measure = measure.tensor(&Diagram::identity(1));

    let mut d = then(then(prep, &entangle.to_diagram()), &measure);
    if corrected {
        d = then(d, &phase_gate(VertexKind::Z(bit_phase(s[1]))));
        d = then(d, &phase_gate(VertexKind::X(bit_phase(s[0] ^ s[2]))));
    }
    d
}

/// `H Z(γ) H Z(β) H Z(α)` as a plain gate product.
pub fn euler_unitary(alpha: Phase, beta: Phase, gamma: Phase) -> Tensor {
    let h = evaluate(&phase_gate(VertexKind::H)).expect("tiny");
    let z = |p: Phase| evaluate(&phase_gate(VertexKind::Z(p))).expect("tiny");
    [z(gamma), h.clone(), z(beta), h.clone(), z(alpha)]
        .iter()
        .fold(h, |acc, m| acc.matmul(m).expect("2×2 factors"))
}

/// One named check and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolReport {
    pub protocol: String,
    pub checks: Vec<Check>,
}

impl ProtocolReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn proportional(a: &Tensor, b: &Tensor) -> bool {
    compare(a, b, CompareMode::UpToScalar, DEFAULT_TOLERANCE).is_ok_and(|v| v.is_equivalent())
}

fn proportional_to_identity(d: &Diagram) -> Result<bool, ProtocolError> {
    let t = evaluate(d)?;
    Ok(proportional(&t, &Tensor::identity(t.shape().1)))
}

/// Simplifies `d` and checks the result against the oracle.
fn simplifies_soundly(d: &Diagram) -> Result<(bool, Diagram, usize), ProtocolError> {
    let (out, trace) = simplify(d, SimplifyConfig::default());
    let sound = verify_trace(&trace).is_ok_and(|v| v == crate::tensor::Verdict::Equal);
    Ok((sound, out, trace.len()))
}

pub const PROTOCOLS: [&str; 5] = ["bell", "teleportation", "teleportation-classical", "mbqc", "cluster"];

/// Phase parameters for [`run_protocol`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProtocolParams {
    pub alpha: Phase,
    pub beta: Phase,
    pub gamma: Phase,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        ProtocolParams { alpha: Phase::QUARTER_PI, beta: Phase::HALF_PI, gamma: Phase::new(3, 4) }
    }
}

const PAULI: [Phase; 2] = [Phase::ZERO, Phase::PI];

/// Builds a protocol and verifies it by oracle (and by rewriting where
/// the protocol reduces to a wire).
pub fn run_protocol(name: &str, params: ProtocolParams) -> Result<ProtocolReport, ProtocolError> {
    let mut checks = Vec::new();
    let mut check = |name: String, passed: bool| checks.push(Check { name, passed });
    match name {
        "bell" => {
            let states: Vec<Tensor> = PAULI
                .iter()
                .flat_map(|&a| PAULI.iter().map(move |&b| (a, b)))
                .map(|(a, b)| evaluate(&bell_state(a, b)?).map_err(ProtocolError::from))
                .collect::<Result<_, _>>()?;
            let cup = evaluate(&Diagram::cup())?;
            check("(0,0) is the cup".into(), proportional(&states[0], &cup));
            let mut gram_ok = true;
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let ip = a.dagger().matmul(b)?.as_scalar().unwrap();
                    let expect = if i == j { 2.0 } else { 0.0 };
                    gram_ok &= (ip.re - expect).abs() <= DEFAULT_TOLERANCE && ip.im.abs() <= DEFAULT_TOLERANCE;
                }
            }
            check("Gram matrix is 2·I".into(), gram_ok);
        }
        "teleportation" => {
            for a in PAULI {
                for b in PAULI {
                    let d = teleportation(a, b, true)?;
                    check(format!("branch ({a},{b}) corrected ∝ identity"), proportional_to_identity(&d)?);
                    let (sound, out, steps) = simplifies_soundly(&d)?;
                    let wire = out.spider_count() == 0 && out.is_isomorphic(&{
                        let mut w = Diagram::identity(1);
                        w.mul_scalar(out.scalar());
                        w
                    }, DEFAULT_TOLERANCE);
                    check(format!("branch ({a},{b}) rewrites to a bare wire in {steps} steps"), sound && wire && steps <= 20);
                }
            }
        }
        "teleportation-classical" => {
            let dd = teleportation_classical();
            check("doubled protocol ∝ identity channel".into(), proportional_to_identity(&dd.underlying)?);
        }
        "mbqc" => {
            let target = evaluate(&phase_gate(VertexKind::Z(params.alpha)))?;
            for s in [false, true] {
                let d = mbqc_step(params.alpha, s, true);
                check(format!("outcome {} corrected ∝ Z({})", s as u8, params.alpha), proportional(&evaluate(&d)?, &target));
            }
        }
        "cluster" => {
            let u = euler_unitary(params.alpha, params.beta, params.gamma);
            let mut all = true;
            let mut sound = true;
            for k in 0..8u8 {
                let s = [k & 1 != 0, k & 2 != 0, k & 4 != 0];
                let d = cluster_mbqc(params.alpha, params.beta, params.gamma, s, true);
                let t = evaluate(&d)?;
                all &= proportional(&t, &u);
                let (ok, out, _) = simplifies_soundly(&d)?;
                sound &= ok && compare(&t, &evaluate(&out)?, CompareMode::Exact, DEFAULT_TOLERANCE)?.is_equivalent();
            }
            check("all 8 corrected outcome patterns ∝ U".into(), all);
            let uu = u.dagger().matmul(&u)?;
            check("U†U ∝ I".into(), proportional(&uu, &Tensor::identity(1)));
            check("simplified diagrams match the oracle".into(), sound);
        }
        other => return Err(ProtocolError::UnknownProtocol(other.to_string())),
    }
    Ok(ProtocolReport { protocol: name.to_string(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_rejects_non_pauli_phases() {
        assert!(matches!(bell_state(Phase::HALF_PI, Phase::ZERO), Err(ProtocolError::InvalidPhase(_))));
    }

    #[test]
    fn uncorrected_branch_is_pauli() {
        let d = teleportation(Phase::PI, Phase::PI, false).unwrap();
        let x = evaluate(&phase_gate(VertexKind::X(Phase::PI))).unwrap();
        let z = evaluate(&phase_gate(VertexKind::Z(Phase::PI))).unwrap();
        assert!(proportional(&evaluate(&d).unwrap(), &x.matmul(&z).unwrap()));
    }

    #[test]
    fn every_protocol_passes() {
        for name in PROTOCOLS {
            let r = run_protocol(name, ProtocolParams::default()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(matches!(run_protocol("nope", ProtocolParams::default()), Err(ProtocolError::UnknownProtocol(_))));
    }
}
