//! Independent reference computations shared by the integration tests.
//!
//! Nothing here goes through the crate's tensor contraction: gate matrices
//! are written out by hand and combined with plain dense linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use zx_core::circuit::{Circuit, Gate};
use zx_core::{Phase, Tensor};

pub const TOL: f64 = 1e-9;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn zeros(r: usize, k: usize) -> Matrix {
    vec![vec![c(0.0, 0.0); k]; r]
}

pub fn eye(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut s = c(0.0, 0.0);
            for l in 0..k {
                s += a[i][l] * b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn dagger(a: &Matrix) -> Matrix {
    let mut out = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.conj();
        }
    }
    out
}

pub fn from_tensor(t: &Tensor) -> Matrix {
    (0..t.rows()).map(|r| (0..t.cols()).map(|k| t.get(r, k)).collect()).collect()
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!((a.len(), a[0].len()), (b.len(), b[0].len()), "shape");
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

pub fn scale(a: &Matrix, s: Complex64) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| x * s).collect()).collect()
}

/// The ratio `r` with `b ≈ r·a`, if there is one.
pub fn ratio(a: &Matrix, b: &Matrix) -> Option<Complex64> {
    let mut best = (0, 0, 0.0);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.norm() > best.2 {
                best = (i, j, x.norm());
            }
        }
    }
    if best.2 < TOL {
        return None;
    }
    let r = b[best.0][best.1] / a[best.0][best.1];
    (max_diff(&scale(a, r), b) <= TOL && r.norm() > TOL).then_some(r)
}

pub fn proportional(a: &Matrix, b: &Matrix) -> bool {
    ratio(a, b).is_some()
}

fn e(p: Phase) -> Complex64 {
    Complex64::from_polar(1.0, p.radians())
}

pub fn h() -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]
}

pub fn rz(p: Phase) -> Matrix {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), e(p)]]
}

pub fn rx(p: Phase) -> Matrix {
    // Written out directly rather than as H·RZ·H.
    let (a, b) = ((c(1.0, 0.0) + e(p)) * 0.5, (c(1.0, 0.0) - e(p)) * 0.5);
    vec![vec![a, b], vec![b, a]]
}

pub fn pauli_x() -> Matrix {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn pauli_z() -> Matrix {
    rz(Phase::PI)
}

fn bit(x: usize, q: usize, n: usize) -> usize {
    (x >> (n - 1 - q)) & 1
}

/// A single-qubit matrix acting on qubit `q` of `n` (qubit 0 most significant).
pub fn on_qubit(m: &Matrix, q: usize, n: usize) -> Matrix {
    let mut out = eye(1);
    for k in 0..n {
        out = kron(&out, if k == q { m } else { &IDENTITY2 });
    }
    out
}

static IDENTITY2: std::sync::LazyLock<Matrix> = std::sync::LazyLock::new(|| eye(2));

pub fn cnot(ctrl: usize, targ: usize, n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = zeros(dim, dim);
    for x in 0..dim {
        let y = if bit(x, ctrl, n) == 1 { x ^ (1 << (n - 1 - targ)) } else { x };
        m[y][x] = c(1.0, 0.0);
    }
    m
}

pub fn cz(a: usize, b: usize, n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = zeros(dim, dim);
    for x in 0..dim {
        let s = if bit(x, a, n) == 1 && bit(x, b, n) == 1 { -1.0 } else { 1.0 };
        m[x][x] = c(s, 0.0);
    }
    m
}

pub fn gate_matrix(g: &Gate, n: usize) -> Matrix {
    match *g {
        Gate::H(q) => on_qubit(&h(), q, n),
        Gate::X(q) => on_qubit(&pauli_x(), q, n),
        Gate::Z(q) => on_qubit(&pauli_z(), q, n),
        Gate::S(q) => on_qubit(&rz(Phase::HALF_PI), q, n),
        Gate::T(q) => on_qubit(&rz(Phase::QUARTER_PI), q, n),
        Gate::RZ(p, q) => on_qubit(&rz(p), q, n),
        Gate::RX(p, q) => on_qubit(&rx(p), q, n),
        Gate::CNOT(a, b) => cnot(a, b, n),
        Gate::CZ(a, b) => cz(a, b, n),
    }
}

/// The circuit's unitary, first gate applied first.
pub fn simulate(circ: &Circuit) -> Matrix {
    circ.gates
        .iter()
        .fold(eye(1 << circ.qubits), |acc, g| mul(&gate_matrix(g, circ.qubits), &acc))
}

/// Computational basis column vector.
pub fn ket(bits: &[usize]) -> Matrix {
    let n = bits.len();
    let idx = bits.iter().fold(0, |acc, &b| acc * 2 + b);
    let mut v = zeros(1 << n, 1);
    v[idx][0] = c(1.0, 0.0);
    v
}

/// Reorders the legs of a tensor matrix. `out_perm[k]` is the old output
/// position that becomes new output `k`; likewise for inputs.
pub fn permute_legs(t: &Matrix, out_perm: &[usize], in_perm: &[usize]) -> Matrix {
    let (no, ni) = (out_perm.len(), in_perm.len());
    let mut out = zeros(1 << no, 1 << ni);
    for r in 0..(1 << no) {
        for k in 0..(1 << ni) {
            let mut old_r = 0;
            for (new, &old) in out_perm.iter().enumerate() {
                old_r |= bit(r, new, no) << (no - 1 - old);
            }
            let mut old_k = 0;
            for (new, &old) in in_perm.iter().enumerate() {
                old_k |= bit(k, new, ni) << (ni - 1 - old);
            }
            out[r][k] = t[old_r][old_k];
        }
    }
    out
}

/// `t ⊗ conj(t)` with legs interleaved as (ket, bra) per wire.
pub fn doubled_reference(t: &Matrix, outputs: usize, inputs: usize) -> Matrix {
    let conj: Matrix = t.iter().map(|row| row.iter().map(|x| x.conj()).collect()).collect();
    let plain = kron(t, &conj);
    // Plain order: ket outputs, bra outputs. Interleaved: ket0, bra0, ket1, ...
    let interleave = |n: usize| -> Vec<usize> { (0..2 * n).map(|k| if k % 2 == 0 { k / 2 } else { n + k / 2 }).collect() };
    permute_legs(&plain, &interleave(outputs), &interleave(inputs))
}

/// Draws random diagrams until one has exactly the requested arity.
pub fn diagram_with_arity<R: rand::Rng>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    max_spiders: usize,
) -> zx_core::Diagram {
    let shape = zx_core::random::DiagramShape {
        max_spiders,
        max_inputs: inputs,
        max_outputs: outputs,
        ..Default::default()
    };
    loop {
        let d = zx_core::random::random_diagram(rng, shape);
        if d.inputs().len() == inputs && d.outputs().len() == outputs {
            return d;
        }
    }
}

pub fn eval(d: &zx_core::Diagram) -> Matrix {
    from_tensor(&zx_core::evaluate(d).expect("evaluates"))
}

/// The vertices on the shortest path from input `q` to output `q`,
/// endpoints excluded.
pub fn qubit_path(d: &zx_core::Diagram, q: usize) -> Vec<zx_core::VertexId> {
    use std::collections::{BTreeMap, VecDeque};
    let (start, goal) = (d.inputs()[q], d.outputs()[q]);
    let mut prev = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    prev.insert(start, start);
    while let Some(v) = queue.pop_front() {
        if v == goal {
            break;
        }
        for (_, w) in d.neighbors(v) {
            if !prev.contains_key(&w) && (w == goal || !d.kind(w).unwrap().is_boundary()) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = prev[&goal];
    while v != start {
        path.push(v);
        v = prev[&v];
    }
    path.reverse();
    path
}
