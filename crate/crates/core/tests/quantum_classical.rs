mod common;

use common::*;
use zx_core::doubled::{
    double, encode_spider, measure_spider, nondemolition_measure, uniform_state, uniform_state_of, DoubledDiagram,
    DoubledError, WireKind,
};
use zx_core::random::rng;
use zx_core::{Color, Diagram, Phase, VertexKind};

const C: WireKind = WireKind::Classical;
const Q: WireKind = WireKind::Quantum;

fn ev(dd: &DoubledDiagram) -> Matrix {
    dd.check().unwrap();
    eval(&dd.underlying)
}

/// A point distribution on `bit` for data read in `color`'s basis: a
/// one-legged spider of the opposite colour, which `color` copies.
fn point_of(color: Color, bit: usize) -> DoubledDiagram {
    let p = if bit == 0 { Phase::ZERO } else { Phase::PI };
    DoubledDiagram::classical(Diagram::single(VertexKind::spider(color.toggle(), p), 0, 1))
}

fn point(bit: usize) -> DoubledDiagram {
    point_of(Color::Z, bit)
}

fn quantum_state(d: &Diagram) -> DoubledDiagram {
    assert_eq!((d.inputs().len(), d.outputs().len()), (0, 1));
    double(d)
}

/// `m ≈ λ·target` with λ real and positive.
fn positive_multiple(target: &Matrix, m: &Matrix) -> bool {
    ratio(target, m).is_some_and(|r| r.re > TOL && r.im.abs() < TOL)
}

fn rank_one(m: &Matrix) -> bool {
    // Every 2×2 minor vanishes.
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            for k in 0..m[0].len() {
                for l in k + 1..m[0].len() {
                    if (m[i][k] * m[j][l] - m[i][l] * m[j][k]).norm() > TOL {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn double_examples() {
    let a = Phase::new(3, 4);
    let gate = Diagram::single(VertexKind::Z(a), 1, 1);
    let dd = double(&gate);
    assert_eq!(dd.input_kinds, vec![Q]);
    assert_eq!(dd.output_kinds, vec![Q]);
    assert_eq!(dd.underlying.inputs().len(), 2);
    let zc: Matrix = rz(a).iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
    assert!(max_diff(&ev(&dd), &kron(&rz(a), &zc)) < TOL);

    assert_eq!(ev(&double(&Diagram::identity(1))), eye(4));

    let bell: Matrix = [1.0, 0.0, 0.0, 1.0].iter().map(|&x| vec![c(x, 0.0)]).collect();
    let rho = mul(&bell, &dagger(&bell));
    // Interleaved (ket0, bra0, ket1, bra1) index of ρ[ket][bra].
    let expected: Matrix = (0..16)
        .map(|k| {
            let (k0, b0, k1, b1) = (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1);
            vec![rho[k0 * 2 + k1][b0 * 2 + b1]]
        })
        .collect();
    assert!(max_diff(&ev(&double(&Diagram::cup())), &expected) < TOL);
}

#[test]
fn doubling_is_functorial_on_random_diagrams() {
    let mut r = rng(8);
    let shape = zx_core::random::DiagramShape { max_spiders: 6, ..Default::default() };
    for _ in 0..50 {
        let d = zx_core::random::random_diagram(&mut r, shape);
        let t = eval(&d);
        let reference = doubled_reference(&t, d.outputs().len(), d.inputs().len());
        assert!(max_diff(&ev(&double(&d)), &reference) < TOL);
    }
}

#[test]
fn doubling_commutes_with_composition() {
    let mut r = rng(18);
    for _ in 0..30 {
        let f = diagram_with_arity(&mut r, 1, 2, 4);
        let g = diagram_with_arity(&mut r, 2, 1, 4);
        let left = double(&f.compose(&g).unwrap());
        let right = double(&f).compose(&double(&g)).unwrap();
        assert!(left.underlying.is_isomorphic(&right.underlying, TOL));
        assert_eq!(left.input_kinds, right.input_kinds);
    }
}

#[test]
fn encode_examples() {
    let z0 = ev(&point(0).compose(&encode_spider(Color::Z)).unwrap());
    let ket0: Matrix = [1.0, 0.0, 0.0, 0.0].iter().map(|&x| vec![c(x, 0.0)]).collect();
    assert!(positive_multiple(&ket0, &z0));

    let x0 = ev(&point_of(Color::X, 0).compose(&encode_spider(Color::X)).unwrap());
    let plus: Matrix = vec![vec![c(1.0, 0.0)]; 4];
    assert!(positive_multiple(&plus, &x0));

    for col in [Color::Z, Color::X] {
        let mirrored = measure_spider(col).adjoint();
        assert!(mirrored.underlying.is_isomorphic(&encode_spider(col).underlying, TOL));
        assert_eq!(mirrored.input_kinds, encode_spider(col).input_kinds);
    }
}

#[test]
fn measure_after_encode() {
    for a in [Color::Z, Color::X] {
        for b in [Color::Z, Color::X] {
            let m = ev(&encode_spider(a).compose(&measure_spider(b)).unwrap());
            if a == b {
                assert!(positive_multiple(&eye(2), &m), "{a:?}");
            } else {
                // Uniform out in b's basis, whatever comes in through a's.
                let (ua, ub) = (ev(&uniform_state_of(a)), ev(&uniform_state_of(b)));
                assert!(positive_multiple(&mul(&ub, &dagger(&ua)), &m), "{a:?} {b:?}");
            }
        }
    }
    // Point distributions through measure(Z) ∘ encode(Z) come back unchanged.
    let through = encode_spider(Color::Z).compose(&measure_spider(Color::Z)).unwrap();
    for bit in 0..2 {
        let p = ev(&point(bit));
        assert!(positive_multiple(&p, &ev(&point(bit).compose(&through).unwrap())));
    }
    // And through mismatched colours they come out uniform.
    let mixed = encode_spider(Color::Z).compose(&measure_spider(Color::X)).unwrap();
    let out = ev(&point(1).compose(&mixed).unwrap());
    assert!(positive_multiple(&ev(&uniform_state_of(Color::X)), &out));
}

#[test]
fn uniform_state_is_uniform() {
    let u = ev(&uniform_state());
    assert!(positive_multiple(&vec![vec![c(1.0, 0.0)]; 2], &u));
    assert_eq!(uniform_state().output_kinds, vec![C]);
}

#[test]
fn measured_phases_vanish() {
    for k in 0..8 {
        let st = quantum_state(&Diagram::single(VertexKind::Z(Phase::eighth_turns(k)), 0, 1));
        let out = ev(&st.compose(&measure_spider(Color::Z)).unwrap());
        assert!(positive_multiple(&ev(&uniform_state()), &out), "phase {k}/4");
    }
}

#[test]
fn z_measurement_extracts_the_diagonal() {
    let mut r = rng(21);
    for _ in 0..40 {
        let d = diagram_with_arity(&mut r, 0, 1, 5);
        let psi = eval(&d);
        if psi.iter().all(|x| x[0].norm() < TOL) {
            continue;
        }
        let probs: Matrix = psi.iter().map(|x| vec![c(x[0].norm_sqr(), 0.0)]).collect();
        let out = ev(&quantum_state(&d).compose(&measure_spider(Color::Z)).unwrap());
        assert!(positive_multiple(&probs, &out));
    }
}

#[test]
fn z_x_z_outcomes_factorise() {
    let cl = DoubledDiagram::identity(&[C]);
    let chain = nondemolition_measure(Color::Z)
        .compose(&nondemolition_measure(Color::X).tensor(&cl))
        .unwrap()
        .compose(&measure_spider(Color::Z).tensor(&cl).tensor(&cl))
        .unwrap();
    assert_eq!(chain.output_kinds, vec![C, C, C]);
    let mut r = rng(22);
    for _ in 0..20 {
        let d = diagram_with_arity(&mut r, 0, 1, 4);
        let p = ev(&quantum_state(&d).compose(&chain).unwrap());
        if p.iter().all(|x| x[0].norm() < TOL) {
            continue;
        }
        // Entries are indexed (z2, x, z1); rows by the first Z outcome.
        let by_first: Matrix = (0..2).map(|z1| (0..4).map(|rest| p[rest * 2 + z1][0]).collect()).collect();
        assert!(rank_one(&by_first));
        let second: Vec<_> = (0..2).map(|z2| p[z2 * 4][0] + p[z2 * 4 + 2][0]).collect();
        assert!((second[0] - second[1]).norm() < TOL);
    }
}

#[test]
fn nondemolition_examples() {
    let plus = quantum_state(&Diagram::single(VertexKind::Z(Phase::ZERO), 0, 1));
    let out = ev(&plus.compose(&nondemolition_measure(Color::Z)).unwrap());
    // Joint state: |0⟩⟨0| ⊗ point0 + |1⟩⟨1| ⊗ point1, indexed (ket, bra, c).
    let mut expected = zeros(8, 1);
    expected[0][0] = c(1.0, 0.0);
    expected[7][0] = c(1.0, 0.0);
    assert!(positive_multiple(&expected, &out));

    let decohere = nondemolition_measure(Color::Z)
        .compose(&DoubledDiagram::identity(&[Q]).tensor(&zx_core::doubled::discard_classical()))
        .unwrap();
    let mut diag = zeros(4, 4);
    diag[0][0] = c(1.0, 0.0);
    diag[3][3] = c(1.0, 0.0);
    assert!(positive_multiple(&diag, &ev(&decohere)));

    for col in [Color::Z, Color::X] {
        let copy = DoubledDiagram::classical(Diagram::single(VertexKind::spider(col, Phase::ZERO), 1, 2));
        let decomposed = measure_spider(col)
            .compose(&copy)
            .unwrap()
            .compose(&encode_spider(col).tensor(&DoubledDiagram::identity(&[C])))
            .unwrap();
        assert_eq!(decomposed.output_kinds, vec![Q, C]);
        assert!(proportional(&ev(&nondemolition_measure(col)), &ev(&decomposed)));
    }
}

#[test]
fn wire_kinds_are_checked() {
    let err = measure_spider(Color::Z).compose(&measure_spider(Color::Z)).unwrap_err();
    assert!(matches!(err, DoubledError::KindMismatch { .. }));
    let bad = DoubledDiagram { input_kinds: vec![Q, Q], ..measure_spider(Color::Z) };
    assert!(matches!(bad.check(), Err(DoubledError::WidthMismatch { .. })));
}
