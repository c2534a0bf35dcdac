mod common;

use common::*;
use proptest::prelude::*;
use zx_core::random::{random_diagram, rng, DiagramShape};
use zx_core::tensor::{evaluate_with, vertex_tensor, Strategy, TensorError};
use zx_core::{compare, evaluate, Color, CompareMode, Diagram, Phase, Tensor, Verdict, VertexKind};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn vertex_tensor_examples() {
    let t = |k, i, o| from_tensor(&vertex_tensor(k, i, o).unwrap());
    assert_eq!(t(VertexKind::Z(Phase::ZERO), 1, 1), eye(2));
    assert!(max_diff(&t(VertexKind::Z(Phase::PI), 0, 1), &vec![vec![c(1.0, 0.0)], vec![c(-1.0, 0.0)]]) < TOL);
    assert!(max_diff(&t(VertexKind::X(Phase::ZERO), 0, 1), &vec![vec![c(SQRT2, 0.0)], vec![c(0.0, 0.0)]]) < TOL);
    assert!(max_diff(&t(VertexKind::Z(Phase::ZERO), 0, 0), &vec![vec![c(2.0, 0.0)]]) < TOL);
    assert!(max_diff(&t(VertexKind::H, 1, 1), &h()) < TOL);
    assert!(matches!(vertex_tensor(VertexKind::H, 1, 2), Err(TensorError::InvalidDegree(3))));
}

#[test]
fn x_spider_matches_plus_minus_formula() {
    // |+…+⟩⟨+…+| + e^{iα}|−…−⟩⟨−…−|, scaled; built directly from |±⟩.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = vec![vec![c(s, 0.0)], vec![c(s, 0.0)]];
    let minus = vec![vec![c(s, 0.0)], vec![c(-s, 0.0)]];
    for k in 0..8 {
        let a = Phase::eighth_turns(k);
        for (ins, outs) in [(0, 1), (1, 1), (1, 2), (2, 1), (0, 3)] {
            let power = |v: &Matrix, n: usize| (0..n).fold(eye(1), |acc, _| kron(&acc, v));
            let term = |v: &Matrix| mul(&power(v, outs), &dagger(&power(v, ins)));
            let sum: Matrix = term(&plus)
                .iter()
                .zip(term(&minus))
                .map(|(p, m)| p.iter().zip(m).map(|(x, y)| x + a.exp_i() * y).collect())
                .collect();
            let expected = sum;
            let got = from_tensor(&vertex_tensor(VertexKind::X(a), ins, outs).unwrap());
            assert!(max_diff(&got, &expected) < TOL, "X({a}) {ins}->{outs}");
        }
    }
}

#[test]
fn evaluate_examples() {
    let bell = vec![vec![c(1.0, 0.0)], vec![c(0.0, 0.0)], vec![c(0.0, 0.0)], vec![c(1.0, 0.0)]];
    assert_eq!(eval(&Diagram::cup()), bell);

    let ghz = eval(&Diagram::single(VertexKind::Z(Phase::ZERO), 0, 3));
    for (k, row) in ghz.iter().enumerate() {
        let want = if k == 0 || k == 7 { 1.0 } else { 0.0 };
        assert!((row[0] - c(want, 0.0)).norm() < TOL);
    }

    let cnot_d = zx_core::format::parse_diagram(include_str!("../data/cnot-a.zx")).unwrap();
    let r = ratio(&cnot(0, 1, 2), &eval(&cnot_d)).expect("proportional to CNOT");
    // Z copies c onto the X leg; X is (1/√2)·[parity even].
    assert!((r - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < TOL, "CNOT scalar {r}");

    let circle = Diagram::cup().compose(&Diagram::cap()).unwrap();
    assert!(max_diff(&eval(&circle), &vec![vec![c(2.0, 0.0)]]) < TOL);
}

#[test]
fn size_guard() {
    let d = Diagram::single(VertexKind::Z(Phase::ZERO), 0, 23);
    assert!(matches!(evaluate(&d), Err(TensorError::SizeGuardExceeded { .. })));
}

#[test]
fn compare_examples() {
    let i = Tensor::identity(1);
    assert_eq!(compare(&i, &i, CompareMode::Exact, TOL).unwrap(), Verdict::Equal);

    let cn = evaluate(&zx_core::circuit::parse_circuit("qubits 2\ncnot 0 1").unwrap().to_diagram()).unwrap();
    let scaled = cn.scale(c(SQRT2, 0.0));
    match compare(&cn, &scaled, CompareMode::UpToScalar, TOL).unwrap() {
        Verdict::ProportionalBy(r) => assert!((r - c(SQRT2, 0.0)).norm() < TOL),
        v => panic!("{v}"),
    }

    let x = Tensor::from_real(1, 1, &[0.0, 1.0, 1.0, 0.0]);
    match compare(&i, &x, CompareMode::UpToScalar, TOL).unwrap() {
        Verdict::Distinct(d) => assert!((d - 1.0).abs() < TOL),
        v => panic!("{v}"),
    }

    let z = Tensor::zeros(1, 1);
    assert_eq!(compare(&z, &z, CompareMode::UpToScalar, TOL).unwrap(), Verdict::Equal);
    assert!(matches!(compare(&z, &i, CompareMode::UpToScalar, TOL).unwrap(), Verdict::Distinct(_)));
    assert!(matches!(compare(&i, &z, CompareMode::UpToScalar, TOL).unwrap(), Verdict::Distinct(_)));
    assert!(matches!(compare(&i, &Tensor::identity(2), CompareMode::Exact, TOL), Err(TensorError::ShapeMismatch { .. })));
}

fn hadamard_conjugated(color: Color, p: Phase, ins: usize, outs: usize) -> Diagram {
    let mut d = Diagram::new();
    let inputs: Vec<_> = (0..ins).map(|_| d.add_input()).collect();
    let outputs: Vec<_> = (0..outs).map(|_| d.add_output()).collect();
    let v = d.add_spider(VertexKind::spider(color.toggle(), p));
    for b in inputs.into_iter().chain(outputs) {
        let hb = d.add_h();
        d.add_edge(b, hb).unwrap();
        d.add_edge(hb, v).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_matrix_product(seed in any::<u64>(), k in 0usize..3) {
        let mut r = rng(seed);
        let f = diagram_with_arity(&mut r, 1, k, 4);
        let g = diagram_with_arity(&mut r, k, 2, 4);
        let fg = f.compose(&g).unwrap();
        prop_assert!(max_diff(&eval(&fg), &mul(&eval(&g), &eval(&f))) < TOL);
    }

    #[test]
    fn tensor_is_kronecker(a in any::<u64>(), b in any::<u64>()) {
        let shape = DiagramShape { max_spiders: 4, ..Default::default() };
        let f = random_diagram(&mut rng(a), shape);
        let g = random_diagram(&mut rng(b), shape);
        prop_assert!(max_diff(&eval(&f.tensor(&g)), &kron(&eval(&f), &eval(&g))) < TOL);
    }

    #[test]
    fn adjoint_is_dagger(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), DiagramShape::default());
        prop_assert!(max_diff(&eval(&d.adjoint()), &dagger(&eval(&d))) < TOL);
    }

    #[test]
    fn contraction_order_is_irrelevant(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), DiagramShape::default());
        let a = evaluate_with(&d, Strategy::Greedy).unwrap();
        let b = evaluate_with(&d, Strategy::Sequential).unwrap();
        prop_assert!(a.max_abs_diff(&b) < TOL);
    }

    #[test]
    fn colour_symmetry(k in 0i64..8, ins in 0usize..3, outs in 0usize..3, red in any::<bool>()) {
        let color = if red { Color::X } else { Color::Z };
        let p = Phase::eighth_turns(k);
        let plain = Diagram::single(VertexKind::spider(color, p), ins, outs);
        let swapped = hadamard_conjugated(color, p, ins, outs);
        prop_assert!(max_diff(&eval(&plain), &eval(&swapped)) < TOL);
    }
}
