//! Discrete Fredholm determinants against determinants and enumeration,
//! and the edge regime against the continuum kernels.

use spodet_core::continuum::{fredholm_det_continuum, ContinuumKernel, NystromConfig};
use spodet_core::edge::{edge_convergence_report, edge_gap_discrete, EdgeModel};
use spodet_core::kernel::{fredholm_det_discrete, ContourParams, KernelMethod};
use spodet_core::partition::enumerate_partitions;
use spodet_core::toeplitz::th_side;
use spodet_core::{
    Class, Constraint, HalfInt, KernelSpec, MeasureSpec, PlancherelAB, SpO, Specialization, Symbol, ThKind,
};

fn half(n: i64) -> HalfInt {
    HalfInt::from_int_plus_half(n)
}

#[test]
fn plancherel_gap_is_the_determinant_over_normalization() {
    let m = MeasureSpec::new(SpO::Sp, Specialization::plancherel_real(0.4), Specialization::plancherel_real(0.3));
    let z = m.normalization().unwrap();
    let spec = KernelSpec::new(m);
    let d2 = th_side(&Symbol::real(&[0.4], &[0.3]), ThKind::D2, 2).unwrap();
    for method in [KernelMethod::Series, KernelMethod::Quadrature(ContourParams::default())] {
        let fd = fredholm_det_discrete(&spec, half(2), 4, method).unwrap();
        assert!((fd.value - d2 / z).norm() < 1e-8, "{method:?}");
    }
}

/// `P_A(α_1 ≤ m)`, exact: class A with bounded first part is a finite set.
fn class_a_gap(theta: f64, m: u32) -> f64 {
    let p = PlancherelAB::new(Class::A, theta).unwrap();
    enumerate_partitions(2 * (m as usize + 1) * (m as usize + 1), Constraint::MaxPart(m))
        .unwrap()
        .filter(|l| l.in_class(Class::A))
        .map(|l| p.weight(&l))
        .sum()
}

#[test]
fn almost_symmetric_gap_matches_enumeration() {
    let m = MeasureSpec::almost_symmetric(Class::A, 0.8);
    let spec = KernelSpec::new(m);
    let fd = fredholm_det_discrete(&spec, half(2), 4, KernelMethod::Series).unwrap();
    assert!(fd.value.im.abs() < 1e-10);
    assert!((fd.value.re - class_a_gap(0.8, 2)).abs() < 1e-10);
}

#[test]
fn edge_gap_at_small_theta_matches_enumeration() {
    // θ = 1, s = 0: threshold 2, first excluded site 5/2, the event α_1 ≤ 2
    let gap = edge_gap_discrete(EdgeModel::Pa, 1.0, 0.0).unwrap();
    assert_eq!(gap.scaling.start, half(2));
    assert!(gap.value.im.abs() < 1e-10);
    assert!((gap.value.re - class_a_gap(1.0, 2)).abs() < 1e-9);
    // the B-model counts α_1 ≤ 2 among transposes: α' ∈ A with ℓ(α') ≤ 2
    let p = PlancherelAB::new(Class::B, 1.0).unwrap();
    let exact: f64 = enumerate_partitions(18, Constraint::MaxPart(2))
        .unwrap()
        .filter(|l| l.in_class(Class::B))
        .map(|l| p.weight(&l))
        .sum();
    let b = edge_gap_discrete(EdgeModel::Pb, 1.0, 0.0).unwrap();
    assert!(b.value.im.abs() < 1e-10);
    assert!((b.value.re - exact).abs() < 1e-9, "{} vs {exact}", b.value.re);
}

#[test]
fn almost_symmetric_edge_values_are_probabilities() {
    for model in [EdgeModel::Pa, EdgeModel::Pb] {
        for s in [-3.0, -1.0, 0.5, 2.0] {
            let v = edge_gap_discrete(model, 20.0, s).unwrap().value;
            assert!(v.im.abs() < 1e-8, "{model} s={s}: {v}");
            assert!(v.re >= -1e-8 && v.re <= 1.0 + 1e-8, "{model} s={s}: {v}");
        }
    }
}

#[test]
fn orthogonal_edge_tracks_the_minus_kernel() {
    let report = edge_convergence_report(EdgeModel::Po, &[15.0, 30.0], &[-1.0, 1.0]).unwrap();
    for r in &report.rows {
        assert!(r.discrete.im.abs() < 1e-8);
        assert!(r.deviation < 0.05, "{r:?}");
    }
    let b = edge_convergence_report(EdgeModel::Pb, &[15.0, 30.0], &[0.0]).unwrap();
    assert!(b.strictly_decreasing());
    assert!(b.rows.iter().all(|r| r.deviation < 0.02));
}

#[test]
fn deep_right_tail_is_one_for_every_model() {
    for model in EdgeModel::ALL {
        let v = edge_gap_discrete(model, 20.0, 8.0).unwrap().value;
        assert!((v - 1.0).norm() < 1e-6, "{model}: {v}");
    }
}

#[test]
fn one_site_shift_moves_the_gap_by_the_grid_bound() {
    // consecutive sites differ by one discrete point probability, about θ^{-1/3} times a density ≤ 1/2
    let theta: f64 = 30.0;
    let step = theta.cbrt().recip();
    for model in [EdgeModel::Psp, EdgeModel::Pa] {
        let values: Vec<f64> = (0..12)
            .map(|k| edge_gap_discrete(model, theta, -3.0 + k as f64 * step).unwrap().value.re)
            .collect();
        for w in values.windows(2) {
            assert!((w[1] - w[0]).abs() <= 0.5 * step, "{model}: {values:?}");
        }
    }
}

#[test]
fn continuum_determinants_lie_in_the_unit_interval() {
    let cfg = NystromConfig::default();
    for k in [ContinuumKernel::airy(), ContinuumKernel::a21_plus()] {
        for i in 0..=20 {
            let s = -6.0 + 0.5 * i as f64;
            let v = fredholm_det_continuum(&k, s, cfg).unwrap();
            assert!(v > 0.0 && v <= 1.0 + 1e-12, "{:?} s={s}: {v}", k.kind);
        }
    }
    // 𝒜⁻ is not a positive operator: its determinant exceeds 1 near s = 0, and still tends to 1
    let minus = ContinuumKernel::a21_minus();
    for i in 0..=20 {
        let s = -6.0 + 0.5 * i as f64;
        assert!(fredholm_det_continuum(&minus, s, cfg).unwrap() > 0.0);
    }
    assert!(fredholm_det_continuum(&minus, 0.0, cfg).unwrap() > 1.0);
    assert!((fredholm_det_continuum(&minus, 8.0, cfg).unwrap() - 1.0).abs() < 1e-10);
}
