//! A fast pass over the invariants: each check is a scaled-down version of the acceptance criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use spodet_core::characters::{cauchy_check, CauchyOptions};
use spodet_core::continuum::{fredholm_det_continuum, tracy_widom_gue, ContinuumKernel, NystromConfig};
use spodet_core::kernel::{cauchy_det_identity_check, kernel_matrix};
use spodet_core::measures::{brute_correlation, plancherel_ab_equals_msp};
use spodet_core::toeplitz::{bo_residual, gessel_residual, szego_convergence};
use spodet_core::{
    Class, Complex64, ContourParams, HalfInt, KernelMethod, KernelSpec, MeasureSpec, SpO, Specialization, Symbol,
    ThKind,
};

use crate::output::{cell, CmdResult, Outcome, Table};

struct Check {
    name: &'static str,
    value: f64,
    tol: f64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn run(seed: u64) -> CmdResult<Outcome> {
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for kind in [SpO::Sp, SpO::O] {
        let r = cauchy_check(kind, &[c(0.8), c(0.5)], &[c(0.2), c(0.25)], CauchyOptions::default())?;
        worst = worst.max((r.lhs - r.rhs).norm() / r.rhs.norm());
    }
    checks.push(Check {
        name: "cauchy identities",
        value: worst,
        tol: 1e-8,
    });

    let pts: Vec<HalfInt> = (-5..=5).step_by(2).map(HalfInt::from_doubled).collect::<Result<_, _>>()?;
    let (mut corr, mut methods) = (0.0f64, 0.0f64);
    for kind in [SpO::Sp, SpO::O] {
        let m = MeasureSpec::new(kind, Specialization::plancherel_real(0.4), Specialization::plancherel_real(0.3));
        let spec = KernelSpec::new(m.clone());
        let series = kernel_matrix(&spec, &pts, KernelMethod::Series)?;
        let quad = kernel_matrix(&spec, &pts, KernelMethod::Quadrature(ContourParams::default()))?;
        for (a, b) in series.entries.iter().zip(&quad.entries) {
            methods = methods.max((a - b).norm());
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let brute = brute_correlation(&m, &[pts[i], pts[j]], 10)?.value;
                corr = corr.max((series.restrict(&[i, j]).det() - brute).norm());
            }
        }
    }
    checks.push(Check {
        name: "two-point correlations vs enumeration",
        value: corr,
        tol: 1e-7,
    });
    checks.push(Check {
        name: "series vs quadrature kernel",
        value: methods,
        tol: 1e-9,
    });

    let symbols = [Symbol::real(&[0.4], &[0.3]), Symbol::real(&[-0.25], &[0.5]), Symbol::real(&[0.5], &[-0.5])];
    let mut gessel: f64 = 0.0;
    let mut bo: f64 = 0.0;
    for s in &symbols {
        for kind in ThKind::ALL {
            for size in 1..=3 {
                gessel = gessel.max(gessel_residual(kind, s, size, 12)?);
            }
        }
        for kind in [SpO::Sp, SpO::O] {
            for m in 1..=3 {
                bo = bo.max(bo_residual(kind, s, m)?);
            }
        }
    }
    checks.push(Check {
        name: "gessel identities",
        value: gessel,
        tol: 1e-8,
    });
    checks.push(Check {
        name: "borodin-okounkov identity",
        value: bo,
        tol: 1e-8,
    });

    let mut szego: f64 = 0.0;
    for kind in [ThKind::D1, ThKind::D2] {
        let rows = szego_convergence(kind, &symbols[0], &[8])?;
        szego = szego.max(rows[0].deviation);
    }
    checks.push(Check {
        name: "szego limit at size 8",
        value: szego,
        tol: 1e-10,
    });

    let ab = plancherel_ab_equals_msp(Class::A, 0.8, 8)?.max(plancherel_ab_equals_msp(Class::B, 0.8, 8)?);
    checks.push(Check {
        name: "plancherel on A/B",
        value: ab,
        tol: 1e-12,
    });

    let f2 = (tracy_widom_gue(0.0)? - 0.969_372_828_355).abs();
    checks.push(Check {
        name: "tracy-widom F2(0)",
        value: f2,
        tol: 1e-9,
    });
    let mut sum: f64 = 0.0;
    for (x, y) in [(-2.0, 1.5), (0.3, -0.7), (1.0, 2.0)] {
        let p = ContinuumKernel::a21_plus().value(x, y);
        let m = ContinuumKernel::a21_minus().value(x, y);
        sum = sum.max((p + m - 2.0 * ContinuumKernel::airy().value(x, y)).abs());
    }
    checks.push(Check {
        name: "A+ + A- = 2A",
        value: sum,
        tol: 1e-10,
    });
    let cfg = NystromConfig::default();
    let nys = (fredholm_det_continuum(&ContinuumKernel::a21_plus(), -1.0, cfg)?
        - fredholm_det_continuum(&ContinuumKernel::a21_plus(), -1.0, cfg.refined())?)
    .abs();
    checks.push(Check {
        name: "nystrom refinement",
        value: nys,
        tol: 1e-8,
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cd: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..25 {
            let zs: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let ws: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(0.05..0.5), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let (lhs, rhs) = cauchy_det_identity_check(&zs, &ws)?;
            cd = cd.max((lhs - rhs).norm() / rhs.norm());
        }
    }
    checks.push(Check {
        name: "cauchy-type determinant",
        value: cd,
        tol: 1e-10,
    });

    let pass = checks.iter().all(|c| c.value < c.tol);
    let rows = checks
        .iter()
        .map(|c| vec![c.name.to_string(), cell(c.value), cell(c.tol), (c.value < c.tol).to_string()])
        .collect();
    let list: Vec<_> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "value": c.value, "tol": c.tol, "pass": c.value < c.tol }))
        .collect();
    Ok(Outcome {
        result: json!({ "checks": list }),
        pass,
        table: Some(Table {
            headers: vec!["check", "value", "tol", "pass"],
            rows,
        }),
    })
}
