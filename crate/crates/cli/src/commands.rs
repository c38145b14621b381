use serde_json::{json, Value};

use spodet_core::characters::{cauchy_check, character, sp_o_via_expansion, CauchyOptions};
use spodet_core::continuum::{fredholm_det_continuum, ContinuumKernel, NystromConfig};
use spodet_core::edge::{edge_convergence_report, EdgeModel};
use spodet_core::kernel::kernel_matrix;
use spodet_core::measures::normalization_check;
use spodet_core::toeplitz::{bo_check, gessel_check, szego_convergence, szego_rhs};
use spodet_core::{
    CharacterKind, ContourParams, HalfInt, KernelMethod, KernelSpec, MeasureSpec, SpO, Symbol, ThKind,
};

use crate::args;
use crate::output::{cell, CmdResult, Failure, Outcome, Table};
use crate::{
    BoArgs, CauchyArgs, CharArgs, CharKindArg, Cli, Command, ContinuumArgs, EdgeArgs, F21Args, FredholmMethodArg,
    GesselArgs, KernelArgs, MeasureArgs, MeasureSpecArgs, MethodArg, ModelArg, SignArg, SpOArg, SzegoArgs, Verify,
};

pub fn run(cli: &Cli) -> CmdResult<Outcome> {
    match &cli.command {
        Command::Char(a) => char_cmd(a),
        Command::Kernel(a) => kernel_cmd(a),
        Command::MeasureCheck(a) => measure_cmd(a),
        Command::Verify(Verify::Cauchy(a)) => cauchy_cmd(a),
        Command::Verify(Verify::Gessel(a)) => gessel_cmd(a),
        Command::Verify(Verify::Bo(a)) => bo_cmd(a),
        Command::Szego(a) => szego_cmd(a),
        Command::Edge(a) => edge_cmd(a),
        Command::Tw2(a) => continuum_cmd(ContinuumKernel::airy(), a),
        Command::F21(F21Args { sign, grid }) => {
            let k = match sign {
                SignArg::Plus => ContinuumKernel::a21_plus(),
                SignArg::Minus => ContinuumKernel::a21_minus(),
            };
            continuum_cmd(k, grid)
        }
        Command::Selftest => crate::selftest::run(cli.seed),
    }
}

fn spo(k: SpOArg) -> SpO {
    match k {
        SpOArg::Sp => SpO::Sp,
        SpOArg::O => SpO::O,
    }
}

fn measure(a: &MeasureSpecArgs) -> CmdResult<MeasureSpec> {
    let plus = args::specialization(&a.rho_plus).map_err(Failure::usage)?;
    let minus = args::specialization(&a.rho_minus).map_err(Failure::usage)?;
    Ok(MeasureSpec::new(spo(a.kind), plus, minus))
}

fn symbol(a: &crate::SymbolArgs) -> CmdResult<Symbol> {
    let plus = args::complex_list(&a.rho_plus_coeffs).map_err(Failure::usage)?;
    let minus = args::complex_list(&a.rho_minus_coeffs).map_err(Failure::usage)?;
    Ok(Symbol::new(plus, minus))
}

fn scalar(result: Value, pass: bool) -> Outcome {
    Outcome {
        result,
        pass,
        table: None,
    }
}

fn char_cmd(a: &CharArgs) -> CmdResult<Outcome> {
    let lambda = args::partition(&a.lambda).map_err(Failure::usage)?;
    let rho = args::specialization(&a.rho).map_err(Failure::usage)?;
    let (kind, alt) = match a.kind {
        CharKindArg::Schur => (CharacterKind::Schur, None),
        CharKindArg::Sp => (CharacterKind::Symplectic, Some(SpO::Sp)),
        CharKindArg::O => (CharacterKind::Orthogonal, Some(SpO::O)),
    };
    let value = character(kind, &lambda, &rho);
    let mut result = json!({ "value": value });
    let mut pass = value.is_finite();
    // sp and o also via the skew-Schur expansion
    if let Some(k) = alt {
        let expansion = sp_o_via_expansion(k, &lambda, &rho, lambda.weight())?;
        let deviation = (value - expansion).norm() / value.norm().max(1.0);
        pass &= deviation < 1e-10;
        result["expansion"] = json!(expansion);
        result["relative_deviation"] = json!(deviation);
    }
    Ok(scalar(result, pass))
}

fn half(x: f64) -> CmdResult<HalfInt> {
    HalfInt::from_f64(x).map_err(Failure::usage)
}

fn kernel_cmd(a: &KernelArgs) -> CmdResult<Outcome> {
    let spec = KernelSpec::new(measure(&a.measure)?);
    let (pa, pb) = (half(a.a)?, half(a.b)?);
    let (pts, idx) = if pa == pb { (vec![pa], (0, 0)) } else { (vec![pa, pb], (0, 1)) };
    let contour = match (a.r_z, a.r_w) {
        (Some(rz), Some(rw)) => ContourParams::new(rz, rw, a.nodes),
        _ => ContourParams {
            nodes: a.nodes,
            ..ContourParams::for_spec(&spec)?
        },
    };
    let mut result = json!({ "a": a.a, "b": a.b });
    let mut values = Vec::new();
    if matches!(a.method, MethodArg::Series | MethodArg::Both) {
        let m = kernel_matrix(&spec, &pts, KernelMethod::Series)?;
        let v = m.get(idx.0, idx.1);
        result["series"] = json!(v);
        result["series_order"] = json!(m.resolution);
        values.push(v);
    }
    if matches!(a.method, MethodArg::Quadrature | MethodArg::Both) {
        let m = kernel_matrix(&spec, &pts, KernelMethod::Quadrature(contour))?;
        let v = m.get(idx.0, idx.1);
        result["quadrature"] = json!(v);
        result["contour"] = json!({ "r_z": contour.r_z, "r_w": contour.r_w, "nodes": m.resolution });
        values.push(v);
    }
    let mut pass = values.iter().all(|v| v.is_finite());
    if let [s, q] = values[..] {
        let diff = (s - q).norm();
        result["diff"] = json!(diff);
        pass &= diff <= a.tol;
    }
    Ok(scalar(result, pass))
}

fn measure_cmd(a: &MeasureArgs) -> CmdResult<Outcome> {
    let m = measure(&a.measure)?;
    let check = normalization_check(&m, a.max_weight)?;
    let deviation = (check.z - check.enumerated_sum).norm();
    let pass = match check.tail_bound {
        Some(t) => deviation <= t + 1e-12 * check.z.norm(),
        None => deviation <= a.tol,
    };
    let result = json!({
        "Z": check.z,
        "enumerated_sum": check.enumerated_sum,
        "tail_bound": check.tail_bound,
        "deviation": deviation,
        "max_weight": check.max_weight,
    });
    Ok(scalar(result, pass))
}

fn cauchy_cmd(a: &CauchyArgs) -> CmdResult<Outcome> {
    let xs = args::complex_list(&a.xs).map_err(Failure::usage)?;
    let ys = args::complex_list(&a.ys).map_err(Failure::usage)?;
    let r = cauchy_check(spo(a.kind), &xs, &ys, CauchyOptions::default())?;
    let rel = (r.lhs - r.rhs).norm() / r.rhs.norm();
    let result = json!({ "lhs": r.lhs, "rhs": r.rhs, "horizon": r.horizon, "relative_deviation": rel });
    Ok(scalar(result, rel < a.tol))
}

fn th_kind(k: u8) -> CmdResult<ThKind> {
    ThKind::from_index(k).map_err(Failure::usage)
}

fn gessel_cmd(a: &GesselArgs) -> CmdResult<Outcome> {
    let s = symbol(&a.symbol)?;
    let r = gessel_check(th_kind(a.kind)?, &s, a.size, a.max_weight)?;
    let result = json!({
        "determinant": r.determinant,
        "restricted_sum": r.restricted_sum,
        "tail_bound": r.tail_bound,
        "residual": r.residual,
    });
    Ok(scalar(result, r.residual < a.tol))
}

fn bo_cmd(a: &BoArgs) -> CmdResult<Outcome> {
    let s = symbol(&a.symbol)?;
    let kind = spo(a.kind);
    let method = match a.method {
        FredholmMethodArg::Series => KernelMethod::Series,
        FredholmMethodArg::Quadrature => {
            KernelMethod::Quadrature(ContourParams::for_spec(&KernelSpec::new(s.measure(kind)))?)
        }
    };
    let r = bo_check(kind, &s, a.m, method)?;
    let result = json!({
        "lhs": r.determinant,
        "rhs": r.normalization * r.fredholm,
        "normalization": r.normalization,
        "fredholm": r.fredholm,
        "tail_len": r.tail_len,
        "residual": r.residual,
    });
    Ok(scalar(result, r.residual < a.tol))
}

fn szego_cmd(a: &SzegoArgs) -> CmdResult<Outcome> {
    let s = symbol(&a.symbol)?;
    let sizes = args::sizes(&a.sizes).map_err(Failure::usage)?;
    let mut rows = Vec::new();
    let mut series = Vec::new();
    let mut pass = true;
    for &k in &a.kind {
        let kind = th_kind(k)?;
        let limit = szego_rhs(kind.measure_kind(), &s)?;
        let conv = szego_convergence(kind, &s, &sizes)?;
        pass &= conv.last().is_some_and(|r| r.deviation < a.tol);
        for r in &conv {
            rows.push(vec![
                k.to_string(),
                r.size.to_string(),
                cell(r.lhs.re),
                cell(r.lhs.im),
                cell(r.deviation),
            ]);
        }
        series.push(json!({ "kind": k, "limit": limit, "rows": conv }));
    }
    Ok(Outcome {
        result: json!({ "series": series }),
        pass,
        table: Some(Table {
            headers: vec!["kind", "size", "lhs_re", "lhs_im", "deviation"],
            rows,
        }),
    })
}

fn edge_cmd(a: &EdgeArgs) -> CmdResult<Outcome> {
    let model = match a.model {
        ModelArg::Psp => EdgeModel::Psp,
        ModelArg::Po => EdgeModel::Po,
        ModelArg::Pa => EdgeModel::Pa,
        ModelArg::Pb => EdgeModel::Pb,
    };
    let thetas = args::float_list(&a.theta).map_err(Failure::usage)?;
    let ss = args::float_list(&a.s).map_err(Failure::usage)?;
    let report = edge_convergence_report(model, &thetas, &ss)?;
    let decreasing = report.strictly_decreasing();
    let max_imaginary = report.max_imaginary();
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                model.to_string(),
                cell(r.theta),
                cell(r.s),
                cell(r.start.value()),
                cell(r.s_effective),
                cell(r.discrete.re),
                cell(r.discrete.im),
                cell(r.continuum),
                cell(r.deviation),
                cell(r.deviation_at_s),
            ]
        })
        .collect();
    let result = json!({
        "model": model.to_string(),
        "strictly_decreasing": decreasing,
        "interpolated_strictly_decreasing": report.interpolated_strictly_decreasing(),
        "max_imaginary": max_imaginary,
        "rows": report.rows,
    });
    Ok(Outcome {
        result,
        pass: decreasing && max_imaginary < 1e-8,
        table: Some(Table {
            headers: vec![
                "model",
                "theta",
                "s",
                "start",
                "s_effective",
                "discrete_re",
                "discrete_im",
                "continuum",
                "deviation",
                "deviation_at_s",
            ],
            rows,
        }),
    })
}

fn continuum_cmd(kernel: ContinuumKernel, a: &ContinuumArgs) -> CmdResult<Outcome> {
    let grid = args::grid(&a.s_grid).map_err(Failure::usage)?;
    let cfg = NystromConfig {
        length: a.length,
        nodes: a.nodes,
    };
    let mut rows = Vec::with_capacity(grid.len());
    let mut values = Vec::with_capacity(grid.len());
    let mut worst: f64 = 0.0;
    for &s in &grid {
        let v = fredholm_det_continuum(&kernel, s, cfg)?;
        let r = fredholm_det_continuum(&kernel, s, cfg.refined())?;
        let diff = (v - r).abs();
        worst = worst.max(diff);
        rows.push(vec![cell(s), cell(v), cell(diff)]);
        values.push(json!({ "s": s, "value": v, "refinement_diff": diff }));
    }
    let result = json!({ "kernel": kernel, "nystrom": cfg, "max_refinement_diff": worst, "rows": values });
    Ok(Outcome {
        result,
        pass: worst <= a.tol && worst.is_finite(),
        table: Some(Table {
            headers: vec!["s", "value", "refinement_diff"],
            rows,
        }),
    })
}
