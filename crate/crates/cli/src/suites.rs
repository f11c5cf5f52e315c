//! The verification suites. Random inputs are drawn sequentially from seeded
//! generators before any case runs, so reports do not depend on `--parallel`.

use rayon::prelude::*;

use qwh_core::coherent::{build_cs, c_series, expectation, uncertainty_global, uncertainty_slice};
use qwh_core::displacement::{
    admissibility_integral, apply_d_normal, build_d, into_slice_of, irreducibility_proxy, ordering_residuals,
    pair_residuals, parity_conjugation_residual, shift_residual, slice_derivative_residual, square_integrability_check,
    unitarity_residual,
};
use qwh_core::fock::{interior, Operators};
use qwh_core::liealg::{
    axiom_suite, operator_commutator_residual, sigma_homomorphism_residual, slice_commutator_residual, HatWeyl,
    LieElement, QuatWeyl, RealWeyl,
};
use qwh_core::quadrature::{grid_build, MeasureSpec, QuadratureGrid, RadialMeasure};
use qwh_core::quantize::{quantize_symbol, resolution_check, SymbolFn};
use qwh_core::{sample, Axis, QMat, QVec, Quat};

use crate::config::{ExperimentConfig, GridConfig, Suite};
use crate::error::CliResult;
use crate::report::{float, Report, ReportRecord, SweepRow};

mod tol {
    pub const EXACT: f64 = 0.0;
    pub const COMMUTATOR: f64 = 1e-13;
    pub const HAMILTONIAN: f64 = 1e-13;
    pub const EIGEN: f64 = 1e-10;
    pub const EXPECTATION: f64 = 1e-10;
    pub const VAR_Q: f64 = 1e-10;
    pub const SATURATION: f64 = 1e-9;
    pub const C_SERIES: f64 = 1e-12;
    pub const MOMENT_REL: f64 = 1e-10;
    pub const RESOLUTION: f64 = 1e-8;
    pub const QUANTIZE: f64 = 1e-8;
    pub const LIE_AXIOM: f64 = 1e-12;
    pub const SLICE_COMMUTATOR: f64 = 1e-10;
    pub const D_VACUUM: f64 = 1e-8;
    pub const UNITARY: f64 = 1e-9;
    pub const ORDERING: f64 = 1e-8;
    pub const PARITY: f64 = 1e-9;
    pub const SHIFT: f64 = 1e-7;
    pub const PHASE_IN_SLICE: f64 = 1e-7;
    pub const FD_RATIO: f64 = 0.5;
    pub const SQUARE_INTEGRABLE: f64 = 1e-8;
    pub const ADMISSIBLE_REL: f64 = 1e-6;
    /// Allowance for rounding when comparing against an inequality bound.
    pub const ROUNDING: f64 = 1e-12;
}

pub fn run(config: &ExperimentConfig) -> CliResult<Report> {
    let mut report = Report::default();
    for suite in config.suite.expand() {
        let mut part = Report::default();
        match suite {
            Suite::Operators => operators(config, &mut part)?,
            Suite::Coherent => coherent(config, &mut part)?,
            Suite::UncertaintyGlobal => uncertainty_global_suite(config, &mut part)?,
            Suite::UncertaintySlice => uncertainty_slice_suite(config, &mut part)?,
            Suite::Resolution => resolution(config, &mut part)?,
            Suite::Quantize => quantize(config, &mut part)?,
            Suite::Liealg => liealg(config, &mut part)?,
            Suite::Displacement => displacement(config, &mut part)?,
            Suite::Uncertainty | Suite::All => unreachable!("expanded above"),
        }
        part.records.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        report.records.extend(part.records);
        report.sweep.extend(part.sweep);
    }
    Ok(report)
}

fn cases<I, O, F>(parallel: bool, items: &[I], f: F) -> CliResult<Vec<O>>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> qwh_core::Result<O> + Sync,
{
    let out: qwh_core::Result<Vec<O>> =
        if parallel { items.par_iter().map(&f).collect() } else { items.iter().map(&f).collect() };
    Ok(out?)
}

fn id(group: &str, k: usize) -> String {
    format!("{group}/{k:05}")
}

fn quat(q: Quat) -> String {
    format!("({},{},{},{})", float(q.w), float(q.x), float(q.y), float(q.z))
}

fn axis_str(a: Axis) -> String {
    let [x, y, z] = a.components();
    format!("({},{},{})", float(x), float(y), float(z))
}

fn axes(count: usize, seed: u64) -> Vec<Axis> {
    let mut rng = sample::rng(seed);
    let mut v = vec![Axis::i(), Axis::j(), Axis::k(), Axis::diagonal()];
    v.extend((0..count).map(|_| Axis::sample(&mut rng)));
    v
}

fn balls(count: usize, rmax: f64, seed: u64) -> Vec<Quat> {
    let mut rng = sample::rng(seed);
    (0..count).map(|_| sample::ball(&mut rng, rmax)).collect()
}

fn non_real_balls(count: usize, rmax: f64, seed: u64) -> Vec<Quat> {
    let mut rng = sample::rng(seed);
    (0..count).map(|_| sample::non_real_ball(&mut rng, rmax)).collect()
}

fn grid(g: &GridConfig, radial: RadialMeasure) -> CliResult<QuadratureGrid<f64>> {
    Ok(grid_build(MeasureSpec::new(radial, g.n_r, g.n_theta, g.n_phi, g.n_psi))?)
}

fn grid_params(g: &GridConfig) -> String {
    format!("n_r={};n_theta={};n_phi={};n_psi={}", g.n_r, g.n_theta, g.n_phi, g.n_psi)
}

fn operators(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "operators";
    let n = cfg.dim;
    let ops = Operators::<f64>::new(n)?;
    let dim = format!("N={n}");
    let c = ops.ladder_commutator();
    let err = c.block_max_abs_diff(&QMat::identity(n), interior(n))?;
    rep.records.push(ReportRecord::below(
        S,
        "ladder/interior".into(),
        dim.clone(),
        err,
        tol::EXACT,
        "[a, a+] = 1 on indices 0..N-2",
    ));
    rep.records.push(ReportRecord::near(
        S,
        "ladder/boundary".into(),
        dim.clone(),
        c.get(n - 1, n - 1).w,
        -((n - 1) as f64),
        tol::EXACT,
        "[a, a+] has corner entry -(N-1)",
    ));
    let q_sa = ops.position.adjoint().max_abs_diff(&ops.position)?;
    rep.records.push(ReportRecord::below(S, "position/self_adjoint".into(), dim.clone(), q_sa, tol::EXACT, "Q+ = Q"));
    let list = axes(cfg.samples.axes, cfg.seed + 100);
    let want_h = QMat::diagonal(&(0..n).map(|k| k as f64 + 0.5).collect::<Vec<_>>());
    let rows = cases(cfg.parallel, &list, |axis| {
        let p = ops.momentum(*axis);
        let sa = p.adjoint().max_abs_diff(&p)?;
        let comm = ops.position.commutator(&p)?.block_max_abs_diff(&ops.scalar(axis.quaternion()), interior(n))?;
        let h = ops.hamiltonian(*axis).block_max_abs_diff(&want_h, interior(n))?;
        Ok((sa, comm, h))
    })?;
    for (k, (axis, (sa, comm, h))) in list.iter().zip(rows).enumerate() {
        let p = format!("{dim};axis={}", axis_str(*axis));
        rep.records.push(ReportRecord::below(
            S,
            id("momentum_self_adjoint", k),
            p.clone(),
            sa,
            tol::EXACT,
            "P_I+ = P_I",
        ));
        rep.records.push(ReportRecord::below(
            S,
            id("commutator", k),
            p.clone(),
            comm,
            tol::COMMUTATOR,
            "[Q, P_I] = I on the interior",
        ));
        rep.records.push(ReportRecord::below(
            S,
            id("hamiltonian", k),
            p,
            h,
            tol::HAMILTONIAN,
            "(Q^2 + P_I^2)/2 = N + 1/2 on the interior",
        ));
    }
    Ok(())
}

fn coherent(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "coherent";
    let n = cfg.dim;
    let ops = Operators::<f64>::new(n)?;
    let a2 = ops.a.matmul(&ops.a)?;
    let ad2 = ops.a_dag.matmul(&ops.a_dag)?;
    let ada = ops.a_dag.matmul(&ops.a)?;
    let aad = ops.a.matmul(&ops.a_dag)?;
    let states = balls(cfg.samples.states, cfg.ranges.state_max, cfg.seed + 103);
    let rows = cases(cfg.parallel, &states, |q| {
        let q = *q;
        let g = build_cs(q, n, cfg.tail_eps)?.vector;
        let eig = ops.a.apply(&g)?.distance(&g.right_scale(q))?;
        let n2 = Quat::from_real(q.norm_sqr());
        let pairs = [
            (&ops.a, q),
            (&ops.a_dag, q.conj()),
            (&ada, n2),
            (&aad, n2 + Quat::from_real(1.0)),
            (&a2, q * q),
            (&ad2, q.conj() * q.conj()),
        ];
        let mut e = [0.0; 6];
        for (slot, (op, want)) in e.iter_mut().zip(pairs) {
            *slot = expectation(op, &g)?.value.dist(want);
        }
        Ok((eig, e))
    })?;
    const NAMES: [(&str, &str); 6] = [
        ("a", "<a> = q"),
        ("a_dag", "<a+> = conj(q)"),
        ("a_dag_a", "<a+ a> = |q|^2"),
        ("a_a_dag", "<a a+> = 1 + |q|^2"),
        ("a_sq", "<a^2> = q^2"),
        ("a_dag_sq", "<a+^2> = conj(q)^2"),
    ];
    for (k, (q, (eig, e))) in states.iter().zip(rows).enumerate() {
        let p = format!("N={n};q={}", quat(*q));
        rep.records.push(ReportRecord::below(
            S,
            id("eigenvector", k),
            p.clone(),
            eig,
            tol::EIGEN,
            "a gamma_q = gamma_q q",
        ));
        for ((name, identity), v) in NAMES.iter().zip(e) {
            rep.records.push(ReportRecord::below(
                S,
                id(&format!("expect_{name}"), k),
                p.clone(),
                v,
                tol::EXPECTATION,
                identity,
            ));
        }
    }

    let mut rng = sample::rng(cfg.seed + 107);
    let inputs: Vec<(Quat, Axis)> = (0..cfg.samples.c_series)
        .map(|_| (sample::non_real_ball(&mut rng, cfg.ranges.c_series_max), Axis::sample(&mut rng)))
        .collect();
    let rows = cases(cfg.parallel, &inputs, |(q, axis)| {
        let c = c_series(*q, *axis, 1e-16)?;
        let ia = q.slice_axis();
        let own = c_series(*q, ia, 1e-16)?.dist(ia.quaternion());
        Ok([(c.conj() + c).norm(), (Quat::from_real(c.norm_sqr()) + c * c).norm(), c.norm(), own])
    })?;
    let worst = rows.iter().fold([0.0f64; 4], |acc, r| std::array::from_fn(|t| acc[t].max(r[t])));
    let p = format!("samples={};|q|<={}", inputs.len(), float(cfg.ranges.c_series_max));
    rep.records.push(ReportRecord::below(
        S,
        "c_series/imaginary".into(),
        p.clone(),
        worst[0],
        tol::C_SERIES,
        "conj(c) = -c",
    ));
    rep.records.push(ReportRecord::below(
        S,
        "c_series/square".into(),
        p.clone(),
        worst[1],
        tol::C_SERIES,
        "|c|^2 = -c^2",
    ));
    rep.records.push(ReportRecord::below(
        S,
        "c_series/norm".into(),
        p.clone(),
        worst[2],
        1.0 + tol::C_SERIES,
        "|c| <= 1",
    ));
    rep.records.push(ReportRecord::below(
        S,
        "c_series/own_slice".into(),
        p,
        worst[3],
        tol::C_SERIES,
        "c for the slice axis I_q equals I_q",
    ));
    Ok(())
}

fn uncertainty_global_suite(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "uncertainty_global";
    let n = cfg.dim;
    let ops = Operators::<f64>::new(n)?;
    let mut rng = sample::rng(cfg.seed + 105);
    let inputs: Vec<(Quat, Axis)> = (0..cfg.samples.global_pairs)
        .map(|_| (sample::ball(&mut rng, cfg.ranges.global_max), Axis::sample(&mut rng)))
        .collect();
    let rows = cases(cfg.parallel, &inputs, |(q, axis)| uncertainty_global(&ops, *q, *axis))?;
    for (k, ((q, axis), r)) in inputs.iter().zip(&rows).enumerate() {
        let p = format!("N={n};q={};axis={}", quat(*q), axis_str(*axis));
        rep.records.push(ReportRecord::near(S, id("var_q", k), p.clone(), r.var_q, 0.5, tol::VAR_Q, "var Q = 1/2"));
        rep.records.push(ReportRecord::below(
            S,
            id("excess_bound", k),
            p,
            (r.product - 0.25).abs(),
            q.norm_sqr() + tol::ROUNDING,
            "|var Q var P_I - 1/4| <= |q|^2",
        ));
    }

    let dir: Quat = sample::with_norm(&mut rng, 1.0);
    let axis = Axis::sample(&mut rng);
    let seq: Vec<Quat> =
        (0..cfg.samples.decreasing_steps).map(|k| dir.scale(cfg.ranges.global_max * 0.5f64.powi(k as i32))).collect();
    let rows = cases(cfg.parallel, &seq, |q| uncertainty_global(&ops, *q, axis))?;
    let mut prev: Option<f64> = None;
    for (k, (q, r)) in seq.iter().zip(&rows).enumerate() {
        let e = r.excess.abs();
        let p = format!("N={n};q={};axis={}", quat(*q), axis_str(axis));
        rep.records.push(ReportRecord::below(
            S,
            id("decreasing", k),
            p.clone(),
            e,
            q.norm_sqr(),
            "|var Q var P_I - 1/4| < |q|^2 as q -> 0",
        ));
        if let Some(before) = prev {
            rep.records.push(ReportRecord::below(
                S,
                id("decreasing_step", k),
                p,
                e - before,
                0.0,
                "excess decreases as |q| decreases",
            ));
        }
        prev = Some(e);
    }
    Ok(())
}

fn uncertainty_slice_suite(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "uncertainty_slice";
    let n = cfg.dim;
    let ops = Operators::<f64>::new(n)?;
    let states = non_real_balls(cfg.samples.slice_states, cfg.ranges.state_max, cfg.seed + 106);
    let rows = cases(cfg.parallel, &states, |q| uncertainty_slice(&ops, *q))?;
    for (k, (q, r)) in states.iter().zip(&rows).enumerate() {
        let p = format!("N={n};q={}", quat(*q));
        let y = q.im_norm();
        rep.records.push(ReportRecord::near(
            S,
            id("saturation", k),
            p.clone(),
            r.dq_dp(),
            0.5,
            tol::SATURATION,
            "dQ dP_(I_q) = 1/2",
        ));
        rep.records.push(ReportRecord::near(
            S,
            id("commutator_mean", k),
            p.clone(),
            r.commutator_mean.norm() / 2.0,
            0.5,
            tol::SATURATION,
            "|<[Q, P_(I_q)]>|/2 = 1/2",
        ));
        rep.records.push(ReportRecord::near(
            S,
            id("momentum_mean", k),
            p,
            r.mean_p,
            2f64.sqrt() * y,
            tol::EXPECTATION,
            "<P_(I_q)> = sqrt(2) y for q = x + I_q y",
        ));
    }
    Ok(())
}

fn resolution(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "resolution";
    let gc = &cfg.quadrature;
    let cs = grid(gc, RadialMeasure::Cs)?;
    let gp = grid_params(gc);
    for m in 0..=10.min(2 * gc.n_r - 1) {
        rep.records.push(ReportRecord::below(
            S,
            id("moment", m),
            format!("{gp};m={m}"),
            cs.moment_error(m),
            tol::MOMENT_REL,
            "2 pi int r^(2m) e^(-r^2) r dr / pi = m! (relative error)",
        ));
    }
    let b = cfg.block;
    let rc = resolution_check(b, &cs, cfg.parallel)?;
    let bg = grid(gc, RadialMeasure::Bargmann)?;
    let rb = resolution_check(b, &bg, cfg.parallel)?;
    let p = format!("{gp};block={b}");
    rep.records.push(ReportRecord::below(
        S,
        "identity/cs_weights".into(),
        p.clone(),
        rc.max_deviation,
        tol::RESOLUTION,
        "int |gamma_q><gamma_q| d(sigma) = 1",
    ));
    rep.records.push(ReportRecord::below(
        S,
        "identity/gaussian_weights".into(),
        p,
        rb.max_deviation,
        tol::RESOLUTION,
        "int |gamma_q><gamma_q| d(sigma) = 1 with the Gaussian in the weights",
    ));
    Ok(())
}

fn quantize(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "quantize";
    let b = cfg.block;
    let g = grid(&cfg.quadrature, RadialMeasure::Cs)?;
    let ops = Operators::<f64>::new(b.max(2))?;
    let symbols = [
        ("one", SymbolFn::one(), QMat::identity(b), "A_1 = 1"),
        ("q", SymbolFn::q(), ops.a.top_left(b), "A_q = a"),
        ("q_bar", SymbolFn::q_bar(), ops.a_dag.top_left(b), "A_conj(q) = a+"),
        ("norm_sqr", SymbolFn::norm_sqr(), ops.number.add(&ops.identity())?.top_left(b), "A_|q|^2 = N + 1"),
    ];
    let p = format!("{};block={b}", grid_params(&cfg.quadrature));
    for (name, f, want, identity) in symbols {
        let e = quantize_symbol(&f, b, &g, cfg.parallel)?.max_abs_diff(&want)?;
        rep.records.push(ReportRecord::below(S, format!("symbol/{name}"), p.clone(), e, tol::QUANTIZE, identity));
    }
    Ok(())
}

fn axiom_records<E: LieElement<f64> + Sync>(
    cfg: &ExperimentConfig,
    rep: &mut Report,
    name: &str,
    seed: u64,
) -> CliResult<()> {
    const S: &str = "liealg";
    let r = axiom_suite::<f64, E>(cfg.samples.lie_tuples, seed);
    let p = format!("samples={}", r.samples);
    let axioms = [
        ("bilinearity_left", r.bilinearity_left, "[aX + bY, Z] = a[X, Z] + b[Y, Z]"),
        ("bilinearity_right", r.bilinearity_right, "[X, aY + bZ] = a[X, Y] + b[X, Z]"),
        ("alternativity", r.alternativity, "[X, X] = 0"),
        ("antisymmetry", r.antisymmetry, "[X, Y] = -[Y, X]"),
        ("jacobi", r.jacobi, "[X, [Y, Z]] + [Y, [Z, X]] + [Z, [X, Y]] = 0"),
    ];
    for (axiom, v, identity) in axioms {
        rep.records.push(ReportRecord::below(S, format!("{name}/{axiom}"), p.clone(), v, tol::LIE_AXIOM, identity));
    }

    let ops = Operators::<f64>::new(cfg.dim)?;
    let mut rng = sample::rng(seed + 1000);
    let pairs: Vec<(E, E)> =
        (0..cfg.samples.lie_tuples.min(100)).map(|_| (E::sample(&mut rng), E::sample(&mut rng))).collect();
    let rows = cases(cfg.parallel, &pairs, |(a, b)| {
        Ok((slice_commutator_residual(a, b, &ops), operator_commutator_residual(a, b, &ops)))
    })?;
    let (sc, oc) = rows.iter().fold((0.0f64, 0.0f64), |(s, o), (a, b)| (s.max(*a), o.max(*b)));
    let p = format!("N={};samples={}", cfg.dim, pairs.len());
    rep.records.push(ReportRecord::below(
        S,
        format!("{name}/slice_commutators"),
        p.clone(),
        sc,
        tol::SLICE_COMMUTATOR,
        "operator of [X, Y] = sum_tau [X_tau, Y_tau] on the interior",
    ));
    rep.records.push(ReportRecord::measure(
        S,
        format!("{name}/operator_commutator"),
        p,
        oc,
        "operator of [X, Y] vs the commutator of the operators of X and Y",
    ));
    Ok(())
}

fn liealg(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    axiom_records::<RealWeyl<f64>>(cfg, rep, "real", cfg.seed + 108)?;
    axiom_records::<HatWeyl<f64>>(cfg, rep, "hat", cfg.seed + 109)?;
    axiom_records::<QuatWeyl<f64>>(cfg, rep, "quaternion", cfg.seed + 110)?;
    let mut rng = sample::rng(cfg.seed + 111);
    let mut hom = 0.0f64;
    for _ in 0..cfg.samples.lie_tuples {
        let (x, y) = (RealWeyl::<f64>::sample(&mut rng), RealWeyl::sample(&mut rng));
        hom = hom.max(sigma_homomorphism_residual(&x, &y));
    }
    rep.records.push(ReportRecord::below(
        "liealg",
        "real/sigma_homomorphism".into(),
        format!("samples={}", cfg.samples.lie_tuples),
        hom,
        tol::EXACT,
        "sigma([X, Y]) = [sigma X, sigma Y]",
    ));
    Ok(())
}

fn displacement(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "displacement";
    let n = cfg.dim;
    let ops = Operators::<f64>::new(n)?;
    let r = &cfg.ranges;
    let cnt = cfg.samples.displacement_states;
    let qs = balls(cnt, r.displacement_max, cfg.seed + 112);
    let big = balls(cnt, r.unitarity_max, cfg.seed + 113);
    let xs = balls(cnt, r.shift_max, cfg.seed + 114);
    let idx: Vec<usize> = (0..cnt).collect();
    let rows = cases(cfg.parallel, &idx, |&k| {
        let q = qs[k];
        let d = build_d(q, &ops)?;
        let vac = d.matrix.column(0).distance(&build_cs(q, n, cfg.tail_eps)?.vector)?;
        let o = ordering_residuals(q, &ops)?;
        let par = parity_conjugation_residual(q, &ops)?;
        let uni = unitarity_residual(&build_d(big[k], &ops)?)?;
        let s = shift_residual(xs[k], &ops)?;
        Ok((vac, o, par, uni, s))
    })?;
    for (k, (vac, o, par, uni, s)) in rows.into_iter().enumerate() {
        let p = format!("N={n};q={}", quat(qs[k]));
        rep.records.push(ReportRecord::below(S, id("vacuum", k), p.clone(), vac, tol::D_VACUUM, "D(q) e_0 = gamma_q"));
        rep.records.push(ReportRecord::below(
            S,
            id("ordering_exp_normal", k),
            p.clone(),
            o.exp_vs_normal,
            tol::ORDERING,
            "exp form = normal-ordered form",
        ));
        rep.records.push(ReportRecord::below(
            S,
            id("ordering_exp_antinormal", k),
            p.clone(),
            o.exp_vs_antinormal,
            tol::ORDERING,
            "exp form = anti-normal-ordered form",
        ));
        rep.records.push(ReportRecord::below(
            S,
            id("ordering_normal_antinormal", k),
            p.clone(),
            o.normal_vs_antinormal,
            tol::ORDERING,
            "normal-ordered = anti-normal-ordered form",
        ));
        rep.records.push(ReportRecord::below(S, id("parity", k), p, par, tol::PARITY, "Pi D(x) Pi = D(-x)"));
        let p = format!("N={n};q={}", quat(big[k]));
        rep.records.push(ReportRecord::below(S, id("unitarity", k), p, uni, tol::UNITARY, "D(q)+ D(q) = 1"));
        let p = format!("N={n};x={}", quat(xs[k]));
        rep.records.push(ReportRecord::below(
            S,
            id("shift_lowering", k),
            p.clone(),
            s.lowering,
            tol::SHIFT,
            "D(x)+ a D(x) = a + x",
        ));
        rep.records.push(ReportRecord::below(
            S,
            id("shift_raising", k),
            p.clone(),
            s.raising,
            tol::SHIFT,
            "D(x)+ a+ D(x) = a+ + conj(x)",
        ));
        rep.records.push(ReportRecord::measure(
            S,
            id("shift_raising_direct", k),
            p,
            s.raising_direct,
            "D(x)+ a+ D(x) = a+ + conj(x), from its own products",
        ));
    }

    phases(cfg, &ops, rep)?;
    derivatives(cfg, rep)?;
    admissibility(cfg, rep)?;

    let rank = irreducibility_proxy::<f64>(n, cfg.samples.rank_samples, r.rank_max, cfg.seed + 116)?;
    rep.records.push(ReportRecord::near(
        S,
        "rank/coherent_family".into(),
        format!("N={n};samples={};|q|<={}", rank.samples, float(r.rank_max)),
        rank.rank as f64,
        rank.target as f64,
        tol::EXACT,
        "{D(q) e_0} spans the leading N/2 block",
    ));
    Ok(())
}

fn phases(cfg: &ExperimentConfig, ops: &Operators<f64>, rep: &mut Report) -> CliResult<()> {
    const S: &str = "displacement";
    let n = cfg.dim;
    let mut rng = sample::rng(cfg.seed + 117);
    let pairs: Vec<(Quat, Quat)> = (0..cfg.samples.phase_pairs)
        .map(|_| (sample::ball(&mut rng, cfg.ranges.pair_max), sample::ball(&mut rng, cfg.ranges.pair_max)))
        .collect();
    let rows = cases(cfg.parallel, &pairs, |(q, p)| {
        Ok((pair_residuals(*q, into_slice_of(*p, *q), ops)?, pair_residuals(*q, *p, ops)?))
    })?;
    for (k, ((q, p), (rs, rg))) in pairs.iter().zip(rows).enumerate() {
        let ps = into_slice_of(*p, *q);
        for (flag, pp, r) in [("in_slice", ps, rs), ("cross_slice", *p, rg)] {
            let params = format!("N={n};q={};p={}", quat(*q), quat(pp));
            let kinds = [
                ("composition", r.composition, "D(q) D(p) = exp(-I(q^p)) D(q + p)"),
                ("projective", r.projective, "D(q) D(p) = exp(-2 I(q^p)) D(p) D(q)"),
                ("covariance", r.covariance, "D(q) D(p) D(q)+ = exp(-2 I(q^p)) D(p)"),
                ("composition_right", r.composition_right, "D(q) D(p) = D(q + p) exp(-I(q^p)), phase on the right"),
                ("composition_bracket_phase", r.composition_bracket_phase, "D(q) D(p) = exp([G(q), G(p)]/2) D(q + p)"),
                ("projective_flipped_sign", r.projective_flipped_sign, "D(q) D(p) = exp(+2 I(q^p)) D(p) D(q)"),
            ];
            for (j, (kind, v, identity)) in kinds.into_iter().enumerate() {
                let case = id(&format!("{flag}_{kind}"), k);
                let gated = flag == "in_slice" && j < 3;
                rep.records.push(if gated {
                    ReportRecord::below(S, case, params.clone(), v, tol::PHASE_IN_SLICE, identity)
                } else {
                    ReportRecord::measure(S, case, params.clone(), v, identity)
                });
                rep.sweep.push(SweepRow {
                    q_norm: q.norm(),
                    p_norm: pp.norm(),
                    slice_flag: flag,
                    residual_kind: kind,
                    value: v,
                });
            }
        }
    }
    Ok(())
}

fn derivatives(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "displacement";
    let n = cfg.dim;
    let h = cfg.fd_step;
    let points = non_real_balls(cfg.samples.derivative_points, cfg.ranges.derivative_max, cfg.seed + 118);
    let rows = cases(cfg.parallel, &points, |q| {
        let s = q.slice();
        let (a1, b1) = slice_derivative_residual(s, h, n)?;
        let (a2, b2) = slice_derivative_residual(s, h / 2.0, n)?;
        Ok((a1 / a2, b1 / b2))
    })?;
    for (k, (q, (ra, rb))) in points.iter().zip(rows).enumerate() {
        let p = format!("N={n};q={};h={}", quat(*q), float(h));
        rep.records.push(ReportRecord::near(
            S,
            id("derivative_raising", k),
            p.clone(),
            ra,
            4.0,
            tol::FD_RATIO,
            "(d_x - I d_y) D/2 = (a+ - conj(q)/2) D, error ratio on halving h",
        ));
        rep.records.push(ReportRecord::near(
            S,
            id("derivative_lowering", k),
            p,
            rb,
            4.0,
            tol::FD_RATIO,
            "(d_x + I d_y) D/2 = -(a - q/2) D, error ratio on halving h",
        ));
    }
    Ok(())
}

fn admissibility(cfg: &ExperimentConfig, rep: &mut Report) -> CliResult<()> {
    const S: &str = "displacement";
    let b = cfg.block;
    let sq = square_integrability_check(b, &grid(&cfg.quadrature, RadialMeasure::Cs)?, cfg.parallel)?;
    rep.records.push(ReportRecord::below(
        S,
        "square_integrability".into(),
        format!("{};block={b}", grid_params(&cfg.quadrature)),
        sq,
        tol::SQUARE_INTEGRABLE,
        "int |D(q) e_0><D(q) e_0| d(sigma) = 1",
    ));
    let ga = &cfg.admissibility_quadrature;
    let g = grid(ga, RadialMeasure::Cs)?;
    let e0 = QVec::basis(b, 0)?;
    let i0 = admissibility_integral(&e0, &g, cfg.parallel)?;
    let gp = format!("{};block={b}", grid_params(ga));
    rep.records.push(ReportRecord::measure(
        S,
        "admissibility/vacuum".into(),
        gp.clone(),
        i0,
        "I(e_0) = int |<D(q) e_0|e_0>|^2 d(sigma)",
    ));
    let ps = balls(cfg.samples.admissibility_vectors, cfg.ranges.admissibility_max, cfg.seed + 115);
    let rows = cases(false, &ps, |p| admissibility_integral(&apply_d_normal(*p, &e0), &g, cfg.parallel))?;
    for (k, (p, i)) in ps.iter().zip(rows).enumerate() {
        rep.records.push(ReportRecord::below(
            S,
            id("admissibility", k),
            format!("{gp};p={}", quat(*p)),
            ((i - i0) / i0).abs(),
            tol::ADMISSIBLE_REL,
            "I(D(p) e_0) = I(e_0) (relative)",
        ));
    }
    Ok(())
}
