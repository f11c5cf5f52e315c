//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};

use qwh_core::coherent::{build_cs, c_series, expectation, uncertainty_global, uncertainty_slice};
use qwh_core::displacement::{
    admissibility_integral, apply_d_normal, build_d, into_slice_of, ordering_residuals, pair_residuals,
    parity_conjugation_residual, shift_residual, slice_derivative_residual, square_integrability_check,
    unitarity_residual,
};
use qwh_core::fock::{interior, Operators};
use qwh_core::liealg::{axiom_suite, sigma_homomorphism_residual, HatWeyl, LieElement, QuatWeyl, RealWeyl};
use qwh_core::quadrature::{grid_build, MeasureSpec, QuadratureGrid, RadialMeasure};
use qwh_core::quantize::{quantize_symbol, resolution_check, SymbolFn};
use qwh_core::sample;
use qwh_core::{Axis, QMat, QVec, Quat};

mod tol {
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
    pub const D_VACUUM: f64 = 1e-8;
    pub const UNITARY: f64 = 1e-9;
    pub const ORDERING: f64 = 1e-8;
    pub const PARITY: f64 = 1e-9;
    pub const SHIFT: f64 = 1e-7;
    pub const PHASE_IN_SLICE: f64 = 1e-7;
    pub const FD_RATIO: (f64, f64) = (3.5, 4.5);
    pub const SQUARE_INTEGRABLE: f64 = 1e-8;
    pub const ADMISSIBLE_REL: f64 = 1e-6;
    /// Allowance for rounding when comparing against an inequality bound.
    pub const ROUNDING: f64 = 1e-12;
}

const N: usize = 64;
const BLOCK: usize = 12;
const SEED: u64 = 20240917;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn axes(count: usize, seed: u64) -> Vec<Axis> {
    let mut rng = sample::rng(seed);
    let mut v = vec![Axis::i(), Axis::j(), Axis::k(), Axis::diagonal()];
    v.extend((0..count).map(|_| Axis::sample(&mut rng)));
    v
}

fn quantization_grid() -> QuadratureGrid<f64> {
    grid_build(MeasureSpec::new(RadialMeasure::Cs, 64, 32, 2, 3)).expect("quadrature grid")
}

fn ladder_commutator() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let c = ops.ladder_commutator();
    let err = c.block_max_abs_diff(&QMat::identity(N), interior(N)).unwrap();
    let corner = c.get(N - 1, N - 1);
    let pass = err == 0.0 && corner == Quat::from_real(-((N - 1) as f64));
    outcome(pass, format!("N={N} interior max |[a,a+] - 1| = {err:e}, boundary entry = {}", corner.w))
}

fn self_adjointness() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let q_ok = ops.position.adjoint() == ops.position;
    let mut bad = 0;
    let list = axes(100, SEED);
    for axis in &list {
        let p = ops.momentum(*axis);
        if p.adjoint() != p {
            bad += 1;
        }
    }
    outcome(q_ok && bad == 0, format!("Q exact: {q_ok}; P_I not exactly self-adjoint for {bad} of {} axes", list.len()))
}

fn canonical_commutator() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut worst = 0.0f64;
    for axis in axes(100, SEED + 1) {
        let c = ops.position.commutator(&ops.momentum(axis)).unwrap();
        worst = worst.max(c.block_max_abs_diff(&ops.scalar(axis.quaternion()), interior(N)).unwrap());
    }
    outcome(worst < tol::COMMUTATOR, format!("max interior |[Q,P_I] - I| = {worst:e}"))
}

fn hamiltonian_spectrum() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let want = QMat::diagonal(&(0..N).map(|k| k as f64 + 0.5).collect::<Vec<_>>());
    let mut worst = 0.0f64;
    for axis in axes(100, SEED + 2) {
        worst = worst.max(ops.hamiltonian(axis).block_max_abs_diff(&want, interior(N)).unwrap());
    }
    outcome(worst < tol::HAMILTONIAN, format!("max interior |H_I - (N + 1/2)| = {worst:e}"))
}

fn coherent_eigenvector() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut rng = sample::rng(SEED + 3);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let q: Quat = sample::ball(&mut rng, 1.0);
        let g = build_cs(q, N, 1e-14).unwrap().vector;
        worst = worst.max(ops.a.apply(&g).unwrap().distance(&g.right_scale(q)).unwrap());
    }
    outcome(worst < tol::EIGEN, format!("max |a g - g q| = {worst:e} over 200 states"))
}

fn coherent_expectations() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let a2 = ops.a.matmul(&ops.a).unwrap();
    let ad2 = ops.a_dag.matmul(&ops.a_dag).unwrap();
    let ada = ops.a_dag.matmul(&ops.a).unwrap();
    let aad = ops.a.matmul(&ops.a_dag).unwrap();
    let mut rng = sample::rng(SEED + 4);
    let mut worst = [0.0f64; 6];
    for _ in 0..200 {
        let q: Quat = sample::ball(&mut rng, 1.0);
        let g = build_cs(q, N, 1e-14).unwrap().vector;
        let n2 = Quat::from_real(q.norm_sqr());
        let cases = [
            (&ops.a, q),
            (&ops.a_dag, q.conj()),
            (&ada, n2),
            (&aad, n2 + Quat::from_real(1.0)),
            (&a2, q * q),
            (&ad2, q.conj() * q.conj()),
        ];
        for (w, (op, want)) in worst.iter_mut().zip(cases) {
            *w = w.max(expectation(op, &g).unwrap().value.dist(want));
        }
    }
    let pass = worst.iter().all(|w| *w < tol::EXPECTATION);
    outcome(pass, format!("max errors a, a+, a+a, aa+, a^2, a+^2 = {:?}", worst.map(|w| format!("{w:.2e}"))))
}

fn global_uncertainty() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut rng = sample::rng(SEED + 5);
    let (mut var_err, mut worst_margin, mut worst_lower) = (0.0f64, f64::NEG_INFINITY, f64::INFINITY);
    for _ in 0..1000 {
        let q: Quat = sample::ball(&mut rng, 0.4);
        let axis = Axis::sample(&mut rng);
        let r = uncertainty_global(&ops, q, axis).unwrap();
        var_err = var_err.max((r.var_q - 0.5).abs());
        worst_margin = worst_margin.max(r.excess - q.norm_sqr());
        worst_lower = worst_lower.min(r.excess);
    }
    let dir: Quat = sample::with_norm(&mut rng, 1.0);
    let axis = Axis::sample(&mut rng);
    let mut seq = Vec::new();
    for n in 0..9 {
        let q = dir.scale(0.4 * 0.5f64.powi(n));
        let r = uncertainty_global(&ops, q, axis).unwrap();
        seq.push((q.norm_sqr(), r.excess.abs()));
    }
    let monotone = seq.windows(2).all(|w| w[1].1 <= w[0].1);
    let below = seq.iter().all(|(n2, e)| *e < *n2);
    let pass =
        var_err < tol::VAR_Q && worst_margin <= tol::ROUNDING && worst_lower >= -tol::ROUNDING && monotone && below;
    outcome(
        pass,
        format!(
            "max |var Q - 1/2| = {var_err:e}; max (excess - |q|^2) = {worst_margin:e}; min excess = {worst_lower:e}; \
             decreasing |q|: monotone={monotone}, below |q|^2={below}, last excess = {:e}",
            seq.last().unwrap().1
        ),
    )
}

fn slice_saturation() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut rng = sample::rng(SEED + 6);
    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let q: Quat = sample::non_real_ball(&mut rng, 1.0);
        let r = uncertainty_slice(&ops, q).unwrap();
        e1 = e1.max((r.dq_dp() - 0.5).abs());
        e2 = e2.max((r.commutator_mean.norm() / 2.0 - 0.5).abs());
    }
    outcome(
        e1 < tol::SATURATION && e2 < tol::SATURATION,
        format!("max |dQ dP - 1/2| = {e1:e}, max ||<[Q,P]>|/2 - 1/2| = {e2:e}"),
    )
}

fn c_series_properties() -> Outcome {
    let mut rng = sample::rng(SEED + 7);
    let (mut pure, mut sq, mut norm, mut slice) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let q: Quat = sample::non_real_ball(&mut rng, 1.5);
        let axis = Axis::sample(&mut rng);
        let c = c_series(q, axis, 1e-16).unwrap();
        pure = pure.max((c.conj() + c).norm());
        sq = sq.max((Quat::from_real(c.norm_sqr()) + c * c).norm());
        norm = norm.max(c.norm());
        let ia = q.slice_axis();
        slice = slice.max(c_series(q, ia, 1e-16).unwrap().dist(ia.quaternion()));
    }
    let pass = pure < tol::C_SERIES && sq < tol::C_SERIES && norm <= 1.0 + tol::C_SERIES && slice < tol::C_SERIES;
    outcome(
        pass,
        format!("|conj c + c| = {pure:e}, ||c|^2 + c^2| = {sq:e}, max |c| = {norm}, |c_(I_q) - I_q| = {slice:e}"),
    )
}

fn moments_and_resolution() -> Outcome {
    let g = quantization_grid();
    let moment = (0..=10).map(|m| g.moment_error(m)).fold(0.0, f64::max);
    let r = resolution_check(BLOCK, &g, true).unwrap();
    let bg = grid_build::<f64>(MeasureSpec::new(RadialMeasure::Bargmann, 64, 32, 2, 3)).unwrap();
    let rb = resolution_check(BLOCK, &bg, true).unwrap();
    let pass = moment < tol::MOMENT_REL && r.max_deviation < tol::RESOLUTION && rb.max_deviation < tol::RESOLUTION;
    outcome(
        pass,
        format!(
            "max moment rel err (m<=10) = {moment:e}; |A_1 - 1| on {BLOCK}x{BLOCK}: {:e} (Gaussian weight route {:e})",
            r.max_deviation, rb.max_deviation
        ),
    )
}

fn quantization() -> Outcome {
    let g = quantization_grid();
    let ops = Operators::<f64>::new(BLOCK).unwrap();
    let cases = [
        (SymbolFn::one(), QMat::identity(BLOCK)),
        (SymbolFn::q(), ops.a.clone()),
        (SymbolFn::q_bar(), ops.a_dag.clone()),
        (SymbolFn::norm_sqr(), ops.number.add(&ops.identity()).unwrap()),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (f, want) in cases {
        let e = quantize_symbol(&f, BLOCK, &g, true).unwrap().max_abs_diff(&want).unwrap();
        pass &= e < tol::QUANTIZE;
        parts.push(format!("A_{} {e:.2e}", f.name));
    }
    outcome(pass, parts.join(", "))
}

fn lie_axioms() -> Outcome {
    let n = 10_000;
    let a = axiom_suite::<f64, RealWeyl<f64>>(n, SEED + 8).worst();
    let h = axiom_suite::<f64, HatWeyl<f64>>(n, SEED + 9).worst();
    let w = axiom_suite::<f64, QuatWeyl<f64>>(n, SEED + 10).worst();
    let mut rng = sample::rng(SEED + 11);
    let mut hom = 0.0f64;
    for _ in 0..n {
        let (x, y) = (RealWeyl::<f64>::sample(&mut rng), RealWeyl::sample(&mut rng));
        hom = hom.max(sigma_homomorphism_residual(&x, &y));
    }
    let pass = a < tol::LIE_AXIOM && h < tol::LIE_AXIOM && w < tol::LIE_AXIOM && hom == 0.0;
    outcome(
        pass,
        format!("worst axiom residual: real {a:e}, hat {h:e}, quaternion {w:e}; slice embedding homomorphism {hom:e}"),
    )
}

fn displacement_basics() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut rng = sample::rng(SEED + 12);
    let (mut vac, mut uni, mut ord, mut par, mut shift) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let q: Quat = sample::ball(&mut rng, 1.0);
        let d = build_d(q, &ops).unwrap();
        vac = vac.max(d.matrix.column(0).distance(&build_cs(q, N, 1e-14).unwrap().vector).unwrap());
        let o = ordering_residuals(q, &ops).unwrap();
        ord = ord.max(o.exp_vs_normal).max(o.exp_vs_antinormal).max(o.normal_vs_antinormal);
        par = par.max(parity_conjugation_residual(q, &ops).unwrap());
        let big: Quat = sample::ball(&mut rng, 2.0);
        uni = uni.max(unitarity_residual(&build_d(big, &ops).unwrap()).unwrap());
        let x: Quat = sample::ball(&mut rng, 0.5);
        let s = shift_residual(x, &ops).unwrap();
        shift = shift.max(s.lowering).max(s.raising);
    }
    let pass =
        vac < tol::D_VACUUM && uni < tol::UNITARY && ord < tol::ORDERING && par < tol::PARITY && shift < tol::SHIFT;
    outcome(pass, format!("D e_0 vs cs {vac:e}; unitarity {uni:e}; orderings {ord:e}; parity {par:e}; shift {shift:e}"))
}

fn displacement_phases() -> Outcome {
    let ops = Operators::<f64>::new(N).unwrap();
    let mut rng = sample::rng(SEED + 13);
    let (mut s, mut g) = ([0.0f64; 3], [0.0f64; 3]);
    for _ in 0..10 {
        let q: Quat = sample::ball(&mut rng, 0.5);
        let p: Quat = sample::ball(&mut rng, 0.5);
        let rs = pair_residuals(q, into_slice_of(p, q), &ops).unwrap();
        let rg = pair_residuals(q, p, &ops).unwrap();
        for (k, (a, b)) in
            [(rs.composition, rg.composition), (rs.projective, rg.projective), (rs.covariance, rg.covariance)]
                .into_iter()
                .enumerate()
        {
            s[k] = s[k].max(a);
            g[k] = g[k].max(b);
        }
    }
    let pass = s.iter().all(|v| *v < tol::PHASE_IN_SLICE);
    outcome(
        pass,
        format!(
            "in-slice composition/projective/covariance = {:.2e}/{:.2e}/{:.2e}; across slices (measured) = {:.2e}/{:.2e}/{:.2e}",
            s[0], s[1], s[2], g[0], g[1], g[2]
        ),
    )
}

fn slice_derivatives() -> Outcome {
    let mut rng = sample::rng(SEED + 14);
    let h = 1e-3;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..50 {
        let q: Quat = sample::non_real_ball(&mut rng, 1.0);
        let s = q.slice();
        let (a1, b1) = slice_derivative_residual(s, h, N).unwrap();
        let (a2, b2) = slice_derivative_residual(s, h / 2.0, N).unwrap();
        for r in [a1 / a2, b1 / b2] {
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    let pass = lo >= tol::FD_RATIO.0 && hi <= tol::FD_RATIO.1;
    outcome(pass, format!("finite-difference halving ratios in [{lo:.4}, {hi:.4}]"))
}

fn admissibility() -> Outcome {
    let sq = square_integrability_check(BLOCK, &quantization_grid(), true).unwrap();
    let g = grid_build::<f64>(MeasureSpec::new(RadialMeasure::Cs, 16, 24, 12, 24)).unwrap();
    let e0 = QVec::basis(BLOCK, 0).unwrap();
    let i0 = admissibility_integral(&e0, &g, true).unwrap();
    let mut rng = sample::rng(SEED + 15);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p: Quat = sample::ball(&mut rng, 0.5);
        let eta = apply_d_normal(p, &e0);
        let i = admissibility_integral(&eta, &g, true).unwrap();
        worst = worst.max(((i - i0) / i0).abs());
    }
    let pass = sq < tol::SQUARE_INTEGRABLE && worst < tol::ADMISSIBLE_REL;
    outcome(pass, format!("square integrability {sq:e}; I(e_0) = {i0}; max |I(D(p) e_0)/I(e_0) - 1| = {worst:e}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 16] = [
        ("ladder commutator exact on the interior", ladder_commutator),
        ("Q and P_I exactly self-adjoint", self_adjointness),
        ("[Q, P_I] = I on the interior", canonical_commutator),
        ("H_I = N + 1/2 on the interior", hamiltonian_spectrum),
        ("coherent states are right eigenvectors of a", coherent_eigenvector),
        ("coherent-state expectation values", coherent_expectations),
        ("uncertainty for arbitrary axes", global_uncertainty),
        ("uncertainty saturated in the slice", slice_saturation),
        ("properties of the c series", c_series_properties),
        ("radial moments and resolution of the identity", moments_and_resolution),
        ("quantization of 1, q, conj q, |q|^2", quantization),
        ("Lie axioms and slice embedding", lie_axioms),
        ("displacement: vacuum, unitarity, orderings, parity, shift", displacement_basics),
        ("displacement phase relations", displacement_phases),
        ("slice derivative identities", slice_derivatives),
        ("square integrability and admissibility", admissibility),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| outcome(false, format!("panicked: {:?}", e.downcast_ref::<String>())));
        if !o.pass {
            failed += 1;
        }
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
