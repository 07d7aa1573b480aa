//! Acceptance suite: one test per reference quantitative claim, each
//! printing a PASS/FAIL line with the measured numbers.
//!
//! Run `cargo test --test acceptance -- --nocapture` to see every line;
//! by default the harness only shows output for failing criteria.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use uhlmann_core::analysis::*;
use uhlmann_core::spinmodel::*;
use uhlmann_core::subsystems::*;
use uhlmann_core::thermal::*;
use uhlmann_core::uhlmann::*;
use uhlmann_core::Complex64 as C64;
use uhlmann_core::MatrixC;

fn report(name: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {name}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{name}: {detail}");
}

fn params(g: f64, theta: f64) -> ModelParams {
    ModelParams::new(g, theta).unwrap()
}

#[test]
fn criterion_01_critical_temperature() {
    let start = Instant::now();
    let fixed = SweepFixed {
        g: 1e-3,
        theta: FRAC_PI_2,
        temperature: 0.0,
    };
    let set = transitions_1d(
        PhaseTarget::Composite,
        SweepAxis::Temperature,
        fixed,
        (0.05, 1.2),
        1000,
    )
    .unwrap();
    let t_c = CriticalConstants::new().t_c;
    let elapsed = start.elapsed().as_secs_f64();
    let pass = set.roots.len() == 1 && (set.roots[0].value - t_c).abs() <= 1e-3 && elapsed < 1.0;
    report(
        "criterion 1 (critical temperature)",
        pass,
        &format!(
            "root at T = {:.6} vs 1/ln(2+sqrt3) = {:.6}, |diff| = {:.2e} (tol 1e-3), {} root(s), {:.2} s (< 1 s)",
            set.roots.first().map(|r| r.value).unwrap_or(f64::NAN),
            t_c,
            set.roots.first().map(|r| (r.value - t_c).abs()).unwrap_or(f64::NAN),
            set.roots.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_02_critical_coupling() {
    let start = Instant::now();
    let g_c = CriticalConstants::new().g_c;
    let low_t = transitions_1d(
        PhaseTarget::Reduced(Subsystem::A),
        SweepAxis::Coupling,
        SweepFixed {
            g: 0.0,
            theta: FRAC_PI_2,
            temperature: 0.01,
        },
        (0.05, 2.2),
        1000,
    )
    .unwrap();
    let beyond = transitions_1d(
        PhaseTarget::Reduced(Subsystem::A),
        SweepAxis::Temperature,
        SweepFixed {
            g: 1.3,
            theta: FRAC_PI_2,
            temperature: 0.0,
        },
        (0.01, 1.5),
        1000,
    )
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let boundary = low_t.roots.first().map(|r| r.value).unwrap_or(f64::NAN);
    let pass =
        low_t.roots.len() == 1 && (boundary - g_c).abs() <= 0.02 && !beyond.found && elapsed < 5.0;
    report(
        "criterion 2 (critical coupling)",
        pass,
        &format!(
            "A boundary at T=0.01: g = {:.6} vs g_c = {:.6} (tol 0.02); transitions at g=1.3: {}; {:.2} s (< 5 s)",
            boundary,
            g_c,
            beyond.roots.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_03_undriven_double_transition_and_fold() {
    let start = Instant::now();
    let set = transitions_1d(
        PhaseTarget::Reduced(Subsystem::B),
        SweepAxis::Coupling,
        SweepFixed {
            g: 0.0,
            theta: FRAC_PI_2,
            temperature: 0.2,
        },
        (0.1, 2.0),
        1000,
    )
    .unwrap();
    let curve = critical_curve(Subsystem::B, &CurveOptions::default()).unwrap();
    let (g_star, t_star) = curve.fold.unwrap_or((f64::NAN, f64::NAN));
    let elapsed = start.elapsed().as_secs_f64();

    let roots_ok = set.roots.len() == 2
        && (set.roots[0].value - 0.596).abs() <= 0.01
        && (set.roots[1].value - 1.12).abs() <= 0.01;
    // the computed dome top is (0.9245, 0.2461), cross-validated against an
    // independent dense-exponential route; the reference reading (0.94, 0.25)
    // is coarser and its g-coordinate sits outside +-0.01
    let fold_ok = (g_star - 0.94).abs() <= 0.01 && (t_star - 0.25).abs() <= 0.01;
    let pass = roots_ok && fold_ok && elapsed < 10.0;
    report(
        "criterion 3 (undriven double transition)",
        pass,
        &format!(
            "roots at T=0.2: g = {:.5}, {:.5} (want 0.596, 1.12 each +-0.01, {}); fold = ({:.4}, {:.4}) vs (0.94, 0.25) each +-0.01 ({}); {:.2} s (< 10 s)",
            set.roots.first().map(|r| r.value).unwrap_or(f64::NAN),
            set.roots.get(1).map(|r| r.value).unwrap_or(f64::NAN),
            if roots_ok { "ok" } else { "mismatch" },
            g_star,
            t_star,
            if fold_ok { "ok" } else { "mismatch" },
            elapsed
        ),
    );
}

#[test]
fn criterion_04_critical_radius_on_boundaries() {
    let r_c = CriticalConstants::new().r_c;
    let mut worst = 0.0_f64;
    let mut count = 0;
    for which in [Subsystem::A, Subsystem::B] {
        let curve = critical_curve(which, &CurveOptions::default()).unwrap();
        let stride = (curve.points.len() / 25).max(1);
        for (g, t) in curve.points.iter().step_by(stride).take(25) {
            let ens = gibbs_state(&params(*g, FRAC_PI_2), *t).unwrap();
            let q = reduce(&ens, which);
            let radius = bloch(&q, 0.0).equatorial_radius;
            worst = worst.max((radius - r_c).abs());
            count += 1;
        }
    }
    let pass = count >= 50 && worst < 1e-6;
    report(
        "criterion 4 (critical radius)",
        pass,
        &format!("{count} boundary points, max |R - sqrt(3)/2| = {worst:.2e} (tol 1e-6)"),
    );
}

#[test]
fn criterion_05_method_cross_validation() {
    let start = Instant::now();
    let t_vals = [0.18, 0.35, 0.52, 0.95];
    let mut max_dv = 0.0_f64;
    let mut max_dphi = 0.0_f64;
    let mut skipped = 0;
    for i in 0..12 {
        let g = 0.15 + (2.0 - 0.15) * i as f64 / 11.0;
        for j in 0..12 {
            let theta = 0.12 + (PI - 0.24) * j as f64 / 11.0;
            for &t in &t_vals {
                let p = params(g, theta);
                let ens = gibbs_state(&p, t).unwrap();
                let field = connection_composite_from(&ens);
                let a0 = field.matrix();
                let closed = holonomy_cycle_closed(&a0, &ROTATION_GENERATOR_DIAG);
                let ode = holonomy_ode(
                    |phi| frame_rotated(&a0, &ROTATION_GENERATOR_DIAG, phi),
                    4,
                    0.0,
                    4096,
                )
                .unwrap();
                max_dv = max_dv.max((&closed.v - &ode.v).norm());
                let pc = uhlmann_phase_composite(&p, t).unwrap();
                let po = uhlmann_phase_composite_ode(&p, t, 4096).unwrap();
                if pc.trace_near_zero {
                    skipped += 1;
                    continue;
                }
                max_dphi = max_dphi.max(circular_distance(pc.phase, po.phase));
            }
        }
    }

    // fourth-order convergence at the reference point
    let ens = gibbs_state(&params(0.6, FRAC_PI_2), 0.5).unwrap();
    let a0 = connection_composite_from(&ens).matrix();
    let exact = holonomy_cycle_closed(&a0, &ROTATION_GENERATOR_DIAG).v;
    let run = |steps| {
        holonomy_ode(
            |phi| frame_rotated(&a0, &ROTATION_GENERATOR_DIAG, phi),
            4,
            0.0,
            steps,
        )
        .unwrap()
        .v
    };
    let ratio = (run(512) - &exact).norm() / (run(1024) - &exact).norm();
    let elapsed = start.elapsed().as_secs_f64();

    let pass = max_dv < 1e-8 && max_dphi < 1e-7 && (14.0..=18.0).contains(&ratio) && elapsed < 60.0;
    report(
        "criterion 5 (closed form vs path-ordered)",
        pass,
        &format!(
            "576-point grid: max ||dV|| = {max_dv:.2e} (tol 1e-8), max |dPhi| = {max_dphi:.2e} (tol 1e-7), {skipped} near-zero skipped; halving ratio = {ratio:.2} (want [14, 18]); {elapsed:.1} s (< 60 s)"
        ),
    );
}

/// Central second difference of `ln Z` in beta with step `1e-4 beta`,
/// evaluated through population-weighted `expm1`/`ln_1p` terms so the
/// ground-energy prefactors cancel exactly.
fn heat_capacity_fd_oracle(g: f64, t: f64) -> f64 {
    let beta = 1.0 / t;
    let h = 1e-4 * beta;
    let e = equator_energies(g);
    let z: f64 = e.iter().map(|&x| (-(x - e[1]) * beta).exp()).sum();
    let p: Vec<f64> = e.iter().map(|&x| (-(x - e[1]) * beta).exp() / z).collect();
    let side = |sign: f64| -> f64 {
        let x: f64 = (0..4)
            .map(|j| p[j] * (sign * h * (e[1] - e[j])).exp_m1())
            .sum();
        x.ln_1p()
    };
    (side(1.0) + side(-1.0)) / (h * h) * beta * beta
}

#[test]
fn criterion_06_heat_capacity_identities() {
    let mut max_decomp = 0.0_f64;
    let mut max_fd_rel = 0.0_f64;
    for i in 0..20 {
        let g = 0.05 + (2.0 - 0.05) * i as f64 / 19.0;
        for j in 0..20 {
            let t = 0.05 + (2.0 - 0.05) * j as f64 / 19.0;
            let c = heat_capacity(g, t).unwrap();
            let sum: f64 = c.pairwise.iter().sum();
            max_decomp = max_decomp.max((sum - c.total).abs());
            let fd = heat_capacity_fd_oracle(g, t);
            max_fd_rel = max_fd_rel.max((fd - c.total).abs() / c.total);
        }
    }
    let pass = max_decomp < 1e-10 && max_fd_rel < 1e-5;
    report(
        "criterion 6 (heat-capacity identities)",
        pass,
        &format!(
            "20x20 grid: max |sum C_ij - C_T| = {max_decomp:.2e} (tol 1e-10), max FD relative error = {max_fd_rel:.2e} (tol 1e-5)"
        ),
    );
}

#[test]
fn criterion_07_schottky_correspondence() {
    let res = schottky_correspondence(0.1).unwrap();
    let rel = (res.t_transition - res.t_peak).abs() / res.t_peak;
    let pass = rel < 0.1;
    report(
        "criterion 7 (Schottky correspondence)",
        pass,
        &format!(
            "g = 0.1: first transition T = {:.5}, argmax C_T^24 at T = {:.5}, relative gap = {rel:.3} (tol 0.1)",
            res.t_transition, res.t_peak
        ),
    );
}

#[test]
fn criterion_08_low_temperature_berry_limit() {
    let n = 50;
    let t = 0.01;
    let mut phase = vec![vec![0.0; n]; n];
    let mut berry = vec![vec![0.0; n]; n];
    let mut keep = vec![vec![true; n]; n];
    for i in 0..n {
        let g = (i as f64 + 0.5) * 2.0 / n as f64;
        for j in 0..n {
            let theta = (j as f64 + 0.5) * PI / n as f64;
            let p = params(g, theta);
            let r = uhlmann_phase_composite(&p, t).unwrap();
            let ens = gibbs_state(&p, t).unwrap();
            phase[i][j] = r.phase;
            berry[i][j] = berry_phase_of(&spectrum_robust(&p), GROUND_STATE);
            // the comparison presumes the mixture has collapsed onto the
            // ground state; where it has not (gap comparable to T), the two
            // quantities differ by construction
            if r.trace_near_zero || ens.populations[GROUND_STATE] < 0.999 {
                keep[i][j] = false;
            }
        }
    }
    for f in [&phase, &berry] {
        let mut mask = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + 1 < n && circular_distance(f[i][j], f[i + 1][j]) > PI / 2.0 {
                    mask.push((i, j));
                    mask.push((i + 1, j));
                }
                if j + 1 < n && circular_distance(f[i][j], f[i][j + 1]) > PI / 2.0 {
                    mask.push((i, j));
                    mask.push((i, j + 1));
                }
            }
        }
        for (i, j) in mask {
            keep[i][j] = false;
        }
    }
    let mut max_d = 0.0_f64;
    let mut kept = 0;
    for i in 0..n {
        for j in 0..n {
            if keep[i][j] {
                kept += 1;
                max_d = max_d.max(circular_distance(phase[i][j], berry[i][j]));
            }
        }
    }
    let pass = max_d < 0.05 && kept > 2000;
    report(
        "criterion 8 (low-temperature Berry limit)",
        pass,
        &format!(
            "50x50 map at T = 0.01: max circular distance = {max_d:.4} rad (tol 0.05) over {kept} ground-dominated cells away from transitions"
        ),
    );
}

#[test]
fn criterion_09_composed_phase_identity() {
    let mut worst = 0.0_f64;
    for i in 0..10 {
        let g = 0.1 + (2.0 - 0.1) * i as f64 / 9.0;
        for j in 0..10 {
            let theta = (j as f64 + 0.5) * PI / 10.0;
            for k in 0..5 {
                let t = 0.1 + (2.0 - 0.1) * k as f64 / 4.0;
                let res = composed_phase_identity_check(&params(g, theta), t).unwrap();
                worst = worst.max(wrap_angle(res).abs());
            }
        }
    }
    let pass = worst < 1e-10;
    report(
        "criterion 9 (composed-phase identity)",
        pass,
        &format!("10x10x5 grid: max residual (mod 2pi) = {worst:.2e} (tol 1e-10)"),
    );
}

#[test]
fn criterion_10_structural_invariants() {
    // gauge invariance under random eigenvector rephasing
    use rand::{Rng, SeedableRng};
    let p = params(0.7, 1.1);
    let ens = gibbs_state(&p, 0.4).unwrap();
    let reference = uhlmann_phase_composite(&p, 0.4).unwrap().phase;
    let g_mat = MatrixC::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        ROTATION_GENERATOR_DIAG.iter().map(|&d| C64::new(d, 0.0)),
    ));
    let mut rng = rand::rngs::StdRng::seed_from_u64(42);
    let mut max_drift = 0.0_f64;
    for _ in 0..100 {
        let mut basis = MatrixC::zeros(4, 4);
        for j in 0..4 {
            let ph = C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
            for r in 0..4 {
                basis[(r, j)] = ens.eigensystem.ket_at(j, 0.0)[r] * ph;
            }
        }
        let overlaps = basis.adjoint() * &g_mat * &basis * C64::new(0.0, -1.0);
        let field = connection_generic(&ens.populations, &basis, &overlaps, 0.0);
        let hol = holonomy_cycle_closed(&field.matrix(), &ROTATION_GENERATOR_DIAG);
        let mut z = C64::new(0.0, 0.0);
        for a in 0..4 {
            for b in 0..4 {
                z += ens.rho[(a, b)] * hol.v[(b, a)];
            }
        }
        max_drift = max_drift.max((phase_from_trace(z).phase - reference).abs());
    }

    // holonomy unitarity and partial-trace consistency across a grid
    let mut max_unitarity = 0.0_f64;
    let mut max_trace_diff = 0.0_f64;
    let x = uhlmann_core::Matrix2C::new(
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
    );
    for g in [0.2, 0.7, 1.6] {
        for theta in [0.5, FRAC_PI_2, 2.4] {
            for t in [0.05, 0.3, 1.2] {
                let p = params(g, theta);
                let ens = gibbs_state(&p, t).unwrap();
                let field = connection_composite_from(&ens);
                let hol = holonomy_cycle_closed(&field.matrix(), &ROTATION_GENERATOR_DIAG);
                let id = MatrixC::identity(4, 4);
                max_unitarity = max_unitarity.max((hol.v.adjoint() * &hol.v - id).norm());
                let qa = reduce(&ens, Subsystem::A);
                max_trace_diff = max_trace_diff
                    .max((qa.matrix(0.0) - partial_trace(&ens.rho, Subsystem::A)).norm());
                let qb = reduce(&ens, Subsystem::B);
                max_trace_diff = max_trace_diff
                    .max((qb.matrix(0.0) - x * partial_trace(&ens.rho, Subsystem::B) * x).norm());
            }
        }
    }

    // equatorial quantization
    let mut max_quant = 0.0_f64;
    for i in 0..15 {
        let g = 0.1 + 1.9 * i as f64 / 14.0;
        for j in 0..15 {
            let t = 0.08 + 1.9 * j as f64 / 14.0;
            let r = uhlmann_phase_composite(&params(g, FRAC_PI_2), t).unwrap();
            if r.trace_near_zero {
                continue;
            }
            max_quant = max_quant.max(r.phase.abs().min((r.phase.abs() - PI).abs()));
        }
    }

    let pass =
        max_drift < 1e-10 && max_unitarity < 1e-10 && max_trace_diff < 1e-12 && max_quant < 1e-6;
    report(
        "criterion 10 (structural invariants)",
        pass,
        &format!(
            "gauge drift (100 draws) = {max_drift:.2e} (tol 1e-10); unitarity defect = {max_unitarity:.2e} (tol 1e-10); partial-trace residual = {max_trace_diff:.2e} (tol 1e-12); equator quantization = {max_quant:.2e} (tol 1e-6)"
        ),
    );
}

#[test]
fn criterion_11_winding_analysis() {
    let unit = {
        let samples = (0..=256)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 256.0;
                (t, C64::from_polar(1.0, t))
            })
            .collect();
        winding_number(&ArgandCurve { samples }).unwrap()
    };
    let offset = {
        let samples = (0..=256)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 256.0;
                (t, C64::new(3.0, 0.0) + C64::from_polar(1.0, t))
            })
            .collect();
        winding_number(&ArgandCurve { samples }).unwrap()
    };

    let set = transitions_1d(
        PhaseTarget::Composite,
        SweepAxis::Temperature,
        SweepFixed {
            g: 0.6,
            theta: FRAC_PI_2,
            temperature: 0.0,
        },
        (0.05, 1.2),
        600,
    )
    .unwrap();
    let winding_at = |t: f64| winding_number(&argand_composite(0.6, t, 512).unwrap()).unwrap();
    let mut changes = Vec::new();
    for root in &set.roots {
        let below = winding_at(root.value - 0.03);
        let above = winding_at(root.value + 0.03);
        changes.push((root.value, below, above));
    }
    let pass = unit == 1
        && offset == 0
        && set.roots.len() == 2
        && changes.iter().all(|(_, b, a)| (b - a).abs() == 1);
    report(
        "criterion 11 (winding analysis)",
        pass,
        &format!(
            "unit circle = {unit} (want 1), offset circle = {offset} (want 0); g=0.6 transitions {:?} with winding steps {:?}",
            set.roots.iter().map(|r| (r.value * 1e4).round() / 1e4).collect::<Vec<_>>(),
            changes
        ),
    );
}
