//! Built-in oracle cross-checks: every closed-form path is compared against
//! an independent numerical route, mirroring the library's test oracles.

use std::f64::consts::{FRAC_PI_2, PI};

use uhlmann_core::analysis::{circular_distance, CriticalConstants};
use uhlmann_core::spinmodel::{
    berry_phase_of, spectrum_robust, ModelParams, ROTATION_GENERATOR_DIAG,
};
use uhlmann_core::subsystems::{self, Subsystem};
use uhlmann_core::thermal::{self, equator_energies};
use uhlmann_core::uhlmann::*;
use uhlmann_core::{Complex64 as C64, Matrix2C, MatrixC};

use crate::CliError;

struct Check {
    name: &'static str,
    measured: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.measured < self.tolerance
    }
}

pub fn run() -> Result<(), CliError> {
    let checks = vec![
        ode_vs_closed()?,
        rk4_order()?,
        heat_capacity_fd()?,
        heat_capacity_decomposition()?,
        partial_trace_contraction()?,
        subsystem_analytic_vs_ode()?,
        berry_line_integral()?,
        composed_phase_identity()?,
        gauge_invariance()?,
        reference_constants(),
    ];
    let mut ok = true;
    for c in &checks {
        println!(
            "selftest {:<34} {} (measured {:.2e}, tolerance {:.0e})",
            c.name,
            if c.passed() { "PASS" } else { "FAIL" },
            c.measured,
            c.tolerance
        );
        ok &= c.passed();
    }
    if ok {
        println!("selftest: all {} checks passed", checks.len());
        Ok(())
    } else {
        Err(CliError::new("selftest failed"))
    }
}

fn grid() -> Vec<(f64, f64, f64)> {
    let mut pts = Vec::new();
    for &g in &[0.3, 0.9, 1.7] {
        for &theta in &[0.6, FRAC_PI_2, 2.5] {
            for &t in &[0.15, 0.7] {
                pts.push((g, theta, t));
            }
        }
    }
    pts
}

fn ode_vs_closed() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for (g, theta, t) in grid() {
        let p = ModelParams::new(g, theta)?;
        let ens = thermal::gibbs_state(&p, t)?;
        let a0 = connection_composite_from(&ens).matrix();
        let closed = holonomy_cycle_closed(&a0, &ROTATION_GENERATOR_DIAG);
        let ode = holonomy_ode(
            |phi| frame_rotated(&a0, &ROTATION_GENERATOR_DIAG, phi),
            4,
            0.0,
            2048,
        )?;
        worst = worst.max((closed.v - ode.v).norm());
    }
    Ok(Check {
        name: "holonomy ode vs closed form",
        measured: worst,
        tolerance: 1e-8,
    })
}

fn rk4_order() -> Result<Check, CliError> {
    let p = ModelParams::new(0.6, FRAC_PI_2)?;
    let ens = thermal::gibbs_state(&p, 0.5)?;
    let a0 = connection_composite_from(&ens).matrix();
    let exact = holonomy_cycle_closed(&a0, &ROTATION_GENERATOR_DIAG).v;
    let run = |steps| -> Result<MatrixC, CliError> {
        Ok(holonomy_ode(
            |phi| frame_rotated(&a0, &ROTATION_GENERATOR_DIAG, phi),
            4,
            0.0,
            steps,
        )?
        .v)
    };
    let ratio = (run(512)? - &exact).norm() / (run(1024)? - &exact).norm();
    // distance of the halving ratio from the fourth-order value 16
    Ok(Check {
        name: "rk4 convergence order",
        measured: (ratio - 16.0).abs(),
        tolerance: 3.0,
    })
}

fn heat_capacity_fd() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for &g in &[0.1, 0.5, 1.2, 2.0] {
        for &t in &[0.1, 0.4, 1.0, 2.0] {
            let c = thermal::heat_capacity(g, t)?.total;
            let beta = 1.0 / t;
            let h = 1e-4 * beta;
            let e = equator_energies(g);
            let z: f64 = e.iter().map(|&x| (-(x - e[1]) * beta).exp()).sum();
            let p: Vec<f64> = e.iter().map(|&x| (-(x - e[1]) * beta).exp() / z).collect();
            let side = |sign: f64| -> f64 {
                let x: f64 = p
                    .iter()
                    .zip(&e)
                    .map(|(pj, ej)| pj * (sign * h * (e[1] - ej)).exp_m1())
                    .sum();
                x.ln_1p()
            };
            let fd = (side(1.0) + side(-1.0)) / (h * h) * beta * beta;
            worst = worst.max((fd - c).abs() / c);
        }
    }
    Ok(Check {
        name: "heat capacity finite difference",
        measured: worst,
        tolerance: 1e-5,
    })
}

fn heat_capacity_decomposition() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for &g in &[0.05, 0.6, 1.4, 2.0] {
        for &t in &[0.05, 0.3, 1.0, 2.0] {
            let c = thermal::heat_capacity(g, t)?;
            let sum: f64 = c.pairwise.iter().sum();
            worst = worst.max((sum - c.total).abs());
        }
    }
    Ok(Check {
        name: "heat capacity decomposition",
        measured: worst,
        tolerance: 1e-10,
    })
}

fn partial_trace_contraction() -> Result<Check, CliError> {
    let x = Matrix2C::new(
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
    );
    let mut worst = 0.0_f64;
    for (g, theta, t) in grid() {
        let p = ModelParams::new(g, theta)?.with_phi0(0.4)?;
        let ens = thermal::gibbs_state(&p, t)?;
        let qa = subsystems::reduce(&ens, Subsystem::A);
        worst =
            worst.max((qa.matrix(0.4) - subsystems::partial_trace(&ens.rho, Subsystem::A)).norm());
        let qb = subsystems::reduce(&ens, Subsystem::B);
        worst = worst.max(
            (qb.matrix(0.4) - x * subsystems::partial_trace(&ens.rho, Subsystem::B) * x).norm(),
        );
    }
    Ok(Check {
        name: "partial trace contraction",
        measured: worst,
        tolerance: 1e-12,
    })
}

fn subsystem_analytic_vs_ode() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for (g, theta, t) in [(0.7, 1.1, 0.4), (0.9, 2.0, 0.25), (1.4, FRAC_PI_2, 0.15)] {
        let p = ModelParams::new(g, theta)?;
        let ens = thermal::gibbs_state(&p, t)?;
        for which in [Subsystem::A, Subsystem::B] {
            let q = subsystems::reduce(&ens, which);
            let analytic = subsystems::subsystem_phase_analytic(&q);
            let ode = subsystems::subsystem_phase_ode(&q, 4096)?;
            worst = worst.max(circular_distance(analytic.phase, ode.phase));
        }
    }
    Ok(Check {
        name: "reduced phase analytic vs ode",
        measured: worst,
        tolerance: 1e-7,
    })
}

fn berry_line_integral() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for &(g, theta) in &[(0.5, 1.0), (1.3, 2.1), (0.2, FRAC_PI_2)] {
        let p = ModelParams::new(g, theta)?;
        let es = spectrum_robust(&p);
        for j in 0..4 {
            let nodes = 1024;
            let h = 1e-6;
            let dphi = 2.0 * PI / nodes as f64;
            let mut acc = 0.0;
            for k in 0..nodes {
                let phi = k as f64 * dphi;
                let v = es.ket_at(j, phi);
                let dv = (es.ket_at(j, phi + h) - es.ket_at(j, phi - h)) / C64::new(2.0 * h, 0.0);
                acc += ((v.adjoint() * dv)[(0, 0)] * C64::new(0.0, 1.0)).re;
            }
            worst = worst.max((acc * dphi - berry_phase_of(&es, j)).abs());
        }
    }
    Ok(Check {
        name: "berry phase line integral",
        measured: worst,
        tolerance: 1e-6,
    })
}

fn composed_phase_identity() -> Result<Check, CliError> {
    let mut worst = 0.0_f64;
    for (g, theta, t) in grid() {
        let p = ModelParams::new(g, theta)?;
        worst = worst.max(subsystems::composed_phase_identity_check(&p, t)?);
    }
    Ok(Check {
        name: "composed phase identity",
        measured: worst,
        tolerance: 1e-10,
    })
}

fn gauge_invariance() -> Result<Check, CliError> {
    let p = ModelParams::new(0.7, 1.1)?;
    let ens = thermal::gibbs_state(&p, 0.4)?;
    let reference = uhlmann_phase_composite(&p, 0.4)?.phase;
    let g_mat = MatrixC::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        ROTATION_GENERATOR_DIAG.iter().map(|&d| C64::new(d, 0.0)),
    ));
    // deterministic pseudo-random phases
    let mut state = 0x9e3779b97f4a7c15_u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 * PI
    };
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let mut basis = MatrixC::zeros(4, 4);
        for j in 0..4 {
            let ph = C64::from_polar(1.0, next());
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
        worst = worst.max((phase_from_trace(z).phase - reference).abs());
    }
    Ok(Check {
        name: "gauge invariance",
        measured: worst,
        tolerance: 1e-10,
    })
}

fn reference_constants() -> Check {
    let worst = CriticalConstants::new()
        .defining_residuals()
        .iter()
        .fold(0.0_f64, |acc, r| acc.max(r.abs()));
    Check {
        name: "reference constants",
        measured: worst,
        tolerance: 1e-14,
    }
}
